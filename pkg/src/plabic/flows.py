"""Walks, edge loop-erasure, and exhaustive flow enumeration.

Conservative flows are unions of pairwise vertex-disjoint simple directed
cycles avoiding boundary edges; the trivial flow (no edges, weight 1) is
always included.  Edge flows starting at an edge e decompose uniquely into
an edge loop-erased walk from e to a boundary sink plus an edge-disjoint
conservative flow.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import geom
from .errors import InputError, ResourceCapError
from .network import PlabicNetwork


@dataclass(frozen=True)
class FlowLimits:
    max_flows: int = 10**6
    max_edges: int = 64

    @staticmethod
    def from_env() -> "FlowLimits":
        cap = os.environ.get("PLABIC_MAX_EDGES")
        return FlowLimits(max_edges=int(cap)) if cap else FlowLimits()


def check_size(net: PlabicNetwork, limits: FlowLimits) -> None:
    if len(net.edges) > limits.max_edges:
        raise ResourceCapError(
            f"network has {len(net.edges)} edges, cap is {limits.max_edges}"
        )


@dataclass(frozen=True)
class FlowStats:
    weight: Fraction
    wind: int
    int_: int

    @property
    def sign(self) -> int:
        return -1 if (self.wind + self.int_) % 2 else 1


def walk_is_directed(net: PlabicNetwork, edge_ids: Sequence[str]) -> bool:
    return all(
        net.edges[a].head == net.edges[b].tail for a, b in zip(edge_ids, edge_ids[1:])
    )


def loop_erase(edge_ids: Sequence[str]) -> List[str]:
    """Remove edge loops, first-completed first, until no edge repeats.

    At each step, among all index pairs (l, s) with s > l and equal edges,
    the one with the smallest s is erased by dropping positions l..s-1.
    """
    walk = list(edge_ids)
    while True:
        first_pos: Dict[str, int] = {}
        loop = None
        for s, eid in enumerate(walk):
            if eid in first_pos:
                loop = (first_pos[eid], s)
                break
            first_pos[eid] = s
        if loop is None:
            return walk
        l, s = loop
        walk = walk[:l] + walk[s:]


def path_stats(net: PlabicNetwork, edge_ids: Sequence[str]) -> FlowStats:
    """Weight, generalized winding, and ray-crossing count of a directed walk.

    Edge multiplicities enter the weight; winding sums the local windings at
    every polyline bend and at every junction between consecutive edges.
    """
    if not edge_ids:
        raise InputError("empty walk")
    if not walk_is_directed(net, edge_ids):
        raise InputError(f"walk is not head-to-tail directed: {list(edge_ids)}")
    weight = Fraction(1)
    wind = 0
    crossings = 0
    for eid in edge_ids:
        weight *= net.edges[eid].weight
        wind += net.edge_windint(eid)
        crossings += net.edge_int(eid)
    for a, b in zip(edge_ids, edge_ids[1:]):
        wind += net.junction_wind(a, b)
    return FlowStats(weight, wind, crossings)


def cycle_stats(net: PlabicNetwork, edge_ids: Sequence[str]) -> FlowStats:
    """Stats of a closed directed cycle, including the wrap-around junction."""
    st = path_stats(net, edge_ids)
    if net.edges[edge_ids[-1]].head != net.edges[edge_ids[0]].tail:
        raise InputError("edge list does not close into a cycle")
    return FlowStats(st.weight, st.wind + net.junction_wind(edge_ids[-1], edge_ids[0]), st.int_)


def simple_cycles(net: PlabicNetwork, limits: Optional[FlowLimits] = None) -> List[Tuple[str, ...]]:
    """All simple directed cycles, as edge-id tuples rooted at their smallest edge."""
    limits = limits or FlowLimits()
    check_size(net, limits)
    order = {eid: i for i, eid in enumerate(net.edges)}
    cycles: List[Tuple[str, ...]] = []

    def grow(root: str, walk: List[str], seen_v: set) -> None:
        if len(cycles) > limits.max_flows:
            raise ResourceCapError(f"more than {limits.max_flows} cycles")
        cur = net.edges[walk[-1]].head
        if net.vertices[cur].is_boundary:
            return
        if cur == net.edges[root].tail:
            cycles.append(tuple(walk))
            return
        if cur in seen_v:
            return
        seen_v.add(cur)
        for nxt in net.out_edges(cur):
            if order[nxt] > order[root]:
                grow(root, walk + [nxt], seen_v)
        seen_v.remove(cur)

    for root, e in net.edges.items():
        if net.vertices[e.tail].is_boundary or net.vertices[e.head].is_boundary:
            continue
        grow(root, [root], set())
    return cycles


def enum_conservative(
    net: PlabicNetwork, limits: Optional[FlowLimits] = None
) -> List[Tuple[FrozenSet[str], Fraction]]:
    """All conservative flows with weights; the empty flow of weight 1 comes first."""
    limits = limits or FlowLimits()
    cycles = simple_cycles(net, limits)
    cyc_vertices = []
    cyc_weight = []
    for cyc in cycles:
        vs = frozenset(net.edges[eid].tail for eid in cyc)
        cyc_vertices.append(vs)
        cyc_weight.append(path_stats(net, cyc).weight)

    out: List[Tuple[FrozenSet[str], Fraction]] = []

    def pick(i: int, used_v: FrozenSet[str], edges: FrozenSet[str], w: Fraction) -> None:
        if len(out) > limits.max_flows:
            raise ResourceCapError(f"more than {limits.max_flows} conservative flows")
        if i == len(cycles):
            out.append((edges, w))
            return
        pick(i + 1, used_v, edges, w)
        if not (cyc_vertices[i] & used_v):
            pick(i + 1, used_v | cyc_vertices[i], edges | frozenset(cycles[i]), w * cyc_weight[i])

    pick(0, frozenset(), frozenset(), Fraction(1))
    out.sort(key=lambda fw: (len(fw[0]), sorted(fw[0])))
    return out


def conservative_total(net: PlabicNetwork, limits: Optional[FlowLimits] = None) -> Fraction:
    return sum((w for _, w in enum_conservative(net, limits)), Fraction(0))


def enum_lews(
    net: PlabicNetwork, start_edge: str, sink_label: int, limits: Optional[FlowLimits] = None
) -> List[Tuple[str, ...]]:
    """All edge loop-erased walks from start_edge to the sink b_{sink_label}.

    These are exactly the edge-distinct directed walks; perfectness makes
    any such walk vertex-simple except possibly at the start vertex, which
    it may pass twice.
    """
    limits = limits or FlowLimits()
    check_size(net, limits)
    if start_edge not in net.edges:
        raise InputError(f"unknown edge {start_edge!r}")
    sink = net.boundary_vertex(sink_label)
    if net.out_edges(sink.id):
        raise InputError(f"b{sink_label} is a boundary source, not a sink")
    start_tail = net.edges[start_edge].tail
    out: List[Tuple[str, ...]] = []

    def grow(walk: List[str], used: set, seen_v: Dict[str, int]) -> None:
        if len(out) > limits.max_flows:
            raise ResourceCapError(f"more than {limits.max_flows} walks")
        cur = net.edges[walk[-1]].head
        if cur == sink.id:
            out.append(tuple(walk))
            return
        if net.vertices[cur].is_boundary:
            return
        allowance = 2 if cur == start_tail else 1
        if seen_v.get(cur, 0) >= allowance:
            return
        seen_v[cur] = seen_v.get(cur, 0) + 1
        for nxt in net.out_edges(cur):
            if nxt not in used:
                used.add(nxt)
                grow(walk + [nxt], used, seen_v)
                used.remove(nxt)
        seen_v[cur] -= 1

    grow([start_edge], {start_edge}, {})
    out.sort()
    return out


@dataclass(frozen=True)
class EdgeFlow:
    edges: FrozenSet[str]
    lew: Tuple[str, ...]
    stats: FlowStats


def enum_edge_flows(
    net: PlabicNetwork,
    start_edge: str,
    sink_label: int,
    limits: Optional[FlowLimits] = None,
    conservative: Optional[List[Tuple[FrozenSet[str], Fraction]]] = None,
) -> List[EdgeFlow]:
    """All edge flows from start_edge reaching b_{sink_label}.

    Winding and crossing numbers come from the loop-erased walk alone; the
    weight is the product over all flow edges.
    """
    limits = limits or FlowLimits()
    cons = conservative if conservative is not None else enum_conservative(net, limits)
    flows: List[EdgeFlow] = []
    for lew in enum_lews(net, start_edge, sink_label, limits):
        lew_set = frozenset(lew)
        st = path_stats(net, lew)
        for cedges, cweight in cons:
            if cedges & lew_set:
                continue
            flows.append(
                EdgeFlow(
                    edges=lew_set | cedges,
                    lew=lew,
                    stats=FlowStats(st.weight * cweight, st.wind, st.int_),
                )
            )
            if len(flows) > limits.max_flows:
                raise ResourceCapError(f"more than {limits.max_flows} edge flows")
    flows.sort(key=lambda f: (f.lew, sorted(f.edges)))
    return flows
