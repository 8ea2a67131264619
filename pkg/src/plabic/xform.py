"""Network transformations with predicted edge-vector laws, verified exactly.

Every operation returns a :class:`TransformReport` holding the input and
output networks plus, per edge, the predicted vector, the vector recomputed
from scratch on the output network, and whether they agree.  A report with
``ok`` False means the transformation's stated law failed to verify, which
on valid inputs indicates a violated precondition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import geom
from .errors import GenericityError, InputError, InternalInconsistencyError
from .evec import (
    SolveResult,
    boundary_matrix,
    canonical_bc,
    solve_system,
    unit_vector,
    zero_vector,
)
from .flows import FlowLimits
from .geom import Dir, EpsPoint, Point, Ray, DegenerateQuery
from .network import BLACK, WHITE, Edge, PlabicNetwork, Vertex, rebuild, validate
from .rationals import rat

Vector = Tuple[Fraction, ...]


@dataclass
class EdgeCheck:
    edge: str
    predicted: Vector
    recomputed: Vector
    factor: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        return self.predicted == self.recomputed


@dataclass
class TransformReport:
    name: str
    params: Dict[str, object]
    old_net: PlabicNetwork
    new_net: PlabicNetwork
    entries: List[EdgeCheck] = field(default_factory=list)
    sub_reports: List["TransformReport"] = field(default_factory=list)
    extras: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries) and all(r.ok for r in self.sub_reports)

    def entry(self, edge_id: str) -> EdgeCheck:
        for e in self.entries:
            if e.edge == edge_id:
                return e
        raise KeyError(edge_id)

    def to_json(self) -> dict:
        from .rationals import fmt

        return {
            "transform": self.name,
            "params": {k: str(v) for k, v in self.params.items()},
            "ok": self.ok,
            "edges": [
                {
                    "edge": e.edge,
                    "factor": fmt(e.factor) if e.factor is not None else None,
                    "predicted": [fmt(c) for c in e.predicted],
                    "recomputed": [fmt(c) for c in e.recomputed],
                    "ok": e.ok,
                }
                for e in self.entries
            ],
            "sub_reports": [r.to_json() for r in self.sub_reports],
        }


def _compare(
    name: str,
    params: Dict[str, object],
    old_net: PlabicNetwork,
    new_net: PlabicNetwork,
    predicted: Mapping[str, Vector],
    recomputed: Mapping[str, Vector],
    factors: Optional[Mapping[str, Fraction]] = None,
) -> TransformReport:
    rep = TransformReport(name, params, old_net, new_net)
    for eid in new_net.edges:
        rep.entries.append(
            EdgeCheck(
                edge=eid,
                predicted=predicted[eid],
                recomputed=recomputed[eid],
                factor=(factors or {}).get(eid),
            )
        )
    return rep


# --- gauge ray rotation -----------------------------------------------------


def rotate_gauge(
    net: PlabicNetwork, l_new: Dir, limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Change the gauge ray direction; vectors flip sign per sweep events.

    A non-source edge flips iff the number of rays sweeping past its start
    vertex plus (1 if the sweep passes the edge's initial direction) is odd.
    Boundary source edge vectors never change.
    """
    new_net = rebuild(net, gauge_dir=l_new)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("new gauge direction invalid:\n" + str(rep_v))
    old = solve_system(net, None, limits)
    sources = {net.boundary_edge(i).id for i in net.source_base()}
    src_pos = [net.boundary_vertex(i).pos for i in net.source_base()]

    predicted: Dict[str, Vector] = {}
    factors: Dict[str, Fraction] = {}
    identity = net.gauge_dir == l_new
    for eid, e in net.edges.items():
        if eid in sources or identity:
            predicted[eid] = old.vectors[eid]
            factors[eid] = Fraction(1)
            continue
        tail_pos = net.vertices[e.tail].pos
        cr = 0
        for bp in src_pos:
            if bp == tail_pos:
                continue
            if geom.dir_in_open_sweep(geom.sub(tail_pos, bp), net.gauge_dir, l_new):
                cr += 1
        par = 1 if geom.dir_in_open_sweep(e.first_dir(), net.gauge_dir, l_new) else 0
        sign = -1 if (cr + par) % 2 else 1
        factors[eid] = Fraction(sign)
        predicted[eid] = tuple(sign * c for c in old.vectors[eid])
    new = solve_system(new_net, None, limits)
    return _compare(
        "rotate-gauge", {"dir": l_new}, net, new_net, predicted, new.vectors, factors
    )


# --- region marking and gamma indices ----------------------------------------


@dataclass
class RegionMarking:
    """Sign marking of the disk regions cut out by a reversal path or cycle.

    ``region(probe)`` returns 0 for a '+' region and 1 for '-'; probes are
    perturbed points so queries starting on the curves resolve exactly.
    """

    segments: List[Tuple[Point, Point]]
    rays: List[Ray]
    anchors: List[EpsPoint]
    anchor_parity: int

    def region(self, probe: EpsPoint) -> int:
        last_err: Optional[Exception] = None
        for anchor in self.anchors:
            try:
                crossings = 0
                for a, b in self.segments:
                    if geom.eps_segment_crosses_segment(anchor, probe, a, b):
                        crossings += 1
                for r in self.rays:
                    if geom.eps_segment_crosses_ray(anchor, probe, r):
                        crossings += 1
                return (self.anchor_parity + crossings) % 2
            except DegenerateQuery as exc:
                last_err = exc
        raise GenericityError(f"region query degenerate for all anchors: {last_err}")


def _axis_anchor_points(net: PlabicNetwork, lo: Fraction, hi: Fraction) -> List[EpsPoint]:
    up = geom.Dir(Fraction(0), Fraction(1))
    feet = sorted({v.pos.x for v in net.boundary_vertices() if lo < v.pos.x < hi} | {lo, hi})
    anchors = []
    for a, b in zip(feet, feet[1:]):
        for num, den in ((1, 2), (3, 7), (5, 11), (4, 13)):
            x = a + (b - a) * Fraction(num, den)
            anchors.append(EpsPoint.shifted(Point(x, Fraction(0)), up))
    return anchors


def _path_marking(net: PlabicNetwork, path: Sequence[str], i0: int, j0: int) -> RegionMarking:
    segments: List[Tuple[Point, Point]] = []
    for eid in path:
        segments.extend(net.edges[eid].segments())
    rays = [
        Ray(net.boundary_vertex(i0).pos, net.gauge_dir),
        Ray(net.boundary_vertex(j0).pos, net.gauge_dir),
    ]
    xi, xj = net.boundary_vertex(i0).pos.x, net.boundary_vertex(j0).pos.x
    lo, hi = min(xi, xj), max(xi, xj)
    # the sliver above the finite boundary arc between the endpoints is '+'
    # exactly when the arc, oriented sink to source, runs left to right
    parity = 0 if xj < xi else 1
    anchors = _axis_anchor_points(net, lo, hi)
    return RegionMarking(segments, rays, anchors, parity)


def _cycle_marking(net: PlabicNetwork, cycle: Sequence[str]) -> RegionMarking:
    segments: List[Tuple[Point, Point]] = []
    for eid in cycle:
        segments.extend(net.edges[eid].segments())
    xs = sorted(v.pos.x for v in net.boundary_vertices())
    anchors = _axis_anchor_points(net, xs[0], xs[-1])
    # near-axis probes sit outside any cycle, and outside is '+'
    return RegionMarking(segments, [], anchors, 0)


@dataclass
class GammaIndex:
    values: Dict[str, int]
    gamma1: Dict[str, int]  # on-path edges only

    def __getitem__(self, eid: str) -> int:
        return self.values[eid]


def gamma_index(
    net: PlabicNetwork, marking: RegionMarking, on_curve: Sequence[str]
) -> GammaIndex:
    """Mod-2 index of every edge for an orientation reversal along `on_curve`.

    Off-curve edges take the region parity of their start point nudged along
    the edge.  On-curve edges add the left-of-endpoint region parity, the
    gauge side of their final segment, their ray crossings, and any winding
    internal to their polyline.
    """
    on = set(on_curve)
    values: Dict[str, int] = {}
    gamma1: Dict[str, int] = {}
    for eid, e in net.edges.items():
        if eid not in on:
            probe = EpsPoint.shifted(net.vertices[e.tail].pos, e.first_dir())
            values[eid] = marking.region(probe)
        else:
            d = e.last_dir()
            probe = EpsPoint.shifted(
                net.vertices[e.head].pos, geom.neg(d), geom.perp_left(d)
            )
            g1 = marking.region(probe)
            g2 = geom.gamma2(d, net.gauge_dir)
            gamma1[eid] = g1
            values[eid] = (g1 + g2 + net.edge_int(eid) + net.edge_windint(eid)) % 2
    return GammaIndex(values, gamma1)


# --- orientation reversal ------------------------------------------------------


def _reverse_edges(net: PlabicNetwork, edge_ids: Iterable[str]) -> PlabicNetwork:
    edges = dict(net.edges)
    for eid in edge_ids:
        edges[eid] = edges[eid].reversed()
    return rebuild(net, edges=edges)


def _check_directed_path(net: PlabicNetwork, path: Sequence[str]) -> None:
    if not path:
        raise InputError("empty path")
    for a, b in zip(path, path[1:]):
        if net.edges[a].head != net.edges[b].tail:
            raise InputError(f"path breaks between {a} and {b}")
    seen = set()
    for eid in path:
        if eid in seen:
            raise InputError(f"path repeats edge {eid}")
        seen.add(eid)
    inner = [net.edges[eid].head for eid in path[:-1]]
    if len(set(inner)) != len(inner):
        raise InputError("path is not simple")


def normalize_boundary(
    net: PlabicNetwork, limits: Optional[FlowLimits] = None
) -> Tuple[PlabicNetwork, List[TransformReport]]:
    """Give every boundary edge unit weight, a straight course, no crossings.

    Each offending boundary edge is split by a bivalent vertex next to the
    boundary; the boundary-side stub is a straight unit-weight segment that
    crosses no rays, which is the shape the reversal laws assume.
    """
    reports: List[TransformReport] = []
    current = net
    for label in [v.label for v in net.boundary_vertices()]:
        e = current.boundary_edge(label)
        if e.weight == 1 and current.edge_int(e.id) == 0 and len(e.polyline) == 2:
            continue
        source_side = current.is_source_edge(e.id)
        seg_i = 0 if source_side else len(e.polyline) - 2
        a, b = e.segments()[seg_i]
        cuts = []
        for r in current.gauge_rays():
            if a == r.origin or b == r.origin:
                continue
            u, w = geom.seg_dir(a, b), geom.sub(a, r.origin)
            denom = geom.cross(r.dir, u)
            if denom == 0:
                continue
            t_ray = geom.cross(w, u) / denom
            s = -geom.cross(r.dir, w) / denom
            if t_ray > 0 and 0 < s < 1:
                cuts.append(s)
        if source_side:
            t = min(cuts) / 2 if cuts else Fraction(1, 2)
            rep = insert_bivalent(
                current, e.id, seg_index=seg_i, t=t, color=WHITE,
                unit="tail", id_tail=e.id + ".b", id_head=e.id, limits=limits,
            )
        else:
            t = (1 + max(cuts)) / 2 if cuts else Fraction(1, 2)
            rep = insert_bivalent(
                current, e.id, seg_index=seg_i, t=t, color=WHITE,
                unit="head", id_tail=e.id, id_head=e.id + ".b", limits=limits,
            )
        reports.append(rep)
        current = rep.new_net
    return current, reports


def reverse_path(
    net: PlabicNetwork,
    path: Sequence[str],
    limits: Optional[FlowLimits] = None,
) -> TransformReport:
    """Reverse a simple directed path from a boundary source to a boundary sink.

    Reversed edges take reciprocal weights.  The prediction solves the old
    network against modified sink conditions and applies the sign index from
    the region marking; the verification re-solves the reversed network with
    the orientation-change boundary conditions.
    """
    normalized, sub_reports = normalize_boundary(net, limits)
    if sub_reports:
        # translate the path through the splits: a replaced boundary edge id
        # now names the inner part; the stub is inserted on the boundary side
        new_path = []
        for eid in path:
            stub = eid + ".b"
            if stub in normalized.edges:
                if normalized.is_source_edge(stub):
                    new_path += [stub, eid]
                else:
                    new_path += [eid, stub]
            else:
                new_path.append(eid)
        path = new_path
    net = normalized

    _check_directed_path(net, path)
    first, last = net.edges[path[0]], net.edges[path[-1]]
    if not net.vertices[first.tail].is_boundary or net.vertices[first.tail].label is None:
        raise InputError("path must start at a boundary source")
    if not net.vertices[last.head].is_boundary:
        raise InputError("path must end at a boundary sink")
    i0 = net.vertices[first.tail].label
    j0 = net.vertices[last.head].label

    bm = boundary_matrix(net, limits=limits)
    r0 = bm.pivots.index(i0) + 1
    a_val = bm.entry(r0, j0)
    if a_val == 0:
        raise InputError(f"b{j0} is unreachable from b{i0}: matrix entry vanishes")

    n = net.n
    bc_tilde = {j: unit_vector(n, j) for j in net.sink_labels()}
    bc_tilde[j0] = tuple(
        u - row / a_val for u, row in zip(unit_vector(n, j0), bm.rows[r0 - 1])
    )
    tilde = solve_system(net, bc_tilde, limits)

    marking = _path_marking(net, path, i0, j0)
    gamma = gamma_index(net, marking, path)

    on_path = set(path)
    new_net = _reverse_edges(net, on_path)

    predicted: Dict[str, Vector] = {}
    factors: Dict[str, Fraction] = {}
    for eid in net.edges:
        sign = -1 if gamma[eid] % 2 else 1
        if eid in on_path:
            f = Fraction(sign) / net.edges[eid].weight
        else:
            f = Fraction(sign)
        factors[eid] = f
        predicted[eid] = tuple(f * c for c in tilde.vectors[eid])

    bc_hat = {j: unit_vector(n, j) for j in net.sink_labels() if j != j0}
    pin_sign = -1 if new_net.sink_pin_exponent(path[0]) else 1
    w_new = new_net.edges[path[0]].weight
    bc_hat[i0] = tuple(pin_sign / w_new * c for c in unit_vector(n, i0))
    hat = solve_system(new_net, bc_hat, limits)

    rep = _compare(
        "reverse-path", {"i0": i0, "j0": j0, "path": ",".join(path)},
        net, new_net, predicted, hat.vectors, factors,
    )
    rep.sub_reports = sub_reports
    rep.extras["gamma"] = dict(gamma.values)
    rep.extras["tilde_vectors"] = tilde.vectors
    return rep


def reverse_cycle(
    net: PlabicNetwork, cycle: Sequence[str], limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Reverse a simple directed cycle; sink conditions stay canonical."""
    if not cycle:
        raise InputError("empty cycle")
    for a, b in zip(cycle, cycle[1:]):
        if net.edges[a].head != net.edges[b].tail:
            raise InputError(f"cycle breaks between {a} and {b}")
    if net.edges[cycle[-1]].head != net.edges[cycle[0]].tail:
        raise InputError("edge list does not close into a cycle")
    tails = [net.edges[eid].tail for eid in cycle]
    if len(set(tails)) != len(tails):
        raise InputError("cycle is not simple")

    old = solve_system(net, None, limits)
    marking = _cycle_marking(net, cycle)
    gamma = gamma_index(net, marking, cycle)
    on_cycle = set(cycle)
    new_net = _reverse_edges(net, on_cycle)

    predicted: Dict[str, Vector] = {}
    factors: Dict[str, Fraction] = {}
    for eid in net.edges:
        sign = -1 if gamma[eid] % 2 else 1
        f = Fraction(sign) / net.edges[eid].weight if eid in on_cycle else Fraction(sign)
        factors[eid] = f
        predicted[eid] = tuple(f * c for c in old.vectors[eid])
    new = solve_system(new_net, None, limits)
    rep = _compare(
        "reverse-cycle", {"cycle": ",".join(cycle)}, net, new_net,
        predicted, new.vectors, factors,
    )
    rep.extras["gamma"] = dict(gamma.values)
    return rep


# --- weight gauge --------------------------------------------------------------


def weight_gauge(
    net: PlabicNetwork, t: Mapping[str, Fraction], limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Rescale weights at internal vertices; each vector scales by t(tail)."""
    from .network import apply_weight_gauge

    new_net = apply_weight_gauge(net, t)
    old = solve_system(net, None, limits)
    predicted = {}
    factors = {}
    for eid, e in net.edges.items():
        f = rat(t.get(e.tail, 1))
        factors[eid] = f
        predicted[eid] = tuple(f * c for c in old.vectors[eid])
    new = solve_system(new_net, None, limits)
    return _compare("weight-gauge", {"t": dict(t)}, net, new_net, predicted, new.vectors, factors)


# --- vertex motion --------------------------------------------------------------


def _rotation_orders(net: PlabicNetwork) -> Dict[str, Tuple[str, ...]]:
    base = Dir(Fraction(1), Fraction(0))
    out = {}
    for vid in net.vertices:
        ends = []
        for eid in net.out_edges(vid):
            ends.append((eid + "+", net.edges[eid].first_dir()))
        for eid in net.in_edges(vid):
            ends.append((eid + "-", geom.neg(net.edges[eid].last_dir())))
        if not ends:
            out[vid] = ()
            continue
        try:
            order = geom.sort_ccw(base, [d for _, d in ends])
        except GenericityError:
            order = geom.sort_ccw(Dir(Fraction(97), Fraction(13)), [d for _, d in ends])
        names = [ends[i][0] for i in order]
        # canonical rotation: start at the lexicographically smallest
        k = names.index(min(names))
        out[vid] = tuple(names[k:] + names[:k])
    return out


def move_vertex(
    net: PlabicNetwork, vid: str, new_pos: Point, limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Move one internal vertex; only the incident edge vectors may flip sign."""
    v = net.vertices[vid]
    if v.is_boundary:
        raise InputError("cannot move a boundary vertex")
    vertices = dict(net.vertices)
    vertices[vid] = replace(v, pos=new_pos)
    edges = dict(net.edges)
    for eid in net.out_edges(vid):
        e = edges[eid]
        edges[eid] = replace(e, polyline=(new_pos,) + e.polyline[1:])
    for eid in net.in_edges(vid):
        e = edges[eid]
        edges[eid] = replace(e, polyline=e.polyline[:-1] + (new_pos,))
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("motion breaks the embedding:\n" + str(rep_v))
    if _rotation_orders(net) != _rotation_orders(new_net):
        raise InputError("motion changes the graph topology")

    old = solve_system(net, None, limits)
    predicted: Dict[str, Vector] = {}
    factors: Dict[str, Fraction] = {}
    incident = set(net.out_edges(vid)) | set(net.in_edges(vid))
    for eid in net.edges:
        if eid not in incident:
            predicted[eid] = old.vectors[eid]
            continue
        e = net.edges[eid]
        if e.tail == vid:
            head = e.head
            if net.vertices[head].is_boundary:
                delta = (new_net.sink_pin_exponent(eid) - net.sink_pin_exponent(eid)) % 2
            else:
                succs = net.out_edges(head)
                deltas = {
                    (new_net.relation_exponent(eid, f) - net.relation_exponent(eid, f)) % 2
                    for f in succs
                }
                if len(deltas) != 1:
                    raise InternalInconsistencyError(
                        f"successor-independent sign law failed at {eid}"
                    )
                delta = deltas.pop()
        else:
            tail = e.tail
            if net.vertices[tail].is_boundary:
                delta = 0
            else:
                preds = [g for g in net.in_edges(tail) if g not in incident]
                if not preds:
                    raise InputError(
                        f"cannot predict edge {eid}: all predecessors move too"
                    )
                deltas = {
                    (new_net.relation_exponent(g, eid) - net.relation_exponent(g, eid)) % 2
                    for g in preds
                }
                if len(deltas) != 1:
                    raise InternalInconsistencyError(
                        f"predecessor-independent sign law failed at {eid}"
                    )
                delta = deltas.pop()
        sign = -1 if delta else 1
        factors[eid] = Fraction(sign)
        predicted[eid] = tuple(sign * c for c in old.vectors[eid])
    new = solve_system(new_net, None, limits)
    return _compare(
        "move-vertex", {"vertex": vid, "pos": new_pos}, net, new_net,
        predicted, new.vectors, factors,
    )


# --- square move (M1) -----------------------------------------------------------


@dataclass
class SquareSpec:
    c: str  # white, two square edges out
    a: str  # black, square in + out
    w: str  # white, square in + out
    b: str  # black, two square edges in
    h1: str  # c -> a
    h2: str  # c -> b
    h3: str  # a -> w
    h4: str  # w -> b
    e1: str  # outside, into a
    e2: str  # outside, into c
    e3: str  # outside, out of b
    e4: str  # outside, out of w


def _find_square(net: PlabicNetwork, face_vertices: Sequence[str]) -> SquareSpec:
    vs = list(face_vertices)
    if len(vs) != 4 or len(set(vs)) != 4:
        raise InputError("square move needs four distinct vertices")
    for vid in vs:
        v = net.vertices[vid]
        if v.is_boundary or net.degree(vid) != 3:
            raise InputError(f"vertex {vid} is not internal trivalent")
    inside = set(vs)
    sq_edges = [
        e for e in net.edges.values() if e.tail in inside and e.head in inside
    ]
    if len(sq_edges) != 4:
        raise InputError(f"expected 4 edges among the face vertices, found {len(sq_edges)}")
    c = a = w = b = None
    for vid in vs:
        outs = [e for e in sq_edges if e.tail == vid]
        ins = [e for e in sq_edges if e.head == vid]
        color = net.vertices[vid].color
        if len(outs) == 2 and color == WHITE:
            c = vid
        elif len(ins) == 2 and color == BLACK:
            b = vid
        elif len(outs) == 1 and len(ins) == 1:
            if color == BLACK:
                a = vid
            else:
                w = vid
    if None in (c, a, w, b):
        raise InputError("face does not match the square-move orientation pattern")
    h1 = next(e.id for e in sq_edges if e.tail == c and e.head == a)
    h2 = next(e.id for e in sq_edges if e.tail == c and e.head == b)
    h3 = next(e.id for e in sq_edges if e.tail == a and e.head == w)
    h4 = next(e.id for e in sq_edges if e.tail == w and e.head == b)
    e1 = next(eid for eid in net.in_edges(a) if eid != h1)
    e2 = next(eid for eid in net.in_edges(c))
    e3 = next(eid for eid in net.out_edges(b))
    e4 = next(eid for eid in net.out_edges(w) if eid != h4)
    return SquareSpec(c, a, w, b, h1, h2, h3, h4, e1, e2, e3, e4)


def square_move(
    net: PlabicNetwork, face_vertices: Sequence[str], limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Square move: switch the four colors, remap the square weights, and
    verify the stated inside-vector laws; everything outside is unchanged."""
    sq = _find_square(net, face_vertices)
    E = net.edges
    for eid in (sq.h1, sq.h2, sq.h3, sq.h4):
        if len(E[eid].polyline) != 2:
            raise InputError("square edges must be straight segments")
    l = net.gauge_dir
    d_h3, d_h4 = E[sq.h3].last_dir(), E[sq.h4].first_dir()
    if geom.cyclic_order(d_h4, E[sq.e4].first_dir(), geom.neg(d_h3)) != 0:
        raise InputError("square not oriented as required at its white exit corner")
    if (
        geom.cyclic_order(
            geom.neg(E[sq.h2].last_dir()), E[sq.e3].first_dir(), geom.neg(E[sq.h4].last_dir())
        )
        != 0
    ):
        raise InputError("square not oriented as required at its black exit corner")

    al1, al2, al3, al4 = (E[sq.h1].weight, E[sq.h2].weight, E[sq.h3].weight, E[sq.h4].weight)
    nal2 = al2 + al1 * al3 * al4
    nal1 = al3 * al4 / nal2
    nal3 = al2 * al3 / nal2
    nal4 = al1 * al3 / nal2

    vertices = dict(net.vertices)
    flip = {sq.c: BLACK, sq.a: WHITE, sq.w: BLACK, sq.b: WHITE}
    for vid, color in flip.items():
        vertices[vid] = replace(vertices[vid], color=color)
    edges = dict(net.edges)
    edges[sq.h1] = E[sq.h1].reversed(weight=nal1)
    edges[sq.h2] = replace(E[sq.h2], weight=nal2)
    edges[sq.h3] = replace(E[sq.h3], weight=nal3)
    edges[sq.h4] = E[sq.h4].reversed(weight=nal4)
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("square move output fails validation:\n" + str(rep_v))

    old = solve_system(net, None, limits)
    F3, F4 = old.vectors[sq.h3], old.vectors[sq.h4]
    ih = {k: net.edge_int(getattr(sq, k)) for k in ("h1", "h2", "h3", "h4")}
    g2h4 = geom.gamma2(E[sq.h4].first_dir(), l)
    w_h3h4 = net.junction_wind(sq.h3, sq.h4)
    w_h2mh4 = geom.local_wind(E[sq.h2].last_dir(), geom.neg(E[sq.h4].last_dir()), l)
    w_mh1h2 = geom.local_wind(geom.neg(E[sq.h1].first_dir()), E[sq.h2].first_dir(), l)

    def s(exp: int) -> int:
        return -1 if exp % 2 else 1

    def comb(c1, v1, c2, v2) -> Vector:
        return tuple(c1 * x + c2 * y for x, y in zip(v1, v2))

    tF4 = comb(
        nal4 / al3 * s(ih["h3"] + ih["h4"] + g2h4 + w_h3h4 + 1), F3,
        nal4 * s(ih["h4"] + g2h4), F4,
    )
    tF2 = comb(
        al1 * s(ih["h1"] + g2h4 + w_h2mh4 + w_h3h4 + 1), F3,
        al2 / al4 * s(1 + ih["h2"] + ih["h4"] + g2h4 + w_h2mh4), F4,
    )
    tF1 = tuple(nal1 * s(ih["h1"] + w_mh1h2) * x for x in tF2)
    tF3 = tuple(s(ih["h3"] + ih["h4"] + g2h4 + w_h3h4 + 1) * al2 / al1 * x for x in tF4)

    predicted = dict(old.vectors)
    predicted[sq.h1], predicted[sq.h2] = tF1, tF2
    predicted[sq.h3], predicted[sq.h4] = tF3, tF4
    new = solve_system(new_net, None, limits)
    rep = _compare(
        "square-move", {"face": ",".join(face_vertices)}, net, new_net,
        predicted, new.vectors,
    )
    rep.extras["weights"] = {sq.h1: nal1, sq.h2: nal2, sq.h3: nal3, sq.h4: nal4}
    rep.extras["old_matrix"] = boundary_matrix(net, old, limits).rows
    rep.extras["new_matrix"] = boundary_matrix(new_net, new, limits).rows
    return rep


# --- unicolored flip (M2) ---------------------------------------------------------


def flip_move(
    net: PlabicNetwork,
    e0: str,
    swap: Tuple[str, str],
    new_polylines: Optional[Mapping[str, Sequence[Point]]] = None,
    limits: Optional[FlowLimits] = None,
) -> TransformReport:
    """Flip across a unicolored unit edge, exchanging one edge per endpoint.

    For white endpoints the swapped edges are outgoing, for black incoming.
    Outer vectors are unchanged; the vector on the flip edge follows the
    stated case split.  Replacement polylines may be supplied for the two
    swapped edges when straight reattachment would break planarity.
    """
    e = net.edges[e0]
    v1, v2 = net.vertices[e.tail], net.vertices[e.head]
    if v1.is_boundary or v2.is_boundary or v1.color != v2.color:
        raise InputError("flip edge must join two internal vertices of one color")
    if e.weight != 1:
        raise InputError("flip edge must have unit weight")
    if net.edge_int(e0) != 0 or net.edge_windint(e0) != 0:
        raise InputError("flip edge must not cross gauge rays or wind")
    color = v1.color
    x_id, y_id = swap
    if color == WHITE:
        if x_id not in net.out_edges(v1.id) or x_id == e0:
            raise InputError(f"{x_id} must be an outgoing edge of {v1.id}")
        if y_id not in net.out_edges(v2.id):
            raise InputError(f"{y_id} must be an outgoing edge of {v2.id}")
    else:
        if x_id not in net.in_edges(v1.id):
            raise InputError(f"{x_id} must be an incoming edge of {v1.id}")
        if y_id not in net.in_edges(v2.id) or y_id == e0:
            raise InputError(f"{y_id} must be an incoming edge of {v2.id}")

    # winding additivity across the short flip edge, old configuration
    d0 = e.first_dir()
    for a_id in net.in_edges(v1.id):
        for b_id in net.out_edges(v2.id):
            da, db = net.edges[a_id].last_dir(), net.edges[b_id].first_dir()
            lhs = geom.local_wind(da, d0, net.gauge_dir) + geom.local_wind(d0, db, net.gauge_dir)
            if lhs != geom.local_wind(da, db, net.gauge_dir):
                raise InputError("winding is not additive across the flip edge")

    edges = dict(net.edges)

    def reattach(eid: str, at_tail: bool, new_vertex: str) -> None:
        ed = edges[eid]
        pos = net.vertices[new_vertex].pos
        if new_polylines and eid in new_polylines:
            poly = tuple(new_polylines[eid])
        elif at_tail:
            poly = (pos,) + ed.polyline[1:]
        else:
            poly = ed.polyline[:-1] + (pos,)
        edges[eid] = replace(
            ed, tail=new_vertex if at_tail else ed.tail,
            head=ed.head if at_tail else new_vertex, polyline=poly,
        )

    if color == WHITE:
        reattach(x_id, True, v2.id)
        reattach(y_id, True, v1.id)
    else:
        reattach(x_id, False, v2.id)
        reattach(y_id, False, v1.id)
    new_net = PlabicNetwork(net.vertices.values(), edges.values(), net.gauge_dir)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("flip output fails validation:\n" + str(rep_v))

    # additivity in the new configuration as well
    for a_id in new_net.in_edges(v1.id):
        for b_id in new_net.out_edges(v2.id):
            if a_id == e0 or b_id == e0:
                continue
            da, db = new_net.edges[a_id].last_dir(), new_net.edges[b_id].first_dir()
            lhs = geom.local_wind(da, d0, net.gauge_dir) + geom.local_wind(d0, db, net.gauge_dir)
            if lhs != geom.local_wind(da, db, net.gauge_dir):
                raise InputError("winding is not additive across the flip edge after the move")

    old = solve_system(net, None, limits)
    predicted = dict(old.vectors)
    if color == WHITE:
        contributions = []
        for fid in new_net.out_edges(v2.id):
            sign = -1 if new_net.relation_exponent(e0, fid) else 1
            contributions.append(tuple(sign * c for c in old.vectors[fid]))
        predicted[e0] = tuple(sum(cs) for cs in zip(*contributions))
    new = solve_system(new_net, None, limits)
    return _compare(
        "flip-move", {"edge": e0, "swap": ",".join(swap)}, net, new_net,
        predicted, new.vectors,
    )


# --- bivalent insertion/removal (M3) ------------------------------------------------


def insert_bivalent(
    net: PlabicNetwork,
    eid: str,
    *,
    seg_index: int = 0,
    t: Fraction = Fraction(1, 2),
    color: str = WHITE,
    apex: Optional[Point] = None,
    unit: str = "head",
    id_tail: Optional[str] = None,
    id_head: Optional[str] = None,
    limits: Optional[FlowLimits] = None,
) -> TransformReport:
    """Split an edge at a point of its polyline (or at an off-segment apex).

    The split keeps the product of weights; `unit` says which part carries
    weight 1.  Vectors away from the split edge must be unchanged.
    """
    e = net.edges[eid]
    segs = e.segments()
    if not 0 <= seg_index < len(segs):
        raise InputError(f"segment index {seg_index} out of range")
    t = rat(t)
    if apex is None:
        if not 0 < t < 1:
            raise InputError("split parameter must be strictly inside the segment")
        a, b = segs[seg_index]
        cut = Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
    else:
        cut = apex
    vid = f"{eid}.v"
    while vid in net.vertices:
        vid += "'"
    tail_id = id_tail or f"{eid}.1"
    head_id = id_head or f"{eid}.2"
    if color not in (BLACK, WHITE):
        raise InputError("color must be black or white")
    w_tail, w_head = (Fraction(1), e.weight) if unit == "tail" else (e.weight, Fraction(1))

    poly_tail = e.polyline[: seg_index + 1] + (cut,)
    poly_head = (cut,) + e.polyline[seg_index + 1 :]
    vertices = dict(net.vertices)
    vertices[vid] = Vertex(id=vid, kind="internal", pos=cut, color=color)
    edges = {k: v for k, v in net.edges.items() if k != eid}
    edges[tail_id] = Edge(tail_id, e.tail, vid, w_tail, poly_tail)
    edges[head_id] = Edge(head_id, vid, e.head, w_head, poly_head)
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("insertion breaks the embedding:\n" + str(rep_v))

    old = solve_system(net, None, limits)
    old_exp = net.edge_int(eid) + net.edge_windint(eid)
    head_exp = new_net.edge_int(head_id) + new_net.edge_windint(head_id)
    tail_exp = (
        new_net.edge_int(tail_id)
        + new_net.edge_windint(tail_id)
        + new_net.junction_wind(tail_id, head_id)
    )
    s_head = -1 if (head_exp - old_exp) % 2 else 1
    s_tail = -1 if (tail_exp + head_exp - old_exp) % 2 else 1
    predicted = {k: v for k, v in old.vectors.items() if k != eid}
    predicted[head_id] = tuple(s_head * w_head / e.weight * c for c in old.vectors[eid])
    predicted[tail_id] = tuple(s_tail * c for c in old.vectors[eid])
    new = solve_system(new_net, None, limits)
    rep = _compare(
        "insert-bivalent",
        {"edge": eid, "seg": seg_index, "t": t, "color": color},
        net, new_net, predicted, new.vectors,
    )
    if not rep.ok:
        raise InputError("insertion changed the face configuration")
    rep.extras["parts"] = (tail_id, head_id)
    rep.extras["vertex"] = vid
    return rep


def remove_bivalent(
    net: PlabicNetwork, vid: str, merged_id: Optional[str] = None,
    limits: Optional[FlowLimits] = None,
) -> TransformReport:
    """Merge the two edges at a bivalent vertex, keeping the geometry."""
    v = net.vertices[vid]
    if v.is_boundary or net.degree(vid) != 2:
        raise InputError(f"{vid} is not an internal bivalent vertex")
    ins, outs = net.in_edges(vid), net.out_edges(vid)
    if len(ins) != 1 or len(outs) != 1:
        raise InputError(f"{vid} is not a pass-through vertex")
    e1, e2 = net.edges[ins[0]], net.edges[outs[0]]
    if e1.id == e2.id:
        raise InputError("cannot remove the vertex of a self-loop")
    mid = merged_id or e1.id
    vertices = {k: v2 for k, v2 in net.vertices.items() if k != vid}
    edges = {k: ed for k, ed in net.edges.items() if k not in (e1.id, e2.id)}
    if mid in edges:
        raise InputError(f"merged edge id {mid!r} already in use")
    edges[mid] = Edge(mid, e1.tail, e2.head, e1.weight * e2.weight, e1.polyline + e2.polyline[1:])
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("removal breaks the embedding:\n" + str(rep_v))
    old = solve_system(net, None, limits)
    predicted = {k: val for k, val in old.vectors.items() if k not in (e1.id, e2.id)}
    predicted[mid] = old.vectors[e1.id]
    new = solve_system(new_net, None, limits)
    rep = _compare("remove-bivalent", {"vertex": vid}, net, new_net, predicted, new.vectors)
    if not rep.ok:
        raise InputError("removal changed the face configuration")
    rep.extras["merged"] = mid
    return rep


# --- reductions -----------------------------------------------------------------


def reduce_parallel(
    net: PlabicNetwork, pair: Tuple[str, str], limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Contract a white-black pair joined by two parallel edges into one edge."""
    e2, e3 = (net.edges[pair[0]], net.edges[pair[1]])
    if e2.tail != e3.tail or e2.head != e3.head:
        raise InputError("edges are not parallel")
    v1, v2 = net.vertices[e2.tail], net.vertices[e2.head]
    if v1.is_boundary or v2.is_boundary or v1.color != WHITE or v2.color != BLACK:
        raise InputError("parallel pair must run from a white to a black trivalent vertex")
    if net.degree(v1.id) != 3 or net.degree(v2.id) != 3:
        raise InputError("parallel reduction needs trivalent endpoints")
    e1 = net.edges[net.in_edges(v1.id)[0]]
    e4 = net.edges[net.out_edges(v2.id)[0]]
    for a, b in ((e1.id, e2.id), (e1.id, e3.id), (e2.id, e4.id), (e3.id, e4.id)):
        if net.junction_wind(a, b) != 0:
            raise InputError(f"junction {a}->{b} winds; pattern not tight")
    for eid in (e2.id, e3.id):
        if net.edge_windint(eid) != 0:
            raise InputError(f"parallel edge {eid} winds internally")
    if (net.edge_int(e2.id) - net.edge_int(e3.id)) % 2:
        raise InputError("parallel edges cross rays with different parity")

    merged_id = e1.id
    vertices = {k: v for k, v in net.vertices.items() if k not in (v1.id, v2.id)}
    edges = {
        k: ed for k, ed in net.edges.items() if k not in (e1.id, e2.id, e3.id, e4.id)
    }
    w = e1.weight * (e2.weight + e3.weight) * e4.weight
    poly = e1.polyline + e2.polyline[1:] + e4.polyline[1:]
    edges[merged_id] = Edge(merged_id, e1.tail, e4.head, w, poly)
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)
    rep_v = validate(new_net)
    if not rep_v.ok_except():
        raise InputError("reduction breaks the embedding:\n" + str(rep_v))
    old = solve_system(net, None, limits)
    predicted = {
        k: v for k, v in old.vectors.items() if k not in (e1.id, e2.id, e3.id, e4.id)
    }
    predicted[merged_id] = old.vectors[e1.id]
    new = solve_system(new_net, None, limits)
    rep = _compare("reduce-parallel", {"pair": ",".join(pair)}, net, new_net, predicted, new.vectors)
    rep.extras["merged"] = merged_id
    rep.extras["weight"] = w
    rep.extras["old_matrix"] = boundary_matrix(net, old, limits).rows
    rep.extras["new_matrix"] = boundary_matrix(new_net, new, limits).rows
    return rep


def reduce_dipole(
    net: PlabicNetwork, vid: str, limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Delete an isolated two-vertex cycle; its edges carried null vectors."""
    comp = {vid}
    stack = [vid]
    while stack:
        u = stack.pop()
        for eid in net.out_edges(u) + net.in_edges(u):
            for wid in (net.edges[eid].tail, net.edges[eid].head):
                if wid not in comp:
                    comp.add(wid)
                    stack.append(wid)
    if any(net.vertices[u].is_boundary for u in comp):
        raise InputError("component touches the boundary; not a dipole")
    comp_edges = {eid for eid, e in net.edges.items() if e.tail in comp}
    if len(comp) != 2 or len(comp_edges) != 2:
        raise InputError("component is not a two-vertex dipole")
    old = solve_system(net, None, limits)
    zero = zero_vector(net.n)
    for eid in comp_edges:
        if old.vectors[eid] != zero:
            raise InternalInconsistencyError("dipole edge carries a nonzero vector")
    vertices = {k: v for k, v in net.vertices.items() if k not in comp}
    edges = {k: e for k, e in net.edges.items() if k not in comp_edges}
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)
    predicted = {k: v for k, v in old.vectors.items() if k not in comp_edges}
    new = solve_system(new_net, None, limits)
    rep = _compare("reduce-dipole", {"component": vid}, net, new_net, predicted, new.vectors)
    rep.extras["removed"] = sorted(comp_edges)
    return rep


def reduce_leaf(
    net: PlabicNetwork, leaf: str, limits: Optional[FlowLimits] = None
) -> TransformReport:
    """Remove a degree-1 vertex feeding a trivalent white vertex.

    The white vertex disconnects: each outgoing edge acquires its own copy
    of the leaf (weights multiply by the leaf edge's), so E1 = E12 + E13.
    """
    u = net.vertices[leaf]
    if u.is_boundary or net.degree(leaf) != 1 or not net.out_edges(leaf):
        raise InputError(f"{leaf} is not a leaf with one outgoing edge")
    e1 = net.edges[net.out_edges(leaf)[0]]
    v1 = net.vertices[e1.head]
    if v1.is_boundary or v1.color != WHITE or net.degree(v1.id) != 3:
        raise InputError("leaf must feed a trivalent white vertex")
    if net.edge_int(e1.id) != 0 or net.edge_windint(e1.id) != 0:
        raise InputError("leaf edge must not cross rays or wind")
    out2, out3 = net.out_edges(v1.id)
    for fid in (out2, out3):
        if net.junction_wind(e1.id, fid) != 0:
            raise InputError(f"junction {e1.id}->{fid} winds; leaf not tight")
    e2, e3 = net.edges[out2], net.edges[out3]

    vertices = {k: v for k, v in net.vertices.items() if k not in (leaf, v1.id)}
    edges = {k: e for k, e in net.edges.items() if k not in (e1.id, e2.id, e3.id)}
    # first replacement leaf sits at the old junction; the second is nudged
    # along its edge so positions stay distinct
    u2 = f"{leaf}.2"
    vertices[u2] = Vertex(id=u2, kind="internal", pos=v1.pos, color=u.color)
    edges[e2.id] = Edge(e2.id, u2, e2.head, e1.weight * e2.weight, e2.polyline)
    a, b = e3.segments()[0]
    cuts = []
    for r in net.gauge_rays():
        if a == r.origin or b == r.origin:
            continue
        uvec, wvec = geom.seg_dir(a, b), geom.sub(a, r.origin)
        denom = geom.cross(r.dir, uvec)
        if denom == 0:
            continue
        t_ray = geom.cross(wvec, uvec) / denom
        sv = -geom.cross(r.dir, wvec) / denom
        if t_ray > 0 and 0 < sv < 1:
            cuts.append(sv)
    t0 = min(cuts) / 2 if cuts else Fraction(1, 2)
    start = Point(a.x + t0 * (b.x - a.x), a.y + t0 * (b.y - a.y))
    u3 = f"{leaf}.3"
    vertices[u3] = Vertex(id=u3, kind="internal", pos=start, color=u.color)
    edges[e3.id] = Edge(
        e3.id, u3, e3.head, e1.weight * e3.weight, (start,) + e3.polyline[1:]
    )
    new_net = PlabicNetwork(vertices.values(), edges.values(), net.gauge_dir)

    old = solve_system(net, None, limits)
    predicted = {k: v for k, v in old.vectors.items() if k not in (e1.id, e2.id, e3.id)}
    predicted[e2.id] = tuple(e1.weight * c for c in old.vectors[e2.id])
    predicted[e3.id] = tuple(e1.weight * c for c in old.vectors[e3.id])
    new = solve_system(new_net, None, limits)
    rep = _compare("reduce-leaf", {"vertex": leaf}, net, new_net, predicted, new.vectors)
    rep.extras["split_identity_ok"] = old.vectors[e1.id] == tuple(
        x + y for x, y in zip(predicted[e2.id], predicted[e3.id])
    )
    rep.extras["old_matrix"] = boundary_matrix(net, old, limits).rows
    rep.extras["new_matrix"] = boundary_matrix(new_net, new, limits).rows
    return rep


# --- appendix identity checker ----------------------------------------------------


@dataclass
class IdentityReport:
    checks: int = 0
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _mod2(x: int) -> int:
    return x % 2


def check_vertex_identities(net: PlabicNetwork, trials: int, rng) -> IdentityReport:
    """Randomized verification of the mod-2 vertex identities under reversal.

    Each trial reverses a random simple path (or cycle) and checks, at every
    trivalent vertex on the curve, the black/white sign identities relating
    windings, crossings, cyclic order, and the marking index; off-curve
    vertices are checked against the crossing-difference identity.
    """
    rep = IdentityReport()
    l = net.gauge_dir
    sources = net.source_base()
    paths = _all_simple_source_paths(net)
    cycles_ = _directed_cycles(net)
    options = [("path", p) for p in paths] + [("cycle", c) for c in cycles_]
    if not options:
        return rep
    for _ in range(trials):
        kind, curve = options[rng.randrange(len(options))]
        if kind == "path":
            i0 = net.vertices[net.edges[curve[0]].tail].label
            j0 = net.vertices[net.edges[curve[-1]].head].label
            marking = _path_marking(net, curve, i0, j0)
        else:
            marking = _cycle_marking(net, curve)
        gamma = gamma_index(net, marking, curve)
        new_net = _reverse_edges(net, curve)
        on = set(curve)

        def hat_int(eid: str) -> int:
            return new_net.edge_int(eid)

        pairs = list(zip(curve, curve[1:]))
        if kind == "cycle":
            pairs.append((curve[-1], curve[0]))
        for e1, e2 in pairs:
            vtx = net.edges[e1].head
            v = net.vertices[vtx]
            if net.degree(vtx) != 3:
                continue
            others = [
                eid for eid in net.in_edges(vtx) + net.out_edges(vtx) if eid not in (e1, e2)
            ]
            (f,) = others
            a = net.edges[e1].last_dir()
            b = net.edges[e2].first_dir()
            g2 = geom.gamma2(a, l)
            if v.color == BLACK:
                fdir = net.edges[f].last_dir()
                co = geom.cyclic_order(a, geom.neg(b), fdir)
                lhs1 = _mod2(hat_int(f) + net.edge_int(f) + gamma[f] + gamma.gamma1[e1])
                if lhs1 != co:
                    rep.violations.append(f"black crossing identity at {vtx} ({e1},{e2},{f})")
                lhs2 = _mod2(
                    geom.local_wind(a, b, l)
                    + geom.local_wind(fdir, b, l)
                    + geom.local_wind(fdir, geom.neg(a), l)
                    + g2
                )
                if lhs2 != co:
                    rep.violations.append(f"black winding identity at {vtx} ({e1},{e2},{f})")
            else:
                fdir = net.edges[f].first_dir()
                co = geom.cyclic_order(a, geom.neg(b), geom.neg(fdir))
                lhs1 = _mod2(gamma[f] + gamma.gamma1[e1])
                if lhs1 != co:
                    rep.violations.append(f"white marking identity at {vtx} ({e1},{e2},{f})")
                lhs2 = _mod2(
                    geom.local_wind(a, fdir, l)
                    + geom.local_wind(geom.neg(b), fdir, l)
                    + geom.local_wind(geom.neg(b), geom.neg(a), l)
                    + g2
                )
                if lhs2 != 1 - co:
                    rep.violations.append(f"white winding identity at {vtx} ({e1},{e2},{f})")
            rep.checks += 2
        # off-curve vertices: crossing difference against marking difference
        curve_vertices = {net.edges[eid].head for eid in curve} | {
            net.edges[eid].tail for eid in curve
        }
        for vtx, v in net.vertices.items():
            if v.is_boundary or vtx in curve_vertices:
                continue
            for fin in net.in_edges(vtx):
                for gout in net.out_edges(vtx):
                    lhs = _mod2(net.edge_int(fin) - hat_int(fin))
                    rhs = _mod2(gamma[fin] - gamma[gout])
                    if lhs != rhs:
                        rep.violations.append(
                            f"crossing-difference identity at {vtx} ({fin},{gout})"
                        )
                    rep.checks += 1
    return rep


def _all_simple_source_paths(net: PlabicNetwork, cap: int = 64) -> List[Tuple[str, ...]]:
    out: List[Tuple[str, ...]] = []
    for i in net.source_base():
        start = net.boundary_edge(i).id

        def grow(walk: List[str], seen: set) -> None:
            if len(out) >= cap:
                return
            head = net.edges[walk[-1]].head
            if net.vertices[head].is_boundary:
                out.append(tuple(walk))
                return
            if head in seen:
                return
            seen.add(head)
            for nxt in net.out_edges(head):
                grow(walk + [nxt], seen)
            seen.remove(head)

        grow([start], set())
    return out


def _directed_cycles(net: PlabicNetwork, cap: int = 64) -> List[Tuple[str, ...]]:
    from .flows import simple_cycles

    return simple_cycles(net)[:cap]


def a10_identity_holds(u: Dir, v: Dir, l: Dir) -> bool:
    """wind(u,v) + wind(-v,-u) + gamma2(u) + gamma2(v) is even."""
    total = (
        geom.local_wind(u, v, l)
        + geom.local_wind(geom.neg(v), geom.neg(u), l)
        + geom.gamma2(u, l)
        + geom.gamma2(v, l)
    )
    return total % 2 == 0
