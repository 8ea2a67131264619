"""Edge vectors: linear-system solve, flow-ratio formula, truncated path sums.

Every edge of a perfectly oriented network carries a vector in Q^n whose
j-th component is a signed weighted sum over directed walks from the edge to
the boundary sink b_j.  Three independent computations are provided:

* :func:`solve_system` solves the exact linear relations at the internal
  vertices (unique solution; the system determinant equals the total
  conservative-flow weight, so it is 1 on acyclic orientations);
* :func:`talaska_vector` evaluates the edge-flow ratio formula;
* :func:`truncated_vector` sums walks directly up to a depth cap, with an
  exact residual bound when the cycle weights permit one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import InputError, InternalInconsistencyError, ResourceCapError
from .flows import FlowLimits, enum_conservative, enum_edge_flows
from .network import BLACK, WHITE, PlabicNetwork

Vector = Tuple[Fraction, ...]


def canonical_bc(net: PlabicNetwork) -> Dict[int, Vector]:
    """Standard basis vector E_j at each boundary sink b_j."""
    n = net.n
    return {j: unit_vector(n, j) for j in net.sink_labels()}


def unit_vector(n: int, j: int) -> Vector:
    return tuple(Fraction(1) if i == j else Fraction(0) for i in range(1, n + 1))


def _vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _vec_scale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def zero_vector(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


def check_independent(vectors: Sequence[Vector]) -> bool:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(rows)


def _validated_bc(net: PlabicNetwork, bc: Optional[Mapping[int, Vector]]) -> Dict[int, Vector]:
    sinks = net.sink_labels()
    if bc is None:
        return canonical_bc(net)
    got = {int(j): tuple(v) for j, v in bc.items()}
    if sorted(got) != sorted(sinks):
        raise InputError(f"boundary conditions must cover sinks {sinks}, got {sorted(got)}")
    for j, v in got.items():
        if len(v) != net.n:
            raise InputError(f"boundary vector at b{j} has length {len(v)}, expected {net.n}")
    if got and not check_independent(list(got.values())):
        raise InputError("boundary sink vectors must be linearly independent")
    return got


@dataclass
class SolveResult:
    vectors: Dict[str, Vector]
    det_m: Fraction


def solve_system(
    net: PlabicNetwork,
    bc: Optional[Mapping[int, Vector]] = None,
    limits: Optional[FlowLimits] = None,
) -> SolveResult:
    """Exact solve of the vertex relations with sink edges pinned.

    Unknowns are the vectors on edges not ending at a boundary sink; the
    equation for edge e eliminates it against the outgoing edges at its head.
    The returned determinant equals the sum of all conservative flow weights.
    """
    limits = limits or FlowLimits()
    if len(net.edges) > limits.max_edges:
        raise ResourceCapError(f"network has {len(net.edges)} edges, cap is {limits.max_edges}")
    bcv = _validated_bc(net, bc)
    n = net.n

    pinned: Dict[str, Vector] = {}
    for j in net.sink_labels():
        e = net.boundary_edge(j)
        sign = -1 if net.sink_pin_exponent(e.id) else 1
        pinned[e.id] = _vec_scale(sign * e.weight, bcv[j])

    unknowns = [eid for eid in net.edges if eid not in pinned]
    index = {eid: i for i, eid in enumerate(unknowns)}
    m = len(unknowns)
    mat = [[Fraction(0)] * m for _ in range(m)]
    rhs = [[Fraction(0)] * n for _ in range(m)]
    for eid in unknowns:
        r = index[eid]
        mat[r][r] = Fraction(1)
        head = net.edges[eid].head
        assert not net.vertices[head].is_boundary
        for fid in net.out_edges(head):
            sign = -1 if net.relation_exponent(eid, fid) else 1
            coeff = sign * net.edges[eid].weight
            if fid in pinned:
                for c in range(n):
                    rhs[r][c] += coeff * pinned[fid][c]
            else:
                mat[r][index[fid]] -= coeff

    det, sol = _gauss_solve(mat, rhs)
    if det == 0:
        raise InternalInconsistencyError("vertex relation system is singular")
    vectors = dict(pinned)
    for eid in unknowns:
        vectors[eid] = tuple(sol[index[eid]])
    return SolveResult(vectors=vectors, det_m=det)


def _gauss_solve(mat: List[List[Fraction]], rhs: List[List[Fraction]]):
    """In-place Gaussian elimination; returns (det, solution rows)."""
    m = len(mat)
    ncols = len(rhs[0]) if rhs else 0
    det = Fraction(1)
    for col in range(m):
        piv = next((r for r in range(col, m) if mat[r][col] != 0), None)
        if piv is None:
            return Fraction(0), rhs
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for r in range(m):
            if r != col and mat[r][col] != 0:
                f = mat[r][col] * inv
                for c in range(col, m):
                    mat[r][c] -= f * mat[col][c]
                for c in range(ncols):
                    rhs[r][c] -= f * rhs[col][c]
    for r in range(m):
        inv = 1 / mat[r][r]
        for c in range(ncols):
            rhs[r][c] *= inv
    return det, rhs


def talaska_vector(
    net: PlabicNetwork,
    edge_id: str,
    bc: Optional[Mapping[int, Vector]] = None,
    limits: Optional[FlowLimits] = None,
    conservative=None,
) -> Vector:
    """Edge vector from the flow-ratio formula.

    Sum over sinks of (signed edge-flow weight sum / conservative total)
    times the sink's boundary vector.
    """
    limits = limits or FlowLimits()
    bcv = _validated_bc(net, bc)
    cons = conservative if conservative is not None else enum_conservative(net, limits)
    denom = sum((w for _, w in cons), Fraction(0))
    out = zero_vector(net.n)
    for j in net.sink_labels():
        num = Fraction(0)
        for flow in enum_edge_flows(net, edge_id, j, limits, conservative=cons):
            num += flow.stats.sign * flow.stats.weight
        if num:
            out = _vec_add(out, _vec_scale(num / denom, bcv[j]))
    return out


def talaska_all(
    net: PlabicNetwork,
    bc: Optional[Mapping[int, Vector]] = None,
    limits: Optional[FlowLimits] = None,
) -> Dict[str, Vector]:
    limits = limits or FlowLimits()
    cons = enum_conservative(net, limits)
    return {
        eid: talaska_vector(net, eid, bc, limits, conservative=cons) for eid in net.edges
    }


@dataclass
class TruncatedVector:
    vector: Vector
    residual: Optional[Fraction]
    warning: Optional[str] = None


def truncated_vector(
    net: PlabicNetwork,
    edge_id: str,
    depth: int,
    limits: Optional[FlowLimits] = None,
) -> TruncatedVector:
    """Signed path sum over walks of at most `depth` edges, canonical basis.

    Exact on acyclic networks once depth reaches the edge count.  On cyclic
    networks the residual bounds the truncation error componentwise; it is
    derived from the exact unsigned walk totals and is only available when
    those totals converge (all simple cycle weights below 1).
    """
    limits = limits or FlowLimits()
    if edge_id not in net.edges:
        raise InputError(f"unknown edge {edge_id!r}")
    if depth < 1:
        raise InputError("depth must be >= 1")
    n = net.n
    sink_of: Dict[str, int] = {}
    for j in net.sink_labels():
        sink_of[net.boundary_edge(j).id] = j

    acc = [Fraction(0)] * n
    # frontier entries: (edge id, weight, wind + int parity)
    e0 = net.edges[edge_id]
    frontier = [(edge_id, e0.weight, (net.edge_windint(edge_id) + net.edge_int(edge_id)) % 2)]
    states = 0
    for _ in range(depth):
        nxt = []
        for eid, w, par in frontier:
            if eid in sink_of:
                acc[sink_of[eid] - 1] += (-1 if par else 1) * w
                continue
            head = net.edges[eid].head
            if net.vertices[head].is_boundary:
                continue
            for fid in net.out_edges(head):
                f = net.edges[fid]
                p2 = (
                    par
                    + net.junction_wind(eid, fid)
                    + net.edge_windint(fid)
                    + net.edge_int(fid)
                ) % 2
                nxt.append((fid, w * f.weight, p2))
                states += 1
                if states > limits.max_flows:
                    raise ResourceCapError(f"walk expansion exceeded {limits.max_flows} states")
        frontier = nxt
        if not frontier:
            break

    if not frontier:
        return TruncatedVector(tuple(acc), Fraction(0))

    totals = _unsigned_totals(net)
    if totals is None:
        return TruncatedVector(
            tuple(acc), None, warning="no convergence bound: a cycle weight is >= 1"
        )
    residual = Fraction(0)
    for eid, w, _ in frontier:
        if eid in sink_of:
            residual += w
        else:
            head = net.edges[eid].head
            residual += w * sum((totals[fid] for fid in net.out_edges(head)), Fraction(0))
    return TruncatedVector(tuple(acc), residual)


def _unsigned_totals(net: PlabicNetwork) -> Optional[Dict[str, Fraction]]:
    """T[e] = total weight of all walks starting at e and ending at a sink.

    None when the unsigned system diverges (cycle weights too large).
    """
    sink_edges = {net.boundary_edge(j).id for j in net.sink_labels()}
    unknowns = [eid for eid in net.edges if eid not in sink_edges]
    index = {eid: i for i, eid in enumerate(unknowns)}
    m = len(unknowns)
    mat = [[Fraction(0)] * m for _ in range(m)]
    rhs = [[Fraction(0)] for _ in range(m)]
    for eid in unknowns:
        r = index[eid]
        mat[r][r] = Fraction(1)
        head = net.edges[eid].head  # never a boundary vertex for a non-sink edge
        w = net.edges[eid].weight
        for fid in net.out_edges(head):
            if fid in sink_edges:
                rhs[r][0] += w * net.edges[fid].weight
            else:
                mat[r][index[fid]] -= w
    det, sol = _gauss_solve(mat, rhs)
    if det <= 0:
        return None
    totals = {eid: sol[index[eid]][0] for eid in unknowns}
    for eid in sink_edges:
        totals[eid] = net.edges[eid].weight
    if any(t < 0 for t in totals.values()):
        return None
    return totals


# --- boundary measurement matrix -------------------------------------------------


@dataclass
class BoundaryMatrix:
    rows: Tuple[Vector, ...]
    pivots: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def entry(self, r: int, j: int) -> Fraction:
        """A^r_j with r in [1..k] and j a boundary label."""
        return self.rows[r - 1][j - 1]


def boundary_matrix(
    net: PlabicNetwork,
    solved: Optional[SolveResult] = None,
    limits: Optional[FlowLimits] = None,
) -> BoundaryMatrix:
    """Rows are the boundary-source edge vectors plus their pivot units."""
    res = solved if solved is not None else solve_system(net, None, limits)
    pivots = tuple(net.source_base())
    rows = []
    for i_r in pivots:
        e = net.boundary_edge(i_r)
        row = _vec_add(res.vectors[e.id], unit_vector(net.n, i_r))
        rows.append(row)
    bm = BoundaryMatrix(tuple(rows), pivots)
    for r, i_r in enumerate(pivots, start=1):
        for s, i_s in enumerate(pivots, start=1):
            expect = Fraction(1) if r == s else Fraction(0)
            if bm.entry(r, i_s) != expect:
                raise InternalInconsistencyError(
                    f"pivot block is not the identity at row {r}, column {i_s}"
                )
    return bm


def tnn_check(bm: BoundaryMatrix) -> Tuple[List[Tuple[int, ...]], bool]:
    """All maximal minors, returned as the matroid {J : det A_J != 0} and a
    verdict: True iff every minor is non-negative."""
    k, n = bm.k, bm.n
    matroid: List[Tuple[int, ...]] = []
    verdict = True
    if k == 0:
        return matroid, verdict
    for cols in combinations(range(1, n + 1), k):
        minor = _det([[bm.entry(r, j) for j in cols] for r in range(1, k + 1)])
        if minor != 0:
            matroid.append(cols)
        if minor < 0:
            verdict = False
    return matroid, verdict


def _det(rows: List[List[Fraction]]) -> Fraction:
    m = len(rows)
    det = Fraction(1)
    rows = [row[:] for row in rows]
    for col in range(m):
        piv = next((r for r in range(col, m) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, m):
            if rows[r][col] != 0:
                f = rows[r][col] * inv
                for c in range(col, m):
                    rows[r][c] -= f * rows[col][c]
    return det


def null_edges(
    net: PlabicNetwork,
    solved: Optional[SolveResult] = None,
    limits: Optional[FlowLimits] = None,
) -> set:
    """Edges whose canonical edge vector vanishes identically.

    Null vectors propagate: through a black or bivalent white head vertex
    every incident edge must then be null as well; a violation means the
    solve is inconsistent.
    """
    res = solved if solved is not None else solve_system(net, None, limits)
    zero = zero_vector(net.n)
    nulls = {eid for eid, v in res.vectors.items() if v == zero}
    for eid in nulls:
        head = net.edges[eid].head
        v = net.vertices[head]
        if v.is_boundary:
            continue
        incident = net.out_edges(head) + net.in_edges(head)
        propagate = v.color == BLACK or (v.color == WHITE and net.degree(head) == 2)
        if propagate:
            for fid in incident:
                if res.vectors[fid] != zero:
                    raise InternalInconsistencyError(
                        f"null vector at {eid} fails to propagate through {head}"
                    )
    return nulls
