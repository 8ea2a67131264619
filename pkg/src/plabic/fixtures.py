"""Hand-built reference networks used by tests, docs, and the CLI gallery.

`two_loop_network` is the small rank-1 network on two boundary vertices whose
conservative flows have weights p and q; its edge vectors have closed forms
that the test suite pins exactly.  `two_loop_reweighted` carries the same
boundary measurement with redistributed weights (legal on this reducible
graph), which removes every null edge vector.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .errors import InputError
from .geom import direction, point
from .network import BLACK, WHITE, Edge, PlabicNetwork, Vertex
from .rationals import RatLike, rat


def _v(vid, kind, x, y, label=None, color=None) -> Vertex:
    return Vertex(id=vid, kind=kind, pos=point(x, y), label=label, color=color)


def _e(eid, tail, head, weight, pts) -> Edge:
    return Edge(eid, tail, head, rat(weight), tuple(point(x, y) for x, y in pts))


def two_loop_network(p: RatLike, q: RatLike) -> PlabicNetwork:
    """Rank-1 network on two boundary vertices with loop weights p and q.

    Source b2, sink b1.  Conservative flows: the trivial one plus two cycles
    of weights p and q sharing the bar edge "s".  With canonical boundary
    conditions the edge vectors satisfy, with D = 1 + p + q:

        E_u1 = (1, 0)                E_u2 = ((1+2p)/D, 0)
        E_s  = E_m = ((q-p)/D, 0)    E_h  = ((p-q)/D, 0)
        E_up = (p(1+2q)/D, 0)        E_qe = (q(1+2p)/D, 0)

    so s, m, h all become null exactly when p = q.
    """
    p, q = rat(p), rat(q)
    if p <= 0 or q <= 0:
        raise InputError("loop weights must be positive")
    vertices = [
        _v("b1", "boundary", 1, 0, label=1),
        _v("b2", "boundary", 9, 0, label=2),
        _v("Y", "internal", 2, 2, color=BLACK),
        _v("Xp", "internal", "23/5", "27/5", color=WHITE),
        _v("W", "internal", 4, 4, color=WHITE),
        _v("M", "internal", 6, 4, color=BLACK),
        _v("A", "internal", "9/2", "11/5", color=BLACK),
        _v("Xq", "internal", "11/2", "11/5", color=WHITE),
    ]
    edges = [
        _e("u1", "Y", "b1", 1, [(2, 2), (1, 0)]),
        _e(
            "tp",
            "Xp",
            "Y",
            1,
            [
                ("23/5", "27/5"),
                (5, 6),
                ("33/5", "61/10"),
                (7, 4),
                ("31/5", "7/5"),
                ("29/10", "13/10"),
                (2, 2),
            ],
        ),
        _e("tq", "Xq", "Y", 1, [("11/2", "11/5"), (2, 2)]),
        _e("up", "W", "Xp", p, [(4, 4), ("23/5", "27/5")]),
        _e("m", "Xp", "M", 1, [("23/5", "27/5"), (6, 4)]),
        _e("s", "M", "W", 1, [(6, 4), (4, 4)]),
        _e("qe", "W", "A", q, [(4, 4), ("9/2", "11/5")]),
        _e("g", "A", "Xq", 1, [("9/2", "11/5"), ("11/2", "11/5")]),
        _e("h", "Xq", "M", 1, [("11/2", "11/5"), (6, 4)]),
        _e(
            "u2",
            "b2",
            "A",
            1,
            [
                (9, 0),
                ("43/5", "63/10"),
                ("8/5", "31/5"),
                ("3/2", "47/20"),
                ("19/5", "23/10"),
                ("9/2", "11/5"),
            ],
        ),
    ]
    return PlabicNetwork(vertices, edges, direction(1, 12))


TWO_LOOP_PATH = ("u2", "g", "h", "s", "up", "tp", "u1")


def two_loop_reweighted(p: RatLike, q: RatLike, split: RatLike) -> PlabicNetwork:
    """Same graph and point as :func:`two_loop_network`, no null vectors.

    The reducible graph admits weightings that are not vertex-gauge
    equivalent yet represent the same boundary measurement.  For any
    0 < split < p + q this weighting keeps the boundary row
    ((1+2p)/(1+p+q), 1) while every edge vector becomes nonzero; the three
    formerly null edges carry +/-(1+p)/(1+p+q) in the first component.
    """
    p, q, b = rat(p), rat(q), rat(split)
    if not 0 < b < p + q:
        raise InputError(f"split must lie strictly between 0 and p+q, got {b}")
    net = two_loop_network(p, q)
    new_weights: Dict[str, Fraction] = {
        "up": b,
        "qe": p + q - b,
        "tp": (1 + 2 * p + q - b) / b,
        "u2": (1 + 2 * p) / (2 + 2 * p + q),
    }
    edges = {}
    for eid, e in net.edges.items():
        w = new_weights.get(eid, e.weight)
        edges[eid] = Edge(e.id, e.tail, e.head, w, e.polyline)
    return PlabicNetwork(list(net.vertices.values()), list(edges.values()), net.gauge_dir)


def single_strand_network() -> PlabicNetwork:
    """Smallest perfect network: b1 -> b2 through one bivalent white vertex."""
    vertices = [
        _v("b1", "boundary", 1, 0, label=1),
        _v("b2", "boundary", 3, 0, label=2),
        _v("V", "internal", 2, 2, color=WHITE),
    ]
    edges = [
        _e("e1", "b1", "V", 1, [(1, 0), (2, 2)]),
        _e("e2", "V", "b2", 1, [(2, 2), (3, 0)]),
    ]
    return PlabicNetwork(vertices, edges, direction(1, 12))
