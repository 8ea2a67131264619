"""Exact planar primitives over rational coordinates.

Every predicate here is decided with `fractions.Fraction` arithmetic; no
floating point enters any sign computation.  Degenerate configurations that
the sign rules cannot classify raise :class:`GenericityError` instead of
falling back to a tie-break.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple, Sequence, Tuple

from .errors import GenericityError, InputError
from .rationals import RatLike, rat


class Point(NamedTuple):
    x: Fraction
    y: Fraction


class Dir(NamedTuple):
    dx: Fraction
    dy: Fraction


class Ray(NamedTuple):
    origin: Point
    dir: Dir


def point(x: RatLike, y: RatLike) -> Point:
    return Point(rat(x), rat(y))


def direction(dx: RatLike, dy: RatLike) -> Dir:
    d = Dir(rat(dx), rat(dy))
    if d.dx == 0 and d.dy == 0:
        raise InputError("zero direction")
    return d


def ray(origin: Point, dir: Dir) -> Ray:
    if dir.dx == 0 and dir.dy == 0:
        raise InputError("ray with zero direction")
    return Ray(origin, dir)


def seg_dir(a: Point, b: Point) -> Dir:
    """Direction of the segment from a to b; the segment must not degenerate."""
    if a == b:
        raise InputError(f"degenerate segment at {a}")
    return Dir(b.x - a.x, b.y - a.y)


def sub(a: Point, b: Point) -> Dir:
    return Dir(a.x - b.x, a.y - b.y)


def neg(u: Dir) -> Dir:
    return Dir(-u.dx, -u.dy)


def cross(u: Dir, v: Dir) -> Fraction:
    return u.dx * v.dy - u.dy * v.dx


def dot(u: Dir, v: Dir) -> Fraction:
    return u.dx * v.dx + u.dy * v.dy


def perp_left(u: Dir) -> Dir:
    """Rotate by +90 degrees (counterclockwise)."""
    return Dir(-u.dy, u.dx)


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def is_parallel(u: Dir, v: Dir) -> bool:
    """Same direction up to positive scale."""
    return cross(u, v) == 0 and dot(u, v) > 0


def is_antiparallel(u: Dir, v: Dir) -> bool:
    return cross(u, v) == 0 and dot(u, v) < 0


def _require_nonzero(*dirs: Dir) -> None:
    for d in dirs:
        if d.dx == 0 and d.dy == 0:
            raise InputError("zero direction")


def orient_sign(u: Dir, v: Dir) -> int:
    """+1 if (u, v) turns counterclockwise, -1 if clockwise, 0 if collinear.

    Collinear covers both the parallel and the antiparallel case, matching
    the sign of the cross product.
    """
    _require_nonzero(u, v)
    return _sign(cross(u, v))


def local_wind(u: Dir, v: Dir, l: Dir) -> int:
    """Local winding of the ordered pair (u, v) against the gauge direction l.

    +1 when s(u,v) = s(u,l) = s(l,v) = +1, -1 when all three are -1, and 0
    otherwise.  Exactly antiparallel pairs have no generic winding and are
    rejected.
    """
    _require_nonzero(u, v, l)
    if is_antiparallel(u, v):
        raise GenericityError(f"antiparallel pair {u}, {v} has no generic winding")
    suv = orient_sign(u, v)
    sul = orient_sign(u, l)
    slv = orient_sign(l, v)
    if suv == sul == slv == 1:
        return 1
    if suv == sul == slv == -1:
        return -1
    return 0


def gamma2(u: Dir, l: Dir) -> int:
    """(1 - s(u, l)) / 2 for non-collinear u, l; 0 when u is left of l."""
    s = orient_sign(u, l)
    if s == 0:
        raise GenericityError(f"direction {u} collinear with gauge {l}")
    return (1 - s) // 2


def _ccw_cmp_from(base: Dir, a: Dir, b: Dir) -> int:
    """Order a, b by counterclockwise angle from base, strictly in (0, 2*pi)."""

    def half(d: Dir) -> int:
        c = cross(base, d)
        if c > 0:
            return 0
        if c < 0:
            return 2
        return 1 if dot(base, d) < 0 else 3  # antiparallel sits between halves

    ha, hb = half(a), half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross(a, b)
    if c == 0:
        raise GenericityError(f"parallel directions {a}, {b} in angular comparison")
    return -1 if c > 0 else 1


def cyclic_order(f: Dir, g: Dir, h: Dir) -> int:
    """0 if the triple (f, g, h) is ordered counterclockwise, 1 if clockwise.

    Satisfies [f,g,h] = [g,h,f] = 1 - [f,h,g] for generic triples.  Two
    inputs with equal direction are degenerate and rejected.
    """
    _require_nonzero(f, g, h)
    for a, b in ((f, g), (g, h), (f, h)):
        if is_parallel(a, b):
            raise GenericityError(f"parallel directions {a}, {b} in cyclic order")
    return 0 if _ccw_cmp_from(f, g, h) < 0 else 1


def sort_ccw(base: Dir, dirs: Sequence[Dir]) -> list:
    """Indices of `dirs` sorted counterclockwise starting just after `base`."""
    idx = list(range(len(dirs)))
    return sorted(idx, key=cmp_to_key(lambda i, j: _ccw_cmp_from(base, dirs[i], dirs[j])))


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """Exact test that p lies on the closed segment [a, b]."""
    if cross(sub(p, a), sub(b, a)) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff open segments (a,b) and (c,d) cross in a single interior point."""
    d1 = orient_sign(seg_dir(a, b), sub(c, a)) if c != a else 0
    d2 = orient_sign(seg_dir(a, b), sub(d, a)) if d != a else 0
    d3 = orient_sign(seg_dir(c, d), sub(a, c)) if a != c else 0
    d4 = orient_sign(seg_dir(c, d), sub(b, c)) if b != c else 0
    return d1 * d2 < 0 and d3 * d4 < 0


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the closed segments intersect other than by proper crossing.

    Used by validation to reject boundary-case contacts that the crossing
    predicate deliberately ignores.
    """
    if segments_properly_cross(a, b, c, d):
        return False
    for p in (c, d):
        if point_on_segment(p, a, b):
            return True
    for p in (a, b):
        if point_on_segment(p, c, d):
            return True
    return False


def ray_segment_hits(r: Ray, a: Point, b: Point) -> int:
    """1 iff the open ray properly crosses the open segment [a, b], else 0.

    Genericity is required: a segment collinear with the ray line, an
    endpoint on the closed ray, or the ray origin on the segment all raise.
    """
    if a == b:
        raise InputError(f"degenerate segment at {a}")
    u = seg_dir(a, b)
    w = sub(a, r.origin)
    denom = cross(r.dir, u)
    if denom == 0:
        if cross(r.dir, w) == 0:
            raise GenericityError(f"segment {a}-{b} collinear with ray at {r.origin}")
        return 0
    # r.origin + t*dir == a + s*u  =>  t = cross(w, u)/denom, s = -cross(r.dir, w)/denom
    t = cross(w, u) / denom
    s = -cross(r.dir, w) / denom
    if t > 0 and 0 < s < 1:
        return 1
    if t > 0 and (s == 0 or s == 1):
        raise GenericityError(f"segment endpoint lies on ray at {r.origin}")
    if t == 0 and 0 <= s <= 1:
        raise GenericityError(f"ray origin {r.origin} lies on segment {a}-{b}")
    return 0


def point_on_ray(p: Point, r: Ray) -> bool:
    """Exact membership of p in the closed ray (origin included)."""
    w = sub(p, r.origin)
    if w.dx == 0 and w.dy == 0:
        return True
    return cross(r.dir, w) == 0 and dot(r.dir, w) > 0


# --- rotation sweeps -------------------------------------------------------
#
# Gauge directions always point into the upper half plane (dy > 0), so the
# admissible directions form an open half circle and dx/dy parametrizes them
# monotonically.  A rotation between two gauge directions has a unique sweep
# inside that half circle.


def _upper_param(d: Dir) -> Fraction:
    if d.dy <= 0:
        raise InputError(f"direction {d} does not point into the upper half plane")
    return d.dx / d.dy


def dir_in_open_sweep(d: Dir, start: Dir, end: Dir) -> bool:
    """True iff direction d lies strictly inside the upper-half-plane sweep
    between gauge directions start and end."""
    t0, t1 = _upper_param(start), _upper_param(end)
    if t0 == t1:
        return False
    if d.dy <= 0:
        return False
    t = d.dx / d.dy
    lo, hi = min(t0, t1), max(t0, t1)
    if t == lo or t == hi:
        raise GenericityError(f"direction {d} parallel to a sweep endpoint")
    return lo < t < hi


# --- infinitesimally perturbed points --------------------------------------
#
# Region marking needs the location of points shifted off a curve by one or
# two orders of infinitesimal.  Coordinates are polynomials in eps with
# rational coefficients; a sign is the sign of the lowest-order nonzero
# coefficient (eps -> 0+).


def _poly_trim(c: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
    n = len(c)
    while n > 1 and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _poly_add(a, b):
    n = max(len(a), len(b))
    return _poly_trim(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)))


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return _poly_trim(tuple((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)))


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _poly_trim(tuple(out))


def _poly_sign(a) -> int:
    for c in a:
        if c != 0:
            return 1 if c > 0 else -1
    return 0


class EpsPoint(NamedTuple):
    """A point whose coordinates are polynomials in an infinitesimal eps."""

    x: Tuple[Fraction, ...]
    y: Tuple[Fraction, ...]

    @staticmethod
    def exact(p: Point) -> "EpsPoint":
        return EpsPoint((p.x,), (p.y,))

    @staticmethod
    def shifted(p: Point, *shifts: Dir) -> "EpsPoint":
        """p + eps*shifts[0] + eps^2*shifts[1] + ..."""
        xs = [p.x] + [s.dx for s in shifts]
        ys = [p.y] + [s.dy for s in shifts]
        return EpsPoint(_poly_trim(tuple(xs)), _poly_trim(tuple(ys)))


def _eps_of(p) -> EpsPoint:
    return p if isinstance(p, EpsPoint) else EpsPoint.exact(p)


def eps_orient(a, b, c) -> int:
    """Sign of the orientation of the (possibly perturbed) triple as eps -> 0+."""
    a, b, c = _eps_of(a), _eps_of(b), _eps_of(c)
    ux, uy = _poly_sub(b.x, a.x), _poly_sub(b.y, a.y)
    vx, vy = _poly_sub(c.x, a.x), _poly_sub(c.y, a.y)
    return _poly_sign(_poly_sub(_poly_mul(ux, vy), _poly_mul(uy, vx)))


class DegenerateQuery(GenericityError):
    """A perturbed predicate hit an exact zero; retry with another probe."""


def eps_segment_crosses_segment(p, q, a: Point, b: Point) -> bool:
    """Proper crossing of the perturbed open segment [p, q] with exact [a, b].

    Raises DegenerateQuery if any of the four orientation signs vanishes.
    """
    s1 = eps_orient(p, q, a)
    s2 = eps_orient(p, q, b)
    s3 = eps_orient(a, b, p)
    s4 = eps_orient(a, b, q)
    if 0 in (s1, s2, s3, s4):
        raise DegenerateQuery("probe segment touches a curve endpoint")
    return s1 * s2 < 0 and s3 * s4 < 0


def eps_segment_crosses_ray(p, q, r: Ray) -> bool:
    """Proper crossing of the perturbed open segment [p, q] with the open ray."""
    p, q = _eps_of(p), _eps_of(q)
    o = EpsPoint.exact(r.origin)
    o2 = EpsPoint.exact(Point(r.origin.x + r.dir.dx, r.origin.y + r.dir.dy))
    s1 = eps_orient(o, o2, p)
    s2 = eps_orient(o, o2, q)
    if 0 in (s1, s2):
        raise DegenerateQuery("probe endpoint on ray line")
    if s1 * s2 > 0:
        return False
    # forward-side test: parameter t along the ray has sign
    # sign(cross(p - o, q - p)) * sign(cross(dir, q - p))
    ux, uy = _poly_sub(q.x, p.x), _poly_sub(q.y, p.y)
    wx, wy = _poly_sub(p.x, o.x), _poly_sub(p.y, o.y)
    num = _poly_sign(_poly_sub(_poly_mul(wx, uy), _poly_mul(wy, ux)))
    den = _poly_sign(_poly_sub(_poly_mul((r.dir.dx,), uy), _poly_mul((r.dir.dy,), ux)))
    if num == 0 or den == 0:
        raise DegenerateQuery("probe crosses ray at its origin or runs parallel")
    return num * den > 0
