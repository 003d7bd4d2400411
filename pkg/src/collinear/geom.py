"""Exact rational plane geometry: predicates, intersections, rational rotations.

All coordinates are ``fractions.Fraction``.  Predicates are exact; where speed
matters (pairwise segment tests in drawing verification) callers should go
through :mod:`collinear.realize`, which vectorizes a float filter with an exact
fallback onto these primitives.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence, Tuple

Point = Tuple[Fraction, Fraction]


def F(x, y=None) -> Fraction:
    if y is not None:
        return Fraction(x, y)
    return x if isinstance(x, Fraction) else Fraction(x)


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the signed area of triangle (a, b, c): +1 ccw, -1 cw, 0 collinear."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def collinear(a: Point, b: Point, c: Point) -> bool:
    return orient(a, b, c) == 0


def on_segment(p: Point, a: Point, b: Point) -> bool:
    """True iff p lies on the closed segment [a, b] (assumes collinear not required)."""
    if orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff open segments (a,b) and (c,d) share at least one point that is
    interior to at least one of them, or the segments overlap.

    Sharing only a common endpoint is *not* a crossing.
    """
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4 and o1 * o2 <= 0 and o3 * o4 <= 0:
        # proper or touching intersection; rule out endpoint-only contact
        if o1 == 0 or o2 == 0 or o3 == 0 or o4 == 0:
            # some endpoint is on the other segment: endpoint-only contact is OK
            # only when the shared point is an endpoint of *both* segments.
            for p in (c, d):
                if orient(a, b, p) == 0 and on_segment(p, a, b) and p != a and p != b:
                    return True
            for p in (a, b):
                if orient(c, d, p) == 0 and on_segment(p, c, d) and p != c and p != d:
                    return True
            return False
        return True
    if o1 == 0 and o2 == 0 and o3 == 0 and o4 == 0:
        # collinear: overlap test
        (p1, p2) = sorted((a, b))
        (q1, q2) = sorted((c, d))
        lo, hi = max(p1, q1), min(p2, q2)
        if lo < hi:
            return True
        return False
    return False


def seg_line_y0_crossing(a: Point, b: Point) -> Point | None:
    """Intersection of segment (a,b) with the x-axis when a, b are strictly on
    opposite sides; None otherwise."""
    if a[1] == 0 or b[1] == 0 or (a[1] > 0) == (b[1] > 0):
        return None
    t = a[1] / (a[1] - b[1])
    return (a[0] + t * (b[0] - a[0]), Fraction(0))


def line_through(p: Point, q: Point) -> Tuple[Fraction, Fraction, Fraction]:
    """Coefficients (A, B, C) with A*x + B*y = C through p, q."""
    A = q[1] - p[1]
    B = p[0] - q[0]
    C = A * p[0] + B * p[1]
    return A, B, C


def line_intersection(l1, l2) -> Point | None:
    A1, B1, C1 = l1
    A2, B2, C2 = l2
    det = A1 * B2 - A2 * B1
    if det == 0:
        return None
    return ((C1 * B2 - C2 * B1) / det, (A1 * C2 - A2 * C1) / det)


def point_in_triangle(p: Point, a: Point, b: Point, c: Point, strict: bool = True) -> bool:
    """Membership of p in triangle (a,b,c); strict means interior only."""
    s = orient(a, b, c)
    if s == 0:
        return False
    os_ = (orient(a, b, p) * s, orient(b, c, p) * s, orient(c, a, p) * s)
    if strict:
        return all(o > 0 for o in os_)
    return all(o >= 0 for o in os_)


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator (then smallest |numerator|) strictly
    between lo and hi.  Stern-Brocot / continued-fraction descent."""
    lo, hi = F(lo), F(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    # shift to positive side handling
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    # 0 <= lo < hi
    return _simplest_pos(lo, hi)


def _simplest_pos(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest rational in (lo, hi) with 0 <= lo < hi."""
    fl = lo.numerator // lo.denominator
    if fl + 1 < hi:
        return Fraction(fl + 1)
    if lo == fl and lo < hi:  # lo integral: fl itself excluded (strict)
        # interval (fl, hi) with hi <= fl+1
        pass
    # recurse on fractional parts: x in (lo,hi) <=> x = fl + 1/(y) hmm use standard:
    # simplest in (lo,hi) = fl + 1 / simplest in (1/(hi-fl), 1/(lo-fl))
    a = lo - fl
    b = hi - fl
    if a == 0:
        # (0, b): simplest is 1/ceil(1/b + tiny) -> smallest integer q with 1/q < b
        q = b.denominator // b.numerator + 1
        return fl + Fraction(1, q)
    return fl + 1 / _simplest_pos(1 / b, 1 / a)


def simplest_in_box(x_lo, x_hi, y_lo, y_hi) -> Point:
    return (simplest_between(x_lo, x_hi), simplest_between(y_lo, y_hi))


def rational_direction_distinct(points: Sequence[Point]) -> Tuple[Fraction, Fraction]:
    """A rational unit vector (c, s) with c*c + s*s == 1 such that the projections
    c*x + s*y of all given points are pairwise distinct.

    Uses Pythagorean-triple angles (m^2-n^2, 2mn, m^2+n^2); tries successively
    finer triples until all projections separate.
    """
    if len(points) <= 1:
        return (Fraction(1), Fraction(0))
    cands = [(Fraction(1), Fraction(0))]
    m = 2
    while True:
        for n in range(1, m):
            if (m - n) % 2 == 1 and gcd(m, n) == 1:
                h = m * m + n * n
                cands.append((Fraction(m * m - n * n, h), Fraction(2 * m * n, h)))
        while cands:
            c, s = cands.pop()
            proj = sorted(c * x + s * y for (x, y) in points)
            if all(proj[i] < proj[i + 1] for i in range(len(proj) - 1)):
                return (c, s)
        m += 1
        if m > 64:
            raise RuntimeError("could not separate projections with small rotations")


def rotate(p: Point, c: Fraction, s: Fraction) -> Point:
    """Rotate p by the rational rotation with cosine c and sine s."""
    return (c * p[0] - s * p[1], s * p[0] + c * p[1])


def unrotate(p: Point, c: Fraction, s: Fraction) -> Point:
    return (c * p[0] + s * p[1], -s * p[0] + c * p[1])
