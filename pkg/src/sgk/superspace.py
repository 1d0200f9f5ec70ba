"""Superpoints of the projective superline.

A point carries homogeneous coordinates [Z1 : Z2 : Theta] with Z1, Z2 even,
Theta odd, and at least one of Z1, Z2 invertible.  The two affine charts use
(z1, theta1) = (Z1/Z2, Theta/Z2) and (z2, theta2) = (-Z2/Z1, Theta/Z1); the
transition on the overlap is z2 = -1/z1, theta2 = theta1/z1, whose sign makes
both charts superconformal for the same odd distribution.  Equality is
projective: two coordinate triples agree when they differ by an invertible
even scale.
"""

from __future__ import annotations

from .grassmann import GrassmannError, SuperNumber


def _want_parity(x: SuperNumber, parity: int, what: str):
    part = x.even_part() if parity == 0 else x.odd_part()
    if part != x:
        raise GrassmannError("%s must be %s" % (what, "even" if parity == 0 else "odd"))
    return x


class ProjPoint:
    """A point of the superline in homogeneous coordinates."""

    __slots__ = ("n", "Z1", "Z2", "Theta")

    def __init__(self, n, Z1, Z2, Theta):
        self.n = n
        self.Z1 = _want_parity(SuperNumber.coerce(n, Z1), 0, "Z1")
        self.Z2 = _want_parity(SuperNumber.coerce(n, Z2), 0, "Z2")
        self.Theta = _want_parity(SuperNumber.coerce(n, Theta), 1, "Theta")
        if not self.Z1.body() and not self.Z2.body():
            raise GrassmannError("homogeneous coordinates with no invertible entry")

    def scale(self, lam):
        lam = SuperNumber.coerce(self.n, lam)
        if not lam.body():
            raise GrassmannError("projective scale must be invertible")
        return ProjPoint(self.n, self.Z1 * lam, self.Z2 * lam, self.Theta * lam)

    def chart1(self):
        """Chart-1 coordinates, or None when Z2 is not invertible."""
        if not self.Z2.body():
            return None
        inv = self.Z2.invert()
        return ChartPoint(self.n, 1, self.Z1 * inv, self.Theta * inv)

    def chart2(self):
        if not self.Z1.body():
            return None
        inv = self.Z1.invert()
        return ChartPoint(self.n, 2, -(self.Z2 * inv), self.Theta * inv)

    def embed(self, m):
        return ProjPoint(m, self.Z1.embed(m), self.Z2.embed(m), self.Theta.embed(m))

    def body_triple(self):
        return (self.Z1.body(), self.Z2.body(), self.Theta.body())

    def __eq__(self, other):
        if not isinstance(other, (ProjPoint, ChartPoint)):
            return NotImplemented
        return proj_equal(self, other)

    def __str__(self):
        return "[%s : %s : %s]" % (self.Z1, self.Z2, self.Theta)

    __repr__ = __str__


class ChartPoint:
    """A point in one affine chart: an even base with an odd coordinate."""

    __slots__ = ("n", "chart", "p", "pi")

    def __init__(self, n, chart, p, pi):
        if chart not in (1, 2):
            raise GrassmannError("chart must be 1 or 2")
        self.n = n
        self.chart = chart
        self.p = _want_parity(SuperNumber.coerce(n, p), 0, "base coordinate")
        self.pi = _want_parity(SuperNumber.coerce(n, pi), 1, "odd coordinate")

    def to_proj(self):
        one = SuperNumber.one(self.n)
        if self.chart == 1:
            return ProjPoint(self.n, self.p, one, self.pi)
        return ProjPoint(self.n, one, -self.p, self.pi)

    def embed(self, m):
        return ChartPoint(m, self.chart, self.p.embed(m), self.pi.embed(m))

    def __eq__(self, other):
        if not isinstance(other, (ProjPoint, ChartPoint)):
            return NotImplemented
        return proj_equal(self, other)

    def __str__(self):
        return "chart%d(%s; %s)" % (self.chart, self.p, self.pi)

    __repr__ = __str__


def as_proj(pt) -> ProjPoint:
    if isinstance(pt, ProjPoint):
        return pt
    if isinstance(pt, ChartPoint):
        return pt.to_proj()
    raise GrassmannError("not a superpoint: %r" % (pt,))


def proj_equal(a: ProjPoint, b: ProjPoint) -> bool:
    a, b = as_proj(a), as_proj(b)
    if a.n != b.n:
        return False
    # compare in a chart both points admit
    ca, cb = a.chart1(), b.chart1()
    if ca is None or cb is None:
        ca, cb = a.chart2(), b.chart2()
        if ca is None or cb is None:
            return False
    return ca.p == cb.p and ca.pi == cb.pi


def point_zero(n):
    return ChartPoint(n, 1, 0, 0)


def point_one(n):
    return ChartPoint(n, 1, 1, 0)


def point_infty(n):
    return ChartPoint(n, 2, 0, 0)


def standard_triple(n):
    """The reference triple (0, 1, infinity) with vanishing odd parts."""
    return (point_zero(n), point_one(n), point_infty(n))


def torus_param(n, t) -> SuperNumber:
    """Validate a torus parameter: an even invertible element."""
    tt = SuperNumber.coerce(n, t)
    if not tt.body() or tt.parity() != 0:
        raise GrassmannError("torus parameter must be even and invertible")
    return tt


def torus_act_point(t, pt):
    """The odd-coordinate scaling z -> z, theta -> t*theta."""
    if isinstance(pt, ProjPoint):
        tt = torus_param(pt.n, t)
        return ProjPoint(pt.n, pt.Z1, pt.Z2, tt * pt.Theta)
    pt = _as_chart(pt)
    tt = torus_param(pt.n, t)
    return ChartPoint(pt.n, pt.chart, pt.p, tt * pt.pi)


def _as_chart(pt) -> ChartPoint:
    if isinstance(pt, ChartPoint):
        return pt
    if isinstance(pt, ProjPoint):
        c = pt.chart1()
        if c is None:
            c = pt.chart2()
        return c
    raise GrassmannError("not a superpoint: %r" % (pt,))


def preferred_chart(pt) -> ChartPoint:
    """Chart-1 coordinates when the point is finite, chart-2 otherwise."""
    return _as_chart(pt)


def odd_normal_part(pt):
    """The odd coordinate of a point in its preferred chart."""
    return _as_chart(pt).pi


def reduce_point(pt) -> ChartPoint:
    """Forget the nilpotents: body base coordinate, zero odd coordinate."""
    cp = _as_chart(pt)
    return ChartPoint(cp.n, cp.chart, SuperNumber.scalar(cp.n, cp.p.body()), 0)


def reduced_bodies_distinct(pts) -> bool:
    """Pairwise distinctness of the points' bodies on the projective line."""
    seen = []
    for p in pts:
        P = as_proj(p)
        x, y = P.Z1.body(), P.Z2.body()
        for (x0, y0) in seen:
            if (x * y0 - x0 * y).is_zero():
                return False
        seen.append((x, y))
    return True


def point_from_scalars(n, base, pi=0, at_infinity=False):
    if at_infinity:
        return ChartPoint(n, 2, base, pi)
    return ChartPoint(n, 1, base, pi)
