"""Polynomials with SuperNumber coefficients, plus body-level field polynomials.

Two layers live here.  ScalarPoly is a dense univariate polynomial over the
scalar field (Gaussian rationals, possibly with the transcendental t); it
supports exact division and gcd and is what coprimality checks run on.
SuperPoly carries full Grassmann coefficients and provides the evaluation,
derivative, and homogeneous-substitution operations that curve and bundle
actions are built from.
"""

from __future__ import annotations

from .grassmann import (
    GrassmannError,
    Qi,
    SuperNumber,
    as_scalar,
    is_scalar,
    scalar_is_zero,
)


class ScalarPoly:
    """Dense polynomial over the scalar field, used for body computations."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and scalar_is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        if not self.coeffs:
            return Qi(0)
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, ScalarPoly) and len(self.coeffs) == len(other.coeffs) \
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __add__(self, other):
        a, b = list(self.coeffs), list(other.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return ScalarPoly(a)

    def __neg__(self):
        return ScalarPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if is_scalar(other):
            s = as_scalar(other)
            return ScalarPoly([c * s for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ScalarPoly()
        out = [Qi(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if scalar_is_zero(ca):
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return ScalarPoly(out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        shift = len(rem) - len(other.coeffs)
        if shift < 0:
            return ScalarPoly(), self
        quo = [Qi(0)] * (shift + 1)
        inv = 1 / other.lead()
        for k in range(shift, -1, -1):
            c = rem[k + other.degree()] * inv
            quo[k] = c
            if not scalar_is_zero(c):
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return ScalarPoly(quo), ScalarPoly(rem)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (1 / a.lead())

    def eval(self, x):
        x = as_scalar(x)
        out = as_scalar(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join("(%s)*z^%d" % (c, i)
                          for i, c in enumerate(self.coeffs)
                          if not scalar_is_zero(c))

    __repr__ = __str__


def coprime_bodies(p: ScalarPoly, q: ScalarPoly) -> bool:
    """True when the two body polynomials share no root (unit gcd)."""
    if p.is_zero() or q.is_zero():
        return not (p.is_zero() and q.is_zero())
    return p.gcd(q).degree() == 0


class SuperPoly:
    """Dense univariate polynomial in z with SuperNumber coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=()):
        self.n = n
        cs = [SuperNumber.coerce(n, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(n, c):
        return SuperPoly(n, (c,))

    @staticmethod
    def zero(n):
        return SuperPoly(n)

    @staticmethod
    def linear(n, a0, a1):
        """The polynomial a0 + a1*z."""
        return SuperPoly(n, (a0, a1))

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return SuperNumber.zero(self.n)

    def body_poly(self) -> ScalarPoly:
        return ScalarPoly([c.body() for c in self.coeffs])

    def body_degree(self):
        return self.body_poly().degree()

    def even_part(self):
        return SuperPoly(self.n, [c.even_part() for c in self.coeffs])

    def odd_part(self):
        return SuperPoly(self.n, [c.odd_part() for c in self.coeffs])

    def map_coeffs(self, f):
        return SuperPoly(self.n, [f(c) for c in self.coeffs])

    def _coerced(self, other):
        if isinstance(other, SuperPoly):
            if other.n != self.n:
                raise GrassmannError("generator count mismatch in polynomials")
            return other
        if isinstance(other, SuperNumber) or is_scalar(other):
            return SuperPoly.const(self.n, other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = list(self.coeffs), list(o.coeffs)
        if len(a) < len(b):
            a, b = b, a
        for i, c in enumerate(b):
            a[i] = a[i] + c
        return SuperPoly(self.n, a)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly(self.n, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return SuperPoly(self.n)
        zero = SuperNumber.zero(self.n)
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return SuperPoly(self.n, out)

    def __rmul__(self, other):
        # left and right products differ for odd cofactors; SuperNumber
        # multiplication carries the signs, so order just has to be kept
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = SuperPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return self.n == other.n and self.coeffs == other.coeffs
        return NotImplemented

    def eval(self, x):
        x = SuperNumber.coerce(self.n, x)
        out = SuperNumber.zero(self.n)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def divmod(self, other):
        """Long division; the divisor's leading coefficient must have a body."""
        o = self._coerced(other)
        if o is None or o.is_zero():
            raise GrassmannError("polynomial division by zero")
        if not o.coeffs[-1].body():
            raise GrassmannError("division needs an invertible leading "
                                 "coefficient")
        rem = list(self.coeffs)
        shift = len(rem) - len(o.coeffs)
        if shift < 0:
            return SuperPoly(self.n), self
        quo = [SuperNumber.zero(self.n)] * (shift + 1)
        inv = o.coeffs[-1].invert()
        for k in range(shift, -1, -1):
            c = rem[k + o.degree()] * inv
            quo[k] = c
            if not c.is_zero():
                for j, oc in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return SuperPoly(self.n, quo), SuperPoly(self.n, rem)

    def derivative(self):
        return SuperPoly(self.n, [self.coeffs[i] * Qi(i)
                                  for i in range(1, len(self.coeffs))])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append("(%s)" % c)
            elif i == 1:
                parts.append("(%s)*z" % c)
            else:
                parts.append("(%s)*z^%d" % (c, i))
        return " + ".join(parts)

    __repr__ = __str__


def homog_subst(poly: SuperPoly, num: SuperPoly, den: SuperPoly, total: int) -> SuperPoly:
    """Substitute z -> num/den and clear denominators up to degree `total`.

    Returns sum_j c_j * num^j * den^(total - j), the standard way a Moebius
    change of coordinate acts on a polynomial regarded as a degree-`total`
    form.  `total` must be at least the degree of `poly`.
    """
    if total < poly.degree():
        raise GrassmannError("substitution bound below polynomial degree")
    n = poly.n
    out = SuperPoly.zero(n)
    if poly.is_zero():
        return out
    num_pows = [SuperPoly.const(n, 1)]
    den_pows = [SuperPoly.const(n, 1)]
    for _ in range(total):
        num_pows.append(num_pows[-1] * num)
        den_pows.append(den_pows[-1] * den)
    for j, c in enumerate(poly.coeffs):
        if c.is_zero():
            continue
        out = out + num_pows[j] * den_pows[total - j] * c
    return out


def reverse_coeffs(poly: SuperPoly, total: int) -> SuperPoly:
    """The degree-`total` reversal z^total * poly(1/z) (coefficients flipped)."""
    if total < poly.degree():
        raise GrassmannError("reversal bound below polynomial degree")
    zero = SuperNumber.zero(poly.n)
    cs = [zero] * (total + 1)
    for i, c in enumerate(poly.coeffs):
        cs[total - i] = c
    return SuperPoly(poly.n, cs)
