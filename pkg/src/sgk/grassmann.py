"""Exact arithmetic in a complex Grassmann algebra with few generators.

Values are elements of Lambda_n (x) C for 0 <= n <= 8, written on the basis
of products of anticommuting generators g1, ..., gn.  Coefficients are exact:
Gaussian rationals (class Qi), optionally extended by a single transcendental
even parameter t (class RatT, a reduced fraction of polynomials in t over the
Gaussian rationals).  There is no floating point anywhere in this module.

A SuperNumber is stored as a mapping from strictly increasing index tuples to
nonzero scalar coefficients, so g2*g1 is represented as -1 times the basis
monomial (1, 2).  Multiplication signs are computed by counting transpositions
while merging index tuples.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


MAX_GENERATORS = 8


class GrassmannError(ValueError):
    """Raised for malformed or incompatible Grassmann-algebra operands."""


# ---------------------------------------------------------------------------
# Gaussian rationals


def _frac_sqrt(f: Fraction):
    """Exact square root of a nonnegative Fraction, or None."""
    if f < 0:
        return None
    num, den = f.numerator, f.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Qi:
    """A Gaussian rational re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- helpers

    @staticmethod
    def coerce(v):
        if isinstance(v, Qi):
            return v
        if isinstance(v, (int, Fraction)):
            return Qi(v)
        return None

    def is_zero(self):
        return not self.re and not self.im

    # -- ring operations

    def __add__(self, other):
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        return Qi(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        return Qi(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        return Qi(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        return Qi(self.re * o.re - self.im * o.im,
                  self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        n2 = o.re * o.re + o.im * o.im
        if not n2:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return Qi((self.re * o.re + self.im * o.im) / n2,
                  (self.im * o.re - self.re * o.im) / n2)

    def __rtruediv__(self, other):
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Qi(-self.re, -self.im)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (Qi(1) / self) ** (-k)
        out, base = Qi(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatT):
            return other == self
        o = Qi.coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def conj(self):
        return Qi(self.re, -self.im)

    def sqrt(self):
        """An exact square root in Q(i) or None.

        The returned root is the one whose first nonzero part (real, then
        imaginary) is positive, which makes the choice deterministic.
        """
        if self.is_zero():
            return Qi(0)
        if not self.im:
            r = _frac_sqrt(self.re)
            if r is not None:
                return Qi(r)
            r = _frac_sqrt(-self.re)
            if r is not None:
                return Qi(0, r)
            return None
        norm = _frac_sqrt(self.re * self.re + self.im * self.im)
        if norm is None:
            return None
        u2 = (self.re + norm) / 2
        u = _frac_sqrt(u2)
        if u is None or not u:
            return None
        v = self.im / (2 * u)
        cand = Qi(u, v)
        if cand * cand == self:
            if cand.re < 0 or (not cand.re and cand.im < 0):
                cand = -cand
            return cand
        return None

    def __str__(self):
        if not self.im:
            return _frac_str(self.re)
        return "(%s%s%si)" % (_frac_str(self.re),
                              "+" if self.im >= 0 else "-",
                              _frac_str(abs(self.im)))

    __repr__ = __str__


def _frac_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


QI_ZERO = Qi(0)
QI_ONE = Qi(1)
QI_I = Qi(0, 1)


# ---------------------------------------------------------------------------
# Rational functions in one transcendental parameter t over Q(i)


class QiPoly:
    """Dense univariate polynomial in t with Qi coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Qi) else Qi(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c):
        return QiPoly((c,))

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else QI_ZERO

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return QiPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QiPoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Qi):
            return QiPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QiPoly()
        out = [QI_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return QiPoly(out)

    def __eq__(self, other):
        return isinstance(other, QiPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def divmod(self, other):
        """Exact polynomial division with remainder over Q(i)."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return QiPoly(), self
        quo = [QI_ZERO] * (dq + 1)
        inv_lead = QI_ONE / other.lead()
        for k in range(dq, -1, -1):
            c = rem[k + other.degree()] * inv_lead
            quo[k] = c
            if not c.is_zero():
                for j, oc in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return QiPoly(quo), QiPoly(rem)

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (QI_ONE / a.lead())

    def sqrt(self):
        """Exact polynomial square root, or None."""
        if self.is_zero():
            return QiPoly()
        d = self.degree()
        if d % 2:
            return None
        m = d // 2
        lead_root = self.lead().sqrt()
        if lead_root is None:
            return None
        # Solve for the root coefficients top down.  The t^(m+k) coefficient
        # of r^2 is 2*r_m*r_k plus a convolution of already known r_i with
        # k < i < m, so each step is a single division by 2*r_m.
        r = [QI_ZERO] * (m + 1)
        r[m] = lead_root
        inv2rm = QI_ONE / (Qi(2) * lead_root)
        for k in range(m - 1, -1, -1):
            acc = self.coeffs[m + k] if m + k < len(self.coeffs) else QI_ZERO
            for i in range(k + 1, m):
                j = m + k - i
                if k + 1 <= j <= m - 1:
                    acc = acc - r[i] * r[j]
            r[k] = acc * inv2rm
        cand = QiPoly(r)
        if cand * cand == self:
            return cand
        return None

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = str(c)
            if i == 0:
                parts.append(cs)
            else:
                tpow = "t" if i == 1 else "t^%d" % i
                if c == QI_ONE:
                    parts.append(tpow)
                else:
                    parts.append("%s*%s" % (cs, tpow))
        return " + ".join(parts)

    __repr__ = __str__


def _as_qipoly(v):
    if isinstance(v, QiPoly):
        return v
    q = Qi.coerce(v)
    if q is None:
        return None
    return QiPoly((q,))


class RatT:
    """A reduced fraction of QiPoly values; the scalar field Q(i)(t).

    Construction goes through make_rat so that constants collapse back to
    plain Qi values; code elsewhere can treat Qi and RatT uniformly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QiPoly, den: QiPoly):
        self.num = num
        self.den = den

    @staticmethod
    def lift(v):
        if isinstance(v, RatT):
            return v
        p = _as_qipoly(v)
        if p is None:
            return None
        return RatT(p, QiPoly((QI_ONE,)))

    def __add__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        return make_rat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        return make_rat(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        return make_rat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return make_rat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return RatT(-self.num, self.den)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        out, base = Qi(1), self
        for _ in range(k):
            out = base * out
        return out

    def __eq__(self, other):
        o = RatT.lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def sqrt(self):
        rn = self.num.sqrt()
        rd = self.den.sqrt()
        if rn is None or rd is None:
            return None
        root = make_rat(rn, rd)
        if root * root == self:
            return root
        return None

    def __str__(self):
        if self.den == QiPoly((QI_ONE,)):
            return "(%s)" % self.num
        return "((%s)/(%s))" % (self.num, self.den)

    __repr__ = __str__


def make_rat(num: QiPoly, den: QiPoly):
    """Reduced Qi-or-RatT value num/den; constants come back as Qi."""
    if den.is_zero():
        raise ZeroDivisionError("zero denominator in rational function")
    if num.is_zero():
        return QI_ZERO
    g = num.gcd(den)
    if g.degree() > 0:
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
    lead_inv = QI_ONE / den.lead()
    num = num * lead_inv
    den = den * lead_inv
    if den.degree() == 0 and num.degree() <= 0:
        return num.coeffs[0] if num.coeffs else QI_ZERO
    return RatT(num, den)


T_PARAM = RatT(QiPoly((QI_ZERO, QI_ONE)), QiPoly((QI_ONE,)))

# The scalar field as used throughout the package.
Scalar = (Qi, RatT)


def as_scalar(v):
    """Coerce an int, Fraction, Qi, or RatT into a scalar; error otherwise."""
    if isinstance(v, (Qi, RatT)):
        return v
    q = Qi.coerce(v)
    if q is None:
        raise GrassmannError("not a scalar: %r" % (v,))
    return q


def is_scalar(v):
    return isinstance(v, (int, Fraction, Qi, RatT))


def scalar_is_zero(s):
    if isinstance(s, RatT):
        return s.is_zero()
    return as_scalar(s).is_zero()


def scalar_sqrt(s):
    """Exact square root of a scalar, or None when it leaves the field."""
    s = as_scalar(s)
    return s.sqrt()


def scalar_str(s):
    return str(as_scalar(s))


def scalar_lex_positive(s):
    """Deterministic positivity used by normal-form sign conventions.

    Gaussian rationals: positive real part wins, then positive imaginary
    part.  Rational functions: decided on the leading numerator coefficient.
    Zero counts as not positive.
    """
    s = as_scalar(s)
    if isinstance(s, RatT):
        s = s.num.lead()
    if s.re:
        return s.re > 0
    return s.im > 0


# ---------------------------------------------------------------------------
# Grassmann numbers


def _merge_indices(a, b):
    """Merge two disjoint sorted index tuples, counting transpositions.

    Returns (merged tuple, sign) or None when the tuples intersect, in which
    case the product of monomials vanishes.
    """
    out = []
    inv = 0
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            inv += la - i
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out), (-1 if inv & 1 else 1)


class SuperNumber:
    """An element of Lambda_n (x) C with exact scalar coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        if not isinstance(n, int) or not 0 <= n <= MAX_GENERATORS:
            raise GrassmannError(
                "generator count must be an integer between 0 and %d, got %r"
                % (MAX_GENERATORS, n))
        self.n = n
        clean = {}
        for idx, coeff in (terms or {}).items():
            idx = tuple(idx)
            if any(not isinstance(i, int) or not 1 <= i <= n for i in idx):
                raise GrassmannError("generator index out of range in %r" % (idx,))
            if list(idx) != sorted(set(idx)):
                raise GrassmannError("indices must be strictly increasing, got %r" % (idx,))
            coeff = as_scalar(coeff)
            if not scalar_is_zero(coeff):
                clean[idx] = coeff
        self.terms = clean

    # -- constructors

    @staticmethod
    def scalar(n, c):
        return SuperNumber(n, {(): c})

    @staticmethod
    def zero(n):
        return SuperNumber(n, {})

    @staticmethod
    def one(n):
        return SuperNumber(n, {(): 1})

    @staticmethod
    def gen(n, i):
        if not 1 <= i <= n:
            raise GrassmannError("generator g%d does not exist for n=%d" % (i, n))
        return SuperNumber(n, {(i,): 1})

    @staticmethod
    def coerce(n, v):
        if isinstance(v, SuperNumber):
            if v.n != n:
                raise GrassmannError(
                    "generator count mismatch: %d vs %d" % (v.n, n))
            return v
        return SuperNumber.scalar(n, v)

    # -- structure queries

    def is_zero(self):
        return not self.terms

    def body(self):
        return self.terms.get((), QI_ZERO)

    def soul(self):
        return SuperNumber(self.n, {k: v for k, v in self.terms.items() if k})

    def parity(self):
        """0 for even, 1 for odd, None for mixed; zero counts as even."""
        ps = {len(k) & 1 for k in self.terms}
        if not ps:
            return 0
        if len(ps) > 1:
            return None
        return ps.pop()

    def is_even(self):
        return self.parity() == 0

    def is_odd(self):
        return self.parity() == 1 or self.is_zero()

    def even_part(self):
        return SuperNumber(self.n, {k: v for k, v in self.terms.items()
                                    if not len(k) & 1})

    def odd_part(self):
        return SuperNumber(self.n, {k: v for k, v in self.terms.items()
                                    if len(k) & 1})

    def parity_split(self):
        return self.even_part(), self.odd_part()

    def grade_flip(self):
        """The grade involution: odd terms change sign."""
        return SuperNumber(self.n, {k: (-v if len(k) & 1 else v)
                                    for k, v in self.terms.items()})

    def coeff(self, idx):
        return self.terms.get(tuple(idx), QI_ZERO)

    def embed(self, m):
        if m < self.n:
            raise GrassmannError("cannot embed Lambda_%d into Lambda_%d"
                                 % (self.n, m))
        return SuperNumber(m, dict(self.terms))

    # -- ring operations

    def _coerced(self, other):
        if isinstance(other, SuperNumber):
            if other.n != self.n:
                raise GrassmannError(
                    "generator count mismatch: %d vs %d" % (self.n, other.n))
            return other
        if is_scalar(other):
            return SuperNumber.scalar(self.n, other)
        return None

    def __add__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in o.terms.items():
            s = out.get(k, QI_ZERO) + v
            if scalar_is_zero(s):
                out.pop(k, None)
            else:
                out[k] = s
        return SuperNumber(self.n, out)

    __radd__ = __add__

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

    def __neg__(self):
        return SuperNumber(self.n, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in o.terms.items():
                merged = _merge_indices(ka, kb)
                if merged is None:
                    continue
                key, sign = merged
                c = va * vb
                if sign < 0:
                    c = -c
                s = out.get(key, QI_ZERO) + c
                if scalar_is_zero(s):
                    out.pop(key, None)
                else:
                    out[key] = s
        return SuperNumber(self.n, out)

    def __rmul__(self, other):
        # scalars are central, so reflected multiplication needs no signs
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o * self

    def __truediv__(self, other):
        if is_scalar(other):
            return self * SuperNumber.scalar(self.n, 1 / as_scalar(other))
        if isinstance(other, SuperNumber):
            return self * other.invert()
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerced(other)
        if o is None:
            return NotImplemented
        return o * self.invert()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = SuperNumber.one(self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert(self):
        """Multiplicative inverse; requires an invertible body."""
        b = self.body()
        if scalar_is_zero(b):
            raise GrassmannError("not invertible: body is zero")
        binv = 1 / b
        u = SuperNumber.one(self.n) - self * binv
        # u is nilpotent: u^(n+1) = 0, so the geometric series terminates
        out = SuperNumber.one(self.n)
        power = u
        for _ in range(self.n):
            if power.is_zero():
                break
            out = out + power
            power = power * u
        return out * binv

    def sqrt_even(self):
        """Square root of an even element whose body has a scalar root."""
        if self.parity() != 0:
            raise GrassmannError("square root needs an even element")
        b = self.body()
        root = scalar_sqrt(b)
        if root is None or scalar_is_zero(b):
            raise GrassmannError(
                "no exact square root for body %s" % scalar_str(b))
        u = self / b - SuperNumber.one(self.n)
        out = SuperNumber.zero(self.n)
        power = SuperNumber.one(self.n)
        coeff = Fraction(1)
        for k in range(self.n + 1):
            if power.is_zero():
                break
            out = out + power * Qi(coeff)
            coeff = coeff * (Fraction(1, 2) - k) / (k + 1)
            power = power * u
        return out * root

    # -- comparison and display

    def __eq__(self, other):
        if isinstance(other, SuperNumber):
            return self.n == other.n and self.terms == other.terms
        if is_scalar(other):
            return self == SuperNumber.scalar(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return not self.is_zero()

    def _term_str(self, idx, coeff):
        mono = "*".join("g%d" % i for i in idx)
        if not idx:
            return scalar_str(coeff)
        if coeff == QI_ONE:
            return mono
        if coeff == Qi(-1):
            return "-" + mono
        return "%s*%s" % (scalar_str(coeff), mono)

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (len(k), k))
        parts = [self._term_str(k, self.terms[k]) for k in keys]
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return "<%s | n=%d>" % (self, self.n)


# ---------------------------------------------------------------------------
# Module-level operation names


def mul(x: SuperNumber, y: SuperNumber) -> SuperNumber:
    return x * y


def invert(x: SuperNumber) -> SuperNumber:
    return x.invert()


def parity_split(x: SuperNumber):
    return x.parity_split()


def reduce(x: SuperNumber):
    """The body of x: its image under the projection killing all generators."""
    return x.body()


def embed(x: SuperNumber, m: int) -> SuperNumber:
    return x.embed(m)


# ---------------------------------------------------------------------------
# Randomized element generators (used by tests and the CLI check suite)


def random_qi(rng, nonzero=False):
    while True:
        re = Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
        im = Fraction(0)
        if rng.random() < 0.25:
            im = Fraction(rng.randint(-3, 3), rng.choice((1, 2)))
        q = Qi(re, im)
        if not nonzero or not q.is_zero():
            return q


def random_supernumber(rng, n, parity=None, max_terms=3, invertible=False):
    """A random element, optionally of pure parity or with invertible body."""
    subsets = [()] if parity in (0, None) else []
    pool = list(range(1, n + 1))
    for size in range(1, n + 1):
        if parity is not None and size % 2 != parity:
            continue
        for combo in itertools.combinations(pool, size):
            subsets.append(combo)
    terms = {}
    count = rng.randint(1, max_terms)
    for _ in range(count):
        if not subsets:
            break
        key = rng.choice(subsets)
        terms[key] = random_qi(rng)
    x = SuperNumber(n, terms)
    if invertible:
        b = Qi(rng.choice((1, 2, -1, 3)), 0)
        x = x.soul() + SuperNumber.scalar(n, b)
    if parity == 0:
        x = x.even_part()
    elif parity == 1:
        x = x.odd_part()
    return x
