"""Independent recomputation routes used to cross-check the library.

Two oracles for the group action on curves:

* a pointwise one — evaluate the image curve at the image point and compare
  with the original evaluation; and
* a symbolic one — pull the curve's component pair back through the raw
  coordinate substitution of the inverse matrix, using a tiny superfield
  algebra built here from scratch (fractions of polynomials plus an explicit
  theta-component product rule).  It shares no code path with the library's
  gauge construction.

Plus the equivariance square for the odd-translation matrix, assembled from
its displayed block structure.
"""

from sgk.curves import act_point, eval_curve_at_superpoint, susy1_matrix
from sgk.grassmann import SuperNumber
from sgk.linalg import mat_mul
from sgk.polyrat import SuperPoly, homog_subst
from sgk.superspace import preferred_chart


class Frac:
    """A quotient of two polynomials, compared by cross products."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den

    @staticmethod
    def const(n, c):
        return Frac(SuperPoly.const(n, c), SuperPoly.const(n, 1))

    def add(self, o):
        return Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def mul(self, o):
        return Frac(self.num * o.num, self.den * o.den)

    def flip(self):
        return Frac(self.num.map_coeffs(lambda c: c.grade_flip()),
                    self.den.map_coeffs(lambda c: c.grade_flip()))

    def eq(self, o):
        return (self.num * o.den - o.num * self.den).is_zero()


class SField:
    """F0 + theta * F1.  The product moves theta left with a grade flip:
    (F G)_1 = flip(F0) G1 + F1 G0."""

    __slots__ = ("f0", "f1")

    def __init__(self, f0, f1):
        self.f0 = f0
        self.f1 = f1

    def add(self, o):
        return SField(self.f0.add(o.f0), self.f1.add(o.f1))

    def mul(self, o):
        return SField(self.f0.mul(o.f0),
                      self.f0.flip().mul(o.f1).add(self.f1.mul(o.f0)))

    def eq(self, o):
        return self.f0.eq(o.f0) and self.f1.eq(o.f1)


def _sfield_const(n, c):
    return SField(Frac.const(n, c), Frac.const(n, 0))


def _horner(coeffs, n, zt):
    acc = _sfield_const(n, 0)
    for c in reversed(coeffs):
        acc = acc.mul(zt).add(_sfield_const(n, c))
    return acc


def _inv_even(F):
    """Inverse of an even superfield: H0 = 1/F0,
    H1 = -1/flip(F0) * F1 * 1/F0."""
    inv0 = Frac(F.f0.den, F.f0.num)
    fl = F.f0.flip()
    h1 = Frac(fl.den, fl.num).mul(F.f1).mul(inv0)
    return SField(inv0, Frac(-h1.num, h1.den))


def curve_as_superfield(cur) -> SField:
    return SField(Frac(cur.P, cur.Q), Frac(cur.r, cur.Q * cur.Q))


def pullback_superfield(m, cur) -> SField:
    """The curve's component pair composed with the inverse substitution.

    Writing the inverse matrix's rows as (a', c', gamma' / b', d', delta' /
    alpha', beta', e'), a row vector (z, 1, theta) lands on

        z~     = (a'z + b' + theta alpha') / (c'z + d' + theta beta')
        theta~ = (gamma'z + delta' + theta e') / (c'z + d' + theta beta')

    which this expands to first order in theta and feeds into the component
    pair by superfield Horner evaluation.  No gauge choices, no derived
    identities.
    """
    n, d = cur.n, cur.d
    mi = m.inverse()
    znum = SuperPoly.linear(n, mi.b, mi.a)
    zden = SuperPoly.linear(n, mi.d, mi.c)
    gpoly = SuperPoly.linear(n, mi.delta, mi.gamma)
    den2 = zden * zden
    zt = SField(Frac(znum, zden),
                Frac(zden * SuperPoly.const(n, mi.alpha)
                     - znum * SuperPoly.const(n, mi.beta), den2))
    tt = SField(Frac(gpoly, zden),
                Frac(zden * SuperPoly.const(n, mi.e)
                     + gpoly * SuperPoly.const(n, mi.beta), den2))
    p_at = _horner([cur.P.coeff(i) for i in range(d + 1)], n, zt)
    q_at = _horner([cur.Q.coeff(i) for i in range(d + 1)], n, zt)
    r_at = _horner([cur.r.coeff(i)
                    for i in range(max(cur.r.degree() + 1, 1))], n, zt)
    q_inv = _inv_even(q_at)
    phi = p_at.mul(q_inv)
    psi = r_at.mul(q_inv).mul(q_inv)
    return phi.add(tt.mul(psi))


def action_matches_symbolic(m, cur, act_fn) -> bool:
    """act_fn(m, cur) agrees with the raw-substitution pullback."""
    return curve_as_superfield(act_fn(m, cur)).eq(pullback_superfield(m, cur))


def action_matches_pointwise(m, cur, pts, act_fn) -> bool:
    """Evaluating the moved curve at moved points reproduces the original
    values."""
    img = act_fn(m, cur)
    for pt in pts:
        if eval_curve_at_superpoint(img, act_point(m, pt)) \
                != eval_curve_at_superpoint(cur, pt):
            return False
    return True


def susy1_square(m_quad, cfg):
    """Both sides of the odd-translation equivariance square, or None when
    the draw is out of generic position (a point at the pole or away from
    the first chart).

    Left: the moved configuration's matrix times the parameter rotation
    [[a, b], [c, d]].  Right: the block scaling — each point row by
    1/(c p + d), the deformation rows by the degree-(2d-1) substitution
    representation — times the original matrix.
    """
    from sgk.curves import act_config
    from sgk.scgroup import lift_sl2

    n = cfg.n
    a, b, c, d = m_quad
    m = lift_sl2(n, a, b, c, d)
    red = cfg.reduced()
    pts = [preferred_chart(p) for p in red.points]
    if any(p.chart != 1 for p in pts):
        return None
    if any(preferred_chart(act_point(m, p)).chart != 1 for p in pts):
        return None
    k = len(pts)
    dd = cfg.curve.d
    m_x = susy1_matrix(cfg)
    m_gx = susy1_matrix(act_config(m, cfg))
    rot = [[SuperNumber.scalar(n, a), SuperNumber.scalar(n, b)],
           [SuperNumber.scalar(n, c), SuperNumber.scalar(n, d)]]
    lhs = mat_mul(m_gx, rot)
    zero = SuperNumber.zero(n)
    cs, ds = SuperNumber.scalar(n, c), SuperNumber.scalar(n, d)
    size = k + 2 * dd
    block = [[zero] * size for _ in range(size)]
    for i, p in enumerate(pts):
        den = cs * p.p + ds
        if not den.body():
            return None
        block[i][i] = den.invert()
    numl = SuperPoly.linear(n, -b, d)
    denl = SuperPoly.linear(n, a, -c)
    for j in range(2 * dd):
        img = homog_subst(SuperPoly(n, [0] * j + [1]), numl, denl,
                          2 * dd - 1)
        for i in range(2 * dd):
            block[k + i][k + j] = img.coeff(i)
    rhs = mat_mul(block, m_x)
    return lhs, rhs
