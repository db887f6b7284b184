"""Cup products, twisted circle products, and Gerstenhaber brackets.

The decomposition of HH^*(R (x)^t S) is organized around a context object
holding the two orbit families of complexes:

* R-side: C^*(R, R_{b-hat}) for b in B -- coefficients twisted on the
  right by the character b-hat(r) = t(deg r, b) r;
* S-side: C^*(S, _{a-hat}S) for a in A -- twisted on the left.

Conventions (fixed once and validated by the chain-level identities in the
test suite; a couple of them resolve inconsistent sign usage between the
standard sources):

R-side cup        (f cup_t f')[r_1..r_{m+m'}]
                     = (-1)^{mm'} f[r_1..r_m] * bhat(f'[r_{m+1}..]),
                  where b is the twist of the *first* factor.
S-side cup        (g cup_t g')[s_1..s_{n+n'}]
                     = (-1)^{nn'} a'hat(g[s_1..s_n]) * g'[s_{n+1}..],
                  where a' is the twist of the *second* factor.
circle (X o_t Y)  inserts the inner factor Y into the outer X; on the
                  R-side the arguments trailing the insertion are twisted
                  by the *inner* factor's character, on the S-side the
                  leading arguments are; the position sign is
                  (-1)^{i (deg Y + 1)} with i the 0-based position.

These satisfy, exactly at chain level,

  d(f' o f) + (-1)^m d(f') o f - f' o d(f)
      = (-1)^{m(m'+1)} t(a',b)^{-1} (f cup_t f') + (-1)^{m+1} (f' cup_t f)

and its left-handed mirror, which descend to the twisted commutativity

  f cup_t f' = (-1)^{mm'} t(a', b)   (f' cup_t f)      (R-side)
  g cup_t g' = (-1)^{nn'} t(a, b')^{-1} (g' cup_t g)   (S-side)

on cohomology.  Combined across the two sides the twists cancel and the
diagonal part becomes graded commutative.
"""

from itertools import product as iter_product

from .algebras import (character_automorphism, character_automorphism_left,
                       regular_bimodule, twist_left, twist_right,
                       twisted_tensor_algebra)
from .errors import ComplexMismatch, DegreeMismatch, NotInImage
from .hochschild import BarComplex, Cochain, TwistedComplex
from .linalg import Matrix, solve
from .sparse import add_into, scaled


class DecompositionContext:
    """Caches for one twisted tensor product: the orbit complexes, the
    twisted-product complex, the product algebra and its bar complex."""

    def __init__(self, R, S, t, max_level=None):
        self.R = R
        self.S = S
        self.t = t
        self.field = R.field
        self.max_level = max_level
        self._r_complexes = {}
        self._s_complexes = {}
        self._twisted = None
        self._product = None
        self._product_bar = None

    # -- complexes ---------------------------------------------------------
    def r_complex(self, b):
        if b not in self._r_complexes:
            rho = character_automorphism(self.t, b, self.R)
            M = twist_right(regular_bimodule(self.R), rho)
            self._r_complexes[b] = BarComplex(self.R, M, self.max_level)
        return self._r_complexes[b]

    def s_complex(self, a):
        if a not in self._s_complexes:
            rho = character_automorphism_left(self.t, a, self.S)
            N = twist_left(regular_bimodule(self.S), rho)
            self._s_complexes[a] = BarComplex(self.S, N, self.max_level)
        return self._s_complexes[a]

    def twisted_complex(self):
        if self._twisted is None:
            self._twisted = TwistedComplex(self.R, self.S, self.t,
                                           max_level=self.max_level)
        return self._twisted

    def product_algebra(self):
        if self._product is None:
            self._product = twisted_tensor_algebra(self.R, self.S, self.t)
        return self._product

    def product_bar_complex(self):
        if self._product_bar is None:
            T = self.product_algebra()
            self._product_bar = BarComplex(T, regular_bimodule(T), self.max_level)
        return self._product_bar

    # -- cochain constructors ------------------------------------------------
    def r_cochain(self, m, internal, twist, values):
        return OrbitCochain("R", self, twist, self.r_complex(twist).cochain(m, internal, values))

    def s_cochain(self, n, internal, twist, values):
        return OrbitCochain("S", self, twist, self.s_complex(twist).cochain(n, internal, values))

    def unit_r_cochain(self):
        zero_a, zero_b = self.R.group.zero, self.S.group.zero
        return self.r_cochain(0, zero_a, zero_b, {(): dict(self.R.unit)})

    def unit_s_cochain(self):
        zero_a, zero_b = self.R.group.zero, self.S.group.zero
        return self.s_cochain(0, zero_b, zero_a, {(): dict(self.S.unit)})

    # -- scalar helpers --------------------------------------------------------
    def tval(self, a, b):
        return self.t.eval(a, b)

    def sign(self, e):
        return self.field.one if e % 2 == 0 else -self.field.one


class OrbitCochain:
    """A cochain in one of the orbit complexes, tagged with its twist.

    ``side`` is "R" (coefficients R_{b-hat}, twist b in B) or "S"
    (coefficients _{a-hat}S, twist a in A).
    """

    __slots__ = ("side", "ctx", "twist", "cochain")

    def __init__(self, side, ctx, twist, cochain):
        self.side = side
        self.ctx = ctx
        self.twist = twist
        self.cochain = cochain

    @property
    def m(self):
        return self.cochain.degree

    @property
    def internal(self):
        return self.cochain.internal

    def value(self, key):
        return self.cochain.value(key)

    def differential(self):
        return OrbitCochain(self.side, self.ctx, self.twist,
                            self.cochain.parent.differential(self.cochain))

    def scale(self, c):
        return OrbitCochain(self.side, self.ctx, self.twist, self.cochain.scale(c))

    def __add__(self, other):
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        self._compat(other)
        return OrbitCochain(self.side, self.ctx, self.twist, self.cochain + other.cochain)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scale(-self.ctx.field.one)

    def is_zero(self):
        return self.cochain.is_zero()

    def is_cocycle(self):
        return self.differential().is_zero()

    def _compat(self, other):
        if self.side != other.side or self.ctx is not other.ctx or self.twist != other.twist:
            raise DegreeMismatch("orbit cochains with different twists")

    def class_coordinates(self):
        cx = self.cochain.parent
        space = cx.cohomology(self.m, self.internal)
        return cx.class_coordinates(space, self.cochain)

    def is_cohomologous_zero(self):
        return all(c.is_zero() for c in self.class_coordinates())

    def __repr__(self):
        return (f"OrbitCochain({self.side}-side, m={self.m}, "
                f"internal={self.internal}, twist={self.twist})")


# ---------------------------------------------------------------------------
# Orbit cup products.


def cup_orbit_r(f, fp):
    """(f cup_t f')[r..] = (-1)^{mm'} f[front] bhat(f'[back]); lands in the
    complex twisted by b + b'."""
    _require("R", f, fp)
    ctx = f.ctx
    R = ctx.R
    m, mp = f.m, fp.m
    sign = ctx.sign(m * mp)
    out = {}
    for tau1, v1 in f.cochain.values.items():
        for tau2, v2 in fp.cochain.values.items():
            tau = tau1 + tau2
            acc = out.setdefault(tau, {})
            for k2, c2 in v2.items():
                hatc2 = ctx.tval(R.degrees[k2], f.twist) * c2
                for k1, c1 in v1.items():
                    add_into(acc, R.mul_basis(k1, k2), sign * c1 * hatc2)
    values = {k: v for k, v in out.items() if v}
    return ctx.r_cochain(m + mp, f.internal + fp.internal, f.twist + fp.twist, values)


def cup_orbit_s(g, gp):
    """(g cup_t g')[s..] = (-1)^{nn'} a'hat(g[front]) g'[back]; the twist
    applied to the front factor is the *second* factor's character."""
    _require("S", g, gp)
    ctx = g.ctx
    S = ctx.S
    n, np_ = g.m, gp.m
    sign = ctx.sign(n * np_)
    out = {}
    for tau1, v1 in g.cochain.values.items():
        for tau2, v2 in gp.cochain.values.items():
            tau = tau1 + tau2
            acc = out.setdefault(tau, {})
            for k1, c1 in v1.items():
                hatc1 = ctx.tval(gp.twist, S.degrees[k1]) * c1
                for k2, c2 in v2.items():
                    add_into(acc, S.mul_basis(k1, k2), sign * hatc1 * c2)
    values = {k: v for k, v in out.items() if v}
    return ctx.s_cochain(n + np_, g.internal + gp.internal, g.twist + gp.twist, values)


def _require(side, *cochains):
    ctx = cochains[0].ctx
    for c in cochains:
        if c.side != side:
            raise DegreeMismatch(f"expected {side}-side cochains")
        if c.ctx is not ctx:
            raise ComplexMismatch("cochains belong to different contexts")


# ---------------------------------------------------------------------------
# Twisted circle products.


def circle_orbit_r(outer, inner):
    """Insert the inner cochain into the outer one; trailing arguments are
    twisted by the inner factor's character, the position sign is
    (-1)^{i (deg(inner)+1)}."""
    _require("R", outer, inner)
    ctx = outer.ctx
    R = ctx.R
    p, q_ = outer.m, inner.m
    new_twist = outer.twist + inner.twist
    new_internal = outer.internal + inner.internal
    if p == 0 or p + q_ - 1 < 0:
        return ctx.r_cochain(max(p + q_ - 1, 0), new_internal, new_twist, {})
    out = {}
    posneg = (q_ + 1) % 2
    for tau in iter_product(range(R.dim), repeat=p + q_ - 1):
        acc = {}
        for i in range(p):
            iv = inner.value(tau[i:i + q_])
            if not iv:
                continue
            sign = ctx.sign(i * posneg)
            tail_scale = ctx.field.one
            for j in tau[i + q_:]:
                tail_scale = tail_scale * ctx.tval(R.degrees[j], inner.twist)
            for k, c in iv.items():
                ov = outer.value(tau[:i] + (k,) + tau[i + q_:])
                if ov:
                    add_into(acc, ov, sign * tail_scale * c)
        if acc:
            out[tau] = acc
    return ctx.r_cochain(p + q_ - 1, new_internal, new_twist, out)


def circle_orbit_s(outer, inner):
    """Mirror of the R-side: leading arguments twisted by the inner
    factor's character."""
    _require("S", outer, inner)
    ctx = outer.ctx
    S = ctx.S
    p, q_ = outer.m, inner.m
    new_twist = outer.twist + inner.twist
    new_internal = outer.internal + inner.internal
    if p == 0 or p + q_ - 1 < 0:
        return ctx.s_cochain(max(p + q_ - 1, 0), new_internal, new_twist, {})
    out = {}
    posneg = (q_ + 1) % 2
    for tau in iter_product(range(S.dim), repeat=p + q_ - 1):
        acc = {}
        for i in range(p):
            iv = inner.value(tau[i:i + q_])
            if not iv:
                continue
            sign = ctx.sign(i * posneg)
            head_scale = ctx.field.one
            for j in tau[:i]:
                head_scale = head_scale * ctx.tval(inner.twist, S.degrees[j])
            for k, c in iv.items():
                ov = outer.value(tau[:i] + (k,) + tau[i + q_:])
                if ov:
                    add_into(acc, ov, sign * head_scale * c)
        if acc:
            out[tau] = acc
    return ctx.s_cochain(p + q_ - 1, new_internal, new_twist, out)


def homotopy_residual_r(f, fp):
    """Chain-level residual of the circle-product homotopy identity; zero
    for every pair of homogeneous cochains."""
    ctx = f.ctx
    m, mp = f.m, fp.m
    lhs = circle_orbit_r(fp, f).differential()
    lhs = lhs + circle_orbit_r(fp.differential(), f).scale(ctx.sign(m))
    lhs = lhs - circle_orbit_r(fp, f.differential())
    tinv = ctx.tval(fp.internal, f.twist).inv()
    rhs = cup_orbit_r(f, fp).scale(ctx.sign(m * (mp + 1)) * tinv)
    rhs = rhs + cup_orbit_r(fp, f).scale(ctx.sign(m + 1))
    return lhs - rhs


def homotopy_residual_s(g, gp):
    """Left-handed mirror of :func:`homotopy_residual_r`."""
    ctx = g.ctx
    n, np_ = g.m, gp.m
    lhs = circle_orbit_s(gp, g).differential()
    lhs = lhs + circle_orbit_s(gp.differential(), g).scale(ctx.sign(n))
    lhs = lhs - circle_orbit_s(gp, g.differential())
    tinv = ctx.tval(g.twist, gp.internal).inv()
    rhs = cup_orbit_s(g, gp).scale(ctx.sign(n * (np_ + 1)))
    rhs = rhs + cup_orbit_s(gp, g).scale(ctx.sign(n + 1) * tinv)
    return lhs - rhs


# ---------------------------------------------------------------------------
# Twisted brackets on the orbit complexes.


def bracket_orbit_r(f, fp):
    """[f, f']_t = t(a, b')^{-1} f o_t f' - (-1)^{(m-1)(m'-1)} f' o_t f."""
    ctx = f.ctx
    tinv = ctx.tval(f.internal, fp.twist).inv()
    first = circle_orbit_r(f, fp).scale(tinv)
    second = circle_orbit_r(fp, f).scale(ctx.sign((f.m - 1) * (fp.m - 1)))
    return first - second


def bracket_orbit_s(g, gp):
    """[g, g']_t = g o_t g' - (-1)^{(n-1)(n'-1)} t(a', b)^{-1} g' o_t g."""
    ctx = g.ctx
    tinv = ctx.tval(gp.twist, g.internal).inv()
    first = circle_orbit_s(g, gp)
    second = circle_orbit_s(gp, g).scale(ctx.sign((g.m - 1) * (gp.m - 1)) * tinv)
    return first - second


# ---------------------------------------------------------------------------
# The box map and the decomposition map phi.


def box(f, g):
    """(f box g)([r] (x) [s]) = (-1)^{mn} f[r] (x) g[s] as a cochain on the
    twisted-product complex.  Degree matching: the R-side coefficient twist
    must be the S-side internal degree and vice versa."""
    if f.side != "R" or g.side != "S" or f.ctx is not g.ctx:
        raise ComplexMismatch("box needs an R-side and an S-side cochain of one context")
    if f.twist != g.internal or g.twist != f.internal:
        raise DegreeMismatch("twists do not match the partner's internal degree")
    ctx = f.ctx
    sign = ctx.sign(f.m * g.m)
    values = {}
    for tau1, v1 in f.cochain.values.items():
        for tau2, v2 in g.cochain.values.items():
            vec = {}
            for k1, c1 in v1.items():
                for k2, c2 in v2.items():
                    vec[(k1, k2)] = sign * c1 * c2
            if vec:
                values[(tau1, tau2)] = vec
    tcx = ctx.twisted_complex()
    return tcx.cochain(f.m + g.m, f.internal.concat(g.internal), values)


class DecomposedClass:
    """Formal sum of (R-side, S-side) cochain pairs with matched degrees.

    All terms share the same total homological degree and the same internal
    bidegree (a, b); scalars are absorbed into the R-side cochains.
    """

    __slots__ = ("ctx", "degree", "internal_r", "internal_s", "terms")

    def __init__(self, ctx, degree, internal_r, internal_s, terms):
        self.ctx = ctx
        self.degree = degree
        self.internal_r = internal_r
        self.internal_s = internal_s
        clean = []
        for f, g in terms:
            if f.is_zero() or g.is_zero():
                continue
            if f.side != "R" or g.side != "S":
                raise DegreeMismatch("terms must pair an R-side with an S-side cochain")
            if f.m + g.m != degree:
                raise DegreeMismatch("term of the wrong total degree")
            if f.internal != internal_r or g.internal != internal_s:
                raise DegreeMismatch("term of the wrong internal bidegree")
            if f.twist != internal_s or g.twist != internal_r:
                raise DegreeMismatch("term with mismatched coefficient twists")
            clean.append((f, g))
        self.terms = tuple(clean)

    @classmethod
    def single(cls, f, g):
        return cls(f.ctx, f.m + g.m, f.internal, g.internal, [(f, g)])

    def __add__(self, other):
        if (self.ctx is not other.ctx or self.degree != other.degree
                or self.internal_r != other.internal_r or self.internal_s != other.internal_s):
            raise DegreeMismatch("decomposed classes of different degrees")
        return DecomposedClass(self.ctx, self.degree, self.internal_r, self.internal_s,
                               list(self.terms) + list(other.terms))

    def scale(self, c):
        return DecomposedClass(self.ctx, self.degree, self.internal_r, self.internal_s,
                               [(f.scale(c), g) for f, g in self.terms])

    def __neg__(self):
        return self.scale(-self.ctx.field.one)

    def __sub__(self, other):
        return self + (-other)

    def phi(self):
        """The image under the decomposition map: the sum of box terms."""
        tcx = self.ctx.twisted_complex()
        total = tcx.cochain(max(self.degree, 0), self.internal_r.concat(self.internal_s), {})
        for f, g in self.terms:
            total = total + box(f, g)
        return total

    def coordinates(self):
        """Coordinates in the tensor basis of the factor cohomologies,
        keyed by (m, n, i, j); requires all term factors to be cocycles."""
        out = {}
        for f, g in self.terms:
            cf = f.class_coordinates()
            cg = g.class_coordinates()
            for i, a in enumerate(cf):
                if a.is_zero():
                    continue
                for j, bcoef in enumerate(cg):
                    if bcoef.is_zero():
                        continue
                    key = (f.m, g.m, i, j)
                    cur = out.get(key, self.ctx.field.zero) + a * bcoef
                    if cur.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = cur
        return out

    def is_cohomologous_zero(self):
        return not self.coordinates()

    def __repr__(self):
        return (f"DecomposedClass(degree {self.degree}, internal "
                f"({self.internal_r}, {self.internal_s}), {len(self.terms)} terms)")


def combined_cup(X, Xp):
    """(f (x) g) cup (f' (x) g')
       = (-1)^{m'n} t(a', b)^{-1} (f cup_t f') (x) (g cup_t g'),
    extended bilinearly."""
    ctx = X.ctx
    terms = []
    for f, g in X.terms:
        for fp, gp in Xp.terms:
            coeff = ctx.sign(fp.m * g.m) * ctx.tval(fp.internal, g.internal).inv()
            terms.append((cup_orbit_r(f, fp).scale(coeff), cup_orbit_s(g, gp)))
    return DecomposedClass(ctx, X.degree + Xp.degree,
                           X.internal_r + Xp.internal_r,
                           X.internal_s + Xp.internal_s, terms)


def combined_bracket(X, Xp):
    """[f (x) g, f' (x) g'] = (-1)^{(m-1)n'} [f,f']_t (x) (g cup_t g')
                            + (-1)^{m(n'-1)} (f cup_t f') (x) [g,g']_t."""
    ctx = X.ctx
    terms = []
    for f, g in X.terms:
        for fp, gp in Xp.terms:
            m, np_ = f.m, gp.m
            terms.append((bracket_orbit_r(f, fp).scale(ctx.sign((m - 1) * np_)),
                          cup_orbit_s(g, gp)))
            terms.append((cup_orbit_r(f, fp).scale(ctx.sign(m * (np_ - 1))),
                          bracket_orbit_s(g, gp)))
    return DecomposedClass(ctx, X.degree + Xp.degree - 1,
                           X.internal_r + Xp.internal_r,
                           X.internal_s + Xp.internal_s, terms)


# ---------------------------------------------------------------------------
# The diagonal and the cup product on the twisted-product complex.


def diagonal_terms(ctx, rho, sigma):
    """Cut terms of the coassociative diagonal on a generator:
    coefficient (-1)^{(m-i)j} t(deg rho_{>i}, deg sigma_{<=j})^{-1} on the
    cut ((rho_{<=i}, sigma_{<=j}), (rho_{>i}, sigma_{>j})), including the
    empty cuts (counitality forces their presence)."""
    R, S = ctx.R, ctx.S
    tcx = ctx.twisted_complex()
    m, n = len(rho), len(sigma)
    out = []
    for i in range(m + 1):
        tail_deg = tcx._half_degree(R, rho[i:])
        for j in range(n + 1):
            head_deg = tcx._half_degree(S, sigma[:j])
            coeff = ctx.sign((m - i) * j) * ctx.tval(tail_deg, head_deg).inv()
            out.append((coeff, (rho[:i], sigma[:j]), (rho[i:], sigma[j:])))
    return out


def cup_twisted_product(F, G):
    """mu (F (x) G) Delta on the twisted-product complex, with the Koszul
    sign (-1)^{|G| |u|} when G jumps over the first tensor leg u."""
    tcx = F.parent
    if G.parent is not tcx:
        raise ComplexMismatch("cup of cochains on different complexes")
    T_mul = _product_multiplier(tcx)
    field = tcx.field
    degree = F.degree + G.degree
    internal = F.internal + G.internal
    g_parity = G.degree % 2
    values = {}
    for key in tcx.level_keys(degree):
        rho, sigma = key
        m, n = len(rho), len(sigma)
        acc = {}
        for i in range(m + 1):
            for j in range(n + 1):
                u = F.value((rho[:i], sigma[:j]))
                if not u:
                    continue
                v = G.value((rho[i:], sigma[j:]))
                if not v:
                    continue
                tail_deg = tcx._half_degree(tcx.R, rho[i:])
                head_deg = tcx._half_degree(tcx.S, sigma[:j])
                coeff = tcx.t.eval(tail_deg, head_deg).inv()
                sign_exp = (m - i) * j + g_parity * (i + j)
                if sign_exp % 2:
                    coeff = -coeff
                add_into(acc, T_mul(u, v), coeff)
        if acc:
            values[key] = acc
    return tcx.cochain(degree, internal, values)


def _product_multiplier(tcx):
    """Multiplication of coefficient values (pairs) inside R (x)^t S."""
    R, S, t = tcx.R, tcx.S, tcx.t

    def mul(u, v):
        out = {}
        for (w1, x1), c1 in u.items():
            for (w2, x2), c2 in v.items():
                coeff = t.eval(R.degrees[w2], S.degrees[x1]) * c1 * c2
                rr = R.mul_basis(w1, w2)
                ss = S.mul_basis(x1, x2)
                for k1, d1 in rr.items():
                    for k2, d2 in ss.items():
                        add_into(out, {(k1, k2): coeff * d1 * d2})
        return out

    return mul


def cup_box_closed_form(f, g, fp, gp):
    """The cup of two box cochains evaluated via the closed-form
    coefficient (-1)^i t^* with i = mn'+nn'+m'n'+mm'+mn and
    t^* = t(a',b) t(a',s) t(r',b); used as an independent cross-check of
    :func:`cup_twisted_product`."""
    ctx = f.ctx
    R, S = ctx.R, ctx.S
    tcx = ctx.twisted_complex()
    m, n, mp, np_ = f.m, g.m, fp.m, gp.m
    a_p, b_tw = fp.internal, f.twist
    base_sign = ctx.sign(m * np_ + n * np_ + mp * np_ + m * mp + m * n)
    t_ab = ctx.tval(a_p, g.internal)
    values = {}
    for rho in iter_product(range(R.dim), repeat=m + mp):
        v1 = f.value(rho[:m])
        v2 = fp.value(rho[m:])
        if not v1 or not v2:
            continue
        r_deg = tcx._half_degree(R, rho[m:])
        for sigma in iter_product(range(S.dim), repeat=n + np_):
            w1 = g.value(sigma[:n])
            w2 = gp.value(sigma[n:])
            if not w1 or not w2:
                continue
            s_deg = tcx._half_degree(S, sigma[:n])
            tstar = t_ab * ctx.tval(a_p, s_deg) * ctx.tval(r_deg, b_tw)
            acc = {}
            rprod = {}
            for k1, c1 in v1.items():
                for k2, c2 in v2.items():
                    add_into(rprod, R.mul_basis(k1, k2), c1 * c2)
            sprod = {}
            for k1, c1 in w1.items():
                for k2, c2 in w2.items():
                    add_into(sprod, S.mul_basis(k1, k2), c1 * c2)
            for kr, cr in rprod.items():
                for ks, cs in sprod.items():
                    add_into(acc, {(kr, ks): base_sign * tstar * cr * cs})
            if acc:
                values[(rho, sigma)] = acc
    return tcx.cochain(m + n + mp + np_,
                       (f.internal + fp.internal).concat(g.internal + gp.internal),
                       values)


# ---------------------------------------------------------------------------
# phi as a map on classes, and its inverse on cohomology.


def phi_chain_map(f, g):
    """phi(f (x) g) = f box g; a chain map onto the twisted-product complex."""
    return box(f, g)


def phi_residual(f, g):
    """d(phi(f (x) g)) - phi((-1)^n df (x) g + f (x) dg); identically zero.

    With the plain Hochschild differential (no Koszul sign on the dual),
    the Leibniz rule of the source tensor complex puts its sign on the
    left slot, weighted by the right slot's degree.
    """
    tcx = f.ctx.twisted_complex()
    lhs = tcx.differential(box(f, g))
    rhs = box(f.differential(), g).scale(f.ctx.sign(g.m)) + box(f, g.differential())
    return lhs - rhs


def decomposition_basis(ctx, degree, internal_r, internal_s):
    """Single-term classes (rep_i, rep_j) running over all (m, n) splittings
    of the degree and all representative pairs; their phi-images give the
    decomposition side of the dimension identity."""
    out = []
    for m in range(degree + 1):
        n = degree - m
        r_space = ctx.r_complex(internal_s).cohomology(m, internal_r)
        if r_space.dimension == 0:
            continue
        s_space = ctx.s_complex(internal_r).cohomology(n, internal_s)
        if s_space.dimension == 0:
            continue
        for rep_f in r_space.representatives:
            f = OrbitCochain("R", ctx, internal_s, rep_f)
            for rep_g in s_space.representatives:
                g = OrbitCochain("S", ctx, internal_r, rep_g)
                out.append(DecomposedClass.single(f, g))
    return out


def decomposition_dimension(ctx, degree, internal_r, internal_s):
    total = 0
    for m in range(degree + 1):
        n = degree - m
        dim_r = ctx.r_complex(internal_s).cohomology(m, internal_r).dimension
        if dim_r == 0:
            continue
        total += dim_r * ctx.s_complex(internal_r).cohomology(n, internal_s).dimension
    return total


def phi_inverse_on_cohomology(ctx, z):
    """Express a twisted-complex cocycle in the decomposition basis.

    Returns a DecomposedClass Y with phi(Y) cohomologous to z; raises
    NotInImage when the class is not hit (which would violate the
    decomposition isomorphism, not user error)."""
    tcx = ctx.twisted_complex()
    internal_r, internal_s = tcx.group.split(z.internal, ctx.R.group.ngens)
    basis = decomposition_basis(ctx, z.degree, internal_r, internal_s)
    space = tcx.cohomology(z.degree, z.internal)
    z_coords = tcx.class_coordinates(space, z)
    if not basis:
        if all(c.is_zero() for c in z_coords):
            return DecomposedClass(ctx, z.degree, internal_r, internal_s, [])
        raise NotInImage("nonzero class with an empty decomposition basis")
    columns = [tcx.class_coordinates(space, Y.phi()) for Y in basis]
    sol = solve(Matrix.from_columns(ctx.field, columns, rows=space.dimension), z_coords)
    if sol is None:
        raise NotInImage("class is not in the image of the decomposition map")
    result = DecomposedClass(ctx, z.degree, internal_r, internal_s, [])
    for c, Y in zip(sol, basis):
        if not c.is_zero():
            result = result + Y.scale(c)
    return result


# ---------------------------------------------------------------------------
# The classical circle product and bracket on a bar complex (no twists);
# this is the oracle that every twisted pipeline is compared against.


def classical_circle(outer, inner):
    """Gerstenhaber's composition product on C^*(T, T)."""
    cx = outer.parent
    if inner.parent is not cx:
        raise DegreeMismatch("cochains on different complexes")
    T = cx.R
    p, q_ = outer.degree, inner.degree
    internal = outer.internal + inner.internal
    if p == 0 or p + q_ - 1 < 0:
        return cx.cochain(max(p + q_ - 1, 0), internal, {})
    field = cx.field
    posneg = (q_ + 1) % 2
    out = {}
    for tau in iter_product(range(T.dim), repeat=p + q_ - 1):
        acc = {}
        for i in range(p):
            iv = inner.value(tau[i:i + q_])
            if not iv:
                continue
            sign = field.one if (i * posneg) % 2 == 0 else -field.one
            for k, c in iv.items():
                ov = outer.value(tau[:i] + (k,) + tau[i + q_:])
                if ov:
                    add_into(acc, ov, sign * c)
        if acc:
            out[tau] = acc
    return cx.cochain(p + q_ - 1, internal, out)


def gerstenhaber_bracket_bar(F, Fp):
    """[F, F'] = F o F' - (-1)^{(|F|-1)(|F'|-1)} F' o F on a bar complex."""
    field = F.parent.field
    sign = field.one if ((F.degree - 1) * (Fp.degree - 1)) % 2 == 0 else -field.one
    return classical_circle(F, Fp) - classical_circle(Fp, F).scale(sign)


def classical_cup(F, Fp):
    """(F cup F')[t_1..t_{k+k'}] = F[front] F'[back] on a bar complex."""
    cx = F.parent
    if Fp.parent is not cx:
        raise DegreeMismatch("cochains on different complexes")
    T = cx.R
    out = {}
    for tau1, v1 in F.values.items():
        for tau2, v2 in Fp.values.items():
            tau = tau1 + tau2
            acc = out.setdefault(tau, {})
            for k1, c1 in v1.items():
                for k2, c2 in v2.items():
                    add_into(acc, T.mul_basis(k1, k2), c1 * c2)
    return cx.cochain(F.degree + Fp.degree, F.internal + Fp.internal,
                      {k: v for k, v in out.items() if v})
