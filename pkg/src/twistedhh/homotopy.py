"""Resolution-level machinery: the twisted bar resolution as a free
bimodule complex, the homotopy-based circle product on the twisted-product
complex, and comparison maps into the ordinary bar resolution of the
product algebra.

Elements of the twisted resolution X = T (x) BR (x) BS (x) T (with
T = R (x)^t S) are sparse combinations of standard keys

    (e, rho, sigma, f)     with e, f flat T-basis indices.

The identification of X with B(R) (x)^t B(S) moves boundary factors in and
out of the two legs at the cost of bicharacter coefficients; those
conversions are folded into the closed-form coefficients below.

The circle product of two cochains F, F' (viewed as bimodule maps X -> T)
is the composition  F . Phi . (1 (x) F' (x) 1) . Delta2,  where Delta2 is
the double diagonal and Phi = (G (x) Fl + Fr (x) G) sigma is the
contracting-homotopy combination: G merges two bar legs into one (with the
sign of the first leg's bar degree), Fl / Fr are the one-sided
augmentations, and sigma regroups (B(R) (x) B(S))^{(x)2} into
(B(R) (x)_R B(R)) (x) (B(S) (x)_S B(S)) with the sign (-1)^{jp} and the
crossing coefficient t(x', y).

The bracket induced by this circle product agrees in cohomology with the
classical Gerstenhaber bracket computed on the bar complex of T; the
comparison runs through the chain maps Psi_k constructed degree by degree
in :class:`ResolutionComparison` by lifting against the twisted
resolution's differential.
"""

from itertools import product as iter_product

from .errors import ComplexMismatch
from .linalg import SparseMatrix, solve_many
from .sparse import add_into


def _flat(dim_s, i, j):
    return i * dim_s + j


class TwistedResolution:
    """The free T-bimodule resolution T (x) BR (x) BS (x) T with the
    six-term differential; provides blockwise matrices for lifting."""

    def __init__(self, ctx):
        self.ctx = ctx
        self.R = ctx.R
        self.S = ctx.S
        self.t = ctx.t
        self.T = ctx.product_algebra()
        self.field = ctx.field
        self._gen_diff_cache = {}
        self._block_cache = {}
        self._matrix_cache = {}
        self._unit_t = {_flat(self.S.dim, i, j): ci * cj
                        for i, ci in self.R.unit.items()
                        for j, cj in self.S.unit.items()}

    # r |-> r (x) 1 and s |-> 1 (x) s as flat T vectors
    def embed_r(self, i):
        return {_flat(self.S.dim, i, j): c for j, c in self.S.unit.items()}

    def embed_s(self, j):
        return {_flat(self.S.dim, i, j): c for i, c in self.R.unit.items()}

    def gen_degree(self, rho, sigma):
        tcx = self.ctx.twisted_complex()
        return tcx._half_degree(self.R, rho).concat(tcx._half_degree(self.S, sigma))

    def key_degree(self, key):
        e, rho, sigma, f = key
        return self.T.degrees[e] + self.gen_degree(rho, sigma) + self.T.degrees[f]

    def generator_differential(self, rho, sigma):
        """d(1 (x) [rho] (x) [sigma] (x) 1) as a sparse element on keys."""
        cache_key = (rho, sigma)
        if cache_key in self._gen_diff_cache:
            return self._gen_diff_cache[cache_key]
        R, S, t = self.R, self.S, self.t
        one = self.field.one
        m, n = len(rho), len(sigma)
        sign_m = one if m % 2 == 0 else -one
        sign_mn = one if (m + n) % 2 == 0 else -one
        tcx = self.ctx.twisted_complex()
        out = {}

        def put(left_bd, rho2, sigma2, right_bd, coeff):
            for e, ce in left_bd.items():
                for f, cf in right_bd.items():
                    add_into(out, {(e, rho2, sigma2, f): coeff * ce * cf})

        unit_t = self._unit_t
        if m:
            put(self.embed_r(rho[0]), rho[1:], sigma, unit_t, one)
            deg_sigma = tcx._half_degree(S, sigma)
            coeff = sign_m * t.eval(R.degrees[rho[-1]], deg_sigma).inv()
            put(unit_t, rho[:-1], sigma, self.embed_r(rho[-1]), coeff)
            for i in range(1, m):
                sign = -one if i % 2 else one
                for k, c in R.mul_basis(rho[i - 1], rho[i]).items():
                    put(unit_t, rho[:i - 1] + (k,) + rho[i + 1:], sigma, unit_t, sign * c)
        if n:
            deg_rho = tcx._half_degree(R, rho)
            coeff = sign_m * t.eval(deg_rho, S.degrees[sigma[0]]).inv()
            put(self.embed_s(sigma[0]), rho, sigma[1:], unit_t, coeff)
            put(unit_t, rho, sigma[:-1], self.embed_s(sigma[-1]), sign_mn)
            for i in range(1, n):
                sign = -one if i % 2 else one
                for k, c in S.mul_basis(sigma[i - 1], sigma[i]).items():
                    put(unit_t, rho, sigma[:i - 1] + (k,) + sigma[i + 1:], unit_t,
                        sign_m * sign * c)
        self._gen_diff_cache[cache_key] = out
        return out

    def act(self, left_vec, element, right_vec):
        """left . element . right for sparse T vectors (or None = skip)."""
        T = self.T
        out = element
        if left_vec is not None:
            moved = {}
            for (e, rho, sigma, f), c in out.items():
                for e0, c0 in left_vec.items():
                    for e2, cl in T.mul_basis(e0, e).items():
                        add_into(moved, {(e2, rho, sigma, f): c * c0 * cl})
            out = moved
        if right_vec is not None:
            moved = {}
            for (e, rho, sigma, f), c in out.items():
                for f0, c0 in right_vec.items():
                    for f2, cr in T.mul_basis(f, f0).items():
                        add_into(moved, {(e, rho, sigma, f2): c * c0 * cr})
            out = moved
        return out

    def differential(self, element):
        out = {}
        T = self.T
        for (e, rho, sigma, f), c in element.items():
            for (e2, rho2, sigma2, f2), cc in self.generator_differential(rho, sigma).items():
                for e3, cl in T.mul_basis(e, e2).items():
                    for f3, cr in T.mul_basis(f2, f).items():
                        add_into(out, {(e3, rho2, sigma2, f3): c * cc * cl * cr})
        return out

    def level_block(self, k, internal):
        cache_key = (k, internal)
        if cache_key not in self._block_cache:
            keys = []
            for m in range(k + 1):
                n = k - m
                for rho in iter_product(range(self.R.dim), repeat=m):
                    for sigma in iter_product(range(self.S.dim), repeat=n):
                        gen_deg = self.gen_degree(rho, sigma)
                        for e in range(self.T.dim):
                            part = self.T.degrees[e] + gen_deg
                            for f in range(self.T.dim):
                                if part + self.T.degrees[f] == internal:
                                    keys.append((e, rho, sigma, f))
            self._block_cache[cache_key] = keys
        return self._block_cache[cache_key]

    def differential_matrix(self, k, internal):
        cache_key = (k, internal)
        if cache_key not in self._matrix_cache:
            source = self.level_block(k, internal)
            target_index = {key: i for i, key in enumerate(self.level_block(k - 1, internal))}
            row_data = [dict() for _ in target_index]
            for j, key in enumerate(source):
                for key2, c in self.differential({key: self.field.one}).items():
                    i = target_index.get(key2)
                    if i is not None:
                        cur = row_data[i].get(j)
                        val = c if cur is None else cur + c
                        if val.is_zero():
                            row_data[i].pop(j, None)
                        else:
                            row_data[i][j] = val
            self._matrix_cache[cache_key] = SparseMatrix(
                self.field, row_data, len(target_index), len(source))
        return self._matrix_cache[cache_key]

    def to_block_vector(self, element, k, internal):
        block_index = {key: i for i, key in enumerate(self.level_block(k, internal))}
        vec = [self.field.zero] * len(block_index)
        for key, c in element.items():
            vec[block_index[key]] = vec[block_index[key]] + c
        return vec

    def evaluate_cochain(self, F, key):
        """A twisted-complex cochain as a bimodule map X -> T (flat values)."""
        e, rho, sigma, f = key
        val = F.value((rho, sigma))
        if not val:
            return {}
        T = self.T
        flat_val = {_flat(self.S.dim, w, x): c for (w, x), c in val.items()}
        return T.mul_vec(T.mul_vec({e: self.field.one}, flat_val), {f: self.field.one})


# ---------------------------------------------------------------------------
# The homotopy circle product on the twisted-product complex.


def circle_via_homotopy(ctx, F, Fp):
    """F o F' = F Phi (1 (x) F' (x) 1) Delta2, evaluated on generators.

    The composite reduces to two explicit summation branches: the middle
    cut feeds F', its value (w_r (x) w_s) is pushed back into one of the
    two bar legs (the R leg when no s-letters precede the cut, the S leg
    when no r-letters follow it), and the accumulated bicharacter
    coefficients record every factor that changed sides on the way.
    """
    tcx = ctx.twisted_complex()
    if F.parent is not tcx or Fp.parent is not tcx:
        raise ComplexMismatch("homotopy circle product needs twisted-complex cochains")
    R, S, t = ctx.R, ctx.S, ctx.t
    T = ctx.product_algebra()
    dim_s = S.dim
    k_out = F.degree + Fp.degree - 1
    internal = F.internal + Fp.internal
    if k_out < 0:
        return tcx.cochain(0, internal, {})
    fp_total = Fp.degree
    half_r = lambda tup: tcx._half_degree(R, tup)
    half_s = lambda tup: tcx._half_degree(S, tup)

    def finish(acc, left, rho, sigma, right, coeff):
        val = F.value((rho, sigma))
        if not val:
            return
        flat_val = {_flat(dim_s, w, x): c for (w, x), c in val.items()}
        if left is not None:
            flat_val = T.mul_vec(left, flat_val)
        if right is not None:
            flat_val = T.mul_vec(flat_val, right)
        for wflat, c in flat_val.items():
            add_into(acc, {divmod(wflat, dim_s): coeff * c})

    values = {}
    for key in tcx.level_keys(k_out):
        rho, sigma = key
        mpp, npp = len(rho), len(sigma)
        acc = {}
        # Branch G (x) Fl: cut positions  rho = rho1 | mid | rho3, sigma = mid_s | sigma3
        # (no sigma letters before the middle cut).
        for i1 in range(mpp + 1):
            for mid_len in range(mpp - i1 + 1):
                i2 = i1 + mid_len
                rho1, rho_mid, rho3 = rho[:i1], rho[i1:i2], rho[i2:]
                deg_rho3 = half_r(rho3)
                for j2 in range(npp + 1):
                    sigma_mid, sigma3 = sigma[:j2], sigma[j2:]
                    mid_val = Fp.value((rho_mid, sigma_mid))
                    if not mid_val:
                        continue
                    sign = ctx.sign((mpp - i2) * j2 + fp_total * i1 + i1)
                    coeff0 = sign * t.eval(deg_rho3, half_s(sigma_mid)).inv()
                    for (w_r, w_s), cmid in mid_val.items():
                        new_rho = rho1 + (w_r,) + rho3
                        coeff = (coeff0 * cmid
                                 * t.eval(deg_rho3, S.degrees[w_s])
                                 * t.eval(half_r(new_rho), S.degrees[w_s]).inv())
                        finish(acc, ctx_embed_s(ctx, w_s), new_rho, sigma3, None, coeff)
        # Branch Fr (x) G: rho = rho1 | mid (the middle cut reaches the right
        # end of the r-letters), sigma = sigma1 | mid_s | sigma3.
        for i1 in range(mpp + 1):
            rho1, rho_mid = rho[:i1], rho[i1:]
            deg_rho_mid = half_r(rho_mid)
            for j1 in range(npp + 1):
                sigma1 = sigma[:j1]
                deg_sigma1 = half_s(sigma1)
                for mid_len in range(npp - j1 + 1):
                    j2 = j1 + mid_len
                    sigma_mid, sigma3 = sigma[j1:j2], sigma[j2:]
                    mid_val = Fp.value((rho_mid, sigma_mid))
                    if not mid_val:
                        continue
                    sign = ctx.sign(len(rho_mid) * j1 + fp_total * (i1 + j1) + i1 + j1)
                    coeff0 = sign * t.eval(deg_rho_mid, deg_sigma1).inv()
                    for (w_r, w_s), cmid in mid_val.items():
                        new_sigma = sigma1 + (w_s,) + sigma3
                        coeff = (coeff0 * cmid
                                 * t.eval(R.degrees[w_r], deg_sigma1)
                                 * t.eval(R.degrees[w_r], half_s(new_sigma)).inv())
                        finish(acc, None, rho1, new_sigma, ctx_embed_r(ctx, w_r), coeff)
        if acc:
            values[key] = acc
    return tcx.cochain(k_out, internal, values)


def ctx_embed_r(ctx, i):
    return {_flat(ctx.S.dim, i, j): c for j, c in ctx.S.unit.items()}


def ctx_embed_s(ctx, j):
    return {_flat(ctx.S.dim, i, j): c for i, c in ctx.R.unit.items()}


def bracket_via_homotopy(ctx, F, Fp):
    """[F, F'] = F o F' - (-1)^{(|F|-1)(|F'|-1)} F' o F with the homotopy
    circle product."""
    sign = ctx.sign((F.degree - 1) * (Fp.degree - 1))
    return circle_via_homotopy(ctx, F, Fp) - circle_via_homotopy(ctx, Fp, F).scale(sign)


# ---------------------------------------------------------------------------
# Comparison with the bar resolution of the product algebra.


class ResolutionComparison:
    """Chain maps Psi_k : (bar resolution of T) -> X lifting the identity.

    Psi_0 matches the degree-0 pieces; each Psi_k is found by solving
    d_X u = Psi_{k-1}(d_bar gen) blockwise per internal degree, which is
    possible because X is exact in positive degrees.  Pulling a
    twisted-complex cochain back along Psi gives a bar cochain of T in the
    same cohomology class.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self.X = TwistedResolution(ctx)
        self.T = ctx.product_algebra()
        self.field = ctx.field
        self._solved = {}

    def psi(self, k):
        if k in self._solved:
            return self._solved[k]
        if k == 0:
            element = {}
            for e, ce in self.T.unit.items():
                for f, cf in self.T.unit.items():
                    add_into(element, {(e, (), (), f): ce * cf})
            table = {(): element}
            self._solved[0] = table
            return table
        prev = self.psi(k - 1)
        T = self.T
        one = self.field.one
        bar_cx = self.ctx.product_bar_complex()
        rhs_by_degree = {}
        gens_by_degree = {}
        for tau in iter_product(range(T.dim), repeat=k):
            rhs = self.X.act({tau[0]: one}, prev[tau[1:]], None)
            for i in range(1, k):
                sign = -one if i % 2 else one
                for kk, c in T.mul_basis(tau[i - 1], tau[i]).items():
                    merged = tau[:i - 1] + (kk,) + tau[i + 1:]
                    for key, c2 in prev[merged].items():
                        add_into(rhs, {key: sign * c * c2})
            sign = one if k % 2 == 0 else -one
            for key, c in self.X.act(None, prev[tau[:-1]], {tau[-1]: one}).items():
                add_into(rhs, {key: sign * c})
            deg = bar_cx.key_degree(tau)
            rhs_by_degree.setdefault(deg, []).append(rhs)
            gens_by_degree.setdefault(deg, []).append(tau)
        table = {}
        for deg in sorted(rhs_by_degree):
            block = self.X.level_block(k, deg)
            mat = self.X.differential_matrix(k, deg)
            vectors = [self.X.to_block_vector(r, k - 1, deg) for r in rhs_by_degree[deg]]
            sols = solve_many(mat, vectors)
            for tau, sol in zip(gens_by_degree[deg], sols):
                if sol is None:
                    raise ComplexMismatch("twisted resolution is not exact; lifting failed")
                element = {key: c for key, c in zip(block, sol) if not c.is_zero()}
                table[tau] = element
        self._solved[k] = table
        return table

    def transport(self, F):
        """Pull a twisted-complex cochain back to a bar cochain of T
        representing the same cohomology class."""
        k = F.degree
        bar = self.ctx.product_bar_complex()
        if not F.values:
            return bar.cochain(max(k, 0), F.internal, {})
        table = self.psi(k)
        bar_cx = self.ctx.product_bar_complex()
        values = {}
        for tau, element in table.items():
            acc = {}
            for key, c in element.items():
                for wflat, cv in self.X.evaluate_cochain(F, key).items():
                    add_into(acc, {wflat: c * cv})
            if acc:
                values[tau] = acc
        return bar_cx.cochain(k, F.internal, values)
