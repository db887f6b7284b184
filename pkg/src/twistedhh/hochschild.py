"""Hochschild cochain complexes and their cohomology, stratified by
internal degree.

Two complexes are implemented on a shared core:

* :class:`BarComplex` -- C^*(R, M) for a single algebra, built on the
  unreduced bar construction B_m R = R^{(x) m}.  The differential of an
  m-cochain f is

      (df)[r_1|...|r_{m+1}] = r_1 f[r_2|...|r_{m+1}]
                              + sum_i (-1)^i f[r_1|...|r_i r_{i+1}|...]
                              + (-1)^{m+1} f[r_1|...|r_m] r_{m+1},

  with the bimodule actions of the coefficient module M (which may carry
  character twists on either side).

* :class:`TwistedComplex` -- the complex Hom(BR (x) BS, M (x) N) computing
  the Hochschild cohomology of the twisted tensor product R (x)^t S with
  coefficients in M (x)^t N.  Its differential is dual to the differential
  of the free bimodule resolution (R(x)^tS) (x) BR (x) BS (x) (R(x)^tS);
  the two boundary terms that move a factor across the other tensor leg
  pick up inverse bicharacter coefficients.

Everything is graded: a homogeneous cochain of internal degree ``a`` sends
tuples of degree ``c`` into the degree ``c + a`` part of the coefficients,
and both differentials preserve internal degree, so all linear algebra is
done blockwise per (homological degree, internal degree).
"""

from itertools import product as iter_product

from .errors import NotACocycle, TruncationExceeded, WrongDegree
from .linalg import Matrix, SparseMatrix, image_basis, kernel_basis, quotient_basis, solve
from .sparse import add_into, scaled


class Cochain:
    """Homogeneous cochain: values on basis keys, target coefficients sparse.

    ``values[key]`` is a sparse coefficient vector; keys are bar tuples for
    a :class:`BarComplex` and (r-tuple, s-tuple) pairs for a
    :class:`TwistedComplex`.
    """

    __slots__ = ("parent", "degree", "internal", "values")

    def __init__(self, parent, degree, internal, values):
        self.parent = parent
        self.degree = degree
        self.internal = internal
        self.values = {k: dict(v) for k, v in values.items() if v}

    def value(self, key):
        return self.values.get(key, {})

    def __add__(self, other):
        # zero cochains act as a universal additive identity so that
        # degenerate degree-(-1) products can be folded into any sum
        if not other.values:
            return self
        if not self.values:
            return other
        self._compat(other)
        out = {k: dict(v) for k, v in self.values.items()}
        for k, v in other.values.items():
            add_into(out.setdefault(k, {}), v)
        return Cochain(self.parent, self.degree, self.internal,
                       {k: v for k, v in out.items() if v})

    def __sub__(self, other):
        return self + other.scale(-self.parent.field.one)

    def scale(self, c):
        if c.is_zero():
            return Cochain(self.parent, self.degree, self.internal, {})
        return Cochain(self.parent, self.degree, self.internal,
                       {k: scaled(v, c) for k, v in self.values.items()})

    def __neg__(self):
        return self.scale(-self.parent.field.one)

    def is_zero(self):
        return not self.values

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.parent is other.parent
                and self.degree == other.degree and self.values == other.values)

    def _compat(self, other):
        if self.parent is not other.parent or self.degree != other.degree:
            raise WrongDegree("cochains live on different levels")
        if self.internal != other.internal:
            raise WrongDegree("cochains have different internal degrees")

    def __repr__(self):
        return f"Cochain(deg {self.degree}, internal {self.internal}, {len(self.values)} keys)"


class CohomologySpace:
    """Basis of representative cocycles for one (n, internal degree) block,
    together with the coboundary image needed to read off coordinates."""

    __slots__ = ("parent", "n", "internal", "block", "key_index",
                 "representatives", "rep_matrix", "coboundary_image")

    def __init__(self, parent, n, internal, block, key_index,
                 representatives, rep_matrix, coboundary_image):
        self.parent = parent
        self.n = n
        self.internal = internal
        self.block = block
        self.key_index = key_index
        self.representatives = representatives
        self.rep_matrix = rep_matrix
        self.coboundary_image = coboundary_image

    @property
    def dimension(self):
        return len(self.representatives)

    def __repr__(self):
        return f"CohomologySpace(n={self.n}, internal={self.internal}, dim={self.dimension})"


class ComplexBase:
    """Shared machinery: blocks, differentials, cohomology, coordinates.

    Subclasses provide the level keys, their degrees, the coefficient
    module data, and the forward differential on a single basis pair.
    """

    def __init__(self, field, group, max_level=None):
        self.field = field
        self.group = group
        self.max_level = max_level
        self._block_cache = {}
        self._matrix_cache = {}
        self._cohomology_cache = {}
        self._level_degree_cache = {}

    # -- supplied by subclasses -------------------------------------------
    def level_keys(self, k):
        raise NotImplementedError

    def key_degree(self, key):
        raise NotImplementedError

    def module_indices(self):
        raise NotImplementedError

    def module_degree(self, w):
        raise NotImplementedError

    def differential_entries(self, key, w):
        """Yield ((key', w'), coefficient) pairs of d(indicator cochain)."""
        raise NotImplementedError

    # -- blocks -------------------------------------------------------------
    def _check_level(self, k):
        if k < 0:
            raise TruncationExceeded("negative homological degree")
        if self.max_level is not None and k > self.max_level:
            raise TruncationExceeded(f"level {k} beyond the truncation bound {self.max_level}")

    def keys_by_degree(self, k):
        self._check_level(k)
        if k not in self._level_degree_cache:
            table = {}
            for key in self.level_keys(k):
                table.setdefault(self.key_degree(key), []).append(key)
            self._level_degree_cache[k] = table
        return self._level_degree_cache[k]

    def block(self, k, internal):
        """Ordered basis [(key, w), ...] of the internal-degree block."""
        cache_key = (k, internal)
        if cache_key not in self._block_cache:
            module_blocks = {}
            for w in self.module_indices():
                module_blocks.setdefault(self.module_degree(w), []).append(w)
            pairs = []
            for deg, keys in sorted(self.keys_by_degree(k).items()):
                targets = module_blocks.get(deg + internal)
                if not targets:
                    continue
                for key in keys:
                    for w in targets:
                        pairs.append((key, w))
            self._block_cache[cache_key] = pairs
        return self._block_cache[cache_key]

    def block_index(self, k, internal):
        return {pair: i for i, pair in enumerate(self.block(k, internal))}

    def internal_degrees_up_to(self, n_max):
        """All internal degrees with a nonzero cochain block in levels
        0..n_max+1, computed from degree supports (never by guessing)."""
        out = set()
        top = n_max + 1
        if self.max_level is not None:
            top = min(top, self.max_level)
        module_degs = {self.module_degree(w) for w in self.module_indices()}
        for k in range(top + 1):
            for deg in self.keys_by_degree(k):
                for md in module_degs:
                    out.add(md - deg)
        return sorted(out)

    # -- differentials -------------------------------------------------------
    def zero_cochain(self, k, internal):
        return Cochain(self, k, internal, {})

    def cochain(self, k, internal, values):
        return Cochain(self, k, internal, values)

    def differential(self, cochain):
        out = {}
        for key, vec in cochain.values.items():
            for w, c in vec.items():
                for (key2, w2), coeff in self.differential_entries(key, w):
                    add_into(out.setdefault(key2, {}), {w2: coeff * c})
        return Cochain(self, cochain.degree + 1, cochain.internal,
                       {k: v for k, v in out.items() if v})

    def differential_matrix(self, k, internal):
        cache_key = (k, internal)
        if cache_key not in self._matrix_cache:
            source = self.block(k, internal)
            target_index = self.block_index(k + 1, internal)
            row_data = [dict() for _ in range(len(target_index))]
            for j, (key, w) in enumerate(source):
                # entries outside the block would contradict degree preservation
                for (key2, w2), coeff in self.differential_entries(key, w):
                    i = target_index.get((key2, w2))
                    if i is not None:
                        cur = row_data[i].get(j)
                        val = coeff if cur is None else cur + coeff
                        if val.is_zero():
                            row_data[i].pop(j, None)
                        else:
                            row_data[i][j] = val
            self._matrix_cache[cache_key] = SparseMatrix(
                self.field, row_data, len(target_index), len(source))
        return self._matrix_cache[cache_key]

    # -- cohomology ----------------------------------------------------------
    def cohomology(self, n, internal):
        cache_key = (n, internal)
        if cache_key not in self._cohomology_cache:
            self._check_level(n + 1)
            block = self.block(n, internal)
            key_index = {pair: i for i, pair in enumerate(block)}
            cocycles = kernel_basis(self.differential_matrix(n, internal))
            if n > 0:
                boundaries = image_basis(self.differential_matrix(n - 1, internal))
            else:
                boundaries = Matrix.from_columns(self.field, [], rows=len(block))
            rep_matrix = quotient_basis(boundaries, len(block), inside=cocycles)
            representatives = [self._from_block_vector(n, internal, block, col)
                               for col in rep_matrix.columns()]
            self._cohomology_cache[cache_key] = CohomologySpace(
                self, n, internal, block, key_index, representatives,
                rep_matrix, boundaries)
        return self._cohomology_cache[cache_key]

    def _from_block_vector(self, n, internal, block, column):
        values = {}
        for (key, w), c in zip(block, column):
            if not c.is_zero():
                values.setdefault(key, {})[w] = c
        return Cochain(self, n, internal, values)

    def to_block_vector(self, cochain):
        block = self.block(cochain.degree, cochain.internal)
        index = self.block_index(cochain.degree, cochain.internal)
        vec = [self.field.zero] * len(block)
        for key, coeffs in cochain.values.items():
            for w, c in coeffs.items():
                i = index.get((key, w))
                if i is None:
                    raise WrongDegree("cochain is not homogeneous of the declared internal degree")
                vec[i] = vec[i] + c
        return vec

    def class_coordinates(self, space, z):
        """Coordinates of the cocycle z in the representative basis."""
        if z.degree != space.n or z.internal != space.internal:
            raise WrongDegree("cocycle does not match the cohomology block")
        if not self.differential(z).is_zero():
            raise NotACocycle("differential of the alleged cocycle is nonzero")
        vec = self.to_block_vector(z)
        k = space.dimension
        combined = Matrix.from_columns(
            self.field,
            space.rep_matrix.columns() + space.coboundary_image.columns(),
            rows=len(space.block))
        coords = solve(combined, vec)
        if coords is None:
            raise NotACocycle("cocycle lies outside ker d; block data is inconsistent")
        return coords[:k]

    def is_coboundary(self, z):
        coords = self.class_coordinates(self.cohomology(z.degree, z.internal), z)
        return all(c.is_zero() for c in coords)


# ---------------------------------------------------------------------------


class BarComplex(ComplexBase):
    """C^*(R, M) on the unreduced bar construction of R."""

    def __init__(self, R, M, max_level=None):
        super().__init__(R.field, R.group, max_level)
        if M.left_algebra is not R or M.right_algebra is not R:
            # twisted coefficient modules keep the same underlying algebra object
            raise WrongDegree("coefficients must form a bimodule over R itself")
        self.R = R
        self.M = M
        self._tuple_cache = {}
        self._tuple_degree_cache = {}

    def level_keys(self, k):
        if k not in self._tuple_cache:
            self._tuple_cache[k] = list(iter_product(range(self.R.dim), repeat=k))
        return self._tuple_cache[k]

    def key_degree(self, key):
        cached = self._tuple_degree_cache.get(key)
        if cached is None:
            coords = [0] * self.group.ngens
            for i in key:
                for n, c in enumerate(self.R.degrees[i].coords):
                    coords[n] += c
            cached = self.group.element(coords)
            self._tuple_degree_cache[key] = cached
        return cached

    def module_indices(self):
        return range(self.M.dim)

    def module_degree(self, w):
        return self.M.degrees[w]

    def differential_entries(self, key, w):
        R, M = self.R, self.M
        m = len(key)
        one = self.field.one
        sign_last = one if m % 2 else -one
        for j in range(R.dim):
            vec = M.act_left_basis(j, w)
            if vec:
                key2 = (j,) + key
                for w2, c in vec.items():
                    yield (key2, w2), c
            vec = M.act_right_basis(j, w)
            if vec:
                key2 = key + (j,)
                for w2, c in vec.items():
                    yield (key2, w2), sign_last * c
        for i in range(1, m + 1):
            sign = -one if i % 2 else one
            for (p, q, c) in R.comult(key[i - 1]):
                key2 = key[:i - 1] + (p, q) + key[i:]
                yield (key2, w), sign * c


def bar_differential(R, m):
    """Matrix of the bar differential B_m R -> B_{m-1} R on tuple bases."""
    source = list(iter_product(range(R.dim), repeat=m))
    target = list(iter_product(range(R.dim), repeat=m - 1)) if m >= 1 else []
    index = {t: i for i, t in enumerate(target)}
    one = R.field.one
    columns = []
    for tau in source:
        col = [R.field.zero] * len(target)
        for i in range(1, m):
            sign = -one if i % 2 else one
            for k, c in R.mul_basis(tau[i - 1], tau[i]).items():
                t2 = tau[:i - 1] + (k,) + tau[i + 1:]
                col[index[t2]] = col[index[t2]] + sign * c
        columns.append(col)
    return Matrix.from_columns(R.field, columns, rows=len(target))


class TwistedComplex(ComplexBase):
    """Hom(BR (x) BS, M (x) N) with the twisted-resolution differential.

    Computes the Hochschild cohomology of R (x)^t S with coefficients in
    the bimodule M (x)^t N, graded by the direct sum of the two grading
    groups.  Keys are pairs (r-tuple, s-tuple).
    """

    def __init__(self, R, S, t, M=None, N=None, max_level=None):
        from .algebras import regular_bimodule
        super().__init__(R.field, R.group.direct_sum(S.group), max_level)
        self.R = R
        self.S = S
        self.t = t
        self.M = M if M is not None else regular_bimodule(R)
        self.N = N if N is not None else regular_bimodule(S)
        self._tuple_degree_cache = {}
        self._level_cache = {}
        self._tinv_r = {}  # t(deg u_j, deg sigma)^-1 cache
        self._tinv_s = {}

    # -- bookkeeping -------------------------------------------------------
    def level_keys(self, k):
        if k not in self._level_cache:
            keys = []
            for m in range(k + 1):
                n = k - m
                for rho in iter_product(range(self.R.dim), repeat=m):
                    for sigma in iter_product(range(self.S.dim), repeat=n):
                        keys.append((rho, sigma))
            self._level_cache[k] = keys
        return self._level_cache[k]

    def _half_degree(self, algebra, tup):
        cached = self._tuple_degree_cache.get((algebra is self.S, tup))
        if cached is None:
            coords = [0] * algebra.group.ngens
            for i in tup:
                for n, c in enumerate(algebra.degrees[i].coords):
                    coords[n] += c
            cached = algebra.group.element(coords)
            self._tuple_degree_cache[(algebra is self.S, tup)] = cached
        return cached

    def key_degree(self, key):
        rho, sigma = key
        return self._half_degree(self.R, rho).concat(self._half_degree(self.S, sigma))

    def module_indices(self):
        return list(iter_product(range(self.M.dim), range(self.N.dim)))

    def module_degree(self, w):
        return self.M.degrees[w[0]].concat(self.N.degrees[w[1]])

    # -- coefficient bimodule actions over R (x)^t S -------------------------
    def act_left_r(self, j, w):
        out = {}
        for w2, c in self.M.act_left_basis(j, w[0]).items():
            out[(w2, w[1])] = c
        return out

    def act_right_r(self, j, w):
        coeff = self.t.eval(self.R.degrees[j], self.N.degrees[w[1]])
        out = {}
        for w2, c in self.M.act_right_basis(j, w[0]).items():
            out[(w2, w[1])] = coeff * c
        return out

    def act_left_s(self, j, w):
        coeff = self.t.eval(self.M.degrees[w[0]], self.S.degrees[j])
        out = {}
        for x2, c in self.N.act_left_basis(j, w[1]).items():
            out[(w[0], x2)] = coeff * c
        return out

    def act_right_s(self, j, w):
        out = {}
        for x2, c in self.N.act_right_basis(j, w[1]).items():
            out[(w[0], x2)] = c
        return out

    # -- differential --------------------------------------------------------
    def differential_entries(self, key, w):
        rho, sigma = key
        m, n = len(rho), len(sigma)
        one = self.field.one
        R, S = self.R, self.S
        sign_m1 = one if m % 2 else -one          # (-1)^{m+1}
        sign_m = -sign_m1                          # (-1)^m
        sign_mn1 = one if (m + n) % 2 else -one    # (-1)^{m+n+1}
        deg_sigma = self._half_degree(S, sigma)
        deg_rho = self._half_degree(R, rho)
        for j in range(R.dim):
            vec = self.act_left_r(j, w)
            if vec:
                key2 = ((j,) + rho, sigma)
                for w2, c in vec.items():
                    yield (key2, w2), c
            vec = self.act_right_r(j, w)
            if vec:
                tinv = self._tinv_right_r(j, deg_sigma)
                key2 = (rho + (j,), sigma)
                for w2, c in vec.items():
                    yield (key2, w2), sign_m1 * tinv * c
        for i in range(1, m + 1):
            sign = -one if i % 2 else one
            for (p, q, c) in R.comult(rho[i - 1]):
                key2 = (rho[:i - 1] + (p, q) + rho[i:], sigma)
                yield (key2, w), sign * c
        for j in range(S.dim):
            vec = self.act_left_s(j, w)
            if vec:
                tinv = self._tinv_left_s(deg_rho, j)
                key2 = (rho, (j,) + sigma)
                for w2, c in vec.items():
                    yield (key2, w2), sign_m * tinv * c
            vec = self.act_right_s(j, w)
            if vec:
                key2 = (rho, sigma + (j,))
                for w2, c in vec.items():
                    yield (key2, w2), sign_mn1 * c
        for i in range(1, n + 1):
            sign = -one if i % 2 else one
            for (p, q, c) in S.comult(sigma[i - 1]):
                key2 = (rho, sigma[:i - 1] + (p, q) + sigma[i:])
                yield (key2, w), sign_m * sign * c

    def _tinv_right_r(self, j, deg_sigma):
        k = (j, deg_sigma)
        if k not in self._tinv_r:
            self._tinv_r[k] = self.t.eval(self.R.degrees[j], deg_sigma).inv()
        return self._tinv_r[k]

    def _tinv_left_s(self, deg_rho, j):
        k = (deg_rho, j)
        if k not in self._tinv_s:
            self._tinv_s[k] = self.t.eval(deg_rho, self.S.degrees[j]).inv()
        return self._tinv_s[k]

    def bidegree_block(self, m, n, internal):
        """The (m, n) bidegree piece of the level m+n block."""
        return [(key, w) for (key, w) in self.block(m + n, internal)
                if len(key[0]) == m]


def hochschild_differential(R, M, m, internal, max_level=None):
    """Matrix of d : C^m(R, M)^a -> C^{m+1}(R, M)^a on block bases."""
    return BarComplex(R, M, max_level).differential_matrix(m, internal)


def twisted_complex_differential(R, S, M, N, t, bidegree, internal):
    """Matrix of the twisted-complex differential restricted to one
    (m, n) bidegree piece, mapping into the full next level block."""
    cx = TwistedComplex(R, S, t, M, N)
    m, n = bidegree
    source = cx.bidegree_block(m, n, internal)
    target_index = cx.block_index(m + n + 1, internal)
    columns = []
    for key, w in source:
        col = [cx.field.zero] * len(target_index)
        for (key2, w2), coeff in cx.differential_entries(key, w):
            i = target_index.get((key2, w2))
            if i is not None:
                col[i] = col[i] + coeff
        columns.append(col)
    return Matrix.from_columns(cx.field, columns, rows=len(target_index))


def relevant_internal_degrees(cx, n_max):
    return cx.internal_degrees_up_to(n_max)
