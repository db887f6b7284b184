"""Finite dimensional graded algebras, bimodules, and the twisted tensor
product constructions.

Conventions used throughout:

* an algebra is given by structure constants on an ordered finite basis;
  ``mult[(i, j)]`` is the sparse expansion of ``u_i * u_j``;
* a bimodule stores ``left_action[(i, j)] = u_i . m_j`` and
  ``right_action[(i, j)] = m_j . u_i`` (algebra index first in both);
* the twisted tensor product of algebras multiplies by the rule

      (r (x) s) (r' (x) s') = t(deg r', deg s) (r r') (x) (s s'),

  and the bimodule version twists the same way on the crossing factors.

Twisting a bimodule along a graded automorphism rho replaces one side's
action by its composite with rho; the diagonal character automorphisms
coming from a bicharacter are the special case used by the cohomology
decomposition.
"""

import warnings
from itertools import product as iter_product

from .errors import (AlgebraMismatch, GradingViolation, GroupMismatch, NotAssociative,
                     NotDiagonalizable, UnitFails, UnsupportedFieldConfiguration)
from .groups import Bicharacter, GradingGroup
from .linalg import Matrix, SubspaceBuilder, kernel_basis, solve_many
from .sparse import add_into, from_dense, from_items, scaled, to_dense


class GradedAlgebra:
    __slots__ = ("field", "group", "basis_names", "degrees", "unit", "mult",
                 "_comult_cache", "_blocks_cache")

    def __init__(self, field, group, basis_names, degrees, unit, mult):
        self.field = field
        self.group = group
        self.basis_names = tuple(basis_names)
        self.degrees = tuple(degrees)
        if len(self.degrees) != len(self.basis_names):
            raise ValueError("one degree per basis element, please")
        for d in self.degrees:
            if d.group != group:
                raise GroupMismatch("basis degree lies in the wrong group")
        self.unit = {k: v for k, v in unit.items() if not v.is_zero()}
        self.mult = {ij: {k: v for k, v in vec.items() if not v.is_zero()}
                     for ij, vec in mult.items() if vec}
        self._comult_cache = None
        self._blocks_cache = None

    @property
    def dim(self):
        return len(self.basis_names)

    def degree(self, i):
        return self.degrees[i]

    def mul_basis(self, i, j):
        return self.mult.get((i, j), {})

    def mul_vec(self, v, w):
        out = {}
        for i, a in v.items():
            for j, b in w.items():
                add_into(out, self.mul_basis(i, j), a * b)
        return out

    def comult(self, k):
        """All (i, j, c) with c the coefficient of u_k in u_i * u_j.

        This is the transpose view of the structure constants that the bar
        differential consumes.
        """
        if self._comult_cache is None:
            table = {idx: [] for idx in range(self.dim)}
            for (i, j), vec in sorted(self.mult.items()):
                for k2, c in sorted(vec.items()):
                    table[k2].append((i, j, c))
            self._comult_cache = table
        return self._comult_cache[k]

    def degree_blocks(self):
        if self._blocks_cache is None:
            blocks = {}
            for i, d in enumerate(self.degrees):
                blocks.setdefault(d, []).append(i)
            self._blocks_cache = blocks
        return self._blocks_cache

    def same_structure(self, other):
        """Equality of everything except basis names."""
        return (self.field == other.field and self.group == other.group
                and self.degrees == other.degrees and self.unit == other.unit
                and self.mult == other.mult)

    def __repr__(self):
        return f"GradedAlgebra(dim {self.dim} over {self.field}, graded by {self.group})"


def validate_algebra(R):
    """Check unit, grading, and associativity exhaustively over the basis."""
    zero = R.group.zero
    for k in R.unit:
        if R.degrees[k] != zero:
            raise GradingViolation(k, k, "unit has a component outside degree zero")
    for i in range(R.dim):
        e_i = {i: R.field.one}
        left = R.mul_vec(R.unit, e_i)
        right = R.mul_vec(e_i, R.unit)
        if left != e_i or right != e_i:
            raise UnitFails(i)
    for (i, j), vec in R.mult.items():
        target = R.degrees[i] + R.degrees[j]
        for k in vec:
            if R.degrees[k] != target:
                raise GradingViolation(i, j)
    for i in range(R.dim):
        for j in range(R.dim):
            ij = R.mul_basis(i, j)
            for k in range(R.dim):
                left = {}
                for m, c in ij.items():
                    add_into(left, R.mul_basis(m, k), c)
                jk = R.mul_basis(j, k)
                right = {}
                for m, c in jk.items():
                    add_into(right, R.mul_basis(i, m), c)
                if left != right:
                    raise NotAssociative(i, j, k)
    return True


class GradedBimodule:
    """Graded bimodule over a pair of algebras (usually the same one).

    ``left_action[(i, j)] = u_i . m_j`` and ``right_action[(i, j)] = m_j . u_i``.
    Degrees live in the group shared with the acting algebras.
    """

    __slots__ = ("left_algebra", "right_algebra", "group", "degrees",
                 "left_action", "right_action")

    def __init__(self, left_algebra, right_algebra, group, degrees, left_action, right_action):
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.group = group
        self.degrees = tuple(degrees)
        self.left_action = {k: {m: v for m, v in vec.items() if not v.is_zero()}
                            for k, vec in left_action.items() if vec}
        self.right_action = {k: {m: v for m, v in vec.items() if not v.is_zero()}
                             for k, vec in right_action.items() if vec}

    @property
    def dim(self):
        return len(self.degrees)

    def degree(self, j):
        return self.degrees[j]

    def act_left_basis(self, i, j):
        return self.left_action.get((i, j), {})

    def act_right_basis(self, i, j):
        return self.right_action.get((i, j), {})

    def act_left(self, alg_vec, mod_vec):
        out = {}
        for i, a in alg_vec.items():
            for j, b in mod_vec.items():
                add_into(out, self.act_left_basis(i, j), a * b)
        return out

    def act_right(self, mod_vec, alg_vec):
        out = {}
        for j, b in mod_vec.items():
            for i, a in alg_vec.items():
                add_into(out, self.act_right_basis(i, j), b * a)
        return out

    def __repr__(self):
        return f"GradedBimodule(dim {self.dim} over {self.left_algebra!r})"


def validate_bimodule(M):
    R, S = M.left_algebra, M.right_algebra
    for j in range(M.dim):
        m_j = {j: R.field.one}
        if M.act_left(R.unit, m_j) != m_j:
            raise UnitFails(j)
        if M.act_right(m_j, S.unit) != m_j:
            raise UnitFails(j)
    for (i, j), vec in M.left_action.items():
        target = R.degrees[i] + M.degrees[j]
        for k in vec:
            if M.degrees[k] != target:
                raise GradingViolation(i, j, "left action breaks the grading")
    for (i, j), vec in M.right_action.items():
        target = M.degrees[j] + S.degrees[i]
        for k in vec:
            if M.degrees[k] != target:
                raise GradingViolation(i, j, "right action breaks the grading")
    for i1 in range(R.dim):
        for i2 in range(R.dim):
            prod = R.mul_basis(i1, i2)
            for j in range(M.dim):
                via_prod = {}
                for m, c in prod.items():
                    add_into(via_prod, M.act_left_basis(m, j), c)
                stepwise = M.act_left({i1: R.field.one}, M.act_left_basis(i2, j))
                if via_prod != stepwise:
                    raise NotAssociative(i1, i2, j)
    for j1 in range(S.dim):
        for j2 in range(S.dim):
            prod = S.mul_basis(j1, j2)
            for j in range(M.dim):
                via_prod = {}
                for m, c in prod.items():
                    add_into(via_prod, M.act_right_basis(m, j), c)
                stepwise = M.act_right(M.act_right_basis(j1, j), {j2: S.field.one})
                if via_prod != stepwise:
                    raise NotAssociative(j, j1, j2)
    for i in range(R.dim):
        for j in range(S.dim):
            for m in range(M.dim):
                lr = M.act_right(M.act_left_basis(i, m), {j: S.field.one})
                rl = M.act_left({i: R.field.one}, M.act_right_basis(j, m))
                if lr != rl:
                    raise NotAssociative(i, m, j)
    return True


def regular_bimodule(R):
    left = {}
    right = {}
    for (i, j), vec in R.mult.items():
        left[(i, j)] = dict(vec)
        right[(j, i)] = dict(vec)
    return GradedBimodule(R, R, R.group, R.degrees, left, right)


class AlgebraAutomorphism:
    """Invertible degree-preserving algebra map, columns = images of basis."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra, matrix):
        self.algebra = algebra
        self.matrix = matrix
        if matrix.rows != algebra.dim or matrix.cols != algebra.dim:
            raise AlgebraMismatch("automorphism matrix has the wrong shape")

    def image_of_basis(self, i):
        return from_dense(self.matrix.column(i))

    def apply(self, vec):
        out = {}
        for i, c in vec.items():
            add_into(out, self.image_of_basis(i), c)
        return out

    def compose(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("automorphisms of different algebras")
        return AlgebraAutomorphism(self.algebra, self.matrix @ other.matrix)

    def inverse(self):
        field = self.algebra.field
        identity = Matrix.identity(field, self.algebra.dim)
        cols = solve_many(self.matrix, identity.columns())
        if any(c is None for c in cols):
            raise AlgebraMismatch("matrix is not invertible")
        return AlgebraAutomorphism(self.algebra, Matrix.from_columns(field, cols))

    def validate(self):
        R = self.algebra
        unit_image = self.apply(R.unit)
        if unit_image != R.unit:
            raise UnitFails(-1)
        for i in range(R.dim):
            img = self.image_of_basis(i)
            for k in img:
                if R.degrees[k] != R.degrees[i]:
                    raise GradingViolation(i, i, "automorphism does not preserve degrees")
        for i in range(R.dim):
            for j in range(R.dim):
                lhs = self.apply(R.mul_basis(i, j))
                rhs = R.mul_vec(self.image_of_basis(i), self.image_of_basis(j))
                if lhs != rhs:
                    raise NotAssociative(i, j, -1)
        self.inverse()
        return True


def identity_automorphism(R):
    return AlgebraAutomorphism(R, Matrix.identity(R.field, R.dim))


def character_automorphism(t, b, R):
    """Diagonal automorphism scaling the degree-a block by t(a, b).

    R must be graded by the left-hand group of t, and b lies in the
    right-hand group.  Bilinearity of t is what makes this multiplicative.
    """
    if R.group != t.left:
        raise GroupMismatch("algebra is not graded by the bicharacter's left group")
    if b.group != t.right:
        raise GroupMismatch("twisting element lies in the wrong group")
    field = R.field
    cols = []
    for i in range(R.dim):
        col = [field.zero] * R.dim
        col[i] = t.eval(R.degrees[i], b)
        cols.append(col)
    return AlgebraAutomorphism(R, Matrix.from_columns(field, cols))


def character_automorphism_left(t, a, S):
    """Mirror version: the automorphism a-hat of the right-hand factor."""
    if S.group != t.right:
        raise GroupMismatch("algebra is not graded by the bicharacter's right group")
    if a.group != t.left:
        raise GroupMismatch("twisting element lies in the wrong group")
    field = S.field
    cols = []
    for j in range(S.dim):
        col = [field.zero] * S.dim
        col[j] = t.eval(a, S.degrees[j])
        cols.append(col)
    return AlgebraAutomorphism(S, Matrix.from_columns(field, cols))


def twist_right(M, rho):
    """Same space, right action replaced by m . r := m rho(r)."""
    if rho.algebra is not M.right_algebra:
        raise AlgebraMismatch("automorphism acts on the wrong algebra")
    right = {}
    for i in range(rho.algebra.dim):
        img = rho.image_of_basis(i)
        for j in range(M.dim):
            vec = {}
            for k, c in img.items():
                add_into(vec, M.act_right_basis(k, j), c)
            if vec:
                right[(i, j)] = vec
    return GradedBimodule(M.left_algebra, M.right_algebra, M.group, M.degrees,
                          {k: dict(v) for k, v in M.left_action.items()}, right)


def twist_left(M, rho):
    """Same space, left action replaced by r . m := rho(r) m."""
    if rho.algebra is not M.left_algebra:
        raise AlgebraMismatch("automorphism acts on the wrong algebra")
    left = {}
    for i in range(rho.algebra.dim):
        img = rho.image_of_basis(i)
        for j in range(M.dim):
            vec = {}
            for k, c in img.items():
                add_into(vec, M.act_left_basis(k, j), c)
            if vec:
                left[(i, j)] = vec
    return GradedBimodule(M.left_algebra, M.right_algebra, M.group, M.degrees,
                          left, {k: dict(v) for k, v in M.right_action.items()})


# ---------------------------------------------------------------------------
# Twisted tensor products.


def pair_index(dim_s, i, j):
    return i * dim_s + j


def twisted_tensor_algebra(R, S, t):
    """The algebra R (x)^t S on the basis of pairs, graded by A + B."""
    if R.field != S.field or R.field != t.field:
        raise AlgebraMismatch("factors live over different fields")
    if R.group != t.left or S.group != t.right:
        raise GroupMismatch("gradings do not match the bicharacter")
    field = R.field
    group = R.group.direct_sum(S.group)
    names = []
    degrees = []
    for i in range(R.dim):
        for j in range(S.dim):
            names.append(f"{R.basis_names[i]}(x){S.basis_names[j]}")
            degrees.append(R.degrees[i].concat(S.degrees[j]))
    dim_s = S.dim
    mult = {}
    for i1, j1, i2, j2 in iter_product(range(R.dim), range(S.dim), range(R.dim), range(S.dim)):
        coeff = t.eval(R.degrees[i2], S.degrees[j1])
        rr = R.mul_basis(i1, i2)
        ss = S.mul_basis(j1, j2)
        if not rr or not ss:
            continue
        vec = from_items(((pair_index(dim_s, k1, k2), coeff * c1 * c2)
                          for k1, c1 in rr.items() for k2, c2 in ss.items()))
        if vec:
            mult[(pair_index(dim_s, i1, j1), pair_index(dim_s, i2, j2))] = vec
    unit = from_items(((pair_index(dim_s, i, j), a * b)
                       for i, a in R.unit.items() for j, b in S.unit.items()))
    return GradedAlgebra(field, group, names, degrees, unit, mult)


def twisted_tensor_bimodule(M, N, t, T=None):
    """M (x)^t N as a bimodule over T = R (x)^t S.

    Actions follow the crossing rule: the twist records the bicharacter of
    whatever swaps sides during the multiplication.
    """
    R, S = M.left_algebra, N.left_algebra
    if M.right_algebra is not R or N.right_algebra is not S:
        raise AlgebraMismatch("factors must be honest bimodules over single algebras")
    if T is None:
        T = twisted_tensor_algebra(R, S, t)
    dim_s = S.dim
    dim_n = N.dim
    degrees = [M.degrees[w].concat(N.degrees[x])
               for w in range(M.dim) for x in range(N.dim)]
    left = {}
    right = {}
    for i, j in iter_product(range(R.dim), range(S.dim)):
        for w, x in iter_product(range(M.dim), range(N.dim)):
            # (r (x) s) . (m (x) n) = t(deg m, deg s) (r m) (x) (s n)
            coeff = t.eval(M.degrees[w], S.degrees[j])
            rm = M.act_left_basis(i, w)
            sn = N.act_left_basis(j, x)
            vec = from_items(((pair_index(dim_n, w2, x2), coeff * c1 * c2)
                              for w2, c1 in rm.items() for x2, c2 in sn.items()))
            if vec:
                left[(pair_index(dim_s, i, j), pair_index(dim_n, w, x))] = vec
            # (m (x) n) . (r (x) s) = t(deg r, deg n) (m r) (x) (n s)
            coeff = t.eval(R.degrees[i], N.degrees[x])
            mr = M.act_right_basis(i, w)
            ns = N.act_right_basis(j, x)
            vec = from_items(((pair_index(dim_n, w2, x2), coeff * c1 * c2)
                              for w2, c1 in mr.items() for x2, c2 in ns.items()))
            if vec:
                right[(pair_index(dim_s, i, j), pair_index(dim_n, w, x))] = vec
    return GradedBimodule(T, T, T.group, degrees, left, right)


def iterated_twisted_tensor(algebras, bicharacters):
    """R_1 (x)^t ... (x)^t R_k from pairwise bicharacters t_{ij}, i < j.

    The product moves each factor of the second operand leftwards past the
    later factors of the first; every transposition of a j-th past an i-th
    factor (j > i) contributes t_{ij}(deg r_i, deg r_j).
    """
    k = len(algebras)
    if k < 2:
        raise ValueError("need at least two factors")
    field = algebras[0].field
    for R in algebras:
        if R.field != field:
            raise AlgebraMismatch("factors live over different fields")
    for i in range(k):
        for j in range(i + 1, k):
            t = bicharacters[(i, j)]
            if t.left != algebras[i].group or t.right != algebras[j].group:
                raise GroupMismatch(f"bicharacter ({i},{j}) does not match the gradings")
    group = algebras[0].group
    for R in algebras[1:]:
        group = group.direct_sum(R.group)
    dims = [R.dim for R in algebras]
    index_tuples = list(iter_product(*[range(d) for d in dims]))
    index_of = {tup: n for n, tup in enumerate(index_tuples)}
    names = ["(x)".join(algebras[f].basis_names[i] for f, i in enumerate(tup))
             for tup in index_tuples]
    degrees = []
    for tup in index_tuples:
        d = algebras[0].degrees[tup[0]]
        for f in range(1, k):
            d = d.concat(algebras[f].degrees[tup[f]])
        degrees.append(d)
    mult = {}
    for na, ta in enumerate(index_tuples):
        for nb, tb in enumerate(index_tuples):
            coeff = field.one
            for i in range(k):
                for j in range(i + 1, k):
                    # factor j of the first operand crosses factor i of the second
                    coeff = coeff * bicharacters[(i, j)].eval(
                        algebras[i].degrees[tb[i]], algebras[j].degrees[ta[j]])
            factors = [algebras[f].mul_basis(ta[f], tb[f]) for f in range(k)]
            if any(not fac for fac in factors):
                continue
            vec = {}
            for combo in iter_product(*[sorted(fac.items()) for fac in factors]):
                idx = index_of[tuple(c[0] for c in combo)]
                val = coeff
                for _, cval in combo:
                    val = val * cval
                add_into(vec, {idx: val})
            if vec:
                mult[(na, nb)] = vec
    unit = {}
    for combo in iter_product(*[sorted(R.unit.items()) for R in algebras]):
        idx = index_of[tuple(c[0] for c in combo)]
        val = field.one
        for _, cval in combo:
            val = val * cval
        add_into(unit, {idx: val})
    return GradedAlgebra(field, group, names, degrees, unit, mult)


def group_algebra(G, field):
    """kG with basis u_g, product u_g u_h = u_{g+h}, trivially G-graded."""
    if not G.is_finite():
        raise ValueError("group algebra of an infinite group is not finite dimensional")
    if field.characteristic() and G.order() % field.characteristic() == 0:
        warnings.warn("group order is divisible by the characteristic; kG is not semisimple")
    elements = list(G.elements())
    index_of = {g: i for i, g in enumerate(elements)}
    names = ["u" + "".join(str(c) for c in g.coords) if g.coords else "1" for g in elements]
    one = field.one
    mult = {}
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            mult[(i, j)] = {index_of[g + h]: one}
    unit = {index_of[G.zero]: one}
    return GradedAlgebra(field, G, names, degrees=elements, unit=unit, mult=mult)


class FiniteGroupAction:
    """Commuting automorphisms indexed by the generators of a finite abelian
    group; the order of each automorphism divides its generator's order."""

    __slots__ = ("group", "algebra", "generators")

    def __init__(self, group, algebra, generators):
        if not group.is_finite():
            raise ValueError("acting group must be finite")
        if len(generators) != group.ngens:
            raise ValueError("one automorphism per group generator")
        self.group = group
        self.algebra = algebra
        self.generators = tuple(generators)

    def validate(self):
        for rho in self.generators:
            rho.validate()
        for i, rho in enumerate(self.generators):
            power = identity_automorphism(self.algebra)
            for _ in range(self.group.orders[i]):
                power = rho.compose(power)
            if power.matrix != Matrix.identity(self.algebra.field, self.algebra.dim):
                raise ValueError(f"generator {i} does not have order dividing {self.group.orders[i]}")
        for i in range(len(self.generators)):
            for j in range(i + 1, len(self.generators)):
                a, b = self.generators[i], self.generators[j]
                if (a.matrix @ b.matrix) != (b.matrix @ a.matrix):
                    raise ValueError(f"generators {i} and {j} do not commute")
        return True

    def automorphism(self, g):
        """The automorphism attached to an arbitrary group element."""
        if g.group != self.group:
            raise GroupMismatch("element of the wrong group")
        out = identity_automorphism(self.algebra)
        for rho, c in zip(self.generators, g.coords):
            for _ in range(c):
                out = rho.compose(out)
        return out


def eigenspace_grading(action):
    """Rewrite the algebra on a simultaneous eigenbasis of the action.

    Returns ``(algebra, t, basis_change)`` where the new algebra is graded
    by Ghat + (original grading), ``t`` is the evaluation bicharacter on
    Ghat x G extended trivially on the original part, and ``basis_change``
    has the new basis vectors as columns (in old coordinates).

    Requires the field to contain a primitive root of unity for every
    generator order; each original degree block is refined separately, so
    eigenvectors keep a well defined original degree.
    """
    R = action.algebra
    field = R.field
    G = action.group
    roots = []
    for i, n in enumerate(G.orders):
        zeta = field.primitive_root_of_unity(n)
        if zeta is None:
            raise UnsupportedFieldConfiguration(
                f"field has no primitive root of unity of order {G.orders[i]}")
        roots.append(zeta)

    # Refine each original degree block into joint eigenspaces.
    spaces = []  # (original degree, character coords, list of column vectors)
    for d in sorted(R.degree_blocks()):
        idxs = R.degree_blocks()[d]
        basis = []
        for i in idxs:
            col = [field.zero] * R.dim
            col[i] = field.one
            basis.append(col)
        current = [((), basis)]
        for gi, rho in enumerate(action.generators):
            zeta = roots[gi]
            n = G.orders[gi]
            refined = []
            for label, cols in current:
                remaining = len(cols)
                found = 0
                for power in range(n):
                    lam = zeta ** power
                    # solve (rho - lam) x = 0 inside the span of cols
                    mat_cols = []
                    for col in cols:
                        image = rho.matrix.apply(col)
                        mat_cols.append([a - lam * b for a, b in zip(image, col)])
                    ker = kernel_basis(Matrix.from_columns(field, mat_cols, rows=R.dim))
                    if ker.cols == 0:
                        continue
                    sub_cols = []
                    for kv in ker.columns():
                        combined = [field.zero] * R.dim
                        for col, c in zip(cols, kv):
                            if not c.is_zero():
                                combined = [a + c * b for a, b in zip(combined, col)]
                        sub_cols.append(combined)
                    refined.append((label + (power,), sub_cols))
                    found += len(sub_cols)
                if found != remaining:
                    raise NotDiagonalizable(gi)
            current = refined
        for label, cols in current:
            spaces.append((d, label, cols))

    ghat = GradingGroup(orders=G.orders)
    new_group = ghat.direct_sum(R.group)
    new_cols = []
    new_degrees = []
    new_names = []
    counter = 0
    for d, label, cols in spaces:
        for col in cols:
            new_cols.append(col)
            new_degrees.append(ghat.element(label).concat(d))
            new_names.append(f"e{counter}")
            counter += 1
    basis_change = Matrix.from_columns(field, new_cols, rows=R.dim)
    inverse_cols = solve_many(basis_change, Matrix.identity(field, R.dim).columns())
    if any(c is None for c in inverse_cols):
        raise NotDiagonalizable(-1, "eigenvectors do not span")

    def to_new(vec_dense):
        coords = solve_many(basis_change, [vec_dense])[0]
        return from_dense(coords)

    mult = {}
    for a in range(R.dim):
        for b in range(R.dim):
            prod = R.mul_vec(from_dense(new_cols[a]), from_dense(new_cols[b]))
            vec = to_new(to_dense(prod, R.dim, field))
            if vec:
                mult[(a, b)] = vec
    unit = to_new(to_dense(R.unit, R.dim, field))
    algebra = GradedAlgebra(field, new_group, new_names, new_degrees, unit, mult)

    # evaluation bicharacter t((phi, d), g) = phi(g); trivial on the old degrees
    values = []
    for i in range(new_group.ngens):
        row = []
        for j in range(G.ngens):
            if i < ghat.ngens and i == j:
                row.append(roots[j])
            else:
                row.append(field.one)
        values.append(row)
    t = Bicharacter(new_group, G, field, values)
    return algebra, t, basis_change
