"""Quantum complete intersections and their verification pipelines.

A quantum complete intersection on exponents (m_1, ..., m_k) is the
iterated twisted tensor product of truncated polynomial algebras
k[x]/(x^{m_i}), each graded by ZZ with x in degree 1, with the bicharacter
t(a, b) = q_{ij}^{ab} between the i-th and j-th factor.  For two factors
this is the algebra k<x, y>/(x^m, y^n, yx - q xy).

``verify_qci2`` reproduces, for q of infinite order, the known structure
of HH^*: total dimensions (2, 2, 1, 0, ...), the fiber product of
k[U]/(U^2) with an exterior algebra on V, W, and the brackets
[V, U] = (m-1) U, [W, U] = (n-1) U, [V, W] = 0 -- with the bracket
computed along three independent pipelines (the combined twisted bracket
on the decomposition, the homotopy circle product on the twisted-product
complex, and the classical Gerstenhaber bracket on the product algebra's
own bar complex).

``periodic_hh`` computes the cohomology of the standard 2-periodic
complex of a truncated polynomial algebra with character-twisted
coefficients directly; comparing it against the bar-complex answer is the
resolution-independence check.
"""

import time
from dataclasses import dataclass, field as dc_field
from itertools import product as iter_product

from .algebras import (GradedAlgebra, iterated_twisted_tensor, regular_bimodule,
                       twist_left, twist_right, twisted_tensor_algebra,
                       AlgebraAutomorphism)
from .errors import BadExponent, UnsupportedFieldConfiguration, VerificationFailed
from .fields import multiplicative_order
from .groups import Bicharacter, GradingGroup
from .hochschild import BarComplex
from .homotopy import ResolutionComparison, bracket_via_homotopy
from .linalg import Matrix, kernel_basis, image_basis, quotient_basis
from .structure import (DecompositionContext, DecomposedClass, OrbitCochain,
                        combined_cup, combined_bracket, decomposition_basis,
                        decomposition_dimension, gerstenhaber_bracket_bar,
                        phi_inverse_on_cohomology, phi_residual)

Z = GradingGroup(1)


def truncated_polynomial(m, field):
    """k[x]/(x^m), graded by ZZ with deg x = 1."""
    if m < 2:
        raise BadExponent(f"exponent {m} < 2")
    one = field.one
    names = ["1"] + ["x" if i == 1 else f"x^{i}" for i in range(1, m)]
    degrees = [Z.element([i]) for i in range(m)]
    mult = {(i, j): {i + j: one} for i in range(m) for j in range(m) if i + j < m}
    return GradedAlgebra(field, Z, names, degrees, {0: one}, mult)


@dataclass(frozen=True)
class QciSpec:
    exponents: tuple
    field: object
    q_values: dict  # (i, j) -> Scalar for i < j

    def __post_init__(self):
        for m in self.exponents:
            if m < 2:
                raise BadExponent(f"exponent {m} < 2")
        k = len(self.exponents)
        for i in range(k):
            for j in range(i + 1, k):
                v = self.q_values[(i, j)]
                if v.is_zero():
                    raise BadExponent(f"q_{i}{j} must be nonzero")


def qci(spec):
    """The quantum complete intersection algebra of a :class:`QciSpec`."""
    factors = [truncated_polynomial(m, spec.field) for m in spec.exponents]
    if len(factors) == 2:
        t = Bicharacter(Z, Z, spec.field, [[spec.q_values[(0, 1)]]])
        return twisted_tensor_algebra(factors[0], factors[1], t)
    ts = {(i, j): Bicharacter(Z, Z, spec.field, [[spec.q_values[(i, j)]]])
          for i in range(len(factors)) for j in range(i + 1, len(factors))}
    return iterated_twisted_tensor(factors, ts)


def qci_context(m, n, field, q, max_level=None):
    """DecompositionContext for Lambda_q(m, n)."""
    t = Bicharacter(Z, Z, field, [[q]])
    return DecompositionContext(truncated_polynomial(m, field),
                                truncated_polynomial(n, field), t, max_level)


# ---------------------------------------------------------------------------
# The 2-periodic complex of a truncated polynomial algebra.


def _shift(i, m):
    # position 2u sits at grading shift u*m, position 2u+1 at u*m + 1
    return (i // 2) * m + (i % 2)


def periodic_hh(m, field, q, b, i_max):
    """Cohomology of the 2-periodic complex of k[x]/(x^m) with the right
    action twisted by x |-> q^b x.

    The dualized maps alternate between multiplication by x (1 - q^b) and
    by x^{m-1} (1 + q^b + ... + q^{(m-1) b}); the complex is computed
    directly, so the answer is valid for any q, root of unity or not.
    Returns ``{(i, internal degree): dimension}`` for i <= i_max.
    """
    qb = q ** b
    factor_even = field.one - qb
    factor_odd = field.sum(qb ** l for l in range(m))
    z = field.zero

    def map_matrix(i):
        cols = []
        for j in range(m):
            col = [z] * m
            if i % 2 == 0:
                if j + 1 < m:
                    col[j + 1] = factor_even
            else:
                if j == 0:
                    col[m - 1] = factor_odd
            cols.append(col)
        return Matrix.from_columns(field, cols, rows=m)

    dims = {}
    for i in range(i_max + 1):
        cocycles = kernel_basis(map_matrix(i))
        if i > 0:
            boundaries = image_basis(map_matrix(i - 1))
        else:
            boundaries = Matrix.from_columns(field, [], rows=m)
        reps = quotient_basis(boundaries, m, inside=cocycles)
        for col in reps.columns():
            support = [j for j, a in enumerate(col) if not a.is_zero()]
            degrees = {j - _shift(i, m) for j in support}
            if len(degrees) != 1:
                raise AssertionError("periodic representative is not homogeneous")
            key = (i, degrees.pop())
            dims[key] = dims.get(key, 0) + 1
    return dims


def periodic_table(m, field, b, i_max, q_generic):
    """The closed-form case table for the 2-periodic cohomology.

    Valid when b == 0 (always) or when q^b is not a root of unity
    (``q_generic``); returns None when neither hypothesis applies.
    Dimensions are per (i, internal degree), like :func:`periodic_hh`.
    """
    if b != 0 and not q_generic:
        return None
    p = field.characteristic()
    top_killed = (m % p != 0) if p else True     # is m x^{m-1} nonzero?
    dims = {}
    for i in range(i_max + 1):
        if b != 0:
            if i == 0:
                dims[(0, m - 1)] = 1
            continue
        if i == 0:
            for j in range(m):
                dims[(0, j)] = 1
        elif i % 2 == 0:
            js = range(m - 1) if top_killed else range(m)
            for j in js:
                dims[(i, j - _shift(i, m))] = 1
        else:
            js = range(1, m) if top_killed else range(m)
            for j in js:
                dims[(i, j - _shift(i, m))] = 1
    return dims


def bar_hh_dims(m, field, q, b, i_max):
    """Bar-complex dimensions of HH^i(k[x]/(x^m), coefficients twisted by
    b) per (i, internal degree), for the resolution-independence check."""
    R = truncated_polynomial(m, field)
    t = Bicharacter(Z, Z, field, [[q]])
    from .algebras import character_automorphism
    rho = character_automorphism(t, Z.element([b]), R)
    cx = BarComplex(R, twist_right(regular_bimodule(R), rho))
    dims = {}
    for a in cx.internal_degrees_up_to(i_max):
        for i in range(i_max + 1):
            d = cx.cohomology(i, a).dimension
            if d:
                dims[(i, a.coords[0])] = d
    return dims


# ---------------------------------------------------------------------------
# Reports.


@dataclass
class VerificationReport:
    name: str
    truncation: int
    dims_by_degree: dict         # k -> {coords tuple: dim}
    generators: dict             # label -> description
    cup_table: dict              # (label, label) -> coordinate dict
    bracket_table: dict          # (label, label) -> coordinate dict
    pipeline_table: dict         # (label, label) -> {pipeline: coords}
    checks: list = dc_field(default_factory=list)   # (name, passed, detail)
    elapsed: float = 0.0

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)

    def first_failure(self):
        for name, ok, detail in self.checks:
            if not ok:
                return name, detail
        return None

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def to_dict(self):
        return {
            "name": self.name,
            "truncation": self.truncation,
            "dimensions": {str(k): {",".join(map(str, c)): d for c, d in v.items()}
                           for k, v in self.dims_by_degree.items()},
            "generators": dict(self.generators),
            "cupTable": {" . ".join(k): v for k, v in self.cup_table.items()},
            "bracketTable": {" , ".join(k): v for k, v in self.bracket_table.items()},
            "pipelines": {" , ".join(k): v for k, v in self.pipeline_table.items()},
            "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in self.checks],
            "passed": self.passed,
            "elapsed": self.elapsed,
        }


def _coords_repr(coord_dict):
    return {"/".join(map(str, k)): v.format() for k, v in sorted(coord_dict.items())}


# ---------------------------------------------------------------------------
# verify_qci2: the two-indeterminate theorem.


def euler_cochain_r(ctx):
    """The degree-counting derivation of the left factor as an R-side
    orbit cochain (trivial twist, internal degree 0)."""
    R = ctx.R
    vals = {}
    for i in range(R.dim):
        d = R.degrees[i].coords[0]
        if d:
            vals[(i,)] = {i: ctx.field.from_int(d)}
    return ctx.r_cochain(1, Z.element([0]), Z.element([0]), vals)


def euler_cochain_s(ctx):
    S = ctx.S
    vals = {}
    for j in range(S.dim):
        d = S.degrees[j].coords[0]
        if d:
            vals[(j,)] = {j: ctx.field.from_int(d)}
    return ctx.s_cochain(1, Z.element([0]), Z.element([0]), vals)


def top_class_pair(ctx, m, n):
    """U = x^{m-1} (x) y^{n-1} in internal bidegree (m-1, n-1)."""
    am1, bn1 = Z.element([m - 1]), Z.element([n - 1])
    fU = ctx.r_cochain(0, am1, bn1, {(): {m - 1: ctx.field.one}})
    gU = ctx.s_cochain(0, bn1, am1, {(): {n - 1: ctx.field.one}})
    return DecomposedClass.single(fU, gU)


def generators_qci2(ctx, m, n):
    U = top_class_pair(ctx, m, n)
    V = DecomposedClass.single(euler_cochain_r(ctx), ctx.unit_s_cochain())
    W = DecomposedClass.single(ctx.unit_r_cochain(), euler_cochain_s(ctx))
    one = DecomposedClass.single(ctx.unit_r_cochain(), ctx.unit_s_cochain())
    return one, U, V, W


def verify_qci2(m, n, field, q, max_degree=5, phi_degree=3, raise_on_failure=True):
    """Verify the two-indeterminate presentation at infinite-order q.

    Asserts the decomposition dimensions (2, 2, 1, 0, ...) up to the
    truncation, the surviving internal bidegrees, the fiber product cup
    relations, the bracket values, and the agreement of the three bracket
    pipelines.  Everything is exact.
    """
    start = time.time()
    if multiplicative_order(q, 8 * max_degree * max(m, n)) is not None:
        raise UnsupportedFieldConfiguration("q must not be a (small) root of unity")
    ctx = qci_context(m, n, field, q)
    report = VerificationReport(
        name=f"qci({m},{n})", truncation=max_degree, dims_by_degree={},
        generators={"U": f"x^{m-1} (x) y^{n-1}", "V": "x d/dx (x) 1", "W": "1 (x) y d/dy"},
        cup_table={}, bracket_table={}, pipeline_table={})

    # -- dimensions via the decomposition ---------------------------------
    tcx = ctx.twisted_complex()
    candidates = tcx.internal_degrees_up_to(max_degree)
    expected_total = {0: 2, 1: 2, 2: 1}
    expected_bidegrees = {0: {(0, 0), (m - 1, n - 1)}, 1: {(0, 0)}, 2: {(0, 0)}}
    for k in range(max_degree + 1):
        per = {}
        for e in candidates:
            a_part, b_part = tcx.group.split(e, 1)
            d = decomposition_dimension(ctx, k, a_part, b_part)
            if d:
                per[e.coords] = d
        report.dims_by_degree[k] = per
        total = sum(per.values())
        report.check(f"dim HH^{k} == {expected_total.get(k, 0)}",
                     total == expected_total.get(k, 0), f"got {total}")
        report.check(f"HH^{k} internal bidegrees",
                     set(per) == expected_bidegrees.get(k, set()), f"got {sorted(per)}")

    # -- generators and the fiber product relations -------------------------
    one, U, V, W = generators_qci2(ctx, m, n)
    for label, X in (("U", U), ("V", V), ("W", W)):
        ok = all(f.is_cocycle() and g.is_cocycle() for f, g in X.terms)
        report.check(f"{label} is a cocycle pair", ok)
    report.check("U nonzero in cohomology", not U.is_cohomologous_zero())
    report.check("V nonzero in cohomology", not V.is_cohomologous_zero())
    report.check("W nonzero in cohomology", not W.is_cohomologous_zero())
    labels = {"1": one, "U": U, "V": V, "W": W}
    for (la, lb) in (("U", "U"), ("U", "V"), ("U", "W"), ("V", "V"), ("W", "W"),
                     ("V", "W"), ("W", "V"), ("1", "U")):
        cup = combined_cup(labels[la], labels[lb])
        report.cup_table[(la, lb)] = _coords_repr(cup.coordinates())
    report.check("U.U == 0", not combined_cup(U, U).coordinates())
    report.check("U.V == 0", not combined_cup(U, V).coordinates())
    report.check("U.W == 0", not combined_cup(U, W).coordinates())
    report.check("V.V == 0", not combined_cup(V, V).coordinates())
    report.check("W.W == 0", not combined_cup(W, W).coordinates())
    vw = combined_cup(V, W)
    report.check("V.W spans HH^2", bool(vw.coordinates()))
    wv = combined_cup(W, V)
    anti = _coords_equal(ctx, vw.coordinates(), _scale_coords(ctx, wv.coordinates(), -1))
    report.check("V.W == -W.V", anti)
    report.check("1.U == U", _coords_equal(ctx, combined_cup(one, U).coordinates(),
                                           U.coordinates()))

    # -- brackets along three pipelines -------------------------------------
    comp = ResolutionComparison(ctx)
    bar_cx = ctx.product_bar_complex()

    def bar_coords(F):
        space = bar_cx.cohomology(F.degree, F.internal)
        return bar_cx.class_coordinates(space, F)

    transported = {la: comp.transport(X.phi()) for la, X in labels.items()}
    expectations = {("V", "U"): (m - 1, "U"), ("W", "U"): (n - 1, "U"),
                    ("V", "W"): (0, None), ("V", "V"): (0, None), ("W", "W"): (0, None)}
    for (la, lb), (coef, target) in expectations.items():
        X, Xp = labels[la], labels[lb]
        combined = combined_bracket(X, Xp)
        ca = bar_coords(comp.transport(combined.phi()))
        cb = bar_coords(comp.transport(bracket_via_homotopy(ctx, X.phi(), Xp.phi())))
        cc = bar_coords(gerstenhaber_bracket_bar(transported[la], transported[lb]))
        report.pipeline_table[(la, lb)] = {
            "combined": [c.format() for c in ca],
            "homotopy": [c.format() for c in cb],
            "bar": [c.format() for c in cc]}
        report.bracket_table[(la, lb)] = _coords_repr(combined.coordinates())
        report.check(f"pipelines agree on [{la},{lb}]", ca == cb == cc)
        if target is None:
            report.check(f"[{la},{lb}] == 0", all(c.is_zero() for c in ca))
        else:
            want = [field.from_int(coef) * c for c in bar_coords(transported[target])]
            report.check(f"[{la},{lb}] == {coef} {target}", ca == want)

    # -- Corollary-style degeneracy: nontrivial cups need matched twists ----
    all_classes = []
    for k in range(min(max_degree, 3) + 1):
        for e in candidates:
            a_part, b_part = tcx.group.split(e, 1)
            all_classes.extend(decomposition_basis(ctx, k, a_part, b_part))
    degenerate_ok = True
    for X in all_classes:
        for Xp in all_classes:
            tw = (ctx.tval(Xp.internal_r, X.internal_s)
                  * ctx.tval(X.internal_r, Xp.internal_s))
            if not tw.is_one():
                if combined_cup(X, Xp).coordinates():
                    degenerate_ok = False
    report.check("mismatched twists force vanishing cups", degenerate_ok)

    # -- the decomposition map is onto every computed block -----------------
    surjective = True
    for k in range(phi_degree + 1):
        for e in tcx.internal_degrees_up_to(phi_degree):
            space = tcx.cohomology(k, e)
            for rep in space.representatives:
                Y = phi_inverse_on_cohomology(ctx, rep)  # raises NotInImage on failure
            a_part, b_part = tcx.group.split(e, 1)
            if decomposition_dimension(ctx, k, a_part, b_part) != space.dimension:
                surjective = False
    report.check(f"decomposition matches the twisted complex up to degree {phi_degree}",
                 surjective)

    report.elapsed = time.time() - start
    if raise_on_failure and not report.passed:
        name, detail = report.first_failure()
        raise VerificationFailed(name, detail)
    return report


def _scale_coords(ctx, coords, k):
    c = ctx.field.from_int(k)
    return {key: c * v for key, v in coords.items()}


def _coords_equal(ctx, c1, c2):
    keys = set(c1) | set(c2)
    z = ctx.field.zero
    return all((c1.get(k, z) - c2.get(k, z)).is_zero() for k in keys)


# ---------------------------------------------------------------------------
# Iterated case.


def check_generic(q_values, window):
    """No monomial relation  prod q_{ij}^{e_{ij}} = 1  with all |e| <= window
    (checked by enumeration); this is what 'generic enough' means here."""
    pairs = sorted(q_values)
    ranges = [range(-window, window + 1)] * len(pairs)
    for exps in iter_product(*ranges):
        if all(e == 0 for e in exps):
            continue
        prod = None
        for (pair, e) in zip(pairs, exps):
            term = q_values[pair] ** e
            prod = term if prod is None else prod * term
        if prod.is_one():
            return False
    return True


def iterated_decomposition_dimension(factors, q_values, k, coords):
    """Corollary-style dimension: sum over compositions of k of the product
    of factor cohomologies with both-sided character twists determined by
    the other factors' internal degrees."""
    n = len(factors)
    field = factors[0].field
    total = 0
    spaces = []
    for i in range(n):
        R = factors[i]
        left_char = field.one
        right_char = field.one
        # left twist from earlier factors, right twist from later ones
        lam = field.one
        for j in range(i):
            lam = lam * q_values[(j, i)] ** coords[j]
        mu = field.one
        for l in range(i + 1, n):
            mu = mu * q_values[(i, l)] ** coords[l]
        M = regular_bimodule(R)
        M = twist_right(M, _diagonal_power_auto(R, mu))
        M = twist_left(M, _diagonal_power_auto(R, lam))
        spaces.append(BarComplex(R, M))
    def dim(i, ki):
        return spaces[i].cohomology(ki, Z.element([coords[i]])).dimension
    for comp in _compositions(k, n):
        term = 1
        for i, ki in enumerate(comp):
            term *= dim(i, ki)
            if term == 0:
                break
        total += term
    return total


def _diagonal_power_auto(R, scalar):
    field = R.field
    cols = []
    for i in range(R.dim):
        col = [field.zero] * R.dim
        col[i] = scalar ** R.degrees[i].coords[0]
        cols.append(col)
    return AlgebraAutomorphism(R, Matrix.from_columns(field, cols))


def _compositions(k, n):
    if n == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, n - 1):
            yield (first,) + rest


def verify_qci_iterated(exponents, field, q_values, max_degree=4, raise_on_failure=True):
    """Verify the iterated (three or more indeterminates) description:
    HH is the fiber product of k[U]/(U^2) with an exterior algebra on the
    Euler classes V_i, and [V_i, U] = (m_i - 1) U, [V_i, V_j] = 0.

    ``q_values`` must be generic: no monomial relation among them with
    exponents up to 2 * max_degree (checked by enumeration).
    """
    start = time.time()
    k_factors = len(exponents)
    if k_factors < 3:
        raise BadExponent("iterated verification needs at least three factors")
    if not check_generic(q_values, 2 * max_degree):
        raise UnsupportedFieldConfiguration(
            "q values satisfy a small monomial relation; pick a more generic tuple")
    spec = QciSpec(tuple(exponents), field, dict(q_values))
    T = qci(spec)
    factors = [truncated_polynomial(m, field) for m in exponents]

    report = VerificationReport(
        name="qci" + str(tuple(exponents)), truncation=max_degree, dims_by_degree={},
        generators={"U": "top class", **{f"V{i+1}": f"Euler class of factor {i+1}"
                                         for i in range(k_factors)}},
        cup_table={}, bracket_table={}, pipeline_table={})

    # nested two-at-a-time view: (R_1 (x)^t ... ) (x)^t R_k
    left = factors[0]
    for i in range(1, k_factors):
        values = [[q_values[(j, i)]] for j in range(left.group.ngens)]
        t = Bicharacter(left.group, Z, field, values)
        if i < k_factors - 1:
            left = twisted_tensor_algebra(left, factors[i], t)
        else:
            ctx = DecompositionContext(left, factors[i], t)
    report.check("nested product equals the direct construction",
                 ctx.product_algebra().same_structure(T))

    # dimensions: twisted-product complex vs the iterated decomposition
    tcx = ctx.twisted_complex()
    expected_totals = _fiber_product_dims(k_factors, max_degree)
    for k in range(max_degree + 1):
        per = {}
        for e in tcx.internal_degrees_up_to(max_degree):
            d = tcx.cohomology(k, e).dimension
            if d:
                per[e.coords] = d
        report.dims_by_degree[k] = per
        total = sum(per.values())
        report.check(f"dim HH^{k} == {expected_totals[k]}", total == expected_totals[k],
                     f"got {total}")
        dec_ok = True
        for e in tcx.internal_degrees_up_to(max_degree):
            d_iter = iterated_decomposition_dimension(factors, q_values, k, e.coords)
            if d_iter != per.get(e.coords, 0):
                dec_ok = False
        report.check(f"iterated decomposition matches at degree {k}", dec_ok)

    # generators on the binary decomposition of the nested view
    euler_left = []
    for i in range(k_factors - 1):
        vals = {}
        for bidx in range(ctx.R.dim):
            d = ctx.R.degrees[bidx].coords[i]
            if d:
                vals.setdefault((bidx,), {})[bidx] = field.from_int(d)
        f = ctx.r_cochain(1, ctx.R.group.zero, Z.element([0]), vals)
        euler_left.append(DecomposedClass.single(f, ctx.unit_s_cochain()))
    vals = {(j,): {j: field.from_int(ctx.S.degrees[j].coords[0])}
            for j in range(ctx.S.dim) if ctx.S.degrees[j].coords[0]}
    euler_right = DecomposedClass.single(
        ctx.unit_r_cochain(), ctx.s_cochain(1, Z.element([0]), ctx.R.group.zero, vals))
    Vs = euler_left + [euler_right]

    top_left_deg = ctx.R.group.element([mm - 1 for mm in exponents[:-1]])
    top_right_deg = Z.element([exponents[-1] - 1])
    top_left_idx = next(i for i in range(ctx.R.dim) if ctx.R.degrees[i] == top_left_deg)
    fU = ctx.r_cochain(0, top_left_deg, top_right_deg, {(): {top_left_idx: field.one}})
    gU = ctx.s_cochain(0, top_right_deg, top_left_deg,
                       {(): {exponents[-1] - 1: field.one}})
    U = DecomposedClass.single(fU, gU)

    for i, Vi in enumerate(Vs):
        report.check(f"V{i+1} is a cocycle pair",
                     all(f.is_cocycle() and g.is_cocycle() for f, g in Vi.terms))
    report.check("U is a cocycle pair",
                 all(f.is_cocycle() and g.is_cocycle() for f, g in U.terms))

    # brackets: combined pipeline against the classical bar oracle on T
    bar_cx = ctx.product_bar_complex()
    comp = ResolutionComparison(ctx)

    def bar_coords(F):
        space = bar_cx.cohomology(F.degree, F.internal)
        return bar_cx.class_coordinates(space, F)

    tU = comp.transport(U.phi())
    tVs = [comp.transport(Vi.phi()) for Vi in Vs]
    u_coords = bar_coords(tU)
    for i, Vi in enumerate(Vs):
        got = bar_coords(comp.transport(combined_bracket(Vi, U).phi()))
        oracle = bar_coords(gerstenhaber_bracket_bar(tVs[i], tU))
        want = [field.from_int(exponents[i] - 1) * c for c in u_coords]
        report.bracket_table[(f"V{i+1}", "U")] = {"bar": [c.format() for c in got]}
        report.check(f"[V{i+1},U] == {exponents[i]-1} U (combined)", got == want)
        report.check(f"[V{i+1},U] == {exponents[i]-1} U (bar oracle)", oracle == want)
    for i in range(k_factors):
        for j in range(i + 1, k_factors):
            got = bar_coords(comp.transport(combined_bracket(Vs[i], Vs[j]).phi()))
            report.check(f"[V{i+1},V{j+1}] == 0", all(c.is_zero() for c in got))

    # cup relations of the fiber product
    report.check("U.U == 0", not combined_cup(U, U).coordinates())
    for i, Vi in enumerate(Vs):
        report.check(f"U.V{i+1} == 0", not combined_cup(U, Vi).coordinates())
        report.check(f"V{i+1}.V{i+1} == 0", not combined_cup(Vi, Vi).coordinates())
    wedge = Vs[0]
    for Vi in Vs[1:]:
        wedge = combined_cup(wedge, Vi)
    report.check("V1...Vk spans the top exterior power", bool(wedge.coordinates()))

    report.elapsed = time.time() - start
    if raise_on_failure and not report.passed:
        name, detail = report.first_failure()
        raise VerificationFailed(name, detail)
    return report


def _fiber_product_dims(k_factors, max_degree):
    from math import comb
    return {k: (2 if k == 0 else comb(k_factors, k)) for k in range(max_degree + 1)}
