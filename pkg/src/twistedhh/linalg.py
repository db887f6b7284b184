"""Exact linear algebra over the scalar fields.

The public contracts are dense: a :class:`Matrix` is a row-major array of
:class:`~twistedhh.fields.Scalar`.  Internally every elimination runs on
sparse rows, because the cochain-block matrices upstream are huge and very
sparse; sparsity never leaks into any return value.

Over QQ and QQ(q) the elimination is fraction-free (Bareiss): rows are
first scaled to integer / integer-polynomial entries and every division is
an exact ring division by an earlier pivot.  Rows that skip steps are
rescaled lazily (a skipped row's honest Bareiss entries are a uniform
multiple of its stored ones, so zero patterns and the final reduced form
are unaffected).  Over F_p plain sparse Gauss elimination is used.

All operations are pure; nothing here mutates its inputs.
"""

from fractions import Fraction

from .errors import NotASubspace, ShapeMismatch
from .fields import (PrimeField, RationalFunctions, Rationals, Scalar,
                     pexactdiv, pgcd, pmul, pnormalize)


class Matrix:
    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, entries, cols=None):
        self.field = field
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if any(len(row) != self.cols for row in self.entries):
                raise ShapeMismatch("ragged rows")
        else:
            if cols is None:
                raise ShapeMismatch("empty matrix needs an explicit column count")
            self.cols = cols
        if cols is not None and self.rows and cols != self.cols:
            raise ShapeMismatch("column count disagrees with row length")

    @classmethod
    def zero(cls, field, rows, cols):
        z = field.zero
        return cls(field, [[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, field, columns, rows=None):
        if not columns:
            if rows is None:
                raise ShapeMismatch("empty column list needs an explicit row count")
            return cls(field, [[] for _ in range(rows)], cols=0)
        n = len(columns[0])
        return cls(field, [[col[i] for col in columns] for i in range(n)], cols=len(columns))

    def column(self, j):
        return [row[j] for row in self.entries]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def sparse_rows(self):
        return [{j: a for j, a in enumerate(row) if not a.is_zero()} for row in self.entries]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
            z = self.field.zero
            out = []
            for row in self.entries:
                new_row = []
                for j in range(other.cols):
                    acc = z
                    for k, a in enumerate(row):
                        if not a.is_zero():
                            acc = acc + a * other.entries[k][j]
                    new_row.append(acc)
                out.append(new_row)
            return Matrix(self.field, out, cols=other.cols)
        return NotImplemented

    def apply(self, vector):
        if len(vector) != self.cols:
            raise ShapeMismatch("vector length disagrees with column count")
        z = self.field.zero
        out = []
        for row in self.entries:
            acc = z
            for a, x in zip(row, vector):
                if not a.is_zero():
                    acc = acc + a * x
            out.append(acc)
        return out

    def is_zero(self):
        return all(a.is_zero() for row in self.entries for a in row)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


class SparseMatrix:
    """Row-sparse matrix used internally by the cohomology pipelines.

    Exposes just enough of the Matrix interface for the elimination entry
    points; convert with :meth:`to_dense` when a real Matrix is needed.
    """

    __slots__ = ("field", "rows", "cols", "row_data")

    def __init__(self, field, row_data, rows, cols):
        self.field = field
        self.row_data = row_data
        self.rows = rows
        self.cols = cols

    @classmethod
    def from_columns_sparse(cls, field, columns, rows):
        data = [dict() for _ in range(rows)]
        for j, col in enumerate(columns):
            for i, a in col.items():
                if not a.is_zero():
                    data[i][j] = a
        return cls(field, data, rows, len(columns))

    def column(self, j):
        z = self.field.zero
        return [row.get(j, z) for row in self.row_data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def sparse_rows(self):
        return [dict(row) for row in self.row_data]

    def to_dense(self):
        z = self.field.zero
        return Matrix(self.field,
                      [[row.get(j, z) for j in range(self.cols)] for row in self.row_data],
                      cols=self.cols)

    def is_zero(self):
        return all(not row for row in self.row_data)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols} over {self.field})"


# ---------------------------------------------------------------------------
# Sparse elimination core.


class Echelon:
    """Reduced row echelon data.

    ``rows[k]`` is the k-th pivot row as a sparse dict of Scalars with a 1
    in column ``pivots[k]`` and zeros in the other pivot columns;
    ``residual_rows`` are the leftover rows (only consulted for
    consistency checks when a pivot column limit was imposed).
    """

    __slots__ = ("field", "cols", "rows", "pivots", "residual_rows")

    def __init__(self, field, cols, rows, pivots, residual_rows):
        self.field = field
        self.cols = cols
        self.rows = rows
        self.pivots = pivots
        self.residual_rows = residual_rows

    @property
    def rank(self):
        return len(self.pivots)

    def free_columns(self, limit=None):
        limit = self.cols if limit is None else limit
        pivot_set = set(self.pivots)
        return [j for j in range(limit) if j not in pivot_set]


def row_echelon(matrix, pivot_limit=None):
    """Reduced echelon form; pivots are only chosen in columns < pivot_limit."""
    field = matrix.field
    limit = matrix.cols if pivot_limit is None else pivot_limit
    rows = matrix.sparse_rows()
    if isinstance(field, PrimeField):
        pivots, pivot_rows, residual = _eliminate_prime(field, rows, limit)
    elif isinstance(field, RationalFunctions):
        pivots, pivot_rows, residual = _eliminate_primitive_qq(field, rows, limit)
    else:
        pivots, pivot_rows, residual = _eliminate_bareiss(field, rows, limit)
    return Echelon(field, matrix.cols, pivot_rows, pivots, residual)


def _eliminate_prime(field, rows, limit):
    p = field.p
    work = [{j: s.payload % p for j, s in row.items() if s.payload % p} for row in rows]
    order = list(range(len(work)))
    pivots, pivot_rows = [], []
    for c in range(limit):
        best = None
        for idx_pos, i in enumerate(order):
            if c in work[i]:
                nnz = len(work[i])
                if best is None or nnz < best[0]:
                    best = (nnz, idx_pos, i)
        if best is None:
            continue
        _, idx_pos, i = best
        order.pop(idx_pos)
        row = work[i]
        inv = pow(row[c], -1, p)
        row = {j: (a * inv) % p for j, a in row.items()}
        row = {j: a for j, a in row.items() if a}
        for k in order:
            other = work[k]
            x = other.get(c)
            if x:
                for j, b in row.items():
                    val = (other.get(j, 0) - x * b) % p
                    if val:
                        other[j] = val
                    else:
                        other.pop(j, None)
        pivots.append(c)
        pivot_rows.append(row)
    # back substitution for the reduced form
    for k in range(len(pivot_rows) - 1, -1, -1):
        row_k, ck = pivot_rows[k], pivots[k]
        for k2 in range(k):
            x = pivot_rows[k2].get(ck)
            if x:
                target = pivot_rows[k2]
                for j, b in row_k.items():
                    val = (target.get(j, 0) - x * b) % p
                    if val:
                        target[j] = val
                    else:
                        target.pop(j, None)
    scal = lambda row: {j: Scalar(field, a) for j, a in row.items()}
    residual = [scal(work[i]) for i in order if work[i]]
    return pivots, [scal(r) for r in pivot_rows], residual


def _eliminate_bareiss(field, rows, limit):
    """Fraction-free elimination with lazily rescaled sparse rows.

    A row that skipped steps l..k-1 (zero in those pivot columns) relates
    to its honest Bareiss state by the uniform factor d_{k-1}/d_{l-1}, so
    it is brought up to date only when it participates; the final reduction
    over the field cancels all the bookkeeping factors row by row.
    """
    if isinstance(field, Rationals):
        mul = lambda x, y: x * y
        sub = lambda x, y: x - y
        exact_div = _int_exact_div
        one = 1
        clear = _clear_row_q
        to_scalar = lambda x: Scalar(field, Fraction(x))
    elif isinstance(field, RationalFunctions):
        mul = pmul
        sub = _psub
        exact_div = pexactdiv
        one = (1,)
        clear = _clear_row_qq
        to_scalar = lambda x: Scalar(field, field._make(x, (1,)))
    else:
        raise TypeError(f"no fraction-free path for {field}")
    work = [clear(row) for row in rows]
    state = [0] * len(work)               # step index each row is scaled to
    d = [one]                             # d[k] = pivot value of step k-1; d[0] = 1
    order = list(range(len(work)))
    pivots, pivot_rows = [], []
    step = 0
    for c in range(limit):
        best = None
        for idx_pos, i in enumerate(order):
            if c in work[i]:
                nnz = len(work[i])
                if best is None or nnz < best[0]:
                    best = (nnz, idx_pos, i)
        if best is None:
            continue
        _, idx_pos, i = best
        order.pop(idx_pos)

        def normalize(idx):
            lag = state[idx]
            if lag != step:
                num, den = d[step], d[lag]
                work[idx] = {j: exact_div(mul(a, num), den) for j, a in work[idx].items()}
                state[idx] = step
        normalize(i)
        prow = work[i]
        piv = prow[c]
        for k in order:
            if c in work[k]:
                normalize(k)
                other = work[k]
                x = other.pop(c)
                prev = d[step]
                new = {}
                for j, a in other.items():
                    b = prow.get(j)
                    val = mul(piv, a) if b is None else sub(mul(piv, a), mul(x, b))
                    val = exact_div(val, prev)
                    if val:
                        new[j] = val
                for j, b in prow.items():
                    if j != c and j not in other:
                        val = exact_div(mul(x, b), prev)
                        if val:
                            new[j] = _negate(val)
                work[k] = new
                state[k] = step + 1
        pivots.append(c)
        pivot_rows.append((prow, piv))
        d.append(piv)
        step += 1
    # convert pivot rows to the field and back-substitute to the reduced form
    srows = []
    for prow, piv in pivot_rows:
        inv = to_scalar(piv).inv()
        srows.append({j: to_scalar(a) * inv for j, a in prow.items()})
    for k in range(len(srows) - 1, -1, -1):
        ck = pivots[k]
        row_k = srows[k]
        for k2 in range(k):
            x = srows[k2].get(ck)
            if x is not None and not x.is_zero():
                target = srows[k2]
                for j, b in row_k.items():
                    val = target.get(j, field.zero) - x * b
                    if val.is_zero():
                        target.pop(j, None)
                    else:
                        target[j] = val
    residual = []
    for i in order:
        if work[i]:
            residual.append({j: to_scalar(a) for j, a in work[i].items()})
    return pivots, srows, residual


def _negate(val):
    if isinstance(val, tuple):
        return tuple(-c for c in val)
    return -val


def _eliminate_primitive_qq(field, rows, limit):
    """Cross-multiplication elimination over QQ(q) with per-row primitive
    parts instead of Bareiss divisions.

    Row scaling is free for every consumer (pivots, kernels, consistency),
    and stripping the monomial factor, the integer content, and any common
    polynomial factor after each combination keeps the near-monomial
    cochain matrices from growing at all.
    """
    work = []
    for row in rows:
        cleared = _clear_row_qq(row)
        work.append(_strip_row_qq(cleared))
    order = list(range(len(work)))
    pivots, pivot_rows = [], []
    for c in range(limit):
        best = None
        for idx_pos, i in enumerate(order):
            if c in work[i]:
                nnz = len(work[i])
                if best is None or nnz < best[0]:
                    best = (nnz, idx_pos, i)
        if best is None:
            continue
        _, idx_pos, i = best
        order.pop(idx_pos)
        prow = work[i]
        piv = prow[c]
        for k in order:
            if c in work[k]:
                other = work[k]
                x = other.pop(c)
                new = {}
                for j, a in other.items():
                    b = prow.get(j)
                    val = pmul(piv, a) if b is None else _psub(pmul(piv, a), pmul(x, b))
                    if val:
                        new[j] = val
                for j, b in prow.items():
                    if j != c and j not in other:
                        val = pmul(x, b)
                        if val:
                            new[j] = tuple(-cc for cc in val)
                work[k] = _strip_row_qq(new)
        pivots.append(c)
        pivot_rows.append((prow, piv))
    to_scalar = lambda x: Scalar(field, field._make(x, (1,)))
    srows = []
    for prow, piv in pivot_rows:
        inv = to_scalar(piv).inv()
        srows.append({j: to_scalar(a) * inv for j, a in prow.items()})
    for k in range(len(srows) - 1, -1, -1):
        ck = pivots[k]
        row_k = srows[k]
        for k2 in range(k):
            x = srows[k2].get(ck)
            if x is not None and not x.is_zero():
                target = srows[k2]
                for j, b in row_k.items():
                    val = target.get(j, field.zero) - x * b
                    if val.is_zero():
                        target.pop(j, None)
                    else:
                        target[j] = val
    residual = [{j: to_scalar(a) for j, a in work[i].items()} for i in order if work[i]]
    return pivots, srows, residual


def _strip_row_qq(row):
    """Divide a row of integer polynomials by its full content: the common
    power of q, the integer gcd of all coefficients, and any common
    polynomial factor (with early exit once the gcd is trivial)."""
    if not row:
        return row
    shift = None
    for a in row.values():
        lead = next(i for i, cc in enumerate(a) if cc)
        shift = lead if shift is None else min(shift, lead)
        if shift == 0:
            break
    if shift:
        row = {j: a[shift:] for j, a in row.items()}
    g = None
    for a in row.values():
        g = a if g is None else pgcd(g, a)
        if g == (1,) or g == (-1,):
            g = None
            break
    if g is not None and g != (1,):
        if g[-1] < 0:
            g = tuple(-cc for cc in g)
        if g != (1,):
            row = {j: pexactdiv(a, g) for j, a in row.items()}
    else:
        ic = 0
        for a in row.values():
            for cc in a:
                ic = _int_gcd(ic, cc)
            if ic == 1:
                break
        if ic > 1:
            row = {j: tuple(cc // ic for cc in a) for j, a in row.items()}
    return row


def _psub(x, y):
    n = max(len(x), len(y))
    x = x + (0,) * (n - len(x))
    y = y + (0,) * (n - len(y))
    return pnormalize(tuple(a - b for a, b in zip(x, y)))


def _int_exact_div(x, y):
    q, rem = divmod(x, y)
    if rem:
        raise ArithmeticError("inexact integer division in Bareiss step")
    return q


def _int_gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _clear_row_q(row):
    lcm = 1
    for s in row.values():
        den = s.payload.denominator
        lcm = lcm * den // _int_gcd(lcm, den)
    return {j: (s.payload * lcm).numerator for j, s in row.items()
            if s.payload.numerator}


def _clear_row_qq(row):
    lcm = (1,)
    for s in row.values():
        den = s.payload[1]
        g = pgcd(lcm, den)
        lcm = pexactdiv(pmul(lcm, den), g)
    out = {}
    for j, s in row.items():
        num, den = s.payload
        if num:
            out[j] = pnormalize(pmul(num, pexactdiv(lcm, den)))
    return out


# ---------------------------------------------------------------------------
# Derived operations; they accept Matrix or SparseMatrix inputs.


def rank(matrix):
    return row_echelon(matrix).rank


def kernel_basis(matrix):
    """Columns form a basis of the null space; each free variable is set to
    1 in ascending column order, which makes the result deterministic."""
    ech = row_echelon(matrix)
    field = matrix.field
    z, o = field.zero, field.one
    columns = []
    rref_by_pivot = list(zip(ech.pivots, ech.rows))
    for f in ech.free_columns():
        vec = [z] * matrix.cols
        vec[f] = o
        for c, row in rref_by_pivot:
            coeff = row.get(f)
            if coeff is not None and not coeff.is_zero():
                vec[c] = -coeff
        columns.append(vec)
    return Matrix.from_columns(field, columns, rows=matrix.cols)


def image_basis(matrix):
    """The pivot columns of the original matrix (lowest indices first)."""
    ech = row_echelon(matrix)
    return Matrix.from_columns(matrix.field, [matrix.column(c) for c in ech.pivots],
                               rows=matrix.rows)


def solve(matrix, vector):
    """Any x with matrix @ x == vector, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    return solve_many(matrix, [vector])[0]


def solve_many(matrix, vectors):
    """Solve matrix @ x == v for several right-hand sides with a single
    elimination of the augmented system."""
    field = matrix.field
    n = matrix.cols
    for v in vectors:
        if len(v) != matrix.rows:
            raise ShapeMismatch("right-hand side has wrong length")
    aug_rows = matrix.sparse_rows()
    for idx, v in enumerate(vectors):
        for i, a in enumerate(v):
            if not a.is_zero():
                aug_rows[i][n + idx] = a
    augmented = SparseMatrix(field, aug_rows, matrix.rows, n + len(vectors))
    ech = row_echelon(augmented, pivot_limit=n)
    z = field.zero
    results = []
    for idx in range(len(vectors)):
        col = n + idx
        if any(col in row and not row[col].is_zero() for row in ech.residual_rows):
            results.append(None)
            continue
        x = [z] * n
        for k, c in enumerate(ech.pivots):
            val = ech.rows[k].get(col)
            if val is not None:
                x[c] = val
        results.append(x)
    return results


def _sparse_columns(matrix):
    cols = [dict() for _ in range(matrix.cols)]
    for i, row in enumerate(matrix.sparse_rows()):
        for j, a in row.items():
            cols[j][i] = a
    return cols


def quotient_basis(sub, ambient_dim, inside=None):
    """Representatives of a basis of inside/sub (ambient/sub when inside is
    None).

    Candidate vectors are the columns of ``inside`` (or the standard
    basis), scanned in order; a candidate is kept when it enlarges the
    current span.  Greedy selection equals picking the pivot columns of
    [sub | candidates] that land in the candidate part, so a single
    elimination does all the work; the lowest-index tie-break keeps golden
    outputs stable.
    """
    field = sub.field
    if sub.rows != ambient_dim:
        raise ShapeMismatch("sub lives in the wrong ambient dimension")
    sub_cols = _sparse_columns(sub)
    if inside is not None:
        if inside.rows != ambient_dim:
            raise ShapeMismatch("inside lives in the wrong ambient dimension")
        candidates = _sparse_columns(inside)
        if sub.cols:
            # membership: no pivot of [inside | sub] may land in the sub part
            ech = row_echelon(SparseMatrix.from_columns_sparse(
                field, candidates + sub_cols, ambient_dim))
            if any(c >= len(candidates) for c in ech.pivots):
                raise NotASubspace("sub is not contained in the span of inside")
    else:
        candidates = [{i: field.one} for i in range(ambient_dim)]
    ech = row_echelon(SparseMatrix.from_columns_sparse(
        field, sub_cols + candidates, ambient_dim))
    z = field.zero
    chosen = []
    for c in ech.pivots:
        if c >= len(sub_cols):
            col = candidates[c - len(sub_cols)]
            chosen.append([col.get(i, z) for i in range(ambient_dim)])
    return Matrix.from_columns(field, chosen, rows=ambient_dim)


class SubspaceBuilder:
    """Incrementally maintained row-reduced spanning set (sparse rows).

    Used for greedy quotient representatives and eigenspace refinement;
    ``add`` reports whether the vector enlarged the span.
    """

    __slots__ = ("field", "dim", "rows", "pivots")

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self.rows = []          # sparse dicts, pivot entry normalized to 1
        self.pivots = []

    @property
    def rank(self):
        return len(self.rows)

    def _reduce_sparse(self, vec):
        for row, c in zip(self.rows, self.pivots):
            f = vec.get(c)
            if f is not None and not f.is_zero():
                for j, b in row.items():
                    val = vec.get(j, self.field.zero) - f * b
                    if val.is_zero():
                        vec.pop(j, None)
                    else:
                        vec[j] = val
        return vec

    def reduce(self, vector):
        vec = self._reduce_sparse({j: a for j, a in enumerate(vector) if not a.is_zero()})
        z = self.field.zero
        return [vec.get(j, z) for j in range(self.dim)]

    def contains(self, vector):
        vec = {j: a for j, a in enumerate(vector) if not a.is_zero()}
        return not self._reduce_sparse(vec)

    def add(self, vector):
        vec = self._reduce_sparse({j: a for j, a in enumerate(vector) if not a.is_zero()})
        if not vec:
            return False
        pivot = min(vec)
        inv = vec[pivot].inv()
        vec = {j: a * inv for j, a in vec.items()}
        for k in range(len(self.rows)):
            f = self.rows[k].get(pivot)
            if f is not None and not f.is_zero():
                row = self.rows[k]
                for j, b in vec.items():
                    val = row.get(j, self.field.zero) - f * b
                    if val.is_zero():
                        row.pop(j, None)
                    else:
                        row[j] = val
        self.rows.append(vec)
        self.pivots.append(pivot)
        return True
