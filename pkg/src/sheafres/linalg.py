"""Sparse row-wise exact linear algebra.

Matrices are stored as a list of rows, each row a ``{column index: scalar}``
dict with no explicit zeros.  Everything is built on one primitive: row
reduction with a tracked left transform, processed top to bottom with the
leftmost nonzero as pivot.  All routines are deterministic: identical inputs
give identical outputs.
"""

from .fields import QQ


class DimensionMismatch(ValueError):
    pass


class SparseMatrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None, field=QQ):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise DimensionMismatch(f"expected {nrows} rows, got {len(rows)}")
        for r in rows:
            for c in r:
                if not 0 <= c < ncols:
                    raise DimensionMismatch(f"column index {c} out of range")
        self.rows = rows

    @classmethod
    def from_dense(cls, entries, field=QQ):
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        rows = []
        for dense in entries:
            if len(dense) != ncols:
                raise DimensionMismatch("ragged dense input")
            rows.append({j: x for j, x in enumerate(dense) if x != field.zero})
        return cls(nrows, ncols, rows, field)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls(n, n, [{i: field.one} for i in range(n)], field)

    @classmethod
    def zeros(cls, nrows, ncols, field=QQ):
        return cls(nrows, ncols, field=field)

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols,
                            [dict(r) for r in self.rows], self.field)

    def to_dense(self):
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def is_zero(self):
        return all(not r for r in self.rows)

    def transpose(self):
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, x in r.items():
                rows[j][i] = x
        return SparseMatrix(self.ncols, self.nrows, rows, self.field)

    def mul(self, other):
        if self.ncols != other.nrows:
            raise DimensionMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by "
                f"{other.nrows}x{other.ncols}")
        fld = self.field
        rows = []
        for r in self.rows:
            acc = {}
            for k, x in r.items():
                for j, y in other.rows[k].items():
                    v = fld.add(acc.get(j, fld.zero), fld.mul(x, y))
                    if v == fld.zero:
                        acc.pop(j, None)
                    else:
                        acc[j] = v
            rows.append(acc)
        return SparseMatrix(self.nrows, other.ncols, rows, fld)

    def mul_vec(self, vec):
        """Apply to a sparse column vector {index: scalar}."""
        fld = self.field
        out = {}
        for i, r in enumerate(self.rows):
            s = fld.zero
            for j, x in r.items():
                if j in vec:
                    s = fld.add(s, fld.mul(x, vec[j]))
            if s != fld.zero:
                out[i] = s
        return out

    def stack(self, other):
        """Vertical concatenation."""
        if self.ncols != other.ncols:
            raise DimensionMismatch("column counts differ")
        return SparseMatrix(self.nrows + other.nrows, self.ncols,
                            [dict(r) for r in self.rows] +
                            [dict(r) for r in other.rows], self.field)

    def submatrix(self, row_idx, col_idx):
        colmap = {c: j for j, c in enumerate(col_idx)}
        rows = []
        for i in row_idx:
            rows.append({colmap[c]: x for c, x in self.rows[i].items()
                         if c in colmap})
        return SparseMatrix(len(row_idx), len(col_idx), rows, self.field)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.field == other.field and self.rows == other.rows)

    def __repr__(self):
        return f"SparseMatrix({self.nrows}x{self.ncols}, {self.field!r})"


def _row_isub(fld, row, coef, other):
    """row -= coef * other, in place, dropping created zeros."""
    for j, x in other.items():
        v = fld.sub(row.get(j, fld.zero), fld.mul(coef, x))
        if v == fld.zero:
            row.pop(j, None)
        else:
            row[j] = v


def rref_with_transform(M):
    """Row echelon form with tracked transform: returns (R, U) with R = U*M.

    Rows are reduced top to bottom against the pivots found so far, leftmost
    nonzero entry as pivot.  Afterwards the rows are permuted so that pivot
    rows come first ordered by pivot column and zero rows last; the same
    permutation is applied to U, which stays invertible.
    """
    fld = M.field
    rows = [dict(r) for r in M.rows]
    urows = [{i: fld.one} for i in range(M.nrows)]
    pivot_of_col = {}  # pivot column -> row index
    for i in range(M.nrows):
        r, u = rows[i], urows[i]
        # Push the leading nonzero right past every existing pivot column.
        while r:
            c = min(r)
            if c not in pivot_of_col:
                break
            pi = pivot_of_col[c]
            coef = fld.div(r[c], rows[pi][c])
            _row_isub(fld, r, coef, rows[pi])
            _row_isub(fld, u, coef, urows[pi])
        if r:
            pivot_of_col[min(r)] = i
    order = [pivot_of_col[c] for c in sorted(pivot_of_col)]
    order += [i for i in range(M.nrows) if not rows[i]]
    R = SparseMatrix(M.nrows, M.ncols, [rows[i] for i in order], fld)
    U = SparseMatrix(M.nrows, M.nrows, [urows[i] for i in order], fld)
    return R, U


def rank(M):
    R, _ = rref_with_transform(M)
    return sum(1 for r in R.rows if r)


def left_null_basis(M):
    """Basis of {v : v^T M = 0}, i.e. of the orthogonal complement of the
    column span of M.  Returns the rows of the transform aligned with the
    zero rows of the echelon form, as sparse dicts of length M.nrows."""
    R, U = rref_with_transform(M)
    return [dict(U.rows[i]) for i in range(M.nrows) if not R.rows[i]]


def kernel_basis(M):
    """Basis of {u : M u = 0} as sparse column vectors of length M.ncols."""
    return left_null_basis(M.transpose())


def express_in_row_span(v, M):
    """Coefficients c with c^T M = v, or None if v is not in the row span.

    ``v`` is a sparse dict of length M.ncols; the result is a sparse dict of
    length M.nrows.
    """
    fld = M.field
    R, U = rref_with_transform(M)
    piv = {}
    for i, r in enumerate(R.rows):
        if r:
            piv[min(r)] = i
    res = dict(v)
    coeffs_R = {}
    while res:
        c = min(res)
        if c not in piv:
            return None
        i = piv[c]
        coef = fld.div(res[c], R.rows[i][c])
        _row_isub(fld, res, coef, R.rows[i])
        coeffs_R[i] = coef
    out = {}
    for i, coef in coeffs_R.items():
        for j, x in U.rows[i].items():
            w = fld.add(out.get(j, fld.zero), fld.mul(coef, x))
            if w == fld.zero:
                out.pop(j, None)
            else:
                out[j] = w
    return out


def row_membership(v, M):
    """True iff the row vector v lies in the row span of M."""
    maxc = max(v) if v else -1
    if maxc >= M.ncols:
        raise DimensionMismatch("vector longer than matrix width")
    return RowSpan(M.field, M.rows).contains(v)


class RowSpan:
    """Incremental row span with membership queries.

    Keeps an echelon set of rows indexed by pivot column.  ``add`` returns
    True when the row enlarged the span.
    """

    def __init__(self, field, rows=()):
        self.field = field
        self.pivots = {}  # pivot column -> reduced row
        for r in rows:
            self.add(r)

    def _reduce(self, row):
        fld = self.field
        res = dict(row)
        while res:
            c = min(res)
            if c not in self.pivots:
                break
            p = self.pivots[c]
            _row_isub(fld, res, fld.div(res[c], p[c]), p)
        return res

    def contains(self, row):
        return not self._reduce(row)

    def add(self, row):
        res = self._reduce(row)
        if not res:
            return False
        self.pivots[min(res)] = res
        return True

    @property
    def dim(self):
        return len(self.pivots)


def inverse(M):
    """Inverse of a square invertible matrix, by Gauss-Jordan."""
    if M.nrows != M.ncols:
        raise DimensionMismatch("inverse of a non-square matrix")
    fld = M.field
    R, U = rref_with_transform(M)
    rows = [dict(r) for r in R.rows]
    urows = [dict(r) for r in U.rows]
    for i in range(M.nrows):
        if not rows[i]:
            raise ValueError("matrix is singular")
    for i in reversed(range(M.nrows)):
        pc = min(rows[i])
        pv = rows[i][pc]
        if pv != fld.one:
            rows[i] = {j: fld.div(x, pv) for j, x in rows[i].items()}
            urows[i] = {j: fld.div(x, pv) for j, x in urows[i].items()}
        for k in range(i):
            if pc in rows[k]:
                coef = rows[k][pc]
                _row_isub(fld, rows[k], coef, rows[i])
                _row_isub(fld, urows[k], coef, urows[i])
    return SparseMatrix(M.nrows, M.nrows, urows, fld)
