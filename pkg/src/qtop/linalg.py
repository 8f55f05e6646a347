"""
Sparse matrices over the cyclotomic field and exact Gauss-Jordan elimination.

Rows are stored as ``{column: CycScalar}`` dictionaries without explicit
zeros.  Everything here is exact: ranks, kernels and inverses are decided by
field arithmetic only.
"""

from __future__ import annotations

from .scalar import CycScalar, FieldContext


def _axpy(target: dict, coeff: CycScalar, row: dict) -> None:
    """target += coeff * row, dropping cancelled entries."""
    for j, v in row.items():
        w = target.get(j)
        w = coeff * v if w is None else w + coeff * v
        if w.is_zero():
            target.pop(j, None)
        else:
            target[j] = w


class Matrix:
    """Sparse (m x n) matrix; immutable by convention once built."""

    __slots__ = ("ctx", "nrows", "ncols", "rows")

    def __init__(self, ctx: FieldContext, nrows: int, ncols: int, rows: dict | None = None):
        self.ctx = ctx
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {} if rows is None else rows

    # -- construction ------------------------------------------------------
    @classmethod
    def zeros(cls, ctx, nrows, ncols):
        return cls(ctx, nrows, ncols)

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, n, n, {i: {i: ctx.one} for i in range(n)})

    @classmethod
    def diag(cls, ctx, values):
        values = [ctx.coerce(v) for v in values]
        return cls(ctx, len(values), len(values), {i: {i: v} for i, v in enumerate(values) if v})

    @classmethod
    def from_dense(cls, ctx, data):
        data = [list(row) for row in data]
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        rows = {}
        for i, row in enumerate(data):
            r = {j: ctx.coerce(v) for j, v in enumerate(row) if v != 0}
            if r:
                rows[i] = r
        return cls(ctx, nrows, ncols, rows)

    @classmethod
    def from_entries(cls, ctx, nrows, ncols, entries):
        """Accumulate ``(i, j, value)`` triples."""
        rows = {}
        for i, j, v in entries:
            row = rows.setdefault(i, {})
            w = row.get(j)
            w = ctx.coerce(v) if w is None else w + v
            if w.is_zero():
                row.pop(j, None)
            else:
                row[j] = w
        return cls(ctx, nrows, ncols, {i: r for i, r in rows.items() if r})

    # -- access ------------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows.get(i, {}).get(j, self.ctx.zero)

    def entries(self):
        for i, row in self.rows.items():
            for j, v in row.items():
                yield i, j, v

    def nnz(self):
        return sum(len(r) for r in self.rows.values())

    def to_dense(self):
        out = [[self.ctx.zero] * self.ncols for _ in range(self.nrows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def column(self, j):
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def is_zero(self):
        return not self.rows

    # -- algebra -----------------------------------------------------------
    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {i: dict(r) for i, r in self.rows.items()}
        for i, r in other.rows.items():
            tgt = rows.setdefault(i, {})
            _axpy(tgt, self.ctx.one, r)
            if not tgt:
                del rows[i]
        return Matrix(self.ctx, self.nrows, self.ncols, rows)

    def __neg__(self):
        return Matrix(self.ctx, self.nrows, self.ncols,
                      {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = self.ctx.coerce(c)
        if c.is_zero():
            return Matrix(self.ctx, self.nrows, self.ncols)
        return Matrix(self.ctx, self.nrows, self.ncols,
                      {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        rows = {}
        orows = other.rows
        for i, r in self.rows.items():
            acc = {}
            for k, v in r.items():
                ok = orows.get(k)
                if ok:
                    _axpy(acc, v, ok)
            if acc:
                rows[i] = acc
        return Matrix(self.ctx, self.nrows, other.ncols, rows)

    def apply(self, vec: dict) -> dict:
        """Matrix times a sparse column vector ``{index: scalar}``."""
        out = {}
        for i, r in self.rows.items():
            acc = None
            for k, v in r.items():
                x = vec.get(k)
                if x is not None:
                    acc = v * x if acc is None else acc + v * x
            if acc is not None and not acc.is_zero():
                out[i] = acc
        return out

    @property
    def T(self):
        rows = {}
        for i, j, v in self.entries():
            rows.setdefault(j, {})[i] = v
        return Matrix(self.ctx, self.ncols, self.nrows, rows)

    def kron(self, other):
        rows = {}
        m, n = other.nrows, other.ncols
        for i, r in self.rows.items():
            for k, r2 in other.rows.items():
                row = {}
                for j, v in r.items():
                    for l, w in r2.items():
                        row[j * n + l] = v * w
                rows[i * m + k] = row
        return Matrix(self.ctx, self.nrows * m, self.ncols * n, rows)

    def trace(self):
        total = self.ctx.zero
        for i, r in self.rows.items():
            v = r.get(i)
            if v is not None:
                total = total + v
        return total

    def __pow__(self, k):
        if self.nrows != self.ncols:
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return inverse(self) ** (-k)
        result = Matrix.identity(self.ctx, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def to_json(self):
        return [[v.to_json() for v in row] for row in self.to_dense()]


def block_diag(ctx, blocks):
    rows = {}
    r0 = c0 = 0
    for b in blocks:
        for i, r in b.rows.items():
            rows[r0 + i] = {c0 + j: v for j, v in r.items()}
        r0 += b.nrows
        c0 += b.ncols
    return Matrix(ctx, r0, c0, rows)


# -- elimination -----------------------------------------------------------

def row_reduce(rows, ncols=None):
    """Reduced row echelon form of a list of sparse rows.

    Returns ``(pivots, reduced)`` where ``reduced[k]`` is the row whose
    leading (unit) entry sits in column ``pivots[k]``.
    """
    pending = [dict(r) for r in rows if r]
    reduced: dict[int, dict] = {}
    for row in pending:
        # eliminate existing pivots from the incoming row
        for col in sorted(set(row) & reduced.keys()):
            c = row.get(col)
            if c is not None:
                _axpy(row, -c, reduced[col])
        if not row:
            continue
        col = min(row)
        inv = row[col].inverse()
        row = {j: v * inv for j, v in row.items()}
        # keep the basis fully reduced
        for other in reduced.values():
            c = other.get(col)
            if c is not None:
                _axpy(other, -c, row)
        reduced[col] = row
    pivots = sorted(reduced)
    return pivots, [reduced[p] for p in pivots]


def rank(m) -> int:
    rows = m.rows.values() if isinstance(m, Matrix) else m
    pivots, _ = row_reduce(list(rows))
    return len(pivots)


def nullspace(m: Matrix) -> list[dict]:
    """Basis of ``{x : m x = 0}`` as sparse column vectors."""
    ctx = m.ctx
    pivots, reduced = row_reduce(list(m.rows.values()))
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        vec = {free: ctx.one}
        for p, row in zip(pivots, reduced):
            c = row.get(free)
            if c is not None:
                vec[p] = -c
        basis.append(vec)
    return basis


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = m.nrows
    ctx = m.ctx
    aug = []
    for i in range(n):
        row = {j: v for j, v in m.rows.get(i, {}).items()}
        row[n + i] = ctx.one
        aug.append(row)
    pivots, reduced = row_reduce(aug)
    if pivots[:n] != list(range(n)) or (len(pivots) > n and pivots[n] < n):
        raise ZeroDivisionError("matrix is singular")
    rows = {}
    for p, row in zip(pivots, reduced):
        if p < n:
            r = {j - n: v for j, v in row.items() if j >= n}
            if r:
                rows[p] = r
    return Matrix(ctx, n, n, rows)


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def determinant(m: Matrix):
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    ctx = m.ctx
    n = m.nrows
    rows = [dict(m.rows.get(i, {})) for i in range(n)]
    det = ctx.one
    for col in range(n):
        piv = next((i for i in range(col, n) if col in rows[i]), None)
        if piv is None:
            return ctx.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        p = rows[col][col]
        det = det * p
        inv = p.inverse()
        for i in range(col + 1, n):
            c = rows[i].get(col)
            if c is not None:
                _axpy(rows[i], -c * inv, rows[col])
    return det


def solve(m: Matrix, rhs: dict) -> dict | None:
    """One solution of ``m x = rhs`` or ``None`` when inconsistent."""
    n = m.ncols
    aug = []
    for i in range(m.nrows):
        row = dict(m.rows.get(i, {}))
        if i in rhs and not rhs[i].is_zero():
            row[n] = rhs[i]
        if row:
            aug.append(row)
    pivots, reduced = row_reduce(aug)
    if pivots and pivots[-1] == n:
        return None
    return {p: row[n] for p, row in zip(pivots, reduced) if n in row}
