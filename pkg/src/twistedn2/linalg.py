"""Exact sparse linear algebra over Q(i)(θ).

Rows are dicts ``{column: Scalar}``.  Elimination always pivots on the
leftmost nonzero column of a row, so the reduced row echelon form (and hence
the kernel basis) depends only on the row space and the column order.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, as_scalar

__all__ = ["ExactMatrix", "rref", "kernel_basis", "rank", "solve_in_span"]


class ExactMatrix:
    """An immutable ``rows x cols`` matrix stored as sparse rows."""

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows, ncols=None):
        sparse = []
        width = 0
        for row in rows:
            if isinstance(row, dict):
                entries = {int(j): as_scalar(v) for j, v in row.items()}
                if entries:
                    width = max(width, max(entries) + 1)
            else:
                row = list(row)
                width = max(width, len(row))
                entries = {j: as_scalar(v) for j, v in enumerate(row)}
            sparse.append({j: v for j, v in entries.items() if v})
        if ncols is None:
            ncols = width
        elif width > ncols:
            raise ValueError(f"row entry beyond column count {ncols}")
        if ncols < 0:
            raise ValueError("negative column count")
        self.nrows = len(sparse)
        self.ncols = ncols
        self._rows = tuple(sparse)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([{} for _ in range(nrows)], ncols)

    @property
    def rows(self):
        return self._rows

    def dense(self):
        return [[r.get(j, ZERO) for j in range(self.ncols)] for r in self._rows]

    def __mul__(self, vec):
        vec = [as_scalar(v) for v in vec]
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols} columns")
        out = []
        for r in self._rows:
            acc = ZERO
            for j, v in r.items():
                if vec[j]:
                    acc = acc + v * vec[j]
            out.append(acc)
        return out

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def _reduce_into(row, pivots):
    """Reduce ``row`` (mutated) by the echelon ``pivots``; return its new pivot or None."""
    while row:
        c = min(row)
        p = pivots.get(c)
        if p is None:
            return c
        f = row[c]
        for k, v in p.items():
            nv = row.get(k, ZERO) - f * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return None


def rref(rows):
    """Reduced row echelon form of an iterable of sparse rows.

    Returns ``{pivot_column: row}``; every row has a 1 at its pivot column and
    zeros at every other pivot column.
    """
    pivots = {}
    for r in rows:
        row = {k: v for k, v in r.items() if v}
        c = _reduce_into(row, pivots)
        if c is None:
            continue
        inv = row[c].inverse()
        if inv != ONE:
            row = {k: v * inv for k, v in row.items()}
        pivots[c] = row
    order = sorted(pivots)
    for idx in range(len(order) - 1, -1, -1):
        c = order[idx]
        prow = pivots[c]
        for c2 in order[:idx]:
            other = pivots[c2]
            f = other.get(c)
            if not f:
                continue
            for k, v in prow.items():
                nv = other.get(k, ZERO) - f * v
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)
    return {c: pivots[c] for c in order}


def _as_rows(m):
    if isinstance(m, ExactMatrix):
        return m.rows, m.ncols
    m = ExactMatrix(m)
    return m.rows, m.ncols


def rank(m):
    rows, _ = _as_rows(m)
    return len(rref(rows))


def kernel_basis(m, ncols=None):
    """Exact basis of the right nullspace ``{v : m v = 0}``.

    One vector per free column (ascending); the free entry is 1 and the other
    free entries are 0.  Accepts an :class:`ExactMatrix` or a list of sparse
    row dicts together with ``ncols``.
    """
    if isinstance(m, ExactMatrix):
        rows, n = m.rows, m.ncols
    elif ncols is not None:
        rows, n = m, ncols
    else:
        rows, n = _as_rows(m)
    red = rref(rows)
    basis = []
    for f in range(n):
        if f in red:
            continue
        v = [ZERO] * n
        v[f] = ONE
        for c, row in red.items():
            x = row.get(f)
            if x:
                v[c] = -x
        basis.append(tuple(v))
    return basis


def solve_in_span(target, generators):
    """Coefficients ``c`` with ``sum(c[j] * generators[j]) == target``, or None.

    When the generators are dependent the particular solution with the free
    coefficients set to zero is returned.
    """
    target = [as_scalar(t) for t in target]
    gens = [[as_scalar(x) for x in g] for g in generators]
    n = len(target)
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator length {len(g)} != target length {n}")
    k = len(gens)
    # augmented system: unknown j in column j, right-hand side in column k
    rows = []
    for i in range(n):
        row = {j: gens[j][i] for j in range(k) if gens[j][i]}
        if target[i]:
            row[k] = target[i]
        if row:
            rows.append(row)
    red = rref(rows)
    if k in red:
        return None
    coeffs = [ZERO] * k
    for c, row in red.items():
        coeffs[c] = row.get(k, ZERO)
    return tuple(coeffs)

