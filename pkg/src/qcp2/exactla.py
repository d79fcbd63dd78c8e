"""Exact sparse linear algebra over the rational-function field RatV.

Gaussian elimination with exact division; pivot selection prefers the entry
of smallest degree in the current column to limit expression swell.  Rows are
dicts  column -> RatV  with no stored zeros.
"""

from __future__ import annotations

from .qcoeff import RatV


class SparseMatrix:
    """Sparse matrix with RatV entries; no stored zeros."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (i, j), x in entries.items():
                self.set(i, j, x)

    def set(self, i, j, x):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("entry (%d,%d) outside %dx%d" % (i, j, self.nrows, self.ncols))
        if x.is_zero():
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = x

    def get(self, i, j):
        return self.entries.get((i, j), RatV.zero())

    def rows(self):
        out = [dict() for _ in range(self.nrows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def transpose(self):
        t = SparseMatrix(self.ncols, self.nrows)
        t.entries = {(j, i): x for (i, j), x in self.entries.items()}
        return t

    def apply(self, vec):
        """Matrix times a dense vector of RatV."""
        if len(vec) != self.ncols:
            raise ValueError("vector length %d != ncols %d" % (len(vec), self.ncols))
        out = [RatV.zero()] * self.nrows
        for (i, j), x in self.entries.items():
            if vec[j]:
                out[i] = out[i] + x * vec[j]
        return out

    @staticmethod
    def from_rows(rows, ncols):
        m = SparseMatrix(len(rows), ncols)
        for i, row in enumerate(rows):
            for j, x in row.items():
                m.set(i, j, x)
        return m

    def stack(self, other):
        """Vertical stack; column counts must agree."""
        if self.ncols != other.ncols:
            raise ValueError("column mismatch in stack")
        m = SparseMatrix(self.nrows + other.nrows, self.ncols)
        m.entries = dict(self.entries)
        for (i, j), x in other.entries.items():
            m.entries[(self.nrows + i, j)] = x
        return m


def _eliminate(rows, ncols):
    """Row reduce in place; returns (pivot list [(row, col)], rref rows).

    Pivot choice per column: the nonzero entry of smallest degree measure.
    The result is fully reduced (entries above pivots cleared, pivots 1).
    """
    pivots = []
    used = [False] * len(rows)
    for col in range(ncols):
        best = None
        for i, row in enumerate(rows):
            if used[i]:
                continue
            x = row.get(col)
            if x is not None:
                size = x.degree_size()
                if best is None or size < best[0]:
                    best = (size, i)
        if best is None:
            continue
        p = best[1]
        used[p] = True
        prow = rows[p]
        inv = prow[col].inv()
        rows[p] = prow = {j: x * inv for j, x in prow.items()}
        for i, row in enumerate(rows):
            if i == p:
                continue
            f = row.pop(col, None)
            if f is None:
                continue
            for j, x in prow.items():
                if j == col:
                    continue
                y = row.get(j)
                new = (y - f * x) if y is not None else -(f * x)
                if new.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = new
        pivots.append((p, col))
    # order rows by pivot column
    ordered = [rows[p] for p, _ in sorted(pivots, key=lambda pc: pc[1])]
    pivcols = sorted(c for _, c in pivots)
    return pivcols, ordered


class Subspace:
    """Subspace of RatV^n given by a reduced-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors):
        self.ambient_dim = ambient_dim
        rows = []
        for v in vectors:
            if isinstance(v, dict):
                row = {j: x for j, x in v.items() if not x.is_zero()}
            else:
                row = {j: x for j, x in enumerate(v) if not x.is_zero()}
            if row:
                rows.append(row)
        self.pivots, self.basis = _eliminate(rows, ambient_dim)

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        """Membership of a dense or sparse vector, exact."""
        if isinstance(vec, dict):
            row = {j: x for j, x in vec.items() if not x.is_zero()}
        else:
            row = {j: x for j, x in enumerate(vec) if not x.is_zero()}
        for pc, bas in zip(self.pivots, self.basis):
            f = row.get(pc)
            if f is None:
                continue
            for j, x in bas.items():
                y = row.get(j, RatV.zero()) - f * x
                if y.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = y
        return not row

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim
                and self.pivots == other.pivots
                and self.basis == other.basis)


def rank(m):
    pivcols, _ = _eliminate(m.rows(), m.ncols)
    return len(pivcols)


def kernel(m):
    """Exact null space of m as a Subspace of RatV^ncols."""
    pivcols, rref = _eliminate(m.rows(), m.ncols)
    pivset = set(pivcols)
    free = [j for j in range(m.ncols) if j not in pivset]
    vectors = []
    for f in free:
        vec = {f: RatV.one()}
        for pc, row in zip(pivcols, rref):
            x = row.get(f)
            if x is not None:
                vec[pc] = -x
        vectors.append(vec)
    ker = Subspace(m.ncols, vectors)
    assert ker.dim == len(free)
    return ker


def solve(m, rhs):
    """One solution x of m x = rhs, or None when inconsistent."""
    if len(rhs) != m.nrows:
        raise ValueError("rhs length mismatch")
    rows = m.rows()
    aug = m.ncols
    for i, b in enumerate(rhs):
        if not b.is_zero():
            rows[i][aug] = b
    pivcols, rref = _eliminate(rows, m.ncols + 1)
    if aug in pivcols:
        return None
    x = [RatV.zero()] * m.ncols
    for pc, row in zip(pivcols, rref):
        x[pc] = row.get(aug, RatV.zero())
    return x


def subspace_equal(a, b):
    """Exact equality of subspaces via their reduced echelon certificates."""
    return a == b
