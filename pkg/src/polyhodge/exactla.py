"""Exact linear algebra over Q (sparse) and Z (Smith form).

Rows are eliminated in fraction-free integer form: every rational row is
scaled to a primitive integer vector before elimination, and row updates are
cross-multiplications followed by a gcd division.  This keeps all
intermediate values as Python ints, which is considerably faster than
running Gaussian elimination on ``Fraction`` objects.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "RatMatrix",
    "rank",
    "kernel_basis",
    "rref",
    "image_basis",
    "quotient_dim",
    "row_space",
    "smith_diagonal",
    "det",
]


class RatMatrix:
    """Sparse matrix with exact rational entries.

    Only nonzero entries are stored, as a dict of row dicts.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, entries=None):
        if nrows < 0 or ncols < 0:
            raise ValueError("negative shape")
        self.nrows = nrows
        self.ncols = ncols
        self._rows: dict[int, dict[int, Fraction]] = {}
        if entries:
            for (i, j), v in entries.items():
                self[i, j] = v

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RatMatrix":
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        m = cls(len(rows), ncols)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    m._rows.setdefault(i, {})[j] = Fraction(v)
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "RatMatrix":
        cols = list(cols)
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls.from_dense(cols, nrows).transpose() if cols else cls(nrows, 0)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"index {key} out of range for {self.shape}")
        value = Fraction(value)
        if value:
            self._rows.setdefault(i, {})[j] = value
        else:
            row = self._rows.get(i)
            if row is not None:
                row.pop(j, None)
                if not row:
                    del self._rows[i]

    def __getitem__(self, key) -> Fraction:
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError(f"index {key} out of range for {self.shape}")
        return self._rows.get(i, {}).get(j, Fraction(0))

    def add(self, i: int, j: int, value) -> None:
        """Accumulate ``value`` into entry (i, j)."""
        self[i, j] = self[i, j] + value

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows.values())

    def items(self):
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def row(self, i: int) -> dict[int, Fraction]:
        return dict(self._rows.get(i, {}))

    def rows(self) -> list[dict[int, Fraction]]:
        return [dict(self._rows.get(i, {})) for i in range(self.nrows)]

    def is_zero(self) -> bool:
        return not self._rows

    def transpose(self) -> "RatMatrix":
        t = RatMatrix(self.ncols, self.nrows)
        for i, row in self._rows.items():
            for j, v in row.items():
                t._rows.setdefault(j, {})[i] = v
        return t

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            out = RatMatrix(self.nrows, other.ncols)
            for i, row in self._rows.items():
                acc: dict[int, Fraction] = {}
                for k, a in row.items():
                    orow = other._rows.get(k)
                    if not orow:
                        continue
                    for j, b in orow.items():
                        acc[j] = acc.get(j, 0) + a * b
                acc = {j: v for j, v in acc.items() if v}
                if acc:
                    out._rows[i] = acc
            return out
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        res = [Fraction(0)] * self.nrows
        for i, row in self._rows.items():
            res[i] = sum((a * vec[j] for j, a in row.items()), Fraction(0))
        return res

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for i, row in self._rows.items():
            for j, v in row.items():
                out[i][j] = v
        return out

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "RatMatrix":
        """Return the matrix with row i moved to row_perm[i] and column j to col_perm[j]."""
        out = RatMatrix(self.nrows, self.ncols)
        for i, row in self._rows.items():
            out._rows[row_perm[i]] = {col_perm[j]: v for j, v in row.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


# --- integer row elimination -------------------------------------------------


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


def _as_int_row(row: dict) -> dict[int, int]:
    den = 1
    for v in row.values():
        d = v.denominator if isinstance(v, Fraction) else 1
        den = den * d // gcd(den, d)
    out = {}
    for k, v in row.items():
        if v:
            v = Fraction(v)
            out[k] = v.numerator * (den // v.denominator)
    return out


def _echelon(rows: Iterable[dict]) -> dict[int, dict[int, int]]:
    """Integer row echelon form keyed by leading column."""
    pivots: dict[int, dict[int, int]] = {}
    int_rows = [r for r in (_as_int_row(r) for r in rows) if r]
    int_rows.sort(key=len)
    for r in int_rows:
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _primitive(r)
                break
            a, b = p[c], r[c]
            new = {k: a * v for k, v in r.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            r = _primitive(new) if new else new
    return pivots


def _reduce_fully(pivots: dict[int, dict[int, int]]) -> dict[int, dict[int, int]]:
    leads = sorted(pivots)
    for idx in range(len(leads) - 1, -1, -1):
        c = leads[idx]
        p = pivots[c]
        a = p[c]
        for c2 in leads[:idx]:
            q = pivots[c2]
            b = q.get(c)
            if not b:
                continue
            new = {k: a * v for k, v in q.items()}
            for k, v in p.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            pivots[c2] = _primitive(new)
    return pivots


def _rows_of(m) -> list[dict]:
    if isinstance(m, RatMatrix):
        return list(m._rows.values())
    return [{j: v for j, v in enumerate(row) if v} for row in m]


def _ncols(m) -> int:
    if isinstance(m, RatMatrix):
        return m.ncols
    m = list(m)
    return len(m[0]) if m else 0


def rank(m) -> int:
    """Rank over Q.  Accepts a RatMatrix or a dense sequence of rows."""
    return len(_echelon(_rows_of(m)))


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form: (nonzero rows with leading 1, pivot columns)."""
    n = _ncols(m)
    piv = _reduce_fully(_echelon(_rows_of(m)))
    out, cols = [], []
    for c in sorted(piv):
        p = piv[c]
        a = p[c]
        row = [Fraction(0)] * n
        for k, v in p.items():
            row[k] = Fraction(v, a)
        out.append(row)
        cols.append(c)
    return out, cols


row_space = rref


def kernel_basis(m, with_free: bool = False):
    """Basis of {v : m v = 0}.

    Vectors are returned in free-column order; vector i is 1 at the i-th free
    column and 0 at every other free column, so the coordinates of a kernel
    element in this basis are just its entries at the free columns.  With
    ``with_free`` the free column indices are returned as well.
    """
    n = _ncols(m)
    piv = _reduce_fully(_echelon(_rows_of(m)))
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for c, p in piv.items():
            b = p.get(f)
            if b:
                v[c] = Fraction(-b, p[c])
        basis.append(v)
    return (basis, free) if with_free else basis


def image_basis(m: RatMatrix) -> list[list[Fraction]]:
    """Basis (in RREF) of the column space of m."""
    rows, _ = rref(m.transpose())
    return rows


def quotient_dim(sub: Sequence[Sequence], whole: Sequence[Sequence]) -> int:
    """dim span(whole + sub) / span(sub), vectors given as rows."""
    sub, whole = list(sub), list(whole)
    return rank(sub + whole) - rank(sub) if (sub or whole) else 0


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant of a small square matrix by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("det needs a square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        pv = a[c][c]
        result *= pv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f /= pv
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return sign * result


# --- Smith normal form -------------------------------------------------------


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors d_1 | d_2 | ... of an integer matrix.

    Returns min(rows, cols) nonnegative integers; trailing zeros account for
    rank deficiency.
    """
    a = [[int(x) for x in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero entry in the trailing block becomes the pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            diag.extend([0] * (min(nr, nc) - t))
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = a[t][t]
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # a remainder smaller than the pivot exists; move it to (t, t)
                best = None
                for i in range(t, nr):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(a[best][t])):
                        best = i
                if best is not None and abs(a[best][t]) < abs(a[t][t]):
                    a[t], a[best] = a[best], a[t]
                bestc = None
                for j in range(t, nc):
                    if a[t][j] and (bestc is None or abs(a[t][j]) < abs(a[t][bestc])):
                        bestc = j
                if bestc is not None and abs(a[t][bestc]) < abs(a[t][t]):
                    for row in a:
                        row[t], row[bestc] = row[bestc], row[t]
                continue
            # pivot must divide the whole trailing block
            p = a[t][t]
            bad = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is not None:
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                done = False
        diag.append(abs(a[t][t]))
        t += 1
    return diag
