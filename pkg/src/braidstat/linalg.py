"""Sparse matrices over exact rings (Fraction, Cyc, ExpScalar, RationalExp).

Entries only need ``+``, ``*``, unary ``-`` and truthiness (falsy == zero).
Everything here stays exact; numeric export is a separate step that maps
entries through a caller-supplied evaluation.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

import numpy as np
from scipy import sparse as _sp

__all__ = ["SparseMatrix", "kron", "identity_like"]


class SparseMatrix:
    """Dict-of-rows sparse matrix; rows map column -> nonzero entry."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int,
                 rows: Mapping[int, Mapping[int, object]] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict[int, dict[int, object]] = {}
        if rows:
            for i, row in rows.items():
                cleaned = {j: v for j, v in row.items() if v}
                if cleaned:
                    self.rows[i] = cleaned

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_entries(cls, nrows: int, ncols: int,
                     entries: Iterable[tuple[int, int, object]]) -> "SparseMatrix":
        out = cls(nrows, ncols)
        for i, j, v in entries:
            out._add(i, j, v)
        return out

    @classmethod
    def identity(cls, n: int, one) -> "SparseMatrix":
        return cls(n, n, {i: {i: one} for i in range(n)})

    @classmethod
    def permutation(cls, images: list[int], one) -> "SparseMatrix":
        """Matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        return cls(n, n, {images[j]: {j: one} for j in range(n)})

    def _add(self, i: int, j: int, v) -> None:
        if not v:
            return
        row = self.rows.setdefault(i, {})
        cur = row.get(j)
        new = v if cur is None else cur + v
        if new:
            row[j] = new
        else:
            del row[j]
            if not row:
                del self.rows[i]

    # -- basic queries ----------------------------------------------------------

    def get(self, i: int, j: int):
        return self.rows.get(i, {}).get(j)

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def entries(self):
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def is_zero(self) -> bool:
        return not self.rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        if set(self.rows) != set(other.rows):
            return False
        for i, row in self.rows.items():
            orow = other.rows[i]
            if set(row) != set(orow):
                return False
            for j, v in row.items():
                if not v == orow[j]:
                    return False
        return True

    __hash__ = None  # type: ignore[assignment]

    # -- arithmetic ----------------------------------------------------------------

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        assert (self.nrows, self.ncols) == (other.nrows, other.ncols)
        out = SparseMatrix(self.nrows, self.ncols, self.rows)
        for i, row in other.rows.items():
            for j, v in row.items():
                out._add(i, j, v)
        return out

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scaled(-1)

    def scaled(self, c) -> "SparseMatrix":
        if c == -1:
            return SparseMatrix(self.nrows, self.ncols,
                                {i: {j: -v for j, v in row.items()}
                                 for i, row in self.rows.items()})
        return SparseMatrix(self.nrows, self.ncols,
                            {i: {j: v * c for j, v in row.items()}
                             for i, row in self.rows.items()})

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        assert self.ncols == other.nrows, "shape mismatch"
        out = SparseMatrix(self.nrows, other.ncols)
        orows = other.rows
        for i, row in self.rows.items():
            acc: dict[int, object] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    prod = a * b
                    cur = acc.get(j)
                    acc[j] = prod if cur is None else cur + prod
            cleaned = {j: v for j, v in acc.items() if v}
            if cleaned:
                out.rows[i] = cleaned
        return out

    def apply(self, vec: Mapping[int, object]) -> dict[int, object]:
        """Matrix times sparse column vector."""
        out: dict[int, object] = {}
        for i, row in self.rows.items():
            acc = None
            for j, a in row.items():
                x = vec.get(j)
                if x is None or not x:
                    continue
                term = a * x
                acc = term if acc is None else acc + term
            if acc is not None and acc:
                out[i] = acc
        return out

    def transpose(self) -> "SparseMatrix":
        out = SparseMatrix(self.ncols, self.nrows)
        for i, row in self.rows.items():
            for j, v in row.items():
                out.rows.setdefault(j, {})[i] = v
        return out

    def trace(self, zero):
        total = zero
        for i, row in self.rows.items():
            v = row.get(i)
            if v:
                total = total + v
        return total

    def map_entries(self, fn: Callable[[object], object]) -> "SparseMatrix":
        out = SparseMatrix(self.nrows, self.ncols)
        for i, row in self.rows.items():
            new = {j: fn(v) for j, v in row.items()}
            new = {j: v for j, v in new.items() if v}
            if new:
                out.rows[i] = new
        return out

    # -- numeric export ---------------------------------------------------------------

    def to_numpy(self, evaluate: Callable[[object], complex],
                 dtype=complex) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=dtype)
        for i, row in self.rows.items():
            for j, v in row.items():
                out[i, j] = evaluate(v)
        return out

    def to_scipy(self, evaluate: Callable[[object], complex],
                 dtype=complex) -> _sp.csr_matrix:
        data, ii, jj = [], [], []
        for i, row in self.rows.items():
            for j, v in row.items():
                ii.append(i)
                jj.append(j)
                data.append(evaluate(v))
        return _sp.csr_matrix((data, (ii, jj)), shape=(self.nrows, self.ncols),
                              dtype=dtype)

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Tensor product; row/col indices combine big-endian (a first)."""
    out = SparseMatrix(a.nrows * b.nrows, a.ncols * b.ncols)
    for i1, row1 in a.rows.items():
        for j1, v1 in row1.items():
            base_r = i1 * b.nrows
            base_c = j1 * b.ncols
            for i2, row2 in b.rows.items():
                target = out.rows.setdefault(base_r + i2, {})
                for j2, v2 in row2.items():
                    prod = v1 * v2
                    if prod:
                        target[base_c + j2] = prod
    return out


def identity_like(n: int, sample) -> SparseMatrix:
    """Identity with the multiplicative unit inferred from a sample entry."""
    from fractions import Fraction

    from .cyclotomic import Cyc
    from .expscalar import ExpScalar, RationalExp

    if isinstance(sample, ExpScalar):
        one = ExpScalar.one()
    elif isinstance(sample, RationalExp):
        one = RationalExp.one()
    elif isinstance(sample, Cyc):
        one = Cyc.one()
    else:
        one = Fraction(1)
    return SparseMatrix.identity(n, one)
