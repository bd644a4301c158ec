"""Square matrices of Gaussian integers with a cached entry-magnitude bound."""

from __future__ import annotations

import math

from .gaussint import GaussianBigInt


class ComplexIntMatrix:
    """An n-by-n matrix of Gaussian integers.

    ``M`` is the smallest nonnegative integer that bounds every entry
    modulus; the modular permanent engines size their working modulus
    from it.
    """

    __slots__ = ("n", "entries", "M")

    def __init__(self, rows):
        rows = [tuple(GaussianBigInt.coerce(e) for e in row) for row in rows]
        n = len(rows)
        if n < 1:
            raise ValueError("matrix must have at least one row")
        if any(len(row) != n for row in rows):
            raise ValueError("matrix must be square")
        entries = tuple(rows)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "M", max(_ceil_modulus(e) for row in entries for e in row))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexIntMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, ComplexIntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ComplexIntMatrix(n={self.n}, M={self.M})"

    @classmethod
    def identity(cls, n: int) -> "ComplexIntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def ones(cls, n: int) -> "ComplexIntMatrix":
        return cls([[1] * n for _ in range(n)])

    def transpose(self) -> "ComplexIntMatrix":
        return ComplexIntMatrix(list(zip(*self.entries)))

    def permuted(self, row_perm=None, col_perm=None) -> "ComplexIntMatrix":
        """Reorder rows and/or columns; perms are 0-based index sequences."""
        n = self.n
        rp = row_perm if row_perm is not None else range(n)
        cp = col_perm if col_perm is not None else range(n)
        return ComplexIntMatrix([[self.entries[i][j] for j in cp] for i in rp])

    def with_scaled_row(self, i: int, c) -> "ComplexIntMatrix":
        c = GaussianBigInt.coerce(c)
        rows = [list(row) for row in self.entries]
        rows[i] = [c * e for e in rows[i]]
        return ComplexIntMatrix(rows)

    def to_complex(self):
        """Entries as a nested list of Python complex floats."""
        return [[complex(e) for e in row] for row in self.entries]

    def to_json(self) -> dict:
        def enc(e):
            return int(e.re) if e.im == 0 else [e.re, e.im]

        return {"rows": [[enc(e) for e in row] for row in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "ComplexIntMatrix":
        return cls(obj["rows"])


def _ceil_modulus(e: GaussianBigInt) -> int:
    """Smallest integer m with m >= |e|."""
    v = e.abs_sq()
    r = math.isqrt(v)
    return r if r * r == v else r + 1
