"""Bit-packed GF(2) vectors and matrices.

A :class:`Bits` value packs ``length`` bits into one Python integer.  Bit 1
(the leftmost when printed) is the most significant bit, so comparing two
payloads of equal length as integers is the same as comparing their 0/1
strings lexicographically.  All public indexing is 1-based.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

__all__ = ["Bits", "BitMatrix", "in_row_space", "parity", "rotate_left"]


def parity(v: int) -> int:
    return v.bit_count() & 1


def rotate_left(v: int, shift: int, length: int) -> int:
    """Cyclically rotate a packed ``length``-bit string left by ``shift``."""
    if length == 0:
        return v
    shift %= length
    if shift == 0:
        return v
    mask = (1 << length) - 1
    return ((v << shift) | (v >> (length - shift))) & mask


class Bits:
    __slots__ = ("length", "payload")

    def __init__(self, length: int, payload: int = 0):
        if length < 0:
            raise ValueError("negative length")
        if payload < 0 or payload >> length:
            raise ValueError(f"payload does not fit in {length} bits")
        self.length = length
        self.payload = payload

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, length: int) -> "Bits":
        return cls(length, 0)

    @classmethod
    def from_string(cls, s: str) -> "Bits":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a 0/1 string: {s!r}")
        return cls(len(s), int(s, 2) if s else 0)

    @classmethod
    def from_list(cls, bits: Sequence[int]) -> "Bits":
        return cls.from_string("".join("1" if b else "0" for b in bits))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "Bits":
        v = 0
        for j in indices:
            if not 1 <= j <= length:
                raise IndexError(f"bit index {j} outside 1..{length}")
            v |= 1 << (length - j)
        return cls(length, v)

    # access -------------------------------------------------------------
    def __len__(self) -> int:
        return self.length

    def __getitem__(self, j: int) -> int:
        if not isinstance(j, int):
            raise TypeError("Bits indices are integers")
        if not 1 <= j <= self.length:
            raise IndexError(f"bit index {j} outside 1..{self.length}")
        return (self.payload >> (self.length - j)) & 1

    def __iter__(self) -> Iterator[int]:
        for j in range(1, self.length + 1):
            yield self[j]

    def support(self) -> list[int]:
        return [j for j in range(1, self.length + 1) if self[j]]

    def weight(self) -> int:
        return self.payload.bit_count()

    def to_string(self) -> str:
        return format(self.payload, f"0{self.length}b") if self.length else ""

    def to_list(self) -> list[int]:
        return list(self)

    # algebra ------------------------------------------------------------
    def _check(self, other: "Bits") -> None:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: "Bits") -> "Bits":
        self._check(other)
        return Bits(self.length, self.payload ^ other.payload)

    def __and__(self, other: "Bits") -> "Bits":
        self._check(other)
        return Bits(self.length, self.payload & other.payload)

    def __or__(self, other: "Bits") -> "Bits":
        self._check(other)
        return Bits(self.length, self.payload | other.payload)

    def dot(self, other: "Bits") -> int:
        """GF(2) inner product."""
        self._check(other)
        return parity(self.payload & other.payload)

    def concat(self, other: "Bits") -> "Bits":
        return Bits(self.length + other.length, (self.payload << other.length) | other.payload)

    def rotate_left(self, shift: int) -> "Bits":
        return Bits(self.length, rotate_left(self.payload, shift, self.length))

    def flip(self, j: int) -> "Bits":
        self[j]  # bounds check
        return Bits(self.length, self.payload ^ (1 << (self.length - j)))

    def any(self) -> bool:
        return self.payload != 0

    # dunder -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bits):
            return NotImplemented
        return self.length == other.length and self.payload == other.payload

    def __hash__(self) -> int:
        return hash((self.length, self.payload))

    def __lt__(self, other: "Bits") -> bool:
        self._check(other)
        return self.payload < other.payload

    def __repr__(self) -> str:
        return f"Bits('{self.to_string()}')"

    def __str__(self) -> str:
        return self.to_string()


class BitMatrix:
    """Row-major GF(2) matrix whose rows are packed integers."""

    __slots__ = ("nrows", "ncols", "_rows", "_ech")

    def __init__(self, ncols: int, rows: Iterable[int | Bits] = ()):
        packed = []
        for r in rows:
            if isinstance(r, Bits):
                if r.length != ncols:
                    raise ValueError(f"row length {r.length} != {ncols} columns")
                r = r.payload
            if r < 0 or r >> ncols:
                raise ValueError(f"row does not fit in {ncols} columns")
            packed.append(r)
        self.ncols = ncols
        self.nrows = len(packed)
        self._rows = tuple(packed)
        self._ech: tuple[list[int], list[int]] | None = None

    @classmethod
    def from_strings(cls, rows: Sequence[str], ncols: int | None = None) -> "BitMatrix":
        bits = [Bits.from_string(r) for r in rows]
        if ncols is None:
            if not bits:
                raise ValueError("cannot infer column count from zero rows")
            ncols = bits[0].length
        return cls(ncols, bits)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, [1 << (n - 1 - i) for i in range(n)])

    @property
    def int_rows(self) -> tuple[int, ...]:
        return self._rows

    @property
    def rows(self) -> list[Bits]:
        return [Bits(self.ncols, r) for r in self._rows]

    def row(self, i: int) -> Bits:
        """1-based row access."""
        if not 1 <= i <= self.nrows:
            raise IndexError(f"row {i} outside 1..{self.nrows}")
        return Bits(self.ncols, self._rows[i - 1])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.row(i)[j]

    def __len__(self) -> int:
        return self.nrows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.ncols, self._rows))

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols}, {self.to_strings()})"

    def to_strings(self) -> list[str]:
        return [format(r, f"0{self.ncols}b") for r in self._rows]

    def to_numpy(self):
        import numpy as np

        out = np.zeros((self.nrows, self.ncols), dtype=np.uint8)
        for i, s in enumerate(self.to_strings()):
            out[i] = [int(c) for c in s]
        return out

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.ncols != self.ncols:
            raise ValueError("column mismatch")
        return BitMatrix(self.ncols, self._rows + other._rows)

    def rotate_columns_left(self, shift: int) -> "BitMatrix":
        return BitMatrix(self.ncols, [rotate_left(r, shift, self.ncols) for r in self._rows])

    def multiply_vector(self, v: int | Bits) -> int:
        """Return ``M v`` packed with row 1 as the most significant bit."""
        if isinstance(v, Bits):
            if v.length != self.ncols:
                raise ValueError("dimension mismatch")
            v = v.payload
        out = 0
        for r in self._rows:
            out = (out << 1) | parity(r & v)
        return out

    def transpose(self) -> "BitMatrix":
        cols = []
        for j in range(self.ncols):
            shift = self.ncols - 1 - j
            c = 0
            for r in self._rows:
                c = (c << 1) | ((r >> shift) & 1)
            cols.append(c)
        return BitMatrix(self.nrows, cols)

    # elimination --------------------------------------------------------
    def echelon(self) -> tuple[list[int], list[int]]:
        """Reduced row echelon basis of the row space.

        Pivots are taken leftmost-first, so the result only depends on the
        row space.  Returns ``(basis_rows, pivot_masks)``.
        """
        if self._ech is not None:
            return list(self._ech[0]), list(self._ech[1])
        basis: list[int] = []
        pivots: list[int] = []
        for r in self._rows:
            for b, p in zip(basis, pivots):
                if r & p:
                    r ^= b
            if r:
                p = 1 << (r.bit_length() - 1)
                for i, b in enumerate(basis):
                    if b & p:
                        basis[i] = b ^ r
                basis.append(r)
                pivots.append(p)
        order = sorted(range(len(basis)), key=lambda i: -pivots[i])
        self._ech = ([basis[i] for i in order], [pivots[i] for i in order])
        return list(self._ech[0]), list(self._ech[1])

    def rank(self) -> int:
        return len(self.echelon()[0])

    def row_space_basis(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.echelon()[0])

    def reduce(self, v: int) -> int:
        """Reduce ``v`` modulo the row space (canonical coset representative)."""
        basis, pivots = self.echelon()
        for b, p in zip(basis, pivots):
            if v & p:
                v ^= b
        return v

    def in_row_space(self, v: int | Bits) -> bool:
        if isinstance(v, Bits):
            if v.length != self.ncols:
                raise ValueError(f"vector length {v.length} != {self.ncols} columns")
            v = v.payload
        elif v >> self.ncols:
            raise ValueError("vector does not fit the column count")
        return self.reduce(v) == 0

    def null_space(self) -> "BitMatrix":
        """Basis of ``{v : M v = 0}``."""
        basis, pivots = self.echelon()
        n = self.ncols
        pivot_cols = {p.bit_length() - 1 for p in pivots}
        out = []
        for col in range(n - 1, -1, -1):
            if col in pivot_cols:
                continue
            v = 1 << col
            for b, p in zip(basis, pivots):
                if b & (1 << col):
                    v |= p
            out.append(v)
        return BitMatrix(n, out)

    def same_row_space(self, other: "BitMatrix") -> bool:
        return self.ncols == other.ncols and self.echelon()[0] == other.echelon()[0]


def in_row_space(m: BitMatrix, v: Bits) -> bool:
    """Module-level convenience mirroring :meth:`BitMatrix.in_row_space`."""
    return m.in_row_space(v)
