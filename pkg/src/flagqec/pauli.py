"""Phaseless n-qubit Pauli operators in symplectic form."""

from __future__ import annotations

import re
from itertools import combinations, product
from typing import Iterable, Iterator

from .gf2 import Bits, parity, rotate_left

__all__ = [
    "Pauli",
    "symplectic",
    "multiply",
    "commutes",
    "weight",
    "left_cyclic_shift",
    "paulis_of_weight",
]

_SINGLE = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_LETTER = {v: k for k, v in _SINGLE.items()}
_SPARSE_TOKEN = re.compile(r"^([XYZ])(\d+)$")


class Pauli:
    """A Pauli operator ``(x_1..x_n | z_1..z_n)`` with the global phase dropped.

    ``x`` and ``z`` are packed integers with qubit 1 in the most significant
    position, matching :class:`~flagqec.gf2.Bits`.
    """

    __slots__ = ("n", "x", "z")

    def __init__(self, n: int, x: int = 0, z: int = 0):
        if x >> n or z >> n or x < 0 or z < 0:
            raise ValueError(f"x/z parts do not fit {n} qubits")
        self.n = n
        self.x = x
        self.z = z

    # construction -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "Pauli":
        return cls(n, 0, 0)

    @classmethod
    def from_bits(cls, x: Bits, z: Bits) -> "Pauli":
        if x.length != z.length:
            raise ValueError("x and z parts must have equal length")
        return cls(x.length, x.payload, z.payload)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "Pauli":
        if not 1 <= qubit <= n:
            raise IndexError(f"qubit {qubit} outside 1..{n}")
        bx, bz = _SINGLE[letter]
        m = 1 << (n - qubit)
        return cls(n, m if bx else 0, m if bz else 0)

    @classmethod
    def from_dense(cls, text: str) -> "Pauli":
        text = text.strip()
        x = z = 0
        for ch in text:
            if ch not in _SINGLE:
                raise ValueError(f"invalid Pauli letter {ch!r} in {text!r}")
            bx, bz = _SINGLE[ch]
            x = (x << 1) | bx
            z = (z << 1) | bz
        return cls(len(text), x, z)

    @classmethod
    def from_sparse(cls, text: str, n: int) -> "Pauli":
        p = cls.identity(n)
        seen = set()
        for tok in text.split():
            m = _SPARSE_TOKEN.match(tok)
            if not m:
                raise ValueError(f"invalid sparse Pauli token {tok!r}")
            q = int(m.group(2))
            if not 1 <= q <= n:
                raise ValueError(f"qubit index {q} outside 1..{n}")
            if q in seen:
                raise ValueError(f"duplicate qubit index {q} in {text!r}")
            seen.add(q)
            p = p * cls.single(n, q, m.group(1))
        return p

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Pauli":
        """Parse either the dense ``"IXZY"`` or the sparse ``"X1 Z3"`` form."""
        if any(ch.isdigit() for ch in text):
            if n is None:
                raise ValueError("sparse Pauli strings need the qubit count n")
            return cls.from_sparse(text, n)
        p = cls.from_dense(text)
        if n is not None and p.n != n:
            raise ValueError(f"dense Pauli has {p.n} qubits, expected {n}")
        return p

    @classmethod
    def from_support(cls, n: int, qubits: Iterable[int], letter: str) -> "Pauli":
        bx, bz = _SINGLE[letter]
        v = Bits.from_indices(n, qubits).payload
        return cls(n, v if bx else 0, v if bz else 0)

    # views --------------------------------------------------------------
    @property
    def xbits(self) -> Bits:
        return Bits(self.n, self.x)

    @property
    def zbits(self) -> Bits:
        return Bits(self.n, self.z)

    def __getitem__(self, qubit: int) -> str:
        if not 1 <= qubit <= self.n:
            raise IndexError(f"qubit {qubit} outside 1..{self.n}")
        s = self.n - qubit
        return _LETTER[((self.x >> s) & 1, (self.z >> s) & 1)]

    def to_dense(self) -> str:
        return "".join(self[j] for j in range(1, self.n + 1))

    def to_sparse(self) -> str:
        return " ".join(f"{self[j]}{j}" for j in self.support())

    def support(self) -> list[int]:
        return Bits(self.n, self.x | self.z).support()

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def symplectic(self) -> Bits:
        return Bits(2 * self.n, (self.x << self.n) | self.z)

    def is_identity(self) -> bool:
        return not (self.x or self.z)

    # algebra ------------------------------------------------------------
    def __mul__(self, other: "Pauli") -> "Pauli":
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} vs {other.n}")
        return Pauli(self.n, self.x ^ other.x, self.z ^ other.z)

    def commutes(self, other: "Pauli") -> bool:
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} vs {other.n}")
        return not parity((self.x & other.z) ^ (self.z & other.x))

    def shift_left(self, l: int) -> "Pauli":
        if not 0 <= l < max(self.n, 1):
            raise ValueError(f"shift {l} outside 0..{self.n - 1}")
        return Pauli(self.n, rotate_left(self.x, l, self.n), rotate_left(self.z, l, self.n))

    def tensor(self, other: "Pauli") -> "Pauli":
        return Pauli(self.n + other.n, (self.x << other.n) | other.x, (self.z << other.n) | other.z)

    def restrict(self, start: int, length: int) -> "Pauli":
        """The factor acting on qubits ``start .. start+length-1``."""
        shift = self.n - (start - 1) - length
        mask = (1 << length) - 1
        return Pauli(length, (self.x >> shift) & mask, (self.z >> shift) & mask)

    def embed(self, n: int, start: int) -> "Pauli":
        """Place this operator on qubits ``start ..`` of an ``n``-qubit register."""
        shift = n - (start - 1) - self.n
        if shift < 0 or start < 1:
            raise ValueError("embedding does not fit")
        return Pauli(n, self.x << shift, self.z << shift)

    def key(self) -> tuple[int, int]:
        """Sort key equal to lexicographic order of the symplectic string."""
        return (self.x, self.z)

    # dunder -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pauli):
            return NotImplemented
        return self.n == other.n and self.x == other.x and self.z == other.z

    def __hash__(self) -> int:
        return hash((self.n, self.x, self.z))

    def __repr__(self) -> str:
        return f"Pauli('{self.to_dense()}')"

    def __str__(self) -> str:
        return self.to_dense()


def symplectic(p: Pauli) -> Bits:
    return p.symplectic()


def multiply(p: Pauli, q: Pauli) -> Pauli:
    return p * q


def commutes(p: Pauli, q: Pauli) -> bool:
    return p.commutes(q)


def weight(p: Pauli) -> int:
    return p.weight()


def left_cyclic_shift(p: Pauli, l: int) -> Pauli:
    """``P_{l+1} ⊗ ... ⊗ P_n ⊗ P_1 ⊗ ... ⊗ P_l``."""
    return p.shift_left(l)


def paulis_of_weight(n: int, w: int) -> Iterator[Pauli]:
    """All n-qubit Paulis of weight exactly ``w``, qubit subsets in lexicographic order."""
    letters = ((1, 0), (1, 1), (0, 1))
    for qubits in combinations(range(1, n + 1), w):
        masks = [1 << (n - q) for q in qubits]
        for choice in product(letters, repeat=w):
            x = z = 0
            for m, (bx, bz) in zip(masks, choice):
                if bx:
                    x |= m
                if bz:
                    z |= m
            yield Pauli(n, x, z)
