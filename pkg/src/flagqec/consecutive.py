"""Consecutive error sets and their distinguishability by a code."""

from __future__ import annotations

from dataclasses import dataclass, field

from .css import CssCode
from .gf2 import BitMatrix, parity, rotate_left
from .pauli import Pauli

__all__ = [
    "ConsecutiveSet",
    "DistinguishabilityReport",
    "Theorem2Report",
    "consecutive_set",
    "distinguishable_oracle",
    "lemma1_check_z",
    "lemma1_check_x",
    "lemma2_check",
    "lemma3_check",
    "theorem2_check",
]

KINDS = ("x", "z", "product")


def _suffix(p: int) -> int:
    return (1 << p) - 1


@dataclass(frozen=True)
class ConsecutiveSet:
    """``kind`` is ``"x"``, ``"z"`` or ``"product"``.

    ``labels[i]`` is ``p`` for single-type sets and ``(p_x, p_z)`` for the
    product set.
    """

    kind: str
    l: int
    n: int
    elements: tuple[Pauli, ...]
    labels: tuple = field(default=(), repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def consecutive_set(kind: str, l: int, n: int) -> ConsecutiveSet:
    """Left cyclic shifts by ``l`` of the suffix blocks ``I^(n-p) P^p``, p = 0..n-1."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= l < n:
        raise ValueError(f"shift l={l} outside 0..{n - 1}")
    shifted = [rotate_left(_suffix(p), l, n) for p in range(n)]
    if kind == "z":
        elems = tuple(Pauli(n, 0, v) for v in shifted)
        labels = tuple(range(n))
    elif kind == "x":
        elems = tuple(Pauli(n, v, 0) for v in shifted)
        labels = tuple(range(n))
    else:
        elems = tuple(Pauli(n, vx, vz) for vx in shifted for vz in shifted)
        labels = tuple((px, pz) for px in range(n) for pz in range(n))
    return ConsecutiveSet(kind, l, n, elems, labels)


@dataclass
class DistinguishabilityReport:
    verdict: bool
    witness: tuple[Pauli, Pauli] | None = None
    method: str = "oracle"
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.witness is None) != self.verdict:
            raise ValueError("witness must be present exactly when the verdict is false")

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "method": self.method}
        if self.witness is not None:
            out["witness"] = [w.to_dense() for w in self.witness]
        out.update(self.detail)
        return out


def distinguishable_oracle(code: CssCode, cset: ConsecutiveSet) -> DistinguishabilityReport:
    """Compute every syndrome and report the first colliding pair, if any."""
    if cset.n != code.n:
        raise ValueError(f"set length {cset.n} != code length {code.n}")
    seen: dict[tuple[int, int], int] = {}
    for j, e in enumerate(cset.elements):
        s = code.syndrome_ints(e.x, e.z)
        i = seen.get(s)
        if i is not None:
            return DistinguishabilityReport(
                False,
                (cset.elements[i], e),
                "oracle",
                {"kind": cset.kind, "l": cset.l, "labels": [cset.labels[i], cset.labels[j]]},
            )
        seen[s] = j
    return DistinguishabilityReport(True, None, "oracle", {"kind": cset.kind, "l": cset.l, "size": len(cset)})


def _suffix_pair(n: int, p: int, q: int, letter: str) -> tuple[Pauli, Pauli]:
    vq, vp = _suffix(q), _suffix(p)
    if letter == "Z":
        return Pauli(n, 0, vq), Pauli(n, 0, vp)
    return Pauli(n, vq, 0), Pauli(n, vp, 0)


def _lemma1(H: BitMatrix, letter: str, method: str, l: int = 0) -> DistinguishabilityReport:
    n = H.ncols
    if not 0 <= l < n:
        raise ValueError(f"shift l={l} outside 0..{n - 1}")
    # a left shift of the errors by l is a right shift of the columns
    rows = H.rotate_columns_left((n - l) % n).int_rows
    # suffix syndromes: the parity over columns n-p+1..n-q is the xor of two suffix parities
    sig = [0] * n
    for p in range(n):
        mask = _suffix(p)
        s = 0
        for r in rows:
            s = (s << 1) | parity(r & mask)
        sig[p] = s
    for p in range(1, n):
        for q in range(p):
            if sig[p] == sig[q]:
                pair = tuple(e.shift_left(l) for e in _suffix_pair(n, p, q, letter))
                return DistinguishabilityReport(False, pair, method, {"p": p, "q": q, "l": l})
    return DistinguishabilityReport(True, None, method, {"n": n, "l": l})


def lemma1_check_z(Hx: BitMatrix, l: int = 0) -> DistinguishabilityReport:
    """For all p > q some row of ``Hx`` has odd parity on columns n-p+1 .. n-q.

    With ``l > 0`` the criterion is applied to the Z-type set shifted left by ``l``.
    """
    return _lemma1(Hx, "Z", "lemma1", l)


def lemma1_check_x(Hz: BitMatrix, l: int = 0) -> DistinguishabilityReport:
    return _lemma1(Hz, "X", "lemma1", l)


def lemma2_check(H: BitMatrix) -> bool:
    """Every left cyclic shift of the rows spans the same row space."""
    return all(H.same_row_space(H.rotate_columns_left(l)) for l in range(H.ncols))


def _row_space_cyclic(H: BitMatrix) -> bool:
    n = H.ncols
    return all(H.in_row_space(rotate_left(r, 1, n)) for r in H.int_rows)


def lemma3_check(H: BitMatrix, kind: str = "z") -> DistinguishabilityReport:
    """Suffix criterion: each suffix u..n (u = 2..n) has odd parity in some row.

    ``H`` must span a cyclic code; ``kind`` selects the letter used for
    witnesses (``"z"`` for an X-check matrix, ``"x"`` for a Z-check matrix).
    """
    if kind not in ("x", "z"):
        raise ValueError("kind must be 'x' or 'z'")
    if not _row_space_cyclic(H):
        raise ValueError("row space is not cyclic: suffix criterion inapplicable")
    n = H.ncols
    rows = H.int_rows
    for u in range(n, 1, -1):
        mask = _suffix(n - u + 1)
        if not any(parity(r & mask) for r in rows):
            return DistinguishabilityReport(
                False, _suffix_pair(n, n - u + 1, 0, kind.upper()), "lemma3", {"u": u}
            )
    return DistinguishabilityReport(True, None, "lemma3", {"n": n})


@dataclass
class Theorem2Report:
    code: str
    d_x: int | None
    d_z: int | None
    shifts: list[DistinguishabilityReport]

    @property
    def failing(self) -> list[int]:
        return [r.detail["l"] for r in self.shifts if not r.verdict]

    @property
    def passed(self) -> bool:
        return not self.failing

    @property
    def predicted(self) -> bool:
        """Whether the distance hypothesis (both classical distances >= 3) holds."""
        return (self.d_x or 0) >= 3 and (self.d_z or 0) >= 3

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "d_x": self.d_x,
            "d_z": self.d_z,
            "passed": self.passed,
            "failing": self.failing,
            "shifts": [r.to_dict() for r in self.shifts],
        }


def theorem2_check(code: CssCode) -> Theorem2Report:
    """Run the oracle on the product set for every shift l = 0..n-1."""
    if not code.cyclic:
        raise ValueError("code is not cyclic")
    d_x, d_z = code.distances
    reports = [distinguishable_oracle(code, consecutive_set("product", l, code.n)) for l in range(code.n)]
    return Theorem2Report(code.name, d_x, d_z, reports)
