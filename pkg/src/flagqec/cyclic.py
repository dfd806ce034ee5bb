"""Binary polynomials and classical (cyclic) linear codes."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .gf2 import BitMatrix, parity, rotate_left

__all__ = [
    "BinaryPolynomial",
    "ClassicalCode",
    "poly_divide",
    "check_matrix_from_h",
    "generator_matrix_from_g",
    "code_distance",
    "is_cyclic",
    "dual_containment",
    "MESSAGE_ENUMERATION_LIMIT",
]

# message enumeration is used while 2**k stays at or below this
MESSAGE_ENUMERATION_LIMIT = 1 << 24


class BinaryPolynomial:
    """Polynomial over GF(2); bit ``j`` of ``coeffs`` is the coefficient of ``x^j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: int = 0):
        if coeffs < 0:
            raise ValueError("coefficient mask must be non-negative")
        self.coeffs = coeffs

    @classmethod
    def from_exponents(cls, exponents) -> "BinaryPolynomial":
        c = 0
        for e in exponents:
            e = int(e)
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            c ^= 1 << e
        return cls(c)

    @classmethod
    def parse(cls, text: str) -> "BinaryPolynomial":
        """Parse an ascending exponent list such as ``"0,2,3,4"``."""
        parts = [t for t in text.replace(" ", "").split(",") if t]
        if not parts:
            raise ValueError("empty exponent list")
        exps = []
        for t in parts:
            if not t.isdigit():
                raise ValueError(f"bad exponent {t!r}")
            exps.append(int(t))
        if len(set(exps)) != len(exps):
            raise ValueError(f"repeated exponent in {text!r}")
        return cls.from_exponents(exps)

    @classmethod
    def x_n_minus_1(cls, n: int) -> "BinaryPolynomial":
        return cls((1 << n) | 1)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.coeffs.bit_length() - 1

    def coefficient(self, j: int) -> int:
        return (self.coeffs >> j) & 1

    def exponents(self) -> list[int]:
        return [j for j in range(self.degree + 1) if self.coefficient(j)]

    def reciprocal(self) -> "BinaryPolynomial":
        """``x^deg * p(1/x)``: the coefficient list read backwards."""
        if self.is_zero():
            return self
        d = self.degree
        return BinaryPolynomial.from_exponents([d - e for e in self.exponents()])

    def is_zero(self) -> bool:
        return self.coeffs == 0

    def __add__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        return BinaryPolynomial(self.coeffs ^ other.coeffs)

    def __mul__(self, other: "BinaryPolynomial") -> "BinaryPolynomial":
        a, b, out = self.coeffs, other.coeffs, 0
        while b:
            if b & 1:
                out ^= a
            a <<= 1
            b >>= 1
        return BinaryPolynomial(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"BinaryPolynomial({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def poly_divide(a: BinaryPolynomial, b: BinaryPolynomial) -> tuple[BinaryPolynomial, BinaryPolynomial]:
    """Long division over GF(2): ``a = q*b + r`` with ``deg r < deg b``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.degree
    r, q = a.coeffs, 0
    while r and r.bit_length() - 1 >= db:
        s = r.bit_length() - 1 - db
        q |= 1 << s
        r ^= b.coeffs << s
    return BinaryPolynomial(q), BinaryPolynomial(r)


def _require_divides(p: BinaryPolynomial, n: int, what: str) -> BinaryPolynomial:
    if p.is_zero():
        raise ValueError(f"{what} is the zero polynomial")
    q, r = poly_divide(BinaryPolynomial.x_n_minus_1(n), p)
    if not r.is_zero():
        raise ValueError(f"{what} {p} does not divide x^{n} - 1")
    return q


def _shifted_rows(pattern: int, width: int, n: int, count: int) -> BitMatrix:
    # pattern occupies the leftmost ``width`` columns of row 1, then slides right
    rows = [pattern << (n - width - i) for i in range(count)]
    return BitMatrix(n, rows)


def check_matrix_from_h(h: BinaryPolynomial, n: int) -> BitMatrix:
    """Parity-check matrix with rows ``(h_deg ... h_1 h_0 0 ... 0)`` shifted right."""
    _require_divides(h, n, "check polynomial")
    beta = h.degree
    if beta == n:
        return BitMatrix(n, [])
    # h_beta lands in column 1, so the MSB-first row pattern is h's own mask
    pattern = h.coeffs
    return _shifted_rows(pattern, beta + 1, n, n - beta)


def generator_matrix_from_g(g: BinaryPolynomial, n: int) -> BitMatrix:
    """Generator matrix with rows ``(g_0 g_1 ... g_alpha 0 ... 0)`` shifted right."""
    _require_divides(g, n, "generator polynomial")
    alpha = g.degree
    if alpha == n:
        raise ValueError("g = x^n - 1 generates the zero code")
    pattern = int(format(g.coeffs, f"0{alpha + 1}b")[::-1], 2)
    return _shifted_rows(pattern, alpha + 1, n, n - alpha)


@dataclass
class ClassicalCode:
    """An ``[n, k]`` binary linear code with parity-check ``H`` and generator ``G``."""

    n: int
    k: int
    H: BitMatrix
    G: BitMatrix
    d: int | None = None
    check_poly: BinaryPolynomial | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.H.ncols != self.n or self.G.ncols != self.n:
            raise ValueError("matrix width does not match n")
        if self.H.rank() != self.n - self.k or self.G.rank() != self.k:
            raise ValueError("H and G ranks are inconsistent with k")
        for g in self.G.int_rows:
            for h in self.H.int_rows:
                if parity(g & h):
                    raise ValueError("G H^T != 0")

    @classmethod
    def from_check_poly(cls, h: BinaryPolynomial, n: int) -> "ClassicalCode":
        g, _ = poly_divide(BinaryPolynomial.x_n_minus_1(n), h)
        H = check_matrix_from_h(h, n)
        if g.degree == n:
            G = BitMatrix(n, [])
        else:
            G = generator_matrix_from_g(g, n)
        return cls(n, h.degree, H, G, check_poly=h)

    @classmethod
    def from_generator_poly(cls, g: BinaryPolynomial, n: int) -> "ClassicalCode":
        h = _require_divides(g, n, "generator polynomial")
        return cls.from_check_poly(h, n)

    @classmethod
    def from_check_matrix(cls, H: BitMatrix) -> "ClassicalCode":
        if H.rank() != H.nrows:
            raise ValueError("parity-check rows are linearly dependent")
        G = H.null_space()
        return cls(H.ncols, G.nrows, H, G)

    def with_distance(self, cap: int | None = None) -> "ClassicalCode":
        self.d = code_distance(self, cap if cap is not None else self.n)
        return self


def _message_enumeration_min(G: BitMatrix) -> int:
    if G.ncols <= 64:
        words = np.zeros(1, dtype=np.uint64)
        for r in G.int_rows:
            words = np.concatenate([words, words ^ np.uint64(r)])
        return int(np.bitwise_count(words[1:]).min())
    best = G.ncols
    cur = 0
    rows = G.int_rows
    for i in range(1, 1 << len(rows)):
        # Gray code walk over all messages
        cur ^= rows[(i & -i).bit_length() - 1]
        best = min(best, cur.bit_count())
    return best


def code_distance(code: ClassicalCode, cap: int) -> int | None:
    """Minimum nonzero codeword weight, or ``None`` if it exceeds ``cap``."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if code.k == 0:
        return None
    if (1 << code.k) <= MESSAGE_ENUMERATION_LIMIT:
        d = _message_enumeration_min(code.G)
        return d if d <= cap else None
    cols = code.H.transpose().int_rows
    for w in range(1, cap + 1):
        for idx in combinations(range(code.n), w):
            s = 0
            for j in idx:
                s ^= cols[j]
            if s == 0:
                return w
    return None


def is_cyclic(code: ClassicalCode) -> bool:
    """True iff the one-step cyclic shift of every generator row stays in the code."""
    n = code.n
    return all(code.G.in_row_space(rotate_left(r, n - 1, n)) for r in code.G.int_rows)


def dual_containment(Hx: BitMatrix, Hz: BitMatrix) -> bool:
    """True iff every row of ``Hx`` is orthogonal to every row of ``Hz``."""
    if Hx.ncols != Hz.ncols:
        raise ValueError(f"column mismatch: {Hx.ncols} vs {Hz.ncols}")
    return all(not parity(a & b) for a in Hx.int_rows for b in Hz.int_rows)
