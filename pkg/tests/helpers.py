"""Shared generators for the randomized equivalence checks."""

from __future__ import annotations

import random

from flagqec.css import CssCode
from flagqec.cyclic import BinaryPolynomial, check_matrix_from_h, poly_divide
from flagqec.gf2 import BitMatrix

LEMMA_SEED = 20240601


def random_check_matrices(count: int, seed: int = LEMMA_SEED) -> list[BitMatrix]:
    """Matrices with 2 <= n <= 10 columns and 1 <= rows <= 5."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, 10)
        rows = [rng.getrandbits(n) for _ in range(rng.randint(1, 5))]
        out.append(BitMatrix(n, rows))
    return out


def cyclic_divisors(n: int) -> list[BinaryPolynomial]:
    xn = BinaryPolynomial.x_n_minus_1(n)
    out = []
    for c in range(1, 1 << (n + 1)):
        b = BinaryPolynomial(c)
        if 0 < b.degree < n and poly_divide(xn, b)[1].is_zero():
            out.append(b)
    return out


def random_cyclic_checks(count: int, seed: int = LEMMA_SEED) -> list[BitMatrix]:
    """Check matrices of cyclic codes drawn from divisors of x^n - 1, 3 <= n <= 15."""
    rng = random.Random(seed)
    pool = [(n, h) for n in range(3, 16) for h in cyclic_divisors(n)]
    return [check_matrix_from_h(h, n) for n, h in rng.sample(pool, count)]


def x_side_code(H: BitMatrix) -> CssCode:
    """CSS code whose X checks are ``H`` and which has no Z checks."""
    return CssCode(H, BitMatrix(H.ncols, []))


def z_side_code(H: BitMatrix) -> CssCode:
    return CssCode(BitMatrix(H.ncols, []), H)


# one line per acceptance criterion, filled by test_acceptance and echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def report(number: int, ok: bool, detail: str) -> str:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return line
