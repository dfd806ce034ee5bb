import random

import pytest

from flagqec.cyclic import (
    BinaryPolynomial,
    ClassicalCode,
    check_matrix_from_h,
    code_distance,
    dual_containment,
    generator_matrix_from_g,
    is_cyclic,
    poly_divide,
)
from flagqec.gf2 import BitMatrix

P = BinaryPolynomial.parse


def divisors_of_xn1(n: int) -> list[BinaryPolynomial]:
    xn = BinaryPolynomial.x_n_minus_1(n)
    out = []
    for c in range(1, 1 << (n + 1)):
        b = BinaryPolynomial(c)
        if poly_divide(xn, b)[1].is_zero():
            out.append(b)
    return out


def test_parse_and_print():
    h = P("0,2,3,4")
    assert h.exponents() == [0, 2, 3, 4]
    assert h.degree == 4
    assert str(h) == "1 + x^2 + x^3 + x^4"
    with pytest.raises(ValueError):
        P("0,2,2")
    with pytest.raises(ValueError):
        P("a,b")


def test_divide_examples():
    q, r = poly_divide(BinaryPolynomial.x_n_minus_1(7), P("0,1,3"))
    assert q == P("0,1,2,4") and r.is_zero()
    # oracle: multiply back
    assert q * P("0,1,3") == BinaryPolynomial.x_n_minus_1(7)
    a = P("1,5,6")
    assert poly_divide(a, a) == (P("0"), BinaryPolynomial(0))
    assert poly_divide(P("2"), P("3")) == (BinaryPolynomial(0), P("2"))
    with pytest.raises(ZeroDivisionError):
        poly_divide(a, BinaryPolynomial(0))


def test_reciprocal():
    assert P("0,1,3").reciprocal() == P("0,2,3")
    assert P("0,2,4,6,10,14,16,22").reciprocal() == P("0,6,8,12,16,18,20,22")


def test_check_matrix_hamming():
    H = check_matrix_from_h(P("0,2,3,4"), 7)
    assert H.to_strings() == ["1110100", "0111010", "0011101"]


def test_check_matrix_degenerate_h_one():
    assert check_matrix_from_h(P("0"), 3).to_strings() == ["100", "010", "001"]


def test_check_matrix_code30_first_row():
    h = P("0,2,4,6,10,14,16,22")
    H = check_matrix_from_h(h, 30)
    assert (H.nrows, H.ncols) == (8, 30)
    # h_22 ... h_0 then 7 zeros
    expected = "".join(str(h.coefficient(j)) for j in range(22, -1, -1)) + "0" * 7
    assert H.to_strings()[0] == expected
    assert H.to_strings()[1] == "0" + expected[:-1]


def test_check_matrix_rejects_non_divisor():
    with pytest.raises(ValueError, match="does not divide"):
        check_matrix_from_h(P("0,2"), 7)


def test_generator_matrix_hamming():
    g, _ = poly_divide(BinaryPolynomial.x_n_minus_1(7), P("0,2,3,4"))
    G = generator_matrix_from_g(g, 7)
    H = check_matrix_from_h(P("0,2,3,4"), 7)
    assert (G.nrows, G.rank()) == (4, 4)
    assert all(r.dot(h) == 0 for r in G.rows for h in H.rows)
    assert generator_matrix_from_g(P("0"), 4).to_strings() == ["1000", "0100", "0010", "0001"]
    with pytest.raises(ValueError):
        generator_matrix_from_g(BinaryPolynomial.x_n_minus_1(7), 7)


def test_distances():
    ham = ClassicalCode.from_check_poly(P("0,2,3,4"), 7)
    assert code_distance(ham, 7) == 3
    rep = ClassicalCode.from_check_matrix(BitMatrix.from_strings(["11"]))
    assert (rep.k, code_distance(rep, 2)) == (1, 2)
    assert code_distance(ham, 2) is None
    with pytest.raises(ValueError):
        code_distance(ham, 0)


def test_distance_pattern_search_agrees_with_enumeration(monkeypatch):
    import flagqec.cyclic as cyc

    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(4, 10)
        rows = [rng.getrandbits(n) for _ in range(rng.randint(1, n - 1))]
        H = BitMatrix(n, rows).row_space_basis()
        if H.nrows == 0 or H.nrows == n:
            continue
        code = ClassicalCode.from_check_matrix(H)
        a = code_distance(code, n)
        monkeypatch.setattr(cyc, "MESSAGE_ENUMERATION_LIMIT", 0)
        b = code_distance(code, n)
        monkeypatch.undo()
        assert a == b


def test_code30_classical_distance():
    c = ClassicalCode.from_check_poly(P("0,2,4,6,10,14,16,22"), 30)
    assert (c.n, c.k) == (30, 22)
    assert code_distance(c, 30) == 3
    assert is_cyclic(c)


def test_is_cyclic():
    assert not is_cyclic(ClassicalCode.from_check_matrix(BitMatrix.from_strings(["110", "001"]).null_space()))
    for n in (3, 5, 7, 9, 15):
        for h in divisors_of_xn1(n):
            if h.degree in (0, n):
                continue
            assert is_cyclic(ClassicalCode.from_check_poly(h, n)), (n, h)


def test_g_and_h_descriptions_are_dual():
    for n in (7, 9, 15):
        xn = BinaryPolynomial.x_n_minus_1(n)
        for h in divisors_of_xn1(n):
            if h.degree in (0, n):
                continue
            g, _ = poly_divide(xn, h)
            H = check_matrix_from_h(h, n)
            G = generator_matrix_from_g(g, n)
            assert H.rank() + G.rank() == n
            assert dual_containment(H, G)


def test_dual_containment_examples():
    H = check_matrix_from_h(P("0,2,3,4"), 7)
    assert dual_containment(H, H)
    assert not dual_containment(BitMatrix.from_strings(["10"]), BitMatrix.from_strings(["10"]))
    assert dual_containment(H, BitMatrix(7, []))
    with pytest.raises(ValueError):
        dual_containment(H, BitMatrix.from_strings(["10"]))
