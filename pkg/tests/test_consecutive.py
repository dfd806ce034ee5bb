import pytest

from flagqec.consecutive import (
    DistinguishabilityReport,
    consecutive_set,
    distinguishable_oracle,
    lemma1_check_x,
    lemma1_check_z,
    lemma2_check,
    lemma3_check,
    theorem2_check,
)
from flagqec.css import CssCode, build_css
from flagqec.cyclic import BinaryPolynomial, ClassicalCode, dual_containment
from flagqec.gf2 import BitMatrix
from flagqec.pauli import Pauli

from helpers import random_check_matrices, random_cyclic_checks, x_side_code, z_side_code

ALL_ONES4 = BitMatrix.from_strings(["1111"])


def test_set_sizes_and_members():
    s = consecutive_set("z", 0, 3)
    assert [e.to_dense() for e in s] == ["III", "IIZ", "IZZ"]
    assert len(consecutive_set("product", 0, 3)) == 9
    shifted = consecutive_set("z", 1, 3)
    assert [e.to_dense() for e in shifted] == [e.shift_left(1).to_dense() for e in s]


def test_set_rejects_bad_shift_and_kind():
    with pytest.raises(ValueError):
        consecutive_set("z", 3, 3)
    with pytest.raises(ValueError):
        consecutive_set("y", 0, 3)


def test_report_witness_invariant():
    with pytest.raises(ValueError):
        DistinguishabilityReport(False)
    with pytest.raises(ValueError):
        DistinguishabilityReport(True, (Pauli.identity(1), Pauli.identity(1)))


def test_oracle_examples(steane):
    assert distinguishable_oracle(steane, consecutive_set("z", 0, 7)).verdict
    rep = distinguishable_oracle(x_side_code(ALL_ONES4), consecutive_set("z", 0, 4))
    assert not rep.verdict
    assert [w.to_dense() for w in rep.witness] == ["IIII", "IIZZ"]
    assert distinguishable_oracle(x_side_code(BitMatrix.from_strings(["1"])), consecutive_set("z", 0, 1)).verdict


def test_oracle_size_mismatch(steane):
    with pytest.raises(ValueError):
        distinguishable_oracle(steane, consecutive_set("z", 0, 5))


def test_lemma1_examples(steane):
    assert lemma1_check_z(steane.hx).verdict
    assert lemma1_check_x(steane.hz).verdict
    rep = lemma1_check_z(ALL_ONES4)
    assert not rep.verdict and (rep.detail["p"], rep.detail["q"]) == (2, 0)
    assert not lemma1_check_x(ALL_ONES4).verdict
    assert lemma1_check_z(BitMatrix.from_strings(["1"])).verdict
    assert not lemma1_check_x(BitMatrix(3, [])).verdict
    with pytest.raises(ValueError):
        lemma1_check_z(steane.hx, 7)


def test_lemma1_witness_has_equal_syndromes():
    for H in random_check_matrices(60, seed=9):
        rep = lemma1_check_z(H)
        if not rep.verdict:
            code = x_side_code(H)
            a, b = rep.witness
            assert code.syndrome_ints(a.x, a.z) == code.syndrome_ints(b.x, b.z)


def test_lemma3_examples(steane, code30_literal):
    assert lemma3_check(steane.hx).verdict
    assert lemma3_check(code30_literal.hx).verdict
    rep = lemma3_check(ALL_ONES4)
    assert not rep.verdict and rep.detail["u"] == 3
    with pytest.raises(ValueError, match="not cyclic"):
        lemma3_check(BitMatrix.from_strings(["1100"]))


def test_lemma1_matches_oracle_on_random_matrices():
    for H in random_check_matrices(200):
        n = H.ncols
        assert lemma1_check_z(H).verdict == distinguishable_oracle(x_side_code(H), consecutive_set("z", 0, n)).verdict
        assert lemma1_check_x(H).verdict == distinguishable_oracle(z_side_code(H), consecutive_set("x", 0, n)).verdict


def test_lemma3_lemma1_oracle_agree_on_cyclic_codes():
    for H in random_cyclic_checks(50):
        n = H.ncols
        code = x_side_code(H)
        l3 = lemma3_check(H).verdict
        for l in range(n):
            assert lemma1_check_z(H, l).verdict == l3
            assert distinguishable_oracle(code, consecutive_set("z", l, n)).verdict == l3


def test_product_set_is_conjunction():
    checked = 0
    for H in random_cyclic_checks(80, seed=4):
        n = H.ncols
        if not dual_containment(H, H):
            continue
        code = CssCode(H, H)
        for l in (0, n // 2):
            both = (
                distinguishable_oracle(code, consecutive_set("z", l, n)).verdict
                and distinguishable_oracle(code, consecutive_set("x", l, n)).verdict
            )
            assert distinguishable_oracle(code, consecutive_set("product", l, n)).verdict == both
        checked += 1
    assert checked >= 5


def test_lemma2_shifted_generators_span_same_space(steane, code30, code30_literal):
    for c in (steane, code30, code30_literal):
        assert lemma2_check(c.hx) and lemma2_check(c.hz)
    assert not lemma2_check(BitMatrix.from_strings(["1100"]))


def test_shift_covariance(steane):
    n = steane.n
    for l in range(n):
        shifted = CssCode(steane.hx.rotate_columns_left(l), steane.hz.rotate_columns_left(l))
        base, moved = consecutive_set("product", 0, n), consecutive_set("product", l, n)
        for e0, el in zip(base, moved):
            assert shifted.syndrome_ints(el.x, el.z) == steane.syndrome_ints(e0.x, e0.z)


def test_theorem2_on_fixtures(steane, code30, code30_literal):
    for c, n in ((steane, 7), (code30, 30), (code30_literal, 30)):
        rep = theorem2_check(c)
        assert rep.predicted and rep.passed and len(rep.shifts) == n
    assert all(r.detail["size"] == 900 for r in theorem2_check(code30_literal).shifts)


def test_theorem2_distance_two_counterexample():
    hamming = ClassicalCode.from_check_poly(BinaryPolynomial.parse("0,2,3,4"), 7).with_distance()
    even = ClassicalCode.from_check_poly(BinaryPolynomial.parse("0,1,2,3,4,5,6"), 7).with_distance()
    code = build_css(hamming, even)
    rep = theorem2_check(code)
    assert not rep.predicted and rep.failing
    for l in rep.failing:
        a, b = rep.shifts[l].witness
        diff = a * b
        assert diff.weight() == 2
        assert code.syndrome_ints(diff.x, diff.z) == (0, 0)


def test_theorem2_rejects_non_cyclic():
    code = CssCode(BitMatrix.from_strings(["1100", "0011"]), BitMatrix.from_strings(["1100", "0011"]))
    with pytest.raises(ValueError):
        theorem2_check(code)
