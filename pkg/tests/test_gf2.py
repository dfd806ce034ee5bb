import random

import pytest
from hypothesis import given, strategies as st

from flagqec.gf2 import BitMatrix, Bits, in_row_space


def test_bits_one_based_access():
    b = Bits.from_string("1010")
    assert [b[j] for j in range(1, 5)] == [1, 0, 1, 0]
    assert b.support() == [1, 3]
    with pytest.raises(IndexError):
        b[0]
    with pytest.raises(IndexError):
        b[5]


def test_bits_from_indices_and_flip():
    b = Bits.from_indices(5, [2, 5])
    assert b.to_string() == "01001"
    assert b.flip(1).to_string() == "11001"
    with pytest.raises(IndexError):
        Bits.from_indices(3, [4])


def test_bits_rejects_mismatched_lengths():
    with pytest.raises(ValueError):
        Bits.from_string("10") ^ Bits.from_string("100")
    with pytest.raises(ValueError):
        Bits.from_string("10x")


def test_bits_dot_and_rotate():
    a, b = Bits.from_string("1101"), Bits.from_string("1011")
    assert a.dot(b) == 0
    assert Bits.from_string("1000").rotate_left(1).to_string() == "0001"


def test_matrix_rank_and_null_space():
    m = BitMatrix.from_strings(["1100", "0110", "1010"])
    assert m.rank() == 2
    ns = m.null_space()
    for r in ns.int_rows:
        assert m.multiply_vector(r) == 0
    assert ns.nrows == 4 - 2


def test_matrix_ragged_rows_rejected():
    with pytest.raises(ValueError):
        BitMatrix.from_strings(["101", "11"])


def test_in_row_space_examples():
    m = BitMatrix.from_strings(["110000", "011000", "000111"])
    assert in_row_space(m, Bits.zeros(6))
    assert in_row_space(m, Bits.from_string("101000"))
    assert not in_row_space(m, Bits.from_string("101001"))
    ident = BitMatrix.identity(5)
    assert in_row_space(ident, Bits.from_string("10111"))
    with pytest.raises(ValueError):
        in_row_space(m, Bits.from_string("11"))


def test_in_row_space_random_sum_of_two_rows():
    rng = random.Random(3)
    rows = ["".join(rng.choice("01") for _ in range(8)) for _ in range(6)]
    m = BitMatrix.from_strings(rows)
    v = Bits.from_string(rows[0]) ^ Bits.from_string(rows[2])
    assert in_row_space(m, v)
    span = _span(m)
    outside = [j for j in range(1, 9) if (v.flip(j).payload not in span)]
    if outside:
        assert not in_row_space(m, v.flip(outside[0]))


def _span(m: BitMatrix) -> set[int]:
    out = set()
    rows = m.int_rows
    for mask in range(1 << len(rows)):
        acc = 0
        for i, r in enumerate(rows):
            if mask >> i & 1:
                acc ^= r
        out.add(acc)
    return out


@given(
    st.integers(1, 9).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.integers(0, (1 << n) - 1), min_size=0, max_size=12),
            st.integers(0, (1 << n) - 1),
        )
    )
)
def test_in_row_space_matches_enumeration(args):
    n, rows, v = args
    m = BitMatrix(n, rows)
    assert in_row_space(m, Bits(n, v)) == (v in _span(m))


@given(st.lists(st.integers(0, 255), min_size=1, max_size=6))
def test_rank_matches_span_size(rows):
    m = BitMatrix(8, rows)
    assert 1 << m.rank() == len(_span(m))


def test_same_row_space_detects_permutation():
    a = BitMatrix.from_strings(["1100", "0011"])
    b = BitMatrix.from_strings(["1111", "1100"])
    assert a.same_row_space(b)
    assert not a.same_row_space(BitMatrix.from_strings(["1010", "0011"]))


def test_echelon_is_deterministic():
    rows = ["1011", "0110", "1101"]
    m = BitMatrix.from_strings(rows)
    assert m.echelon() == BitMatrix.from_strings(rows).echelon()
