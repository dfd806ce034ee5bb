import itertools

import pytest

from conftest import GOLDEN
from flagqec.circuit import (
    TWO_QUBIT_ERRORS,
    FaultEvent,
    build_flag_circuit,
    build_nonflag_circuit,
    classify_fault_effect,
    decompose_multiblock,
    decompose_operator,
    enumerate_faults,
    mutate_schedule,
    parse_dump,
    propagate,
    t_flag_violations,
    verify_claim1,
    verify_t_flag,
)
from flagqec.consecutive import consecutive_set
from flagqec.pauli import Pauli, paulis_of_weight


def loc_index(circ, text):
    return next(i for i, loc in enumerate(circ.locations) if loc.text() == text)


def test_decompose_examples():
    assert decompose_operator(Pauli.from_dense("ZZIZ")).summary() == [("Z", 2, 1), ("Z", 1, 0)]
    assert decompose_operator(Pauli.from_dense("Z" * 7)).summary() == [("Z", 7, 0)]
    assert decompose_operator(Pauli.from_dense("XXYY")).summary() == [("X", 2, 0), ("Y", 2, 0)]
    with pytest.raises(ValueError):
        decompose_operator(Pauli.identity(4))


def test_decompose_folds_leading_gap_and_reconstructs():
    p = Pauli.from_dense("IIZZIXI")
    d = decompose_operator(p)
    assert d.summary() == [("Z", 2, 1), ("X", 1, 3)]
    assert d.offset == 2
    assert d.to_pauli() == p
    assert sum(a + b for _, a, b in d.summary()) == 7
    assert [blk.c for blk in d.blocks] == [3, 7]


def test_decompose_multiblock_splits_at_boundary():
    d = decompose_multiblock([Pauli.from_dense("IIX"), Pauli.from_dense("XII")])
    assert [(b.basis, b.a, b.segment) for b in d.blocks] == [("X", 1, 0), ("X", 1, 1)]


def hand_schedule(blocks):
    """Expected flag schedule written out directly from the sub-block list."""
    m = len(blocks)
    out = ["PREP m0 Z"] + [f"PREP f{j} X" for j in range(m + 1)] + ["OPEN f0"]
    for i, (basis, qubits) in enumerate(blocks, start=1):
        out.append(f"OPEN f{i}")
        if i > 1:
            out.append(f"CLOSE f{i - 1}")
        out += [f"CPL q{q} {basis}" for q in qubits]
    out += [f"CLOSE f{m}", "CLOSE f0", "MEAS m0 Z"] + [f"MEAS f{j} X" for j in range(m + 1)]
    return "\n".join(out) + "\n"


def test_golden_dump_steane_generator_one(steane):
    circ = build_flag_circuit(decompose_operator(steane.generators[0]))
    golden = (GOLDEN / "steane_g1_flag.txt").read_text()
    assert circ.dump() == golden
    assert golden == hand_schedule([("X", [1, 2, 3]), ("X", [5])])


def test_golden_dump_nonflag(steane):
    circ = build_nonflag_circuit(steane.generators[0])
    assert circ.dump() == (GOLDEN / "steane_g1_noflag.txt").read_text()
    assert len(circ.locations) == 6


def test_single_block_schedule():
    circ = build_flag_circuit(decompose_operator(Pauli.from_dense("ZZZ")))
    assert circ.dump() == hand_schedule([("Z", [1, 2, 3])])
    assert [loc.kind for loc in circ.locations[:3]] == ["PREP"] * 3


def test_parse_dump_round_trip(steane):
    d = decompose_operator(steane.generators[3])
    circ = build_flag_circuit(d)
    assert parse_dump(circ.dump(), d).dump() == circ.dump()
    with pytest.raises(ValueError, match="line 1"):
        parse_dump("BOGUS x\n", d)


def test_ancilla_counts():
    circ = build_flag_circuit(decompose_operator(Pauli.from_dense("ZIZIZIZIZ")))
    assert circ.decomposition.m == 5
    assert circ.ancilla_count == 5 + 2
    assert circ.physical_ancilla_count == 4
    assert build_flag_circuit(decompose_operator(Pauli.from_dense("ZZ"))).physical_ancilla_count == 3


def test_nonflag_has_no_flag_wires():
    circ = build_nonflag_circuit(Pauli.from_dense("ZZZ"))
    assert len(circ.locations) == 5 and circ.ancilla_count == 1
    assert all(loc.basis == "X" for loc in build_nonflag_circuit(Pauli.from_dense("XXXIXII")).locations if loc.kind == "CPL")


def test_fault_free_completeness(steane, code30):
    for code in (steane, code30):
        n = code.n
        inputs = list(itertools.islice(itertools.chain(paulis_of_weight(n, 1), paulis_of_weight(n, 2)), 300))
        for g in code.generators:
            circ = build_flag_circuit(decompose_operator(g))
            for e in inputs:
                run = propagate(circ, e)
                assert not run.flagged
                assert run.m0_flip == (0 if e.commutes(g) else 1)
                assert run.residual == e


def test_z_on_m0_inside_block(steane):
    circ = build_flag_circuit(decompose_operator(steane.generators[3]))  # Z1 Z2 Z3 Z5
    run = propagate(circ, Pauli.identity(7), [FaultEvent(loc_index(circ, "CPL q2 Z"), "coupling", "IZ")])
    assert run.residual == Pauli.from_sparse("Z3 Z5", 7)
    assert run.flag_set() == {0, 1}


def test_zz_equals_prior_iz(steane):
    circ = build_flag_circuit(decompose_operator(steane.generators[3]))
    a = propagate(circ, Pauli.identity(7), [FaultEvent(loc_index(circ, "CPL q2 Z"), "coupling", "ZZ")])
    b = propagate(circ, Pauli.identity(7), [FaultEvent(loc_index(circ, "CPL q1 Z"), "coupling", "IZ")])
    assert a == b


def test_classify_examples(steane):
    circ = build_flag_circuit(decompose_operator(steane.generators[3]))
    i = loc_index(circ, "CPL q2 Z")
    assert classify_fault_effect(circ, FaultEvent(i, "coupling", "IX")) == "a"
    assert classify_fault_effect(circ, FaultEvent(i, "coupling", "IZ")) == "b"
    assert propagate(circ, Pauli.identity(7), [FaultEvent(i, "coupling", "IZ")]).flagged
    assert classify_fault_effect(circ, FaultEvent(i, "coupling", "XY")) == "c"
    with pytest.raises(ValueError):
        classify_fault_effect(circ, FaultEvent(0, "prep", "X", "m0"))


def test_invalid_faults_rejected(steane):
    circ = build_flag_circuit(decompose_operator(steane.generators[0]))
    for bad in (
        FaultEvent(999, "coupling", "IZ"),
        FaultEvent(0, "coupling", "IZ"),
        FaultEvent(6, "coupling", "II"),
        FaultEvent(0, "prep", "X", "f0"),
        FaultEvent(0, "idle", "Z", "q1"),
        FaultEvent(0, "teleport", "Z"),
    ):
        with pytest.raises(ValueError):
            propagate(circ, Pauli.identity(7), [bad])


def test_fault_enumeration_counts(steane):
    circ = build_flag_circuit(decompose_operator(steane.generators[0]))
    faults = enumerate_faults(circ)
    couplings = sum(loc.is_coupling for loc in circ.locations)
    assert sum(f.kind == "coupling" for f in faults) == couplings * len(TWO_QUBIT_ERRORS) == couplings * 15
    assert sum(f.kind == "prep" for f in faults) == 4
    assert sum(f.kind == "measure" for f in faults) == 4
    assert len(set(faults)) == len(faults)


def test_claim1_steane(steane):
    for g in steane.generators:
        rep = verify_claim1(steane, g)
        assert rep.passed, rep.violations[:3]
        assert rep.cases > 100


def test_claim1_code30(code30_literal):
    for g in code30_literal.generators:
        assert verify_claim1(code30_literal, g).passed


def test_claim1_rejects_non_commuting(steane):
    with pytest.raises(ValueError):
        verify_claim1(steane, Pauli.single(7, 1, "X"))


def test_claim1_catches_every_schedule_swap(steane):
    for g in steane.generators:
        circ = build_flag_circuit(decompose_operator(g))
        for seed in range(6):
            mutated, _ = mutate_schedule(circ, seed)
            assert not verify_claim1(steane, g, mutated).passed


def test_t_flag(steane):
    for g in steane.generators:
        d = decompose_operator(g)
        assert verify_t_flag(steane, build_flag_circuit(d))
        bad = t_flag_violations(steane, build_nonflag_circuit(d))
        assert bad and not verify_t_flag(steane, build_nonflag_circuit(d))
    # a single coupling cannot spread anything
    single = decompose_operator(Pauli.single(7, 3, "Z"))
    assert verify_t_flag(steane, build_flag_circuit(single))
    assert verify_t_flag(steane, build_nonflag_circuit(single))


def _residual_in_consecutive_set(residual, blk, n):
    kind = {"X": "x", "Z": "z", "Y": "product"}[blk.basis]
    cands = consecutive_set(kind, blk.shift, n).elements
    if blk.basis == "Y":
        cands = [e for e in cands if e.x == e.z]
    return any((residual * e).weight() <= 1 for e in cands)


def test_red_faults_leave_consecutive_errors(steane, code30_literal):
    """After the trailing correction, a flagged red fault leaves a shifted suffix times one qubit."""
    for code in (steane, code30_literal):
        ops = list(code.generators) + [lx for lx, _ in code.logical_basis()[:3]]
        ops.append(code.logical_basis()[0][0] * code.logical_basis()[0][1])
        for op in ops:
            d = decompose_operator(op)
            circ = build_flag_circuit(d)
            for f in enumerate_faults(circ):
                loc = circ.locations[f.location]
                if f.kind != "coupling" or loc.kind != "CPL":
                    continue
                run = propagate(circ, Pauli.identity(code.n), [f])
                i = loc.block
                if run.flag_set() != {0, i}:
                    continue
                fixed = run.residual * d.trailing_correction(i)
                assert _residual_in_consecutive_set(fixed, d.block(i), code.n), (op, f)
