"""Flag error-correction and flag operator-measurement protocols as Pauli-frame state machines.

Every run tracks the data error relative to the ideal codeword.  Syndrome
rounds measure the X-type generators (rows of Hx) and then the Z-type
generators (rows of Hz), each through its own circuit.  Measurement outcomes
are bits internally (0 means +1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

from .circuit import FaultEvent, FlagCircuit, build_flag_circuit, build_nonflag_circuit, decompose_operator
from .consecutive import consecutive_set
from .css import CssCode, direct_sum, logical_pattern
from .pauli import Pauli

__all__ = [
    "FaultPlan",
    "ProtocolOptions",
    "ProtocolOutcome",
    "ProtocolError",
    "run_ftec",
    "run_ft_measurement",
    "run_multiblock_measurement",
    "ideal_decode",
    "circuit_for",
    "MAX_ROUNDS",
]

# hard cap on rounds of either kind; a single fault never needs more than 3
MAX_ROUNDS = 3

SYNDROME = "syndrome"
OPERATOR = "operator"


class ProtocolError(RuntimeError):
    """Raised for malformed plans or flag patterns no protocol step covers."""


@dataclass(frozen=True)
class FaultPlan:
    """Faults keyed by ``(stage, round, circuit index)``.

    ``stage`` is ``"syndrome"`` (index = generator, X-type first) or
    ``"operator"`` (index 0).  Rounds count from 1 within each stage.
    """

    events: Mapping[tuple[str, int, int], FaultEvent] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "FaultPlan":
        return cls({})

    @classmethod
    def single(cls, stage: str, round_: int, index: int, event: FaultEvent) -> "FaultPlan":
        return cls({(stage, round_, index): event})

    @property
    def budget(self) -> int:
        return len(self.events)

    def get(self, stage: str, round_: int, index: int) -> FaultEvent | None:
        return self.events.get((stage, round_, index))

    def to_dict(self) -> list[dict]:
        return [
            {"stage": k[0], "round": k[1], "index": k[2], **v.to_dict()}
            for k, v in sorted(self.events.items())
        ]


@dataclass(frozen=True)
class ProtocolOptions:
    """``cap`` bounds minimal-weight corrections (default: the code length).

    ``mutation`` deliberately breaks a step; it exists so verification
    campaigns can prove they detect faulty protocols.  Known values:
    ``"skip-4b-correction"``.
    """

    cap: int | None = None
    tie_break: str = "lex"
    mutation: str | None = None


@dataclass
class ProtocolOutcome:
    branch: str
    corrections: list[Pauli]
    residual: Pauli
    reported_outcome: int | None
    transcript: dict

    def to_dict(self) -> dict:
        return {
            "branch": self.branch,
            "corrections": [c.to_sparse() for c in self.corrections],
            "residual": self.residual.to_sparse(),
            "outcome": self.reported_outcome,
            **self.transcript,
        }


def circuit_for(code: CssCode, op: Pauli, flagged: bool) -> FlagCircuit:
    """Cached circuit measuring ``op`` on ``code`` (sub-blocks respect code blocks)."""
    key = (op.x, op.z, flagged)
    circ = code._circuits.get(key)
    if circ is None:
        d = decompose_operator(op, [(s, length) for s, length, _ in code.blocks])
        circ = build_flag_circuit(d) if flagged else build_nonflag_circuit(d)
        code._circuits[key] = circ
    return circ


def ideal_decode(code: CssCode, e: Pauli, cap: int | None = None, tie_break: str = "lex") -> int:
    """Logical class of ``e`` after fault-free minimal-weight correction.

    The class is the anticommutation pattern against (Z̄_i, X̄_i) pairs.
    """
    sx, sz = code.syndrome_ints(e.x, e.z)
    corr = code.correction_ints(sx, sz, cap if cap is not None else code.n, tie_break)
    return logical_pattern(code, e * corr)


@dataclass
class _Round:
    stage: str
    index: int
    flagged: bool
    sx: int = 0
    sz: int = 0
    bits: list[int] = field(default_factory=list)
    flag_hit: tuple[int, int] | None = None  # (generator, flag mask)

    def to_dict(self, measured: Sequence[int]) -> dict:
        out = {
            "stage": self.stage,
            "round": self.index,
            "flagged": self.flagged,
            "generators": list(measured[: len(self.bits)]),
            "bits": "".join(map(str, self.bits)),
        }
        if self.flag_hit is not None:
            out["flag_hit"] = {"circuit": self.flag_hit[0], "flags": _mask_bits(self.flag_hit[1])}
        return out


def _mask_bits(mask: int) -> list[int]:
    return [j for j in range(mask.bit_length()) if (mask >> j) & 1]


class _Run:
    """Mutable state of one protocol execution."""

    def __init__(self, code: CssCode, error: Pauli, plan: FaultPlan, options: ProtocolOptions):
        if error.n != code.n:
            raise ValueError(f"input error acts on {error.n} qubits, code has {code.n}")
        self.code = code
        self.x, self.z = error.x, error.z
        self.plan = plan
        self.cap = options.cap if options.cap is not None else code.n
        self.tie_break = options.tie_break
        self.mutation = options.mutation
        self.corrections: list[Pauli] = []
        self.rounds: list[dict] = []
        self.counts = {SYNDROME: 0, OPERATOR: 0}
        self.notes: dict = {}
        self.gens = code.generators

    # bookkeeping ------------------------------------------------------
    def apply(self, p: Pauli) -> None:
        if p.is_identity():
            return
        self.corrections.append(p)
        self.x ^= p.x
        self.z ^= p.z

    def emin(self, sx: int, sz: int) -> Pauli:
        return self.code.correction_ints(sx, sz, self.cap, self.tie_break)

    def _fault(self, stage: str, round_: int, index: int, circ: FlagCircuit) -> FaultEvent | None:
        f = self.plan.get(stage, round_, index)
        if f is not None:
            circ.check_fault(f)
        return f

    def _bump(self, kind: str) -> None:
        self.counts[kind] += 1
        if self.counts[kind] > MAX_ROUNDS:
            raise ProtocolError(f"more than {MAX_ROUNDS} {kind} rounds")

    # rounds -----------------------------------------------------------
    def syndrome_round(self, stage: str, index: int, flagged: bool, generators: Sequence[int] | None = None) -> _Round:
        self._bump(SYNDROME)
        code = self.code
        order = list(generators) if generators is not None else list(range(len(self.gens)))
        rnd = _Round(stage, index, flagged)
        sx = sz = 0
        for g in order:
            circ = circuit_for(code, self.gens[g], flagged)
            fault = self._fault(stage, index, g, circ)
            self.x, self.z, bit, flags = circ.run(self.x, self.z, fault)
            rnd.bits.append(bit)
            if g < code.r_x:
                sx |= bit << (code.r_x - 1 - g)
            else:
                sz |= bit << (code.r_z - 1 - (g - code.r_x))
            if flagged and flags:
                rnd.flag_hit = (g, flags)
                break
        rnd.sx, rnd.sz = sx, sz
        self.rounds.append(rnd.to_dict(order))
        return rnd

    def operator_round(self, op: Pauli, index: int, flagged: bool) -> tuple[int, int]:
        self._bump(OPERATOR)
        circ = circuit_for(self.code, op, flagged)
        fault = self._fault(OPERATOR, index, 0, circ)
        self.x, self.z, bit, flags = circ.run(self.x, self.z, fault)
        entry = {"stage": OPERATOR, "round": index, "flagged": flagged, "bits": str(bit)}
        if flags:
            entry["flag_hit"] = {"circuit": 0, "flags": _mask_bits(flags)}
        self.rounds.append(entry)
        return bit, flags

    # consecutive-set lookup ------------------------------------------
    def lookup(self, circ: FlagCircuit, i: int, sx: int, sz: int) -> tuple[Pauli | None, int]:
        """Find the element of the sub-block's consecutive set matching the syndrome."""
        blk = circ.decomposition.block(i)
        seg_start, seg_len = circ.decomposition.segments[blk.segment]
        kind = {"Z": "z", "X": "x", "Y": "product"}[blk.basis]
        n = self.code.n
        hits = []
        for e in _embedded_set(kind, blk.shift, seg_len, seg_start, n):
            ex, ez = self.code.syndrome_ints(e.x, e.z)
            if kind == "z":
                match = ex == sx
            elif kind == "x":
                match = ez == sz
            else:
                match = (ex, ez) == (sx, sz)
            if match:
                hits.append(e)
        self.notes["lookup"] = {
            "sub_block": i,
            "basis": blk.basis,
            "l": blk.shift,
            "segment": blk.segment,
            "matches": len(hits),
        }
        return (hits[0] if hits else None), len(hits)

    def consecutive_correction(self, circ: FlagCircuit, i: int, sx: int, sz: int) -> str:
        """Apply the consecutive-set correction for sub-block ``i``; returns the letter case."""
        basis = circ.decomposition.block(i).basis
        e, _ = self.lookup(circ, i, sx, sz)
        if e is None:
            self.notes["fallback"] = True
            self.apply(self.emin(sx, sz))
        elif basis == "Z":
            self.apply(e)
            self.apply(self.emin(0, sz))
        elif basis == "X":
            self.apply(e)
            self.apply(self.emin(sx, 0))
        else:
            self.apply(e)
        return {"Z": "i", "X": "ii", "Y": "iii"}[basis]

    def outcome(self, branch: str, reported: int | None = None) -> ProtocolOutcome:
        transcript = {
            "rounds": self.rounds,
            "syndrome_rounds": self.counts[SYNDROME],
            "operator_rounds": self.counts[OPERATOR],
        }
        transcript.update(self.notes)
        return ProtocolOutcome(
            branch,
            self.corrections,
            Pauli(self.code.n, self.x, self.z),
            None if reported is None else (1 if reported == 0 else -1),
            transcript,
        )


@lru_cache(maxsize=4096)
def _embedded_set(kind: str, l: int, seg_len: int, seg_start: int, n: int) -> tuple[Pauli, ...]:
    return tuple(e.embed(n, seg_start) for e in consecutive_set(kind, l, seg_len).elements)


def _flag_case(mask: int, m: int) -> tuple[str, int | None]:
    """Classify a flag mask (bit 0 = f0) into ``3``, ``4a``, ``4b`` or ``4c``."""
    f0 = mask & 1
    others = [j for j in range(1, m + 1) if (mask >> j) & 1]
    if mask >> (m + 1):
        raise ProtocolError(f"flag mask {mask:b} names nonexistent flags")
    if not f0:
        return "3", None
    if not others:
        return "4a", None
    if len(others) == 1:
        return "4b", others[0]
    if len(others) == 2 and others[1] == others[0] + 1:
        return "4c", others[0]
    raise ProtocolError(f"flag pattern {_mask_bits(mask)} matches no protocol step")


# ---------------------------------------------------------------------------
# error correction


def _ftec(run: _Run, stage: str) -> tuple[str, int | None]:
    """Shared error-correction logic; returns the branch and, for branch 1, the syndrome."""
    r1 = run.syndrome_round(stage, 1, True)
    if r1.flag_hit:
        return _ftec_flagged(run, stage, 1, r1, None), None
    r2 = run.syndrome_round(stage, 2, True)
    if r2.flag_hit:
        return _ftec_flagged(run, stage, 2, r2, r1), None
    if (r1.sx, r1.sz) == (r2.sx, r2.sz):
        run.apply(run.emin(r1.sx, r1.sz))
        return "1", (r1.sx << run.code.r_z) | r1.sz
    r3 = run.syndrome_round(stage, 3, False)
    run.apply(run.emin(r3.sx, r3.sz))
    return "2", None


def _ftec_flagged(run: _Run, stage: str, r: int, rnd: _Round, prev: _Round | None) -> str:
    g, mask = rnd.flag_hit
    circ = circuit_for(run.code, run.gens[g], True)
    case, i = _flag_case(mask, circ.decomposition.m)
    if case == "3":
        if r == 1:
            nxt = run.syndrome_round(stage, 2, False)
            run.apply(run.emin(nxt.sx, nxt.sz))
        else:
            run.apply(run.emin(prev.sx, prev.sz))
        return "3"
    if case == "4a":
        nxt = run.syndrome_round(stage, r + 1, False)
        run.apply(run.emin(nxt.sx, nxt.sz))
        return "4a"
    if run.mutation != "skip-4b-correction":
        run.apply(circ.decomposition.trailing_correction(i))
    nxt = run.syndrome_round(stage, r + 1, False)
    run.consecutive_correction(circ, i, nxt.sx, nxt.sz)
    return case


def run_ftec(
    code: CssCode,
    input_error: Pauli,
    plan: FaultPlan | None = None,
    options: ProtocolOptions | None = None,
) -> ProtocolOutcome:
    """Flag error correction on ``code`` starting from data error ``input_error``."""
    run = _Run(code, input_error, plan or FaultPlan.empty(), options or ProtocolOptions())
    branch, _ = _ftec(run, SYNDROME)
    return run.outcome(branch)


# ---------------------------------------------------------------------------
# operator measurement


def _check_operator(code: CssCode, op: Pauli) -> None:
    if op.n != code.n:
        raise ValueError(f"operator acts on {op.n} qubits, code has {code.n}")
    if op.is_identity():
        raise ValueError("cannot measure the identity")
    for idx, g in enumerate(code.generators):
        if not op.commutes(g):
            raise ValueError(f"operator anticommutes with generator {idx + 1}")


def _measure(run: _Run, op: Pauli) -> ProtocolOutcome:
    m1, fl1 = run.operator_round(op, 1, True)
    if fl1:
        return _measure_flagged(run, op, 1, fl1, None)
    m2, fl2 = run.operator_round(op, 2, True)
    if fl2:
        return _measure_flagged(run, op, 2, fl2, m1)
    if m1 == m2:
        branch, synd = _ftec(run, SYNDROME)
        if branch == "1" and synd == 0:
            return run.outcome("1a", m1)
        if branch == "1":
            m3, _ = run.operator_round(op, 3, False)
            return run.outcome("1c", m3)
        run.notes["ftec_branch"] = branch
        return run.outcome("1b", m1)
    rnd = run.syndrome_round(SYNDROME, 1, False)
    run.apply(run.emin(rnd.sx, rnd.sz))
    m3, _ = run.operator_round(op, 3, False)
    return run.outcome("2", m3)


def _measure_flagged(run: _Run, op: Pauli, r1: int, mask: int, m_prev: int | None) -> ProtocolOutcome:
    code = run.code
    circ = circuit_for(code, op, True)
    case, i = _flag_case(mask, circ.decomposition.m)
    if case == "3":
        if r1 == 1:
            m, _ = run.operator_round(op, 2, False)
            return run.outcome("3", m)
        return run.outcome("3", m_prev)
    if case == "4a":
        m, _ = run.operator_round(op, r1 + 1, False)
        return run.outcome("4a", m)
    d = circ.decomposition
    if run.mutation != "skip-4b-correction":
        run.apply(d.trailing_correction(i))
    seg = d.block(i).segment
    xs, zs = code.generator_rows_of_block(seg)
    rnd = run.syndrome_round(SYNDROME, 1, False, xs + zs)
    letter = run.consecutive_correction(circ, i, rnd.sx, rnd.sz)
    m, _ = run.operator_round(op, r1 + 1, False)
    branch = f"4b-{letter}" if case == "4b" else "4c"
    if case == "4c":
        run.notes["sub_case"] = letter
    return run.outcome(branch, m)


def run_ft_measurement(
    code: CssCode,
    p: Pauli,
    input_error: Pauli,
    plan: FaultPlan | None = None,
    options: ProtocolOptions | None = None,
) -> ProtocolOutcome:
    """Flag measurement of ``p`` on a +1 eigenstate of ``p`` carrying ``input_error``."""
    _check_operator(code, p)
    run = _Run(code, input_error, plan or FaultPlan.empty(), options or ProtocolOptions())
    return _measure(run, p)


@lru_cache(maxsize=64)
def _combined(codes: tuple[CssCode, ...]) -> CssCode:
    return direct_sum(codes)


def combined_code(codes: Sequence[CssCode]) -> CssCode:
    """Direct sum used for multi-block measurement (cached per code tuple)."""
    return _combined(tuple(codes))


def run_multiblock_measurement(
    codes: Sequence[CssCode],
    parts: Sequence[Pauli],
    input_errors: Sequence[Pauli] | None = None,
    plan: FaultPlan | None = None,
    options: ProtocolOptions | None = None,
) -> ProtocolOutcome:
    """Measure ``parts[0] ⊗ parts[1] ⊗ ...`` across several code blocks.

    Each block's part becomes its own group of sub-blocks; after a 4(b)/4(c)
    event only the implicated block's generators are measured.
    """
    if len(codes) < 2 or len(codes) != len(parts):
        raise ValueError("need one part per code and at least two blocks")
    for c, part in zip(codes, parts):
        if part.n != c.n:
            raise ValueError("part size does not match its code")
        if any(not part.commutes(g) for g in c.generators):
            raise ValueError("a part anticommutes with its block's generators")
    code = combined_code(codes)
    op = parts[0]
    for part in parts[1:]:
        op = op.tensor(part)
    if input_errors is None:
        err = Pauli.identity(code.n)
    else:
        if len(input_errors) != len(codes):
            raise ValueError("need one input error per block")
        err = input_errors[0]
        for e in input_errors[1:]:
            err = err.tensor(e)
    return run_ft_measurement(code, op, err, plan, options)
