"""Exhaustive single-fault verification campaigns and fault-table reproduction."""

from __future__ import annotations

import json
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .circuit import FaultEvent, FlagCircuit, enumerate_faults
from .css import CorrectionCapExceeded, CssCode, in_stabilizer_group, logical_pattern
from .pauli import Pauli
from .protocols import (
    OPERATOR,
    SYNDROME,
    FaultPlan,
    ProtocolError,
    ProtocolOptions,
    circuit_for,
    ideal_decode,
    run_ft_measurement,
    run_ftec,
)

__all__ = [
    "CampaignResult",
    "FaultTables",
    "TABLE_FTEC",
    "TABLE_MEASUREMENT",
    "verify_def4",
    "verify_def9",
    "reproduce_fault_tables",
    "render_tables",
    "table_row",
]

MAX_RECORDED_FAILURES = 200

# expected procedure sets per fault class
TABLE_FTEC: dict[str, tuple[str, frozenset[str]]] = {
    "none": ("No fault", frozenset({"1"})),
    "m0": ("Qubit or measurement fault on m0", frozenset({"1", "2"})),
    "f0": ("Qubit or measurement fault on f0", frozenset({"1", "4a"})),
    "fi": ("Qubit or measurement fault on f_i", frozenset({"1", "3"})),
    "red-IX": ("Red coupling, I or X on target", frozenset({"2"})),
    "red-YZ": ("Red coupling, Y or Z on target", frozenset({"4b"})),
    "bg-IX": ("Blue/green coupling, I or X on target", frozenset({"1", "2", "3"})),
    "bg-YZ": ("Blue/green coupling, Y or Z on target", frozenset({"4b", "4c"})),
    "orange-IX": ("Orange coupling, I or X on target", frozenset({"1", "2", "4a"})),
    "orange-YZ": ("Orange coupling, Y or Z on target", frozenset({"2", "4a"})),
}

TABLE_MEASUREMENT: dict[str, tuple[str, frozenset[str]]] = {
    "none": ("No input error, no fault", frozenset({"1a"})),
    "syndrome-fault": ("No input error, one fault during syndrome measurement", frozenset({"1b", "1c"})),
    "input-w1": ("Weight-1 input error, no fault", frozenset({"1c"})),
    "m0": ("Qubit or measurement fault on m0", frozenset({"2"})),
    "f0": ("Qubit or measurement fault on f0", frozenset({"4a"})),
    "fi": ("Qubit or measurement fault on f_i", frozenset({"3"})),
    "red-IX": ("Red coupling, I or X on target", frozenset({"2"})),
    "red-YZ": ("Red coupling, Y or Z on target", frozenset({"4b"})),
    "bg-IX": ("Blue/green coupling, I or X on target", frozenset({"1a", "2", "3"})),
    "bg-YZ": ("Blue/green coupling, Y or Z on target", frozenset({"4b", "4c"})),
    "orange-IX": ("Orange coupling, I or X on target", frozenset({"1a", "2", "4a"})),
    "orange-YZ": ("Orange coupling, Y or Z on target", frozenset({"2", "4a"})),
}


def _color_row(color: str, target: str) -> str:
    group = "IX" if target in "IX" else "YZ"
    prefix = "bg" if color in ("blue", "green") else color
    return f"{prefix}-{group}"


def _wire_row(wire: str) -> str:
    return wire if wire in ("m0", "f0") else "fi"


def table_row(circuit: FlagCircuit, fault: FaultEvent, code: CssCode | None = None, eigen: Pauli | None = None) -> str:
    """Fault class of a single fault in a flagged circuit.

    Idle faults inside a wire's coupling window are classed as the coupling
    fault they are equivalent to: on m0, as a target error at the preceding
    coupling; on a flag wire, as a control error at its opening coupling.
    A fault that leaves readout and flags untouched and whose data error acts
    trivially is indistinguishable from no fault and is classed as
    ``"none"``. Given ``code``, data errors in its stabilizer group count as
    trivial, and so do their products with ``eigen`` (the measured operator,
    whose +1 eigenstate the campaign prepares).
    """
    dx, dz, flip, flags = circuit.effect(fault)
    if not flip and not flags:
        if dx == dz == 0:
            return "none"
        if code is not None:
            err = Pauli(code.n, dx, dz)
            if in_stabilizer_group(code, err) or (eigen is not None and in_stabilizer_group(code, err * eigen)):
                return "none"
    loc = circuit.locations[fault.location]
    if fault.kind == "coupling":
        return _color_row(loc.color, fault.error[1])
    if fault.kind in ("prep", "measure"):
        return _wire_row(fault.wire)
    win = circuit.coupling_window(fault.wire)
    if win is not None and win[0] <= fault.location < win[1]:
        if fault.wire == "m0":
            return _color_row(loc.color, fault.error)
        opening = circuit.locations[win[0]]
        return _color_row(opening.color, "I")
    return _wire_row(fault.wire)


def _normalize_branch(branch: str) -> str:
    return "4b" if branch.startswith("4b") else branch


@dataclass
class CampaignResult:
    code: str
    protocol: str
    operator: str | None = None
    cases: int = 0
    passes: int = 0
    failures: list[dict] = field(default_factory=list)
    failure_count: int = 0
    table: dict[str, set[str]] = field(default_factory=lambda: defaultdict(set))
    branches: dict[str, int] = field(default_factory=lambda: defaultdict(int))
    max_rounds: dict[str, int] = field(default_factory=lambda: {SYNDROME: 0, OPERATOR: 0})
    lookup_matches: dict[str, int] = field(default_factory=lambda: defaultdict(int))
    samples: int = 0
    seed: int = 0
    tie_break: str = "lex"
    mutation: str | None = None

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def record(self, ok: bool, weight: int, failure: dict | None = None) -> None:
        self.cases += weight
        if ok:
            self.passes += weight
        else:
            self.failure_count += weight
            if failure is not None and len(self.failures) < MAX_RECORDED_FAILURES:
                self.failures.append(failure)

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "protocol": self.protocol,
            "operator": self.operator,
            "seed": self.seed,
            "samples": self.samples,
            "tie_break": self.tie_break,
            "mutation": self.mutation,
            "totals": {"cases": self.cases, "passes": self.passes, "failures": self.failure_count},
            "passed": self.passed,
            "branches": dict(sorted(self.branches.items())),
            "max_rounds": dict(sorted(self.max_rounds.items())),
            "lookup_matches": dict(sorted(self.lookup_matches.items())),
            "table": {k: sorted(v) for k, v in sorted(self.table.items())},
            "failures": self.failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# shared machinery


class _Checker:
    def __init__(self, code: CssCode, op: Pauli | None, options: ProtocolOptions):
        self.code = code
        self.op = op
        self.options = options
        n = code.n
        self.single_syndromes = {
            code.syndrome_ints(p.x, p.z)
            for q in range(1, n + 1)
            for p in (Pauli.single(n, q, c) for c in "XYZ")
        }
        self.op_pattern = logical_pattern(code, op) if op is not None else 0

    def run(self, error: Pauli, plan: FaultPlan):
        if self.op is None:
            return run_ftec(self.code, error, plan, self.options)
        return run_ft_measurement(self.code, self.op, error, plan, self.options)

    def within(self, residual: Pauli, v: int) -> bool:
        s = self.code.syndrome_ints(residual.x, residual.z)
        if s == (0, 0):
            return True
        return v >= 1 and s in self.single_syndromes

    def evaluate(self, error: Pauli, plan: FaultPlan, check_cond1: bool, bound: int) -> tuple[bool, dict]:
        """Run one case; returns (ok, info)."""
        try:
            out = self.run(error, plan)
        except (ProtocolError, CorrectionCapExceeded) as exc:
            return False, {"violated": "exception", "detail": str(exc), "branch": None}
        info = {
            "branch": out.branch,
            "residual": out.residual.to_sparse(),
            "rounds": (out.transcript["syndrome_rounds"], out.transcript["operator_rounds"]),
            "lookup": out.transcript.get("lookup"),
        }
        violated = []
        if check_cond1:
            want = ideal_decode(self.code, error, tie_break=self.options.tie_break)
            got = ideal_decode(self.code, out.residual, tie_break=self.options.tie_break)
            if got != want and got != want ^ self.op_pattern:
                violated.append("condition1")
            if self.op is not None and out.reported_outcome != 1:
                violated.append("outcome")
        if not self.within(out.residual, bound):
            violated.append("condition2")
        if violated:
            info["violated"] = ",".join(violated)
        return not violated, info


def _fault_slots(code: CssCode, op: Pauli | None) -> list[tuple[str, int, int, FlagCircuit]]:
    slots = []
    if op is not None:
        circ = circuit_for(code, op, True)
        slots += [(OPERATOR, r, 0, circ) for r in (1, 2)]
    for r in (1, 2):
        for g, gen in enumerate(code.generators):
            slots.append((SYNDROME, r, g, circuit_for(code, gen, True)))
    return slots


def _grouped(circ: FlagCircuit) -> list[list[FaultEvent]]:
    groups: dict[tuple, list[FaultEvent]] = {}
    for f in enumerate_faults(circ):
        groups.setdefault(circ.effect(f), []).append(f)
    return list(groups.values())


_WORKER: dict = {}


def _init_worker(code: CssCode, op: Pauli | None, options: ProtocolOptions) -> None:
    _WORKER["checker"] = _Checker(code, op, options)


def _slot_records(checker: _Checker, stage: str, r: int, g: int) -> list[tuple]:
    code, op = checker.code, checker.op
    gen = op if stage == OPERATOR else code.generators[g]
    circ = circuit_for(code, gen, True)
    ident = Pauli.identity(code.n)
    out = []
    for group in _grouped(circ):
        plan = FaultPlan.single(stage, r, g, group[0])
        ok, info = checker.evaluate(ident, plan, True, 1)
        rows = [table_row(circ, f, code, op if stage == OPERATOR else None) for f in group]
        out.append((ok, info, [f.to_dict() for f in group], rows))
    return out


def _slot_job(args: tuple[str, int, int]) -> list[tuple]:
    return _slot_records(_WORKER["checker"], *args)


def _absorb(result: CampaignResult, ok: bool, info: dict, weight: int, row: str | None, case: dict) -> None:
    branch = info.get("branch")
    if branch is not None:
        result.branches[branch] += weight
        s_rounds, o_rounds = info["rounds"]
        result.max_rounds[SYNDROME] = max(result.max_rounds[SYNDROME], s_rounds)
        result.max_rounds[OPERATOR] = max(result.max_rounds[OPERATOR], o_rounds)
        if info.get("lookup") is not None and case.get("faults") and case.get("input", "") == "":
            result.lookup_matches[str(info["lookup"]["matches"])] += weight
    if row is not None and branch is not None:
        result.table[row].add(_normalize_branch(branch))
    failure = None
    if not ok:
        failure = {**case, **{k: v for k, v in info.items() if k != "lookup"}}
        if "rounds" in failure:
            failure["rounds"] = list(failure["rounds"])
    result.record(ok, weight, failure)


def _campaign(
    code: CssCode,
    op: Pauli | None,
    samples: int,
    seed: int,
    options: ProtocolOptions,
    jobs: int,
) -> CampaignResult:
    checker = _Checker(code, op, options)
    result = CampaignResult(
        code.name,
        "ftec" if op is None else "measure",
        None if op is None else op.to_sparse(),
        samples=samples,
        seed=seed,
        tie_break=options.tie_break,
        mutation=options.mutation,
    )
    n = code.n
    ident = Pauli.identity(n)
    empty = FaultPlan.empty()

    ok, info = checker.evaluate(ident, empty, True, 0)
    _absorb(result, ok, info, 1, "none", {"input": "", "faults": []})

    for q in range(1, n + 1):
        for c in "XYZ":
            e = Pauli.single(n, q, c)
            ok, info = checker.evaluate(e, empty, True, 1)
            row = "input-w1" if op is not None else None
            _absorb(result, ok, info, 1, row, {"input": e.to_sparse(), "faults": []})

    slots = _fault_slots(code, op)
    keys = [(stage, r, g) for stage, r, g, _ in slots]
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(code, op, options)) as pool:
            per_slot = list(pool.map(_slot_job, keys))
    else:
        per_slot = [_slot_records(checker, *k) for k in keys]
    for (stage, r, g), records in zip(keys, per_slot):
        for ok, info, faults, rows in records:
            case = {"input": "", "stage": stage, "round": r, "index": g, "faults": faults[:1]}
            if stage == SYNDROME and op is not None:
                rows = [r if r == "none" else "syndrome-fault" for r in rows]
            for row in sorted(set(rows)):
                weight = rows.count(row)
                _absorb(result, ok, info, weight, row, case)

    if samples and op is None:
        rng = random.Random(seed)
        flat = [(stage, r, g, f) for stage, r, g, circ in slots for f in enumerate_faults(circ)]
        for _ in range(samples):
            w = rng.randint(2, n)
            qubits = rng.sample(range(1, n + 1), w)
            e = Pauli.identity(n)
            for q in qubits:
                e = e * Pauli.single(n, q, rng.choice("XYZ"))
            if rng.random() < 0.5:
                plan, v, faults = empty, 0, []
            else:
                stage, r, g, f = flat[rng.randrange(len(flat))]
                plan, v, faults = FaultPlan.single(stage, r, g, f), 1, [{"stage": stage, "round": r, "index": g, **f.to_dict()}]
            ok, info = checker.evaluate(e, plan, False, v)
            _absorb(result, ok, info, 1, None, {"input": e.to_sparse(), "faults": faults, "sampled": True})
    return result


def verify_def4(
    code: CssCode,
    samples: int = 1000,
    seed: int = 0,
    options: ProtocolOptions | None = None,
    jobs: int = 1,
) -> CampaignResult:
    """Fault-tolerant error correction campaign.

    Exhaustive over every input error of weight <= 1 and every single fault
    in syndrome rounds 1 and 2 (faults with identical effect are evaluated
    once and counted with multiplicity), plus ``samples`` seeded cases with
    higher-weight inputs that only check the weight bound.
    """
    return _campaign(code, None, samples, seed, options or ProtocolOptions(), jobs)


def verify_def9(
    code: CssCode,
    op: Pauli,
    options: ProtocolOptions | None = None,
    jobs: int = 1,
) -> CampaignResult:
    """Fault-tolerant measurement campaign for the logical operator ``op``.

    Covers operator rounds 1-2 and syndrome rounds 1-2. The reported outcome
    must be +1 and the decoded residual must equal the decoded input up to
    the class of ``op`` (the state is projected onto an eigenstate). The
    weight bound only applies when input weight plus faults is at most one,
    so there is no high-weight sampling here.
    """
    return _campaign(code, op, 0, 0, options or ProtocolOptions(), jobs)


@dataclass
class FaultTables:
    ftec: dict[str, set[str]]
    measurement: dict[str, set[str]]

    def _rows(self, observed: dict[str, set[str]], spec: dict) -> list[dict]:
        out = []
        for key, (label, expected) in spec.items():
            seen = observed.get(key, set())
            out.append(
                {
                    "row": key,
                    "label": label,
                    "expected": sorted(expected),
                    "observed": sorted(seen),
                    "subset": seen <= expected,
                    "exercised": bool(seen),
                    "extra": sorted(seen - expected),
                }
            )
        return out

    def rows(self) -> dict[str, list[dict]]:
        return {
            "ftec": self._rows(self.ftec, TABLE_FTEC),
            "measurement": self._rows(self.measurement, TABLE_MEASUREMENT),
        }

    @property
    def passed(self) -> bool:
        return all(r["subset"] for rows in self.rows().values() for r in rows)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "tables": self.rows()}

    @classmethod
    def from_campaigns(cls, ftec: Sequence[CampaignResult], measurement: Sequence[CampaignResult]) -> "FaultTables":
        """Merge the per-class branch sets of finished campaigns."""
        merged = []
        for results in (ftec, measurement):
            acc: dict[str, set[str]] = defaultdict(set)
            for res in results:
                for k, v in res.table.items():
                    acc[k] |= v
            merged.append(dict(acc))
        return cls(*merged)


def reproduce_fault_tables(
    codes: Sequence[CssCode],
    operators: Sequence[tuple[CssCode, Pauli]] = (),
    options: ProtocolOptions | None = None,
) -> FaultTables:
    """Collect the procedures reached by each fault class.

    FTEC rows come from the campaigns on ``codes``; measurement rows from the
    campaigns for each ``(code, operator)`` pair.
    """
    options = options or ProtocolOptions()
    return FaultTables.from_campaigns(
        [verify_def4(code, samples=0, options=options) for code in codes],
        [verify_def9(code, op, options=options) for code, op in operators],
    )


def render_tables(tables: FaultTables) -> str:
    """Plain-text rendering, one line per fault class."""
    lines = []
    titles = {"ftec": "Error correction", "measurement": "Operator measurement"}
    for name, rows in tables.rows().items():
        lines.append(f"== {titles[name]} ==")
        width = max(len(r["label"]) for r in rows)
        for r in rows:
            mark = "ok" if r["subset"] else "MISMATCH"
            if not r["exercised"]:
                mark = "not exercised"
            obs = ",".join(r["observed"]) or "-"
            lines.append(f"{r['label']:<{width}}  expected {{{','.join(r['expected'])}}}  observed {{{obs}}}  {mark}")
        lines.append("")
    return "\n".join(lines)
