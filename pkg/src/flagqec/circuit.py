"""One-flag measurement circuits, Pauli-frame propagation and single-fault analysis.

A measured operator ``P`` is split into sub-blocks (maximal runs of one
Pauli letter).  The flagged circuit couples every support qubit of ``P`` to
the measurement ancilla ``m0`` and brackets each sub-block with flag wires:
``f0`` is open for the whole circuit and ``f_i`` is open around sub-block ``i``
with its window overlapping the neighbours' only at flag couplings.

Locations are numbered from 0 in schedule order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .css import CssCode
from .gf2 import BitMatrix
from .pauli import Pauli

__all__ = [
    "SubBlock",
    "SubBlockDecomposition",
    "Location",
    "FlagCircuit",
    "FaultEvent",
    "CircuitRun",
    "Claim1Report",
    "decompose_operator",
    "decompose_multiblock",
    "build_flag_circuit",
    "build_nonflag_circuit",
    "propagate",
    "enumerate_faults",
    "classify_fault_effect",
    "verify_claim1",
    "verify_t_flag",
    "t_flag_violations",
    "parse_dump",
    "mutate_schedule",
]

_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_LETTERS = "IXYZ"
TWO_QUBIT_ERRORS = tuple(a + b for a in _LETTERS for b in _LETTERS if a + b != "II")


# ---------------------------------------------------------------------------
# sub-block decomposition


@dataclass(frozen=True)
class SubBlock:
    """A run ``basis^a`` starting at qubit ``start``, followed by ``b`` identities.

    ``c`` is the running total of ``a + b`` up to and including this block.
    ``shift`` is the consecutive-set offset ``l`` for a run ending here,
    counted inside the block's code segment.
    """

    basis: str
    a: int
    b: int
    start: int
    c: int
    segment: int = 0
    shift: int = 0

    @property
    def end(self) -> int:
        return self.start + self.a - 1

    @property
    def qubits(self) -> range:
        return range(self.start, self.start + self.a)


@dataclass(frozen=True)
class SubBlockDecomposition:
    n: int
    blocks: tuple[SubBlock, ...]
    offset: int = 0
    segments: tuple[tuple[int, int], ...] = ()

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block(self, i: int) -> SubBlock:
        """1-based sub-block access."""
        if not 1 <= i <= self.m:
            raise IndexError(f"sub-block {i} outside 1..{self.m}")
        return self.blocks[i - 1]

    def to_pauli(self) -> Pauli:
        p = Pauli.identity(self.n)
        for blk in self.blocks:
            p = p * Pauli.from_support(self.n, blk.qubits, blk.basis)
        return p

    def trailing_correction(self, i: int) -> Pauli:
        """``P_j`` on every qubit of every sub-block after ``i``."""
        p = Pauli.identity(self.n)
        for blk in self.blocks[i:]:
            p = p * Pauli.from_support(self.n, blk.qubits, blk.basis)
        return p

    def summary(self) -> list[tuple[str, int, int]]:
        return [(b.basis, b.a, b.b) for b in self.blocks]


def _runs(p: Pauli, boundaries: set[int]) -> list[tuple[str, int, int]]:
    runs: list[tuple[str, int, int]] = []
    for q in range(1, p.n + 1):
        letter = p[q]
        if letter == "I":
            continue
        if runs and runs[-1][0] == letter and runs[-1][1] + runs[-1][2] == q and q not in boundaries:
            basis, start, a = runs[-1]
            runs[-1] = (basis, start, a + 1)
        else:
            runs.append((letter, q, 1))
    return runs


def decompose_operator(p: Pauli, segments: Sequence[tuple[int, int]] | None = None) -> SubBlockDecomposition:
    """Maximal-run decomposition of ``p``.

    ``segments`` lists ``(start, length)`` code blocks for operators on
    several code blocks; runs never cross a segment boundary.  A leading
    identity run is folded into the last gap ``b_m``.
    """
    if p.is_identity():
        raise ValueError("cannot decompose the identity operator")
    n = p.n
    segs = tuple(segments) if segments else ((1, n),)
    if sum(length for _, length in segs) != n:
        raise ValueError("segments do not tile the register")
    boundaries = {start for start, _ in segs}
    runs = _runs(p, boundaries)
    out: list[SubBlock] = []
    total = 0
    for idx, (basis, start, a) in enumerate(runs):
        end = start + a - 1
        nxt = runs[idx + 1][1] if idx + 1 < len(runs) else n + runs[0][1]
        b = nxt - end - 1
        total += a + b
        seg = next(k for k, (s, length) in enumerate(segs) if s <= start < s + length)
        s0, length = segs[seg]
        shift = (length - (end - s0 + 1)) % length
        out.append(SubBlock(basis, a, b, start, total, seg, shift))
    return SubBlockDecomposition(n, tuple(out), runs[0][1] - 1, segs)


def decompose_multiblock(parts: Sequence[Pauli]) -> SubBlockDecomposition:
    """Decompose ``parts[0] ⊗ parts[1] ⊗ ...`` treating each part as its own segment."""
    if not parts:
        raise ValueError("no parts given")
    full = parts[0]
    segs = [(1, parts[0].n)]
    for part in parts[1:]:
        segs.append((full.n + 1, part.n))
        full = full.tensor(part)
    return decompose_operator(full, segs)


# ---------------------------------------------------------------------------
# circuits


@dataclass(frozen=True)
class Location:
    """One circuit step.

    ``kind`` is PREP, OPEN, CLOSE, CPL or MEAS.  OPEN/CLOSE are flag
    couplings (control ``wire``, target m0); CPL couples data ``qubit`` to m0
    in ``basis``.
    """

    kind: str
    wire: str
    basis: str | None = None
    qubit: int | None = None
    block: int | None = None

    def text(self) -> str:
        if self.kind == "CPL":
            return f"CPL q{self.qubit} {self.basis}"
        if self.kind in ("OPEN", "CLOSE"):
            return f"{self.kind} {self.wire}"
        return f"{self.kind} {self.wire} {self.basis}"

    @property
    def is_coupling(self) -> bool:
        return self.kind in ("CPL", "OPEN", "CLOSE")

    @property
    def color(self) -> str | None:
        """Gate colour used in the fault tables (red/orange/blue/green)."""
        if self.kind == "CPL":
            return "red"
        if self.kind in ("OPEN", "CLOSE"):
            j = int(self.wire[1:])
            if j == 0:
                return "orange"
            return "blue" if j % 2 else "green"
        return None


@dataclass(frozen=True, order=True)
class FaultEvent:
    """A fault injected at the output of location ``location``.

    ``kind``: ``coupling`` (``error`` = control+target letters, e.g. ``"IZ"``),
    ``prep`` or ``idle`` (``error`` = one letter on ``wire``), or ``measure``
    (``error`` = ``"flip"``).
    """

    location: int
    kind: str
    error: str
    wire: str = ""

    def describe(self) -> str:
        if self.kind == "coupling":
            return f"L{self.location} coupling {self.error}"
        if self.kind == "measure":
            return f"L{self.location} measure-flip {self.wire}"
        return f"L{self.location} {self.kind} {self.error}@{self.wire}"

    def to_dict(self) -> dict:
        return {"location": self.location, "kind": self.kind, "error": self.error, "wire": self.wire}


@dataclass(frozen=True)
class CircuitRun:
    residual: Pauli
    m0_flip: int
    flags: tuple[int, ...]

    @property
    def flagged(self) -> bool:
        return any(self.flags)

    def flag_set(self) -> frozenset[int]:
        return frozenset(j for j, f in enumerate(self.flags) if f)


class FlagCircuit:
    """Measurement circuit for one operator, flagged or plain.

    ``flagged`` circuits carry logical flag wires ``f0 .. fm``; the plain
    circuit only has ``m0``.
    """

    def __init__(self, decomposition: SubBlockDecomposition, locations: Sequence[Location], flagged: bool):
        self.decomposition = decomposition
        self.locations = tuple(locations)
        self.flagged = flagged
        self.n = decomposition.n
        self.operator = decomposition.to_pauli()
        self.flag_count = decomposition.m + 1 if flagged else 0
        self._ops = self._compile()
        self._effects: dict[FaultEvent, tuple[int, int, int, int]] = {}
        self._live = self._live_windows()

    def __repr__(self) -> str:
        kind = "flag" if self.flagged else "plain"
        return f"FlagCircuit({kind}, {self.operator.to_sparse()}, {len(self.locations)} locations)"

    @property
    def wires(self) -> list[str]:
        return ["m0"] + [f"f{j}" for j in range(self.flag_count)]

    @property
    def ancilla_count(self) -> int:
        return 1 + self.flag_count

    @staticmethod
    def physical_wire(wire: str) -> str:
        """Physical ancilla hosting a logical wire when odd and even flags are reused."""
        if wire in ("m0", "f0"):
            return wire
        return "f_odd" if int(wire[1:]) % 2 else "f_even"

    @property
    def physical_ancilla_count(self) -> int:
        return len({self.physical_wire(w) for w in self.wires})

    def dump(self) -> str:
        return "\n".join(loc.text() for loc in self.locations) + "\n"

    # compiled form ------------------------------------------------------
    def _compile(self) -> list[tuple]:
        n = self.n
        ops = []
        for loc in self.locations:
            if loc.kind == "PREP":
                ops.append(("prep", _wire_index(loc.wire)))
            elif loc.kind == "MEAS":
                ops.append(("meas", _wire_index(loc.wire)))
            elif loc.kind == "CPL":
                bx, bz = _BITS[loc.basis]
                ops.append(("cpl", 1 << (n - loc.qubit), bx, bz))
            else:
                ops.append(("fcpl", _wire_index(loc.wire)))
        return ops

    def _live_windows(self) -> dict[str, tuple[int, int]]:
        prep, meas = {}, {}
        for i, loc in enumerate(self.locations):
            if loc.kind == "PREP":
                prep[loc.wire] = i
            elif loc.kind == "MEAS":
                meas[loc.wire] = i
        return {w: (prep[w], meas[w]) for w in prep}

    def coupling_window(self, wire: str) -> tuple[int, int] | None:
        """Indices of the first and last coupling touching ``wire``."""
        idx = [
            i
            for i, loc in enumerate(self.locations)
            if loc.is_coupling and (wire == "m0" or loc.wire == wire)
        ]
        return (idx[0], idx[-1]) if idx else None

    def check_fault(self, fault: FaultEvent) -> None:
        if not 0 <= fault.location < len(self.locations):
            raise ValueError(f"fault location {fault.location} outside the circuit")
        loc = self.locations[fault.location]
        if fault.kind == "coupling":
            if not loc.is_coupling or fault.error not in TWO_QUBIT_ERRORS:
                raise ValueError(f"invalid coupling fault {fault.describe()} at {loc.text()}")
        elif fault.kind == "prep":
            if loc.kind != "PREP" or fault.wire != loc.wire or fault.error not in "XYZ" or len(fault.error) != 1:
                raise ValueError(f"invalid prep fault {fault.describe()}")
        elif fault.kind == "measure":
            if loc.kind != "MEAS" or fault.wire != loc.wire:
                raise ValueError(f"invalid measure fault {fault.describe()}")
        elif fault.kind == "idle":
            win = self._live.get(fault.wire)
            if win is None or not win[0] <= fault.location < win[1] or fault.error not in ("X", "Y", "Z"):
                raise ValueError(f"invalid idle fault {fault.describe()}")
        else:
            raise ValueError(f"unknown fault kind {fault.kind!r}")

    # simulation ---------------------------------------------------------
    def simulate(self, x: int, z: int, faults: Iterable[FaultEvent] = ()) -> tuple[int, int, int, int]:
        """Full frame simulation; returns (residual x, residual z, m0 flip, flag mask).

        Bit ``j`` of the flag mask (LSB = f0) is set when ``f_j`` flags.
        """
        by_loc: dict[int, list[FaultEvent]] = {}
        for f in faults:
            self.check_fault(f)
            by_loc.setdefault(f.location, []).append(f)
        nw = 1 + self.flag_count
        ax = [0] * nw  # wire 0 is m0, wire j+1 is f_j
        az = [0] * nw
        out = [0] * nw
        for i, op in enumerate(self._ops):
            tag = op[0]
            if tag == "cpl":
                _, mask, bx, bz = op
                # anticommutation of the data component with the coupling basis
                if ((x & mask) and bz) ^ ((z & mask) and bx):
                    ax[0] ^= 1
                if az[0]:
                    if bx:
                        x ^= mask
                    if bz:
                        z ^= mask
            elif tag == "fcpl":
                w = op[1]
                ax[0] ^= ax[w]
                az[w] ^= az[0]
            elif tag == "prep":
                ax[op[1]] = az[op[1]] = 0
            else:
                w = op[1]
                out[w] = ax[w] if w == 0 else az[w]
            for f in by_loc.get(i, ()):
                x, z = self._inject(f, i, x, z, ax, az, out)
        flags = 0
        for j in range(self.flag_count):
            flags |= out[j + 1] << j
        return x, z, out[0], flags

    def _inject(self, f: FaultEvent, i: int, x: int, z: int, ax, az, out) -> tuple[int, int]:
        loc = self.locations[i]
        if f.kind == "measure":
            out[_wire_index(f.wire)] ^= 1
            return x, z
        if f.kind == "coupling":
            c, t = _BITS[f.error[0]], _BITS[f.error[1]]
            ax[0] ^= t[0]
            az[0] ^= t[1]
            if loc.kind == "CPL":
                mask = 1 << (self.n - loc.qubit)
                if c[0]:
                    x ^= mask
                if c[1]:
                    z ^= mask
            else:
                w = _wire_index(loc.wire)
                ax[w] ^= c[0]
                az[w] ^= c[1]
            return x, z
        w = _wire_index(f.wire)
        ex, ez = _BITS[f.error]
        ax[w] ^= ex
        az[w] ^= ez
        return x, z

    def effect(self, fault: FaultEvent) -> tuple[int, int, int, int]:
        """Effect of one fault on an error-free input (cached)."""
        hit = self._effects.get(fault)
        if hit is None:
            hit = self.simulate(0, 0, (fault,))
            self._effects[fault] = hit
        return hit

    def run(self, x: int, z: int, fault: FaultEvent | None = None) -> tuple[int, int, int, int]:
        """Fast path: fault-free closed form plus the (linear) fault effect."""
        op = self.operator
        flip = ((x & op.z).bit_count() ^ (z & op.x).bit_count()) & 1
        if fault is None:
            return x, z, flip, 0
        dx, dz, df, fl = self.effect(fault)
        return x ^ dx, z ^ dz, flip ^ df, fl


def _wire_index(wire: str) -> int:
    if wire == "m0":
        return 0
    if wire.startswith("f") and wire[1:].isdigit():
        return int(wire[1:]) + 1
    raise ValueError(f"unknown wire {wire!r}")


def build_flag_circuit(d: SubBlockDecomposition) -> FlagCircuit:
    """Flag circuit schedule for a decomposed operator."""
    m = d.m
    locs = [Location("PREP", "m0", "Z")]
    locs += [Location("PREP", f"f{j}", "X") for j in range(m + 1)]
    locs.append(Location("OPEN", "f0"))
    for i, blk in enumerate(d.blocks, start=1):
        locs.append(Location("OPEN", f"f{i}"))
        if i > 1:
            locs.append(Location("CLOSE", f"f{i - 1}"))
        locs += [Location("CPL", "m0", blk.basis, q, i) for q in blk.qubits]
    locs.append(Location("CLOSE", f"f{m}"))
    locs.append(Location("CLOSE", "f0"))
    locs.append(Location("MEAS", "m0", "Z"))
    locs += [Location("MEAS", f"f{j}", "X") for j in range(m + 1)]
    return FlagCircuit(d, locs, flagged=True)


def build_nonflag_circuit(p: Pauli | SubBlockDecomposition) -> FlagCircuit:
    """Plain parity-measurement circuit: prep, couplings in qubit order, measure."""
    d = p if isinstance(p, SubBlockDecomposition) else decompose_operator(p)
    locs = [Location("PREP", "m0", "Z")]
    for i, blk in enumerate(d.blocks, start=1):
        locs += [Location("CPL", "m0", blk.basis, q, i) for q in blk.qubits]
    locs.append(Location("MEAS", "m0", "Z"))
    return FlagCircuit(d, locs, flagged=False)


def mutate_schedule(circuit: FlagCircuit, seed: int = 0) -> tuple[FlagCircuit, int]:
    """Swap one flag coupling with an adjacent data coupling, chosen by ``seed``.

    Returns the mutated circuit and the index of the first swapped location.
    Used to check that the Claim 1 harness notices schedule errors.
    """
    locs = list(circuit.locations)
    sites = [
        i
        for i in range(len(locs) - 1)
        if {locs[i].kind, locs[i + 1].kind} in ({"OPEN", "CPL"}, {"CLOSE", "CPL"})
    ]
    if not sites:
        raise ValueError("circuit has no flag coupling next to a data coupling")
    i = random.Random(seed).choice(sites)
    locs[i], locs[i + 1] = locs[i + 1], locs[i]
    return FlagCircuit(circuit.decomposition, locs, circuit.flagged), i


def parse_dump(text: str, decomposition: SubBlockDecomposition, flagged: bool = True) -> FlagCircuit:
    """Rebuild a circuit from its text dump (used for hand-edited schedules)."""
    block_of = {q: i for i, blk in enumerate(decomposition.blocks, start=1) for q in blk.qubits}
    locs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts:
            continue
        kind = parts[0]
        try:
            if kind == "CPL":
                q = int(parts[1][1:])
                locs.append(Location("CPL", "m0", parts[2], q, block_of[q]))
            elif kind in ("OPEN", "CLOSE"):
                locs.append(Location(kind, parts[1]))
            elif kind in ("PREP", "MEAS"):
                locs.append(Location(kind, parts[1], parts[2]))
            else:
                raise ValueError(kind)
        except (IndexError, KeyError, ValueError) as exc:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from exc
    return FlagCircuit(decomposition, locs, flagged)


def propagate(circuit: FlagCircuit, input_error: Pauli, faults: Sequence[FaultEvent] = ()) -> CircuitRun:
    if input_error.n != circuit.n:
        raise ValueError("input error size does not match the circuit")
    x, z, flip, flags = circuit.simulate(input_error.x, input_error.z, faults)
    return CircuitRun(
        Pauli(circuit.n, x, z), flip, tuple((flags >> j) & 1 for j in range(circuit.flag_count))
    )


def enumerate_faults(circuit: FlagCircuit) -> list[FaultEvent]:
    """Every single fault: 15 pairs per coupling, prep and measurement flips, ancilla idles."""
    out: list[FaultEvent] = []
    locs = circuit.locations
    for i, loc in enumerate(locs):
        if loc.is_coupling:
            out += [FaultEvent(i, "coupling", e) for e in TWO_QUBIT_ERRORS]
        elif loc.kind == "PREP":
            # the single basis flip: X on a |0> ancilla, Z on a |+> ancilla
            out.append(FaultEvent(i, "prep", "X" if loc.basis == "Z" else "Z", loc.wire))
        else:
            out.append(FaultEvent(i, "measure", "flip", loc.wire))
        for w in circuit.wires:
            a, b = circuit._live[w]
            if a <= i < b:
                out += [FaultEvent(i, "idle", e, w) for e in "XYZ"]
    return out


def classify_fault_effect(circuit: FlagCircuit, fault: FaultEvent) -> str:
    """Error form of a data-coupling fault: ``a``, ``b``, ``c`` or ``none``."""
    if fault.kind != "coupling" or circuit.locations[fault.location].kind != "CPL":
        raise ValueError("classification applies to data-coupling faults only")
    dx, dz, df, fl = circuit.effect(fault)
    if not (dx or dz or df or fl):
        return "none"
    control, target = fault.error
    if target in "IX":
        return "a"
    return "b" if control == "I" else "c"


# ---------------------------------------------------------------------------
# Claim 1 and the t-flag property


@dataclass
class Claim1Report:
    operator: str
    cases: int = 0
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"operator": self.operator, "cases": self.cases, "violations": self.violations, "passed": self.passed}


def _flag_mask(*indices: int) -> int:
    m = 0
    for j in indices:
        m |= 1 << j
    return m


def verify_claim1(code: CssCode, p: Pauli, circuit: FlagCircuit | None = None) -> Claim1Report:
    """Exhaustive single-fault check of the flag signatures of the flagged circuit.

    The expected signatures are derived from the decomposition of ``p``, so
    a circuit whose schedule deviates from it (pass ``circuit``) is caught.
    """
    if p.n != code.n:
        raise ValueError("operator size does not match the code")
    if any(not p.commutes(g) for g in code.generators):
        raise ValueError("operator does not commute with every generator")
    d = decompose_operator(p, [(s, length) for s, length, _ in code.blocks])
    circ = circuit if circuit is not None else build_flag_circuit(d)
    m = d.m
    report = Claim1Report(p.to_sparse())

    def fail(item: int, fault: FaultEvent | None, msg: str) -> None:
        entry = {"item": item, "message": msg}
        if fault is not None:
            entry["fault"] = fault.describe()
        report.violations.append(entry)

    # item 1: no fault, no flag (also with input errors)
    inputs = [Pauli.identity(code.n)] + [Pauli.single(code.n, q, "X") for q in range(1, code.n + 1)]
    inputs += [Pauli.single(code.n, q, "Z") for q in range(1, code.n + 1)]
    for e in inputs:
        report.cases += 1
        run = propagate(circ, e)
        if run.flagged:
            fail(1, None, f"fault-free run flags with input {e.to_sparse() or 'I'}")
        if run.m0_flip != (0 if e.commutes(p) else 1) or run.residual != e:
            fail(1, None, f"fault-free run misreports parity for {e.to_sparse()}")

    couplings = [i for i, loc in enumerate(circ.locations) if loc.is_coupling]
    # item 2: (B, Z) at a coupling equals (I, Z) at the previous m0 coupling
    for k, i in enumerate(couplings):
        loc = circ.locations[i]
        control = loc.basis if loc.kind == "CPL" else "Z"
        report.cases += 1
        got = circ.effect(FaultEvent(i, "coupling", control + "Z"))
        if k:
            want = circ.effect(FaultEvent(couplings[k - 1], "coupling", "IZ"))
        else:
            # Z on the freshly prepared m0 acts trivially on a P eigenstate
            want = circ.effect(FaultEvent(0, "idle", "Z", "m0"))
        if got != want:
            fail(2, FaultEvent(i, "coupling", control + "Z"), "not equivalent to the prior coupling failing with IZ")

    flag_loc = {}
    for i, loc in enumerate(circ.locations):
        if loc.kind in ("OPEN", "CLOSE"):
            flag_loc[i] = (loc.kind, int(loc.wire[1:]))
    for i, loc in enumerate(circ.locations):
        if not loc.is_coupling:
            continue
        for err in TWO_QUBIT_ERRORS:
            control, target = err
            fault = FaultEvent(i, "coupling", err)
            dx, dz, _, flags = circ.effect(fault)
            if loc.kind == "CPL":
                if target not in "YZ":
                    continue
                # item 3
                report.cases += 1
                if flags != _flag_mask(0, loc.block):
                    fail(3, fault, f"flags {_mask_text(flags, m)} != {{f0, f{loc.block}}}")
                if control == "I":
                    blk = d.block(loc.block)
                    tail = [q for q in blk.qubits if q > loc.qubit]
                    want = Pauli.from_support(code.n, tail, blk.basis) * d.trailing_correction(loc.block)
                    if (dx, dz) != (want.x, want.z):
                        fail(3, fault, "residual is not the consecutive tail of the sub-block")
                continue
            kind, j = flag_loc[i]
            if j == 0:
                # item 5
                report.cases += 1
                data = Pauli(code.n, dx, dz)
                if not (data.is_identity() or data == p):
                    fail(5, fault, f"f0 coupling leaves data error {data.to_sparse()}")
                if flags & ~_flag_mask(0):
                    fail(5, fault, f"f0 coupling flags {_mask_text(flags, m)}")
                continue
            if target not in "YZ" or control not in "IX":
                continue
            # item 4
            report.cases += 1
            if kind == "OPEN":
                want_flags = _flag_mask(0, j) | (_flag_mask(j - 1) if j > 1 else 0)
            else:
                want_flags = _flag_mask(0) | (_flag_mask(j + 1) if j < m else 0)
            if flags != want_flags:
                fail(4, fault, f"flags {_mask_text(flags, m)} != {_mask_text(want_flags, m)}")
    return report


def _mask_text(mask: int, m: int) -> str:
    return "{" + ", ".join(f"f{j}" for j in range(m + 1) if (mask >> j) & 1) + "}"


def _group_matrix(code: CssCode, p: Pauli) -> BitMatrix:
    n = code.n
    rows = [(g.x << n) | g.z for g in code.generators] + [(p.x << n) | p.z]
    return BitMatrix(2 * n, rows)


def t_flag_violations(code: CssCode, circuit: FlagCircuit) -> list[FaultEvent]:
    """Unflagged single faults whose data error is not within weight 1 of <P, S>."""
    n = code.n
    group = _group_matrix(code, circuit.operator)
    singles = [Pauli(n, 0, 0)] + [Pauli.single(n, q, c) for q in range(1, n + 1) for c in "XYZ"]
    bad = []
    for fault in enumerate_faults(circuit):
        dx, dz, _, flags = circuit.effect(fault)
        if flags or (dx | dz).bit_count() <= 1:
            continue
        ok = any(group.in_row_space(((dx ^ f.x) << n) | (dz ^ f.z)) for f in singles)
        if not ok:
            bad.append(fault)
    return bad


def verify_t_flag(code: CssCode, circuit: FlagCircuit) -> bool:
    """One-flag property: no flag without faults, and every unflagged fault stays within weight 1."""
    if circuit.simulate(0, 0)[3]:
        return False
    return not t_flag_violations(code, circuit)
