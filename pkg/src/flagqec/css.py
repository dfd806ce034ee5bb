"""CSS codes: assembly, syndromes, group membership and minimum-weight correction."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .cyclic import ClassicalCode, dual_containment, is_cyclic
from .gf2 import BitMatrix, Bits, parity
from .pauli import Pauli, paulis_of_weight

__all__ = [
    "CssCode",
    "Syndrome",
    "LogicalReport",
    "build_css",
    "direct_sum",
    "syndrome",
    "in_stabilizer_group",
    "in_normalizer",
    "logical_class_equal",
    "min_weight_correction",
    "quantum_distance_at_least",
    "validate_logicals",
    "find_logicals",
    "logical_pattern",
    "CorrectionCapExceeded",
]

DEFAULT_CAP = 3


class CorrectionCapExceeded(RuntimeError):
    """No Pauli of weight <= cap has the requested syndrome."""


@dataclass(frozen=True)
class Syndrome:
    """``sx`` follows the row order of Hx, ``sz`` the row order of Hz."""

    sx: Bits
    sz: Bits

    @classmethod
    def from_ints(cls, rx: int, rz: int, sx: int, sz: int) -> "Syndrome":
        return cls(Bits(rx, sx), Bits(rz, sz))

    @classmethod
    def from_strings(cls, sx: str, sz: str) -> "Syndrome":
        return cls(Bits.from_string(sx), Bits.from_string(sz))

    def is_zero(self) -> bool:
        return not (self.sx.payload or self.sz.payload)

    def to_string(self) -> str:
        return f"{self.sx.to_string()}|{self.sz.to_string()}"

    def __str__(self) -> str:
        return self.to_string()


class _CosetTable:
    """Vectors grouped by weight and syndrome under one check matrix, built lazily."""

    def __init__(self, rows: tuple[int, ...], n: int):
        self.n = n
        self.cols = []
        for j in range(n):
            shift = n - 1 - j
            c = 0
            for r in rows:
                c = (c << 1) | ((r >> shift) & 1)
            self.cols.append(c)
        self.levels: list[dict[int, list[int]]] = [{0: [0]}]

    def level(self, w: int) -> dict[int, list[int]]:
        n, cols = self.n, self.cols
        while len(self.levels) <= w:
            cur = len(self.levels)
            table: dict[int, list[int]] = {}
            for idx in combinations(range(n), cur):
                s = v = 0
                for j in idx:
                    s ^= cols[j]
                    v |= 1 << (n - 1 - j)
                table.setdefault(s, []).append(v)
            self.levels.append(table)
        return self.levels[w]

    def candidates(self, s: int, upto: int) -> list[int]:
        out: list[int] = []
        for w in range(upto + 1):
            out.extend(self.level(w).get(s, ()))
        return out


class CssCode:
    """A CSS stabilizer code given by X-check matrix ``hx`` and Z-check matrix ``hz``.

    Generators are the X-type rows of ``hx`` followed by the Z-type rows of
    ``hz``.  Direct sums keep per-block structure in ``blocks``.
    """

    def __init__(
        self,
        hx: BitMatrix,
        hz: BitMatrix,
        logicals: Sequence[tuple[Pauli, Pauli]] | None = None,
        cyclic: bool = False,
        name: str | None = None,
        classical: tuple[ClassicalCode, ClassicalCode] | None = None,
        blocks: Sequence[tuple[int, int, "CssCode"]] | None = None,
    ):
        if hx.ncols != hz.ncols:
            raise ValueError(f"Hx has {hx.ncols} columns, Hz has {hz.ncols}")
        if not dual_containment(hx, hz):
            raise ValueError("Hx and Hz are not orthogonal: not a valid CSS pair")
        self.n = hx.ncols
        self.hx = hx
        self.hz = hz
        self.k = self.n - hx.rank() - hz.rank()
        self.cyclic = cyclic
        self.name = name or f"[[{self.n},{self.k}]]"
        self.classical = classical
        self.blocks = tuple(blocks) if blocks else ((1, self.n, self),)
        self.logicals = list(logicals) if logicals is not None else None
        self._ztab = _CosetTable(hz.int_rows, self.n)  # x-parts, keyed by sz
        self._xtab = _CosetTable(hx.int_rows, self.n)  # z-parts, keyed by sx
        self._emin: dict[tuple[int, int, str], Pauli] = {}
        self._hx_rows = hx.int_rows
        self._hz_rows = hz.int_rows
        self._circuits: dict = {}
        self._basis: list[tuple[Pauli, Pauli]] | None = None

    def logical_basis(self) -> list[tuple[Pauli, Pauli]]:
        """The attached logical pairs, or a computed canonical basis (cached)."""
        if self.logicals is not None:
            return self.logicals
        if self._basis is None:
            self._basis = find_logicals(self)
        return self._basis

    @property
    def r_x(self) -> int:
        return self.hx.nrows

    @property
    def r_z(self) -> int:
        return self.hz.nrows

    @property
    def generators(self) -> list[Pauli]:
        n = self.n
        return [Pauli(n, r, 0) for r in self._hx_rows] + [Pauli(n, 0, r) for r in self._hz_rows]

    @property
    def distances(self) -> tuple[int | None, int | None]:
        if self.classical is None:
            return (None, None)
        return (self.classical[0].d, self.classical[1].d)

    def __repr__(self) -> str:
        return f"CssCode({self.name}, r_x={self.r_x}, r_z={self.r_z}, cyclic={self.cyclic})"

    # fast paths on packed ints -----------------------------------------
    def syndrome_ints(self, x: int, z: int) -> tuple[int, int]:
        sx = 0
        for r in self._hx_rows:
            sx = (sx << 1) | ((r & z).bit_count() & 1)
        sz = 0
        for r in self._hz_rows:
            sz = (sz << 1) | ((r & x).bit_count() & 1)
        return sx, sz

    def correction_ints(self, sx: int, sz: int, cap: int, tie_break: str = "lex") -> Pauli:
        key = (sx, sz, tie_break)
        hit = self._emin.get(key)
        if hit is None:
            if len(self.blocks) > 1:
                hit = self._blockwise_correction(sx, sz, cap, tie_break)
            else:
                hit = self._search_correction(sx, sz, cap, tie_break)
            self._emin[key] = hit
        if hit.weight() > cap:
            raise CorrectionCapExceeded(
                f"minimal correction for syndrome {sx:b}|{sz:b} has weight {hit.weight()} > cap {cap}"
            )
        return hit

    def _search_correction(self, sx: int, sz: int, cap: int, tie_break: str) -> Pauli:
        reverse = tie_break == "reverse"
        if tie_break not in ("lex", "reverse"):
            raise ValueError(f"unknown tie-break {tie_break!r}")
        W = 0
        limit = max(cap, 0)
        while True:
            zc = self._xtab.candidates(sx, W)
            xc = self._ztab.candidates(sz, W)
            best = None
            for x in xc:
                for z in zc:
                    w = (x | z).bit_count()
                    if w > W:
                        continue
                    k = (w, -x, -z) if reverse else (w, x, z)
                    if best is None or k < best:
                        best = k
            if best is not None:
                x, z = (-best[1], -best[2]) if reverse else (best[1], best[2])
                return Pauli(self.n, x, z)
            if W >= limit:
                raise CorrectionCapExceeded(
                    f"no correction of weight <= {cap} for syndrome {sx:b}|{sz:b}"
                )
            W += 1

    def _blockwise_correction(self, sx: int, sz: int, cap: int, tie_break: str) -> Pauli:
        out = Pauli.identity(self.n)
        xo = self.r_x
        zo = self.r_z
        for start, length, block in self.blocks:
            xo -= block.r_x
            zo -= block.r_z
            bsx = (sx >> xo) & ((1 << block.r_x) - 1)
            bsz = (sz >> zo) & ((1 << block.r_z) - 1)
            part = block.correction_ints(bsx, bsz, cap, tie_break)
            out = out * part.embed(self.n, start)
        return out

    def block_of_qubit(self, q: int) -> int:
        for i, (start, length, _) in enumerate(self.blocks):
            if start <= q < start + length:
                return i
        raise IndexError(q)

    def generator_rows_of_block(self, b: int) -> tuple[list[int], list[int]]:
        """Indices (0-based, in generator order) of block ``b``'s X- and Z-generators."""
        xs, zs = [], []
        xi = zi = 0
        for i, (_, _, block) in enumerate(self.blocks):
            if i == b:
                xs = list(range(xi, xi + block.r_x))
                zs = list(range(self.r_x + zi, self.r_x + zi + block.r_z))
            xi += block.r_x
            zi += block.r_z
        return xs, zs


def build_css(cx: ClassicalCode, cz: ClassicalCode, name: str | None = None) -> CssCode:
    """Assemble the CSS code with X-checks ``cx.H`` and Z-checks ``cz.H``."""
    if cx.n != cz.n:
        raise ValueError(f"length mismatch: {cx.n} vs {cz.n}")
    if not dual_containment(cx.H, cz.H):
        raise ValueError("Hx Hz^T != 0: not a valid CSS pair")
    k = cx.k + cz.k - cx.n
    if cx.H.nrows + cz.H.nrows == 0:
        raise ValueError("degenerate CSS pair: no stabilizer checks")
    if k <= 0:
        raise ValueError(f"CSS pair encodes k = {k} logical qubits")
    cyc = is_cyclic(cx) and is_cyclic(cz)
    return CssCode(cx.H, cz.H, cyclic=cyc, name=name, classical=(cx, cz))


def direct_sum(codes: Sequence[CssCode], name: str | None = None) -> CssCode:
    """Several code blocks side by side on one concatenated register."""
    n = sum(c.n for c in codes)
    hx, hz, blocks, logicals = [], [], [], []
    start = 1
    for c in codes:
        shift = n - (start - 1) - c.n
        hx.extend(r << shift for r in c.hx.int_rows)
        hz.extend(r << shift for r in c.hz.int_rows)
        blocks.append((start, c.n, c))
        for lx, lz in c.logical_basis():
            logicals.append((lx.embed(n, start), lz.embed(n, start)))
        start += c.n
    label = name or " x ".join(c.name for c in codes)
    return CssCode(BitMatrix(n, hx), BitMatrix(n, hz), logicals=logicals, name=label, blocks=blocks)


def _check_size(code: CssCode, p: Pauli) -> None:
    if p.n != code.n:
        raise ValueError(f"Pauli acts on {p.n} qubits, code has {code.n}")


def syndrome(code: CssCode, e: Pauli) -> Syndrome:
    _check_size(code, e)
    sx, sz = code.syndrome_ints(e.x, e.z)
    return Syndrome.from_ints(code.r_x, code.r_z, sx, sz)


def in_stabilizer_group(code: CssCode, p: Pauli) -> bool:
    _check_size(code, p)
    return code.hx.in_row_space(p.x) and code.hz.in_row_space(p.z)


def in_normalizer(code: CssCode, p: Pauli) -> bool:
    _check_size(code, p)
    return code.syndrome_ints(p.x, p.z) == (0, 0)


def logical_class_equal(code: CssCode, e1: Pauli, e2: Pauli) -> bool:
    if e1.n != e2.n:
        raise ValueError("size mismatch")
    return in_stabilizer_group(code, e1 * e2)


def min_weight_correction(
    code: CssCode, s: Syndrome, cap: int = DEFAULT_CAP, tie_break: str = "lex"
) -> Pauli:
    """Lowest-weight Pauli with syndrome ``s``.

    Ties are broken towards the lexicographically smallest symplectic string
    (``tie_break="reverse"`` picks the largest instead).
    """
    if cap < 0:
        raise ValueError("cap must be >= 0")
    if s.sx.length != code.r_x or s.sz.length != code.r_z:
        raise ValueError("syndrome length does not match the code")
    return code.correction_ints(s.sx.payload, s.sz.payload, cap, tie_break)


def quantum_distance_at_least(code: CssCode, w: int) -> tuple[bool, Pauli | None]:
    """Check that every nontrivial logical has weight >= ``w``.

    Returns ``(True, None)`` or ``(False, witness)`` where the witness is a
    normalizer element outside the stabilizer group of weight < ``w``.
    """
    for wt in range(1, w):
        for p in paulis_of_weight(code.n, wt):
            if code.syndrome_ints(p.x, p.z) == (0, 0) and not in_stabilizer_group(code, p):
                return False, p
    return True, None


def logical_pattern(code: CssCode, p: Pauli, logicals: Sequence[tuple[Pauli, Pauli]] | None = None) -> int:
    """Anticommutation bits of ``p`` against (Z̄_i, X̄_i) for every logical qubit."""
    pairs = logicals if logicals is not None else code.logical_basis()
    out = 0
    for lx, lz in pairs:
        out = (out << 1) | parity((p.x & lz.z) ^ (p.z & lz.x))
        out = (out << 1) | parity((p.x & lx.z) ^ (p.z & lx.x))
    return out


@dataclass
class LogicalReport:
    violations: list[dict] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations


def validate_logicals(code: CssCode, table: Sequence[tuple[Pauli, Pauli]]) -> LogicalReport:
    """Check commutation with all generators and the X̄_i/Z̄_j anticommutation pattern."""
    if len(table) != code.k:
        raise ValueError(f"table has {len(table)} pairs, code has k = {code.k}")
    report = LogicalReport()
    gens = code.generators
    for i, (lx, lz) in enumerate(table, start=1):
        for label, op in (("X", lx), ("Z", lz)):
            _check_size(code, op)
            for g_idx, g in enumerate(gens, start=1):
                report.checked += 1
                if not op.commutes(g):
                    report.violations.append(
                        {"check": "generator_commutation", "logical": f"{label}{i}", "generator": g_idx}
                    )
    for i, (lx, _) in enumerate(table, start=1):
        for j, (_, lz) in enumerate(table, start=1):
            report.checked += 1
            anti = not lx.commutes(lz)
            if anti != (i == j):
                report.violations.append({"check": "xz_pattern", "x": i, "z": j, "anticommute": anti})
    for a in range(len(table)):
        for b in range(a + 1, len(table)):
            for label, idx in (("X", 0), ("Z", 1)):
                report.checked += 1
                if not table[a][idx].commutes(table[b][idx]):
                    report.violations.append(
                        {"check": f"{label}{label}_commutation", "i": a + 1, "j": b + 1}
                    )
    return report


def _independent_mod(rows: list[int], base: BitMatrix, n: int, want: int) -> list[int]:
    chosen: list[int] = []
    acc = base
    for v in rows:
        if len(chosen) == want:
            break
        if not acc.in_row_space(v):
            chosen.append(v)
            acc = acc.vstack(BitMatrix(n, [v]))
    return chosen


def _gf2_inverse(m: list[list[int]]) -> list[list[int]]:
    k = len(m)
    a = [row[:] + [1 if i == j else 0 for j in range(k)] for i, row in enumerate(m)]
    for col in range(k):
        piv = next(r for r in range(col, k) if a[r][col])
        a[col], a[piv] = a[piv], a[col]
        for r in range(k):
            if r != col and a[r][col]:
                a[r] = [u ^ v for u, v in zip(a[r], a[col])]
    return [row[k:] for row in a]


def find_logicals(code: CssCode) -> list[tuple[Pauli, Pauli]]:
    """A canonical symplectic basis of logical operators (X̄_i X-type, Z̄_i Z-type)."""
    n, k = code.n, code.k
    if k == 0:
        return []
    lx = _independent_mod(list(code.hz.null_space().int_rows), code.hx, n, k)
    lz = _independent_mod(list(code.hx.null_space().int_rows), code.hz, n, k)
    if len(lx) != k or len(lz) != k:
        raise ValueError("could not complete a logical basis")
    gram = [[parity(a & b) for b in lz] for a in lx]
    inv_t = _gf2_inverse([list(col) for col in zip(*gram)])
    paired_z = []
    for j in range(k):
        v = 0
        for t in range(k):
            if inv_t[j][t]:
                v ^= lz[t]
        paired_z.append(v)
    return [(Pauli(n, a, 0), Pauli(n, 0, b)) for a, b in zip(lx, paired_z)]
