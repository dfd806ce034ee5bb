"""``flagqec`` command-line front end.

Exit status: 0 on success, 1 when a check or campaign fails, 2 on usage or
input errors. JSON reports are validated against the schemas shipped in
``flagqec/schemas`` and, when ``FLAGQEC_REPORT_DIR`` is set, written there.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

import jsonschema

from .circuit import build_flag_circuit, build_nonflag_circuit, decompose_operator
from .codefile import CodeFileError, load_code
from .consecutive import (
    consecutive_set,
    distinguishable_oracle,
    lemma1_check_x,
    lemma1_check_z,
    lemma3_check,
    theorem2_check,
)
from .css import CssCode, quantum_distance_at_least, validate_logicals
from .pauli import Pauli
from .protocols import ProtocolOptions
from .verifier import FaultTables, render_tables, reproduce_fault_tables, verify_def4, verify_def9

REPORT_ENV = "FLAGQEC_REPORT_DIR"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 already; keep the message format
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_schema(name: str) -> dict:
    text = resources.files("flagqec").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def emit(kind: str, payload: dict, stem: str, as_json: bool) -> None:
    jsonschema.validate(payload, load_schema(kind))
    text = json.dumps(payload, indent=2, sort_keys=True)
    if as_json:
        print(text)
    target = os.environ.get(REPORT_ENV)
    if target:
        out = Path(target)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{stem}.json").write_text(text + "\n")


def _slug(text: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in text).strip("_")


def _code(args) -> CssCode:
    return load_code(args.code)


def _operator(code: CssCode, text: str) -> Pauli:
    try:
        return Pauli.parse(text, code.n)
    except ValueError as exc:
        raise UsageError(f"invalid operator {text!r}: {exc}") from None


# ---------------------------------------------------------------------------


def code_summary(code: CssCode) -> dict:
    d_x, d_z = code.distances
    ok, witness = quantum_distance_at_least(code, 3)
    label = f"[[{code.n},{code.k},3]]" if ok else f"[[{code.n},{code.k}]]"
    out = {
        "name": code.name,
        "n": code.n,
        "k": code.k,
        "r_x": code.r_x,
        "r_z": code.r_z,
        "cyclic": code.cyclic,
        "d_x": d_x,
        "d_z": d_z,
        "distance_at_least_3": ok,
        "distance_witness": None if witness is None else witness.to_sparse(),
        "label": label,
    }
    if code.logicals is not None:
        report = validate_logicals(code, code.logicals)
        out["logicals"] = {"pairs": len(code.logicals), "passed": report.passed, "violations": report.violations}
    return out


def cmd_build(args) -> int:
    code = _code(args)
    info = code_summary(code)
    if not args.json:
        print(f"{info['label']} cyclic={'true' if info['cyclic'] else 'false'}")
        print(f"r_x={info['r_x']} r_z={info['r_z']} d_x={info['d_x']} d_z={info['d_z']}")
        if "logicals" in info:
            lg = info["logicals"]
            state = "valid" if lg["passed"] else f"{len(lg['violations'])} violations"
            print(f"logicals: {lg['pairs']} pairs, {state}")
    emit("build", info, f"build-{_slug(code.name)}", args.json)
    ok = info["distance_at_least_3"] and info.get("logicals", {}).get("passed", True)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_distinguish(args) -> int:
    code = _code(args)
    n = code.n
    if args.l is not None and not 0 <= args.l < n:
        raise UsageError(f"--l {args.l} outside 0..{n - 1}")
    shifts = [args.l] if args.l is not None else list(range(n))
    payload = {"code": code.name, "method": args.method}
    if args.method == "theorem2":
        try:
            rep = theorem2_check(code)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        reports = [r for r in rep.shifts if r.detail["l"] in shifts]
        payload["failing"] = [r.detail["l"] for r in reports if not r.verdict]
    elif args.method == "oracle":
        reports = [distinguishable_oracle(code, consecutive_set(args.kind, l, n)) for l in shifts]
    elif args.method == "lemma1":
        if args.kind == "product":
            raise UsageError("lemma1 checks the x or z set; pass --kind x or --kind z")
        fn = lemma1_check_z if args.kind == "z" else lemma1_check_x
        H = code.hx if args.kind == "z" else code.hz
        reports = [fn(H, l) for l in shifts]
    else:
        if args.kind == "product":
            raise UsageError("lemma3 checks the x or z set; pass --kind x or --kind z")
        H = code.hx if args.kind == "z" else code.hz
        try:
            reports = [lemma3_check(H, args.kind)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    payload["reports"] = [r.to_dict() for r in reports]
    payload["passed"] = all(r.verdict for r in reports)
    if not args.json:
        good = sum(r.verdict for r in reports)
        print(f"{args.method}: {good}/{len(reports)} distinguishable")
        for r in reports:
            if not r.verdict:
                a, b = (w.to_sparse() or "I" for w in r.witness)
                print(f"  collision: {a} vs {b}  {r.detail}")
    emit("distinguish", payload, f"distinguish-{_slug(code.name)}-{args.method}", args.json)
    return EXIT_OK if payload["passed"] else EXIT_FAIL


def cmd_verify(args) -> int:
    code = _code(args)
    options = ProtocolOptions(tie_break=args.tie_break)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if args.protocol == "ftec":
        if args.operator:
            raise UsageError("--operator only applies to --protocol measure")
        result = verify_def4(code, samples=args.samples, seed=args.seed, options=options, jobs=jobs)
        stem = f"verify-{_slug(code.name)}-ftec"
    else:
        if not args.operator:
            raise UsageError("--protocol measure needs --operator")
        op = _operator(code, args.operator)
        bad = [i + 1 for i, g in enumerate(code.generators) if not op.commutes(g)]
        if op.is_identity():
            raise UsageError("cannot measure the identity")
        if bad:
            raise UsageError(f"operator anticommutes with generator(s) {bad}")
        result = verify_def9(code, op, options=options, jobs=jobs)
        stem = f"verify-{_slug(code.name)}-measure-{_slug(op.to_sparse())}"
    payload = result.to_dict()
    if not args.json:
        t = payload["totals"]
        verdict = "PASS" if result.passed else "FAIL"
        print(f"{verdict} {payload['protocol']} on {code.name}: {t['cases']} cases, {t['failures']} failures")
        print("branches: " + " ".join(f"{k}={v}" for k, v in payload["branches"].items()))
    emit("campaign", payload, stem, args.json)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_tables(args) -> int:
    code = _code(args)
    if args.operator:
        ops = [_operator(code, t) for t in args.operator]
    else:
        ops = [p for pair in code.logical_basis() for p in pair]
    tables: FaultTables = reproduce_fault_tables([code], [(code, op) for op in ops])
    payload = {"code": code.name, "operators": [op.to_sparse() for op in ops], **tables.to_dict()}
    if not args.json:
        print(render_tables(tables), end="")
        print("PASS" if tables.passed else "FAIL")
    emit("tables", payload, f"tables-{_slug(code.name)}", args.json)
    return EXIT_OK if tables.passed else EXIT_FAIL


def cmd_circuit(args) -> int:
    code = _code(args)
    if (args.generator is None) == (args.operator is None):
        raise UsageError("pass exactly one of --generator or --operator")
    if args.generator is not None:
        gens = code.generators
        if not 1 <= args.generator <= len(gens):
            raise UsageError(f"generator index {args.generator} outside 1..{len(gens)}")
        op = gens[args.generator - 1]
    else:
        op = _operator(code, args.operator)
    if op.is_identity():
        raise UsageError("the identity has no measurement circuit")
    d = decompose_operator(op)
    circ = build_flag_circuit(d) if args.flag else build_nonflag_circuit(d)
    sys.stdout.write(circ.dump())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagqec", description="Flag fault-tolerant error correction for cyclic CSS codes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("code", help="code definition file")
        sp.add_argument("--json", action="store_true", help="print the JSON report")
        sp.set_defaults(func=fn)
        return sp

    add("build", cmd_build, "build a code and print its parameters")

    sp = add("distinguish", cmd_distinguish, "check distinguishability of consecutive error sets")
    sp.add_argument("--method", choices=["oracle", "lemma1", "lemma3", "theorem2"], default="theorem2")
    sp.add_argument("--kind", choices=["x", "z", "product"], default=None)
    sp.add_argument("--l", type=int, default=None, help="shift offset (default: all shifts)")

    sp = add("verify", cmd_verify, "run an exhaustive single-fault campaign")
    sp.add_argument("--protocol", choices=["ftec", "measure"], default="ftec")
    sp.add_argument("--operator", help='measured operator, e.g. "X1 X11 X21"')
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=1000, help="high-weight input samples (ftec only)")
    sp.add_argument("--jobs", type=int, default=None, help="worker processes (default: all cores)")
    sp.add_argument("--tie-break", choices=["lex", "reverse"], default="lex")

    sp = add("tables", cmd_tables, "reproduce the fault-to-procedure tables")
    sp.add_argument("--operator", action="append", help="measured operator (repeatable; default: all logicals)")

    sp = add("circuit", cmd_circuit, "print a measurement circuit")
    sp.add_argument("--generator", type=int, help="1-based generator index")
    sp.add_argument("--operator", help="operator to measure")
    sp.add_argument("--flag", dest="flag", action="store_true", default=True)
    sp.add_argument("--no-flag", dest="flag", action="store_false")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "kind", "unset") is None:
        args.kind = "z" if args.method in ("lemma1", "lemma3") else "product"
    try:
        return args.func(args)
    except (UsageError, CodeFileError) as exc:
        print(f"flagqec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
