"""Exhaustive single-fault campaigns and the fault-class tables.

Run:  python tutorials/04_campaigns.py      (about ten seconds)
"""

from importlib import resources

from flagqec import load_code, reproduce_fault_tables, verify_def4, verify_def9
from flagqec.protocols import ProtocolOptions
from flagqec.verifier import render_tables

data = resources.files("flagqec") / "data"
steane = load_code(data / "steane.code")
code30 = load_code(data / "code30.code")

for code in (steane, code30):
    r = verify_def4(code, samples=1000, seed=0)
    print(f"error correction on {code.name}: {r.cases} cases, {r.failure_count} failures, branches {dict(r.branches)}")

op = code30.logicals[0][0]
r = verify_def9(code30, op)
print(f"measurement of {op.to_sparse()}: {r.cases} cases, {r.failure_count} failures")

# A deliberately broken protocol is caught.
broken = verify_def4(steane, samples=0, options=ProtocolOptions(mutation="skip-4b-correction"))
print(f"broken protocol: {broken.failure_count} failures, first: {broken.failures[0]['violated']} in branch {broken.failures[0]['branch']}")

xbar, zbar = steane.logical_basis()[0]
tables = reproduce_fault_tables([steane], [(steane, xbar), (steane, zbar)])
print(render_tables(tables), end="")
