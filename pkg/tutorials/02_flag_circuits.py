"""Flag circuits: schedule, fault propagation and flag signatures.

Run:  python tutorials/02_flag_circuits.py
"""

from importlib import resources

from flagqec import build_flag_circuit, build_nonflag_circuit, decompose_operator, load_code, verify_claim1
from flagqec.circuit import FaultEvent, propagate, verify_t_flag
from flagqec.pauli import Pauli

steane = load_code(resources.files("flagqec") / "data" / "steane.code")
g = steane.generators[3]
d = decompose_operator(g)
print("operator", g.to_dense(), "sub-blocks", d.summary())

circ = build_flag_circuit(d)
print(circ.dump(), end="")
print(f"{circ.ancilla_count} logical ancillas, {circ.physical_ancilla_count} with flag reuse")

# A Z on the measurement ancilla right after the coupling to qubit 2 spreads
# to the rest of the operator; flags f0 and f1 fire.
at = [loc.text() for loc in circ.locations].index("CPL q2 Z")
run = propagate(circ, Pauli.identity(7), [FaultEvent(at, "coupling", "IZ")])
print("residual", run.residual.to_sparse(), "flags", sorted(run.flag_set()))

# The plain circuit has no way to report that spread.
plain = build_nonflag_circuit(d)
print("one-flag property: flagged", verify_t_flag(steane, circ), "plain", verify_t_flag(steane, plain))

rep = verify_claim1(steane, g)
print(f"flag signature check: {rep.cases} single faults, {len(rep.violations)} violations")
