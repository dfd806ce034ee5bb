"""Walk through the error-correction and measurement protocols under single faults.

Run:  python tutorials/03_protocols.py
"""

from importlib import resources

from flagqec import FaultPlan, load_code, run_ft_measurement, run_ftec, run_multiblock_measurement
from flagqec.circuit import FaultEvent
from flagqec.pauli import Pauli
from flagqec.protocols import OPERATOR, SYNDROME, circuit_for

steane = load_code(resources.files("flagqec") / "data" / "steane.code")
n = steane.n
clean = Pauli.identity(n)


def show(title, out):
    corr = ", ".join(c.to_sparse() for c in out.corrections) or "-"
    extra = "" if out.reported_outcome is None else f"  outcome {out.reported_outcome:+d}"
    print(f"{title:<40} branch {out.branch:<7} corrections [{corr}]  residual {out.residual.to_sparse() or 'I'}{extra}")


show("no error", run_ftec(steane, clean))
show("input Z4", run_ftec(steane, Pauli.from_sparse("Z4", n)))

gen = steane.generators[3]
circ = circuit_for(steane, gen, True)
at = [loc.text() for loc in circ.locations].index("CPL q2 Z")
plan = FaultPlan.single(SYNDROME, 1, 3, FaultEvent(at, "coupling", "IZ"))
show("Z on m0 mid-block, round 1", run_ftec(steane, clean, plan))

xbar, zbar = steane.logical_basis()[0]
show("measure Zbar, input X1", run_ft_measurement(steane, zbar, Pauli.from_sparse("X1", n)))

ybar = xbar * zbar
ycirc = circuit_for(steane, ybar, True)
at = [loc.text() for loc in ycirc.locations].index("CPL q3 Y")
plan = FaultPlan.single(OPERATOR, 1, 0, FaultEvent(at, "coupling", "IZ"))
show("measure Ybar, fault on a Y coupling", run_ft_measurement(steane, ybar, clean, plan))

show("Xbar (x) Xbar on two blocks", run_multiblock_measurement([steane, steane], [xbar, xbar]))
