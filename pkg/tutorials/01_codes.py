"""Build the two shipped cyclic CSS codes and look at their structure.

Run:  python tutorials/01_codes.py
"""

from importlib import resources

from flagqec import BinaryPolynomial, ClassicalCode, build_css, load_code, syndrome
from flagqec.css import min_weight_correction, quantum_distance_at_least, validate_logicals
from flagqec.pauli import Pauli

data = resources.files("flagqec") / "data"

# A code from its check polynomial, built by hand.
h = BinaryPolynomial.parse("0,2,3,4")  # 1 + x^2 + x^3 + x^4
hamming = ClassicalCode.from_check_poly(h, 7).with_distance()
print("classical:", f"[{hamming.n},{hamming.k},{hamming.d}]")
for row in hamming.H.to_strings():
    print("  ", row)

steane = build_css(hamming, hamming, "steane")
print("quantum:", f"[[{steane.n},{steane.k}]]", "cyclic" if steane.cyclic else "")
print("distance >= 3:", quantum_distance_at_least(steane, 3)[0])

# Syndromes and minimum-weight decoding.
err = Pauli.from_sparse("Z5", 7)
s = syndrome(steane, err)
print(f"syndrome of {err.to_sparse()}: {s.to_string()}  ->  correction {min_weight_correction(steane, s).to_sparse()}")

# The same code, and the 30-qubit one, from the shipped definition files.
code30 = load_code(data / "code30.code")
print(f"{code30.name}: n={code30.n} k={code30.k} r_x={code30.r_x} r_z={code30.r_z} d={code30.distances}")
report = validate_logicals(code30, code30.logicals)
print(f"logical table: {len(code30.logicals)} pairs, {len(report.violations)} violations")
print("first pair:", code30.logicals[0][0].to_sparse(), "/", code30.logicals[0][1].to_sparse())
