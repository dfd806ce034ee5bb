"""Flag fault-tolerant error correction and measurement for cyclic CSS codes."""

from .circuit import FlagCircuit, build_flag_circuit, build_nonflag_circuit, decompose_operator, verify_claim1
from .codefile import load_code, load_logicals
from .consecutive import consecutive_set, distinguishable_oracle, theorem2_check
from .css import CssCode, Syndrome, build_css, direct_sum, min_weight_correction, syndrome
from .cyclic import BinaryPolynomial, ClassicalCode
from .gf2 import BitMatrix, Bits
from .pauli import Pauli
from .protocols import FaultPlan, ProtocolOptions, run_ft_measurement, run_ftec, run_multiblock_measurement
from .verifier import reproduce_fault_tables, verify_def4, verify_def9

__version__ = "0.1.0"

__all__ = [
    "BinaryPolynomial",
    "BitMatrix",
    "Bits",
    "ClassicalCode",
    "CssCode",
    "FaultPlan",
    "FlagCircuit",
    "Pauli",
    "ProtocolOptions",
    "Syndrome",
    "build_css",
    "build_flag_circuit",
    "build_nonflag_circuit",
    "consecutive_set",
    "decompose_operator",
    "direct_sum",
    "distinguishable_oracle",
    "load_code",
    "load_logicals",
    "min_weight_correction",
    "reproduce_fault_tables",
    "run_ft_measurement",
    "run_ftec",
    "run_multiblock_measurement",
    "syndrome",
    "theorem2_check",
    "verify_claim1",
    "verify_def4",
    "verify_def9",
]
