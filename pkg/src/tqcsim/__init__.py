"""Simulation toolkit for topological quantum computation with SU(2) level-3 anyons."""

from .anyons import fuse, fusion_paths, path_count, qdim, s_matrix
from .braidrep import braid_generator, plat_amplitude, represent_word, tl_generator
from .circuits import Circuit, Gate, gate_library, prob_first_qubit_one, run_circuit
from .compiler import CompilationResult, GateTarget, batch_image, compile, gate_distance, sk_refine
from .computer import execute_braid, initialize, leakage, measure_pair, prob_via_jones, readout_distribution
from .formats import parse_braid_word
from .kcode import Subspace, is_k_code, local_operator_basis, max_k
from .links import BraidWord, LinkDiagram, jones_at, kauffman_bracket, plat_closure

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "Circuit",
    "CompilationResult",
    "Gate",
    "GateTarget",
    "LinkDiagram",
    "Subspace",
    "batch_image",
    "braid_generator",
    "compile",
    "execute_braid",
    "fuse",
    "fusion_paths",
    "gate_distance",
    "gate_library",
    "initialize",
    "is_k_code",
    "jones_at",
    "kauffman_bracket",
    "leakage",
    "local_operator_basis",
    "max_k",
    "measure_pair",
    "parse_braid_word",
    "path_count",
    "plat_amplitude",
    "plat_closure",
    "prob_first_qubit_one",
    "prob_via_jones",
    "qdim",
    "readout_distribution",
    "represent_word",
    "run_circuit",
    "s_matrix",
    "sk_refine",
    "tl_generator",
]
