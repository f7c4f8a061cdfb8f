"""Mutex-clique detection and at-most-one substitution for CNF formulas."""

from .cnf import CnfFormula, classify_mutex, emit_dimacs, parse_dimacs, split_mutexes
from .detect import CliqueClustering, CliqueDetector, run_detector
from .encode import AmoKind, AuxAllocator, EncodedAmo, encode_amo
from .mutex import MutexNetwork
from .substitute import SubstitutionPlan, SubstitutionReport, filter_subsumed, substitute_amos

__version__ = "0.1.0"

__all__ = [
    "AmoKind", "AuxAllocator", "CliqueClustering", "CliqueDetector", "CnfFormula",
    "EncodedAmo", "MutexNetwork", "SubstitutionPlan", "SubstitutionReport",
    "classify_mutex", "emit_dimacs", "encode_amo", "filter_subsumed",
    "parse_dimacs", "run_detector", "split_mutexes", "substitute_amos",
]
