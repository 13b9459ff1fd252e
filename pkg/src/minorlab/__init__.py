"""Exact-arithmetic workbench for cluster seeds and generalized minors."""

from .bfz import DoubleWord, build_seed, disjoint_pair, realize_minor
from .certify import certify_generation, certify_quasiminuscule_case, certify_seed_hypotheses
from .clustercore import Seed, find_mutation_path, laurent_check, mutate
from .groupfun import CoefficientFunction, GroupWord, MinorLabel, function_equal, minor
from .repcore import adjoint_module, irreducible, multiplication_map, tensor
from .rootweyl import Weight, WeylElement, cartan_matrix

__all__ = [
    "CoefficientFunction",
    "DoubleWord",
    "GroupWord",
    "MinorLabel",
    "Seed",
    "Weight",
    "WeylElement",
    "adjoint_module",
    "build_seed",
    "cartan_matrix",
    "certify_generation",
    "certify_quasiminuscule_case",
    "certify_seed_hypotheses",
    "disjoint_pair",
    "find_mutation_path",
    "function_equal",
    "irreducible",
    "laurent_check",
    "minor",
    "multiplication_map",
    "mutate",
    "realize_minor",
    "tensor",
]
__version__ = "0.1.0"
