"""Finite-model workbench for generalized I-algebras and 4-valued modal algebras."""

from .algebra import (FiniteAlgebra, Signature, SignatureError, Witness, check_homomorphism,
                      check_law, direct_product, eval_term, find_isomorphism, make_algebra)
from .bridge import check_c_axioms, represent_in_t4_power, translate
from .builtins import make_builtin
from .catalog import check_membership, diagnose, get_system
from .derived import derive_order, derive_structure
from .fileformat import format_algebra, parse_algebra, parse_algebras
from .search import EnumerationTask, check_conjecture, enumerate_models, enumerate_naive
from .terms import Law, parse_law, parse_term

__all__ = [
    "FiniteAlgebra", "Signature", "SignatureError", "Witness", "check_homomorphism",
    "check_law", "direct_product", "eval_term", "find_isomorphism", "make_algebra",
    "check_c_axioms", "represent_in_t4_power", "translate", "make_builtin",
    "check_membership", "diagnose", "get_system", "derive_order", "derive_structure",
    "format_algebra", "parse_algebra", "parse_algebras", "EnumerationTask",
    "check_conjecture", "enumerate_models", "enumerate_naive", "Law", "parse_law", "parse_term",
]
