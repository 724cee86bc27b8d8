"""Weighted structured argumentation: arguments, intrinsic strength, principles and graph semantics."""

__version__ = "0.1.0"

from .argument import Argument, enumerate_arguments, is_isomorphic, make_inference, make_premise
from .model import KnowledgeBase, Literal, Multiset, Rule, Theory, complement, lit, validate_theory
from .strength import get_method, strength

__all__ = [
    "Argument",
    "KnowledgeBase",
    "Literal",
    "Multiset",
    "Rule",
    "Theory",
    "__version__",
    "complement",
    "enumerate_arguments",
    "get_method",
    "is_isomorphic",
    "lit",
    "make_inference",
    "make_premise",
    "strength",
    "validate_theory",
]
