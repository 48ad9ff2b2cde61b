"""Generalized Yang-Baxter operators, braid representations and link invariants."""

from .braidkit import BraidWord, LinkSpec, default_catalog, parse_braid
from .gybcore import EgybOperator, Enhancement, GybOperator, GybType, r_nu, rep_trace
from .linkinv import evaluate, normalized_invariant, standard_egyb, t_invariant
from .so_n2 import build_gyb

__all__ = [
    "BraidWord",
    "LinkSpec",
    "default_catalog",
    "parse_braid",
    "EgybOperator",
    "Enhancement",
    "GybOperator",
    "GybType",
    "r_nu",
    "rep_trace",
    "evaluate",
    "normalized_invariant",
    "standard_egyb",
    "t_invariant",
    "build_gyb",
]

__version__ = "0.1.0"
