"""Exact-integer invariants of finite isometric extensions of Cantor minimal systems."""

from cantorext.abelian import AbHom, FgAbGroup, LimitOutcome
from cantorext.exactla import CapExceeded, ExactMatrix, SmithForm
from cantorext.groups import CosetSpace, FiniteGroup

__all__ = [
    "AbHom",
    "CapExceeded",
    "CosetSpace",
    "ExactMatrix",
    "FgAbGroup",
    "FiniteGroup",
    "LimitOutcome",
    "SmithForm",
]

__version__ = "0.1.0"
