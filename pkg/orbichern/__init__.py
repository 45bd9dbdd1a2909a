"""
orbichern v0.1.0

Exact generating functions for orbifold Chern classes of symmetric
products and wreath-product quotients, checked against brute-force
enumeration at desk scale.

Components:
- qexact.py: exact rationals and truncated power series
- grp.py: group specs, permutation groups, wreath products, homomorphism search
- parser.py: Lark grammar for group specs and cycle notation
- homcount.py: homomorphism censuses by cycle type
- diagalg.py: the free algebra of formal diagonal operators
- finmodel.py: finite G-set model and verification reports
- suites.py: verification matrices behind ``orbichern verify``
- cli.py: command-line interface
"""

__version__ = "0.1.0"
__license__ = "MIT"

__all__ = [
    "Series",
    "Rat",
    "GroupSpec",
    "FreeAbelian",
    "Cyclic",
    "PAdic",
    "Trivial",
    "Presentation",
    "FiniteGroup",
    "WreathElement",
    "JSequence",
    "CycleType",
    "HomCensus",
    "BaseClass",
    "BaseElement",
    "DiagMonomial",
    "DiagElement",
    "GSet",
    "ConstrFn",
    "GroupSpecParser",
    "parse_group_spec",
    "parse_finite_group",
    "OrbiChernError",
    "main",
]

from .qexact import Rat, Series
from .grp import (
    Cyclic,
    FiniteGroup,
    FreeAbelian,
    GroupSpec,
    JSequence,
    PAdic,
    Presentation,
    Trivial,
    WreathElement,
)
from .homcount import CycleType, HomCensus
from .diagalg import BaseClass, BaseElement, DiagElement, DiagMonomial
from .finmodel import ConstrFn, GSet
from .parser import GroupSpecParser, parse_finite_group, parse_group_spec
from .exceptions import OrbiChernError
from .cli import main

PYTHON_TARGET_VERSION = "3.8+"
