"""
Engine configuration

Budgets are set by keyword arguments or, for defaults, by the
ORBICHERN_BUDGET environment variable. There are no configuration files.
"""

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exceptions import PreconditionError

BUDGET_ENV_VAR = "ORBICHERN_BUDGET"

DEFAULT_HOM_BUDGET = 10 ** 8
DEFAULT_GROUP_CAP = 10 ** 6


def parse_budget(text: str) -> int:
    """Parse a budget such as ``100000`` or ``1e7`` into a positive integer"""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise PreconditionError(f"invalid budget '{text}'", operation="parse_budget")
    if value.denominator != 1 or value <= 0:
        raise PreconditionError(f"budget must be a positive integer, got '{text}'",
                                operation="parse_budget")
    return int(value)


@dataclass(frozen=True)
class EngineConfig:
    """Limits shared by the enumeration kernels"""

    hom_budget: int = DEFAULT_HOM_BUDGET
    group_cap: int = DEFAULT_GROUP_CAP

    @classmethod
    def from_env(cls) -> "EngineConfig":
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None or not raw.strip():
            return cls()
        return cls(hom_budget=parse_budget(raw))


def default_config() -> EngineConfig:
    return EngineConfig.from_env()


def resolve_budget(budget: Optional[int]) -> int:
    """Explicit budget if given, otherwise the environment default"""
    if budget is not None:
        return budget
    return default_config().hom_budget
