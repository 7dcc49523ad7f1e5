"""Search bounds and limits shared by every module.

Values can be overridden per call (keyword arguments) or, for the bound and
budget, through the environment.
"""
import logging
import os

logger = logging.getLogger(__name__)

DEFAULT_BOUND = 1000
DEFAULT_BUDGET = 1000
WORD_CAP = 32
HULL_SIZE_LIMIT = 5000
SUITE_N_CAP = 64
CONFIRMATION_SIDE = 12
VALIDATION_BOUND = 40
ORACLE_BOUND = 100
GERM_EXCLUSION_CAP = 8

BOUND_ENV = "GERMFORGE_DEFAULT_BOUND"
BUDGET_ENV = "GERMFORGE_DEFAULT_BUDGET"


def _positive_int_from_env(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return fallback
    try:
        value = int(raw)
    except ValueError:
        logger.warning("%s=%r is not an integer; using %d", name, raw, fallback)
        return fallback
    if value < 1:
        logger.warning("%s=%r must be positive; using %d", name, raw, fallback)
        return fallback
    return value


def default_bound() -> int:
    return _positive_int_from_env(BOUND_ENV, DEFAULT_BOUND)


def default_budget() -> int:
    return _positive_int_from_env(BUDGET_ENV, DEFAULT_BUDGET)


def resolve_bound(bound=None) -> int:
    if bound is None:
        return default_bound()
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    return bound


def resolve_budget(budget=None) -> int:
    if budget is None:
        return default_budget()
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    return budget
