"""Exception types shared across the package."""

import os

#: Default enumeration budget; override with the ENRICHCAT_BUDGET environment variable.
DEFAULT_BUDGET = int(os.environ.get("ENRICHCAT_BUDGET", "1000000"))


class EnrichCatError(Exception):
    pass


class BudgetExceeded(EnrichCatError):
    """An enumeration would exceed its configured bound."""


class RankMismatch(EnrichCatError, ValueError):
    pass


class BackendMismatch(EnrichCatError, ValueError):
    pass


class NotParallel(EnrichCatError, ValueError):
    pass


class FactorizationError(EnrichCatError):
    """A morphism does not factor through the requested universal cone."""


class CategoryMismatch(EnrichCatError, ValueError):
    pass


def check_budget(count, bound, what="enumeration"):
    if bound is None:
        bound = DEFAULT_BUDGET
    if count > bound:
        raise BudgetExceeded(f"{what} needs {count} items, bound is {bound}")
