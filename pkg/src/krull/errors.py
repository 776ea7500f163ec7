"""Error taxonomy and resource budgets.

Exit-code contract for the CLI: 0 success, 1 mathematical refusal,
2 resource budget exceeded, 3 input error.
"""

from __future__ import annotations

import os


class KrullError(Exception):
    """Base class for all library errors."""


class CapacityError(KrullError):
    """A poset exceeds the downset-bitmask width."""


class Refusal(KrullError):
    """A hypothesis fails or no certificate exists; carries the failed check."""


class BudgetExceeded(KrullError):
    """A Groebner/search budget ran out before an answer was reached."""


class InputError(KrullError):
    """Malformed ring/poset/certificate input."""


DEFAULT_SPAIRS = 50_000
DEFAULT_DEGREE = 60


class Budget:
    """Mutable resource budget shared by one computation.

    Counts S-polynomial reductions and caps the total degree of
    intermediate polynomials.  Exhaustion raises BudgetExceeded rather
    than ever returning a wrong answer.
    """

    def __init__(self, spairs: int | None = None, degree: int | None = None):
        env_spairs, env_degree = _env_budget()
        self.spairs_left = spairs if spairs is not None else env_spairs
        self.max_degree = degree if degree is not None else env_degree

    def charge_spair(self) -> None:
        self.spairs_left -= 1
        if self.spairs_left < 0:
            raise BudgetExceeded("S-pair budget exhausted")

    def check_degree(self, deg: int) -> None:
        if deg > self.max_degree:
            raise BudgetExceeded(
                f"intermediate degree {deg} exceeds budget {self.max_degree}")


def _env_budget() -> tuple[int, int]:
    # HEITMANN_BUDGET is either "SPAIRS" or "SPAIRS,DEGREE".
    raw = os.environ.get("HEITMANN_BUDGET", "")
    if not raw:
        return DEFAULT_SPAIRS, DEFAULT_DEGREE
    parts = raw.split(",")
    try:
        spairs = int(parts[0])
        degree = int(parts[1]) if len(parts) > 1 else DEFAULT_DEGREE
    except ValueError as exc:
        raise InputError(f"cannot parse HEITMANN_BUDGET={raw!r}") from exc
    return spairs, degree
