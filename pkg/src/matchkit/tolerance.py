"""Global comparison tolerance.

Every stability predicate in the package reads "x > 0" as x > eps and
"x <= 0" as x <= eps, with a single documented tolerance.  Integer-valued
instances never come near the knife edge, so they exercise exact paths;
float instances get reproducible verdicts.  The CLI may override the
default through the MATCHKIT_EPS environment variable; library callers
pass ``eps`` explicitly instead.
"""

import math
import os

from .errors import DomainError

DEFAULT_EPS = 1e-9

_ENV_VAR = "MATCHKIT_EPS"


def resolve_eps() -> float:
    """Tolerance for CLI runs: MATCHKIT_EPS if set, else the default."""
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return DEFAULT_EPS
    try:
        value = float(raw)
    except ValueError:
        raise DomainError(f"{_ENV_VAR} must be a number, got {raw!r}") from None
    if not math.isfinite(value) or value < 0.0:
        raise DomainError(f"{_ENV_VAR} must be a finite non-negative number")
    return value
