"""Configuration constants.

All behaviour is flag-driven from the CLI; these are the defaults the flags
fall back to.  Tests patch them with ``patch.object``.
"""

from __future__ import annotations

# ---------------------------------------------------------------------------
# Graph capacity
# ---------------------------------------------------------------------------

DEFAULT_ORDER_CAP = 32  # one machine word per adjacency row
MAX_ORDER_CAP = 64

# ---------------------------------------------------------------------------
# Algorithm budgets
# ---------------------------------------------------------------------------

SPECTRUM_MAX_ORDER = 20  # subset DP holds 2^(n-1) endpoint sets per source
DEFAULT_HAMILTON_CAP = 2
KAPPA_CAP = 3

GENERATE_MAX_UNPRUNED = 12
GENERATE_MAX_PRUNED = 14

# Number of isomorphism classes of graphs of order n (n = 0..14).
GRAPH_COUNTS: tuple[int, ...] = (
    1,
    1,
    2,
    4,
    11,
    34,
    156,
    1044,
    12346,
    274668,
    12005168,
    1018997864,
    165091172592,
    50502031367952,
    29054155657235488,
)

# ---------------------------------------------------------------------------
# Verification runs
# ---------------------------------------------------------------------------

DEFAULT_JOBS = 1
DEFAULT_BUDGET_GRAPHS: int | None = None
DEFAULT_BUDGET_SECONDS: float | None = None

# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------

EXIT_PASS = 0
EXIT_VIOLATION = 1
EXIT_INCOMPLETE = 2
EXIT_USAGE = 3
EXIT_COUNTEREXAMPLE = 4
