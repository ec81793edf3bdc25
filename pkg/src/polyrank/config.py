"""Tunable caps for the search-flavoured parts of the package.

Everything here exists to turn a would-be non-termination into a loud
``SearchCapExceeded`` / ``CapExceeded``.  The exact defaults are generous
for desk-scale instances (dimension <= 4, coordinates in the hundreds).

The environment variable ``POLYRANK_CAP``, when set to a positive integer,
overrides the default closure-iteration cap of :func:`polyrank.closure.cg_rank`
and the default blow-up level cap used by the reverse-rank search.  Explicit
arguments always win over the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_RANK_CAP = 1000


@dataclass(frozen=True)
class SearchLimits:
    """Caps for lattice-point enumeration and subset-sum style expansions."""

    cell_cap: int = 2_000_000
    subset_cap: int = 16


@dataclass(frozen=True)
class RcgrCaps:
    """Budget of the alternating reverse-rank search.

    ``max_norm`` bounds the sup-norm of candidate escape directions,
    ``max_k`` bounds the blow-up level of the covering test.
    """

    max_norm: int = 10
    max_k: int = 30


def env_cap(default: int) -> int:
    """Return ``POLYRANK_CAP`` if set to a positive integer, else ``default``."""
    raw = os.environ.get("POLYRANK_CAP")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default


def default_rank_cap() -> int:
    return env_cap(DEFAULT_RANK_CAP)


def default_rcgr_caps() -> RcgrCaps:
    raw = os.environ.get("POLYRANK_CAP")
    if raw is None:
        return RcgrCaps()
    try:
        value = int(raw)
    except ValueError:
        return RcgrCaps()
    if value <= 0:
        return RcgrCaps()
    return RcgrCaps(max_norm=RcgrCaps.max_norm, max_k=value)
