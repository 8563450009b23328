"""Closed-form reference values used by the harness."""
from __future__ import annotations

import math

from .errors import UnsupportedConstantError

_LN2 = math.log(2.0)

# rounds per vertex for the min-degree process to reach minimum degree k
ALPHA = {
    1: 1.0,
    2: _LN2 + math.log(1.0 + _LN2),
    3: math.log(_LN2 ** 2 + 2.0 * (1.0 + _LN2) * (1.0 + math.log(1.0 + _LN2))),
}


def closed_form_alpha(k: int) -> float:
    """Asymptotic rounds/n for minimum degree k; only k in {1, 2, 3} have closed forms."""
    try:
        return ALPHA[k]
    except (KeyError, TypeError):
        raise UnsupportedConstantError(
            f"no closed form for k={k!r}; available for k in {sorted(ALPHA)}") from None


def harmonic(m: int) -> float:
    return math.fsum(1.0 / i for i in range(1, m + 1))


def coupon_collector_mean(n: int) -> float:
    """Expected rounds until every vertex of [n-1] has been drawn from [n]."""
    return n * harmonic(n - 1)
