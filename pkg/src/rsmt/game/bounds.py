"""Calculators for the tag-length / detection-probability requirements that
make the passive profile an equilibrium, one per protocol family.

Each function takes the derived u values (see game.utility) and returns the
minimal integer tag length l (at least 1), or the maximal admissible
detection-failure probability delta.
"""

from __future__ import annotations

import math


class BoundError(ValueError):
    pass


def _ceil_ell(bound: float) -> int:
    ell = math.ceil(bound)
    # Counter floating-point overshoot: accept ell-1 when it already meets the
    # bound up to 1 ulp-scale slack.
    if ell - 1 >= bound - 1e-12:
        ell -= 1
    return max(1, ell)


def required_ell_pd(u1: float, u2: float, u3: float, u4: float, t: int,
                    alpha: float | None = None) -> int:
    """Tag bits for the public-discussion protocol against a timid t-adversary.

    l >= max{1 + log2 t + log2((u3-u4)/(u2-u4-alpha)),
             1 + (1/t) log2((u1-u3)/alpha)}  for a free alpha in (0, u2-u4).
    For strictly timid tables, alpha = u2-u3 recovers the shortcut form.
    """
    if t < 1:
        raise BoundError("t must be >= 1")
    if alpha is None:
        alpha = (u2 - u4) / 2
    if not 0 < alpha < u2 - u4:
        raise BoundError(f"alpha={alpha} outside (0, u2-u4)=(0, {u2 - u4})")
    if not (u3 > u4 and u1 > u3):
        raise BoundError("need u1 > u3 > u4")
    term1 = 1 + math.log2(t) + math.log2((u3 - u4) / (u2 - u4 - alpha))
    term2 = 1 + (1 / t) * math.log2((u1 - u3) / alpha)
    return _ceil_ell(max(term1, term2))


def required_ell_pd_multi(u1p: float, u2p: float, u3p: float, u4p: float,
                          ts: list[int], alpha: float | None = None) -> int:
    """Multi-adversary form: the same formula with primed values, maximized
    over every adversary's corruption budget."""
    if not ts:
        raise BoundError("need at least one corruption budget")
    return max(required_ell_pd(u1p, u2p, u3p, u4p, t, alpha=alpha) for t in ts)


def required_delta_rss(u1: float, u2: float, u3: float) -> float:
    """Maximal detection-failure probability for the robust-sharing protocol
    against a strictly timid adversary: delta <= (u2-u3)/(u1-u3)."""
    if not u2 > u3:
        raise BoundError("inapplicable: requires u2 > u3 (strictly timid)")
    if not u1 > u3:
        raise BoundError("requires u1 > u3")
    return (u2 - u3) / (u1 - u3)


def required_ell_rss(u1: float, u2: float, u3: float, d: int) -> int:
    """Field bits so that the robust sharing's (d+1)/q failure rate meets
    required_delta_rss: l >= log2(d+1) + log2((u1-u3)/(u2-u3))."""
    delta = required_delta_rss(u1, u2, u3)
    return _ceil_ell(math.log2(d + 1) + math.log2(1.0 / delta))


def required_ell_p1(u1: float, u2: float, u4: float, n: int) -> int:
    """Minority-threshold list protocol:
    l >= log2((u1-u4)/(u2-u4)) + 2 log2(n+1) - 1."""
    if not (u1 >= u2 > u4):
        raise BoundError("need u1 >= u2 > u4")
    bound = math.log2((u1 - u4) / (u2 - u4)) + 2 * math.log2(n + 1) - 1
    return _ceil_ell(bound)


def required_ell_p2(u1p: float, u2p: float, u3pp: float) -> int:
    """Unanimous-threshold protocol: l >= log2((u1'-u3'')/(u2'-u3'')) - 1."""
    if not (u1p >= u2p > u3pp):
        raise BoundError("need u1' >= u2' > u3''")
    bound = math.log2((u1p - u3pp) / (u2p - u3pp)) - 1
    return _ceil_ell(bound)


def required_ell_p3(u_prime: tuple[float, float, float],
                    u_dprime: tuple[float, float, float], n: int) -> int:
    """Robust mixed-model protocol: the minority-protocol formula maximized
    over the primed and double-primed (u1*, u2*, u4*) triples."""
    return max(
        required_ell_p1(u1, u2, u4, n) for (u1, u2, u4) in (u_prime, u_dprime)
    )
