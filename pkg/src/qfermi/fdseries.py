"""Series evaluation of the generalized Fermi-Dirac functions.

Two families are provided, each returned as a value with a certified
truncation bound:

    f(order, q, z) = sum_{l>=1} (-1)**(l-1) (q z)**l / l**order
    h(order, z, q) = (1 / (2 ln q)) * ( sum_{k>=1} (-1)**(k+1) (q z)**k / k**(order+1)
                                        - sum_{k>=1} (z/q)**k / k**(order+1) )

The f-family is an alternating series in y = q z, accepted on 0 < y <= 1
with the first-omitted-term remainder bound.  The h-family needs 0 < q < 1
and z/q < 1 strictly; its second (non-alternating) sum is bounded by a
geometric tail.  Evaluation is series-only: the degenerate regime beyond
the convergence disc is reached through the low-temperature expansions in
`thermo`, never by analytic continuation here.

At order 1 the f-series is the Mercator series, so it is summed in closed
form as log1p(q z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import SeriesConvergenceError, require_positive_q

_MAX_TERMS = 20_000_000
_CHUNK = 1 << 20
_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class SeriesValue:
    """A partial sum, a rigorous bound on the discarded tail, and the term count."""

    value: float
    error_bound: float
    terms_used: int


def _validate_common(order: float, z: float, tol: float) -> None:
    if not order >= 0.5:
        raise ValueError(f"series order must be >= 1/2, got {order}")
    if not (math.isfinite(z) and z >= 0.0):
        raise ValueError(f"fugacity must be nonnegative and finite, got {z}")
    if not tol > 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")


def _cutoff(bound, tol: float, what: str) -> int:
    """Smallest L with bound(L) <= tol; bound must be decreasing in L."""
    if bound(1) <= tol:
        return 1
    hi = 2
    while bound(hi) > tol:
        hi *= 2
        if hi > _MAX_TERMS:
            raise SeriesConvergenceError(
                f"{what}: tolerance {tol} needs more than {_MAX_TERMS} terms"
            )
    lo = hi // 2  # bound(lo) > tol
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if bound(mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def _chunked_sum(y: float, expo: float, n_terms: int, alternating: bool) -> float:
    partials = []
    start = 1
    while start <= n_terms:
        stop = min(n_terms, start + _CHUNK - 1)
        ls = np.arange(start, stop + 1, dtype=np.float64)
        terms = np.power(y, ls) * np.power(ls, -expo)
        if alternating:
            terms[start % 2 :: 2] *= -1.0  # negate the even-l entries
        partials.append(float(np.sum(terms)))
        start = stop + 1
    return math.fsum(partials)


def _alternating_sum(y: float, expo: float, tol: float):
    """sum (-1)**(l-1) y**l / l**expo with the first-omitted-term bound."""
    term = lambda l: y**l * l**-expo
    n_terms = _cutoff(lambda l: term(l + 1), tol, "alternating series")
    return _chunked_sum(y, expo, n_terms, True), term(n_terms + 1), n_terms


def _positive_sum(r: float, expo: float, tol: float):
    """sum r**k / k**expo for 0 < r < 1 with a geometric tail bound."""
    tail = lambda l: r ** (l + 1) * (l + 1) ** -expo / (1.0 - r)
    n_terms = _cutoff(tail, tol, "geometric-tail series")
    return _chunked_sum(r, expo, n_terms, False), tail(n_terms), n_terms


def f_gen(order: float, q: float, z: float, tol: float = 1e-12) -> SeriesValue:
    """Generalized Fermi-Dirac function of the q-scaled fugacity.

    Depends on q and z only through y = q z, so f(order, q, z) equals
    f(order, 1, q z) identically.  Requires y <= 1; diverges beyond.
    """
    require_positive_q(q)
    _validate_common(order, z, tol)
    y = q * z
    if y > 1.0:
        raise SeriesConvergenceError(f"series diverges for q*z = {y} > 1")
    if y == 0.0:
        return SeriesValue(0.0, 0.0, 1)
    if order == 1:
        value = math.log1p(y)
        bound = 4.0 * _EPS * (1.0 + abs(value))
        if bound > tol:
            raise SeriesConvergenceError(
                f"tolerance {tol} is below evaluable precision {bound}"
            )
        return SeriesValue(value, bound, 1)
    total, bound, n_terms = _alternating_sum(y, order, tol)
    return SeriesValue(total, bound, n_terms)


def standard_fd(order: float, z: float, tol: float = 1e-12) -> SeriesValue:
    """Undeformed Fermi-Dirac function: the q = 1 case of `f_gen`, z <= 1."""
    if z > 1.0:
        raise SeriesConvergenceError(f"series form requires z <= 1, got {z}")
    return f_gen(order, 1.0, z, tol)


def h_gen(order: float, z: float, q: float, tol: float = 1e-12) -> SeriesValue:
    """Two-sum generalized Fermi-Dirac function of the Pauli-violating gas.

    Defined for 0 < q < 1 with z/q < 1; the 1/(2 ln q) prefactor is negative
    there and the second sum dominates, so values are positive for small z.
    """
    require_positive_q(q)
    if q >= 1.0:
        raise ValueError("h-series requires 0 < q < 1 (no q = 1 limit exists)")
    _validate_common(order, z, tol)
    r = z / q
    if r >= 1.0:
        raise SeriesConvergenceError(f"second sum diverges for z/q = {r} >= 1")
    if z == 0.0:
        return SeriesValue(0.0, 0.0, 1)
    log_q = math.log(q)
    tol_each = tol * abs(log_q)  # combined bound /(2 |ln q|) then stays <= tol
    s_alt, e_alt, n_alt = _alternating_sum(q * z, order + 1.0, tol_each)
    s_pos, e_pos, n_pos = _positive_sum(r, order + 1.0, tol_each)
    value = (s_alt - s_pos) / (2.0 * log_q)
    bound = (e_alt + e_pos) / (2.0 * abs(log_q))
    return SeriesValue(value, bound, n_alt + n_pos)
