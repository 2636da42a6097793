"""Statistical distributions and reduced-unit gas thermodynamics.

Units and variables are dimensionless throughout: k_B = 1, eta = beta
(epsilon - mu) for distributions, fugacity z = exp(beta mu) for the series
equations of state, and t = T/T_F with energies in Fermi-energy units for
the chemical-potential work.  Pressure means P lambda**3 / kT, density
means lambda**3 / v (thermal wavelength cubed over volume per particle),
and energy density means U lambda**3 / (V kT), so the particle mass and
Planck's constant never appear as numbers.

Distribution functions implement each model's closed form:

    FN:    q / (exp(eta) + q)
    CKN:   (1/q) / (exp(eta) + 1/q)
    PVC:   |ln( |exp(eta) - 1/q| / (exp(eta) + q) )| / (2 |ln q|)
    VPJC:  |ln( |exp(eta) - 1|   / (exp(eta) + q) )| / |ln q|

The PVC form is singular at eta = ln(1/q) and the VPJC form at eta = 0;
both are defined for 0 < q < 1 only, with the plain Fermi-Dirac function
1/(exp(eta) + 1) available separately as their q -> 1 limit.  The closed
forms for PVC/VPJC arise from the occupation-ratio condition
[n]/[n+1] = exp(-eta); `occupation_ratio_solve` re-solves that condition
by bisection as an independent cross-check.

The exact-trace averages deliberately coexist with the closed-form
distributions: for a single FN mode the exact two-state trace gives the
undeformed 1/(exp(eta)+1), not q/(exp(eta)+q), and this module surfaces
that disagreement as data rather than reconciling it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fdseries import f_gen, h_gen
from .models import (
    Model,
    SeriesConvergenceError,
    SingularPointError,
    require_open_unit_q,
    require_positive_q,
)
from .spectra import basic_number

# ---------------------------------------------------------------------------
# distribution functions


def fn_distribution(eta: float, q: float) -> float:
    """Mean occupation q / (exp(eta) + q) of the multimode FN gas."""
    require_positive_q(q)
    if eta > 0.0:
        w = math.exp(-eta)
        return q * w / (1.0 + q * w)
    return q / (math.exp(eta) + q)


def ckn_distribution(eta: float, q: float) -> float:
    """Mean occupation of the CKN gas; the FN form at q -> 1/q."""
    require_positive_q(q)
    return fn_distribution(eta, 1.0 / q)


def q1_limit_distribution(eta: float) -> float:
    """Plain Fermi-Dirac occupation 1 / (exp(eta) + 1)."""
    if eta > 0.0:
        w = math.exp(-eta)
        return w / (1.0 + w)
    return 1.0 / (math.exp(eta) + 1.0)


def _require_open_unit_with_limit_hint(q: float, name: str) -> None:
    require_positive_q(q)
    if q == 1.0:
        raise ValueError(
            f"the {name} closed form is a formal solution for 0 < q < 1 only; "
            "use q1_limit_distribution for the q = 1 limit"
        )
    if q > 1.0:
        raise ValueError(f"the {name} distribution requires 0 < q < 1, got {q}")


def pvc_distribution(eta: float, q: float) -> float:
    """PVC mean occupation; singular where exp(eta) = 1/q."""
    _require_open_unit_with_limit_hint(q, "PVC")
    if eta > 0.0:
        w = math.exp(-eta)
        num = abs(1.0 - w / q)
        den = 1.0 + q * w
    else:
        num = abs(math.exp(eta) - 1.0 / q)
        den = math.exp(eta) + q
    if num == 0.0:
        raise SingularPointError(
            f"PVC distribution is singular at eta = ln(1/q) = {-math.log(q)}"
        )
    return abs(math.log(num / den)) / (2.0 * abs(math.log(q)))


def vpjc_distribution(eta: float, q: float) -> float:
    """VPJC mean occupation; discontinuous (divergent) at eta = 0.

    For 0 < q < 1 the function vanishes at eta = ln((1-q)/2) on the
    occupied side; see `vpjc_zero_crossing`.
    """
    _require_open_unit_with_limit_hint(q, "VPJC")
    if eta == 0.0:
        raise SingularPointError("VPJC distribution is discontinuous at eta = 0")
    if eta > 0.0:
        ratio = -math.expm1(-eta) / (1.0 + q * math.exp(-eta))
    else:
        ratio = -math.expm1(eta) / (math.exp(eta) + q)
    return abs(math.log(ratio)) / abs(math.log(q))


def vpjc_zero_crossing(q: float) -> float:
    """The eta < 0 root ln((1-q)/2) of the VPJC distribution."""
    require_open_unit_q(q)
    return math.log((1.0 - q) / 2.0)


# ---------------------------------------------------------------------------
# occupation-ratio solver and exact traces


def _bisect(func, lo: float, hi: float, iterations: int = 200) -> float:
    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise ValueError("bisection bracket does not straddle a root")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = func(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def occupation_ratio_solve(model: Model, eta: float, q: float) -> float:
    """Continuous level n solving [n]/[n+1] = exp(-eta), by bisection.

    The unknown is y = q**n with the staggered sign of the basic numbers
    fixed by the branch the target falls on.  Restricted to eta > 0, where
    the branch is unambiguous.  For VPJC the solution is positive and equals
    the closed-form distribution; for PVC the distribution reports |n|, and
    on the near branch (0 < eta < ln((1-q**2)/(2q))) the continuous solution
    itself is negative.
    """
    if model not in (Model.PVC, Model.VPJC):
        raise ValueError("ratio solver applies to the PVC and VPJC families")
    require_open_unit_q(q)
    if not eta > 0.0:
        raise ValueError("the ratio condition has a single branch only for eta > 0")
    target = math.exp(-eta)
    log_q = math.log(q)

    if model is Model.VPJC:
        # [n] = (1 - y)/(1 + q), [n + 1] = (1 + q y)/(1 + q)
        func = lambda y: (1.0 - y) / (1.0 + q * y) - target
        y = _bisect(func, 0.0, 1.0)
        return math.log(y) / log_q

    if target == q:
        raise SingularPointError(
            f"no finite solution at eta = ln(1/q) = {-log_q}"
        )
    if target < q:
        # far branch: [n] = (1/y - y)/(q + 1/q), [n+1] = (1/(q y) + q y)/(q + 1/q)
        func = lambda y: (1.0 - y * y) / (1.0 / q + q * y * y) - target
        y = _bisect(func, 0.0, 1.0)
    else:
        # near branch: sign-flipped powers; y may exceed 1 (negative n)
        func = lambda y: (1.0 + y * y) / (1.0 / q - q * y * y) - target
        y = _bisect(func, 0.0, (1.0 - 1e-14) / q)
    return math.log(y) / log_q


@dataclass(frozen=True)
class TraceAverages:
    """Gibbs-trace averages over a Fock basis weighted by exp(-eta N).

    `identity_residual` is |<shifted> - exp(eta) <deformed>|, which vanishes
    for the untruncated trace by cyclicity; for truncated ladders it bounds
    the discarded tail.
    """

    mean_deformed: float
    mean_number: float
    mean_shifted: float
    identity_residual: float


def exact_trace_occupation(
    model: Model, q: float, eta: float, n_max: int = 60, d: int = 1
) -> TraceAverages:
    """Exact Gibbs averages of [N], N and [N+1] for one mode (or d FN modes).

    VPJC/PVC use a ladder truncated at n_max and need eta > 0; CKN uses its
    exact two states and FN the exact 2**d-state sums (via occupation
    multiplicities), both valid for any eta.

    Caveat for PVC: its spectrum grows like q**-n, so the untruncated trace
    of the deformed occupation converges only for exp(-eta) < q.  Outside
    that region the truncated averages are returned as computed but are
    boundary-dominated, and the identity residual grows with n_max instead
    of shrinking.
    """
    require_positive_q(q)
    if model in (Model.VPJC, Model.PVC):
        if not eta > 0.0:
            raise ValueError("truncated trace over an unbounded ladder needs eta > 0")
        levels = np.arange(n_max + 1)
        g = np.array([basic_number(model, n, q) for n in range(n_max + 2)])
        weights = np.exp(-eta * levels)
        z_sum = float(weights.sum())
        mean_deformed = float((g[: n_max + 1] * weights).sum() / z_sum)
        mean_number = float((levels * weights).sum() / z_sum)
        mean_shifted = float((g[1:] * weights).sum() / z_sum)
    elif model is Model.CKN:
        w = math.exp(-eta)
        z_sum = 1.0 + w
        mean_deformed = w / z_sum  # level-1 value is 1
        mean_number = w / z_sum
        mean_shifted = 1.0 / z_sum  # level-2 value vanishes
    elif model is Model.FN:
        if d != int(d) or not 1 <= d <= 12:
            raise ValueError(f"mode count must lie in 1..12, got {d!r}")
        d = int(d)
        x = math.exp(-eta)
        weights = [math.comb(d, n) * x**n for n in range(d + 1)]
        z_sum = math.fsum(weights)
        mean_deformed = (
            math.fsum(weights[n] * n * q ** (n - 1) for n in range(1, d + 1)) / z_sum
        )
        mean_number = math.fsum(weights[n] * n for n in range(1, d + 1)) / z_sum
        mean_shifted = (
            math.fsum(weights[n] * (d - n) * q**n for n in range(d + 1)) / z_sum
        )
    else:
        raise ValueError(f"no trace rule for model {model}")
    residual = abs(mean_shifted - math.exp(eta) * mean_deformed)
    return TraceAverages(mean_deformed, mean_number, mean_shifted, residual)


# ---------------------------------------------------------------------------
# equations of state


@dataclass(frozen=True)
class EosPoint:
    """Reduced-unit state: P lambda**3/kT, lambda**3/v, U lambda**3/(V kT), entropy.

    For the FN/CKN gas `entropy` is per particle, S/(N k); for the PVC gas
    it is the per-volume form S lambda**3 / (V k) times the multiplicity.
    """

    pressure: float
    density: float
    energy_density: float
    entropy: float


def fn_eos(q: float, z: float, tol: float = 1e-10) -> EosPoint:
    """FN gas state from the alternating series, on 0 < q z < 1."""
    require_positive_q(q)
    if not z > 0.0:
        raise ValueError(f"fugacity must be positive, got {z}")
    if q * z >= 1.0:
        raise SeriesConvergenceError(f"equation of state needs q*z < 1, got {q * z}")
    pressure = f_gen(2.5, q, z, tol).value
    density = f_gen(1.5, q, z, tol).value
    return EosPoint(
        pressure=pressure,
        density=density,
        energy_density=1.5 * pressure,
        entropy=2.5 * pressure / density - math.log(z),
    )


def ckn_eos(q: float, z: float, tol: float = 1e-10) -> EosPoint:
    """CKN gas state: the FN formulas at q -> 1/q (single source of CKN data)."""
    require_positive_q(q)
    return fn_eos(1.0 / q, z, tol)


def pvc_eos(q: float, z: float, g_mult: float = 1.0, tol: float = 1e-10) -> EosPoint:
    """PVC gas state from the two-sum series, on 0 < q < 1 and z/q < 1.

    `entropy` is g_mult * (5/2 h(5/2) - h(3/2)) per volume, as the
    closed-form entropy of this gas is stated: note it carries no -ln(z)
    term, unlike the per-particle FN form.
    """
    if not g_mult > 0.0:
        raise ValueError(f"multiplicity factor must be positive, got {g_mult}")
    h52 = h_gen(2.5, z, q, tol).value
    h32 = h_gen(1.5, z, q, tol).value
    return EosPoint(
        pressure=h52,
        density=h32,
        energy_density=1.5 * h52,
        entropy=g_mult * (2.5 * h52 - h32),
    )


def fn_pvc_comparison(q: float, z: float, tol: float = 1e-10) -> dict:
    """Side-by-side FN vs PVC pressure and per-volume entropy at equal fugacity.

    The FN entropy is converted to the per-volume form
    (5/2) f(5/2) - ln(z) f(3/2) so the two gases are compared in one unit.
    Returns the values plus the measured directions.
    """
    fn = fn_eos(q, z, tol)
    pvc = pvc_eos(q, z, 1.0, tol)
    fn_entropy_density = 2.5 * fn.pressure - math.log(z) * fn.density
    return {
        "fn_pressure": fn.pressure,
        "pvc_pressure": pvc.pressure,
        "fn_entropy_density": fn_entropy_density,
        "pvc_entropy_density": pvc.entropy,
        "fn_pressure_lower": fn.pressure < pvc.pressure,
        "fn_entropy_lower": fn_entropy_density < pvc.entropy,
    }


# ---------------------------------------------------------------------------
# virial expansion


def _poly_mul(a: np.ndarray, b: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1)
    for i in range(min(a.size, order + 1)):
        if a[i] == 0.0:
            continue
        width = min(b.size, order + 1 - i)
        out[i : i + width] += a[i] * b[:width]
    return out


def _series_inverse(d: np.ndarray, order: int) -> np.ndarray:
    """Coefficients e with sum_m e_m rho**m inverting rho = sum_l d_l z**l."""
    e = np.zeros(order + 1)
    e[1] = 1.0 / d[1]
    for m in range(2, order + 1):
        power = e.copy()  # e(rho)**1
        total = 0.0
        for j in range(2, m + 1):
            power = _poly_mul(power, e, order)
            total += d[j] * power[m]
        e[m] = -total / d[1]
    return e


def _series_compose(outer: np.ndarray, inner: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1)
    power = np.zeros(order + 1)
    power[0] = 1.0
    for l in range(1, order + 1):
        power = _poly_mul(power, inner, order)
        out += outer[l] * power
    return out


def virial_coefficients(model: Model, q: float, orders: int = 3) -> np.ndarray:
    """Virial coefficients a_1..a_orders of P v / kT = sum a_k (lambda**3/v)**(k-1).

    Obtained by power-series reversion of the density series in z followed
    by composition into the pressure series, at coefficient level.  The
    deformation enters both series only through (q z)**l, so the fitted
    coefficients come out q-independent; doing the reversion in z keeps that
    a measured outcome instead of an assumption.  Supports 2 <= orders <= 6.
    """
    if model is Model.FN:
        y = require_positive_q(q)
    elif model is Model.CKN:
        y = 1.0 / require_positive_q(q)
    else:
        raise ValueError("virial expansion is provided for the FN and CKN families")
    if orders != int(orders) or not 2 <= orders <= 6:
        raise ValueError(f"orders must be an integer in 2..6, got {orders!r}")
    orders = int(orders)

    density = np.zeros(orders + 1)
    pressure = np.zeros(orders + 1)
    for l in range(1, orders + 1):
        sign = 1.0 if l % 2 else -1.0
        density[l] = sign * y**l / l**1.5
        pressure[l] = sign * y**l / l**2.5
    inverse = _series_inverse(density, orders)
    coeffs = _series_compose(pressure, inverse, orders)
    return coeffs[1 : orders + 1].copy()


# ---------------------------------------------------------------------------
# low-temperature chemical potential

_SOMMERFELD = (1.0, math.pi**2 / 8.0, 7.0 * math.pi**4 / 640.0)


def _validate_t(t: float) -> float:
    if not 0.0 < t <= 0.2:
        raise ValueError(f"reduced temperature must lie in (0, 0.2], got {t}")
    return float(t)


def fn_mu_lowT(t: float, q: float) -> float:
    """Closed-form mu/eps_F = -t ln q + 1 - (pi**2/12) t**2."""
    _validate_t(t)
    require_positive_q(q)
    return -t * math.log(q) + 1.0 - (math.pi**2 / 12.0) * t * t


def ckn_mu_lowT(t: float, q: float) -> float:
    """CKN chemical potential: the FN form at q -> 1/q."""
    require_positive_q(q)
    return fn_mu_lowT(t, 1.0 / q)


def fn_mu_numeric(t: float, q: float, sommerfeld_terms: int = 2) -> float:
    """mu/eps_F from the low-temperature density equation, solved for ln(q z).

    Fixes the density at its T = 0 Fermi-sphere value, writes the density
    equation as t**1.5 L**1.5 [1 + (pi**2/8) L**-2 + ...] = 1 with
    L = ln(q z), solves for L by bisection and returns t ln z = t (L - ln q).
    Agrees with `fn_mu_lowT` through second order in t.
    """
    _validate_t(t)
    require_positive_q(q)
    if sommerfeld_terms not in (1, 2, 3):
        raise ValueError("sommerfeld_terms must be 1, 2 or 3")
    coeffs = _SOMMERFELD[:sommerfeld_terms]

    def lhs(big_l: float) -> float:
        bracket = math.fsum(c * big_l ** (-2 * k) for k, c in enumerate(coeffs))
        return t**1.5 * big_l**1.5 * bracket - 1.0

    lo, hi = 1.5, max(4.0, 4.0 / t)
    big_l = _bisect(lhs, lo, hi)
    return t * (big_l - math.log(q))


def ckn_mu_numeric(t: float, q: float, sommerfeld_terms: int = 2) -> float:
    """CKN numeric chemical potential: the FN solver at q -> 1/q."""
    require_positive_q(q)
    return fn_mu_numeric(t, 1.0 / q, sommerfeld_terms)
