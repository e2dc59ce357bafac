"""Scalar special functions over real and complex arguments.

Everything downstream (the contour engine, the SNR model, the performance
measures) reduces to products of gamma-type factors evaluated on vertical
lines in the complex plane, plus Rician envelope moments.  This module
provides those primitives as pure, stateless functions:

* ``ln_gamma``      -- principal-branch log-gamma, complex argument
* ``upper_inc_gamma`` -- Gamma(a, x) for complex a and real x >= 0
* ``lower_inc_gamma`` -- gamma(v, y) for real v > 0, y >= 0
* ``reg_gamma_p`` / ``reg_gamma_q`` -- regularized incomplete gammas (real)
* ``bessel_i``      -- modified Bessel I0/I1 (optionally scaled by e^-x)
* ``rician_moments`` -- mean and second moment of a Rician envelope

All functions accept scalars; ``ln_gamma`` and ``upper_inc_gamma`` also
accept numpy arrays (the contour quadrature evaluates whole node batches
at once).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "DomainError",
    "GammaPoleError",
    "RicianParams",
    "ln_gamma",
    "upper_inc_gamma",
    "lower_inc_gamma",
    "reg_gamma_p",
    "reg_gamma_q",
    "bessel_i",
    "rician_moments",
]


class DomainError(ValueError):
    """An argument lies outside a function's domain."""


class GammaPoleError(ValueError):
    """A gamma factor was evaluated at a non-positive integer."""


# Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
# Uniformly accurate (~1e-15 relative in Gamma) on Re z >= 0.5, which is
# where every contour evaluation lives after the recurrence descent below.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])
_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)


def _lanczos_right(z):
    """Log-gamma via Lanczos; assumes Re z >= 0.5 elementwise."""
    w = z - 1.0
    series = np.full_like(z, _LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        series = series + _LANCZOS_C[k] / (w + k)
    t = w + (_LANCZOS_G + 0.5)
    return _HALF_LN_2PI + (w + 0.5) * np.log(t) - t + np.log(series)


def _check_poles(z):
    re, im = z.real, z.imag
    on_pole = (im == 0.0) & (re <= 0.0) & (re == np.floor(re))
    if np.any(on_pole):
        raise GammaPoleError(
            f"log-gamma pole at z = {z[on_pole].flat[0]}: non-positive integer"
        )


def ln_gamma(z):
    """Principal-branch complex log-gamma.

    For Re z < 0.5 the value is obtained by the recurrence
    lnGamma(z) = lnGamma(z + k) - sum_j log(z + j), which preserves the
    principal branch off the negative real axis.  Accepts a scalar or an
    ndarray; raises :class:`GammaPoleError` at non-positive integers.
    """
    zz = np.asarray(z, dtype=np.complex128)
    scalar = zz.ndim == 0
    zz = np.atleast_1d(zz).copy()
    _check_poles(zz)

    out = np.empty_like(zz)
    right = zz.real >= 0.5
    if np.any(right):
        out[right] = _lanczos_right(zz[right])
    if not np.all(right):
        zl = zz[~right]
        k = int(np.ceil(0.5 - zl.real.min()))
        shift = np.zeros_like(zl)
        for j in range(k):
            shift = shift + np.log(zl + j)
        out[~right] = _lanczos_right(zl + k) - shift
    return complex(out[0]) if scalar else out


def _upper_gamma_series(a, x):
    """Gamma(a,x) = Gamma(a) - gamma(a,x) with the lower-gamma power series.

    Cancellation-free in its selection region: either x < Re a + 1 (both
    terms are the same scale as the result) or |Im a| is large enough that
    Gamma(a) is exponentially negligible next to gamma(a,x) ~ x^a / a.
    """
    complete = np.exp(ln_gamma(a))
    term = 1.0 / a
    total = term.copy()
    max_iter = 500 + int(3 * x)
    for k in range(1, max_iter):
        term = term * (x / (a + k))
        total += term
        if np.max(np.abs(term) / (np.abs(total) + 1e-300)) < 1e-17:
            break
    lower = np.exp(a * math.log(x) - x) * total
    return complete - lower


def _upper_gamma_cf(a, x):
    """Gamma(a,x) by the Legendre continued fraction (modified Lentz)."""
    fpmin = 1e-300
    b = x + 1.0 - a
    small = np.abs(b) < fpmin
    if np.any(small):
        b[small] = fpmin
    c = np.full_like(a, 1.0 / fpmin)
    d = 1.0 / b
    h = d.copy()
    active = np.ones(a.shape, dtype=bool)
    for i in range(1, 5000):
        if not np.any(active):
            break
        an = -i * (i - a[active])
        b[active] += 2.0
        dd = an * d[active] + b[active]
        dd[np.abs(dd) < fpmin] = fpmin
        cc = b[active] + an / c[active]
        cc[np.abs(cc) < fpmin] = fpmin
        dd = 1.0 / dd
        delt = dd * cc
        h[active] *= delt
        d[active] = dd
        c[active] = cc
        still = np.abs(delt - 1.0) >= 1e-15
        idx = np.flatnonzero(active)
        active[idx[~still]] = False
    if np.any(active):
        # Lentz stalled (far outside the selection region); the series
        # route always converges and serves as the fallback.
        h[active] = np.nan
        fallback = _upper_gamma_series(a[active], x)
        result = np.exp(-x + a * math.log(x)) * h
        result[active] = fallback
        return result
    return np.exp(-x + a * math.log(x)) * h


def upper_inc_gamma(a, x):
    """Upper incomplete gamma Gamma(a, x) for complex a and real x >= 0.

    Entire in a for x > 0.  Uses the lower-gamma power series when
    x < Re a + 1 or when |Im a| is large (where the subtraction from
    Gamma(a) is cancellation-free), and the Legendre continued fraction
    otherwise.  For x = 0 reduces to Gamma(a), which requires Re a > 0.
    """
    if not (np.isfinite(x) and x >= 0.0):
        raise DomainError(f"upper_inc_gamma requires x >= 0, got {x}")
    aa = np.asarray(a, dtype=np.complex128)
    scalar = aa.ndim == 0
    aa = np.atleast_1d(aa)

    if x == 0.0:
        if np.any(aa.real <= 0.0):
            raise DomainError("upper_inc_gamma with x = 0 requires Re a > 0")
        out = np.exp(ln_gamma(aa))
        return complex(out[0]) if scalar else out

    out = np.empty_like(aa)
    use_series = (x < aa.real + 1.0) | (np.abs(aa.imag) > 4.0 * (x + 5.0))
    if np.any(use_series):
        out[use_series] = _upper_gamma_series(aa[use_series], x)
    if not np.all(use_series):
        out[~use_series] = _upper_gamma_cf(aa[~use_series].copy(), x)
    return complex(out[0]) if scalar else out


def reg_gamma_p(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x), real arguments.

    Stable for large a (everything happens in log space), so it also
    serves the SNR model where the gamma shape grows linearly with the
    number of reflecting elements.
    """
    if a <= 0.0 or x < 0.0:
        raise DomainError(f"reg_gamma_p requires a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0.0:
        return 0.0
    lg = ln_gamma(complex(a)).real
    if x < a + 1.0:
        term = 1.0 / a
        total = term
        k = 1
        while True:
            term *= x / (a + k)
            total += term
            if abs(term) < abs(total) * 1e-17 or k > 10000:
                break
            k += 1
        return total * math.exp(-x + a * math.log(x) - lg)
    return 1.0 - _reg_q_cf(a, x, lg)


def reg_gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0.0 or x < 0.0:
        raise DomainError(f"reg_gamma_q requires a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0.0:
        return 1.0
    lg = ln_gamma(complex(a)).real
    if x < a + 1.0:
        return 1.0 - reg_gamma_p(a, x)
    return _reg_q_cf(a, x, lg)


def _reg_q_cf(a: float, x: float, lg: float) -> float:
    fpmin = 1e-300
    b = x + 1.0 - a
    c = 1.0 / fpmin
    d = 1.0 / b if abs(b) > fpmin else 1.0 / fpmin
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < fpmin:
            d = fpmin
        c = b + an / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delt = d * c
        h *= delt
        if abs(delt - 1.0) < 1e-15:
            break
    arg = -x + a * math.log(x) - lg
    return math.exp(arg) * h if arg > -745.0 else 0.0


def lower_inc_gamma(v: float, y: float) -> float:
    """Unregularized lower incomplete gamma gamma(v, y), real arguments."""
    if v <= 0.0:
        raise DomainError(f"lower_inc_gamma requires v > 0, got {v}")
    if y < 0.0:
        raise DomainError(f"lower_inc_gamma requires y >= 0, got {y}")
    return reg_gamma_p(v, y) * math.exp(ln_gamma(complex(v)).real)


def bessel_i(order: int, x: float, scaled: bool = False) -> float:
    """Modified Bessel function of the first kind, order 0 or 1.

    With ``scaled=True`` returns e^-x I_order(x), which stays finite for
    arbitrarily large x (used by the Rician mean at high K factors).
    Power series for x <= 50, asymptotic expansion beyond.
    """
    if order not in (0, 1):
        raise DomainError(f"bessel_i supports orders 0 and 1, got {order}")
    if x < 0.0:
        raise DomainError(f"bessel_i requires x >= 0, got {x}")
    if x <= 50.0:
        half = 0.5 * x
        term = 1.0 if order == 0 else half
        total = term
        k = 1
        while True:
            term *= half * half / (k * (k + order))
            total += term
            if term < total * 1e-18 or k > 500:
                break
            k += 1
        return total * math.exp(-x) if scaled else total
    # asymptotic series; truncation error ~ e^(-2x), negligible here
    mu = 4.0 * order * order
    term = 1.0
    total = term
    for k in range(1, 30):
        term *= -(mu - (2 * k - 1) ** 2) / (8.0 * x * k)
        total += term
        if abs(term) < 1e-18:
            break
    pref = 1.0 / math.sqrt(2.0 * math.pi * x)
    if scaled:
        return pref * total
    return pref * total * math.exp(x)


@dataclass(frozen=True)
class RicianParams:
    """Rician envelope parameters: LOS amplitude mu, per-component NLOS
    variance sigma2 (so the NLOS power is 2*sigma2)."""

    mu: float
    sigma2: float

    def __post_init__(self):
        if self.mu < 0.0:
            raise DomainError(f"RicianParams requires mu >= 0, got {self.mu}")
        if self.sigma2 <= 0.0:
            raise DomainError(f"RicianParams requires sigma2 > 0, got {self.sigma2}")

    @property
    def k_factor(self) -> float:
        """LOS-to-NLOS power ratio K = mu^2 / (2 sigma2)."""
        return self.mu * self.mu / (2.0 * self.sigma2)

    @property
    def omega(self) -> float:
        """Total envelope power Omega = mu^2 + 2 sigma2."""
        return self.mu * self.mu + 2.0 * self.sigma2


def rician_moments(p: RicianParams) -> tuple[float, float]:
    """Mean and second moment of a Rician envelope.

    mean = sigma sqrt(pi/2) e^{-K/2} [(1+K) I0(K/2) + K I1(K/2)],
    second moment = Omega.  Evaluated with scaled Bessels so arbitrarily
    large K factors stay finite.
    """
    k = p.k_factor
    mean = math.sqrt(p.sigma2) * math.sqrt(math.pi / 2.0) * (
        (1.0 + k) * bessel_i(0, 0.5 * k, scaled=True)
        + k * bessel_i(1, 0.5 * k, scaled=True)
    )
    return mean, p.omega
