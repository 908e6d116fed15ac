"""Cancellation-safe special functions for the torque kernels.

The central objects are the oscillatory kernels

    Delta(v) = (3 - 2 v^2 + v^4) sin^2 v - v (3 - v^2) sin 2v + 3 v^2 cos^2 v
    phi(v)   = -9 - 2 v^2 - v^4 + (9 - 16 v^2 + 3 v^4) cos 2v
               + v (18 - 8 v^2 + v^4) sin 2v

both of which cancel catastrophically for small argument (Delta ~ (2/3) v^6,
phi ~ -(4/9) v^8), and the thermal spectral integrals

    f_n(t) = int_0^inf dx x^n / ((x^2 + 1) (e^{x/t} - 1))

whose closed form for odd n = 2k+1 is an alternating Gamma * zeta * t-power
sum terminating in a digamma block.

Small arguments are handled by Taylor series whose coefficients were
generated symbolically (exact rationals) from the defining expressions; the
switchover points are chosen so the first dropped term is far below the
target accuracy.  All functions are pure and accept scalars or numpy arrays
where noted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

__all__ = [
    "DomainError",
    "KernelValue",
    "ThermalFunctionOrder",
    "delta",
    "phi",
    "phi_kernel",
    "delta_kernel",
    "phi_ratio",
    "sine_integral",
    "cosine_integral",
    "digamma",
    "zeta_even",
    "thermal_f",
    "PHI_SERIES_SWITCH",
    "DELTA_SERIES_SWITCH",
]


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


# ----------------------------------------------------------------------
# Series coefficients, generated exactly from the defining expressions.
#
# _PHI_COEFFS[k] is the coefficient of v^(2k) in phi(v)/v^8; the first two
# entries are the published small-argument behavior -(4/9) v^8 + (28/225) v^10.
# _DELTA_COEFFS[k] is the coefficient of v^(2k) in Delta(v)/v^6.
# ----------------------------------------------------------------------

_PHI_COEFFS = np.array([
    -0.4444444444444444,      # v^8
    0.12444444444444444,      # v^10
    -0.013968253968253968,    # v^12
    0.0008599983203157807,    # v^14
    -3.359368438733518e-05,   # v^16
    9.083606967204851e-07,    # v^18
    -1.8028001567096216e-08,  # v^20
    2.7395802765434343e-10,   # v^22
    -3.291257769302753e-12,   # v^24
    3.2053356378755226e-14,   # v^26
    -2.582216250406813e-16,   # v^28
    1.749607512358494e-18,    # v^30
    -1.0110369498247136e-20,  # v^32
    5.0421329468968017e-23,   # v^34
    -2.1923430378085267e-25,  # v^36
    8.384937729442266e-28,    # v^38
    -2.84294502793242e-30,    # v^40
    8.604109782470074e-33,    # v^42
    -2.338723258760414e-35,   # v^44
    5.740887838338458e-38,    # v^46
    -1.2789818785793127e-40,  # v^48
    2.5977138084613864e-43,   # v^50
    -4.829942654006538e-46,   # v^52
])

_DELTA_COEFFS = np.array([
    0.6666666666666666,       # v^6
    -0.2222222222222222,      # v^8
    0.03111111111111111,      # v^10
    -0.002328042328042328,    # v^12
    0.00010749979003947259,   # v^14
    -3.3593684387335183e-06,  # v^16
    7.569672472670708e-08,    # v^18
    -1.2877143976497297e-09,  # v^20
    1.7122376728396464e-11,   # v^22
    -1.8284765385015293e-13,  # v^24
    1.6026678189377614e-15,   # v^26
    -1.1737346592758241e-17,  # v^28
    7.290031301493725e-20,    # v^30
    -3.8886036531719753e-22,  # v^32
    1.8007617667488575e-24,   # v^34
    -7.307810126028422e-27,   # v^36
])

#: Series/direct switchover for phi.  At v = 2 the first dropped series term
#: (order v^54) is ~1e-29 relative to (4/9) v^8, and direct evaluation loses
#: no more than a few bits, so both branches are accurate to <1e-13 here.
PHI_SERIES_SWITCH = 2.0

#: Series/direct switchover for Delta (leading behavior (2/3) v^6).
DELTA_SERIES_SWITCH = 1.0

# zeta at even integers 2..16 via pi-power closed forms; the remaining even
# values (needed only by the small-t tail series of thermal_f) are frozen
# numerically.  _ZETA_EVEN[k] = zeta(2k); index 0 unused.
_PI = math.pi
_ZETA_EVEN = [
    math.inf,
    _PI**2 / 6,
    _PI**4 / 90,
    _PI**6 / 945,
    _PI**8 / 9450,
    _PI**10 / 93555,
    691 * _PI**12 / 638512875,
    2 * _PI**14 / 18243225,
    3617 * _PI**16 / 325641566250,
    1.000003817293265,        # zeta(18)
    1.0000009539620338,       # zeta(20)
    1.0000002384505027,       # zeta(22)
    1.000000059608189,        # zeta(24)
    1.0000000149015549,       # zeta(26)
    1.000000003725334,        # zeta(28)
    1.0000000009313275,       # zeta(30)
    1.000000000232831,        # zeta(32)
    1.0000000000582077,       # zeta(34)
    1.000000000014552,        # zeta(36)
    1.000000000003638,        # zeta(38)
    1.0000000000009095,       # zeta(40)
    1.0000000000002274,       # zeta(42)
    1.0000000000000568,       # zeta(44)
    1.0000000000000142,       # zeta(46)
    1.0000000000000036,       # zeta(48)
    1.0000000000000009,       # zeta(50)
]


def zeta_even(two_k: int) -> float:
    """Riemann zeta at a positive even integer argument."""
    if two_k % 2 or two_k < 2:
        raise DomainError(f"zeta_even expects a positive even integer, got {two_k}")
    k = two_k // 2
    if k >= len(_ZETA_EVEN):
        raise DomainError(f"zeta_even table covers arguments up to {2*(len(_ZETA_EVEN)-1)}")
    return _ZETA_EVEN[k]


# ----------------------------------------------------------------------
# Kernels
# ----------------------------------------------------------------------

def _check_nonneg(v, name):
    arr = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: non-finite argument")
    if np.any(arr < 0):
        raise DomainError(f"{name}: argument must be >= 0")
    return arr


def _phi_direct(v):
    v2 = v * v
    v4 = v2 * v2
    return (-9.0 - 2.0 * v2 - v4
            + (9.0 - 16.0 * v2 + 3.0 * v4) * np.cos(2.0 * v)
            + v * (18.0 - 8.0 * v2 + v4) * np.sin(2.0 * v))


def _delta_direct(v):
    v2 = v * v
    s = np.sin(v)
    c = np.cos(v)
    return ((3.0 - 2.0 * v2 + v2 * v2) * s * s
            - v * (3.0 - v2) * np.sin(2.0 * v)
            + 3.0 * v2 * c * c)


def _series_eval(v, coeffs):
    """Horner evaluation in v^2 of a stabilized ratio series."""
    v2 = np.asarray(v) ** 2
    out = np.full_like(v2, coeffs[-1])
    for c in coeffs[-2::-1]:
        out = out * v2 + c
    return out


_PHI_COEFFS_LIST = tuple(_PHI_COEFFS.tolist())
_DELTA_COEFFS_LIST = tuple(_DELTA_COEFFS.tolist())


def _phi_ratio8_scalar(v: float) -> float:
    """phi(v)/v^8 for scalar v >= 0; pure-math fast path for quadrature."""
    if v < PHI_SERIES_SWITCH:
        v2 = v * v
        acc = 0.0
        for c in reversed(_PHI_COEFFS_LIST):
            acc = acc * v2 + c
        return acc
    v2 = v * v
    v4 = v2 * v2
    return (-9.0 - 2.0 * v2 - v4
            + (9.0 - 16.0 * v2 + 3.0 * v4) * math.cos(2.0 * v)
            + v * (18.0 - 8.0 * v2 + v4) * math.sin(2.0 * v)) / v**8


def _phi_ratio8(v):
    """phi(v)/v^8, stable for all v >= 0 (array-valued)."""
    v = np.asarray(v, dtype=float)
    small = v < PHI_SERIES_SWITCH
    out = np.empty_like(v)
    if np.any(small):
        out[small] = _series_eval(v[small], _PHI_COEFFS)
    if np.any(~small):
        vb = v[~small]
        out[~small] = _phi_direct(vb) / vb**8
    return out


def phi(v):
    """Torque kernel phi(v).

    Uses the exact Taylor series below ``PHI_SERIES_SWITCH`` (the direct
    expression cancels to O(v^8) there) and the defining expression above.
    Accepts scalars or arrays; relative accuracy better than 1e-12 wherever
    the value is nonzero.
    """
    if isinstance(v, (float, int)):
        v = float(v)
        if not math.isfinite(v):
            raise DomainError("phi: non-finite argument")
        if v < 0:
            raise DomainError("phi: argument must be >= 0")
        if v < PHI_SERIES_SWITCH:
            return _phi_ratio8_scalar(v) * v**8
        v2 = v * v
        v4 = v2 * v2
        return (-9.0 - 2.0 * v2 - v4
                + (9.0 - 16.0 * v2 + 3.0 * v4) * math.cos(2.0 * v)
                + v * (18.0 - 8.0 * v2 + v4) * math.sin(2.0 * v))
    arr = np.atleast_1d(_check_nonneg(v, "phi"))
    out = np.empty_like(arr)
    small = arr < PHI_SERIES_SWITCH
    if np.any(small):
        vs = arr[small]
        out[small] = _series_eval(vs, _PHI_COEFFS) * vs**8
    if np.any(~small):
        out[~small] = _phi_direct(arr[~small])
    return out if np.ndim(v) else float(out[0])


def delta(v):
    """Interaction kernel Delta(v); leading small-argument behavior (2/3) v^6."""
    if isinstance(v, (float, int)):
        v = float(v)
        if not math.isfinite(v):
            raise DomainError("delta: non-finite argument")
        if v < 0:
            raise DomainError("delta: argument must be >= 0")
        if v < DELTA_SERIES_SWITCH:
            v2 = v * v
            acc = 0.0
            for c in reversed(_DELTA_COEFFS_LIST):
                acc = acc * v2 + c
            return acc * v**6
        s, c = math.sin(v), math.cos(v)
        v2 = v * v
        return ((3.0 - 2.0 * v2 + v2 * v2) * s * s
                - v * (3.0 - v2) * math.sin(2.0 * v) + 3.0 * v2 * c * c)
    arr = np.atleast_1d(_check_nonneg(v, "delta"))
    out = np.empty_like(arr)
    small = arr < DELTA_SERIES_SWITCH
    if np.any(small):
        vs = arr[small]
        out[small] = _series_eval(vs, _DELTA_COEFFS) * vs**6
    if np.any(~small):
        out[~small] = _delta_direct(arr[~small])
    return out if np.ndim(v) else float(out[0])


def phi_series(v):
    """phi(v) from the Taylor series only (exposed for switchover tests)."""
    arr = _check_nonneg(v, "phi_series")
    return _series_eval(arr, _PHI_COEFFS) * np.asarray(arr, dtype=float)**8


def phi_ratio(v, n: int):
    """phi(v)/v^n for n in 4..8 with the v -> 0 limit taken analytically.

    The limit is -4/9 for n = 8 and 0 for n < 8 (phi ~ -(4/9) v^8).
    Smooth across the series/direct switchover.
    """
    if not (4 <= int(n) <= 8):
        raise DomainError(f"phi_ratio: n must be in 4..8, got {n}")
    n = int(n)
    if isinstance(v, (float, int)):
        v = float(v)
        if not math.isfinite(v):
            raise DomainError("phi_ratio: non-finite argument")
        if v < 0:
            raise DomainError("phi_ratio: argument must be >= 0")
        r = _phi_ratio8_scalar(v)
        return r if n == 8 else r * v ** (8 - n)
    arr = _check_nonneg(v, "phi_ratio")
    scalar = arr.ndim == 0
    a = np.atleast_1d(arr)
    out = _phi_ratio8(a)
    if n < 8:
        out = out * a ** (8 - n)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class KernelValue:
    """A kernel evaluation with a conservative absolute error bound."""

    v: float
    value: float
    abs_err_bound: float

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.abs_err_bound >= 0):
            raise DomainError("KernelValue: value must be finite, bound >= 0")


_EPS = np.finfo(float).eps


def phi_kernel(v: float) -> KernelValue:
    """phi(v) together with an absolute error bound for the branch used."""
    val = phi(float(v))
    if v < PHI_SERIES_SWITCH:
        # series: rounding on ~23 Horner terms plus negligible truncation
        bound = 8.0 * _EPS * abs(_PHI_COEFFS[0]) * v**8 + 1e-29 * max(v, 1.0) ** 8
    else:
        v2, v4 = v * v, v**4
        term_sum = (9 + 2 * v2 + v4) + abs(9 - 16 * v2 + 3 * v4) + v * abs(18 - 8 * v2 + v4)
        bound = 4.0 * _EPS * term_sum
    return KernelValue(v=float(v), value=val, abs_err_bound=float(bound))


def delta_kernel(v: float) -> KernelValue:
    """Delta(v) together with an absolute error bound for the branch used."""
    val = delta(float(v))
    if v < DELTA_SERIES_SWITCH:
        bound = 8.0 * _EPS * abs(_DELTA_COEFFS[0]) * v**6 + 1e-22 * max(v, 1.0) ** 6
    else:
        v2 = v * v
        term_sum = (3 + 2 * v2 + v2 * v2) + v * (3 + v2) + 3 * v2
        bound = 4.0 * _EPS * term_sum
    return KernelValue(v=float(v), value=val, abs_err_bound=float(bound))


# ----------------------------------------------------------------------
# Sine integral, digamma
# ----------------------------------------------------------------------

def sine_integral(x):
    """Si(x) = int_0^x dt sin(t)/t for x >= 0."""
    arr = _check_nonneg(x, "sine_integral")
    si, _ = _sp.sici(arr)
    return float(si) if arr.ndim == 0 else si


def cosine_integral(x):
    """Ci(x) for x > 0 (companion of Si for the closed-form radial integrals)."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("cosine_integral: argument must be positive and finite")
    _, ci = _sp.sici(arr)
    return float(ci) if arr.ndim == 0 else ci


def digamma(z):
    """psi(z) for z > 0."""
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("digamma: argument must be positive and finite")
    out = _sp.digamma(arr)
    return float(out) if arr.ndim == 0 else out


# ----------------------------------------------------------------------
# Thermal spectral functions f_n
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ThermalFunctionOrder:
    """Order of a thermal function f_n: odd n = 2k + 1 with k >= 1."""

    n: int

    def __post_init__(self):
        if self.n < 3 or self.n % 2 == 0:
            raise DomainError(f"thermal function order must be odd and >= 3, got {self.n}")

    @property
    def k(self) -> int:
        return (self.n - 1) // 2


def _thermal_f_closed(k: int, t: float) -> float:
    """Closed form: alternating Gamma*zeta*t-power sum plus the digamma block."""
    acc = 0.0
    for j in range(1, k + 1):
        sign = -1.0 if (k - j) % 2 else 1.0
        acc += sign * math.gamma(2 * j) * zeta_even(2 * j) * t ** (2 * j)
    block = 0.5 * (digamma(1.0 / (2.0 * _PI * t)) + math.log(2.0 * _PI * t) + _PI * t)
    sign = 1.0 if k % 2 else -1.0      # (-1)^(k+1)
    return acc + sign * block


def _thermal_f_small_t(k: int, t: float) -> float:
    """Asymptotic tail series for t -> 0.

    The polynomial part of the closed form cancels exactly against the
    digamma asymptotics, leaving

        f_{2k+1}(t) = sum_{m >= k+1} (-1)^(m-k-1) Gamma(2m) zeta(2m) t^(2m),

    summed here to its smallest term.
    """
    acc = 0.0
    prev = math.inf
    for m in range(k + 1, len(_ZETA_EVEN)):
        term = math.gamma(2 * m) * zeta_even(2 * m) * t ** (2 * m)
        if term > prev:        # asymptotic series started diverging
            break
        sign = -1.0 if (m - k - 1) % 2 else 1.0
        acc += sign * term
        if term < abs(acc) * 1e-17:
            break
        prev = term
    return acc


def _thermal_small_t_switch(k: int) -> float:
    """Largest t below which the closed form loses more than ~1e-9 to
    cancellation (error ~ eps * zeta(2) t^2 / (Gamma(2k+2) zeta(2k+2) t^(2k+2)))."""
    return (2.0 * _EPS * _ZETA_EVEN[1] / (1e-9 * math.gamma(2 * k + 2))) ** (1.0 / (2 * k))


def thermal_f(order, t: float) -> float:
    """Thermal spectral function f_n(t) for odd n >= 3.

    Parameters
    ----------
    order : int or ThermalFunctionOrder
        The (odd) exponent n in the defining integral
        f_n(t) = int_0^inf dx x^n / ((x^2+1)(e^{x/t}-1)).
    t : float
        Temperature in units of the spectral scale (t = T/nu), > 0.

    Agrees with the defining integral to better than 1e-8 relative error
    for the orders the torque formulas use (n = 3, 9) over all t > 0.
    """
    if not isinstance(order, ThermalFunctionOrder):
        order = ThermalFunctionOrder(int(order))
    t = float(t)
    if not (t > 0 and math.isfinite(t)):
        raise DomainError(f"thermal_f: t must be positive and finite, got {t}")
    k = order.k
    if t < _thermal_small_t_switch(k):
        return _thermal_f_small_t(k, t)
    return _thermal_f_closed(k, t)
