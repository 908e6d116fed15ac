"""Susceptibility models, the pair spectral weight X_AB, and thermal factors.

Supported susceptibilities chi(omega):

* Drude metal:          chi = -wp^2 / (omega^2 + i omega nu)
* constant dielectric:  chi = chi0 (real, lossless)
* ideal-blackbody surface layer:  chi = (i/4) / omega, with the layer
  thickness entering X_AB as a 1/thickness factor
* tabulated data, interpolated monotone-cubic in log omega

The antisymmetric product X_AB = Im chi_A Re chi_B - Re chi_A Im chi_B is
the spectral weight coupling the two body parts; it vanishes identically for
a homogeneous body and is exactly antisymmetric under A <-> B.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = [
    "MaterialError",
    "ExtrapolationError",
    "Drude",
    "ConstantDielectric",
    "BlackbodySurface",
    "Tabulated",
    "ThermalState",
    "NonreciprocalPolarizability",
    "chi",
    "xab",
    "thermal_weight",
    "coth_half_difference",
    "load_tabulated_csv",
]


class MaterialError(ValueError):
    """Invalid material parameters."""


class ExtrapolationError(MaterialError):
    """Tabulated material queried outside its frequency grid."""


@dataclass(frozen=True)
class Drude:
    """Drude metal: chi(omega) = -wp^2/(omega^2 + i omega nu).

    Parameters in eV; gold is roughly wp = 9 eV, nu = 0.035 eV.
    """

    plasma_freq: float
    damping: float

    def __post_init__(self):
        if not (self.plasma_freq > 0 and self.damping > 0):
            raise MaterialError("Drude requires plasma_freq > 0 and damping > 0")

    def chi(self, omega: float) -> complex:
        return -self.plasma_freq**2 / (omega * omega + 1j * omega * self.damping)


@dataclass(frozen=True)
class ConstantDielectric:
    """Dispersionless lossless dielectric with real susceptibility chi0."""

    chi0: float

    def __post_init__(self):
        if not math.isfinite(self.chi0):
            raise MaterialError("ConstantDielectric requires finite chi0")

    def chi(self, omega: float) -> complex:
        return complex(self.chi0, 0.0)


@dataclass(frozen=True)
class BlackbodySurface:
    """Ideal blackbody surface layer of given thickness (natural units, eV^-1).

    The surface susceptibility is (i/4)/(omega + i0+); for omega > 0 this is
    pure imaginary, (i/4)/omega.  The delta-function piece at omega = 0 is
    dropped: every spectral integral here carries weight vanishing at
    omega = 0.  The 1/thickness factor that spreads the surface response over
    the layer is applied in :func:`xab`, not here.
    """

    thickness: float

    def __post_init__(self):
        if not (self.thickness > 0):
            raise MaterialError("BlackbodySurface requires thickness > 0")

    def chi(self, omega: float) -> complex:
        return 0.25j / omega


@dataclass(frozen=True)
class Tabulated:
    """Measured susceptibility on a strictly increasing omega grid (eV).

    Interpolates Re chi and Im chi monotone-cubically in log omega; queries
    outside the grid raise :class:`ExtrapolationError`.
    """

    omega_ev: np.ndarray
    re_chi: np.ndarray
    im_chi: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.omega_ev, dtype=float)
        if w.ndim != 1 or len(w) < 2 or np.any(w <= 0) or np.any(np.diff(w) <= 0):
            raise MaterialError("Tabulated needs a strictly increasing positive omega grid")
        object.__setattr__(self, "omega_ev", w)
        object.__setattr__(self, "re_chi", np.asarray(self.re_chi, dtype=float))
        object.__setattr__(self, "im_chi", np.asarray(self.im_chi, dtype=float))
        if self.re_chi.shape != w.shape or self.im_chi.shape != w.shape:
            raise MaterialError("Tabulated grids must have matching shapes")
        logw = np.log(w)
        object.__setattr__(self, "_re_interp", PchipInterpolator(logw, self.re_chi))
        object.__setattr__(self, "_im_interp", PchipInterpolator(logw, self.im_chi))

    def chi(self, omega: float) -> complex:
        if not (self.omega_ev[0] <= omega <= self.omega_ev[-1]):
            raise ExtrapolationError(
                f"omega = {omega:g} eV outside tabulated range "
                f"[{self.omega_ev[0]:g}, {self.omega_ev[-1]:g}]")
        x = math.log(omega)
        return complex(self._re_interp(x), self._im_interp(x))


MaterialModel = Drude | ConstantDielectric | BlackbodySurface | Tabulated


def chi(model: MaterialModel, omega: float) -> complex:
    """Susceptibility chi(omega) of a material model at omega > 0 (eV)."""
    if not (omega > 0 and math.isfinite(omega)):
        raise MaterialError(f"chi: omega must be positive and finite, got {omega}")
    return model.chi(omega)


def _bb_thickness(model) -> float | None:
    return model.thickness if isinstance(model, BlackbodySurface) else None


def _same_model(a, b) -> bool:
    if a is b:
        return True
    if type(a) is not type(b):
        return False
    if isinstance(a, Tabulated):
        return (np.array_equal(a.omega_ev, b.omega_ev)
                and np.array_equal(a.re_chi, b.re_chi)
                and np.array_equal(a.im_chi, b.im_chi))
    return a == b


def xab(model_a: MaterialModel, model_b: MaterialModel, omega: float) -> float:
    """Antisymmetric spectral weight X_AB = Im chi_A Re chi_B - Re chi_A Im chi_B.

    For a blackbody surface on either side the result carries the 1/thickness
    factor (units 1/length); for Drude A with constant dielectric B it
    reduces to chi0 * wp^2 nu / (omega (omega^2 + nu^2)), and for Drude A
    with blackbody B to wp^2 / (4 omega t (omega^2 + nu^2)).
    """
    if _same_model(model_a, model_b):
        return 0.0
    ca = chi(model_a, omega)
    cb = chi(model_b, omega)
    out = ca.imag * cb.real - ca.real * cb.imag
    ta = _bb_thickness(model_a)
    if ta is not None:
        out /= ta
    tb = _bb_thickness(model_b)
    if tb is not None:
        out /= tb
    return out


@dataclass(frozen=True)
class ThermalState:
    """Environment and body temperatures in energy units (eV)."""

    t_env: float
    t_body: float

    def __post_init__(self):
        if not (self.t_env > 0 and self.t_body > 0):
            raise MaterialError("temperatures must be positive")


def _occupation(omega: float, temperature: float) -> float:
    """Bose occupation 1/(e^(omega/T) - 1), overflow-safe."""
    x = omega / temperature
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def thermal_weight(ts: ThermalState, omega: float) -> float:
    """n(omega, T_env) - n(omega, T_body); exactly zero in equilibrium."""
    if not (omega > 0 and math.isfinite(omega)):
        raise MaterialError(f"thermal_weight: omega must be positive, got {omega}")
    if ts.t_env == ts.t_body:
        return 0.0
    return _occupation(omega, ts.t_env) - _occupation(omega, ts.t_body)


def coth_half_difference(ts: ThermalState, omega: float) -> float:
    """coth(omega/2T_env) - coth(omega/2T_body) = 2 * thermal_weight."""
    return 2.0 * thermal_weight(ts, omega)


@dataclass(frozen=True)
class NonreciprocalPolarizability:
    """Real antisymmetric part of the volume-integrated susceptibility.

    ``re_alpha_antisym(omega)`` is sampled only for omega > 0 (in eV) and must
    return natural volume units (eV^-3); the odd-frequency bookkeeping is the
    caller's responsibility.
    """

    re_alpha_antisym: Callable[[float], float]


# ----------------------------------------------------------------------
# Tabulated material file IO
# ----------------------------------------------------------------------

_TABULATED_HEADER = ["omega_eV", "re_chi", "im_chi"]


def load_tabulated_csv(path) -> Tabulated:
    """Load a tabulated material from CSV with header omega_eV,re_chi,im_chi."""
    path = Path(path)
    rows = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != _TABULATED_HEADER:
            raise MaterialError(
                f"{path}: expected header {','.join(_TABULATED_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise MaterialError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
            try:
                rows.append(tuple(float(x) for x in row))
            except ValueError as exc:
                raise MaterialError(f"{path}:{lineno}: {exc}") from None
    if len(rows) < 2:
        raise MaterialError(f"{path}: need at least two data rows")
    data = np.array(rows)
    return Tabulated(omega_ev=data[:, 0], re_chi=data[:, 1], im_chi=data[:, 2])
