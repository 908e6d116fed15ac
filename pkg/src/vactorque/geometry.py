"""Body geometries and the dimensionless geometric torque factors.

Two worked bodies are provided, both reflection-invariant through the origin
(hence force-free) but chiral:

* the dual Allen wrench: a thin wire shaft of half-length ``a`` along y with
  perpendicular thin-wire tags of length ``b`` at its ends (the bottom tag
  points along +x, the top along -x);
* the dual flag: the same shaft with thin rectangular sheets (height a,
  width b, thickness L_B), upper sheet toward -x, lower toward +x.

The chirality of either body enters through the geometric factor

    J_AB(omega) = -int_A dr int_B dr' (r x r') phi(omega |r-r'|) / |r-r'|^8,

reduced here to radial integrals of phi(v)/v^n (n = 4..8):

    Phi(alpha, beta, n) = int_alpha^beta dv phi(v)/v^n
    Psi(alpha, beta, n) = int_alpha^beta dv phi(v)/v^n sqrt(1 - alpha^2/v^2)

Phi has an optional closed form in sine/cosine integrals; Psi is evaluated
after the substitution v = alpha cosh(u), which removes the square-root
endpoint singularity.  A brute-force voxel double sum serves as the
independent oracle for everything here.

Lengths at this API are micrometers, areas um^2, volumes um^3, mass
densities g/cm^3; all conversions to natural units go through a
:class:`~vactorque.units.UnitContext`.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import specfun
from .quadrature import (DEFAULT_CONFIG, GeometryError, IntegralEstimate,
                         QuadratureConfig, integrate_1d,
                         integrate_pairwise_volumes)
from .specfun import _phi_ratio8_scalar, phi_ratio, sine_integral, cosine_integral
from .units import CODATA, UnitContext

__all__ = [
    "AllenWrench",
    "DualFlag",
    "VoxelPairBody",
    "phi_integral",
    "psi_integral",
    "phi_integral_closed",
    "allen_wrench_j_hat",
    "allen_wrench_j_hat_cartesian",
    "dual_flag_j_hat",
    "allen_wrench_factor",
    "allen_wrench_factor_cartesian",
    "dual_flag_factor",
    "voxel_factor",
    "voxel_factor_estimate",
    "moment_of_inertia",
    "voxelize_allen_wrench",
    "voxelize_dual_flag",
    "load_voxel_csv",
    "save_voxel_csv",
    "aw_j_hat_small",
    "aw_j_hat_large",
    "df_j_hat_small",
    "df_j_hat_large",
]


# ----------------------------------------------------------------------
# Bodies
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AllenWrench:
    """Dual Allen wrench: wire shaft (half-length a) with end tags (length b).

    a, b in micrometers; cross sections s_a, s_b in um^2; mass densities
    rho_a, rho_b in g/cm^3.
    """

    a: float
    b: float
    s_a: float
    s_b: float
    rho_a: float = 19.3
    rho_b: float = 0.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.s_a > 0 and self.s_b > 0):
            raise GeometryError("AllenWrench: a, b, s_a, s_b must be positive")
        if self.rho_a < 0 or self.rho_b < 0:
            raise GeometryError("AllenWrench: densities must be >= 0")


@dataclass(frozen=True)
class DualFlag:
    """Dual flag: wire shaft (half-length a, also flag height) with thin
    rectangular flags of width b and thickness l_b.

    a, b in micrometers; s_a in um^2; l_b in um; densities in g/cm^3.
    """

    a: float
    b: float
    s_a: float
    l_b: float
    rho_a: float = 19.3
    rho_b: float = 0.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0 and self.s_a > 0 and self.l_b > 0):
            raise GeometryError("DualFlag: a, b, s_a, l_b must be positive")
        if self.rho_a < 0 or self.rho_b < 0:
            raise GeometryError("DualFlag: densities must be >= 0")
        if self.l_b > 0.1 * self.b:
            warnings.warn("DualFlag: flag thickness l_b is not small compared "
                          "to the width b; thin-sheet reduction degrades",
                          stacklevel=2)


@dataclass(frozen=True)
class VoxelPairBody:
    """Two disjoint voxel clouds (centers in um, volumes in um^3)."""

    centers_a: np.ndarray
    volumes_a: np.ndarray
    centers_b: np.ndarray
    volumes_b: np.ndarray
    rho_a: float = 19.3
    rho_b: float = 0.0

    def __post_init__(self):
        for name in ("centers_a", "centers_b"):
            arr = np.atleast_2d(np.asarray(getattr(self, name), dtype=float))
            if arr.shape[1] != 3 or not np.all(np.isfinite(arr)):
                raise GeometryError(f"{name} must be finite with shape (N, 3)")
            object.__setattr__(self, name, arr)
        for name, cname in (("volumes_a", "centers_a"), ("volumes_b", "centers_b")):
            arr = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            if arr.shape[0] != getattr(self, cname).shape[0] or np.any(arr <= 0):
                raise GeometryError(f"{name} must be positive, one per voxel")
            object.__setattr__(self, name, arr)

    @property
    def part_a(self):
        return self.centers_a, self.volumes_a

    @property
    def part_b(self):
        return self.centers_b, self.volumes_b


# ----------------------------------------------------------------------
# Radial integrals
# ----------------------------------------------------------------------

def _phi_series_antiderivative(v: float, n: int) -> float:
    """Term-by-term integral of the phi Taylor series.

    With phi(v)/v^8 = sum_k c_k v^(2k), the antiderivative of phi/v^n is
    sum_k c_k v^(2k+9-n)/(2k+9-n); exponents stay >= 1 for n <= 8 so no
    logarithmic terms arise.  Exact (to roundoff) below the switchover.
    """
    v2 = v * v
    acc = 0.0
    pk = v ** (9 - n)
    for k, c in enumerate(specfun._PHI_COEFFS_LIST):
        acc += c * pk / (2 * k + 9 - n)
        pk *= v2
    return acc


def phi_integral(alpha: float, beta: float, n: int,
                 cfg: QuadratureConfig = DEFAULT_CONFIG,
                 method: str = "quad") -> float:
    """Phi(alpha, beta, n) = int_alpha^beta dv phi(v)/v^n, 4 <= n <= 8.

    Below the series switchover the integrand is integrated term by term
    (exactly); above it, adaptively (``method="quad"``, the default) or via
    the sine-integral closed form (``method="closed"``, faster for sweeps,
    agrees with the quadrature path to ~1e-10).
    """
    if not (0 <= alpha <= beta):
        raise ValueError(f"need 0 <= alpha <= beta, got [{alpha}, {beta}]")
    if not (4 <= n <= 8):
        raise ValueError(f"n must be in 4..8, got {n}")
    if alpha == beta:
        return 0.0
    switch = specfun.PHI_SERIES_SWITCH
    lo, hi = float(alpha), float(beta)
    acc = 0.0
    if lo < switch:
        s_hi = min(hi, switch)
        acc += _phi_series_antiderivative(s_hi, n) - _phi_series_antiderivative(lo, n)
        lo = s_hi
    if lo >= hi:
        return acc
    if method == "closed":
        acc += _phi_antiderivative_closed(hi, n) - _phi_antiderivative_closed(lo, n)
        return acc
    est = integrate_1d(lambda v: _phi_ratio8_scalar(v) * v ** (8 - n), lo, hi, cfg)
    return acc + est.value


def psi_integral(alpha: float, beta: float, n: int,
                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Psi(alpha, beta, n) = int_alpha^beta dv phi(v)/v^n sqrt(1 - alpha^2/v^2).

    Evaluated after v = alpha cosh(u), which maps the square-root endpoint
    factor to tanh(u) and leaves a smooth integrand.
    """
    if not (0 <= alpha <= beta):
        raise ValueError(f"need 0 <= alpha <= beta, got [{alpha}, {beta}]")
    if not (4 <= n <= 8):
        raise ValueError(f"n must be in 4..8, got {n}")
    if alpha == beta:
        return 0.0
    if alpha == 0.0:
        return phi_integral(0.0, beta, n, cfg)

    a = float(alpha)
    u_max = math.acosh(beta / a)

    def integrand(u):
        ch = math.cosh(u)
        v = a * ch
        sh = math.sinh(u)
        return _phi_ratio8_scalar(v) * v ** (8 - n) * a * sh * sh / ch

    return integrate_1d(integrand, 0.0, u_max, cfg).value


# ---- closed-form Phi (optional fast path) -----------------------------

def _trig_antiderivatives(v: float, k_max: int):
    """I_c(k) = int cos(2v)/v^k dv and I_s(k) likewise, by downward recurrence.

    Base cases: I_c(1) = Ci(2v), I_s(1) = Si(2v); negative k handled up to -1.
    Returns dict {k: (I_c, I_s)}.
    """
    out = {
        -1: (math.cos(2 * v) / 4 + v * math.sin(2 * v) / 2,
             math.sin(2 * v) / 4 - v * math.cos(2 * v) / 2),
        0: (math.sin(2 * v) / 2, -math.cos(2 * v) / 2),
        1: (cosine_integral(2 * v), sine_integral(2 * v)),
    }
    for k in range(2, k_max + 1):
        ic_prev, is_prev = out[k - 1]
        ic = -math.cos(2 * v) / ((k - 1) * v ** (k - 1)) - 2.0 * is_prev / (k - 1)
        i_s = -math.sin(2 * v) / ((k - 1) * v ** (k - 1)) + 2.0 * ic_prev / (k - 1)
        out[k] = (ic, i_s)
    return out


def _phi_antiderivative_closed(v: float, n: int) -> float:
    """Antiderivative of phi(v)/v^n in terms of Si/Ci; use only for v >~ 1."""
    tab = _trig_antiderivatives(v, n)
    # polynomial part: int (-9 v^-n - 2 v^(2-n) - v^(4-n)) dv
    acc = 9.0 * v ** (1 - n) / (n - 1) + 2.0 * v ** (3 - n) / (n - 3)
    acc += -math.log(v) if n == 5 else v ** (5 - n) / (n - 5)
    # cosine part: (9 - 16 v^2 + 3 v^4) cos 2v / v^n
    acc += 9.0 * tab[n][0] - 16.0 * tab[n - 2][0] + 3.0 * tab[n - 4][0]
    # sine part: (18 v - 8 v^3 + v^5) sin 2v / v^n
    acc += 18.0 * tab[n - 1][1] - 8.0 * tab[n - 3][1] + tab[n - 5][1]
    return acc


# ----------------------------------------------------------------------
# Dimensionless geometric factors
# ----------------------------------------------------------------------

def allen_wrench_j_hat(a_tilde: float, b_tilde: float,
                       cfg: QuadratureConfig = DEFAULT_CONFIG,
                       method: str = "quad") -> float:
    """Reduced Allen-wrench factor J^(a_tilde, b_tilde) from the polar form.

    Valid for any relative magnitude of 2a and b; always positive.
    """
    at, bt = float(a_tilde), float(b_tilde)
    if at <= 0 or bt <= 0:
        raise ValueError("a_tilde and b_tilde must be positive")
    r = math.hypot(bt, 2 * at)
    return (-at * phi_integral(0.0, 2 * at, 6, cfg, method)
            + at * psi_integral(bt, r, 6, cfg)
            + 0.5 * bt * bt * phi_integral(bt, r, 7, cfg, method)
            + 0.5 * (phi_integral(0.0, bt, 5, cfg, method)
                     - phi_integral(2 * at, r, 5, cfg, method)))


def allen_wrench_j_hat_cartesian(a_tilde: float, b_tilde: float,
                                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """The same factor by direct nested quadrature of the Cartesian form

        int_{-a~}^{a~} dy int_0^{b~} dx  x y  phi(v)/v^8,
        v = sqrt(x^2 + (a~ + y)^2).

    Primary internal oracle for :func:`allen_wrench_j_hat`.
    """
    at, bt = float(a_tilde), float(b_tilde)
    if at <= 0 or bt <= 0:
        raise ValueError("a_tilde and b_tilde must be positive")

    def inner(y):
        c2 = (at + y) ** 2

        def f(x):
            return x * _phi_ratio8_scalar(math.sqrt(x * x + c2))

        return y * integrate_1d(f, 0.0, bt, cfg).value

    # split at y = 0: the integrand changes sign with y
    lower = integrate_1d(inner, -at, 0.0, cfg)
    upper = integrate_1d(inner, 0.0, at, cfg)
    return lower.value + upper.value


def dual_flag_j_hat(a_tilde: float, b_tilde: float,
                    cfg: QuadratureConfig = DEFAULT_CONFIG,
                    method: str = "quad") -> float:
    """Reduced dual-flag factor from the Phi/Psi bracket; always positive."""
    at, bt = float(a_tilde), float(b_tilde)
    if at <= 0 or bt <= 0:
        raise ValueError("a_tilde and b_tilde must be positive")
    ra = math.hypot(at, bt)           # sqrt(a~^2 + b~^2)
    rb = math.hypot(2 * at, bt)       # sqrt(4 a~^2 + b~^2)
    P = lambda a, b, n: phi_integral(a, b, n, cfg, method)
    S = lambda a, b, n: psi_integral(a, b, n, cfg)
    bracket = (
        -P(0, at, 4) / 3 + P(at, 2 * at, 4) / 3
        - at * P(0, bt, 5) + at * P(2 * at, rb, 5)
        + 2 * at * at * P(0, at, 6)
        - at * bt * bt * P(bt, rb, 7)
        + 4 * at**3 * (P(at, ra, 7) - P(2 * at, rb, 7)) / 3
        + 2 * S(bt, ra, 4) / 3 - S(bt, rb, 4) / 3
        - 2 * (3 * at * at + bt * bt) * S(bt, ra, 6) / 3
        + bt * bt * S(bt, rb, 6) / 3
    )
    return -bracket


# ---- published asymptotic limits --------------------------------------

def aw_j_hat_large(a_tilde: float) -> float:
    """Large-object Allen-wrench limit (11/30) pi a~ (independent of b~)."""
    return 11.0 * math.pi / 30.0 * a_tilde


def aw_j_hat_small(a_tilde: float, b_tilde: float) -> float:
    """Small-object Allen-wrench limit (56/675) a~^6 r^2 with r = b/a."""
    return 56.0 / 675.0 * a_tilde**4 * b_tilde**2


def df_j_hat_large(a_tilde: float) -> float:
    """Large-object dual-flag limit (11/15) pi a~^2."""
    return 11.0 * math.pi / 15.0 * a_tilde**2


def df_j_hat_small(a_tilde: float, b_tilde: float) -> float:
    """Small-object dual-flag limit (56/675) a~^5 b~^2."""
    return 56.0 / 675.0 * a_tilde**5 * b_tilde**2


# ----------------------------------------------------------------------
# Unit-carrying wrappers
# ----------------------------------------------------------------------

def allen_wrench_factor(g: AllenWrench, omega: float,
                        units: UnitContext = CODATA,
                        cfg: QuadratureConfig = DEFAULT_CONFIG,
                        method: str = "quad") -> float:
    """J^_AB(omega) for an Allen wrench (omega in eV); the full geometric
    factor is J_AB = 2 S_A S_B omega^4 J^_AB z^."""
    at = omega * units.length_um(g.a)
    bt = omega * units.length_um(g.b)
    return allen_wrench_j_hat(at, bt, cfg, method)


def allen_wrench_factor_cartesian(g: AllenWrench, omega: float,
                                  units: UnitContext = CODATA,
                                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    at = omega * units.length_um(g.a)
    bt = omega * units.length_um(g.b)
    return allen_wrench_j_hat_cartesian(at, bt, cfg)


def dual_flag_factor(g: DualFlag, omega: float,
                     units: UnitContext = CODATA,
                     cfg: QuadratureConfig = DEFAULT_CONFIG,
                     method: str = "quad") -> float:
    """J^_AB(omega) for a dual flag; the full factor is
    J_AB = omega^3 S_A L_B J^_AB z^."""
    at = omega * units.length_um(g.a)
    bt = omega * units.length_um(g.b)
    return dual_flag_j_hat(at, bt, cfg, method)


# ----------------------------------------------------------------------
# Voxel pathway
# ----------------------------------------------------------------------

def _voxel_kernel(omega: float):
    """Pair kernel -(r x r') omega^8 phi_ratio(omega s, 8) on natural-unit
    coordinates; vectorized over (M,3) x (K,3) -> (M,K,3)."""
    w8 = omega**8

    def kernel(ra, rb):
        cross = np.cross(ra[:, None, :], rb[None, :, :])
        s = np.linalg.norm(ra[:, None, :] - rb[None, :, :], axis=-1)
        return -cross * (w8 * phi_ratio(omega * s, 8))[..., None]

    return kernel


def _natural_voxels(centers_um, volumes_um3, units: UnitContext):
    scale = 1e-4 / units.hbar_c_ev_cm
    return centers_um * scale, volumes_um3 * scale**3


def voxel_factor_estimate(g: VoxelPairBody, omega: float,
                          units: UnitContext = CODATA,
                          cfg: QuadratureConfig = DEFAULT_CONFIG,
                          refined: VoxelPairBody | None = None) -> IntegralEstimate:
    """Full vector J_AB(omega) of a voxel body, with pitch-halving error
    estimate when a refined voxelization is supplied."""
    a = _natural_voxels(g.centers_a, g.volumes_a, units)
    b = _natural_voxels(g.centers_b, g.volumes_b, units)
    ref = None
    if refined is not None:
        ref = (_natural_voxels(refined.centers_a, refined.volumes_a, units),
               _natural_voxels(refined.centers_b, refined.volumes_b, units))
    return integrate_pairwise_volumes(a, b, _voxel_kernel(omega), cfg, refined=ref)


def voxel_factor(g: VoxelPairBody, omega: float,
                 units: UnitContext = CODATA,
                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> np.ndarray:
    """Vector J_AB(omega) (dimensionless, natural units) of a voxel body."""
    return np.asarray(voxel_factor_estimate(g, omega, units, cfg).value)


# ----------------------------------------------------------------------
# Moments of inertia (about the z axis through the center)
# ----------------------------------------------------------------------

def moment_of_inertia(g, units: UnitContext = CODATA) -> float:
    """Moment of inertia in natural units (eV^-1).

    Allen wrench: (2/3) rho_A S_A a^3 + 2 rho_B S_B b (a^2 + b^2/3);
    dual flag:    (2/3) a [rho_A S_A a^2 + rho_B L_B b (a^2 + b^2)];
    voxel bodies: sum rho vol (x^2 + y^2).
    """
    if isinstance(g, AllenWrench):
        a = units.length_um(g.a)
        b = units.length_um(g.b)
        sa = units.area_um2(g.s_a)
        sb = units.area_um2(g.s_b)
        ra = units.mass_density_g_cm3(g.rho_a)
        rb = units.mass_density_g_cm3(g.rho_b)
        return ra * sa * 2 * a**3 / 3 + rb * sb * 2 * b * (a * a + b * b / 3)
    if isinstance(g, DualFlag):
        a = units.length_um(g.a)
        b = units.length_um(g.b)
        sa = units.area_um2(g.s_a)
        lb = units.length_um(g.l_b)
        ra = units.mass_density_g_cm3(g.rho_a)
        rb = units.mass_density_g_cm3(g.rho_b)
        return 2 * a * (ra * sa * a * a + rb * lb * b * (a * a + b * b)) / 3
    if isinstance(g, VoxelPairBody):
        total = 0.0
        for centers, volumes, rho in ((g.centers_a, g.volumes_a, g.rho_a),
                                      (g.centers_b, g.volumes_b, g.rho_b)):
            c, v = _natural_voxels(centers, volumes, units)
            rr = c[:, 0] ** 2 + c[:, 1] ** 2
            total += units.mass_density_g_cm3(rho) * float(np.sum(v * rr))
        return total
    raise TypeError(f"unsupported body type: {type(g).__name__}")


def moment_of_inertia_si(g, units: UnitContext = CODATA) -> float:
    """Moment of inertia in kg m^2."""
    from .units import EV_IN_JOULE, C_CM_PER_S
    i_nat = moment_of_inertia(g, units)
    # eV^-1 (length^2 * mass): I[SI] = I_nat * hbar^2 / (1 eV) expressed in kg m^2
    hbar_js = units.hbar_ev_s * EV_IN_JOULE
    return i_nat * hbar_js**2 / EV_IN_JOULE


# ----------------------------------------------------------------------
# Voxelization helpers (thin wires as 1-D chains, sheets as 2-D grids)
# ----------------------------------------------------------------------

def _chain(start, stop, n):
    """Midpoints of n equal segments of [start, stop]."""
    edges = np.linspace(start, stop, n + 1)
    return 0.5 * (edges[:-1] + edges[1:])


def voxelize_allen_wrench(g: AllenWrench, pitch: float | None = None) -> VoxelPairBody:
    """Thin-wire voxelization (volumes carry the cross sections exactly)."""
    if pitch is None:
        pitch = g.a / 50.0
    if pitch <= 0:
        raise GeometryError("pitch must be positive")
    na = max(2, round(2 * g.a / pitch))
    ya = _chain(-g.a, g.a, na)
    centers_a = np.column_stack([np.zeros(na), ya, np.zeros(na)])
    volumes_a = np.full(na, g.s_a * (2 * g.a / na))

    nb = max(1, round(g.b / pitch))
    xb = _chain(0.0, g.b, nb)
    bottom = np.column_stack([xb, np.full(nb, -g.a), np.zeros(nb)])
    top = np.column_stack([-xb, np.full(nb, g.a), np.zeros(nb)])
    centers_b = np.vstack([bottom, top])
    volumes_b = np.full(2 * nb, g.s_b * (g.b / nb))
    return VoxelPairBody(centers_a, volumes_a, centers_b, volumes_b,
                         rho_a=g.rho_a, rho_b=g.rho_b)


def voxelize_dual_flag(g: DualFlag, pitch: float | None = None) -> VoxelPairBody:
    """Thin-sheet voxelization (volumes carry the flag thickness exactly)."""
    if pitch is None:
        pitch = g.a / 50.0
    if pitch <= 0:
        raise GeometryError("pitch must be positive")
    na = max(2, round(2 * g.a / pitch))
    ya = _chain(-g.a, g.a, na)
    centers_a = np.column_stack([np.zeros(na), ya, np.zeros(na)])
    volumes_a = np.full(na, g.s_a * (2 * g.a / na))

    nx = max(1, round(g.b / pitch))
    ny = max(1, round(g.a / pitch))
    xs = _chain(0.0, g.b, nx)
    ys = _chain(0.0, g.a, ny)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    upper = np.column_stack([-gx.ravel(), gy.ravel(), np.zeros(nx * ny)])
    lower = np.column_stack([gx.ravel(), -gy.ravel(), np.zeros(nx * ny)])
    centers_b = np.vstack([upper, lower])
    vol = g.l_b * (g.b / nx) * (g.a / ny)
    volumes_b = np.full(2 * nx * ny, vol)
    return VoxelPairBody(centers_a, volumes_a, centers_b, volumes_b,
                         rho_a=g.rho_a, rho_b=g.rho_b)


# ----------------------------------------------------------------------
# Voxel body file format: CSV x,y,z,volume,part with part in {A, B}
# ----------------------------------------------------------------------

_VOXEL_HEADER = ["x", "y", "z", "volume", "part"]


def load_voxel_csv(path, rho_a: float = 19.3, rho_b: float = 0.0) -> VoxelPairBody:
    """Load a voxel body from CSV (lengths um, volumes um^3, part A/B)."""
    path = Path(path)
    part_a, part_b = [], []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != _VOXEL_HEADER:
            raise GeometryError(f"{path}: expected header {','.join(_VOXEL_HEADER)}")
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 5:
                raise GeometryError(f"{path}:{lineno}: expected 5 columns, got {len(row)}")
            try:
                xyz = [float(c) for c in row[:3]]
                vol = float(row[3])
            except ValueError as exc:
                raise GeometryError(f"{path}:{lineno}: {exc}") from None
            part = row[4].strip()
            if part == "A":
                part_a.append(xyz + [vol])
            elif part == "B":
                part_b.append(xyz + [vol])
            else:
                raise GeometryError(f"{path}:{lineno}: part must be A or B, got {part!r}")
    if not part_a or not part_b:
        raise GeometryError(f"{path}: need at least one voxel in each of A and B")
    pa = np.array(part_a)
    pb = np.array(part_b)
    return VoxelPairBody(pa[:, :3], pa[:, 3], pb[:, :3], pb[:, 3],
                         rho_a=rho_a, rho_b=rho_b)


def save_voxel_csv(path, body: VoxelPairBody) -> None:
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_VOXEL_HEADER)
        for centers, volumes, label in ((body.centers_a, body.volumes_a, "A"),
                                        (body.centers_b, body.volumes_b, "B")):
            for c, v in zip(centers, volumes):
                writer.writerow([f"{c[0]:.10e}", f"{c[1]:.10e}", f"{c[2]:.10e}",
                                 f"{v:.10e}", label])
