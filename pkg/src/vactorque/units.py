"""Unit system: natural units (hbar = c = k_B = 1) with eV as the base scale.

All internal computations use eV for energies, temperatures and frequencies
and eV^-1 for lengths and times.  Conversions to and from laboratory units
(micrometers, Kelvin, seconds, N m, W) happen only at the API boundary,
through a :class:`UnitContext`.

Two contexts are provided: CODATA values (default) and a "paper-rounded"
mode with hbar*c = 2e-5 eV cm, which reproduces the rounded prefactors
quoted for the worked examples.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["UnitContext", "CODATA", "PAPER_ROUNDED"]

#: Boltzmann constant in eV/K (CODATA, exact since SI 2019).
K_BOLTZMANN_EV_PER_K = 8.617333262e-5

#: Speed of light in cm/s (exact).
C_CM_PER_S = 2.99792458e10

#: 1 eV in Joule (exact).
EV_IN_JOULE = 1.602176634e-19

#: 1 atomic mass unit in eV.
AMU_IN_EV = 9.3149410242e8

#: 1 gram in eV (m c^2).
GRAM_IN_EV = 1e-3 * (C_CM_PER_S * 1e-2) ** 2 / EV_IN_JOULE


@dataclass(frozen=True)
class UnitContext:
    """Conversion constants between natural (eV) and laboratory units.

    Parameters
    ----------
    hbar_c_ev_cm : float
        hbar*c in eV cm.  CODATA 1.9732697e-5; the paper-rounded mode
        uses 2e-5, which the quoted example prefactors assume.
    k_b_ev_per_k : float
        Boltzmann constant in eV/K.
    """

    hbar_c_ev_cm: float = 1.9732697e-5
    k_b_ev_per_k: float = K_BOLTZMANN_EV_PER_K
    label: str = "codata"

    def __post_init__(self):
        if not (self.hbar_c_ev_cm > 0 and self.k_b_ev_per_k > 0):
            raise ValueError("unit constants must be positive")

    # ---- derived constants -------------------------------------------
    @property
    def hbar_ev_s(self) -> float:
        """hbar in eV s, derived from hbar*c so both modes stay consistent."""
        return self.hbar_c_ev_cm / C_CM_PER_S

    # ---- lengths ------------------------------------------------------
    def length_cm(self, x_cm: float) -> float:
        """Length in cm -> natural units (eV^-1)."""
        return x_cm / self.hbar_c_ev_cm

    def length_um(self, x_um: float) -> float:
        """Length in micrometers -> natural units (eV^-1)."""
        return x_um * 1e-4 / self.hbar_c_ev_cm

    def area_um2(self, s_um2: float) -> float:
        """Area in um^2 -> natural units (eV^-2)."""
        return s_um2 * 1e-8 / self.hbar_c_ev_cm**2

    # ---- temperatures ---------------------------------------------------
    def temperature_kelvin(self, t_k: float) -> float:
        """Temperature in K -> energy in eV."""
        return t_k * self.k_b_ev_per_k

    def temperature_ev_to_kelvin(self, t_ev: float) -> float:
        return t_ev / self.k_b_ev_per_k

    # ---- densities and masses -------------------------------------------
    def mass_density_g_cm3(self, rho: float) -> float:
        """Mass density in g/cm^3 -> natural units (eV^4)."""
        return rho * GRAM_IN_EV * self.hbar_c_ev_cm**3

    def mass_amu(self, m_u: float) -> float:
        """Atomic mass in u -> eV."""
        return m_u * AMU_IN_EV

    # ---- output conversions ----------------------------------------------
    def torque_si(self, tau_ev: float) -> float:
        """Torque (energy) in eV -> N m."""
        return tau_ev * EV_IN_JOULE

    def power_si(self, p_ev2: float) -> float:
        """Power in eV^2 -> W."""
        return p_ev2 * EV_IN_JOULE / self.hbar_ev_s

    def force_si(self, f_ev2: float) -> float:
        """Force in eV^2 -> N."""
        return f_ev2 * EV_IN_JOULE / (self.hbar_c_ev_cm * 1e-2)

    def time_si(self, t_inv_ev: float) -> float:
        """Time in eV^-1 -> s."""
        return t_inv_ev * self.hbar_ev_s

    def rate_si(self, r_ev: float) -> float:
        """Rate (energy) in eV -> 1/s."""
        return r_ev / self.hbar_ev_s

    def angular_accel_si(self, a_ev2: float) -> float:
        """Angular acceleration in eV^2 -> 1/s^2."""
        return a_ev2 / self.hbar_ev_s**2


#: Default context (CODATA constants).
CODATA = UnitContext()

#: Rounded constants used for the quoted example prefactors.
PAPER_ROUNDED = UnitContext(hbar_c_ev_cm=2e-5, label="paper-rounded")


def resolve_units(mode: str) -> UnitContext:
    """Map a unit-mode string ("codata" | "paper-rounded") to a context."""
    key = mode.strip().lower().replace("_", "-")
    if key == "codata":
        return CODATA
    if key == "paper-rounded":
        return PAPER_ROUNDED
    raise ValueError(f"unknown unit mode: {mode!r}")
