"""Circuit-QED design estimators for a trapped surface electron.

Frequencies are accepted as ordinary (Hz-family) frequencies everywhere;
the spin-coupling formula needs angular frequencies internally and the
2*pi factors are applied there, once.  The electron g-factor is taken as
exactly 2 (the 2*mu_B convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .units import (
    BOHR_MAGNETON_J_PER_T,
    ELECTRON_MASS_KG,
    HBAR_J_S,
    PLANCK_J_S,
)


@dataclass(frozen=True)
class SpinCouplingInput:
    """Inputs for the gradient-mediated spin-photon coupling estimate.

    grad_bz_t_per_m is the in-plane gradient of the out-of-plane field
    (1 mG/nm = 100 T/m); mass_ratio rescales the effective electron mass.
    """

    g_charge_mhz: float
    f_charge_ghz: float
    f_larmor_ghz: float
    grad_bz_t_per_m: float
    mass_ratio: float = 1.0

    def __post_init__(self):
        if not self.f_charge_ghz > 0:
            raise ValueError("charge frequency must be > 0")
        if self.g_charge_mhz < 0:
            raise ValueError("charge coupling must be >= 0")
        if not self.mass_ratio > 0:
            raise ValueError("mass ratio must be > 0")


@dataclass(frozen=True)
class CouplingBudget:
    g_mhz: float
    kappa_mhz: float
    gamma_mhz: float

    def __post_init__(self):
        if self.g_mhz < 0 or self.kappa_mhz < 0 or self.gamma_mhz < 0:
            raise ValueError("rates must be >= 0")


@dataclass(frozen=True)
class StrongCouplingResult:
    strong: bool
    margin_mhz: float


def spin_coupling(inp: SpinCouplingInput) -> float:
    """Effective spin-photon coupling |g_s| in MHz.

    g_s = mu_B a_x (dBz/dx) g sqrt(2) / [hbar w_x (1 - w_L^2/w_x^2)] with
    w_x = 2 pi f_charge, a_x = sqrt(hbar / m w_x).  The magnitude is
    returned; the bare expression changes sign with the detuning side.
    Invalid on resonance (f_larmor = f_charge), where the perturbative
    expression has a pole.
    """
    if inp.f_larmor_ghz == inp.f_charge_ghz:
        raise ValueError("Larmor and charge frequencies coincide: the "
                         "detuned-coupling formula has a pole on resonance")
    omega_x = 2.0 * math.pi * inp.f_charge_ghz * 1e9
    a_x = math.sqrt(HBAR_J_S / (inp.mass_ratio * ELECTRON_MASS_KG * omega_x))
    lever = BOHR_MAGNETON_J_PER_T * a_x * inp.grad_bz_t_per_m / (HBAR_J_S * omega_x)
    denom = 1.0 - (inp.f_larmor_ghz / inp.f_charge_ghz) ** 2
    return abs(lever * inp.g_charge_mhz * math.sqrt(2.0) / denom)


def image_charge_delta(dz_nm: float, d_nm: float) -> float:
    """Image-charge change from a vertical shift dz between plates a
    distance D apart: delta q / e = dz / D (parallel-plate model)."""
    if not d_nm > 0:
        raise ValueError("plate distance must be > 0")
    if dz_nm < 0:
        raise ValueError("height change must be >= 0")
    return dz_nm / d_nm


def larmor(b_t: float) -> float:
    """Electron Larmor frequency f_L = 2 mu_B B / h in GHz (g = 2)."""
    if b_t < 0:
        raise ValueError("field must be >= 0")
    return 2.0 * BOHR_MAGNETON_J_PER_T * b_t / PLANCK_J_S / 1e9


def strong_coupling(budget: CouplingBudget) -> StrongCouplingResult:
    """Strict strong-coupling test g > kappa and g > gamma, with margin."""
    worst = max(budget.kappa_mhz, budget.gamma_mhz)
    return StrongCouplingResult(budget.g_mhz > worst, budget.g_mhz - worst)
