"""One-dimensional surface potentials and their bound electron states.

An excess electron above a quantum liquid or solid sees a repulsive bulk
barrier for z < 0 and an attractive polarization tail for z > 0.  This
module builds sampled potential profiles for three variants

  * RegularizedImage   V0 for z < 0,  -(eps-1)/(eps+1) e^2/4(z+b) for z >= 0
  * InfiniteBarrierImage  hard wall (implemented as a 1 MeV step) with the
    bare -(eps-1)/(eps+1) e^2/4z tail
  * Interface          solid barrier below, liquid barrier above:
                       -(eps-1)/(eps+1) e^2/4z + V_above tanh^2(z/zeta)

and solves -hbar^2/(2 m_e) psi'' + V psi = E psi on a uniform grid with
Dirichlet ends, using second-order centered differences.  The lowest
eigenpairs of the tridiagonal Hamiltonian are obtained by Sturm-sequence
bisection plus inverse iteration (LAPACK stebz/stein).

Default grids place z = 0 exactly midway between two nodes.  With the
potential step between nodes, every grid cell lies on a single branch of
the piecewise potential and the eigenvalue error stays O(h^2); a node
sitting on the step would degrade this to O(h).

An optional vertical pressing field E_perp adds +e*E_perp*z for z > 0
only; the barrier branch stays flat (the field inside the dielectric is
screened over the sub-Angstrom penetration depth).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import IO, Union

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .units import BOHR_ANGSTROM, BOLTZMANN_EV_PER_K, HARTREE_EV, PLANCK_EV_S

# Stand-in for a hard wall; penetration depth at 1 MeV is ~0.002 A, far
# below any grid spacing used here.
INFINITE_BARRIER_EV = 1.0e6

# Outer/inner fractions of the domain used to detect box-artifact states.
_EDGE_FRACTION = 0.1
_EDGE_MASS_TOL = 1e-4


class SolverError(RuntimeError):
    """Raised when the eigensolver fails to converge."""


@dataclass(frozen=True)
class RegularizedImage:
    """Finite barrier V0 with the image tail shifted by cutoff b."""

    v0_ev: float
    eps_r: float
    b_A: float
    pressing_field_v_per_m: float = 0.0

    def __post_init__(self):
        if not self.eps_r >= 1:
            raise ValueError("eps_r must be >= 1")
        if not self.b_A > 0:
            raise ValueError("cutoff b must be > 0")
        if not self.v0_ev > 0:
            raise ValueError("V0 must be > 0")


@dataclass(frozen=True)
class InfiniteBarrierImage:
    """Hard-wall limit with the unshifted image tail."""

    eps_r: float
    pressing_field_v_per_m: float = 0.0

    def __post_init__(self):
        if not self.eps_r >= 1:
            raise ValueError("eps_r must be >= 1")


@dataclass(frozen=True)
class Interface:
    """Electron sandwiched between a solid below and a liquid above.

    The liquid's polarization is neglected (its dielectric constant is
    close to 1); only the solid's image tail survives, capped at the
    first half-cell, plus the liquid bulk barrier turning on over zeta.
    """

    v_barrier_below_ev: float
    v_barrier_above_ev: float
    eps_r_below: float
    zeta_A: float
    pressing_field_v_per_m: float = 0.0

    def __post_init__(self):
        if not self.eps_r_below >= 1:
            raise ValueError("eps_r_below must be >= 1")
        if not self.zeta_A > 0:
            raise ValueError("zeta must be > 0")


PotentialSpec = Union[RegularizedImage, InfiniteBarrierImage, Interface]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid straddling the surface: z_min < 0 < z_max."""

    z_min_A: float
    z_max_A: float
    points: int

    def __post_init__(self):
        if not (self.z_min_A < 0.0 < self.z_max_A):
            raise ValueError("grid must satisfy z_min < 0 < z_max")
        if self.points < 3:
            raise ValueError("grid needs at least 3 points")

    @property
    def h_A(self) -> float:
        return (self.z_max_A - self.z_min_A) / (self.points - 1)

    def nodes(self) -> np.ndarray:
        return self.z_min_A + self.h_A * np.arange(self.points)


def surface_grid(z_min_A: float, z_max_A: float, h_A: float) -> GridSpec:
    """Grid with spacing ~h covering [z_min, z_max], z=0 midway between nodes."""
    m = int(math.ceil(-z_min_A / h_A - 0.5))
    p = int(math.ceil(z_max_A / h_A + 0.5))
    return GridSpec(-(m + 0.5) * h_A, (p - 0.5) * h_A, m + p + 1)


def image_strength_ev_a(eps_r: float) -> float:
    """Coefficient A in the image tail V = -A/z, in eV*Angstrom."""
    return (eps_r - 1.0) / (eps_r + 1.0) * HARTREE_EV * BOHR_ANGSTROM / 4.0


def hydrogenic_charge(eps_r: float) -> float:
    """Effective charge Z = (eps-1)/(4(eps+1)) of the image tail."""
    return (eps_r - 1.0) / (4.0 * (eps_r + 1.0))


def hydrogenic_levels(eps_r: float, n_max: int) -> np.ndarray:
    """Hard-wall analytic spectrum E_n = -Z^2/(2 n^2) Hartree, in meV."""
    if not eps_r >= 1:
        raise ValueError("eps_r must be >= 1")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = np.arange(1, n_max + 1, dtype=float)
    z = hydrogenic_charge(eps_r)
    return -(z * z) / (2.0 * n * n) * HARTREE_EV * 1e3


def default_grid(spec: PotentialSpec, levels: int = 2) -> GridSpec:
    """Grid sized from the hydrogenic length a_B/Z of the image tail.

    z_min = -20 A (several barrier decay lengths), z_max = 20 x the
    hydrogenic ground-state height, extended for levels > 2, and spacing
    h = (a_B/Z)/200.  The Interface variant has no Rydberg tail; it gets
    a fixed fine grid resolving the zeta-scale structure instead.
    """
    if isinstance(spec, Interface):
        return surface_grid(-20.0, 50.0, spec.zeta_A / 100.0)
    scale = BOHR_ANGSTROM / hydrogenic_charge(spec.eps_r)
    z_max = scale * max(30.0, 3.0 * levels**2 + 10.0 * levels)
    return surface_grid(-20.0, z_max, scale / 200.0)


@dataclass(frozen=True)
class PotentialProfile:
    """Sampled potential on a grid, with its z -> +inf asymptote (eV)."""

    grid: GridSpec
    samples_ev: np.ndarray
    asymptote_ev: float
    warnings: tuple[str, ...] = ()
    source: PotentialSpec | None = None


def build_potential(spec: PotentialSpec, grid: GridSpec | None = None) -> PotentialProfile:
    """Sample a potential variant on a grid (default: `default_grid(spec)`)."""
    if grid is None:
        grid = default_grid(spec)
    z = grid.nodes()
    h = grid.h_A
    pos = z >= 0.0
    if isinstance(spec, RegularizedImage):
        a = image_strength_ev_a(spec.eps_r)
        v = np.where(pos, 0.0, spec.v0_ev)
        v[pos] = -a / (z[pos] + spec.b_A)
        asymptote = 0.0
    elif isinstance(spec, InfiniteBarrierImage):
        a = image_strength_ev_a(spec.eps_r)
        v = np.where(pos, 0.0, INFINITE_BARRIER_EV)
        v[pos] = -a / np.maximum(z[pos], 0.5 * h)
        asymptote = 0.0
    elif isinstance(spec, Interface):
        a = image_strength_ev_a(spec.eps_r_below)
        v = np.where(pos, 0.0, spec.v_barrier_below_ev)
        zc = np.maximum(z[pos], 0.5 * h)      # cap the z->0+ pole at half a cell
        v[pos] = -a / zc + spec.v_barrier_above_ev * np.tanh(z[pos] / spec.zeta_A) ** 2
        asymptote = spec.v_barrier_above_ev
    else:
        raise TypeError(f"unsupported potential spec {type(spec).__name__}")
    if spec.pressing_field_v_per_m:
        v[pos] += spec.pressing_field_v_per_m * 1e-10 * z[pos]   # e*E*z, eV per A
    warnings = []
    if not isinstance(spec, Interface):
        extent = 1.5 * BOHR_ANGSTROM / hydrogenic_charge(spec.eps_r)
        if grid.z_max_A < 10.0 * extent:
            warnings.append(
                f"z_max = {grid.z_max_A:.1f} A is below 10x the expected ground-state "
                f"height {extent:.1f} A; energies may not be converged"
            )
    return PotentialProfile(grid, v, asymptote, tuple(warnings), spec)


@dataclass(frozen=True)
class BoundState:
    """Normalized bound eigenstate: sum |psi|^2 h = 1 with psi in A^-1/2."""

    energy_mev: float
    z_A: np.ndarray
    psi: np.ndarray
    node_count: int
    mean_z_nm: float


@dataclass(frozen=True)
class ConvergenceReport:
    """Ground-truth guard: energy change per state under one grid halving."""

    h_A: float
    refined_h_A: float
    energy_change_mev: tuple[float, ...]
    note: str = ""


@dataclass(frozen=True)
class SolveResult:
    states: tuple[BoundState, ...]
    requested: int
    shortfall: int
    convergence: ConvergenceReport | None
    warnings: tuple[str, ...] = ()


def mean_z(state: BoundState) -> float:
    """Mean electron height sum z |psi|^2 h over the full grid, in nm."""
    h = state.z_A[1] - state.z_A[0]
    return float(np.sum(state.z_A * state.psi**2) * h) / 10.0


def _count_nodes(psi: np.ndarray) -> int:
    mask = np.abs(psi) > 1e-9 * np.max(np.abs(psi))
    signs = np.sign(psi[mask])
    return int(np.count_nonzero(signs[1:] * signs[:-1] < 0))


def _eigensolve(grid: GridSpec, v_ev: np.ndarray, count: int):
    """Lowest `count` eigenpairs in (eV, psi with sum psi^2 h = 1)."""
    h_au = grid.h_A / BOHR_ANGSTROM
    diag = 1.0 / h_au**2 + v_ev / HARTREE_EV
    off = np.full(grid.points - 1, -0.5 / h_au**2)
    try:
        w, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))
    except LinAlgError as exc:
        raise SolverError(
            f"inverse iteration failed while refining states 0..{count - 1}: {exc}"
        ) from exc
    return w * HARTREE_EV, vecs / math.sqrt(grid.h_A)


def _is_bound(grid: GridSpec, v_ev: np.ndarray, e_ev: float, psi: np.ndarray) -> bool:
    """Below the potential ceiling at the far wall, and not leaning on a wall."""
    if e_ev >= v_ev[-1]:
        return False
    n = grid.points
    h = grid.h_A
    z = grid.nodes()
    right = int(max(2, round(_EDGE_FRACTION * n)))
    if float(np.sum(psi[-right:] ** 2) * h) > _EDGE_MASS_TOL:
        return False
    left = z < grid.z_min_A * (1.0 - _EDGE_FRACTION)
    if float(np.sum(psi[left] ** 2) * h) > _EDGE_MASS_TOL:
        return False
    return True


def _refined_profile(profile: PotentialProfile) -> tuple[PotentialProfile, str]:
    g = profile.grid
    fine = surface_grid(g.z_min_A, g.z_max_A, g.h_A / 2.0)
    if profile.source is not None:
        return build_potential(profile.source, fine), ""
    v = np.interp(fine.nodes(), g.nodes(), profile.samples_ev)
    return (PotentialProfile(fine, v, profile.asymptote_ev),
            "refined potential linearly interpolated from samples")


def solve_bound_states(profile: PotentialProfile, count: int,
                       report_convergence: bool = True) -> SolveResult:
    """The `count` lowest bound states of a sampled profile.

    States are strictly ascending in energy, normalized to 1e-8 or better,
    and each is checked to sit below the potential at the far boundary
    with negligible weight on either grid wall; eigenstates that fail
    (box artifacts of the finite domain) are dropped and reported via
    `shortfall`.  A convergence report from one grid halving is attached
    unless `report_convergence` is false.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    energies, vecs = _eigensolve(profile.grid, profile.samples_ev, count)
    z = profile.grid.nodes()
    states = []
    warnings = list(profile.warnings)
    for k in range(count):
        psi = vecs[:, k]
        if not _is_bound(profile.grid, profile.samples_ev, energies[k], psi):
            break
        if psi[np.argmax(np.abs(psi))] < 0:
            psi = -psi
        nodes = _count_nodes(psi)
        if nodes != k:
            warnings.append(f"state {k}: found {nodes} nodes, expected {k}")
        h = profile.grid.h_A
        zbar = float(np.sum(z * psi**2) * h) / 10.0
        states.append(BoundState(float(energies[k]) * 1e3, z, psi, nodes, zbar))
    report = None
    if report_convergence:
        fine_profile, note = _refined_profile(profile)
        try:
            fine_e, _ = _eigensolve(fine_profile.grid, fine_profile.samples_ev,
                                    max(1, len(states)))
            change = tuple((states[k].energy_mev - float(fine_e[k]) * 1e3)
                           for k in range(len(states)))
            report = ConvergenceReport(profile.grid.h_A, fine_profile.grid.h_A,
                                       change, note)
        except SolverError:
            report = ConvergenceReport(profile.grid.h_A, fine_profile.grid.h_A,
                                       (), "refined solve failed")
    return SolveResult(tuple(states), count, count - len(states), report,
                       tuple(warnings))


@dataclass(frozen=True)
class Transition:
    de_k: float
    f_thz: float


def transition(states: "list[BoundState] | tuple[BoundState, ...]",
               i: int, j: int) -> Transition:
    """Energy (K) and frequency (THz) of the i -> j transition, 0-based i < j."""
    if i >= j:
        raise ValueError(f"transition needs i < j, got i={i}, j={j}")
    de_ev = (states[j].energy_mev - states[i].energy_mev) * 1e-3
    return Transition(de_k=de_ev / BOLTZMANN_EV_PER_K,
                      f_thz=de_ev / (PLANCK_EV_S * 1e12))


def richardson_energies(spec: PotentialSpec, grid: GridSpec,
                        halvings: int = 3, state: int = 0) -> list[float]:
    """Ground (or `state`) energies in meV at h, h/2, ..., h/2^halvings."""
    out = []
    g = grid
    for _ in range(halvings + 1):
        profile = build_potential(spec, g)
        e, _ = _eigensolve(g, profile.samples_ev, state + 1)
        out.append(float(e[state]) * 1e3)
        g = surface_grid(g.z_min_A, g.z_max_A, g.h_A / 2.0)
    return out


def richardson_ratios(energies: list[float]) -> list[float]:
    """Successive-difference ratios; ~4 for a second-order discretization."""
    d = np.diff(np.asarray(energies))
    return [float(d[i] / d[i + 1]) for i in range(len(d) - 1)]


@dataclass(frozen=True)
class StarkPoint:
    field_v_per_m: float
    state: BoundState | None
    note: str = ""


def stark_scan(spec: PotentialSpec, fields_v_per_m: "list[float]",
               grid: GridSpec | None = None) -> list[StarkPoint]:
    """Ground-state energy vs vertical pressing field.

    Fields where no state survives the boundedness checks (e.g. a pulling
    field that opens the barrier) yield a flagged entry, not a failure.
    """
    if grid is None:
        grid = default_grid(spec)
    out = []
    for field in fields_v_per_m:
        if not math.isfinite(field):
            raise ValueError(f"field must be finite, got {field}")
        tilted = dataclasses.replace(spec, pressing_field_v_per_m=field)
        result = solve_bound_states(build_potential(tilted, grid), 1,
                                    report_convergence=False)
        if result.states:
            out.append(StarkPoint(field, result.states[0]))
        else:
            out.append(StarkPoint(field, None, "no bound state"))
    return out


def write_wavefunction(state: BoundState, stream: IO[str], label: int) -> None:
    """Two-column dump: z in nm, psi in nm^-1/2, one header line."""
    stream.write(f"# z_nm psi_nm^-1/2 state={label} energy_mev={state.energy_mev:.6e}\n")
    scale = math.sqrt(10.0)       # A^-1/2 -> nm^-1/2
    for zi, pi in zip(state.z_A, state.psi):
        stream.write(f"{zi / 10.0:.10e} {pi * scale:.10e}\n")
