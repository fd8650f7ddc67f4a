"""Closed-form scaling laws for a Rydberg-interconnected qubit array.

Everything here is an analytic function of a handful of parameters:
principal quantum number n, a Forster-defect scale constant k_delta
(defect taken as delta = k_delta * E_R / n^4), a spacing safety factor
k1 (> 1), a blackbody lifetime prefactor tau0 (lifetime tau = tau0 n^2),
and a two-qubit gate error target E. From these follow the van der Waals
C6 coefficient, the maximum interaction range R_max at the error target,
the minimum usable lattice spacing D_min, and the number of sites that
fit in between.

The defaults (k_delta = 5, tau0 = 54 ns) are calibrated on heavy-alkali
data; for species whose Rydberg series are not yet characterized they are
configuration values, not facts, and everything accepts overrides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq

from .constants import (
    BOHR_RADIUS,
    COULOMB_CONSTANT,
    ELECTRON_MASS,
    ELEMENTARY_CHARGE,
    FINE_STRUCTURE,
    HBAR,
    RYDBERG_ENERGY,
    SPEED_OF_LIGHT,
)
from .units import Quantity, Unit, magnitude

N_MIN = 30
N_MAX = 500  # excitation of levels this high has been demonstrated

DEFAULT_K_DELTA = 5.0
DEFAULT_TAU0 = 54e-9  # s


def _check_n(n: float) -> float:
    n = float(n)
    if not N_MIN <= n <= N_MAX:
        raise ValueError(f"principal quantum number n={n} outside [{N_MIN}, {N_MAX}]")
    return n


@dataclass(frozen=True)
class ScalingParams:
    """Parameters of the single-site scaling laws.

    n is validated as an integer here because a physical configuration has
    a definite level; the formula-level functions accept real n so that
    scaling-law scans stay smooth.
    """

    n: int = 100
    k_delta: float = DEFAULT_K_DELTA
    k1: float = 1.89
    tau0: float = DEFAULT_TAU0
    error_target: float = 1e-3
    dim: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.n, int):
            raise ValueError(f"n must be an integer, got {self.n!r}")
        _check_n(self.n)
        if self.k_delta <= 0:
            raise ValueError(f"k_delta must be positive, got {self.k_delta}")
        if self.k1 <= 1:
            raise ValueError(f"k1 must exceed 1, got {self.k1}")
        if self.tau0 <= 0:
            raise ValueError(f"tau0 must be positive, got {self.tau0}")
        if not 0 < self.error_target < 1:
            raise ValueError(f"error_target must lie in (0, 1), got {self.error_target}")
        if self.dim not in (2, 3):
            raise ValueError(f"dim must be 2 or 3, got {self.dim}")


@dataclass(frozen=True)
class EnsembleParams:
    """Geometry of a multi-atom register ensemble and its array."""

    K: int = 100
    f: float = 0.5
    d_min: float = 0.7e-6       # intra-ensemble lattice period, m
    site_pitch: float = 5.3e-6  # inter-ensemble spacing, m
    register_size: int = 60

    def __post_init__(self) -> None:
        if self.K <= 0:
            raise ValueError(f"K must be positive, got {self.K}")
        if not 0 < self.f <= 1:
            raise ValueError(f"filling fraction must lie in (0, 1], got {self.f}")
        if self.d_min <= 0 or self.site_pitch <= 0:
            raise ValueError("d_min and site_pitch must be positive")
        if self.register_size <= 0:
            raise ValueError(f"register_size must be positive, got {self.register_size}")
        if self.K < self.register_size:
            raise ValueError(
                f"collective encoding needs K >= register_size "
                f"(got K={self.K}, register_size={self.register_size})"
            )


@dataclass(frozen=True)
class ArchitectureReport:
    """Derived site and qubit budget for one parameter set."""

    c6: Quantity
    tau: Quantity
    r_max: Quantity
    d_min: Quantity
    n_sites: int
    qubits_total: int
    array_side: Quantity  # = R_max; the array fits inside the interaction range

    def to_dict(self) -> dict:
        return {
            "c6_J_m6": self.c6.to(Unit.J_M6).value,
            "tau_s": self.tau.to(Unit.S).value,
            "r_max_m": self.r_max.to(Unit.M).value,
            "d_min_m": self.d_min.to(Unit.M).value,
            "n_sites": self.n_sites,
            "qubits_total": self.qubits_total,
            "array_side_m": self.array_side.to(Unit.M).value,
        }


def c6_asymptotic(n: float) -> Quantity:
    """Large-n van der Waals coefficient, C6 ~ n^11.

    C6 = (1/(4 pi eps0)^2) (3/2)^4 q^4 a0^4 / E_R * n^11, valid when the
    Forster defect scales as E_R / n^3.
    """
    n = _check_n(n)
    prefactor = (
        COULOMB_CONSTANT**2
        * (1.5**4)
        * ELEMENTARY_CHARGE**4
        * BOHR_RADIUS**4
        / RYDBERG_ENERGY
    )
    return Quantity(prefactor * n**11, Unit.J_M6)


def c6_forster(n: float, k_delta: float = DEFAULT_K_DELTA) -> Quantity:
    """van der Waals coefficient with defect delta = k_delta E_R / n^4.

    C6 = (1/(4 pi eps0)^2) (1/k_delta) (3/2)^4 q^4 a0^4 / E_R * n^12.
    Reduces to c6_asymptotic when k_delta = n.
    """
    n = _check_n(n)
    if k_delta <= 0:
        raise ValueError(f"k_delta must be positive, got {k_delta}")
    return Quantity(c6_asymptotic(n).value * n / k_delta, Unit.J_M6)


def rydberg_lifetime(n: float, tau0: float = DEFAULT_TAU0) -> Quantity:
    """Blackbody-limited Rydberg lifetime tau = tau0 n^2 at room temperature."""
    n = _check_n(n)
    if tau0 <= 0:
        raise ValueError(f"tau0 must be positive, got {tau0}")
    return Quantity(tau0 * n**2, Unit.S)


GATE_ERROR_CONSTANT = 3.0 * math.pi ** (2.0 / 3.0) / 2.0 ** (1.0 / 3.0)


def gate_error(omega: "Quantity | float", tau: "Quantity | float") -> float:
    """Minimum two-qubit gate error averaged over input states.

    E = (3 pi^(2/3) / 2^(1/3)) (Omega tau)^(-2/3) in the regime where the
    excitation Rabi frequency Omega exceeds the interaction shift.
    """
    w = magnitude(omega, Unit.RAD_PER_S)
    t = magnitude(tau, Unit.S)
    if w <= 0 or t <= 0:
        raise ValueError("omega and tau must be positive")
    return GATE_ERROR_CONSTANT * (w * t) ** (-2.0 / 3.0)


def optimal_interaction(tau: "Quantity | float", error: float) -> Quantity:
    """Interaction strength that realizes the minimum gate error.

    Delta_opt = 3 pi / (8^(1/3) tau E). Equivalent to
    (pi/4)^(1/3) Omega^(2/3) / tau^(1/3) at the Omega that yields error E.
    """
    t = magnitude(tau, Unit.S)
    if t <= 0:
        raise ValueError("tau must be positive")
    if not 0 < error < 1:
        raise ValueError(f"error must lie in (0, 1), got {error}")
    return Quantity(3.0 * math.pi / (8.0 ** (1.0 / 3.0) * t * error), Unit.RAD_PER_S)


def r_max(c6: "Quantity | float", tau: "Quantity | float", error: float) -> Quantity:
    """Maximum qubit separation at a fixed gate error.

    R_max = (2 / 3 pi)^(1/6) (C6 tau E / hbar)^(1/6); defined so that
    the van der Waals shift at R_max equals optimal_interaction(tau, E).
    """
    c6v = magnitude(c6, Unit.J_M6)
    t = magnitude(tau, Unit.S)
    if c6v <= 0 or t <= 0 or error <= 0:
        raise ValueError("c6, tau and error must be positive")
    return Quantity(
        (2.0 / (3.0 * math.pi)) ** (1.0 / 6.0) * (c6v * t * error / HBAR) ** (1.0 / 6.0),
        Unit.M,
    )


def interaction_strength(c6: "Quantity | float", r: "Quantity | float") -> Quantity:
    """van der Waals interaction expressed as an angular frequency, C6 / (hbar R^6)."""
    c6v = magnitude(c6, Unit.J_M6)
    rv = magnitude(r, Unit.M)
    if rv <= 0:
        raise ValueError(f"separation must be positive, got {rv}")
    return Quantity(c6v / (HBAR * rv**6), Unit.RAD_PER_S)


def tail_suppression(n_star: float, k1: float) -> float:
    """Rydberg wavefunction amplitude suppression at r = k1 a0 n*^2.

    The large-r radial amplitude ~ e^(-r / a0 n*) (r / a0 n*)^(n* - 1)
    peaks at a0 n*^2; at k1 times that radius it is smaller by
    e^(n* (k1 - 1)) / k1^(n* - 1). Returned as the (>= 1) suppression
    factor; the probability density is suppressed by its square.
    """
    if n_star <= 1:
        raise ValueError(f"n_star must exceed 1, got {n_star}")
    if k1 < 1:
        raise ValueError(f"k1 must be >= 1, got {k1}")
    # evaluated in log space: the two factors overflow separately for large n*
    return math.exp(n_star * (k1 - 1.0) - (n_star - 1.0) * math.log(k1))


def solve_k1(n_star: float, suppression_target: float) -> float:
    """Spacing factor k1 at which tail_suppression reaches the target.

    Monotone in k1 for k1 > 1, so the root is unique; solved by bracketed
    root finding to 1e-10 relative. target = 1 returns the boundary k1 = 1.
    """
    if n_star <= 1:
        raise ValueError(f"n_star must exceed 1, got {n_star}")
    if suppression_target < 1:
        raise ValueError(f"suppression target must be >= 1, got {suppression_target}")
    if suppression_target == 1:
        return 1.0
    log_target = math.log(suppression_target)

    def f(k1: float) -> float:
        return n_star * (k1 - 1.0) - (n_star - 1.0) * math.log(k1) - log_target

    hi = 1.5
    while f(hi) < 0:
        hi *= 2.0
    return float(brentq(f, 1.0, hi, rtol=1e-12, xtol=1e-15))


def d_min(n_max: float, k1: float) -> Quantity:
    """Minimum lattice spacing D_min = k1 a0 n_max^2.

    Keeps a neighboring ground-state atom outside the Rydberg electron
    orbit by the safety factor k1.
    """
    n_max = _check_n(n_max)
    if k1 <= 1:
        raise ValueError(f"k1 must exceed 1, got {k1}")
    return Quantity(k1 * BOHR_RADIUS * n_max**2, Unit.M)


def _packing_ratio(r: float, pitch: float, dim: int) -> float:
    if dim == 2:
        return math.pi / 4.0 * (r / pitch) ** 2
    if dim == 3:
        return math.pi / 6.0 * (r / pitch) ** 3
    raise ValueError(f"dim must be 2 or 3, got {dim}")


def n_max_sites_ratio(r: "Quantity | float", pitch: "Quantity | float", dim: int) -> int:
    """Number of lattice sites inside the interaction range.

    floor((pi/4) (R_max / pitch)^2) in 2D, floor((pi/6) (R_max / pitch)^3)
    in 3D: the sites of a square or cubic lattice of period `pitch` whose
    centers fall within a disk or ball of diameter R_max.
    """
    rv = magnitude(r, Unit.M)
    pv = magnitude(pitch, Unit.M)
    if pv <= 0 or rv <= 0:
        raise ValueError("r and pitch must be positive")
    return math.floor(_packing_ratio(rv, pv, dim))


def closed_form_site_count(
    n: float,
    k1: float,
    k_delta: float = DEFAULT_K_DELTA,
    tau0: float = DEFAULT_TAU0,
    error: float = 1e-3,
    dim: int = 2,
) -> float:
    """Real-valued maximum connected-site count, before flooring.

    2D: (3 pi^(2/3) / (2^(8/3) k1^2 k_delta^(1/3)))
        (alpha^2 m c^2 tau0 / hbar)^(1/3) E^(1/3) n^(2/3)
    3D: (3^(1/2) pi^(1/2) / (4 k1^3 k_delta^(1/2)))
        (alpha^2 m c^2 tau0 / hbar)^(1/2) E^(1/2) n

    The dimensionless group uses the electron mass: alpha^2 m c^2 = 2 E_R,
    which keeps the prefactor consistent with the E_R normalization of the
    Forster-defect C6 above. Algebraically identical to composing
    c6_forster -> rydberg_lifetime -> r_max -> packing at pitch d_min.
    """
    n = _check_n(n)
    if k1 <= 1 or k_delta <= 0 or tau0 <= 0 or not 0 < error < 1:
        raise ValueError("invalid scaling parameters")
    group = FINE_STRUCTURE**2 * ELECTRON_MASS * SPEED_OF_LIGHT**2 * tau0 / HBAR
    if dim == 2:
        prefactor = 3.0 * math.pi ** (2.0 / 3.0) / (
            2.0 ** (8.0 / 3.0) * k1**2 * k_delta ** (1.0 / 3.0)
        )
        return prefactor * group ** (1.0 / 3.0) * error ** (1.0 / 3.0) * n ** (2.0 / 3.0)
    if dim == 3:
        prefactor = math.sqrt(3.0 * math.pi) / (4.0 * k1**3 * math.sqrt(k_delta))
        return prefactor * math.sqrt(group) * math.sqrt(error) * n
    raise ValueError(f"dim must be 2 or 3, got {dim}")


def n_max_closed_form(params: ScalingParams) -> int:
    """Maximum number of directly interconnected single-atom sites."""
    return math.floor(
        closed_form_site_count(
            params.n, params.k1, params.k_delta, params.tau0, params.error_target, params.dim
        )
    )


def ensemble_diameter(K: int, f: float, d_min: "Quantity | float") -> Quantity:
    """Diameter of the sphere holding K atoms on a lattice of period d_min.

    D_K = (6/pi)^(1/3) d_min (K/f)^(1/3) with filling fraction f.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if not 0 < f <= 1:
        raise ValueError(f"filling fraction must lie in (0, 1], got {f}")
    dv = magnitude(d_min, Unit.M)
    if dv <= 0:
        raise ValueError("d_min must be positive")
    return Quantity((6.0 / math.pi) ** (1.0 / 3.0) * dv * (K / f) ** (1.0 / 3.0), Unit.M)


def architecture_report(scaling: ScalingParams, ensemble: EnsembleParams) -> ArchitectureReport:
    """Site and qubit budget for an array of register ensembles.

    Composes C6 -> lifetime -> R_max -> packing at the ensemble pitch.
    The site count is rounded to the nearest integer here (the packing
    formula is a continuum estimate and its fractional part carries no
    physical meaning at array scale); the single-site counters above keep
    floor semantics.
    """
    c6 = c6_forster(scaling.n, scaling.k_delta)
    tau = rydberg_lifetime(scaling.n, scaling.tau0)
    rmax = r_max(c6, tau, scaling.error_target)
    ratio = _packing_ratio(rmax.value, ensemble.site_pitch, scaling.dim)
    n_sites = math.floor(ratio + 0.5)
    return ArchitectureReport(
        c6=c6,
        tau=tau,
        r_max=rmax,
        d_min=Quantity(ensemble.d_min, Unit.M),
        n_sites=n_sites,
        qubits_total=n_sites * ensemble.register_size,
        array_side=rmax,
    )


def logical_budget(physical_qubits: int, physical_per_logical: int) -> int:
    """Number of logical qubits a register supports, floor(N_phys / N_per)."""
    if physical_qubits < 1 or physical_per_logical < 1:
        raise ValueError("both arguments must be >= 1")
    return physical_qubits // physical_per_logical
