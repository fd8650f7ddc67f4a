"""Holmium ground-state hyperfine structure and the 60-qubit register map.

The 165-Ho electronic ground state (J = 15/2, L = 6, S = 3/2) combined
with the nuclear spin I = 7/2 gives eight hyperfine manifolds F = 4..11,
128 sublevels in total. Qubits are encoded pairwise on (F, m) / (F+1, m)
with F in {4, 6, 8, 10}; the eight odd-F stretched states (F, +-F) are
left out, one of which, (11, 11), serves as the shared reservoir.

Magnetic-field handling is strictly linear Zeeman (g_F mu_B B m). The
fields of interest here are tens of gauss against multi-GHz hyperfine
splittings, far from the quadratic regime, and the nuclear g-factor is
neglected (it moves the electronic g_F values at the 1e-4 level).
"""

from __future__ import annotations

from dataclasses import dataclass

from .constants import BOLTZMANN, HBAR, MU_B_HZ_PER_G
from .units import Quantity, Unit, magnitude

QUBIT_LOWER_F = (4, 6, 8, 10)
QUBIT_UPPER_F = (5, 7, 9, 11)


@dataclass(frozen=True)
class HyperfineConfig:
    """Angular momenta and hyperfine constants of the ground level.

    Defaults are the 165-Ho ground state. The magnetic dipole constant A
    and electric quadrupole constant B (MHz) are configuration values;
    the derived 4.31 / 8.28 GHz manifold-splitting endpoints are what
    pins them observationally.
    """

    nuclear_i: float = 3.5
    j: float = 7.5
    l: float = 6.0
    s: float = 1.5
    a_mhz: float = 800.583
    b_mhz: float = -1668.0

    def __post_init__(self) -> None:
        for name in ("nuclear_i", "j", "l", "s"):
            v = getattr(self, name)
            if v < 0 or round(2 * v) != 2 * v:
                raise ValueError(f"{name} must be a non-negative half-integer, got {v}")

    @property
    def f_min(self) -> int:
        return int(abs(self.j - self.nuclear_i))

    @property
    def f_max(self) -> int:
        return int(self.j + self.nuclear_i)

    def f_values(self) -> range:
        return range(self.f_min, self.f_max + 1)

    def state_count(self) -> int:
        return sum(2 * f + 1 for f in self.f_values())


DEFAULT_HO = HyperfineConfig()


@dataclass(frozen=True, order=True)
class HyperfineState:
    """One |F, m> sublevel."""

    f: int
    m: int

    def __post_init__(self) -> None:
        if abs(self.m) > self.f:
            raise ValueError(f"|m| <= F violated: F={self.f}, m={self.m}")


def hyperfine_energy(cfg: HyperfineConfig, f: int) -> Quantity:
    """Hyperfine energy of manifold F relative to the level centroid.

    E(F) = (A/2) K + B [ (3/2) K (K+1) - 2 I(I+1) J(J+1) ]
                      / [ 2 I (2I-1) 2 J (2J-1) ]
    with K = F(F+1) - I(I+1) - J(J+1). With B = 0 the manifold spacings
    obey the interval rule E(F) - E(F-1) = A F.
    """
    if f not in cfg.f_values():
        raise ValueError(f"F={f} outside [{cfg.f_min}, {cfg.f_max}]")
    i, j = cfg.nuclear_i, cfg.j
    k = f * (f + 1) - i * (i + 1) - j * (j + 1)
    dipole = cfg.a_mhz / 2.0 * k
    quad = 0.0
    if cfg.b_mhz != 0.0:
        quad = (
            cfg.b_mhz
            * (1.5 * k * (k + 1) - 2.0 * i * (i + 1) * j * (j + 1))
            / (2.0 * i * (2 * i - 1) * 2.0 * j * (2 * j - 1))
        )
    return Quantity(dipole + quad, Unit.MHZ)


def manifold_splitting(cfg: HyperfineConfig, f_lower: int) -> Quantity:
    """Spacing E(F+1) - E(F) between adjacent manifolds, in GHz."""
    upper = hyperfine_energy(cfg, f_lower + 1).value
    lower = hyperfine_energy(cfg, f_lower).value
    return Quantity((upper - lower) / 1e3, Unit.GHZ)


def lande_gj(l: float, s: float, j: float) -> float:
    """Electronic Lande factor under L-S coupling.

    g_J = 1 + [J(J+1) + S(S+1) - L(L+1)] / [2 J(J+1)].
    """
    if j < 0 or l < 0 or s < 0:
        raise ValueError("angular momenta must be non-negative")
    if j == 0:
        raise ValueError("g_J undefined for J = 0")
    if not (abs(l - s) <= j <= l + s):
        raise ValueError(f"J={j} incompatible with L={l}, S={s}")
    return 1.0 + (j * (j + 1) + s * (s + 1) - l * (l + 1)) / (2.0 * j * (j + 1))


def lande_gf(gj: float, i: float, j: float, f: int) -> float:
    """Hyperfine Lande factor, nuclear term neglected.

    g_F = g_J [F(F+1) + J(J+1) - I(I+1)] / [2 F(F+1)].
    """
    if f <= 0:
        raise ValueError("g_F undefined for F = 0")
    if not abs(j - i) <= f <= j + i:
        raise ValueError(f"F={f} incompatible with I={i}, J={j}")
    return gj * (f * (f + 1) + j * (j + 1) - i * (i + 1)) / (2.0 * f * (f + 1))


def g_factor(cfg: HyperfineConfig, f: int) -> float:
    """g_F of manifold F for this configuration."""
    return lande_gf(lande_gj(cfg.l, cfg.s, cfg.j), cfg.nuclear_i, cfg.j, f)


def zeeman_shift(
    state: HyperfineState, b_gauss: float, cfg: HyperfineConfig = DEFAULT_HO
) -> Quantity:
    """Linear Zeeman shift g_F mu_B B m of one sublevel, in MHz."""
    if b_gauss < 0:
        raise ValueError(f"field must be >= 0, got {b_gauss} G")
    shift_hz = g_factor(cfg, state.f) * MU_B_HZ_PER_G * b_gauss * state.m
    return Quantity(shift_hz / 1e6, Unit.MHZ)


@dataclass(frozen=True)
class QubitAssignment:
    index: int  # 1-based register bit
    zero: HyperfineState
    one: HyperfineState


@dataclass(frozen=True)
class RegisterMap:
    """Assignment of the 128 sublevels to 60 qubits plus leftovers."""

    assignments: tuple[QubitAssignment, ...]
    reservoir: HyperfineState
    excluded: frozenset[HyperfineState]

    def qubit(self, index: int) -> QubitAssignment:
        if not 1 <= index <= len(self.assignments):
            raise ValueError(f"bit index {index} outside 1..{len(self.assignments)}")
        return self.assignments[index - 1]

    def all_states(self) -> set[HyperfineState]:
        used = {a.zero for a in self.assignments} | {a.one for a in self.assignments}
        return used | set(self.excluded)


def build_register_map() -> RegisterMap:
    """Canonical 60-qubit map over the Ho ground manifolds.

    Bit ordering walks the qubit manifolds upward, m ascending within
    each: F=4 holds bits 1-9, F=6 bits 10-22, F=8 bits 23-39, F=10 bits
    40-60. Bit 1 is (4,-4)/(5,-4); bit 60 is (10,10)/(11,10). The eight
    stretched odd-F states (F, +-F) stay unassigned and (11, 11) is the
    reservoir.
    """
    assignments = []
    index = 1
    for f in QUBIT_LOWER_F:
        for m in range(-f, f + 1):
            assignments.append(
                QubitAssignment(index, HyperfineState(f, m), HyperfineState(f + 1, m))
            )
            index += 1
    excluded = frozenset(
        HyperfineState(f, sign * f) for f in (5, 7, 9, 11) for sign in (-1, 1)
    )
    return RegisterMap(
        assignments=tuple(assignments),
        reservoir=HyperfineState(11, 11),
        excluded=excluded,
    )


CANONICAL_MAP = build_register_map()


def qubit_splitting(
    index: int, cfg: HyperfineConfig = DEFAULT_HO, b_gauss: float = 0.0
) -> Quantity:
    """Transition frequency of register bit `index`, hyperfine plus Zeeman, GHz."""
    assignment = CANONICAL_MAP.qubit(index)
    base = manifold_splitting(cfg, assignment.zero.f).value
    dz = (
        zeeman_shift(assignment.one, b_gauss, cfg).value
        - zeeman_shift(assignment.zero, b_gauss, cfg).value
    ) / 1e3
    return Quantity(base + dz, Unit.GHZ)


def rotation_selectivity(
    f: int, b_gauss: float, cfg: HyperfineConfig = DEFAULT_HO
) -> Quantity:
    """Frequency separation per unit delta-m between rotation resonances.

    A rotation drives (F-1, m) <-> (F, m); its resonance moves with m as
    (g_F - g_{F-1}) mu_B B m, so neighboring-m bits of the same manifold
    pair are split by |g_F - g_{F-1}| mu_B B. Returned in kHz per unit
    delta-m. F is the upper manifold of the pair.
    """
    if f not in QUBIT_UPPER_F:
        raise ValueError(f"F={f} is not an upper qubit manifold (5, 7, 9 or 11)")
    if b_gauss <= 0:
        raise ValueError(f"field must be positive, got {b_gauss} G")
    dg = abs(g_factor(cfg, f) - g_factor(cfg, f - 1))
    return Quantity(dg * MU_B_HZ_PER_G * b_gauss / 1e3, Unit.KHZ)


def shelving_selectivity(
    f: int, b_gauss: float, cfg: HyperfineConfig = DEFAULT_HO
) -> Quantity:
    """Adjacent-m resonance separation for shelving or Rydberg addressing.

    Transfers that leave the manifold resolve individual m levels by the
    full g_F mu_B B per unit delta-m (MHz). The worst case across the
    register is the largest F (smallest g_F).
    """
    if f not in cfg.f_values():
        raise ValueError(f"F={f} outside [{cfg.f_min}, {cfg.f_max}]")
    if b_gauss < 0:
        raise ValueError(f"field must be >= 0, got {b_gauss} G")
    return Quantity(g_factor(cfg, f) * MU_B_HZ_PER_G * b_gauss / 1e6, Unit.MHZ)


def off_resonant_error(rabi: float, detuning: float) -> float:
    """Upper bound on population transfer of a spectator at detuning delta.

    Omega^2 / (Omega^2 + delta^2) for Rabi frequency Omega; both arguments
    in the same frequency unit.
    """
    if detuning == 0:
        raise ValueError("detuning must be nonzero")
    r2 = float(rabi) ** 2
    return r2 / (r2 + float(detuning) ** 2)


def field_stability_requirement(
    phase_error_target: float,
    differential_shift: "Quantity | float",
    duration: "Quantity | float",
) -> float:
    """Fractional field stability keeping accumulated phase error in budget.

    The differential shift (MHz if bare) times the duration (s) is the
    accumulated phase in cycles; the allowed fractional field drift is
    phase_error_target / cycles.
    """
    shift_hz = magnitude(differential_shift, Unit.MHZ) * 1e6
    t = magnitude(duration, Unit.S)
    if phase_error_target <= 0 or shift_hz <= 0:
        raise ValueError("phase error target and differential shift must be positive")
    if t <= 0:
        raise ValueError("duration must be positive (zero duration is degenerate)")
    return phase_error_target / (shift_hz * t)


def swap_mitigation_factor(
    high_pair: tuple[int, int],
    low_pair: tuple[int, int],
    cfg: HyperfineConfig = DEFAULT_HO,
) -> float:
    """Bias-field relaxation won by swapping a bit to a lower-F encoding.

    For a bit on manifolds high_pair = (F, F') moved to low_pair before a
    rotation, the selectivity improves by
    |g_{F_low} - g_{F'}| / |g_{F_high} - g_{F'}|;
    g_F falls with F, so swapping to lower F always gives a factor > 1.
    """
    f_high, f_high_ref = high_pair
    f_low, _ = low_pair
    denom = abs(g_factor(cfg, f_high) - g_factor(cfg, f_high_ref))
    if denom == 0:
        raise ValueError(f"degenerate pair {high_pair}: zero g-factor difference")
    return abs(g_factor(cfg, f_low) - g_factor(cfg, f_high_ref)) / denom


def doppler_limit(gamma: "Quantity | float") -> Quantity:
    """Doppler cooling limit T = hbar gamma / (2 k_B) for linewidth gamma (1/s)."""
    g = magnitude(gamma, Unit.PER_S)
    if g <= 0:
        raise ValueError(f"linewidth must be positive, got {g}")
    return Quantity(HBAR * g / (2.0 * BOLTZMANN) * 1e6, Unit.UK)
