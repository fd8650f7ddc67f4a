"""Desk-scale state-vector simulator of a collectively encoded register.

The register stores N logical qubits in the internal-state pairs of one
atomic ensemble; this simulator tracks the logical N-qubit state vector
(N <= 20) rather than the full K-atom symmetric space. The collective
structure enters through bookkeeping: an atom budget (each encoded bit
holds one collective excitation), a relabeling permutation between
logical bits and physical state-pair slots, and pulse schedules built
from the hyperfine register map.

Gates are ideal unitaries; the analytic error model lives in
error_budget, which prices each schedule step by its worst-spectator
off-resonant transfer and its accumulated field-sensitive phase.

All randomness flows through numpy's seeded PCG64 generator, so every
stochastic result is reproducible bit-exactly per seed. A RegisterState
is owned by one caller at a time; operations return new states and never
mutate their input, so distinct registers can be simulated in parallel.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import MU_B_HZ_PER_G
from .hyperfine import (
    DEFAULT_HO,
    HyperfineConfig,
    HyperfineState,
    RegisterMap,
    build_register_map,
    g_factor,
    hyperfine_energy,
    off_resonant_error,
)

MAX_SIM_QUBITS = 20
MAX_SCHEDULE_QUBITS = 60

# metastable J=11/2 manifold bounds with I=7/2 (shelf destination)
SHELF_F_MIN, SHELF_F_MAX = 2, 9
SHELF_PUMP_STATE = (9, 9)  # optically pumped collection state in J=11/2

DEFAULT_STEP_DURATION_S = 1e-6

STEP_KINDS = ("blockade_prep", "raman_transfer", "rotation", "shelve", "fluoresce", "restore")


@dataclass(frozen=True)
class PulseStep:
    kind: str
    source: tuple[int, int] | None
    target: tuple[int, int] | None
    source_level: str = "ground"   # electronic manifold: "ground" or "J=11/2"
    target_level: str = "ground"
    duration_s: float = DEFAULT_STEP_DURATION_S
    frequency_hz: float = 0.0
    note: str = ""

    def __post_init__(self) -> None:
        if self.kind not in STEP_KINDS:
            raise ValueError(f"unknown step kind {self.kind!r}")
        if self.duration_s <= 0:
            raise ValueError(f"step duration must be positive, got {self.duration_s}")
        if self.kind in ("raman_transfer", "blockade_prep"):
            if (self.source_level, self.source) == (self.target_level, self.target):
                raise ValueError(f"{self.kind} requires source != target")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "source": list(self.source) if self.source else None,
            "target": list(self.target) if self.target else None,
            "source_level": self.source_level,
            "target_level": self.target_level,
            "duration_s": self.duration_s,
            "frequency_hz": self.frequency_hz,
            "note": self.note,
        }


@dataclass(frozen=True)
class PulseSchedule:
    steps: tuple[PulseStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def count(self, kind: str) -> int:
        return sum(1 for s in self.steps if s.kind == kind)

    def to_json(self) -> str:
        return json.dumps([s.to_dict() for s in self.steps], sort_keys=True)


@dataclass(frozen=True)
class ShelfRecord:
    """A register bit parked in the metastable J=11/2 manifold."""

    bit: int                      # logical index
    slot: int                     # physical state-pair slot
    ground: tuple[int, int]       # (F, m) the excitation came from
    metastable: tuple[int, int]   # (F', m') it occupies on the shelf


@dataclass(frozen=True)
class RegisterState:
    n_qubits: int
    amplitudes: np.ndarray        # complex, length 2^N, unit norm
    atom_budget: int
    relabel: tuple[int, ...]      # logical bit j (1-based) -> physical slot relabel[j-1]
    shelf: ShelfRecord | None = None
    register_map: RegisterMap = field(default_factory=build_register_map)
    trace: tuple[dict, ...] = ()

    def slot_of(self, bit: int) -> int:
        if not 1 <= bit <= self.n_qubits:
            raise ValueError(f"bit index {bit} outside 1..{self.n_qubits}")
        return self.relabel[bit - 1]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probability_one(self, bit: int) -> float:
        """Born probability of measuring 1 on logical bit `bit`."""
        axis = self.slot_of(bit) - 1
        shaped = self.amplitudes.reshape([2] * self.n_qubits)
        moved = np.moveaxis(shaped, axis, 0)
        return float(np.sum(np.abs(moved[1]) ** 2))

    def logical_amplitudes(self) -> np.ndarray:
        """State vector reordered so logical bit j is tensor axis j - 1."""
        shaped = self.amplitudes.reshape([2] * self.n_qubits)
        perm = [s - 1 for s in self.relabel]
        return np.transpose(shaped, perm).reshape(-1)


def _finish(state: RegisterState, record: dict) -> RegisterState:
    n = np.linalg.norm(state.amplitudes)
    if abs(n - 1.0) > 1e-12:
        raise AssertionError(f"state norm drifted to {n}")
    return replace(state, trace=state.trace + (record,))


def new_register(
    n_qubits: int,
    atom_budget: int,
    register_map: RegisterMap | None = None,
) -> RegisterState:
    """Fresh register in |00...0> with identity relabeling."""
    if not 1 <= n_qubits <= MAX_SIM_QUBITS:
        raise ValueError(f"n_qubits must lie in 1..{MAX_SIM_QUBITS}, got {n_qubits}")
    if atom_budget < n_qubits:
        raise ValueError(
            f"atom budget {atom_budget} cannot support {n_qubits} encoded bits"
        )
    amps = np.zeros(2**n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    state = RegisterState(
        n_qubits=n_qubits,
        amplitudes=amps,
        atom_budget=atom_budget,
        relabel=tuple(range(1, n_qubits + 1)),
        register_map=register_map or build_register_map(),
    )
    return _finish(state, {"op": "new_register", "n_qubits": n_qubits, "atom_budget": atom_budget})


def raman_route(
    start: tuple[int, int], target: tuple[int, int]
) -> list[tuple[int, int]]:
    """Waypoints of a two-photon Raman walk between (F, m) sublevels.

    Each hop changes F by at most 1 and m by at most 2 (two photons, one
    unit of angular momentum each) while keeping |m| <= F, greedily toward
    the target; the hop count is max(|dF|, ceil(|dm| / 2)).
    """
    f, m = start
    tf, tm = target
    route: list[tuple[int, int]] = []
    while (f, m) != (tf, tm):
        if f != tf:
            f += 1 if tf > f else -1
        dm = max(-2, min(2, tm - m))
        m = max(-f, min(f, m + dm))
        route.append((f, m))
        if len(route) > 200:
            raise RuntimeError(f"raman route from {start} to {target} did not converge")
    return route


def _splitting_hz(cfg: HyperfineConfig, a: tuple[int, int], b: tuple[int, int]) -> float:
    return abs(
        hyperfine_energy(cfg, b[0]).value - hyperfine_energy(cfg, a[0]).value
    ) * 1e6


def init_schedule(
    register_map: RegisterMap,
    n_qubits: int,
    cfg: HyperfineConfig = DEFAULT_HO,
) -> PulseSchedule:
    """Pulse program preparing bits 1..n_qubits in their zero states.

    Each bit costs one blockade-mediated excitation from the reservoir
    into the highest qubit zero state (10, 10) and a Raman walk from
    there to its own zero state. The walk to bit 1 at (4, -4) takes 7
    hops; bit 60 takes none.
    """
    if not 1 <= n_qubits <= MAX_SCHEDULE_QUBITS:
        raise ValueError(f"n_qubits must lie in 1..{MAX_SCHEDULE_QUBITS}")
    anchor = (10, 10)
    reservoir = (register_map.reservoir.f, register_map.reservoir.m)
    steps: list[PulseStep] = []
    for bit in range(1, n_qubits + 1):
        assignment = register_map.qubit(bit)
        zero = (assignment.zero.f, assignment.zero.m)
        steps.append(
            PulseStep(
                kind="blockade_prep",
                source=reservoir,
                target=anchor,
                frequency_hz=_splitting_hz(cfg, reservoir, anchor),
                note=f"bit {bit}: collective excitation from reservoir",
            )
        )
        here = anchor
        for waypoint in raman_route(anchor, zero):
            steps.append(
                PulseStep(
                    kind="raman_transfer",
                    source=here,
                    target=waypoint,
                    frequency_hz=_splitting_hz(cfg, here, waypoint),
                    note=f"bit {bit}",
                )
            )
            here = waypoint
    return PulseSchedule(steps=tuple(steps))


def _rotation_matrix(theta: float, phi: float) -> np.ndarray:
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return np.array(
        [
            [c, -1j * s * np.exp(-1j * phi)],
            [-1j * s * np.exp(1j * phi), c],
        ],
        dtype=np.complex128,
    )


def _apply_single(amps: np.ndarray, n: int, axis: int, u: np.ndarray) -> np.ndarray:
    shaped = amps.reshape([2] * n)
    moved = np.moveaxis(shaped, axis, 0)
    out = np.einsum("ab,b...->a...", u, moved)
    return np.moveaxis(out, 0, axis).reshape(-1)


def apply_rotation(state: RegisterState, bit: int, theta: float, phi: float) -> RegisterState:
    """Single-qubit rotation R(theta, phi) on logical bit `bit`."""
    slot = state.slot_of(bit)
    amps = _apply_single(
        state.amplitudes, state.n_qubits, slot - 1, _rotation_matrix(theta, phi)
    )
    new = replace(state, amplitudes=amps)
    return _finish(new, {"op": "rotation", "bit": bit, "slot": slot, "theta": theta, "phi": phi})


def _shelf_target(ground: tuple[int, int]) -> tuple[int, int]:
    """Nearest J=11/2 sublevel reachable within |dF| <= 2 and |dm| <= 2."""
    f, m = ground
    fs = max(SHELF_F_MIN, min(SHELF_F_MAX, f))
    ms = max(-fs, min(fs, m))
    if abs(fs - f) > 2 or abs(ms - m) > 2:
        raise ValueError(f"no shelf state within the Raman constraint of {ground}")
    return (fs, ms)


def measure(state: RegisterState, bit: int, rng_seed: int) -> tuple[int, RegisterState]:
    """Projective measurement of logical bit `bit` by shelving readout.

    The one-component is shelved to J=11/2 and fluoresced; photons mean
    outcome 1 (the excitation is parked on the shelf for a later reset),
    silence means the bit is projected to |0>. Outcomes follow the Born
    rule under the seeded generator.
    """
    slot = state.slot_of(bit)
    axis = slot - 1
    n = state.n_qubits
    shaped = state.amplitudes.reshape([2] * n).copy()
    moved = np.moveaxis(shaped, axis, 0)
    p1 = float(np.sum(np.abs(moved[1]) ** 2))
    rng = np.random.default_rng(rng_seed)
    outcome = 1 if rng.random() < p1 else 0
    moved[1 - outcome] = 0.0
    norm = math.sqrt(p1 if outcome == 1 else 1.0 - p1)
    moved /= norm
    amps = np.moveaxis(moved, 0, axis).reshape(-1)

    assignment = state.register_map.qubit(slot)
    one = (assignment.one.f, assignment.one.m)
    shelf = state.shelf
    steps = [
        PulseStep(
            kind="shelve",
            source=one,
            target=_shelf_target(one),
            target_level="J=11/2",
            note=f"bit {bit}: park one-state in J=11/2",
        ).to_dict(),
        PulseStep(
            kind="fluoresce",
            source=_shelf_target(one),
            target=_shelf_target(one),
            source_level="J=11/2",
            target_level="J=11/2",
            note="readout cycling with repumpers",
        ).to_dict(),
    ]
    if outcome == 1:
        shelf = ShelfRecord(bit=bit, slot=slot, ground=one, metastable=_shelf_target(one))
    new = replace(state, amplitudes=amps, shelf=shelf)
    return outcome, _finish(
        new,
        {
            "op": "measure",
            "bit": bit,
            "slot": slot,
            "seed": rng_seed,
            "outcome": outcome,
            "p1": p1,
            "steps": steps,
        },
    )


def _require_pending(state: RegisterState, bit: int) -> ShelfRecord:
    if state.shelf is None or state.shelf.bit != bit:
        raise ValueError(
            f"reset of bit {bit} requires a prior measurement with outcome 1 on it"
        )
    return state.shelf


def reset_swap_down(state: RegisterState, bit: int) -> RegisterState:
    """Refill the hole left by a destructive readout by shifting slots down.

    Physical slots above the measured one each swap their contents one
    slot down; the freed top slot is reinitialized to |0> from the
    reservoir by a blockade excitation and the relabeling is updated so
    every logical bit keeps its identity (the measured bit ends up on the
    top slot). Costs one atom from the budget.
    """
    shelf = _require_pending(state, bit)
    n = state.n_qubits
    slot = shelf.slot
    axis = slot - 1

    shaped = state.amplitudes.reshape([2] * n)
    taken = np.take(shaped, 1, axis=axis)  # post-measurement eigenstate, bit = 1
    # append the refreshed slot as the new top slot
    new_shaped = np.stack([taken, np.zeros_like(taken)], axis=n - 1)
    amps = new_shaped.reshape(-1)

    def shift(s: int) -> int:
        return s - 1 if s > slot else s

    relabel = tuple(
        n if j == bit else shift(state.relabel[j - 1]) for j in range(1, n + 1)
    )
    steps: list[dict] = [
        PulseStep(
            kind="restore",
            source=shelf.metastable,
            target=(state.register_map.reservoir.f, state.register_map.reservoir.m),
            source_level="J=11/2",
            note="pump shelf to (9,9) and return excitation to reservoir",
        ).to_dict()
    ]
    for phys in range(slot + 1, n + 1):
        upper = state.register_map.qubit(phys)
        lower = state.register_map.qubit(phys - 1)
        for attr in ("zero", "one"):
            src = getattr(upper, attr)
            dst = getattr(lower, attr)
            steps.append(
                PulseStep(
                    kind="raman_transfer",
                    source=(src.f, src.m),
                    target=(dst.f, dst.m),
                    note=f"swap slot {phys} down to {phys - 1} ({attr})",
                ).to_dict()
            )
    top = state.register_map.qubit(n)
    steps.append(
        PulseStep(
            kind="blockade_prep",
            source=(state.register_map.reservoir.f, state.register_map.reservoir.m),
            target=(top.zero.f, top.zero.m),
            note=f"reinitialize top slot {n}",
        ).to_dict()
    )
    new = replace(
        state,
        amplitudes=amps,
        relabel=relabel,
        shelf=None,
        atom_budget=state.atom_budget - 1,
    )
    return _finish(
        new,
        {
            "op": "reset_swap_down",
            "bit": bit,
            "slot": slot,
            "relabel": list(relabel),
            "atom_budget": new.atom_budget,
            "steps": steps,
        },
    )


def reset_shelf_restore(state: RegisterState, bit: int) -> RegisterState:
    """Restore a read-out bit in place through the metastable shelf.

    The shelved excitation is pumped to the J=11/2 collection state and
    returned to the reservoir; a blockade excitation then lands in a
    J=11/2 sublevel within |dF| <= 2 and |dm| <= 2 of the bit's zero
    state, from which one Raman transfer restores |0> in place. No
    relabeling. Costs one atom from the budget.
    """
    shelf = _require_pending(state, bit)
    n = state.n_qubits
    slot = shelf.slot
    axis = slot - 1

    shaped = state.amplitudes.reshape([2] * n)
    taken = np.take(shaped, 1, axis=axis)
    new_shaped = np.stack([taken, np.zeros_like(taken)], axis=axis)
    amps = new_shaped.reshape(-1)

    assignment = state.register_map.qubit(slot)
    zero = (assignment.zero.f, assignment.zero.m)
    waypoint = _shelf_target(zero)
    if abs(waypoint[0] - zero[0]) > 2 or abs(waypoint[1] - zero[1]) > 2:
        raise ValueError(f"restore route to {zero} violates the Raman step constraint")
    reservoir = (state.register_map.reservoir.f, state.register_map.reservoir.m)
    steps = [
        PulseStep(
            kind="restore",
            source=shelf.metastable,
            target=reservoir,
            source_level="J=11/2",
            note="pump shelf to (9,9) and return excitation to reservoir",
        ).to_dict(),
        PulseStep(
            kind="blockade_prep",
            source=reservoir,
            target=waypoint,
            target_level="J=11/2",
            note="blockade excitation into J=11/2 waypoint",
        ).to_dict(),
        PulseStep(
            kind="raman_transfer",
            source=waypoint,
            target=zero,
            source_level="J=11/2",
            note=f"in-place restore of bit {bit} (|dF|<=2, |dm|<=2)",
        ).to_dict(),
    ]
    new = replace(
        state,
        amplitudes=amps,
        shelf=None,
        atom_budget=state.atom_budget - 1,
    )
    return _finish(
        new,
        {
            "op": "reset_shelf_restore",
            "bit": bit,
            "slot": slot,
            "relabel": list(new.relabel),
            "atom_budget": new.atom_budget,
            "steps": steps,
        },
    )


@dataclass(frozen=True)
class StepBudget:
    kind: str
    note: str
    spectator_detuning_hz: float
    spectator_error: float
    phase_cycles: float


@dataclass(frozen=True)
class ErrorBudgetReport:
    steps: tuple[StepBudget, ...]
    total_spectator_error: float
    total_phase_cycles: float
    field_stability_for_1e3: float
    b_gauss: float
    rabi_hz: float

    def to_dict(self) -> dict:
        return {
            "b_gauss": self.b_gauss,
            "rabi_hz": self.rabi_hz,
            "total_spectator_error": self.total_spectator_error,
            "total_phase_cycles": self.total_phase_cycles,
            "field_stability_for_1e3": self.field_stability_for_1e3,
            "steps": [
                {
                    "kind": s.kind,
                    "note": s.note,
                    "spectator_detuning_hz": s.spectator_detuning_hz,
                    "spectator_error": s.spectator_error,
                    "phase_cycles": s.phase_cycles,
                }
                for s in self.steps
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _worst_differential_shift_hz(cfg: HyperfineConfig, b_gauss: float) -> float:
    """Largest qubit-transition Zeeman shift across the register.

    max over lower manifolds F of |g_F - g_(F+1)| * F * mu_B * B; the
    stretched bits of the F=4/5 pair dominate.
    """
    worst = 0.0
    for f in (4, 6, 8, 10):
        dg = abs(g_factor(cfg, f) - g_factor(cfg, f + 1))
        worst = max(worst, dg * f * MU_B_HZ_PER_G * b_gauss)
    return worst


def _step_detuning_hz(step: PulseStep, cfg: HyperfineConfig, b_gauss: float) -> float:
    ground_states = [
        s
        for s, level in ((step.source, step.source_level), (step.target, step.target_level))
        if s is not None and level == "ground" and cfg.f_min <= s[0] <= cfg.f_max
    ]
    if step.kind == "rotation" and len(ground_states) == 2:
        dg = abs(g_factor(cfg, ground_states[0][0]) - g_factor(cfg, ground_states[1][0]))
        return dg * MU_B_HZ_PER_G * b_gauss
    if not ground_states:
        # steps living entirely on the shelf: price them at the worst
        # (smallest) ground g-factor rather than claiming immunity
        fs = [cfg.f_max]
    else:
        fs = [s[0] for s in ground_states]
    g = min(g_factor(cfg, f) for f in fs)
    return g * MU_B_HZ_PER_G * b_gauss


def error_budget(
    schedule: PulseSchedule,
    b_gauss: float,
    rabi_hz: float,
    cfg: HyperfineConfig = DEFAULT_HO,
) -> ErrorBudgetReport:
    """Analytic addressing-error budget for a pulse schedule.

    Per step: the worst spectator sits one m unit away, detuned by the
    rotation selectivity (g-factor difference) for rotations and by the
    full g_F mu_B B for manifold-changing transfers; its transfer
    probability is Omega^2 / (Omega^2 + delta^2). The dephasing figure is
    the worst-bit differential Zeeman shift times the step duration,
    summed into total phase cycles; the report quotes the fractional
    field stability that keeps 1e-3 of a cycle over the whole schedule.
    """
    if b_gauss <= 0:
        raise ValueError(f"field must be positive, got {b_gauss} G")
    if rabi_hz <= 0:
        raise ValueError(f"Rabi frequency must be positive, got {rabi_hz}")
    shift_hz = _worst_differential_shift_hz(cfg, b_gauss)
    entries = []
    total_err = 0.0
    total_cycles = 0.0
    for step in schedule.steps:
        detuning = _step_detuning_hz(step, cfg, b_gauss)
        err = off_resonant_error(rabi_hz, detuning)
        cycles = shift_hz * step.duration_s
        total_err += err
        total_cycles += cycles
        entries.append(
            StepBudget(
                kind=step.kind,
                note=step.note,
                spectator_detuning_hz=detuning,
                spectator_error=err,
                phase_cycles=cycles,
            )
        )
    stability = 1e-3 / total_cycles if total_cycles > 0 else math.inf
    return ErrorBudgetReport(
        steps=tuple(entries),
        total_spectator_error=total_err,
        total_phase_cycles=total_cycles,
        field_stability_for_1e3=stability,
        b_gauss=b_gauss,
        rabi_hz=rabi_hz,
    )
