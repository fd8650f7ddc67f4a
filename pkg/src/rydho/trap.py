"""Optical dipole trap depth and scattering from a table of atomic levels.

Each dipole-allowed level with a known decay rate contributes a two-level
light shift U = (3 pi / 2) (c^2 / omega_a^3) (gamma / Delta) I and photon
scattering rate r = (3 pi / 2) (c^2 / hbar omega_a^3) (gamma / Delta)^2 I
(rotating wave, Delta = omega - omega_a); the trap curves are plain sums
over the table. The Ho ground state is odd parity, so "dipole allowed"
means even-parity upper levels here.

Levels with unknown decay rates are kept in the table but excluded from
the sums; spectra carry an explicit list of what was skipped so a thin
table cannot masquerade as a complete one.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass
from importlib import resources

from .constants import BOLTZMANN, HBAR, SPEED_OF_LIGHT
from .units import Quantity, Unit, magnitude

TWO_PI_C_100 = 2.0 * math.pi * SPEED_OF_LIGHT * 100.0  # rad/s per cm^-1


def wavenumber_to_angular(energy_cm1: float) -> float:
    """omega = 2 pi c nu_tilde for a wavenumber in cm^-1."""
    return TWO_PI_C_100 * energy_cm1


class LevelParseError(ValueError):
    """Malformed level-table input; message carries the line number."""


@dataclass(frozen=True)
class LevelRecord:
    energy_cm1: float
    parity: str  # 'e' or 'o'
    j: float
    gamma_s1: float | None  # decay rate to the ground state, None = unknown
    label: str = ""

    def __post_init__(self) -> None:
        if self.energy_cm1 < 0:
            raise ValueError(f"level energy must be >= 0, got {self.energy_cm1}")
        if self.parity not in ("e", "o"):
            raise ValueError(f"parity must be 'e' or 'o', got {self.parity!r}")
        if self.gamma_s1 is not None and self.gamma_s1 <= 0:
            raise ValueError(f"gamma must be positive when given, got {self.gamma_s1}")

    @property
    def dipole_allowed(self) -> bool:
        # even-parity upper levels couple to the odd-parity ground state
        return self.parity == "e"

    @property
    def gamma_known(self) -> bool:
        return self.gamma_s1 is not None


@dataclass(frozen=True)
class LevelTable:
    records: tuple[LevelRecord, ...]
    source: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "records", tuple(sorted(self.records, key=lambda r: r.energy_cm1))
        )

    def __len__(self) -> int:
        return len(self.records)

    def usable(self) -> tuple[LevelRecord, ...]:
        """Levels that enter the sums: dipole allowed with known gamma."""
        return tuple(r for r in self.records if r.dipole_allowed and r.gamma_known)

    def skipped(self) -> tuple[LevelRecord, ...]:
        return tuple(r for r in self.records if not (r.dipole_allowed and r.gamma_known))


REQUIRED_COLUMNS = ("energy_cm1", "parity", "J", "label")


def parse_levels(text: str, source: str = "<string>") -> LevelTable:
    """Parse a delimited level table.

    Header must name energy_cm1, parity, J, label; a gamma_s1 column is
    optional and blank cells mean the rate is unknown. Malformed rows
    raise LevelParseError with the 1-based line number; duplicate energies
    produce a warning but both rows are kept.
    """
    stripped = text.strip()
    if not stripped:
        return LevelTable(records=(), source=source)
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise LevelParseError(f"{source}: header missing columns {missing}; got {header}")
    has_gamma = "gamma_s1" in header
    records = []
    for row in reader:
        line_no = reader.line_num
        try:
            raw_gamma = (row.get("gamma_s1") or "").strip() if has_gamma else ""
            if None in row.values() or (None in row and row[None]):
                raise ValueError("wrong number of fields")
            rec = LevelRecord(
                energy_cm1=float(row["energy_cm1"]),
                parity=row["parity"].strip(),
                j=float(row["J"]),
                gamma_s1=float(raw_gamma) if raw_gamma else None,
                label=(row["label"] or "").strip(),
            )
        except (TypeError, ValueError, AttributeError) as exc:
            raise LevelParseError(f"{source}: line {line_no}: {exc}") from exc
        records.append(rec)
    energies = [r.energy_cm1 for r in records]
    dupes = {e for e in energies if energies.count(e) > 1}
    if dupes:
        warnings.warn(
            f"{source}: duplicate level energies {sorted(dupes)} (all rows kept)",
            stacklevel=2,
        )
    return LevelTable(records=tuple(records), source=source)


def load_levels(path: str) -> LevelTable:
    with open(path, encoding="utf-8") as fh:
        return parse_levels(fh.read(), source=path)


def default_level_table() -> LevelTable:
    """The bundled table: the documented strong lines near 24.4e3 cm^-1.

    Two levels carry measured rates (2.04e8 and 2.00e8 1/s); two nearby
    dipole-allowed levels with unmeasured rates are retained as explicit
    gaps. Trap numbers from this table are lower bounds on the depth a
    complete table would give.
    """
    data = resources.files("rydho.data").joinpath("levels.csv").read_text("utf-8")
    return parse_levels(data, source="bundled:levels.csv")


@dataclass(frozen=True)
class BeamParams:
    power_w: float = 5e-3
    waist_m: float = 5e-6  # 1/e^2 intensity radius

    def __post_init__(self) -> None:
        if self.power_w <= 0 or self.waist_m <= 0:
            raise ValueError("beam power and waist must be positive")


def peak_intensity(beam: BeamParams) -> Quantity:
    """On-axis intensity of a Gaussian beam, I = 2 P / (pi w^2)."""
    return Quantity(2.0 * beam.power_w / (math.pi * beam.waist_m**2), Unit.W_PER_M2)


def line_potential(
    gamma: float,
    omega_a: float,
    omega_laser: float,
    intensity: "Quantity | float",
) -> Quantity:
    """Two-level optical potential of one line, positive for blue detuning.

    U = (3 pi / 2) (c^2 / omega_a^3) (gamma / Delta) I, Delta = omega - omega_a.
    """
    if gamma is None:
        raise ValueError("line potential needs a known decay rate")
    delta = omega_laser - omega_a
    if delta == 0:
        raise ValueError("laser exactly on resonance: detuning is zero")
    i = magnitude(intensity, Unit.W_PER_M2)
    u = 1.5 * math.pi * SPEED_OF_LIGHT**2 / omega_a**3 * (gamma / delta) * i
    return Quantity(u, Unit.J)


def line_scattering(
    gamma: float,
    omega_a: float,
    omega_laser: float,
    intensity: "Quantity | float",
) -> Quantity:
    """Photon scattering rate of one line.

    r = (3 pi / 2) (c^2 / hbar omega_a^3) (gamma / Delta)^2 I; satisfies
    r = (U / hbar) (gamma / Delta) identically, and is never negative.
    """
    if gamma is None:
        raise ValueError("scattering rate needs a known decay rate")
    delta = omega_laser - omega_a
    if delta == 0:
        raise ValueError("laser exactly on resonance: detuning is zero")
    i = magnitude(intensity, Unit.W_PER_M2)
    r = 1.5 * math.pi * SPEED_OF_LIGHT**2 / (HBAR * omega_a**3) * (gamma / delta) ** 2 * i
    return Quantity(r, Unit.PER_S)


RESONANCE_GUARD_CM1 = 1.0


@dataclass(frozen=True)
class SpectrumPoint:
    energy_cm1: float
    depth_uk: float | None
    scatter_s1: float | None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.depth_uk is not None


@dataclass(frozen=True)
class TrapSpectrum:
    points: tuple[SpectrumPoint, ...]
    skipped_levels: tuple[LevelRecord, ...]  # in the table but not in the sums

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["energy_cm1", "depth_uK", "scatter_s1", "note"])
        for p in self.points:
            writer.writerow(
                [
                    f"{p.energy_cm1:.10g}",
                    "" if p.depth_uk is None else f"{p.depth_uk:.10g}",
                    "" if p.scatter_s1 is None else f"{p.scatter_s1:.10g}",
                    p.note,
                ]
            )
        return buf.getvalue()


def trap_spectrum(
    levels: LevelTable,
    beam: BeamParams,
    energies_cm1: "list[float]",
) -> TrapSpectrum:
    """Total trap depth (uK) and scattering rate (1/s) on an energy grid.

    Sums the contributions of every usable level at each laser energy.
    Grid points closer than 1 cm^-1 to a usable resonance are emitted as
    flagged markers instead of numbers; they do not abort the run.
    """
    usable = levels.usable()
    if not usable:
        raise ValueError(
            f"level table {levels.source!r} has no dipole-allowed level with known gamma"
        )
    intensity = peak_intensity(beam)
    points = []
    for e in energies_cm1:
        nearest = min(abs(e - rec.energy_cm1) for rec in usable)
        if nearest <= RESONANCE_GUARD_CM1:
            points.append(SpectrumPoint(e, None, None, "resonance"))
            continue
        omega = wavenumber_to_angular(e)
        u_total = 0.0
        r_total = 0.0
        for rec in usable:
            omega_a = wavenumber_to_angular(rec.energy_cm1)
            u_total += line_potential(rec.gamma_s1, omega_a, omega, intensity).value
            r_total += line_scattering(rec.gamma_s1, omega_a, omega, intensity).value
        points.append(SpectrumPoint(e, u_total / BOLTZMANN * 1e6, r_total))
    return TrapSpectrum(points=tuple(points), skipped_levels=levels.skipped())


def blue_trap_scatter_reduction(t_atom: "Quantity | float", u_depth: "Quantity | float") -> float:
    """Residual scattering factor k_B T_a / U in a blue-detuned trap.

    Atoms sit in the dark region and sample the light only up to their
    thermal energy; the factor is clamped to 1 (it is a reduction).
    """
    t = magnitude(t_atom, Unit.K)
    u = magnitude(u_depth, Unit.J)
    if u <= 0:
        raise ValueError(f"trap depth must be positive, got {u}")
    if t < 0:
        raise ValueError(f"temperature must be >= 0, got {t}")
    return min(1.0, BOLTZMANN * t / u)
