"""Monte Carlo model of loading small atomic ensembles into a lattice.

A blue-detuned 3D lattice is filled from a cold cloud: each site draws an
independent Poisson occupancy with mean equal to the filling fraction
(atom density times the cell volume). Sites holding two or more atoms
purge themselves through inelastic pair collisions, and a bottle-beam
trap then crops an exactly spherical region out of the filled lattice.
The surviving singly occupied sites form the K-atom register ensemble.

Per-trial random streams are derived from (seed, trial_index), so serial
and parallel runs of the same configuration agree bit for bit.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .units import Quantity, Unit, magnitude

PURGE_MODES = ("empty", "keep_one")


@dataclass(frozen=True)
class LoadingConfig:
    lattice_period: float = 0.7e-6      # m
    atom_density: float = 1.5e18        # 1/m^3
    bottle_diameter: float = 5.1e-6     # m
    lattice_extent: int = 11            # sites per axis
    trials: int = 10_000
    seed: int = 1234
    register_size: int = 60             # for the per-qubit Rabi spread table
    purge_mode: str = "empty"           # pair loss; "keep_one" keeps the odd atom

    def __post_init__(self) -> None:
        if self.lattice_period <= 0 or self.atom_density <= 0 or self.bottle_diameter <= 0:
            raise ValueError("lattice period, atom density and bottle diameter must be positive")
        if self.lattice_extent < 1:
            raise ValueError(f"lattice_extent must be >= 1, got {self.lattice_extent}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.register_size < 1:
            raise ValueError(f"register_size must be >= 1, got {self.register_size}")
        if self.purge_mode not in PURGE_MODES:
            raise ValueError(f"purge_mode must be one of {PURGE_MODES}")
        if self.bottle_diameter > self.lattice_extent * self.lattice_period:
            raise ValueError(
                f"bottle diameter {self.bottle_diameter} exceeds the lattice extent "
                f"{self.lattice_extent * self.lattice_period}"
            )

    @property
    def fill_fraction(self) -> float:
        return self.atom_density * self.lattice_period**3


@dataclass(frozen=True)
class LoadingStats:
    mean_K: float
    std_K: float
    mean_K_prepurge: float          # occupied sites before the collisional purge
    multi_occupancy_fraction: float
    sites_in_sphere: int
    rabi_spread_per_qubit: tuple[float, ...]
    k_counts: dict[int, int] = field(default_factory=dict)  # histogram of K over trials

    def to_dict(self) -> dict:
        return {
            "mean_K": self.mean_K,
            "std_K": self.std_K,
            "mean_K_prepurge": self.mean_K_prepurge,
            "multi_occupancy_fraction": self.multi_occupancy_fraction,
            "sites_in_sphere": self.sites_in_sphere,
            "rabi_spread_per_qubit": list(self.rabi_spread_per_qubit),
            "k_counts": {str(k): v for k, v in sorted(self.k_counts.items())},
        }


def lattice_density(period: "Quantity | float") -> Quantity:
    """Site density of a cubic lattice, 1 / period^3."""
    p = magnitude(period, Unit.M)
    if p <= 0:
        raise ValueError(f"lattice period must be positive, got {p}")
    return Quantity(1.0 / p**3, Unit.PER_M3)


def double_occupancy_prob(fill_fraction: float) -> float:
    """Poisson probability of two or more atoms on a site.

    P(n >= 2) = 1 - e^(-lam) (1 + lam) at mean occupancy lam; ~ lam^2 / 2
    for small filling.
    """
    if fill_fraction <= 0:
        raise ValueError(f"fill fraction must be positive, got {fill_fraction}")
    lam = fill_fraction
    return -math.expm1(-lam) - lam * math.exp(-lam)


def sphere_site_count(cfg: LoadingConfig) -> int:
    """Number of lattice sites whose centers fall inside the bottle sphere.

    The sphere is centered on the lattice center; with an odd extent that
    is a site, with an even extent it falls between sites. The predicate
    is the exact closed ball |r| <= D/2, no boundary fuzz.
    """
    return len(_sphere_site_offsets(cfg))


def _sphere_site_offsets(cfg: LoadingConfig) -> np.ndarray:
    ext = cfg.lattice_extent
    coords = (np.arange(ext) - (ext - 1) / 2.0) * cfg.lattice_period
    x, y, z = np.meshgrid(coords, coords, coords, indexing="ij")
    r2 = x**2 + y**2 + z**2
    inside = r2 <= (cfg.bottle_diameter / 2.0) ** 2
    return np.argwhere(inside)


def draw_occupancies(lam: float, n_sites: int, rng: np.random.Generator) -> np.ndarray:
    """Independent Poisson occupancies for n_sites lattice sites."""
    return rng.poisson(lam, size=n_sites)


def _run_trial(cfg: LoadingConfig, n_sites: int, trial: int) -> tuple[int, int, int]:
    """One loading trial. Returns (K, prepurge occupied count, multi count)."""
    rng = np.random.default_rng(np.random.SeedSequence((cfg.seed, trial)))
    occ = draw_occupancies(cfg.fill_fraction, n_sites, rng)
    occupied = int(np.count_nonzero(occ >= 1))
    multi = int(np.count_nonzero(occ >= 2))
    if cfg.purge_mode == "empty":
        k = int(np.count_nonzero(occ == 1))
    else:  # keep_one: the odd survivor of the pairwise loss stays
        k = occupied
    return k, occupied, multi


def rabi_variation(
    mean_k: float, std_k: float, qubit_index: int, register_size: int
) -> float:
    """Fractional collective Rabi-frequency spread seen by one qubit.

    Qubit q of the register is supported by K - (q - 1) atoms (each lower
    bit consumed one excitation); with site-to-site spread std_K the
    collective sqrt(K) enhancement varies by
    sqrt(1 + std_K / support) - 1.
    """
    if qubit_index < 1 or qubit_index > register_size:
        raise ValueError(f"qubit index {qubit_index} outside 1..{register_size}")
    if mean_k <= register_size:
        raise ValueError(
            f"mean ensemble size {mean_k} must exceed the register size {register_size}"
        )
    if std_k < 0:
        raise ValueError(f"std_K must be >= 0, got {std_k}")
    support = mean_k - (qubit_index - 1)
    if support <= 0:
        raise ValueError(f"qubit {qubit_index} has no supporting atoms (K={mean_k})")
    return math.sqrt(1.0 + std_k / support) - 1.0


def simulate_loading(cfg: LoadingConfig, threads: int = 1) -> LoadingStats:
    """Monte Carlo statistics of the ensemble size K and its consequences.

    Results are aggregated in trial order regardless of thread count, so
    the output is a pure function of the configuration.
    """
    n_sites = sphere_site_count(cfg)
    trials = range(cfg.trials)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda t: _run_trial(cfg, n_sites, t), trials))
    else:
        rows = [_run_trial(cfg, n_sites, t) for t in trials]
    ks = np.array([r[0] for r in rows], dtype=float)
    occupied = np.array([r[1] for r in rows], dtype=float)
    multi = np.array([r[2] for r in rows], dtype=float)

    mean_k = float(ks.mean())
    std_k = float(ks.std())
    multi_fraction = float(multi.sum() / (n_sites * cfg.trials)) if n_sites else 0.0

    spreads = []
    if mean_k > cfg.register_size:
        for q in range(1, cfg.register_size + 1):
            spreads.append(rabi_variation(mean_k, std_k, q, cfg.register_size))

    values, counts = np.unique(ks.astype(int), return_counts=True)
    return LoadingStats(
        mean_K=mean_k,
        std_K=std_k,
        mean_K_prepurge=float(occupied.mean()),
        multi_occupancy_fraction=multi_fraction,
        sites_in_sphere=n_sites,
        rabi_spread_per_qubit=tuple(spreads),
        k_counts={int(v): int(c) for v, c in zip(values, counts)},
    )


def histogram_csv(stats: LoadingStats) -> str:
    """K histogram as CSV text (columns K, count)."""
    lines = ["K,count"]
    for k in sorted(stats.k_counts):
        lines.append(f"{k},{stats.k_counts[k]}")
    return "\n".join(lines) + "\n"
