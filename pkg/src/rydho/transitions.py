"""Catalog of the Ho optical transitions the architecture relies on.

Keys a-f are closed cycling lines from the J = 15/2 ground state to
J = 17/2 excited states (cooling and trapping); g is the strong blue
line used when a large capture range is needed; s1/s2 shelve population
into the metastable J = 11/2 ground-multiplet term; r1 with repumpers
r2/r3 drives readout fluorescence on the shelved atom.

Linewidths are recorded only where measured (d, e, g). Anything that
needs a missing linewidth fails explicitly rather than guessing.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass


@dataclass(frozen=True)
class TransitionRecord:
    key: str
    wavelength_nm: float  # vacuum
    upper_term: str
    gamma_s1: float | None  # decay rate, None where unmeasured
    closed_cycle: bool
    role: str

    def gamma(self) -> float:
        if self.gamma_s1 is None:
            raise ValueError(f"linewidth of transition {self.key!r} is not known")
        return self.gamma_s1


_CATALOG = (
    TransitionRecord("a", 1193.0, "4f10 5d 6s2, J=17/2", None, True, "cooling"),
    TransitionRecord("b", 867.3, "4f10 5d 6s2, J=17/2", None, True, "cooling"),
    TransitionRecord("c", 660.9, "4f10 5d 6s2, J=17/2", None, True, "cooling"),
    TransitionRecord("d", 608.3, "4f10 5d 6s2, J=17/2", 0.25e6, True, "cooling"),
    TransitionRecord("e", 598.5, "4f10 6s 6p, J=17/2", 0.92e6, True, "cooling"),
    TransitionRecord("f", 545.3, "4f10 6s 6p, J=17/2", None, True, "cooling"),
    TransitionRecord("g", 410.5, "4f11(4I15/2) 6s6p(1P1), J=17/2", 204e6, False, "cooling"),
    TransitionRecord("s1", 586.2, "4f11(4I15/2) 6s6p(3P1), J=13/2", None, False, "shelving"),
    TransitionRecord("s2", 1183.0, "4f11(4I15/2) 6s6p(3P1), J=13/2", None, False, "shelving"),
    TransitionRecord("r1", 878.8, "4f11(4I15/2) 6s6p(3P2)", None, False, "readout"),
    TransitionRecord("r2", 1231.0, "4f11(4I15/2) 6s6p(3P2)", None, False, "repumper"),
    TransitionRecord("r3", 746.2, "4f11(4I15/2) 6s6p(3P2)", None, False, "repumper"),
)

# odd-parity metastable terms of the ground configuration, energy in cm^-1;
# the J = 11/2 term is the shelving destination for readout
METASTABLE_LEVELS_CM1 = {"J=13/2": 5420.0, "J=11/2": 8605.0, "J=9/2": 10700.0}


def transition_catalog() -> dict[str, TransitionRecord]:
    return {rec.key: rec for rec in _CATALOG}


def catalog_to_csv() -> str:
    """Catalog as CSV text (key, wavelength_nm, upper_term, gamma_s1, closed_cycle, role)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "wavelength_nm", "upper_term", "gamma_s1", "closed_cycle", "role"])
    for rec in _CATALOG:
        writer.writerow(
            [
                rec.key,
                f"{rec.wavelength_nm:.10g}",
                rec.upper_term,
                "" if rec.gamma_s1 is None else f"{rec.gamma_s1:.10g}",
                int(rec.closed_cycle),
                rec.role,
            ]
        )
    return buf.getvalue()
