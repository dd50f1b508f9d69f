"""Reference ("exact") eigenvalues used to report relative errors.

The shipped data file is produced by tools/gen_reference.py: a self-run
of the trigonometric solver at much higher precision (640 bits) and a
much larger basis (N = 90, rule op2) than anything the acceptance runs
use, so the reference error floor sits far below every error this
package reports.  Values are stored as decimal strings keyed by
potential id, parity sector, and physical level n.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .mp import BigReal, str_to_big
from .potentials import Potential

_DATA_RESOURCE = "reference_spectra.json"


@lru_cache(maxsize=1)
def load_reference_data() -> dict:
    path = resources.files("anharm").joinpath("data").joinpath(_DATA_RESOURCE)
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def reference_levels(pot_or_key, parity: str) -> dict[int, str] | None:
    """All stored levels for a potential and parity, as {n: decimal string}."""
    key = pot_or_key if isinstance(pot_or_key, str) else Potential.coerce(pot_or_key).key()
    entry = load_reference_data()["entries"].get(f"{key}|{parity}")
    if entry is None:
        return None
    return {int(n): v for n, v in entry["levels"].items()}


def reference_eigenvalue(pot_or_key, parity: str, n: int, precision: int) -> BigReal | None:
    """Reference energy of physical level n, rounded to the requested precision.

    Returns None when no reference is stored for this potential, sector,
    or level; callers then simply omit relative errors.
    """
    levels = reference_levels(pot_or_key, parity)
    if levels is None:
        return None
    value = levels.get(n)
    if value is None:
        return None
    return str_to_big(value, precision)


def reference_meta() -> dict:
    return load_reference_data()["meta"]
