from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from specsetlab.bounds.bounds import (
    gamma,
    gamma_1,
    paulsen_bound,
    paulsen_crossovers,
    shields_bound,
    thm1_upper,
)
from specsetlab.types.report_types import BoundCurveSample
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import InvalidValue

logger = get_logger(__name__, "warning")

COLUMNS = ["R", "shields", "thm1_upper", "gamma1", "gamma", "paulsen"]


def bound_curve(rmin: float = 1.01, rmax: float = 10.0, steps: int = 200) -> list[BoundCurveSample]:
    """
    All annulus bounds on ``steps`` equally spaced radii in ``[rmin, rmax]``.

    Raises:
        InvalidValue: Unless ``1 < rmin < rmax`` and ``steps >= 2``.
    """
    if not (1.0 < rmin < rmax):
        raise InvalidValue("rmin/rmax", (rmin, rmax), "expected 1 < rmin < rmax")
    if steps < 2:
        raise InvalidValue("steps", steps, "need at least two samples")
    return [
        BoundCurveSample(
            R=float(R),
            shields=shields_bound(R),
            thm1_upper=thm1_upper(R),
            gamma1=gamma_1(R),
            gamma=gamma(R),
            paulsen=paulsen_bound(R),
        )
        for R in np.linspace(rmin, rmax, steps)
    ]


def bound_frame(samples: Sequence[BoundCurveSample]) -> pd.DataFrame:
    return pd.DataFrame([s.asdict() for s in samples], columns=COLUMNS)


def write_bound_curve(
    samples: Sequence[BoundCurveSample],
    path: Path | str,
    crossovers: dict[str, float] | None = None,
) -> Path:
    """Write the curve as CSV; crossovers follow as ``# crossover <name> <R>`` lines."""
    path = Path(path)
    if crossovers is None:
        crossovers = paulsen_crossovers()
    path.parent.mkdir(parents=True, exist_ok=True)
    bound_frame(samples).to_csv(path, index=False, float_format="%.12g", lineterminator="\n")
    with path.open("a") as handle:
        for name, R in sorted(crossovers.items()):
            handle.write(f"# crossover {name} {R:.10f}\n")
    logger.info(f"wrote {len(samples)} rows to {path}")
    return path
