"""Scaling sweeps over system size with logarithmic-law fits.

Builds one correlation matrix and entropy report per linear size L, fits
the selected quantity against ln L or L ln L, and persists rows as CSV,
JSON, or a minimal static SVG chart. Rows are independent pure
computations; setting FERMIENT_THREADS > 1 evaluates them in a thread pool
(the eigensolver releases the GIL) with order-stable output.
"""

import enum
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import spectrum
from .errors import ConfigError, FermientError, NumericalFailureError
from .kernel import FermiSeaSpec, FiniteRing, RegionSpec, SquareSea2D, build_correlation
from .spectrum import EntropyReport

#: solver budgets: modes per row
MAX_MODES_1D = 4096
MAX_MODES_2D = 900

#: quantities a sweep may request; C_1 is always written alongside
SWEEP_QUANTITIES = ("S_A", "S_m", "S_res", "C_2", "delta_S")
CSV_COLUMNS = ("L", "S_A", "S_m", "S_res", "C_1", "C_2", "delta_S")

SweepTable = List[Tuple[int, EntropyReport]]


class ScalingModel(enum.Enum):
    """Regressor choice for the scaling fit."""

    LN_L = "A_lnL"
    L_LN_L = "A_LlnL"


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    model: ScalingModel


@dataclass(frozen=True)
class SweepConfig:
    """Validated description of one scaling sweep.

    ``scales`` are the linear sizes L (interval lengths in 1d, square sides
    in 2d); at least three strictly increasing values are required and each
    must fit the per-dimension mode budget.
    """

    sea: FermiSeaSpec
    scales: Tuple[int, ...]
    quantities: Tuple[str, ...] = SWEEP_QUANTITIES
    output: Optional[Path] = None
    fmt: str = "csv"
    svg: Optional[Path] = None

    def __post_init__(self):
        scales = tuple(int(s) for s in self.scales)
        if len(scales) < 3:
            raise ConfigError("a sweep needs at least 3 scales")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ConfigError("scales must be strictly increasing")
        if scales[0] < 1:
            raise ConfigError("scales must be positive")
        two_d = isinstance(self.sea, SquareSea2D)
        budget = MAX_MODES_2D if two_d else MAX_MODES_1D
        modes = scales[-1] ** 2 if two_d else scales[-1]
        if modes > budget:
            raise ConfigError(
                f"scale {scales[-1]} needs {modes} modes, over the budget of {budget}"
            )
        if isinstance(self.sea, FiniteRing) and scales[-1] > self.sea.n_sites:
            raise ConfigError("ring sweeps cannot exceed the ring size")
        quantities = tuple(self.quantities)
        if not quantities:
            raise ConfigError("at least one quantity must be selected")
        unknown = sorted(set(quantities) - set(SWEEP_QUANTITIES))
        if unknown:
            raise ConfigError(f"unknown quantities {unknown}; choose from {SWEEP_QUANTITIES}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        object.__setattr__(self, "scales", scales)
        object.__setattr__(self, "quantities", quantities)


def _worker_count(n_rows: int) -> int:
    raw = os.environ.get("FERMIENT_THREADS", "").strip()
    if not raw:
        return 1
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ConfigError(f"FERMIENT_THREADS must be an integer, got {raw!r}") from exc
    return max(1, min(cap, n_rows))


def _region_for(sea: FermiSeaSpec, scale: int) -> RegionSpec:
    if isinstance(sea, SquareSea2D):
        return RegionSpec.square(scale)
    return RegionSpec.interval(scale)


def run_sweep(config: SweepConfig) -> SweepTable:
    """Compute one entropy report per scale, in scale order.

    Rows are evaluated independently (optionally in parallel); any failure
    aborts the sweep with the offending scale identified.
    """

    def row(scale: int) -> EntropyReport:
        try:
            return spectrum.report(build_correlation(config.sea, _region_for(config.sea, scale)))
        except FermientError as exc:
            raise NumericalFailureError(f"sweep aborted at scale L={scale}: {exc}") from exc

    workers = _worker_count(len(config.scales))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(row, config.scales))
    else:
        reports = [row(scale) for scale in config.scales]
    return list(zip(config.scales, reports))


def fit_scaling(table: SweepTable, quantity: str, model: ScalingModel) -> FitResult:
    """Least-squares fit of a report quantity against ln L or L ln L.

    The fit window is the largest half of the L grid (at least 3 rows):
    the scaling laws under test are asymptotic and small-L transients would
    bias the slope.
    """
    if quantity not in CSV_COLUMNS[1:]:
        raise ValueError(f"unknown quantity {quantity!r}")
    if len(table) < 3:
        raise ValueError("a fit needs at least 3 rows")
    rows = sorted(table, key=lambda row: row[0])
    keep = max(3, math.ceil(len(rows) / 2))
    rows = rows[-keep:]
    scales = np.array([scale for scale, _ in rows], dtype=float)
    y = np.array([getattr(report, quantity) for _, report in rows], dtype=float)
    if model is ScalingModel.LN_L:
        x = np.log(scales)
    elif model is ScalingModel.L_LN_L:
        x = scales * np.log(scales)
    else:
        raise ValueError(f"unknown scaling model {model!r}")
    if np.ptp(x) == 0.0:
        raise ValueError("degenerate design matrix: regressor is constant")
    design = np.column_stack([x, np.ones_like(x)])
    coeffs, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    residual = y - design @ coeffs
    total = float(((y - y.mean()) ** 2).sum())
    if total == 0.0:
        r_squared = 1.0 if float((residual**2).sum()) < 1e-30 else 0.0
    else:
        r_squared = 1.0 - float((residual**2).sum()) / total
    return FitResult(
        slope=float(coeffs[0]),
        intercept=float(coeffs[1]),
        r_squared=min(max(r_squared, 0.0), 1.0),
        model=model,
    )


def _row_dict(scale: int, report: EntropyReport) -> dict:
    out = {"L": scale}
    out.update(asdict(report))
    return out


def write_csv(table: SweepTable, path) -> None:
    """Write the sweep as CSV with the fixed column set at full precision."""
    lines = [",".join(CSV_COLUMNS)]
    for scale, report in table:
        values = [f"{scale}"] + [f"{getattr(report, col):.17g}" for col in CSV_COLUMNS[1:]]
        lines.append(",".join(values))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def write_json(table: SweepTable, path) -> None:
    """Write the sweep as a JSON document mirroring EntropyReport per row."""
    payload = {"rows": [_row_dict(scale, report) for scale, report in table]}
    Path(path).write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8", newline="\n"
    )


def _svg_polyline(points: Sequence[Tuple[float, float]], color: str) -> str:
    coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
    return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>'


_SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b")


def write_svg(table: SweepTable, quantities: Sequence[str], path) -> None:
    """Minimal static line chart of selected quantities against L."""
    width, height = 640, 420
    left, right, top, bottom = 70, 620, 30, 370
    scales = [scale for scale, _ in table]
    series = {q: [getattr(report, q) for _, report in table] for q in quantities}
    lo = min(min(v) for v in series.values())
    hi = max(max(v) for v in series.values())
    if hi == lo:
        hi = lo + 1.0
    x0, x1 = float(scales[0]), float(scales[-1])
    if x1 == x0:
        x1 = x0 + 1.0

    def to_x(value: float) -> float:
        return left + (right - left) * (value - x0) / (x1 - x0)

    def to_y(value: float) -> float:
        return bottom - (bottom - top) * (value - lo) / (hi - lo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="#000"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="#000"/>',
        f'<text x="{left}" y="{bottom + 18}" font-size="12">L={scales[0]}</text>',
        f'<text x="{right - 60}" y="{bottom + 18}" font-size="12">L={scales[-1]}</text>',
        f'<text x="{left - 64}" y="{bottom}" font-size="12">{lo:.6g}</text>',
        f'<text x="{left - 64}" y="{top + 10}" font-size="12">{hi:.6g}</text>',
    ]
    for idx, quantity in enumerate(quantities):
        color = _SVG_PALETTE[idx % len(_SVG_PALETTE)]
        points = [(to_x(s), to_y(v)) for s, v in zip(scales, series[quantity])]
        parts.append(_svg_polyline(points, color))
        parts.append(
            f'<text x="{right - 110}" y="{top + 16 * (idx + 1)}" font-size="12" '
            f'fill="{color}">{quantity}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8", newline="\n")
