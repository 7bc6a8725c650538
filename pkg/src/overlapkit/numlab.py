"""Numerical cross-validation: exact interval covers, cylinder-count growth,
box-counting estimates, and SVG/CSV emission.

Cover construction and deduplication are exact rational arithmetic; floats
only appear in the fitted statistics and the emitted documents.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DegenerateFit, InvalidArgument, NotInClass, TooDeep
from .ifs import SelfSimilarSpec, validate

DEFAULT_COVER_CEILING = 10**7


@dataclass(frozen=True)
class CoverLevel:
    """All depth-L cylinder intervals [c, c + lambda^L], coincidences merged."""

    depth: int
    offsets: tuple[Fraction, ...]
    length: Fraction

    @property
    def count(self) -> int:
        return len(self.offsets)


def _cover_levels(
    spec: SelfSimilarSpec, depth: int, ceiling: int
) -> list[CoverLevel]:
    if depth < 0:
        raise InvalidArgument(f"depth must be >= 0, got {depth}")
    if spec.n**depth > ceiling:
        raise TooDeep(
            f"{spec.n}^{depth} raw cylinders exceed the ceiling {ceiling}",
            n=spec.n,
            depth=depth,
            ceiling=ceiling,
        )
    levels = [CoverLevel(depth=0, offsets=(Fraction(0),), length=Fraction(1))]
    scale = Fraction(1)
    for level in range(1, depth + 1):
        previous = levels[-1].offsets
        merged = sorted({o + scale * b for o in previous for b in spec.offsets})
        levels.append(
            CoverLevel(depth=level, offsets=tuple(merged), length=scale * spec.lam)
        )
        scale *= spec.lam
    return levels


def cover(
    spec: SelfSimilarSpec, depth: int, *, ceiling: int = DEFAULT_COVER_CEILING
) -> CoverLevel:
    """Exact offsets of the depth-L cylinders with coincident ones merged."""
    return _cover_levels(spec, depth, ceiling)[-1]


def cover_levels(
    spec: SelfSimilarSpec, depth: int, *, ceiling: int = DEFAULT_COVER_CEILING
) -> list[CoverLevel]:
    """Covers at every depth 0..depth (each level refines the previous one)."""
    return _cover_levels(spec, depth, ceiling)


@dataclass(frozen=True)
class GrowthResult:
    counts: tuple[int, ...]
    slope: float
    recurrence_ok: Optional[bool]
    n: Optional[int]
    m: Optional[int]

    def to_json(self) -> dict:
        return {
            "depths": list(range(len(self.counts))),
            "counts": list(self.counts),
            "slope": repr(self.slope),
            "recurrence_ok": self.recurrence_ok,
            "n": self.n,
            "m": self.m,
        }


def cylinder_growth(
    spec: SelfSimilarSpec, max_depth: int, *, ceiling: int = DEFAULT_COVER_CEILING
) -> GrowthResult:
    """Counts N_0..N_max_depth with the fitted slope of log N_L against L.

    For in-class specs the recurrence N_(L+2) = n*N_(L+1) - m*N_L is reported
    as an observation; it is never enforced.
    """
    levels = _cover_levels(spec, max_depth, ceiling)
    counts = tuple(level.count for level in levels)
    if len(counts) >= 2:
        fit = statistics.linear_regression(range(len(counts)), [math.log(c) for c in counts])
        slope = fit.slope
    else:
        slope = 0.0
    try:
        _, pattern = validate(spec.lam, spec.offsets)
        n, m = pattern.n, pattern.m
        recurrence_ok: Optional[bool] = all(
            counts[i + 2] == n * counts[i + 1] - m * counts[i]
            for i in range(len(counts) - 2)
        )
    except NotInClass:
        n = m = None
        recurrence_ok = None
    return GrowthResult(counts=counts, slope=slope, recurrence_ok=recurrence_ok, n=n, m=m)


@dataclass(frozen=True)
class ScaleCount:
    level: int
    cell: Fraction
    occupied: int


@dataclass(frozen=True)
class BoxCountResult:
    estimate: float
    scales: tuple[ScaleCount, ...]
    residuals: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "estimate": repr(self.estimate),
            "scales": [
                {"level": s.level, "cell": str(s.cell), "occupied": s.occupied}
                for s in self.scales
            ],
            "residuals": [repr(r) for r in self.residuals],
        }


def box_count_dimension(
    spec: SelfSimilarSpec,
    depth: int,
    grid_levels: int,
    *,
    ceiling: int = DEFAULT_COVER_CEILING,
) -> BoxCountResult:
    """Slope of log(occupied cells) against log(1/cell) over lambda-power grids.

    Grid cells are powers of lambda so cell boundaries align with cylinder
    endpoints; the depth must exceed grid_levels so every cylinder is smaller
    than the finest cell.
    """
    if grid_levels < 2:
        raise DegenerateFit(f"need at least 2 grid levels for a slope, got {grid_levels}")
    if depth <= grid_levels:
        raise InvalidArgument(
            f"depth must exceed grid_levels so cylinders are below cell size, "
            f"got depth={depth}, grid_levels={grid_levels}"
        )
    level = cover(spec, depth, ceiling=ceiling)
    scales = []
    for j in range(1, grid_levels + 1):
        cell = spec.lam**j
        occupied: set[int] = set()
        for offset in level.offsets:
            lo = offset // cell
            hi = (offset + level.length) // cell
            occupied.update(range(int(lo), int(hi) + 1))
        scales.append(ScaleCount(level=j, cell=cell, occupied=len(occupied)))
    xs = [-j * math.log(float(spec.lam)) for j in range(1, grid_levels + 1)]
    ys = [math.log(s.occupied) for s in scales]
    fit = statistics.linear_regression(xs, ys)
    residuals = tuple(y - (fit.slope * x + fit.intercept) for x, y in zip(xs, ys))
    return BoxCountResult(estimate=fit.slope, scales=tuple(scales), residuals=residuals)


_ROW_HEIGHT = 0.12
_BAR_HEIGHT = 0.1


def emit_svg(levels: Sequence[CoverLevel]) -> str:
    """One bar row per cover level, unit-wide viewBox, deterministic output."""
    height = max(_ROW_HEIGHT * len(levels), _ROW_HEIGHT)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 1 {height:g}">',
    ]
    for row, level in enumerate(levels):
        y = _ROW_HEIGHT * row + (_ROW_HEIGHT - _BAR_HEIGHT) / 2
        for offset in level.offsets:
            lines.append(
                f'  <rect x="{float(offset):g}" y="{y:g}" '
                f'width="{float(level.length):g}" height="{_BAR_HEIGHT:g}" '
                f'fill="#1f6fb2"/>'
            )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    """Comma separated, LF line endings, header first."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([str(v) for v in row])
    return buf.getvalue()
