"""Time/phase scans of the closed-form witnesses."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .. import __version__
from ..model import compute_coefficients
from ..modes import ALL_CRITERIA, ALL_PAIRS, Criterion, ModePair
from ..witnesses import Classification, WitnessSample, classify_values, witness
from .config import ScanConfig

_PAIR_ORDER = {p: i for i, p in enumerate(ALL_PAIRS)}
_CRIT_ORDER = {c: i for i, c in enumerate(ALL_CRITERIA)}

CellKey = tuple[ModePair, Criterion, float]


@dataclass
class ScanResult:
    rows: list[WitnessSample]
    classification: dict[CellKey, Classification]
    provenance: dict = field(default_factory=dict)

    def cell(self, pair, criterion, phi: float) -> Classification:
        pair = ModePair(pair) if isinstance(pair, str) else pair
        return self.classification[(pair, Criterion(criterion), phi)]

    def values(self, pair, criterion, phi: float) -> tuple[np.ndarray, np.ndarray]:
        pair = ModePair(pair) if isinstance(pair, str) else pair
        criterion = Criterion(criterion)
        sel = [r for r in self.rows if r.pair == pair and r.criterion is criterion and r.phi == phi]
        return np.array([r.t for r in sel]), np.array([r.value for r in sel])


def sort_key(pair: ModePair, criterion: Criterion, phi: float) -> tuple:
    return (_PAIR_ORDER[pair], _CRIT_ORDER[criterion], phi)


@lru_cache(maxsize=8)
def _coefficients(params, times: tuple[float, ...]):
    return [compute_coefficients(params, t) for t in times]


def _scan_cell(cfg: ScanConfig, pair: ModePair, criterion: Criterion, phi: float,
               times: tuple[float, ...]) -> np.ndarray:
    inputs = cfg.inputs(phi)
    coeffs = _coefficients(cfg.params, times)
    return np.array([witness(pair, criterion, cfg.params, inputs, t, form=cfg.form,
                             f3_reading=cfg.f3_reading, coefficients=c)
                     for t, c in zip(times, coeffs)])


def _scan_task(args):
    return _scan_cell(*args)


def provenance(cfg: ScanConfig, **extra) -> dict:
    return {"code_version": __version__, "frame": cfg.params.frame.value,
            "config": cfg.echo(), **extra}


def run_scan(cfg: ScanConfig, jobs: int = 1) -> ScanResult:
    """Evaluate every (pair, criterion, phi) cell on the config's time grid.

    ``jobs > 1`` farms the cells out to a process pool; the result does not
    depend on ``jobs``.
    """
    times = tuple(float(t) for t in cfg.times())
    cells = sorted(((p, c, float(phi)) for p in cfg.pairs for c in cfg.criteria
                    for phi in cfg.phi_set), key=lambda k: sort_key(*k))
    tasks = [(cfg, p, c, phi, times) for p, c, phi in cells]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            series = list(pool.map(_scan_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        series = [_scan_task(t) for t in tasks]

    rows: list[WitnessSample] = []
    classes: dict[CellKey, Classification] = {}
    process = cfg.process
    for (pair, crit, phi), values in zip(cells, series):
        classes[(pair, crit, phi)] = classify_values(times, values)
        rows.extend(WitnessSample(pair, crit, t, phi, float(v), process)
                    for t, v in zip(times, values))
    return ScanResult(rows, classes, provenance(cfg))
