"""Closed form versus truncated-space oracle, on scaled amplitudes."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..fock import oracle_scan
from ..model import compute_coefficients
from ..modes import Criterion, ModePair
from ..witnesses import F3_LINEAR, F3_SQUARED, witness
from .config import OracleConfig, ScanConfig
from .scan import provenance, sort_key

RATIO_BAND = (6.0, 12.0)
REL_TOL = 0.05
# Duan pairs whose printed form carries the |f3| term
F3_PAIRS = ("ab", "ac", "ad")


@dataclass(frozen=True)
class ErrorFit:
    """Error growth of one (pair, criterion, phi) cell.

    ``ratio`` is err(t_max) / err(t_max / 2); a third-order remainder gives
    about 8. ``slope`` is the log-log slope of the error over the upper half
    of the grid. ``scale`` is the largest oracle magnitude in the scan.
    """

    ratio: float
    slope: float
    max_abs_err: float
    scale: float

    @property
    def third_order(self) -> bool:
        return RATIO_BAND[0] <= self.ratio <= RATIO_BAND[1]

    @property
    def within_tolerance(self) -> bool:
        return self.max_abs_err <= REL_TOL * self.scale


@dataclass
class CompareReport:
    rows: list[dict]
    fits: dict[tuple[ModePair, Criterion, float], ErrorFit]
    f3_arbitration: dict[str, dict] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)


def compare_times(cfg: ScanConfig) -> np.ndarray:
    """Scan grid plus ``t = 0`` and ``t_max / 2``."""
    grid = set(float(t) for t in cfg.times())
    grid.update((0.0, cfg.t_max / 2))
    return np.array(sorted(grid))


def _ratio(times, err, t_max) -> float:
    i_full = int(np.argmin(np.abs(times - t_max)))
    i_half = int(np.argmin(np.abs(times - t_max / 2)))
    den = err[i_half]
    return float(err[i_full] / den) if den > 0 else float("inf")


def _slope(times, err) -> float:
    mask = (times >= times[-1] / 2) & (err > 0)
    if mask.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(times[mask]), np.log(err[mask]), 1)[0])


def _closed_series(cfg: ScanConfig, pair, crit, inputs, coeffs, f3_reading) -> np.ndarray:
    return np.array([witness(pair, crit, cfg.params, inputs, 0.0, form=cfg.form,
                             f3_reading=f3_reading, coefficients=c) for c in coeffs])


def compare_report(cfg: ScanConfig) -> CompareReport:
    """Evaluate closed forms and the oracle on the same scaled inputs.

    The oracle inputs are the config amplitudes times ``oracle.alpha_scale``,
    with the pump phase applied per phi.
    """
    oc = cfg.oracle or OracleConfig()
    times = compare_times(cfg)
    coeffs = [compute_coefficients(cfg.params, float(t)) for t in times]
    rows: list[dict] = []
    fits = {}
    arbitration: dict[str, dict] = {}
    scaled = replace(cfg, amplitudes=tuple(oc.alpha_scale * complex(x) for x in cfg.amplitudes))
    for phi in cfg.phi_set:
        inputs = scaled.inputs(phi)
        exact = oracle_scan(cfg.params, inputs, times, oc.cutoffs, cfg.pairs, cfg.criteria,
                            tol=oc.tol)
        for pair in cfg.pairs:
            for crit in cfg.criteria:
                ref = exact[(pair, crit)]
                approx = _closed_series(cfg, pair, crit, inputs, coeffs, cfg.f3_reading)
                err = np.abs(approx - ref)
                scale = float(np.max(np.abs(ref)))
                for t, cf, ox, e in zip(times, approx, ref, err):
                    rows.append({"pair": pair.label, "criterion": crit.value, "phi": float(phi),
                                 "t": float(t), "closed_form": float(cf), "oracle": float(ox),
                                 "abs_err": float(e),
                                 "rel_err": float(e / scale) if scale > 0 else 0.0})
                fits[(pair, crit, float(phi))] = ErrorFit(_ratio(times, err, cfg.t_max),
                                                          _slope(times[1:], err[1:]),
                                                          float(err.max()), scale)
                if crit is Criterion.DUAN and pair.label in F3_PAIRS:
                    entry = arbitration.setdefault(pair.label, {F3_SQUARED: 0.0, F3_LINEAR: 0.0})
                    for reading in (F3_SQUARED, F3_LINEAR):
                        alt = _closed_series(cfg, pair, crit, inputs, coeffs, reading)
                        entry[reading] = max(entry[reading], float(np.max(np.abs(alt - ref))))
    for entry in arbitration.values():
        entry["tracks_oracle"] = min((F3_SQUARED, F3_LINEAR), key=lambda r: entry[r])
    rows.sort(key=lambda r: (*sort_key(ModePair(r["pair"]), Criterion(r["criterion"]), r["phi"]), r["t"]))
    return CompareReport(rows, fits, arbitration,
                         provenance(cfg, oracle={"cutoffs": list(oc.cutoffs),
                                                 "alpha_scale": oc.alpha_scale, "tol": oc.tol}))
