"""Classification matrix at the default preset, diffed against the expected pattern."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from ..modes import ALL_CRITERIA, ALL_PAIRS, Criterion, ModePair
from ..witnesses import Verdict
from .config import ScanConfig, preset
from .scan import run_scan

PHIS = (0.0, math.pi / 2, math.pi)
EXTENSION = 5

_E, _N = Verdict.ENTANGLED, Verdict.NON_CONCLUSIVE


def _pattern(entangled: dict[str, tuple[float, ...]]) -> dict:
    return {(ModePair(p), phi): (_E if phi in entangled.get(p.label, ()) else _N)
            for p in ALL_PAIRS for phi in PHIS}


EXPECTED: dict[Criterion, dict[tuple[ModePair, float], Verdict]] = {
    Criterion.HZ1: _pattern({"ac": PHIS, "ad": PHIS, "bc": (PHIS[1],), "bd": (PHIS[0], PHIS[2])}),
    Criterion.HZ2: _pattern({"bc": (PHIS[0], PHIS[2]), "bd": (PHIS[1],), "ac": (PHIS[1],)}),
    Criterion.DUAN: _pattern({"ad": (PHIS[0],)}),
}


class Status:
    MATCH = "MATCH"
    FAIL = "FAIL"
    RANGE_SENSITIVE = "RANGE-SENSITIVE"


@dataclass(frozen=True)
class Table1Cell:
    criterion: Criterion
    pair: ModePair
    phi: float
    expected: Verdict
    default: Verdict
    extended: Verdict
    min_default: float
    min_extended: float

    @property
    def status(self) -> str:
        if self.default is self.expected:
            return Status.MATCH
        if self.extended is self.expected:
            return Status.RANGE_SENSITIVE
        return Status.FAIL

    @property
    def range_differs(self) -> bool:
        return self.default is not self.extended


def table1(cfg: ScanConfig | None = None, jobs: int = 1) -> list[Table1Cell]:
    cfg = cfg or preset("paper")
    cfg = replace(cfg, pairs=ALL_PAIRS, criteria=ALL_CRITERIA, phi_set=PHIS)
    extended = replace(cfg, t_max=EXTENSION * cfg.t_max, t_steps=EXTENSION * cfg.t_steps)
    base = run_scan(cfg, jobs=jobs)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ext = run_scan(extended, jobs=jobs)
    cells = []
    for crit in ALL_CRITERIA:
        for pair in ALL_PAIRS:
            for phi in PHIS:
                b, e = base.cell(pair, crit, phi), ext.cell(pair, crit, phi)
                cells.append(Table1Cell(crit, pair, phi, EXPECTED[crit][(pair, phi)],
                                        b.verdict, e.verdict, b.min_value, e.min_value))
    return cells


def _phi_label(phi: float) -> str:
    return {0.0: "0", PHIS[1]: "pi/2", PHIS[2]: "pi"}.get(phi, f"{phi:.6g}")


def format_table(cells: list[Table1Cell]) -> str:
    """Matrix of verdicts followed by the per-cell diff."""
    short = {_E: "E", _N: "nc"}
    lines = ["criterion  pair  " + "  ".join(f"{_phi_label(p):>6}" for p in PHIS)]
    by_key = {(c.criterion, c.pair, c.phi): c for c in cells}
    for crit in ALL_CRITERIA:
        for pair in ALL_PAIRS:
            marks = []
            for phi in PHIS:
                c = by_key[(crit, pair, phi)]
                flag = "" if c.status == Status.MATCH else "!"
                marks.append(f"{short[c.default] + flag:>6}")
            lines.append(f"{crit.value:<9}  {pair.label:<4}  " + "  ".join(marks))
    lines.append("")
    lines.append("criterion pair phi expected default extended min_default min_extended status range_differs")
    for c in cells:
        lines.append(f"{c.criterion.value} {c.pair.label} {_phi_label(c.phi)} {c.expected.value} "
                     f"{c.default.value} {c.extended.value} {c.min_default:.6g} {c.min_extended:.6g} "
                     f"{c.status} {'yes' if c.range_differs else 'no'}")
    n_fail = sum(c.status == Status.FAIL for c in cells)
    n_rs = sum(c.status == Status.RANGE_SENSITIVE for c in cells)
    lines.append(f"summary: {len(cells) - n_fail - n_rs} match, {n_rs} range-sensitive, {n_fail} fail")
    return "\n".join(lines) + "\n"
