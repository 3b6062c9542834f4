"""CSV and JSON emission of scan results.

Both formats are byte-stable for identical input. CSV values carry 17
significant digits; JSON stores the same doubles in their shortest exact
form, so both parse back to identical floats.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from ..model import Process
from ..modes import Criterion, ModePair
from ..witnesses import Classification, Verdict, WitnessSample
from .scan import ScanResult, sort_key

CSV_HEADER = ("pair", "criterion", "phi", "t", "value", "classification")
FORMATS = ("csv", "json", "both")


class EmitError(OSError):
    pass


def fmt(x: float) -> str:
    return f"{x:.17g}"


def phi_key(phi: float) -> str:
    return fmt(phi)


def to_csv(result: ScanResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in result.rows:
        verdict = result.classification[(r.pair, r.criterion, r.phi)].verdict.value
        writer.writerow((r.pair.label, r.criterion.value, fmt(r.phi), fmt(r.t), fmt(r.value), verdict))
    return buf.getvalue()


def to_json_obj(result: ScanResult) -> dict:
    data: dict = {}
    for r in result.rows:
        cell = (data.setdefault(r.pair.label, {})
                    .setdefault(r.criterion.value, {})
                    .setdefault(phi_key(r.phi), {"t": [], "value": []}))
        cell["t"].append(r.t)
        cell["value"].append(r.value)
    for (pair, crit, phi), cl in result.classification.items():
        cell = data[pair.label][crit.value][phi_key(phi)]
        cell["classification"] = {"verdict": cl.verdict.value, "min_value": cl.min_value,
                                  "min_t": cl.min_t, "threshold": cl.threshold}
        cell["phi"] = phi
    process = result.rows[0].process.value if result.rows else None
    return {"provenance": {**result.provenance, "process": process}, "data": data}


def to_json(result: ScanResult) -> str:
    return json.dumps(to_json_obj(result), indent=1, allow_nan=False) + "\n"


def from_json_obj(obj: dict) -> ScanResult:
    process = Process(obj["provenance"].get("process") or Process.STIMULATED.value)
    rows: list[WitnessSample] = []
    classes: dict = {}
    for pair_label, by_crit in obj["data"].items():
        pair = ModePair(pair_label)
        for crit_label, by_phi in by_crit.items():
            crit = Criterion(crit_label)
            for cell in by_phi.values():
                phi = float(cell["phi"])
                rows.extend(WitnessSample(pair, crit, float(t), phi, float(v), process)
                            for t, v in zip(cell["t"], cell["value"]))
                c = cell["classification"]
                classes[(pair, crit, phi)] = Classification(Verdict(c["verdict"]), c["min_value"],
                                                            c["min_t"], c["threshold"])
    rows.sort(key=lambda r: (*sort_key(r.pair, r.criterion, r.phi), r.t))
    return ScanResult(rows, classes, dict(obj["provenance"]))


def load_result(path: str | Path) -> ScanResult:
    try:
        return from_json_obj(json.loads(Path(path).read_text()))
    except OSError as exc:
        raise EmitError(f"cannot read {path}: {exc}") from None


def emit(result: ScanResult, out_dir: str | Path, fmt_: str = "both", stem: str = "scan") -> list[Path]:
    """Write ``stem.csv`` and/or ``stem.json`` into ``out_dir``."""
    if fmt_ not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}")
    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fmt_ in ("csv", "both"):
            path = out_dir / f"{stem}.csv"
            path.write_text(to_csv(result))
            written.append(path)
        if fmt_ in ("json", "both"):
            path = out_dir / f"{stem}.json"
            path.write_text(to_json(result))
            written.append(path)
    except OSError as exc:
        raise EmitError(f"cannot write to {out_dir}: {exc}") from None
    return written
