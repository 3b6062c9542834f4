import csv
import io
import json
import math

import numpy as np
import pytest

from raman_witness import Criterion, ModePair
from raman_witness.harness import (CSV_HEADER, ParseError, ValidationError, build_config,
                                   compare_report, emit, load_config, load_result, parse_text,
                                   preset, run_scan, to_csv, to_json)
from raman_witness.harness.cli import EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC, main
from raman_witness.harness.config import OracleConfig, parse_phase
from raman_witness.harness.table1 import EXPECTED, Status, format_table, table1
from raman_witness.witnesses import Verdict


def small(**kw):
    base = {"t_steps": 20, "pairs": (ModePair("ab"), ModePair("bc")), "criteria": (Criterion.HZ1,)}
    base.update(kw)
    return build_config(base)


def test_empty_file_gives_default_preset(tmp_path):
    path = tmp_path / "empty.cfg"
    path.write_text("")
    cfg = load_config(path)
    p = cfg.params
    assert (p.g, p.chi, p.d_omega1, p.d_omega2) == (1e5, 1e5, 1e5, 1.9e5)
    assert cfg.amplitudes == (10.0, 8.0, 0.01, 1.0)
    assert cfg.phi_set == (0.0, math.pi / 2, math.pi)
    assert cfg.t_steps == 400 and cfg.t_max == 1e-6
    assert cfg.params.frame.value == "corotating"


def test_parse_errors_name_the_field():
    with pytest.raises(ParseError, match="line 2.*'gamma'"):
        parse_text("g = 1e5\ngamma = 3\n")
    with pytest.raises(ParseError, match="'t_steps'"):
        parse_text("t_steps = many")
    with pytest.raises(ParseError, match="duplicate"):
        parse_text("g = 1\ng = 2")
    with pytest.raises(ParseError, match="key = value"):
        parse_text("just words")


@pytest.mark.parametrize("text, match", [
    ("t_steps = 1", "t_steps"),
    ("t_max = 0", "t_max"),
    ("t_max = 6e-6", "0.5"),
    ("d_omega1 = 0", "params"),
    ("pairs = ab, ab", "repeat"),
])
def test_validation_errors(text, match):
    with pytest.raises(ValidationError, match=match):
        build_config(parse_text(text))


def test_warns_above_perturbative_range():
    with pytest.warns(UserWarning, match="perturbative"):
        build_config(parse_text("t_max = 3e-6"))


def test_config_keys_are_typed():
    cfg = build_config(parse_text("""
        # comment
        phi = 0, pi/4, 3pi/4
        criteria = hz2, duan
        pairs = ca, db
        alpha3 = 0.5+0.5j
        oracle_cutoffs = 10
        f3_reading = lin
    """))
    assert cfg.phi_set == pytest.approx((0, math.pi / 4, 3 * math.pi / 4))
    assert cfg.criteria == (Criterion.HZ2, Criterion.DUAN)
    assert [p.label for p in cfg.pairs] == ["ac", "bd"]
    assert cfg.amplitudes[2] == 0.5 + 0.5j
    assert cfg.oracle == OracleConfig(cutoffs=(10, 10, 10, 10))
    assert cfg.f3_reading == "lin"


def test_parse_phase():
    assert parse_phase("pi/2") == pytest.approx(math.pi / 2)
    assert parse_phase("-pi") == pytest.approx(-math.pi)
    assert parse_phase("0.25") == 0.25
    with pytest.raises(ValueError):
        parse_phase("half")


def test_presets():
    assert preset("spontaneous").amplitudes[1:] == (0, 0, 0)
    assert preset("partial-c").amplitudes[1:] == (0, 0.01, 0)
    with pytest.raises(ValueError):
        preset("nope")


def test_row_count_and_order():
    cfg = build_config({"t_steps": 400, "pairs": (ModePair("ab"), ModePair("ac"), ModePair("cd")),
                        "criteria": (Criterion.DUAN,)})
    res = run_scan(cfg)
    assert len(res.rows) == 3 * 1 * 3 * 400
    assert len(to_csv(res).splitlines()) == 3600 + 1
    keys = [(r.pair.label, r.phi, r.t) for r in res.rows]
    assert keys == sorted(keys)
    assert set(res.classification) == {(p, Criterion.DUAN, phi) for p in cfg.pairs for phi in cfg.phi_set}


def test_scan_is_independent_of_jobs():
    cfg = small()
    assert to_csv(run_scan(cfg, jobs=2)) == to_csv(run_scan(cfg))


def test_small_time_limit_is_non_conclusive():
    res = run_scan(build_config({"t_max": 1e-13, "t_steps": 5}))
    assert all(c.verdict is Verdict.NON_CONCLUSIVE for c in res.classification.values())


def test_spontaneous_ab_hz1():
    res = run_scan(build_config({"preset": "spontaneous", "t_steps": 50}))
    for phi in res.provenance["config"]["phi"]:
        cl = res.cell("ab", Criterion.HZ1, phi)
        assert cl.verdict is Verdict.NON_CONCLUSIVE and cl.min_value >= 0


def test_emit_is_byte_stable_and_round_trips(tmp_path):
    cfg = small()
    a, b = tmp_path / "a", tmp_path / "b"
    emit(run_scan(cfg), a)
    emit(run_scan(cfg), b)
    for name in ("scan.csv", "scan.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    back = load_result(a / "scan.json")
    assert to_json(back) == (a / "scan.json").read_text()
    assert back.provenance["frame"] == "corotating"


def test_csv_and_json_agree(tmp_path):
    res = run_scan(small())
    rows = list(csv.DictReader(io.StringIO(to_csv(res))))
    assert tuple(rows[0]) == CSV_HEADER
    data = json.loads(to_json(res))["data"]
    for row in rows:
        cell = next(c for c in data[row["pair"]][row["criterion"]].values()
                    if c["phi"] == float(row["phi"]))
        i = cell["t"].index(float(row["t"]))
        assert cell["value"][i] == float(row["value"])
        assert cell["classification"]["verdict"] == row["classification"]


def test_compare_report_basics():
    cfg = build_config({"t_steps": 4, "phi": (0.0,), "pairs": (ModePair("ab"),),
                        "oracle_cutoffs": (14, 14, 14, 14)})
    rep = compare_report(cfg)
    zero = [r for r in rep.rows if r["t"] == 0.0]
    assert zero and all(r["closed_form"] == 0 and abs(r["oracle"]) < 1e-10 for r in zero)
    assert set(rep.fits) == {(ModePair("ab"), c, 0.0) for c in cfg.criteria}
    assert rep.f3_arbitration["ab"]["tracks_oracle"] == "sq"
    assert {"pair", "criterion", "t", "closed_form", "oracle", "abs_err", "rel_err"} <= set(rep.rows[0])


def test_table1_report_shape():
    cells = table1(build_config({"t_steps": 100}))
    assert len(cells) == 54
    assert {c.status for c in cells} <= {Status.MATCH, Status.FAIL, Status.RANGE_SENSITIVE}
    text = format_table(cells)
    assert text.splitlines()[-1].startswith("summary:")
    assert sum(v is Verdict.ENTANGLED for m in EXPECTED.values() for v in m.values()) == 14


def test_cli_scan_writes_files(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("RAMAN_WITNESS_OUT", str(tmp_path / "env"))
    assert main(["scan", "--t-steps", "5", "--phi", "0,pi", "--format", "csv"]) == 0
    lines = (tmp_path / "env" / "scan.csv").read_text().splitlines()
    assert len(lines) == 1 + 6 * 3 * 2 * 5
    assert main(["scan", "--t-steps", "5", "--out", str(tmp_path / "o")]) == 0
    assert (tmp_path / "o" / "scan.json").exists()


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("bogus = 1\n")
    assert main(["scan", "--config", str(bad)]) == EXIT_CONFIG
    assert main(["scan", "--t-steps", "1"]) == EXIT_CONFIG
    assert main(["scan", "--config", str(tmp_path / "missing.cfg")]) == EXIT_IO
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["scan", "--t-steps", "3", "--out", str(blocker / "sub")]) == EXIT_IO
    assert main(["compare", "--t-steps", "2", "--phi", "0", "--cutoff", "3",
                 "--alpha-scale", "0.3", "--out", str(tmp_path / "c")]) == EXIT_NUMERIC
