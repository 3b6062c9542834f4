import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from raman_witness import (ALL_CRITERIA, ALL_PAIRS, CoherentInputs, Criterion, Frame, ModePair,
                           Process, ZeroPump, compute_coefficients, paper_inputs, paper_params)
from raman_witness.witnesses import (CLOSED_FORMS, EmptyGrid, ImaginaryResidue, Verdict, _as_real,
                                     classify, classify_values, hz1_witness, specialize, witness)

PHIS = (0.0, math.pi / 2, math.pi)
# printed forms whose second-order content differs from the operator solution
DEFECTIVE = {(Criterion.HZ1, "ac"), (Criterion.HZ1, "cd"), (Criterion.DUAN, "ad")}
EXACT_CELLS = [(pr, cr) for pr in ALL_PAIRS for cr in ALL_CRITERIA if (cr, pr.label) not in DEFECTIVE]


def test_every_cell_has_a_closed_form():
    assert set(CLOSED_FORMS) == {(c, p.label) for c in ALL_CRITERIA for p in ALL_PAIRS}


@settings(max_examples=100, deadline=None)
@given(g=st.floats(1e3, 1e6), d1=st.floats(1e4, 1e6), t=st.floats(1e-9, 1e-6),
       a1=st.floats(0.1, 20), theta=st.floats(0, 2 * math.pi))
def test_spontaneous_ab_is_positive(g, d1, t, a1, theta):
    p = paper_params(g=g, d_omega1=d1, d_omega2=d1 * 1.9)
    a = CoherentInputs(a1 * np.exp(1j * theta), 0, 0, 0)
    value = hz1_witness("ab", p, a, t)
    c = compute_coefficients(p, t)
    expected = abs(c["g2"]) ** 2 * a1**4
    assert value == pytest.approx(expected, rel=1e-12)
    assert value >= 0


@pytest.mark.parametrize("a1", [0.5, 3.0, 10.0])
def test_partial_spontaneous_sign_flip(a1):
    p = paper_params()
    t = 3e-7
    f = lambda a2: hz1_witness("ab", p, CoherentInputs(a1, a2, 0, 0), t)
    assert f(0.5 * a1) > 0 > f(1.5 * a1)
    root = brentq(f, 0.5 * a1, 1.5 * a1, xtol=1e-14, rtol=1e-15)
    assert abs(root - a1) <= 1e-10


@pytest.mark.parametrize("pair, crit", EXACT_CELLS, ids=lambda x: str(getattr(x, "value", x)))
@pytest.mark.parametrize("phi", PHIS)
def test_closed_form_matches_second_order_expansion(pair, crit, phi):
    p = paper_params()
    a = CoherentInputs.with_pump_phase(1.0, 0.8, 0.3, 0.5, phi)
    for t in (1e-7, 5e-7, 1e-6):
        c = compute_coefficients(p, t)
        printed = witness(pair, crit, p, a, t, coefficients=c)
        expanded = witness(pair, crit, p, a, t, form="expansion", coefficients=c)
        assert printed == pytest.approx(expanded, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("crit, label", sorted(DEFECTIVE, key=str))
def test_defective_forms_differ_at_second_order(crit, label):
    p = paper_params()
    a = CoherentInputs(1.0, 0.8, 0.3, 0.5)
    diffs = []
    for t in (2e-7, 1e-7):
        diffs.append(abs(witness(label, crit, p, a, t) - witness(label, crit, p, a, t, form="expansion")))
    assert 3.0 < diffs[0] / diffs[1] < 5.0


def test_f3_readings_differ():
    p, a = paper_params(), CoherentInputs(1.0, 0.8, 0.3, 0.5)
    sq = witness("ab", Criterion.DUAN, p, a, 5e-7)
    lin = witness("ab", Criterion.DUAN, p, a, 5e-7, f3_reading="lin")
    assert sq != lin


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=str)
@pytest.mark.parametrize("crit", [Criterion.HZ1, Criterion.HZ2])
def test_hz_frame_invariance(pair, crit):
    wa, wc = 2.3e6, 1.1e6
    absolute = paper_params(frame=Frame.ABSOLUTE, omegas=(wa, wa - wc + 1e5, wc, wa + wc - 1.9e5))
    co = paper_params()
    a = paper_inputs(math.pi / 2)
    for t in (1e-7, 7e-7):
        v0 = witness(pair, crit, co, a, t)
        v1 = witness(pair, crit, absolute, a, t)
        assert v1 == pytest.approx(v0, rel=1e-10, abs=1e-10 * max(1.0, abs(v0)))


@pytest.mark.parametrize("crit", [Criterion.HZ1, Criterion.HZ2])
def test_ab_is_pump_phase_covariant(crit):
    p = paper_params()
    vals = [witness("ab", crit, p, paper_inputs(phi), 5e-7) for phi in np.linspace(0, 2 * math.pi, 7)]
    assert np.ptp(vals) <= 1e-10 * max(1.0, max(map(abs, vals)))


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=str)
@pytest.mark.parametrize("crit", ALL_CRITERIA)
def test_vanishes_quadratically_for_real_inputs(pair, crit):
    p, a = paper_params(), CoherentInputs(1.0, 0.8, 0.3, 0.5)
    ts = np.geomspace(1e-10, 1e-8, 5)
    vals = np.abs([witness(pair, crit, p, a, t) for t in ts])
    assert witness(pair, crit, p, a, 0.0) == 0.0
    slope = np.polyfit(np.log(ts), np.log(vals), 1)[0]
    assert 1.8 <= slope <= 2.2


def test_imaginary_residue_is_reported():
    with pytest.raises(ImaginaryResidue):
        _as_real(1.0 + 1e-3j, "x")
    assert _as_real(1.0 + 1e-12j, "x") == 1.0


def test_classification_threshold():
    assert classify_values([1, 2], [0.0, -1e-7]).verdict is Verdict.NON_CONCLUSIVE
    cl = classify_values([1, 2, 3], [0.0, -2e-6, 0.5])
    assert cl.verdict is Verdict.ENTANGLED and cl.min_t == 2
    # threshold scales with the largest magnitude
    assert not classify_values([1, 2], [-5e-5, 100.0]).entangled
    with pytest.raises(EmptyGrid):
        classify_values([], [])
    with pytest.raises(EmptyGrid):
        classify("ab", Criterion.HZ1, paper_params(), paper_inputs(), [])


def test_spontaneous_ab_never_entangled():
    a = specialize(paper_inputs(), Process.SPONTANEOUS)
    cl = classify("ab", Criterion.HZ1, paper_params(), a, np.linspace(1e-9, 1e-6, 50))
    assert not cl.entangled and cl.min_value >= 0


def test_specialize():
    a = paper_inputs()
    assert specialize(a, Process.SPONTANEOUS).alphas[1:] == (0, 0, 0)
    assert specialize(a, Process.PARTIALLY_SPONTANEOUS, keep=4).alphas[1:] == (0, 0, 1)
    assert specialize(a, Process.PARTIALLY_SPONTANEOUS).alphas[1:] == (8, 0, 0)
    with pytest.raises(ZeroPump):
        specialize(CoherentInputs(0, 1, 1, 1), Process.SPONTANEOUS)
    with pytest.raises(ValueError):
        specialize(a, Process.PARTIALLY_SPONTANEOUS, keep=1)
