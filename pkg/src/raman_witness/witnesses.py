"""Closed-form second-order HZ-1, HZ-2 and Duan witnesses for all six mode
pairs, plus grid classification.

Each ``_hz1_*``/``_hz2_*``/``_duan_*`` function is a literal transcription
of the published closed form, written in terms of the coefficient set and
the coherent amplitudes. A negative value certifies entanglement.

``form="expansion"`` instead evaluates the same moment combinations from
the operator solution itself, truncated consistently at second order in
the couplings (see :mod:`raman_witness.expansion`).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .model import (CoefficientSet, CoherentInputs, Process, RamanParams, ZeroPump,
                    compute_coefficients, validate_params)
from .modes import Criterion, ModePair

IMAG_RTOL = 1e-10

F3_SQUARED = "sq"
F3_LINEAR = "lin"

FORM_CLOSED = "closed"
FORM_EXPANSION = "expansion"


class EmptyGrid(ValueError):
    pass


class ImaginaryResidue(ArithmeticError):
    pass


def _abs2(z) -> float:
    return z.real**2 + z.imag**2


def _cc(z: complex) -> float:
    """``z + c.c.``"""
    return 2.0 * z.real


# HZ-1: <N_x N_y> - |<x y+>|^2

def _hz1_ab(c: CoefficientSet, a1, a2, a3, a4, **_):
    A1, A2, A4 = _abs2(a1), _abs2(a2), _abs2(a4)
    return _abs2(c["f3"]) * A2 * A4 + _abs2(c["g2"]) * (A1**2 - A1 * A2)


def _hz1_bc(c, a1, a2, a3, a4, **_):
    A1, A2, A3, A4 = _abs2(a1), _abs2(a2), _abs2(a3), _abs2(a4)
    cross = (np.conj(c["h1"]) * c["h2"] * a1 * np.conj(a2) * np.conj(a3)
             + 2 * np.conj(c["g4"]) * c["g1"] * a2 * a3**2 * np.conj(a4)
             + c["h2"] * np.conj(c["h3"]) * a1**2 * np.conj(a2) * np.conj(a4))
    return (_abs2(c["g2"]) * (3 * A1 * A3 + 3 * A1 * A2 + A1 - A2 * A3)
            + _abs2(c["h3"]) * A2 * A4 + _cc(cross))


def _hz1_ad(c, a1, a2, a3, a4, **_):
    A1, A3, A4 = _abs2(a1), _abs2(a3), _abs2(a4)
    return (_abs2(c["f3"]) * (A3 + A4**2 + A1 * A3 - A1 * A4)
            - _abs2(c["l2"]) * (A3 + A1 * A3))


def _hz1_bd(c, a1, a2, a3, a4, **_):
    A1, A4 = _abs2(a1), _abs2(a4)
    return (_abs2(c["g2"]) * A1 * A4
            + _cc(np.conj(c["l1"]) * c["l3"] * a1**2 * np.conj(a2) * np.conj(a4)))


def _hz1_cd(c, a1, a2, a3, a4, **_):
    A1, A3, A4 = _abs2(a1), _abs2(a3), _abs2(a4)
    return (_abs2(c["l2"]) * (2 * A1 + 2 * A1 * A4 - 2 * A4 - A4**2 - A3 * A4)
            + _abs2(c["h2"]) * A1 * A4)


def _hz1_ac(c, a1, a2, a3, a4, **_):
    A1, A2, A3, A4 = _abs2(a1), _abs2(a2), _abs2(a3), _abs2(a4)
    cross = (np.conj(c["f1"]) * c["f3"] * np.conj(a1) * np.conj(a3) * a4
             + np.conj(c["h2"]) * c["h3"] * np.conj(a1) ** 2 * a2 * a4
             + np.conj(c["f2"]) * c["f3"] * np.conj(a2) * np.conj(a3) ** 2 * a4)
    return (_abs2(c["f2"]) * (2 * A1 + A1**2 + A1 * A3 - 4 * A2 - 2 * A1 * A2 - 2 * A2 * A3)
            + _abs2(c["f3"]) * (A4 + 3 * A3 * A4 + 3 * A1 * A4 - A1 * A3)
            + _cc(cross))


# HZ-2: <N_x><N_y> - |<x y>|^2

def _hz2_ab(c, a1, a2, a3, a4, **_):
    A1, A2, A4 = _abs2(a1), _abs2(a2), _abs2(a4)
    k = np.conj(c["g1"]) * c["g6"] + np.conj(c["f1"]) * c["f2"] * np.conj(c["g1"]) * c["g2"]
    return _abs2(c["g2"]) * A1**2 + _abs2(c["f3"]) * A2 * A4 - _cc(k * A1 * A2)


def _hz2_bc(c, a1, a2, a3, a4, **_):
    A1, A2, A3, A4 = _abs2(a1), _abs2(a2), _abs2(a3), _abs2(a4)
    h1, h2, h3, h4, h6 = c["h1"], c["h2"], c["h3"], c["h4"], c["h6"]
    g1, g2 = c["g1"], c["g2"]
    bracket = (np.conj(h1) * h2 * a1 * np.conj(a2) * np.conj(a3)
               + (h1 * np.conj(h4) + g1 * np.conj(g2) * h1 * np.conj(h3)) * a2 * a3**2 * np.conj(a4)
               + np.conj(h2) * h3 * np.conj(a1) ** 2 * a2 * a4
               + np.conj(h1) * h6 * A2 * A3
               + g1 * np.conj(g2) * np.conj(h1) * h2 * A1 * A3)
    return (_abs2(g2) * A1 * A3 - _abs2(h2) * (1 + A2) * A1 + _abs2(h3) * A2 * A4
            - _cc(bracket))


def _hz2_ad(c, a1, a2, a3, a4, **_):
    A1, A4 = _abs2(a1), _abs2(a4)
    return _abs2(c["f3"]) * A4**2 - _cc(np.conj(c["l1"]) * c["l6"] * A1 * A4)


def _hz2_bd(c, a1, a2, a3, a4, **_):
    A1, A4 = _abs2(a1), _abs2(a4)
    return (_abs2(c["g2"]) * A1 * A4
            - _cc(np.conj(c["l1"]) * c["l3"] * a1**2 * np.conj(a2) * np.conj(a4)))


def _hz2_cd(c, a1, a2, a3, a4, **_):
    A1, A3, A4 = _abs2(a1), _abs2(a3), _abs2(a4)
    return (_abs2(c["h2"]) * A1 * A4 + _abs2(c["h3"]) * A4**2
            - _cc(np.conj(c["l1"]) * c["l5"] * A3 * A4))


def _hz2_ac(c, a1, a2, a3, a4, **_):
    A1, A3, A4 = _abs2(a1), _abs2(a3), _abs2(a4)
    h1, h2, h3, h5, h8 = c["h1"], c["h2"], c["h3"], c["h5"], c["h8"]
    f1, f2, f3 = c["f1"], c["f2"], c["f3"]
    bracket = (np.conj(h1) * h3 * np.conj(a1) * np.conj(a3) * a4
               + np.conj(h1) * h8 * A1 * A3
               + np.conj(h2) * h3 * np.conj(a1) ** 2 * a2 * a4
               - np.conj(h1) * h5 * A1 * A3
               + np.conj(f1) * f2 * np.conj(h3) * h1 * a2 * a3**2 * np.conj(a4)
               + np.conj(f1) * f3 * np.conj(h3) * h1 * A3 * A4)
    return (_abs2(h2) * A1**2 - _abs2(h3) * (A4 + A1 * A4) + _abs2(f3) * A3 * A4
            - _cc(bracket))


# Duan: <(du)^2> + <(dv)^2> - 2

def _f3_term(c, f3_reading):
    return _abs2(c["f3"]) if f3_reading == F3_SQUARED else abs(c["f3"])


def _duan_ab(c, a1, a2, a3, a4, f3_reading=F3_SQUARED):
    A1, A4 = _abs2(a1), _abs2(a4)
    f1, f3, f4, f5 = c["f1"], c["f3"], c["f4"], c["f5"]
    g1, g2, g3, g6 = c["g1"], c["g2"], c["g3"], c["g6"]
    x = ((f1 * np.conj(g6) + f5 * np.conj(g1)) * a1 * np.conj(a2)
         + (2 * f1 * np.conj(g3) + f4 * np.conj(g1) + f3 * np.conj(g2)) * np.conj(a1) * a4)
    return 2 * (_f3_term(c, f3_reading) * A4 + _abs2(g2) * A1 + 0.5 * _cc(x))


def _duan_ac(c, a1, a2, a3, a4, f3_reading=F3_SQUARED):
    A1, A4 = _abs2(a1), _abs2(a4)
    f1, f3, f6, f7 = c["f1"], c["f3"], c["f6"], c["f7"]
    h1, h3, h5, h8 = c["h1"], c["h3"], c["h5"], c["h8"]
    x = ((f1 * np.conj(h5) + f6 * np.conj(h1) + f3 * np.conj(h3) + f7 * np.conj(h1)
          + f1 * np.conj(h8)) * a1 * np.conj(a3))
    return 2 * (_f3_term(c, f3_reading) * A4 + _abs2(c["h2"]) * A1 + _abs2(h3) * A4
                + 0.5 * _cc(x))


def _duan_bc(c, a1, a2, a3, a4, **_):
    A1, A4 = _abs2(a1), _abs2(a4)
    g1, g2, g5 = c["g1"], c["g2"], c["g5"]
    h1, h2, h6 = c["h1"], c["h2"], c["h6"]
    x = (g1 * np.conj(h6) + g5 * np.conj(h1) + g2 * np.conj(h2)) * np.conj(a3) * a2
    return 2 * (_abs2(g2) * A1 + _abs2(h2) * A1 + _abs2(c["h3"]) * A4 + 0.5 * _cc(x))


def _duan_ad(c, a1, a2, a3, a4, f3_reading=F3_SQUARED):
    A4 = _abs2(a4)
    f1, f2, f3, f4, f8 = c["f1"], c["f2"], c["f3"], c["f4"], c["f8"]
    l1, l2, l3 = c["l1"], c["l2"], c["l3"]
    x = ((f1 * np.conj(l2) + f3 * np.conj(l1)) * np.conj(a3)
         + (2 * f1 * np.conj(l3) + f4 * np.conj(l1) + f2 * np.conj(l2)) * np.conj(a1) * a2
         + f8 * np.conj(l1) * a1 * np.conj(a4))
    return 2 * (_f3_term(c, f3_reading) * A4 + 0.5 * _cc(x))


def _duan_cd(c, a1, a2, a3, a4, **_):
    A1, A4 = _abs2(a1), _abs2(a4)
    h1, h2, h4, h7 = c["h1"], c["h2"], c["h4"], c["h7"]
    l1, l2, l4, l5 = c["l1"], c["l2"], c["l4"], c["l5"]
    x = ((2 * l4 * np.conj(h1) + l2 * np.conj(h2) + l1 * np.conj(h4)) * a2 * a3
         + (l5 * np.conj(h1) + l1 * np.conj(h7)) * np.conj(a3) * a4)
    return 2 * (_abs2(h2) * A1 + _abs2(c["h3"]) * A4 + 0.5 * _cc(x))


def _duan_bd(c, a1, a2, a3, a4, **_):
    A1 = _abs2(a1)
    g1, g2, g4 = c["g1"], c["g2"], c["g4"]
    l1, l2, l4 = c["l1"], c["l2"], c["l4"]
    x = (l4 * np.conj(g1) + l2 * np.conj(g2) + l1 * np.conj(g4)) * a3**2
    return 2 * (_abs2(g2) * A1 + 0.5 * _cc(x))


CLOSED_FORMS: dict[tuple[Criterion, str], Callable[..., float]] = {
    (Criterion.HZ1, "ab"): _hz1_ab, (Criterion.HZ1, "bc"): _hz1_bc,
    (Criterion.HZ1, "ad"): _hz1_ad, (Criterion.HZ1, "bd"): _hz1_bd,
    (Criterion.HZ1, "cd"): _hz1_cd, (Criterion.HZ1, "ac"): _hz1_ac,
    (Criterion.HZ2, "ab"): _hz2_ab, (Criterion.HZ2, "bc"): _hz2_bc,
    (Criterion.HZ2, "ad"): _hz2_ad, (Criterion.HZ2, "bd"): _hz2_bd,
    (Criterion.HZ2, "cd"): _hz2_cd, (Criterion.HZ2, "ac"): _hz2_ac,
    (Criterion.DUAN, "ab"): _duan_ab, (Criterion.DUAN, "ac"): _duan_ac,
    (Criterion.DUAN, "bc"): _duan_bc, (Criterion.DUAN, "ad"): _duan_ad,
    (Criterion.DUAN, "cd"): _duan_cd, (Criterion.DUAN, "bd"): _duan_bd,
}


def _as_real(value, label: str) -> float:
    value = complex(value)
    if abs(value.imag) > IMAG_RTOL * max(1.0, abs(value.real)):
        raise ImaginaryResidue(f"{label}: imaginary residue {value.imag:.3g}")
    out = value.real
    if not math.isfinite(out):
        raise ArithmeticError(f"{label}: non-finite witness value")
    return out


def witness(pair, criterion, p: RamanParams, a: CoherentInputs, t: float, *,
            form: str = FORM_CLOSED, f3_reading: str = F3_SQUARED,
            coefficients: CoefficientSet | None = None) -> float:
    """Closed-form value of ``criterion`` for ``pair`` at time ``t``."""
    pair = ModePair(pair) if isinstance(pair, str) else pair
    criterion = Criterion(criterion)
    if form == FORM_EXPANSION:
        from .expansion import expansion_witness
        return expansion_witness(pair, criterion, p, a, t, coefficients=coefficients)
    if form != FORM_CLOSED:
        raise ValueError(f"unknown form {form!r}")
    c = coefficients if coefficients is not None else compute_coefficients(p, t)
    fn = CLOSED_FORMS[(criterion, pair.label)]
    kwargs = {"f3_reading": f3_reading} if criterion is Criterion.DUAN else {}
    return _as_real(fn(c, *a.alphas, **kwargs), f"{criterion.value} {pair.label}")


def hz1_witness(pair, p, a, t, **kw) -> float:
    return witness(pair, Criterion.HZ1, p, a, t, **kw)


def hz2_witness(pair, p, a, t, **kw) -> float:
    return witness(pair, Criterion.HZ2, p, a, t, **kw)


def duan_witness(pair, p, a, t, **kw) -> float:
    return witness(pair, Criterion.DUAN, p, a, t, **kw)


def witness_series(pair, criterion, p: RamanParams, a: CoherentInputs, times, **kw) -> np.ndarray:
    validate_params(p)
    return np.array([witness(pair, criterion, p, a, float(t), **kw) for t in times])


# classification

@dataclass(frozen=True)
class WitnessSample:
    pair: ModePair
    criterion: Criterion
    t: float
    phi: float
    value: float
    process: Process


class Verdict(str, enum.Enum):
    ENTANGLED = "entangled"
    NON_CONCLUSIVE = "nc"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    min_value: float
    min_t: float | None
    threshold: float

    @property
    def entangled(self) -> bool:
        return self.verdict is Verdict.ENTANGLED


def classify_values(times: Sequence[float], values: Sequence[float]) -> Classification:
    """Entangled iff ``min(values) < -delta``, ``delta = 1e-6 max(1, max|values|)``."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise EmptyGrid("classification needs at least one grid point")
    delta = 1e-6 * max(1.0, float(np.max(np.abs(values))))
    i = int(np.argmin(values))
    vmin = float(values[i])
    if vmin < -delta:
        return Classification(Verdict.ENTANGLED, vmin, float(times[i]), delta)
    return Classification(Verdict.NON_CONCLUSIVE, vmin, None, delta)


def classify(pair, criterion, p: RamanParams, a: CoherentInputs, t_grid, **kw) -> Classification:
    t_grid = list(t_grid)
    if not t_grid:
        raise EmptyGrid("t_grid is empty")
    return classify_values(t_grid, witness_series(pair, criterion, p, a, t_grid, **kw))


def specialize(a: CoherentInputs, process: Process, keep: int | None = None) -> CoherentInputs:
    """Zero the amplitudes a process does not seed.

    For a partially spontaneous process ``keep`` selects the seeded mode
    (2 = Stokes, 3 = phonon, 4 = anti-Stokes); by default the first
    non-zero of them.
    """
    process = Process(process)
    if process is Process.STIMULATED:
        return a
    a1, a2, a3, a4 = a.alphas
    if a1 == 0:
        raise ZeroPump(f"{process.value} process needs a non-zero pump amplitude")
    if process is Process.SPONTANEOUS:
        return CoherentInputs(a1, 0, 0, 0)
    rest = [a2, a3, a4]
    if keep is None:
        keep = next((i + 2 for i, x in enumerate(rest) if x != 0), 2)
    if keep not in (2, 3, 4):
        raise ValueError("keep must be 2, 3 or 4")
    vals = [0j, 0j, 0j]
    vals[keep - 2] = rest[keep - 2]
    return CoherentInputs(a1, *vals)
