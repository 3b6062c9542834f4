"""Physical configuration of the four-mode Raman interaction and the
second-order perturbative coefficients of the Heisenberg operator solution.

Modes are labelled ``a`` (pump), ``b`` (Stokes), ``c`` (phonon) and
``d`` (anti-Stokes). All frequencies and couplings are angular
frequencies in rad/s and ``hbar = 1``.

The operator solution reads::

    a(t) = f1 a + f2 b c + f3 c^+ d + f4 a^+ b d + f5 a b b^+
           + f6 a c^+ c + f7 a c^+ c + f8 a d^+ d
    b(t) = g1 b + g2 a c^+ + g3 a^2 d^+ + g4 c^+^2 d + g5 b c c^+ + g6 b a a^+
    c(t) = h1 c + h2 a b^+ + h3 a^+ d + h4 b^+ c^+ d + h5 c a a^+
           + h6 c b b^+ + h7 c d^+ d + h8 c a^+ a
    d(t) = l1 d + l2 a c + l3 a^2 b^+ + l4 b c^2 + l5 c^+ c d + l6 a a^+ d

with every operator on the right evaluated at ``t = 0``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Frame",
    "RamanParams",
    "CoherentInputs",
    "Process",
    "CoefficientSet",
    "ParameterError",
    "ZeroDetuning",
    "DegenerateDetunings",
    "InconsistentFrequencies",
    "ZeroPump",
    "paper_params",
    "paper_inputs",
    "validate_params",
    "compute_coefficients",
    "detuning_epsilon",
]


class ParameterError(ValueError):
    """Base class for invalid physical configurations."""


class ZeroDetuning(ParameterError):
    pass


class DegenerateDetunings(ParameterError):
    pass


class InconsistentFrequencies(ParameterError):
    pass


class ZeroPump(ParameterError):
    pass


class Frame(str, enum.Enum):
    CO_ROTATING = "corotating"
    ABSOLUTE = "absolute"


class Process(str, enum.Enum):
    SPONTANEOUS = "spontaneous"
    PARTIALLY_SPONTANEOUS = "partially-spontaneous"
    STIMULATED = "stimulated"


@dataclass(frozen=True)
class RamanParams:
    """Couplings and detunings of the Raman Hamiltonian.

    ``d_omega1 = w_b + w_c - w_a`` and ``d_omega2 = w_a + w_c - w_d``.
    ``omegas`` holds the absolute mode frequencies ``(w_a, w_b, w_c, w_d)``
    and is only consulted when ``frame`` is :attr:`Frame.ABSOLUTE`.
    """

    g: float = 1e5
    chi: float = 1e5
    d_omega1: float = 1e5
    d_omega2: float = 1.9e5
    frame: Frame = Frame.CO_ROTATING
    omegas: tuple[float, float, float, float] | None = None

    def mode_frequencies(self) -> tuple[float, float, float, float]:
        """Frequencies multiplying the free phases ``exp(-i w_m t)``.

        In the co-rotating frame these are all zero.
        """
        if self.frame is Frame.ABSOLUTE:
            if self.omegas is None:
                raise InconsistentFrequencies("absolute frame needs omegas=(w_a, w_b, w_c, w_d)")
            return tuple(float(w) for w in self.omegas)
        return (0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class CoherentInputs:
    """Coherent amplitudes of the initial product state ``|a1>|a2>|a3>|a4>``."""

    alpha1: complex = 10.0
    alpha2: complex = 8.0
    alpha3: complex = 0.01
    alpha4: complex = 1.0

    @classmethod
    def with_pump_phase(cls, pump: float, stokes: complex, phonon: complex,
                        anti_stokes: complex, phi: float) -> "CoherentInputs":
        """Build inputs with ``alpha1 = |pump| exp(-i phi)``."""
        return cls(abs(pump) * np.exp(-1j * phi), stokes, phonon, anti_stokes)

    @property
    def alphas(self) -> tuple[complex, complex, complex, complex]:
        return (complex(self.alpha1), complex(self.alpha2),
                complex(self.alpha3), complex(self.alpha4))

    @property
    def phi(self) -> float:
        # alpha1 = |alpha1| exp(-i phi)
        return float(-np.angle(self.alpha1)) if self.alpha1 != 0 else 0.0

    def process(self) -> Process:
        a1, *rest = self.alphas
        nonzero = sum(1 for x in rest if x != 0)
        if a1 != 0 and nonzero == 0:
            return Process.SPONTANEOUS
        if a1 != 0 and nonzero == 1:
            return Process.PARTIALLY_SPONTANEOUS
        return Process.STIMULATED

    def scaled(self, factor: float) -> "CoherentInputs":
        return CoherentInputs(*(factor * x for x in self.alphas))


def paper_params(**overrides) -> RamanParams:
    """Parameter preset used throughout the stimulated-Raman analysis."""
    return RamanParams(**{"g": 1e5, "chi": 1e5, "d_omega1": 1e5, "d_omega2": 1.9e5, **overrides})


def paper_inputs(phi: float = 0.0) -> CoherentInputs:
    return CoherentInputs.with_pump_phase(10.0, 8.0, 0.01, 1.0, phi)


def detuning_epsilon(p: RamanParams) -> float:
    return 1e-6 * max(abs(p.d_omega1), abs(p.d_omega2))


def validate_params(p: RamanParams) -> RamanParams:
    """Return ``p`` unchanged, or raise if a coefficient would be singular."""
    for name in ("g", "chi", "d_omega1", "d_omega2"):
        if not math.isfinite(getattr(p, name)):
            raise ParameterError(f"{name} must be finite")
    if p.d_omega1 == 0 or p.d_omega2 == 0:
        raise ZeroDetuning("both detunings must be non-zero "
                           f"(d_omega1={p.d_omega1!r}, d_omega2={p.d_omega2!r})")
    eps = detuning_epsilon(p)
    if abs(p.d_omega1 - p.d_omega2) <= eps:
        raise DegenerateDetunings(f"|d_omega1 - d_omega2| <= {eps:g}")
    if abs(p.d_omega1 + p.d_omega2) <= eps:
        raise DegenerateDetunings(f"|d_omega1 + d_omega2| <= {eps:g}")
    if p.frame is Frame.ABSOLUTE:
        if p.omegas is None or len(p.omegas) != 4:
            raise InconsistentFrequencies("absolute frame needs omegas=(w_a, w_b, w_c, w_d)")
        wa, wb, wc, wd = p.omegas
        if abs(wb + wc - wa - p.d_omega1) > eps or abs(wa + wc - wd - p.d_omega2) > eps:
            raise InconsistentFrequencies(
                "omegas do not reproduce d_omega1 = w_b + w_c - w_a and d_omega2 = w_a + w_c - w_d")
    return p


@dataclass(frozen=True)
class CoefficientSet:
    """The 28 coefficients ``f1..f8, g1..g6, h1..h8, l1..l6`` at time ``t``.

    Arrays are zero-based, so ``f[0]`` is ``f1``.
    """

    t: float
    f: np.ndarray = field(repr=False)
    gc: np.ndarray = field(repr=False)
    h: np.ndarray = field(repr=False)
    l: np.ndarray = field(repr=False)

    def __getitem__(self, name: str) -> complex:
        """Look up a coefficient by its printed name, e.g. ``cs["h4"]``."""
        family, idx = name[0], int(name[1:]) - 1
        arr = {"f": self.f, "g": self.gc, "h": self.h, "l": self.l}[family]
        return complex(arr[idx])

    @classmethod
    def identity(cls, t: float = 0.0) -> "CoefficientSet":
        def unit(n):
            v = np.zeros(n, dtype=complex)
            v[0] = 1.0
            return v
        return cls(t, unit(8), unit(6), unit(8), unit(6))


def compute_coefficients(p: RamanParams, t: float) -> CoefficientSet:
    """Evaluate the coefficient functions at time ``t`` (seconds).

    In the co-rotating frame the overall mode phases ``exp(-i w_m t)`` are
    dropped, so ``f1 = g1 = h1 = l1 = 1``.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if t == 0:
        # exact identity; the free phases are 1 at t = 0 in any frame
        return CoefficientSet.identity(0.0)
    g, chi, d1, d2 = p.g, p.chi, p.d_omega1, p.d_omega2
    ea, eb, ec, ed = (np.exp(-1j * w * t) for w in p.mode_frequencies())

    e = np.exp
    dm, dp = d1 - d2, d1 + d2
    gchi = g * chi

    f = np.empty(8, dtype=complex)
    f[0] = 1.0
    f[1] = g / d1 * (e(-1j * d1 * t) - 1)
    f[2] = -chi / d2 * (e(1j * d2 * t) - 1)
    f[3] = (-gchi / d1 * ((e(-1j * dm * t) - 1) / dm + e(1j * d2 * t) / d2)
            - gchi / d2 * ((e(-1j * dm * t) - 1) / dm - e(-1j * d1 * t) / d1))
    f[4] = g**2 / d1**2 * (e(-1j * d1 * t) - 1) + 1j * g**2 * t / d1
    f[5] = f[4]
    f[6] = chi**2 / d2**2 * (e(1j * d2 * t) - 1) - 1j * chi**2 * t / d2
    f[7] = -f[6]
    f *= ea

    gc = np.empty(6, dtype=complex)
    gc[0] = 1.0
    gc[1] = -g / d1 * (e(1j * d1 * t) - 1)
    gc[2] = (gchi / (d2 * dm) * (e(1j * dm * t) - 1)
             - gchi / (d2 * d1) * (e(1j * d1 * t) - 1))
    gc[3] = (gchi / (d2 * dp) * (e(1j * dp * t) - 1)
             - gchi / (d2 * d1) * (e(1j * d1 * t) - 1))
    gc[4] = g**2 / d1**2 * (e(1j * d1 * t) - 1) - 1j * g**2 * t / d1
    gc[5] = -gc[4]
    gc *= eb

    h = np.empty(8, dtype=complex)
    h[0] = 1.0
    h[1] = -g / d1 * (e(1j * d1 * t) - 1)
    h[2] = -chi / d2 * (e(1j * d2 * t) - 1)
    h[3] = (gchi / d2 * ((e(1j * dp * t) - 1) / dp - e(1j * d1 * t) / d1)
            - gchi / d1 * ((e(1j * dp * t) - 1) / dp - e(1j * d2 * t) / d2))
    h[4] = -g**2 / d1**2 * (e(1j * d1 * t) - 1) + 1j * g**2 * t / d1
    h[5] = -h[4]
    h[6] = -chi**2 / d2**2 * (e(1j * d2 * t) - 1) + 1j * chi**2 * t / d2
    h[7] = chi**2 / d2**2 * (e(1j * d2 * t) - 1) - 1j * chi**2 * t / d2
    h *= ec

    l = np.empty(6, dtype=complex)
    l[0] = 1.0
    l[1] = chi / d2 * (e(-1j * d2 * t) - 1)
    l[2] = (gchi / (d1 * dm) * (e(1j * dm * t) - 1)
            + gchi / (d2 * d1) * (e(-1j * d2 * t) - 1))
    l[3] = (gchi / (d1 * dp) * (e(-1j * dp * t) - 1)
            - gchi / (d2 * d1) * (e(-1j * d2 * t) - 1))
    l[4] = 1j * chi**2 * t / d2 + chi**2 / d2**2 * (e(-1j * d2 * t) - 1)
    l[5] = l[4]
    l *= ed

    return CoefficientSet(float(t), f, gc, h, l)
