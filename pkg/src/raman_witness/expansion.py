"""Second-order moment expansion of the Heisenberg operator solution.

Operators are polynomials in the initial ladder operators, kept in normal
order. Each term carries its order in the couplings (``g``, ``chi``);
products are truncated above second order, and expectation values are
taken in the initial coherent product state by replacing ``x -> alpha``
and ``x+ -> conj(alpha)`` in normal-ordered monomials.

This gives the witnesses implied by the operator solution without any
hand algebra, and is used to cross-check the printed closed forms.
"""
from __future__ import annotations

from collections import defaultdict
from math import comb, factorial

import numpy as np

from .model import CoefficientSet, CoherentInputs, RamanParams, compute_coefficients
from .modes import Criterion, ModePair

MAX_ORDER = 2

# monomial: per mode (creation power, annihilation power), flattened to 8 ints
_ONE = (0,) * 8


def _mode_product(m, n, p, q):
    """a+^m a^n . a+^p a^q in normal order -> [(coef, creation, annihilation)]."""
    return [(factorial(k) * comb(n, k) * comb(p, k), m + p - k, n + q - k)
            for k in range(min(n, p) + 1)]


class OpPoly:
    """Normal-ordered operator polynomial with coupling-order bookkeeping."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple[int, tuple], complex] = dict(terms or {})

    @classmethod
    def ladder(cls, mode: int, dagger: bool = False) -> "OpPoly":
        mono = [0] * 8
        mono[2 * mode + (0 if dagger else 1)] = 1
        return cls({(0, tuple(mono)): 1.0})

    @classmethod
    def scalar(cls, value: complex, order: int = 0) -> "OpPoly":
        return cls({(order, _ONE): value})

    def __add__(self, other: "OpPoly") -> "OpPoly":
        out = defaultdict(complex, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return OpPoly(out)

    def __sub__(self, other: "OpPoly") -> "OpPoly":
        return self + other.scale(-1.0)

    def scale(self, value: complex, order: int = 0) -> "OpPoly":
        return OpPoly({(o + order, m): v * value for (o, m), v in self.terms.items()
                       if o + order <= MAX_ORDER})

    def __mul__(self, other: "OpPoly") -> "OpPoly":
        out = defaultdict(complex)
        for (o1, m1), v1 in self.terms.items():
            for (o2, m2), v2 in other.terms.items():
                order = o1 + o2
                if order > MAX_ORDER:
                    continue
                partial = [(v1 * v2, ())]
                for mode in range(4):
                    factors = _mode_product(m1[2 * mode], m1[2 * mode + 1],
                                            m2[2 * mode], m2[2 * mode + 1])
                    partial = [(c * k, mono + (cr, an)) for c, mono in partial
                               for k, cr, an in factors]
                for c, mono in partial:
                    out[(order, mono)] += c
        return OpPoly(out)

    def dag(self) -> "OpPoly":
        out = {}
        for (o, m), v in self.terms.items():
            swapped = tuple(x for i in range(4) for x in (m[2 * i + 1], m[2 * i]))
            out[(o, swapped)] = np.conj(v)
        return OpPoly(out)

    def expect(self, alphas) -> np.ndarray:
        """Coherent-state expectation split by coupling order, shape (3,)."""
        out = np.zeros(MAX_ORDER + 1, dtype=complex)
        conj = [np.conj(x) for x in alphas]
        for (o, m), v in self.terms.items():
            val = v
            for i in range(4):
                if m[2 * i]:
                    val *= conj[i] ** m[2 * i]
                if m[2 * i + 1]:
                    val *= alphas[i] ** m[2 * i + 1]
            out[o] += val
        return out


def _product(*ops: OpPoly) -> OpPoly:
    out = ops[0]
    for op in ops[1:]:
        out = out * op
    return out


def heisenberg_operators(c: CoefficientSet) -> list[OpPoly]:
    """``[a(t), b(t), c(t), d(t)]`` from the coefficient set."""
    a, b, cc, d = (OpPoly.ladder(i) for i in range(4))
    ad, bd, cd, dd = (OpPoly.ladder(i, True) for i in range(4))

    def build(terms):
        out = OpPoly()
        for coef, order, factors in terms:
            out = out + _product(*factors).scale(coef, order)
        return out

    a_t = build([
        (c["f1"], 0, [a]), (c["f2"], 1, [b, cc]), (c["f3"], 1, [cd, d]),
        (c["f4"], 2, [ad, b, d]), (c["f5"], 2, [a, b, bd]), (c["f6"], 2, [a, cd, cc]),
        (c["f7"], 2, [a, cd, cc]), (c["f8"], 2, [a, dd, d]),
    ])
    b_t = build([
        (c["g1"], 0, [b]), (c["g2"], 1, [a, cd]), (c["g3"], 2, [a, a, dd]),
        (c["g4"], 2, [cd, cd, d]), (c["g5"], 2, [b, cc, cd]), (c["g6"], 2, [b, a, ad]),
    ])
    c_t = build([
        (c["h1"], 0, [cc]), (c["h2"], 1, [a, bd]), (c["h3"], 1, [ad, d]),
        (c["h4"], 2, [bd, cd, d]), (c["h5"], 2, [cc, a, ad]), (c["h6"], 2, [cc, b, bd]),
        (c["h7"], 2, [cc, dd, d]), (c["h8"], 2, [cc, ad, a]),
    ])
    d_t = build([
        (c["l1"], 0, [d]), (c["l2"], 1, [a, cc]), (c["l3"], 2, [a, a, bd]),
        (c["l4"], 2, [b, cc, cc]), (c["l5"], 2, [cd, cc, d]), (c["l6"], 2, [a, ad, d]),
    ])
    return [a_t, b_t, c_t, d_t]


def _series_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = np.zeros(MAX_ORDER + 1, dtype=complex)
    for i in range(MAX_ORDER + 1):
        for j in range(MAX_ORDER + 1 - i):
            out[i + j] += x[i] * y[j]
    return out


def _series_abs2(x: np.ndarray) -> np.ndarray:
    return _series_mul(x, np.conj(x))


def expansion_series(pair: ModePair, criterion: Criterion, c: CoefficientSet,
                     alphas) -> np.ndarray:
    """Witness of ``pair`` as a coupling-order series ``[w0, w1, w2]``."""
    ops = heisenberg_operators(c)
    x, y = ops[pair.first], ops[pair.second]
    xd, yd = x.dag(), y.dag()
    if criterion is Criterion.HZ1:
        nn = (xd * x * yd * y).expect(alphas)
        return nn - _series_abs2((x * yd).expect(alphas))
    if criterion is Criterion.HZ2:
        nx, ny = (xd * x).expect(alphas), (yd * y).expect(alphas)
        return _series_mul(nx, ny) - _series_abs2((x * y).expect(alphas))
    if criterion is Criterion.DUAN:
        # D = 2 <d(x+y)+ d(x+y)>, the quadrature-variance sum for
        # u ~ x_a + x_b, v ~ p_a + p_b minus 2
        s = x + y
        sd = s.dag()
        mean = s.expect(alphas)
        return 2.0 * ((sd * s).expect(alphas) - _series_abs2(mean))
    raise ValueError(criterion)


def expansion_witness(pair: ModePair, criterion: Criterion, p: RamanParams,
                      a: CoherentInputs, t: float,
                      coefficients: CoefficientSet | None = None) -> float:
    c = coefficients if coefficients is not None else compute_coefficients(p, t)
    series = expansion_series(pair, criterion, c, a.alphas)
    return float(series.sum().real)
