"""Non-linear traces of Choquet type and their signed/complex extensions.

On positives the trace is the Stieltjes integral of the decreasing
eigenvalue rearrangement against the weight's measure; the translatable
extension (shift up, integrate, shift back) is the canonical signed
extension and coincides with the anti-symmetric one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (BadExponent, BadThreshold, DiscontinuousWeight,
                     NegativeSpectrum, UnnormalizedWeight)
from .spectra import (HermitianOperator, SpectralDistribution,
                      singular_distribution, spectral_distribution)
from .weights import Weight, dual_weight

Spectral = Union[HermitianOperator, SpectralDistribution]

_NEGATIVE_TOL = 1e-12


def _as_distribution(a: Spectral) -> SpectralDistribution:
    if isinstance(a, SpectralDistribution):
        return a
    if isinstance(a, HermitianOperator):
        return spectral_distribution(a)
    raise TypeError(f"expected HermitianOperator or SpectralDistribution, got {type(a)!r}")


def _require_extension_weight(w: Weight) -> None:
    if not w.continuous:
        raise DiscontinuousWeight(
            f"weight {w.name!r} is discontinuous; the signed extensions need continuity")
    if not w.normalized:
        raise UnnormalizedWeight(
            f"weight {w.name!r} has total {w.total}; translatability needs total 1")


def choquet_trace(w: Weight, a: Spectral) -> float:
    """Trace of a positive operator: sum of v_i * (w(c_i) - w(c_{i-1})).

    c_i is the trace mass of the i largest distinct eigenvalues, so this
    is the Stieltjes form of the layer-cake integral.
    """
    d = _as_distribution(a)
    scale = max(1.0, abs(d.max_value()), abs(d.min_value()))
    if d.min_value() < -_NEGATIVE_TOL * scale:
        raise NegativeSpectrum(
            f"spectrum reaches {d.min_value()!r}; use a signed extension")
    total = 0.0
    prev = 0.0
    for v, c in zip(d.values, d.cumulative):
        cur = w.fn(min(float(c), 1.0))
        total += v * (cur - prev)
        prev = cur
    return float(total)


def translatable_trace(w: Weight, a: Spectral) -> float:
    """Signed trace via shifting: trace(a + cI) - c with a + cI >= 0.

    Independent of the shift; computed with c = max(0, -min eigenvalue).
    """
    _require_extension_weight(w)
    d = _as_distribution(a)
    c = max(0.0, -d.min_value())
    return choquet_trace(w, d.shift(c)) - c


def symmetric_trace(w: Weight, a: Spectral) -> float:
    """Signed trace via the Jordan parts: trace(a+) - trace(a-)."""
    d = _as_distribution(a)
    plus = d.apply(lambda v: np.maximum(v, 0.0))
    minus = d.apply(lambda v: np.maximum(-v, 0.0))
    return choquet_trace(w, plus) - choquet_trace(w, minus)


def antisymmetric_trace(w: Weight, a: Spectral) -> float:
    """Signed trace weighing the negative part by the dual weight.

    Agrees with :func:`translatable_trace` on every input.
    """
    _require_extension_weight(w)
    d = _as_distribution(a)
    plus = d.apply(lambda v: np.maximum(v, 0.0))
    minus = d.apply(lambda v: np.maximum(-v, 0.0))
    return choquet_trace(w, plus) - choquet_trace(dual_weight(w), minus)


def complex_trace(w: Weight, x) -> complex:
    """Extension to arbitrary square matrices via real and imaginary parts."""
    if isinstance(x, HermitianOperator):
        return complex(translatable_trace(w, x))
    arr = np.asarray(x, dtype=np.complex128)
    re = HermitianOperator(arr)
    im = HermitianOperator(arr / 1j)
    return complex(translatable_trace(w, re), translatable_trace(w, im))


def weighted_norm(w: Weight, p: float, a) -> float:
    """Weighted p-norm: trace(|a|^p)^(1/p).

    Accepts Hermitian operators, spectral distributions, and general
    square matrices (through their singular values).  A norm exactly when
    the weight is concave.
    """
    if p < 1:
        raise BadExponent(f"norm exponent must satisfy p >= 1, got {p}")
    if isinstance(a, SpectralDistribution):
        d = a.apply(np.abs)
    elif isinstance(a, HermitianOperator):
        d = spectral_distribution(a).apply(np.abs)
    else:
        d = singular_distribution(a)
    return choquet_trace(w, d.apply(lambda v: v ** p)) ** (1.0 / p)


@dataclass(frozen=True)
class ChebyshevResult:
    lhs: float
    rhs: float
    holds: bool


def chebyshev_bound(w: Weight, a: Spectral, f: Callable[[float], float],
                    threshold: float, atol: float = 1e-10) -> ChebyshevResult:
    """Tail bound trace(e_[k, inf)(a)) <= trace(f(a)) / f(k).

    ``a`` must be positive and ``f`` increasing and positive on its
    spectrum with f(threshold) > 0.
    """
    fk = float(f(threshold))
    if fk <= 0.0:
        raise BadThreshold(f"f(threshold) = {fk!r} must be positive")
    d = _as_distribution(a)
    scale = max(1.0, abs(d.max_value()))
    if d.min_value() < -_NEGATIVE_TOL * scale:
        raise NegativeSpectrum("Chebyshev bound needs a positive operator")
    tail_mass = float(np.sum(d.weights[d.values >= threshold]))
    lhs = float(w.fn(min(tail_mass, 1.0)))
    rhs = choquet_trace(w, d.apply(f)) / fk
    return ChebyshevResult(lhs=lhs, rhs=rhs, holds=lhs <= rhs + atol)
