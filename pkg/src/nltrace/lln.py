"""Law-of-large-numbers machinery: moment sequences of operator averages,
the distinct-tuple finite-n bound, limit envelopes, independence
predicates, tail estimates, and the absolutely-monotone corollary.

Averages of a non-additive trace need not converge, so limits are
bracketed: an upper envelope from the concave side of the weight pair
and a lower envelope from the convex side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (BadOrder, BadParam, DimensionMismatch, DomainError,
                     EmptySequence, NegativeCoefficient, NegativeSpectrum,
                     ShapeError)
from .models import CoinTossModel, PowersShiftModel
from .spectra import HermitianOperator
from .trace import choquet_trace, complex_trace, translatable_trace
from .weights import CONCAVE, CONVEX, LINEAR, UNKNOWN, Weight, classify_shape, dual_weight

_BOUND_TOL = 1e-9


def _effective_shape(w: Weight) -> str:
    return w.shape if w.shape != UNKNOWN else classify_shape(w)


def _concave_convex_pair(w: Weight) -> tuple[Weight, Weight]:
    """Split {w, dual(w)} into (concave member, convex member)."""
    shape = _effective_shape(w)
    if shape == LINEAR:
        return w, w
    if shape == CONCAVE:
        return w, dual_weight(w)
    if shape == CONVEX:
        return dual_weight(w), w
    raise ShapeError(f"weight {w.name!r} is neither concave nor convex")


@dataclass(frozen=True)
class BoundEnvelope:
    """Limit bracket [lower, upper] for the k-th moments of a model."""

    upper: float
    lower: float
    k: int
    source: str

    def __post_init__(self):
        if self.lower > self.upper + 1e-15:
            raise BadParam(f"lower {self.lower} exceeds upper {self.upper}")


def envelope(model: CoinTossModel, w: Weight, k: int) -> BoundEnvelope:
    """Accumulation-point bracket for trace((s_n/n)^k).

    Both ends are the signed trace of the distinct-index product
    spectrum: the concave member of {w, dual(w)} caps the limsup, the
    convex member floors the liminf.
    """
    concave_w, convex_w = _concave_convex_pair(w)
    prod = model.product_distribution(k)
    upper = translatable_trace(concave_w, prod)
    lower = translatable_trace(convex_w, prod)
    return BoundEnvelope(upper=upper, lower=lower, k=k,
                         source=f"{model!r}/{w.name}")


def moment_sequence(model, w: Weight, k: int, n_list: Sequence[int]) -> list[float]:
    """Signed trace of ((a_1 + ... + a_n) / n)^k for each n in n_list."""
    if k < 1:
        raise BadParam(f"moment order must be >= 1, got {k}")
    if not isinstance(model, (CoinTossModel, PowersShiftModel)):
        raise BadParam(f"unsupported model {type(model)!r}")
    out = []
    for n in n_list:
        d = model.average_distribution(n).power(k)
        out.append(translatable_trace(w, d))
    return out


def finite_n_bound(w: Weight, c_k: float, k_norm: float, k: int, n: int) -> float:
    """Finite-n upper bound from the distinct-tuple decomposition.

    Splitting the expanded k-th power of the sum into tuples with all
    indices distinct (fraction n!/(n-k)!/n^k, each bounded by c_k) and
    the rest (bounded by the norm bound k_norm^k) gives
    ratio * c_k + (1 - ratio) * k_norm^k, which tends to c_k.
    Needs a concave weight for the triangle inequality behind the split.
    """
    if k < 1:
        raise BadParam(f"moment order must be >= 1, got {k}")
    if k > n:
        raise BadOrder(f"order k = {k} exceeds n = {n}")
    if _effective_shape(w) not in (CONCAVE, LINEAR):
        raise ShapeError(f"the decomposition bound needs a concave weight, "
                         f"got {w.shape!r}")
    ratio = math.perm(n, k) / n ** k
    return ratio * c_k + (1.0 - ratio) * k_norm ** k


def finite_n_lower_bound(w: Weight, c_hat_k: float, k_norm: float,
                         k: int, n: int) -> float:
    """Finite-n lower bound, mirror of :func:`finite_n_bound`.

    The convex-side superadditivity gives
    ratio * c_hat_k - (1 - ratio) * k_norm^k.
    """
    if k < 1:
        raise BadParam(f"moment order must be >= 1, got {k}")
    if k > n:
        raise BadOrder(f"order k = {k} exceeds n = {n}")
    if _effective_shape(w) not in (CONVEX, LINEAR):
        raise ShapeError(f"the lower decomposition bound needs a convex weight, "
                         f"got {w.shape!r}")
    ratio = math.perm(n, k) / n ** k
    return ratio * c_hat_k - (1.0 - ratio) * k_norm ** k


@dataclass(frozen=True)
class IndependenceViolation:
    indices: tuple[int, ...]
    lhs: float | complex
    rhs: float


@dataclass(frozen=True)
class IndependenceReport:
    kind: str
    passed: bool
    tuples_checked: int
    violation: IndependenceViolation | None


_KINDS = ("independent", "sub", "super")


def independence_check(family: Sequence[HermitianOperator], w: Weight,
                       kind: str, max_order: int,
                       atol: float = 1e-9) -> IndependenceReport:
    """Check the product identity of independence over distinct tuples.

    ``independent`` compares the trace of the raw product with the
    product of the single traces; ``sub``/``super`` compare the trace of
    the self-adjoint real part against the same product, as <= / >=.
    Stops at the first violation.
    """
    if kind not in _KINDS:
        raise BadParam(f"kind must be one of {_KINDS}, got {kind!r}")
    if max_order < 1:
        raise BadParam("max_order must be >= 1")
    if not family:
        raise BadParam("family must be non-empty")
    dims = {a.dim for a in family}
    if len(dims) != 1:
        raise DimensionMismatch(f"family mixes dimensions {sorted(dims)}")
    singles = [translatable_trace(w, a) for a in family]
    checked = 0

    def tuples(order):
        from itertools import permutations
        return permutations(range(len(family)), order)

    for order in range(1, min(max_order, len(family)) + 1):
        for idx in tuples(order):
            prod = family[idx[0]].matrix
            for j in idx[1:]:
                prod = prod @ family[j].matrix
            rhs = math.prod(singles[j] for j in idx)
            if kind == "independent":
                lhs = complex_trace(w, prod)
                ok = abs(lhs - rhs) <= atol
            else:
                lhs = translatable_trace(w, HermitianOperator(prod))
                ok = lhs <= rhs + atol if kind == "sub" else lhs >= rhs - atol
            checked += 1
            if not ok:
                return IndependenceReport(kind, False, checked,
                                          IndependenceViolation(idx, lhs, rhs))
    return IndependenceReport(kind, True, checked, None)


def tail_interval(values: Sequence[float], tail_fraction: float) -> tuple[float, float]:
    """(min, max) over the final ceil(tail_fraction * len) entries."""
    seq = list(values)
    if not seq:
        raise EmptySequence("no values to take a tail of")
    if not 0.0 < tail_fraction <= 1.0:
        raise DomainError(f"tail_fraction must be in (0, 1], got {tail_fraction}")
    count = math.ceil(tail_fraction * len(seq))
    tail = seq[-count:]
    return min(tail), max(tail)


@dataclass(frozen=True)
class AbsolutelyMonotoneReport:
    """Per-n values of trace(f(s_n/n)) against the limit bound f(m)."""

    n_list: tuple[int, ...]
    values: tuple[float, ...]
    limit_bound: float
    finite_bounds: tuple[float | None, ...]
    tail: tuple[float, float]
    tail_ok: bool
    rows_ok: bool


def absolutely_monotone_check(model: CoinTossModel, w: Weight,
                              coeffs: Sequence[float], n_list: Sequence[int],
                              tail_fraction: float = 0.25,
                              tail_slack: float = 0.02) -> AbsolutelyMonotoneReport:
    """Evaluate trace(f(s_n/n)) for f(x) = sum coeffs[i] x^(i+1).

    Needs non-negative coefficients (absolutely monotone series with zero
    constant term), a concave weight, and a positive-valued model.  The
    finite spectrum makes f exact: no series truncation happens here.
    Each value is compared with the coefficient-weighted finite-n bound;
    the tail of the sequence is compared with f(m), m the common trace of
    the single summands.
    """
    coeffs = [float(c) for c in coeffs]
    if any(c < 0 for c in coeffs):
        raise NegativeCoefficient(f"coefficients must be >= 0, got {coeffs}")
    if not coeffs or all(c == 0 for c in coeffs):
        raise BadParam("need at least one positive coefficient")
    if _effective_shape(w) not in (CONCAVE, LINEAR):
        raise ShapeError("the absolutely monotone bound needs a concave weight")
    if min(model.offset, model.scale + model.offset) < 0:
        raise NegativeSpectrum("model must produce positive operators")

    def f(x):
        acc = np.zeros_like(np.asarray(x, dtype=float))
        for c in reversed(coeffs):
            acc = (acc + c) * x
        return acc

    m = translatable_trace(w, model.average_distribution(1))
    limit_bound = float(f(m))
    k_norm = model.summand_norm()
    uppers = [envelope(model, w, k).upper for k in range(1, len(coeffs) + 1)]

    values: list[float] = []
    finite_bounds: list[float | None] = []
    for n in n_list:
        d = model.average_distribution(n).apply(f)
        values.append(choquet_trace(w, d))
        if n >= len(coeffs):
            bound = sum(c * finite_n_bound(w, uppers[i], k_norm, i + 1, n)
                        for i, c in enumerate(coeffs))
            finite_bounds.append(float(bound))
        else:
            finite_bounds.append(None)

    rows_ok = all(b is None or v <= b + _BOUND_TOL
                  for v, b in zip(values, finite_bounds))
    tail = tail_interval(values, tail_fraction)
    tail_ok = tail[1] <= limit_bound + tail_slack
    return AbsolutelyMonotoneReport(
        n_list=tuple(int(n) for n in n_list), values=tuple(values),
        limit_bound=limit_bound, finite_bounds=tuple(finite_bounds),
        tail=tail, tail_ok=tail_ok, rows_ok=rows_ok)
