"""Weight functions on [0, 1].

A weight turns the trace of a spectral projection into a "weighted
dimension"; it is the commutative dial that makes the operator trace
non-linear.  Weights are monotone increasing with ``w(0) = 0`` and,
except for the Ky Fan built-in, ``w(1) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import BadParam, DiscontinuousWeight, DomainError, UnknownName

LINEAR = "linear"
CONCAVE = "concave"
CONVEX = "convex"
NEITHER = "neither"
UNKNOWN = "unknown"

_SHAPE_FLIP = {LINEAR: LINEAR, CONCAVE: CONVEX, CONVEX: CONCAVE,
               NEITHER: NEITHER, UNKNOWN: UNKNOWN}

_VALIDATION_GRID = 129
_MONOTONE_SLACK = 1e-12
_MIDPOINT_TOL = 1e-10


@dataclass(frozen=True)
class Weight:
    """A monotone weight on [0, 1] with shape metadata.

    ``total`` is the value at 1; it equals 1 for every weight except the
    Ky Fan built-in, which is deliberately left unnormalized.
    """

    fn: Callable[[float], float]
    name: str
    shape: str = UNKNOWN
    continuous: bool = True
    total: float = 1.0
    dual_fn: Callable[[float], float] | None = field(default=None, repr=False)

    def __call__(self, t: float) -> float:
        return eval_weight(self, t)

    @property
    def normalized(self) -> bool:
        return self.total == 1.0


def eval_weight(w: Weight, t: float) -> float:
    """Evaluate ``w`` at ``t``; raises DomainError outside [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"weight argument {t!r} outside [0, 1]")
    return float(w.fn(t))


def make_weight(fn, name, shape=UNKNOWN, continuous=True, total=1.0,
                dual_fn=None, grid=_VALIDATION_GRID):
    """Build a weight from an evaluator, checking the defining invariants.

    The endpoint values and monotonicity are verified on a uniform grid;
    user evaluators with no symbolic form get their shape from
    :func:`classify_shape` unless one is supplied.
    """
    w = Weight(fn=fn, name=name, shape=shape, continuous=continuous,
               total=total, dual_fn=dual_fn)
    if abs(w.fn(0.0)) > 1e-12:
        raise BadParam(f"weight {name!r}: w(0) = {w.fn(0.0)!r}, expected 0")
    if abs(w.fn(1.0) - total) > 1e-12:
        raise BadParam(f"weight {name!r}: w(1) = {w.fn(1.0)!r}, expected {total}")
    prev = 0.0
    for i in range(1, grid + 1):
        cur = float(w.fn(i / grid))
        if cur < prev - _MONOTONE_SLACK:
            raise BadParam(f"weight {name!r} decreases near t = {i / grid}")
        if cur < -_MONOTONE_SLACK or cur > total + 1e-12:
            raise BadParam(f"weight {name!r} leaves [0, {total}] at t = {i / grid}")
        prev = cur
    if shape == UNKNOWN:
        w = Weight(fn=fn, name=name, shape=classify_shape(w, grid),
                   continuous=continuous, total=total, dual_fn=dual_fn)
    return w


def dual_weight(w: Weight) -> Weight:
    """Dual weight ``t -> w(1) - w(1 - t)``; swaps concave and convex."""
    if not w.continuous:
        raise DiscontinuousWeight(
            f"dual of discontinuous weight {w.name!r} is not a valid weight")
    total = w.total
    fn = w.dual_fn if w.dual_fn is not None else (lambda t, f=w.fn: total - f(1.0 - t))
    return Weight(fn=fn, name=f"dual({w.name})", shape=_SHAPE_FLIP[w.shape],
                  continuous=True, total=total, dual_fn=w.fn)


def classify_shape(w: Weight, grid_size: int = 33) -> str:
    """Classify a weight as linear/concave/convex/neither by midpoint tests.

    All grid pairs are tested; ``linear`` requires the concave and convex
    tests to pass simultaneously.
    """
    if grid_size < 3:
        raise BadParam("grid_size must be at least 3")
    pts = [i / (grid_size - 1) for i in range(grid_size)]
    vals = [float(w.fn(t)) for t in pts]
    concave = convex = True
    for i in range(grid_size):
        for j in range(i + 1, grid_size):
            mid = float(w.fn((pts[i] + pts[j]) / 2.0))
            mean = (vals[i] + vals[j]) / 2.0
            if mid < mean - _MIDPOINT_TOL:
                concave = False
            if mid > mean + _MIDPOINT_TOL:
                convex = False
        if not concave and not convex:
            return NEITHER
    if concave and convex:
        return LINEAR
    return CONCAVE if concave else CONVEX


def stieltjes_increment(w: Weight, lo: float, hi: float) -> float:
    """Mass the weight's Stieltjes measure gives to [lo, hi)."""
    if not 0.0 <= lo <= hi <= 1.0:
        raise DomainError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi})")
    return float(w.fn(hi)) - float(w.fn(lo))


def _power_weight(p: float) -> Weight:
    if p <= 0:
        raise BadParam(f"power weight needs p > 0, got {p}")
    shape = LINEAR if p == 1 else (CONCAVE if p < 1 else CONVEX)
    return Weight(fn=lambda t: t ** p, name=f"power:{p:g}", shape=shape,
                  dual_fn=lambda t: 1.0 - (1.0 - t) ** p)


def _kyfan_weight(t0: float) -> Weight:
    if not 0.0 < t0 <= 1.0:
        raise BadParam(f"kyfan weight needs t0 in (0, 1], got {t0}")
    # Unnormalized on purpose: total mass t0 gives the partial
    # sum-of-top-eigenvalues semantics of the Ky Fan norm.
    return Weight(fn=lambda t: min(t, t0), name=f"kyfan:{t0:g}", shape=CONCAVE,
                  total=t0, dual_fn=lambda t: max(t0 - 1.0 + t, 0.0))


def _supnorm_weight() -> Weight:
    # Jump at 0+ recovers the operator norm on positives; rejected by the
    # signed extensions, which need continuity.
    return Weight(fn=lambda t: 0.0 if t == 0.0 else 1.0, name="supnorm",
                  shape=CONCAVE, continuous=False)


_FIXED_BUILTINS: dict[str, Callable[[], Weight]] = {
    "identity": lambda: Weight(fn=lambda t: t, name="identity", shape=LINEAR,
                               dual_fn=lambda t: t),
    "sqrt": lambda: Weight(fn=lambda t: t ** 0.5, name="sqrt", shape=CONCAVE,
                           dual_fn=lambda t: 1.0 - (1.0 - t) ** 0.5),
    "square": lambda: Weight(fn=lambda t: t * t, name="square", shape=CONVEX,
                             dual_fn=lambda t: 2.0 * t - t * t),
    "supnorm": _supnorm_weight,
}

_PARAM_BUILTINS: dict[str, Callable[[float], Weight]] = {
    "power": _power_weight,
    "kyfan": _kyfan_weight,
}


def builtin_weight(spec: str) -> Weight:
    """Look up a built-in weight by its selection string.

    Accepted: ``identity``, ``sqrt``, ``square``, ``power:p``,
    ``kyfan:t0``, ``supnorm``.
    """
    name, sep, arg = spec.partition(":")
    name = name.strip()
    if name in _FIXED_BUILTINS:
        if sep:
            raise BadParam(f"weight {name!r} takes no parameter")
        return _FIXED_BUILTINS[name]()
    if name in _PARAM_BUILTINS:
        if not sep or not arg.strip():
            raise BadParam(f"weight {name!r} needs a parameter, e.g. {name}:0.5")
        try:
            value = float(arg)
        except ValueError:
            raise BadParam(f"cannot parse parameter {arg!r} for weight {name!r}")
        return _PARAM_BUILTINS[name](value)
    raise UnknownName(f"no built-in weight named {name!r}")
