"""Choquet integrals against monotone set functions on finite ground sets.

The commutative prototype of the operator machinery: capacities are
bitmask-indexed set functions on {0, ..., N-1}, simple functions are
length-N real vectors, and the three signed variants (symmetric,
anti-symmetric, translatable) mirror the trace extensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (BadParam, MonotonicityViolation, NegativeFunction,
                     NonzeroEmptySet, SizeMismatch)

MAX_GROUND_SIZE = 20


def _subset_label(mask: int) -> str:
    if mask == 0:
        return "{}"
    return "{" + ",".join(str(i) for i in range(mask.bit_length()) if mask >> i & 1) + "}"


@dataclass(frozen=True)
class Capacity:
    """Monotone set function on {0, ..., ground_size-1}.

    ``values[mask]`` is the measure of the subset whose members are the
    set bits of ``mask``.  Validation is exhaustive: the empty set must
    get exactly 0 and every one-point inclusion must be monotone.
    """

    ground_size: int
    values: np.ndarray

    def __post_init__(self):
        n = self.ground_size
        if not 1 <= n <= MAX_GROUND_SIZE:
            raise BadParam(f"ground_size must be in 1..{MAX_GROUND_SIZE}, got {n}")
        values = np.asarray(self.values, dtype=float)
        if values.shape != (1 << n,):
            raise SizeMismatch(
                f"need {1 << n} subset values for ground size {n}, got {values.shape}")
        if not np.all(np.isfinite(values)):
            raise BadParam("capacity values must be finite")
        if values[0] != 0.0:
            raise NonzeroEmptySet(f"empty set has value {values[0]!r}, expected 0")
        idx = np.arange(1 << n)
        for bit in range(n):
            without = idx[(idx >> bit) & 1 == 0]
            bad = np.nonzero(values[without] > values[without | (1 << bit)])[0]
            if bad.size:
                a = int(without[bad[0]])
                b = a | (1 << bit)
                raise MonotonicityViolation(
                    f"{_subset_label(a)} ⊂ {_subset_label(b)} but "
                    f"{values[a]!r} > {values[b]!r}")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def total(self) -> float:
        """Mass of the full ground set."""
        return float(self.values[-1])


make_capacity = Capacity


def dual_capacity(mu: Capacity) -> Capacity:
    """Dual capacity ``B -> mu(X) - mu(complement of B)``."""
    full = (1 << mu.ground_size) - 1
    idx = np.arange(full + 1)
    return Capacity(mu.ground_size, mu.total - mu.values[full ^ idx])


def _as_function(f, n: int) -> np.ndarray:
    values = np.asarray(f, dtype=float)
    if values.shape != (n,):
        raise SizeMismatch(f"function has shape {values.shape}, ground size is {n}")
    if not np.all(np.isfinite(values)):
        raise BadParam("function values must be finite")
    return values


def choquet_integral(f, mu: Capacity) -> float:
    """Choquet integral of a non-negative simple function.

    Uses the sorted-threshold form: with values a_1 >= ... >= a_N and
    upper-level sets B_i of the top i points,
    sum (a_i - a_{i+1}) mu(B_i) + a_N mu(B_N).  Ties are broken by point
    index; telescoping makes the result tie-invariant.
    """
    values = _as_function(f, mu.ground_size)
    if np.any(values < 0):
        raise NegativeFunction(
            "choquet_integral needs f >= 0; use a signed variant instead")
    order = np.argsort(-values, kind="stable")
    total = 0.0
    mask = 0
    for rank, point in enumerate(order):
        mask |= 1 << int(point)
        upper = float(mu.values[mask])
        if rank + 1 < len(order):
            total += (values[point] - values[order[rank + 1]]) * upper
        else:
            total += values[point] * upper
    return float(total)


def _split(values: np.ndarray):
    plus = np.maximum(values, 0.0)
    minus = np.maximum(-values, 0.0)
    return plus, minus


def symmetric_choquet(f, mu: Capacity) -> float:
    """Symmetric signed integral: C(f+) - C(f-)."""
    plus, minus = _split(_as_function(f, mu.ground_size))
    return choquet_integral(plus, mu) - choquet_integral(minus, mu)


def antisymmetric_choquet(f, mu: Capacity) -> float:
    """Anti-symmetric signed integral: C(f+) - C(f-) against the dual."""
    plus, minus = _split(_as_function(f, mu.ground_size))
    return choquet_integral(plus, mu) - choquet_integral(minus, dual_capacity(mu))


def translatable_choquet(f, mu: Capacity, lower: float | None = None) -> float:
    """Translatable signed integral: C(f - b) + b*mu(X) for any b <= min f.

    The value does not depend on the choice of ``b``; the default is
    min(0, min f) so non-negative inputs reduce to the plain integral.
    """
    values = _as_function(f, mu.ground_size)
    b = min(0.0, float(values.min())) if lower is None else float(lower)
    if b > values.min():
        raise BadParam(f"lower bound {b} exceeds min f = {values.min()}")
    return choquet_integral(values - b, mu) + b * mu.total


def is_comonotone(f, g) -> bool:
    """True when no point pair orders f and g oppositely."""
    fv = np.asarray(f, dtype=float)
    gv = np.asarray(g, dtype=float)
    if fv.shape != gv.shape:
        raise SizeMismatch(f"shapes {fv.shape} and {gv.shape} differ")
    df = fv[:, None] - fv[None, :]
    dg = gv[:, None] - gv[None, :]
    return bool(np.all(df * dg >= 0.0))
