"""Operator-sequence models: commuting coin-toss projections, Powers
anticommuting unitary families and their periodic variants, and the
tensor-shift model behind the subadditive norm sequence.

Analytic spectra (exact binomial weights) carry the large-n work;
explicit tensor matrices certify the algebra at small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadParam, DimensionOverflow, ShapeError
from .spectra import HermitianOperator, SpectralDistribution, operator_norm
from .trace import _require_extension_weight, choquet_trace
from .weights import CONCAVE, LINEAR, UNKNOWN, Weight, classify_shape

MAX_ANALYTIC_N = 8192
MAX_TENSOR_FACTORS = 12  # dimension 2^12 = 4096

_E0 = np.array([[1.0, 0.0], [0.0, 0.0]])
_X = np.array([[1.0, 0.0], [0.0, -1.0]])
_Y = np.array([[0.0, 1.0], [1.0, 0.0]])


@lru_cache(maxsize=64)
def _binomial_row(n: int) -> tuple[int, ...]:
    """Row n of Pascal's triangle as exact integers."""
    row = [1] * (n + 1)
    c = 1
    for k in range(1, n + 1):
        c = c * (n - k + 1) // k
        row[k] = c
    return tuple(row)


def _binomial_weights(n: int) -> np.ndarray:
    """C(n, k) / 2^n for k = 0..n, each correctly rounded to float."""
    denom = 1 << n
    return np.asarray([c / denom for c in _binomial_row(n)])


def _check_tensor_budget(n: int) -> None:
    if n < 1:
        raise BadParam(f"need at least one tensor factor, got {n}")
    if n > MAX_TENSOR_FACTORS:
        raise DimensionOverflow(
            f"{n} tensor factors means dimension {2 ** n} > {2 ** MAX_TENSOR_FACTORS}")


def _embed(local: np.ndarray, left: int, right: int) -> np.ndarray:
    """Kronecker-embed a block between identity factors on 2^left / 2^right."""
    out = local
    if left:
        out = np.kron(np.eye(1 << left), out)
    if right:
        out = np.kron(out, np.eye(1 << right))
    return out


def coin_toss_matrix(n: int) -> HermitianOperator:
    """p_1 + ... + p_n on n tensor factors, p_i = rank-one on site i."""
    _check_tensor_budget(n)
    dim = 1 << n
    total = np.zeros((dim, dim))
    for i in range(n):
        total += _embed(_E0, i, n - 1 - i)
    return HermitianOperator(total)


@dataclass(frozen=True)
class CoinTossModel:
    """Affine images a_i = scale * p_i + offset * I of coin-toss projections.

    scale=1, offset=0 is the plain projection sequence; (2, -1) is the
    signed +/-1 coin; (-1, 0) is the negated coin.
    """

    scale: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if self.scale == 0:
            raise BadParam("scale must be non-zero")

    def summand_norm(self) -> float:
        """Exact bound on ||a_i|| (each spectrum is {offset, scale + offset})."""
        return max(abs(self.offset), abs(self.scale + self.offset))

    def average_distribution(self, n: int) -> SpectralDistribution:
        """Spectrum of (a_1 + ... + a_n) / n with exact binomial weights."""
        if not 1 <= n <= MAX_ANALYTIC_N:
            raise DimensionOverflow(f"n must be in 1..{MAX_ANALYTIC_N}, got {n}")
        k = np.arange(n + 1)
        values = self.scale * ((n - k) / n) + self.offset
        return SpectralDistribution.from_atoms(values, _binomial_weights(n))

    def sum_distribution(self, n: int) -> SpectralDistribution:
        """Spectrum of the unnormalized sum a_1 + ... + a_n."""
        if not 1 <= n <= MAX_ANALYTIC_N:
            raise DimensionOverflow(f"n must be in 1..{MAX_ANALYTIC_N}, got {n}")
        k = np.arange(n + 1)
        values = self.scale * (n - k).astype(float) + self.offset * n
        return SpectralDistribution.from_atoms(values, _binomial_weights(n))

    def product_distribution(self, k: int) -> SpectralDistribution:
        """Spectrum of a product over k distinct indices.

        The projections commute and carry independent fair bits, so the
        product of (scale * p + offset) over k distinct sites takes value
        (scale + offset)^j * offset^(k-j) with weight C(k, j) / 2^k.
        """
        if k < 1:
            raise BadParam(f"product order must be >= 1, got {k}")
        j = np.arange(k + 1)
        values = (self.scale + self.offset) ** j * self.offset ** (k - j).astype(float)
        return SpectralDistribution.from_atoms(values, _binomial_weights(k))

    def matrix(self, n: int) -> HermitianOperator:
        """Explicit 2^n-dimensional sum, for cross-validating the spectra."""
        base = coin_toss_matrix(n)
        return HermitianOperator(self.scale * base.matrix
                                 + (self.offset * n) * np.eye(base.dim))


@dataclass(frozen=True)
class NormBound:
    """||s_n / n|| for a Powers family: exact at period 1, otherwise an
    upper bound from subsequence splitting, evaluated at ``n_used``."""

    value: float
    exact: bool
    n_used: int


@dataclass(frozen=True)
class GapResult:
    """||U_{2n} - U_n|| between successive scaled partial sums."""

    matrix_gap: float
    analytic: float
    lower_bound: float


@dataclass(frozen=True)
class PowersShiftModel:
    """Self-adjoint unitaries u_i that anticommute at index gaps divisible
    by ``period`` and commute at every other gap.

    period=1 is the fully anticommuting family realized by the standard
    spin construction; larger periods interleave ``period`` independent
    anticommuting families on separate tensor legs.
    """

    period: int = 1

    def __post_init__(self):
        if self.period < 1:
            raise BadParam(f"period must be >= 1, got {self.period}")

    def anticommutes(self, gap: int) -> bool:
        """Sign pattern: anticommute exactly at non-zero multiples of period."""
        if gap < 0:
            raise BadParam("gap must be non-negative")
        return gap != 0 and gap % self.period == 0

    def _leg_offsets(self, n: int) -> list[int]:
        sizes = [len(range(r, n, self.period)) for r in range(self.period)]
        return [sum(sizes[:r]) for r in range(self.period)]

    def _site_matrix(self, i: int, n: int, leg_offsets: list[int]) -> np.ndarray:
        """u_i embedded in the 2^n-dimensional algebra (real entries)."""
        q, r = divmod(i, self.period)
        local = _X
        for _ in range(q):
            local = np.kron(_Y, local)
        left = leg_offsets[r]
        return _embed(local, left, n - left - q - 1)

    def unitaries(self, n: int) -> list[HermitianOperator]:
        """The first n family members as explicit 2^n-dimensional matrices."""
        _check_tensor_budget(n)
        offsets = self._leg_offsets(n)
        return [HermitianOperator(self._site_matrix(i, n, offsets))
                for i in range(n)]

    def sum_matrix(self, n: int) -> HermitianOperator:
        """u_0 + ... + u_{n-1}, accumulated to keep peak memory low."""
        _check_tensor_budget(n)
        offsets = self._leg_offsets(n)
        dim = 1 << n
        total = np.zeros((dim, dim))
        for i in range(n):
            total += self._site_matrix(i, n, offsets)
        return HermitianOperator(total)

    def average_norm(self, n: int) -> NormBound:
        """Operator norm of s_n / n.

        Period 1 gives exactly n^(-1/2).  Larger periods are evaluated at
        the nearest positive multiple of the period, where splitting into
        anticommuting subsequences bounds the norm by the mean of the
        exact subsequence-average norms.
        """
        if n < 1:
            raise BadParam(f"n must be >= 1, got {n}")
        K = self.period
        if K == 1:
            return NormBound(value=n ** -0.5, exact=True, n_used=n)
        n_used = max(K, K * round(n / K))
        bound = sum(1.0 / math.sqrt(math.ceil((n_used - r) / K)) for r in range(K)) / K
        return NormBound(value=bound, exact=False, n_used=n_used)

    def average_distribution(self, n: int) -> SpectralDistribution:
        """Spectrum of s_n / n at period 1: atoms +/- n^(-1/2), mass 1/2 each."""
        if self.period != 1:
            raise BadParam("exact average spectrum needs period 1")
        if n < 1:
            raise BadParam(f"n must be >= 1, got {n}")
        r = n ** -0.5
        return SpectralDistribution.from_atoms([r, -r], [0.5, 0.5])

    def clt_moment(self, w: Weight, k: int) -> float:
        """Trace of (s_n / sqrt(n))^k: 1 for even k, 2 w(1/2) - 1 for odd.

        s_n / sqrt(n) is a traceless self-adjoint unitary, so the value
        does not depend on n.
        """
        if k < 1:
            raise BadParam(f"moment order must be >= 1, got {k}")
        _require_extension_weight(w)
        if k % 2 == 0:
            return 1.0
        return 2.0 * float(w.fn(0.5)) - 1.0

    def nonconvergence_gap(self, n: int) -> GapResult:
        """||U_{2n} - U_n|| from explicit matrices, with the analytic value.

        U_m = s_m / sqrt(m).  The difference is a real combination of two
        anticommuting self-adjoint unitaries, hence has norm exactly
        sqrt((1/sqrt(2) - 1)^2 + 1/2) = sqrt(2 - sqrt(2)) >= 1/sqrt(2),
        independent of n.
        """
        if self.period != 1:
            raise BadParam("the gap construction needs period 1")
        m = 2 * n
        _check_tensor_budget(m)
        offsets = self._leg_offsets(m)
        dim = 1 << m
        acc = np.zeros((dim, dim))
        first_half = None
        for i in range(m):
            acc += self._site_matrix(i, m, offsets)
            if i == n - 1:
                first_half = acc.copy()
        diff = HermitianOperator(acc / math.sqrt(m) - first_half / math.sqrt(n))
        gap = operator_norm(diff)
        analytic = math.sqrt(2.0 - math.sqrt(2.0))
        lower = 1.0 / math.sqrt(2.0)
        if gap < lower - 1e-10:
            raise ArithmeticError(f"gap {gap} fell below the proven bound {lower}")
        return GapResult(matrix_gap=gap, analytic=analytic, lower_bound=lower)


@dataclass(frozen=True)
class ShiftModel:
    """Trace-preserving tensor-shift picture of a positive sequence.

    The shift makes the weighted norms of partial sums subadditive, so
    x_n / n converges to its infimum (Fekete).
    """

    base: CoinTossModel = CoinTossModel()

    def fekete_sequence(self, w: Weight, k: int, n_max: int) -> np.ndarray:
        """x_n = trace(|s_n|^k)^(1/k) for n = 1..n_max, computed analytically."""
        if k < 1:
            raise BadParam(f"norm order must be >= 1, got {k}")
        shape = w.shape if w.shape != UNKNOWN else classify_shape(w)
        if shape not in (CONCAVE, LINEAR):
            raise ShapeError(
                f"subadditivity needs a concave weight, got shape {shape!r}")
        out = np.empty(n_max)
        for n in range(1, n_max + 1):
            d = self.base.sum_distribution(n).apply(lambda v: np.abs(v) ** k)
            out[n - 1] = choquet_trace(w, d) ** (1.0 / k)
        return out
