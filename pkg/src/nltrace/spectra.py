"""Hermitian matrix engine: eigendecomposition, spectral distributions,
generalized eigenvalues/singular values, functional calculus, tensors.

Distributions carry (value, trace-weight) atoms so that analytic models
(binomial spectra at huge n) bypass matrices entirely; matrices exist to
certify the analytic paths at small dimension.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (BadParam, ConvergenceFailure, DimensionOverflow,
                     DomainError)

MAX_DIM = 4096
_HERMITICITY_TOL = 1e-12
_WEIGHT_SUM_TOL = 1e-10


class HermitianOperator:
    """Dense complex Hermitian matrix under the normalized trace.

    Construction symmetrizes the input as (a + a*)/2, so the conjugate
    symmetry invariant holds by fiat; genuinely non-Hermitian input is
    the caller's bug.  The stored array is read-only.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        arr = np.asarray(matrix)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise BadParam(f"need a square matrix, got shape {arr.shape}")
        if arr.shape[0] > MAX_DIM:
            raise DimensionOverflow(f"dimension {arr.shape[0]} exceeds {MAX_DIM}")
        half = arr.astype(np.complex128) * 0.5
        sym = half + half.conj().T
        sym.setflags(write=False)
        self.matrix = sym

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __add__(self, other):
        if isinstance(other, HermitianOperator):
            return HermitianOperator(self.matrix + other.matrix)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, HermitianOperator):
            return HermitianOperator(self.matrix - other.matrix)
        return NotImplemented

    def __mul__(self, scalar):
        if isinstance(scalar, (int, float)):
            return HermitianOperator(self.matrix * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        return f"HermitianOperator(dim={self.dim})"


def identity_operator(dim: int) -> HermitianOperator:
    return HermitianOperator(np.eye(dim))


def _matrix_of(a) -> np.ndarray:
    return a.matrix if isinstance(a, HermitianOperator) else np.asarray(a, dtype=np.complex128)


def eigen_decompose(a: HermitianOperator):
    """Eigenvalues in decreasing order with a matching orthonormal frame."""
    try:
        vals, vecs = np.linalg.eigh(_matrix_of(a))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed: {exc}") from exc
    return vals[::-1].copy(), vecs[:, ::-1].copy()


def _eigenvalues(a) -> np.ndarray:
    try:
        vals = np.linalg.eigvalsh(_matrix_of(a))
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver failed: {exc}") from exc
    return vals[::-1].copy()


@dataclass(frozen=True)
class SpectralDistribution:
    """Atoms (value, weight) with strictly decreasing values.

    Weights are trace masses and must sum to 1.  ``cumulative[i]`` is the
    compensated partial sum of the first i+1 weights, used by the
    generalized eigenvalue lookup and by the trace integrals.
    """

    values: np.ndarray
    weights: np.ndarray
    cumulative: np.ndarray

    @classmethod
    def from_atoms(cls, values, weights, merge_tol: float = 0.0):
        """Sort atoms by decreasing value and merge near-equal values.

        Merged groups take the weighted mean of their values, so huge
        multiplicities survive eigensolver noise intact.
        """
        vals = np.asarray(values, dtype=float)
        wts = np.asarray(weights, dtype=float)
        if vals.shape != wts.shape or vals.ndim != 1 or vals.size == 0:
            raise BadParam("need equal-length, non-empty value/weight vectors")
        if not (np.all(np.isfinite(vals)) and np.all(np.isfinite(wts))):
            raise BadParam("atoms must be finite")
        if np.any(wts <= 0):
            raise BadParam("atom weights must be positive")
        order = np.argsort(-vals, kind="stable")
        vals = vals[order]
        wts = wts[order]
        out_v: list[float] = []
        out_w: list[float] = []
        for v, w in zip(vals, wts):
            if out_v and out_v[-1] - v <= merge_tol:
                merged = out_w[-1] + w
                out_v[-1] += (v - out_v[-1]) * (w / merged)
                out_w[-1] = merged
            else:
                out_v.append(float(v))
                out_w.append(float(w))
        return cls._build(np.asarray(out_v), np.asarray(out_w))

    @classmethod
    def _build(cls, vals: np.ndarray, wts: np.ndarray):
        # Kahan compensated prefix sums: the weights of binomial models
        # span many orders of magnitude and alpha is applied right at the
        # cumulative tails.
        cum = np.empty_like(wts)
        total = 0.0
        comp = 0.0
        for i, w in enumerate(wts):
            y = w - comp
            t = total + y
            comp = (t - total) - y
            total = t
            cum[i] = t
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise BadParam(f"atom weights sum to {total!r}, expected 1")
        vals.setflags(write=False)
        wts.setflags(write=False)
        cum.setflags(write=False)
        return cls(vals, wts, cum)

    @property
    def size(self) -> int:
        return self.values.size

    def apply(self, f) -> "SpectralDistribution":
        """Distribution of f(a): map atom values, re-sort, merge exact ties."""
        try:
            mapped = np.asarray(f(self.values), dtype=float)
            if mapped.shape != self.values.shape:
                raise TypeError
        except Exception:
            mapped = np.asarray([float(f(v)) for v in self.values])
        return SpectralDistribution.from_atoms(mapped, self.weights)

    def power(self, k: int) -> "SpectralDistribution":
        return self.apply(lambda v: v ** k)

    def shift(self, c: float) -> "SpectralDistribution":
        # Order is unchanged, so rebuild directly without re-merging.
        return SpectralDistribution._build(self.values + c, self.weights.copy())

    def scale(self, c: float) -> "SpectralDistribution":
        if c == 0:
            raise BadParam("scale must be non-zero")
        return self.apply(lambda v: v * c)

    def min_value(self) -> float:
        return float(self.values[-1])

    def max_value(self) -> float:
        return float(self.values[0])


def spectral_scale(a) -> float:
    """max(1, ||a||): reference scale for merge and residual tolerances."""
    vals = _eigenvalues(a)
    return max(1.0, float(np.max(np.abs(vals))) if vals.size else 0.0)


def spectral_distribution(a: HermitianOperator) -> SpectralDistribution:
    """Eigenvalue distribution of a under the normalized trace."""
    vals = _eigenvalues(a)
    n = vals.size
    tol = 1e-9 * max(1.0, float(np.max(np.abs(vals))))
    return SpectralDistribution.from_atoms(vals, np.full(n, 1.0 / n), merge_tol=tol)


def singular_distribution(a) -> SpectralDistribution:
    """Distribution of |a| = (a* a)^(1/2) for any square matrix."""
    arr = _matrix_of(a)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise BadParam(f"need a square matrix, got shape {arr.shape}")
    try:
        svals = np.linalg.svd(arr, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"singular value solver failed: {exc}") from exc
    n = svals.size
    tol = 1e-9 * max(1.0, float(svals[0]) if n else 0.0)
    return SpectralDistribution.from_atoms(svals, np.full(n, 1.0 / n), merge_tol=tol)


def generalized_eigenvalue(d: SpectralDistribution, t: float) -> float:
    """Right-continuous decreasing rearrangement of the spectrum.

    Equals value v_i on [c_{i-1}, c_i) where c_i is the trace mass of the
    i largest distinct values.
    """
    if not 0.0 <= t < 1.0:
        raise DomainError(f"t = {t!r} outside [0, 1)")
    i = bisect_right(d.cumulative.tolist(), t)
    return float(d.values[min(i, d.size - 1)])


def generalized_singular_value(a, t: float) -> float:
    """Generalized eigenvalue of |a| at t, for any square matrix."""
    return generalized_eigenvalue(singular_distribution(a), t)


def functional_calculus(a: HermitianOperator, f) -> HermitianOperator:
    """f(a): same eigenframe, eigenvalues mapped through the real map f."""
    vals, vecs = eigen_decompose(a)
    mapped = np.asarray([float(f(v)) for v in vals])
    return HermitianOperator((vecs * mapped) @ vecs.conj().T)


def positive_negative_parts(a: HermitianOperator):
    """Jordan decomposition a = a_+ - a_- with a_+ a_- = 0."""
    vals, vecs = eigen_decompose(a)
    plus = HermitianOperator((vecs * np.maximum(vals, 0.0)) @ vecs.conj().T)
    minus = HermitianOperator((vecs * np.maximum(-vals, 0.0)) @ vecs.conj().T)
    return plus, minus


def operator_norm(a) -> float:
    """Largest absolute eigenvalue of a Hermitian operator."""
    vals = _eigenvalues(a)
    return float(np.max(np.abs(vals)))


def normalized_trace(a) -> float:
    """(1/n) * trace; the imaginary part must be numerical noise."""
    arr = _matrix_of(a)
    tr = complex(np.trace(arr)) / arr.shape[0]
    if abs(tr.imag) > _HERMITICITY_TOL * max(1.0, abs(tr.real)):
        raise BadParam(f"trace {tr!r} is not real")
    return tr.real


def spectral_projection(a: HermitianOperator, lo: float,
                        closed: bool = False) -> HermitianOperator:
    """Projection onto eigenspaces with eigenvalue > lo (>= lo if closed)."""
    vals, vecs = eigen_decompose(a)
    keep = vals >= lo if closed else vals > lo
    sel = vecs[:, keep]
    return HermitianOperator(sel @ sel.conj().T)


def tensor_product(a: HermitianOperator, b: HermitianOperator) -> HermitianOperator:
    """Kronecker product; normalized traces multiply."""
    if a.dim * b.dim > MAX_DIM:
        raise DimensionOverflow(f"tensor dimension {a.dim * b.dim} exceeds {MAX_DIM}")
    return HermitianOperator(np.kron(a.matrix, b.matrix))


_SAMPLE_KINDS = ("hermitian", "positive", "unitary", "projection")
_MAX_SAMPLE_DIM = 64


def sample(kind: str, dim: int, seed: int):
    """Deterministic random test operators.

    ``hermitian``/``positive``/``projection`` return HermitianOperator;
    ``unitary`` returns a plain complex ndarray built as exp(i*h) by
    functional calculus on a sampled Hermitian generator.
    """
    if kind not in _SAMPLE_KINDS:
        raise BadParam(f"unknown sample kind {kind!r}; choose from {_SAMPLE_KINDS}")
    if not 1 <= dim <= _MAX_SAMPLE_DIM:
        raise BadParam(f"sample dimension must be in 1..{_MAX_SAMPLE_DIM}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    if kind == "hermitian":
        return HermitianOperator(g / (2.0 * np.sqrt(dim)))
    if kind == "positive":
        b = g / np.sqrt(2.0 * dim)
        return HermitianOperator(b.conj().T @ b)
    if kind == "projection":
        rank = int(rng.integers(1, dim)) if dim > 1 else 1
        q, _ = np.linalg.qr(g)
        cols = q[:, :rank]
        return HermitianOperator(cols @ cols.conj().T)
    h = HermitianOperator(g / (2.0 * np.sqrt(dim)))
    vals, vecs = eigen_decompose(h)
    return (vecs * np.exp(1j * vals)) @ vecs.conj().T
