"""Truncated power series in the flow variables t_1..t_M over complex doubles.

Monomials are graded by weight(t_k) = k and everything of weight > W is
dropped. Coefficients are stored densely in a vector ordered by weight, so
each grade is a contiguous slice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .partitions import partitions_of

DEFAULT_W = 10
DEFAULT_M = 10


@dataclass(frozen=True)
class MonomialBasis:
    M: int
    W: int
    monomials: tuple[tuple[int, ...], ...]
    index: Mapping[tuple[int, ...], int]
    grade_slices: tuple[slice, ...]
    weights: np.ndarray
    # product table: out[k] += a[i] * b[j]
    prod_i: np.ndarray
    prod_j: np.ndarray
    prod_k: np.ndarray

    def __len__(self):
        return len(self.monomials)


@lru_cache(maxsize=32)
def monomial_basis(M: int, W: int) -> MonomialBasis:
    monos: list[tuple[int, ...]] = []
    slices = []
    for n in range(W + 1):
        start = len(monos)
        for p in partitions_of(n):
            if p.length and p[0] > M:
                continue
            m = [0] * M
            for part in p:
                m[part - 1] += 1
            monos.append(tuple(m))
        slices.append(slice(start, len(monos)))
    index = {m: i for i, m in enumerate(monos)}
    weights = np.array([sum((k + 1) * e for k, e in enumerate(m)) for m in monos], dtype=int)
    pi, pj, pk = [], [], []
    for i, mi in enumerate(monos):
        for j, mj in enumerate(monos):
            if weights[i] + weights[j] > W:
                continue
            pi.append(i)
            pj.append(j)
            pk.append(index[tuple(a + b for a, b in zip(mi, mj))])
    return MonomialBasis(M, W, tuple(monos), index, tuple(slices), weights,
                         np.array(pi, dtype=np.intp), np.array(pj, dtype=np.intp), np.array(pk, dtype=np.intp))


class TauSeries:
    """A truncated series sum_m c_m t^m with sum_k k m_k <= W."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, coeffs: np.ndarray | None = None, M: int = DEFAULT_M, W: int = DEFAULT_W):
        self.basis = monomial_basis(M, W)
        if coeffs is None:
            coeffs = np.zeros(len(self.basis), dtype=complex)
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (len(self.basis),):
            raise ValueError(f"expected {len(self.basis)} coefficients, got {coeffs.shape}")
        self.coeffs = coeffs

    @property
    def M(self) -> int:
        return self.basis.M

    @property
    def W(self) -> int:
        return self.basis.W

    # constructors
    @classmethod
    def from_dict(cls, terms: Mapping[tuple[int, ...], complex], M: int = DEFAULT_M, W: int = DEFAULT_W):
        out = cls(None, M, W)
        for m, c in terms.items():
            m = _pad(m, M)
            if _weight(m) > W:
                continue
            out.coeffs[out.basis.index[m]] += c
        return out

    @classmethod
    def constant(cls, c: complex, M: int = DEFAULT_M, W: int = DEFAULT_W):
        out = cls(None, M, W)
        out.coeffs[0] = c
        return out

    @classmethod
    def variable(cls, k: int, M: int = DEFAULT_M, W: int = DEFAULT_W):
        """t_k for one-based k."""
        m = [0] * M
        m[k - 1] = 1
        return cls.from_dict({tuple(m): 1.0}, M, W)

    @classmethod
    def linear(cls, c: Iterable[complex], M: int = DEFAULT_M, W: int = DEFAULT_W):
        """sum_k c_k t_k (c indexed from k = 1)."""
        terms = {}
        for k, ck in enumerate(c, start=1):
            if k > min(M, W):
                break
            m = [0] * M
            m[k - 1] = 1
            terms[tuple(m)] = ck
        return cls.from_dict(terms, M, W)

    @classmethod
    def quadratic(cls, Q, M: int = DEFAULT_M, W: int = DEFAULT_W):
        """1/2 sum_{k,l} Q[k-1][l-1] t_k t_l for a square array Q."""
        Q = np.asarray(Q, dtype=complex)
        out = cls(None, M, W)
        n = Q.shape[0]
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                if k > M or l > M or k + l > W:
                    continue
                m = [0] * M
                m[k - 1] += 1
                m[l - 1] += 1
                out.coeffs[out.basis.index[tuple(m)]] += 0.5 * Q[k - 1, l - 1]
        return out

    # arithmetic
    def _check(self, other: "TauSeries"):
        if self.M != other.M or self.W != other.W:
            raise ValueError(f"series shape mismatch: (M={self.M}, W={self.W}) vs (M={other.M}, W={other.W})")

    def copy(self):
        return TauSeries(self.coeffs.copy(), self.M, self.W)

    def __add__(self, other):
        if isinstance(other, TauSeries):
            self._check(other)
            return TauSeries(self.coeffs + other.coeffs, self.M, self.W)
        out = self.copy()
        out.coeffs[0] += other
        return out

    __radd__ = __add__

    def __neg__(self):
        return TauSeries(-self.coeffs, self.M, self.W)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TauSeries):
            return TauSeries(self.coeffs * other, self.M, self.W)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TauSeries):
            return self * series_inverse(other)
        return TauSeries(self.coeffs / other, self.M, self.W)

    def grade(self, n: int) -> "TauSeries":
        out = TauSeries(None, self.M, self.W)
        sl = self.basis.grade_slices[n]
        out.coeffs[sl] = self.coeffs[sl]
        return out

    def coefficient(self, m: Iterable[int]) -> complex:
        m = _pad(tuple(m), self.M)
        if _weight(m) > self.W:
            raise ValueError(f"monomial {m} has weight {_weight(m)} > truncation {self.W}")
        return complex(self.coeffs[self.basis.index[m]])

    def constant_term(self) -> complex:
        return complex(self.coeffs[0])

    def to_dict(self, tol: float = 0.0) -> dict[tuple[int, ...], complex]:
        return {m: complex(c) for m, c in zip(self.basis.monomials, self.coeffs) if abs(c) > tol}

    def derivative_at_zero(self, m: Iterable[int]) -> complex:
        """d^m f / dt^m at t = 0."""
        m = tuple(m)
        return self.coefficient(m) * math.prod(math.factorial(e) for e in m)

    def max_abs_diff(self, other: "TauSeries") -> float:
        self._check(other)
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def __repr__(self):
        return f"TauSeries(M={self.M}, W={self.W}, nnz={int(np.count_nonzero(self.coeffs))})"


def _pad(m: tuple[int, ...], M: int) -> tuple[int, ...]:
    if len(m) > M:
        if any(m[M:]):
            raise ValueError(f"monomial {m} uses variables beyond t_{M}")
        return tuple(m[:M])
    return tuple(m) + (0,) * (M - len(m))


def _weight(m) -> int:
    return sum((k + 1) * e for k, e in enumerate(m))


def series_mul(f: TauSeries, g: TauSeries) -> TauSeries:
    f._check(g)
    b = f.basis
    prods = f.coeffs[b.prod_i] * g.coeffs[b.prod_j]
    out = np.zeros(len(b), dtype=complex)
    np.add.at(out, b.prod_k, prods)
    return TauSeries(out, f.M, f.W)


def _euler(f: TauSeries) -> TauSeries:
    """Weight operator sum_k k t_k d/dt_k."""
    return TauSeries(f.coeffs * f.basis.weights, f.M, f.W)


def series_exp(f: TauSeries) -> TauSeries:
    """exp(f) truncated at weight W; a constant term c contributes e^c."""
    b = f.basis
    c0 = f.coeffs[0]
    g = f.copy()
    g.coeffs[0] = 0
    dg = _euler(g)
    out = np.zeros(len(b), dtype=complex)
    out[0] = 1.0
    # grade recurrence n E_n = sum_{k>=1} (D g)_k E_{n-k}
    for n in range(1, b.W + 1):
        acc = np.zeros(len(b), dtype=complex)
        for k in range(1, n + 1):
            part = _grade_product(dg.coeffs, b.grade_slices[k], out, b.grade_slices[n - k], b)
            acc += part
        out[b.grade_slices[n]] = acc[b.grade_slices[n]] / n
    return TauSeries(out * np.exp(c0), f.M, f.W)


def _grade_product(a: np.ndarray, sa: slice, c: np.ndarray, sc: slice, b: MonomialBasis) -> np.ndarray:
    """Product of the grade-sa part of a with the grade-sc part of c."""
    x = np.zeros(len(b), dtype=complex)
    y = np.zeros(len(b), dtype=complex)
    x[sa] = a[sa]
    y[sc] = c[sc]
    out = np.zeros(len(b), dtype=complex)
    np.add.at(out, b.prod_k, x[b.prod_i] * y[b.prod_j])
    return out


def series_log(f: TauSeries) -> TauSeries:
    """Inverse of series_exp; requires a nonzero constant term."""
    b = f.basis
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ValueError("series_log needs a nonzero constant term")
    h = f.coeffs / c0
    out = np.zeros(len(b), dtype=complex)
    out[0] = np.log(c0)
    df = h * b.weights
    # n L_n = (D h)_n - sum_{k=1}^{n-1} (D L)_k h_{n-k}
    dL = np.zeros(len(b), dtype=complex)
    for n in range(1, b.W + 1):
        acc = np.zeros(len(b), dtype=complex)
        acc[b.grade_slices[n]] = df[b.grade_slices[n]]
        for k in range(1, n):
            acc -= _grade_product(dL, b.grade_slices[k], h, b.grade_slices[n - k], b)
        sl = b.grade_slices[n]
        dL[sl] = acc[sl]
        out[sl] = acc[sl] / n
    return TauSeries(out, f.M, f.W)


def series_inverse(f: TauSeries) -> TauSeries:
    c0 = f.coeffs[0]
    if c0 == 0:
        raise ValueError("series has no inverse: zero constant term")
    b = f.basis
    out = np.zeros(len(b), dtype=complex)
    out[0] = 1 / c0
    for n in range(1, b.W + 1):
        acc = np.zeros(len(b), dtype=complex)
        for k in range(1, n + 1):
            acc += _grade_product(f.coeffs, b.grade_slices[k], out, b.grade_slices[n - k], b)
        sl = b.grade_slices[n]
        out[sl] = -acc[sl] / c0
    return TauSeries(out, f.M, f.W)


def coefficient(f: TauSeries, m: Iterable[int]) -> complex:
    return f.coefficient(m)
