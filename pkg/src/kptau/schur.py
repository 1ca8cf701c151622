"""Exact symmetric-function layer over the rationals.

Polynomials live in the flow variables t_1..t_M, graded by weight(t_k) = k.
Everything here is exact (``fractions.Fraction``); numeric code converts at
the boundary.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .partitions import Partition, hook_from, partitions_of

Monomial = tuple[int, ...]


class ExactPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    ``weights`` gives the grading of each variable; by default variable k
    (zero based) has weight k + 1, which is the flow-variable grading.
    Zero coefficients are never stored.
    """

    __slots__ = ("terms", "nvars", "weights")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int = 0,
                 weights: tuple[int, ...] | None = None):
        self.nvars = nvars
        self.weights = tuple(weights) if weights is not None else tuple(range(1, nvars + 1))
        if len(self.weights) != nvars:
            raise ValueError("weights must have one entry per variable")
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    # construction helpers
    @classmethod
    def constant(cls, c, nvars: int, weights=None) -> "ExactPoly":
        return cls({(0,) * nvars: c}, nvars, weights)

    @classmethod
    def variable(cls, k: int, nvars: int, weights=None) -> "ExactPoly":
        """The variable with zero-based index k."""
        m = [0] * nvars
        m[k] = 1
        return cls({tuple(m): 1}, nvars, weights)

    def _like(self, terms) -> "ExactPoly":
        out = ExactPoly.__new__(ExactPoly)
        out.nvars, out.weights = self.nvars, self.weights
        out.terms = {m: c for m, c in terms.items() if c}
        return out

    def _coerce(self, other) -> "ExactPoly":
        if isinstance(other, ExactPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return ExactPoly.constant(Fraction(other), self.nvars, self.weights)

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return self._like(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ExactPoly):
            c = Fraction(other)
            return self._like({m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return self._like(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, n: int):
        out = ExactPoly.constant(1, self.nvars, self.weights)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # queries
    def monomial_weight(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def coeff(self, m: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def weights_present(self) -> set[int]:
        return {self.monomial_weight(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights_present()) <= 1

    def truncate(self, max_weight: int) -> "ExactPoly":
        return self._like({m: c for m, c in self.terms.items() if self.monomial_weight(m) <= max_weight})

    def evaluate(self, values):
        """Evaluate at a point; values may be Fractions, floats or complex."""
        total = 0
        for m, c in self.terms.items():
            term = c
            for v, e in zip(values, m):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def substitute_sign(self) -> "ExactPoly":
        """p(t) -> p(-t)."""
        return self._like({m: c * (-1) ** sum(m) for m, c in self.terms.items()})

    def extend(self, nvars: int, offset: int = 0, weights=None) -> "ExactPoly":
        """Embed into a larger variable set, shifting variable indices by ``offset``."""
        terms = {}
        for m, c in self.terms.items():
            mm = [0] * nvars
            mm[offset:offset + self.nvars] = m
            terms[tuple(mm)] = c
        return ExactPoly(terms, nvars, weights)

    def to_text(self, names: Iterable[str] | None = None) -> str:
        """One line per term, ``coeff * t1^a t2^b``."""
        names = list(names) if names is not None else [f"t{k + 1}" for k in range(self.nvars)]
        lines = []
        for m in sorted(self.terms, key=lambda m: (self.monomial_weight(m), tuple(-e for e in m))):
            vars_ = " ".join(f"{names[k]}^{e}" if e > 1 else names[k] for k, e in enumerate(m) if e)
            lines.append(f"{self.terms[m]} * {vars_}" if vars_ else f"{self.terms[m]}")
        return "\n".join(lines) if lines else "0"

    def __repr__(self):
        return f"ExactPoly({self.to_text()!r})"


def _zero(M: int) -> ExactPoly:
    return ExactPoly({}, M)


@lru_cache(maxsize=None)
def _complete_homogeneous_cached(j: int, M: int) -> ExactPoly:
    if j == 0:
        return ExactPoly.constant(1, M)
    # j h_j = sum_{i=1}^{j} i t_i h_{j-i}
    acc = _zero(M)
    for i in range(1, min(j, M) + 1):
        acc = acc + i * ExactPoly.variable(i - 1, M) * _complete_homogeneous_cached(j - i, M)
    return acc / j


def complete_homogeneous(j: int, M: int) -> ExactPoly:
    """Coefficient of z^j in exp(sum_i t_i z^i); zero for j < 0."""
    if j < 0:
        return _zero(M)
    return _complete_homogeneous_cached(j, M)


def exact_det(matrix: list[list]):
    """Determinant of a small square matrix over any commutative ring.

    Laplace expansion along the first row with memoisation on column
    subsets, so no division is needed.
    """
    n = len(matrix)
    if n == 0:
        return 1

    @lru_cache(maxsize=None)
    def minor(row: int, cols: frozenset):
        if row == n:
            return 1
        total = 0
        sign = 1
        for c in sorted(cols):
            entry = matrix[row][c]
            if entry:
                total = total + sign * entry * minor(row + 1, cols - {c})
            sign = -sign
        return total

    return minor(0, frozenset(range(n)))


def schur_jacobi_trudi(lam: Partition, M: int | None = None) -> ExactPoly:
    """s_lambda(t) = det(h_{lambda_i - i + j})."""
    M = lam.weight if M is None else M
    if M < lam.weight:
        raise ValueError(f"need M >= |lambda| = {lam.weight}, got {M}")
    M = max(M, 1)
    n = lam.length
    if n == 0:
        return ExactPoly.constant(1, M)
    mat = [[complete_homogeneous(lam[i] - i + j, M) for j in range(n)] for i in range(n)]
    det = exact_det(mat)
    return det if isinstance(det, ExactPoly) else ExactPoly.constant(det, M)


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    a = [list(r) for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def _fraction_solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    n = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col] / aug[col][col]
                for c in range(col, n + 1):
                    aug[r][c] -= f * aug[col][c]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def _power_sum_monomials(n: int) -> list[Monomial]:
    """Exponent vectors m with sum_k k m_k = n, one per partition of n."""
    out = []
    for p in partitions_of(n):
        m = [0] * n
        for part in p:
            m[part - 1] += 1
        out.append(tuple(m))
    return out


def schur_bialternant_oracle(lam: Partition, N: int, seed: int = 0) -> ExactPoly:
    """Schur function from the ratio of alternants, rewritten in the t variables.

    The alternant ratio det(x_i^{lambda_j + N - j}) / det(x_i^{N - j}) is
    evaluated exactly at integer sample points; the coefficients of its
    expansion in t_k = p_k(x) / k are then recovered by exact interpolation
    over the power-sum monomials of weight |lambda|. This is independent of
    the Jacobi-Trudi determinant.
    """
    if N < lam.length:
        raise ValueError(f"N = {N} < length {lam.length}: stable range not reached")
    n = lam.weight
    M = max(n, 1)
    if n == 0:
        return ExactPoly.constant(1, M)
    basis = _power_sum_monomials(n)
    exps = [lam[j] + N - 1 - j for j in range(N)]
    delta = [N - 1 - j for j in range(N)]
    rng = random.Random(seed)

    def sample():
        pts = rng.sample(range(-3 * N - 6, 3 * N + 7), N)
        num = _fraction_det([[Fraction(x) ** e for e in exps] for x in pts])
        den = _fraction_det([[Fraction(x) ** e for e in delta] for x in pts])
        tvals = [Fraction(sum(Fraction(x) ** k for x in pts), k) for k in range(1, n + 1)]
        row = []
        for m in basis:
            v = Fraction(1)
            for k, e in enumerate(m):
                if e:
                    v *= tvals[k] ** e
            row.append(v)
        return row, num / den

    for _ in range(20):
        rows, rhs = zip(*(sample() for _ in range(len(basis) + 3)))
        k = len(basis)
        sol = _fraction_solve(list(rows[:k]), list(rhs[:k]))
        if sol is None:
            continue
        # the extra points must be reproduced exactly
        if all(sum(c * r for c, r in zip(sol, rows[i])) == rhs[i] for i in range(k, len(rows))):
            terms = {tuple(m) + (0,) * (M - n): c for m, c in zip(basis, sol)}
            return ExactPoly(terms, M)
    raise RuntimeError("alternant interpolation did not stabilise")


def hook_schur_bilinear(a: int, b: int, M: int | None = None) -> ExactPoly:
    """(-1)^b sum_{j=1}^{b+1} h_{b-j+1}(-t) h_{a+j}(t)."""
    M = max(a + b + 1, 1) if M is None else M
    acc = _zero(M)
    for j in range(1, b + 2):
        acc = acc + complete_homogeneous(b - j + 1, M).substitute_sign() * complete_homogeneous(a + j, M)
    return acc * (-1) ** b


def pairing_weight(m: Monomial) -> Fraction:
    """prod_k m_k! / k^{m_k}: the value of t^m(d_t) t^m at 0 with d_k = (1/k) d/dt_k."""
    w = Fraction(1)
    for k, e in enumerate(m, start=1):
        if e:
            w *= Fraction(math.factorial(e), k**e)
    return w


def schur_pairing(lam: Partition, f, M: int | None = None):
    """s_lambda(d_t) f |_{t=0}, with d_t = {(1/i) d/dt_i}.

    ``f`` is an ExactPoly or a TauSeries; for a TauSeries its truncation
    weight must reach |lambda|.
    """
    from .series import TauSeries

    if isinstance(f, TauSeries):
        if f.W < lam.weight:
            raise ValueError(f"series truncated at weight {f.W} < |lambda| = {lam.weight}")
        s = schur_jacobi_trudi(lam, max(f.M, lam.weight, 1))
        total = 0j
        for m, c in s.terms.items():
            if any(m[k] for k in range(f.M, len(m))):
                continue
            total += float(c * pairing_weight(m)) * f.coefficient(m[: f.M])
        return total
    s = schur_jacobi_trudi(lam, max(f.nvars, lam.weight, 1))
    if s.nvars != f.nvars:
        f = f.extend(s.nvars)
    total = Fraction(0)
    for m, c in s.terms.items():
        total += c * pairing_weight(m) * f.coeff(m)
    return total


def exact_exp(p: ExactPoly, max_weight: int) -> ExactPoly:
    """Weight-truncated exponential of a polynomial with zero constant term."""
    if p.constant_term():
        raise ValueError("exact_exp needs a zero constant term")
    out = ExactPoly.constant(1, p.nvars, p.weights)
    term = out
    min_w = min(p.weights_present(), default=max_weight + 1)
    for n in range(1, max_weight // max(min_w, 1) + 1):
        term = (term * p).truncate(max_weight) / n
        if not term:
            break
        out = out + term
    return out


def to_numeric_coeffs(p: ExactPoly) -> dict[Monomial, complex]:
    return {m: complex(c) for m, c in p.terms.items()}


def hook_table(K: int, M: int) -> dict[tuple[int, int], ExactPoly]:
    """Schur polynomials of all hooks (a|b) with a, b <= K."""
    return {(a, b): schur_jacobi_trudi(hook_from(a, b), M) for a in range(K + 1) for b in range(K + 1)}


__all__ = [
    "ExactPoly",
    "complete_homogeneous",
    "schur_jacobi_trudi",
    "schur_bialternant_oracle",
    "hook_schur_bilinear",
    "schur_pairing",
    "pairing_weight",
    "exact_det",
    "exact_exp",
]
