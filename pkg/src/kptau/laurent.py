"""Truncated Laurent series in one variable with ring-generic coefficients.

Coefficients may be complex numbers, Fractions or ``ExactPoly`` values; the
only requirement is ``+``, ``-``, ``*`` and multiplication by a Fraction.
Division needs the leading coefficient to be a unit (a nonzero number or a
constant ExactPoly).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .schur import ExactPoly


def _is_zero(c) -> bool:
    if isinstance(c, ExactPoly):
        return not c.terms
    return c == 0


def unit_inverse(c):
    """Inverse of a unit coefficient, returned as a plain scalar."""
    if isinstance(c, ExactPoly):
        if not c.is_constant() or not c.terms:
            raise ZeroDivisionError(f"coefficient {c!r} is not a unit")
        return 1 / c.constant_term()
    if isinstance(c, (int, Fraction)):
        return Fraction(1) / Fraction(c)
    return 1 / c


class Laurent:
    """sum_{k=val}^{prec-1} c_{k-val} xi^k + O(xi^prec)."""

    __slots__ = ("val", "coeffs", "prec")

    def __init__(self, val: int, coeffs, prec: int):
        n = max(prec - val, 0)
        coeffs = list(coeffs)[:n]
        coeffs += [0] * (n - len(coeffs))
        self.val, self.coeffs, self.prec = val, coeffs, prec

    @classmethod
    def monomial(cls, k: int, prec: int, c=1):
        return cls(k, [c], prec)

    @classmethod
    def constant(cls, c, prec: int):
        return cls(0, [c], prec)

    def __getitem__(self, k: int):
        """Coefficient of xi^k; raises if k is beyond the known precision."""
        if k >= self.prec:
            raise IndexError(f"coefficient xi^{k} beyond precision O(xi^{self.prec})")
        if k < self.val:
            return 0
        return self.coeffs[k - self.val]

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return self.val + i
        return self.prec

    def normalized(self) -> "Laurent":
        v = self.valuation()
        return Laurent(v, self.coeffs[v - self.val:], self.prec)

    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.constant(other, self.prec)
        val = min(self.val, other.val)
        prec = min(self.prec, other.prec)
        out = [0] * max(prec - val, 0)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.val + i - val
                if k < len(out):
                    out[k] = out[k] + c
        return Laurent(val, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return Laurent(self.val, [c * -1 for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            return Laurent(self.val, [c * other for c in self.coeffs], self.prec)
        a, b = self.normalized(), other.normalized()
        val = a.val + b.val
        prec = min(a.prec + b.val, b.prec + a.val)
        n = max(prec - val, 0)
        out = [0] * n
        for i, x in enumerate(a.coeffs):
            if i >= n:
                break
            if _is_zero(x):
                continue
            for j, y in enumerate(b.coeffs[: n - i]):
                if not _is_zero(y):
                    out[i + j] = out[i + j] + x * y
        return Laurent(val, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> "Laurent":
        a = self.normalized()
        if not a.coeffs:
            raise ZeroDivisionError("series is zero to working precision")
        n = len(a.coeffs)
        inv0 = unit_inverse(a.coeffs[0])
        r = [0] * n
        r[0] = inv0
        for k in range(1, n):
            acc = 0
            for j in range(1, k + 1):
                if not _is_zero(a.coeffs[j]):
                    acc = acc + a.coeffs[j] * r[k - j]
            r[k] = acc * (-inv0)
        return Laurent(-a.val, r, -a.val + n)

    def __truediv__(self, other):
        if isinstance(other, Laurent):
            return self * other.inverse()
        return self * unit_inverse(other)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return Laurent(0, [1], self.prec - self.val)
        out = None
        base = self
        while e:
            if e & 1:
                out = base if out is None else out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "Laurent":
        return Laurent(self.val - 1, [c * (self.val + i) for i, c in enumerate(self.coeffs)], self.prec - 1)

    def shift(self, k: int) -> "Laurent":
        """Multiply by xi^k."""
        return Laurent(self.val + k, self.coeffs, self.prec + k)

    def truncate(self, prec: int) -> "Laurent":
        return Laurent(self.val, self.coeffs, min(prec, self.prec))

    def map(self, fn) -> "Laurent":
        return Laurent(self.val, [fn(c) for c in self.coeffs], self.prec)

    def __repr__(self):
        terms = [f"({c})*xi^{self.val + i}" for i, c in enumerate(self.coeffs) if not _is_zero(c)]
        return " + ".join(terms[:8]) + (" + ..." if len(terms) > 8 else "") + f" + O(xi^{self.prec})"


def _max_abs(f: Laurent) -> float:
    return max((abs(complex(c)) for c in f.coeffs), default=0.0)


def nth_root_newton(target: Laurent, n: int, max_iter: int = 64, tol: float = 1e-13) -> Laurent:
    """Solve Z^n = target for target = 1 + O(xi), Z = 1 + O(xi), by Newton iteration.

    Exact coefficient rings stop when the residual vanishes to the working
    precision; floating-point ones when the Newton step falls below ``tol``
    relative to the size of the target.
    """
    if target.valuation() < 0 or not _is_zero(target[0] - 1):
        raise ValueError("nth_root_newton expects a power series with constant term 1")
    exact = all(isinstance(c, (int, Fraction, ExactPoly)) for c in target.coeffs)
    prec = target.prec
    scale = 1.0 if exact else max(1.0, _max_abs(target))
    z = Laurent(0, [1], prec)
    inv_n = Fraction(1, n)
    last = np.inf
    for _ in range(max_iter):
        resid = z ** n - target
        if resid.valuation() >= prec:
            return z
        step = resid * (z ** (n - 1)).inverse() * (inv_n if exact else 1.0 / n)
        z = (z - step).truncate(prec)
        if not exact:
            size = _max_abs(step)
            if not np.isfinite(size):
                break
            scale = max(scale, _max_abs(z))
            # converged, or stalled at rounding level
            if size <= tol * scale or (size <= 1e-8 * scale and size >= last):
                return z
            last = size
    raise ArithmeticError("Newton iteration for the local expansion did not converge")
