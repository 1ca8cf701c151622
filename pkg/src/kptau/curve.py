"""Plane models of hyperelliptic and cyclic trigonal curves, local data at the
point at infinity, differential bases and the algebraic part of the
fundamental bi-differential.

Curve coefficients may be floats, complex numbers, Fractions or ``ExactPoly``
symbols (see ``HyperellipticCurve.symbolic``); every expansion routine is
generic in the coefficient ring, so the same code produces numeric tables
and exact polynomial identities.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .laurent import Laurent, nth_root_newton
from .schur import ExactPoly


class CurveError(ValueError):
    """Invalid or singular curve data."""


@dataclass(frozen=True)
class GapSequence:
    gaps: tuple[int, ...]

    def __post_init__(self):
        g = self.gaps
        if any(g[i] >= g[i + 1] for i in range(len(g) - 1)):
            raise ValueError("gaps must be strictly increasing")
        if g and (g[0] != 1 or g[-1] >= 2 * len(g)):
            raise ValueError(f"{g} is not a Weierstrass gap sequence")

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def __iter__(self):
        return iter(self.gaps)

    def __len__(self):
        return len(self.gaps)

    def __getitem__(self, i):
        return self.gaps[i]


def gap_sequence(n: int, s: int) -> GapSequence:
    """Positive integers not of the form a n + b s with a, b >= 0."""
    if n < 2 or s < 2 or math.gcd(n, s) != 1:
        raise ValueError(f"need coprime n, s >= 2, got ({n}, {s})")
    g = (n - 1) * (s - 1) // 2
    bound = 2 * g
    reachable = {a * n + b * s for a in range(bound // n + 1) for b in range(bound // s + 1)}
    gaps = tuple(k for k in range(1, bound) if k not in reachable)
    assert len(gaps) == g
    return GapSequence(gaps)


@dataclass(frozen=True)
class LocalExpansion:
    """xi^leading_exponent * sum_k coeffs[k] xi^k."""

    leading_exponent: int
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs or self.coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @classmethod
    def from_laurent(cls, f: Laurent, order: int) -> "LocalExpansion":
        f = f.normalized()
        return cls(f.val, tuple(f.coeffs[:order]))

    def coefficient(self, k: int):
        """Coefficient of xi^k (absolute exponent)."""
        i = k - self.leading_exponent
        if i < 0:
            return 0
        if i >= len(self.coeffs):
            raise IndexError(f"xi^{k} beyond the stored order")
        return self.coeffs[i]

    def numeric(self) -> np.ndarray:
        return np.array([complex(_to_number(c)) for c in self.coeffs])


def _to_number(c):
    if isinstance(c, ExactPoly):
        if not c.is_constant():
            raise TypeError("symbolic coefficient has no numeric value")
        return c.constant_term()
    return c


def _poly_eval(coeffs, x):
    """Horner evaluation of sum_k coeffs[k] x^k (x may be a Laurent series)."""
    out = 0
    for c in reversed(coeffs):
        out = out * x + c
    return out


@dataclass(frozen=True)
class Differential:
    """scale * numer(x) dx / y^ypow, numer given by ascending coefficients."""

    numer: tuple
    ypow: int
    scale: Fraction
    label: str

    def value(self, x, y):
        """Coefficient of dx at the point (x, y)."""
        return self.scale * _poly_eval(self.numer, x) / y ** self.ypow

    def local(self, curve, prec: int) -> Laurent:
        """The local expansion of (differential)/d xi at infinity."""
        X, Y = curve.local_laurent(prec)
        dX = X.derivative()
        num = _poly_eval(self.numer, X)
        if not isinstance(num, Laurent):
            num = Laurent.constant(num, X.prec)
        return num * dX * (Y ** self.ypow).inverse() * self.scale

    def __str__(self):
        return self.label


class PlaneCurve:
    """Shared behaviour of the (n, s) curve families."""

    n: int
    s: int
    genus: int

    def coefficient_values(self) -> tuple:
        raise NotImplementedError

    @property
    def gaps(self) -> GapSequence:
        return gap_sequence(self.n, self.s)

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(c, ExactPoly) for c in self.coefficient_values())

    def _rhs_normalized(self, prec: int) -> Laurent:
        """Z^n where y = lead * xi^{-s} * Z, as a power series in xi."""
        raise NotImplementedError

    _y_lead = 1

    def local_laurent(self, prec: int) -> tuple[Laurent, Laurent]:
        """x(xi) = xi^{-n} and y(xi), with y known to absolute precision O(xi^{prec - s})."""
        key = prec
        cache = self.__dict__.setdefault("_local_cache", {})
        if key not in cache:
            z = nth_root_newton(self._rhs_normalized(prec), self.n)
            X = Laurent(-self.n, [1], 10 * prec + 10 * self.s)
            Y = z.shift(-self.s) * self._y_lead
            cache[key] = (X, Y)
        return cache[key]

    def local_residual(self, prec: int = 20) -> float:
        """Relative size of y^n - f(x) over the known coefficients of the local expansion.

        Exact (symbolic or rational) curves give 0.0 or inf.
        """
        X, Y = self.local_laurent(prec)
        rhs = self.rhs_of(X)
        r = Y ** self.n - rhs
        if self.is_symbolic or all(isinstance(c, (int, Fraction)) for c in r.coeffs):
            return 0.0 if all(_series_is_zero(c) for c in r.coeffs) else float("inf")
        scale = max((abs(complex(c)) for c in rhs.coeffs), default=1.0)
        return max((abs(complex(c)) for c in r.coeffs), default=0.0) / max(scale, 1.0)

    def rhs_of(self, X):
        raise NotImplementedError

    def P_y(self, y):
        return self.n * y ** (self.n - 1)


def _as_coeff(c):
    if isinstance(c, (ExactPoly, Fraction, int)):
        return c
    if isinstance(c, float) and c.is_integer():
        return Fraction(int(c))
    return c


class HyperellipticCurve(PlaneCurve):
    """y^2 = 4 x^{2g+1} + alpha_{2g} x^{2g} + ... + alpha_0."""

    n = 2
    _y_lead = 2

    def __init__(self, g: int, alpha, branch_points=None):
        if g < 1:
            raise CurveError("genus must be at least 1")
        alpha = tuple(_as_coeff(a) for a in alpha)
        if len(alpha) != 2 * g + 1:
            raise CurveError(f"genus {g} needs {2 * g + 1} coefficients alpha_0..alpha_{2 * g}")
        self.genus = g
        self.s = 2 * g + 1
        self.alpha = alpha
        self.branch_points = None
        if branch_points is not None:
            bp = np.asarray(branch_points, dtype=float)
            if bp.shape != (2 * g + 1,):
                raise CurveError(f"need {2 * g + 1} branch points")
            if np.any(np.diff(bp) <= 0):
                raise CurveError("branch points must be distinct and increasing")
            ref = np.real(np.poly(bp))[::-1] * 4
            num = np.array([complex(_to_number(a)) for a in alpha])
            scale = max(1.0, float(np.max(np.abs(ref))))
            if np.max(np.abs(num - ref[: 2 * g + 1])) > 1e-10 * scale:
                raise CurveError("branch points do not reproduce alpha")
            self.branch_points = tuple(float(b) for b in bp)
        if not self.is_symbolic:
            self._check_nonsingular()

    @classmethod
    def from_branch_points(cls, points) -> "HyperellipticCurve":
        bp = np.sort(np.asarray(points, dtype=float))
        g = (len(bp) - 1) // 2
        if len(bp) != 2 * g + 1 or g < 1:
            raise CurveError("need an odd number (>= 3) of finite branch points")
        coeffs = np.real(np.poly(bp))[::-1] * 4
        return cls(g, [float(c) for c in coeffs[:-1]], branch_points=bp)

    @classmethod
    def symbolic(cls, g: int) -> "HyperellipticCurve":
        """Generic curve with alpha_k as exact symbols of weight 2(2g+1) - 2k."""
        nv = 2 * g + 1
        weights = tuple(2 * (2 * g + 1) - 2 * k for k in range(nv))
        return cls(g, [ExactPoly.variable(k, nv, weights) for k in range(nv)])

    def coefficient_values(self) -> tuple:
        return self.alpha

    def lam(self, m: int):
        """lambda_m: alpha_m for m <= 2g, 4 for m = 2g+1, zero beyond."""
        if m <= 2 * self.genus:
            return self.alpha[m]
        return 4 if m == 2 * self.genus + 1 else 0

    def f(self, x):
        """Right-hand side 4 x^{2g+1} + sum alpha_k x^k."""
        return _poly_eval(list(self.alpha) + [4], x)

    def rhs_of(self, X):
        return self.f(X)

    def _rhs_normalized(self, prec: int) -> Laurent:
        # y^2 / (4 xi^{-2s}) = 1 + sum_k (alpha_k / 4) xi^{2(s-k)}
        coeffs = [0] * prec
        coeffs[0] = 1
        for k, a in enumerate(self.alpha):
            e = 2 * (self.s - k)
            if e < prec:
                coeffs[e] = a * Fraction(1, 4)
        return Laurent(0, coeffs, prec)

    def _check_nonsingular(self):
        c = [complex(_to_number(a)) for a in self.alpha] + [4]
        roots = np.roots(c[::-1])
        scale = max(1.0, float(np.max(np.abs(roots))))
        d = np.abs(roots[:, None] - roots[None, :]) + np.eye(len(roots)) * scale
        if np.min(d) < 1e-8 * scale:
            raise CurveError("curve is singular: repeated root of the quintic")

    def y_at(self, x):
        """Upper-sheet y for real or complex x (principal square root)."""
        return np.sqrt(complex(self.f(x)))

    def __repr__(self):
        return f"HyperellipticCurve(g={self.genus}, alpha={self.alpha})"


class CyclicTrigonalCurve(PlaneCurve):
    """y^3 = x^4 + beta_3 x^3 + beta_6 x^2 + beta_9 x + beta_12."""

    n = 3
    s = 4
    genus = 3
    _y_lead = 1

    def __init__(self, beta):
        beta = tuple(_as_coeff(b) for b in beta)
        if len(beta) != 4:
            raise CurveError("need (beta_3, beta_6, beta_9, beta_12)")
        self.beta = beta
        if not self.is_symbolic:
            c = [1] + [complex(_to_number(b)) for b in beta]
            roots = np.roots(c)
            scale = max(1.0, float(np.max(np.abs(roots))))
            d = np.abs(roots[:, None] - roots[None, :]) + np.eye(4) * scale
            if np.min(d) < 1e-8 * scale:
                raise CurveError("curve is singular: repeated root of the quartic")

    @classmethod
    def symbolic(cls) -> "CyclicTrigonalCurve":
        weights = (3, 6, 9, 12)
        return cls([ExactPoly.variable(k, 4, weights) for k in range(4)])

    def coefficient_values(self) -> tuple:
        return self.beta

    def f(self, x):
        b3, b6, b9, b12 = self.beta
        return _poly_eval([b12, b9, b6, b3, 1], x)

    def rhs_of(self, X):
        return self.f(X)

    def _rhs_normalized(self, prec: int) -> Laurent:
        coeffs = [0] * prec
        coeffs[0] = 1
        for i, b in enumerate(self.beta, start=1):
            if 3 * i < prec:
                coeffs[3 * i] = b
        return Laurent(0, coeffs, prec)

    def __repr__(self):
        return f"CyclicTrigonalCurve(beta={self.beta})"


def local_at_infinity(curve: PlaneCurve, order: int) -> tuple[LocalExpansion, LocalExpansion]:
    """x(xi) = xi^{-n} and y(xi) with ``order`` terms after the leading power."""
    if order < 1:
        raise ValueError("order must be >= 1")
    X, Y = curve.local_laurent(order + 1)
    return LocalExpansion(-curve.n, (1,)), LocalExpansion.from_laurent(Y, order)


def holomorphic_basis(curve: PlaneCurve) -> list[Differential]:
    """Holomorphic differentials ordered by vanishing order at infinity.

    Hyperelliptic: u_i = x^{g-i} dx / y.  Trigonal: dx/(3y), x dx/(3y^2), dx/(3y^2).
    """
    if isinstance(curve, HyperellipticCurve):
        g = curve.genus
        out = []
        for i in range(1, g + 1):
            numer = tuple([0] * (g - i) + [1])
            label = "dx/y" if g == i else ("x dx/y" if g - i == 1 else f"x^{g - i} dx/y")
            out.append(Differential(numer, 1, Fraction(1), label))
        return out
    if isinstance(curve, CyclicTrigonalCurve):
        return [
            Differential((1,), 1, Fraction(1, 3), "dx/(3y)"),
            Differential((0, 1), 2, Fraction(1, 3), "x dx/(3y^2)"),
            Differential((1,), 2, Fraction(1, 3), "dx/(3y^2)"),
        ]
    raise TypeError(f"unsupported curve {curve!r}")


def meromorphic_basis(curve: PlaneCurve) -> list[Differential]:
    """Second-kind differentials r_j, dual to ``holomorphic_basis``.

    r_j has its only pole at infinity, of order n_j + 1.  For hyperelliptic
    curves this is the family
        sum_{k=J}^{2g+1-J} (k+1-J) lambda_{k+1+J} x^k dx / (4y)
    with J = g + 1 - j.
    """
    if isinstance(curve, HyperellipticCurve):
        g = curve.genus
        out = []
        for j in range(1, g + 1):
            J = g + 1 - j
            numer = [0] * (2 * g + 2 - J)
            for k in range(J, 2 * g + 2 - J):
                numer[k] = curve.lam(k + 1 + J) * (k + 1 - J)
            out.append(Differential(tuple(numer), 1, Fraction(1, 4), f"r_{j}"))
        return out
    if isinstance(curve, CyclicTrigonalCurve):
        b3, b6 = curve.beta[0], curve.beta[1]
        return [
            Differential((0, 0, 1), 2, Fraction(1, 3), "x^2 dx/(3y^2)"),
            Differential((0, -2), 1, Fraction(1, 3), "-2x dx/(3y)"),
            Differential((b6 * -1, b3 * -3, -5), 1, Fraction(1, 3), "-(5x^2+3b3 x+b6) dx/(3y)"),
        ]
    raise TypeError(f"unsupported curve {curve!r}")


def kleinian_2polar(curve: HyperellipticCurve, x, z):
    """F(x, z) = sum_m x^m z^m (2 lambda_{2m} + (x + z) lambda_{2m+1})."""
    total = 0
    for m in range(curve.genus + 1):
        total = total + (x * z) ** m * (2 * curve.lam(2 * m) + (x + z) * curve.lam(2 * m + 1))
    return total


def trigonal_T(curve: CyclicTrigonalCurve, x, z):
    b3, b6, b9, b12 = curve.beta
    return (3 * b12 + (z + 2 * x) * b9 + x * (x + 2 * z) * b6
            + 3 * b3 * x * x * z + x * x * z * z + 2 * x * x * x * z)


def two_polar(curve: PlaneCurve, p, q):
    """Numerator F(p, q) of the algebraic bi-differential
    F dx dz / ((x - z)^2 P_y(p) P_w(q))."""
    (x, y), (z, w) = p, q
    if isinstance(curve, HyperellipticCurve):
        return kleinian_2polar(curve, x, z) + 2 * y * w
    if isinstance(curve, CyclicTrigonalCurve):
        return 3 * w * w * y * y + w * trigonal_T(curve, x, z) + y * trigonal_T(curve, z, x)
    raise TypeError(f"unsupported curve {curve!r}")


def _two_polar_monomials(curve: PlaneCurve) -> list[tuple[int, int, int, int, object]]:
    """F as a list of (a, b, c, d, coeff) meaning coeff x^a y^b z^c w^d."""
    terms: dict[tuple[int, int, int, int], object] = {}

    def add(a, b, c, d, coef):
        key = (a, b, c, d)
        terms[key] = terms.get(key, 0) + coef

    if isinstance(curve, HyperellipticCurve):
        for m in range(curve.genus + 1):
            add(m, 0, m, 0, 2 * curve.lam(2 * m))
            add(m + 1, 0, m, 0, curve.lam(2 * m + 1))
            add(m, 0, m + 1, 0, curve.lam(2 * m + 1))
        add(0, 1, 0, 1, 2)
    elif isinstance(curve, CyclicTrigonalCurve):
        b3, b6, b9, b12 = curve.beta
        # T(x, z) monomials as (power of x, power of z, coeff)
        T = [(0, 0, 3 * b12), (0, 1, b9), (1, 0, 2 * b9), (2, 0, b6), (1, 1, 2 * b6),
             (2, 1, 3 * b3), (2, 2, 1), (3, 1, 2)]
        add(0, 2, 0, 2, 3)
        for px, pz, c in T:
            add(px, 0, pz, 1, c)  # w T(x, z)
            add(pz, 1, px, 0, c)  # y T(z, x)
    else:
        raise TypeError(f"unsupported curve {curve!r}")
    return [(a, b, c, d, v) for (a, b, c, d), v in terms.items()]


def _series_is_zero(c) -> bool:
    if isinstance(c, ExactPoly):
        return not c.terms
    return c == 0


def mu_alg_table(curve: PlaneCurve, W: int, check_tol: float = 1e-10) -> dict[tuple[int, int], object]:
    """Regular-part coefficients mu_ij (i + j <= W) of the algebraic bi-differential.

    With x = xi^{-n}, expand 1/(x - z)^2 = sum_k (k+1) z^k x^{-k-2} in the
    region |xi| < |eta|; each monomial of F then factors into a series in xi
    times a series in eta and the coefficient of xi^i eta^j is a finite sum.
    The polar part must equal 1/(xi - eta)^2; this is checked on the way.
    """
    if W < 2:
        raise ValueError("W must be >= 2")
    n, s = curve.n, curve.s
    monos = _two_polar_monomials(curve)
    amax = max(max(a, c) for a, _, c, _, _ in monos)
    bmax = max(max(b, d) for _, b, _, d, _ in monos)
    # worst valuation of the one-variable factors
    vmin = -n * amax - s * bmax - n - 1 + s * (n - 1)
    # x^{-k-2} contributes xi^{n(k+2)}, so k is bounded by the factor valuations
    kmax = max(0, (W - vmin) // n - 2)
    need = W + n * kmax + 1
    prec = need - vmin + 2
    X, Y = curve.local_laurent(prec)
    dX = X.derivative()
    inv_Py = curve.P_y(Y).inverse()
    base = dX * inv_Py
    ypows = [Y ** 0]
    for _ in range(bmax):
        ypows.append(ypows[-1] * Y)
    xpows = {}

    def xpow(e):
        if e not in xpows:
            xpows[e] = Laurent(-n * e, [1], prec + 10 * n * (abs(e) + 1))
        return xpows[e]

    factor_cache = {}

    def factor(a, b):
        if (a, b) not in factor_cache:
            factor_cache[(a, b)] = base * ypows[b] * xpow(a)
        return factor_cache[(a, b)]

    def coef(i, j):
        total = 0
        for a, b, c, d, v in monos:
            fa = factor(a, b)
            gc = factor(c, d)
            for k in range(kmax + 1):
                # x^{-k-2} -> xi^{n(k+2)}, z^k -> eta^{-nk}
                try:
                    cf = fa[i - n * (k + 2)]
                    cg = gc[j + n * k]
                except IndexError:
                    raise ArithmeticError("insufficient precision in mu_alg_table") from None
                if _series_is_zero(cf) or _series_is_zero(cg):
                    continue
                total = total + v * cf * cg * (k + 1)
        return total

    # polar part: coefficient of xi^0 eta^{-2} must be 1, of xi^1 eta^{-3} must be 2,
    # and the coefficient of xi^0 eta^{-1} must vanish
    for (i, j, expect) in ((0, -2, 1), (1, -3, 2), (0, -1, 0), (2, -4, 3)):
        got = coef(i, j)
        diff = got - expect
        if isinstance(diff, ExactPoly):
            bad = bool(diff.terms)
        else:
            bad = abs(complex(diff)) > check_tol
        if bad:
            raise ArithmeticError(f"double-pole normalization failed at xi^{i} eta^{j}: {got}")
    table = {}
    for i in range(W + 1):
        for j in range(W + 1 - i):
            if (j, i) in table:
                table[(i, j)] = table[(j, i)]
            else:
                table[(i, j)] = coef(i, j)
    return table


def mu_alg_matrix(curve: PlaneCurve, W: int) -> np.ndarray:
    """Numeric mu^alg as a dense (W+1) x (W+1) array (entries with i + j > W are zero)."""
    tab = mu_alg_table(curve, W)
    out = np.zeros((W + 1, W + 1), dtype=complex)
    for (i, j), v in tab.items():
        out[i, j] = complex(_to_number(v))
    return out


def winding_numerators(curve: PlaneCurve, kmax: int) -> list:
    """R_1..R_kmax with u_i = -sum_j (R_j)_i xi^{j-1} d xi.

    Returned as a list of length kmax; element k-1 is R_k, a list of g
    coefficients in the curve's coefficient ring.
    """
    g = curve.genus
    if kmax < curve.gaps[-1]:
        raise ValueError(f"kmax must be >= n_g = {curve.gaps[-1]}")
    prec = kmax + 2 * curve.s + 4
    local = [u.local(curve, prec) for u in holomorphic_basis(curve)]
    return [[local[i][k - 1] * -1 for i in range(g)] for k in range(1, kmax + 1)]


def winding_matrix(curve: PlaneCurve, kmax: int) -> np.ndarray:
    """Numeric R as a g x kmax array whose column k-1 is R_k."""
    R = winding_numerators(curve, kmax)
    return np.array([[complex(_to_number(c)) for c in Rk] for Rk in R]).T


def curve_from_json(data) -> PlaneCurve:
    """Parse the curve JSON description (dict, JSON text or path)."""
    if isinstance(data, (str, Path)) and not str(data).lstrip().startswith("{"):
        with open(data) as fh:
            data = json.load(fh)
    elif isinstance(data, str):
        data = json.loads(data)
    kind = data.get("type", "hyperelliptic")
    if kind == "hyperelliptic":
        if "branch_points" in data:
            c = HyperellipticCurve.from_branch_points(data["branch_points"])
            if "genus" in data and int(data["genus"]) != c.genus:
                raise CurveError("genus does not match the number of branch points")
            return c
        if "alpha" not in data:
            raise CurveError("hyperelliptic curve needs 'alpha' or 'branch_points'")
        alpha = [_json_number(a) for a in data["alpha"]]
        g = int(data.get("genus", (len(alpha) - 1) // 2))
        return HyperellipticCurve(g, alpha)
    if kind in ("cyclic_trigonal", "trigonal"):
        return CyclicTrigonalCurve([_json_number(b) for b in data["beta"]])
    raise CurveError(f"unknown curve type {kind!r}")


def _json_number(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise CurveError(f"complex numbers are [re, im] pairs, got {v}")
        return complex(v[0], v[1])
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def curve_to_json(curve: PlaneCurve) -> dict:
    if isinstance(curve, HyperellipticCurve):
        out = {"type": "hyperelliptic", "genus": curve.genus,
               "alpha": [float(_to_number(a)) if not isinstance(a, complex) else [a.real, a.imag]
                         for a in curve.alpha]}
        if curve.branch_points is not None:
            out["branch_points"] = list(curve.branch_points)
        return out
    return {"type": "cyclic_trigonal",
            "beta": [float(_to_number(b)) if not isinstance(b, complex) else [b.real, b.imag]
                     for b in curve.beta]}
