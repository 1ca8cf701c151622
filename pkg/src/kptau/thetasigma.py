"""Riemann theta with derivatives, and the Kleinian sigma, zeta and wp functions.

    theta(z) = sum_m exp(i pi m^T T m + 2 i pi m^T z)
    sigma(v) = theta(A^{-1} v) exp(v^T kappa v / 2)

All derivatives are lattice sums with polynomial prefactors; nothing here
uses finite differences.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .periods import PeriodData


class DivisorError(ArithmeticError):
    """The evaluation point lies on (or numerically at) the theta divisor."""


class ThetaContext:
    """Lattice data for one period matrix.

    The box |m - c|_inf <= radius is centred on the nearest lattice point to
    the Gaussian peak c = -Im(T)^{-1} Im(z), so large imaginary parts of z
    cost nothing extra.
    """

    def __init__(self, T, tail_tol: float = 1e-15, max_order: int = 16):
        T = np.asarray(T, dtype=complex)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise ValueError("T must be square")
        if np.abs(T - T.T).max() > 1e-8 * max(1.0, np.abs(T).max()):
            raise ValueError("T must be symmetric")
        T = (T + T.T) / 2
        imT = T.imag
        ev = np.linalg.eigvalsh(imT)
        if ev.min() <= 0:
            raise ValueError("Im(T) is not positive definite")
        self.T = T
        self.g = T.shape[0]
        self.tail_tol = tail_tol
        self.max_order = max_order
        self.lam_min = float(np.pi * ev.min())
        self.radius = int(math.ceil(math.sqrt(-math.log(tail_tol) / self.lam_min))) + max_order
        self._imT_inv = np.linalg.inv(imT)
        r = self.radius
        pts = np.array(list(itertools.product(range(-r, r + 1), repeat=self.g)), dtype=float)
        self.offsets = pts

    @classmethod
    def from_periods(cls, pd: PeriodData, **kw) -> "ThetaContext":
        return cls(pd.T_norm, **kw)

    def lattice(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray, float]:
        """Lattice points m, exponents i pi m^T T m + 2 i pi m.z shifted by their max real part."""
        z = np.asarray(z, dtype=complex)
        centre = np.round(-self._imT_inv @ z.imag)
        m = self.offsets + centre
        expo = 1j * np.pi * np.einsum("ni,ij,nj->n", m, self.T, m) + 2j * np.pi * (m @ z)
        shift = float(expo.real.max())
        return m, expo - shift, shift


def theta(z, ctx: ThetaContext) -> complex:
    m, e, shift = ctx.lattice(z)
    return complex(np.sum(np.exp(e)) * math.exp(shift))


def theta_deriv(z, ctx: ThetaContext, alpha) -> complex:
    """Mixed partial d^alpha theta / dz^alpha (alpha a multi-index of length g)."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != ctx.g:
        raise ValueError(f"multi-index must have {ctx.g} entries")
    if sum(alpha) > ctx.max_order:
        raise ValueError(f"derivative order {sum(alpha)} exceeds max_order {ctx.max_order}")
    m, e, shift = ctx.lattice(z)
    pref = np.ones(len(m), dtype=complex)
    for j, a in enumerate(alpha):
        if a:
            pref = pref * (2j * np.pi * m[:, j]) ** a
    return complex(np.sum(pref * np.exp(e)) * math.exp(shift))


def theta_directional(z, ctx: ThetaContext, directions, order: int):
    """Derivative tensors of theta along the given z-space directions.

    Returns a list D with D[k] the symmetric k-tensor of k-th derivatives
    (k = 0..order) and the absolute lattice sum used as a cancellation scale.
    """
    if order > ctx.max_order:
        raise ValueError(f"order {order} exceeds max_order {ctx.max_order}")
    m, e, shift = ctx.lattice(z)
    D = np.asarray(directions, dtype=complex)  # columns are directions
    c = 2j * np.pi * (m @ D)  # (N, d)
    w = np.exp(e)
    scale = float(np.sum(np.abs(w))) * math.exp(shift)
    out = [complex(np.sum(w)) * math.exp(shift)]
    letters = "abcdefgh"
    for k in range(1, order + 1):
        spec = ",".join("n" + letters[i] for i in range(k)) + ",n->" + letters[:k]
        out.append(np.einsum(spec, *([c] * k), w) * math.exp(shift))
    return out, scale


def theta_taylor(z, ctx: ThetaContext, directions, monomials, weights=None) -> np.ndarray:
    """Taylor coefficients of theta(z + sum_k t_k d_k) for the given exponent tuples.

    ``directions`` is a (g, M) array whose column k-1 is d_k; ``monomials``
    is a sequence of length-M exponent tuples.  The coefficient of t^m is
    sum_n w_n prod_k (2 i pi n.d_k)^{m_k} / m_k!.
    """
    m, e, shift = ctx.lattice(z)
    D = np.asarray(directions, dtype=complex)
    c = 2j * np.pi * (m @ D)  # (N, M)
    w = np.exp(e) * math.exp(shift)
    monos = np.asarray(monomials, dtype=int)
    emax = monos.max(axis=0) if len(monos) else np.zeros(D.shape[1], dtype=int)
    # powers[k][p] = c_k^p / p!
    powers = []
    for k in range(D.shape[1]):
        col = [np.ones(len(m), dtype=complex)]
        for p in range(1, int(emax[k]) + 1):
            col.append(col[-1] * c[:, k] / p)
        powers.append(col)
    out = np.zeros(len(monos), dtype=complex)
    for i, mono in enumerate(monos):
        term = w
        for k, p in enumerate(mono):
            if p:
                term = term * powers[k][p]
        out[i] = np.sum(term)
    return out


def log_derivatives(D: list, order: int) -> list:
    """Derivative tensors of log f from those of f (orders 1..4)."""
    f = D[0]
    out = [np.log(f)]
    if order >= 1:
        f1 = D[1] / f
        out.append(f1)
    if order >= 2:
        f2 = D[2] / f
        out.append(f2 - np.einsum("i,j->ij", f1, f1))
    if order >= 3:
        f3 = D[3] / f
        s21 = (np.einsum("ij,k->ijk", f2, f1) + np.einsum("ik,j->ijk", f2, f1)
               + np.einsum("jk,i->ijk", f2, f1))
        out.append(f3 - s21 + 2 * np.einsum("i,j,k->ijk", f1, f1, f1))
    if order >= 4:
        f4 = D[4] / f
        s31 = (np.einsum("ijk,l->ijkl", f3, f1) + np.einsum("ijl,k->ijkl", f3, f1)
               + np.einsum("ikl,j->ijkl", f3, f1) + np.einsum("jkl,i->ijkl", f3, f1))
        s22 = (np.einsum("ij,kl->ijkl", f2, f2) + np.einsum("ik,jl->ijkl", f2, f2)
               + np.einsum("il,jk->ijkl", f2, f2))
        s211 = (np.einsum("ij,k,l->ijkl", f2, f1, f1) + np.einsum("ik,j,l->ijkl", f2, f1, f1)
                + np.einsum("il,j,k->ijkl", f2, f1, f1) + np.einsum("jk,i,l->ijkl", f2, f1, f1)
                + np.einsum("jl,i,k->ijkl", f2, f1, f1) + np.einsum("kl,i,j->ijkl", f2, f1, f1))
        out.append(f4 - s31 - s22 + 2 * s211 - 6 * np.einsum("i,j,k,l->ijkl", f1, f1, f1, f1))
    if order > 4:
        raise ValueError("log derivatives implemented up to order 4")
    return out


def _set_partitions(items: tuple):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [(first,)] + part
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]


def wp_mixed(v, pd: PeriodData, ctx: ThetaContext, idx, divisor_floor: float = 1e-10) -> complex:
    """wp_{i1...ik}(v) = -d^k log sigma / dv_{i1}...dv_{ik} for any order k >= 2 (one-based indices).

    Uses the set-partition (cumulant) expansion of mixed log-derivatives.
    """
    idx = tuple(int(i) - 1 for i in idx)
    if len(idx) < 2:
        raise ValueError("wp needs at least two indices")
    if len(idx) > ctx.max_order:
        raise ValueError(f"order {len(idx)} exceeds max_order {ctx.max_order}")
    v = np.asarray(v, dtype=complex)
    Ainv = np.linalg.inv(pd.A)
    m, e, shift = ctx.lattice(Ainv @ v)
    w = np.exp(e)
    c = 2j * np.pi * (m @ Ainv)  # derivative factor along each v-direction
    f0 = np.sum(w)
    if abs(f0) < divisor_floor * np.sum(np.abs(w)):
        raise DivisorError("divisor point: theta vanishes to working precision")
    cache = {}

    def moment(block):
        key = tuple(sorted(block))
        if key not in cache:
            cache[key] = np.sum(np.prod(c[:, list(key)], axis=1) * w) / f0
        return cache[key]

    total = 0j
    for part in _set_partitions(tuple(range(len(idx)))):
        r = len(part)
        term = (-1) ** (r - 1) * math.factorial(r - 1)
        for block in part:
            term = term * moment([idx[b] for b in block])
        total += term
    out = -total
    if len(idx) == 2:
        out -= pd.kappa[idx[0], idx[1]]
    return complex(out)


def sigma(v, pd: PeriodData, ctx: ThetaContext) -> complex:
    """theta(A^{-1} v) exp(v^T kappa v / 2)."""
    v = np.asarray(v, dtype=complex)
    z = np.linalg.solve(pd.A, v)
    return theta(z, ctx) * np.exp(0.5 * v @ pd.kappa @ v)


@dataclass(frozen=True)
class KleinPoint:
    """zeta_i, wp_ij, wp_ijk, wp_ijkl at v (tensors indexed from zero)."""

    v: np.ndarray
    sigma: complex
    zeta: np.ndarray
    wp2: np.ndarray
    wp3: np.ndarray | None = None
    wp4: np.ndarray | None = None
    higher: dict | None = None

    def wp(self, *idx: int) -> complex:
        """wp with one-based indices, e.g. wp(1, 1) or wp(1, 1, 1, 2)."""
        if len(idx) >= 5:
            key = tuple(sorted(idx))
            if not self.higher or key not in self.higher:
                raise ValueError(f"order {len(idx)} not computed")
            return complex(self.higher[key])
        t = {2: self.wp2, 3: self.wp3, 4: self.wp4}[len(idx)]
        if t is None:
            raise ValueError(f"order {len(idx)} not computed")
        return complex(t[tuple(i - 1 for i in idx)])

    def z(self, i: int) -> complex:
        """zeta_i with a one-based index."""
        return complex(self.zeta[i - 1])

    def to_json(self) -> dict:
        g = len(self.v)

        def enc(x):
            return [float(np.real(x)), float(np.imag(x))]

        out = {"v": [enc(x) for x in self.v], "sigma": enc(self.sigma),
               "zeta": {str(i + 1): enc(self.zeta[i]) for i in range(g)}}
        for name, t in (("wp2", self.wp2), ("wp3", self.wp3), ("wp4", self.wp4)):
            if t is None:
                continue
            k = t.ndim
            entries = {}
            for idx in itertools.combinations_with_replacement(range(g), k):
                entries["".join(str(i + 1) for i in idx)] = enc(t[idx])
            out[name] = entries
        for key, val in (self.higher or {}).items():
            out.setdefault(f"wp{len(key)}", {})["".join(str(i) for i in key)] = enc(val)
        return out


def wp_values(v, pd: PeriodData, ctx: ThetaContext, max_order: int = 4,
              divisor_floor: float = 1e-10) -> KleinPoint:
    """zeta and wp tensors at v from analytic theta derivatives.

    Orders above 4 are stored in ``KleinPoint.higher`` keyed by sorted
    one-based index tuples.
    """
    if not 2 <= max_order <= ctx.max_order:
        raise ValueError(f"max_order must be between 2 and {ctx.max_order}")
    v = np.asarray(v, dtype=complex)
    Ainv = np.linalg.inv(pd.A)
    z = Ainv @ v
    D, scale = theta_directional(z, ctx, Ainv, min(max_order, 4))
    if abs(D[0]) < divisor_floor * scale:
        raise DivisorError(f"divisor point: |theta| = {abs(D[0]):.3g} relative to lattice scale {scale:.3g}")
    L = log_derivatives(D, min(max_order, 4))
    kappa = pd.kappa
    sig = D[0] * np.exp(0.5 * v @ kappa @ v)
    zeta = kappa @ v + L[1]
    wp2 = -(kappa + L[2])
    wp2 = (wp2 + wp2.T) / 2
    wp3 = -L[3] if max_order >= 3 else None
    wp4 = -L[4] if max_order >= 4 else None
    higher = {}
    for k in range(5, max_order + 1):
        for key in itertools.combinations_with_replacement(range(1, pd.g + 1), k):
            higher[key] = wp_mixed(v, pd, ctx, key, divisor_floor)
    return KleinPoint(v, complex(sig), zeta, wp2, wp3, wp4, higher or None)
