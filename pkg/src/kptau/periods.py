"""First and second kind period matrices of real hyperelliptic curves.

Branch points a_1 < ... < a_{2g+1} are real.  Every period is a signed sum of
segment integrals between consecutive branch points; the square-root
endpoint singularities are removed by x = mid + half cos(theta), which turns
each segment into a Gauss-Chebyshev sum.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .curve import (CurveError, Differential, HyperellipticCurve, PlaneCurve, holomorphic_basis,
                    meromorphic_basis, winding_matrix)


class PeriodError(ValueError):
    """Period data that fails validation or cannot be computed."""


def _J(g: int) -> np.ndarray:
    z, one = np.zeros((g, g)), np.eye(g)
    return np.block([[z, -one], [one, z]])


@dataclass(frozen=True)
class PeriodData:
    """Period matrices A, B (holomorphic) and S, T2 (second kind, sign-flipped)."""

    A: np.ndarray
    B: np.ndarray
    S: np.ndarray
    T2: np.ndarray
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        for name in ("A", "B", "S", "T2"):
            m = np.array(getattr(self, name), dtype=complex)
            m.setflags(write=False)
            object.__setattr__(self, name, m)
        g = self.A.shape[0]
        for name in ("A", "B", "S", "T2"):
            if getattr(self, name).shape != (g, g):
                raise PeriodError(f"{name} must be {g}x{g}")

    @property
    def g(self) -> int:
        return self.A.shape[0]

    @property
    def T_norm(self) -> np.ndarray:
        return np.linalg.solve(self.A, self.B)

    @property
    def kappa(self) -> np.ndarray:
        """S A^{-1}: rows and columns both index differentials, so kappa acts on v."""
        return np.linalg.solve(self.A.T, self.S.T).T

    @property
    def A_inv(self) -> np.ndarray:
        return np.linalg.inv(self.A)

    def block(self) -> np.ndarray:
        return np.block([[self.A, self.B], [self.S, self.T2]])

    def residuals(self) -> dict[str, float]:
        """Residuals of every invariant (all should be tiny)."""
        T = self.T_norm
        k = self.kappa
        out = {
            "legendre": legendre_residual(self),
            "T_symmetry": float(np.abs(T - T.T).max()),
            "kappa_symmetry": float(np.abs(k - k.T).max()),
            "ABt_symmetry": float(np.abs(self.A @ self.B.T - self.B @ self.A.T).max()),
        }
        ev = np.linalg.eigvalsh((T.imag + T.imag.T) / 2)
        out["ImT_min_eig"] = float(ev.min())
        return out

    def validate(self, tol: float = 1e-8) -> None:
        r = self.residuals()
        bad = [f"{k}={v:.3g}" for k, v in r.items() if k != "ImT_min_eig" and v > tol]
        if r["ImT_min_eig"] <= 0:
            bad.append(f"Im(T) not positive definite (min eigenvalue {r['ImT_min_eig']:.3g})")
        if bad:
            raise PeriodError("period data fails validation: " + ", ".join(bad))


def legendre_residual(pd: PeriodData) -> float:
    """max |P J P^T + 2 i pi J| for P = (A B; S T2)."""
    P = pd.block()
    J = _J(pd.g)
    return float(np.abs(P @ J @ P.T + 2j * np.pi * J).max())


def _segment_integrand(curve: HyperellipticCurve, diff: Differential, lo: float, hi: float, theta):
    """phi(x) / sqrt(h(x)) with f(x) = (x - lo)(hi - x) h(x) on the segment."""
    x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos(theta)
    others = [b for b in curve.branch_points if b != lo and b != hi]
    h = -4.0 * np.prod([x - b for b in others], axis=0)
    if diff.ypow != 1:
        raise PeriodError("only differentials of the form p(x) dx / y are supported")
    numer = np.array([complex(c) for c in diff.numer])[::-1]
    return complex(diff.scale) * np.polyval(numer, x) / np.sqrt(h.astype(complex))


def segment_integral(curve: HyperellipticCurve, diff: Differential, i: int, nodes: int) -> complex:
    """Integral of diff along [a_i, a_{i+1}] (zero-based i) on the sheet with principal sqrt."""
    a = curve.branch_points
    th = (2 * np.arange(1, nodes + 1) - 1) * np.pi / (2 * nodes)
    return complex(np.pi / nodes * np.sum(_segment_integrand(curve, diff, a[i], a[i + 1], th)))


def _adaptive_segment(curve, diff, i, nodes, tol, max_nodes):
    prev = segment_integral(curve, diff, i, nodes)
    while True:
        nodes *= 2
        if nodes > max_nodes:
            raise PeriodError(f"quadrature for {diff.label} on segment [a_{i + 1}, a_{i + 2}] "
                              f"did not converge with {max_nodes} nodes")
        cur = segment_integral(curve, diff, i, nodes)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur, nodes
        prev = cur


def _cycle_matrices(H: np.ndarray, g: int) -> tuple[np.ndarray, np.ndarray]:
    """a_k = 2(-1)^{k-1} H_{2k-1}, b_k = 2 sum_{j>=k} (-1)^j H_{2j} (one-based segments)."""
    A = np.stack([2 * (-1) ** k * H[:, 2 * k] for k in range(g)], axis=1)
    B = np.stack([sum(2 * (-1) ** (j + 1) * H[:, 2 * j + 1] for j in range(k, g)) for k in range(g)], axis=1)
    return A, B


def hyperelliptic_periods(curve: HyperellipticCurve, nodes: int | None = None, tol: float = 1e-10,
                          max_nodes: int = 1 << 16, validate: bool = True) -> PeriodData:
    """Period matrices for the canonical real-branch-point homology basis.

    a_k encircles [a_{2k-1}, a_{2k}]; b_k is the sum of the gap cycles over
    [a_{2j}, a_{2j+1}], j >= k.  With ``nodes`` given, a fixed rule is used;
    otherwise nodes are doubled until successive values agree to ``tol``.
    """
    if not isinstance(curve, HyperellipticCurve) or curve.branch_points is None:
        raise CurveError("hyperelliptic_periods needs a hyperelliptic curve with real branch points")
    g = curve.genus
    diffs = holomorphic_basis(curve) + meromorphic_basis(curve)
    H = np.zeros((2 * g, 2 * g), dtype=complex)
    used = 0
    for r, d in enumerate(diffs):
        for i in range(2 * g):
            if nodes is None:
                H[r, i], n = _adaptive_segment(curve, d, i, 32, tol, max_nodes)
                used = max(used, n)
            else:
                H[r, i] = segment_integral(curve, d, i, nodes)
                used = nodes
    A, B = _cycle_matrices(H[:g], g)
    S, T2 = _cycle_matrices(H[g:], g)
    pd = PeriodData(A, B, -S, -T2, meta={"nodes": used, "branch_points": list(curve.branch_points)})
    if validate:
        pd.validate()
    return pd


def winding_vectors(pd: PeriodData, curve: PlaneCurve, kmax: int) -> list[np.ndarray]:
    """U_k = A^{-1} R_k for k = 1..kmax."""
    R = winding_matrix(curve, kmax)
    if R.shape[0] != pd.g:
        raise PeriodError("period data and curve have different genus")
    try:
        U = np.linalg.solve(pd.A, R)
    except np.linalg.LinAlgError as exc:
        raise PeriodError("A is singular") from exc
    return [U[:, k] for k in range(kmax)]


def _encode(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _decode(rows, g: int, name: str) -> np.ndarray:
    try:
        m = np.array([[complex(e[0], e[1]) if isinstance(e, (list, tuple)) else complex(e) for e in row]
                      for row in rows], dtype=complex)
    except (TypeError, IndexError, ValueError) as exc:
        raise PeriodError(f"malformed matrix {name}") from exc
    if m.shape != (g, g):
        raise PeriodError(f"matrix {name} has shape {m.shape}, expected ({g}, {g})")
    return m


def save_periods(pd: PeriodData, path) -> None:
    data = {"g": pd.g, "A": _encode(pd.A), "B": _encode(pd.B), "S": _encode(pd.S), "T2": _encode(pd.T2)}
    Path(path).write_text(json.dumps(data, indent=1))


def periods_from_dict(data: dict, validate: bool = True, tol: float = 1e-8) -> PeriodData:
    try:
        g = int(data["g"])
        mats = {k: _decode(data[k], g, k) for k in ("A", "B", "S", "T2")}
    except KeyError as exc:
        raise PeriodError(f"period file lacks field {exc}") from None
    pd = PeriodData(**mats)
    if validate:
        pd.validate(tol)
    else:
        try:
            pd.validate(tol)
        except PeriodError as exc:
            warnings.warn(str(exc))
    return pd


def load_periods(path, validate: bool = True, tol: float = 1e-8) -> PeriodData:
    with open(path) as fh:
        data = json.load(fh)
    return periods_from_dict(data, validate, tol)
