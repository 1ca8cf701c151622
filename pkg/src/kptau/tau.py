"""Tau functions of curves as truncated series, and their Plücker data.

Two gauges are built from the same theta Taylor jet:

    sigma gauge:  sigma(sum_k R_k t_k + v) / sigma(v) * exp(1/2 sum mu_{k-1,l-1} t_k t_l)
    theta gauge:  exp(-1/2 sum Q_kl t_k t_l) theta(e + sum_k U_k t_k) / theta(e)

with e = A^{-1} v, U_k = A^{-1} R_k and Q_{i+1,j+1} = -(mu_ij + R_{i+1}^T kappa R_{j+1}),
where mu is the algebraic bi-differential table of ``curve.mu_alg_table``.
They differ by exp(sum_k Lambda_k t_k) with Lambda_k = R_k^T kappa v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .curve import PlaneCurve, mu_alg_matrix, winding_matrix
from .partitions import FrobeniusCoords, Partition, frobenius_of, partitions_up_to_weight
from .periods import PeriodData
from .schur import ExactPoly, complete_homogeneous, pairing_weight, schur_jacobi_trudi
from .series import TauSeries, monomial_basis, series_exp
from .thetasigma import DivisorError, ThetaContext, theta_directional, theta_taylor


class TruncationError(ValueError):
    """The series truncation is too small for the requested coefficient."""


@dataclass
class TauModel:
    """Curve, periods and the point v (sigma-gauge argument; e = A^{-1} v)."""

    curve: PlaneCurve
    pd: PeriodData
    v: np.ndarray
    W: int = 10
    gauge: str = "sigma"
    ctx: ThetaContext | None = None
    divisor_floor: float = 1e-10
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.v = np.asarray(self.v, dtype=complex)
        if self.v.shape != (self.pd.g,):
            raise ValueError(f"v must have {self.pd.g} components")
        if self.curve.genus != self.pd.g:
            raise ValueError("curve genus and period data disagree")
        if self.gauge not in ("sigma", "theta"):
            raise ValueError("gauge must be 'sigma' or 'theta'")
        if self.W < 2:
            raise ValueError("W must be >= 2")
        if self.ctx is None:
            self.ctx = ThetaContext.from_periods(self.pd)
        D, scale = theta_directional(self.e, self.ctx, np.eye(self.pd.g), 0)
        if abs(D[0]) < self.divisor_floor * scale:
            raise DivisorError(f"divisor point: |theta(e)| = {abs(D[0]):.3g} at lattice scale {scale:.3g}")

    @property
    def M(self) -> int:
        return self.W

    @property
    def e(self) -> np.ndarray:
        return np.linalg.solve(self.pd.A, self.v)

    @property
    def R(self) -> np.ndarray:
        """g x W array whose column k-1 is R_k."""
        if "R" not in self._cache:
            self._cache["R"] = winding_matrix(self.curve, self.W + 2)
        return self._cache["R"][:, : self.W]

    @property
    def U(self) -> np.ndarray:
        return np.linalg.solve(self.pd.A, self.R)

    @property
    def mu_alg(self) -> np.ndarray:
        if "mu" not in self._cache:
            self._cache["mu"] = mu_alg_matrix(self.curve, self.W)
        return self._cache["mu"]

    @property
    def Lambda(self) -> np.ndarray:
        """Lambda_k = R_k^T kappa v, k = 1..W."""
        return self.R.T @ self.pd.kappa @ self.v

    def theta_jet(self) -> TauSeries:
        """theta(e + sum_k U_k t_k) / theta(e) as a series."""
        if "jet" not in self._cache:
            basis = monomial_basis(self.M, self.W)
            coeffs = theta_taylor(self.e, self.ctx, self.U, basis.monomials)
            if coeffs[0] == 0:
                raise DivisorError("theta(e) vanishes")
            self._cache["jet"] = TauSeries(coeffs / coeffs[0], self.M, self.W)
        return self._cache["jet"]

    def tau(self) -> TauSeries:
        return build_tau_sigma(self) if self.gauge == "sigma" else build_tau_theta(self)


def q_matrix(model: TauModel, W: int | None = None) -> np.ndarray:
    """Q[k-1, l-1] = Q_kl for k + l <= W + 2 (zero beyond)."""
    W = model.W if W is None else W
    mu = model.mu_alg if W <= model.W else mu_alg_matrix(model.curve, W)
    R = winding_matrix(model.curve, W + 1)
    kappa = model.pd.kappa
    n = W + 1
    Q = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n - i):
            if i + j > W:
                continue
            Q[i, j] = -(mu[i, j] + R[:, i] @ kappa @ R[:, j])
    return (Q + Q.T) / 2


def _quadratic_series(C: np.ndarray, M: int, W: int) -> TauSeries:
    """1/2 sum_{k,l >= 1} C[k-1, l-1] t_k t_l."""
    n = min(C.shape[0], M)
    return TauSeries.quadratic(C[:n, :n], M, W)


def build_tau_sigma(model: TauModel) -> TauSeries:
    """Normalised sigma-gauge tau series (constant term 1)."""
    M, W = model.M, model.W
    kappa = model.pd.kappa
    R = model.R
    # sigma(v + R t) / sigma(v) = theta-ratio * exp(Lambda.t + 1/2 t^T R^T kappa R t)
    quad = R.T @ kappa @ R + model.mu_alg[: M, : M]
    expo = TauSeries.linear(model.Lambda, M, W) + _quadratic_series(quad, M, W)
    return model.theta_jet() * series_exp(expo)


def build_tau_theta(model: TauModel) -> TauSeries:
    """Normalised theta-gauge tau series exp(-1/2 Q t t) theta(e + U t) / theta(e)."""
    M, W = model.M, model.W
    Q = q_matrix(model)
    return model.theta_jet() * series_exp(_quadratic_series(-Q, M, W))


def gauge_multiply(tau: TauSeries, c) -> TauSeries:
    """tau * exp(sum_k c_k t_k)."""
    c = list(c)
    if len(c) > tau.M:
        raise ValueError(f"gauge vector longer than M = {tau.M}")
    return tau * series_exp(TauSeries.linear(c, tau.M, tau.W))


def pair(poly: ExactPoly, tau: TauSeries) -> complex:
    """poly(d_t) tau |_{t=0} with d_t = {(1/k) d/dt_k}."""
    total = 0j
    for m, c in poly.terms.items():
        w = sum((k + 1) * e for k, e in enumerate(m))
        if w > tau.W:
            raise TruncationError(f"operator of weight {w} exceeds truncation W = {tau.W}")
        if any(m[tau.M:]):
            raise TruncationError("operator uses flow variables beyond M")
        total += float(c * pairing_weight(m)) * tau.coefficient(m[: tau.M])
    return total


@lru_cache(maxsize=None)
def affine_operator(a: int, b: int) -> ExactPoly:
    """sum_{j=0}^{b} h_{b-j}(-t) h_{a+j+1}(t): pairing it with tau gives A_ab."""
    M = a + b + 1
    acc = ExactPoly({}, M)
    for j in range(b + 1):
        acc = acc + complete_homogeneous(b - j, M).substitute_sign() * complete_homogeneous(a + j + 1, M)
    return acc


@dataclass(frozen=True)
class AffineMatrix:
    """Window A_ab, 0 <= a, b <= K, of the big-cell affine coordinates."""

    entries: np.ndarray

    @property
    def K(self) -> int:
        return self.entries.shape[0] - 1

    def __getitem__(self, ab):
        a, b = ab
        if a > self.K or b > self.K:
            raise IndexError(f"A_{a}{b} outside the window K = {self.K}")
        return complex(self.entries[a, b])


def affine_from_tau(tau: TauSeries, K: int, triangular: bool = False) -> AffineMatrix:
    """A_ab = (-1)^b pi_(a|b) from the bilinear hook operators.

    With ``triangular`` only entries with a + b <= K are computed (the rest
    are NaN), which needs W >= K + 1 instead of W >= 2K + 1.
    """
    need = K + 1 if triangular else 2 * K + 1
    if tau.W < need:
        raise TruncationError(f"window K = {K} needs W >= {need}, have {tau.W}")
    t0 = tau.constant_term()
    A = np.full((K + 1, K + 1), np.nan, dtype=complex)
    for a in range(K + 1):
        for b in range(K + 1):
            if triangular and a + b > K:
                continue
            A[a, b] = pair(affine_operator(a, b), tau) / t0
    return AffineMatrix(A)


def reflect(tau: TauSeries) -> TauSeries:
    """tau(-t); its Plücker coordinates are (-1)^|lambda| pi_{lambda'}."""
    sgn = np.array([(-1) ** sum(m) for m in tau.basis.monomials])
    return TauSeries(tau.coeffs * sgn, tau.M, tau.W)


def baker_frame(A: AffineMatrix) -> AffineMatrix:
    """Convert to the frame of the Baker basis: B_ij = -A_ji (the coordinates of tau(-t))."""
    return AffineMatrix(-A.entries.T)


def plucker_direct(tau: TauSeries, lam) -> complex:
    """pi_lambda = s_lambda(d_t) tau |_0 / tau(0), with s_lambda from Jacobi-Trudi."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    if lam.weight > tau.W:
        raise TruncationError(f"|lambda| = {lam.weight} exceeds truncation W = {tau.W}")
    s = schur_jacobi_trudi(lam, max(lam.weight, 1))
    return pair(s, tau) / tau.constant_term()


def plucker_giambelli(A: AffineMatrix, lam) -> complex:
    """(-1)^{sum b} det(A_{a_i b_j}) over the Frobenius coordinates of lambda."""
    fc = lam if isinstance(lam, FrobeniusCoords) else frobenius_of(
        lam if isinstance(lam, Partition) else Partition(tuple(lam)))
    if fc.rank == 0:
        return 1.0 + 0j
    if max(fc.arms + fc.legs) > A.K:
        raise IndexError(f"{fc} needs a window larger than K = {A.K}")
    sub = np.array([[A[a, b] for b in fc.legs] for a in fc.arms])
    return complex((-1) ** sum(fc.legs) * np.linalg.det(sub))


PluckerTable = dict


def schur_expansion_table(tau_or_model, W: int | None = None) -> dict[Partition, complex]:
    """pi_lambda for every |lambda| <= W (default: the truncation weight)."""
    tau = tau_or_model.tau() if isinstance(tau_or_model, TauModel) else tau_or_model
    W = tau.W if W is None else W
    return {lam: plucker_direct(tau, lam) for lam in partitions_up_to_weight(W)}


def reconstruct_from_pluckers(table: dict[Partition, complex], M: int, W: int) -> TauSeries:
    """sum_lambda pi_lambda s_lambda(t), truncated at weight W."""
    out = TauSeries(None, M, W)
    basis = out.basis
    for lam, val in table.items():
        if lam.weight > W:
            continue
        s = schur_jacobi_trudi(lam, max(lam.weight, 1))
        for m, c in s.terms.items():
            if any(m[M:]):
                continue
            mm = tuple(m[:M]) + (0,) * (M - min(len(m), M))
            out.coeffs[basis.index[mm]] += float(c) * val
    return out


# --- Baker-function route -------------------------------------------------

def baker_quantities(model: TauModel, imax: int, jmax: int):
    """N_i (i <= imax) and M_ij (1 <= j <= jmax, i + j <= W), normalised by theta(e).

    Entries of M beyond the truncation weight are NaN.
    """
    jet = model.theta_jet()
    if imax > jet.W:
        raise TruncationError(f"Baker window needs W >= {imax}")
    N = np.zeros(imax + 1, dtype=complex)
    Mm = np.full((imax + 1, jmax + 1), np.nan, dtype=complex)
    for i in range(imax + 1):
        nv = max(i + jmax, 1)
        hm = complete_homogeneous(i, nv).substitute_sign()
        N[i] = pair(hm, jet)
        for j in range(1, jmax + 1):
            if i + j > jet.W:
                continue
            # nabla_{U_j} = d/dt_j, which is j times the pairing operator (1/j) d/dt_j
            Mm[i, j] = pair(hm * (ExactPoly.variable(j - 1, nv) * j), jet)
    return N, Mm


def _series_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    """Coefficients of (sum num_i z^-i) / (sum den_i z^-i) by back-substitution."""
    if den[0] == 0:
        raise DivisorError("N_0 = theta(e) vanishes")
    out = np.zeros_like(num)
    for i in range(len(num)):
        acc = num[i] - sum(den[l] * out[i - l] for l in range(1, i + 1))
        out[i] = acc / den[0]
    return out


def baker_lambda(model: TauModel, n: int) -> np.ndarray:
    """lambda_i, i = 1..n: mu_i - i sum_{k=1}^{i-1} Q_{k,i-k} / (2k(i-k)).

    mu_i are defined by exp(sum mu_i / (i z^i)) = sum_i N_i z^-i / N_0.  With
    these, tau = exp(lambda.t) * theta-gauge tau satisfies tau(-[1/z]) = tau(0),
    so that its Baker function at t = 0 is exactly 1.
    """
    N, _ = baker_quantities(model, n, 0)
    x = N / N[0]
    # log(1 + sum_{i>=1} x_i z^-i): i L_i = i x_i - sum_{k=1}^{i-1} k L_k x_{i-k}
    L = np.zeros(n + 1, dtype=complex)
    for i in range(1, n + 1):
        L[i] = (i * x[i] - sum(k * L[k] * x[i - k] for k in range(1, i))) / i
    Q = q_matrix(model)
    lam = np.zeros(n, dtype=complex)
    for i in range(1, n + 1):
        lam[i - 1] = i * L[i] - i * sum(Q[k - 1, i - k - 1] / (2 * k * (i - k)) for k in range(1, i))
    return lam


def baker_affine(model: TauModel, K: int, triangular: bool = False) -> AffineMatrix:
    """A_ij = Q_{i+1,j}/(i+1) + P_{i+1,j} (j >= 1), A_i0 = 0, from the Baker basis.

    Entries are in the Baker frame (see ``baker_frame``).  With ``triangular``
    only i + j <= K is filled.
    """
    imax = K + 1
    N, Mm = baker_quantities(model, imax, K)
    P = np.full((imax + 1, K + 1), np.nan, dtype=complex)
    for j in range(1, K + 1):
        P[:, j] = _series_divide(Mm[:, j], N)
    Q = q_matrix(model)
    A = np.full((K + 1, K + 1), np.nan, dtype=complex)
    for i in range(K + 1):
        for j in range(K + 1):
            if triangular and i + j > K:
                continue
            A[i, j] = 0 if j == 0 else Q[i, j - 1] / (i + 1) + P[i + 1, j]
    if not triangular and np.isnan(A).any():
        raise TruncationError(f"Baker window K = {K} needs W >= {2 * K + 1}")
    return AffineMatrix(A)


def baker_gauged_tau(model: TauModel) -> TauSeries:
    """exp(sum lambda_i t_i) times the theta-gauge tau: the tau of the Baker basis."""
    return gauge_multiply(build_tau_theta(model), baker_lambda(model, model.M))
