"""Closed-form affine coordinates and Kleinian identities, with numerical checks.

Every identity is written as an exact polynomial over named symbols (z1 for
zeta_1, wp112 for wp_{112}, alpha3 or beta6 for curve coefficients) carrying
the Weierstrass-gap weight grading, so each one is linted for homogeneity
before it is evaluated.  Residuals are normalised by the largest monomial
magnitude at the sample point.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .curve import CyclicTrigonalCurve, HyperellipticCurve, PlaneCurve
from .partitions import FrobeniusCoords, partition_of_frobenius
from .periods import PeriodData
from .schur import ExactPoly, exact_det
from .tau import AffineMatrix, TauModel, affine_from_tau, plucker_direct, plucker_giambelli
from .thetasigma import DivisorError, KleinPoint, ThetaContext, wp_values

F = Fraction


class InhomogeneousError(ValueError):
    """An identity mixes monomials of different weight."""


# --- symbols and grading ----------------------------------------------------

class SymbolRing:
    """Named polynomial variables with gap weights."""

    def __init__(self, names: list[str], weights: list[int]):
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.index = {n: i for i, n in enumerate(self.names)}

    def __getitem__(self, name: str) -> ExactPoly:
        return ExactPoly.variable(self.index[name], len(self.names), self.weights)

    def one(self) -> ExactPoly:
        return ExactPoly.constant(1, len(self.names), self.weights)

    def monomial_text(self, m) -> str:
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(self.names, m) if e]
        return "*".join(parts) or "1"

    @classmethod
    def for_curve(cls, curve: PlaneCurve, max_order: int = 5) -> "SymbolRing":
        g = curve.genus
        gaps = list(curve.gaps)
        names, weights = [], []
        for i in range(1, g + 1):
            names.append(f"z{i}")
            weights.append(gaps[i - 1])
        for k in range(2, max_order + 1):
            for key in itertools.combinations_with_replacement(range(1, g + 1), k):
                names.append("wp" + "".join(map(str, key)))
                weights.append(sum(gaps[i - 1] for i in key))
        if isinstance(curve, HyperellipticCurve):
            for k in range(2 * g + 1):
                names.append(f"alpha{k}")
                weights.append(2 * (2 * g + 1) - 2 * k)
        else:
            for w in (3, 6, 9, 12):
                names.append(f"beta{w}")
                weights.append(w)
        return cls(names, weights)


def coefficient_weight(n: int, s: int, k: int, l: int) -> int:
    """Weight ns - (nk + ls) of the coefficient of x^k y^l in an (n, s) curve."""
    return n * s - (n * k + l * s)


def weight_lint(expr: ExactPoly, ring: SymbolRing | None = None) -> int:
    """Common weight of every monomial; raises naming two monomials that disagree."""
    if not expr.terms:
        raise InhomogeneousError("expression is identically zero")
    seen: dict[int, tuple] = {}
    for m in expr.terms:
        seen.setdefault(expr.monomial_weight(m), m)
    if len(seen) > 1:
        (w1, m1), (w2, m2) = sorted(seen.items())[:2]
        fmt = ring.monomial_text if ring else str
        raise InhomogeneousError(f"inhomogeneous: {fmt(m1)} has weight {w1}, {fmt(m2)} has weight {w2}")
    return next(iter(seen))


# --- identity expressions ---------------------------------------------------

def genus2_ring() -> SymbolRing:
    return SymbolRing.for_curve(HyperellipticCurve.symbolic(2))


def trigonal_ring() -> SymbolRing:
    return SymbolRing.for_curve(CyclicTrigonalCurve.symbolic(), max_order=4)


def genus2_identities(R: SymbolRing) -> dict[str, ExactPoly]:
    """Residual expressions (lhs - rhs) of the genus-2 Kleinian identities."""
    w = R.__getitem__
    a2, a3, a4 = w("alpha2"), w("alpha3"), w("alpha4")
    return {
        "kdv1": w("wp1111") - 6 * w("wp11") ** 2 - 4 * w("wp12") - a4 * w("wp11") - F(1, 2) * a3,
        "kdv2": w("wp1112") - 6 * w("wp11") * w("wp12") + 2 * w("wp22") - a4 * w("wp12"),
        "jac6": (w("wp111") ** 2 - 4 * w("wp11") ** 3 - w("wp22") - 4 * w("wp12") * w("wp11")
                 - a4 * w("wp11") ** 2 - a3 * w("wp11")),
        "jac6_corrected": (w("wp111") ** 2 - 4 * w("wp11") ** 3 - 4 * w("wp22") - 4 * w("wp12") * w("wp11")
                           - a4 * w("wp11") ** 2 - a3 * w("wp11") - a2),
    }


def kummer_matrix_symbolic(R: SymbolRing) -> list[list[ExactPoly]]:
    w = R.__getitem__
    a = [w(f"alpha{k}") for k in range(5)]
    p11, p12, p22 = w("wp11"), w("wp12"), w("wp22")
    two = 2 * R.one()
    return [
        [a[0], F(1, 2) * a[1], -2 * p22, -2 * p12],
        [F(1, 2) * a[1], a[2] + 4 * p22, F(1, 2) * a[3] + 2 * p12, -2 * p11],
        [-2 * p22, F(1, 2) * a[3] + 2 * p12, a[4] + 4 * p11, two],
        [-2 * p12, -2 * p11, two, 0 * two],
    ]


def genus2_affine_expressions(R: SymbolRing, variant: str = "printed") -> dict[tuple[int, int], ExactPoly]:
    """pi_(a|b) for a <= 1, b <= 3 in terms of zeta, wp and alpha.

    ``printed`` is the published list (A_03 read with zeta_1^4 and the zeta_1^2
    factor its weight requires).  Its A_13 contains wp_1112, which has the
    wrong weight, and omits the t_5-flow term.  ``corrected`` uses wp_112 and
    adds -(1/5) R_5^T zeta, which is what the tau series gives.
    """
    if variant not in ("printed", "corrected"):
        raise ValueError("variant must be 'printed' or 'corrected'")
    w = R.__getitem__
    z1, z2 = w("z1"), w("z2")
    p11, p12, p111, p1111 = w("wp11"), w("wp12"), w("wp111"), w("wp1111")
    p11111 = w("wp11111")
    a3, a4 = w("alpha3"), w("alpha4")
    out = {}
    out[0, 0] = z1
    out[0, 1] = F(1, 2) * z1 ** 2 - F(1, 2) * p11 - F(1, 16) * a4
    out[0, 2] = F(1, 6) * z1 ** 3 + F(1, 3) * z2 - (F(1, 2) * p11 + F(5, 48) * a4) * z1 - F(1, 6) * p111
    out[0, 3] = (F(1, 24) * z1 ** 4 + F(1, 3) * z1 * z2 - (F(7, 96) * a4 + F(1, 4) * p11) * z1 ** 2
                 - F(1, 6) * p111 * z1 - F(1, 24) * p1111 - F(1, 3) * p12 + F(1, 8) * p11 ** 2
                 + F(7, 96) * a4 * p11 - F(1, 24) * a3 + F(5, 512) * a4 ** 2)
    out[1, 0] = out[0, 1]
    out[1, 1] = F(1, 3) * z1 ** 3 - F(1, 3) * z2 - (p11 + F(1, 12) * a4) * z1 - F(1, 3) * p111
    out[1, 2] = (F(1, 8) * z1 ** 4 - F(1, 2) * z1 * p111 + F(3, 8) * p11 ** 2 - F(1, 8) * p1111
                 - (F(3, 4) * p11 + F(3, 32) * a4) * z1 ** 2 + F(3, 32) * a4 * p11 + F(3, 512) * a4 ** 2)
    p_odd = w("wp1112") if variant == "printed" else w("wp112")
    out[1, 3] = (F(1, 30) * z1 ** 5 + F(1, 6) * z1 ** 2 * z2 - F(1, 3) * p111 * z1 ** 2
                 - (F(1, 3) * p11 + F(1, 16) * a4) * z1 ** 3 - (F(1, 6) * p11 + F(1, 48) * a4) * z2
                 + (-F(1, 6) * p1111 - F(1, 3) * p12 + F(1, 2) * p11 ** 2 + F(3, 16) * a4 * p11
                    - F(1, 24) * a3 + F(7, 384) * a4 ** 2) * z1
                 + F(1, 3) * p11 * p111 - F(1, 6) * p_odd - F(1, 30) * p11111 + F(1, 16) * a4 * p111)
    if variant == "corrected":
        # R_5 = (-alpha_3/8 + 3 alpha_4^2/128, -alpha_4/8)
        r5_zeta = (-F(1, 8) * a3 + F(3, 128) * a4 ** 2) * z1 - F(1, 8) * a4 * z2
        out[1, 3] = out[1, 3] - F(1, 5) * r5_zeta
    return out


def genus2_pi1010(R: SymbolRing) -> ExactPoly:
    w = R.__getitem__
    z1, z2 = w("z1"), w("z2")
    p11, p12, p111, p1111 = w("wp11"), w("wp12"), w("wp111"), w("wp1111")
    a3, a4 = w("alpha3"), w("alpha4")
    return (-F(1, 12) * p1111 + F(1, 12) * z1 ** 4 - (F(1, 2) * p11 + F(1, 48) * a4) * z1 ** 2
            - F(1, 3) * z2 * z1 - F(1, 3) * p111 * z1 + F(1, 3) * p12 + F(1, 4) * p11 ** 2
            + F(1, 48) * a4 * p11 - F(1, 256) * a4 ** 2 + F(1, 24) * a3)


def trigonal_identities(R: SymbolRing) -> dict[str, ExactPoly]:
    w = R.__getitem__
    b3, b6 = w("beta3"), w("beta6")
    return {
        "bous": w("wp1111") - 6 * w("wp11") ** 2 + 3 * w("wp22"),
        "trig5": w("wp1112") - 6 * w("wp11") * w("wp12") - 3 * b3 * w("wp11"),
        "trig6a": (w("wp111") ** 2 - 4 * w("wp11") ** 3 - w("wp12") ** 2 - 4 * w("wp13")
                   + 4 * w("wp11") * w("wp22")),
        "trig6b": (w("wp1122") - 4 * w("wp13") - 4 * w("wp12") ** 2 - 2 * w("wp11") * w("wp22")
                   - 3 * b3 * w("wp12") - 2 * b6),
    }


def trigonal_affine_expressions(R: SymbolRing) -> dict[tuple[int, int], ExactPoly]:
    w = R.__getitem__
    z1, z2, p11, p111 = w("z1"), w("z2"), w("wp11"), w("wp111")
    return {
        (0, 0): z1,
        (0, 1): -F(1, 2) * p11 + F(1, 2) * z1 ** 2 - F(1, 2) * z2,
        (1, 0): F(1, 2) * z2 - F(1, 2) * p11 + F(1, 2) * z1 ** 2,
        (1, 1): -F(1, 3) * p111 - p11 * z1 + F(1, 3) * z1 ** 3,
    }


def trigonal_pi1010(R: SymbolRing) -> ExactPoly:
    w = R.__getitem__
    z1, z2 = w("z1"), w("z2")
    p11, p22, p111, p1111 = w("wp11"), w("wp22"), w("wp111"), w("wp1111")
    return (F(1, 4) * p22 + F(1, 4) * z2 ** 2 - F(1, 12) * p1111 - F(1, 3) * p111 * z1
            + F(1, 4) * p11 ** 2 - F(1, 2) * p11 * z1 ** 2 + F(1, 12) * z1 ** 4)


# --- evaluation -------------------------------------------------------------

def symbol_values(R: SymbolRing, kp: KleinPoint, coeffs) -> list[complex]:
    """Numerical value of every symbol of R at the Klein point."""
    coeffs = [complex(c) for c in coeffs]
    out = []
    for name in R.names:
        if name.startswith("z"):
            out.append(kp.z(int(name[1:])))
        elif name.startswith("wp"):
            try:
                out.append(kp.wp(*map(int, name[2:])))
            except ValueError:
                out.append(np.nan)
        elif name.startswith("alpha"):
            out.append(coeffs[int(name[5:])])
        else:
            out.append(coeffs[(3, 6, 9, 12).index(int(name[4:]))])
    return out


def evaluate_terms(expr: ExactPoly, values) -> tuple[complex, float]:
    """(value, largest monomial magnitude) of expr at the given symbol values."""
    total, scale = 0j, 0.0
    for m, c in expr.terms.items():
        t = complex(c)
        for v, e in zip(values, m):
            if e:
                t *= v ** e
        total += t
        scale = max(scale, abs(t))
    if np.isnan(total):
        raise ValueError("expression uses a wp derivative that was not computed")
    return total, scale


@dataclass
class IdentityReport:
    """Max relative residual of one identity over the sampled points."""

    name: str
    residual: float
    scale: float
    tol: float
    status: str = "pass"  # pass, fail or not run
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        def num(x):
            return None if x is None or np.isnan(x) else float(x)

        return {"name": self.name, "residual": num(self.residual), "scale": num(self.scale),
                "tol": num(self.tol), "status": self.status, "details": self.details}

    @classmethod
    def not_run(cls, name: str, reason: str) -> "IdentityReport":
        return cls(name, float("nan"), 1.0, float("nan"), "not run", {"reason": reason})


def _report(name: str, rel: list[float], scales: list[float], tol: float, **details) -> IdentityReport:
    r = float(max(rel))
    return IdentityReport(name, r, float(max(scales)), tol, "pass" if r < tol else "fail", details)


def _curve_coeffs(curve: PlaneCurve):
    return [complex(c) for c in curve.coefficient_values()]


def check_identity(name: str, expr: ExactPoly, R: SymbolRing, points: list[KleinPoint], coeffs,
                   tol: float = 1e-6) -> IdentityReport:
    weight = weight_lint(expr, R)
    rel, scales = [], []
    for kp in points:
        val, sc = evaluate_terms(expr, symbol_values(R, kp, coeffs))
        rel.append(abs(val) / sc)
        scales.append(sc)
    return _report(name, rel, scales, tol, weight=weight)


def check_kdv1(kp: KleinPoint, alpha, tol: float = 1e-6) -> IdentityReport:
    R = genus2_ring()
    return check_identity("kdv1", genus2_identities(R)["kdv1"], R, [kp], alpha, tol)


def check_with_offset(name: str, expr: ExactPoly, R: SymbolRing, points: list[KleinPoint], coeffs,
                      tol: float = 1e-6, probes: tuple[str, ...] = ()) -> IdentityReport:
    """Residual check that also tests for a v-independent constant offset.

    Passes if the relative residual is below tol, or if the raw residuals
    agree to tol (relative) across all points, in which case the constant is
    recorded.  ``probes`` names extra symbols; a least-squares fit of the
    residual on [1, probes...] is reported as a diagnostic.
    """
    weight = weight_lint(expr, R)
    raw, scales, rows = [], [], []
    for kp in points:
        vals = symbol_values(R, kp, coeffs)
        val, sc = evaluate_terms(expr, vals)
        raw.append(val)
        scales.append(sc)
        rows.append([1.0] + [vals[R.index[p]] for p in probes])
    raw = np.array(raw)
    scales = np.array(scales)
    rel = np.abs(raw) / scales
    details = {"weight": weight}
    if rel.max() < tol:
        return IdentityReport(name, float(rel.max()), float(scales.max()), tol, "pass", details)
    offset = complex(np.mean(raw))
    spread = float(np.max(np.abs(raw - offset) / scales))
    details["offset"] = [offset.real, offset.imag]
    details["offset_spread"] = spread
    if probes and len(points) > len(probes) + 1:
        sol, *_ = np.linalg.lstsq(np.array(rows), raw, rcond=None)
        details["fit"] = {n: [complex(c).real, complex(c).imag] for n, c in zip(("1",) + tuple(probes), sol)}
    status = "pass" if len(points) >= 2 and spread < tol else "fail"
    return IdentityReport(name, float(rel.max()), float(scales.max()), tol, status, details)


def check_weight6(points: list[KleinPoint], alpha, tol: float = 1e-6) -> tuple[IdentityReport, IdentityReport]:
    R = genus2_ring()
    ids = genus2_identities(R)
    return (check_with_offset("kdv2", ids["kdv2"], R, points, alpha, tol),
            check_with_offset("jac6", ids["jac6"], R, points, alpha, tol, probes=("wp22",)))


def kummer_matrix(kp: KleinPoint, alpha) -> np.ndarray:
    a = [complex(c) for c in alpha]
    p11, p12, p22 = kp.wp(1, 1), kp.wp(1, 2), kp.wp(2, 2)
    return np.array([
        [a[0], a[1] / 2, -2 * p22, -2 * p12],
        [a[1] / 2, a[2] + 4 * p22, a[3] / 2 + 2 * p12, -2 * p11],
        [-2 * p22, a[3] / 2 + 2 * p12, a[4] + 4 * p11, 2],
        [-2 * p12, -2 * p11, 2, 0],
    ])


def kummer_det(points, alpha, tol: float = 1e-6) -> IdentityReport:
    """|det| of the Kummer matrix over the largest 3x3 minor magnitude."""
    if isinstance(points, KleinPoint):
        points = [points]
    R = genus2_ring()
    weight = weight_lint(exact_det(kummer_matrix_symbolic(R)), R)
    rel, scales = [], []
    for kp in points:
        K = kummer_matrix(kp, alpha)
        minors = [abs(np.linalg.det(np.delete(np.delete(K, i, 0), j, 1))) for i in range(4) for j in range(4)]
        sc = max(max(minors), 1e-300)
        rel.append(abs(np.linalg.det(K)) / sc)
        scales.append(sc)
    return _report("kummer", rel, scales, tol, weight=weight)


def genus2_affine_oracle(kp: KleinPoint, alpha, variant: str = "printed") -> AffineMatrix:
    """Closed-form A_ab (a <= 1, b <= 3) in the convention A_ab = (-1)^b pi_(a|b); NaN elsewhere."""
    R = genus2_ring()
    vals = symbol_values(R, kp, alpha)
    A = np.full((4, 4), np.nan, dtype=complex)
    for (a, b), expr in genus2_affine_expressions(R, variant).items():
        A[a, b] = (-1) ** b * evaluate_terms(expr, vals)[0]
    return AffineMatrix(A)


def trigonal_affine_oracle(kp: KleinPoint, beta) -> AffineMatrix:
    R = trigonal_ring()
    vals = symbol_values(R, kp, beta)
    A = np.full((2, 2), np.nan, dtype=complex)
    for (a, b), expr in trigonal_affine_expressions(R).items():
        A[a, b] = (-1) ** b * evaluate_terms(expr, vals)[0]
    return AffineMatrix(A)


def trigonal_suite(points: list[KleinPoint] | None, beta, tol: float = 1e-6) -> list[IdentityReport]:
    """Boussinesq and the weight 5 and 6 trigonal identities; "not run" without points."""
    R = trigonal_ring()
    ids = trigonal_identities(R)
    if not points:
        return [IdentityReport.not_run(n, "no trigonal period fixture supplied") for n in ids]
    return [check_identity(n, e, R, points, beta, tol) for n, e in ids.items()]


# --- sampling and suites ----------------------------------------------------

def sample_points(pd: PeriodData, n: int, seed: int = 0, ctx: ThetaContext | None = None,
                  max_order: int = 4, sigma_floor: float = 1e-10) -> list[KleinPoint]:
    """Klein points at v = A x + B y with x, y uniform in [0, 1)^g, skipping divisor points."""
    ctx = ctx or ThetaContext.from_periods(pd)
    rng = np.random.default_rng(seed)
    out = []
    tries = 0
    while len(out) < n:
        tries += 1
        if tries > 20 * n + 20:
            raise DivisorError("could not find enough points off the theta divisor")
        x, y = rng.random(pd.g), rng.random(pd.g)
        v = pd.A @ x + pd.B @ y
        try:
            out.append(wp_values(v, pd, ctx, max_order=max_order, divisor_floor=sigma_floor))
        except DivisorError:
            continue
    return out


def _affine_relative(A: AffineMatrix, B: AffineMatrix) -> float:
    mask = ~(np.isnan(A.entries) | np.isnan(B.entries))
    d = np.abs(A.entries[mask] - B.entries[mask]) / np.maximum(1.0, np.abs(B.entries[mask]))
    return float(d.max())


def genus2_suite(curve: HyperellipticCurve, pd: PeriodData, samples: int = 20, tol: float = 1e-6,
                 seed: int = 0, ctx: ThetaContext | None = None) -> list[IdentityReport]:
    """All genus-2 checks: identities, Kummer, closed-form A window and pi_(1,0|1,0)."""
    if curve.genus != 2 or not isinstance(curve, HyperellipticCurve):
        raise ValueError("genus2_suite needs a genus-2 hyperelliptic curve")
    ctx = ctx or ThetaContext.from_periods(pd)
    alpha = _curve_coeffs(curve)
    points = sample_points(pd, samples, seed, ctx, max_order=5)
    R = genus2_ring()
    ids = genus2_identities(R)
    reports = [check_identity("kdv1", ids["kdv1"], R, points, alpha, tol)]
    reports.extend(check_weight6(points, alpha, tol))
    reports.append(check_identity("jac6_corrected", ids["jac6_corrected"], R, points, alpha, tol))
    reports.append(kummer_det(points, alpha, tol))
    # closed-form affine coordinates and pi_(1,0|1,0) against the tau series
    pi_expr = genus2_pi1010(R)
    weight_lint(pi_expr, R)
    lint = {}
    for variant in ("printed", "corrected"):
        bad = []
        for ab, expr in genus2_affine_expressions(R, variant).items():
            try:
                weight_lint(expr, R)
            except InhomogeneousError as exc:
                bad.append(f"A_{ab[0]}{ab[1]}: {exc}")
        lint[variant] = bad
    err = {"printed": np.zeros((4, 4)), "corrected": np.zeros((4, 4))}
    rel_pi, rel_minor = [], []
    for kp in points:
        tau = TauModel(curve, pd, kp.v, W=10, ctx=ctx).tau()
        A_tau = affine_from_tau(tau, 3)
        for variant in err:
            O = genus2_affine_oracle(kp, alpha, variant)
            d = np.abs(A_tau.entries - O.entries) / np.maximum(1.0, np.abs(O.entries))
            err[variant] = np.fmax(err[variant], np.nan_to_num(d, nan=0.0))
        val, sc = evaluate_terms(pi_expr, symbol_values(R, kp, alpha))
        direct = plucker_direct(tau, (2, 2))
        rel_pi.append(abs(val - direct) / max(1.0, abs(direct)))
        tri = affine_from_tau(tau, 9, triangular=True)
        worst = 0.0
        for i, k in itertools.combinations(range(3, -1, -1), 2):
            for j, l in itertools.combinations(range(3, -1, -1), 2):
                fc = FrobeniusCoords((i, k), (j, l))
                if fc.weight > tau.W:
                    continue
                lam = partition_of_frobenius(fc)
                d = plucker_direct(tau, lam)
                worst = max(worst, abs(plucker_giambelli(tri, lam) - d) / max(1.0, abs(d)))
        rel_minor.append(worst)
    for variant, name in (("printed", "affine_oracle"), ("corrected", "affine_oracle_corrected")):
        e = err[variant]
        r = float(e.max())
        failing = [f"A_{a}{b}" for a in range(2) for b in range(4) if e[a, b] >= tol]
        ok = r < tol and not lint[variant]
        reports.append(IdentityReport(name, r, 1.0, tol, "pass" if ok else "fail",
                                      {"failing_entries": failing, "weight_lint": lint[variant]}))
    reports.append(_report("pi1010", rel_pi, [1.0], tol))
    reports.append(_report("kummer_minors", rel_minor, [1.0], tol))
    return reports


def trigonal_full_suite(curve: CyclicTrigonalCurve, pd: PeriodData | None, samples: int = 20,
                        tol: float = 1e-6, seed: int = 0) -> list[IdentityReport]:
    """Trigonal identities plus the closed-form A window and pi_(1,0|1,0); gated on period data."""
    beta = _curve_coeffs(curve)
    if pd is None:
        return trigonal_suite(None, beta, tol) + [
            IdentityReport.not_run("affine_oracle_trigonal", "no trigonal period fixture supplied"),
            IdentityReport.not_run("pi1010_trigonal", "no trigonal period fixture supplied")]
    ctx = ThetaContext.from_periods(pd)
    points = sample_points(pd, samples, seed, ctx, max_order=4)
    reports = trigonal_suite(points, beta, tol)
    R = trigonal_ring()
    pi_expr = trigonal_pi1010(R)
    rel_A, rel_pi = [], []
    for kp in points:
        tau = TauModel(curve, pd, kp.v, W=4, ctx=ctx).tau()
        rel_A.append(_affine_relative(affine_from_tau(tau, 1), trigonal_affine_oracle(kp, beta)))
        val, _ = evaluate_terms(pi_expr, symbol_values(R, kp, beta))
        direct = plucker_direct(tau, (2, 2))
        rel_pi.append(abs(val - direct) / max(1.0, abs(direct)))
    reports.append(_report("affine_oracle_trigonal", rel_A, [1.0], tol))
    reports.append(_report("pi1010_trigonal", rel_pi, [1.0], tol))
    return reports


def reports_to_json(reports: list[IdentityReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=1)
