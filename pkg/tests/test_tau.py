import numpy as np
import pytest

from conftest import random_v
from kptau.curve import mu_alg_matrix, winding_matrix
from kptau.partitions import Partition, hook_from, partitions_up_to_weight
from kptau.schur import complete_homogeneous
from kptau.series import TauSeries, series_log
from kptau.tau import (AffineMatrix, TauModel, TruncationError, affine_from_tau, baker_affine, baker_frame,
                       baker_gauged_tau, baker_lambda, baker_quantities, build_tau_sigma, build_tau_theta,
                       gauge_multiply, pair, plucker_direct, plucker_giambelli, q_matrix,
                       reconstruct_from_pluckers, reflect, schur_expansion_table)
from kptau.thetasigma import DivisorError, theta, theta_deriv, wp_values


@pytest.fixture(scope="module")
def model(skewed):
    c, pd, ctx = skewed
    rng = np.random.default_rng(7)
    return TauModel(c, pd, random_v(pd, rng), W=8, ctx=ctx)


def rel(a, b):
    return abs(a - b) / max(1.0, abs(b))


def test_model_validation(skewed):
    c, pd, ctx = skewed
    with pytest.raises(ValueError):
        TauModel(c, pd, np.zeros(3), ctx=ctx)
    with pytest.raises(ValueError):
        TauModel(c, pd, np.ones(2), gauge="other", ctx=ctx)
    with pytest.raises(ValueError):
        TauModel(c, pd, np.ones(2), W=1, ctx=ctx)


def test_divisor_point_rejected(skewed):
    c, pd, ctx = skewed
    for col, n in ((0, [1, 0]), (0, [0, 1]), (1, [0, 1]), (1, [1, 0])):
        z = (ctx.T[:, col] + np.array(n)) / 2
        if abs(theta(z, ctx)) < 1e-12:
            break
    with pytest.raises(DivisorError):
        TauModel(c, pd, pd.A @ z, ctx=ctx)


def test_q_matrix(model):
    Q = q_matrix(model)
    assert np.array_equal(Q, Q.T)
    kappa = model.pd.kappa
    R = winding_matrix(model.curve, 4)
    mu = mu_alg_matrix(model.curve, 4)
    alpha4 = float(model.curve.alpha[4])
    # R_2 = 0, so Q_22 is minus the zero-based mu_11, which vanishes
    assert Q[1, 1] == 0
    assert Q[0, 0] == pytest.approx(alpha4 / 8 - R[:, 0] @ kappa @ R[:, 0])
    assert Q[0, 2] == pytest.approx(-(mu[0, 2] + R[:, 0] @ kappa @ R[:, 2]))


def test_constant_term_and_first_coefficients(model):
    tau = build_tau_sigma(model)
    assert tau.constant_term() == pytest.approx(1)
    kp = wp_values(model.v, model.pd, model.ctx)
    assert tau.coefficient((1,)) == pytest.approx(kp.z(1), rel=1e-10)
    # log tau = log sigma(v + R t) - log sigma(v) + mu t t / 2: the t_1^2 coefficient is (-wp_11 + mu_00) / 2
    mu00 = -float(model.curve.alpha[4]) / 8
    assert series_log(tau).coefficient((2,)) == pytest.approx((-kp.wp(1, 1) + mu00) / 2, rel=1e-10)
    th = build_tau_theta(model)
    assert th.constant_term() == pytest.approx(1)
    U1 = model.U[:, 0]
    grad = np.array([theta_deriv(model.e, model.ctx, d) for d in ((1, 0), (0, 1))])
    assert th.coefficient((1,)) == pytest.approx(U1 @ grad / theta(model.e, model.ctx), rel=1e-10)


def test_gauge_relation(model):
    sig = build_tau_sigma(model)
    th = build_tau_theta(model)
    assert sig.max_abs_diff(gauge_multiply(th, model.Lambda)) < 1e-8 * np.max(np.abs(sig.coeffs))
    assert gauge_multiply(sig, np.zeros(3)).max_abs_diff(sig) == 0
    c = np.array([0.3 - 0.1j, 1.2, -0.4j])
    g = gauge_multiply(sig, c)
    assert g.constant_term() == pytest.approx(1)
    assert series_log(g).coefficient((2,)) == pytest.approx(series_log(sig).coefficient((2,)), abs=1e-10)
    with pytest.raises(ValueError):
        gauge_multiply(sig, np.zeros(sig.M + 1))


def test_giambelli_equals_direct(genus2_data):
    rng = np.random.default_rng(3)
    for name in ("symmetric", "skewed", "spread"):
        c, pd, ctx = genus2_data[name]
        tau = TauModel(c, pd, random_v(pd, rng), W=8, ctx=ctx).tau()
        A = affine_from_tau(tau, 7, triangular=True)
        for lam in partitions_up_to_weight(8):
            d = plucker_direct(tau, lam)
            assert rel(plucker_giambelli(A, lam), d) < 1e-6, (name, lam)


def test_giambelli_examples(model):
    tau = model.tau()
    A = affine_from_tau(tau, 3)
    assert plucker_giambelli(A, Partition(())) == 1
    for a in range(4):
        for b in range(4):
            assert plucker_giambelli(A, hook_from(a, b)) == pytest.approx((-1) ** b * A[a, b])
    # with hook coordinates P_ab = pi_(a|b) = (-1)^b A_ab, pi_(2,2) = det[[P_11, P_10], [P_01, P_00]]
    P = lambda a, b: (-1) ** b * A[a, b]
    det = P(1, 1) * P(0, 0) - P(1, 0) * P(0, 1)
    assert plucker_giambelli(A, Partition((2, 2))) == pytest.approx(det)
    assert plucker_direct(tau, Partition((1,))) == pytest.approx(tau.coefficient((1,)))
    with pytest.raises(IndexError):
        plucker_giambelli(A, hook_from(4, 0))


def test_reconstruction(model):
    for tau in (build_tau_sigma(model), build_tau_theta(model)):
        table = schur_expansion_table(tau)
        assert table[Partition(())] == pytest.approx(1)
        back = reconstruct_from_pluckers(table, tau.M, tau.W)
        assert back.max_abs_diff(tau) < 1e-8 * np.max(np.abs(tau.coeffs))


def test_reflection_conjugates(model):
    tau = model.tau()
    r = reflect(tau)
    for lam in partitions_up_to_weight(6):
        assert plucker_direct(r, lam) == pytest.approx((-1) ** lam.weight * plucker_direct(tau, lam.conjugate()))


def test_truncation_errors(model):
    tau = model.tau()
    with pytest.raises(TruncationError):
        affine_from_tau(tau, 4)
    with pytest.raises(TruncationError):
        affine_from_tau(tau, 8, triangular=True)
    with pytest.raises(TruncationError):
        plucker_direct(tau, Partition((5, 4)))
    with pytest.raises(TruncationError):
        pair(complete_homogeneous(9, 9), tau)
    with pytest.raises(IndexError):
        AffineMatrix(np.zeros((2, 2)))[2, 0]


def test_baker_quantities(model):
    N, M = baker_quantities(model, 3, 2)
    th = theta(model.e, model.ctx)
    assert N[0] == pytest.approx(1)  # normalised by theta(e)
    U = model.U
    grad = np.array([theta_deriv(model.e, model.ctx, d) for d in ((1, 0), (0, 1))])
    for j in (1, 2):
        assert M[0, j] == pytest.approx(U[:, j - 1] @ grad / th, rel=1e-10)
    # P_0j = nabla_{U_j} theta / theta
    A = baker_affine(model, 3, triangular=True)
    assert all(A[i, 0] == 0 for i in range(4))


def test_baker_lambda_kills_h(model):
    tau = baker_gauged_tau(model)
    for n in range(1, model.W + 1):
        hn = complete_homogeneous(n, n).substitute_sign()
        assert abs(pair(hn, tau)) < 1e-10 * max(1, np.max(np.abs(tau.coeffs)))
    assert len(baker_lambda(model, 4)) == 4


def test_baker_route_matches_schur_route(genus2_data):
    rng = np.random.default_rng(11)
    for c, pd, ctx in genus2_data.values():
        m = TauModel(c, pd, random_v(pd, rng), W=10, ctx=ctx)
        K = 6
        B = baker_affine(m, K, triangular=True)
        S = baker_frame(affine_from_tau(baker_gauged_tau(m), K, triangular=True))
        for i in range(K + 1):
            for j in range(K + 1 - i):
                assert rel(B[i, j], S[i, j]) < 1e-5, (i, j)
    with pytest.raises(TruncationError):
        baker_affine(m, 6)


def test_hook_coefficient_from_series():
    # a tau with only s_(2) = t_1^2/2 + t_2 beyond the constant: A_10 = pi_(1|0) = 1
    tau = TauSeries.from_dict({(): 1, (2,): 0.5, (0, 1): 1}, M=4, W=4)
    A = affine_from_tau(tau, 1)
    assert A[1, 0] == pytest.approx(1) and A[0, 0] == 0 and A[0, 1] == 0


def test_genus3_giambelli_and_gauge(genus3_data):
    c, pd, ctx = genus3_data
    m = TauModel(c, pd, random_v(pd, np.random.default_rng(4)), W=7, ctx=ctx)
    sig, th = build_tau_sigma(m), build_tau_theta(m)
    assert sig.max_abs_diff(gauge_multiply(th, m.Lambda)) < 1e-8 * np.max(np.abs(sig.coeffs))
    assert sig.coefficient((1,)) == pytest.approx(wp_values(m.v, pd, ctx).z(1), rel=1e-10)
    A = affine_from_tau(sig, 6, triangular=True)
    for lam in partitions_up_to_weight(7):
        assert rel(plucker_giambelli(A, lam), plucker_direct(sig, lam)) < 1e-6
