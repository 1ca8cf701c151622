import json

import numpy as np
import pytest

from kptau.curve import CyclicTrigonalCurve
from kptau.identities import (IdentityReport, InhomogeneousError, check_identity, check_kdv1, check_weight6,
                              check_with_offset, coefficient_weight, genus2_affine_expressions,
                              genus2_affine_oracle, genus2_identities, genus2_pi1010, genus2_ring, genus2_suite,
                              kummer_det, kummer_matrix, reports_to_json, sample_points, trigonal_affine_expressions,
                              trigonal_full_suite, trigonal_identities, trigonal_pi1010, trigonal_ring,
                              trigonal_suite, weight_lint)
from kptau.tau import TauModel, affine_from_tau


@pytest.fixture(scope="module")
def points(skewed):
    _, pd, ctx = skewed
    return sample_points(pd, 10, seed=5, ctx=ctx, max_order=5)


def alpha_of(curve):
    return [complex(a) for a in curve.alpha]


def test_weight_lint_examples():
    R = genus2_ring()
    assert weight_lint(R["wp1111"], R) == 4
    assert weight_lint(R["alpha4"], R) == 2
    assert coefficient_weight(2, 5, 4, 0) == 2
    assert weight_lint(genus2_identities(R)["kdv1"], R) == 4
    with pytest.raises(InhomogeneousError, match="wp11.*alpha4|alpha4.*wp11"):
        weight_lint(R["wp11"] + R["alpha4"] ** 2, R)
    with pytest.raises(InhomogeneousError):
        weight_lint(0 * R["wp11"], R)


def test_every_expression_is_homogeneous():
    R = genus2_ring()
    for name, e in genus2_identities(R).items():
        w = weight_lint(e, R)
        assert w == (4 if name == "kdv1" else 6)
    weight_lint(genus2_pi1010(R), R)
    for ab, e in genus2_affine_expressions(R, "corrected").items():
        assert weight_lint(e, R) == ab[0] + ab[1] + 1
    printed = genus2_affine_expressions(R, "printed")
    for ab, e in printed.items():
        if ab != (1, 3):
            assert weight_lint(e, R) == ab[0] + ab[1] + 1
    with pytest.raises(InhomogeneousError, match="wp1112"):
        weight_lint(printed[1, 3], R)
    T = trigonal_ring()
    for e in list(trigonal_identities(T).values()) + list(trigonal_affine_expressions(T).values()):
        weight_lint(e, T)
    assert weight_lint(trigonal_pi1010(T), T) == 4


def test_a01_equals_a10():
    R = genus2_ring()
    e = genus2_affine_expressions(R)
    assert e[0, 1] == e[1, 0]
    assert e[1, 2].coeff(tuple(4 if n == "z1" else 0 for n in R.names)) == pytest.approx(1 / 8)


def test_kdv1(genus2_data, rng):
    for c, pd, ctx in genus2_data.values():
        pts = sample_points(pd, 5, seed=1, ctx=ctx)
        for kp in pts:
            assert check_kdv1(kp, alpha_of(c)).residual < 1e-6


def test_kdv1_alpha3_shift(points, skewed):
    c, _, _ = skewed
    R = genus2_ring()
    kp = points[0]
    from kptau.identities import evaluate_terms, symbol_values
    expr = genus2_identities(R)["kdv1"]
    a = alpha_of(c)
    r0, _ = evaluate_terms(expr, symbol_values(R, kp, a))
    a[3] += 1
    r1, _ = evaluate_terms(expr, symbol_values(R, kp, a))
    assert r1 - r0 == pytest.approx(-0.5)


def test_weight6_identities(points, skewed):
    c, _, _ = skewed
    a = alpha_of(c)
    kdv2, jac6 = check_weight6(points, a)
    assert kdv2.status == "pass" and kdv2.residual < 1e-6
    # the printed weight-6 relation leaves a v-dependent residual; the fit recovers 3 wp_22 + alpha_2
    assert jac6.status == "fail"
    fit = jac6.details["fit"]
    assert complex(*fit["wp22"]) == pytest.approx(3, abs=1e-6)
    assert complex(*fit["1"]) == pytest.approx(a[2], abs=1e-6)
    R = genus2_ring()
    fixed = check_identity("jac6_corrected", genus2_identities(R)["jac6_corrected"], R, points, a)
    assert fixed.residual < 1e-6


def test_offset_detection(points, skewed):
    c, _, _ = skewed
    R = genus2_ring()
    shifted = genus2_identities(R)["kdv1"] + R["alpha3"]
    rep = check_with_offset("kdv1_shift", shifted, R, points, alpha_of(c))
    assert rep.status == "pass"
    assert complex(*rep.details["offset"]) == pytest.approx(alpha_of(c)[3], abs=1e-6)


def test_kummer(points, skewed):
    c, _, _ = skewed
    K = kummer_matrix(points[0], alpha_of(c))
    assert np.array_equal(K, K.T)
    assert K[3, 3] == 0 and K[2, 3] == 2
    rep = kummer_det(points, alpha_of(c))
    assert rep.residual < 1e-6 and rep.details["weight"] == 16


def test_affine_oracle_vs_tau(points, skewed):
    c, pd, ctx = skewed
    a = alpha_of(c)
    for kp in points[:4]:
        A = affine_from_tau(TauModel(c, pd, kp.v, W=10, ctx=ctx).tau(), 3)
        good = genus2_affine_oracle(kp, a, "corrected")
        bad = genus2_affine_oracle(kp, a, "printed")
        assert A[0, 0] == pytest.approx(kp.z(1), rel=1e-10)
        for i in range(2):
            for j in range(4):
                assert abs(A[i, j] - good[i, j]) < 1e-6 * max(1, abs(good[i, j]))
                if (i, j) != (1, 3):
                    assert bad[i, j] == good[i, j]
        assert abs(A[1, 3] - bad[1, 3]) > 1e-3 * max(1, abs(A[1, 3]))


def test_genus2_suite(skewed):
    c, pd, ctx = skewed
    reports = {r.name: r for r in genus2_suite(c, pd, samples=5, seed=2, ctx=ctx)}
    for name in ("kdv1", "kdv2", "jac6_corrected", "kummer", "affine_oracle_corrected", "pi1010", "kummer_minors"):
        assert reports[name].status == "pass", name
    assert reports["jac6"].status == "fail"
    assert reports["affine_oracle"].status == "fail"
    assert reports["affine_oracle"].details["failing_entries"] == ["A_13"]
    data = json.loads(reports_to_json(list(reports.values())))
    assert {d["name"] for d in data} == set(reports)


def test_trigonal_not_run():
    reps = trigonal_suite(None, [0, 0, 0, 1])
    assert [r.status for r in reps] == ["not run"] * 4
    assert all(r.passed for r in reps)
    full = trigonal_full_suite(CyclicTrigonalCurve([0, 0, 0, 1]), None)
    assert len(full) == 6 and all(r.status == "not run" for r in full)
    assert full[0].to_json()["residual"] is None


def test_report_status():
    r = IdentityReport("x", 1e-3, 1.0, 1e-6, "fail")
    assert not r.passed
    assert IdentityReport.not_run("y", "why").details == {"reason": "why"}


def test_sample_points_off_divisor(skewed):
    _, pd, ctx = skewed
    pts = sample_points(pd, 3, seed=9, ctx=ctx)
    assert len(pts) == 3 and all(abs(kp.sigma) > 0 for kp in pts)
    assert pts[0].wp4 is not None and pts[0].higher is None
