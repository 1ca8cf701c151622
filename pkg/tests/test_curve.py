import json
from fractions import Fraction

import numpy as np
import pytest

from kptau.curve import (CurveError, CyclicTrigonalCurve, HyperellipticCurve, curve_from_json, curve_to_json,
                         gap_sequence, holomorphic_basis, local_at_infinity, meromorphic_basis, mu_alg_matrix,
                         mu_alg_table, two_polar, winding_numerators)
from kptau.schur import ExactPoly

G2_WEIGHTS = (10, 8, 6, 4, 2)
TRIG_WEIGHTS = (3, 6, 9, 12)


def alpha(k):
    return ExactPoly.variable(k, 5, G2_WEIGHTS)


def beta(w):
    return ExactPoly.variable(w // 3 - 1, 4, TRIG_WEIGHTS)


def test_gap_sequences():
    assert gap_sequence(2, 5).gaps == (1, 3)
    assert gap_sequence(3, 4).gaps == (1, 2, 5)
    assert gap_sequence(2, 3).gaps == (1,)
    for g in range(1, 7):
        assert gap_sequence(2, 2 * g + 1).gaps == tuple(range(1, 2 * g, 2))
    with pytest.raises(ValueError):
        gap_sequence(2, 4)


def test_local_expansions():
    x, y = local_at_infinity(HyperellipticCurve.symbolic(2), 4)
    assert (x.leading_exponent, x.coeffs) == (-2, (1,))
    assert y.leading_exponent == -5
    assert y.coefficient(-5) == 2 and y.coefficient(-4) == 0
    assert y.coefficient(-3) == alpha(4) / 4  # 2 * alpha_4 / 8
    x, y = local_at_infinity(CyclicTrigonalCurve.symbolic(), 4)
    assert x.leading_exponent == -3 and y.leading_exponent == -4
    assert y.coefficient(-1) == beta(3) / 3
    with pytest.raises(ValueError):
        local_at_infinity(HyperellipticCurve.symbolic(2), 0)


def test_genus2_mu_table_exact():
    mu = mu_alg_table(HyperellipticCurve.symbolic(2), 8)
    a2, a3, a4 = alpha(2), alpha(3), alpha(4)
    # zero-based table; the one-based list in the literature carries an extra factor 1/2
    assert mu[(0, 0)] == -a4 / 8
    assert mu[(0, 2)] == -a3 / 8 + Fraction(3, 128) * a4 ** 2
    assert mu[(0, 4)] == -a2 / 8 + Fraction(3, 64) * a3 * a4 - Fraction(5, 1024) * a4 ** 3
    assert mu[(2, 2)] == -Fraction(3, 8) * a2 + Fraction(1, 16) * a3 * a4 - Fraction(3, 512) * a4 ** 3
    for (i, j), v in mu.items():
        assert v == mu[(j, i)]
        if (i + j) % 2:
            assert not v
        elif i % 2 == 1 and j % 2 == 1:
            # one-based indices even: vanishing
            assert not v


def test_trigonal_mu_table_exact():
    mu = mu_alg_table(CyclicTrigonalCurve.symbolic(), 10)
    b3, b6 = beta(3), beta(6)
    assert mu[(0, 1)] == -Fraction(2, 3) * b3
    assert mu[(0, 4)] == -Fraction(2, 3) * b6 + Fraction(5, 9) * b3 ** 2
    assert mu[(1, 3)] == -Fraction(2, 3) * b6 + Fraction(4, 9) * b3 ** 2
    assert not mu[(2, 2)]
    for (i, j), v in mu.items():
        if (i + j + 2) % 3:
            assert not v, (i, j)


def test_numeric_mu_matches_symbolic():
    c = HyperellipticCurve.from_branch_points((-3.0, -1.0, 0.5, 2.0, 3.5))
    num = mu_alg_matrix(c, 8)
    sym = mu_alg_table(HyperellipticCurve.symbolic(2), 8)
    vals = [float(a) for a in c.alpha]
    for (i, j), v in sym.items():
        ref = v.evaluate(vals) if isinstance(v, ExactPoly) else v
        assert abs(num[i, j] - complex(ref)) < 1e-12 * max(1.0, abs(complex(ref)))


def test_winding_numerators_exact():
    R = winding_numerators(HyperellipticCurve.symbolic(2), 8)
    a3, a4 = alpha(3), alpha(4)
    assert R[0] == [1, 0]
    assert R[2] == [-a4 / 8, 1]
    assert R[4] == [-a3 / 8 + Fraction(3, 128) * a4 ** 2, -a4 / 8]
    for k in (2, 4, 6, 8):
        assert all(not c for c in R[k - 1])
    T = winding_numerators(CyclicTrigonalCurve.symbolic(), 5)
    assert T[0] == [1, 0, 0] and T[1] == [0, 1, 0] and T[4][2] == 1
    assert T[3] == [-beta(3) / 3, 0, 0]
    with pytest.raises(ValueError):
        winding_numerators(HyperellipticCurve.symbolic(2), 2)


def test_bases():
    c = HyperellipticCurve.symbolic(2)
    u = holomorphic_basis(c)
    assert [d.label for d in u] == ["x dx/y", "dx/y"]
    r = meromorphic_basis(c)
    # r_j is dual to u_j, so r_1 has the double pole and r_2 the fourth-order pole
    assert r[0].numer == (0, 0, 4, 0)
    # (alpha_3 x + 2 alpha_4 x^2 + 12 x^3) dx / (4y)
    assert r[1].numer[1] == alpha(3) and r[1].numer[2] == 2 * alpha(4) and r[1].numer[3] == 12
    assert r[1].scale == Fraction(1, 4)
    t = CyclicTrigonalCurve.symbolic()
    assert [d.label for d in holomorphic_basis(t)] == ["dx/(3y)", "x dx/(3y^2)", "dx/(3y^2)"]
    r = meromorphic_basis(t)
    assert r[0].numer == (0, 0, 1) and r[0].ypow == 2
    assert r[2].numer[2] == -5


def test_two_polar_symmetry_and_diagonal(rng):
    c = HyperellipticCurve.from_branch_points((-2.0, -1.0, 0.0, 1.0, 2.0))
    x, z = 0.37 + 0.2j, -1.3 + 0.5j
    y, w = np.sqrt(c.f(x)), np.sqrt(c.f(z))
    assert abs(two_polar(c, (x, y), (z, w)) - two_polar(c, (z, w), (x, y))) < 1e-12
    assert abs(two_polar(c, (x, y), (x, y)) - 4 * y ** 2) < 1e-12  # F(x,x) + 2y^2 = 4y^2
    t = CyclicTrigonalCurve([0.3, -0.2, 0.5, 1.1])
    y3, w3 = t.f(x) ** (1 / 3), t.f(z) ** (1 / 3)
    assert abs(two_polar(t, (x, y3), (z, w3)) - two_polar(t, (z, w3), (x, y3))) < 1e-12
    from kptau.curve import trigonal_T
    assert abs(trigonal_T(t, x, x) - 3 * t.f(x)) < 1e-12


def test_local_residual():
    assert HyperellipticCurve.symbolic(2).local_residual() == 0.0
    c = HyperellipticCurve.from_branch_points((-1.0, 0.0, 0.3, 2.0, 5.0))
    assert c.local_residual() < 1e-12


def test_curve_validation():
    with pytest.raises(CurveError):
        HyperellipticCurve.from_branch_points((0.0, 0.0, 1.0))
    with pytest.raises(CurveError):
        HyperellipticCurve(2, [1, 2, 3])
    with pytest.raises(CurveError):
        HyperellipticCurve(1, [0.0, 0.0, 0.0])  # y^2 = 4x^3 is singular
    with pytest.raises(CurveError):
        CyclicTrigonalCurve([0, 0, 0, 0])
    with pytest.raises(CurveError):
        curve_from_json({"type": "quartic"})


def test_json_round_trip(tmp_path):
    c = HyperellipticCurve.from_branch_points((-3.0, -1.0, 0.5, 2.0, 3.5))
    p = tmp_path / "c.json"
    p.write_text(json.dumps(curve_to_json(c)))
    c2 = curve_from_json(str(p))
    assert c2.branch_points == c.branch_points
    t = curve_from_json({"type": "cyclic_trigonal", "beta": [0, 0, 1, [0.5, 0.1]]})
    assert curve_from_json(curve_to_json(t)).beta == t.beta
