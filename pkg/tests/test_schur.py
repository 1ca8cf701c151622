from fractions import Fraction

import pytest

from kptau.partitions import Partition, hook_from, partitions_of, partitions_up_to_weight
from kptau.schur import (ExactPoly, complete_homogeneous, exact_exp, hook_schur_bilinear, pairing_weight,
                         schur_bialternant_oracle, schur_jacobi_trudi, schur_pairing)
from kptau.series import TauSeries


def t(k, M):
    return ExactPoly.variable(k - 1, M)


def test_complete_homogeneous_examples():
    M = 3
    assert complete_homogeneous(0, M) == ExactPoly.constant(1, M)
    assert complete_homogeneous(2, M) == t(1, M) ** 2 / 2 + t(2, M)
    assert complete_homogeneous(3, M) == t(1, M) ** 3 / 6 + t(1, M) * t(2, M) + t(3, M)
    assert not complete_homogeneous(-1, M)


def test_jacobi_trudi_examples():
    M = 3
    assert schur_jacobi_trudi(Partition((1,)), M) == t(1, M)
    assert schur_jacobi_trudi(Partition((2, 1)), M) == t(1, M) ** 3 / 3 - t(3, M)
    assert schur_jacobi_trudi(Partition((1, 1)), M) == t(1, M) ** 2 / 2 - t(2, M)


def test_bialternant_examples():
    assert schur_bialternant_oracle(Partition((2,)), 3) == schur_jacobi_trudi(Partition((2,)), 2)
    assert schur_bialternant_oracle(Partition((2, 1)), 3) == t(1, 3) ** 3 / 3 - t(3, 3)
    with pytest.raises(ValueError):
        schur_bialternant_oracle(Partition((1, 1, 1)), 2)


@pytest.mark.parametrize("n", range(1, 7))
def test_jacobi_trudi_matches_bialternant(n):
    for lam in partitions_of(n):
        assert schur_jacobi_trudi(lam, n) == schur_bialternant_oracle(lam, 8)


def test_hook_identity():
    assert hook_schur_bilinear(0, 0) == t(1, 1)
    assert hook_schur_bilinear(1, 0) == t(1, 2) ** 2 / 2 + t(2, 2)
    assert hook_schur_bilinear(0, 1) == t(1, 2) ** 2 / 2 - t(2, 2)
    for a in range(6):
        for b in range(6):
            M = a + b + 1
            assert hook_schur_bilinear(a, b, M) == schur_jacobi_trudi(hook_from(a, b), M)


def test_h_orthogonality():
    M = 12
    for a in range(7):
        for b in range(7):
            acc = ExactPoly({}, M)
            # sum over all j of h_{j-a}(-t) h_{b-j}(t); terms vanish outside a <= j <= b
            for j in range(a, b + 1):
                acc = acc + complete_homogeneous(j - a, M).substitute_sign() * complete_homogeneous(b - j, M)
            assert acc == ExactPoly.constant(1 if a == b else 0, M)


def test_pairing_orthonormal():
    parts = [p for p in partitions_up_to_weight(6) if p.weight]
    for mu in parts:
        s_mu = schur_jacobi_trudi(mu, 6)
        for lam in parts:
            if lam.weight == mu.weight:
                assert schur_pairing(lam, s_mu) == (1 if lam == mu else 0)


def test_pairing_examples():
    assert schur_pairing(Partition((1,)), t(1, 1)) == 1
    f = ExactPoly.constant(Fraction(7, 3), 2) + t(2, 2)
    assert schur_pairing(Partition(()), f) == Fraction(7, 3)
    assert pairing_weight((2, 0, 1)) == Fraction(2, 3)
    series = TauSeries.from_dict({(0, 1): 3.0, (): 1.0}, M=2, W=2)
    assert schur_pairing(Partition((2,)), series) == pytest.approx(1.5)
    with pytest.raises(ValueError):
        schur_pairing(Partition((2, 1)), series)


def test_cauchy_littlewood_weight6():
    W = 6
    N = 2 * W
    weights = tuple(range(1, W + 1)) * 2
    lhs = ExactPoly({}, N, weights)
    for lam in partitions_up_to_weight(W):
        s = schur_jacobi_trudi(lam, W)
        lhs = lhs + s.extend(N, 0, weights) * s.extend(N, W, weights)
    arg = ExactPoly({}, N, weights)
    for i in range(1, W + 1):
        arg = arg + i * ExactPoly.variable(i - 1, N, weights) * ExactPoly.variable(W + i - 1, N, weights)
    # each product t_i s_i has weight 2i in this grading, so truncate at 2W
    assert lhs == exact_exp(arg, 2 * W)


def test_text_dump():
    assert schur_jacobi_trudi(Partition((1, 1)), 2).to_text() == "1/2 * t1^2\n-1 * t2"
