import random
from fractions import Fraction

import pytest

from ssgamma.cyclotomic import CyclotomicNumber as C
from ssgamma.matrices import g_chi_gl
from ssgamma.parameter import (
    BadResidueChar,
    EisensteinElement,
    UnsupportedElement,
    ZeroElement,
    gauss_sum,
    iota_embed,
    kappa_units,
    legendre,
    param_summary,
    pi_e,
    xi_eval,
)


def rand_elem(rng, ell, p, nonzero=True):
    while True:
        c = [Fraction(rng.randrange(-3, 4)) for _ in range(2 * ell)]
        e = EisensteinElement.make(c, p)
        if not (nonzero and e.is_zero()):
            return e


def test_uniformizer_power_is_p():
    for ell, p in [(1, 3), (2, 5), (3, 7)]:
        e = pi_e(ell, p)
        acc = e
        for _ in range(2 * ell - 1):
            acc = acc * e
        assert acc.coeffs[0] == p
        assert all(c == 0 for c in acc.coeffs[1:])


@pytest.mark.parametrize("ell,p", [(1, 3), (2, 5), (3, 7)])
def test_iota_is_multiplicative(ell, p):
    rng = random.Random(ell * 10 + p)
    for _ in range(20):
        a = rand_elem(rng, ell, p)
        b = rand_elem(rng, ell, p)
        prod = a * b
        if prod.is_zero():
            continue
        lhs = iota_embed(a, ell) * iota_embed(b, ell)
        assert lhs.rows == iota_embed(prod, ell).rows


def test_iota_of_uniformizer_is_g_chi():
    for ell, p in [(1, 3), (2, 5), (3, 3)]:
        assert iota_embed(pi_e(ell, p), ell).rows == g_chi_gl(2 * ell, p).rows


def test_iota_uniformizer_power_is_scalar_p():
    for ell, p in [(1, 3), (2, 5), (3, 7)]:
        m = iota_embed(pi_e(ell, p), ell)
        acc = m
        for _ in range(2 * ell - 1):
            acc = acc * m
        n = 2 * ell
        assert acc.rows == tuple(
            tuple(Fraction(p) if i == j else Fraction(0) for j in range(n)) for i in range(n)
        )


def test_iota_rejects_zero():
    with pytest.raises(ZeroElement):
        iota_embed(EisensteinElement.make([0, 0], 3), 1)


def test_legendre_and_kappa():
    assert [legendre(x, 5) for x in range(1, 5)] == [1, -1, -1, 1]
    assert kappa_units(Fraction(2), 5) == -1
    assert kappa_units(Fraction(7, 3), 5) == legendre(7 * 2, 5)  # 1/3 = 2 mod 5
    with pytest.raises(UnsupportedElement):
        kappa_units(Fraction(5), 5)


def test_gauss_sum_absolute_value():
    for p in (3, 5, 7):
        for j in range(1, p - 1):
            g = gauss_sum(j, p)
            assert g * g.conjugate() == C.from_rational(Fraction(p))
    # the trivial character sums to -1
    assert gauss_sum(0, 5) == C.from_rational(Fraction(-1))


@pytest.mark.parametrize("ell,p", [(1, 3), (2, 5), (3, 7), (2, 3)])
def test_xi_character_on_one_plus_pe(ell, p):
    rng = random.Random(ell + p)
    n = 2 * ell
    pd = param_summary(p, ell, C.one())
    for _ in range(15):
        a = [Fraction(1)] + [Fraction(0)] * (n - 1)
        b = [Fraction(1)] + [Fraction(0)] * (n - 1)
        a[0] += p * rng.randrange(-2, 3)
        b[0] += p * rng.randrange(-2, 3)
        for i in range(1, n):
            a[i] = Fraction(rng.randrange(-2, 3))
            b[i] = Fraction(rng.randrange(-2, 3))
        ea = EisensteinElement.make(a, p)
        eb = EisensteinElement.make(b, p)
        assert xi_eval(pd, ea * eb) == xi_eval(pd, ea) * xi_eval(pd, eb)


def test_xi_on_units_and_uniformizer():
    p = 5
    ell = 2
    zeta = -C.one()
    pd = param_summary(p, ell, zeta)
    two = EisensteinElement.make([2, 0, 0, 0], p)
    assert xi_eval(pd, two) == C.from_rational(Fraction(kappa_units(2, p)))
    at_pi = xi_eval(pd, pi_e(ell, p))
    assert at_pi["lambda_token_inverse"] is True
    with pytest.raises(UnsupportedElement):
        xi_eval(pd, EisensteinElement.make([0, 0, 1, 0], p))  # pi_E^2 not pinned down


def test_depth_bookkeeping():
    for ell in range(1, 7):
        p = 5 if (2 * ell) % 5 else 3
        if (2 * ell) % p == 0:
            p = 7
        pd = param_summary(p, ell, C.one())
        assert pd.depth == Fraction(1, 2 * ell)
        assert pd.depth_check["unique_single_block"]
        assert pd.depth_check["attaining"] == [[2 * ell]]


def test_bad_residue_characteristic():
    with pytest.raises(BadResidueChar):
        param_summary(3, 3, C.one())  # p = 3 divides 2l = 6


def test_kappa_table_matches_legendre():
    pd = param_summary(7, 1, C.one())
    assert pd.kappa_table == tuple(legendre(x, 7) for x in range(1, 7))
    assert pd.xi_unit_table == pd.kappa_table
