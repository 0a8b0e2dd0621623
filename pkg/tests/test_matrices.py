import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ssgamma.matrices import (
    BadDimension,
    GroupMatrix,
    NotInGroup,
    b_element,
    c_hat,
    coset_decompose,
    coset_decompose_gl,
    delta_o,
    eliminate_u_iplus,
    embed_j,
    g_chi_gl,
    g_chi_so,
    iwahori_test,
    iwahori_test_gl,
    omega_prime,
    random_gl_iplus,
    random_so_iplus,
    random_so_unipotent,
    so_check,
    so_root_element,
    torus_so2,
    unipotent_sqrt,
    w_element,
    w_long,
    xbar,
)


def test_g_chi_so_is_involution():
    for ell, p in [(1, 3), (2, 5), (3, 7)]:
        g = g_chi_so(ell, p)
        assert so_check(g)
        assert (g * g).is_identity()


def test_g_chi_gl_power():
    for n, p in [(2, 3), (3, 5), (4, 3)]:
        g = g_chi_gl(n, p)
        acc = g
        for _ in range(n - 1):
            acc = acc * g
        # n-th power is the scalar p
        assert acc.rows == tuple(
            tuple(Fraction(p) if i == j else Fraction(0) for j in range(n)) for i in range(n)
        )


def test_named_auxiliary_elements():
    for ell, p in [(1, 3), (2, 5), (3, 3)]:
        assert (delta_o(ell, p) * delta_o(ell, p)).is_identity()
        assert so_check(c_hat(1, ell, p))
        assert (omega_prime(1, ell, p) * omega_prime(1, ell, p)).is_identity()


def test_w_and_b_degenerate_at_rank_one():
    assert w_element(1, 3).is_identity()
    assert b_element(1, 3).rows == ((Fraction(-1),),)


def test_torus_so2_and_embed():
    p = 5
    h = torus_so2(Fraction(2, 5), p)
    assert so_check(h) is False or h.size == 2  # SO(2) uses the split form check below
    g = embed_j(h, 2)
    assert g.size == 5
    assert so_check(g)
    assert g.rows[0][0] == Fraction(2, 5)
    assert g.rows[4][4] == Fraction(5, 2)


def test_xbar_is_so():
    p = 3
    for ell in (1, 2, 3):
        y = [Fraction(k + 1, 1) for k in range(ell - 1)]
        g = xbar(y, ell, p, verify=True)
        assert so_check(g)
    # unipotent with ones on the diagonal; column y below the corner
    g = xbar([Fraction(1, 3), Fraction(2)], 3, p)
    assert all(g.rows[i][i] == 1 for i in range(7))
    assert g.rows[1][0] == Fraction(1, 3) and g.rows[2][0] == Fraction(2)


def test_iwahori_membership():
    p = 3
    ell = 2
    eye = GroupMatrix.make([[1 if i == j else 0 for j in range(5)] for i in range(5)], p, "SO_odd")
    assert iwahori_test(eye, "I")
    assert iwahori_test(eye, "I+")
    u = so_root_element(ell, p, 0, 1, Fraction(p))
    assert iwahori_test(u, "I+")
    v = so_root_element(ell, p, 0, 1, Fraction(1))
    assert iwahori_test(v, "I") and iwahori_test(v, "I+")
    lower = so_root_element(ell, p, 1, 0, Fraction(1))
    assert not iwahori_test(lower, "I+")
    assert iwahori_test(so_root_element(ell, p, 1, 0, Fraction(p)), "I+")


def test_iwahori_gl():
    p = 3
    g = GroupMatrix.make([[1, 2], [p, 1]], p)
    assert iwahori_test_gl(g)
    assert not iwahori_test_gl(GroupMatrix.make([[1, 2], [1, 1]], p))


def test_eliminate_u_iplus_direct():
    p = 3
    ell = 2
    rng = random.Random(11)
    u = random_so_unipotent(rng, ell, p, integral=False)
    k = random_so_iplus(rng, ell, p)
    m = u * k
    res = eliminate_u_iplus(m.lists(), p)
    assert res is not None
    u2, k2 = res
    assert iwahori_test(GroupMatrix.make(k2, p, "SO_odd", verify=False), "I+")


def test_unipotent_sqrt():
    p = 5
    u = so_root_element(2, p, 0, 1, Fraction(2)) * so_root_element(2, p, 1, 2, Fraction(3))
    w = (u * u).lists()
    s = unipotent_sqrt(w)
    assert GroupMatrix.make(s, p, "SO_odd").rows == u.rows


@pytest.mark.parametrize("ell,p", [(1, 3), (2, 5), (3, 3)])
def test_coset_roundtrip_random(ell, p):
    rng = random.Random(100 * ell + p)
    gchi = g_chi_so(ell, p)
    for _ in range(20):
        u = random_so_unipotent(rng, ell, p, integral=False)
        i = rng.randrange(2)
        k = random_so_iplus(rng, ell, p)
        g = u * (gchi if i else GroupMatrix.make([[1 if a == b else 0 for b in range(2 * ell + 1)] for a in range(2 * ell + 1)], p, "SO_odd")) * k
        wit = coset_decompose(g, ell)
        assert wit is not None
        assert wit.i == i
        assert wit.recompose(gchi).rows == g.rows
        assert iwahori_test(wit.k, "I+")


def test_coset_decompose_rejects_outside():
    # a torus element with nonunit diagonal lies in no U g_chi^i I+ coset
    p = 3
    h = embed_j(torus_so2(Fraction(p * p), p), 1)
    assert coset_decompose(h, 1) is None


@pytest.mark.parametrize("n,p", [(2, 3), (3, 5)])
def test_gl_coset_roundtrip(n, p):
    rng = random.Random(n * 10 + p)
    gchi = g_chi_gl(n, p)
    for _ in range(20):
        j = rng.randrange(n)
        zval = Fraction(rng.choice([1, 2, p, Fraction(1, p)]))
        u = GroupMatrix.make(
            [[1 if a == b else (rng.randrange(-3, 4) if a < b else 0) for b in range(n)] for a in range(n)],
            p,
        )
        z = GroupMatrix.make(
            [[zval if a == b else 0 for b in range(n)] for a in range(n)], p
        )
        gj = GroupMatrix.make([[1 if a == b else 0 for b in range(n)] for a in range(n)], p)
        for _ in range(j):
            gj = gj * gchi
        k = random_gl_iplus(rng, n, p)
        g = u * gj * z * k
        wit = coset_decompose_gl(g)
        assert wit is not None
        assert wit.j == j
        zmat = GroupMatrix.make(
            [[wit.z.value if a == b else 0 for b in range(n)] for a in range(n)], p
        )
        rec = wit.u
        for _ in range(wit.j):
            rec = rec * gchi
        rec = rec * zmat * wit.k
        assert rec.rows == g.rows


def test_so_root_element_group_law():
    p = 3
    ell = 3
    # long roots add linearly
    a = so_root_element(ell, p, 0, 1, Fraction(2))
    b = so_root_element(ell, p, 0, 1, Fraction(5))
    assert (a * b).rows == so_root_element(ell, p, 0, 1, Fraction(7)).rows
    # short roots satisfy the quadratic correction and still land in SO
    s = so_root_element(ell, p, 1, ell, Fraction(1, 3))
    assert so_check(s)


def test_star_on_gl():
    p = 3
    g = GroupMatrix.make([[1, 2], [0, 1]], p)
    gs = g.star()
    assert gs.rows == ((Fraction(1), Fraction(-2)), (Fraction(0), Fraction(1)))
    # trace-form compatible: (gh)* = g* h* and g** = g
    h = GroupMatrix.make([[2, 1], [1, 1]], p)
    assert ((g * h).star()).rows == (g.star() * h.star()).rows
    assert g.star().star().rows == g.rows


def test_serialization_roundtrip():
    p = 5
    g = g_chi_so(2, p)
    assert GroupMatrix.from_dict(g.to_dict()).rows == g.rows


def test_make_validates():
    with pytest.raises(NotInGroup):
        GroupMatrix.make([[1, 0], [0, 2]], 3, "SO_even")
    with pytest.raises(BadDimension):
        GroupMatrix.make([[1, 0], [0, 1]], 3, "SO_odd")
