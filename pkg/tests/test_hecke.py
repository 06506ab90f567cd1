import pytest

from klmu.hecke import (
    HeckeInvariantError,
    T,
    a_value_bounded,
    bar,
    c_basis,
    c_expand,
    c_products,
    d_class,
    delta_e,
    h_constants,
    is_distinguished,
    t_multiply,
)
from klmu.laurent import LaurentPoly

M = LaurentPoly.monomial


def test_c_s(W):
    c = c_basis(W("s"))
    assert c.coeff(W.identity) == M(-1) and c.coeff(W("s")) == M(-1)


def test_quadratic_relation(W):
    s = T(W("s"))
    q = M(2)
    assert t_multiply(s, s) == T(W.identity).scale(q) + s.scale(q - 1)


def test_associativity(W):
    xs = [T(W(w)) + T(W("s")) for w in ("rt", "sr", "tst")]
    a, b, c = xs
    assert (a * b) * c == a * (b * c)


def test_bar_is_involution(W):
    h = T(W("rst")).scale(M(3)) + T(W("s"))
    assert bar(bar(h)) == h


def test_c_basis_bar_invariant(W):
    for w in W.ball(6):
        assert bar(c_basis(w)) == c_basis(w)


def test_c_expand_inverts(W):
    h = c_basis(W("rts")).scale(M(2)) + c_basis(W("s"))
    got = c_expand(h)
    assert got == {W("rts"): M(2), W("s"): LaurentPoly.constant(1)}


def test_product_routes_agree(W):
    prods = c_products(W)
    for x in W.ball(4):
        for y in W.ball(4):
            assert prods.product(x, y) == h_constants(x, y), (x, y)


def test_h_sss(W):
    assert h_constants(W("s"), W("s")) == {W("s"): M(-1) + M(1)}


def test_d_class(W):
    e = d_class(W.identity, 0)
    assert (e.i, e.distinguished) == (0, True)
    dc = d_class(W("rtstr"))
    assert (dc.length, dc.a, dc.delta, dc.i) == (5, 2, 1, 1)
    assert delta_e(W("rtstr")) == 1
    assert is_distinguished(W("srts"))
    assert not is_distinguished(W("rtstr"))


def test_a_value_bounded_matches_cells(W):
    from klmu.cells import pattern_a

    for z in W.ball(6):
        assert a_value_bounded(z, 8) == pattern_a(z)
    with pytest.raises(ValueError):
        a_value_bounded(W("rsrtsrtsr"), 6)


def test_invariant_error_type():
    assert issubclass(HeckeInvariantError, AssertionError)
