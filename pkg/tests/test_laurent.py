import pytest
from hypothesis import given, strategies as st

from klmu.laurent import ONE, V, ZERO, InexactDivision, KLPoly, LaurentPoly

M = LaurentPoly.monomial

polys = st.dictionaries(st.integers(-8, 8), st.integers(-5, 5), max_size=6).map(LaurentPoly)


def test_bar_examples():
    assert V.bar() == M(-1)
    assert LaurentPoly.constant(3).bar() == 3
    assert (M(-4) - M(-2)).bar() == M(4) - M(2)


def test_residue_and_negative_part():
    assert (M(-1) + M(-3)).residue_v0() == 1
    assert ONE.residue_v0() == 0
    assert (M(-1) - M(-5)).residue_v0() == 1
    assert (M(2) + M(-1)).negative_part() == M(-1)
    assert (M(4) - M(2)).negative_part() == ZERO
    assert (V - M(-1)).negative_part() == -M(-1)


def test_rendering_ascending():
    assert str(M(-4) - M(-2)) == "v^-4 - v^-2"
    assert str(ZERO) == "0"
    assert str(KLPoly((1, 1))) == "1 + q"
    assert KLPoly(()).degree() == -1


def test_parse_roundtrip_examples():
    for text in ("v^-4 - v^-2", "-v^-3", "1", "v^-1 + 2v^3"):
        assert str(LaurentPoly.parse(text)) == text


def test_divexact():
    pi = M(1) + M(-1)
    assert (M(3) + M(-3)).divexact(pi) == M(2) - ONE + M(-2)
    with pytest.raises(InexactDivision):
        (ONE + V).divexact(V + V * V + V * V * V)


@given(polys, polys)
def test_ring_axioms(p, q):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q).bar() == p.bar() + q.bar()
    assert (p * q).bar() == p.bar() * q.bar()
    assert p.bar().bar() == p


@given(polys, polys.filter(lambda d: not d.is_zero()))
def test_divexact_inverts_multiplication(p, d):
    assert (p * d).divexact(d) == p


@given(polys)
def test_parse_inverts_str(p):
    assert LaurentPoly.parse(str(p)) == p


@given(polys)
def test_negative_part_splits(p):
    neg = p.negative_part()
    assert all(e < 0 for e, _ in neg.items())
    assert all(e >= 0 for e, _ in (p - neg).items())
