import itertools

import pytest
from hypothesis import given, settings, strategies as st

from klmu.coxeter import (
    bruhat_leq,
    inverse,
    left_descents,
    left_string,
    multiply,
    reduced_expression_count,
    right_descents,
    right_string,
)


def test_words_and_lengths(W):
    assert W("rr").is_identity()
    assert str(W("tr")) == "rt"
    assert W("rtstr").length == 5
    assert W("").length == 0 and str(W.identity) == "e"
    assert W("stsr") * W("stsr") == W("stsrstsr")
    assert (W("stsr") * W("stsr")).length == 8


def test_multiply_inverse(W):
    assert multiply(W("r"), W("r")) == W.identity
    assert inverse(W("rst")) == W("tsr")


def test_relations(W, A):
    W.check_relations()
    A.check_relations()
    assert W("rsrs") == W("srsr")
    assert W("stst") == W("tsts")
    assert A("010") == A("101")


def test_unknown_letter(W):
    with pytest.raises(ValueError):
        W("rx")


def test_descents(W):
    assert left_descents(W("srts")) == frozenset("s")
    assert right_descents(W("rt")) == frozenset("rt")


def _subword_oracle(u, w):
    W = w.system
    word = w.word
    for k in range(len(word) + 1):
        for idx in itertools.combinations(range(len(word)), k):
            if W([word[i] for i in idx]) == u:
                return True
    return False


def test_bruhat_examples(W):
    assert bruhat_leq(W("r"), W("rsrtsr"))
    assert not bruhat_leq(W("t"), W("rsr"))
    assert all(bruhat_leq(W.identity, w) for w in W.ball(5))


def test_bruhat_against_subwords(W):
    ball = W.ball(5)
    for w in ball:
        for u in ball:
            if u.length <= w.length:
                assert bruhat_leq(u, w) == _subword_oracle(u, w), (u, w)


def _rex_oracle(w):
    W = w.system
    return sum(1 for word in itertools.product(range(W.rank), repeat=w.length) if W(word) == w)


def test_reduced_expression_counts(W):
    assert reduced_expression_count(W.identity) == 1
    assert reduced_expression_count(W("rt")) == 2
    assert reduced_expression_count(W("rsrtsr")) > 1
    for w in W.ball(5):
        assert reduced_expression_count(w) == _rex_oracle(w)


def test_ball_is_shortlex(W):
    ball = W.ball(6)
    keys = [(w.length, w.word) for w in ball]
    assert keys == sorted(keys)
    assert len(set(ball)) == len(ball)


def test_strings(W):
    s = left_string(W("srtsr"), "rs")
    assert [str(x) for x in s.elements] == ["rtsr", "srtsr", "rsrtsr"]
    assert s.index == 2
    assert left_string(W.identity, "rs") is None
    with pytest.raises(ValueError):
        left_string(W("r"), "rt")
    r = right_string(W("rsr"), "rs")
    assert r is not None and W("rsr") in r.elements


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from("rst"), max_size=12), st.lists(st.sampled_from("rst"), max_size=12))
def test_group_laws(W, a, b):
    x, y = W("".join(a)), W("".join(b))
    assert (x * y).inverse() == y.inverse() * x.inverse()
    assert (x * y).length <= x.length + y.length
    assert x.length == len(x.word)
    assert W(x.word) == x
