from functools import lru_cache

import pytest

from klmu.kl import CacheFormatError, KLCache, engine
from klmu.laurent import KLPoly


def _right_recursion(W):
    """Textbook KL recursion on a right descent; independent of the engine."""
    L = W.length_of

    @lru_cache(maxsize=None)
    def P(x, w):
        if not W.bruhat_leq_id(x, w):
            return ()
        if x == w:
            return (1,)
        s = min(W.rdes(w))
        v = W.rmul_id(w, s)
        c = 1 if s in W.rdes(x) else 0
        out = {}

        def add(p, shift, k=1):
            for i, a in enumerate(p):
                out[i + shift] = out.get(i + shift, 0) + k * a

        add(P(W.rmul_id(x, s), v), 1 - c)
        add(P(x, v), c)
        for z in W.lower_ideal(v):
            if z == v or s not in W.rdes(z) or not W.bruhat_leq_id(x, z):
                continue
            d = L(v) - L(z)
            if d % 2:
                m = dict(enumerate(P(z, v))).get((d - 1) // 2, 0)
                if m:
                    add(P(x, z), (L(w) - L(z)) // 2, -m)
        top = max([k for k, a in out.items() if a] + [-1])
        return tuple(out.get(i, 0) for i in range(top + 1))

    return P


def test_known_values(W, eng):
    assert str(eng.kl_polynomial(W.identity, W("rtstr"))) == "1 + q"
    assert eng.mu(W("r"), W("rs")) == 1
    assert eng.mu(W("sr"), W("srtsr")) == 1
    assert eng.kl_polynomial(W("t"), W("rsr")).is_zero()


@pytest.mark.parametrize("name", ["B2", "A2"])
def test_against_right_recursion(name, W, A):
    S = W if name == "B2" else A
    eng = engine(S)
    P = _right_recursion(S)
    for w in S.ball_ids(9):
        for u in S.lower_ideal(w):
            assert eng.poly_id(u, w) == KLPoly(P(u, w)), (S.word_of(u), S.word_of(w))


def test_descent_policy_does_not_matter(W, eng):
    other = KLCache(W, descent_policy=max)
    for w in W.ball_ids(10):
        for u in W.lower_ideal(w):
            assert other.poly_id(u, w) == eng.poly_id(u, w)


def test_mu_list_sorted_and_nonzero(W, eng):
    w = W("rsrtsrtsr")
    got = eng.mu_list(w)
    assert got and all(m > 0 for _, m in got)
    assert [z.sort_key() for z, _ in got] == sorted(z.sort_key() for z, _ in got)


def test_mu_tilde_symmetric(W, eng):
    for w in W.ball(6):
        for u in W.ball(6):
            assert eng.mu_tilde(u, w) == eng.mu_tilde(w, u)


def test_save_load_roundtrip(tmp_path, W, eng):
    eng.warm(7)
    path = tmp_path / "b2.klc"
    eng.save(path)
    fresh = KLCache(W)
    assert fresh.load(path) == eng.stats()["columns"]
    for w in W.ball_ids(7):
        for u in W.lower_ideal(w):
            assert fresh.poly_id(u, w) == eng.poly_id(u, w)


def test_load_rejects_bad_files(tmp_path, W, A):
    bad = tmp_path / "bad.klc"
    bad.write_text("not a cache\n")
    with pytest.raises(CacheFormatError):
        KLCache(W).load(bad)
    good = tmp_path / "a2.klc"
    engine(A).warm(3)
    engine(A).save(good)
    with pytest.raises(CacheFormatError):
        KLCache(W).load(good)
    broken = tmp_path / "broken.klc"
    lines = good.read_text().splitlines()
    broken.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(CacheFormatError):
        KLCache(A).load(broken)
