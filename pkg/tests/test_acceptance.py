"""One line per acceptance criterion, printed in the terminal summary.

Criteria whose literal statement is contradicted on the ball keep their
literal assertion under a strict xfail; the companion tests pin what is
computed instead.
"""

from functools import lru_cache

import pytest

from klmu.coxeter import b2
from klmu.hecke import d_class
from klmu.kl import engine
from klmu.laurent import KLPoly, LaurentPoly
from klmu.semilinear import b_column_semilinear, conjectural_b
from klmu.verify import verify
from klmu.weights import Weight, dominance_leq, dominant_root_weights

LINES: dict[int, str] = {}


def _record(n: int, ok: bool, detail: str) -> bool:
    LINES[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


def _run(ids_and_bounds):
    reports = [verify(t, b) for t, b in ids_and_bounds]
    bad = [r for r in reports if not r.passed]
    checked = sum(r.checked for r in reports)
    detail = f"{checked} checks over {', '.join(f'{r.theorem}@{r.bound}' for r in reports)}"
    if bad:
        detail += "; failing: " + ", ".join(f"{r.theorem} ({len(r.counterexamples)})" for r in bad)
    return not bad, detail


@lru_cache(maxsize=None)
def criterion(n: int) -> bool:
    if n == 1:
        W = b2()
        w = W("rtstr")
        p = engine(W).kl_polynomial(W.identity, w)
        dc = d_class(w)
        ok = p == KLPoly((1, 1)) and (dc.length, dc.a, dc.delta, dc.i) == (5, 2, 1, 1)
        return _record(1, ok, f"P_(e,rtstr) = {p}; l={dc.length} a={dc.a} delta={dc.delta} i={dc.i}")
    if n == 2:
        rep = verify("2.2", 12)
        detail = f"found {rep.notes['found']}"
        if not rep.passed:
            detail += "; listed tstrstrsr = tsrtsrtsr has l-a-2delta = 3, found tsrtsrtst instead"
        return _record(2, rep.passed, detail)
    if n == 3:
        rep = verify("4.3", 20)
        pairs = sum(
            1
            for b in dominant_root_weights(20)
            for a in dominant_root_weights(20)
            if dominance_leq(a, b)
        )
        return _record(3, rep.passed, f"{pairs} pairs up to i+j=20, {rep.checked} checks")
    if n == 4:
        return _record(4, *_run([("5.1", 6), ("5.2", 6), ("bcross", 12)]))
    if n == 5:
        return _record(5, *_run([(t, 14) for t in ("5.4", "5.5", "5.6", "5.7", "5.8", "5.9")]))
    if n == 6:
        ok, detail = _run([("7.1", 14), ("7.2", 14), ("8.1", 4), ("8.2", 14)])
        partners = verify("8.2", 14).notes["w with mu(rt, w) != 0"]
        ok = ok and len(partners) >= 5
        return _record(6, ok, detail + f"; {len(partners)} w with mu(rt,w) != 0")
    if n == 7:
        return _record(7, *_run([("3.3", 14), ("3.4", 12)]))
    if n == 8:
        return _record(8, *_run([
            ("klprops", 12), ("hecke", 8), ("afunction", 8), ("cells", 14), ("mlambda", 16), ("bcross", 12),
        ]))
    if n == 9:
        v1 = LaurentPoly.monomial(-1)
        bad = []
        for m in range(2, 7):
            lam, target = Weight.from_root(m - 1, 2 * m - 2), Weight.from_root(m, 2 * m - 1)
            b = b_column_semilinear(target)[lam]
            if b != v1 or conjectural_b(lam, target) != 0:
                bad.append(f"m={m}: b={b}")
        detail = "b = v^-1 and formula = 0 for 2 <= m <= 6"
        if bad:
            detail += "; fails at " + ", ".join(bad)
        return _record(9, not bad, detail)
    raise ValueError(n)


@pytest.mark.parametrize("n", [1, 3, 4, 5, 8])
def test_criterion(n):
    assert criterion(n), LINES[n]


@pytest.mark.xfail(strict=True, reason="listed word tstrstrsr is not in the set; see pinned set below")
def test_criterion_2():
    assert criterion(2), LINES[2]


@pytest.mark.xfail(strict=True, reason="exceptional set E misses three pairs; the extra u for two exceptional w has an even length gap")
def test_criterion_6():
    assert criterion(6), LINES[6]


@pytest.mark.xfail(strict=True, reason="A2 case (ii) fails on 12 pairs (gap 1 with mu 1, gap 3 with P = 1)")
def test_criterion_7():
    assert criterion(7), LINES[7]


@pytest.mark.xfail(strict=True, reason="b vanishes at m = 2 by both routes")
def test_criterion_9():
    assert criterion(9), LINES[9]


# what holds inside the unattainable criteria


def test_criterion_2_computed_set():
    rep = verify("2.2", 12)
    W = b2()
    found = [W(x) for x in rep.notes["found"]]
    assert found == [W(x) for x in ("rtstr", "strstrs", "rstrstrsr", "tsrtsrtst")]
    assert all(d_class(z).i == 1 for z in found)


def test_criterion_6_other_parts():
    for t, b in (("7.1", 14), ("8.1", 4)):
        assert verify(t, b).passed
    assert len(verify("8.2", 14).notes["w with mu(rt, w) != 0"]) >= 5


def test_criterion_7_other_parts():
    assert verify("3.3", 14).passed
    rep = verify("3.4", 12)
    assert len(rep.counterexamples) == 12


def test_criterion_9_from_three():
    assert verify("remark5.3", 6).passed
    lam, target = Weight.from_root(1, 2), Weight.from_root(2, 3)
    assert b_column_semilinear(target)[lam] == 0 == conjectural_b(lam, target)


if __name__ == "__main__":
    for k in range(1, 10):
        criterion(k)
        print(LINES[k])
