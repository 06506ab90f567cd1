"""Cells of B~2 by closed-form patterns.

Two-sided cells are recognised by shape: ``c_e = {e}``, ``c_1`` is the set of
non-identity elements with a unique reduced expression, ``c_2`` is the set of
products ``u.rt.(srt)^m.v`` with ``u`` in ``U`` and ``v`` in ``V``, and ``c_0``
consists of the elements containing a longest element of a rank-2 finite
parabolic subgroup as an additive factor.  Left cells inside a two-sided cell
are read off from the right descent set, with two ambiguous patterns in
``c_0`` resolved by one or two more right multiplications.

>>> from klmu.coxeter import b2
>>> W = b2()
>>> two_sided_cell(W("rtstr")), left_cell(W("stst")), pattern_a(W("srts"))
('c_2', 'A_st', 2)
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Optional

from .coxeter import CoxeterSystem, GroupElement, b2

__all__ = [
    "CellLabel",
    "C2Coordinates",
    "CellClassificationError",
    "TWO_SIDED",
    "LEFT_CELLS",
    "two_sided_cell",
    "c2_parametrize",
    "c0_certificate",
    "left_cell",
    "pattern_a",
    "cell_label",
]

TWO_SIDED = ("c_e", "c_1", "c_2", "c_0")
A_VALUE = {"c_e": 0, "c_1": 1, "c_2": 2, "c_0": 4}
LEFT_CELLS = (
    "A_rs", "A_rt", "A_s", "A_r", "A_st", "A'_rt", "A'_s", "A_t",
    "B_rt", "B_s", "B_r", "B_t", "C_r", "C_t", "C_s", "D_empty",
)
U_WORDS = ("", "s", "ts", "rs")
V_WORDS = ("", "s", "st", "sr")


class CellClassificationError(RuntimeError):
    """Raised when the closed-form patterns disagree; indicates a bug."""


@dataclass(frozen=True)
class C2Coordinates:
    u: GroupElement
    m: int
    v: GroupElement

    def element(self) -> GroupElement:
        W = self.u.system
        return self.u * W("rt") * _power(W("srt"), self.m) * self.v

    def __str__(self):
        return f"u={self.u} m={self.m} v={self.v}"


@dataclass(frozen=True)
class CellLabel:
    two_sided: str
    left: str
    a: int


def _power(x: GroupElement, m: int) -> GroupElement:
    out = x.system.identity
    for _ in range(m):
        out = out * x
    return out


def _require_b2(w: GroupElement) -> CoxeterSystem:
    W = b2()
    if w.system is not W:
        raise ValueError(f"cell patterns are only defined for B2, got {w.system.name}")
    return W


_lock = threading.Lock()
_c2_memo: dict[int, Optional[C2Coordinates]] = {}
_c0_memo: dict[int, Optional[tuple[int, int, int]]] = {}


def c2_parametrize(w: GroupElement) -> Optional[C2Coordinates]:
    """Coordinates ``(u, m, v)`` of ``w`` in ``c_2``, or ``None``."""
    W = _require_b2(w)
    with _lock:
        if w.idx in _c2_memo:
            return _c2_memo[w.idx]
    found = []
    lw = w.length
    for uw in U_WORDS:
        for vw in V_WORDS:
            rest = lw - len(uw) - len(vw) - 2
            if rest < 0 or rest % 3:
                continue
            m = rest // 3
            coords = C2Coordinates(W(uw), m, W(vw))
            # the word u.rt.(srt)^m.v is reduced exactly when the length adds up
            if coords.element() == w:
                found.append(coords)
    if len(found) > 1:
        raise CellClassificationError(f"{w} has several c_2 coordinates: {', '.join(map(str, found))}")
    res = found[0] if found else None
    with _lock:
        _c2_memo[w.idx] = res
    return res


_W0_PAIRS = ("st", "rs")


def _c0_search(W: CoxeterSystem, i: int) -> Optional[tuple[int, int, int]]:
    if i in _c0_memo:
        return _c0_memo[i]
    res = None
    ld = W.ldes(i)
    for pair in _W0_PAIRS:
        gens = {W.gen_index(c) for c in pair}
        if gens <= ld:
            w0 = W(pair * 2).idx
            res = (W.identity_id, w0, W.mul_id(w0, i))
            break
    if res is None:
        for g in sorted(ld):
            sub = _c0_search(W, W.lmul_id(g, i))
            if sub is not None:
                res = (W.lmul_id(g, sub[0]), sub[1], sub[2])
                break
    _c0_memo[i] = res
    return res


def c0_certificate(w: GroupElement) -> Optional[tuple[GroupElement, GroupElement, GroupElement]]:
    """A factorisation ``w = u.w0.u'`` with additive lengths, or ``None``.

    ``w0`` is ``stst`` or ``rsrs``; the latter is the image of ``stst``
    under the length-preserving diagram automorphism, so both witness
    ``c_0``.
    """
    W = _require_b2(w)
    with _lock:
        got = _c0_search(W, w.idx)
    if got is None:
        return None
    return tuple(W.element(i) for i in got)


def two_sided_cell(w: GroupElement) -> str:
    W = _require_b2(w)
    if w.is_identity():
        return "c_e"
    hits = []
    if W.rex_count_id(w.idx) == 1:
        hits.append("c_1")
    if c2_parametrize(w) is not None:
        hits.append("c_2")
    if c0_certificate(w) is not None:
        hits.append("c_0")
    if len(hits) != 1:
        raise CellClassificationError(f"{w} matches cell patterns {hits or 'none'}")
    return hits[0]


def pattern_a(w: GroupElement) -> int:
    return A_VALUE[two_sided_cell(w)]


def _rset(w: GroupElement) -> str:
    return "".join(sorted(w.system.labels[g] for g in w.system.rdes(w.idx)))


def left_cell(w: GroupElement) -> str:
    W = _require_b2(w)
    cell = two_sided_cell(w)
    R = _rset(w)
    if cell == "c_e":
        return "D_empty"
    if cell == "c_1":
        return "C_" + R
    if cell == "c_2":
        if R in ("rt", "s", "r", "t"):
            return "B_" + R
        raise CellClassificationError(f"{w} in c_2 has right descents {R}")
    if R in ("rs", "st", "r", "t"):
        return "A_" + R
    if R == "rt":
        hits = [_rset(w * W("t")) == "rs", _rset(w * W("r")) == "st"]
        names = ("A_rt", "A'_rt")
    elif R == "s":
        hits = [_rset(w * W("st")) == "rs", _rset(w * W("sr")) == "st"]
        names = ("A_s", "A'_s")
    else:
        raise CellClassificationError(f"{w} in c_0 has right descents {R}")
    if hits.count(True) != 1:
        raise CellClassificationError(f"{w}: left cell tests {dict(zip(names, hits))} are not exclusive")
    return names[hits.index(True)]


def cell_label(w: GroupElement) -> CellLabel:
    cell = two_sided_cell(w)
    return CellLabel(cell, left_cell(w), A_VALUE[cell])
