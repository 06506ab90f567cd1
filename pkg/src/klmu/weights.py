"""The B2 weight lattice and the coefficients ``a_{lambda,lambda'}``.

A :class:`Weight` ``(m, n)`` stands for ``m*x + n*y`` with fundamental weights
``x = alpha + beta`` and ``y = alpha/2 + beta``.  In root coordinates this is
``i*alpha + j*beta`` with ``i = (2m + n)/2`` and ``j = m + n``; the root
lattice is ``n`` even and its dominant part is ``i <= j <= 2i``.

Elements of the finite Weyl group ``W0 = <s, t>`` are taken from the B~2
system, so the same ``stst`` acts on weights here and lives in the affine
group elsewhere.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .coxeter import GroupElement, b2
from .laurent import ONE, ZERO, LaurentPoly

__all__ = [
    "Weight",
    "StabilizerData",
    "W0_WORDS",
    "RHO",
    "w0_elements",
    "w0_act",
    "dominance_leq",
    "phi",
    "weight_class",
    "stabilizer_data",
    "pi_closed",
    "epsilon",
    "translation_element",
    "m_lambda_closed",
    "m_lambda_bruteforce",
    "coset_extremes",
    "double_coset",
    "a_coefficient",
    "a_coefficient_sum",
    "a_coefficient_closed",
    "dominant_root_weights",
    "dominant_below",
]


@dataclass(frozen=True, order=True)
class Weight:
    m: int
    n: int

    @classmethod
    def from_root(cls, i: int, j: int) -> Weight:
        """``i*alpha + j*beta``."""
        return cls(2 * i - j, 2 * (j - i))

    @classmethod
    def parse(cls, text: str) -> Weight:
        """Accepts ``"i,j"`` (root coordinates) or ``"m*x+n*y"``."""
        s = text.replace(" ", "")
        if "," in s:
            parts = s.split(",")
            if len(parts) != 2:
                raise ValueError(f"expected 'i,j', got {text!r}")
            return cls.from_root(int(parts[0]), int(parts[1]))
        if not s or not re.fullmatch(r"[-+0-9*xy]+", s):
            raise ValueError(f"cannot parse weight {text!r}")
        coef = {"x": 0, "y": 0}
        for sign, num, var in re.findall(r"([+-]?)(\d*)\*?([xy])", s):
            c = int(num) if num else 1
            coef[var] += -c if sign == "-" else c
        if re.sub(r"([+-]?)(\d*)\*?([xy])", "", s):
            raise ValueError(f"cannot parse weight {text!r}")
        return cls(coef["x"], coef["y"])

    @property
    def twice_i(self) -> int:
        return 2 * self.m + self.n

    @property
    def i(self) -> int:
        if self.n % 2:
            raise ValueError(f"{self.fundamental()} is not in the root lattice")
        return self.twice_i // 2

    @property
    def j(self) -> int:
        return self.m + self.n

    def in_root_lattice(self) -> bool:
        return self.n % 2 == 0

    def is_dominant(self) -> bool:
        return self.m >= 0 and self.n >= 0

    def height(self) -> int:
        return self.i + self.j

    def __add__(self, other: Weight) -> Weight:
        return Weight(self.m + other.m, self.n + other.n)

    def __sub__(self, other: Weight) -> Weight:
        return Weight(self.m - other.m, self.n - other.n)

    def __neg__(self) -> Weight:
        return Weight(-self.m, -self.n)

    def fundamental(self) -> str:
        return f"{self.m}x+{self.n}y".replace("+-", "-")

    def root(self) -> str:
        if self.n % 2:
            return f"{self.twice_i}/2,{self.j}"
        return f"{self.i},{self.j}"

    def __str__(self):
        return f"{self.root()} ({self.fundamental()})"


RHO = Weight(1, 1)
ZERO_WEIGHT = Weight(0, 0)
W0_WORDS = ("", "s", "t", "st", "ts", "sts", "tst", "stst")


def w0_elements() -> list[GroupElement]:
    W = b2()
    return [W(w) for w in W0_WORDS]


def _act_letter(g: str, lam: Weight) -> Weight:
    # s(x) = 2y - x, s(y) = y; t(x) = x, t(y) = x - y
    if g == "s":
        return Weight(-lam.m, 2 * lam.m + lam.n)
    if g == "t":
        return Weight(lam.m + lam.n, -lam.n)
    raise ValueError(f"{g!r} is not a generator of W0")


def w0_act(w: GroupElement | str, lam: Weight) -> Weight:
    if isinstance(w, GroupElement):
        if w.system is not b2():
            raise ValueError("W0 elements must come from B2")
        word = b2().render(w.word)
        word = "" if word == "e" else word
    else:
        word = "" if w == "e" else w
    for g in reversed(word):
        lam = _act_letter(g, lam)
    return lam


def dominance_leq(lam: Weight, lam2: Weight) -> bool:
    """``lam <= lam2``: the difference is a nonnegative combination of alpha and beta."""
    d = lam2 - lam
    return d.in_root_lattice() and d.twice_i >= 0 and d.j >= 0


_POSITIVE_ROOTS = ((1, 0), (0, 1), (1, 1), (1, 2))


@lru_cache(maxsize=None)
def _phi_table() -> dict[tuple[int, int], LaurentPoly]:
    acc: dict[tuple[int, int], LaurentPoly] = {}
    for k in range(5):
        for sub in itertools.combinations(_POSITIVE_ROOTS, k):
            key = (sum(a for a, _ in sub), sum(b for _, b in sub))
            acc[key] = acc.get(key, ZERO) + LaurentPoly.monomial(-2 * k, (-1) ** k)
    return acc


def phi(lam: Weight) -> LaurentPoly:
    """Sum of ``(-v^2)^-k`` over the ``k``-subsets of positive roots summing to ``lam``."""
    if not lam.in_root_lattice():
        raise ValueError(f"{lam.fundamental()} is not in the root lattice")
    return _phi_table().get((lam.i, lam.j), ZERO)


def _require_dominant_root(lam: Weight) -> None:
    if not (lam.is_dominant() and lam.in_root_lattice()):
        raise ValueError(f"{lam.fundamental()} is not a dominant element of the root lattice")


def weight_class(lam: Weight) -> str:
    """One of ``"0"``, ``"X1"``, ``"X2"``, ``"Y1"``, ``"Y2"``."""
    _require_dominant_root(lam)
    if lam.m == 0 and lam.n == 0:
        return "0"
    if lam.n == 0:
        return "X1"
    if lam.m == 0:
        return "X2"
    return "Y1" if lam.m == 1 else "Y2"


@dataclass(frozen=True)
class StabilizerData:
    elements: tuple[GroupElement, ...]
    nu: int
    pi: LaurentPoly


@lru_cache(maxsize=None)
def stabilizer_data(lam: Weight) -> StabilizerData:
    _require_dominant_root(lam)
    stab = tuple(w for w in w0_elements() if w0_act(w, lam) == lam)
    # in a dihedral group the reflections are exactly the odd-length elements
    nu = sum(1 for w in stab if w.length % 2)
    pi = LaurentPoly({})
    for w in stab:
        pi = pi + LaurentPoly.monomial(2 * w.length - nu)
    return StabilizerData(stab, nu, pi)


_V_PLUS_VINV = LaurentPoly({1: 1, -1: 1})


def pi_closed(lam: Weight) -> LaurentPoly:
    cls = weight_class(lam)
    if cls == "0":
        return stabilizer_data(lam).pi
    return _V_PLUS_VINV if cls.startswith("X") else ONE


def epsilon(lam: Weight) -> int:
    """``(-1)^(l(m_lam) - l(M_lam))``: -1 on X, +1 on Y and at 0."""
    return -1 if weight_class(lam).startswith("X") else 1


def _power(x: GroupElement, k: int) -> GroupElement:
    if k < 0:
        x, k = x.inverse(), -k
    out = x.system.identity
    for _ in range(k):
        out = out * x
    return out


def translation_element(lam: Weight) -> GroupElement:
    """The translation by ``lam`` as an element of B~2 (root lattice only)."""
    if not lam.in_root_lattice():
        raise ValueError(f"{lam.fundamental()} is not in the root lattice")
    W = b2()
    return _power(W("stsr"), lam.m) * _power(W("tsrtsr"), lam.n // 2)


def m_lambda_closed(lam: Weight) -> GroupElement:
    W = b2()
    cls = weight_class(lam)
    if cls == "0":
        return W.identity
    if cls == "X1":
        return W("r") * _power(W("stsr"), lam.m - 1)
    k = lam.n // 2
    if cls == "X2":
        return W("rsr") * _power(W("tsr"), 2 * k - 2)
    if cls == "Y1":
        return W("rsr") * _power(W("tsr"), 2 * k - 1)
    return _power(W("rst"), 2 * k - 1) * _power(W("srst"), lam.m - 2) * W("srsrtsr")


def double_coset(lam: Weight) -> list[GroupElement]:
    t = translation_element(lam)
    out = {a * t * b for a in w0_elements() for b in w0_elements()}
    return sorted(out, key=lambda w: w.sort_key())


def m_lambda_bruteforce(lam: Weight) -> GroupElement:
    return min(double_coset(lam), key=lambda w: w.sort_key())


@lru_cache(maxsize=None)
def coset_extremes(lam: Weight) -> tuple[GroupElement, GroupElement]:
    """``(m_lam, M_lam)``; the closed form is checked against brute force."""
    _require_dominant_root(lam)
    closed = m_lambda_closed(lam)
    brute = m_lambda_bruteforce(lam)
    if closed != brute:
        raise AssertionError(f"m_lambda mismatch for {lam}: closed {closed}, brute force {brute}")
    return closed, translation_element(lam) * b2()("stst")


def a_coefficient_sum(lam: Weight, lam2: Weight) -> LaurentPoly:
    """The defining alternating sum over ``W0``, divided exactly by ``pi``."""
    _require_dominant_root(lam)
    data = stabilizer_data(lam2)
    total = ZERO
    shifted = lam + RHO
    for w in w0_elements():
        d = lam2 + RHO - w0_act(w, shifted)
        total = total + phi(d) * (-1) ** w.length
    return total.shift(data.nu).divexact(data.pi)


_V2, _V4, _V6, _V8 = (LaurentPoly.monomial(-k) for k in (2, 4, 6, 8))


def a_coefficient_closed(lam: Weight, lam2: Weight) -> LaurentPoly:
    """Case table in the difference ``lam2 - lam``.

    The table covers ``0 < lam < lam2``; for ``lam = 0`` the defining sum is
    used instead.
    """
    _require_dominant_root(lam)
    _require_dominant_root(lam2)
    if lam == lam2:
        return ONE
    if not dominance_leq(lam, lam2):
        return ZERO
    if lam == ZERO_WEIGHT:
        return a_coefficient_sum(lam, lam2)
    d = lam2 - lam
    di, dj = d.i, d.j
    i, j = lam2.i, lam2.j
    if (di, dj) in ((1, 0), (0, 1)):
        return -_V2
    if (di, dj) == (1, 1):
        if j == i:
            return ZERO
        return -_V2 if j == 2 * i - 1 else _V4 - _V2
    if (di, dj) == (1, 2):
        return -_V2 if j == i + 1 else _V4 - _V2
    if (di, dj) in ((1, 3), (2, 1)):
        return _V4
    if (di, dj) == (2, 2):
        # vanishes on the diagonal j == i; the alternating sum and the KL route agree on this
        return ZERO if j == i else _V4 - _V6
    if (di, dj) == (2, 3):
        return _V4 if j in (2 * i - 1, i + 1) else _V4 - _V6
    if (di, dj) in ((2, 4), (3, 3)):
        return -_V6
    if (di, dj) == (3, 4):
        return _V8
    return ZERO


def a_coefficient(lam: Weight, lam2: Weight, method: str = "closed") -> LaurentPoly:
    if method == "closed":
        return a_coefficient_closed(lam, lam2)
    if method == "sum":
        return a_coefficient_sum(lam, lam2)
    raise ValueError(f"unknown method {method!r}")


def dominant_root_weights(max_height: int) -> Iterator[Weight]:
    """Dominant root-lattice weights with ``i + j <= max_height``."""
    for i in range(max_height + 1):
        for j in range(i, 2 * i + 1):
            if i + j <= max_height:
                yield Weight.from_root(i, j)


def _solve_order(lam: Weight):
    return (-lam.height(), -lam.i)


def dominant_below(lam2: Weight) -> list[Weight]:
    """``{lam in Lambda_r^+ : lam <= lam2}`` in decreasing height, ties by decreasing ``i``."""
    _require_dominant_root(lam2)
    out = [
        Weight.from_root(i, j)
        for i in range(lam2.i + 1)
        for j in range(i, min(2 * i, lam2.j) + 1)
    ]
    return sorted(out, key=_solve_order)
