"""Iwahori-Hecke algebra arithmetic, the canonical basis and the a-function.

Elements are stored in the standard basis ``T_w`` with Laurent coefficients
in ``v`` (``q = v^2``).  Two independent routes compute the structure
constants ``h_{x,y,z}`` of ``C_x C_y = sum_z h_{x,y,z} C_z``:

* :func:`h_constants` multiplies in the T-basis and peels off ``C_z`` from the
  longest support element downwards;
* :class:`CProducts` works directly in the C-basis using only ``mu`` values,
  which is what makes the bounded a-function affordable.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Mapping, Optional

from .coxeter import CoxeterSystem, GroupElement, b2
from .kl import engine
from .laurent import ONE, ZERO, LaurentPoly

__all__ = [
    "HeckeVector",
    "DClass",
    "HeckeInvariantError",
    "T",
    "c_basis",
    "t_multiply",
    "bar",
    "h_constants",
    "CProducts",
    "c_products",
    "gamma_delta",
    "delta_e",
    "d_class",
    "is_distinguished",
    "a_value_bounded",
]

_Q = LaurentPoly.monomial(2)
_Q_MINUS_1 = _Q - 1
_VINV2 = LaurentPoly.monomial(-2)
_VINV2_MINUS_1 = _VINV2 - 1
_V_PLUS_VINV = LaurentPoly({1: 1, -1: 1})


class HeckeInvariantError(AssertionError):
    """A structural identity of the Hecke algebra failed."""


class HeckeVector:
    """Finite sum ``sum_w a_w T_w``; zero coordinates are never stored."""

    __slots__ = ("system", "_c")

    def __init__(self, system: CoxeterSystem, coords: Mapping[int, LaurentPoly] | None = None):
        self.system = system
        self._c: dict[int, LaurentPoly] = {k: p for k, p in (coords or {}).items() if p}

    @classmethod
    def from_elements(cls, items: Mapping[GroupElement, LaurentPoly | int]) -> HeckeVector:
        systems = {w.system for w in items}
        if len(systems) != 1:
            raise ValueError("HeckeVector support must lie in one system")
        (W,) = systems
        return cls(W, {w.idx: LaurentPoly.constant(p) if isinstance(p, int) else p for w, p in items.items()})

    def coeff(self, w: GroupElement) -> LaurentPoly:
        return self._c.get(w.idx, ZERO)

    def coords(self) -> dict[int, LaurentPoly]:
        return dict(self._c)

    def items(self) -> list[tuple[GroupElement, LaurentPoly]]:
        W = self.system
        return sorted(((W.element(i), p) for i, p in self._c.items()), key=lambda t: t[0].sort_key())

    def support(self) -> list[GroupElement]:
        return [w for w, _ in self.items()]

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def _same(self, other: HeckeVector) -> None:
        if other.system is not self.system:
            raise ValueError("HeckeVectors from different systems")

    def __add__(self, other: HeckeVector) -> HeckeVector:
        self._same(other)
        out = dict(self._c)
        for k, p in other._c.items():
            out[k] = out.get(k, ZERO) + p
        return HeckeVector(self.system, out)

    def __neg__(self) -> HeckeVector:
        return HeckeVector(self.system, {k: -p for k, p in self._c.items()})

    def __sub__(self, other: HeckeVector) -> HeckeVector:
        return self + (-other)

    def scale(self, c: LaurentPoly | int) -> HeckeVector:
        return HeckeVector(self.system, {k: p * c for k, p in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeVector):
            return t_multiply(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, HeckeVector):
            return NotImplemented
        return self.system is other.system and self._c == other._c

    def __hash__(self):
        return hash((id(self.system), frozenset(self._c.items())))

    def __repr__(self):
        return f"HeckeVector({self})"

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"({p})T_{w}" for w, p in self.items())


def T(w: GroupElement) -> HeckeVector:
    return HeckeVector(w.system, {w.idx: ONE})


def _times_generator(x: dict[int, LaurentPoly], W: CoxeterSystem, g: int) -> dict[int, LaurentPoly]:
    # right multiplication by T_g
    out: dict[int, LaurentPoly] = {}

    def add(k, p):
        s = out.get(k, ZERO) + p
        if s:
            out[k] = s
        else:
            out.pop(k, None)

    for w, p in x.items():
        wg = W.rmul_id(w, g)
        if g in W.rdes(w):
            add(w, p * _Q_MINUS_1)
            add(wg, p * _Q)
        else:
            add(wg, p)
    return out


def t_multiply(a: HeckeVector, b: HeckeVector) -> HeckeVector:
    """Product in the T-basis, one simple reflection at a time."""
    a._same(b)
    W = a.system
    total: dict[int, LaurentPoly] = {}
    for u, coef in b._c.items():
        x = a._c
        for g in W.word_of(u):
            x = _times_generator(x, W, g)
        for k, p in x.items():
            total[k] = total.get(k, ZERO) + p * coef
    return HeckeVector(W, total)


def _add_into(acc: dict, k: int, p: LaurentPoly) -> None:
    s = acc.get(k, ZERO) + p
    if s:
        acc[k] = s
    else:
        acc.pop(k, None)


def bar(h: HeckeVector) -> HeckeVector:
    """The ring involution ``v -> v^-1``, ``T_w -> T_{w^-1}^-1``."""
    W = h.system
    total: dict[int, LaurentPoly] = {}
    for u, coef in h._c.items():
        x = {W.identity_id: coef.bar()}
        for g in W.word_of(u):
            # T_g^-1 = v^-2 T_g + (v^-2 - 1) T_e
            y = _times_generator(x, W, g)
            nxt: dict[int, LaurentPoly] = {}
            for k, p in y.items():
                _add_into(nxt, k, p * _VINV2)
            for k, p in x.items():
                _add_into(nxt, k, p * _VINV2_MINUS_1)
            x = nxt
        for k, p in x.items():
            _add_into(total, k, p)
    return HeckeVector(W, total)


def c_basis(w: GroupElement) -> HeckeVector:
    """``C_w = v^{-l(w)} sum_{u <= w} P_{u,w}(v^2) T_u``."""
    W = w.system
    eng = engine(W)
    col = eng.column(w.idx)
    lw = w.length
    return HeckeVector(W, {u: eng.poly_id(u, w.idx).to_laurent().shift(-lw) for u in col})


def _shortlex(W: CoxeterSystem, i: int):
    return (W.length_of(i), W.word_of(i))


def c_expand(h: HeckeVector) -> dict[GroupElement, LaurentPoly]:
    """Coordinates of ``h`` in the C-basis.

    Greedy elimination: the longest support element ``z`` (ShortLex-greatest
    among ties) can only come from ``C_z``, whose ``T_z``-coordinate is
    ``v^{-l(z)}``.
    """
    W = h.system
    rest = dict(h._c)
    out: dict[int, LaurentPoly] = {}
    while rest:
        z = max(rest, key=lambda i: _shortlex(W, i))
        c = rest[z].shift(W.length_of(z))
        cz = c_basis(W.element(z))
        for k, p in cz._c.items():
            _add_into(rest, k, -(p * c))
        if z in rest:
            raise HeckeInvariantError(f"C-basis elimination did not remove {W.element(z)}")
        out[z] = c
    return {W.element(k): p for k, p in out.items()}


def h_constants(w: GroupElement, u: GroupElement) -> dict[GroupElement, LaurentPoly]:
    """``z -> h_{w,u,z}`` computed in the T-basis."""
    if w.system is not u.system:
        raise ValueError("elements from different systems")
    return c_expand(t_multiply(c_basis(w), c_basis(u)))


class CProducts:
    """Products ``C_x C_y`` computed in the C-basis from ``mu`` alone.

    Uses ``C_s C_y = (v + v^-1) C_y`` when ``sy < y`` and
    ``C_s C_y = C_{sy} + sum_{z < y, sz < z} mu(z, y) C_z`` otherwise, then
    ``C_x = C_s C_{sx} - sum_{z < sx, sz < z} mu(z, sx) C_z`` for ``s`` in
    ``L(x)``.
    """

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self.kl = engine(system)
        self._gen: dict[tuple[int, int], tuple[tuple[int, LaurentPoly], ...]] = {}
        self._prod: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
        self._lock = threading.RLock()

    def left_generator(self, g: int, y: int) -> tuple[tuple[int, LaurentPoly], ...]:
        key = (g, y)
        got = self._gen.get(key)
        if got is not None:
            return got
        W = self.system
        if g in W.ldes(y):
            res = ((y, _V_PLUS_VINV),)
        else:
            res = [(W.lmul_id(g, y), ONE)]
            for z, m in self.kl.mu_ids(y):
                if g in W.ldes(z):
                    res.append((z, LaurentPoly.constant(m)))
            res = tuple(res)
        self._gen[key] = res
        return res

    def apply_generator(self, g: int, vec: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        for y, p in vec.items():
            for z, c in self.left_generator(g, y):
                _add_into(out, z, p * c)
        return out

    def product_ids(self, x: int, y: int) -> dict[int, LaurentPoly]:
        key = (x, y)
        got = self._prod.get(key)
        if got is not None:
            return got
        W = self.system
        with self._lock:
            if x == W.identity_id:
                res = {y: ONE}
            else:
                g = min(W.ldes(x))
                sx = W.lmul_id(g, x)
                res = self.apply_generator(g, self.product_ids(sx, y))
                for z, m in self.kl.mu_ids(sx):
                    if g in W.ldes(z):
                        for k, p in self.product_ids(z, y).items():
                            _add_into(res, k, -(p * m))
            self._prod[key] = res
        return res

    def product(self, x: GroupElement, y: GroupElement) -> dict[GroupElement, LaurentPoly]:
        W = self.system
        return {W.element(k): p for k, p in self.product_ids(x.idx, y.idx).items()}


_CPRODUCTS: dict[int, CProducts] = {}


def c_products(system: Optional[CoxeterSystem] = None) -> CProducts:
    system = system or b2()
    got = _CPRODUCTS.get(id(system))
    if got is None:
        got = _CPRODUCTS.setdefault(id(system), CProducts(system))
    return got


def gamma_delta(w: GroupElement, u: GroupElement, z: GroupElement, a_of_z: int) -> tuple[int, int]:
    """Coefficients of ``v^a`` and ``v^(a-1)`` in ``h_{w,u,z}`` with ``a = a(z)``."""
    h = c_products(w.system).product_ids(w.idx, u.idx).get(z.idx, ZERO)
    if h and h.degree() > a_of_z:
        raise HeckeInvariantError(f"deg h_{{{w},{u},{z}}} = {h.degree()} exceeds a = {a_of_z}")
    return h.coeff(a_of_z), h.coeff(a_of_z - 1)


def delta_e(z: GroupElement) -> int:
    """``deg P_{e,z}``."""
    return engine(z.system).poly_id(z.system.identity_id, z.idx).degree()


@dataclass(frozen=True)
class DClass:
    element: GroupElement
    length: int
    a: int
    delta: int
    i: int

    @property
    def distinguished(self) -> bool:
        return self.i == 0 and self.element.is_involution()


def d_class(z: GroupElement, a_of_z: Optional[int] = None) -> DClass:
    if a_of_z is None:
        from .cells import pattern_a

        a_of_z = pattern_a(z)
    d = delta_e(z)
    i = z.length - a_of_z - 2 * d
    if i < 0:
        raise HeckeInvariantError(f"l - a - 2 delta = {i} < 0 for {z}")
    return DClass(z, z.length, a_of_z, d, i)


def is_distinguished(z: GroupElement, a_of_z: Optional[int] = None) -> bool:
    return d_class(z, a_of_z).distinguished


_A_TABLES: dict[tuple[int, int], dict[int, int]] = {}


def a_degree_table(system: CoxeterSystem, radius: int) -> dict[int, int]:
    """``z -> max_{x,y in ball} deg_v h_{x,y,z}`` over the radius ball."""
    key = (id(system), radius)
    got = _A_TABLES.get(key)
    if got is not None:
        return got
    cp = c_products(system)
    ball = system.ball_ids(radius)
    best: dict[int, int] = {}
    for x in ball:
        for y in ball:
            for z, p in cp.product_ids(x, y).items():
                d = p.degree()
                if d > best.get(z, -1):
                    best[z] = d
    _A_TABLES[key] = best
    return best


def a_value_bounded(z: GroupElement, radius: int) -> int:
    """Lower bound for ``a(z)`` from all products of two elements of length <= radius."""
    if z.length > radius:
        raise ValueError(f"l({z}) = {z.length} exceeds the radius {radius}")
    return max(0, a_degree_table(z.system, radius).get(z.idx, 0))
