"""The coefficients ``b_{lambda,lambda''}`` by two independent routes.

:func:`b_column_semilinear` solves the semilinear system downward from
``lambda''`` using only ``a``-coefficients and stabilizer data, and
:func:`b_direct` sums signed KL polynomials over the double coset of
``lambda``.  The ``v^-1`` coefficient of ``b_{lambda,lambda''}`` is
``mu(m_lambda, m_lambda'')``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .kl import engine
from .laurent import ONE, ZERO, LaurentPoly
from .weights import (
    RHO,
    Weight,
    a_coefficient,
    coset_extremes,
    dominance_leq,
    dominant_below,
    double_coset,
    epsilon,
    phi,
    pi_closed,
    stabilizer_data,
    w0_act,
    w0_elements,
)

__all__ = [
    "BColumn",
    "SemilinearError",
    "b_column_semilinear",
    "b_direct",
    "b_value",
    "mu_coset_minima",
    "conjectural_b",
]


class SemilinearError(ArithmeticError):
    """The downward solve hit an inconsistency (bad a-coefficient or ordering)."""


@dataclass
class BColumn:
    target: Weight
    values: dict[Weight, LaurentPoly] = field(default_factory=dict)
    method: str = "semilinear"

    def __getitem__(self, lam: Weight) -> LaurentPoly:
        return self.values.get(lam, ZERO)

    def rows(self) -> list[tuple[Weight, LaurentPoly]]:
        return [(lam, self.values[lam]) for lam in dominant_below(self.target)]


_columns: dict[tuple[Weight, str], BColumn] = {}
_lock = threading.Lock()


def _pi(lam: Weight) -> LaurentPoly:
    pi = pi_closed(lam)
    if pi != stabilizer_data(lam).pi:
        raise SemilinearError(f"pi mismatch at {lam}")
    return pi


def b_column_semilinear(target: Weight, a_method: str = "closed") -> BColumn:
    """All ``b_{lambda,target}`` for ``lambda <= target``."""
    key = (target, a_method)
    with _lock:
        got = _columns.get(key)
    if got is not None:
        return got
    order = dominant_below(target)
    b: dict[Weight, LaurentPoly] = {target: ONE}
    weight_pi = {lam: _pi(lam) * epsilon(lam) for lam in order}
    for lam in order:
        if lam == target:
            continue
        rhs = ZERO
        for lam2, b2 in b.items():
            a = a_coefficient(lam, lam2, a_method)
            if a:
                rhs = rhs + weight_pi[lam2] * (a.bar() * b2 - a * b2.bar())
        # rhs = eps pi (bbar - b) at lam
        try:
            d = rhs.divexact(weight_pi[lam])
        except ArithmeticError as exc:
            raise SemilinearError(f"inexact division at {lam}: {exc}") from None
        if d.bar() != -d or d.coeff(0):
            raise SemilinearError(f"bbar - b = {d} at {lam} is not antisymmetric")
        val = -d.negative_part()
        if val.bar() - val != d:
            raise SemilinearError(f"bbar - b = {d} at {lam} has no solution in v^-1 Z[v^-1]")
        b[lam] = val
    col = BColumn(target, {lam: b[lam] for lam in order}, "semilinear")
    with _lock:
        _columns.setdefault(key, col)
    return col


def b_direct(lam: Weight, target: Weight) -> LaurentPoly:
    """``sum_z (-v)^{l(m_lam) - l(z)} p_{z, m_target}`` over ``z`` in the double coset of ``lam``."""
    m_lam = coset_extremes(lam)[0]
    m_tgt = coset_extremes(target)[0]
    eng = engine(m_tgt.system)
    lt = m_tgt.length
    total = ZERO
    for z in double_coset(lam):
        p = eng.kl_polynomial(z, m_tgt)
        if p.is_zero():
            continue
        k = m_lam.length - z.length
        total = total + p.to_laurent().shift(k + z.length - lt) * (-1) ** (k % 2)
    return total


def b_value(lam: Weight, target: Weight, method: str = "semilinear") -> LaurentPoly:
    if method == "direct":
        return b_direct(lam, target)
    if method != "semilinear":
        raise ValueError(f"unknown method {method!r}")
    if not dominance_leq(lam, target):
        return ZERO
    return b_column_semilinear(target)[lam]


def mu_coset_minima(lam: Weight, target: Weight, method: str = "semilinear") -> int:
    """``mu(m_lam, m_target)`` read off as the ``v^-1`` coefficient of ``b``."""
    return b_value(lam, target, method).residue_v0()


def conjectural_b(lam: Weight, target: Weight) -> LaurentPoly:
    """The conjectural closed formula for ``b`` summed over all of ``W0``.

    Meant for ``target`` strictly inside the dominant chamber; it is kept
    only to exhibit where it fails.
    """
    m_lam = coset_extremes(lam)[0]
    m_tgt = coset_extremes(target)[0]
    total = ZERO
    for w in w0_elements():
        total = total + phi(w0_act(w, target - RHO) - (lam - RHO)) * (-1) ** w.length
    sign = (-1) ** ((m_lam.length - m_tgt.length) % 2)
    return total.divexact(stabilizer_data(lam).pi) * sign
