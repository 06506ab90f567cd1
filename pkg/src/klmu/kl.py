"""Memoized Kazhdan-Lusztig polynomials and their leading coefficients.

The engine computes whole columns ``u -> P_{u,w}`` over the Bruhat interval
``[e, w]`` using the standard recursion through a left descent ``s`` of ``w``::

    P_{u,w} = P_{su,sw} + q P_{u,sw}
              - sum_{z < sw, sz < z} mu(z, sw) q^{(l(w) - l(z))/2} P_{u,z}   (su < u)
    P_{u,w} = P_{su,w}                                                   (su > u)

Inside a column each polynomial is packed into one Python int by evaluating
at ``q = 2**64``.  Evaluation is a ring homomorphism, so the recursion is exact
in the packed form; coefficients are recovered with a signed digit decode,
which is also where nonnegativity and the degree bound are asserted.
"""

from __future__ import annotations

import os
from typing import Callable, Iterable, Optional

from .coxeter import CoxeterSystem, GroupElement, b2
from .laurent import KLPoly

__all__ = [
    "KLCache",
    "CacheFormatError",
    "engine",
    "kl_polynomial",
    "mu",
    "mu_tilde",
    "mu_list",
]

_SHIFT = 64
_BASE = 1 << _SHIFT
_MASK = _BASE - 1
_HALF = _BASE >> 1

CACHE_VERSION = 1


class CacheFormatError(ValueError):
    pass


def _unpack(p: int) -> list[int]:
    out = []
    while p:
        d = p & _MASK
        if d >= _HALF:
            d -= _BASE
        out.append(d)
        p = (p - d) >> _SHIFT
    return out


def _pack(coeffs: Iterable[int]) -> int:
    p = 0
    for k, c in enumerate(coeffs):
        p += c << (_SHIFT * k)
    return p


def _least(descents) -> int:
    return min(descents)


def _greatest(descents) -> int:
    return max(descents)


class KLCache:
    """Column-wise memo of ``P_{u,w}`` for one Coxeter system.

    ``descent_policy`` picks the left descent used by the recursion; the
    result does not depend on it, which the test-suite checks by running a
    second cache with ``max``.
    """

    def __init__(self, system: CoxeterSystem, descent_policy: Callable = _least):
        self.system = system
        self.descent_policy = descent_policy
        self._columns: dict[int, dict[int, int]] = {}
        self._mu: dict[int, tuple[tuple[int, int], ...]] = {}
        self.hits = 0
        self.misses = 0

    @property
    def entries(self) -> int:
        return sum(len(c) for c in self._columns.values())

    def stats(self) -> dict[str, int]:
        return {"columns": len(self._columns), "entries": self.entries, "hits": self.hits, "misses": self.misses}

    # -- core recursion -----------------------------------------------------

    def column(self, w: int) -> dict[int, int]:
        col = self._columns.get(w)
        if col is not None:
            self.hits += 1
            return col
        self.misses += 1
        W = self.system
        if w == W.identity_id:
            col = {w: 1}
        else:
            s = self.descent_policy(W.ldes(w))
            v = W.lmul_id(s, w)
            cv = self.column(v)
            lw = W.length_of(w)
            terms = []
            for z, m in self.mu_ids(v):
                if s in W.ldes(z):
                    terms.append((m, self.column(z), _SHIFT * ((lw - W.length_of(z)) // 2)))
            lower = W.lower_ideal(w)
            col = {}
            flipped = []
            for u in lower:
                if s not in W.ldes(u):
                    flipped.append(u)
                    continue
                p = cv.get(W.lmul_id(s, u), 0) + (cv.get(u, 0) << _SHIFT)
                for m, cz, sh in terms:
                    pz = cz.get(u)
                    if pz:
                        p -= (m * pz) << sh
                col[u] = p
            for u in flipped:
                col[u] = col[W.lmul_id(s, u)]
            self._validate_column(w, col)
        col = self._columns.setdefault(w, col)
        self._mu.setdefault(w, self._extract_mu(w, col))
        return col

    def _extract_mu(self, w: int, col: dict[int, int]) -> tuple[tuple[int, int], ...]:
        W = self.system
        lw = W.length_of(w)
        out = []
        for u, p in col.items():
            d = lw - W.length_of(u)
            if d % 2:
                m = (p >> (_SHIFT * ((d - 1) // 2))) & _MASK
                if m:
                    out.append((u, m))
        out.sort(key=lambda t: (W.length_of(t[0]), W.word_of(t[0])))
        return tuple(out)

    def _validate_column(self, w: int, col: dict[int, int]) -> None:
        W = self.system
        lw = W.length_of(w)
        for u, p in col.items():
            c = _unpack(p)
            if u == w:
                ok = c == [1]
            else:
                bound = (lw - W.length_of(u) - 1) // 2
                ok = bool(c) and c[0] == 1 and len(c) - 1 <= bound and all(x >= 0 for x in c)
            if not ok:
                raise AssertionError(
                    f"KL invariant violated for P_{{{W.render(W.word_of(u))},{W.render(W.word_of(w))}}} = {c}"
                )

    def mu_ids(self, w: int) -> tuple[tuple[int, int], ...]:
        """Pairs ``(z, mu(z, w))`` with ``z < w`` and nonzero mu."""
        got = self._mu.get(w)
        if got is None:
            self.column(w)
            got = self._mu[w]
        return got

    # -- id-level queries -------------------------------------------------

    def poly_id(self, u: int, w: int) -> KLPoly:
        p = self.column(w).get(u)
        return KLPoly(_unpack(p)) if p else KLPoly()

    def mu_id(self, u: int, w: int) -> int:
        W = self.system
        d = W.length_of(w) - W.length_of(u)
        if d <= 0 or d % 2 == 0:
            return 0
        p = self.column(w).get(u)
        if not p:
            return 0
        return (p >> (_SHIFT * ((d - 1) // 2))) & _MASK

    def mu_tilde_id(self, u: int, w: int) -> int:
        W = self.system
        if W.bruhat_leq_id(u, w):
            return self.mu_id(u, w)
        if W.bruhat_leq_id(w, u):
            return self.mu_id(w, u)
        return 0

    # -- element-level API --------------------------------------------------

    def _check(self, *elems: GroupElement) -> None:
        for x in elems:
            if x.system is not self.system:
                raise ValueError(f"element {x} is not in {self.system.name}")

    def kl_polynomial(self, u: GroupElement, w: GroupElement) -> KLPoly:
        self._check(u, w)
        return self.poly_id(u.idx, w.idx)

    def mu(self, u: GroupElement, w: GroupElement) -> int:
        self._check(u, w)
        return self.mu_id(u.idx, w.idx)

    def mu_tilde(self, u: GroupElement, w: GroupElement) -> int:
        self._check(u, w)
        return self.mu_tilde_id(u.idx, w.idx)

    def mu_list(self, w: GroupElement) -> list[tuple[GroupElement, int]]:
        self._check(w)
        return [(self.system.element(z), m) for z, m in self.mu_ids(w.idx)]

    def warm(self, radius: int) -> None:
        for w in self.system.ball_ids(radius):
            self.column(w)

    # -- persistence ------------------------------------------------------

    def save(self, path: str | os.PathLike) -> None:
        W = self.system
        key = lambda i: (W.length_of(i), W.word_of(i))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"# klmu-cache\tversion={CACHE_VERSION}\tsystem={W.name}\n")
            for w in sorted(self._columns, key=key):
                col = self._columns[w]
                ws = W.render(W.word_of(w))
                for u in sorted(col, key=key):
                    coeffs = ",".join(str(c) for c in _unpack(col[u]))
                    fh.write(f"{W.render(W.word_of(u))}\t{ws}\t{coeffs}\n")

    def load(self, path: str | os.PathLike) -> int:
        """Merge a cache file; returns the number of columns loaded."""
        W = self.system
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if len(header) != 3 or header[0] != "# klmu-cache":
                raise CacheFormatError(f"{path}: missing klmu-cache header")
            fields = dict(f.split("=", 1) for f in header[1:])
            if fields.get("version") != str(CACHE_VERSION):
                raise CacheFormatError(f"{path}: unsupported cache version {fields.get('version')}")
            if fields.get("system") != W.name:
                raise CacheFormatError(f"{path}: cache is for {fields.get('system')}, not {W.name}")
            staged: dict[int, dict[int, int]] = {}
            for lineno, line in enumerate(fh, start=2):
                line = line.rstrip("\n")
                if not line:
                    continue
                parts = line.split("\t")
                if len(parts) != 3:
                    raise CacheFormatError(f"{path}:{lineno}: expected 3 tab-separated fields")
                try:
                    u = W(parts[0]).idx
                    w = W(parts[1]).idx
                    coeffs = [int(c) for c in parts[2].split(",")]
                except ValueError as exc:
                    raise CacheFormatError(f"{path}:{lineno}: {exc}") from None
                staged.setdefault(w, {})[u] = _pack(coeffs)
        for w, col in staged.items():
            if set(col) != W.lower_ideal(w):
                raise CacheFormatError(
                    f"{path}: column of {W.render(W.word_of(w))} does not cover its Bruhat interval"
                )
            try:
                self._validate_column(w, col)
            except AssertionError as exc:
                raise CacheFormatError(f"{path}: {exc}") from None
        for w, col in staged.items():
            self._columns.setdefault(w, col)
            self._mu.setdefault(w, self._extract_mu(w, self._columns[w]))
        return len(staged)


_ENGINES: dict[int, KLCache] = {}


def engine(system: Optional[CoxeterSystem] = None) -> KLCache:
    """The shared cache for ``system`` (B~2 by default)."""
    system = system or b2()
    eng = _ENGINES.get(id(system))
    if eng is None:
        eng = _ENGINES.setdefault(id(system), KLCache(system))
    return eng


def kl_polynomial(u: GroupElement, w: GroupElement) -> KLPoly:
    return engine(u.system).kl_polynomial(u, w)


def mu(u: GroupElement, w: GroupElement) -> int:
    return engine(u.system).mu(u, w)


def mu_tilde(u: GroupElement, w: GroupElement) -> int:
    return engine(u.system).mu_tilde(u, w)


def mu_list(w: GroupElement) -> list[tuple[GroupElement, int]]:
    return engine(w.system).mu_list(w)

