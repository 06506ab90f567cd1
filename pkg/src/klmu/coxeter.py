"""Affine Coxeter groups of types B~2 and A~2 with exact integer matrices.

Every group element is interned in its :class:`CoxeterSystem` under an integer
id and carries its ShortLex-least reduced word together with its matrix on the
affine root space (finite simple roots plus ``delta``).  Descents come from the
root sign test: ``g`` is a right descent of ``w`` iff ``w`` sends the simple
root of ``g`` to a negative affine root.

>>> W = b2()
>>> W("tr")
rt
>>> W("rtstr").length
5
>>> sorted(left_descents(W("rtstr")))
['r', 't']
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "CoxeterSystem",
    "GroupElement",
    "StringTriple",
    "b2",
    "a2",
    "from_word",
    "length",
    "multiply",
    "inverse",
    "left_descents",
    "right_descents",
    "bruhat_leq",
    "reduced_expression_count",
    "left_string",
    "right_string",
]

Matrix = tuple[tuple[int, ...], ...]


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _matvec(a: Matrix, x: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[k] * x[k] for k in range(len(x))) for row in a)


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _is_negative_root(x: Sequence[int]) -> bool:
    # last coordinate is the delta level
    level = x[-1]
    if level:
        return level < 0
    return all(c <= 0 for c in x[:-1]) and any(x[:-1])


class CoxeterSystem:
    """A crystallographic affine Coxeter system realised by reflections.

    ``roots[g]`` and ``coroots[g]`` give the simple root of generator ``g`` and
    the coroot pairing as integer vectors in the root-space basis; the
    reflection matrix is ``I - root (x) coroot``.  Generator order fixes the
    ShortLex order on words.
    """

    def __init__(self, name: str, labels: Sequence[str], roots, coroots, coxeter_matrix):
        if any(len(lab) != 1 for lab in labels):
            raise ValueError("generator labels must be single characters")
        self.name = name
        self.labels = tuple(labels)
        self.rank = len(labels)
        self.coxeter_matrix = tuple(tuple(row) for row in coxeter_matrix)
        self.roots = tuple(tuple(r) for r in roots)
        self.coroots = tuple(tuple(c) for c in coroots)
        dim = len(self.roots[0])
        self.dim = dim
        self.gen_matrices: tuple[Matrix, ...] = tuple(
            tuple(
                tuple(int(i == j) - self.roots[g][i] * self.coroots[g][j] for j in range(dim))
                for i in range(dim)
            )
            for g in range(self.rank)
        )
        self._label_index = {lab: g for g, lab in enumerate(self.labels)}

        self._lock = threading.RLock()
        self._words: list[tuple[int, ...]] = []
        self._mats: list[Matrix] = []
        self._invs: list[Matrix] = []
        self._ldes: list[frozenset[int]] = []
        self._rdes: list[frozenset[int]] = []
        self._by_word: dict[tuple[int, ...], int] = {}
        self._by_matrix: dict[Matrix, int] = {}
        self._rmul: list[dict[int, int]] = [dict() for _ in range(self.rank)]
        self._lmul: list[dict[int, int]] = [dict() for _ in range(self.rank)]
        self._inverse: dict[int, int] = {}
        self._lower: dict[int, frozenset[int]] = {}
        self._bruhat_memo: dict[tuple[int, int], bool] = {}
        self._rex_count: dict[int, int] = {}
        self._ball_cache: dict[int, list[int]] = {}
        self._elements: list[GroupElement] = []

        ident = _identity(dim)
        self.identity_id = self._register((), ident, ident)

    # -- registry -----------------------------------------------------------

    def _register(self, word: tuple[int, ...], mat: Matrix, inv: Matrix) -> int:
        with self._lock:
            found = self._by_matrix.get(mat)
            if found is not None:
                return found
            idx = len(self._words)
            self._words.append(word)
            self._mats.append(mat)
            self._invs.append(inv)
            self._rdes.append(
                frozenset(g for g in range(self.rank) if _is_negative_root(_matvec(mat, self.roots[g])))
            )
            self._ldes.append(
                frozenset(g for g in range(self.rank) if _is_negative_root(_matvec(inv, self.roots[g])))
            )
            self._by_word[word] = idx
            self._by_matrix[mat] = idx
            self._elements.append(GroupElement(self, idx))
            return idx

    def _canonical_word(self, mat: Matrix, inv: Matrix) -> tuple[int, ...]:
        # greedy extraction of the least left descent gives the ShortLex-least reduced word
        word = []
        while True:
            for g in range(self.rank):
                if _is_negative_root(_matvec(inv, self.roots[g])):
                    break
            else:
                return tuple(word)
            word.append(g)
            mat = _matmul(self.gen_matrices[g], mat)
            inv = _matmul(inv, self.gen_matrices[g])

    def _intern_matrix(self, mat: Matrix, inv: Matrix) -> int:
        found = self._by_matrix.get(mat)
        if found is not None:
            return found
        return self._register(self._canonical_word(mat, inv), mat, inv)

    def rmul_id(self, i: int, g: int) -> int:
        """Id of ``w g`` where ``w`` has id ``i``."""
        table = self._rmul[g]
        j = table.get(i)
        if j is None:
            gm = self.gen_matrices[g]
            j = self._intern_matrix(_matmul(self._mats[i], gm), _matmul(gm, self._invs[i]))
            table[i] = j
            self._lmul[g][self.inverse_id(j)] = self.inverse_id(i)
        return j

    def lmul_id(self, g: int, i: int) -> int:
        """Id of ``g w`` where ``w`` has id ``i``."""
        table = self._lmul[g]
        j = table.get(i)
        if j is None:
            gm = self.gen_matrices[g]
            j = self._intern_matrix(_matmul(gm, self._mats[i]), _matmul(self._invs[i], gm))
            table[i] = j
        return j

    def inverse_id(self, i: int) -> int:
        j = self._inverse.get(i)
        if j is None:
            j = self._intern_matrix(self._invs[i], self._mats[i])
            self._inverse[i] = j
            self._inverse[j] = i
        return j

    def mul_id(self, i: int, j: int) -> int:
        for g in self._words[j]:
            i = self.rmul_id(i, g)
        return i

    def length_of(self, i: int) -> int:
        return len(self._words[i])

    def word_of(self, i: int) -> tuple[int, ...]:
        return self._words[i]

    def ldes(self, i: int) -> frozenset[int]:
        return self._ldes[i]

    def rdes(self, i: int) -> frozenset[int]:
        return self._rdes[i]

    def element(self, i: int) -> GroupElement:
        return self._elements[i]

    def id_of_word(self, letters: Sequence[int]) -> int:
        i = self.identity_id
        for g in letters:
            i = self.rmul_id(i, g)
        return i

    # -- user-facing construction -------------------------------------------

    def parse_word(self, text: str) -> tuple[int, ...]:
        s = "".join(text.split())
        if s in ("", "e"):
            return ()
        try:
            return tuple(self._label_index[ch] for ch in s)
        except KeyError as exc:
            raise ValueError(
                f"unknown generator {exc.args[0]!r} for {self.name} (generators: {''.join(self.labels)})"
            ) from None

    def __call__(self, word: str | Sequence[int] = "") -> GroupElement:
        letters = self.parse_word(word) if isinstance(word, str) else tuple(word)
        for g in letters:
            if not 0 <= g < self.rank:
                raise ValueError(f"generator index {g} out of range for {self.name}")
        return self._elements[self.id_of_word(letters)]

    @property
    def identity(self) -> GroupElement:
        return self._elements[self.identity_id]

    @property
    def generators(self) -> tuple[GroupElement, ...]:
        return tuple(self((g,)) for g in range(self.rank))

    def gen_index(self, label: str | int) -> int:
        if isinstance(label, int):
            return label
        try:
            return self._label_index[label]
        except KeyError:
            raise ValueError(f"unknown generator {label!r} for {self.name}") from None

    def render(self, letters: Iterable[int]) -> str:
        s = "".join(self.labels[g] for g in letters)
        return s or "e"

    # -- enumeration ------------------------------------------------------

    def ball_ids(self, radius: int) -> list[int]:
        """Ids of all elements of length <= radius, in ShortLex order."""
        cached = self._ball_cache.get(radius)
        if cached is not None:
            return cached
        layer = [self.identity_id]
        seen = {self.identity_id}
        out = [self.identity_id]
        for _ in range(radius):
            nxt = []
            for i in layer:
                for g in range(self.rank):
                    if g not in self._rdes[i]:
                        j = self.rmul_id(i, g)
                        if j not in seen:
                            seen.add(j)
                            nxt.append(j)
            out.extend(nxt)
            layer = nxt
        out.sort(key=lambda i: (len(self._words[i]), self._words[i]))
        self._ball_cache[radius] = out
        return out

    def ball(self, radius: int) -> list[GroupElement]:
        return [self._elements[i] for i in self.ball_ids(radius)]

    # -- Bruhat order -----------------------------------------------------

    def lower_ideal(self, i: int) -> frozenset[int]:
        """Ids of the Bruhat interval ``[e, w]``."""
        got = self._lower.get(i)
        if got is not None:
            return got
        chain = []
        j = i
        while j not in self._lower and j != self.identity_id:
            g = min(self._ldes[j])
            chain.append((j, g))
            j = self.lmul_id(g, j)
        if j == self.identity_id and j not in self._lower:
            self._lower[j] = frozenset((j,))
        below = self._lower[j]
        for j, g in reversed(chain):
            below = below | frozenset(self.lmul_id(g, x) for x in below)
            self._lower[j] = below
        return below

    def bruhat_leq_id(self, u: int, w: int) -> bool:
        memo = self._bruhat_memo
        path = []
        result = None
        while True:
            if u == w or u == self.identity_id:
                result = True
                break
            if len(self._words[u]) >= len(self._words[w]):
                result = False
                break
            key = (u, w)
            if key in memo:
                result = memo[key]
                break
            path.append(key)
            g = min(self._ldes[w])
            if g in self._ldes[u]:
                u = self.lmul_id(g, u)
            w = self.lmul_id(g, w)
        for key in path:
            memo[key] = result
        return result

    def rex_count_id(self, i: int) -> int:
        memo = self._rex_count
        if i in memo:
            return memo[i]
        if i == self.identity_id:
            memo[i] = 1
            return 1
        total = sum(self.rex_count_id(self.lmul_id(g, i)) for g in self._ldes[i])
        memo[i] = total
        return total

    # -- sanity -----------------------------------------------------------

    def check_relations(self) -> None:
        """Assert the generator matrices satisfy the Coxeter relations exactly."""
        ident = _identity(self.dim)
        delta = tuple(int(k == self.dim - 1) for k in range(self.dim))
        for a in range(self.rank):
            assert _matvec(self.gen_matrices[a], delta) == delta, "delta not fixed"
            for b in range(self.rank):
                m = self.coxeter_matrix[a][b]
                prod = _matmul(self.gen_matrices[a], self.gen_matrices[b])
                power = ident
                for k in range(1, m + 1):
                    power = _matmul(power, prod)
                    if k < m:
                        assert power != ident, f"({self.labels[a]}{self.labels[b]})^{k} = e"
                assert power == ident, f"({self.labels[a]}{self.labels[b]})^{m} != e"

    def __repr__(self):
        return f"CoxeterSystem({self.name})"


class GroupElement:
    """An interned element of a :class:`CoxeterSystem`."""

    __slots__ = ("system", "idx")

    def __init__(self, system: CoxeterSystem, idx: int):
        self.system = system
        self.idx = idx

    @property
    def word(self) -> tuple[int, ...]:
        return self.system._words[self.idx]

    @property
    def length(self) -> int:
        return len(self.system._words[self.idx])

    @property
    def matrix(self) -> Matrix:
        return self.system._mats[self.idx]

    def inverse(self) -> GroupElement:
        return self.system._elements[self.system.inverse_id(self.idx)]

    def is_identity(self) -> bool:
        return self.idx == self.system.identity_id

    def is_involution(self) -> bool:
        return self.system.inverse_id(self.idx) == self.idx

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def sort_key(self):
        return (self.length, self.word)

    def __eq__(self, other):
        return (
            isinstance(other, GroupElement) and other.system is self.system and other.idx == self.idx
        )

    def __hash__(self):
        return hash((id(self.system), self.idx))

    def __str__(self):
        return self.system.render(self.word)

    __repr__ = __str__


@dataclass(frozen=True)
class StringTriple:
    """A left or right string for an order-4 generator pair, and the position of the query in it."""

    elements: tuple[GroupElement, GroupElement, GroupElement]
    index: int
    side: str
    pair: tuple[str, str]

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)


# -- built-in systems ---------------------------------------------------------

_B2: Optional[CoxeterSystem] = None
_A2: Optional[CoxeterSystem] = None


def b2() -> CoxeterSystem:
    """B~2 with generators r < s < t on the basis (alpha, beta, delta).

    ``s``, ``t`` are the finite reflections for the long root alpha and the
    short root beta; ``r`` reflects in ``delta - (alpha + beta)``, which is
    what makes ``rt = tr``.
    """
    global _B2
    if _B2 is None:
        _B2 = CoxeterSystem(
            "B2",
            "rst",
            roots=[(-1, -1, 1), (1, 0, 0), (0, 1, 0)],
            coroots=[(-2, 0, 0), (2, -1, 0), (-2, 2, 0)],
            coxeter_matrix=[[1, 4, 2], [4, 1, 4], [2, 4, 1]],
        )
    return _B2


def a2() -> CoxeterSystem:
    """A~2 with generators 0 < 1 < 2; ``0`` reflects in ``delta - (a1 + a2)``."""
    global _A2
    if _A2 is None:
        _A2 = CoxeterSystem(
            "A2",
            "012",
            roots=[(-1, -1, 1), (1, 0, 0), (0, 1, 0)],
            coroots=[(-1, -1, 0), (2, -1, 0), (-1, 2, 0)],
            coxeter_matrix=[[1, 3, 3], [3, 1, 3], [3, 3, 1]],
        )
    return _A2


# -- operations ---------------------------------------------------------------


def from_word(system: CoxeterSystem, letters: str | Sequence[int]) -> GroupElement:
    return system(letters)


def length(w: GroupElement) -> int:
    return w.length


def _same_system(a: GroupElement, b: GroupElement) -> CoxeterSystem:
    if a.system is not b.system:
        raise ValueError(f"elements of different systems: {a.system.name} and {b.system.name}")
    return a.system


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    W = _same_system(a, b)
    return W.element(W.mul_id(a.idx, b.idx))


def inverse(a: GroupElement) -> GroupElement:
    return a.inverse()


def left_descents(w: GroupElement) -> frozenset[str]:
    return frozenset(w.system.labels[g] for g in w.system.ldes(w.idx))


def right_descents(w: GroupElement) -> frozenset[str]:
    return frozenset(w.system.labels[g] for g in w.system.rdes(w.idx))


def bruhat_leq(u: GroupElement, w: GroupElement) -> bool:
    W = _same_system(u, w)
    return W.bruhat_leq_id(u.idx, w.idx)


def reduced_expression_count(w: GroupElement) -> int:
    return w.system.rex_count_id(w.idx)


def _check_pair(W: CoxeterSystem, pair) -> tuple[int, int]:
    a, b = sorted(W.gen_index(x) for x in pair)
    if a == b or W.coxeter_matrix[a][b] != 4:
        raise ValueError(f"pair {W.render((a, b))} does not generate an order-8 dihedral subgroup")
    return a, b


def left_string(w: GroupElement, pair) -> Optional[StringTriple]:
    """The left string through ``w`` for the parabolic generated by ``pair``, if any."""
    W = w.system
    a, b = _check_pair(W, pair)
    S = {a, b}
    u = w.idx
    stripped = []
    while True:
        hit = sorted(W.ldes(u) & S)
        if not hit:
            break
        stripped.append(hit[0])
        u = W.lmul_id(hit[0], u)
    k = len(stripped)
    if k in (0, 4):
        return None
    first = stripped[-1]
    other = b if first == a else a
    e1 = W.lmul_id(first, u)
    e2 = W.lmul_id(other, e1)
    e3 = W.lmul_id(first, e2)
    elems = tuple(W.element(x) for x in (e1, e2, e3))
    return StringTriple(elems, k, "left", (W.labels[a], W.labels[b]))


def right_string(w: GroupElement, pair) -> Optional[StringTriple]:
    """The right string through ``w`` for the parabolic generated by ``pair``, if any."""
    W = w.system
    a, b = _check_pair(W, pair)
    S = {a, b}
    u = w.idx
    stripped = []
    while True:
        hit = sorted(W.rdes(u) & S)
        if not hit:
            break
        stripped.append(hit[0])
        u = W.rmul_id(u, hit[0])
    k = len(stripped)
    if k in (0, 4):
        return None
    first = stripped[-1]
    other = b if first == a else a
    e1 = W.rmul_id(u, first)
    e2 = W.rmul_id(e1, other)
    e3 = W.rmul_id(e2, first)
    elems = tuple(W.element(x) for x in (e1, e2, e3))
    return StringTriple(elems, k, "right", (W.labels[a], W.labels[b]))
