"""Inclusion hyperspaces G(X) and superextensions lambda(X) over a finite semigroup.

An up-family is stored by its antichain of minimal members (bitmasks), which
is canonical. The product lifted from the semigroup ``S`` on ``X`` is

    F * G = { C : { x : x^{-1}C in G } in F },   x^{-1}C = { y : xy in C }.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .bitsets import braces, full_mask, is_subset, popcount
from .errors import AlgebraError, ResourceLimitError
from .semigroups import FiniteSemigroup, as_table

MAX_MLS_CARRIER = 5
MAX_HYPERSPACE_CARRIER = 4


def _minimal(sets: Iterable[int]) -> Tuple[int, ...]:
    sets = set(sets)
    return tuple(sorted(a for a in sets if not any(b != a and is_subset(b, a) for b in sets)))


@dataclass(frozen=True)
class UpFamily:
    n: int
    minimal: Tuple[int, ...]

    def __post_init__(self):
        if not self.minimal:
            raise AlgebraError("an up-family must be nonempty")
        if any(a <= 0 or a >> self.n for a in self.minimal):
            raise AlgebraError("members must be nonempty subsets of the carrier")

    def __contains__(self, A: int) -> bool:
        return any(m & A == m for m in self.minimal)

    def members(self) -> List[int]:
        return [A for A in range(1, full_mask(self.n) + 1) if A in self]

    def is_linked(self) -> bool:
        mins = self.minimal
        return all(a & b for a in mins for b in mins)

    def is_maximal_linked(self) -> bool:
        """Linked, and adding any non-member set breaks linkedness."""
        if not self.is_linked():
            return False
        mins = self.minimal
        for A in range(1, full_mask(self.n) + 1):
            if A not in self and all(A & m for m in mins):
                return False
        return True

    def __str__(self):
        return "<" + ",".join(braces(a) for a in self.minimal) + ">"


def up_closure(n: int, sets: Iterable[int]) -> UpFamily:
    return UpFamily(n, _minimal(sets))


def principal_ultrafilter(n: int, x: int) -> UpFamily:
    return UpFamily(n, (1 << x,))


def _antichains(n: int, linked: bool) -> Iterator[Tuple[int, ...]]:
    """Nonempty antichains of nonempty subsets of range(n), optionally pairwise intersecting."""
    universe = list(range(1, full_mask(n) + 1))
    chosen: List[int] = []

    def rec(i):
        if i == len(universe):
            if chosen:
                yield tuple(chosen)
            return
        A = universe[i]
        ok = all(not is_subset(A, B) and not is_subset(B, A) for B in chosen)
        if ok and linked:
            ok = all(A & B for B in chosen)
        if ok:
            chosen.append(A)
            yield from rec(i + 1)
            chosen.pop()
        yield from rec(i + 1)

    yield from rec(0)


def _family_key(F: UpFamily):
    return (len(F.minimal), tuple(popcount(a) for a in F.minimal), F.minimal)


def all_mls(n: int, max_n: int = MAX_MLS_CARRIER) -> List[UpFamily]:
    """Every maximal linked system on an n-point set, canonically ordered (principal ones first)."""
    if n < 1:
        raise AlgebraError("carrier must be nonempty")
    if n > max_n:
        raise ResourceLimitError(f"maximal linked systems enumerated only for n <= {max_n}", n, max_n)
    out = []
    for mins in _antichains(n, linked=True):
        F = UpFamily(n, tuple(sorted(mins)))
        if F.is_maximal_linked():
            out.append(F)
    return sorted(out, key=_family_key)


def all_inclusion_hyperspaces(n: int, max_n: int = MAX_HYPERSPACE_CARRIER) -> List[UpFamily]:
    """Every nonempty upward-closed family of nonempty subsets of an n-point set."""
    if n < 1:
        raise AlgebraError("carrier must be nonempty")
    if n > max_n:
        raise ResourceLimitError(f"inclusion hyperspaces enumerated only for n <= {max_n}", n, max_n)
    return sorted((UpFamily(n, tuple(sorted(m))) for m in _antichains(n, linked=False)), key=_family_key)


class _Preimages:
    """pre[x][C] = x^{-1}C = { y : xy in C } for every x and every C."""

    def __init__(self, S):
        t = as_table(S)
        n = len(t)
        self.n = n
        self.pre = []
        for x in range(n):
            row = t[x]
            arr = [0] * (1 << n)
            for C in range(1 << n):
                m = 0
                for y in range(n):
                    if C >> row[y] & 1:
                        m |= 1 << y
                arr[C] = m
            self.pre.append(arr)


def _product(pre: _Preimages, F: UpFamily, G: UpFamily) -> UpFamily:
    n = pre.n
    found = []
    for C in range(1, 1 << n):
        X = 0
        for x in range(n):
            D = pre.pre[x][C]
            if D and D in G:
                X |= 1 << x
        if X and X in F:
            found.append(C)
    return up_closure(n, found)


def family_product(S, F: UpFamily, G: UpFamily) -> UpFamily:
    if F.n != S.order or G.n != S.order:
        raise AlgebraError("up-families must live on the carrier of the semigroup")
    return _product(_Preimages(S), F, G)


@dataclass
class FunctorSemigroup:
    """A finite functor-semigroup: its table, its points, and where S sits inside it."""

    semigroup: FiniteSemigroup
    elements: List[UpFamily]
    unit_image: Tuple[int, ...]  # x -> index of the principal ultrafilter at x

    def index(self, F: UpFamily) -> int:
        return self.elements.index(F)


def _lifted(S, families: Sequence[UpFamily], name: str) -> FunctorSemigroup:
    pre = _Preimages(S)
    pos = {F: i for i, F in enumerate(families)}
    table = []
    for F in families:
        row = []
        for G in families:
            P = _product(pre, F, G)
            if P not in pos:
                raise RuntimeError(f"{F} * {G} = {P} left the family")
            row.append(pos[P])
        table.append(tuple(row))
    unit = tuple(pos[principal_ultrafilter(S.order, x)] for x in range(S.order))
    return FunctorSemigroup(FiniteSemigroup(tuple(table), name), list(families), unit)


def superextension_semigroup(S, max_n: int = MAX_MLS_CARRIER) -> FunctorSemigroup:
    """lambda(S) on all maximal linked systems."""
    return _lifted(S, all_mls(S.order, max_n), f"lambda({S})")


def inclusion_hyperspace_semigroup(S, max_n: int = MAX_HYPERSPACE_CARRIER) -> FunctorSemigroup:
    """G(S) on all inclusion hyperspaces."""
    return _lifted(S, all_inclusion_hyperspaces(S.order, max_n), f"G({S})")


def invariant_elements(S, group_image: Sequence[int]) -> List[int]:
    """All a with g*a = a = a*g for every g in ``group_image``."""
    image = set(group_image)
    for g in image:
        for h in image:
            if S.mul(g, h) not in image:
                raise AlgebraError(f"group image is not closed: {g}*{h} falls outside")
    return [a for a in range(S.order) if all(S.mul(g, a) == a and S.mul(a, g) == a for g in image)]


def invariant_mls_obstruction(G) -> Optional[Tuple[int, int]]:
    """A pair (A, g) with gA equal to the complement of A, or None.

    Every maximal linked system contains A or its complement, and a
    translation-invariant one would then contain both of the disjoint sets
    A and gA, so such a pair rules out invariant elements of lambda(G).
    """
    n = G.order
    full = full_mask(n)
    for A in range(1, full):
        for g in range(n):
            gA = 0
            for a in range(n):
                if A >> a & 1:
                    gA |= 1 << G.table[g][a]
            if gA == full & ~A:
                return A, g
    return None
