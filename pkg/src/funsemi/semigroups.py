"""Abstract finite semigroups and their structural predicates.

Any object with an ``order`` attribute and a ``mul(a, b)`` method is accepted
where a semigroup is expected; :class:`FiniteSemigroup` stores the full table
and :class:`VirtualSemigroup` computes products on demand.
"""

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .cayley import Table, format_table, parse_table
from .errors import AlgebraError, ParseError, ResourceLimitError
from .groups import FiniteGroup, associativity_witness

DEFAULT_MAX_EMBED_SOURCE = 16
MATERIALIZE_LIMIT = 256
RANDOM_ASSOC_TRIPLES = 100_000
ASSOC_SEED = 20240229


@dataclass(frozen=True)
class FiniteSemigroup:
    table: Table
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise AlgebraError("a semigroup needs at least one element")
        for a, row in enumerate(self.table):
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise AlgebraError(f"row {a} is not a valid table row")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def __str__(self):
        return self.name or f"semigroup of order {self.order}"

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: Optional[str] = None) -> "FiniteSemigroup":
        """Build and check associativity."""
        t = tuple(tuple(int(v) for v in row) for row in table)
        S = cls(t, name)
        w = associativity_witness(t)
        if w is not None:
            raise AlgebraError(f"not associative at {w}")
        return S


class VirtualSemigroup:
    """A semigroup whose products are computed on demand and memoized."""

    def __init__(self, order: int, product: Callable[[int, int], int], name: Optional[str] = None):
        self.order = order
        self._product = product
        self._memo: Dict[Tuple[int, int], int] = {}
        self.name = name

    def mul(self, a: int, b: int) -> int:
        key = (a, b)
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = self._product(a, b)
        return v

    def __str__(self):
        return self.name or f"virtual semigroup of order {self.order}"

    def materialize(self, max_order: int = MATERIALIZE_LIMIT) -> FiniteSemigroup:
        if self.order > max_order:
            raise ResourceLimitError(
                f"refusing to materialize {self.order}-element table (bound {max_order})", self.order, max_order)
        n = self.order
        return FiniteSemigroup(tuple(tuple(self._product(a, b) for b in range(n)) for a in range(n)), self.name)

    def associativity_witness(self, seed: int = ASSOC_SEED, samples: int = RANDOM_ASSOC_TRIPLES):
        """Exhaustive up to 256 elements, otherwise ``samples`` random triples."""
        n = self.order
        if n <= MATERIALIZE_LIMIT:
            return associativity_witness(self.materialize().table)
        rng = random.Random(seed)
        m = self.mul
        for _ in range(samples):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if m(m(a, b), c) != m(a, m(b, c)):
                return a, b, c
        return None


def as_table(S) -> Table:
    if isinstance(S, FiniteSemigroup):
        return S.table
    if isinstance(S, VirtualSemigroup):
        return S.materialize().table
    if isinstance(S, FiniteGroup):
        return S.table
    raise TypeError(f"not a semigroup: {S!r}")


def _array(S) -> np.ndarray:
    if isinstance(S, (FiniteSemigroup, FiniteGroup)):
        return S.array
    return np.array(as_table(S), dtype=np.int64)


# predicates ----------------------------------------------------------------

def idempotents(S) -> List[int]:
    t = as_table(S)
    return [x for x in range(len(t)) if t[x][x] == x]


def is_idempotent(S, x: int) -> bool:
    return S.mul(x, x) == x


def regular_elements(S) -> List[int]:
    t = _array(S)
    n = t.shape[0]
    xs = np.arange(n)
    # xyx for all (x, y)
    xyx = t[t, xs[:, None]]
    return [int(x) for x in np.flatnonzero((xyx == xs[:, None]).any(axis=1))]


def is_regular(S) -> bool:
    return len(regular_elements(S)) == S.order


def _inverse_pairs(S) -> np.ndarray:
    """Boolean matrix: entry (x, y) says y is an inverse of x."""
    t = _array(S)
    n = t.shape[0]
    xs = np.arange(n)
    xyx = t[t, xs[:, None]]
    return (xyx == xs[:, None]) & (xyx.T == xs[None, :])


def inverses_of(S, x: int) -> List[int]:
    return [int(y) for y in np.flatnonzero(_inverse_pairs(S)[x])]


def is_inverse_semigroup(S) -> bool:
    """Every element has exactly one inverse."""
    return bool((_inverse_pairs(S).sum(axis=1) == 1).all())


def idempotents_commute(S) -> bool:
    E = idempotents(S)
    return all(S.mul(e, f) == S.mul(f, e) for e in E for f in E)


def is_inverse_by_criterion(S) -> bool:
    """Regular with commuting idempotents; must agree with :func:`is_inverse_semigroup`."""
    return is_regular(S) and idempotents_commute(S)


def inverse_table(S) -> Tuple[int, ...]:
    """x -> x^{-1}. Raises AlgebraError unless S is inverse."""
    pairs = _inverse_pairs(S)
    counts = pairs.sum(axis=1)
    bad = np.flatnonzero(counts != 1)
    if len(bad):
        x = int(bad[0])
        raise AlgebraError(f"not an inverse semigroup: element {x} has {int(counts[x])} inverses")
    return tuple(int(y) for y in pairs.argmax(axis=1))


def is_clifford(S) -> bool:
    """Union of subgroups, i.e. every element is completely regular.

    For inverse S the criterion xx^{-1} = x^{-1}x is evaluated too and the
    two answers are required to agree.
    """
    t = _array(S)
    n = t.shape[0]
    xs = np.arange(n)
    xyx = t[t, xs[:, None]]
    commute = t == t.T
    completely_regular = bool(((xyx == xs[:, None]) & commute).any(axis=1).all())
    if is_inverse_semigroup(S):
        inv = inverse_table(S)
        by_inverse = all(S.mul(x, inv[x]) == S.mul(inv[x], x) for x in range(n))
        if by_inverse != completely_regular:
            raise RuntimeError("Clifford criteria disagree; table is inconsistent")
    return completely_regular


def is_commutative(S) -> bool:
    t = _array(S)
    return bool((t == t.T).all())


@dataclass(frozen=True)
class IdempotentSemilattice:
    parent: object
    members: Tuple[int, ...]

    def leq(self, e: int, f: int) -> bool:
        return self.parent.mul(e, f) == e and self.parent.mul(f, e) == e

    def meet(self, e: int, f: int) -> int:
        return self.parent.mul(e, f)

    def hasse_edges(self) -> List[Tuple[int, int]]:
        """Covering pairs (lower, upper)."""
        E = self.members
        out = []
        for e in E:
            for f in E:
                if e == f or not self.leq(e, f):
                    continue
                if not any(g not in (e, f) and self.leq(e, g) and self.leq(g, f) for g in E):
                    out.append((e, f))
        return sorted(out)


def semilattice_of(S) -> IdempotentSemilattice:
    if not is_inverse_semigroup(S):
        raise AlgebraError("semilattice_of needs an inverse semigroup")
    return IdempotentSemilattice(S, tuple(idempotents(S)))


def principal_filter(S, e: int) -> List[int]:
    if S.mul(e, e) != e:
        raise AlgebraError(f"element {e} is not idempotent")
    return [f for f in idempotents(S) if S.mul(e, f) == e]


@dataclass(frozen=True)
class MaximalSubgroup:
    group: FiniteGroup
    embedding: Tuple[int, ...]  # group index -> semigroup index

    def index_of(self, x: int) -> int:
        return self.embedding.index(x)


def maximal_subgroup(S, e: int) -> MaximalSubgroup:
    """H_e = {x : x x^{-1} = e = x^{-1} x} as a group with its inclusion into S."""
    if S.mul(e, e) != e:
        raise AlgebraError(f"element {e} is not idempotent")
    inv = inverse_table(S)
    elems = tuple(x for x in range(S.order) if S.mul(x, inv[x]) == e and S.mul(inv[x], x) == e)
    pos = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(pos[S.mul(a, b)] for b in elems) for a in elems)
    ginv = tuple(pos[inv[a]] for a in elems)
    return MaximalSubgroup(FiniteGroup(table, pos[e], ginv, f"H_{e}"), elems)


def conjugate_idempotent_pairs(S) -> List[Tuple[int, int, int]]:
    """Distinct idempotents e < f (by index) with a witness z: e = z f z^{-1}, f = z^{-1} e z."""
    inv = inverse_table(S)
    E = idempotents(S)
    m = S.mul
    out = []
    for i, e in enumerate(E):
        for f in E[i + 1:]:
            for z in range(S.order):
                if m(m(z, f), inv[z]) == e and m(m(inv[z], e), z) == f:
                    out.append((e, f, z))
                    break
    return out


# constructors ---------------------------------------------------------------

def semigroup_of_group(G: FiniteGroup) -> FiniteSemigroup:
    return FiniteSemigroup(G.table, G.name)


def make_brandt(H: FiniteGroup, k: int) -> FiniteSemigroup:
    """B(H, k): zero is index 0 and (a, h, b) is :func:`brandt_index`."""
    if k < 1:
        raise AlgebraError("Brandt semigroup needs k >= 1")
    h = H.order
    n = k * k * h + 1

    def decode(x):
        q, g = divmod(x - 1, h)
        a, b = divmod(q, k)
        return a, g, b

    table = [[0] * n for _ in range(n)]
    for x in range(1, n):
        a, g, b = decode(x)
        for y in range(1, n):
            a2, g2, b2 = decode(y)
            if b == a2:
                table[x][y] = brandt_index(H, k, a, H.table[g][g2], b2)
    return FiniteSemigroup(tuple(map(tuple, table)), f"B({H},{k})")


def brandt_index(H: FiniteGroup, k: int, a: int, g: int, b: int) -> int:
    """Index of (a, g, b) in make_brandt(H, k); a, b in range(k)."""
    return 1 + (a * k + b) * H.order + g


def make_group_with_zero(H: FiniteGroup) -> FiniteSemigroup:
    """H^0: group elements keep their indices, the zero is index |H|."""
    n = H.order
    z = n
    table = [list(row) + [z] for row in H.table]
    table.append([z] * (n + 1))
    return FiniteSemigroup(tuple(map(tuple, table)), f"{H}^0")


def left_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(a for _ in range(n)) for a in range(n)), f"LZ{n}")


def right_zero(n: int) -> FiniteSemigroup:
    return FiniteSemigroup(tuple(tuple(range(n)) for _ in range(n)), f"RZ{n}")


def null_semigroup(n: int) -> FiniteSemigroup:
    """Every product is the zero 0."""
    return FiniteSemigroup(tuple(tuple(0 for _ in range(n)) for _ in range(n)), f"N{n}")


def chain_semilattice(k: int) -> FiniteSemigroup:
    """{0 < 1 < ... < k-1} under min."""
    return FiniteSemigroup(tuple(tuple(min(a, b) for b in range(k)) for a in range(k)), f"chain{k}")


def semigroup_direct_product(S, T, name: Optional[str] = None) -> FiniteSemigroup:
    """(s, t) has index ``s*|T| + t``."""
    m = T.order
    n = S.order * m
    table = tuple(
        tuple(S.mul(x // m, y // m) * m + T.mul(x % m, y % m) for y in range(n)) for x in range(n))
    return FiniteSemigroup(table, name or f"{S}x{T}")


def adjoin_identity(S, name: Optional[str] = None) -> FiniteSemigroup:
    """S^1 with a new external identity at index |S|, even if S already has one."""
    n = S.order
    one = n
    table = [[S.mul(a, b) for b in range(n)] + [a] for a in range(n)]
    table.append(list(range(n)) + [one])
    return FiniteSemigroup(tuple(map(tuple, table)), name or f"{S}^1")


@dataclass(frozen=True)
class StrongSemilatticeLayout:
    semigroup: FiniteSemigroup
    offsets: Tuple[int, ...]  # E-index -> first index of H_e in the semigroup


def make_strong_semilattice(E, groups: Sequence[FiniteGroup],
                            links: Mapping[Tuple[int, int], Sequence[int]],
                            name: Optional[str] = None) -> StrongSemilatticeLayout:
    """Clifford semigroup from a semilattice of groups.

    ``E`` is a semilattice (commutative idempotent semigroup) on indices
    ``0..k-1``; ``groups[e]`` is H_e; ``links[(f, e)]`` for e < f is the map
    H_f -> H_e as a list of indices. Identity links for e = f are implied.
    """
    k = E.order
    if len(groups) != k:
        raise AlgebraError(f"need {k} groups, got {len(groups)}")
    for a in range(k):
        if E.mul(a, a) != a:
            raise AlgebraError(f"semilattice element {a} is not idempotent")
        for b in range(k):
            if E.mul(a, b) != E.mul(b, a):
                raise AlgebraError(f"semilattice is not commutative at ({a},{b})")
    if associativity_witness(as_table(E)) is not None:
        raise AlgebraError("semilattice is not associative")

    def leq(e, f):
        return E.mul(e, f) == e

    phi: Dict[Tuple[int, int], Tuple[int, ...]] = {}
    for e in range(k):
        phi[e, e] = tuple(range(groups[e].order))
    for (f, e), m in links.items():
        if not leq(e, f):
            raise AlgebraError(f"link ({f},{e}) given but {e} is not below {f}")
        m = tuple(m)
        Hf, He = groups[f], groups[e]
        if len(m) != Hf.order or any(not 0 <= v < He.order for v in m):
            raise AlgebraError(f"link ({f},{e}) is not a map H_{f} -> H_{e}")
        if e == f and m != phi[e, e]:
            raise AlgebraError(f"link ({f},{e}) must be the identity")
        for a in range(Hf.order):
            for b in range(Hf.order):
                if m[Hf.table[a][b]] != He.table[m[a]][m[b]]:
                    raise AlgebraError(f"link ({f},{e}) is not a homomorphism at ({a},{b})")
        phi[f, e] = m
    for f in range(k):
        for e in range(k):
            if e != f and leq(e, f) and (f, e) not in phi:
                raise AlgebraError(f"missing link ({f},{e})")
    for g in range(k):
        for f in range(k):
            for e in range(k):
                if leq(e, f) and leq(f, g):
                    direct = phi[g, e]
                    composed = tuple(phi[f, e][phi[g, f][x]] for x in range(groups[g].order))
                    if direct != composed:
                        raise AlgebraError(f"links are not coherent on the triple ({e},{f},{g})")

    offsets = []
    total = 0
    for H in groups:
        offsets.append(total)
        total += H.order
    owner = []
    for e, H in enumerate(groups):
        owner.extend((e, h) for h in range(H.order))
    table = []
    for x in range(total):
        f, a = owner[x]
        row = []
        for y in range(total):
            g, b = owner[y]
            m = E.mul(f, g)
            row.append(offsets[m] + groups[m].table[phi[f, m][a]][phi[g, m][b]])
        table.append(tuple(row))
    S = FiniteSemigroup(tuple(table), name or "strong semilattice")
    if not (is_inverse_semigroup(S) and is_clifford(S)):
        raise RuntimeError("strong semilattice construction did not yield a Clifford inverse semigroup")
    return StrongSemilatticeLayout(S, tuple(offsets))


# text formats -----------------------------------------------------------------

def parse_semigroup(text: str) -> FiniteSemigroup:
    table, name = parse_table(text)
    try:
        return FiniteSemigroup.from_table(table, name)
    except AlgebraError as exc:
        raise ParseError(str(exc)) from None


def serialize_semigroup(S) -> str:
    return format_table(as_table(S), getattr(S, "name", None))


# embedding search -------------------------------------------------------------

def _monogenic_type(S, x: int) -> Tuple[int, int]:
    """(index m, period r) with x^(m+r) = x^m."""
    powers = [x]
    seen = {x: 1}
    while True:
        nxt = S.mul(powers[-1], x)
        if nxt in seen:
            m = seen[nxt]
            return m, len(powers) + 1 - m
        powers.append(nxt)
        seen[nxt] = len(powers)


def _power(mul, x: int, k: int) -> int:
    y = x
    for _ in range(k - 1):
        y = mul(y, x)
    return y


def find_embedding(S, T, max_source: int = DEFAULT_MAX_EMBED_SOURCE) -> Optional[Tuple[int, ...]]:
    """An injective homomorphism S -> T as a tuple of images, or None if none exists.

    Complete backtracking: idempotents are placed first and every product of
    already-placed elements is forced by propagation.
    """
    n = S.order
    if n > max_source:
        raise ResourceLimitError(f"source of order {n} exceeds embedding search bound {max_source}", n, max_source)
    if n > T.order:
        return None
    if T.order <= MATERIALIZE_LIMIT:
        tt = as_table(T)

        def tmul(a, b):
            return tt[a][b]
    else:
        tmul = T.mul
    st = as_table(S)

    src_idem = set(idempotents(S))
    tgt_idem = [y for y in range(T.order) if tmul(y, y) == y]
    if len(src_idem) > len(tgt_idem):
        return None
    src_reg = set(regular_elements(S))
    if T.order <= MATERIALIZE_LIMIT:
        tgt_reg = set(regular_elements(T))
        if len(src_reg) > len(tgt_reg):
            return None
    else:
        tgt_reg = None
    types = [_monogenic_type(S, x) for x in range(n)]

    def allowed(x, y):
        if x in src_idem and tmul(y, y) != y:
            return False
        if tgt_reg is not None and x in src_reg and y not in tgt_reg:
            return False
        m, r = types[x]
        return _power(tmul, y, m + r) == _power(tmul, y, m)

    img: List[Optional[int]] = [None] * n
    used: Dict[int, int] = {}
    placed: List[int] = []

    def assign(x, y) -> Optional[List[int]]:
        trail = []
        queue = [(x, y)]
        ok = True
        while queue:
            a, ta = queue.pop()
            if img[a] is not None:
                if img[a] != ta:
                    ok = False
                    break
                continue
            if ta in used or not allowed(a, ta):
                ok = False
                break
            img[a] = ta
            used[ta] = a
            placed.append(a)
            trail.append(a)
            for b in list(placed):
                for p, q in ((a, b), (b, a)):
                    s = st[p][q]
                    t = tmul(img[p], img[q])
                    if img[s] is None:
                        queue.append((s, t))
                    elif img[s] != t:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return trail
        undo(trail)
        return None

    def undo(trail):
        for a in reversed(trail):
            del used[img[a]]
            img[a] = None
            placed.remove(a)

    order = sorted(range(n), key=lambda x: (x not in src_idem, x))
    candidates = {x: [y for y in range(T.order) if allowed(x, y)] for x in range(n)}

    def search(pos):
        while pos < n and img[order[pos]] is not None:
            pos += 1
        if pos == n:
            return True
        x = order[pos]
        for y in candidates[x]:
            if y in used:
                continue
            trail = assign(x, y)
            if trail is None:
                continue
            if search(pos + 1):
                return True
            undo(trail)
        return False

    if search(0):
        return tuple(img)
    return None


def is_isomorphic(S, T, max_source: int = DEFAULT_MAX_EMBED_SOURCE) -> bool:
    if S.order != T.order:
        return False
    return find_embedding(S, T, max_source) is not None
