"""Finite groups given by Cayley tables.

Elements are the dense indices ``0..n-1``. Subsets of the carrier are int
bitmasks (bit ``i`` set means element ``i`` is present).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .bitsets import braces, full_mask, members, popcount
from .cayley import Table, format_table, parse_table
from .errors import AlgebraError, ParseError, ResourceLimitError

DEFAULT_MAX_GROUP_ORDER = 64
EXHAUSTIVE_SUBGROUP_LIMIT = 16


@dataclass(frozen=True)
class FiniteGroup:
    table: Table
    identity: int
    inv: Tuple[int, ...]
    name: Optional[str] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def elements(self) -> range:
        return range(len(self.table))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def __str__(self):
        return self.name or f"group of order {self.order}"

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], name: Optional[str] = None) -> "FiniteGroup":
        """Validate ``table`` as a group and build it; raises AlgebraError naming the first failed axiom."""
        table = tuple(tuple(int(v) for v in row) for row in table)
        identity, inv = check_group_axioms(table)
        return cls(table, identity, inv, name)


def _check_square(table: Table) -> None:
    n = len(table)
    if n == 0:
        raise AlgebraError("empty table")
    for a, row in enumerate(table):
        if len(row) != n:
            raise AlgebraError(f"row {a} has {len(row)} entries, expected {n}")
        for v in row:
            if not 0 <= v < n:
                raise AlgebraError(f"entry {v} in row {a} outside [0,{n})")


def associativity_witness(table: Table) -> Optional[Tuple[int, int, int]]:
    """First triple (a, b, c) with (ab)c != a(bc), in lexicographic order, or None."""
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    left = t[t]  # left[a, b, c] = t[t[a, b], c]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]  # t[a, t[b, c]]
    bad = np.argwhere(left != right)
    if len(bad) == 0:
        return None
    a, b, c = bad[0]
    return int(a), int(b), int(c)


def check_group_axioms(table: Table) -> Tuple[int, Tuple[int, ...]]:
    """Return ``(identity, inverse table)`` or raise AlgebraError.

    Axioms are checked in the order associativity, identity, inverses and the
    message names the first failure with a witness.
    """
    _check_square(table)
    w = associativity_witness(table)
    if w is not None:
        a, b, c = w
        raise AlgebraError(f"not a group: not associative at ({a},{b},{c})")
    n = len(table)
    identity = None
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            identity = e
            break
    if identity is None:
        raise AlgebraError("not a group: no identity element")
    inv = []
    for a in range(n):
        for b in range(n):
            if table[a][b] == identity and table[b][a] == identity:
                inv.append(b)
                break
        else:
            raise AlgebraError(f"not a group: no inverse for element {a}")
    return identity, tuple(inv)


def validate_group(G: FiniteGroup) -> None:
    """Re-check every axiom on an already-built group (used on constructor output in tests)."""
    identity, inv = check_group_axioms(G.table)
    if identity != G.identity or inv != G.inv:
        raise AlgebraError("stored identity/inverse table disagrees with the Cayley table")


# constructors -------------------------------------------------------------

def make_cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise AlgebraError(f"cyclic group order must be positive, got {n}")
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteGroup(table, 0, inv, f"C{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """Componentwise product; the pair (i, j) has index ``i*|H| + j``."""
    m = H.order
    ga, ha = G.array, H.array
    # t[(i,j),(k,l)] = ga[i,k]*m + ha[j,l]
    t = ga[:, None, :, None] * m + ha[None, :, None, :]
    t = t.reshape(G.order * m, G.order * m)
    inv = tuple(G.inv[i] * m + H.inv[j] for i in range(G.order) for j in range(m))
    table = tuple(map(tuple, t.tolist()))
    return FiniteGroup(table, G.identity * m + H.identity, inv, name or f"{G}x{H}")


def product_of_groups(groups: Sequence[FiniteGroup], name: Optional[str] = None) -> FiniteGroup:
    """Left-folded direct product; element index is the mixed-radix number of its coordinates."""
    if not groups:
        return make_cyclic(1)
    out = groups[0]
    for H in groups[1:]:
        out = direct_product(out, H)
    if name is not None:
        out = FiniteGroup(out.table, out.identity, out.inv, name)
    return out


def product_index(groups: Sequence[FiniteGroup], coords: Sequence[int]) -> int:
    idx = 0
    for H, c in zip(groups, coords):
        idx = idx * H.order + c
    return idx


def make_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; ``r^i s^j`` has index ``2*i + j``."""
    if n < 1:
        raise AlgebraError("dihedral parameter must be positive")

    def mul(x, y):
        i, s = divmod(x, 2)
        k, t = divmod(y, 2)
        # r^i s^s r^k s^t = r^(i + (-1)^s k) s^(s+t)
        return 2 * ((i + (k if s == 0 else -k)) % n) + (s + t) % 2

    N = 2 * n
    return FiniteGroup.from_table([[mul(x, y) for y in range(N)] for x in range(N)], f"D{n}")


def make_symmetric(n: int) -> FiniteGroup:
    """Symmetric group on n points; permutations indexed in lexicographic order."""
    if not 1 <= n <= 5:
        raise AlgebraError("symmetric group supported for 1 <= n <= 5")
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup.from_table(table, f"S{n}")


def make_quaternion() -> FiniteGroup:
    """Q8 as signed units; index ``2*u + s`` for unit u in (1,i,j,k), sign bit s."""
    # unit products: (u, v) -> (sign, unit) with 0=1, 1=i, 2=j, 3=k
    unit = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def mul(x, y):
        u, s = divmod(x, 2)
        v, t = divmod(y, 2)
        sign, w = unit[u, v]
        return 2 * w + (s + t + sign) % 2

    return FiniteGroup.from_table([[mul(x, y) for y in range(8)] for x in range(8)], "Q8")


def group_by_name(name: str) -> FiniteGroup:
    """Named small groups: ``C<n>``, ``D<n>``, ``S<n>``, ``Q8``, ``K4``/``V4``, and ``x``-products such as ``C2xC4``."""
    parts = [p.strip() for p in name.split("x")]
    if len(parts) > 1:
        return product_of_groups([group_by_name(p) for p in parts], name)
    key = name.strip().upper()
    try:
        if key in ("K4", "V4"):
            return direct_product(make_cyclic(2), make_cyclic(2), "K4")
        if key == "Q8":
            return make_quaternion()
        if key[0] == "C":
            return make_cyclic(int(key[1:]))
        if key[0] == "D":
            return make_dihedral(int(key[1:]))
        if key[0] == "S":
            return make_symmetric(int(key[1:]))
    except (ValueError, IndexError):
        pass
    raise AlgebraError(f"unknown group name {name!r}")


# subgroups and cosets ------------------------------------------------------

@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: int

    @property
    def order(self) -> int:
        return popcount(self.members)

    def elements(self) -> List[int]:
        return members(self.members)

    def __str__(self):
        return braces(self.members)


def is_subgroup_mask(G: FiniteGroup, mask: int) -> bool:
    if not mask >> G.identity & 1:
        return False
    elems = members(mask)
    for a in elems:
        if not mask >> G.inv[a] & 1:
            return False
        row = G.table[a]
        for b in elems:
            if not mask >> row[b] & 1:
                return False
    return True


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> int:
    """Bitmask of the subgroup generated by ``gens``."""
    gens = list(gens)
    mask = 1 << G.identity
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = G.table[a][g]
                if not mask >> c & 1:
                    mask |= 1 << c
                    nxt.append(c)
        frontier = nxt
    return mask


def _subgroups_exhaustive(G: FiniteGroup) -> List[int]:
    n, e = G.order, G.identity
    others = [a for a in range(n) if a != e]
    found = []
    for bits in range(1 << len(others)):
        mask = 1 << e
        for k, a in enumerate(others):
            if bits >> k & 1:
                mask |= 1 << a
        if is_subgroup_mask(G, mask):
            found.append(mask)
    return found


def _subgroups_by_join(G: FiniteGroup) -> List[int]:
    """Grow the lattice by joining each known subgroup with one more element."""
    seen = {1 << G.identity}
    frontier = [1 << G.identity]
    while frontier:
        nxt = []
        for H in frontier:
            gens = members(H)
            for g in range(G.order):
                if H >> g & 1:
                    continue
                K = generated_subgroup(G, gens + [g])
                if K not in seen:
                    seen.add(K)
                    nxt.append(K)
        frontier = nxt
    return list(seen)


def subgroups(G: FiniteGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER, method: str = "auto") -> List[Subgroup]:
    """All subgroups, sorted by (size, bitmask)."""
    if G.order > max_order:
        raise ResourceLimitError(f"group order {G.order} exceeds bound {max_order}", G.order, max_order)
    if method == "auto":
        method = "exhaustive" if G.order <= EXHAUSTIVE_SUBGROUP_LIMIT else "join"
    if method == "exhaustive":
        masks = _subgroups_exhaustive(G)
    elif method == "join":
        masks = _subgroups_by_join(G)
    else:
        raise ValueError(f"unknown method {method!r}")
    masks.sort(key=lambda m: (popcount(m), m))
    return [Subgroup(G, m) for m in masks]


def right_coset(G: FiniteGroup, H: int, x: int) -> int:
    """Bitmask of ``H x``."""
    out = 0
    for h in members(H):
        out |= 1 << G.table[h][x]
    return out


def left_coset(G: FiniteGroup, x: int, H: int) -> int:
    out = 0
    row = G.table[x]
    for h in members(H):
        out |= 1 << row[h]
    return out


def right_cosets(G: FiniteGroup, H) -> List[int]:
    """Partition of the carrier into right cosets ``Hx``, sorted by bitmask."""
    mask = H.members if isinstance(H, Subgroup) else H
    if not is_subgroup_mask(G, mask):
        raise AlgebraError(f"{braces(mask)} is not a subgroup")
    out = []
    covered = 0
    for x in range(G.order):
        if covered >> x & 1:
            continue
        c = right_coset(G, mask, x)
        covered |= c
        out.append(c)
    assert covered == full_mask(G.order)
    return sorted(out)


# text format --------------------------------------------------------------

def parse_group(text: str) -> FiniteGroup:
    table, name = parse_table(text)
    try:
        return FiniteGroup.from_table(table, name)
    except AlgebraError as exc:
        raise ParseError(str(exc)) from None


def serialize_group(G: FiniteGroup) -> str:
    return format_table(G.table, G.name)


def find_group_isomorphism(G: FiniteGroup, H: FiniteGroup) -> Optional[Dict[int, int]]:
    """Brute-force isomorphism search over all bijections (for tiny groups only)."""
    if G.order != H.order:
        return None
    n = G.order
    if n > 8:
        raise ResourceLimitError("brute-force group isomorphism limited to order 8", n, 8)
    for perm in permutations(range(n)):
        if all(perm[G.table[a][b]] == H.table[perm[a]][perm[b]] for a, b in product(range(n), repeat=2)):
            return dict(enumerate(perm))
    return None
