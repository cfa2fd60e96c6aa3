"""Test corpus: named small groups and seeded random Clifford inverse semigroups."""

import random
from math import lcm
from typing import Dict, List, Tuple

from .groups import FiniteGroup, direct_product, group_by_name, make_cyclic
from .semigroups import FiniteSemigroup, StrongSemilatticeLayout, make_strong_semilattice

GROUPS_UP_TO_6 = ["C1", "C2", "C3", "C4", "K4", "C5", "C6", "S3"]
GROUPS_UP_TO_8 = GROUPS_UP_TO_6 + ["C7", "C8", "C2xC4", "C2xC2xC2", "D4", "Q8"]


def groups(names: List[str]) -> List[FiniteGroup]:
    return [group_by_name(n) for n in names]


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def random_semilattice(rng: random.Random, points: int = 3, draws: int = 4) -> FiniteSemigroup:
    """Subsets of a small set closed under intersection, with meet = intersection."""
    sets = {rng.randrange(1 << points) for _ in range(rng.randint(1, draws))}
    changed = True
    while changed:
        changed = False
        for a in list(sets):
            for b in list(sets):
                if a & b not in sets:
                    sets.add(a & b)
                    changed = True
    elems = sorted(sets)
    pos = {s: i for i, s in enumerate(elems)}
    return FiniteSemigroup(tuple(tuple(pos[a & b] for b in elems) for a in elems), "E")


def random_clifford(rng: random.Random, max_elements: int = 20,
                    max_product_order: int = 1024) -> StrongSemilatticeLayout:
    """A random strong semilattice of abelian groups C_a x C_b.

    Each H_e is a quotient of one ambient group C_N1 x C_N2 with e <= f
    implying |H_e| divides |H_f| componentwise, and the links are the
    reduction maps, so coherence holds by construction.
    """
    while True:
        E = random_semilattice(rng)
        k = E.order
        n1 = rng.choice([1, 2, 3, 4, 6])
        n2 = rng.choice([1, 2])
        raw = [(rng.choice(_divisors(n1)), rng.choice(_divisors(n2))) for _ in range(k)]
        dims = []
        for f in range(k):
            below = [g for g in range(k) if E.mul(g, f) == g]
            dims.append((lcm(*(raw[g][0] for g in below)), lcm(*(raw[g][1] for g in below))))
        sizes = [a * b for a, b in dims]
        cover = 1
        for s in sizes:
            cover *= max(s, 2)
        if sum(sizes) > max_elements or cover > max_product_order:
            continue
        groups = [direct_product(make_cyclic(a), make_cyclic(b), f"C{a}xC{b}") for a, b in dims]
        links: Dict[Tuple[int, int], List[int]] = {}
        for f in range(k):
            for e in range(k):
                if e != f and E.mul(e, f) == e:
                    (a1, b1), (a2, b2) = dims[f], dims[e]
                    links[f, e] = [(i // b1 % a2) * b2 + (i % b1) % b2 for i in range(a1 * b1)]
        return make_strong_semilattice(E, groups, links, f"random Clifford ({sum(sizes)} elements)")
