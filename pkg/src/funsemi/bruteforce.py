"""Definitional brute-force checks used as independent oracles.

Nothing here calls the coset or Haar classifiers; every answer comes from
searching for witnesses straight from the definitions.
"""

from fractions import Fraction
from itertools import product
from math import isqrt
from typing import List, Sequence

from .bitsets import full_mask
from .convolution import RationalMeasure, convolve
from .groups import FiniteGroup


def _subset_product(G: FiniteGroup, A: int, B: int) -> int:
    out = 0
    for a in range(G.order):
        if A >> a & 1:
            for b in range(G.order):
                if B >> b & 1:
                    out |= 1 << G.table[a][b]
    return out


def regular_subsets(G: FiniteGroup) -> List[int]:
    """Every A with ABA = A for some nonempty B."""
    n = full_mask(G.order)
    out = []
    for A in range(1, n + 1):
        if any(_subset_product(G, _subset_product(G, A, B), A) == A for B in range(1, n + 1)):
            out.append(A)
    return out


def subset_inverses(G: FiniteGroup, A: int) -> List[int]:
    n = full_mask(G.order)
    out = []
    for B in range(1, n + 1):
        AB = _subset_product(G, A, B)
        if _subset_product(G, AB, A) == A and _subset_product(G, _subset_product(G, B, A), B) == B:
            out.append(B)
    return out


def idempotent_subsets(G: FiniteGroup) -> List[int]:
    return [A for A in range(1, full_mask(G.order) + 1) if _subset_product(G, A, A) == A]


def subgroup_masks(G: FiniteGroup) -> List[int]:
    """Every subset closed under the product and containing the identity and inverses."""
    out = []
    for A in range(1, full_mask(G.order) + 1):
        elems = [a for a in range(G.order) if A >> a & 1]
        if (A >> G.identity & 1 and all(A >> G.inv[a] & 1 for a in elems)
                and all(A >> G.table[a][b] & 1 for a in elems for b in elems)):
            out.append(A)
    return out


def is_regular_measure_by_search(G: FiniteGroup, mu: RationalMeasure, candidates: Sequence[RationalMeasure]) -> bool:
    return any(convolve(G, convolve(G, mu, nu), mu) == mu for nu in candidates)


def measure_inverses(G: FiniteGroup, mu: RationalMeasure, candidates: Sequence[RationalMeasure]) -> List[RationalMeasure]:
    out = []
    for nu in candidates:
        if convolve(G, convolve(G, mu, nu), mu) == mu and convolve(G, convolve(G, nu, mu), nu) == nu:
            out.append(nu)
    return out


def coset_uniform_measures(G: FiniteGroup) -> List[RationalMeasure]:
    """Uniform measures on every set of the form Hx, found from subgroup_masks by translation."""
    seen = set()
    for H in subgroup_masks(G):
        for x in range(G.order):
            seen.add(_subset_product(G, H, 1 << x))
    out = []
    for A in sorted(seen):
        k = bin(A).count("1")
        out.append(RationalMeasure(tuple(Fraction(1, k) if A >> i & 1 else Fraction(0) for i in range(G.order))))
    return out


def c2_idempotent_weights() -> List[Fraction]:
    """Solve p^2 + (1-p)^2 = p, i.e. 2p^2 - 3p + 1 = 0, by the quadratic formula."""
    a, b, c = 2, -3, 1
    disc = b * b - 4 * a * c
    r = isqrt(disc)
    assert r * r == disc
    return sorted({Fraction(-b + r, 2 * a), Fraction(-b - r, 2 * a)})


def all_maps_embedding_exists(S, T) -> bool:
    """Exhaustive search over all |T|^|S| maps for an injective homomorphism."""
    n = S.order
    for images in product(range(T.order), repeat=n):
        if len(set(images)) != n:
            continue
        if all(images[S.mul(x, y)] == T.mul(images[x], images[y]) for x in range(n) for y in range(n)):
            return True
    return False
