"""The power semigroup exp(G) of nonempty subsets of a finite group.

For a finite discrete group every subset is compact and closed, so the
global semigroup, the semigroup of closed sets and the hypersemigroup all
coincide with this one object.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .bitsets import braces, full_mask, members, popcount
from .errors import AlgebraError, ResourceLimitError
from .groups import FiniteGroup, is_subgroup_mask, right_coset, right_cosets, subgroups
from .semigroups import FiniteSemigroup, VirtualSemigroup

DEFAULT_MAX_EXP_ORDER = 10
EXP_MATERIALIZE_ORDER = 5
_NUMPY_PRODUCT_THRESHOLD = 4096


@dataclass(frozen=True)
class SubsetElement:
    n: int
    bits: int

    def __post_init__(self):
        if self.bits <= 0 or self.bits >> self.n:
            raise AlgebraError(f"subset mask {self.bits} is empty or outside a carrier of size {self.n}")

    def members(self) -> List[int]:
        return members(self.bits)

    def __len__(self):
        return popcount(self.bits)

    def __str__(self):
        return braces(self.bits)

    @property
    def index(self) -> int:
        """Position in :func:`exp_semigroup`."""
        return self.bits - 1


@dataclass(frozen=True)
class RegularSubsetWitness:
    subgroup: int  # bitmask of H
    shift: int  # x with A = Hx

    def __str__(self):
        return f"{braces(self.subgroup)}*{self.shift}"


def _mask(G: FiniteGroup, A) -> int:
    if isinstance(A, SubsetElement):
        if A.n != G.order:
            raise AlgebraError(f"subset over a carrier of size {A.n} used with a group of order {G.order}")
        return A.bits
    if A <= 0 or A >> G.order:
        raise AlgebraError(f"subset mask {A} is empty or outside the carrier")
    return A


def product_mask(G: FiniteGroup, a: int, b: int) -> int:
    """AB on raw bitmasks."""
    am, bm = members(a), members(b)
    if len(am) * len(bm) > _NUMPY_PRODUCT_THRESHOLD:
        vals = np.unique(G.array[np.ix_(am, bm)])
        out = 0
        for v in vals.tolist():
            out |= 1 << v
        return out
    out = 0
    t = G.table
    for x in am:
        row = t[x]
        for y in bm:
            out |= 1 << row[y]
    return out


def subset_product(G: FiniteGroup, A, B):
    """{ab : a in A, b in B}. Returns the same kind it was given (mask or SubsetElement)."""
    r = product_mask(G, _mask(G, A), _mask(G, B))
    if isinstance(A, SubsetElement):
        return SubsetElement(G.order, r)
    return r


def exp_semigroup(G: FiniteGroup, max_order: int = DEFAULT_MAX_EXP_ORDER):
    """All 2^n - 1 nonempty subsets; the subset with mask m has index m - 1.

    Materialized as a table for |G| <= 5, otherwise a VirtualSemigroup.
    """
    n = G.order
    if n > max_order:
        raise ResourceLimitError(f"exp(G) needs |G| <= {max_order}, got {n}", n, max_order)
    size = (1 << n) - 1

    def prod(i, j):
        return product_mask(G, i + 1, j + 1) - 1

    name = f"exp({G})"
    if n <= EXP_MATERIALIZE_ORDER:
        return FiniteSemigroup(tuple(tuple(prod(i, j) for j in range(size)) for i in range(size)), name)
    return VirtualSemigroup(size, prod, name)


def classify_regular_subset(G: FiniteGroup, A) -> Optional[RegularSubsetWitness]:
    """Witness (H, a) with A = Ha when A is regular in exp(G), else None.

    Take any a in A; A is a right coset exactly when H = A a^{-1} is a
    subgroup and Ha = A.
    """
    a_mask = _mask(G, A)
    a = members(a_mask)[0]
    H = product_mask(G, a_mask, 1 << G.inv[a])
    if is_subgroup_mask(G, H) and right_coset(G, H, a) == a_mask:
        return RegularSubsetWitness(H, a)
    return None


def exp_inverse(G: FiniteGroup, A) -> int:
    """The unique inverse x^{-1}H of a regular A = Hx."""
    w = classify_regular_subset(G, A)
    if w is None:
        raise AlgebraError(f"{braces(_mask(G, A))} is not regular in exp(G)")
    return product_mask(G, 1 << G.inv[w.shift], w.subgroup)


def regular_elements_exp(G: FiniteGroup, max_order: int = 64):
    """All right cosets Hx with their witnesses, sorted by mask."""
    out = {}
    for H in subgroups(G, max_order):
        for c in right_cosets(G, H):
            if c not in out:
                out[c] = RegularSubsetWitness(H.members, members(c)[0])
    return [(SubsetElement(G.order, c), out[c]) for c in sorted(out)]


def idempotents_exp(G: FiniteGroup, max_order: int = 64) -> List[SubsetElement]:
    """Idempotents of exp(G): exactly the subgroups."""
    return [SubsetElement(G.order, H.members) for H in subgroups(G, max_order)]


def singleton_image(G: FiniteGroup) -> List[int]:
    """Indices in exp_semigroup(G) of the singletons {g}, g in G order."""
    return [(1 << g) - 1 for g in range(G.order)]


def full_subset(G: FiniteGroup) -> SubsetElement:
    return SubsetElement(G.order, full_mask(G.order))
