"""Probability measures on a finite group under convolution, in exact rationals.

    (mu * nu)(z) = sum over xy = z of mu(x) nu(y)

Nothing here uses floating point: idempotency and regularity are exact
identities and are compared as such.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .bitsets import braces, full_mask, mask_of, members, popcount
from .errors import AlgebraError, ParseError, ResourceLimitError
from .groups import FiniteGroup, Subgroup, is_subgroup_mask, subgroups
from .hyper import classify_regular_subset, product_mask

_NUMPY_THRESHOLD = 4096


@dataclass(frozen=True)
class RationalMeasure:
    weights: Tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise AlgebraError("a measure needs a nonempty carrier")
        if any(w < 0 for w in self.weights):
            raise AlgebraError("negative weight")
        if sum(self.weights) != 1:
            raise AlgebraError(f"total mass is {sum(self.weights)}, not 1")

    @classmethod
    def of(cls, weights: Iterable) -> "RationalMeasure":
        return cls(tuple(Fraction(w) for w in weights))

    @property
    def n(self) -> int:
        return len(self.weights)

    def __getitem__(self, x: int) -> Fraction:
        return self.weights[x]

    def __str__(self):
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class RegularMeasureWitness:
    subgroup: int
    shift: int

    def __str__(self):
        return f"Haar({braces(self.subgroup)})*{self.shift}"


def point_mass(n: int, g: int) -> RationalMeasure:
    w = [Fraction(0)] * n
    w[g] = Fraction(1)
    return RationalMeasure(tuple(w))


def uniform_on(n: int, A: int) -> RationalMeasure:
    """Equal weight on each member of the nonempty subset ``A``."""
    if A <= 0 or A >> n:
        raise AlgebraError(f"cannot spread mass over the subset {A}")
    k = popcount(A)
    return RationalMeasure(tuple(Fraction(1, k) if A >> i & 1 else Fraction(0) for i in range(n)))


def support(mu: RationalMeasure) -> int:
    return mask_of(i for i, w in enumerate(mu.weights) if w > 0)


def _check_parent(G: FiniteGroup, *mus: RationalMeasure) -> None:
    for mu in mus:
        if mu.n != G.order:
            raise AlgebraError(f"measure on {mu.n} points used with a group of order {G.order}")


def _numerators(mu: RationalMeasure, idx: Sequence[int]) -> Tuple[List[int], int]:
    d = lcm(*(mu.weights[i].denominator for i in idx))
    return [mu.weights[i].numerator * (d // mu.weights[i].denominator) for i in idx], d


def convolve(G: FiniteGroup, mu: RationalMeasure, nu: RationalMeasure) -> RationalMeasure:
    _check_parent(G, mu, nu)
    sa = [i for i, w in enumerate(mu.weights) if w]
    sb = [i for i, w in enumerate(nu.weights) if w]
    na, da = _numerators(mu, sa)
    nb, db = _numerators(nu, sb)
    acc = [0] * G.order
    bound = max(na) * max(nb) * min(len(sa), len(sb))
    if len(sa) * len(sb) > _NUMPY_THRESHOLD and bound < 2 ** 62:
        idx = G.array[np.ix_(sa, sb)].ravel()
        vals = np.outer(np.array(na, dtype=np.int64), np.array(nb, dtype=np.int64)).ravel()
        out = np.zeros(G.order, dtype=np.int64)
        np.add.at(out, idx, vals)
        acc = out.tolist()
    else:
        t = G.table
        for x, p in zip(sa, na):
            row = t[x]
            for y, q in zip(sb, nb):
                acc[row[y]] += p * q
    d = da * db
    if sum(acc) != d:
        raise RuntimeError("convolution lost mass")
    return RationalMeasure(tuple(Fraction(v, d) for v in acc))


def translate_left(G: FiniteGroup, g: int, mu: RationalMeasure) -> RationalMeasure:
    """(g * mu)(z) = mu(g^{-1} z)."""
    _check_parent(G, mu)
    gi = G.inv[g]
    return RationalMeasure(tuple(mu.weights[G.table[gi][z]] for z in range(G.order)))


def translate_right(G: FiniteGroup, mu: RationalMeasure, g: int) -> RationalMeasure:
    """(mu * g)(z) = mu(z g^{-1})."""
    _check_parent(G, mu)
    gi = G.inv[g]
    return RationalMeasure(tuple(mu.weights[G.table[z][gi]] for z in range(G.order)))


def _is_uniform_on(mu: RationalMeasure, A: int) -> bool:
    k = popcount(A)
    return support(mu) == A and all(mu.weights[i] == Fraction(1, k) for i in members(A))


def classify_idempotent_measure(G: FiniteGroup, mu: RationalMeasure) -> Optional[Subgroup]:
    """The subgroup H when mu is the Haar (uniform) measure of H, else None."""
    _check_parent(G, mu)
    S = support(mu)
    if is_subgroup_mask(G, S) and _is_uniform_on(mu, S):
        return Subgroup(G, S)
    return None


def classify_regular_measure(G: FiniteGroup, mu: RationalMeasure) -> Optional[RegularMeasureWitness]:
    """Witness (H, x) when mu is uniform on a right coset Hx, else None."""
    _check_parent(G, mu)
    S = support(mu)
    w = classify_regular_subset(G, S)
    if w is None or not _is_uniform_on(mu, S):
        return None
    return RegularMeasureWitness(w.subgroup, w.shift)


def measure_inverse(G: FiniteGroup, mu: RationalMeasure) -> RationalMeasure:
    """x^{-1} * Haar(H) for mu = Haar(H) * x."""
    w = classify_regular_measure(G, mu)
    if w is None:
        raise AlgebraError(f"measure {mu} is not regular")
    return uniform_on(G.order, product_mask(G, 1 << G.inv[w.shift], w.subgroup))


def regular_measures(G: FiniteGroup, max_order: int = 64) -> List[RationalMeasure]:
    """Reg(P(G)) = { Haar(H) * x }, deduplicated, ordered by support mask."""
    seen = {}
    for H in subgroups(G, max_order):
        haar = uniform_on(G.order, H.members)
        for x in G.elements():
            m = convolve(G, haar, point_mass(G.order, x))
            seen.setdefault(support(m), m)
    return [seen[k] for k in sorted(seen)]


def invariant_measures(G: FiniteGroup, measures: Iterable[RationalMeasure]) -> List[RationalMeasure]:
    """Those mu with g * mu = mu = mu * g for every g."""
    return [mu for mu in measures
            if all(translate_left(G, g, mu) == mu and translate_right(G, mu, g) == mu for g in G.elements())]


@dataclass
class SupportIsoReport:
    group: str
    measure_side: int
    subset_side: int
    coset_sum: int
    bijective: bool
    pairs_checked: int
    homomorphism_failures: List[Tuple[int, int]]
    inverse_failures: List[int]

    @property
    def passed(self) -> bool:
        return (self.bijective and not self.homomorphism_failures and not self.inverse_failures
                and self.measure_side == self.subset_side == self.coset_sum)

    def as_dict(self):
        return {
            "group": self.group,
            "regular_measures": self.measure_side,
            "regular_subsets": self.subset_side,
            "coset_sum": self.coset_sum,
            "bijective": self.bijective,
            "pairs_checked": self.pairs_checked,
            "homomorphism_failures": [list(p) for p in self.homomorphism_failures],
            "inverse_failures": self.inverse_failures,
            "passed": self.passed,
        }


def support_iso_check(G: FiniteGroup, max_order: int = 10) -> SupportIsoReport:
    """Compare Reg(P(G)) and Reg(exp(G)) through the support map.

    The subset side is found by classifying every nonempty subset, the
    measure side by translating Haar measures, so the two enumerations do
    not share a code path.
    """
    if G.order > max_order:
        raise ResourceLimitError(f"support check needs |G| <= {max_order}", G.order, max_order)
    measures = regular_measures(G)
    subset_side = [A for A in range(1, full_mask(G.order) + 1) if classify_regular_subset(G, A) is not None]
    supports = [support(m) for m in measures]
    bijective = len(set(supports)) == len(supports) and set(supports) == set(subset_side)
    coset_sum = sum(G.order // H.order for H in subgroups(G))
    failures = []
    for i, mu in enumerate(measures):
        for j, nu in enumerate(measures):
            if support(convolve(G, mu, nu)) != product_mask(G, supports[i], supports[j]):
                failures.append((supports[i], supports[j]))
    inverse_failures = []
    for mu in measures:
        nu = measure_inverse(G, mu)
        if convolve(G, convolve(G, mu, nu), mu) != mu or convolve(G, convolve(G, nu, mu), nu) != nu:
            inverse_failures.append(support(mu))
    return SupportIsoReport(str(G), len(measures), len(subset_side), coset_sum, bijective,
                            len(measures) ** 2, failures, inverse_failures)


def measure_grid(n: int, max_den: int) -> List[RationalMeasure]:
    """Every probability vector on n points whose weights share a denominator d <= max_den."""
    seen = set()
    for d in range(1, max_den + 1):
        # stars and bars: choose n-1 bar positions among d+n-1 slots
        for bars in combinations(range(d + n - 1), n - 1):
            counts = []
            prev = -1
            for b in bars:
                counts.append(b - prev - 1)
                prev = b
            counts.append(d + n - 1 - prev - 1)
            seen.add(tuple(Fraction(c, d) for c in counts))
    return [RationalMeasure(w) for w in sorted(seen)]


# text format ------------------------------------------------------------------

def parse_measure(text: str, n: int) -> RationalMeasure:
    """Lines ``index: num/den``; unlisted indices get weight zero."""
    w = [Fraction(0)] * n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError("expected 'index: num/den'", lineno)
        try:
            i = int(key)
            q = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot read {line!r}", lineno) from None
        if not 0 <= i < n:
            raise ParseError(f"index {i} outside [0,{n})", lineno)
        if q < 0:
            raise ParseError(f"negative weight {q}", lineno)
        w[i] += q
    if sum(w) != 1:
        raise ParseError(f"total mass is {sum(w)}, not 1")
    return RationalMeasure(tuple(w))


def serialize_measure(mu: RationalMeasure) -> str:
    return "".join(f"{i}: {w.numerator}/{w.denominator}\n" for i, w in enumerate(mu.weights) if w)
