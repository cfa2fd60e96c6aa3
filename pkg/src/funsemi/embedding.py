"""Embedding finite Clifford inverse semigroups into exp(G) and P(G), and
certificates of non-embeddability.

Pipeline for a Clifford inverse S with idempotents E:

    S  ->  prod_e H_e^0  ->  prod_e exp(H~_e)  ->  exp(prod_e H~_e)  (--supp^-1-->  P(prod_e H~_e))

where H~_e is H_e when nontrivial and C2 otherwise, the zero of H_e^0 goes
to the full group H~_e, and a tuple of subsets becomes their product set.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from .bitsets import braces, full_mask, members
from .convolution import convolve, support, uniform_on
from .errors import AlgebraError, ResourceLimitError
from .groups import FiniteGroup, make_cyclic, product_index, product_of_groups
from .hyper import SubsetElement, exp_semigroup, subset_product
from .semigroups import (
    FiniteSemigroup, MaximalSubgroup, conjugate_idempotent_pairs, find_embedding, idempotents,
    inverse_table, inverses_of, is_clifford, is_inverse_semigroup, make_group_with_zero,
    make_strong_semilattice, maximal_subgroup, regular_elements,
)

DEFAULT_MAX_PRODUCT_ORDER = 1024


@dataclass
class SemigroupMap:
    source: Any
    images: Tuple[Any, ...]
    product: Callable[[Any, Any], Any]
    target: str = ""
    render: Callable[[Any], str] = str

    def __call__(self, x: int):
        return self.images[x]


@dataclass
class Verification:
    ok: bool
    reason: str = ""
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.ok


def verify_embedding(m: SemigroupMap) -> Verification:
    """Injectivity, then images[xy] == images[x] * images[y] over all pairs."""
    S = m.source
    seen: Dict[Any, int] = {}
    for x, im in enumerate(m.images):
        if im in seen:
            return Verification(False, "not injective", (seen[im], x))
        seen[im] = x
    for x in range(S.order):
        for y in range(S.order):
            if m.images[S.mul(x, y)] != m.product(m.images[x], m.images[y]):
                return Verification(False, "not a homomorphism", (x, y))
    return Verification(True)


def table_map(source, target, images: Sequence[int]) -> SemigroupMap:
    return SemigroupMap(source, tuple(images), target.mul, str(target))


# Clifford decomposition --------------------------------------------------------

@dataclass
class CliffordDecomposition:
    source: Any
    idempotents: List[int]  # E, as indices of S
    semilattice: FiniteSemigroup  # meet table on positions 0..|E|-1
    components: List[MaximalSubgroup]  # H_e per position
    links: Dict[Tuple[int, int], Tuple[int, ...]]  # (f, e) positions, e < f: H_f -> H_e
    owner: List[Tuple[int, int]]  # x -> (position of e with x in H_e, index in H_e)

    def leq(self, e: int, f: int) -> bool:
        return self.semilattice.mul(e, f) == e

    def reassemble(self) -> FiniteSemigroup:
        return make_strong_semilattice(self.semilattice, [c.group for c in self.components], self.links).semigroup


def clifford_components(S) -> CliffordDecomposition:
    if not is_inverse_semigroup(S) or not is_clifford(S):
        raise AlgebraError(f"{S} is not a Clifford inverse semigroup")
    inv = inverse_table(S)
    E = idempotents(S)
    pos = {e: i for i, e in enumerate(E)}
    meet = FiniteSemigroup(tuple(tuple(pos[S.mul(e, f)] for f in E) for e in E), "E")
    comps = [maximal_subgroup(S, e) for e in E]
    owner: List[Optional[Tuple[int, int]]] = [None] * S.order
    for i, c in enumerate(comps):
        for k, x in enumerate(c.embedding):
            owner[x] = (i, k)
    assert all(o is not None for o in owner)
    assert all(S.mul(x, inv[x]) == E[owner[x][0]] for x in range(S.order))
    links = {}
    for f, cf in enumerate(comps):
        for e, ce in enumerate(comps):
            if e != f and meet.mul(e, f) == e:
                where = {x: k for k, x in enumerate(ce.embedding)}
                links[f, e] = tuple(where[S.mul(x, E[e])] for x in cf.embedding)
    return CliffordDecomposition(S, E, meet, comps, links, owner)


# stage 1: S -> prod H_e^0 ------------------------------------------------------

ZERO = None  # the adjoined zero in each coordinate


def embed_into_product_h0(S, dec: Optional[CliffordDecomposition] = None) -> SemigroupMap:
    """x -> (phi_e(x))_e with phi_e(x) = xe if e <= x^{-1}x, else 0."""
    dec = dec or clifford_components(S)
    E = dec.idempotents
    images = []
    for x in range(S.order):
        f = dec.owner[x][0]
        coords = []
        for e, comp in enumerate(dec.components):
            if dec.leq(e, f):
                coords.append(comp.index_of(S.mul(x, E[e])))
            else:
                coords.append(ZERO)
        images.append(tuple(coords))
    groups = [c.group for c in dec.components]

    def prod(a, b):
        return tuple(ZERO if p is ZERO or q is ZERO else H.table[p][q] for H, p, q in zip(groups, a, b))

    def render(t):
        return "(" + ", ".join("0" if c is ZERO else str(c) for c in t) + ")"

    return SemigroupMap(S, tuple(images), prod, "prod H_e^0", render)


# stage 2: H^0 -> exp(H~) -------------------------------------------------------

def nontrivial_cover(H: FiniteGroup) -> FiniteGroup:
    """H itself when |H| >= 2, else C2 (which contains the trivial group as {0})."""
    return H if H.order >= 2 else make_cyclic(2)


def embed_h0_into_exp(H: FiniteGroup) -> SemigroupMap:
    """H^0 -> exp(H~): h -> {h}, 0 -> H~ (the invariant element)."""
    Ht = nontrivial_cover(H)
    H0 = make_group_with_zero(H)
    images = [SubsetElement(Ht.order, 1 << h) for h in range(H.order)]
    images.append(SubsetElement(Ht.order, full_mask(Ht.order)))
    return SemigroupMap(H0, tuple(images), lambda A, B: subset_product(Ht, A, B), f"exp({Ht})")


# stage 3: into exp(G) and P(G) -------------------------------------------------

@dataclass
class ProductTarget:
    group: FiniteGroup
    factors: List[FiniteGroup]
    coordinates: List[Tuple[int, ...]]  # x -> per-factor subset masks


def _product_target(S, max_group_order: int) -> ProductTarget:
    dec = clifford_components(S)
    stage1 = embed_into_product_h0(S, dec)
    factors = [nontrivial_cover(c.group) for c in dec.components]
    required = 1
    for H in factors:
        required *= H.order
    if required > max_group_order:
        raise ResourceLimitError(
            f"target group prod H~_e has order {required}, above the bound {max_group_order}",
            required, max_group_order)
    G = product_of_groups(factors, "x".join(str(H) for H in factors))
    coords = []
    for t in stage1.images:
        coords.append(tuple(full_mask(H.order) if c is ZERO else 1 << c for H, c in zip(factors, t)))
    return ProductTarget(G, factors, coords)


def _product_subset(target: ProductTarget, coords: Tuple[int, ...]) -> int:
    mask = 0
    for pt in cartesian(*(members(c) for c in coords)):
        mask |= 1 << product_index(target.factors, pt)
    return mask


@dataclass
class PipelineEmbedding:
    map: SemigroupMap
    target: ProductTarget
    verification: Verification = field(default_factory=lambda: Verification(False, "not verified"))


def assemble_exp_embedding(S, max_group_order: int = DEFAULT_MAX_PRODUCT_ORDER) -> PipelineEmbedding:
    target = _product_target(S, max_group_order)
    G = target.group
    images = tuple(SubsetElement(G.order, _product_subset(target, c)) for c in target.coordinates)

    def render(A):
        i = images.index(A)
        return " x ".join(braces(c) for c in target.coordinates[i])

    m = SemigroupMap(S, images, lambda A, B: subset_product(G, A, B), f"exp({G})", render)
    return PipelineEmbedding(m, target, verify_embedding(m))


def assemble_measure_embedding(S, max_group_order: int = DEFAULT_MAX_PRODUCT_ORDER) -> PipelineEmbedding:
    """Same pipeline, then each coset K goes to the uniform measure on K."""
    target = _product_target(S, max_group_order)
    G = target.group
    images = tuple(uniform_on(G.order, _product_subset(target, c)) for c in target.coordinates)
    m = SemigroupMap(S, images, lambda a, b: convolve(G, a, b), f"P({G})")
    return PipelineEmbedding(m, target, verify_embedding(m))


def supports_commute(exp_emb: PipelineEmbedding, measure_emb: PipelineEmbedding) -> bool:
    """supp(measure image of x) == exp image of x for every x."""
    return all(support(mu) == A.bits for mu, A in zip(measure_emb.map.images, exp_emb.map.images))


# obstruction certificates --------------------------------------------------------

PASS, FAIL, VACUOUS, NOT_APPLICABLE = "PASS", "FAIL", "VACUOUS", "N/A"


@dataclass
class Verdict:
    condition: str
    status: str
    detail: str = ""
    witness: Optional[Dict[str, Any]] = None

    def as_dict(self):
        return {"condition": self.condition, "status": self.status, "detail": self.detail, "witness": self.witness}


@dataclass
class ObstructionReport:
    semigroup: str
    regular: bool
    nonregular_witness: Optional[int]
    verdicts: List[Verdict]

    @property
    def certificate(self) -> bool:
        """True when some condition fails, which rules out any embedding into exp(G) or P(G)."""
        return any(v.status == FAIL for v in self.verdicts)

    def as_dict(self):
        return {
            "semigroup": self.semigroup,
            "regular": self.regular,
            "nonregular_witness": self.nonregular_witness,
            "verdicts": [v.as_dict() for v in self.verdicts],
            "certificate": self.certificate,
            "note": "all PASS is necessary, not sufficient, for embeddability",
        }


def obstruction_report(S) -> ObstructionReport:
    n = S.order
    reg = set(regular_elements(S))
    if len(reg) < n:
        bad = min(set(range(n)) - reg)
        return ObstructionReport(str(S), False, bad, [
            Verdict("1", NOT_APPLICABLE, "semigroup is not regular"),
            Verdict("2", NOT_APPLICABLE, "semigroup is not regular"),
            Verdict("3", NOT_APPLICABLE, "semigroup is not regular"),
            Verdict("4", NOT_APPLICABLE, "semigroup is not regular"),
        ])
    verdicts = []
    if is_inverse_semigroup(S):
        verdicts.append(Verdict("1", PASS, "inverse semigroup"))
    else:
        for x in range(n):
            invs = inverses_of(S, x)
            if len(invs) != 1:
                break
        verdicts.append(Verdict("1", FAIL, f"element {x} has {len(invs)} inverses",
                                {"x": x, "inverses": invs}))
    verdicts.append(Verdict("2", VACUOUS, "principal filters of a finite semilattice are finite, hence totally disconnected"))
    if verdicts[0].status != PASS:
        verdicts.append(Verdict("3", NOT_APPLICABLE, "needs unique inverses"))
        verdicts.append(Verdict("4", NOT_APPLICABLE, "needs unique inverses"))
        return ObstructionReport(str(S), True, None, verdicts)

    inv = inverse_table(S)
    m = S.mul
    v3 = Verdict("3", PASS, "x idempotent <=> x^2 x^-1 idempotent for all x")
    for x in range(n):
        y = m(m(x, x), inv[x])
        if (m(y, y) == y) != (m(x, x) == x):
            v3 = Verdict("3", FAIL, f"x={x}: x^2x^-1={y}, idempotent={m(y, y) == y}, x idempotent={m(x, x) == x}",
                         {"x": x, "x2xinv": y})
            break
    verdicts.append(v3)

    v4 = Verdict("4", PASS, "distinct conjugate idempotents are incomparable")
    for e, f, z in conjugate_idempotent_pairs(S):
        ef = m(e, f)
        if ef in (e, f):
            v4 = Verdict("4", FAIL, f"idempotents {e},{f} are conjugate via {z} and comparable",
                         {"e": e, "f": f, "z": z})
            break
    verdicts.append(v4)
    return ObstructionReport(str(S), True, None, verdicts)


def recheck_witness(S, verdict: Dict[str, Any]) -> bool:
    """Re-validate a FAIL verdict from its witness alone, against the table of S."""
    w = verdict.get("witness") or {}
    m = S.mul
    cond = verdict["condition"]
    if cond == "1":
        x = w["x"]
        invs = [y for y in w["inverses"] if m(m(x, y), x) == x and m(m(y, x), y) == y]
        return len(set(invs)) == len(w["inverses"]) != 1
    if cond == "3":
        x, y = w["x"], w["x2xinv"]
        # y is x^2 times some inverse of x; uniqueness of that inverse is condition 1
        invs = inverses_of(S, x)
        return (len(invs) == 1 and m(m(x, x), invs[0]) == y
                and (m(y, y) == y) != (m(x, x) == x))
    if cond == "4":
        e, f, z = w["e"], w["f"], w["z"]
        invs = inverses_of(S, z)
        if len(invs) != 1:
            return False
        zi = invs[0]
        return (e != f and m(e, e) == e and m(f, f) == f
                and m(m(z, f), zi) == e and m(m(zi, e), z) == f and m(e, f) in (e, f))
    return False


# decision -------------------------------------------------------------------------

EMBEDDED, OBSTRUCTED, INCONCLUSIVE = 0, 2, 3


@dataclass
class Decision:
    code: int
    report: ObstructionReport
    embedding: Optional[PipelineEmbedding] = None
    brute_force: List[Dict[str, Any]] = field(default_factory=list)


def decide(S, target: str = "exp", max_group_order: int = DEFAULT_MAX_PRODUCT_ORDER,
           brute_force_groups: Sequence[FiniteGroup] = ()) -> Decision:
    """Embed when S is Clifford inverse, certify impossibility when a condition fails, else search small targets."""
    report = obstruction_report(S)
    if report.certificate:
        return Decision(OBSTRUCTED, report)
    if report.regular and is_inverse_semigroup(S) and is_clifford(S):
        build = assemble_exp_embedding if target == "exp" else assemble_measure_embedding
        emb = build(S, max_group_order)
        if not emb.verification:
            raise RuntimeError(f"pipeline produced an invalid map: {emb.verification}")
        return Decision(EMBEDDED, report, emb)
    results = []
    for G in brute_force_groups:
        T = exp_semigroup(G)
        try:
            found = find_embedding(S, T)
        except ResourceLimitError as exc:
            results.append({"group": str(G), "result": f"skipped: {exc}"})
            continue
        results.append({"group": str(G), "result": None if found is None else list(found)})
        if found is not None:
            images = tuple(SubsetElement(G.order, i + 1) for i in found)
            m = SemigroupMap(S, images, lambda A, B, G=G: subset_product(G, A, B), f"exp({G})")
            emb = PipelineEmbedding(m, ProductTarget(G, [G], [(A.bits,) for A in images]), verify_embedding(m))
            return Decision(EMBEDDED, report, emb, results)
    return Decision(INCONCLUSIVE, report, None, results)
