import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from funsemi import bruteforce
from funsemi.corpus import random_clifford
from funsemi.errors import AlgebraError, ParseError, ResourceLimitError
from funsemi.functor import superextension_semigroup
from funsemi.groups import group_by_name, make_cyclic
from funsemi.hyper import exp_semigroup
from funsemi.semigroups import (
    FiniteSemigroup, VirtualSemigroup, adjoin_identity, brandt_index, chain_semilattice, conjugate_idempotent_pairs,
    find_embedding, idempotents, inverse_table, inverses_of, is_clifford, is_commutative,
    is_inverse_by_criterion, is_inverse_semigroup, is_isomorphic, is_regular, left_zero, make_brandt,
    make_group_with_zero, make_strong_semilattice, maximal_subgroup, null_semigroup, parse_semigroup,
    principal_filter, regular_elements, right_zero, semigroup_direct_product, semigroup_of_group, semilattice_of,
    serialize_semigroup,
)


def corpus():
    c2 = make_cyclic(2)
    out = [
        semigroup_of_group(make_cyclic(4)),
        semigroup_of_group(group_by_name("S3")),
        make_brandt(c2, 2),
        make_brandt(make_cyclic(1), 3),
        make_group_with_zero(make_cyclic(4)),
        left_zero(2),
        right_zero(3),
        null_semigroup(2),
        chain_semilattice(3),
        adjoin_identity(semigroup_of_group(c2)),
        semigroup_direct_product(chain_semilattice(2), semigroup_of_group(c2)),
    ]
    rng = random.Random(1)
    out += [random_clifford(rng, max_elements=10).semigroup for _ in range(5)]
    return out


CORPUS = corpus()


def test_idempotents_examples(brandt22):
    assert idempotents(semigroup_of_group(group_by_name("S3"))) == [0]
    # zero and (a, e, a) for a in {0, 1}
    assert idempotents(brandt22) == [0, brandt_index(make_cyclic(2), 2, 0, 0, 0), brandt_index(make_cyclic(2), 2, 1, 0, 1)]
    assert idempotents(left_zero(2)) == [0, 1]


def test_regular_examples(brandt22):
    assert regular_elements(semigroup_of_group(make_cyclic(4))) == [0, 1, 2, 3]
    assert is_regular(brandt22)
    assert regular_elements(null_semigroup(2)) == [0]


def test_inverse_examples(brandt22):
    G = semigroup_of_group(make_cyclic(4))
    assert [inverses_of(G, x) for x in range(4)] == [[0], [3], [2], [1]]
    assert is_inverse_semigroup(G)
    lz = left_zero(2)
    assert inverses_of(lz, 0) == [0, 1] and inverses_of(lz, 1) == [0, 1]
    assert not is_inverse_semigroup(lz)
    assert is_inverse_semigroup(brandt22)
    with pytest.raises(AlgebraError):
        inverse_table(lz)


@pytest.mark.parametrize("S", CORPUS, ids=str)
def test_inverse_criterion_agrees(S):
    assert is_inverse_semigroup(S) == is_inverse_by_criterion(S)


def test_clifford_examples(brandt22):
    assert is_clifford(semigroup_of_group(group_by_name("Q8")))
    assert is_clifford(chain_semilattice(4))
    assert not is_clifford(brandt22)
    # (0, e, 1) lies in no subgroup: x^2 = 0
    x = brandt_index(make_cyclic(2), 2, 0, 0, 1)
    assert brandt22.mul(x, x) == 0


def test_filters():
    G = semigroup_of_group(make_cyclic(3))
    assert principal_filter(G, 0) == [0]
    chain = chain_semilattice(3)
    assert principal_filter(chain, 0) == [0, 1, 2]
    c2z = make_group_with_zero(make_cyclic(2))
    assert principal_filter(c2z, 2) == [0, 2]
    with pytest.raises(AlgebraError):
        principal_filter(c2z, 1)


def test_semilattice_order():
    L = semilattice_of(chain_semilattice(3))
    assert L.members == (0, 1, 2)
    assert L.leq(0, 2) and not L.leq(2, 0)
    assert L.hasse_edges() == [(0, 1), (1, 2)]
    with pytest.raises(AlgebraError):
        semilattice_of(left_zero(2))


def test_maximal_subgroup_examples():
    G = make_cyclic(4)
    H = maximal_subgroup(semigroup_of_group(G), 0)
    assert H.group.table == G.table
    c4z = make_group_with_zero(G)
    assert maximal_subgroup(c4z, 0).group.order == 4
    assert maximal_subgroup(c4z, 4).group.order == 1
    with pytest.raises(AlgebraError):
        maximal_subgroup(c4z, 1)


def test_maximal_subgroup_of_lambda_c4_unit_is_c4():
    lam = superextension_semigroup(semigroup_of_group(make_cyclic(4)))
    unit = lam.unit_image[0]
    H = maximal_subgroup(lam.semigroup, unit).group
    assert H.order == 4
    assert any(len({_power(H, g, k) for k in range(1, 5)}) == 4 for g in range(4))


def _power(H, g, k):
    y = g
    for _ in range(k - 1):
        y = H.table[y][g]
    return y


@pytest.mark.parametrize("S", [s for s in CORPUS if is_inverse_semigroup(s) and is_clifford(s)], ids=str)
def test_clifford_union_of_maximal_subgroups(S):
    seen = set()
    for e in idempotents(S):
        members = set(maximal_subgroup(S, e).embedding)
        assert not members & seen
        seen |= members
    assert seen == set(range(S.order))


def test_conjugate_pairs(brandt22):
    assert conjugate_idempotent_pairs(semigroup_of_group(make_cyclic(5))) == []
    e = brandt_index(make_cyclic(2), 2, 0, 0, 0)
    f = brandt_index(make_cyclic(2), 2, 1, 0, 1)
    z = brandt_index(make_cyclic(2), 2, 0, 0, 1)
    inv = inverse_table(brandt22)
    m = brandt22.mul
    assert m(m(z, f), inv[z]) == e and m(m(inv[z], e), z) == f
    assert [(a, b) for a, b, _ in conjugate_idempotent_pairs(brandt22)] == [(e, f)]
    with pytest.raises(AlgebraError):
        conjugate_idempotent_pairs(left_zero(2))


@pytest.mark.parametrize("S", [s for s in CORPUS if is_inverse_semigroup(s) and is_commutative(s)], ids=str)
def test_commutative_inverse_has_no_distinct_conjugates(S):
    # brute force over all z rather than assuming
    inv = inverse_table(S)
    E = idempotents(S)
    m = S.mul
    for e in E:
        for f in E:
            if e != f:
                assert not any(m(m(z, f), inv[z]) == e and m(m(inv[z], e), z) == f for z in range(S.order))
    assert conjugate_idempotent_pairs(S) == []


def test_brandt_examples():
    b11 = make_brandt(make_cyclic(1), 1)
    assert b11.order == 2 and idempotents(b11) == [0, 1]
    c2 = make_cyclic(2)
    b = make_brandt(c2, 2)
    assert b.order == 9 and len(idempotents(b)) == 3
    for h, h2 in product(range(2), repeat=2):
        assert b.mul(brandt_index(c2, 2, 0, h, 1), brandt_index(c2, 2, 1, h2, 0)) == brandt_index(c2, 2, 0, c2.table[h][h2], 0)
        assert b.mul(brandt_index(c2, 2, 0, h, 1), brandt_index(c2, 2, 0, h2, 1)) == 0


@pytest.mark.parametrize("H,k", [(make_cyclic(2), 2), (make_cyclic(3), 2), (make_cyclic(1), 3), (make_cyclic(2), 3)])
def test_brandt_offdiagonal_squares_vanish(H, k):
    B = make_brandt(H, k)
    inv = inverse_table(B)
    E = set(idempotents(B))
    for a, b in product(range(k), repeat=2):
        for g in range(H.order):
            x = brandt_index(H, k, a, g, b)
            x2xi = B.mul(B.mul(x, x), inv[x])
            if a != b:
                assert B.mul(x, x) == 0 and x2xi == 0
            else:
                # diagonal elements live in a copy of H
                assert x2xi == x and ((x in E) == (g == H.identity))
    assert FiniteSemigroup.from_table(B.table)  # associative


def test_group_with_zero_examples():
    c1z = make_group_with_zero(make_cyclic(1))
    assert c1z.table == ((0, 1), (1, 1))
    c2z = make_group_with_zero(make_cyclic(2))
    assert c2z.order == 3 and idempotents(c2z) == [0, 2]
    c4z = make_group_with_zero(make_cyclic(4))
    assert is_inverse_semigroup(c4z) and is_clifford(c4z)


def test_strong_semilattice_examples():
    c1, c2 = make_cyclic(1), make_cyclic(2)
    one = FiniteSemigroup(((0,),))
    S = make_strong_semilattice(one, [make_cyclic(3)], {}).semigroup
    assert S.table == make_cyclic(3).table
    chain = chain_semilattice(2)  # 0 < 1
    S = make_strong_semilattice(chain, [c1, c2], {(1, 0): [0, 0]}).semigroup
    assert is_isomorphic(S, make_group_with_zero(c2))
    S = make_strong_semilattice(chain, [c2, c2], {(1, 0): [0, 1]}).semigroup
    assert S.order == 4 and is_clifford(S) and is_inverse_semigroup(S)
    assert len(idempotents(S)) == 2


def test_strong_semilattice_rejects_bad_links():
    c2, c4 = make_cyclic(2), make_cyclic(4)
    chain = chain_semilattice(2)
    with pytest.raises(AlgebraError, match="homomorphism"):
        make_strong_semilattice(chain, [c2, c2], {(1, 0): [1, 0]})
    with pytest.raises(AlgebraError, match="missing link"):
        make_strong_semilattice(chain, [c2, c2], {})
    chain3 = chain_semilattice(3)
    with pytest.raises(AlgebraError, match=r"triple \(0,1,2\)"):
        # C4 -> C2 -> C2 composed differs from the direct C4 -> C2 map
        make_strong_semilattice(chain3, [c2, c2, c4], {(2, 1): [0, 1, 0, 1], (1, 0): [0, 1], (2, 0): [0, 0, 0, 0]})


def test_virtual_semigroup_matches_table():
    G = make_cyclic(3)
    T = exp_semigroup(G)
    V = VirtualSemigroup(T.order, T.mul, "v")
    assert V.materialize().table == T.table
    assert V.associativity_witness() is None
    with pytest.raises(ResourceLimitError):
        VirtualSemigroup(300, lambda a, b: 0).materialize()


def test_virtual_semigroup_random_associativity_check():
    # 300 elements: sampled check; a left-zero band is associative, a "min+1" magma is not
    assert VirtualSemigroup(300, lambda a, b: a).associativity_witness(samples=2000) is None
    assert VirtualSemigroup(300, lambda a, b: min(a + 1, b) % 300).associativity_witness(samples=2000) is not None


def test_parse_semigroup_round_trip(brandt22):
    assert parse_semigroup(serialize_semigroup(brandt22)).table == brandt22.table
    with pytest.raises(ParseError, match="not associative"):
        parse_semigroup("2\n1 0\n0 0\n")


# embedding search ----------------------------------------------------------------

def test_find_embedding_examples():
    C4 = semigroup_of_group(make_cyclic(4))
    assert find_embedding(C4, C4) == (0, 1, 2, 3)
    C2 = semigroup_of_group(make_cyclic(2))
    assert find_embedding(C2, C4) == (0, 2)


def test_find_embedding_bound():
    with pytest.raises(ResourceLimitError):
        find_embedding(chain_semilattice(17), chain_semilattice(20))


def _small_semigroups():
    out = [chain_semilattice(k) for k in (1, 2, 3)]
    out += [left_zero(2), right_zero(2), null_semigroup(2), null_semigroup(3)]
    out += [semigroup_of_group(make_cyclic(k)) for k in (1, 2, 3, 4)]
    out += [make_group_with_zero(make_cyclic(1)), make_group_with_zero(make_cyclic(2)), make_brandt(make_cyclic(1), 1)]
    out += [semigroup_of_group(group_by_name("K4")), adjoin_identity(left_zero(2))]
    return out


SMALL = _small_semigroups()
TARGETS = [s for s in SMALL] + [exp_semigroup(make_cyclic(2)), make_group_with_zero(make_cyclic(4)),
                                semigroup_direct_product(chain_semilattice(2), semigroup_of_group(make_cyclic(3))),
                                make_brandt(make_cyclic(1), 2), semigroup_of_group(make_cyclic(8))]


@pytest.mark.parametrize("S", [s for s in SMALL if s.order <= 4], ids=str)
def test_find_embedding_is_complete(S):
    for T in TARGETS:
        if T.order > 8:
            continue
        found = find_embedding(S, T)
        assert (found is not None) == bruteforce.all_maps_embedding_exists(S, T), (str(S), str(T))
        if found is not None:
            assert len(set(found)) == S.order
            assert all(found[S.mul(x, y)] == T.mul(found[x], found[y]) for x in range(S.order) for y in range(S.order))


def test_isomorphism_is_an_equivalence():
    items = [semigroup_of_group(group_by_name("K4")), semigroup_of_group(make_cyclic(4)),
             semigroup_direct_product(semigroup_of_group(make_cyclic(2)), semigroup_of_group(make_cyclic(2))),
             make_group_with_zero(make_cyclic(3)),
             semigroup_direct_product(chain_semilattice(2), semigroup_of_group(make_cyclic(2)))]
    for a in items:
        assert is_isomorphic(a, a)
        for b in items:
            assert is_isomorphic(a, b) == is_isomorphic(b, a)
            for c in items:
                if is_isomorphic(a, b) and is_isomorphic(b, c):
                    assert is_isomorphic(a, c)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_isomorphism_survives_relabelling(seed):
    rng = random.Random(seed)
    S = random_clifford(rng, max_elements=10).semigroup
    perm = list(range(S.order))
    rng.shuffle(perm)
    inv = {p: i for i, p in enumerate(perm)}
    T = FiniteSemigroup(tuple(tuple(perm[S.mul(inv[a], inv[b])] for b in range(S.order)) for a in range(S.order)))
    assert is_isomorphic(S, T)
