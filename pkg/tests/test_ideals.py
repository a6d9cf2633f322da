import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from estar import ideals
from estar.core import Partition, PreconditionError, Transformation, compose
from estar.engine import enumerate_semigroup, is_ideal, two_sided_ideal
from estar.ideals import (
    CardinalVector,
    bound_vector,
    card_vector,
    construct_factorization,
    divides,
    dominance_bruteforce,
    dominance_exists,
    enumerate_ideals,
    ideals_bruteforce,
    is_principal,
    is_principal_bruteforce,
    kernel_direct,
    kernel_q2,
    principal_ideal,
    q_set,
)

T = Transformation
E22 = Partition.from_sizes((2, 2))
E23 = Partition.from_sizes((2, 3))


def test_card_vector_examples():
    assert card_vector(T([0, 1, 2, 3]), E22).values == (2, 2)
    assert card_vector(T([2, 2, 0, 1]), E22).values == (1, 2)
    assert card_vector(T([0, 0, 2, 2]), E22).successor().values == (2, 2)


def test_bound_vector_validation():
    assert bound_vector([3, 2], E22).values == (3, 2)
    with pytest.raises(ValueError, match="entry 1"):
        bound_vector([2, 4], E22)
    with pytest.raises(ValueError, match="entry 0"):
        bound_vector([1, 2], E22)
    with pytest.raises(ValueError):
        bound_vector([2], E22)


def test_dominance_examples():
    assert dominance_exists((1, 2), (2, 1)) == (True, (1, 0))
    assert dominance_exists((1, 1), (2, 2), strict=True) == (True, (0, 1))
    assert dominance_exists((2, 2), (2, 2), strict=True) == (False, None)
    assert dominance_exists((3, 1), (2, 2))[0] is False
    with pytest.raises(ValueError):
        dominance_exists((1,), (1, 2))


def _vec(k):
    return st.lists(st.integers(1, 6), min_size=k, max_size=k)


@settings(max_examples=400)
@given(st.integers(1, 6).flatmap(lambda k: st.tuples(_vec(k), _vec(k), st.booleans())))
def test_dominance_matches_bruteforce(case):
    a, b, strict = case
    ok, rho = dominance_exists(a, b, strict)
    assert ok == dominance_bruteforce(a, b, strict)[0]
    if ok:
        assert sorted(rho) == list(range(len(a)))
        assert all((x < b[r]) if strict else (x <= b[r]) for x, r in zip(a, rho))


def test_divides_examples():
    assert divides(T([0, 0, 2, 2]), T([0, 1, 2, 3]), E22)
    assert not divides(T([0, 1, 2, 3]), T([0, 0, 2, 2]), E22)
    assert divides(T([2, 2, 0, 1]), T([0, 1, 3, 3]), E22)  # (1,2) vs (2,1) after swapping blocks


def test_construct_factorization_example():
    a, b = T([0, 0, 2, 2]), T([2, 3, 0, 1])
    lam, mu = construct_factorization(a, b, E22)
    assert compose(compose(lam, b), mu) == a
    with pytest.raises(PreconditionError):
        construct_factorization(b, a, E22)


@pytest.mark.parametrize("E", [E22, Partition.from_sizes((3, 1)), Partition.from_sizes((2, 1, 1))])
def test_divides_matches_table(E):
    S = enumerate_semigroup("regT", E)
    for j, b in enumerate(S.elements):
        below = two_sided_ideal(S, j)
        for i, a in enumerate(S.elements):
            assert divides(a, b, E) == (i in below)
            if i in below:
                lam, mu = construct_factorization(a, b, E)
                assert compose(compose(lam, b), mu) == a


def test_q_set_examples():
    assert len(q_set((2, 2), E22)) == 8  # the kernel
    assert len(q_set((3, 3), E22)) == 32
    assert q_set((3, 2), E22).same_set(q_set((2, 3), E22))


def test_q_sets_are_ideals():
    S = enumerate_semigroup("regT", E23)
    for r in ideals.all_bound_vectors(E23):
        assert is_ideal(S, q_set(r, E23).elements)


def test_principal_ideal_equals_q_of_successor_and_table():
    S = enumerate_semigroup("regT", E22)
    for g in S:
        p = principal_ideal(g, E22)
        assert p.as_set == q_set(card_vector(g, E22).successor(), E22).as_set
        assert sorted(S.indices(p.elements)) == sorted(two_sided_ideal(S, g))


def test_enumerate_ideals_matches_bruteforce_22():
    S = enumerate_semigroup("regT", E22)
    brute = ideals_bruteforce(S)
    ours = [frozenset(S.indices(I.elements)) for I in enumerate_ideals(E22)]
    assert sorted(ours, key=sorted) == sorted(brute, key=sorted)
    assert [len(I) for I in enumerate_ideals(E22)] == [8, 24, 32]  # ranks: 8 of (1,1), 16 mixed, 8 bijective


def test_principality_22_23():
    for E in (E22, E23):
        S = enumerate_semigroup("regT", E)
        for idx in ideals_bruteforce(S):
            ideal = [S.elements[i] for i in idx]
            ours, gen = is_principal(ideal, E)
            brute, _ = is_principal_bruteforce(S, ideal)
            assert ours == brute
            if ours:
                assert principal_ideal(gen, E).same_set(ideal)


def test_non_principal_union_exists_23():
    # Q(3,2) u Q(2,4) style unions: incomparable profiles give non-principal ideals
    found = [I for I in enumerate_ideals(E23) if not is_principal(I.elements, E23)[0]]
    assert found
    assert all(I.provenance == "union" for I in found)


def test_kernel_q2_examples():
    K = kernel_q2(E22)
    assert len(K) == 8 and K.elements == kernel_direct(E22)
    assert T([0, 0, 2, 2]) in K and T([2, 2, 0, 0]) in K
    assert T([0, 1, 2, 2]) not in K
    E = Partition.from_sizes((2, 1, 1))
    assert len(kernel_q2(E)) == 6 * 2


def test_kernel_is_smallest_ideal():
    for E in (E22, E23, Partition.from_sizes((3,))):
        K = kernel_q2(E).as_set
        all_ideals = enumerate_ideals(E)
        assert all(K <= I.as_set for I in all_ideals)
        assert K in {I.as_set for I in all_ideals}


def test_ideal_json_uses_indices():
    S = enumerate_semigroup("regT", E22)
    data = kernel_q2(E22).to_json(S)
    assert data["size"] == 8 and data["provenance"] == "Q-of-r"
    assert [S.elements[i] for i in data["elements"]] == list(kernel_q2(E22).elements)


def test_cardinal_vector_kind():
    v = CardinalVector((1, 2))
    assert v.kind == "image-sizes" and v.successor().kind == "bound-vector"
