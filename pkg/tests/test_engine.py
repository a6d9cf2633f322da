import numpy as np
import pytest

from estar.core import CapacityError, Partition, Transformation, compose, kernel_classes, set_partitions
from estar.engine import (
    Budget,
    SemigroupInstance,
    closure,
    enumerate_semigroup,
    filtered_sweep,
    greens_oracle,
    is_ideal,
    t_estar_size,
)

T = Transformation
E22 = Partition.from_sizes((2, 2))


def test_enumerate_t_sizes():
    assert len(enumerate_semigroup("T", Partition.universal(2))) == 4
    assert len(enumerate_semigroup("t", Partition.universal(4))) == 256


def test_t_estar_blocks_22_has_32_elements():
    # oracle: filtered n^n sweep, and the product formula
    swept = filtered_sweep("T_Estar", E22)
    assert len(swept) == 32
    assert t_estar_size(E22) == 2 * (2**2 * 2**2)
    S = enumerate_semigroup("T_Estar", E22)
    assert S.elements == swept
    assert enumerate_semigroup("regT", E22).elements == swept


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_product_construction_matches_sweep(n):
    for E in set_partitions(n):
        direct = enumerate_semigroup("T_Estar", E)
        assert direct.elements == filtered_sweep("T_Estar", E)
        assert enumerate_semigroup("regT", E).elements == direct.elements
        assert len(direct) == t_estar_size(E)
        if n <= 4:
            assert enumerate_semigroup("T_E", E).elements == filtered_sweep("T_E", E)


def test_elements_sorted_and_table_consistent():
    S = enumerate_semigroup("regT", Partition.from_sizes((2, 1)))
    assert list(S.elements) == sorted(S.elements)
    for i, a in enumerate(S.elements):
        for j, b in enumerate(S.elements):
            assert S.elements[S.table[i, j]] == compose(a, b)


def test_instance_rejects_non_closed():
    with pytest.raises(ValueError):
        SemigroupInstance(None, (T([0, 0, 1]), T([1, 2, 2])), "custom")  # product 1,1,2 missing


def test_instance_rejects_unsorted():
    with pytest.raises(ValueError):
        SemigroupInstance(None, (T([1, 0]), T([0, 1])), "custom")


def test_instance_json_round_trip():
    S = enumerate_semigroup("regT", E22)
    S2 = SemigroupInstance.from_json(S.to_json())
    assert S2.elements == S.elements and S2.E == S.E and S2.kind == "regT"


def test_capacity_errors():
    with pytest.raises(CapacityError, match="enumeration_n"):
        enumerate_semigroup("T", Partition.universal(8))
    with pytest.raises(CapacityError, match="max_elements"):
        enumerate_semigroup("T_Estar", Partition.from_sizes((3, 3)), Budget(max_elements=100))


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("SEMIGROUP_BUDGET", "enumeration_n=5,oracle_elements=10")
    b = Budget.from_env()
    assert b.enumeration_n == 5 and b.oracle_elements == 10 and b.ideal_principals == 64
    with pytest.raises(ValueError):
        Budget.from_env("bogus=3")


def test_closure_examples():
    assert closure([Transformation.identity(4)]).elements == (Transformation.identity(4),)
    assert set(closure([T([2, 3, 0, 1])]).elements) == {T([2, 3, 0, 1]), Transformation.identity(4)}
    assert set(closure([T([2, 2, 0, 0])]).elements) == {T([2, 2, 0, 0]), T([0, 0, 2, 2])}


def test_closure_idempotent():
    gens = [T([1, 2, 0, 0]), T([0, 0, 1, 3])]
    once = closure(gens)
    assert closure(once.elements).elements == once.elements


def test_closure_capacity():
    with pytest.raises(CapacityError):
        closure([T([1, 2, 3, 0]), T([1, 0, 2, 3]), T([0, 0, 2, 3])], budget=Budget(max_elements=50))


def test_greens_on_a_group_is_one_class():
    S = closure([T([1, 2, 0]), T([1, 0, 2])])
    assert len(S) == 6
    for rel in "LRHDJ":
        assert len(greens_oracle(S, rel).classes) == 1


def test_r_classes_match_kernel_census():
    S = enumerate_semigroup("regT", E22)
    R = greens_oracle(S, "R")
    assert len(R.classes) == len({kernel_classes(a) for a in S})
    assert len(R.classes) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_lattice_properties(n):
    for E in set_partitions(n):
        S = enumerate_semigroup("regT", E)
        G = {rel: greens_oracle(S, rel) for rel in "LRHDJ"}
        m = len(S)
        for i in range(m):
            for j in range(m):
                h = G["H"].related(i, j)
                assert h == (G["L"].related(i, j) and G["R"].related(i, j))
                if G["L"].related(i, j) or G["R"].related(i, j):
                    assert G["D"].related(i, j)
                assert G["D"].related(i, j) == G["J"].related(i, j)


def test_greens_json():
    S = enumerate_semigroup("regT", E22)
    data = greens_oracle(S, "d").to_json()
    assert data["relation"] == "D"
    assert sorted(i for c in data["classes"] for i in c) == list(range(32))


def test_greens_oracle_budget():
    S = enumerate_semigroup("regT", E22, Budget(oracle_elements=40))
    with pytest.raises(CapacityError):
        greens_oracle(SemigroupInstance(E22, S.elements, "regT", Budget(oracle_elements=10)), "L")


def test_is_ideal_examples():
    S = enumerate_semigroup("regT", E22)
    assert is_ideal(S, S.elements)
    assert not is_ideal(S, [Transformation.identity(4)])
    assert not is_ideal(S, [])
    constantish = [a for a in S if len(set(a)) == 2]
    assert is_ideal(S, constantish)


def test_table_dtype():
    S = enumerate_semigroup("regT", E22)
    assert S.table.shape == (32, 32) and np.issubdtype(S.table.dtype, np.integer)
