from math import factorial, prod

import pytest

from estar.core import Partition, PreconditionError, Transformation, compose
from estar.ideals import kernel_direct, kernel_q2
from estar.kernel import (
    h_class_decomposition,
    is_idempotent_in_q2,
    is_regular_and_left_cancellative,
    is_right_group,
    iso_to_full_transformation_criterion,
    non_idempotent_kernel_element,
    right_group_failure,
)
from estar.tables import chain_semilattice, left_zero, right_zero

T = Transformation
E22 = Partition.from_sizes((2, 2))
SHAPES = [(1,), (3,), (2, 2), (2, 1), (3, 2), (1, 1, 1), (2, 2, 2), (3, 1, 1)]


@pytest.mark.parametrize("sizes", SHAPES)
def test_kernel_is_right_group(sizes):
    E = Partition.from_sizes(sizes)
    K = kernel_q2(E)
    assert len(K) == factorial(len(sizes)) * prod(sizes)
    assert is_right_group(K.elements)
    assert is_regular_and_left_cancellative(K.elements)


def test_right_group_definitions_on_tables():
    assert is_right_group(right_zero(3))
    assert not is_right_group(left_zero(2))
    a, b, count = right_group_failure(left_zero(2))
    assert count != 1
    assert not is_regular_and_left_cancellative(left_zero(2))
    assert not is_right_group(chain_semilattice(2))


def test_idempotents_in_kernel():
    assert is_idempotent_in_q2(T([0, 0, 3, 3]), E22)
    assert not is_idempotent_in_q2(T([2, 2, 0, 0]), E22)
    with pytest.raises(PreconditionError):
        is_idempotent_in_q2(T([0, 1, 2, 2]), E22)


@pytest.mark.parametrize("sizes", SHAPES)
def test_h_class_decomposition(sizes):
    E = Partition.from_sizes(sizes)
    groups = h_class_decomposition(E)
    k = len(sizes)
    assert len(groups) == prod(sizes)
    assert all(len(g.elements) == factorial(k) for g in groups)
    idem = [a for a in kernel_direct(E) if is_idempotent_in_q2(a, E)]
    assert len(idem) == prod(sizes)
    assert {g.identity for g in groups} == set(idem)
    for g in groups:
        # restriction to the cross-section is a bijection onto Sym(cross-section)
        assert len({g.restriction(a) for a in g.elements}) == factorial(k)
        for a in g.elements:
            assert compose(g.identity, a) == a == compose(a, g.identity)


def test_h_class_seven_blocks_sampled():
    E = Partition.from_sizes((1,) * 7)
    groups = h_class_decomposition(E, seed=3)
    assert len(groups) == 1 and len(groups[0].elements) == 5040 and groups[0].iso is None


def test_non_idempotent_witness():
    assert non_idempotent_kernel_element(E22) == T([2, 2, 0, 0])
    assert non_idempotent_kernel_element(Partition.from_sizes((4,))) is None


@pytest.mark.parametrize("sizes,single", [((3,), True), ((1,), True), ((2, 2), False), ((1, 1), False), ((2, 1, 1), False)])
def test_iso_criterion(sizes, single):
    res = iso_to_full_transformation_criterion(Partition.from_sizes(sizes))
    assert res.holds is single and res.all_kernel_idempotent is single
    assert (res.witness is None) is single
