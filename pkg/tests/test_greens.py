import pytest

from estar import greens
from estar.core import Partition, PreconditionError, Transformation
from estar.engine import enumerate_semigroup, greens_oracle
from estar.greens import d_related, h_related, j_related, j_witnesses, l_related, r_related

T = Transformation
E22 = Partition.from_sizes((2, 2))


def test_l_and_r_examples():
    assert l_related(T([0, 0, 2, 2]), T([2, 2, 0, 0]), E22)  # same image {0, 2}
    assert not l_related(T([0, 0, 2, 2]), T([1, 1, 3, 3]), E22)
    assert r_related(T([0, 0, 2, 2]), T([1, 1, 3, 3]), E22)  # same kernel
    assert not r_related(T([0, 0, 2, 2]), T([2, 3, 0, 1]), E22)
    assert h_related(T([0, 0, 2, 2]), T([2, 2, 0, 0]), E22)


def test_relations_require_regular():
    with pytest.raises(PreconditionError):
        l_related(T([0, 0, 0, 0]), T([0, 0, 2, 2]), E22)


def test_d_witness_example():
    ok, w = d_related(T([0, 0, 2, 2]), T([1, 1, 3, 3]), E22)
    assert ok and w.delta == T([1, 0, 3, 2])
    assert w.verify(E22)


def test_d_rank_separates():
    ok, w = d_related(T([0, 0, 2, 2]), T([0, 1, 2, 3]), E22)
    assert not ok and w is None


def test_d_same_rank_different_profile():
    E = Partition.from_sizes((3, 1))
    # image {0, 1, 3}: block profile (2, 1); image {0, 1, 2} is not reachable in reg(T)
    a, b = T([0, 1, 1, 3]), T([1, 2, 2, 3])
    assert d_related(a, b, E)[0]
    c = T([0, 0, 0, 3])
    assert not d_related(a, c, E)[0]


def test_j_witnesses_examples():
    rho, tau = j_witnesses(T([0, 0, 2, 2]), T([1, 1, 3, 3]), E22)
    assert rho is not None and tau is not None
    assert not j_related(T([0, 0, 2, 2]), T([0, 1, 2, 3]), E22)


def test_fast_d_is_gated():
    greens._PROFILE_GATE["passed"] = False
    with pytest.raises(RuntimeError):
        d_related(T([0, 0, 2, 2]), T([1, 1, 3, 3]), E22, fast=True)
    assert greens.run_profile_gate([E22, Partition.from_sizes((2, 1)), Partition.from_sizes((3, 1))])
    assert d_related(T([0, 0, 2, 2]), T([1, 1, 3, 3]), E22, fast=True) == (True, None)


@pytest.mark.parametrize("sizes", [(2, 2), (3, 1), (2, 1, 1), (1, 1, 1), (3,), (2, 2, 1)])
def test_characterizations_match_oracle(sizes):
    E = Partition.from_sizes(sizes)
    S = enumerate_semigroup("regT", E)
    fns = {
        "L": lambda a, b: l_related(a, b, E),
        "R": lambda a, b: r_related(a, b, E),
        "H": lambda a, b: h_related(a, b, E),
        "D": lambda a, b: d_related(a, b, E)[0],
        "J": lambda a, b: j_related(a, b, E),
    }
    for rel, fn in fns.items():
        lab = greens_oracle(S, rel).labels
        for i, a in enumerate(S.elements):
            for j, b in enumerate(S.elements):
                assert fn(a, b) == (lab[i] == lab[j]), (rel, a, b)


def test_d_witnesses_verify_on_22():
    S = enumerate_semigroup("regT", E22)
    for a in S:
        for b in S:
            ok, w = d_related(a, b, E22)
            if ok:
                assert w.verify(E22)
