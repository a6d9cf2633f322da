"""Ideals of reg(T): divisibility, the Q(r) family, principality and the kernel Q(2)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Sequence

from .core import (
    CapacityError,
    Partition,
    PreconditionError,
    Transformation,
    _raw,
    compose,
    in_reg,
    induced_class_map,
    require_regular,
)
from .engine import Budget, SemigroupInstance, default_budget, enumerate_semigroup, two_sided_ideal

IMAGE_SIZES = "image-sizes"
BOUND_VECTOR = "bound-vector"


@dataclass(frozen=True)
class CardinalVector:
    """Per-block naturals, either realized image sizes or Q(r) bounds."""

    values: tuple[int, ...]
    kind: str = IMAGE_SIZES

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def successor(self) -> "CardinalVector":
        return CardinalVector(tuple(v + 1 for v in self.values), BOUND_VECTOR)

    def validate(self, E: Partition) -> "CardinalVector":
        if len(self.values) != len(E.blocks):
            raise ValueError(f"vector has {len(self.values)} entries, partition has {len(E.blocks)} blocks")
        lo, hi_extra = (1, 0) if self.kind == IMAGE_SIZES else (2, 1)
        for i, (v, size) in enumerate(zip(self.values, E.sizes)):
            if not lo <= v <= size + hi_extra:
                raise ValueError(
                    f"entry {i} = {v} violates {lo} <= r_{i} <= {size + hi_extra} ({self.kind})"
                )
        return self


def bound_vector(values: Sequence[int], E: Partition) -> CardinalVector:
    return CardinalVector(tuple(values), BOUND_VECTOR).validate(E)


def card_vector(a, E: Partition) -> CardinalVector:
    """``|A_i a|`` for every block ``A_i``."""
    a = require_regular(a, E)
    return CardinalVector(_card(a, E))


@lru_cache(maxsize=1 << 16)
def _card(a: Transformation, E: Partition) -> tuple[int, ...]:
    return tuple(len({a[x] for x in block}) for block in E.blocks)


def dominance_exists(a_vec, b_vec, strict: bool = False) -> tuple[bool, tuple[int, ...] | None]:
    """Is there a permutation ``rho`` with ``a[i] <= b[rho[i]]`` (or ``<``) for all i?

    Sorting both vectors and pairing them in order is optimal for threshold
    matchings, so one sorted comparison decides it. The identity is preferred
    as witness when it already works.
    """
    a, b = tuple(a_vec), tuple(b_vec)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    ok = (lambda x, y: x < y) if strict else (lambda x, y: x <= y)
    k = len(a)
    if all(ok(a[i], b[i]) for i in range(k)):
        return True, tuple(range(k))
    order_a = sorted(range(k), key=lambda i: (a[i], i))
    order_b = sorted(range(k), key=lambda i: (b[i], i))
    rho = [0] * k
    for ia, ib in zip(order_a, order_b):
        rho[ia] = ib
    if all(ok(a[i], b[rho[i]]) for i in range(k)):
        return True, tuple(rho)
    return False, None


def dominance_bruteforce(a_vec, b_vec, strict: bool = False) -> tuple[bool, tuple[int, ...] | None]:
    """Try every permutation."""
    a, b = tuple(a_vec), tuple(b_vec)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    for rho in permutations(range(len(a))):
        if all((x < b[r]) if strict else (x <= b[r]) for x, r in zip(a, rho)):
            return True, rho
    return False, None


def divides(a, b, E: Partition) -> bool:
    """``a = l b m`` for some ``l, m`` in reg(T), decided on card vectors."""
    a, b = require_regular(a, E), require_regular(b, E)
    return dominance_exists(_card(a, E), _card(b, E))[0]


def construct_factorization(a, b, E: Partition) -> tuple[Transformation, Transformation]:
    """Return ``(lam, mu)`` in reg(T) with ``lam * b * mu == a``.

    ``mu`` undoes chosen per-block injections from the images of ``a`` into
    those of ``b`` and ``lam`` routes each point through a preimage under ``b``.
    """
    a, b = require_regular(a, E), require_regular(b, E)
    if a == b:
        ident = Transformation.identity(E.n)
        return ident, ident
    ok, rho = dominance_exists(_card(a, E), _card(b, E))
    if not ok:
        raise PreconditionError(f"{list(a)} does not divide through {list(b)}")
    blocks, n = E.blocks, E.n
    tau_b = induced_class_map(b, E)
    img_a = [sorted({a[x] for x in blk}) for blk in blocks]
    img_b = [sorted({b[x] for x in blk}) for blk in blocks]

    sigma: dict[int, int] = {}  # image of a -> image of b, injective per block
    sigma_inv: dict[int, int] = {}
    for i in range(len(blocks)):
        for x, y in zip(img_a[i], img_b[rho[i]]):
            sigma[x] = y
            sigma_inv[y] = x

    mu = [0] * n
    for i in range(len(blocks)):
        y0 = img_a[i][0]
        for x in blocks[tau_b[rho[i]]]:
            mu[x] = sigma_inv.get(x, y0)

    preimage: dict[int, int] = {}
    for x in range(n - 1, -1, -1):
        preimage[b[x]] = x
    lam = [preimage[sigma[a[x]]] for x in range(n)]

    lam, mu = _raw(lam), _raw(mu)
    if not (in_reg(lam, E) and in_reg(mu, E) and compose(compose(lam, b), mu) == a):
        raise RuntimeError(f"factorization of {list(a)} through {list(b)} failed: {lam}, {mu}")
    return lam, mu


@dataclass(frozen=True)
class IdealSet:
    """A subset of reg(T), tagged with how it was produced."""

    E: Partition
    elements: tuple[Transformation, ...]
    provenance: str
    generators: tuple[Transformation, ...] = ()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return tuple(a) in self.as_set

    @property
    def as_set(self) -> frozenset:
        return frozenset(self.elements)

    def same_set(self, other) -> bool:
        return self.as_set == frozenset(other)

    def to_json(self, S: SemigroupInstance) -> dict:
        return {
            "provenance": self.provenance,
            "size": len(self.elements),
            "elements": S.indices(self.elements),
            "generators": S.indices(self.generators),
        }


def _reg(E: Partition, budget: Budget | None = None) -> SemigroupInstance:
    return enumerate_semigroup("regT", E, budget)


def q_set(r, E: Partition, budget: Budget | None = None) -> IdealSet:
    """Elements whose card vector is strictly dominated by ``r`` under some block permutation."""
    r = r if isinstance(r, CardinalVector) else CardinalVector(tuple(r), BOUND_VECTOR)
    if r.kind != BOUND_VECTOR:
        r = CardinalVector(r.values, BOUND_VECTOR)
    r.validate(E)
    return IdealSet(E, _strictly_below(r.values, E, budget or default_budget()), "Q-of-r")


@lru_cache(maxsize=256)
def _strictly_below(r: tuple[int, ...], E: Partition, budget: Budget) -> tuple[Transformation, ...]:
    S = _reg(E, budget)
    return tuple(a for a in S if dominance_exists(_card(a, E), r, strict=True)[0])


def principal_ideal(g, E: Partition, budget: Budget | None = None) -> IdealSet:
    """Everything dividing through ``g``."""
    g = require_regular(g, E)
    els = _below(tuple(sorted(_card(g, E))), E, budget or default_budget())
    return IdealSet(E, els, "principal-of-gamma", (g,))


@lru_cache(maxsize=256)
def _below(profile: tuple[int, ...], E: Partition, budget: Budget) -> tuple[Transformation, ...]:
    S = _reg(E, budget)
    return tuple(a for a in S if dominance_exists(_card(a, E), profile)[0])


def _sorted_profile(a: Transformation, E: Partition) -> tuple[int, ...]:
    return tuple(sorted(_card(a, E)))


def enumerate_ideals(E: Partition, budget: Budget | None = None) -> list[IdealSet]:
    """All ideals of reg(T), as unions over antichains of principal ideals.

    Ordered by size, then by element list.
    """
    budget = budget or default_budget()
    S = _reg(E, budget)
    reps: dict[tuple[int, ...], Transformation] = {}
    for a in S:
        reps.setdefault(_sorted_profile(a, E), a)
    profiles = sorted(reps)
    if len(profiles) > budget.ideal_principals:
        raise CapacityError(
            f"{len(profiles)} principal ideals exceed ideal_principals={budget.ideal_principals}"
        )
    below = {
        (p, q): dominance_exists(p, q)[0] for p in profiles for q in profiles
    }
    principal = {p: principal_ideal(reps[p], E, budget) for p in profiles}

    antichains: list[list] = []

    def extend(start, chosen):
        if chosen:
            antichains.append(list(chosen))
        for j in range(start, len(profiles)):
            q = profiles[j]
            if all(not below[(p, q)] and not below[(q, p)] for p in chosen):
                chosen.append(q)
                extend(j + 1, chosen)
                chosen.pop()

    extend(0, [])
    seen = {}
    for chain in antichains:
        members = set()
        for p in chain:
            members |= principal[p].as_set
        key = tuple(sorted(members))
        if key not in seen:
            tag = "principal-of-gamma" if len(chain) == 1 else "union"
            seen[key] = IdealSet(E, key, tag, tuple(reps[p] for p in chain))
    return sorted(seen.values(), key=lambda I: (len(I), I.elements))


def is_principal(ideal, E: Partition) -> tuple[bool, Transformation | None]:
    """Decide principality by testing generators of maximal card-vector profile."""
    els = tuple(ideal)
    if not els:
        return False, None
    target = frozenset(els)
    profiles = {}
    for a in els:
        profiles.setdefault(_sorted_profile(require_regular(a, E), E), a)
    maximal = [
        p for p in profiles
        if not any(q != p and dominance_exists(p, q)[0] for q in profiles)
    ]
    for p in sorted(maximal):
        g = profiles[p]
        if principal_ideal(g, E).as_set == target:
            return True, g
    return False, None


def is_principal_bruteforce(S: SemigroupInstance, ideal) -> tuple[bool, Transformation | None]:
    """Exhaustive generator search using products straight from the multiplication table."""
    target = frozenset(S.indices(ideal))
    for i in sorted(target):
        if two_sided_ideal(S, i) == target:
            return True, S.elements[i]
    return False, None


def ideals_bruteforce(S: SemigroupInstance, limit: int = 20) -> list[frozenset[int]]:
    """Every ideal of ``S`` as an index set: all unions of principal ideals S g S."""
    principals = sorted({two_sided_ideal(S, i) for i in range(len(S))}, key=sorted)
    if len(principals) > limit:
        raise CapacityError(f"{len(principals)} principal ideals exceed the brute-force limit {limit}")
    out = set()
    for mask in product((False, True), repeat=len(principals)):
        if any(mask):
            out.add(frozenset().union(*(p for p, m in zip(principals, mask) if m)))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def all_bound_vectors(E: Partition) -> Iterable[CardinalVector]:
    for vals in product(*(range(2, s + 2) for s in E.sizes)):
        yield CardinalVector(vals, BOUND_VECTOR)


def in_kernel(a, E: Partition) -> bool:
    """Membership in Q(2): regular and every block collapses to one point."""
    return in_reg(a, E) and all(v == 1 for v in _card(Transformation(a), E))


def kernel_q2(E: Partition, budget: Budget | None = None) -> IdealSet:
    """Q(2), the smallest ideal of reg(T)."""
    ideal = q_set((2,) * len(E.blocks), E, budget)
    return IdealSet(E, ideal.elements, "Q-of-r")


def kernel_direct(E: Partition) -> tuple[Transformation, ...]:
    """Q(2) built without enumerating reg(T): a block permutation plus one target point per block."""
    blocks = E.blocks
    out = []
    for sigma in permutations(range(len(blocks))):
        for pts in product(*(blocks[j] for j in sigma)):
            img = [0] * E.n
            for blk, y in zip(blocks, pts):
                for x in blk:
                    img[x] = y
            out.append(_raw(img))
    return tuple(sorted(out))
