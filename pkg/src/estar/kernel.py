"""Structure of the kernel Q(2): right group, H-class subgroups, idempotents."""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import factorial

import numpy as np

from .core import Partition, PreconditionError, Transformation, compose
from .ideals import in_kernel, kernel_direct
from .tables import as_table

ISO_TABLE_MAX_BLOCKS = 6


def right_group_failure(S) -> tuple[int, int, int] | None:
    """First ``(a, b, count)`` where ``ax = b`` has ``count != 1`` solutions."""
    T = as_table(S)
    m = len(T)
    for a in range(m):
        counts = np.bincount(T[a], minlength=m)
        bad = np.flatnonzero(counts != 1)
        if len(bad):
            return a, int(bad[0]), int(counts[bad[0]])
    return None


def is_right_group(S) -> bool:
    """Unique solvability of ``ax = b`` for all ``a, b``."""
    return right_group_failure(S) is None


def is_regular_and_left_cancellative(S) -> bool:
    T = as_table(S)
    m = len(T)
    for a in range(m):
        # left cancellative: a x = a y forces x = y
        if len(set(T[a].tolist())) != m:
            return False
        # regular: a x a = a for some x
        if not any(T[T[a, x], a] == a for x in range(m)):
            return False
    return True


def is_idempotent_in_q2(a, E: Partition) -> bool:
    """Idempotent iff every block is mapped into itself; both tests run and must agree."""
    if not in_kernel(a, E):
        raise PreconditionError(f"{list(a)} is not in Q(2) for {E!r}")
    a = Transformation(a)
    by_square = compose(a, a) == a
    by_blocks = all(E.class_of[a[x]] == E.class_of[x] for x in range(E.n))
    if by_square != by_blocks:
        raise RuntimeError(f"idempotent criteria disagree on {a!r}")
    return by_square


@dataclass(frozen=True)
class HClassGroup:
    """One H-class of Q(2): maps sharing a cross-section as image."""

    cross_section: tuple[int, ...]
    elements: tuple[Transformation, ...]
    identity: Transformation
    # element -> its permutation of the cross-section, listed in cross-section order
    iso: dict | None

    def restriction(self, a: Transformation) -> tuple[int, ...]:
        return tuple(a[c] for c in self.cross_section)


def _power_idempotent(a: Transformation) -> Transformation:
    p = a
    while compose(p, p) != p:
        p = compose(p, a)
    return p


def _check_group(cs, members, rng) -> HClassGroup:
    member_set = set(members)
    e = _power_idempotent(members[0])
    if e not in member_set:
        raise RuntimeError(f"idempotent power of {members[0]!r} left the class {cs}")
    for a in members:
        if tuple(sorted(set(a))) != cs:
            raise RuntimeError(f"{a!r} does not have image {cs}")
        if compose(e, a) != a or compose(a, e) != a:
            raise RuntimeError(f"{e!r} is not an identity for {a!r}")
        if not any(compose(a, b) == e and compose(b, a) == e for b in members):
            raise RuntimeError(f"{a!r} has no inverse in its class")

    def restrict(a):
        return tuple(a[c] for c in cs)

    pos = {c: i for i, c in enumerate(cs)}
    perms = {}
    for a in members:
        p = restrict(a)
        if sorted(p) != list(cs):
            raise RuntimeError(f"{a!r} does not permute its cross-section")
        perms[a] = p
    if len(set(perms.values())) != len(members):
        raise RuntimeError("restriction to the cross-section is not injective")
    if len(members) != factorial(len(cs)):
        raise RuntimeError(f"class {cs} has {len(members)} elements, not {len(cs)}!")

    def then(p, q):  # apply p, then q
        return tuple(q[pos[y]] for y in p)

    k = len(cs)
    if k <= ISO_TABLE_MAX_BLOCKS:
        pairs = ((a, b) for a in members for b in members)
    else:
        pairs = ((rng.choice(members), rng.choice(members)) for _ in range(200))
    for a, b in pairs:
        ab = compose(a, b)
        if ab not in member_set:
            raise RuntimeError(f"class {cs} not closed: {a!r} * {b!r}")
        if restrict(ab) != then(perms[a], perms[b]):
            raise RuntimeError(f"restriction is not a homomorphism at {a!r}, {b!r}")
    iso = perms if k <= ISO_TABLE_MAX_BLOCKS else None
    return HClassGroup(cs, tuple(members), e, iso)


def h_class_decomposition(E: Partition, seed: int = 0) -> list[HClassGroup]:
    """Split Q(2) by image; each class is checked to be a copy of Sym(cross-section)."""
    rng = random.Random(seed)
    classes: dict[tuple[int, ...], list[Transformation]] = {}
    for a in kernel_direct(E):
        classes.setdefault(tuple(sorted(set(a))), []).append(a)
    return [_check_group(cs, members, rng) for cs, members in sorted(classes.items())]


@dataclass(frozen=True)
class IsoCriterion:
    holds: bool  # reg(T) is a full transformation semigroup: single block
    all_kernel_idempotent: bool
    witness: Transformation | None  # non-idempotent kernel element when several blocks


def non_idempotent_kernel_element(E: Partition) -> Transformation | None:
    """Swap the first two blocks onto each other's least points; fix a point in the rest."""
    if len(E.blocks) < 2:
        return None
    blocks = E.blocks
    a, b = blocks[0][0], blocks[1][0]
    img = [0] * E.n
    for i, blk in enumerate(blocks):
        target = b if i == 0 else a if i == 1 else blk[0]
        for x in blk:
            img[x] = target
    return Transformation(img)


def iso_to_full_transformation_criterion(E: Partition) -> IsoCriterion:
    single = len(E.blocks) == 1
    kernel = kernel_direct(E)
    all_idem = all(is_idempotent_in_q2(a, E) for a in kernel)
    if all_idem != single:
        raise RuntimeError(f"kernel idempotence {all_idem} disagrees with single-block {single} for {E!r}")
    witness = non_idempotent_kernel_element(E)
    if witness is not None and (not in_kernel(witness, E) or is_idempotent_in_q2(witness, E)):
        raise RuntimeError(f"{witness!r} is not a non-idempotent element of Q(2)")
    return IsoCriterion(single, all_idem, witness)
