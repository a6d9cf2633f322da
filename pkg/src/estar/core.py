"""Ground-set arithmetic: partitions, transformations and the E / E* predicates.

Transformations act on the right and compose left to right, so
``compose(a, b)`` sends ``x`` to ``b[a[x]]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence


class CapacityError(RuntimeError):
    """Raised when a computation would exceed a configured budget."""


class PreconditionError(ValueError):
    """Raised when an operation is called outside its domain."""


class Partition:
    """An equivalence relation on ``{0..n-1}`` stored as canonically ordered blocks."""

    __slots__ = ("n", "blocks", "class_of", "_hash")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        if n < 1:
            raise ValueError("ground set must be nonempty (n >= 1)")
        blocks = [tuple(sorted(b)) for b in blocks]
        if any(len(b) == 0 for b in blocks):
            raise ValueError("blocks must be nonempty")
        class_of = [-1] * n
        blocks.sort()
        for i, b in enumerate(blocks):
            for x in b:
                if not 0 <= x < n:
                    raise ValueError(f"point {x} outside ground set of size {n}")
                if class_of[x] != -1:
                    raise ValueError(f"point {x} lies in more than one block")
                class_of[x] = i
        missing = [x for x in range(n) if class_of[x] == -1]
        if missing:
            raise ValueError(f"points {missing} are not covered by any block")
        self.n = n
        self.blocks = tuple(blocks)
        self.class_of = tuple(class_of)
        self._hash = hash((n, self.blocks))

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "Partition":
        """Contiguous blocks of the given sizes, e.g. ``(2, 2)`` -> ``{{0,1},{2,3}}``."""
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError(f"block sizes must be positive, got {list(sizes)}")
        blocks, start = [], 0
        for s in sizes:
            blocks.append(range(start, start + s))
            start += s
        return cls(start, blocks)

    @classmethod
    def from_class_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for x, lab in enumerate(labels):
            groups.setdefault(lab, []).append(x)
        return cls(len(labels), groups.values())

    @classmethod
    def universal(cls, n: int) -> "Partition":
        return cls(n, [range(n)])

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(n, [[x] for x in range(n)])

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Partition({self.n}, {[list(b) for b in self.blocks]})"

    def related(self, x: int, y: int) -> bool:
        return self.class_of[x] == self.class_of[y]

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json(cls, data: dict | str) -> "Partition":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["n"], data["blocks"])


class Transformation(tuple):
    """A total self-map of ``{0..n-1}`` given by its image sequence."""

    __slots__ = ()

    def __new__(cls, img: Iterable[int]):
        t = tuple.__new__(cls, img)
        n = len(t)
        if n == 0:
            raise ValueError("transformation on an empty ground set")
        for v in t:
            if not (isinstance(v, int) and 0 <= v < n):
                raise ValueError(f"image value {v!r} outside 0..{n - 1}")
        return t

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return _raw(range(n))

    @classmethod
    def constant(cls, n: int, value: int) -> "Transformation":
        return cls([value] * n)

    @property
    def img(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def n(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"T{list(self)}"

    def __mul__(self, other):
        if isinstance(other, Transformation):
            return compose(self, other)
        return NotImplemented

    def to_json(self) -> dict:
        return {"img": list(self)}

    @classmethod
    def from_json(cls, data: dict | str) -> "Transformation":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["img"])


def _raw(img: Iterable[int]) -> Transformation:
    # trusted constructor, skips range validation
    return tuple.__new__(Transformation, img)


def _check_size(a: Sequence[int], n: int) -> None:
    if len(a) != n:
        raise ValueError(f"size mismatch: transformation on {len(a)} points, expected {n}")


def compose(a: Transformation, b: Transformation) -> Transformation:
    """Left-to-right product: ``x(ab) = (xa)b``."""
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    return _raw([b[y] for y in a])


def image(a: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(set(a)))


@dataclass(frozen=True)
class KernelData:
    """The kernel partition of a map and the induced map from fibers to image points."""

    classes: tuple[tuple[int, ...], ...]
    star_map: dict

    def star(self, block: Sequence[int]) -> int:
        return self.star_map[tuple(block)]


def kernel_data(a: Sequence[int]) -> KernelData:
    fibers: dict[int, list[int]] = {}
    for x, y in enumerate(a):
        fibers.setdefault(y, []).append(x)
    classes = tuple(sorted(tuple(f) for f in fibers.values()))
    star = {tuple(f): y for y, f in fibers.items()}
    return KernelData(classes, star)


def kernel_classes(a: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return kernel_data(a).classes


def is_E_preserving(a: Sequence[int], E: Partition) -> bool:
    """Each block lands inside a single block."""
    _check_size(a, E.n)
    cls = E.class_of
    for block in E.blocks:
        target = cls[a[block[0]]]
        for x in block[1:]:
            if cls[a[x]] != target:
                return False
    return True


@lru_cache(maxsize=1 << 16)
def _class_map(a: Transformation, E: Partition) -> tuple[int, ...] | None:
    cls = E.class_of
    out = []
    for block in E.blocks:
        target = cls[a[block[0]]]
        for x in block[1:]:
            if cls[a[x]] != target:
                return None
        out.append(target)
    return tuple(out)


def _as_transformation(a) -> Transformation:
    return a if isinstance(a, Transformation) else Transformation(a)


def is_E_star_preserving(a: Sequence[int], E: Partition) -> bool:
    """E-preserving with an injective induced map on blocks."""
    _check_size(a, E.n)
    tau = _class_map(_as_transformation(a), E)
    return tau is not None and len(set(tau)) == len(tau)


def is_E_star_preserving_pairwise(a: Sequence[int], E: Partition) -> bool:
    """Definition-level check over all pairs; used as an oracle."""
    _check_size(a, E.n)
    rel = E.related
    return all(
        rel(x, y) == rel(a[x], a[y]) for x, y in product(range(E.n), repeat=2)
    )


def induced_class_map(a: Sequence[int], E: Partition) -> tuple[int, ...]:
    """The permutation ``tau`` of block indices with ``A_i a`` inside ``A_{tau(i)}``."""
    if not is_E_star_preserving(a, E):
        raise PreconditionError(f"{list(a)} is not E*-preserving for {E!r}")
    return _class_map(_as_transformation(a), E)


def z_set(a: Sequence[int], E: Partition) -> tuple[int, ...]:
    _check_size(a, E.n)
    hit = {E.class_of[y] for y in a}
    return tuple(i for i in range(len(E.blocks)) if i not in hit)


def is_regular_element(a: Sequence[int], E: Partition) -> bool:
    """Regularity in T_{E*}(X): the image meets every block."""
    if not is_E_star_preserving(a, E):
        raise PreconditionError(f"{list(a)} is not E*-preserving for {E!r}")
    return not z_set(a, E)


def regularity_witness(a: Sequence[int], E: Partition, elements=None) -> Transformation | None:
    """Search the enumerated T_{E*}(X) for ``b`` with ``aba = a``."""
    if not is_E_star_preserving(a, E):
        raise PreconditionError(f"{list(a)} is not E*-preserving for {E!r}")
    if elements is None:
        from .engine import enumerate_semigroup

        elements = enumerate_semigroup("T_Estar", E).elements
    a = tuple(a)
    for b in elements:
        ab = [b[y] for y in a]
        if all(a[ab[x]] == a[x] for x in range(len(a))):
            return b
    return None


def is_regular_bruteforce(a: Sequence[int], E: Partition, elements=None) -> bool:
    return regularity_witness(a, E, elements) is not None


def require_regular(a: Sequence[int], E: Partition) -> Transformation:
    """Validate membership in reg(T) and return ``a`` as a Transformation."""
    a = _as_transformation(a)
    _check_size(a, E.n)
    if not _is_reg_cached(a, E):
        raise PreconditionError(f"{list(a)} is not in reg(T) for {E!r}")
    return a


@lru_cache(maxsize=1 << 18)
def _is_reg_cached(a: Transformation, E: Partition) -> bool:
    tau = _class_map(a, E)
    if tau is None or len(set(tau)) != len(tau):
        return False
    return not z_set(a, E)


def in_reg(a: Sequence[int], E: Partition) -> bool:
    a = _as_transformation(a)
    return len(a) == E.n and _is_reg_cached(a, E)


def set_partitions(n: int):
    """All set partitions of ``{0..n-1}`` in canonical order.

    Ordered by sorted block-size profile, then lexicographically by blocks.
    """
    out = []

    def rec(x, blocks):
        if x == n:
            out.append(Partition(n, blocks))
            return
        for b in blocks:
            b.append(x)
            rec(x + 1, blocks)
            b.pop()
        blocks.append([x])
        rec(x + 1, blocks)
        blocks.pop()

    rec(0, [])
    out.sort(key=lambda p: (sorted(p.sizes, reverse=True), p.blocks))
    return out


def integer_partitions(n: int, largest: int | None = None):
    """Integer partitions of ``n`` as non-increasing tuples, largest parts first."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest
