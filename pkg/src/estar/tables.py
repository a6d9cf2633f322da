"""Abstract finite semigroups given by multiplication tables."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

import numpy as np

from .core import Transformation, compose


class NotAssociativeError(ValueError):
    def __init__(self, triple):
        self.triple = triple
        x, y, z = triple
        super().__init__(f"not associative: ({x}*{y})*{z} != {x}*({y}*{z})")


@dataclass(frozen=True)
class CayleyTable:
    """A finite semigroup on ``0..order-1``; ``table[x][y]`` is ``xy``."""

    order: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        m = self.order
        if m < 1:
            raise ValueError("order must be positive")
        rows = tuple(tuple(int(v) for v in row) for row in self.table)
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValueError(f"table must be {m}x{m}")
        if any(not 0 <= v < m for r in rows for v in r):
            raise ValueError(f"table entries must lie in 0..{m - 1}")
        object.__setattr__(self, "table", rows)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != m:
                raise ValueError("need one label per element")
            object.__setattr__(self, "labels", labels)
        triple = associativity_failure(rows)
        if triple is not None:
            raise NotAssociativeError(triple)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def as_array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def to_json(self) -> dict:
        out = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "CayleyTable":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["order"], data["table"], data.get("labels"))


def associativity_failure(table: Sequence[Sequence[int]]):
    """First triple ``(x, y, z)`` with ``(xy)z != x(yz)``, or None."""
    T = np.asarray(table, dtype=np.int64)
    m = len(T)
    # lhs[x, y, z] = T[T[x, y], z]; rhs[x, y, z] = T[x, T[y, z]]
    lhs = T[T]
    rhs = T[np.arange(m)[:, None, None], T[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(v) for v in bad[0])
    return None


def table_of(elements: Sequence[Transformation]) -> list[list[int]]:
    """Multiplication table of a list of transformations; rejects non-closed lists."""
    index = {tuple(a): i for i, a in enumerate(elements)}
    out = []
    for a in elements:
        row = []
        for b in elements:
            c = compose(a, b)
            if c not in index:
                raise ValueError(f"not closed under composition: {a!r} * {b!r} = {c!r}")
            row.append(index[c])
        out.append(row)
    return out


def as_table(obj) -> np.ndarray:
    """Accept a CayleyTable, a SemigroupInstance, a raw table, or a list of transformations."""
    from .engine import SemigroupInstance

    if isinstance(obj, CayleyTable):
        return obj.as_array()
    if isinstance(obj, SemigroupInstance):
        return np.asarray(obj.table)
    if isinstance(obj, np.ndarray):
        return obj
    obj = list(obj)
    if obj and isinstance(obj[0], Transformation):
        return np.array(table_of(obj), dtype=np.int64)
    return np.array(obj, dtype=np.int64)


def idempotents(table) -> list[int]:
    T = as_table(table)
    return [x for x in range(len(T)) if T[x, x] == x]


def is_group(table) -> bool:
    T = as_table(table)
    m = len(T)
    ids = [e for e in range(m) if all(T[e, x] == x == T[x, e] for x in range(m))]
    if not ids:
        return False
    e = ids[0]
    return all(any(T[x, y] == e and T[y, x] == e for y in range(m)) for x in range(m))


def group_table(elements: Sequence, mul) -> CayleyTable:
    elements = list(elements)
    index = {x: i for i, x in enumerate(elements)}
    return CayleyTable(
        len(elements),
        [[index[mul(x, y)] for y in elements] for x in elements],
        [str(x) for x in elements],
    )


def trivial_group() -> CayleyTable:
    return CayleyTable(1, [[0]], ["e"])


def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable(n, [[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(G: CayleyTable, H: CayleyTable) -> CayleyTable:
    """Pairs ``(g, h)`` indexed as ``g * |H| + h``."""
    m, k = G.order, H.order
    table = [
        [G.table[g1][g2] * k + H.table[h1][h2] for g2 in range(m) for h2 in range(k)]
        for g1 in range(m)
        for h1 in range(k)
    ]
    labels = [f"({G.label(g)},{H.label(h)})" for g in range(m) for h in range(k)]
    return CayleyTable(m * k, table, labels)


def klein_group() -> CayleyTable:
    return direct_product(cyclic_group(2), cyclic_group(2))


def symmetric_group(n: int) -> CayleyTable:
    """Permutations of ``0..n-1`` composed left to right."""
    perms = list(permutations(range(n)))
    return group_table(perms, lambda p, q: tuple(q[i] for i in p))


def right_zero(k: int) -> CayleyTable:
    return CayleyTable(k, [list(range(k)) for _ in range(k)])


def left_zero(k: int) -> CayleyTable:
    return CayleyTable(k, [[x] * k for x in range(k)])


def chain_semilattice(k: int) -> CayleyTable:
    """``{0 < 1 < ... < k-1}`` under min."""
    return CayleyTable(k, [[min(x, y) for y in range(k)] for x in range(k)])
