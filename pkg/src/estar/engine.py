"""Enumeration of the ambient semigroups, closure, and definition-level Green's relations.

Everything here is deliberately generic: it knows nothing about how Green's
relations or ideals look inside reg(T), so it can adjudicate the
characterized versions in :mod:`estar.greens` and :mod:`estar.ideals`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from functools import cached_property, lru_cache
from itertools import permutations, product
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .core import (
    CapacityError,
    Partition,
    Transformation,
    _raw,
    compose,
    is_E_preserving,
    is_E_star_preserving,
    is_regular_element,
)

KINDS = ("T", "T_E", "T_Estar", "regT")
_KIND_ALIASES = {
    "t": "T",
    "te": "T_E",
    "t_e": "T_E",
    "testar": "T_Estar",
    "t_estar": "T_Estar",
    "regt": "regT",
    "reg": "regT",
}


@dataclass(frozen=True)
class Budget:
    """Capacity limits. Override with ``SEMIGROUP_BUDGET="key=value,..."``."""

    enumeration_n: int = 7  # largest n for which n^n sweeps are allowed
    max_elements: int = 7**7  # largest semigroup any enumeration may produce
    oracle_elements: int = 5000  # Green's oracle and multiplication tables
    ideal_principals: int = 64  # distinct principal ideals in ideal enumeration

    @classmethod
    def from_env(cls, env: str | None = None) -> "Budget":
        env = os.environ.get("SEMIGROUP_BUDGET", "") if env is None else env
        budget = cls()
        if not env.strip():
            return budget
        names = {f.name for f in fields(cls)}
        updates = {}
        for item in env.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in names or not value.strip():
                raise ValueError(f"bad SEMIGROUP_BUDGET entry {item!r}; keys are {sorted(names)}")
            updates[key] = int(value)
        return replace(budget, **updates)


def default_budget() -> Budget:
    return Budget.from_env()


def normalize_kind(kind: str) -> str:
    if kind in KINDS or kind == "closure":
        return kind
    try:
        return _KIND_ALIASES[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown semigroup kind {kind!r}; expected one of {KINDS}") from None


def _encode_weights(n: int) -> np.ndarray:
    # lexicographic order of images == numeric order of these keys
    return n ** np.arange(n - 1, -1, -1, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SemigroupInstance:
    """A finite transformation semigroup with canonically sorted elements."""

    E: Partition | None
    elements: tuple[Transformation, ...]
    kind: str
    budget: Budget = field(default_factory=default_budget, repr=False)

    def __post_init__(self):
        if not self.elements:
            raise ValueError("a semigroup instance needs at least one element")
        els = self.elements
        if any(els[i] >= els[i + 1] for i in range(len(els) - 1)):
            raise ValueError("elements must be pairwise distinct and canonically sorted")
        if len(els) <= self.budget.oracle_elements:
            self.table  # builds the table and fails if not closed

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return tuple(a) in self.index

    @property
    def n(self) -> int:
        return len(self.elements[0])

    @cached_property
    def index(self) -> dict[tuple, int]:
        return {a: i for i, a in enumerate(self.elements)}

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64).reshape(len(self.elements), self.n)

    @cached_property
    def _keys(self) -> np.ndarray:
        return self.array @ _encode_weights(self.n)

    @cached_property
    def table(self) -> np.ndarray:
        """``table[i, j]`` is the index of ``elements[i] * elements[j]``."""
        m = len(self.elements)
        if m > self.budget.oracle_elements:
            raise CapacityError(
                f"multiplication table for {m} elements exceeds oracle_elements="
                f"{self.budget.oracle_elements}"
            )
        A = self.array
        keys = self._keys
        w = _encode_weights(self.n)
        out = np.empty((m, m), dtype=np.int64)
        chunk = max(1, 2_000_000 // (m * self.n))
        for start in range(0, m, chunk):
            rows = A[start : start + chunk]
            # prods[j, i, x] = A[j, rows[i, x]]  (row element first, then column element)
            prods = A[:, rows] @ w
            pk = prods.T
            idx = np.searchsorted(keys, pk)
            idx = np.minimum(idx, m - 1)
            if not np.array_equal(keys[idx], pk):
                i, j = np.argwhere(keys[idx] != pk)[0]
                a, b = self.elements[start + i], self.elements[j]
                raise ValueError(f"not closed under composition: {a!r} * {b!r} = {compose(a, b)!r}")
            out[start : start + chunk] = idx
        out.setflags(write=False)
        return out

    @cached_property
    def identity_index(self) -> int | None:
        return self.index.get(tuple(range(self.n)))

    def indices(self, subset: Iterable) -> list[int]:
        out = []
        for a in subset:
            out.append(int(a) if isinstance(a, (int, np.integer)) else self.index[tuple(a)])
        return out

    def to_json(self) -> dict:
        return {
            "E": self.E.to_json() if self.E is not None else None,
            "kind": self.kind,
            "elements": [list(a) for a in self.elements],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SemigroupInstance":
        E = Partition.from_json(data["E"]) if data.get("E") else None
        els = tuple(sorted(Transformation(a) for a in data["elements"]))
        return cls(E, els, data["kind"])


def t_estar_size(E: Partition) -> int:
    """Sum over block permutations of the number of block-to-block maps."""
    sizes = E.sizes
    k = len(sizes)
    return sum(
        prod(sizes[s[i]] ** sizes[i] for i in range(k)) for s in permutations(range(k))
    )


def _blockwise_maps(E: Partition, targets: Sequence[int]):
    """All maps sending block ``i`` into block ``targets[i]``."""
    blocks = E.blocks
    n = E.n
    pieces = [product(blocks[targets[i]], repeat=len(b)) for i, b in enumerate(blocks)]
    for choice in product(*(list(p) for p in pieces)):
        img = [0] * n
        for b, vals in zip(blocks, choice):
            for x, v in zip(b, vals):
                img[x] = v
        yield _raw(img)


def _enumerate_uncached(kind: str, E: Partition, budget: Budget) -> tuple[Transformation, ...]:
    n, k = E.n, len(E.blocks)
    if kind in ("T", "T_E"):
        if n > budget.enumeration_n:
            raise CapacityError(
                f"{kind} on n={n} needs an n^n sweep; enumeration_n={budget.enumeration_n}"
            )
        if kind == "T":
            return tuple(_raw(img) for img in product(range(n), repeat=n))
        out = []
        for targets in product(range(k), repeat=k):
            out.extend(_blockwise_maps(E, targets))
        return tuple(sorted(out))
    size = t_estar_size(E)
    if size > budget.max_elements:
        raise CapacityError(f"|T_E*| = {size} exceeds max_elements={budget.max_elements}")
    out = []
    for sigma in permutations(range(k)):
        out.extend(_blockwise_maps(E, sigma))
    out.sort()
    if kind == "regT":
        out = [a for a in out if is_regular_element(a, E)]
    return tuple(out)


@lru_cache(maxsize=64)
def _enumerate_cached(kind: str, E: Partition, budget: Budget) -> SemigroupInstance:
    return SemigroupInstance(E, _enumerate_uncached(kind, E, budget), kind, budget)


def enumerate_semigroup(kind: str, E: Partition, budget: Budget | None = None) -> SemigroupInstance:
    """Enumerate T(X), T_E(X), T_{E*}(X) or reg(T) for the partition ``E``.

    T_{E*}(X) is built directly as a union over block permutations of products
    of block-to-block maps; T(X) and T_E(X) need the full n^n sweep.
    """
    return _enumerate_cached(normalize_kind(kind), E, budget or default_budget())


def filtered_sweep(kind: str, E: Partition, budget: Budget | None = None) -> tuple[Transformation, ...]:
    """Filter all n^n maps by the membership predicate; cross-check for the direct construction."""
    budget = budget or default_budget()
    kind = normalize_kind(kind)
    if E.n > budget.enumeration_n:
        raise CapacityError(f"n={E.n} exceeds enumeration_n={budget.enumeration_n}")
    out = []
    for img in product(range(E.n), repeat=E.n):
        a = _raw(img)
        if kind == "T":
            out.append(a)
        elif kind == "T_E":
            if is_E_preserving(a, E):
                out.append(a)
        elif is_E_star_preserving(a, E):
            if kind == "T_Estar" or is_regular_element(a, E):
                out.append(a)
    return tuple(out)


def closure(gens: Iterable[Sequence[int]], E: Partition | None = None,
            budget: Budget | None = None) -> SemigroupInstance:
    """The subsemigroup generated by ``gens``."""
    budget = budget or default_budget()
    gens = [g if isinstance(g, Transformation) else Transformation(g) for g in gens]
    if not gens:
        raise ValueError("closure of an empty generating set")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators act on different ground-set sizes")
    seen = set(gens)
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _raw([g[v] for v in x])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > budget.max_elements:
                        raise CapacityError(f"closure exceeds max_elements={budget.max_elements}")
        frontier = nxt
    return SemigroupInstance(E, tuple(sorted(seen)), "closure", budget)


# --- Green's relations from the definitions -------------------------------------

RELATIONS = ("L", "R", "H", "D", "J")


@dataclass(frozen=True)
class GreensClassification:
    relation: str
    classes: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...]  # labels[i] = index of the class containing element i

    def related(self, i: int, j: int) -> bool:
        return self.labels[i] == self.labels[j]

    def to_json(self) -> dict:
        return {"relation": self.relation, "classes": [list(c) for c in self.classes]}


def _canonical_labels(raw: np.ndarray) -> tuple[tuple[int, ...], ...]:
    first: dict[int, int] = {}
    labels = []
    for v in raw.tolist():
        labels.append(first.setdefault(v, len(first)))
    classes: list[list[int]] = [[] for _ in first]
    for i, lab in enumerate(labels):
        classes[lab].append(i)
    return tuple(labels), tuple(tuple(c) for c in classes)


def _row_labels(M: np.ndarray) -> np.ndarray:
    packed = np.packbits(M, axis=1)
    _, inv = np.unique(packed, axis=0, return_inverse=True)
    return inv.reshape(-1)


def _bool_compose(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return (A.astype(np.float32) @ B.astype(np.float32)) > 0.5


def principal_ideal_masks(S: SemigroupInstance) -> dict[str, np.ndarray]:
    """Boolean reachability: ``R[a, c]`` iff c in aS^1, ``L`` for S^1a, ``J`` for S^1aS^1."""
    m = len(S)
    if m > S.budget.oracle_elements:
        raise CapacityError(f"Green's oracle on {m} elements exceeds oracle_elements={S.budget.oracle_elements}")
    return _masks(S)


@lru_cache(maxsize=8)
def _masks(S: SemigroupInstance) -> dict[str, np.ndarray]:
    T = S.table
    m = len(S)
    eye = np.eye(m, dtype=bool)
    Rm = eye.copy()
    Rm[np.arange(m)[:, None], T] = True
    Lm = eye.copy()
    Lm[np.broadcast_to(np.arange(m), (m, m)), T] = True
    Jm = _bool_compose(Lm, Rm)
    return {"L": Lm, "R": Rm, "J": Jm}


@lru_cache(maxsize=8)
def _all_greens(S: SemigroupInstance) -> dict[str, GreensClassification]:
    masks = principal_ideal_masks(S)
    raw = {rel: _row_labels(masks[rel]) for rel in ("L", "R", "J")}
    raw["H"] = raw["L"] * (len(S) + 1) + raw["R"]
    Leq = raw["L"][:, None] == raw["L"][None, :]
    Req = raw["R"][:, None] == raw["R"][None, :]
    D_lr = _bool_compose(Leq, Req)
    D_rl = _bool_compose(Req, Leq)
    if not np.array_equal(D_lr, D_rl):
        raise RuntimeError("L o R != R o L; the table is not a semigroup")
    raw["D"] = _row_labels(D_lr)
    out = {}
    for rel in RELATIONS:
        labels, classes = _canonical_labels(raw[rel])
        out[rel] = GreensClassification(rel, classes, labels)
    return out


def greens_oracle(S: SemigroupInstance, relation: str) -> GreensClassification:
    """Green's relation ``relation`` on ``S`` computed from principal ideals."""
    relation = relation.upper()
    if relation not in RELATIONS:
        raise ValueError(f"relation must be one of {RELATIONS}")
    principal_ideal_masks(S)  # budget check
    return _all_greens(S)[relation]


def _mask_of(S: SemigroupInstance, subset) -> np.ndarray:
    mask = np.zeros(len(S), dtype=bool)
    idx = S.indices(subset)
    mask[idx] = True
    return mask


def is_ideal(S: SemigroupInstance, subset) -> bool:
    """Nonempty and absorbing multiplication by S on both sides."""
    mask = _mask_of(S, subset)
    if not mask.any():
        return False
    T = S.table
    return bool(mask[T[mask, :]].all() and mask[T[:, mask]].all())


def two_sided_ideal(S: SemigroupInstance, g) -> frozenset[int]:
    """Indices of ``{l * g * r : l, r in S}`` by direct multiplication."""
    i = g if isinstance(g, (int, np.integer)) else S.index[tuple(g)]
    T = S.table
    left = np.unique(T[:, i])
    return frozenset(np.unique(T[left, :]).tolist())
