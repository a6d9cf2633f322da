"""Embedding a finite right group into Q(2) of reg(T_{E*}(S)) via right translations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Partition, Transformation, compose, is_E_star_preserving, is_regular_element
from .ideals import card_vector
from .kernel import is_regular_and_left_cancellative, right_group_failure
from .tables import CayleyTable, idempotents, is_group


class NotARightGroupError(ValueError):
    def __init__(self, a, b, count):
        self.pair = (a, b)
        self.count = count
        super().__init__(f"not a right group: {a}*x = {b} has {count} solutions")


class EmbeddingError(RuntimeError):
    """A certification step of the embedding failed."""


@dataclass(frozen=True)
class RightGroupAnalysis:
    idempotents: tuple[int, ...]
    subgroups: dict  # idempotent e -> sorted elements of Se
    classes: tuple[tuple[int, ...], ...]  # the sets [s] = {s e : e idempotent}
    partition: Partition
    inverse: dict  # s -> its inverse inside the subgroup containing s
    group_of: dict = field(repr=False)  # s -> idempotent of its subgroup


def analyze_right_group(T: CayleyTable) -> RightGroupAnalysis:
    fail = right_group_failure(T)
    if fail is not None:
        raise NotARightGroupError(*fail)
    m, mul = T.order, T.mul
    idem = tuple(idempotents(T))
    if not idem:
        raise RuntimeError("right group without idempotents")
    for e in idem:
        for f in idem:
            if mul(e, f) != f:
                raise RuntimeError(f"idempotents {e}, {f} do not form a right zero band")

    subgroups = {e: tuple(sorted({mul(s, e) for s in range(m)})) for e in idem}
    group_of = {}
    for e, members in subgroups.items():
        for s in members:
            if s in group_of:
                raise RuntimeError(f"{s} lies in two subgroups")
            group_of[s] = e
            if mul(s, e) != s or mul(e, s) != s:
                raise RuntimeError(f"{e} is not the identity of S{e} at {s}")
    if len(group_of) != m:
        raise RuntimeError("the subgroups S e do not cover S")

    inverse = {}
    for s in range(m):
        e = group_of[s]
        inv = [t for t in subgroups[e] if mul(s, t) == e and mul(t, s) == e]
        if len(inv) != 1:
            raise RuntimeError(f"{s} has {len(inv)} inverses in S{e}")
        inverse[s] = inv[0]

    classes = sorted({tuple(sorted({mul(s, e) for e in idem})) for s in range(m)})
    partition = Partition(m, classes)  # raises if the classes overlap
    return RightGroupAnalysis(idem, subgroups, partition.blocks, partition, inverse, group_of)


def make_right_group(G: CayleyTable, k: int) -> CayleyTable:
    """``G x R_k`` with ``(g, i)(h, j) = (gh, j)``, indexed ``g * k + i``."""
    if not is_group(G):
        raise ValueError("first factor must be a group")
    if k < 1:
        raise ValueError("k must be at least 1")
    m = G.order
    table = [
        [G.table[g][h] * k + j for h in range(m) for j in range(k)]
        for g in range(m)
        for _ in range(k)
    ]
    labels = [f"({G.label(g)},{i})" for g in range(m) for i in range(k)]
    return CayleyTable(m * k, table, labels)


def regular_representation(T: CayleyTable, s: int) -> Transformation:
    """The inner right translation ``x -> xs``."""
    if not 0 <= s < T.order:
        raise IndexError(f"element {s} out of range 0..{T.order - 1}")
    return Transformation(T.table[x][s] for x in range(T.order))


@dataclass(frozen=True)
class Embedding:
    partition: Partition
    images: tuple[Transformation, ...]  # images[s] = rho_s
    report: dict

    def psi(self, s: int) -> Transformation:
        return self.images[s]

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_json(),
            "images": [list(a) for a in self.images],
            "report": self.report,
        }


def embed(T: CayleyTable) -> Embedding:
    """Certify ``s -> rho_s`` as a monomorphism into Q(2) of reg(T_{E*}(S))."""
    analysis = analyze_right_group(T)
    E = analysis.partition
    m = T.order
    images = tuple(regular_representation(T, s) for s in range(m))

    per_element = []
    for s, rho in enumerate(images):
        estar = is_E_star_preserving(rho, E)
        regular = estar and is_regular_element(rho, E)
        collapses = regular and all(v == 1 for v in card_vector(rho, E))
        per_element.append(
            {"element": s, "e_star_preserving": estar, "regular": regular, "blocks_collapse": collapses}
        )
        if not (estar and regular and collapses):
            raise EmbeddingError(f"rho_{s} = {rho!r} is not in Q(2): {per_element[-1]}")

    for s in range(m):
        for t in range(m):
            if compose(images[s], images[t]) != images[T.mul(s, t)]:
                raise EmbeddingError(f"psi({s}*{t}) != psi({s}) psi({t})")
    if len(set(images)) != m:
        s, t = next((s, t) for s in range(m) for t in range(s) if images[s] == images[t])
        raise EmbeddingError(f"psi not injective: rho_{s} == rho_{t}")

    report = {
        "order": m,
        "idempotents": list(analysis.idempotents),
        "classes": [list(c) for c in E.blocks],
        "elements": per_element,
        "homomorphism_pairs_checked": m * m,
        "injective": True,
        "status": "pass",
    }
    return Embedding(E, images, report)
