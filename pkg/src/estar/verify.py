"""Per-theorem invariant checks, each against an independent brute-force oracle.

Every check takes a partition and returns a :class:`CheckResult`; a failing
result always carries a concrete counterexample.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from math import factorial, prod

import numpy as np

from . import greens, ideals, kernel
from .core import (
    Partition,
    integer_partitions,
    is_E_preserving,
    is_E_star_preserving,
    is_E_star_preserving_pairwise,
    induced_class_map,
    is_regular_element,
    kernel_data,
    image,
    regularity_witness,
    set_partitions,
    z_set,
)
from .embedding import NotARightGroupError, embed, make_right_group
from .engine import (
    Budget,
    closure,
    default_budget,
    enumerate_semigroup,
    filtered_sweep,
    greens_oracle,
    is_ideal,
    two_sided_ideal,
)
from .tables import (
    chain_semilattice,
    cyclic_group,
    klein_group,
    left_zero,
    symmetric_group,
    trivial_group,
)


@dataclass
class CheckResult:
    theorem: str
    instance: str
    status: str  # pass / fail / skip
    counterexample: dict | None = None
    detail: str = ""
    elapsed: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        d = asdict(self)
        if not timings:
            d.pop("elapsed")
        return d


@dataclass
class VerificationReport:
    entries: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    @property
    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if e.status == "fail"]

    def to_json(self, timings: bool = False) -> dict:
        return {
            "status": "pass" if self.ok else "fail",
            "counts": {s: sum(e.status == s for e in self.entries) for s in ("pass", "fail", "skip")},
            "entries": [e.to_json(timings) for e in self.entries],
        }

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            line = f"{e.status.upper():4}  {e.theorem:<22} {e.instance}"
            if e.detail:
                line += f"  ({e.detail})"
            if e.counterexample:
                line += f"  counterexample={e.counterexample}"
            out.append(line)
        return out


def describe(E: Partition) -> str:
    return "blocks=" + "|".join(",".join(map(str, b)) for b in E.blocks)


class _Fail(Exception):
    def __init__(self, **counterexample):
        self.counterexample = counterexample


def _run(theorem, E, fn, *args):
    t0 = time.perf_counter()
    try:
        detail = fn(E, *args) or ""
        status, cx = "pass", None
        if isinstance(detail, tuple) and detail[0] == "skip":
            status, detail = "skip", detail[1]
    except _Fail as f:
        status, cx, detail = "fail", f.counterexample, ""
    return CheckResult(theorem, describe(E), status, cx, detail, time.perf_counter() - t0)


# --- core-model / semigroup-engine ---------------------------------------------


def check_core(E: Partition, budget: Budget):
    """Membership predicates agree with their pairwise definitions; kernel data is consistent."""
    if E.n > 5:
        return ("skip", "n^n sweep only for n <= 5")
    sweep_estar = filtered_sweep("T_Estar", E, budget)
    for a in filtered_sweep("T", E, budget):
        star = is_E_star_preserving(a, E)
        if star != is_E_star_preserving_pairwise(a, E):
            raise _Fail(element=list(a), relation="E* predicate vs pairwise definition")
        if star and not is_E_preserving(a, E):
            raise _Fail(element=list(a), relation="E* implies E")
        kd = kernel_data(a)
        if len(kd.classes) != len(image(a)) or sorted(kd.star_map.values()) != list(image(a)):
            raise _Fail(element=list(a), relation="kernel data vs image")
        if star:
            tau = induced_class_map(a, E)
            if sorted(tau) != list(range(len(E.blocks))) or z_set(a, E):
                raise _Fail(element=list(a), relation="class map permutation / empty Z")
    direct = enumerate_semigroup("T_Estar", E, budget).elements
    if set(direct) != set(sweep_estar):
        diff = sorted(set(direct) ^ set(sweep_estar))[0]
        raise _Fail(element=list(diff), relation="product construction vs filtered sweep")
    return f"{len(direct)} elements"


def check_regularity(E: Partition, budget: Budget):
    """Image meets every block <=> some b in T_{E*} has aba = a; and reg(T) = T_{E*}(X)."""
    S = enumerate_semigroup("T_Estar", E, budget)
    R = enumerate_semigroup("regT", E, budget)
    if S.elements != R.elements:
        extra = sorted(set(S.elements) - set(R.elements))[0]
        raise _Fail(element=list(extra), relation="finite collapse reg(T) = T_E*")
    if len(S) > budget.oracle_elements:
        return f"{len(S)} elements (collapse only; witness search above oracle_elements)"
    for a in S:
        if is_regular_element(a, E) != (regularity_witness(a, E, S.elements) is not None):
            raise _Fail(element=list(a), relation="regularity criterion vs witness search")
    return f"{len(S)} elements"


def check_largest_regular(E: Partition, budget: Budget, max_size: int = 2000):
    S = enumerate_semigroup("T_Estar", E, budget)
    if len(S) > max_size:
        return ("skip", f"|T_E*| = {len(S)} > {max_size}")
    R = enumerate_semigroup("regT", E, budget)
    in_reg = np.zeros(len(S), dtype=bool)
    in_reg[S.indices(R.elements)] = True
    T = S.table
    ridx = np.flatnonzero(in_reg)
    sub = T[np.ix_(ridx, ridx)]
    if not in_reg[sub].all():
        i, j = np.argwhere(~in_reg[sub])[0]
        raise _Fail(a=list(S.elements[ridx[i]]), b=list(S.elements[ridx[j]]), relation="reg(T) closed")
    for a in ridx:
        # every b in T_E* with a b a = a must be regular, and one must exist
        witnesses = np.flatnonzero(T[T[a, :], a] == a)
        if len(witnesses) == 0:
            raise _Fail(element=list(S.elements[a]), relation="no inverse witness")
        if not in_reg[witnesses].all():
            b = witnesses[~in_reg[witnesses]][0]
            raise _Fail(a=list(S.elements[a]), b=list(S.elements[b]), relation="witness outside reg(T)")
    return f"{len(R)} elements"


# --- greens-characterized --------------------------------------------------------


def _pair_fn(rel):
    if rel == "D":
        return lambda a, b, E: greens.d_related(a, b, E)[0]
    return {"L": greens.l_related, "R": greens.r_related, "H": greens.h_related, "J": greens.j_related}[rel]


def check_greens(E: Partition, budget: Budget, max_size: int = 2000):
    """Characterized L/R/H/D/J equal the definitional classes on every pair."""
    S = enumerate_semigroup("regT", E, budget)
    m = len(S)
    if m > max_size:
        return ("skip", f"|reg(T)| = {m} > {max_size}")
    els = S.elements
    for rel in ("L", "R", "H", "D", "J"):
        labels = greens_oracle(S, rel).labels
        fn = _pair_fn(rel)
        for i in range(m):
            a, li = els[i], labels[i]
            for j in range(i, m):
                if fn(a, els[j], E) != (li == labels[j]):
                    raise _Fail(a=list(a), b=list(els[j]), relation=rel, oracle=li == labels[j])
    oracle = {rel: greens_oracle(S, rel) for rel in ("D", "J")}
    if oracle["D"].classes != oracle["J"].classes:
        raise _Fail(relation="D == J")
    return f"{m} elements, {m * (m + 1) // 2} pairs x 5 relations"


# --- ideal-lattice --------------------------------------------------------------


def check_lemma_divides(E: Partition, budget: Budget, max_size: int = 400):
    S = enumerate_semigroup("regT", E, budget)
    if len(S) > max_size:
        return ("skip", f"|reg(T)| = {len(S)} > {max_size}")
    pairs = 0
    for j, b in enumerate(S.elements):
        brute = two_sided_ideal(S, j)
        for i, a in enumerate(S.elements):
            d = ideals.divides(a, b, E)
            if d != (i in brute):
                raise _Fail(a=list(a), b=list(b), relation="divides vs brute-force factorization")
            if d:
                lam, mu = ideals.construct_factorization(a, b, E)
                pairs += 1
    return f"{pairs} factorizations recomposed"


def check_ideal_lattice(E: Partition, budget: Budget, max_size: int = 2000):
    S = enumerate_semigroup("regT", E, budget)
    if len(S) > max_size:
        return ("skip", f"|reg(T)| = {len(S)} > {max_size}")
    qsets = {}
    for r in ideals.all_bound_vectors(E):
        q = ideals.q_set(r, E, budget)
        if not is_ideal(S, q.elements):
            raise _Fail(r=list(r.values), relation="Q(r) is an ideal")
        qsets[r.values] = q.as_set
    brute = [frozenset(S.elements[i] for i in I) for I in ideals.ideals_bruteforce(S)]
    for W in brute:
        inside = [q for q in qsets.values() if q <= W]
        if frozenset().union(*inside) != W:
            raise _Fail(ideal=sorted(S.indices(W)), relation="ideal is a union of Q(r)")
    enumerated = {I.as_set for I in ideals.enumerate_ideals(E, budget)}
    if enumerated != set(brute):
        raise _Fail(relation="enumerate_ideals vs brute-force ideals",
                    missing=len(set(brute) - enumerated), extra=len(enumerated - set(brute)))
    K = ideals.kernel_q2(E, budget).as_set
    if K != frozenset.intersection(*brute):
        raise _Fail(relation="Q(2) = intersection of all ideals")
    for g in S:
        if not K <= ideals.principal_ideal(g, E, budget).as_set:
            raise _Fail(g=list(g), relation="Q(2) inside every principal ideal")
    for W in brute:
        ok, gen = ideals.is_principal(W, E)
        ok_b, _ = ideals.is_principal_bruteforce(S, W)
        if ok != ok_b:
            raise _Fail(ideal=sorted(S.indices(W)), relation="principality vs generator search")
        if ok and ideals.principal_ideal(gen, E).as_set != W:
            raise _Fail(ideal=sorted(S.indices(W)), relation="returned generator")
    for g in S:
        pi = ideals.principal_ideal(g, E, budget).as_set
        q = qsets[ideals.card_vector(g, E).successor().values]
        brute_pi = frozenset(S.elements[i] for i in two_sided_ideal(S, g))
        if not pi == q == brute_pi:
            raise _Fail(g=list(g), relation="principal ideal = Q(cv+1) = brute S g S")
    return f"{len(qsets)} Q(r) sets, {len(brute)} ideals"


# --- kernel-structure -----------------------------------------------------------


def check_kernel(E: Partition, budget: Budget):
    K = ideals.kernel_q2(E, budget)
    direct = ideals.kernel_direct(E)
    if K.elements != direct:
        raise _Fail(relation="Q(2) via q_set vs direct construction")
    k = len(E.blocks)
    expected = factorial(k) * prod(E.sizes)
    if len(K) != expected:
        raise _Fail(relation="|Q(2)| = |I|! prod |A_i|", size=len(K), expected=expected)
    for a in K:
        if any(len({a[x] for x in b}) != 1 for b in E.blocks):
            raise _Fail(element=list(a), relation="Q(2) = all blocks collapse")
        if any(len(set(a) & set(b)) != 1 for b in E.blocks):
            raise _Fail(element=list(a), relation="image is a cross-section")
    if not kernel.is_right_group(K.elements):
        raise _Fail(relation="unique solvability in Q(2)", pair=kernel.right_group_failure(K.elements))
    if not kernel.is_regular_and_left_cancellative(K.elements):
        raise _Fail(relation="Q(2) regular and left cancellative")
    groups = kernel.h_class_decomposition(E)
    if len(groups) != prod(E.sizes) or any(len(g.elements) != factorial(k) for g in groups):
        raise _Fail(relation="H-class count and order")
    idem = [a for a in K if kernel.is_idempotent_in_q2(a, E)]
    if len(idem) != prod(E.sizes) or set(idem) != {g.identity for g in groups}:
        raise _Fail(relation="idempotents = H-class identities, count prod |A_i|")
    for e in idem:
        for f in idem:
            if tuple(f[e[x]] for x in range(E.n)) != f:
                raise _Fail(e=list(e), f=list(f), relation="identities form a right zero band")
    if len(K) <= 400:
        KS = closure(K.elements, E, budget)
        if set(KS.elements) != set(K.elements):
            raise _Fail(relation="Q(2) closed")
        H = greens_oracle(KS, "H")
        by_image = {}
        for i, a in enumerate(KS.elements):
            by_image.setdefault(tuple(sorted(set(a))), []).append(i)
        if sorted(H.classes) != sorted(tuple(v) for v in by_image.values()):
            raise _Fail(relation="H in Q(2) = equal image")
        for a in KS.elements:
            for b in KS.elements:
                if greens.h_related(a, b, E) != (set(a) == set(b)):
                    raise _Fail(a=list(a), b=list(b), relation="h_related on Q(2)")
    return f"|Q(2)| = {len(K)}, {len(groups)} groups of order {factorial(k)}"


def check_iso_criterion(E: Partition, budget: Budget):
    res = kernel.iso_to_full_transformation_criterion(E)
    if res.holds != (len(E.blocks) == 1):
        raise _Fail(relation="criterion true iff single block")
    if not res.holds and res.witness is None:
        raise _Fail(relation="non-idempotent witness missing")
    if res.holds:
        S = enumerate_semigroup("regT", E, budget)
        if E.n <= budget.enumeration_n and S.elements != filtered_sweep("T", E, budget):
            raise _Fail(relation="reg(T) = T(X) for one block")
    return "single block" if res.holds else f"witness {list(res.witness)}"


INSTANCE_CHECKS = {
    "core": check_core,
    "regularity": check_regularity,
    "largest-regular": check_largest_regular,
    "greens-transfer": check_greens,
    "lemma-divides": check_lemma_divides,
    "ideal-lattice": check_ideal_lattice,
    "kernel-structure": check_kernel,
    "iso-criterion": check_iso_criterion,
}


# --- embedding --------------------------------------------------------------------

STANDARD_GROUPS = {
    "trivial": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z2xZ2": klein_group,
    "S3": lambda: symmetric_group(3),
}


def right_group_family(max_order: int = 8):
    for name, make in STANDARD_GROUPS.items():
        G = make()
        for k in range(1, 5):
            if G.order * k <= max_order:
                yield f"{name} x R{k}", make_right_group(G, k)


def check_embedding(name, T, budget: Budget, enumerate_up_to: int = 6) -> CheckResult:
    t0 = time.perf_counter()
    try:
        emb = embed(T)
        E = emb.partition
        S = closure(emb.images, E, budget)
        index = {a: i for i, a in enumerate(emb.images)}
        if set(S.elements) != set(emb.images):
            raise _Fail(relation="closure of psi(S) equals psi(S)")
        for s in range(T.order):
            for t in range(T.order):
                if index[S.elements[S.table[S.index[emb.images[s]], S.index[emb.images[t]]]]] != T.mul(s, t):
                    raise _Fail(s=s, t=t, relation="psi(S) table isomorphic to S")
        detail = f"|S| = {T.order}, blocks {list(E.sizes)}"
        if T.order <= enumerate_up_to:
            K = ideals.kernel_q2(E, budget).as_set
            outside = [list(a) for a in emb.images if a not in K]
            if outside:
                raise _Fail(element=outside[0], relation="psi(S) inside enumerated Q(2)")
            detail += f", psi(S) inside enumerated Q(2) of size {len(K)}"
        status, cx = "pass", None
    except _Fail as f:
        status, cx, detail = "fail", f.counterexample, ""
    return CheckResult("embedding", name, status, cx, detail, time.perf_counter() - t0)


def check_embedding_rejections() -> list[CheckResult]:
    out = []
    for name, T in (("left-zero L2", left_zero(2)), ("chain semilattice C2", chain_semilattice(2))):
        try:
            embed(T)
            out.append(CheckResult("embedding-rejects", name, "fail", {"relation": "accepted a non right group"}))
        except NotARightGroupError as exc:
            a, b = exc.pair
            out.append(CheckResult("embedding-rejects", name, "pass", None,
                                   f"a={a}, b={b}: {exc.count} solutions of ax=b"))
    return out


# --- sweeps ---------------------------------------------------------------------


def sweep_instances(n_max: int, all_set_partitions_up_to: int = 5) -> list[Partition]:
    """Canonical sweep order: n ascending; every set partition for small n, block shapes above."""
    out = []
    for n in range(1, n_max + 1):
        if n <= all_set_partitions_up_to:
            out.extend(set_partitions(n))
        else:
            shapes = sorted(integer_partitions(n), key=lambda p: p)
            out.extend(Partition.from_sizes(p) for p in shapes)
    return out


def verify_instance(E: Partition, budget: Budget | None = None, checks=None) -> list[CheckResult]:
    budget = budget or default_budget()
    names = checks or list(INSTANCE_CHECKS)
    return [_run(name, E, INSTANCE_CHECKS[name], budget) for name in names]


def _verify_star(args):
    return verify_instance(*args)


def run_verification(instances, budget: Budget | None = None, checks=None,
                     jobs: int = 1, embedding: bool = True) -> VerificationReport:
    budget = budget or default_budget()
    report = VerificationReport()
    work = [(E, budget, checks) for E in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_star, work))
    else:
        results = [_verify_star(w) for w in work]
    for r in results:
        report.entries.extend(r)
    if embedding:
        for name, T in right_group_family():
            report.entries.append(check_embedding(name, T, budget))
        report.entries.extend(check_embedding_rejections())
    return report
