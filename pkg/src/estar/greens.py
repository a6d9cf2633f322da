"""Green's relations on reg(T) decided from images, kernels and block profiles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import (
    CapacityError,
    Partition,
    Transformation,
    _raw,
    image,
    is_E_star_preserving,
    kernel_classes,
    require_regular,
)
from .engine import default_budget, enumerate_semigroup


@lru_cache(maxsize=1 << 16)
def _image(a: Transformation) -> tuple[int, ...]:
    return image(a)


@lru_cache(maxsize=1 << 16)
def _kernel(a: Transformation) -> tuple[tuple[int, ...], ...]:
    return kernel_classes(a)


def l_related(a, b, E: Partition) -> bool:
    a, b = require_regular(a, E), require_regular(b, E)
    return _image(a) == _image(b)


def r_related(a, b, E: Partition) -> bool:
    a, b = require_regular(a, E), require_regular(b, E)
    return _kernel(a) == _kernel(b)


def h_related(a, b, E: Partition) -> bool:
    a, b = require_regular(a, E), require_regular(b, E)
    return _image(a) == _image(b) and _kernel(a) == _kernel(b)


@dataclass(frozen=True)
class DWitness:
    """A map in T_{E*}(X) restricting to a bijection between two images."""

    delta: Transformation
    source: tuple[int, ...]
    target: tuple[int, ...]

    def verify(self, E: Partition) -> bool:
        d = self.delta
        moved = [d[x] for x in self.source]
        return (
            is_E_star_preserving(d, E)
            and len(set(moved)) == len(self.source)
            and sorted(moved) == list(self.target)
        )


def _profile(img: tuple[int, ...], E: Partition) -> list[list[int]]:
    per_class: list[list[int]] = [[] for _ in E.blocks]
    for y in img:
        per_class[E.class_of[y]].append(y)
    return per_class


@lru_cache(maxsize=1 << 14)
def _d_witness(src: tuple[int, ...], dst: tuple[int, ...], E: Partition) -> DWitness | None:
    ps, pt = _profile(src, E), _profile(dst, E)
    k = len(E.blocks)
    sigma = [-1] * k
    used = [False] * k

    # match classes in index order, smallest admissible target first
    def search(i):
        if i == k:
            return True
        for j in range(k):
            if not used[j] and len(pt[j]) == len(ps[i]):
                used[j], sigma[i] = True, j
                if search(i + 1):
                    return True
                used[j], sigma[i] = False, -1
        return False

    if not search(0):
        return None
    img = [0] * E.n
    for i, block in enumerate(E.blocks):
        target = E.blocks[sigma[i]]
        for x, y in zip(ps[i], pt[sigma[i]]):
            img[x] = y
        rest_src = [x for x in block if x not in ps[i]]
        rest_dst = [y for y in target if y not in pt[sigma[i]]]
        for idx, x in enumerate(rest_src):
            img[x] = rest_dst[idx] if idx < len(rest_dst) else pt[sigma[i]][0]
    w = DWitness(_raw(img), src, dst)
    if not w.verify(E):
        raise RuntimeError(f"constructed D-witness failed verification: {w}")
    return w


# The profile criterion is derived, not quoted; it stays off until a sweep has
# confirmed it against the witness search.
_PROFILE_GATE = {"passed": False, "checked": 0}


def d_profile_criterion(a, b, E: Partition) -> bool:
    """Same multiset of per-block image counts."""
    a, b = require_regular(a, E), require_regular(b, E)
    pa = sorted(len(p) for p in _profile(_image(a), E))
    pb = sorted(len(p) for p in _profile(_image(b), E))
    return pa == pb


def run_profile_gate(instances) -> bool:
    """Compare the profile criterion with the witness search on every pair of every instance."""
    checked = 0
    for E in instances:
        S = enumerate_semigroup("regT", E)
        imgs = sorted({_image(a) for a in S})
        reps = {_image(a): a for a in S}
        for x in imgs:
            for y in imgs:
                a, b = reps[x], reps[y]
                if d_profile_criterion(a, b, E) != (_d_witness(x, y, E) is not None):
                    _PROFILE_GATE["passed"] = False
                    return False
                checked += 1
    _PROFILE_GATE.update(passed=True, checked=checked)
    return True


def profile_gate_passed() -> bool:
    return _PROFILE_GATE["passed"]


def d_related(a, b, E: Partition, fast: bool = False) -> tuple[bool, DWitness | None]:
    """D on reg(T): some delta in T_{E*}(X) maps image(a) bijectively onto image(b).

    With ``fast=True`` the per-block profile criterion answers instead (no
    witness is returned); this requires :func:`run_profile_gate` to have passed.
    """
    a, b = require_regular(a, E), require_regular(b, E)
    if fast:
        if not _PROFILE_GATE["passed"]:
            raise RuntimeError("profile criterion for D is gated; run run_profile_gate first")
        return d_profile_criterion(a, b, E), None
    if a == b:
        n = E.n
        w = DWitness(Transformation.identity(n), _image(a), _image(a))
        return True, w
    w = _d_witness(_image(a), _image(b), E)
    return w is not None, w


def _family(a: Transformation, E: Partition) -> frozenset:
    return frozenset(frozenset(a[x] for x in block) for block in E.blocks)


@lru_cache(maxsize=1 << 14)
def _covering_translation(fa: frozenset, fb: frozenset, E: Partition):
    """Some rho in reg(T) such that every set of ``fa`` lies inside some ``B rho`` for B in ``fb``."""
    budget = default_budget()
    S = enumerate_semigroup("regT", E, budget)
    if len(S) > budget.oracle_elements:
        raise CapacityError(f"|reg(T)| = {len(S)} exceeds oracle_elements={budget.oracle_elements}")
    fb = [tuple(B) for B in fb]
    for rho in S:
        imgs = [{rho[x] for x in B} for B in fb]
        if all(any(A <= I for I in imgs) for A in fa):
            return rho
    return None


def j_witnesses(a, b, E: Partition):
    """``(rho, tau)`` from the two-sided containment criterion, or None."""
    a, b = require_regular(a, E), require_regular(b, E)
    if len(_image(a)) != len(_image(b)):
        return None
    fa, fb = _family(a, E), _family(b, E)
    rho = _covering_translation(fa, fb, E)
    if rho is None:
        return None
    tau = _covering_translation(fb, fa, E)
    if tau is None:
        return None
    return rho, tau


def j_related(a, b, E: Partition) -> bool:
    return j_witnesses(a, b, E) is not None
