"""Command-line interface: ``estar <subcommand> ...``.

Exit codes: 0 success, 1 a theorem check failed, 2 capacity or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import greens, ideals, kernel
from .core import (
    CapacityError,
    Partition,
    PreconditionError,
    Transformation,
    induced_class_map,
    is_E_preserving,
    is_E_star_preserving,
    is_regular_element,
    kernel_data,
    regularity_witness,
    z_set,
)
from .eggbox import eggbox_dot
from .embedding import NotARightGroupError, embed
from .engine import RELATIONS, default_budget, enumerate_semigroup, greens_oracle
from .tables import CayleyTable, NotAssociativeError
from .verify import run_verification, sweep_instances


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    blocks: tuple[tuple[int, ...], ...]
    seed: int = 0

    @classmethod
    def from_args(cls, args) -> "InstanceSpec":
        if getattr(args, "partition", None):
            text = args.partition
            if not text.lstrip().startswith("{"):
                with open(text) as fh:
                    text = fh.read()
            E = Partition.from_json(text)
        elif getattr(args, "blocks", None):
            E = Partition.from_sizes(_ints(args.blocks))
        else:
            raise ValueError("give --blocks SIZES or --partition JSON")
        return cls(E.n, E.blocks, getattr(args, "seed", 0))

    def partition(self) -> Partition:
        return Partition(self.n, self.blocks)


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _emit(obj, out=None):
    text = json.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_enumerate(args) -> int:
    E = InstanceSpec.from_args(args).partition()
    results = [enumerate_semigroup(kind, E).to_json() for kind in args.kind]
    _emit(results[0] if len(results) == 1 else results, args.out)
    return 0


def cmd_classify(args) -> int:
    E = InstanceSpec.from_args(args).partition()
    a = Transformation(_ints(args.img))
    star = is_E_star_preserving(a, E)
    kd = kernel_data(a)
    out = {
        "img": list(a),
        "E": E.to_json(),
        "E_preserving": is_E_preserving(a, E),
        "E_star_preserving": star,
        "z_set": list(z_set(a, E)),
        "kernel": [list(c) for c in kd.classes],
        "star_map": [[list(c), kd.star(c)] for c in kd.classes],
    }
    if star:
        out["class_map"] = list(induced_class_map(a, E))
        out["regular"] = is_regular_element(a, E)
        try:
            w = regularity_witness(a, E)
            out["regular_bruteforce"] = w is not None
            out["regularity_witness"] = list(w) if w is not None else None
        except CapacityError as exc:
            out["regular_bruteforce"] = f"skipped: {exc}"
        if out["regular"]:
            out["card_vector"] = list(ideals.card_vector(a, E))
            out["in_kernel_q2"] = ideals.in_kernel(a, E)
            if out["in_kernel_q2"]:
                out["idempotent"] = kernel.is_idempotent_in_q2(a, E)
    _emit(out)
    return 0


def cmd_greens(args) -> int:
    E = InstanceSpec.from_args(args).partition()
    S = enumerate_semigroup("regT", E)
    if args.dot:
        sys.stdout.write(eggbox_dot(S))
        return 0
    rels = [args.relation.upper()] if args.relation else list(RELATIONS)
    out = {"E": E.to_json(), "size": len(S), "classifications": []}
    for rel in rels:
        out["classifications"].append(greens_oracle(S, rel).to_json())
    if args.fast_d:
        gate = greens.run_profile_gate(sweep_instances(args.gate_n_max))
        out["d_criterion"] = "derived criterion (profile gate passed)" if gate else "witness search (gate failed)"
    else:
        out["d_criterion"] = "witness search"
    _emit(out)
    return 0


def cmd_ideals(args) -> int:
    E = InstanceSpec.from_args(args).partition()
    S = enumerate_semigroup("regT", E)
    out: dict = {"E": E.to_json(), "size": len(S)}
    if args.q_vector:
        out["q_set"] = ideals.q_set(ideals.bound_vector(_ints(args.q_vector), E), E).to_json(S)
    if args.principal_of:
        g = Transformation(_ints(args.principal_of))
        p = ideals.principal_ideal(g, E)
        out["principal"] = p.to_json(S)
        out["principal"]["bound_vector"] = list(ideals.card_vector(g, E).successor())
    if args.enumerate:
        listing = []
        for I in ideals.enumerate_ideals(E):
            entry = I.to_json(S)
            ok, gen = ideals.is_principal(I, E)
            entry["principal"] = ok
            entry["generator"] = S.index[gen] if ok else None
            listing.append(entry)
        out["ideals"] = listing
    if args.check_minimal:
        K = ideals.kernel_q2(E)
        all_ideals = ideals.enumerate_ideals(E)
        smallest = all(K.as_set <= I.as_set for I in all_ideals)
        out["kernel_q2"] = K.to_json(S)
        out["kernel_q2"]["contained_in_every_ideal"] = smallest
        if not smallest:
            _emit(out)
            return 1
    _emit(out)
    return 0


def cmd_kernel(args) -> int:
    E = InstanceSpec.from_args(args).partition()
    K = ideals.kernel_q2(E)
    out: dict = {"E": E.to_json(), "kernel_size": len(K)}
    failed = False
    if args.right_group_check or not (args.decompose or args.iso_tz_check):
        by_def = kernel.is_right_group(K.elements)
        by_cancel = kernel.is_regular_and_left_cancellative(K.elements)
        out["right_group"] = {"unique_solvability": by_def, "regular_left_cancellative": by_cancel}
        failed |= not (by_def and by_cancel)
    if args.decompose:
        groups = kernel.h_class_decomposition(E, seed=args.seed)
        out["h_classes"] = [
            {
                "cross_section": list(g.cross_section),
                "elements": [list(a) for a in g.elements],
                "identity": list(g.identity),
                "isomorphic_to_symmetric_group": True,
                "iso_table": None if g.iso is None else [[list(a), list(p)] for a, p in g.iso.items()],
            }
            for g in groups
        ]
    if args.iso_tz_check:
        res = kernel.iso_to_full_transformation_criterion(E)
        out["iso_to_full_transformation_semigroup"] = {
            "holds": res.holds,
            "all_kernel_idempotent": res.all_kernel_idempotent,
            "non_idempotent_witness": list(res.witness) if res.witness is not None else None,
        }
    if args.format == "table":
        print(f"E = {E!r}  |Q(2)| = {len(K)}")
        if "right_group" in out:
            print(f"right group: {out['right_group']}")
        for g in out.get("h_classes", []):
            print(f"  H[{','.join(map(str, g['cross_section']))}]  order {len(g['elements'])}  identity {g['identity']}")
        if "iso_to_full_transformation_semigroup" in out:
            print(f"reg(T) ~ T(Z): {out['iso_to_full_transformation_semigroup']}")
    else:
        _emit(out)
    return 1 if failed else 0


def cmd_embed(args) -> int:
    with open(args.table) as fh:
        T = CayleyTable.from_json(fh.read())
    emb = embed(T)
    _emit(emb.to_json(), args.out)
    return 0


def cmd_eggbox(args) -> int:
    E = InstanceSpec.from_args(args).partition()
    S = enumerate_semigroup(args.kind, E)
    sys.stdout.write(eggbox_dot(S, title=f"eggbox {args.kind}"))
    return 0


def cmd_verify(args) -> int:
    if args.blocks or args.partition:
        instances = [InstanceSpec.from_args(args).partition()]
    else:
        instances = sweep_instances(args.sweep_n_max)
    checks = args.checks.split(",") if args.checks else None
    report = run_verification(instances, default_budget(), checks, jobs=args.jobs,
                              embedding=not args.no_embedding)
    if args.json:
        _emit(report.to_json(timings=args.timings))
    else:
        for line in report.lines():
            print(line)
        counts = report.to_json()["counts"]
        print(f"{'PASS' if report.ok else 'FAIL'}: {counts}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="estar", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def instance_args(sp):
        sp.add_argument("--blocks", help="block sizes, e.g. 2,2 (contiguous blocks)")
        sp.add_argument("--partition", help='partition JSON or a file holding it: {"n": 4, "blocks": [[0,1],[2,3]]}')
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("enumerate", help="list the elements of T, T_E, T_E* or reg(T)")
    instance_args(sp)
    sp.add_argument("--kind", action="append", default=None, help="t, te, testar, regt (repeatable)")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("classify", help="membership predicates for a single map")
    instance_args(sp)
    sp.add_argument("--img", required=True, help="image sequence, e.g. 2,3,0,1")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("greens", help="Green's relations on reg(T)")
    instance_args(sp)
    sp.add_argument("--relation", choices=list("LRHDJlrhdj"))
    sp.add_argument("--dot", action="store_true", help="emit the egg-box diagram as DOT")
    sp.add_argument("--fast-d", action="store_true", help="gate the derived profile criterion for D")
    sp.add_argument("--gate-n-max", type=int, default=5)
    sp.set_defaults(func=cmd_greens)

    sp = sub.add_parser("ideals", help="Q(r) sets, principal ideals, ideal enumeration")
    instance_args(sp)
    sp.add_argument("--q-vector")
    sp.add_argument("--principal-of")
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--check-minimal", action="store_true")
    sp.set_defaults(func=cmd_ideals)

    sp = sub.add_parser("kernel", help="structure of the kernel Q(2)")
    instance_args(sp)
    sp.add_argument("--decompose", action="store_true")
    sp.add_argument("--right-group-check", action="store_true")
    sp.add_argument("--iso-tz-check", action="store_true")
    sp.add_argument("--format", choices=("json", "table"), default="json")
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("embed", help="embed a right group given as a Cayley table JSON file")
    sp.add_argument("table")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("eggbox", help="egg-box diagram (DOT) from the Green's oracle")
    instance_args(sp)
    sp.add_argument("--kind", default="regT")
    sp.set_defaults(func=cmd_eggbox)

    sp = sub.add_parser("verify", help="run the theorem checks")
    instance_args(sp)
    sp.add_argument("--sweep-n-max", type=int, default=4)
    sp.add_argument("--checks", help="comma-separated subset of check names")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--timings", action="store_true", help="include elapsed seconds (not byte-deterministic)")
    sp.add_argument("--no-embedding", action="store_true")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "kind", None) is None and args.command == "enumerate":
        args.kind = ["regT"]
    try:
        return args.func(args)
    except (CapacityError, PreconditionError, NotAssociativeError, NotARightGroupError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
