"""
Command-line front door for the finite lattice toolkit.

Every verb reads a lattice from ``--lattice`` (a JSON file, ``-`` for
standard input, or a stock name) or from piped standard input, so that
``lattice-toolkit construct tower --seed m3 --stages 2 | lattice-toolkit con``
works.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Sequence

import pandas as pd

from lattice_toolkit.analysis.verification_suite import VerificationSuite
from lattice_toolkit.config import ToolkitConfig, get_config, set_config
from lattice_toolkit.errors import LatticeError, MalformedInput
from lattice_toolkit.models.autgroup import automorphisms
from lattice_toolkit.models.congruence import all_congruences, cfi_profile, congruence_count, is_simple, princ_poset
from lattice_toolkit.models.construct import (
    add_top, freese_composite, glued_sum, m3_cap, product_of_chains, replace_atom_intervals,
    tower, w_gadget,
)
from lattice_toolkit.models.ideal_filter import filters, ideals
from lattice_toolkit.models.identity import (
    DISTRIBUTIVE_LAW, MODULAR_LAW, holds_in, is_distributive, is_modular,
    is_relatively_complemented, is_selfdual, parse_identity,
)
from lattice_toolkit.models.lattice import FiniteLattice, build_from_covers
from lattice_toolkit.utils.io import lattice_to_json, resolve_lattice, write_dot, write_json, write_png

logger = logging.getLogger(__name__)

CONSTRUCT_KINDS = (
    "w-gadget", "tower", "glued-sum", "m3-cap", "freese-composite",
    "product-chains", "replace-atoms", "add-top",
)

LAWS = {"modular": MODULAR_LAW, "distributive": DISTRIBUTIVE_LAW}


def _emit(data, as_json: bool, lines: Sequence[str]) -> None:
    if as_json:
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print("\n".join(lines))


def _lattice(args: argparse.Namespace, config: ToolkitConfig, source: Optional[str] = None) -> FiniteLattice:
    return resolve_lattice(source if source is not None else args.lattice,
                           strict=not args.lenient, config=config)


def cmd_build(args, config) -> int:
    if args.elements is not None:
        labels = [label.strip() for label in args.elements.split(",") if label.strip()]
        pairs = []
        for item in (args.covers or "").split(","):
            if not item.strip():
                continue
            if "<" not in item:
                raise MalformedInput(f"cover {item!r} should read lower<upper")
            lower, upper = item.split("<", 1)
            pairs.append((lower.strip(), upper.strip()))
        lattice = build_from_covers(labels, pairs, strict=not args.lenient, config=config)
    else:
        lattice = _lattice(args, config)
    print(lattice_to_json(lattice))
    return 0


def cmd_show(args, config) -> int:
    lattice = _lattice(args, config)
    labels = lattice.labels
    summary = {
        "size": lattice.size,
        "length": lattice.length,
        "covers": [[labels[a], labels[b]] for a, b in lattice.covers],
        "atoms": [labels[x] for x in lattice.atoms],
        "coatoms": [labels[x] for x in lattice.coatoms],
        "modular": is_modular(lattice, config),
        "distributive": is_distributive(lattice, config),
        "simple": is_simple(lattice),
        "relatively_complemented": is_relatively_complemented(lattice),
        "selfdual": is_selfdual(lattice),
    }
    lines = [f"{key}: {value}" for key, value in summary.items() if key != "covers"]
    lines.insert(2, "covers: " + " ".join(f"{a}<{b}" for a, b in summary["covers"]))
    _emit(summary, args.json, lines)
    return 0


def cmd_con(args, config) -> int:
    lattice = _lattice(args, config)
    if args.count and not args.dot:
        count = congruence_count(lattice)
        _emit({"count": count}, args.json, [str(count)])
        return 0
    con = all_congruences(lattice, config)
    if args.dot:
        write_dot(con.poset, args.dot, name="con")
    if args.count:
        _emit({"count": len(con)}, args.json, [str(len(con))])
        return 0
    described = [theta.describe() for theta in con]
    covers = [[described[a], described[b]] for a, b in con.poset.covers]
    _emit({"count": len(con), "congruences": described, "covers": covers}, args.json,
          [f"{len(con)} congruences"] + described)
    return 0


def cmd_princ(args, config) -> int:
    lattice = _lattice(args, config)
    family = princ_poset(lattice)
    described = [theta.describe() for theta in family]
    covers = [[described[a], described[b]] for a, b in family.poset.covers]
    lines = [f"{len(family)} principal congruences"] + described
    lines += [f"  {a} < {b}" for a, b in covers]
    _emit({"count": len(family), "congruences": described, "covers": covers}, args.json, lines)
    return 0


def cmd_cfi(args, config) -> int:
    profile = cfi_profile(_lattice(args, config))
    _emit(dict(zip(("con", "filt", "id"), profile.as_tuple())), args.json, [str(profile)])
    return 0


def cmd_aut(args, config) -> int:
    lattice = _lattice(args, config)
    group = automorphisms(lattice, config)
    generators = group.describe(lattice.labels)
    _emit({"order": group.order, "generators": generators}, args.json,
          [f"|Aut| = {group.order}"] + generators)
    return 0


def _ideal_listing(found, what: str, as_json: bool) -> None:
    described = [item.describe() for item in found]
    _emit({"count": len(found), what: described}, as_json, [f"{len(found)} {what}"] + described)


def cmd_ideals(args, config) -> int:
    _ideal_listing(ideals(_lattice(args, config)), "ideals", args.json)
    return 0


def cmd_filters(args, config) -> int:
    _ideal_listing(filters(_lattice(args, config)), "filters", args.json)
    return 0


def cmd_check_identity(args, config) -> int:
    lattice = _lattice(args, config)
    identity = LAWS[args.law] if args.law else parse_identity(args.identity)
    result = holds_in(lattice, identity, config)
    witness = result.counterexample_labels(lattice)
    data = {"identity": str(identity), "holds": result.holds, "assignments": result.assignments}
    lines = [f"{identity}: {'holds' if result.holds else 'fails'}"]
    if witness is not None:
        assignment = dict(zip(identity.variable_names(), witness))
        data["counterexample"] = assignment
        lines.append("counterexample: " + ", ".join(f"{k}={v}" for k, v in assignment.items()))
    _emit(data, args.json, lines)
    return 0


def _replacements(args, config) -> Dict[str, FiniteLattice]:
    assignment = {}
    for item in args.replace or []:
        if "=" not in item:
            raise MalformedInput(f"replacement {item!r} should read ATOM=LATTICE")
        atom, source = item.split("=", 1)
        assignment[atom.strip()] = _lattice(args, config, source.strip())
    return assignment


def cmd_construct(args, config) -> int:
    kind = args.kind
    if kind == "w-gadget":
        lattice = w_gadget(_lattice(args, config, args.seed), tag=args.tag, config=config)
    elif kind == "tower":
        seed = _lattice(args, config, args.seed or args.lattice or "m3")
        lattice = tower(seed, args.stages, config).lattice
    elif kind == "glued-sum":
        lattice = glued_sum(_lattice(args, config, args.lower), _lattice(args, config, args.upper), config)
    elif kind == "m3-cap":
        lattice = m3_cap(_lattice(args, config, args.base), _lattice(args, config, args.h), config)
    elif kind == "freese-composite":
        lattice = freese_composite(args.p, args.dim, args.m, args.n, config)
    elif kind == "product-chains":
        lattice = product_of_chains(args.n, args.height, config)
    elif kind == "replace-atoms":
        lattice = replace_atom_intervals(_lattice(args, config), _replacements(args, config), config)
    else:
        lattice = add_top(_lattice(args, config), config)
    logger.info("constructed %s with %d elements", kind, lattice.size)
    print(lattice_to_json(lattice))
    return 0


def cmd_paper_check(args, config) -> int:
    report = VerificationSuite(config).run(args.check)
    if args.json:
        print(report.to_json(orient="records", indent=2, force_ascii=False))
    else:
        with pd.option_context("display.max_colwidth", 80, "display.width", 200):
            print(report.to_string(index=False))
    return 0 if (report["result"] == "PASS").all() else 1


def cmd_export(args, config) -> int:
    lattice = _lattice(args, config)
    if not (args.dot or args.json_path or args.png):
        raise MalformedInput("export needs at least one of --dot, --json, --png")
    if args.dot:
        write_dot(lattice, args.dot)
    if args.json_path:
        write_json(lattice, args.json_path)
    if args.png:
        write_png(lattice, args.png)
    return 0


def _common_options(json_flag: bool = True) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lattice", "-l", help="JSON file, '-' for standard input, or a stock name")
    if json_flag:
        common.add_argument("--json", action="store_true", help="print results as JSON")
    common.add_argument("--limit", type=int, help="largest lattice to materialise")
    common.add_argument("--rand-seed", type=int, help="seed of the random corpus")
    common.add_argument("--lenient", action="store_true",
                        help="warn about and drop implied covers and unknown keys instead of failing")
    common.add_argument("--verbose", "-v", action="store_true")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()

    parser = argparse.ArgumentParser(prog="lattice-toolkit", description="Finite lattice computations")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", parents=[common], help="validate a lattice and print it as JSON")
    build.add_argument("--elements", help="comma-separated labels")
    build.add_argument("--covers", help="comma-separated lower<upper pairs")
    build.set_defaults(func=cmd_build)

    for name, func, text in (
        ("show", cmd_show, "summary of order-theoretic properties"),
        ("princ", cmd_princ, "principal congruences and their order"),
        ("cfi", cmd_cfi, "numbers of congruences, filters and ideals"),
        ("aut", cmd_aut, "automorphism group"),
        ("ideals", cmd_ideals, "all ideals"),
        ("filters", cmd_filters, "all filters"),
    ):
        commands.add_parser(name, parents=[common], help=text).set_defaults(func=func)

    con = commands.add_parser("con", parents=[common], help="congruence lattice")
    con.add_argument("--count", action="store_true", help="only the number of congruences")
    con.add_argument("--dot", metavar="FILE", help="write the Hasse diagram of Con(L) as DOT")
    con.set_defaults(func=cmd_con)

    check = commands.add_parser("check-identity", parents=[common], help="evaluate a lattice identity")
    law = check.add_mutually_exclusive_group(required=True)
    law.add_argument("--identity", help="(= term term) in prefix syntax")
    law.add_argument("--law", choices=sorted(LAWS))
    check.set_defaults(func=cmd_check_identity)

    construct = commands.add_parser("construct", parents=[common], help="build a derived lattice")
    construct.add_argument("kind", choices=CONSTRUCT_KINDS)
    construct.add_argument("--seed", "--seed-lattice", dest="seed",
                           help="seed lattice for w-gadget and tower (tower falls back to m3)")
    construct.add_argument("--stages", type=int, default=1)
    construct.add_argument("--tag")
    construct.add_argument("--lower", default="chain2")
    construct.add_argument("--upper", default="chain2")
    construct.add_argument("--base", default="m3")
    construct.add_argument("--h", default="chain2")
    construct.add_argument("--p", type=int, default=2)
    construct.add_argument("--dim", type=int, default=2)
    construct.add_argument("--m", type=int, default=0)
    construct.add_argument("--n", type=int, default=1)
    construct.add_argument("--height", type=int, default=1, help="chain height for product-chains")
    construct.add_argument("--replace", action="append", metavar="ATOM=LATTICE")
    construct.set_defaults(func=cmd_construct)

    paper_check = commands.add_parser("paper-check", aliases=["verify"], parents=[common],
                                 help="run the acceptance checks")
    paper_check.add_argument("--check", action="append", choices=[name for name, _ in VerificationSuite.CHECKS])
    paper_check.set_defaults(func=cmd_paper_check)

    export = commands.add_parser("export", parents=[_common_options(json_flag=False)],
                                 help="write DOT, JSON or PNG files")
    export.add_argument("--dot")
    export.add_argument("--json", dest="json_path")
    export.add_argument("--png")
    export.set_defaults(func=cmd_export, json=False)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    config = ToolkitConfig.from_env().with_overrides(MAX_ELEMENTS=args.limit, RANDOM_SEED=args.rand_seed)
    previous = get_config()
    set_config(config)
    try:
        return args.func(args, config)
    except LatticeError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    finally:
        set_config(previous)


if __name__ == "__main__":
    sys.exit(main())
