"""Command-line interface: ``difsets enumerate|oracle|verify|sizes|info``."""

from __future__ import annotations

import argparse
import logging
import sys

from .automorphisms import automorphism_group
from .catalog import CatalogId, catalog_entry, catalog_group
from .difference import Parameters, difference_set_parameters
from .enumeration import brute_force_difference_sets, enumerate_group
from .errors import CapacityError, DifsetsError, NotFoundError, ParseError, ResultsFormatError
from .groups import normal_subgroups, refinement_chain
from .parameters import possible_sizes
from .results import ResultsFile, format_results, read_results, results_dir, write_results

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CAPACITY = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_group_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--id", type=int, required=True, dest="gid")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="difsets", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log search progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="all difference sets of a catalog group up to equivalence")
    _add_group_args(p)
    p.add_argument("--out", help="directory for the results file "
                   "(default: $DIFSETS_RESULTS_DIR, else stdout only)")
    p.add_argument("--no-brc", action="store_true", help="skip the Bruck-Ryser-Chowla filter")
    p.add_argument("--no-identity-opt", action="store_true",
                   help="do not restrict the final search to sets containing the identity")
    p.add_argument("--no-sum-dedupe", action="store_true",
                   help="keep every refined sum instead of one per equivalence class")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("oracle", help="brute-force search (small groups only)")
    _add_group_args(p)

    p = sub.add_parser("verify", help="re-check a results file")
    p.add_argument("file")

    p = sub.add_parser("sizes", help="admissible (v, k, lambda) for a group order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--no-brc", action="store_true")

    p = sub.add_parser("info", help="structure summary of a catalog group")
    _add_group_args(p)
    return parser


def _emit(res: ResultsFile, out_dir) -> None:
    sys.stdout.write(format_results(res))
    target = results_dir(out_dir)
    if target is not None:
        target.mkdir(parents=True, exist_ok=True)
        path = write_results(target, res)
        print(f"wrote {path}", file=sys.stderr)


def cmd_enumerate(args) -> int:
    cid = CatalogId(args.order, args.gid)
    G = catalog_group(cid)
    reports = enumerate_group(G, use_brc=not args.no_brc,
                              dedupe_sums=not args.no_sum_dedupe,
                              identity_opt=not args.no_identity_opt,
                              jobs=max(1, args.jobs))
    _emit(ResultsFile(cid, [(r.params, r.sets) for r in reports]), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    cid = CatalogId(args.order, args.gid)
    G = catalog_group(cid)
    sets = brute_force_difference_sets(G)
    blocks: dict[Parameters, list] = {}
    for D in sets:
        blocks.setdefault(difference_set_parameters(G, D), []).append(D)
    _emit(ResultsFile(cid, sorted(blocks.items())), None)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        res = read_results(args.file)
    except ResultsFormatError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    print(f"ok: {len(res.sets)} sets for group {res.cid}")
    return EXIT_OK


def cmd_sizes(args) -> int:
    if args.order < 2:
        raise ParseError("order must be at least 2")
    for p in possible_sizes(args.order, use_brc=not args.no_brc):
        print(f"v={p.v} k={p.k} lambda={p.lam}")
    return EXIT_OK


def cmd_info(args) -> int:
    cid = CatalogId(args.order, args.gid)
    entry = catalog_entry(cid)
    G = catalog_group(cid)
    normals = normal_subgroups(G)
    chain = refinement_chain(G, normals)
    print(f"group {cid.order} {cid.id}: {entry.description}")
    print(f"order {G.order}")
    print(f"abelian {'yes' if G.is_abelian() else 'no'}")
    print(f"normal subgroups {len(normals)}")
    print(f"automorphisms {automorphism_group(G).size}")
    print("chain " + " > ".join(str(o) for o in chain.orders))
    return EXIT_OK


COMMANDS = {
    "enumerate": cmd_enumerate,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "sizes": cmd_sizes,
    "info": cmd_info,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"capacity limit: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (NotFoundError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DifsetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
