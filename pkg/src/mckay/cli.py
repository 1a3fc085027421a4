"""Command line front end.

Every subcommand emits deterministic JSON on stdout (DOT for
`quiver --dot`); diagnostics go to stderr.  Exit codes: 0 success,
2 usage error (bad arguments or unknown group spec), 1 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import cache
from .chartab import CharacterTable, character_table
from .cyclotomic import CycNumber, root_of_unity
from .errors import InternalError
from .groups import FiniteSubgroup, GroupSpec, build_group
from .highest_weight import drinfeld_polynomials, freudenthal, weylkac_oracle
from .quiver import CartanData, mckay_quiver, to_dot
from .roots import reconstruct_g_dim, root_system_for
from .strata import enumerate_strata, enumerate_strata_rank1, fiber_parts

__all__ = ["run", "main"]


def _build_payload(spec: GroupSpec) -> dict:
    group = build_group(spec)
    table = character_table(group)
    cartan = mckay_quiver(table)
    return {"group": group.to_json_obj(), "chartab": table.to_json_obj(),
            "cartan": cartan.to_json_obj()}


def load_pipeline(spec: GroupSpec, use_cache: bool = True
                  ) -> tuple[FiniteSubgroup, CharacterTable, CartanData]:
    """Group, character table, and Cartan data for a spec, through the
    on-disk cache unless told otherwise."""
    key = str(spec)
    payload = cache.load(key) if use_cache else None
    if payload is None:
        payload = _build_payload(spec)
        if use_cache:
            cache.store(key, payload)
    return (FiniteSubgroup.from_json_obj(payload["group"]),
            CharacterTable.from_json_obj(payload["chartab"]),
            CartanData.from_json_obj(payload["cartan"]))


def _parse_int_vector(text: str, length: int, label: str) -> tuple[int, ...]:
    if text.strip() == "":
        values: tuple[int, ...] = ()
    else:
        try:
            values = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise ValueError(f"--{label} must be a comma-separated integer list")
    if len(values) != length:
        raise ValueError(f"--{label} must have {length} entries, got {len(values)}")
    return values


_EIG_ROOT = re.compile(r"^z(\d+)(?:\^(-?\d+))?$")


def _parse_eigenvalue(token: str) -> CycNumber:
    token = token.strip()
    match = _EIG_ROOT.match(token)
    if match:
        return root_of_unity(int(match.group(1)), int(match.group(2) or 1))
    try:
        return CycNumber.coerce(Fraction(token))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"bad eigenvalue {token!r}: use integers, fractions "
                         "like 3/2, or roots of unity like z8^3")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _multiplicity_json(table) -> dict:
    return {f"({','.join(str(x) for x in v)})": m for v, m in table.sorted_items()}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mckay",
        description="Exact McKay correspondence toolkit for finite "
                    "subgroups of SL2(C)")
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_command(name: str, help_text: str):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("spec", help="cyclic:n | binary-dihedral:m | "
                         "binary-tetrahedral | binary-octahedral | "
                         "binary-icosahedral")
        cmd.add_argument("--no-cache", action="store_true",
                         help="bypass the on-disk cache")
        return cmd

    spec_command("group", "full group enumeration as JSON")
    spec_command("chartab", "exact character table as JSON")
    quiver_cmd = spec_command("quiver", "McKay quiver and affine Cartan data")
    quiver_cmd.add_argument("--dot", action="store_true",
                            help="emit Graphviz DOT instead of JSON")
    spec_command("roots", "positive roots of the finite root system")
    spec_command("dimg", "dimension of the simple Lie algebra, reconstructed")

    char_cmd = spec_command("char", "weight multiplicities of the integrable "
                            "module with the given highest weight")
    char_cmd.add_argument("--hw", required=True,
                          help="framing w as comma-separated multiplicities")
    char_cmd.add_argument("--depth", type=int, required=True,
                          help="height window bound")
    char_cmd.add_argument("--oracle", action="store_true",
                          help="also run the character-series algorithm and "
                          "fail on any disagreement")

    strata_cmd = spec_command("strata", "stratum labels of the fixed-point set")
    strata_cmd.add_argument("--n", type=int, required=True)
    strata_cmd.add_argument("--w", default=None,
                            help="framing (defaults to rank one)")

    fiber_cmd = spec_command("fiber", "fiber decomposition bookkeeping")
    fiber_cmd.add_argument("--v", required=True)
    fiber_cmd.add_argument("--w", required=True)
    fiber_cmd.add_argument("--v0", required=True)
    fiber_cmd.add_argument("--lam", default="")

    drinfeld_cmd = sub.add_parser(
        "drinfeld", help="Drinfeld polynomials from per-vertex eigenvalues")
    drinfeld_cmd.add_argument("--eigs", required=True,
                              help="semicolon-separated vertices, each a "
                              "comma-separated eigenvalue multiset")
    return parser


def _dispatch(args) -> None:
    if args.command == "drinfeld":
        multisets = []
        for group_text in args.eigs.split(";"):
            group_text = group_text.strip()
            multisets.append([] if not group_text else
                             [_parse_eigenvalue(tok)
                              for tok in group_text.split(",")])
        _emit(drinfeld_polynomials(multisets).to_json_obj())
        return

    spec = GroupSpec.parse(args.spec)
    use_cache = not args.no_cache
    group, table, cartan = load_pipeline(spec, use_cache=use_cache)

    if args.command == "group":
        _emit(group.to_json_obj())
    elif args.command == "chartab":
        _emit(table.to_json_obj())
    elif args.command == "quiver":
        if args.dot:
            sys.stdout.write(to_dot(cartan))
        else:
            _emit(cartan.to_json_obj())
    elif args.command == "roots":
        system = root_system_for(cartan)
        _emit({"type": cartan.ade_type, **system.to_json_obj()})
    elif args.command == "dimg":
        _emit({"dim_g": reconstruct_g_dim(cartan), "type": cartan.ade_type})
    elif args.command == "char":
        w = _parse_int_vector(args.hw, cartan.vertex_count, "hw")
        table_f = freudenthal(w, cartan, args.depth)
        if args.oracle:
            table_k = weylkac_oracle(w, cartan, args.depth)
            if table_f != table_k:
                raise InternalError("freudenthal and the character series "
                                    "disagree; this is a bug")
        _emit(_multiplicity_json(table_f))
    elif args.command == "strata":
        if args.w is None:
            labels = enumerate_strata_rank1(args.n, cartan)
        else:
            w = _parse_int_vector(args.w, cartan.vertex_count, "w")
            labels = enumerate_strata(args.n, w, cartan)
        _emit([label.to_json_obj() for label in labels])
    elif args.command == "fiber":
        v = _parse_int_vector(args.v, cartan.vertex_count, "v")
        w = _parse_int_vector(args.w, cartan.vertex_count, "w")
        v0 = _parse_int_vector(args.v0, cartan.vertex_count, "v0")
        lam = tuple(sorted((int(x) for x in args.lam.split(",") if x.strip()),
                           reverse=True))
        if any(part <= 0 for part in lam):
            raise ValueError("--lam parts must be positive integers")
        _emit(fiber_parts(v, w, v0, lam, cartan).to_json_obj())
    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {args.command!r}")


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        _dispatch(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
