#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
⭐ CLI - RECENSEMENT DES COURBES D'EDWARDS ET DE LEGENDRE ⭐

SOUS-COMMANDES:
1. census   - Table des traces d'un corps F_q (CSV ou JSON)
2. verify   - Rapports de vérification (6.4, 6.5, katz, 7.6, 7.7, 7.8, 8.1, 8.2, 8.4, huff, all)
3. map      - Évaluation ou vérification d'une isogénie du catalogue
4. classify - Fiche complète d'un paramètre d
5. deuring  - Polynôme de Deuring H_p et ses racines
6. orbit    - Orbite de d sous les six isomorphismes de Legendre

CODES DE SORTIE:
    0 succès, 1 erreur d'usage, 2 rapport en échec (ou invariant interne violé),
    3 précondition non satisfaite (corps, borne, classe de résidus, rationalité)

Exemple:
    python -m cli.main census --p 13
    python -m cli.main verify --p 13 --theorem katz
    python -m cli.main map --name psi --p 13 --d 2 --point 0,1
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from census import (THEOREM_ALIASES, THEOREM_IDS, applicable_theorems, bijection_trace, classify,
                    deuring_poly, run_theorem, trace_spectrum)
from config import LOG_LEVELS, configure_logging, get_settings
from curves import format_point, is_on_curve, parse_point
from errors import CensusError, CensusInvariantError, FieldError, NotRationalError
from ff import field_ctx, format_element, format_field_ctx, parse_element
from maps import MAP_NAMES, catalog, huff_param, orbit, verify_isogeny
from models import table_to_csv, table_to_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    """Arguments that parse but cannot be combined."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--p", type=int, help="Caractéristique (premier impair)")
    common.add_argument("--m", type=int, default=1, help="Degré de l'extension (q = p^m)")
    common.add_argument("--format", choices=("csv", "json"), default=None, help="Format de sortie")
    common.add_argument("--out", type=Path, default=None, help="Fichier de sortie (stdout par défaut)")
    common.add_argument("--max-q", type=int, default=None, help="Borne sur q (surcharge EDWARDS_CENSUS_MAX_Q)")
    common.add_argument("--threads", type=int, default=None, help="Workers du recensement")
    common.add_argument("--log-level", type=str.upper, choices=LOG_LEVELS, default=None, help="Niveau de logging")

    parser = _Parser(prog="edwards-census", description="Isogénies et recensement des courbes d'Edwards/Legendre")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("census", parents=[common], help="Table des traces de F_q")

    verify = sub.add_parser("verify", parents=[common], help="Vérifie une identité de comptage")
    verify.add_argument("--theorem", default="all",
                        choices=THEOREM_IDS + tuple(THEOREM_ALIASES) + ("bijection", "all"))
    verify.add_argument("--d", default=None, help="Paramètre pour --theorem bijection")

    map_cmd = sub.add_parser("map", parents=[common], help="Évalue ou vérifie une isogénie")
    map_cmd.add_argument("--name", required=True, choices=MAP_NAMES + ("huff",))
    map_cmd.add_argument("--d", default=None)
    map_cmd.add_argument("--a", default=None, help="Coefficient a (Edwards tordue, Huff)")
    map_cmd.add_argument("--b", default=None, help="Coefficient b (Huff)")
    map_cmd.add_argument("--point", default=None, help='"x,y", "inf" ou "exc:LABEL"')
    map_cmd.add_argument("--allow-extension", action="store_true",
                         help="Autorise les images calculées dans une extension de F_q")

    classify_cmd = sub.add_parser("classify", parents=[common], help="Fiche d'un paramètre d")
    classify_cmd.add_argument("--d", required=True)

    sub.add_parser("deuring", parents=[common], help="Polynôme de Deuring H_p")

    orbit_cmd = sub.add_parser("orbit", parents=[common], help="Orbite de d")
    orbit_cmd.add_argument("--d", required=True)
    return parser


# ============================================================================
# SORTIE
# ============================================================================

def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text, encoding="utf-8")
        print(f"✅ Écrit dans {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _ctx(args: argparse.Namespace):
    if args.p is None:
        raise UsageError("--p is required")
    return field_ctx(args.p, args.m, max_q=args.max_q or get_settings().max_q)


def _element(text: str, ctx):
    try:
        return parse_element(text, ctx)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{args.command} needs {', '.join(missing)}")


# ============================================================================
# SOUS-COMMANDES
# ============================================================================

def cmd_census(args: argparse.Namespace) -> int:
    ctx = _ctx(args)
    table = trace_spectrum(ctx, threads=args.threads)
    fmt = args.format or get_settings().output_format
    _emit(args, table_to_json(table) if fmt == "json" else table_to_csv(table))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    ctx = _ctx(args)
    if args.theorem == "bijection":
        _require(args, "d")
        report = bijection_trace(_element(args.d, ctx))
        _emit(args, report.model_dump_json(indent=2))
        return EXIT_OK if report.ok else EXIT_FAILED

    ids = applicable_theorems(ctx) if args.theorem == "all" else [args.theorem]
    table = None
    if any(THEOREM_ALIASES.get(t, t) != "6.5" for t in ids):
        table = trace_spectrum(ctx, threads=args.threads)
    reports = [run_theorem(t, ctx, table) for t in ids]
    payload = [json.loads(r.model_dump_json()) for r in reports]
    _emit(args, json.dumps(payload if args.theorem == "all" else payload[0], indent=2))
    failed = [r.theorem for r in reports if not r.ok]
    if failed:
        print(f"❌ Échec: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_map(args: argparse.Namespace) -> int:
    ctx = _ctx(args)
    if args.name == "huff":
        _require(args, "a", "b")
        d = huff_param(_element(args.a, ctx), _element(args.b, ctx))
        _emit(args, format_element(d))
        return EXIT_OK

    _require(args, "d")
    d = _element(args.d, ctx)
    a = _element(args.a, ctx) if args.a is not None else None
    f = catalog(args.name, d, a)
    if args.point is None:
        report = verify_isogeny(f)
        _emit(args, report.model_dump_json(indent=2))
        return EXIT_OK if report.ok else EXIT_FAILED

    if f.lift.degree > 1 and not args.allow_extension:
        raise NotRationalError(f"{f.name} on d={args.d} needs {format_field_ctx(f.lift.field)}; "
                               f"pass --allow-extension")
    try:
        point = parse_point(args.point, ctx)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc
    if not is_on_curve(f.domain, point):
        raise FieldError(f"{format_point(point)} is not on {f.domain}")
    image = f(point)
    if image is None:
        _emit(args, "undefined")
        return EXIT_OK
    descended = f.descend(image)
    _emit(args, format_point(descended if descended is not None else image))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    ctx = _ctx(args)
    _emit(args, classify(_element(args.d, ctx)).model_dump_json(indent=2))
    return EXIT_OK


def cmd_deuring(args: argparse.Namespace) -> int:
    if args.p is None:
        raise UsageError("--p is required")
    _emit(args, deuring_poly(args.p).model_dump_json(indent=2))
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace) -> int:
    ctx = _ctx(args)
    values = [format_element(v) for v in orbit(_element(args.d, ctx))]
    _emit(args, json.dumps({"field": format_field_ctx(ctx), "d": args.d, "orbit": values}, indent=2))
    return EXIT_OK


COMMANDS = {
    "census": cmd_census,
    "verify": cmd_verify,
    "map": cmd_map,
    "classify": cmd_classify,
    "deuring": cmd_deuring,
    "orbit": cmd_orbit,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Point d'entrée: retourne le code de sortie au lieu d'appeler sys.exit."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"❌ Usage: {exc}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"❌ Usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CensusInvariantError as exc:
        logger.error("invariant violated: %s", exc)
        print(f"❌ Invariant: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except CensusError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
