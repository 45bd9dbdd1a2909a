#!/usr/bin/env python3
"""
orbichern CLI Interface

Command-line access to the subgroup-growth sequences, homomorphism
censuses, generating functions, symbolic expansions and verification
suites. Machine output goes to stdout; logging goes to stderr.
"""

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from .config import parse_budget
from .diagalg import (
    BaseElement,
    apply_standard,
    degree_specialize,
    dw_rhs,
    dw_rhs_wreath,
    power_notation,
    subgroup_symbol,
)
from .exceptions import (
    BudgetExceededError,
    ConsistencyError,
    OrbiChernError,
    PreconditionError,
    SpecParseError,
    UnsupportedGroupError,
    format_error_with_context,
)
from .finmodel import (
    BUDGET,
    FAIL,
    PASS,
    GSet,
    canonical_function,
    orbifold_euler_characteristic,
    orbit_pushforward,
    verify_symmetric,
    verify_wreath,
)
from .grp import FreeAbelian, count_homs, j_sequence, subgroup_type, u_sequence
from .homcount import census_sym, census_wreath, wreath_total_via_formula
from .parser import parse_finite_group, parse_group_spec
from .qexact import (
    bryan_fulman_exponents,
    euler_product,
    format_rat,
    macdonald_series,
    tamanoi_series,
    to_rat,
)
from .suites import SUITE_NAMES, SuiteFilter, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

THEOREMS = ("dw", "dw-wreath", "macdonald", "bryan-fulman", "tamanoi", "muller")


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _budget(value: Optional[str]) -> Optional[int]:
    return None if value is None else parse_budget(value)


class OrbiChernCLI:
    """Command-line interface for the orbichern engines."""

    def __init__(self, out=None):
        self.out = out or sys.stdout

    def emit(self, text: str) -> None:
        print(text, file=self.out)

    # Subcommands

    def run_jseq(self, args: argparse.Namespace) -> int:
        """Print j_1..j_R (and u_1..u_R with --conjugacy)"""
        spec = parse_group_spec(args.group)
        budget = _budget(args.budget)
        jseq = j_sequence(spec, args.max, budget)
        u = u_sequence(spec, args.max, budget) if args.conjugacy else None
        rs = range(1, args.max + 1)

        if args.format == "json":
            obj: Dict[str, Any] = jseq.to_json_obj()
            if u is not None:
                obj["u"] = [u[r] for r in rs]
            self.emit(_dump(obj))
        elif args.format == "csv":
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(["r", "j"] + (["u"] if u is not None else []))
            for r in rs:
                writer.writerow([r, jseq[r]] + ([u[r]] if u is not None else []))
            self.emit(buffer.getvalue().rstrip("\n"))
        else:
            self.emit(" ".join(str(v) for v in jseq.as_list()))
            if u is not None:
                self.emit(" ".join(str(u[r]) for r in rs))
        return EXIT_OK

    def run_homcount(self, args: argparse.Namespace) -> int:
        """Census of Hom(A, S_n) or Hom(A, G wr S_n)"""
        spec = parse_group_spec(args.group)
        budget = _budget(args.budget)
        if args.target:
            census = census_wreath(spec, parse_finite_group(args.target), args.n, budget)
        else:
            census = census_sym(spec, args.n, budget)
        if args.format == "csv":
            self.emit(census.to_csv().rstrip("\n"))
        else:
            self.emit(_dump(census.to_json_obj()))
        return EXIT_OK

    def run_gf(self, args: argparse.Namespace) -> int:
        """Evaluate one of the generating-function engines"""
        N = args.order
        chi = to_rat(args.chi) if args.chi is not None else None
        budget = _budget(args.budget)
        theorem = args.theorem

        if theorem == "macdonald":
            return self._emit_series(macdonald_series(self._need(chi, "--chi", theorem), N), args)

        spec = parse_group_spec(self._need(args.group, "--group", theorem))
        if theorem == "dw":
            symbolic = dw_rhs(j_sequence(spec, max(N, 1), budget), "c", N)
            if args.symbolic:
                return self._emit_element(symbolic, args)
            return self._emit_series(degree_specialize(symbolic, {"c": chi if chi is not None else 1}), args)

        if theorem == "bryan-fulman":
            m = self._free_abelian_rank(spec, theorem)
            if args.symbolic:
                return self._emit_element(dw_rhs(j_sequence(spec, max(N, 1), budget), "c", N), args)
            exponents = bryan_fulman_exponents(m, chi if chi is not None else 1, N)
            return self._emit_series(euler_product(exponents, N), args)

        if theorem == "tamanoi":
            m = self._free_abelian_rank(spec, theorem)
            if args.symbolic:
                return self._emit_element(dw_rhs_wreath(spec, None, N), args)
            return self._emit_series(tamanoi_series(m, self._need(chi, "--chi", theorem), N), args)

        if theorem == "dw-wreath":
            symbolic = dw_rhs_wreath(spec, None, N)
            if args.symbolic:
                return self._emit_element(symbolic, args)
            G = parse_finite_group(self._need(args.target, "--target", theorem))
            values = {}
            for r in range(1, N + 1):
                sub = subgroup_type(spec, r)
                if sub is not None:
                    values[subgroup_symbol(sub).name] = Fraction(count_homs(sub, G, budget), G.order)
            return self._emit_series(degree_specialize(symbolic, values), args)

        G = parse_finite_group(self._need(args.target, "--target", theorem))
        return self._emit_series(wreath_total_via_formula(spec, G, N, budget), args)

    def run_expand(self, args: argparse.Namespace) -> int:
        """(1 + U)^alpha, or U(alpha) with --standard"""
        U = {k: to_rat(v) for k, v in enumerate(args.coeffs.split(","), start=1) if v.strip()}
        alpha = BaseElement.of(args.base, to_rat(args.exponent))
        if args.standard:
            element = apply_standard(U, alpha, args.order)
        else:
            element = power_notation(U, alpha, args.order)
        return self._emit_element(element, args)

    def run_verify(self, args: argparse.Namespace) -> int:
        """Run a verification suite; exit 1 on inequality, 3 on budget"""
        filt = SuiteFilter(group=args.group, target=args.target, max_order=args.max_order)
        result = run_suite(args.suite, filt, _budget(args.budget))
        self.emit(_dump(result.to_json_obj()))
        if result.status == FAIL:
            return EXIT_FAILED
        if result.status == BUDGET:
            return EXIT_BUDGET
        return EXIT_OK

    def run_model(self, args: argparse.Namespace) -> int:
        """Canonical function of a finite G-set, optionally verified to order N"""
        X = self._load_gset(args)
        spec = parse_group_spec(args.group)
        budget = _budget(args.budget)
        alpha = canonical_function(X, spec, budget)
        obj: Dict[str, Any] = {
            "points": X.points,
            "group": X.group.name or str(X.order),
            "source": spec.to_text(),
            "canonical_function": [format_rat(alpha[(x,)]) for x in range(X.points)],
            "orbit_pushforward": [{"orbit": list(orbit), "value": format_rat(v)}
                                  for orbit, v in sorted(orbit_pushforward(alpha).items())],
        }
        if isinstance(spec, FreeAbelian):
            obj["orbifold_euler_characteristic"] = format_rat(
                orbifold_euler_characteristic(X, spec.m, budget))
        status = PASS
        if args.order is not None:
            if X.order == 1:
                report = verify_symmetric(spec, X, args.order, budget)
            else:
                report = verify_wreath(spec, X.group, X, args.order, budget)
            obj["report"] = report.to_json_obj()
            status = report.status
        self.emit(_dump(obj))
        if status == FAIL:
            return EXIT_FAILED
        if status == BUDGET:
            return EXIT_BUDGET
        return EXIT_OK

    def show_version(self) -> int:
        self.emit(f"orbichern v{__version__}")
        return EXIT_OK

    # Helpers

    @staticmethod
    def _need(value, flag: str, theorem: str):
        if value is None:
            raise PreconditionError(f"--theorem {theorem} needs {flag}", operation="gf")
        return value

    @staticmethod
    def _free_abelian_rank(spec, theorem: str) -> int:
        if not isinstance(spec, FreeAbelian):
            raise UnsupportedGroupError(f"--theorem {theorem} is defined for Z^m only",
                                        group=spec.to_text())
        return spec.m

    @staticmethod
    def _load_gset(args: argparse.Namespace) -> GSet:
        if args.gset:
            with open(args.gset, "r", encoding="utf-8") as f:
                return GSet.from_json(f.read())
        if args.target:
            return GSet.natural(parse_finite_group(args.target))
        return GSet.plain(args.points)

    def _emit_series(self, series, args: argparse.Namespace) -> int:
        if args.format == "json":
            self.emit(_dump(series.to_json_obj()))
        else:
            self.emit(series.to_text())
        return EXIT_OK

    def _emit_element(self, element, args: argparse.Namespace) -> int:
        if args.format == "json":
            self.emit(_dump(element.to_json_obj()))
        else:
            self.emit(element.to_text())
        return EXIT_OK


def create_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    parser = argparse.ArgumentParser(
        prog="orbichern",
        description="Exact generating functions for orbifold Chern classes of symmetric products",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  orbichern jseq --group Z^2 --max 6
  orbichern homcount --group Z --n 3
  orbichern gf --theorem macdonald --chi 2 --order 5
  orbichern gf --theorem muller --group Z --target Z/2 --order 4
  orbichern gf --theorem dw --group Z --order 2 --symbolic
  orbichern verify --suite lemma-dey
        """,
    )
    parser.add_argument("--version", action="store_true", help="Show version information")
    parser.add_argument("--verbose", "-v", action="count", default=0,
                        help="Log to stderr (repeat for debug output)")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    jseq = subparsers.add_parser("jseq", help="Subgroup counts j_1..j_R")
    jseq.add_argument("--group", required=True, help="Group spec, e.g. Z^2, Z/4, <a,b | [a,b]>")
    jseq.add_argument("--max", type=int, required=True, help="Largest index R")
    jseq.add_argument("--format", choices=("text", "json", "csv"), default="text")
    jseq.add_argument("--conjugacy", action="store_true", help="Also print conjugacy class counts u_d")
    jseq.add_argument("--budget", help="Enumeration budget (e.g. 1e7)")

    hom = subparsers.add_parser("homcount", help="Census of homomorphisms by cycle type")
    hom.add_argument("--group", required=True)
    hom.add_argument("--n", type=int, required=True)
    hom.add_argument("--target", help="Finite group G; counts Hom(A, G wr S_n)")
    hom.add_argument("--format", choices=("json", "csv"), default="json")
    hom.add_argument("--budget")

    gf = subparsers.add_parser("gf", help="Generating-function engines")
    gf.add_argument("--theorem", choices=THEOREMS, required=True)
    gf.add_argument("--group")
    gf.add_argument("--target")
    gf.add_argument("--chi", help="Euler characteristic (rational)")
    gf.add_argument("--order", type=int, required=True, help="Truncation order N")
    gf.add_argument("--symbolic", action="store_true", help="Print the diagonal-operator expansion")
    gf.add_argument("--format", choices=("text", "json"), default="text")
    gf.add_argument("--budget")

    expand = subparsers.add_parser("expand", help="Expand (1 + U)^alpha symbolically")
    expand.add_argument("--coeffs", required=True, help="v_1,v_2,... for U = sum v_k z^k D^k")
    expand.add_argument("--exponent", default="1", help="Rational multiple of the base class")
    expand.add_argument("--base", default="c")
    expand.add_argument("--order", type=int, required=True)
    expand.add_argument("--standard", action="store_true", help="Apply U linearly instead")
    expand.add_argument("--format", choices=("text", "json"), default="text")

    verify = subparsers.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    verify.add_argument("--budget")
    verify.add_argument("--group", help="Only cases with this source group")
    verify.add_argument("--target", help="Only cases with this finite group name")
    verify.add_argument("--max-order", type=int, help="Cap every truncation order")

    model = subparsers.add_parser("model", help="Finite G-set model")
    source = model.add_mutually_exclusive_group()
    source.add_argument("--gset", help="G-set JSON file")
    source.add_argument("--target", help="Finite group acting on its own points")
    source.add_argument("--points", type=int, default=1, help="Plain set size")
    model.add_argument("--group", required=True, help="Source group A")
    model.add_argument("--order", type=int, help="Also verify the wreath formula up to N")
    model.add_argument("--budget")

    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    level = logging.DEBUG if verbosity > 1 else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    _configure_logging(args.verbose)
    cli = OrbiChernCLI()

    if args.version:
        return cli.show_version()
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    handlers = {
        "jseq": cli.run_jseq,
        "homcount": cli.run_homcount,
        "gf": cli.run_gf,
        "expand": cli.run_expand,
        "verify": cli.run_verify,
        "model": cli.run_model,
    }
    logger.debug("dispatching %s", args.command)
    try:
        return handlers[args.command](args)
    except SpecParseError as e:
        print(f"orbichern: {format_error_with_context(e, e.context.get('text') or '')}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as e:
        print(f"orbichern: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, UnsupportedGroupError) as e:
        print(f"orbichern: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as e:
        print(f"orbichern: {e}", file=sys.stderr)
        return EXIT_FAILED
    except OrbiChernError as e:
        print(f"orbichern: {e}", file=sys.stderr)
        return EXIT_FAILED
    except FileNotFoundError as e:
        print(f"orbichern: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
