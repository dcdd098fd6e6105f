from __future__ import annotations

import argparse
import builtins
import csv
import difflib
import io
import json
import logging
import re
import sys
import textwrap
from dataclasses import asdict, replace
from fractions import Fraction
from pathlib import Path
from typing import Any

try:
    from rich import box
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.table import Table
except Exception:  # pragma: no cover - optional runtime dependency
    Console = None  # type: ignore[assignment]
    RichHandler = None  # type: ignore[assignment]
    Table = None  # type: ignore[assignment]
    box = None  # type: ignore[assignment]

from ._version import __version__
from .bijection import (
    SuiteReport,
    build_bijection,
    pi_table,
    sweep_upsets,
    verify_suite,
)
from .chebyshev import (
    cheb_bijection,
    cheb_coeffs,
    cheb_fixed_points,
    compose_check,
    conjugacy_check,
    factorization_check,
)
from .config import OUTPUT_FORMATS, Config, apply_env, config_path, load_config, save_config
from .dynamics import (
    UpSet,
    eval_g,
    expansion_of_fixed_point,
    fixed_points,
    orbit_partition,
    periodic_count,
)
from .errors import InvalidArgumentError, TentfieldError
from .ffield import FieldContext, count_irreducibles, make_field, require_prime
from .plot import emit_plot, plot_spec_for_chebyshev, plot_spec_for_map

log = logging.getLogger(__name__)

_INVALID_CHOICE_RE = re.compile(r"invalid choice: '([^']+)' \(choose from (.+)\)")
_MODULUS_RE = re.compile(r"^\s*-?\d+(\s*,\s*-?\d+)*\s*$")

# largest p^n for which cheb --checks runs the exact factorisation
FACTORIZATION_MAX_DEGREE = 64


def _console_print(*values: Any, sep: str = " ", end: str = "\n", file: Any | None = None, flush: bool = False) -> None:
    if Console is None:
        builtins.print(*values, sep=sep, end=end, file=file, flush=flush)
        return

    target = file if file is not None else sys.stdout
    text = sep.join(str(v) for v in values)
    console = Console(
        file=target,
        markup=False,
        highlight=False,
        soft_wrap=True,
    )
    console.print(text, end=end)
    if flush and hasattr(target, "flush"):
        target.flush()


# Route all human-facing CLI text through Rich when available.
print = _console_print  # type: ignore[assignment]


class TentfieldArgumentParser(argparse.ArgumentParser):
    def add_subparsers(self, **kwargs: Any) -> Any:
        kwargs.setdefault("parser_class", type(self))
        return super().add_subparsers(**kwargs)

    def error(self, message: str) -> None:  # type: ignore[override]
        suggestion = self._build_command_suggestion(message)
        if suggestion:
            message = f"{message}\n{suggestion}"
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")

    def _build_command_suggestion(self, message: str) -> str | None:
        match = _INVALID_CHOICE_RE.search(message)
        if not match:
            return None
        invalid, raw_choices = match.groups()
        choices = re.findall(r"'([^']+)'", raw_choices) or [c.strip() for c in raw_choices.split(",")]
        if not choices:
            return None
        suggestion = difflib.get_close_matches(invalid, choices, n=1, cutoff=0.45)
        if not suggestion:
            return None
        best = suggestion[0]
        return f"Did you mean '{best}'? Use the valid command: {best}"


class UsageError(Exception):
    """Raised by command handlers for argument problems argparse cannot see (exit code 2)."""


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else logging.WARNING
    if RichHandler is not None and Console is not None:
        handler: logging.Handler = RichHandler(
            console=Console(file=sys.stderr, markup=False, highlight=False),
            show_time=False,
            show_path=False,
        )
    else:  # pragma: no cover - rich is a hard dependency
        handler = logging.StreamHandler(sys.stderr)
    logging.basicConfig(level=level, format="%(message)s", handlers=[handler], force=True)


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _table(rows: list[list[str]]) -> Any:
    table = Table(show_header=True, header_style="bold", box=box.SIMPLE_HEAVY)
    for header in rows[0]:
        table.add_column(str(header))
    for row in rows[1:]:
        table.add_row(*[str(c) for c in row])
    return table


def _print_table(rows: list[list[str]]) -> None:
    if not rows:
        return
    if Table is not None and box is not None and rows[0]:
        Console(file=sys.stdout, markup=False, highlight=False).print(_table(rows))
        return
    widths = [0] * len(rows[0])
    for r in rows:
        for i, c in enumerate(r):
            widths[i] = max(widths[i], len(c))
    for r in rows:
        line = "  ".join(c.ljust(widths[i]) for i, c in enumerate(r))
        print(line.rstrip())


def _render_table(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    if Table is not None and box is not None and rows and rows[0]:
        Console(file=buf, markup=False, highlight=False, width=200, color_system=None).print(_table(rows))
    else:  # pragma: no cover - rich is a hard dependency
        for r in rows:
            buf.write("  ".join(r) + "\n")
    return buf.getvalue()


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf)  # RFC 4180: minimal quoting, CRLF line endings
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out).expanduser()
    path.write_text(text, encoding="utf-8", newline="")
    print(f"Saved: {path}", file=sys.stderr)


def _emit(args: argparse.Namespace, fmt: str, rows: list[list[str]], record: Any) -> None:
    if fmt == "csv":
        _write_output(_csv_text(rows), args.out)
    elif fmt == "json":
        _write_output(_json_text(record), args.out)
    elif args.out is not None:
        _write_output(_render_table(rows), args.out)
    else:
        _print_table(rows)


def _decimal(x: Fraction) -> str:
    # shortest round-tripping repr of the nearest double (at most 17 significant digits)
    return repr(float(x))


# ---------------------------------------------------------------------------
# Argument resolution
# ---------------------------------------------------------------------------


def _prime_arg(value: str) -> int:
    try:
        return require_prime(int(value))
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be a prime number, got {value!r}") from None


def _positive_arg(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return n


def _settings(args: argparse.Namespace) -> Config:
    cfg = apply_env(load_config())
    if getattr(args, "max_pn", None) is not None:
        cfg = replace(cfg, max_pn=args.max_pn)
    return cfg


def _resolve_format(args: argparse.Namespace, cfg: Config, *, allowed: tuple[str, ...]) -> str:
    fmt = getattr(args, "format", None) or cfg.default_format
    if fmt not in allowed:
        if getattr(args, "format", None) is None:
            return "text"
        raise UsageError(f"--format {fmt} is not supported here (choose from {', '.join(allowed)})")
    return fmt


def _check_size(p: int, n: int, cfg: Config) -> None:
    if p**n > cfg.max_pn:
        raise UsageError(
            f"p^n = {p}^{n} exceeds the size cap {cfg.max_pn} (raise it with --max-pn or TENTFIELD_MAX_PN)"
        )


def _upset(args: argparse.Namespace) -> UpSet:
    try:
        return UpSet.parse(args.p, args.I)
    except InvalidArgumentError as e:
        raise UsageError(str(e)) from e


def _modulus(args: argparse.Namespace) -> list[int] | None:
    raw = getattr(args, "modulus", None)
    if raw is None:
        return None
    if not _MODULUS_RE.match(raw):
        raise UsageError(f"--modulus must be comma-separated integer coefficients, lowest degree first, got {raw!r}")
    return [int(part) for part in raw.split(",")]


def _field(args: argparse.Namespace) -> FieldContext:
    return make_field(args.p, args.n, _modulus(args))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_count(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    fmt = _resolve_format(args, cfg, allowed=("csv", "json", "text"))
    J = periodic_count(args.p, args.m)
    I = count_irreducibles(args.p, args.m)
    if fmt == "text":
        _write_output(f"J={J} I={I}\n", args.out)
        return 0
    rows = [["p", "m", "J", "I"], [str(args.p), str(args.m), str(J), str(I)]]
    _emit(args, fmt, rows, {"p": args.p, "m": args.m, "J": J, "I": I})
    return 0


def cmd_fixpoints(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    fmt = _resolve_format(args, cfg, allowed=("csv", "json", "text"))
    _check_size(args.p, args.n, cfg)
    I = _upset(args)
    rows = [["k", "numerator", "denominator", "decimal", "period_digits"]]
    records = []
    for k, x in enumerate(fixed_points(args.p, I, args.n)):
        period = str(expansion_of_fixed_point(args.p, I, args.n, k).period)
        rows.append([str(k), str(x.numerator), str(x.denominator), _decimal(x), period])
        records.append(
            {"k": k, "numerator": x.numerator, "denominator": x.denominator, "decimal": float(x), "period_digits": period}
        )
    _emit(args, fmt, rows, {"p": args.p, "n": args.n, "I": I.label, "fixed_points": records})
    return 0


def cmd_perm(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    fmt = _resolve_format(args, cfg, allowed=("csv", "json", "text"))
    _check_size(args.p, args.n, cfg)
    I = _upset(args)
    perm = pi_table(args.p, args.n, I)
    if fmt == "text":
        _write_output(" ".join(str(v) for v in perm.table) + "\n", args.out)
        return 0
    rows = [["k", "pi_k"]] + [[str(k), str(v)] for k, v in enumerate(perm.table)]
    _emit(args, fmt, rows, {"p": args.p, "n": args.n, "I": I.label, "pi": list(perm.table)})
    return 0


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    fmt = _resolve_format(args, cfg, allowed=("csv", "json", "text"))
    _check_size(args.p, args.n, cfg)
    I = _upset(args)
    ctx = _field(args)
    symbol = args.symbol or cfg.element_symbol
    table = build_bijection(ctx, I)

    rows = [["k", "x_k_exact", "x_k_decimal", "g_of_x_k_decimal", "pi_k", "image_string"]]
    records = []
    for row in table.rows:
        gx = eval_g(ctx.p, I, row.x)
        image = ctx.format(row.image, symbol)
        rows.append([str(row.k), str(row.x), _decimal(row.x), _decimal(gx), str(row.pi), image])
        records.append(
            {
                "k": row.k,
                "x_k_exact": str(row.x),
                "x_k_decimal": float(row.x),
                "g_of_x_k_decimal": float(gx),
                "pi_k": row.pi,
                "image_string": image,
                "image_coeffs": row.image.to_list(),
            }
        )
    _emit(
        args,
        fmt,
        rows,
        {
            "p": ctx.p,
            "n": ctx.n,
            "I": I.label,
            "modulus": ctx.modulus.to_list(),
            "alpha": ctx.format(ctx.alpha, "x"),
            "rows": records,
        },
    )
    return 0


def _suite_record(report: SuiteReport) -> dict[str, Any]:
    return {
        "p": report.p,
        "n": report.n,
        "I": report.I.label,
        "passed": report.passed,
        "checks": [
            {"name": r.name, "checked": r.checked, "failed": len(r.violations), "passed": r.passed}
            for r in report.reports
        ],
    }


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    fmt = _resolve_format(args, cfg, allowed=("json", "text"))
    _check_size(args.p, args.n, cfg)
    ctx = _field(args)
    samples = args.samples or cfg.samples
    family = sweep_upsets(args.p, random_count=args.subsets, seed=args.seed) if args.sweep else [_upset(args)]

    suites = []
    for I in family:
        log.info("verifying p=%s n=%s I=%s", ctx.p, ctx.n, I.label)
        suites.append(verify_suite(ctx, I, seed=args.seed, samples=samples))
    ok = all(s.passed for s in suites)

    if fmt == "json":
        _write_output(_json_text({"passed": ok, "suites": [_suite_record(s) for s in suites]}), args.out)
    elif args.sweep:
        names = [r.name for r in suites[0].reports]
        rows = [["I"] + names + ["status"]]
        for s in suites:
            rows.append([s.I.label] + [f"{r.passed_count}/{r.checked}" for r in s.reports] + ["ok" if s.passed else "FAILED"])
        _emit(args, "text", rows, None)
    else:
        lines = [r.summary() for r in suites[0].reports]
        _write_output("\n".join(lines) + "\n", args.out)
    if not ok:
        print("error: verification failed", file=sys.stderr)
    return 0 if ok else 1


def cmd_orbits(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    fmt = _resolve_format(args, cfg, allowed=("csv", "json", "text"))
    _check_size(args.p, args.n, cfg)
    I = _upset(args)
    part = orbit_partition(args.p, I, args.n)
    rows = [["cycle", "length", "indices"]]
    for idx, cycle in enumerate(part.cycles):
        rows.append([str(idx), str(len(cycle)), " ".join(str(k) for k in cycle)])
    record = {
        "p": args.p,
        "n": args.n,
        "I": I.label,
        "cycles": part.to_json_obj(),
        "length_counts": {str(k): v for k, v in part.length_counts().items()},
    }
    _emit(args, fmt, rows, record)
    return 0


def _cheb_checks(args: argparse.Namespace, samples: int) -> list[list[str]]:
    p, n = args.p, args.n
    rows = [["metric", "value"]]
    rows.append(["compose_error", repr(compose_check(p, p ** (n - 1), samples))])
    rows.append(["conjugacy_error", repr(conjugacy_check(p, n, samples))])
    if p**n <= FACTORIZATION_MAX_DEGREE:
        rows.append(["factorization_error", repr(factorization_check(p, n))])
    transported = cheb_bijection(make_field(p, n, _modulus(args)), n).verify_frobenius()
    rows.append(["transported_frobenius", f"{transported.passed_count}/{transported.checked}"])
    return rows


def cmd_cheb(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    _check_size(args.p, args.n, cfg)
    if args.coeffs:
        _write_output(_json_text(cheb_coeffs(args.p**args.n).to_list()), args.out)
        return 0
    fmt = _resolve_format(args, cfg, allowed=("csv", "json", "text"))
    samples = args.samples or cfg.samples
    if args.checks:
        rows = _cheb_checks(args, samples)
        _emit(args, fmt, rows, {row[0]: row[1] for row in rows[1:]})
        return 0

    rows = [["k", "x_k_exact", "y_k", "residual"]]
    records = []
    for pt in cheb_fixed_points(args.p, args.n):
        rows.append([str(pt.k), str(pt.source), repr(pt.value), repr(pt.residual)])
        records.append({"k": pt.k, "x_k_exact": str(pt.source), "y_k": pt.value, "residual": pt.residual})
    _emit(args, fmt, rows, {"p": args.p, "n": args.n, "fixed_points": records})
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    cfg = _settings(args)
    if getattr(args, "format", None) not in (None, "svg"):
        raise UsageError("plot only emits svg")
    _check_size(args.p, args.n, cfg)
    if args.kind == "cheb":
        spec = plot_spec_for_chebyshev(args.p, args.n, samples=args.samples or cfg.samples)
    else:
        spec = plot_spec_for_map(args.p, _upset(args), args.n)
    _write_output(emit_plot(spec), args.out)
    return 0


def cmd_config(args: argparse.Namespace) -> int:
    if args.subcmd == "path":
        print(str(config_path()))
        return 0

    if args.subcmd == "show":
        print(json.dumps(asdict(load_config()), indent=2, sort_keys=True))
        return 0

    if args.subcmd == "set":
        cfg = load_config()
        if args.max_pn is not None and args.max_pn < 2:
            raise UsageError("--max-pn must be at least 2")
        new_cfg = Config(
            max_pn=args.max_pn if args.max_pn is not None else cfg.max_pn,
            default_format=args.default_format or cfg.default_format,
            element_symbol=args.element_symbol or cfg.element_symbol,
            samples=args.samples if args.samples is not None else cfg.samples,
        )
        path = save_config(new_cfg)
        print(f"Saved: {path}")
        return 0

    raise AssertionError("unreachable")


def cmd_help(args: argparse.Namespace) -> int:
    if getattr(args, "topic", None):
        parser = build_parser()
        try:
            parser.parse_args([args.topic, "--help"])
        except SystemExit as e:
            return int(e.code or 0)
        return 0

    print(
        textwrap.dedent(
            """\
            tentfield relates the fixed points of the up-down maps g_{p,I} on [0, 1] to the
            elements of the finite field F_{p^n}, and carries the bijection over to Chebyshev
            polynomials.

            What you can do:
              - Count periodic points and irreducible polynomials (`count`)
              - List fixed points of g^n and their base-p expansions (`fixpoints`)
              - Print the permutation pi_{p^n,I} (`perm`)
              - Build the bijection table onto F_{p^n} (`table`)
              - Verify the Frobenius and product identities (`verify`)
              - Split the fixed points into orbits under g (`orbits`)
              - Check the Chebyshev picture (`cheb`)
              - Draw the graph of g^n or T_{p^n} with orbits as SVG (`plot`)

            Quick examples:
              tentfield count --p 2 --m 3
              tentfield table --p 2 --n 4 --modulus 1,1,0,0,1 --format csv
              tentfield verify --p 3 --n 3 --I 2
              tentfield verify --p 5 --n 2 --sweep --subsets 10 --seed 7
              tentfield plot --p 3 --n 2 --I 2 --out g32.svg

            More help:
              tentfield <command> --help
              tentfield help <command>
            """
        ).rstrip()
    )
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> TentfieldArgumentParser:
    p = TentfieldArgumentParser(
        prog="tentfield",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        description="Fixed points of up-down maps and the finite field F_{p^n}.",
        epilog=textwrap.dedent(
            """\
            Environment variables:
              TENTFIELD_MAX_PN, TENTFIELD_CONFIG_PATH
            """
        ),
    )
    p.add_argument("--version", action="version", version=f"tentfield {__version__}")

    def _add_runtime_overrides(parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--max-pn", type=_positive_arg, help="Size cap on p^n (overrides env/config)")
        parser.add_argument("--verbose", action="store_true", help="Log progress to stderr")
        parser.add_argument("--verbose-errors", action="store_true", help="Show chained error causes")

    def _add_field_args(parser: argparse.ArgumentParser, *, branches: bool = True, modulus: bool = False) -> None:
        parser.add_argument("--p", type=_prime_arg, required=True, help="Prime p")
        parser.add_argument("--n", type=_positive_arg, required=True, help="Degree n")
        if branches:
            parser.add_argument(
                "--I",
                default="evens",
                help="Increasing branches: evens (default), empty, full, or a list like 0,2",
            )
        if modulus:
            parser.add_argument("--modulus", help="Monic irreducible modulus, coefficients lowest degree first")

    def _add_output_args(parser: argparse.ArgumentParser, formats: tuple[str, ...] = ("csv", "json", "text")) -> None:
        parser.add_argument("--format", choices=formats, help="Output format (default from config)")
        parser.add_argument("--out", help="Write output to this file instead of stdout")

    sub = p.add_subparsers(dest="cmd", required=True)

    help_cmd = sub.add_parser("help", aliases=["h"], help="Show a friendly overview of what the CLI can do")
    help_cmd.add_argument("topic", nargs="?", help="Optional command name (prints its argparse help)")

    cfg = sub.add_parser("config", help="Manage local config")
    cfg_sub = cfg.add_subparsers(dest="subcmd", required=True)
    cfg_sub.add_parser("path", help="Print config path")
    cfg_sub.add_parser("show", help="Show config")
    cfg_set = cfg_sub.add_parser("set", help="Set config fields")
    cfg_set.add_argument("--max-pn", type=int)
    cfg_set.add_argument("--default-format", choices=OUTPUT_FORMATS)
    cfg_set.add_argument("--element-symbol")
    cfg_set.add_argument("--samples", type=_positive_arg)
    for parser in (cfg, cfg_set):
        parser.add_argument("--verbose-errors", action="store_true", help="Show chained error causes")

    count = sub.add_parser("count", help="Periodic points J_p(m) and irreducible polynomials I_p(m)")
    count.add_argument("--p", type=_prime_arg, required=True, help="Prime p")
    count.add_argument("--m", type=_positive_arg, required=True, help="Exact period / degree m")
    _add_output_args(count)
    _add_runtime_overrides(count)

    fix = sub.add_parser("fixpoints", help="Fixed points of g_{p,I}^n with their periodic expansions")
    _add_field_args(fix)
    _add_output_args(fix)
    _add_runtime_overrides(fix)

    perm = sub.add_parser("perm", help="The permutation pi_{p^n,I}")
    _add_field_args(perm)
    _add_output_args(perm)
    _add_runtime_overrides(perm)

    table = sub.add_parser(
        "table",
        help="Bijection table from the fixed points onto F_{p^n}",
        description=(
            "Bijection table from the fixed points onto F_{p^n}. The g_of_x_k_decimal column is g(x_k) "
            "computed in exact rationals and then rounded to the nearest double, so it reads 0.4 where "
            "evaluating g in floating point would give 0.3999999999999999."
        ),
    )
    _add_field_args(table, modulus=True)
    table.add_argument("--symbol", help="Symbol for the primitive element (default from config)")
    _add_output_args(table)
    _add_runtime_overrides(table)

    verify = sub.add_parser("verify", help="Verify Frobenius, product, subfield and counting identities")
    _add_field_args(verify, modulus=True)
    verify.add_argument("--sweep", action="store_true", help="Run over evens, empty, full, {2} and random subsets")
    verify.add_argument("--subsets", type=int, default=10, help="Random subsets in a sweep (default 10)")
    verify.add_argument("--seed", type=int, default=0, help="Seed for random subsets and product samples")
    verify.add_argument("--samples", type=_positive_arg, help="Sampled products for large fields")
    _add_output_args(verify, formats=("json", "text"))
    _add_runtime_overrides(verify)

    orbits = sub.add_parser("orbits", help="Orbits of the fixed points of g^n under g")
    _add_field_args(orbits)
    _add_output_args(orbits)
    _add_runtime_overrides(orbits)

    cheb = sub.add_parser("cheb", help="Fixed points of T_{p^n} and Chebyshev checks")
    _add_field_args(cheb, branches=False, modulus=True)
    cheb.add_argument("--samples", type=_positive_arg, help="Grid size for the numeric checks")
    cheb.add_argument("--coeffs", action="store_true", help="Dump the integer coefficients of T_{p^n} as JSON")
    cheb.add_argument("--checks", action="store_true", help="Report composition, conjugacy and factorisation errors")
    _add_output_args(cheb)
    _add_runtime_overrides(cheb)

    plot = sub.add_parser("plot", help="SVG figure of g^n (or T_{p^n}) with fixed points and orbits")
    _add_field_args(plot)
    plot.add_argument("--kind", choices=("map", "cheb"), default="map", help="Which map to draw (default map)")
    plot.add_argument("--samples", type=_positive_arg, help="Curve samples for --kind cheb")
    _add_output_args(plot, formats=("svg",))
    _add_runtime_overrides(plot)

    return p


# ---------------------------------------------------------------------------
# Errors and entry point
# ---------------------------------------------------------------------------


def _format_error_with_type(err: BaseException) -> str:
    msg = str(err).strip() or err.__class__.__name__
    return f"{err.__class__.__name__}: {msg}"


def _iter_error_chain(err: BaseException):
    seen: set[int] = set()
    cur: BaseException | None = err
    while cur is not None and id(cur) not in seen:
        yield cur
        seen.add(id(cur))
        cur = cur.__cause__ if cur.__cause__ is not None else cur.__context__


def _print_verbose_error_chain(err: BaseException) -> None:
    chain = list(_iter_error_chain(err))
    if len(chain) <= 1:
        return
    print("error_details:", file=sys.stderr)
    for idx, item in enumerate(chain[1:], start=1):
        print(f"  cause[{idx}]: {_format_error_with_type(item)}", file=sys.stderr)


_COMMANDS = {
    "count": cmd_count,
    "fixpoints": cmd_fixpoints,
    "perm": cmd_perm,
    "table": cmd_table,
    "verify": cmd_verify,
    "orbits": cmd_orbits,
    "cheb": cmd_cheb,
    "plot": cmd_plot,
    "config": cmd_config,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(getattr(args, "verbose", False))
    try:
        if args.cmd in ("help", "h"):
            return cmd_help(args)
        handler = _COMMANDS.get(args.cmd)
        if handler is None:
            raise AssertionError("unreachable")
        return handler(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (TentfieldError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        if getattr(args, "verbose_errors", False):
            _print_verbose_error_chain(e)
        return 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
