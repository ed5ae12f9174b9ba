"""Command-line front end.

Exit codes: 0 success (or every verdict holds), 1 verification failure or
non-Costas input to ``costas-check``, 2 usage / input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass

from . import __version__
from .arrays import (
    FamilyId,
    Label,
    fixed_points,
    is_costas_difference_triangle,
    is_costas_grid,
    is_golomb_ruler,
    parse_permutation,
)
from .bounds import (
    ArdCase,
    TheoremId,
    bound_ard_pp,
    bound_dg_wp_v0,
    bound_gw_wp_vnz,
    bound_thm1_wpel,
    bound_thm2_pp_u0_vnz,
    bound_thm4_pwp_v0,
    table4_row,
    verify_prime,
)
from .numthy import DomainError, build_prime_context, primes_between
from .xcorr import ShiftFilter, correlation_grid, family_max, max_over

log = logging.getLogger("costas_xcorr")

SCHEMA = "#schema=1"
DEFAULT_SPAN = (5, 277)
FORMATS = ("csv", "markdown", "json")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    prime_range: tuple[int, int]
    families: tuple[FamilyId, ...]
    filter: ShiftFilter
    output_format: str
    workers: int
    table4_compat: bool = False

    @property
    def primes(self) -> list[int]:
        return primes_between(*self.prime_range)


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise UsageError(f"--primes expects LO..HI, got {text!r}") from None
    if lo_i < 5 or hi_i < lo_i:
        raise UsageError(f"--primes needs 5 <= LO <= HI, got {text!r}")
    return lo_i, hi_i


def parse_workers(text: str) -> int:
    if text == "auto":
        return os.cpu_count() or 1
    try:
        w = int(text)
    except ValueError:
        raise UsageError(f"--workers expects a positive integer or 'auto', got {text!r}") from None
    if w < 1:
        raise UsageError("--workers must be positive")
    return w


def _config(args, default_families: str) -> RunConfig:
    try:
        fams = tuple(FamilyId.parse(x) for x in (args.families or default_families).split(",") if x.strip())
        filt = ShiftFilter.parse(args.filter)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    if not fams:
        raise UsageError("--families is empty")
    lo, hi = parse_range(args.primes)
    if hi > DEFAULT_SPAN[1]:
        log.warning("primes above %d: exhaustive scans grow like p^4 and may take a long time", DEFAULT_SPAN[1])
    return RunConfig((lo, hi), fams, filt, args.format, parse_workers(args.workers),
                     getattr(args, "table4_compat", False))


# -- rendering ------------------------------------------------------------


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


def render(columns: list[str], rows: list[list], fmt: str, meta: dict) -> str:
    """Render a table as csv (with a schema comment line), markdown or json."""
    if fmt == "json":
        payload = dict(meta)
        payload["rows"] = [dict(zip(columns, r)) for r in rows]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        tags = " ".join(f"{k}={v}" for k, v in meta.items())
        buf.write(f"{SCHEMA} {tags}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_cell(x) for x in r])
        return buf.getvalue()
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    for r in rows:
        lines.append("| " + " | ".join(_cell(x) for x in r) + " |")
    return "\n".join(lines) + "\n"


# -- subcommands ----------------------------------------------------------


def cmd_table(cfg: RunConfig, out) -> int:
    columns = ["p"] + [f"C({f.value})" for f in cfg.families]
    rows = []
    for p in cfg.primes:
        ctx = build_prime_context(p)
        row = [p]
        for fam in cfg.families:
            if not fam.applicable(p):
                row.append(None)
                continue
            row.append(family_max(ctx, fam, cfg.filter, workers=cfg.workers).value)
        log.info("table: p=%d done", p)
        rows.append(row)
    meta = {
        "command": "table",
        "primes": f"{cfg.prime_range[0]}..{cfg.prime_range[1]}",
        "filter": cfg.filter.name,
    }
    out.write(render(columns, rows, cfg.output_format, meta))
    return 0


def cmd_bounds(cfg: RunConfig, out) -> int:
    meta = {"command": "bounds", "primes": f"{cfg.prime_range[0]}..{cfg.prime_range[1]}"}
    if cfg.table4_compat:
        columns = ["p", "alpha", "bound"]
        rows = []
        for p in cfg.primes:
            if not TheoremId.THM1_Wpel.applicable(build_prime_context(p)):
                continue
            alpha, value, nontrivial = table4_row(build_prime_context(p))
            if nontrivial:
                rows.append([p, alpha, value])
        meta["convention"] = "table4-compat"
        out.write(render(columns, rows, cfg.output_format, meta))
        return 0
    columns = ["p", "safe", "t", "alpha_min", "alpha_max", "DG_Wp_V0", "GW_Wp_VNZ",
               "THM1_Wpel", "THM1_Wpel_alpha_max", "ARD_Pp_00", "ARD_Pp_UNZ_V0",
               "THM2_Pp_U0_VNZ", "THM4_PWp_V0"]
    rows = []
    for p in cfg.primes:
        ctx = build_prime_context(p)
        has_thm1 = TheoremId.THM1_Wpel.applicable(ctx)
        thm1 = bound_thm1_wpel(ctx) if has_thm1 else None
        thm1_max = bound_thm1_wpel(ctx, ctx.largest_primitive_root) if has_thm1 else None
        ard00 = bound_ard_pp(ctx, ArdCase.BOTH_ZERO) if TheoremId.ARD_Pp_00.applicable(ctx) else None
        rows.append([
            p, int(ctx.is_safe_prime), ctx.t, ctx.least_primitive_root, ctx.largest_primitive_root,
            bound_dg_wp_v0(ctx), bound_gw_wp_vnz(ctx), thm1, thm1_max,
            ard00, bound_ard_pp(ctx, ArdCase.U_NONZERO_V_ZERO),
            bound_thm2_pp_u0_vnz(ctx), bound_thm4_pwp_v0(ctx)[0],
        ])
    out.write(render(columns, rows, cfg.output_format, meta))
    return 0


def _theorems(args, cfg: RunConfig) -> list[TheoremId]:
    if args.theorems:
        try:
            ids = [TheoremId.parse(x) for x in args.theorems.split(",") if x.strip()]
        except DomainError as exc:
            raise UsageError(str(exc)) from None
    else:
        ids = TheoremId.claimed() + ([t for t in TheoremId if t.is_open] if args.include_open else [])
    if args.families:
        ids = [t for t in ids if t.family in cfg.families]
    return ids


def _fmt_bound(b) -> str:
    if b is None:
        return "none"
    if isinstance(b, float) and not b.is_integer():
        return f"{b:.4f}"
    return str(int(b))


def cmd_verify(cfg: RunConfig, theorem_ids: list[TheoremId], out, alpha_choice: str = "least") -> int:
    verdicts = []
    for p in cfg.primes:
        ctx = build_prime_context(p)
        alpha = ctx.largest_primitive_root if alpha_choice == "largest" else None
        got = verify_prime(ctx, theorem_ids, cfg.workers, alpha)
        verdicts.extend(got)
        log.info("verify: p=%d, %d verdicts", p, len(got))
    all_hold = all(v.holds for v in verdicts)

    if cfg.output_format == "json":
        per_prime: dict[int, list] = {}
        for v in verdicts:
            per_prime.setdefault(v.p, []).append({
                "theorem_id": v.theorem_id.key,
                "p": v.p,
                "bound_value": v.bound_value,
                "empirical_value": v.empirical_value,
                "relation_claimed": v.relation_claimed,
                "holds": v.holds,
                "witness": None if v.witness is None else {
                    "a": str(v.witness.a), "b": str(v.witness.b), "u": v.witness.u, "v": v.witness.v,
                },
            })
        payload = {
            "command": "verify",
            "primes": f"{cfg.prime_range[0]}..{cfg.prime_range[1]}",
            "all_hold": all_hold,
            "results": [{"p": p, "verdicts": vs} for p, vs in per_prime.items()],
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        columns = ["p", "theorem", "bound", "empirical", "relation", "status", "witness"]
        rows = []
        for v in verdicts:
            relation = {"=": "EQUAL", "<=": "AT_MOST", "none": "NO_CLAIM"}[v.relation_claimed]
            rows.append([v.p, v.theorem_id.key, _fmt_bound(v.bound_value), v.empirical_value,
                         relation, v.status, "" if v.witness is None else str(v.witness)])
        meta = {"command": "verify", "primes": f"{cfg.prime_range[0]}..{cfg.prime_range[1]}",
                "all_hold": str(all_hold).lower()}
        out.write(render(columns, rows, cfg.output_format, meta))
    return 0 if all_hold else 1


def _member(spec: str, p: int | None):
    spec = spec.strip()
    if "," in spec or spec.isdigit():
        return parse_permutation(spec)
    if p is None:
        raise UsageError(f"member spec {spec!r} needs --p")
    return Label.parse(spec).build(build_prime_context(p))


def cmd_grid(p: int | None, spec_a: str, spec_b: str, fmt: str, out) -> int:
    try:
        f = _member(spec_a, p)
        g = _member(spec_b, p)
        grid = correlation_grid(f, g)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    n = grid.order
    shifts = list(grid.shifts)
    peak, (pu, pv) = max_over(grid, ShiftFilter.ALL, exclude_origin=f == g)
    if fmt == "json":
        payload = {
            "command": "grid",
            "order": n,
            "axes": {"columns": "u, ascending left to right", "rows": "v, ascending top to bottom"},
            "shifts": shifts,
            "counts": [[grid.at(u, v) for u in shifts] for v in shifts],
            "max": {"value": peak, "u": pu, "v": pv, "exclude_origin": f == g},
        }
        out.write(json.dumps(payload) + "\n")
        return 0
    columns = ["v\\u"] + [str(u) for u in shifts]
    rows = []
    for v in shifts:
        row = [v]
        for u in shifts:
            c = grid.at(u, v)
            row.append(f"[{c}]" if (u, v) == (0, 0) else c)
        rows.append(row)
    meta = {"command": "grid", "order": n, "columns": "u", "rows": "v", "center": "[bracketed]",
            "max": peak, "at": f"({pu};{pv})"}
    out.write(render(columns, rows, fmt, meta))
    return 0


def cmd_costas_check(literal: str, out) -> int:
    try:
        f = parse_permutation(literal)
    except DomainError as exc:
        msg = str(exc)
        raise UsageError(msg if "bijection" in msg else f"not a bijection: {msg}") from None
    by_grid = is_costas_grid(f)
    by_triangle = is_costas_difference_triangle(f)
    fixed = fixed_points(f)
    out.write(f"permutation: {f}\n")
    out.write(f"order: {f.order}\n")
    out.write(f"Costas (auto-correlation grid): {'yes' if by_grid else 'no'}\n")
    out.write(f"Costas (difference triangle): {'yes' if by_triangle else 'no'}\n")
    out.write(f"checkers agree: {'yes' if by_grid == by_triangle else 'NO'}\n")
    out.write(f"Costas: {'yes' if by_grid and by_triangle else 'no'}\n")
    out.write(f"fixed points: {fixed}\n")
    out.write(f"fixed points form a Golomb ruler: {'yes' if is_golomb_ruler(fixed) else 'no'}\n")
    if by_grid != by_triangle:
        return 1
    return 0 if by_grid else 1


# -- argument parsing -----------------------------------------------------


def _add_common(sp, families: bool = True, filt: bool = True):
    sp.add_argument("--primes", default=f"{DEFAULT_SPAN[0]}..{DEFAULT_SPAN[1]}", help="inclusive range LO..HI")
    if families:
        sp.add_argument("--families", default=None, help="comma list of Wp,Wpl,Wpel,Pp,PWp,PWpl")
    if filt:
        sp.add_argument("--filter", default="ALL", help="shift filter name")
    sp.add_argument("--format", choices=FORMATS, default="markdown")
    sp.add_argument("--workers", default="1", help="worker threads for pair scans, or 'auto'")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="costas-xcorr", description="Cross-correlation of Welch / power permutation families")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("table", help="family maxima per prime")
    _add_common(sp)

    sp = sub.add_parser("bounds", help="closed-form bounds per prime")
    _add_common(sp, families=False, filt=False)
    sp.add_argument("--table4-compat", action="store_true",
                    help="floored 4p*log_p(alpha) rows, nontrivial primes only")

    sp = sub.add_parser("verify", help="check every claimed bound against exhaustive maxima")
    _add_common(sp, filt=False)
    sp.add_argument("--theorems", default=None, help="comma list of theorem ids")
    sp.add_argument("--include-open", action="store_true", help="also report open cases (no bound claimed)")
    sp.add_argument("--alpha", choices=("least", "largest"), default="least",
                    help="primitive root used for the THM1_Wpel bound")

    sp = sub.add_parser("grid", help="dump one correlation grid")
    sp.add_argument("a", help="member spec (welch-exp:3, welch-log:3, power:5) or literal 3,2,6,4,5,1")
    sp.add_argument("b", nargs="?", default=None, help="second member; defaults to the first")
    sp.add_argument("--p", type=int, default=None, help="prime for constructed members")
    sp.add_argument("--format", choices=FORMATS, default="markdown")

    sp = sub.add_parser("costas-check", help="check a permutation literal")
    sp.add_argument("permutation", help="comma-separated one-indexed values")
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s", stream=sys.stderr)
        if args.command == "table":
            return cmd_table(_config(args, "Wp,Wpel"), out)
        if args.command == "bounds":
            args.families = args.filter = None
            return cmd_bounds(_config_bounds(args), out)
        if args.command == "verify":
            args.filter = "ALL"
            cfg = _config(args, ",".join(f.value for f in FamilyId))
            return cmd_verify(cfg, _theorems(args, cfg), out, args.alpha)
        if args.command == "grid":
            p = args.p
            if p is not None:
                try:
                    build_prime_context(p)
                except DomainError as exc:
                    raise UsageError(str(exc)) from None
            return cmd_grid(p, args.a, args.b or args.a, args.format, out)
        return cmd_costas_check(args.permutation, out)
    except UsageError as exc:
        print(f"costas-xcorr: error: {exc}", file=sys.stderr)
        return 2


def _config_bounds(args) -> RunConfig:
    lo, hi = parse_range(args.primes)
    return RunConfig((lo, hi), (), ShiftFilter.ALL, args.format, parse_workers(args.workers),
                     args.table4_compat)


if __name__ == "__main__":
    sys.exit(main())
