"""Command-line front end.

Exit status: 0 on success, 1 when the request is refused on mathematical
grounds (unknown surface, unsupported configuration, invalid model), 2 when
the input cannot be parsed.  Results go to stdout and diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .catalog_report import format_records, format_table, report
from .intersection import WeilClass, pullback
from .positivity import UnsupportedSurface, box_size, is_ample, search_bott_failures
from .rational import fmt_q
from .riemann_roch import chi_omega1
from .surface_model import CatalogError, SurfaceModel, builtin_covers, builtin_fixtures, load_catalog, validate
from .toric import Fan2D, FanError, classify_fan, singularity_multiset

EXIT_OK, EXIT_REFUSED, EXIT_PARSE = 0, 1, 2

# The report runs its own searches; larger boxes are left to the `search` command.
REPORT_BOUND = 2
REPORT_MAX_BOX = 5**8
PARALLEL_THRESHOLD = 1 << 20


class Refusal(Exception):
    pass


class ParseFailure(Exception):
    pass


def _parse_ints(text: str, what: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ParseFailure(f"{what}: expected comma-separated integers, got {text!r}") from None


def _parse_rays(text: str) -> list[tuple[int, int]]:
    rays = []
    for chunk in text.split(";"):
        pair = _parse_ints(chunk.strip(), "--rays")
        if len(pair) != 2:
            raise ParseFailure(f"--rays: {chunk!r} is not an 'x,y' pair")
        rays.append((pair[0], pair[1]))
    return rays


def _load(args: argparse.Namespace, strict: bool = True) -> tuple[list[SurfaceModel], list[SurfaceModel]]:
    """(surfaces, covers).  Covers only ship with the built-in catalog."""
    path = args.catalog or os.environ.get("GDP_CATALOG")
    if not path:
        return builtin_fixtures(), builtin_covers()
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise Refusal(f"cannot read catalog {path}: {exc.strerror}") from None
    try:
        return load_catalog(data, strict=strict), []
    except CatalogError as exc:
        raise ParseFailure(f"{path}: {exc}") from None


def _surface(args: argparse.Namespace) -> SurfaceModel:
    models, covers = _load(args)
    for m in [*models, *covers]:
        if m.name == args.surface:
            return m
    raise Refusal(f"unknown surface {args.surface!r}")


def _divisor(model: SurfaceModel, text: str) -> WeilClass:
    values = _parse_ints(text, "--coeffs")
    if len(values) != len(model.minus1_ids):
        raise ParseFailure(
            f"--coeffs: {model.name} has {len(model.minus1_ids)} (-1)-curves, got {len(values)} coefficients"
        )
    return WeilClass.from_tuple(model, values)


def _emit(args: argparse.Namespace, table_lines: Sequence[str], records: Sequence[dict]) -> None:
    if args.format == "records":
        for rec in records:
            print(json.dumps(rec, ensure_ascii=True))
    else:
        for line in table_lines:
            print(line)


def cmd_validate(args: argparse.Namespace) -> int:
    models, covers = _load(args, strict=False)
    pool = [*models, *covers]
    if args.surface != "all":
        pool = [m for m in pool if m.name == args.surface]
        if not pool:
            raise Refusal(f"unknown surface {args.surface!r}")
    lines, records, status = [], [], EXIT_OK
    for m in pool:
        rep = validate(m)
        if not rep.ok:
            status = EXIT_REFUSED
        lines.append(f"{m.name}: {'ok' if rep.ok else 'INVALID'}")
        lines.extend(f"  {v.code}: {v.message}" for v in rep)
        lines.extend(f"  note: {f}" for f in rep.flags)
        records.append({
            "name": m.name,
            "ok": rep.ok,
            "violations": [{"code": v.code, "message": v.message} for v in rep],
            "flags": list(rep.flags),
        })
    _emit(args, lines, records)
    return status


def cmd_chi(args: argparse.Namespace) -> int:
    model = _surface(args)
    breakdown = chi_omega1(model, _divisor(model, args.coeffs))
    rec = breakdown.records(model)
    _emit(args, [f"{k} = {v}" for k, v in rec.items()], [{"surface": model.name, **rec}])
    return EXIT_OK


def cmd_lift(args: argparse.Namespace) -> int:
    model = _surface(args)
    pb = pullback(model, _divisor(model, args.coeffs))
    values = {model.curve(cid).name: fmt_q(pb[cid]) for cid in model.curve_ids}
    lines = [f"pi^*D = {pb.format(model)}"] + [f"{k} = {v}" for k, v in values.items()]
    _emit(args, lines, [{"surface": model.name, "coefficients": args.coeffs, "pullback": values}])
    return EXIT_OK


def cmd_ample(args: argparse.Namespace) -> int:
    model = _surface(args)
    cert = is_ample(model, _divisor(model, args.coeffs))
    if cert.verdict == "unsupported":
        raise Refusal(f"{model.name}: ampleness test needs at least one (-1)-curve and one (-2)-curve")
    gram = {model.curve(cid).name: fmt_q(v) for cid, v in cert.gram_values.items()}
    lines = [f"verdict = {cert.verdict}", f"method = {cert.method}"]
    lines += [f"(pi^*D).{name} = {v}" for name, v in gram.items()]
    _emit(args, lines, [{"surface": model.name, "verdict": cert.verdict, "method": cert.method, "gram": gram}])
    return EXIT_OK


def _workers(model: SurfaceModel, bound: int) -> int:
    if box_size(len(model.minus1_ids), bound) < PARALLEL_THRESHOLD:
        return 1
    return max(1, min(8, os.cpu_count() or 1))


def cmd_search(args: argparse.Namespace) -> int:
    model = _surface(args)
    if args.bound < 0:
        raise ParseFailure("--bound must be non-negative")
    if args.budget is not None and args.budget < 0:
        raise ParseFailure("--budget must be non-negative")
    result = search_bott_failures(model, args.bound, budget=args.budget, workers=_workers(model, args.bound))
    if not result.complete:
        print(
            f"budget reached: examined {result.examined} of {result.box_size} candidates; results are partial",
            file=sys.stderr,
        )
    lines = []
    for w in result:
        coeffs = ",".join(str(c) for c in w.coefficients)
        lines.append(f"a=({coeffs})  chi={fmt_q(w.chi_omega)}  gram=[{', '.join(w.certificate.record())}]")
    if not lines:
        lines = ["no witnesses"]
    _emit(args, lines, [w.record() for w in result])
    return EXIT_OK


def cmd_fan_sings(args: argparse.Namespace) -> int:
    try:
        fan = Fan2D.from_unordered(_parse_rays(args.rays))
        cones = classify_fan(fan)
        labels = singularity_multiset(fan)
    except FanError as exc:
        raise Refusal(str(exc)) from None
    rec = {
        "rays": [list(r) for r in fan.rays],
        "cones": [{"cone": [list(r) for r in c.cone], "order": c.order, "label": c.label} for c in cones],
        "singularities": labels,
    }
    _emit(args, [" ".join(labels) if labels else "smooth"], [rec])
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    models, covers = _load(args)
    by_name = {m.name: m for m in [*models, *covers]}

    def run(m: SurfaceModel):
        if m.unsupported_for_positivity or box_size(len(m.minus1_ids), REPORT_BOUND) > REPORT_MAX_BOX:
            return None
        return search_bott_failures(m, REPORT_BOUND)

    searches = {m.name: r for m in models if (r := run(m)) is not None}
    cover_names = {n for m in models for n in (m.metadata.get("universal_cover") or {}).get("names", [])}
    cover_searches = {n: r for n in sorted(cover_names) if n in by_name and (r := run(by_name[n])) is not None}
    verdicts = report(models, searches, cover_searches)
    print(format_records(verdicts) if args.format == "records" else format_table(verdicts))
    for v in verdicts:
        for c in v.conflicts:
            print(f"conflict: {v.name}: {c}", file=sys.stderr)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse's default exit status is already 2
        raise ParseFailure(message)


def build_parser() -> argparse.ArgumentParser:
    def shared(default_catalog, default_format):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--catalog", default=default_catalog,
                       help="catalog JSON file (default: $GDP_CATALOG, else the built-in catalog)")
        p.add_argument("--format", choices=("table", "records"), default=default_format)
        return p

    # Options may appear before or after the subcommand; the subcommand copy
    # must not overwrite a value given earlier, hence SUPPRESS there.
    parser = _Parser(prog="gdp", description="Gorenstein del Pezzo toolkit", parents=[shared(None, "table")])
    common = shared(argparse.SUPPRESS, argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check catalog entries")
    p.add_argument("surface", help="surface name or 'all'")
    p.set_defaults(func=cmd_validate)

    for name, func, help_text in (
        ("chi", cmd_chi, "chi(Omega^[1](D)) with every intermediate term"),
        ("lift", cmd_lift, "numerical pullback pi^*D"),
        ("ample", cmd_ample, "ampleness certificate"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("surface")
        p.add_argument("--coeffs", required=True, help="a1,a2,... over the (-1)-curves")
        p.set_defaults(func=func)

    p = sub.add_parser("search", parents=[common], help="ample D with chi(Omega^[1](D)) < 0")
    p.add_argument("surface")
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="stop after this many candidates")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("fan-sings", parents=[common], help="singularities of a complete 2D fan")
    p.add_argument("--rays", required=True, help='e.g. "1,2;1,-2;-1,0"')
    p.set_defaults(func=cmd_fan_sings)

    p = sub.add_parser("report", parents=[common], help="classification summary")
    p.set_defaults(func=cmd_report)
    return parser


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    """argparse reads "-1,2" as an option; rewrite `--coeffs -1,2` as `--coeffs=-1,2`."""
    out: list[str] = []
    for tok in argv:
        if out and out[-1] in ("--coeffs", "--rays") and tok.startswith("-") and tok[1:2].isdigit():
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = _glue_negative_values(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseFailure as exc:
        print(f"gdp: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Refusal, UnsupportedSurface) as exc:
        print(f"gdp: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
