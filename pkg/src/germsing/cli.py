"""Command line interface: ``germsing analyze | unfold | corpus | check-fd``.

Exit codes: 0 success, 2 parse error, 3 unsupported germ class,
4 precondition violation, 5 identity-check failure, 1 anything else.
"""

from __future__ import annotations

import argparse
import sys

from .doublepoint import GermMap, PreconditionError, UnsupportedGerm, double_point_curve, is_finitely_determined
from .family import SemicontinuityError, UnfoldingFamily, whitney_verdict
from .germfile import GermParseError, bundled_fixtures, load_germ_file
from .report import (
    finite_determinacy_dict,
    finite_determinacy_text,
    invariant_report_dict,
    invariant_report_text,
    to_json,
    verdict_dict,
    verdict_text,
)
from .sliceinv import FAIL, IdentityFailure, invariant_profile

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_PRECONDITION = 4
EXIT_IDENTITY = 5


def _load(path, kind):
    spec = load_germ_file(path)
    if spec.kind != kind:
        raise GermParseError(f"expected a '{kind}' file, found '{spec.kind}'", 1, 1)
    return spec


def _add_format(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    g.add_argument("--text", dest="fmt", action="store_const", const="text", help="human readable output")
    p.set_defaults(fmt="json")


def build_parser():
    parser = argparse.ArgumentParser(prog="germsing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariant report for one germ")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--e-d", dest="e_d", action="store_true", help="also compute e_D")
    _add_format(p)

    p = sub.add_parser("unfold", help="sampled Whitney-equisingularity verdict for an unfolding")
    p.add_argument("file")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    _add_format(p)

    p = sub.add_parser("corpus", help="run the bundled fixtures and print every identity check")
    p.add_argument("--filter", dest="name", default=None, help="only fixtures whose name contains NAME")

    p = sub.add_parser("check-fd", help="finite-determinacy verdict with witness")
    p.add_argument("file")
    _add_format(p)
    return parser


def cmd_analyze(args, out):
    spec = _load(args.file, "germ")
    f = GermMap(spec.components, name=spec.name)
    try:
        report = invariant_profile(f, args.seed, with_e_d=args.e_d)
    except IdentityFailure as exc:
        if exc.report is not None:
            out.write(to_json(invariant_report_dict(exc.report, f)))
        raise
    if args.fmt == "json":
        out.write(to_json(invariant_report_dict(report, f)))
    else:
        out.write(invariant_report_text(report))
    return EXIT_OK


def cmd_unfold(args, out):
    spec = _load(args.file, "unfolding")
    table = whitney_verdict(UnfoldingFamily(spec.components, name=spec.name), args.samples, args.seed)
    out.write(to_json(verdict_dict(table)) if args.fmt == "json" else verdict_text(table))
    return EXIT_OK


def cmd_check_fd(args, out):
    spec = _load(args.file, "germ")
    f = GermMap(spec.components, name=spec.name)
    lam = double_point_curve(f)
    fd = is_finitely_determined(f, lam)
    if args.fmt == "json":
        out.write(to_json(finite_determinacy_dict(spec.components, lam, fd)))
    else:
        out.write(finite_determinacy_text(lam, fd))
    return EXIT_OK


def _run_fixture(path):
    """Return ``(lines, failed)`` for one bundled fixture."""
    name = path.stem
    spec = load_germ_file(path)
    if spec.kind == "unfolding":
        table = whitney_verdict(UnfoldingFamily(spec.components, name=name))
        values = " ".join(f"{s.t}:{s.report.mu_W}" for s in table.samples)
        return [f"{'INFO':<14} {name:<12} verdict {table.verdict} mu_W {values}"], False
    f = GermMap(spec.components, name=name)
    try:
        report = invariant_profile(f, 0, strict=False)
    except PreconditionError as exc:
        return [f"{'INFO':<14} {name:<12} precondition: {exc}"], False
    except UnsupportedGerm as exc:
        return [f"{'INFO':<14} {name:<12} unsupported: {exc}"], False
    if report.d_empty:
        return [f"{'INFO':<14} {name:<12} empty double point curve"], False
    lines = []
    for c in report.checks:
        lines.append(f"{c.status.upper():<14} {name:<12} {c.name:<22} {c.lhs} {c.relation} {c.rhs}")
    return lines, any(c.status == FAIL for c in report.checks)


def cmd_corpus(args, out):
    failed = False
    paths = [p for p in bundled_fixtures() if args.name is None or args.name in p.stem]
    if not paths:
        out.write(f"no fixture matches {args.name!r}\n")
        return EXIT_PRECONDITION
    for path in paths:
        lines, bad = _run_fixture(path)
        for line in lines:
            out.write(line + "\n")
        out.flush()
        failed = failed or bad
    return EXIT_IDENTITY if failed else EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "unfold": cmd_unfold, "corpus": cmd_corpus, "check-fd": cmd_check_fd}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except GermParseError as exc:
        err.write(f"{getattr(args, 'file', '')}: parse error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except UnsupportedGerm as exc:
        err.write(f"unsupported germ: {exc}\n")
        return EXIT_UNSUPPORTED
    except PreconditionError as exc:
        err.write(f"precondition violated: {exc}\n")
        return EXIT_PRECONDITION
    except (IdentityFailure, SemicontinuityError) as exc:
        err.write(f"identity check failed: {exc}\n")
        return EXIT_IDENTITY
    except Exception as exc:  # noqa: BLE001 - last resort, reported with a distinct code
        err.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
