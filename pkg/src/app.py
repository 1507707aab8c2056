import argparse
import logging
import sys

from geometry.inellipse import (
    inscribed_ellipse,
    max_area_ellipse,
    midpoint_tangent_ellipse_for_side,
    midpoint_tangent_ellipses,
)
from geometry.quadgeom import Classification, classify, normalize
from utils.config import DEFAULT_FAMILY_Q, EXIT_OK, EXIT_VIOLATION, FUZZ_TOL, default_tolerance
from utils.exceptions import InellipseError, InvalidConfigError, MalformedInputError
from utils.file_handling import quad_from_numbers, read_quad_document, write_atomic
from utils.serialization import dumps_json, render_fuzz_text, render_text, result_document
from utils.svg_render import render_svg
from verification.fuzz import FUZZ_TARGETS, FuzzConfig, run_target

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def configure_logging(verbose):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format=LOG_FORMAT, stream=sys.stderr)


def parse_q_list(text):
    """'0.25,0.5' -> [0.25, 0.5]"""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--q must be a comma-separated list of numbers, got {text!r}") from e


def resolve_tolerance(args):
    if args.tol is None:
        return default_tolerance()
    if not args.tol > 0:
        raise InvalidConfigError(f"--tol must be positive, got {args.tol}")
    return args.tol


def load_quad(args):
    if args.input and args.numbers:
        raise MalformedInputError("Give either --in PATH or eight numbers, not both")
    if args.input:
        return read_quad_document(args.input)
    if args.numbers:
        return quad_from_numbers(args.numbers)
    raise MalformedInputError("No quadrilateral given: use --in PATH or eight numbers x1 y1 ... x4 y4")


def emit(text, out):
    if out:
        path = write_atomic(out, text)
        logger.debug(f"Wrote {path}")
    else:
        sys.stdout.write(text)


def emit_document(doc, args):
    emit(dumps_json(doc) if args.json else render_text(doc), args.out)


def cmd_classify(args):
    Q = load_quad(args)
    tol = resolve_tolerance(args)
    kind = classify(Q, tol)
    if kind is Classification.PARALLELOGRAM:
        emit_document(result_document(Q, kind), args)
    else:
        norm = normalize(Q, tol)
        emit_document(result_document(norm.quad, kind, norm.normalized), args)
    return EXIT_OK


def cmd_midpoints(args):
    Q = load_quad(args)
    tol = resolve_tolerance(args)
    if args.side is not None:
        ellipses = [midpoint_tangent_ellipse_for_side(Q, args.side, tol)]
    else:
        ellipses = midpoint_tangent_ellipses(Q, tol)
    norm = normalize(Q, tol)
    emit_document(result_document(norm.quad, classify(Q, tol), norm.normalized, ellipses=ellipses), args)
    return EXIT_OK


def cmd_maxarea(args):
    Q = load_quad(args)
    tol = resolve_tolerance(args)
    maximal = max_area_ellipse(Q, tol)
    norm = normalize(Q, tol)
    emit_document(result_document(norm.quad, classify(Q, tol), norm.normalized, maximal=maximal), args)
    return EXIT_OK


def cmd_family(args):
    Q = load_quad(args)
    tol = resolve_tolerance(args)
    ellipses = [inscribed_ellipse(Q, q, tol) for q in args.q]
    norm = normalize(Q, tol)
    emit_document(result_document(norm.quad, classify(Q, tol), norm.normalized, ellipses=ellipses), args)
    return EXIT_OK


def cmd_fuzz(args):
    cfg = FuzzConfig(seed=args.seed, trials=args.trials, grid_size=args.grid,
                     tol=FUZZ_TOL if args.tol is None else args.tol)
    kinds = [Classification(k) for k in args.kinds] if args.kinds else None
    logger.debug(f"fuzz {args.target} with {cfg}, classes {args.kinds or 'all'}")
    report = run_target(args.target, cfg, kinds)
    emit(dumps_json(report.to_dict()) if args.json else render_fuzz_text(report), args.out)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_render(args):
    Q = load_quad(args)
    tol = resolve_tolerance(args)
    norm = normalize(Q, tol)
    if args.what == "midpoints":
        ellipses = midpoint_tangent_ellipses(Q, tol)
    elif args.what == "family":
        ellipses = [inscribed_ellipse(Q, q, tol) for q in args.q]
    else:
        ellipses = [max_area_ellipse(Q, tol)]
    title = f"{args.what}: {classify(Q, tol).value}"
    emit(render_svg(norm.quad, ellipses, mark_all_points=args.what != "midpoints", title=title), args.out)
    return EXIT_OK


def add_quad_input(parser):
    parser.add_argument("--in", dest="input", default=None,
                        help='JSON document {"vertices": [[x, y], ...]} with four vertices.')
    parser.add_argument("numbers", nargs="*", help="Eight numbers x1 y1 x2 y2 x3 y3 x4 y4.")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Emit JSON instead of text tables.")
    common.add_argument("--tol", type=float, default=None,
                        help="Tolerance relative to the quadrilateral diameter (overrides INELLIPSE_TOL).")
    common.add_argument("--out", default=None, help="Write the result to this path instead of stdout.")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr.")

    q_list = argparse.ArgumentParser(add_help=False)
    q_list.add_argument("--q", type=parse_q_list, default=list(DEFAULT_FAMILY_Q),
                        help="Comma-separated family parameters in (0, 1).")

    parser = argparse.ArgumentParser(prog="inellipse",
                                     description="Ellipses inscribed in convex quadrilaterals.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="Classify and normalize a quadrilateral.")
    add_quad_input(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("midpoints", parents=[common],
                       help="Inscribed ellipses tangent at side midpoints.")
    p.add_argument("--side", type=int, choices=[1, 2, 3, 4], default=None,
                   help="Only the ellipse tangent at the midpoint of this side.")
    add_quad_input(p)
    p.set_defaults(handler=cmd_midpoints)

    p = sub.add_parser("maxarea", parents=[common], help="Inscribed ellipse of maximal area.")
    add_quad_input(p)
    p.set_defaults(handler=cmd_maxarea)

    p = sub.add_parser("family", parents=[common, q_list], help="Members of the inscribed family.")
    add_quad_input(p)
    p.set_defaults(handler=cmd_family)

    p = sub.add_parser("fuzz", parents=[common], help="Randomized checks; exit 1 on any violation.")
    p.add_argument("target", choices=sorted(FUZZ_TARGETS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--grid", type=int, default=512, help="q samples per trial.")
    p.add_argument("--class", dest="kinds", action="append", choices=[k.value for k in Classification],
                   help="Restrict sampling to this class (repeatable).")
    p.set_defaults(handler=cmd_fuzz)

    p = sub.add_parser("render", parents=[common, q_list], help="SVG figure.")
    p.add_argument("what", choices=["midpoints", "family", "maxarea"])
    add_quad_input(p)
    p.set_defaults(handler=cmd_render)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except InellipseError as e:
        logger.error(f"{type(e).__name__}: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return MalformedInputError.exit_code


if __name__ == "__main__":
    sys.exit(main())
