"""Command-line front end.

Exit codes: 0 success/verified, 1 verification failure, 2 usage or parse
error, 3 domain violation.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Sequence

from . import kernels
from .content import FLOAT_REL_TOL, content, projection_contents, pythagorean_check
from .errors import DomainError, ParseError
from .exterior import compound
from .geometry import Simplex, de_gua_check, immersion_content, shape_spec, simplex_content, simplex_content_sq
from .matrix import (
    Mode,
    format_matrix,
    format_scalar,
    gram,
    determinant,
    leading_principal_minors,
    minor_dets,
    parse_matrix,
    parse_scalar,
)
from .subsets import k_subsets
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _mode(args) -> Mode | None:
    return Mode(args.mode) if args.mode else None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_content(args) -> int:
    a = parse_matrix(_read(args.matrix), _mode(args))
    report = pythagorean_check(a)
    c = content(a)
    payload = report.to_dict()
    payload["rank"] = c.rank
    text = report.to_text()
    if c.rank < a.cols:
        payload["rank_content"] = c.value
        payload["rank_content_sq"] = format_scalar(c.squared)
        text += f"\nrank: {c.rank}\nrank_content: {c.value:.17g}"
        if c.degenerate:
            payload["degenerate"] = "rank 0"
            text += "\ndegenerate: rank 0"
    _emit(args, payload, text)
    return EXIT_OK if report.verified(FLOAT_REL_TOL) else EXIT_FAIL


def cmd_minors(args) -> int:
    a = parse_matrix(_read(args.matrix), _mode(args))
    if args.grade is None:
        proj = projection_contents(a)
        payload = {
            "mode": a.mode.value,
            "minors": [
                {"subset": str(s), "minor": format_scalar(m), "content": format_scalar(c)}
                for s, (m, c) in proj.items()
            ],
        }
        text = "\n".join(f"{s} {format_scalar(m)}" for s, (m, _) in proj.items())
    else:
        i = args.grade
        if not 0 <= i <= min(a.shape):
            raise DomainError(f"grade {i} outside 0..{min(a.shape)}")
        rows, cols = k_subsets(a.rows, i), k_subsets(a.cols, i)
        grid = minor_dets(a, rows, cols)
        entries = [(r, c, grid[p][q]) for p, r in enumerate(rows) for q, c in enumerate(cols)]
        payload = {
            "mode": a.mode.value,
            "grade": i,
            "minors": [{"rows": str(r), "cols": str(c), "minor": format_scalar(v)} for r, c, v in entries],
        }
        text = "\n".join(f"{r} {c} {format_scalar(v)}" for r, c, v in entries)
    _emit(args, payload, text)
    return EXIT_OK


def cmd_compound(args) -> int:
    a = parse_matrix(_read(args.matrix), _mode(args))
    c = compound(a, args.grade)
    payload = {
        "mode": a.mode.value,
        "n": c.base_rows,
        "k": c.base_cols,
        "grade": c.grade,
        "row_subsets": [str(s) for s in c.row_subsets],
        "col_subsets": [str(s) for s in c.col_subsets],
        "matrix": [[format_scalar(x) for x in c.matrix.row(i)] for i in range(c.matrix.rows)],
    }
    _emit(args, payload, str(c))
    return EXIT_OK


def cmd_gram(args) -> int:
    a = parse_matrix(_read(args.matrix), _mode(args))
    g = gram(a)
    det = determinant(g)
    psd = all(m >= 0 for m in leading_principal_minors(g)) if a.mode is Mode.EXACT else None
    payload = {
        "mode": a.mode.value,
        "gram": [[format_scalar(x) for x in g.row(i)] for i in range(g.rows)],
        "gram_det": format_scalar(det),
        "content": math.sqrt(max(float(det), 0.0)),
    }
    text = format_matrix(g) + f"\n# det {format_scalar(det)}"
    if psd is not None:
        payload["leading_minors_nonnegative"] = psd
        text += f"\n# leading principal minors nonnegative: {'yes' if psd else 'no'}"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_USAGE
    res = run_suite(args.suite, args.trials, args.seed)
    lines = [f"{res.suite}: {res.passed}/{res.trials} pass (seed {res.seed}, backend {kernels.BACKEND})"]
    for f in res.failures[:10]:
        lines.append(f"  trial {f['trial']}: {f['detail']}")
    if not res.ok:
        lines.append(f"reproduce: {res.reproduce()}")
    _emit(args, res.to_dict(), "\n".join(lines))
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_measure(args) -> int:
    spec = shape_spec(args.shape, args.resolution)
    value = immersion_content(spec)
    payload = {"mode": "float", "shape": args.shape, "resolution": list(spec.resolution), "content": value}
    text = [f"content: {value:.17g}"]
    if spec.analytic is not None:
        rel = abs(value - spec.analytic) / abs(spec.analytic)
        payload.update(analytic=spec.analytic, relative_error=rel)
        text += [f"analytic: {spec.analytic:.17g}", f"relative_error: {rel:.3e}"]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def _parse_vertices(text: str, mode: Mode | None) -> list[list]:
    rows = parse_matrix(text, mode)
    return rows.to_lists()


def cmd_simplex(args) -> int:
    verts = _parse_vertices(_read(args.vertices), _mode(args))
    s = Simplex(verts)
    sq = simplex_content_sq(s)
    value = simplex_content(s)
    payload = {"mode": "float" if isinstance(sq, float) else "exact", "dim": s.dim, "content": value, "content_sq": format_scalar(sq)}
    _emit(args, payload, f"dim: {s.dim}\ncontent: {value:.17g}\ncontent_sq: {format_scalar(sq)}")
    return EXIT_OK


def cmd_degua(args) -> int:
    mode = _mode(args)
    try:
        legs = [parse_scalar(t, mode) for t in (args.a, args.b, args.c)]
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    res = de_gua_check(*legs)
    ok = res.relative_residual <= 1e-12
    payload = {
        "mode": "float" if isinstance(res.hyp_sq, float) else "exact",
        "leg_sq_sum": format_scalar(res.leg_sq_sum),
        "hyp_sq": format_scalar(res.hyp_sq),
        "residual": format_scalar(res.residual),
        "relative_residual": res.relative_residual,
        "verified": ok,
    }
    text = f"{format_scalar(res.leg_sq_sum)} = {format_scalar(res.hyp_sq)}"
    if not args.json:
        text += f"\nresidual: {format_scalar(res.residual)}"
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[m.value for m in Mode],
                        help="arithmetic (default: exact when every entry is a ratio)")
    common.add_argument("--json", action="store_true", help="structured output")

    p = _Parser(prog="extcontent", description="k-dimensional content, compound matrices and det(AᵗA) = Σ det(A_I)².")
    p.add_argument("--version", action="version", version="%(prog)s 0.1.0")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("content", parents=[common], help="verify det(AᵗA) = Σ det(A_I)² for a matrix file")
    s.add_argument("matrix", help="matrix file ('-' for stdin)")
    s.set_defaults(func=cmd_content)

    s = sub.add_parser("minors", parents=[common], help="row minors det(A_I), or all minors of one grade")
    s.add_argument("matrix")
    s.add_argument("--grade", type=int)
    s.set_defaults(func=cmd_minors)

    s = sub.add_parser("compound", parents=[common], help="i-th compound matrix")
    s.add_argument("matrix")
    s.add_argument("--grade", type=int, required=True)
    s.set_defaults(func=cmd_compound)

    s = sub.add_parser("gram", parents=[common], help="Gram matrix AᵗA and its determinant")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("verify", parents=[common], help="seeded randomized property suite")
    s.add_argument("--suite", required=True, help=", ".join(SUITES))
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("measure", parents=[common], help="content of a built-in immersion by quadrature")
    s.add_argument("shape", help="e.g. 'sphere(r=1)', 'helix(r=1,pitch=0.5,turns=3)'")
    s.add_argument("--resolution", type=int, default=256, help="grid cells per parameter axis")
    s.set_defaults(func=cmd_measure)

    s = sub.add_parser("simplex", parents=[common], help="content of a simplex; one vertex per line")
    s.add_argument("vertices")
    s.set_defaults(func=cmd_simplex)

    s = sub.add_parser("degua", parents=[common], help="de Gua's theorem for legs a, b, c")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("c")
    s.set_defaults(func=cmd_degua)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        # unknown shapes and bad shape parameters are usage errors
        return EXIT_USAGE if args.command == "measure" else EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
