"""Command-line front end.

    crnormal levi FILE
    crnormal type FILE --max-order N
    crnormal model FILE
    crnormal normalize FILE --order N
    crnormal classify FILE --order N
    crnormal equiv FILE1 FILE2 --order N
    crnormal count --max-n N

Reports go to standard output, diagnostics to standard error.  Exit status
is 0 on success, 1 when the engine declines the request (for instance a
tubular model) and 2 on malformed input.
"""

import argparse
import sys

from .exceptions import DomainError, InputError

__all__ = ["main", "run"]


def _monomial(key):
    if len(key) == 3:
        return f"z^{key[0]} zbar^{key[1]} u^{key[2]}"
    return f"z^{key[0]} w^{key[1]}"


def _series_lines(series, indent="  "):
    wt = series.weighting
    keys = sorted(series.keys(), key=lambda k: (wt.degree(k),) + tuple(k))
    if not keys:
        return [indent + "0"]
    return [f"{indent}{_monomial(k)}: {series.coeffs[k]}" for k in keys]


def _finite_type(germ, max_k=None):
    from .hypersurface import remove_harmonics

    return remove_harmonics(germ, max_k)


def cmd_levi(args, out):
    from .germfile import load_germ
    from .hypersurface import levi_sign

    sign, value = levi_sign(load_germ(args.file))
    out.write(f"{sign:+d}\n" if sign else "0\n")
    out.write(f"levi_value: {value}\n")


def cmd_type(args, out):
    from .germfile import load_germ
    from .hypersurface import InfiniteTypeWithinTruncation

    germ = load_germ(args.file)
    try:
        hr = _finite_type(germ, args.max_order)
    except InfiniteTypeWithinTruncation as exc:
        out.write(f"type: infinite within truncation (no finite type <= {exc.max_k})\n")
        return
    out.write(f"type: {hr.k}\n")


def cmd_model(args, out):
    from .germfile import load_germ
    from .hypersurface import classify_model, model_symmetries

    hr = _finite_type(load_germ(args.file), args.max_order)
    model = hr.model
    out.write(f"model: {model}\n")
    out.write(f"k: {hr.k}\n")
    out.write(f"l: {model.l}\n")
    if hr.k == 2:
        out.write("class: LeviNondegenerate\n")
        out.write("symmetries: five-dimensional isotropy group of the sphere\n")
        return
    out.write(f"class: {classify_model(model)}\n")
    if classify_model(model).value == "Tubular":
        out.write("symmetries: not computed for tubular models\n")
        return
    H = model_symmetries(model)
    out.write(f"symmetries: dimension {H.dimension}, finite order {H.finite_order}\n")
    for gen in H.generators:
        out.write(f"  {gen}\n")


def _report_lines(report):
    lines = [
        f"case: {report.case}",
        f"model: {report.model}",
        f"order: {report.order}",
        "map.f:",
        *_series_lines(report.map.f),
        "map.g:",
        *_series_lines(report.map.g),
        "normalized:",
        *_series_lines(report.normalized.phi.truncate(report.order)),
        "conditions:",
    ]
    for cert in report.conditions:
        nonzero = [f"{label}={v}" for label, v in cert.residuals if v]
        status = "zero" if cert.all_zero else "NONZERO " + ", ".join(nonzero)
        lines.append(f"  {cert.id}: {len(cert.residuals)} residuals, {status}")
    return lines


def cmd_normalize(args, out):
    from .germfile import load_germ
    from .normalform import normalize

    report = normalize(load_germ(args.file), args.order)
    out.write("\n".join(_report_lines(report)) + "\n")


def cmd_classify(args, out):
    from .classify import classify_aut, jet_order
    from .germfile import load_germ
    from .normalform import normalize

    verdict = classify_aut(normalize(load_germ(args.file), args.order))
    out.write(f"case: {verdict.case_id}\n")
    out.write(f"dimension: {verdict.dimension}\n")
    out.write(f"structure: {verdict.structure}\n")
    if verdict.m is not None:
        out.write(f"m: {verdict.m}\n")
    out.write(f"order_of_validity: {verdict.order_of_validity}\n")
    out.write(f"jet_order: {jet_order(verdict)}\n")
    if verdict.note:
        out.write(f"note: {verdict.note}\n")


def cmd_equiv(args, out):
    from .equivalence import equivalent
    from .germfile import load_germ

    result = equivalent(load_germ(args.file1), load_germ(args.file2), args.order)
    out.write(f"{result.verdict}\n")
    if result.reason:
        out.write(f"reason: {result.reason}\n")


def cmd_count(args, out):
    from .counting import count_table, threshold

    if args.max_n < 1:
        raise InputError("--max-n must be at least 1")
    out.write("n N Nprime solvable_expected\n")
    for row in count_table(args.max_n):
        out.write(f"{row.n} {row.N} {row.Nprime} {str(row.solvable_expected).lower()}\n")
    out.write(f"threshold: {threshold()}\n")


def build_parser():
    p = argparse.ArgumentParser(prog="crnormal", description="Formal normal forms of real hypersurfaces in C^2.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("levi", help="sign and value of the Levi form")
    s.add_argument("file")
    s.set_defaults(func=cmd_levi)

    s = sub.add_parser("type", help="type of the point")
    s.add_argument("file")
    s.add_argument("--max-order", type=int, default=None)
    s.set_defaults(func=cmd_type)

    s = sub.add_parser("model", help="model polynomial, essential type, class and symmetries")
    s.add_argument("file")
    s.add_argument("--max-order", type=int, default=None)
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("normalize", help="normal form report")
    s.add_argument("file")
    s.add_argument("--order", type=int, default=None)
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("classify", help="automorphism group case and jet order")
    s.add_argument("file")
    s.add_argument("--order", type=int, default=None)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("equiv", help="formal equivalence up to an order")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--order", type=int, required=True)
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("count", help="coefficient counts of the counting argument")
    s.add_argument("--max-n", type=int, default=12)
    s.set_defaults(func=cmd_count)
    return p


def run(argv, out=None, err=None):
    """Run one command; returns the exit status."""
    from .hypersurface import InfiniteTypeWithinTruncation

    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except (DomainError, InfiniteTypeWithinTruncation) as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except InputError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return 2
    return 0


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
