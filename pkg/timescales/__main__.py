# Copyright 2026 The timescales authors.  This software is licensed under the
# GNU Lesser General Public License version 3 (see the file LICENSE).
import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor

import yaml
from jinja2 import ChoiceLoader, Environment, FileSystemLoader, PackageLoader

from timescales import audit, report
from timescales._calculus import DerivKind, differentiate, integrate_kind
from timescales._scale import scale_from_string
from timescales._settings import load_settings
from timescales._validation import ConfigValidationError
from timescales.errors import (
    DivergenceError,
    DomainError,
    SingularityError,
    TimeScaleError,
)
from timescales.functions import parse_function
from timescales.monomials import MonomialKind, monomial
from timescales.series import SeriesSpec, series_eval, taylor
from timescales.util import as_rational, format_value

TEMPLATES = Environment(
    loader=ChoiceLoader(
        [FileSystemLoader("./"), PackageLoader("timescales", "templates")]
    ),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DOMAIN = 2
EXIT_SINGULAR = 3
EXIT_DIVERGENT = 4


def rational(text):
    try:
        return as_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def scale(text):
    try:
        return scale_from_string(text)
    except (ValueError, ConfigValidationError) as e:
        raise argparse.ArgumentTypeError(str(e))


def main():
    cli_args = parse_args()
    sys.exit(run(cli_args))


def run(cli_args):
    """Run a parsed command, mapping library errors to exit codes."""
    logging.basicConfig(
        level=logging.DEBUG if cli_args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        if cli_args.config is not None:
            load_settings(cli_args.config)
        return cli_args.func(cli_args)
    except (DomainError, ConfigValidationError) as e:
        logging.error("%s", e)
        return EXIT_DOMAIN
    except SingularityError as e:
        logging.error("%s", e)
        return EXIT_SINGULAR
    except DivergenceError as e:
        logging.error("%s", e)
        return EXIT_DIVERGENT
    except TimeScaleError as e:
        logging.error("%s", e)
        return EXIT_FAILED


def parse_args(raw_args=None, parser_cls=None, stdout=None):
    if parser_cls is None:
        parser_cls = argparse.ArgumentParser
    if stdout is None:
        stdout = sys.stdout

    parser = parser_cls(description="Calculus on time scales with exact arithmetic")
    parser.add_argument(
        "--config",
        type=argparse.FileType("r"),
        default=None,
        help="YAML or JSON file of settings overrides",
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", default=False, help="Log debug output"
    )
    subparser = parser.add_subparsers(dest="cmd")
    subparser.required = True

    common = parser_cls(add_help=False)
    common.add_argument(
        "--scale",
        type=scale,
        default=scale("z"),
        help="r, z, <rational>z, finite:<p>,<p>,..., a JSON object or a file path",
    )
    common.add_argument(
        "--output",
        nargs="?",
        type=argparse.FileType("w"),
        default=stdout,
        help="output file path, uses stdout if omitted",
    )

    monomial_parser = subparser.add_parser(
        "monomial", parents=[common], help="Evaluate a generalized monomial"
    )
    monomial_parser.add_argument(
        "--kind", choices=[k.value for k in MonomialKind], default="forward"
    )
    monomial_parser.add_argument("-k", type=int, required=True, help="order")
    monomial_parser.add_argument("-t", type=rational, required=True)
    monomial_parser.add_argument("--t0", type=rational, default=rational("0"))
    monomial_parser.add_argument(
        "--both",
        action="store_true",
        default=False,
        help="Also print the dual monomial of the other kind",
    )
    monomial_parser.set_defaults(func=monomial_cmd)

    deriv_parser = subparser.add_parser(
        "deriv", parents=[common], help="Differentiate a function at a point"
    )
    deriv_parser.add_argument("--fn", required=True, help="function spec")
    deriv_parser.add_argument(
        "--kind", choices=["delta", "nabla", "diamond"], default="delta"
    )
    deriv_parser.add_argument("--alpha", type=rational, default=None)
    deriv_parser.add_argument("-t", type=rational, required=True)
    deriv_parser.set_defaults(func=deriv_cmd)

    integrate_parser = subparser.add_parser(
        "integrate", parents=[common], help="Integrate a function between two points"
    )
    integrate_parser.add_argument("--fn", required=True, help="function spec")
    integrate_parser.add_argument(
        "--kind", choices=["delta", "nabla", "diamond"], default="delta"
    )
    integrate_parser.add_argument("--alpha", type=rational, default=None)
    integrate_parser.add_argument("-a", type=rational, required=True)
    integrate_parser.add_argument("-b", type=rational, required=True)
    integrate_parser.set_defaults(func=integrate_cmd)

    taylor_parser = subparser.add_parser(
        "taylor", parents=[common], help="Taylor expansion with exact remainder"
    )
    taylor_parser.add_argument("--fn", required=True, help="function spec")
    taylor_parser.add_argument(
        "--dir", choices=["delta", "nabla", "combined"], default="delta"
    )
    taylor_parser.add_argument("--alpha", type=rational, default=None)
    taylor_parser.add_argument("-n", type=int, required=True, help="order")
    taylor_parser.add_argument("--t0", type=rational, default=rational("0"))
    taylor_parser.add_argument("-t", type=rational, required=True)
    taylor_parser.set_defaults(func=taylor_cmd)

    series_parser = subparser.add_parser(
        "series", help="Evaluate a combined polynomial series from a spec file"
    )
    series_parser.add_argument(
        "spec", type=argparse.FileType("r"), help="YAML or JSON series spec"
    )
    series_parser.add_argument("-t", type=rational, default=None)
    series_parser.add_argument(
        "--sweep",
        nargs=2,
        type=rational,
        metavar=("T_MIN", "T_MAX"),
        default=None,
        help="Evaluate at every scale point in [T_MIN, T_MAX]",
    )
    series_parser.add_argument(
        "--csv", action="store_true", default=False, help="Write sweeps as CSV"
    )
    series_parser.add_argument(
        "--force",
        action="store_true",
        default=False,
        help="Report the partial sum even when the series diverges",
    )
    series_parser.add_argument(
        "--jobs", "-j", type=int, default=1, help="Worker threads for sweeps"
    )
    series_parser.add_argument(
        "--output",
        nargs="?",
        type=argparse.FileType("w"),
        default=stdout,
        help="output file path, uses stdout if omitted",
    )
    series_parser.set_defaults(func=series_cmd)

    audit_parser = subparser.add_parser(
        "audit",
        parents=[common],
        help="Compare closed-form trigonometric derivatives with the operators",
    )
    audit_parser.add_argument(
        "--p", nargs="+", type=rational, default=[rational(p) for p in audit.DEFAULT_P]
    )
    audit_parser.add_argument(
        "--alpha",
        nargs="+",
        type=rational,
        default=[rational(a) for a in audit.DEFAULT_ALPHA],
    )
    audit_parser.add_argument(
        "--window",
        nargs=2,
        type=rational,
        metavar=("LO", "HI"),
        default=[rational(w) for w in audit.DEFAULT_WINDOW],
    )
    audit_parser.add_argument("--t0", type=rational, default=rational("0"))
    audit_parser.add_argument(
        "--format", choices=["markdown", "yaml"], default="markdown"
    )
    audit_parser.add_argument(
        "--template",
        type=TEMPLATES.get_template,
        default=TEMPLATES.get_template("audit.md.j2"),
        help="Jinja2 template for the markdown report",
    )
    audit_parser.set_defaults(func=audit_cmd)

    return parser.parse_args(raw_args)


def _kind(cli_args):
    return DerivKind.from_name(cli_args.kind, cli_args.alpha)


def _write(cli_args, *records):
    report.write_json_lines(records, cli_args.output)


def monomial_cmd(cli_args):
    T = cli_args.scale
    kind = MonomialKind(cli_args.kind)
    value = monomial(kind, cli_args.k, cli_args.t, cli_args.t0, T)
    records = [
        report.OutputRecord(
            "monomial",
            {
                "scale": T,
                "kind": kind,
                "k": cli_args.k,
                "t": cli_args.t,
                "t0": cli_args.t0,
            },
            value,
        )
    ]
    if cli_args.both:
        # hat h_k(t, t0) = (-1)**k h_k(t0, t)
        other = (
            MonomialKind.BACKWARD
            if kind is MonomialKind.FORWARD
            else MonomialKind.FORWARD
        )
        partner = monomial(other, cli_args.k, cli_args.t0, cli_args.t, T)
        records.append(
            report.OutputRecord(
                "monomial",
                {
                    "scale": T,
                    "kind": other,
                    "k": cli_args.k,
                    "t": cli_args.t0,
                    "t0": cli_args.t,
                },
                partner,
                diagnostics={"dual": value == (-1) ** cli_args.k * partner},
            )
        )
    _write(cli_args, *records)
    return EXIT_OK


def _estimate_flags(estimate):
    flags = {
        name: True for name in ("fallback", "closed_form") if getattr(estimate, name)
    }
    return flags or None


def deriv_cmd(cli_args):
    f = parse_function(cli_args.fn, cli_args.scale)
    kind = _kind(cli_args)
    estimate = differentiate(f, cli_args.t, kind)
    _write(
        cli_args,
        report.OutputRecord(
            "deriv",
            {
                "scale": cli_args.scale,
                "fn": cli_args.fn,
                "kind": str(kind),
                "t": cli_args.t,
            },
            estimate.value,
            exact=estimate.exact,
            diagnostics=_estimate_flags(estimate),
        ),
    )
    return EXIT_OK


def integrate_cmd(cli_args):
    f = parse_function(cli_args.fn, cli_args.scale)
    kind = _kind(cli_args)
    value = integrate_kind(f, cli_args.a, cli_args.b, kind)
    _write(
        cli_args,
        report.OutputRecord(
            "integrate",
            {
                "scale": cli_args.scale,
                "fn": cli_args.fn,
                "kind": str(kind),
                "a": cli_args.a,
                "b": cli_args.b,
            },
            value,
        ),
    )
    return EXIT_OK


def taylor_cmd(cli_args):
    f = parse_function(cli_args.fn, cli_args.scale)
    expansion = taylor(
        f, cli_args.dir, cli_args.n, cli_args.t0, cli_args.t, alpha=cli_args.alpha
    )
    result = {
        "partial_sum": expansion.partial_sum,
        "remainder": expansion.remainder,
        "reconstructed": expansion.reconstructed,
        "coefficients": expansion.coefficients,
    }
    if expansion.nabla_coefficients:
        result["nabla_coefficients"] = expansion.nabla_coefficients
    _write(
        cli_args,
        report.OutputRecord(
            "taylor",
            {
                "scale": cli_args.scale,
                "fn": cli_args.fn,
                "dir": cli_args.dir,
                "alpha": cli_args.alpha,
                "n": cli_args.n,
                "t0": cli_args.t0,
                "t": cli_args.t,
            },
            result,
            exact=expansion.exact,
            diagnostics={
                "target": f(expansion.t),
                "closes": expansion.reconstructed == f(expansion.t),
                "degraded": expansion.degraded,
                "fallback": expansion.fallback,
            },
        ),
    )
    return EXIT_OK


def load_spec(stream):
    """Load a YAML or JSON series spec from an opened stream."""
    try:
        config = yaml.safe_load(stream)
    except yaml.YAMLError as e:
        raise ConfigValidationError(
            ["Error parsing {}: {}".format(stream.name, e)]
        ) from e
    finally:
        stream.close()
    return SeriesSpec.from_config(config)


def _evaluate(spec, t, force):
    try:
        value, convergence = series_eval(spec, t, force=force)
    except DivergenceError as e:
        return t, None, e.report
    return t, value, convergence


def series_cmd(cli_args):
    spec = load_spec(cli_args.spec)
    if cli_args.sweep is None:
        if cli_args.t is None:
            raise DomainError("series needs -t or --sweep")
        points = [spec.scale.point(cli_args.t)]
    else:
        points = spec.scale.points_between(*cli_args.sweep)

    with ThreadPoolExecutor(max_workers=max(1, cli_args.jobs)) as pool:
        results = list(
            pool.map(lambda t: _evaluate(spec, t, cli_args.force), points)
        )

    if cli_args.csv:
        report.write_csv(
            (report.sweep_row(t, value, c) for t, value, c in results),
            cli_args.output,
        )
    else:
        report.write_json_lines(
            (
                report.OutputRecord(
                    "series",
                    {"spec": spec, "t": t},
                    value,
                    diagnostics=convergence,
                )
                for t, value, convergence in results
            ),
            cli_args.output,
        )
    if any(value is None for _, value, _ in results):
        return EXIT_DIVERGENT
    return EXIT_OK


def audit_cmd(cli_args):
    findings = list(
        audit.corollary_audit(
            cli_args.p, cli_args.alpha, cli_args.window, cli_args.t0, cli_args.scale
        )
    )
    context = {
        "scale": str(cli_args.scale),
        "t0": format_value(cli_args.t0),
        "p_values": [format_value(p) for p in cli_args.p],
        "alphas": [format_value(a) for a in cli_args.alpha],
    }
    if cli_args.format == "yaml":
        audit.dump_yaml(findings, cli_args.output, **context)
    else:
        cli_args.output.write(
            audit.render_markdown(findings, cli_args.template, **context)
        )
    if any(finding.level >= audit.DEVIATION for finding in findings):
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    main()
