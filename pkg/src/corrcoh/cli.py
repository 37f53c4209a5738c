"""Command-line front end: ``corrcoh make|report|verify|simulate``.

Exit codes: 0 success, 1 invalid input, 2 verification failure.
"""

import argparse
import csv
import io
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from ._accel import backend_name
from .measures import measure_report
from .rsp import (
    circular_average_payoff,
    min_average_payoff,
    normalize,
    optimal_alpha,
    optimal_payoff,
    simulate_rsp,
    spherical_average_payoff,
)
from .states import (
    InvalidStateError,
    dumps_state,
    load_state,
    make_bell,
    make_bell_diagonal,
    make_product,
    make_werner,
    paper_channel_state,
    paper_product_state,
    qubit_state,
    random_density,
)
from .teleport import fidelity_discord_bounds
from .verify import run_all

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2

log = logging.getLogger("corrcoh")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # bad usage is invalid input, not a verification failure
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def vec3(text):
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    try:
        return normalize(parts)
    except ValueError:
        raise argparse.ArgumentTypeError("the zero vector has no direction")


def raw_vec3(text):
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated numbers, got {text!r}")
    return np.array(parts)


# ---------------------------------------------------------------------------
# report document
# ---------------------------------------------------------------------------

def _floats(v):
    return [float(x) for x in v]


def build_report(rho, targets=(), beta=None):
    measures = measure_report(rho)
    pmin, axis = min_average_payoff(rho)
    rsp = {
        "spherical_average": spherical_average_payoff(rho),
        "min_average": pmin,
        "min_average_axis": _floats(axis),
        "targets": [],
    }
    if beta is not None:
        rsp["circular_average"] = {"beta": _floats(beta), "value": circular_average_payoff(rho, beta)}
    for s in targets:
        alpha, degenerate = optimal_alpha(rho, s)
        rsp["targets"].append({
            "target": _floats(s),
            "alpha": _floats(alpha),
            "degenerate": degenerate,
            "optimal_payoff": optimal_payoff(rho, s),
        })
    return {
        "label": rho.label,
        "input_digest": rho.digest(),
        "measures": measures.to_dict(),
        "rsp": rsp,
        "teleport": fidelity_discord_bounds(rho).to_dict(),
        "tool_version": __version__,
    }


def flatten(doc, prefix=""):
    """Leaf fields of a nested document as ``(dotted.key, value)`` pairs."""
    items = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            items.extend(flatten(v, f"{prefix}{k}."))
    elif isinstance(doc, list):
        for i, v in enumerate(doc):
            items.extend(flatten(v, f"{prefix}{i}."))
    else:
        items.append((prefix[:-1], doc))
    return items


def _csv_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return v


def render(doc, fmt):
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    pairs = flatten(doc)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([k for k, _ in pairs])
        writer.writerow([_csv_value(v) for _, v in pairs])
        return buf.getvalue()
    width = max(len(k) for k, _ in pairs)
    return "".join(f"{k:<{width}}  {_csv_value(v)}\n" for k, v in pairs)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_make(args):
    fam = args.family
    if fam == "bell":
        rho = make_bell(args.which)
    elif fam == "werner":
        if args.p is None:
            raise UsageError("werner needs --p")
        rho = make_werner(args.p)
    elif fam == "bell-diagonal":
        if args.c is None:
            raise UsageError("bell-diagonal needs --c c1,c2,c3")
        rho = make_bell_diagonal(*args.c)
    elif fam == "product":
        a = np.zeros(3) if args.a is None else args.a
        b = np.zeros(3) if args.b is None else args.b
        rho = make_product(qubit_state(a), qubit_state(b))
    elif fam == "random":
        rho = random_density(args.dim, args.rank, args.seed)
    elif fam == "paper-product":
        rho = paper_product_state()
    elif fam == "paper-channel":
        rho = paper_channel_state()
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown family {fam}")
    _write(dumps_state(rho), args.out)
    return EXIT_OK


def _load_pair(path):
    rho = load_state(path)
    if rho.dim != 4:
        raise UsageError(f"{path}: expected a two-qubit (dim 4) state, got dim {rho.dim}")
    return rho


def cmd_report(args):
    rho = _load_pair(args.state)
    doc = build_report(rho, args.target or (), args.beta)
    _write(render(doc, args.format), args.out)
    return EXIT_OK


def cmd_simulate(args):
    rho = _load_pair(args.state)
    res = simulate_rsp(rho, args.target, args.shots, args.seed)
    doc = {
        "label": rho.label,
        "input_digest": rho.digest(),
        "target": _floats(args.target),
        "alpha": _floats(res.alpha),
        "degenerate": res.degenerate,
        "shots": res.shots,
        "seed": args.seed,
        "n_plus": res.n_plus,
        "empirical": {
            "r": _floats(res.empirical_r),
            "fidelity": res.empirical_fidelity,
            "payoff": res.empirical_payoff,
            "fidelity_stderr": res.fidelity_stderr,
        },
        "analytic": {
            "r": _floats(res.analytic_r),
            "fidelity": res.analytic_fidelity,
            "payoff": res.analytic_payoff,
        },
    }
    text = render(doc, args.format)
    if res.degenerate and args.format == "text":
        text += "note: E s = 0, every measurement direction is optimal; used the z axis\n"
    _write(text, args.out)
    return EXIT_OK


def cmd_verify(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    start = time.perf_counter()
    results = run_all(args.trials, args.seed)
    elapsed = time.perf_counter() - start
    ok = all(r.passed(args.tol) for r in results)
    if args.format == "json":
        doc = {
            "trials": args.trials,
            "seed": args.seed,
            "tolerance": args.tol,
            "passed": ok,
            "suites": [
                {
                    "name": r.name,
                    "trials": r.trials,
                    "max_defect": r.max_defect,
                    "passed": r.passed(args.tol),
                    "worst_trial": r.worst_trial,
                    "worst_seed": r.worst_seed,
                    "worst_digest": r.worst_digest,
                }
                for r in results
            ],
        }
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        width = max(len(r.name) for r in results)
        print(f"{'suite':<{width}}  {'trials':>6}  {'max defect':>10}  status")
        for r in results:
            status = "pass" if r.passed(args.tol) else "FAIL"
            print(f"{r.name:<{width}}  {r.trials:>6}  {r.max_defect:10.3e}  {status}")
            if not r.passed(args.tol):
                print(f"  worst trial {r.worst_trial} seed {r.worst_seed} digest {r.worst_digest}")
        print(f"tolerance {args.tol:g}, seed {args.seed}, backend {backend_name()}, "
              f"{elapsed:.2f} s")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser():
    parser = _Parser(prog="corrcoh", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"corrcoh {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("make", help="write a state file")
    p.add_argument("family", choices=["bell", "werner", "bell-diagonal", "product", "random",
                                      "paper-product", "paper-channel"])
    p.add_argument("--which", default="phi+", choices=["phi+", "phi-", "psi+", "psi-"])
    p.add_argument("--p", type=float, help="Werner mixing weight")
    p.add_argument("--c", type=raw_vec3, help="Bell-diagonal correlations c1,c2,c3")
    p.add_argument("--a", type=raw_vec3, help="Bloch vector of qubit A (product)")
    p.add_argument("--b", type=raw_vec3, help="Bloch vector of qubit B (product)")
    p.add_argument("--dim", type=int, default=4, choices=[2, 4])
    p.add_argument("--rank", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("report", help="compute every measure of a state file")
    p.add_argument("state")
    p.add_argument("--format", default="text", choices=["text", "json", "csv"])
    p.add_argument("--target", type=vec3, action="append", help="RSP target x,y,z (repeatable)")
    p.add_argument("--beta", type=vec3, help="axis for the circular average x,y,z")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="check the exact identities on random states")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="finite-shot remote state preparation")
    p.add_argument("state")
    p.add_argument("--target", type=vec3, required=True)
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", default="text", choices=["text", "json", "csv"])
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidStateError, UsageError, ValueError, OSError) as exc:
        print(f"corrcoh {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
