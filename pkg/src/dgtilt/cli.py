"""Command-line driver.

Exit codes: 0 all checks pass, 1 a verification failed, 2 the input could not
be parsed or is semantically invalid, 3 a hypothesis failed or a resolution
ran out of budget.
"""

import argparse
import sys

from .algebra import DGAlgebra, check_dga
from .complexes import homology
from .corollaries import ladkani_specialize, self_dual_corollary
from .errors import DGError, HypothesisFailure, PhiCheckFailed, ResolutionBudgetExceeded
from .fileformat import load, serialize
from .modules import DGModule, ModuleMap, check_module, check_module_map, dualize, regular
from .report import Report
from .tilt import run_tilt
from .triangular import build_triangular, verify_triangular

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 1, 2, 3
SUITES = ("all", "recollement", "tilt", "ladkani", "selfdual")


class _Exit(Exception):
    def __init__(self, code, msg):
        self.code = code
        self.msg = msg


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _vec_text(vec, field):
    if not vec:
        return "0"
    return " + ".join(f"{field.format(vec[k])} {k}" for k in sorted(vec))


def _selected(src, name, kinds):
    if name is not None:
        if name not in src:
            raise _Exit(EXIT_INPUT, f"no section named {name!r}")
        if src.kind_of(name) not in kinds:
            raise _Exit(EXIT_INPUT, f"{name!r} is a {src.kind_of(name)}")
        return [name]
    return [n for n in src.names() if src.kind_of(n) in kinds]


def _problem(args):
    src = load(args.problem)
    names = _selected(src, args.name, ("problem",))
    if len(names) != 1:
        raise _Exit(EXIT_INPUT, f"{args.problem} has {len(names)} problems; pick one with --name")
    p = src[names[0]]
    # flags override the caps written in the problem file
    if args.max_generators is not None:
        p.max_generators = args.max_generators
    if args.degree_window is not None:
        p.degree_window = args.degree_window
    return p


def _window(text):
    lo, sep, hi = text.partition(":")
    try:
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    if not sep or lo > hi:
        raise argparse.ArgumentTypeError(f"expected lo:hi with lo <= hi, got {text!r}")
    return (lo, hi)


def _positive(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _add_caps(sp):
    sp.add_argument("--max-generators", type=_positive, metavar="N",
                    help="resolution generator cap (default from the problem file)")
    sp.add_argument("--degree-window", type=_window, metavar="LO:HI",
                    help="degrees a resolution may use (default from the problem file)")


# -- subcommands --------------------------------------------------------------

def cmd_check(args):
    rep = Report()
    for path in args.paths:
        src = load(path, check=False)
        for n in src.names():
            obj = src[n]
            if isinstance(obj, DGAlgebra):
                rep.extend(check_dga(obj), f"{n}: ")
            elif isinstance(obj, DGModule):
                rep.extend(check_module(obj), f"{n}: ")
            elif isinstance(obj, ModuleMap):
                rep.extend(check_module_map(obj), f"{n}: ")
            else:
                rep.add(f"{n}: references resolve", "axiom", True)
    _write(None, rep.render())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_homology(args):
    src = load(args.path)
    lines = []
    for n in _selected(src, args.of, ("algebra", "module", "bimodule")):
        obj = src[n]
        hd = homology(obj.complex)
        dims = hd.dims()
        lines.append(f"[{n}]")
        if not dims:
            lines.append("exact")
        for deg in sorted(dims):
            reps = [_vec_text(hd.representative(h), obj.field) for h in hd.homology.basis(deg)]
            lines.append(f"H^{deg} dim {dims[deg]}: " + "; ".join(reps))
    _write(None, "\n".join(lines) + "\n")
    return EXIT_OK


def _tilde_text(result, p):
    name = f"{p.name or 'problem'}_tilde"
    return serialize({name: result.tilde})


def cmd_tilt(args):
    p = _problem(args)
    result = run_tilt(p)
    if args.out:
        _write(args.out, _tilde_text(result, p))
    _write(args.report, result.report.render())
    return EXIT_OK if result.ok else EXIT_FAIL


def _suite_recollement(p):
    t = build_triangular(p.R, p.S, p.M, name="Lambda")
    return verify_triangular(t)


def cmd_verify(args):
    p = _problem(args)
    suite = args.suite
    rep = Report()
    hypothesis = False
    if suite in ("all", "recollement"):
        rep.extend(_suite_recollement(p), "recollement: ")
    result = None
    if suite in ("all", "tilt", "ladkani", "selfdual"):
        result = run_tilt(p)
        if suite in ("all", "tilt"):
            rep.extend(result.report, "tilt: ")
    if suite in ("all", "ladkani"):
        sp = ladkani_specialize(result)
        ring = sp.report.entries[0].status == "PASS"
        if suite == "all" and (not ring or sp.diagnostics):
            why = "; ".join(f"{type(d).__name__}: {d}" for d in sp.diagnostics) or "not a ring case"
            rep.warn("ladkani: not applicable", "axiom", why)
        else:
            rep.extend(sp.report, "ladkani: ")
            hypothesis = hypothesis or not ring or bool(sp.diagnostics)
    if suite in ("all", "selfdual"):
        try:
            rep.extend(self_dual_corollary(p, result).report, "selfdual: ")
        except HypothesisFailure as e:
            if suite != "all":
                raise
            rep.warn("selfdual: not applicable", "axiom", f"{type(e).__name__}: {e}")
    _write(args.report, rep.render())
    if hypothesis:
        return EXIT_HYPOTHESIS
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_dualize(args):
    src = load(args.path)
    out = {}
    for n in _selected(src, args.of, ("algebra", "module", "bimodule")):
        obj = src[n]
        if isinstance(obj, DGAlgebra):
            obj = regular(obj, "bi")
        out[f"D_{n}"] = dualize(obj)
    if not out:
        raise _Exit(EXIT_INPUT, f"{args.path} has nothing to dualize")
    _write(args.out, serialize(out))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="dgtilt", description="Verify tilts of upper triangular "
                                 "DG algebras given by structure constants.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="validate the axioms of every section")
    sp.add_argument("paths", nargs="+", metavar="PATH")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("homology", help="per-degree homology with representatives")
    sp.add_argument("path", metavar="PATH")
    sp.add_argument("--of", metavar="NAME", help="only this section")
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("tilt", help="build and verify the tilted algebra")
    sp.add_argument("problem", metavar="PROBLEM")
    sp.add_argument("--name", help="problem section, if the file has several")
    sp.add_argument("--out", metavar="OUT", help="write the tilted algebra here")
    sp.add_argument("--report", metavar="REPORT", help="write the report here (default stdout)")
    _add_caps(sp)
    sp.set_defaults(func=cmd_tilt)

    sp = sub.add_parser("verify", help="run a verification suite on a problem")
    sp.add_argument("problem", metavar="PROBLEM")
    sp.add_argument("--name", help="problem section, if the file has several")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--report", metavar="REPORT", help="write the report here (default stdout)")
    _add_caps(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("dualize", help="k-linear duals of algebras and modules")
    sp.add_argument("path", metavar="PATH")
    sp.add_argument("--of", metavar="NAME", help="only this section")
    sp.add_argument("--out", metavar="OUT", help="output file (default stdout)")
    sp.set_defaults(func=cmd_dualize)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as e:
        print(f"error: {e.msg}", file=sys.stderr)
        return e.code
    except (ResolutionBudgetExceeded, HypothesisFailure) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except PhiCheckFailed as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except DGError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def run_command(argv):
    """Run one command line and return its exit code (usage errors still raise SystemExit)."""
    return main(list(argv))


if __name__ == "__main__":
    sys.exit(main())
