"""Command-line front end.

Subcommands:

  check           run the bracket/anchor axiom checks on a scenario's model
  compose         compose the morphisms a scenario declares and test them
                  against applying one after the other
  pinv            print the left pseudo-inverse of a named scenario matrix
  simulate        integrate the scenario's control system, write CSV
  euler-lagrange  integrate the scenario's variational problem, write CSV
  verify-paper    re-derive the bundled worked example (needs no scenario)

Exit status: 0 all checks passed, 1 some check failed, 2 usage error,
3 scenario or data error.  Reports go to stdout as text, or as JSON
with --json; when a CSV trajectory occupies stdout the report moves to
stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from importlib import resources

from .algebroid import check_axioms, induced_anchor
from .bundle import (
    GeometryError,
    VBMorphism,
    apply_morphism,
    compose,
    identity_map,
    tangent_bundle,
    tangent_lift,
)
from .control import TrajectoryError, _compile, integrate, solve_el
from .matcalc import (
    FMatrix,
    RankDropWarning,
    SingularMatrixError,
    left_pseudo_inverse,
    matmul,
)
from .report import Report
from .scenario import ScenarioError, load_scenario
from .symexpr import Expr, ExprError
from .verify import verify_paper

__all__ = ["run", "main"]

_BUNDLED = "worked_example.scn"


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="algebroids",
        description="Symbolic checks and trajectories for anchored frame models.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def common(p, scenario=True):
        if scenario:
            p.add_argument(
                "--scenario",
                metavar="PATH",
                help="scenario file (default: the bundled worked example)",
            )
        p.add_argument(
            "--out", metavar="PATH", help="write CSV or report here instead of stdout"
        )
        p.add_argument(
            "--json", action="store_true", help="emit the report as JSON"
        )
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="override the scenario's random seed",
        )

    common(sub.add_parser("check", help="run axiom checks on the scenario model"))
    common(sub.add_parser("compose", help="compose declared morphisms and verify"))
    p_pinv = sub.add_parser("pinv", help="left pseudo-inverse of a named matrix")
    common(p_pinv)
    p_pinv.add_argument("--matrix", required=True, help="matrix name in the scenario")
    common(sub.add_parser("simulate", help="integrate the control system to CSV"))
    common(
        sub.add_parser(
            "euler-lagrange", help="integrate the variational problem to CSV"
        )
    )
    common(sub.add_parser("verify-paper", help="re-derive the worked example"))
    return parser


def _bundled_scenario_path():
    return resources.files("algebroids").joinpath("scenarios", _BUNDLED)


def _load(args):
    if args.scenario is None:
        path = _bundled_scenario_path()
    else:
        path = args.scenario
    return load_scenario(path)


def _emit_report(report, args, csv_used_stdout=False):
    payload = report.json() if args.json else report.text()
    out = getattr(args, "out", None)
    if out and not csv_used_stdout and args.command not in (
        "simulate",
        "euler-lagrange",
    ):
        with open(out, "w") as f:
            f.write(payload + "\n")
    elif csv_used_stdout:
        print(payload, file=sys.stderr)
    else:
        print(payload)


def _emit_csv(traj, args):
    """Write the trajectory; return True when it went to stdout."""
    if args.out:
        with open(args.out, "w") as f:
            traj.write_csv(f)
        return False
    traj.write_csv(sys.stdout)
    return True


def _cmd_check(args):
    scen = _load(args)
    if scen.model is None:
        raise ScenarioError("scenario declares no frame and anchor to check")
    seed = scen.seed if args.seed is None else args.seed
    axioms = check_axioms(scen.model, seed=seed, samples=scen.samples)
    report = Report()
    report.extend_axioms(axioms)
    _emit_report(report, args)
    return (0 if report.all_passed else 1), report


def _sample_sections(bundle):
    """Frame sections plus one mixed section with coordinate coefficients."""
    sections = [bundle.frame_section(i) for i in range(bundle.rank)]
    coords = bundle.base.coords
    coeffs = [
        Expr.variable(coords[i % len(coords)]) + Expr.constant(i + 1)
        for i in range(bundle.rank)
    ]
    sections.append(bundle.section(coeffs))
    return sections


def _morphism_pool(scen):
    pool = []
    tangent = tangent_bundle(scen.chart)
    ident = identity_map(scen.chart)
    if scen.model is not None:
        pool.append(("anchor", induced_anchor(scen.model)))
    for name, cmap in scen.maps.items():
        pool.append(("T[%s]" % name, tangent_lift(cmap)))
    for name, mat in scen.matrices.items():
        dim, rank = scen.chart.dim, scen.bundle.rank if scen.bundle else None
        if rank is None:
            continue
        if mat.shape() == (dim, rank):
            pool.append((name, VBMorphism(tangent, scen.bundle, ident, mat)))
        elif mat.shape() == (rank, dim):
            pool.append((name, VBMorphism(scen.bundle, tangent, ident, mat)))
    return pool


def _cmd_compose(args):
    scen = _load(args)
    pool = _morphism_pool(scen)
    report = Report()
    for outer_name, outer in pool:
        for inner_name, inner in pool:
            if inner.target != outer.source:
                continue
            name = "compose %s*%s" % (outer_name, inner_name)
            both = compose(outer, inner)
            witness = ""
            ok = True
            for z in _sample_sections(inner.source):
                if apply_morphism(both, z) != apply_morphism(
                    outer, apply_morphism(inner, z)
                ):
                    ok = False
                    witness = "acts differently on %s" % z
                    break
            report.add(name, ok, witness)
    _emit_report(report, args)
    return (0 if report.all_passed else 1), report


def _cmd_pinv(args):
    scen = _load(args)
    if args.matrix not in scen.matrices:
        raise ScenarioError(
            "scenario declares no matrix named %r (have: %s)"
            % (args.matrix, ", ".join(sorted(scen.matrices)) or "none")
        )
    mat = scen.matrices[args.matrix]
    report = Report()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", RankDropWarning)
            left = left_pseudo_inverse(mat)
        for w in caught:
            print("note: %s" % w.message, file=sys.stderr)
    except SingularMatrixError as err:
        report.add("left-inverse %s" % args.matrix, False, str(err))
        _emit_report(report, args)
        return 1, report
    identity_ok = matmul(left, mat) == FMatrix.identity(mat.ncols)
    if identity_ok:
        witness = str(left)
    else:
        witness = "product with %s is not the identity" % args.matrix
    report.add("left-inverse %s" % args.matrix, identity_ok, witness)
    if not args.json:
        lines = str(left)
        if args.out:
            with open(args.out, "w") as f:
                f.write(lines + "\n" + report.text() + "\n")
        else:
            print(lines)
            print(report.text())
    else:
        _emit_report(report, args)
    return (0 if identity_ok else 1), report


def _cmd_simulate(args):
    scen = _load(args)
    if scen.control is None or scen.simulate is None:
        raise ScenarioError("scenario lacks a [control] or [simulate] block")
    if not scen.controls:
        raise ScenarioError("scenario lacks a [controls] block")
    funs = [_compile(scen.controls[u], ("t",)) for u in scen.control.inputs]

    def signal(t):
        return [f(t) for f in funs]

    traj = integrate(
        scen.control,
        signal,
        scen.simulate.x0,
        scen.simulate.horizon,
        scen.simulate.dt,
    )
    used_stdout = _emit_csv(traj, args)
    report = Report()
    report.add(
        "simulate",
        True,
        "%d samples, final cost %.12g" % (len(traj.times), traj.final_cost),
    )
    _emit_report(report, args, csv_used_stdout=used_stdout)
    return 0, report


def _cmd_el(args):
    scen = _load(args)
    if scen.el is None:
        raise ScenarioError("scenario lacks an [euler_lagrange] block")
    traj = solve_el(scen.el)
    used_stdout = _emit_csv(traj, args)
    report = Report()
    report.add(
        "euler-lagrange",
        True,
        "%d samples, energy drift %.3g" % (len(traj.times), traj.energy_drift()),
    )
    _emit_report(report, args, csv_used_stdout=used_stdout)
    return 0, report


def _cmd_verify(args):
    report = verify_paper()
    _emit_report(report, args)
    return (0 if report.all_passed else 1), report


_COMMANDS = {
    "check": _cmd_check,
    "compose": _cmd_compose,
    "pinv": _cmd_pinv,
    "simulate": _cmd_simulate,
    "euler-lagrange": _cmd_el,
    "verify-paper": _cmd_verify,
}


def run(argv):
    """Parse argv and dispatch; returns (exit status, Report or None)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return (0 if not err.code else 2), None
    try:
        status, report = _COMMANDS[args.command](args)
    except (ScenarioError, TrajectoryError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 3, None
    except (GeometryError, ExprError) as err:
        print("error: %s" % err, file=sys.stderr)
        return 3, None
    except OSError as err:
        print("error: %s" % err, file=sys.stderr)
        return 3, None
    return status, report


def main():
    status, _ = run(sys.argv[1:])
    sys.exit(status)
