"""Batch front end: verify / hunt / probe / scalarcheck / recheck."""

from __future__ import annotations

import argparse
import sys

from . import suite as suite_mod
from .certificates import check_sandwich_lemma
from .errors import LoewnerLabError
from .generate import SplitMix64, derive_seed
from .kernels import (
    ARITHMETIC,
    HARMONIC,
    SQUARE,
    default_grid,
    is_symmetric_kernel,
    kernel_catalog,
    kernel_dominance,
    loewner_matrix_psd_test,
    monotone_catalog,
    sandwich_constant,
    specht_ratio,
)
from .suite import SuiteConfig, hunt_counterexamples, probe_tightness, run_suite, write_report


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--ineq", default="all-non-audit",
                        help="comma list of inequality ids, or all / all-non-audit")
    parser.add_argument("--dims", default="2,3,4", help="comma list of dimensions")
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tol", type=float, default=1e-9, help="relative slack tolerance")
    parser.add_argument("--s", type=float, default=None)
    parser.add_argument("--t", type=float, default=None)
    parser.add_argument("--m", type=float, default=None)
    parser.add_argument("--M", type=float, default=None)
    parser.add_argument("--tau", default=None, help="restrict kernel pool (comma list)")
    parser.add_argument("--sigma", default=None, help="restrict kernel pool (comma list)")
    parser.add_argument("--f", default=None, help="restrict monotone functions (comma list)")
    parser.add_argument("--g", default=None, help="restrict decreasing functions (comma list)")
    parser.add_argument("--phi", default=None, help="restrict map pool (comma list)")
    parser.add_argument("--norm", default=None, help="restrict norm pool (comma list)")
    parser.add_argument("--report", default=None, help="write the JSON report here")


def _config_from_args(args) -> SuiteConfig:
    kwargs = {
        "inequalities": tuple(x.strip() for x in args.ineq.split(",") if x.strip()),
        "dims": tuple(int(x) for x in args.dims.split(",") if x.strip()),
        "trials": args.trials,
        "seed": args.seed,
        "tol_rel": args.tol,
        "s": args.s,
        "t": args.t,
        "m": args.m,
        "M": args.M,
    }
    kernel_sel = []
    for flag in (args.tau, args.sigma):
        if flag:
            kernel_sel.extend(x.strip() for x in flag.split(","))
    if kernel_sel:
        kwargs["kernels"] = tuple(dict.fromkeys(kernel_sel))
    if args.f:
        kwargs["monotone_fns"] = tuple(x.strip() for x in args.f.split(","))
    if args.g:
        kwargs["decreasing_fns"] = tuple(x.strip() for x in args.g.split(","))
    if args.phi:
        kwargs["maps"] = tuple(x.strip() for x in args.phi.split(","))
    if args.norm:
        kwargs["norms"] = tuple(x.strip() for x in args.norm.split(","))
    return SuiteConfig(**kwargs)


def _finish(report, args) -> int:
    if args.report:
        write_report(report, args.report)
    for section_name, section in (("results", report.results), ("audit", report.audit_results)):
        for ineq, stats in section.items():
            status = "ok" if stats["violations"] == 0 else f"{stats['violations']} violations"
            slack = stats["min_slack"]
            slack_text = "n/a" if slack is None else f"{slack:.3e}"
            print(f"[{section_name}] {ineq}: {stats['holds_count']}/{stats['trials']} hold "
                  f"({status}, min slack {slack_text})")
    if report.probe is not None:
        print(f"[probe] {report.probe['inequality']}: max ratio "
              f"{report.probe['max_ratio']:.6f} over cell {report.probe['cell']}")
    print(f"wall time: {report.wall_time_s:.2f}s")
    return 0 if report.all_non_audit_hold else 1


def _cmd_verify(args) -> int:
    return _finish(run_suite(_config_from_args(args)), args)


def _cmd_hunt(args) -> int:
    return _finish(hunt_counterexamples(_config_from_args(args), args.override_constant), args)


def _cmd_probe(args) -> int:
    ids = [x.strip() for x in args.ineq.split(",") if x.strip()]
    if len(ids) != 1 or ids[0] in ("all", "all-non-audit"):
        print("probe needs exactly one inequality id", file=sys.stderr)
        return 2
    config = _config_from_args(args)
    return _finish(probe_tightness(ids[0], config), args)


def _cmd_recheck(args) -> int:
    reproduced, detail = suite_mod.recheck(args.report_path, args.index)
    status = "REPRODUCED" if reproduced else "NOT-REPRODUCED"
    print(f"{status} {detail['inequality']} dim={detail['dim']} trial={detail['trial']}: "
          f"recorded slack {detail['recorded_slack']:.6e}, "
          f"recomputed {detail['recomputed_slack']:.6e}")
    return 0 if reproduced else 1


def _cmd_scalarcheck(args) -> int:
    failures = 0

    def check(label: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        if not ok:
            failures += 1
        suffix = f" ({detail})" if detail else ""
        print(f"{'PASS' if ok else 'FAIL'} {label}{suffix}")

    grid = default_grid()
    for kernel in kernel_catalog():
        low = kernel_dominance(HARMONIC, kernel, grid)
        high = kernel_dominance(kernel, ARITHMETIC, grid)
        check(f"dominance harmonic <= {kernel.id} <= arithmetic",
              low.holds and high.holds,
              f"margins {low.margin:.2e}, {high.margin:.2e}")
        check(f"symmetry {kernel.id}", is_symmetric_kernel(kernel, grid))
    rng = SplitMix64(derive_seed(args.seed, 0x5CA1AB1E))
    point_sets = [[rng.uniform(1e-3, 1e3) for _ in range(5)] for _ in range(20)]
    for fn in monotone_catalog():
        ok = all(loewner_matrix_psd_test(fn, pts) for pts in point_sets)
        check(f"loewner psd screen accepts {fn.id}", ok)
    rejected = sum(0 if loewner_matrix_psd_test(SQUARE, pts) else 1 for pts in point_sets)
    check("loewner psd screen rejects square", rejected >= 1, f"{rejected}/20 rejected")
    worst = min(specht_ratio(h) for h in grid)
    check("specht ratio >= 1 on grid", worst >= 1.0 - 1e-12, f"min {worst:.6f}")
    boundary_gap = max(
        abs(sandwich_constant(s, 1.0 / s) - (0.5 * (s**0.5 + (1.0 / s) ** 0.5)) ** 2)
        for s in (0.1, 0.5, 0.9, 1.0)
    )
    check("sandwich constant continuous across s*t = 1", boundary_gap <= 1e-12,
          f"max gap {boundary_gap:.2e}")
    for s, t in ((0.25, 4.0), (0.5, 0.8), (2.0, 3.0)):
        cert = check_sandwich_lemma(None, None, s, t, mode="scalar")
        check(f"scalar sandwich bounds on [{s}, {t}]", cert.holds,
              f"min slack {cert.slack:.2e}")
    print(f"done: {failures} failures")
    return 0 if failures == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loewner-lab",
        description="Verify, hunt, and probe operator-mean inequalities on "
                    "positive definite matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a randomized certificate suite")
    _add_common(p_verify)
    p_verify.set_defaults(fn=_cmd_verify)

    p_hunt = sub.add_parser("hunt", help="re-run with a scaled constant, collecting violations")
    _add_common(p_hunt)
    p_hunt.add_argument("--override-constant", type=float, required=True,
                        help="positive multiplier applied to every constant")
    p_hunt.set_defaults(fn=_cmd_hunt)

    p_probe = sub.add_parser("probe", help="hill-climb for the largest observed ratio")
    _add_common(p_probe)
    p_probe.set_defaults(fn=_cmd_probe)

    p_scalar = sub.add_parser("scalarcheck", help="run the scalar-kernel invariants")
    p_scalar.add_argument("--seed", type=int, default=0)
    p_scalar.set_defaults(fn=_cmd_scalarcheck)

    p_recheck = sub.add_parser("recheck", help="re-evaluate a recorded violation")
    p_recheck.add_argument("report_path")
    p_recheck.add_argument("index", type=int)
    p_recheck.set_defaults(fn=_cmd_recheck)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, IndexError, OSError, LoewnerLabError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
