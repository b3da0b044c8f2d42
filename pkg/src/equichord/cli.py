"""Command-line entry point: body ingestion, dispatch, deterministic CSV.

Subcommands map one-to-one onto library modules:

    check        constancy of the chord power sum for a body pair
    float        halfspace approximation of the floating body + cut audit
    equilibrium  buoyancy-line residuals over sampled directions
    billiard     tangent-chord iteration between two planar bodies
    analyze      deviation function, finite differences, identity residual
    reconstruct  moving-chord interval extension from a verified start

Exit status: 0 when every asserted tolerance holds, 1 on property failure,
2 on usage or input errors.  CSV is written atomically (temp file + rename)
with floats at 17 significant digits, so identical inputs give
byte-identical outputs.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .analysis import (
    chi_derivatives,
    chi_from_profiles,
    classify_interval_nesting,
    moving_chord_extend,
)
from .billiard import orbit
from .bodyspec import load_body
from .equichordal import CheckConfig, check_pair_planar, check_pair_revolution
from .errors import ArcMismatch, EquichordError, UsageError
from .floating import (
    CutSpec,
    body_volume,
    cap_centroid,
    convex_floating_body,
    dupin_check,
    equilibrium_scan,
)
from .geometry import PlanarBody, RevolutionProfile


# ---------------------------------------------------------------------------
# config and report plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: command, body files, numeric options, output."""

    command: str
    bodies: Dict[str, str] = field(default_factory=dict)
    options: Dict[str, float] = field(default_factory=dict)
    output: Optional[str] = None
    seed: int = 0


@dataclass(frozen=True)
class Report:
    summary: str
    table: str
    exit_status: int


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


def _table(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".equichord_", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() owns exit codes."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> _Parser:
    p = _Parser(prog="equichord", description=__doc__,
                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", metavar="command")

    def out_opt(sp, name="--out"):
        sp.add_argument(name, dest="output", metavar="CSV",
                        help="output CSV path (written atomically)")

    sp = sub.add_parser("check", help="chord power-sum constancy for a pair")
    sp.add_argument("--outer", required=True, help="outer body file (JSON)")
    sp.add_argument("--inner", required=True, help="inner body file (JSON)")
    sp.add_argument("--power", type=float, default=4.0,
                    help="chord power i (0 means product form)")
    sp.add_argument("--dimension", type=int, default=3)
    sp.add_argument("--frames", type=int, default=256,
                    help="tangent slopes sampled uniformly in arctan")
    sp.add_argument("--section-dirs", type=int, default=128,
                    help="directions sampled inside each section")
    sp.add_argument("--tolerance", type=float, default=1e-6)
    out_opt(sp, "--report")

    sp = sub.add_parser("float", help="floating-body approximation + cut audit")
    sp.add_argument("--body", required=True)
    sp.add_argument("--fraction", type=float, help="cut volume as a fraction")
    sp.add_argument("--delta", type=float, help="cut volume, absolute")
    sp.add_argument("--dirs", type=int, default=512)
    out_opt(sp)

    sp = sub.add_parser("equilibrium", help="buoyancy-line residual scan")
    sp.add_argument("--body", required=True)
    sp.add_argument("--fraction", type=float)
    sp.add_argument("--delta", type=float)
    sp.add_argument("--dirs", type=int, default=64)
    sp.add_argument("--tolerance", type=float, default=1e-6)
    out_opt(sp)

    sp = sub.add_parser("billiard", help="tangent-chord iteration")
    sp.add_argument("--outer", required=True)
    sp.add_argument("--inner", required=True)
    sp.add_argument("--start-angle", type=float, default=0.0,
                    help="polar angle of the starting outer-boundary point")
    sp.add_argument("--steps", type=int, default=100)
    sp.add_argument("--power", type=float, default=4.0)
    sp.add_argument("--closure-tol", type=float, default=1e-8)
    out_opt(sp)

    sp = sub.add_parser("analyze", help="deviation function and identity residuals")
    sp.add_argument("--body", required=True)
    sp.add_argument("--sigma", type=float, required=True,
                    help="half-chord length at the tangency")
    sp.add_argument("--dimension", type=int, default=3)
    sp.add_argument("--probes", type=int, default=101)
    out_opt(sp, "--report")

    sp = sub.add_parser("reconstruct", help="moving-chord interval extension")
    sp.add_argument("--body", required=True)
    sp.add_argument("--sigma", type=float, required=True)
    sp.add_argument("--start", required=True, metavar="LO,HI",
                    help="verified start interval; write --start=-0.3,0.3")
    out_opt(sp)

    # the global default lives on the main parser only: a subparser default
    # would overwrite a --seed given before the command name
    p.add_argument("--seed", type=int, default=0,
                   help="reserved; all defaults are deterministic")
    for name, sp in sub.choices.items():
        sp.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="reserved; all defaults are deterministic")
    return p


_BODY_KEYS = ("outer", "inner", "body")
_SKIP_KEYS = ("command", "output", "seed", "start")


def parse_args(argv: Sequence[str]) -> RunConfig:
    """Parse and validate argv into a RunConfig; UsageError on bad input."""
    ns = build_parser().parse_args(list(argv))
    if ns.command is None:
        raise UsageError("a command is required (see --help)")
    bodies = {k: getattr(ns, k) for k in _BODY_KEYS if getattr(ns, k, None)}
    options: Dict[str, float] = {}
    for key, val in vars(ns).items():
        if key in _BODY_KEYS or key in _SKIP_KEYS or val is None:
            continue
        options[key] = float(val)

    if ns.command in ("float", "equilibrium"):
        has_f = "fraction" in options
        has_d = "delta" in options
        if has_f == has_d:
            raise UsageError("provide exactly one of --fraction or --delta")
        if has_f and not 0.0 < options["fraction"] < 1.0:
            raise UsageError(f"--fraction {options['fraction']:g} out of (0, 1)")
        if has_d and not options["delta"] > 0.0:
            raise UsageError("--delta must be positive")
    if options.get("sigma", 1.0) <= 0.0:
        raise UsageError("--sigma must be positive")
    if options.get("tolerance", 1.0) <= 0.0:
        raise UsageError("--tolerance must be positive")
    if options.get("power", 0.0) < 0.0:
        raise UsageError("--power must be nonnegative")
    for key in ("frames", "section_dirs", "dirs", "steps", "probes"):
        if key in options and options[key] < 1:
            raise UsageError(f"--{key.replace('_', '-')} must be at least 1")

    if ns.command == "reconstruct":
        parts = str(ns.start).split(",")
        if len(parts) != 2:
            raise UsageError("--start expects LO,HI")
        try:
            lo, hi = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise UsageError(f"--start expects two numbers: {exc}") from None
        if not lo < hi:
            raise UsageError("--start interval must satisfy LO < HI")
        options["start_lo"] = lo
        options["start_hi"] = hi

    return RunConfig(command=ns.command, bodies=bodies, options=options,
                     output=ns.output, seed=int(ns.seed))


# ---------------------------------------------------------------------------
# command handlers (summary, header, rows, exit status)
# ---------------------------------------------------------------------------

def _load(cfg: RunConfig, role: str, kind=None):
    body = load_body(cfg.bodies[role])
    if kind is not None and not isinstance(body, kind):
        want = "revolution" if kind is RevolutionProfile else "planar"
        raise UsageError(f"--{role} must be a {want} body for this command")
    return body


def _xi_header(dim: int) -> List[str]:
    axes = ["x", "y", "z"][:dim]
    return [f"xi_{a}" for a in axes] + ["t"] + [f"c_{a}" for a in axes]


def _cmd_check(cfg: RunConfig):
    outer = _load(cfg, "outer")
    inner = _load(cfg, "inner")
    opts = cfg.options
    ccfg = CheckConfig(power=opts["power"], dimension=int(opts["dimension"]),
                       num_frames=int(opts["frames"]),
                       num_section_dirs=int(opts["section_dirs"]),
                       tolerance=opts["tolerance"])
    if isinstance(outer, RevolutionProfile) and isinstance(inner, RevolutionProfile):
        report = check_pair_revolution(outer, inner, ccfg)
    elif isinstance(outer, PlanarBody) and isinstance(inner, PlanarBody):
        report = check_pair_planar(outer, inner, ccfg)
    else:
        raise UsageError("--outer and --inner must be bodies of the same kind")

    rows = []
    for k, frame in enumerate(report.frames):
        rows.append((k, math.atan(frame.slope), frame.tangency_x,
                     report.per_frame_values[k], report.per_frame_deviations[k]))
    status = "PASS" if report.passed else "FAIL"
    worst = int(np.argmax(report.per_frame_deviations)) if rows else -1
    summary = "\n".join([
        f"{status} c={report.constant_estimate:.6f} "
        f"max_dev={report.max_deviation:.6e}",
        f"frames: {len(report.frames)}",
        f"section_dirs: {ccfg.num_section_dirs}",
        f"samples: {report.n_samples}",
        f"tolerance: {ccfg.tolerance:g}",
        f"worst_frame: {worst}",
    ])
    header = ["frame_index", "alpha", "a_s", "value", "deviation"]
    return summary, header, rows, (0 if report.passed else 1)


def _cut_from(cfg: RunConfig) -> CutSpec:
    if "fraction" in cfg.options:
        return CutSpec(fraction=cfg.options["fraction"])
    return CutSpec(delta=cfg.options["delta"])


def _cmd_float(cfg: RunConfig):
    body = _load(cfg, "body")
    cut = _cut_from(cfg)
    n_dirs = int(cfg.options["dirs"])
    approx = convex_floating_body(body, cut, n_dirs)
    rep = dupin_check(body, approx, cut)

    dim = approx.directions.shape[1]
    rows = []
    for k in range(n_dirs):
        xi = approx.directions[k]
        c = cap_centroid(body, xi, float(approx.levels[k]))
        rows.append((k, *xi, float(approx.levels[k]), *c, float(rep.mismatches[k])))
    status = "PASS" if rep.passed else "FAIL"
    vol = body_volume(body)
    summary = "\n".join([
        f"{status} max_mismatch={rep.max_mismatch:.6e} tolerance={rep.tolerance:.6e}",
        f"volume: {vol:.12g}",
        f"delta: {rep.delta:.12g}",
        f"directions: {n_dirs}",
        f"vertices: {len(approx.vertices) if approx.exact_vertices else 0}",
        f"worst_direction: {rep.worst_index}",
    ])
    header = ["dir_index"] + _xi_header(dim) + ["residual"]
    return summary, header, rows, (0 if rep.passed else 1)


def _cmd_equilibrium(cfg: RunConfig):
    body = _load(cfg, "body")
    cut = _cut_from(cfg)
    n_dirs = int(cfg.options["dirs"])
    tol = cfg.options["tolerance"]
    reports = equilibrium_scan(body, cut, n_dirs)

    rows = []
    for k, r in enumerate(reports):
        rows.append((k, *r.direction.components, r.level, *r.submerged_centroid,
                     r.residual))
    max_res = max(r.residual for r in reports)
    coincide = sum(1 for r in reports if r.centroids_coincide)
    ok = max_res <= tol
    dim = len(reports[0].direction.components)
    summary = "\n".join([
        f"{'PASS' if ok else 'FAIL'} max_residual={max_res:.6e} tolerance={tol:g}",
        f"directions: {n_dirs}",
        f"coincident_centroids: {coincide}",
    ])
    header = ["dir_index"] + _xi_header(dim) + ["residual"]
    return summary, header, rows, (0 if ok else 1)


def _cmd_billiard(cfg: RunConfig):
    outer = _load(cfg, "outer", PlanarBody)
    inner = _load(cfg, "inner", PlanarBody)
    opts = cfg.options
    beta0 = outer.point(opts["start_angle"])
    rec = orbit(outer, inner, beta0, max_steps=int(opts["steps"]),
                closure_tol=opts["closure_tol"])

    power = opts["power"]
    t1 = np.linalg.norm(rec.kappas - rec.betas[:-1], axis=1)
    t2 = np.linalg.norm(rec.betas[1:] - rec.kappas, axis=1)
    sums = t1 * t2 if power == 0.0 else t1 ** power + t2 ** power

    rows = []
    for j in range(len(rec.kappas)):
        rows.append((j, *rec.betas[j], *rec.kappas[j],
                     float(rec.chord_lengths[j]), float(sums[j])))
    spread = float(np.max(rec.chord_lengths) - np.min(rec.chord_lengths))
    summary = "\n".join([
        f"closed: {'yes' if rec.closed else 'no'}",
        f"period: {rec.period if rec.period is not None else 0}",
        f"steps: {len(rec.kappas)}",
        f"rotation_estimate: {rec.rotation_estimate:.12g}",
        f"chord_spread: {spread:.6e}",
        f"power_spread: {float(np.max(sums) - np.min(sums)):.6e}",
    ])
    header = ["step", "beta_x", "beta_y", "kappa_x", "kappa_y",
              "chord_length", "power_sum"]
    return summary, header, rows, 0


def _cmd_analyze(cfg: RunConfig):
    body = _load(cfg, "body", RevolutionProfile)
    opts = cfg.options
    sigma = opts["sigma"]
    dim = int(opts["dimension"])
    chi = chi_from_profiles(body, sigma, dim)
    cls = classify_interval_nesting(body, sigma)

    lo, hi = chi.support
    h = 1e-3 * min(-lo, hi)
    xs = np.linspace(lo + 2.0 * h, hi - 2.0 * h, int(opts["probes"]))
    rows = []
    max_abs = 0.0
    max_res = 0.0
    for x in xs:
        x = float(x)
        d1, d2 = chi_derivatives(chi, x, h)
        ffp = float(body.radius(x)) * float(body.derivative(x))
        res = 2.0 * sigma ** 2 * d2 + (dim + 1) * (d1 - 2.0 * (x + ffp)) ** 2
        cx = float(chi(x))
        rows.append((x, cx, d1, d2, res))
        max_abs = max(max_abs, abs(cx))
        max_res = max(max_res, abs(res))
    summary = "\n".join([
        f"sigma: {sigma:g}",
        f"support: [{lo:.12g}, {hi:.12g}]",
        f"inner_interval: [{cls.inner_interval[0]:.12g}, {cls.inner_interval[1]:.12g}]",
        f"nesting: {cls.case}",
        f"max_abs_chi: {max_abs:.6e}",
        f"max_identity_residual: {max_res:.6e}",
    ])
    header = ["x", "chi", "fd_chi1", "fd_chi2", "identity_residual"]
    return summary, header, rows, 0


def _cmd_reconstruct(cfg: RunConfig):
    body = _load(cfg, "body", RevolutionProfile)
    opts = cfg.options
    header = ["pass_index", "lo", "hi"]
    try:
        chain = moving_chord_extend(body, opts["sigma"],
                                    (opts["start_lo"], opts["start_hi"]))
    except ArcMismatch as exc:
        summary = "\n".join([
            f"FAIL witness_x={exc.x:.12g} deviation={exc.deviation:.6e}",
            f"detail: {exc}",
        ])
        return summary, header, [], 1
    rows = [(j, lo, hi) for j, (lo, hi) in enumerate(chain.intervals)]
    summary = "\n".join([
        f"PASS max_arc_deviation={chain.max_arc_deviation:.6e}",
        f"passes: {chain.passes}",
        f"terminal: [{chain.terminal[0]:.12g}, {chain.terminal[1]:.12g}]",
    ])
    return summary, header, rows, 0


_HANDLERS = {
    "check": _cmd_check,
    "float": _cmd_float,
    "equilibrium": _cmd_equilibrium,
    "billiard": _cmd_billiard,
    "analyze": _cmd_analyze,
    "reconstruct": _cmd_reconstruct,
}


def run(config: RunConfig) -> Report:
    """Dispatch, write the CSV atomically, print the summary block."""
    summary, header, rows, status = _HANDLERS[config.command](config)
    table = _table(header, rows)
    if config.output:
        _write_atomic(config.output, table)
    print(summary)
    return Report(summary=summary, table=table, exit_status=status)


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        report = run(config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except EquichordError as exc:
        print(f"error[{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
