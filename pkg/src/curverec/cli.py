"""Command-line front end.

Subcommands
-----------
helix        closed-form helix oracle + both-variant reconstruction + residual battery
reconstruct  rebuild a curve from curvature/torsion expressions, emit CSV
compare      stereographic route vs direct frame integration, aligned RMSD
verify       run a suite of cases from a config file

Exit codes: 0 all checks pass, 1 a residual report failed its
tolerance, 2 usage/config error, 3 numerical error (pole, degenerate
input, integration drift).

File formats (all CSV values carry 17 significant digits, so a write ->
read round trip is bit-lossless for IEEE doubles):

* curves:   header ``s,x,y,z``
* frames:   header ``s,t1,t2,t3,n1,n2,n3,b1,b2,b3``
* reports:  header ``name,max_abs,rms,argmax_s,tolerance,pass``

Config files are flat ``key = value`` lines with ``#`` comments. Keys:
``jobs``, tolerance overrides ``tol.<report-name>``, and numbered case
blocks ``case<K>.kind = helix|compare`` with per-kind parameters
(helix: a, b, s0, s1, n; compare: kappa, tau, s0, s1, n, variant).
Command-line flags override file values.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import math
import re
import sys
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    CurveRecError,
    InputError,
    IntegrationDriftError,
    NumericalError,
)
from .frenet import CurveSamples, FrameSamples, integrate_fs, integrate_tangent
from .helix import (
    fundamental_closed_form_samples,
    helix_derived,
    real_helix_oracle,
    scaled_cos,
    scaled_sin,
)
from .intrinsic import ArcLengthGrid, ExpressionPair, HelixSpec
from .riccati import SignVariant, integrate_fundamental, tangent_components
from .verify import (
    REPORT_CSV_HEADER,
    ResidualReport,
    align_curves,
    align_to_axis,
    make_report,
    sphere_residual,
    wronskian_residual,
)

__all__ = ["main", "run_command"]

_DEFAULT_MAX_STEP = 1e-2

#: default tolerance per residual-report name
DEFAULT_TOLERANCES = {
    "cylinder_oracle": 1e-8,
    "cylinder_plus": 1e-6,
    "cylinder_minus": 1e-6,
    "variant_agreement": 1e-8,
    "oracle_agreement": 1e-6,
    "fundamental_vs_exact": 1e-8,
    "wronskian": 1e-9,
    "sphere_sum": 1e-10,
    "scaled_trig_identity": 1e-12,
    "route_rmsd": 1e-6,
}


# --- CSV helpers ---------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_curve_csv(stream, curve: CurveSamples) -> None:
    stream.write("s,x,y,z\n")
    for s, (x, y, z) in zip(curve.s, curve.positions):
        stream.write(f"{_fmt(s)},{_fmt(x)},{_fmt(y)},{_fmt(z)}\n")


def read_curve_csv(stream) -> CurveSamples:
    header = stream.readline().strip()
    if header != "s,x,y,z":
        raise InputError(f"unexpected curve CSV header: {header!r}")
    rows = [list(map(float, line.split(","))) for line in stream if line.strip()]
    if not rows:
        raise InputError("curve CSV has no data rows")
    data = np.array(rows)
    return CurveSamples(data[:, 0], data[:, 1:4])


def write_frames_csv(stream, frames: FrameSamples) -> None:
    stream.write("s,t1,t2,t3,n1,n2,n3,b1,b2,b3\n")
    for s, mat in zip(frames.s, frames.frames):
        row = ",".join(_fmt(v) for v in mat.reshape(9))
        stream.write(f"{_fmt(s)},{row}\n")


def write_report_csv(stream, reports) -> None:
    stream.write(REPORT_CSV_HEADER + "\n")
    for report in reports:
        stream.write(report.csv_row() + "\n")


def read_report_csv(stream) -> list[ResidualReport]:
    header = stream.readline().strip()
    if header != REPORT_CSV_HEADER:
        raise InputError(f"unexpected report CSV header: {header!r}")
    reports = []
    for line in stream:
        if not line.strip():
            continue
        name, max_abs, rms, argmax_s, tol, passed = line.strip().split(",")
        reports.append(
            ResidualReport(
                name=name,
                max_abs=float(max_abs),
                rms=float(rms),
                argmax_s=float(argmax_s),
                tolerance=float(tol),
                passed=passed == "true",
            )
        )
    return reports


# --- shared pipeline pieces ----------------------------------------------------

def _default_n(s0: float, s1: float) -> int:
    n = math.ceil((s1 - s0) / _DEFAULT_MAX_STEP)
    return n + (n % 2)


def _grid(s0: float, s1: float, n: int | None) -> ArcLengthGrid:
    return ArcLengthGrid(s0, s1, _default_n(s0, s1) if n is None else n)


def _curve_from_samples(samples) -> CurveSamples:
    tang = tangent_components(samples)
    drift = float(np.abs(tang.imag).max())
    if drift > 1e-8:
        raise IntegrationDriftError(
            f"imaginary residue {drift:.3e} in recovered tangents exceeds 1e-08"
        )
    return integrate_tangent(samples.s, tang.real, np.zeros(3))


def _cylinder_deviation(curve: CurveSamples, radius: float) -> np.ndarray:
    aligned = align_to_axis(curve)
    x, y = aligned.positions[:, 0], aligned.positions[:, 1]
    return x * x + y * y - radius * radius


def helix_battery(
    a: float, b: float, grid: ArcLengthGrid, tolerances: dict[str, float]
) -> tuple[list[ResidualReport], CurveSamples]:
    """Full residual battery for one helix; returns reports and the plus curve."""

    def tol(name: str) -> float:
        return tolerances.get(name, DEFAULT_TOLERANCES[name])

    derived = helix_derived(a, b)
    profile = HelixSpec(a, b)
    nodes = grid.nodes()

    oracle = real_helix_oracle(derived, grid)
    plus = integrate_fundamental(profile, grid, SignVariant.PLUS)
    minus = integrate_fundamental(profile, grid, SignVariant.MINUS)
    plus_curve = _curve_from_samples(plus)
    minus_curve = _curve_from_samples(minus)
    exact = fundamental_closed_form_samples(derived, nodes, SignVariant.PLUS)

    theta = nodes / derived.c
    trig_dev = (
        scaled_sin(theta, derived.ck) ** 2
        + scaled_cos(theta, derived.ck) ** 2
        - derived.ck
    )

    reports = [
        make_report(
            "cylinder_oracle", nodes, _cylinder_deviation(oracle, a),
            tol("cylinder_oracle"),
        ),
        make_report(
            "cylinder_plus", nodes, _cylinder_deviation(plus_curve, a),
            tol("cylinder_plus"),
        ),
        make_report(
            "cylinder_minus", nodes, _cylinder_deviation(minus_curve, a),
            tol("cylinder_minus"),
        ),
        make_report(
            "variant_agreement", nodes,
            np.linalg.norm(plus_curve.positions - minus_curve.positions, axis=1),
            tol("variant_agreement"),
        ),
        make_report(
            "oracle_agreement", nodes,
            np.linalg.norm(plus_curve.positions - oracle.positions, axis=1),
            tol("oracle_agreement"),
        ),
        make_report(
            "fundamental_vs_exact", nodes,
            np.abs(plus.matrices - exact.matrices).max(axis=(1, 2)),
            tol("fundamental_vs_exact"),
        ),
        wronskian_residual(plus, tol("wronskian")),
        sphere_residual(tangent_components(plus), tol("sphere_sum"), nodes),
        make_report("scaled_trig_identity", nodes, np.abs(trig_dev),
                    tol("scaled_trig_identity")),
    ]
    return reports, plus_curve


def compare_routes(
    kappa_text: str,
    tau_text: str,
    grid: ArcLengthGrid,
    variant: SignVariant,
    tolerance: float,
) -> ResidualReport:
    """Aligned RMSD between the stereographic and direct-frame routes."""
    profile = ExpressionPair.from_text(kappa_text, tau_text)
    samples = integrate_fundamental(profile, grid, variant)
    stereo_curve = _curve_from_samples(samples)
    frames = integrate_fs(profile, grid)
    direct_curve = integrate_tangent(frames.s, frames.tangents, np.zeros(3))
    result = align_curves(direct_curve, stereo_curve)
    return ResidualReport(
        name="route_rmsd",
        max_abs=result.rmsd,
        rms=result.rmsd,
        argmax_s=float(grid.s1),
        tolerance=tolerance,
        passed=result.rmsd <= tolerance,
    )


# --- config file ---------------------------------------------------------------

_CASE_KEY = re.compile(r"^case(\d+)\.([a-z0-9_.]+)$")


@dataclass(frozen=True)
class VerifyConfig:
    jobs: int
    tolerances: dict[str, float]
    cases: list[dict]


def parse_config_text(text: str) -> VerifyConfig:
    """Parse flat ``key = value`` config text into a verify plan."""
    jobs = 1
    tolerances: dict[str, float] = {}
    raw_cases: dict[int, dict[str, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise InputError(f"config line {lineno}: empty key or value")
        if key == "jobs":
            jobs = int(value)
            if jobs < 1:
                raise InputError(f"config line {lineno}: jobs must be >= 1")
            continue
        if key.startswith("tol."):
            name = key[len("tol."):]
            tol = float(value)
            if not tol > 0.0:
                raise InputError(f"config line {lineno}: tolerance must be positive")
            tolerances[name] = tol
            continue
        match = _CASE_KEY.match(key)
        if not match:
            raise InputError(f"config line {lineno}: unknown key {key!r}")
        raw_cases.setdefault(int(match.group(1)), {})[match.group(2)] = value

    cases = []
    for index in sorted(raw_cases):
        fields = raw_cases[index]
        kind = fields.pop("kind", None)
        if kind is None:
            raise InputError(f"case{index}: missing 'kind'")
        case: dict = {"index": index, "kind": kind}
        try:
            if kind == "helix":
                case["a"] = float(fields.pop("a"))
                case["b"] = float(fields.pop("b"))
                case["s0"] = float(fields.pop("s0", "0"))
                s1_text = fields.pop("s1", None)
                if s1_text is None:
                    c = math.hypot(case["a"], case["b"])
                    case["s1"] = case["s0"] + 4.0 * math.pi * c
                else:
                    case["s1"] = float(s1_text)
                n_text = fields.pop("n", None)
                case["n"] = None if n_text is None else int(n_text)
            elif kind == "compare":
                case["kappa"] = fields.pop("kappa")
                case["tau"] = fields.pop("tau")
                case["s0"] = float(fields.pop("s0", "0"))
                case["s1"] = float(fields.pop("s1"))
                n_text = fields.pop("n", None)
                case["n"] = None if n_text is None else int(n_text)
                case["variant"] = fields.pop("variant", "plus")
                if case["variant"] not in ("plus", "minus"):
                    raise InputError(
                        f"case{index}: variant must be plus or minus"
                    )
            else:
                raise InputError(f"case{index}: unknown kind {kind!r}")
        except KeyError as exc:
            raise InputError(f"case{index}: missing required key {exc}") from exc
        except ValueError as exc:
            raise InputError(f"case{index}: bad value ({exc})") from exc
        if fields:
            extra = ", ".join(sorted(fields))
            raise InputError(f"case{index}: unknown keys: {extra}")
        cases.append(case)
    if not cases:
        raise InputError("config defines no cases")
    return VerifyConfig(jobs=jobs, tolerances=tolerances, cases=cases)


def _run_case(case: dict, tolerances: dict[str, float]) -> list[ResidualReport]:
    if case["kind"] == "helix":
        grid = _grid(case["s0"], case["s1"], case["n"])
        reports, _ = helix_battery(case["a"], case["b"], grid, tolerances)
    else:
        grid = _grid(case["s0"], case["s1"], case["n"])
        tol = tolerances.get("route_rmsd", DEFAULT_TOLERANCES["route_rmsd"])
        variant = SignVariant.PLUS if case["variant"] == "plus" else SignVariant.MINUS
        reports = [compare_routes(case["kappa"], case["tau"], grid, variant, tol)]
    prefix = f"case{case['index']}."
    return [replace(report, name=prefix + report.name) for report in reports]


# --- subcommand implementations -------------------------------------------------

def _open_out(path: str):
    """Return (stream, close_needed) for a path, with '-' meaning stdout."""
    if path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _emit_reports(reports, out_path: str | None) -> int:
    """Print human lines (stdout, or stderr when stdout carries CSV) and
    optionally write the report CSV; return the pass/fail exit code."""
    csv_on_stdout = out_path == "-"
    line_stream = sys.stderr if csv_on_stdout else sys.stdout
    for report in reports:
        line_stream.write(report.human_line() + "\n")
    if out_path is not None:
        stream, close_needed = _open_out(out_path)
        try:
            write_report_csv(stream, reports)
        finally:
            if close_needed:
                stream.close()
    return 0 if all(r.passed for r in reports) else 1


def _cmd_helix(ns: argparse.Namespace) -> int:
    grid = _grid(ns.s0, ns.s1, ns.n)
    tolerances = dict(ns.tol or {})
    reports, plus_curve = helix_battery(ns.a, ns.b, grid, tolerances)
    line_stream = sys.stderr if ns.out == "-" else sys.stdout
    for report in reports:
        line_stream.write(report.human_line() + "\n")
    if ns.out is not None:
        stream, close_needed = _open_out(ns.out)
        try:
            write_curve_csv(stream, plus_curve)
        finally:
            if close_needed:
                stream.close()
    return 0 if all(r.passed for r in reports) else 1


def _cmd_reconstruct(ns: argparse.Namespace) -> int:
    grid = _grid(ns.s0, ns.s1, ns.n)
    profile = ExpressionPair.from_text(ns.kappa, ns.tau)
    start = np.asarray(ns.start, dtype=float)

    if ns.variant == "both":
        plus = _curve_from_samples(integrate_fundamental(profile, grid, SignVariant.PLUS))
        minus = _curve_from_samples(integrate_fundamental(profile, grid, SignVariant.MINUS))
        gap = float(np.linalg.norm(plus.positions - minus.positions, axis=1).max())
        sys.stderr.write(f"variant agreement: max pointwise gap {gap:.5g}\n")
        curve = CurveSamples(plus.s, plus.positions + start)
    else:
        variant = SignVariant.PLUS if ns.variant == "plus" else SignVariant.MINUS
        samples = integrate_fundamental(profile, grid, variant)
        curve = _curve_from_samples(samples)
        curve = CurveSamples(curve.s, curve.positions + start)

    stream, close_needed = _open_out(ns.out)
    try:
        write_curve_csv(stream, curve)
    finally:
        if close_needed:
            stream.close()
    return 0


def _cmd_compare(ns: argparse.Namespace) -> int:
    grid = _grid(ns.s0, ns.s1, ns.n)
    variant = SignVariant.PLUS if ns.variant == "plus" else SignVariant.MINUS
    report = compare_routes(ns.kappa, ns.tau, grid, variant, ns.rmsd_tol)
    if ns.frames is not None:
        profile = ExpressionPair.from_text(ns.kappa, ns.tau)
        frames = integrate_fs(profile, grid)
        stream, close_needed = _open_out(ns.frames)
        try:
            write_frames_csv(stream, frames)
        finally:
            if close_needed:
                stream.close()
    line_stream = sys.stderr if ns.frames == "-" else sys.stdout
    line_stream.write(report.human_line() + "\n")
    return 0 if report.passed else 1


def _cmd_verify(ns: argparse.Namespace) -> int:
    try:
        with open(ns.config, "r", encoding="utf-8") as stream:
            text = stream.read()
    except OSError as exc:
        raise InputError(f"cannot read config file: {exc}") from exc
    config = parse_config_text(text)
    tolerances = dict(config.tolerances)
    tolerances.update(ns.tol or {})
    jobs = ns.jobs if ns.jobs is not None else config.jobs
    if jobs < 1:
        raise InputError("--jobs must be >= 1")

    if jobs == 1 or len(config.cases) == 1:
        case_reports = [_run_case(case, tolerances) for case in config.cases]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_case, case, tolerances) for case in config.cases
            ]
            # collect in submission order: deterministic output merge
            case_reports = [future.result() for future in futures]
    reports = [report for group in case_reports for report in group]
    return _emit_reports(reports, ns.out)


# --- argument parsing ----------------------------------------------------------

def _tol_override(text: str) -> tuple[str, float]:
    if "=" not in text:
        raise argparse.ArgumentTypeError("expected NAME=VALUE")
    name, value = text.split("=", 1)
    try:
        tol = float(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad tolerance value {value!r}") from exc
    if not tol > 0.0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return name.strip(), tol


class _TolAction(argparse.Action):
    def __call__(self, parser, namespace, values, option_string=None):
        store = getattr(namespace, self.dest) or {}
        name, tol = values
        store[name] = tol
        setattr(namespace, self.dest, store)


def _start_triple(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated reals")
    try:
        return [float(part) for part in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curverec",
        description="Reconstruct space curves from curvature and torsion "
        "via the stereographic/Moebius route, with cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    helix = sub.add_parser(
        "helix",
        help="closed-form helix oracle + both-variant reconstruction + residuals",
    )
    helix.add_argument("--a", type=float, required=True, help="cylinder radius")
    helix.add_argument("--b", type=float, required=True,
                       help="axial advance per radian of frame phase")
    helix.add_argument("--s0", type=float, default=0.0, help="arc-length start")
    helix.add_argument("--s1", type=float, required=True, help="arc-length end")
    helix.add_argument("--n", type=int, default=None,
                       help="even interval count (default: step <= 1e-2)")
    helix.add_argument("--out", default=None,
                       help="write the plus-variant curve CSV here ('-' = stdout)")
    helix.add_argument("--tol", action=_TolAction, type=_tol_override,
                       metavar="NAME=VALUE", default=None,
                       help="override a report tolerance (repeatable)")
    helix.set_defaults(func=_cmd_helix)

    rec = sub.add_parser(
        "reconstruct", help="rebuild a curve from kappa/tau expressions"
    )
    rec.add_argument("--kappa", required=True, help="curvature expression in s")
    rec.add_argument("--tau", required=True, help="torsion expression in s")
    rec.add_argument("--s0", type=float, default=0.0)
    rec.add_argument("--s1", type=float, required=True)
    rec.add_argument("--n", type=int, default=None,
                     help="even interval count (default: step <= 1e-2)")
    rec.add_argument("--variant", choices=("plus", "minus", "both"),
                     default="plus")
    rec.add_argument("--start", type=_start_triple, default=[0.0, 0.0, 0.0],
                     metavar="X,Y,Z", help="initial position (default origin)")
    rec.add_argument("--out", default="-",
                     help="curve CSV destination ('-' = stdout, the default)")
    rec.set_defaults(func=_cmd_reconstruct)

    cmp_parser = sub.add_parser(
        "compare", help="stereographic vs direct-frame reconstruction RMSD"
    )
    cmp_parser.add_argument("--kappa", required=True)
    cmp_parser.add_argument("--tau", required=True)
    cmp_parser.add_argument("--s0", type=float, default=0.0)
    cmp_parser.add_argument("--s1", type=float, required=True)
    cmp_parser.add_argument("--n", type=int, default=None)
    cmp_parser.add_argument("--variant", choices=("plus", "minus"), default="plus")
    cmp_parser.add_argument("--rmsd-tol", type=float, default=1e-6,
                            help="pass/fail threshold for the aligned RMSD")
    cmp_parser.add_argument("--frames", default=None,
                            help="also write the direct-route frames CSV here")
    cmp_parser.set_defaults(func=_cmd_compare)

    ver = sub.add_parser("verify", help="run all cases from a config file")
    ver.add_argument("--config", required=True, help="flat key=value config file")
    ver.add_argument("--out", default=None,
                     help="write the report CSV here ('-' = stdout)")
    ver.add_argument("--jobs", type=int, default=None,
                     help="max concurrent cases (overrides config)")
    ver.add_argument("--tol", action=_TolAction, type=_tol_override,
                     metavar="NAME=VALUE", default=None,
                     help="override a report tolerance (repeatable)")
    ver.set_defaults(func=_cmd_verify)

    return parser


def run_command(argv) -> int:
    """Run the CLI on an argv list and return the exit code."""
    parser = build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return 0 if code is None else int(code)
    try:
        return ns.func(ns)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except NumericalError as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return 3
    except CurveRecError as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
