"""Command-line front end emitting figure-ready CSV or JSON tables.

Commands
--------
gaussian-compare   expected distortion of the three Gaussian-channel schemes
                   over a transmit-power sweep
bss-region         achievable (D1, D2) pairs and region hull for the
                   composite-BSC schemes
bss-frontier       best scheme and per-family expected distortion versus the
                   bad-state probability, with refined crossover points
bss-interface      interface complexity versus expected distortion at one
                   operating point
mc <experiment>    Monte Carlo validation runs (uncoded-bsc,
                   uncoded-gaussian, quantizer, msvq, superposition)
selfcheck          internal identity and closed-form-versus-numeric checks

Configuration comes from flags or from a key=value file (--config); flags
win on conflict.  Identical configurations produce byte-identical output:
metadata carries a canonical parameter string and its hash, never a
timestamp.  COMPOSITE_CODER_THREADS caps Monte Carlo concurrency.

Exit codes: 0 success, 1 self-check failure, 2 configuration error,
3 numeric error, 4 simulation budget error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__, bss_system, channels, gaussian_system, montecarlo, specfn
from .bss_system import Scheme

EXIT_OK = 0
EXIT_SELFCHECK = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_BUDGET = 4

_NUMERIC_ERRORS = (
    specfn.ConvergenceError,
    specfn.BracketError,
    gaussian_system.NoSolutionError,
    ArithmeticError,
    ValueError,
)


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    experiment: Optional[str] = None
    alpha1: float = 0.25
    alpha2: float = 0.45
    p: float = 0.5
    b: float = 2.0
    sigma2: float = 1.0
    power: float = 1.0
    gamma_bar: float = 1.0
    grid: int = 65
    p_grid: list[float] = field(default_factory=list)
    out: Optional[str] = None
    format: str = "csv"
    seed: int = 12345
    trials: int = 200
    blocklength: Optional[int] = None

    def canonical(self) -> str:
        parts = [f"command={self.command}"]
        if self.experiment:
            parts.append(f"experiment={self.experiment}")
        for key in (
            "alpha1", "alpha2", "p", "b", "sigma2", "power", "gamma_bar",
            "grid", "seed", "trials", "blocklength", "format",
        ):
            parts.append(f"{key}={getattr(self, key)}")
        parts.append("p_grid=" + ",".join(f"{v:.12g}" for v in self.p_grid))
        return ";".join(parts)


@dataclass
class FigureTable:
    columns: list[str]
    rows: list[list[object]]
    metadata: dict[str, str]

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.columns):
                raise AssertionError("row arity does not match column names")


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def render_csv(table: FigureTable) -> str:
    import csv
    import io

    buf = io.StringIO()
    for key in sorted(table.metadata):
        buf.write(f"# {key}={table.metadata[key]}\r\n")
    writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL)
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render_json(table: FigureTable) -> str:
    def clean(v: object) -> object:
        if isinstance(v, float):
            if math.isnan(v):
                return None
            return float(f"{v:.12g}")
        return v

    doc = {
        "columns": table.columns,
        "rows": [[clean(v) for v in row] for row in table.rows],
        "metadata": dict(sorted(table.metadata.items())),
    }
    return json.dumps(doc, indent=1, sort_keys=False) + "\n"


def _metadata(cfg: RunConfig, extra: Optional[dict[str, str]] = None) -> dict[str, str]:
    canonical = cfg.canonical()
    meta = {
        "command": cfg.command,
        "parameters": canonical,
        "config_sha256": hashlib.sha256(canonical.encode()).hexdigest(),
        "version": __version__,
    }
    if extra:
        meta.update(extra)
    return meta


def _parse_grid_spec(text: str) -> list[float]:
    """Either 'lo:hi:n' or a comma-separated list of values."""
    text = text.strip()
    if not text:
        raise ConfigError("empty sweep specification")
    if ":" in text:
        pieces = text.split(":")
        if len(pieces) != 3:
            raise ConfigError(f"grid spec must be lo:hi:n, got {text!r}")
        try:
            lo, hi, n = float(pieces[0]), float(pieces[1]), int(pieces[2])
        except ValueError as exc:
            raise ConfigError(f"bad grid spec {text!r}") from exc
        if n < 2 or hi <= lo:
            raise ConfigError(f"grid spec needs hi > lo and n >= 2, got {text!r}")
        step = (hi - lo) / (n - 1)
        return [lo + i * step for i in range(n)]
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad grid values {text!r}") from exc
    if len(values) < 2:
        raise ConfigError("sweep needs at least 2 points")
    return values


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_gaussian_compare(cfg: RunConfig) -> FigureTable:
    rows: list[list[object]] = []
    for power in cfg.p_grid:
        sys_ = channels.RayleighSystem(sigma2=cfg.sigma2, power=power, gamma_bar=cfg.gamma_bar)
        _, de_outage = gaussian_system.optimal_outage_for_distortion(sys_)
        rows.append(
            [
                power,
                gaussian_system.uncoded_expected_distortion(sys_),
                de_outage,
                gaussian_system.bc_expected_distortion(sys_),
            ]
        )
    return FigureTable(
        columns=["P", "De_uncoded", "De_outage_sep", "De_broadcast"],
        rows=rows,
        metadata=_metadata(cfg),
    )


def _bsc(cfg: RunConfig) -> channels.CompositeBsc:
    return channels.CompositeBsc(alpha1=cfg.alpha1, alpha2=cfg.alpha2, p=cfg.p, b=cfg.b)


def cmd_bss_region(cfg: RunConfig) -> FigureTable:
    ch = _bsc(cfg)
    residue_evals = bss_system.sweep_residue_splitting(ch, cfg.grid)
    hull = specfn.pareto_lower_hull([(e.d1, e.d2) for e in residue_evals])

    def on_hull(d1: float, d2: float) -> int:
        point = (d1, d2)
        on = specfn.hull_dominates(hull, point, slack=1e-9) and not specfn.hull_dominates(
            hull, point, slack=-1e-9
        )
        return 1 if on else 0

    rows: list[list[object]] = []

    def add(e: bss_system.SchemeEvaluation) -> None:
        rows.append(
            [
                e.scheme.value,
                e.params.get("beta"),
                e.params.get("rho"),
                e.d1,
                e.d2,
                on_hull(e.d1, e.d2),
            ]
        )

    add(bss_system.shannon_scheme(ch))
    add(bss_system.outage_scheme(ch))
    for e in bss_system.sweep_broadcast(ch, cfg.grid):
        add(e)
    for e in residue_evals:
        add(e)
    add(bss_system.systematic_scheme_good(ch))
    add(bss_system.systematic_scheme_bad(ch))
    return FigureTable(
        columns=["scheme", "param1", "param2", "D1", "D2", "on_hull"],
        rows=rows,
        metadata=_metadata(cfg),
    )


def cmd_bss_frontier(cfg: RunConfig) -> FigureTable:
    ch = _bsc(cfg)
    frontier = bss_system.expected_distortion_frontier(ch, cfg.p_grid, grid=cfg.grid)
    rows: list[list[object]] = [
        [
            pt.p,
            pt.family_expected[Scheme.BROADCAST],
            pt.family_expected[Scheme.RESIDUE_SPLITTING],
            pt.family_expected[Scheme.SYSTEMATIC_GOOD],
            pt.family_expected[Scheme.SYSTEMATIC_BAD],
            pt.scheme.value,
        ]
        for pt in frontier.points
    ]
    extra = {
        f"crossover.{i + 1}": f"{c.scheme_low.value}->{c.scheme_high.value}@{c.p:.6g}"
        for i, c in enumerate(frontier.crossovers)
    }
    return FigureTable(
        columns=["p", "De_broadcast", "De_residue", "De_sys_good", "De_sys_bad", "best_scheme"],
        rows=rows,
        metadata=_metadata(cfg, extra),
    )


def cmd_bss_interface(cfg: RunConfig) -> FigureTable:
    ch = _bsc(cfg)
    rows: list[list[object]] = []
    for family in (Scheme.BROADCAST, Scheme.RESIDUE_SPLITTING):
        evals = (
            bss_system.sweep_broadcast(ch, cfg.grid)
            if family == Scheme.BROADCAST
            else bss_system.sweep_residue_splitting(ch, cfg.grid)
        )
        for e in evals:
            rows.append(
                [e.scheme.value, e.params.get("beta"), e.params.get("rho"), e.kt, e.kr, e.expected]
            )
    for e in (bss_system.systematic_scheme_good(ch), bss_system.systematic_scheme_bad(ch)):
        rows.append([e.scheme.value, None, None, e.kt, e.kr, e.expected])
    stairs = bss_system.interface_tradeoff(ch, cfg.p, cfg.grid)
    for family, sides in stairs.items():
        for k, de in sides["kt"]:
            rows.append([f"{family.value}:stair-kt", None, None, k, None, de])
        for k, de in sides["kr"]:
            rows.append([f"{family.value}:stair-kr", None, None, None, k, de])
    return FigureTable(
        columns=["scheme", "param1", "param2", "Kt", "Kr", "De"],
        rows=rows,
        metadata=_metadata(cfg),
    )


def _mc_rows(cfg: RunConfig) -> list[list[object]]:
    rows: list[list[object]] = []

    def row(param: str, n: int, report: montecarlo.TrialReport, target: Optional[float],
            one_sided: bool = False) -> None:
        if target is None:
            ok: Optional[int] = None
        elif one_sided:
            ok = 1 if report.mean >= target - 3.0 * report.half_width_95 else 0
        else:
            ok = 1 if abs(report.mean - target) <= 3.0 * report.half_width_95 else 0
        rows.append(
            [cfg.experiment, param, n, report.trials, report.mean, report.half_width_95, target, ok]
        )

    if cfg.experiment == "uncoded-bsc":
        n = cfg.blocklength or 1000
        report = montecarlo.simulate_uncoded_bsc(
            montecarlo.TrialConfig(n, cfg.trials, cfg.seed), cfg.alpha1
        )
        row(f"alpha={cfg.alpha1:.6g}", n, report, cfg.alpha1)
    elif cfg.experiment == "uncoded-gaussian":
        n = cfg.blocklength or 1000
        sys_ = channels.RayleighSystem(cfg.sigma2, cfg.power, cfg.gamma_bar)
        for gamma in (0.5 * cfg.gamma_bar, cfg.gamma_bar, 2.0 * cfg.gamma_bar):
            report = montecarlo.simulate_uncoded_gaussian(
                montecarlo.TrialConfig(n, cfg.trials, cfg.seed), sys_, gamma
            )
            row(f"gamma={gamma:.6g}", n, report, gaussian_system.uncoded_state_distortion(sys_, gamma))
    elif cfg.experiment == "quantizer":
        rate = 0.5
        lengths = [cfg.blocklength] if cfg.blocklength else [8, 12, 16]
        for n in lengths:
            report = montecarlo.simulate_random_quantizer(
                montecarlo.TrialConfig(n, cfg.trials, cfg.seed), rate
            )
            row(f"rate={rate:.6g}", n, report, specfn.bss_distortion_rate(rate), one_sided=True)
    elif cfg.experiment == "msvq":
        n = cfg.blocklength or 16
        r2, r1 = 0.5, 0.25
        base, refined = montecarlo.simulate_msvq(
            montecarlo.TrialConfig(n, cfg.trials, cfg.seed), r2, r1
        )
        row(f"base r2={r2:.6g}", n, base, specfn.bss_distortion_rate(r2), one_sided=True)
        row(f"refined r1+r2={r1 + r2:.6g}", n, refined,
            specfn.bss_distortion_rate(r1 + r2), one_sided=True)
    elif cfg.experiment == "superposition":
        ch = _bsc(cfg)
        beta = 0.1
        boundary = channels.bsc_bc_rate_region(ch, beta)
        rates = channels.RatePair(r1=0.8 * boundary.r1, r2=0.8 * boundary.r2)
        lengths = [cfg.blocklength] if cfg.blocklength else [64, 128, 256]
        for m in lengths:
            err1, err2 = montecarlo.simulate_superposition_bc(
                montecarlo.TrialConfig(m, cfg.trials, cfg.seed), ch, beta, rates
            )
            row("state=1", m, err1, None)
            row("state=2", m, err2, None)
    else:
        raise ConfigError(f"unknown mc experiment {cfg.experiment!r}")
    return rows


def cmd_mc(cfg: RunConfig) -> FigureTable:
    return FigureTable(
        columns=[
            "experiment", "param", "blocklength", "trials",
            "mean", "half_width", "target", "pass_3sigma",
        ],
        rows=_mc_rows(cfg),
        metadata=_metadata(cfg),
    )


# ---------------------------------------------------------------------------
# selfcheck
# ---------------------------------------------------------------------------


def _selfcheck_results() -> list[tuple[str, bool, str]]:
    results: list[tuple[str, bool, str]] = []

    def check(name: str, ok: bool, detail: str) -> None:
        results.append((name, ok, detail))

    grid = [0.01 * i for i in range(1, 100)]
    err = max(abs(specfn.binary_entropy(p) - specfn.binary_entropy(1 - p)) for p in grid)
    check("entropy-symmetry", err <= 1e-15, f"max |h(p)-h(1-p)| = {err:.2e}")

    err = max(
        abs(specfn.binary_entropy(specfn.inverse_binary_entropy(r)) - r)
        for r in [0.05 * i for i in range(1, 20)]
    )
    check("entropy-roundtrip", err <= 1e-9, f"max roundtrip error = {err:.2e}")

    ok = specfn.binary_convolve(0.3, 0.0) == 0.3 and specfn.binary_convolve(0.3, 0.5) == 0.5
    check("convolve-identity-absorbing", ok, "a*0 = a and a*1/2 = 1/2")

    xs = [0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0]

    def quad_e1(x: float) -> float:
        # shift t = x + s so the quadrature stays well scaled for large x
        return math.exp(-x) * specfn.integrate(
            lambda s: math.exp(-s) / (x + s), 0.0, math.inf, tol=1e-13
        )

    err = max(abs(specfn.exp_integral(x) - quad_e1(x)) / specfn.exp_integral(x) for x in xs)
    check("exp-integral-quadrature", err <= 1e-9, f"max rel error = {err:.2e}")

    ok = all(specfn.exp_integral(x) < math.exp(-x) / x for x in xs)
    check("exp-integral-bound", ok, "E1(x) < exp(-x)/x")

    zs = [10.0 ** (k / 2.0) for k in range(-12, 13)]
    err = max(
        abs(specfn.lambert_w(z) * math.exp(specfn.lambert_w(z)) - z) / max(1.0, z) for z in zs
    )
    check("lambert-w-roundtrip", err <= 1e-12, f"max scaled residual = {err:.2e}")

    worst = 0.0
    for a in (0.5, 1.0, 2.0, 5.0):
        sys_ = channels.RayleighSystem(1.0, a, 1.0)
        closed, _ = gaussian_system.optimal_outage_for_distortion(sys_)
        numeric, _ = specfn.minimize_scalar(
            lambda q: gaussian_system.outage_separation_distortion(sys_, q), 1e-9, 1.0 - 1e-9,
            tol=1e-9, grid=4096,
        )
        worst = max(worst, abs(closed - numeric))
    check("outage-for-distortion-agreement", worst <= 1e-6, f"max |closed-numeric| = {worst:.2e}")

    worst = 0.0
    for a in (0.5, 1.0, 2.0, 5.0):
        sys_ = channels.RayleighSystem(1.0, a, 1.0)
        closed = channels.optimal_outage_for_capacity(sys_)
        numeric, _ = specfn.minimize_scalar(
            lambda q: -channels.outage_capacity_rayleigh(sys_, q), 1e-9, 1.0 - 1e-9,
            tol=1e-9, grid=4096,
        )
        worst = max(worst, abs(closed - numeric))
    check("outage-for-capacity-agreement", worst <= 1e-6, f"max |closed-numeric| = {worst:.2e}")

    worst = 0.0
    for a in (0.5, 1.0, 2.0, 5.0):
        sys_ = channels.RayleighSystem(1.0, a, 1.0)
        closed = gaussian_system.uncoded_expected_distortion(sys_)
        direct = specfn.integrate(
            lambda g: math.exp(-g) / (1.0 + a * g), 0.0, math.inf, tol=1e-13
        )
        worst = max(worst, abs(closed - direct) / direct)
    check("uncoded-distortion-quadrature", worst <= 1e-8, f"max rel error = {worst:.2e}")

    worst = 0.0
    for alpha in (0.25, 0.45):
        curve = bss_system.wyner_ziv_curve(alpha)
        lhs = bss_system._g(curve.dc, alpha) / (curve.dc - alpha)
        worst = max(worst, abs(lhs - bss_system._g_prime(curve.dc, alpha)))
    check("wyner-ziv-turning-identity", worst <= 1e-8, f"max residual = {worst:.2e}")

    ch = channels.CompositeBsc(0.25, 0.45, 0.5, 2.0)
    same = all(
        bss_system.residue_splitting_scheme(ch, beta, 0.0).d1 == bss_system.broadcast_scheme(ch, beta).d1
        and bss_system.residue_splitting_scheme(ch, beta, 0.0).kt == bss_system.broadcast_scheme(ch, beta).kt
        for beta in (0.0, 0.1, 0.25, 0.5)
    )
    check("residue-rho0-is-broadcast", same, "field equality at rho = 0")

    pts = [(0.1, 0.4), (0.4, 0.1), (0.4, 0.4), (0.2, 0.35)]
    hull = specfn.pareto_lower_hull(pts)
    ok = all(specfn.hull_dominates(hull, p, slack=1e-12) for p in pts)
    check("hull-dominates-inputs", ok, "every input point dominated")

    return results


def run_selfcheck() -> int:
    results = _selfcheck_results()
    width = max(len(name) for name, _, _ in results)
    failures = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        print(f"{name:<{width}}  {status}  {detail}")
        failures += 0 if ok else 1
    print(f"{len(results)} checks, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_SELFCHECK


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

_FLOAT_KEYS = ("alpha1", "alpha2", "p", "b", "sigma2", "power", "gamma_bar")
_INT_KEYS = ("grid", "seed", "trials", "blocklength")
_GAUSSIAN_KEYS = {"sigma2", "power", "gamma_bar"}
_BSC_KEYS = {"alpha1", "alpha2", "b"}

_DEFAULT_P_GRID = {
    "gaussian-compare": "0.25:8:20",
    "bss-frontier": "0:1:41",
}


def _read_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                text = line.split("#", 1)[0].strip()
                if not text:
                    continue
                if "=" not in text:
                    raise ConfigError(f"{path}:{lineno}: expected key=value, got {text!r}")
                key, value = text.split("=", 1)
                values[key.strip().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="composite-coder",
        description="Composite-channel capacity/distortion tables and Monte Carlo validation.",
    )
    parser.add_argument("command", choices=[
        "gaussian-compare", "bss-region", "bss-frontier", "bss-interface", "mc", "selfcheck",
    ])
    parser.add_argument("experiment", nargs="?", default=None,
                        help="mc experiment: uncoded-bsc | uncoded-gaussian | quantizer | "
                             "msvq | superposition")
    parser.add_argument("--config", default=None, help="key=value configuration file")
    for key in _FLOAT_KEYS:
        parser.add_argument(f"--{key.replace('_', '-')}", type=float, default=None)
    for key in _INT_KEYS:
        parser.add_argument(f"--{key}", type=int, default=None)
    parser.add_argument("--p-grid", default=None,
                        help="sweep for the command's x axis: lo:hi:n or v1,v2,...")
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"], default=None)
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    file_values = _read_config_file(args.config) if args.config else {}
    known = set(_FLOAT_KEYS) | set(_INT_KEYS) | {"p_grid", "out", "format"}
    unknown = set(file_values) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    cfg = RunConfig(command=args.command, experiment=args.experiment)
    provided: set[str] = set()

    def pick(key: str, parse) -> None:
        cli_value = getattr(args, key)
        if cli_value is not None:
            setattr(cfg, key, cli_value)
            provided.add(key)
        elif key in file_values:
            try:
                setattr(cfg, key, parse(file_values[key]))
            except ValueError as exc:
                raise ConfigError(f"bad value for {key}: {file_values[key]!r}") from exc
            provided.add(key)

    for key in _FLOAT_KEYS:
        pick(key, float)
    for key in _INT_KEYS:
        pick(key, int)
    pick("out", str)
    pick("format", str)
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")

    grid_text = args.p_grid if args.p_grid is not None else file_values.get("p_grid")
    if grid_text is None:
        grid_text = _DEFAULT_P_GRID.get(cfg.command)
    if grid_text is not None:
        cfg.p_grid = _parse_grid_spec(grid_text)

    if cfg.command == "gaussian-compare" and provided & _BSC_KEYS:
        raise ConfigError("gaussian-compare does not accept BSC parameters")
    if cfg.command.startswith("bss-") and provided & _GAUSSIAN_KEYS:
        raise ConfigError(f"{cfg.command} does not accept Gaussian parameters")
    if cfg.command == "mc":
        if cfg.experiment is None:
            raise ConfigError("mc requires an experiment name")
    elif cfg.experiment is not None:
        raise ConfigError(f"unexpected positional argument {cfg.experiment!r}")
    if cfg.grid < 2:
        raise ConfigError(f"grid must be >= 2, got {cfg.grid}")
    if cfg.command == "bss-interface" and not 0.0 <= cfg.p <= 1.0:
        raise ConfigError(f"p must lie in [0, 1], got {cfg.p}")
    if cfg.command == "bss-interface" and "p" not in provided:
        cfg.p = 0.7
    return cfg


_COMMANDS = {
    "gaussian-compare": cmd_gaussian_compare,
    "bss-region": cmd_bss_region,
    "bss-frontier": cmd_bss_frontier,
    "bss-interface": cmd_bss_interface,
    "mc": cmd_mc,
}


def _emit(table: FigureTable, cfg: RunConfig) -> None:
    text = render_csv(table) if cfg.format == "csv" else render_json(table)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    if args.command == "selfcheck":
        return run_selfcheck()
    try:
        cfg = _resolve_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        table = _COMMANDS[cfg.command](cfg)
        _emit(table, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except montecarlo.BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _NUMERIC_ERRORS as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
