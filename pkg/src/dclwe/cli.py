"""Command-line driver: experiments, sweeps, bound tables, self-checks.

Configuration is a flat key=value file plus command-line overrides,
with precedence CLI > file > defaults. Any numeric field may hold a
comma-separated list, which turns it into a sweep axis; the run covers
the cartesian product of all axes. Every (point, trial) task derives
its own RNG stream from the master seed, so results are identical for
any worker count and any scheduling order.

Exit codes: 0 on success, 2 on configuration errors, 3 on invariant
violations.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields as dataclass_fields
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from .errors import (
    ConfigError,
    DclweError,
    EmptyResult,
    InfeasibleParameters,
    InvalidModulus,
    InvariantViolation,
)
from .fq import PrimeField, is_prime
from .instance import GAUSSIAN, UNIFORM, ErrorDistribution, make_instance
from .oracle import (
    FORM_DIVIDED,
    FORM_FULL,
    SCHEME_BUCKET,
    SCHEME_PRIMITIVE,
    bound_report,
    prob_iii_bound,
    qram_cost,
)
from .qsim import (
    TwoQuditState,
    bv_kernel,
    kernel_distribution,
    prepare_sample_state,
    sample_bv_outcomes,
)
from .reduce import elimination_batch, kappa_observed, synth_reduced_batch
from .rng import derive_rng
from .solver import MODE_CONTROLLED, MODE_ELIMINATION, choose_parameters, solve

_SWEEPABLE = ("n", "q", "xi", "kappa", "sigma", "gamma", "delta", "v_size")

_DEFAULTS = {
    "n": "4",
    "q": "101",
    "xi": "1",
    "kappa": "1",
    "sigma": "none",
    "gamma": "0.125",
    "delta": "0.2",
    "v_size": "none",
    "chi_kind": UNIFORM,
    "mode": MODE_CONTROLLED,
    "trials": "100",
    "seed": "12345",
}


@dataclass(frozen=True)
class PointConfig:
    """One fully scalar sweep point."""

    n: int
    q: int
    xi: int
    kappa: float
    sigma: float | None
    gamma: float
    delta: float
    v_size: int | None
    chi_kind: str
    mode: str


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated configuration; sweepable fields hold one or more values."""

    n: tuple[int, ...]
    q: tuple[int, ...]
    xi: tuple[int, ...]
    kappa: tuple[float, ...]
    sigma: tuple[float | None, ...]
    gamma: tuple[float, ...]
    delta: tuple[float, ...]
    v_size: tuple[int | None, ...]
    chi_kind: str
    mode: str
    trials: int
    seed: int

    def points(self) -> list[PointConfig]:
        axes = [getattr(self, name) for name in _SWEEPABLE]
        return [
            PointConfig(*combo, chi_kind=self.chi_kind, mode=self.mode)
            for combo in itertools.product(*axes)
        ]


@dataclass(frozen=True)
class ExperimentRecord:
    point_index: int
    trial_index: int
    n: int
    q: int
    xi: int
    kappa: float
    sigma: float | None
    gamma: float
    delta: float
    v_size: int | None
    chi_kind: str
    mode: str
    seed: int
    xi_prime: int
    L: int
    M: int
    outcome: str
    coordinate_candidates: str  # ';'-joined per-coordinate counts
    coordinate_nulls: str
    quantum_samples: int
    test_samples: int
    wall_time_ms: float

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in dataclass_fields(self)}


def _parse_scalar(field: str, raw: str):
    raw = raw.strip()
    if field in ("sigma", "v_size") and raw.lower() in ("none", ""):
        return None
    try:
        if field in ("n", "q", "xi", "v_size", "trials", "seed"):
            return int(raw)
        if field in ("kappa", "sigma", "gamma", "delta"):
            return float(raw)
    except ValueError:
        raise ConfigError(f"{field}: cannot parse {raw!r}")
    return raw


def _parse_field(field: str, raw: str):
    if field in _SWEEPABLE:
        values = tuple(_parse_scalar(field, part) for part in raw.split(","))
        if not values:
            raise ConfigError(f"{field}: empty value list")
        return values
    if "," in raw:
        raise ConfigError(f"{field}: is not sweepable")
    return _parse_scalar(field, raw)


def read_config_file(path: str | Path) -> dict[str, str]:
    """Flat key=value lines; blank lines and # comments ignored."""
    out: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _DEFAULTS:
            raise ConfigError(f"{key}: unknown configuration field")
        out[key] = value
    return out


def build_config(file_values: dict[str, str] | None, cli_values: dict[str, str]) -> ExperimentConfig:
    """Merge defaults, file, and CLI values (rightmost wins) and validate."""
    raw = dict(_DEFAULTS)
    raw.update(file_values or {})
    raw.update({k: v for k, v in cli_values.items() if v is not None})
    for key in raw:
        if key not in _DEFAULTS:
            raise ConfigError(f"{key}: unknown configuration field")

    parsed = {field: _parse_field(field, raw[field]) for field in _DEFAULTS}
    config = ExperimentConfig(
        n=parsed["n"],
        q=parsed["q"],
        xi=parsed["xi"],
        kappa=parsed["kappa"],
        sigma=parsed["sigma"],
        gamma=parsed["gamma"],
        delta=parsed["delta"],
        v_size=parsed["v_size"],
        chi_kind=str(parsed["chi_kind"]),
        mode=str(parsed["mode"]),
        trials=int(parsed["trials"]),
        seed=int(parsed["seed"]),
    )
    _validate_config(config)
    return config


def _validate_config(config: ExperimentConfig) -> None:
    if config.chi_kind not in (UNIFORM, GAUSSIAN):
        raise ConfigError(f"chi_kind: must be {UNIFORM!r} or {GAUSSIAN!r}, got {config.chi_kind!r}")
    if config.mode not in (MODE_CONTROLLED, MODE_ELIMINATION):
        raise ConfigError(
            f"mode: must be {MODE_CONTROLLED!r} or {MODE_ELIMINATION!r}, got {config.mode!r}"
        )
    if config.trials < 1:
        raise ConfigError(f"trials: must be at least 1, got {config.trials}")
    if config.seed < 0:
        raise ConfigError(f"seed: must be non-negative, got {config.seed}")
    for n in config.n:
        if n < 1:
            raise ConfigError(f"n: must be at least 1, got {n}")
    for q in config.q:
        try:
            PrimeField(q)
        except InvalidModulus as exc:
            raise ConfigError(f"q: {exc}")
    for xi in config.xi:
        if xi < 0:
            raise ConfigError(f"xi: must be non-negative, got {xi}")
    for kappa in config.kappa:
        if kappa <= 0:
            raise ConfigError(f"kappa: must be positive, got {kappa}")
    for sigma in config.sigma:
        if sigma is not None and sigma <= 0:
            raise ConfigError(f"sigma: must be positive, got {sigma}")
    for gamma in config.gamma:
        if not 0 < gamma < 0.25:
            raise ConfigError(f"gamma: must lie in (0, 1/4), got {gamma}")
    for delta in config.delta:
        if not 0 < delta < 1:
            raise ConfigError(f"delta: must lie in (0, 1), got {delta}")
    for v_size in config.v_size:
        if v_size is not None and v_size < 1:
            raise ConfigError(f"v_size: must be at least 1, got {v_size}")
    for q in config.q:
        for xi in config.xi:
            if 2 * xi >= q:
                raise ConfigError(f"xi: bound {xi} does not fit below q/2 for q={q}")
        for v_size in config.v_size:
            if v_size is not None and v_size > q:
                raise ConfigError(f"v_size: {v_size} exceeds q={q}")


def feasibility_warnings(config: ExperimentConfig) -> list[str]:
    """Report sweep points whose relative amplified noise 2*kappa*alpha
    reaches 1/2; the success floor degrades there."""
    warnings = []
    for point in config.points():
        rate = 2 * point.kappa * point.xi / point.q
        if rate >= 0.5:
            warnings.append(
                f"point (n={point.n}, q={point.q}, xi={point.xi}, kappa={point.kappa}):"
                f" 2*kappa*alpha = {rate:.3f} >= 1/2"
            )
    return warnings


def run_point_trial(point: PointConfig, seed: int, point_index: int, trial_index: int) -> ExperimentRecord:
    """One solve with a stream derived from (seed, point, trial)."""
    rng = derive_rng(seed, point_index, trial_index)
    chi = ErrorDistribution(point.chi_kind, point.xi, sigma=point.sigma)
    instance = make_instance(point.n, point.q, chi, rng)
    params = choose_parameters(point.n, point.q, point.xi, point.kappa, point.delta, point.gamma)
    start = time.perf_counter()
    result = solve(instance, params, point.mode, rng, v_size=point.v_size)
    wall_ms = (time.perf_counter() - start) * 1e3
    return ExperimentRecord(
        point_index=point_index,
        trial_index=trial_index,
        n=point.n,
        q=point.q,
        xi=point.xi,
        kappa=point.kappa,
        sigma=point.sigma,
        gamma=point.gamma,
        delta=point.delta,
        v_size=point.v_size,
        chi_kind=point.chi_kind,
        mode=point.mode,
        seed=seed,
        xi_prime=params.xi_prime,
        L=params.L,
        M=params.M,
        outcome=result.outcome,
        coordinate_candidates=";".join(str(st.candidates_tried) for st in result.per_coordinate),
        coordinate_nulls=";".join(str(st.null_count) for st in result.per_coordinate),
        quantum_samples=result.quantum_samples,
        test_samples=result.test_samples,
        wall_time_ms=wall_ms,
    )


def _task(args: tuple[PointConfig, int, int, int]) -> ExperimentRecord:
    point, seed, point_index, trial_index = args
    return run_point_trial(point, seed, point_index, trial_index)


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[ExperimentRecord]:
    """All (point, trial) tasks in deterministic order."""
    tasks = [
        (point, config.seed, pi, ti)
        for pi, point in enumerate(config.points())
        for ti in range(config.trials)
    ]
    if workers <= 1:
        return [_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (workers * 4))))


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.12g}"
    if value is None:
        return ""
    return str(value)


def emit(rows: Sequence[dict], fmt: str, fh: TextIO) -> None:
    """Write records as CSV or JSON with 12-significant-digit numbers."""
    if not rows:
        raise EmptyResult("nothing to emit")
    if fmt == "csv":
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(v) for k, v in row.items()})
    elif fmt == "json":
        cooked = [
            {k: (float(f"{v:.12g}") if isinstance(v, float) else v) for k, v in row.items()}
            for row in rows
        ]
        json.dump(cooked, fh, indent=2)
        fh.write("\n")
    else:
        raise ConfigError(f"format: must be 'csv' or 'json', got {fmt!r}")


def report_bounds(config: ExperimentConfig) -> list[dict]:
    """Exact ridge mass next to its analytic floor across the sweep grid.

    One synthesized batch per (q, xi', gamma, batch size) point, plus a
    Monte Carlo rate over `trials` shots with its 3-sigma half-width,
    and the wrong-accept bound in its continuous (2 kappa alpha)^M and
    integer-count ((2 xi' + 1)/q)^M forms when the point admits a budget.
    """
    rows = []
    grid_index = 0
    for point in config.points():
        xi_prime = round(point.kappa * point.xi)
        if xi_prime < 1 or 2 * xi_prime >= point.q:
            continue
        rng = derive_rng(config.seed, 7, grid_index)
        grid_index += 1
        q = point.q
        batch_size = point.v_size if point.v_size is not None else q
        s_j = int(rng.integers(q))
        chi_prime = ErrorDistribution(point.chi_kind, xi_prime, sigma=point.sigma)
        v = np.arange(q) if batch_size >= q else rng.choice(q, size=batch_size, replace=False)
        batch = synth_reduced_batch(s_j, q, v, xi_prime, chi_prime, rng, xi=max(point.xi, 1))
        report = bound_report(batch, point.gamma)

        shots = max(config.trials, 100)
        outcomes = sample_bv_outcomes(batch, rng, shots)
        on_ridge = (outcomes[:, 0] == (-s_j * outcomes[:, 1]) % q).mean()
        sigma3 = 3 * float(np.sqrt(on_ridge * (1 - on_ridge) / shots))

        row = {
            "q": report.q,
            "xi_prime": report.xi_prime,
            "gamma": report.gamma,
            "batch_size": report.batch_size,
            "exact_p": report.exact_p,
            "lower_bound": report.lower_bound,
            "violated": report.violated,
            "empirical_p": float(on_ridge),
            "empirical_3sigma": sigma3,
        }
        try:
            params = choose_parameters(
                point.n, q, point.xi, point.kappa, point.delta, point.gamma
            )
            wa = prob_iii_bound(params.L, point.kappa, point.xi / q, params.M, q)
            row.update(
                {
                    "L": params.L,
                    "M": params.M,
                    "wrong_accept_approx": wa.approx,
                    "wrong_accept_exact": wa.exact,
                }
            )
        except InfeasibleParameters:
            row.update({"L": None, "M": None, "wrong_accept_approx": None, "wrong_accept_exact": None})
        rows.append(row)
    if not rows:
        raise ConfigError("xi/kappa: no sweep point yields a usable xi' in [1, q/2)")
    return rows


def run_selftest(fh: TextIO = sys.stdout) -> int:
    """Structural invariant suite; returns 0 or 3 (first failure wins)."""
    failures = 0

    def check(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failures
        tag = "ok" if ok else "FAIL"
        suffix = f" ({detail})" if detail else ""
        fh.write(f"{tag:4s} {name}{suffix}\n")
        if not ok:
            failures += 1

    rng = np.random.default_rng(20260816)

    # Exhaustive inverses for every odd prime modulus up to 101.
    primes = [p for p in range(3, 102, 2) if is_prime(p)]
    bad = 0
    for p in primes:
        field = PrimeField(p)
        for x in range(1, p):
            if x * field.inv(x) % p != 1:
                bad += 1
    check("field inverses exhaustive (q <= 101)", bad == 0, f"{len(primes)} moduli")

    # Centered window is a bijection onto (-q/2, q/2].
    ok = True
    for p in (3, 7, 101):
        field = PrimeField(p)
        reps = {field.centered(x) for x in range(p)}
        ok &= reps == set(range(-(p // 2), p // 2 + 1))
    check("centered representatives bijective", ok)

    # Kernel preserves the norm on random states: 1e3 states, drift < 1e-10.
    worst = 0.0
    for i in range(1000):
        q = (5, 7, 11, 13)[i % 4]
        raw = rng.normal(size=(q, q)) + 1j * rng.normal(size=(q, q))
        raw /= np.linalg.norm(raw)
        out = bv_kernel(TwoQuditState(q, raw))
        worst = max(worst, abs(out.norm_squared() - 1.0))
    check("kernel unitarity on 1e3 random states", worst < 1e-10, f"max drift {worst:.2e}")

    # Elimination identity: b' = a' s_j + eta' and the L1 bound on eta'.
    ok = True
    for _ in range(40):
        n = int(rng.integers(2, 6))
        q = int(rng.choice([11, 31, 101]))
        xi = int(rng.integers(0, 4))
        chi = ErrorDistribution(UNIFORM, xi)
        inst = make_instance(n, q, chi, rng)
        j = int(rng.integers(n))
        batch = elimination_batch(inst, j, rng.choice(q, size=min(q, 17), replace=False), rng)
        lhs = batch.b_values % q
        rhs = (batch.a_values * int(inst.s[j]) + batch.eta_values) % q
        ok &= np.array_equal(lhs, rhs)
        ok &= bool((np.abs(batch.eta_values) <= batch.coeff_l1_values * max(xi, 0)).all() or xi == 0)
        ok &= kappa_observed(batch) == int(batch.coeff_l1_values.max())
    check("elimination identity and amplification bound", ok)

    # Measurement sampler agrees with the exact grid (chi-square, 4 sigma).
    q = 31
    chi_prime = ErrorDistribution(UNIFORM, 2)
    batch = synth_reduced_batch(int(rng.integers(q)), q, np.arange(q), 2, chi_prime, rng)
    grid = kernel_distribution(batch).ravel()
    shots = 20000
    outcomes = sample_bv_outcomes(batch, rng, shots)
    counts = np.bincount(outcomes[:, 0] * q + outcomes[:, 1], minlength=q * q)
    stat, dof = _pooled_chi_square(counts, grid, shots)
    limit = dof + 4 * np.sqrt(2 * dof)
    check("measurement sampler chi-square (4 sigma)", stat <= limit, f"{stat:.1f} <= {limit:.1f}")

    # A true candidate is never rejected in controlled mode.
    rejections = 0
    for trial in range(100):
        inst = make_instance(3, 101, ErrorDistribution(UNIFORM, 1), rng)
        params = choose_parameters(3, 101, 1, 2, 0.2)
        result = solve(inst, params, MODE_CONTROLLED, rng)
        rejections += sum(st.true_rejections for st in result.per_coordinate)
    check("true candidate never rejected (controlled)", rejections == 0, "100 solves")

    # The dense kernel path and the closed-form grid agree.
    worst = 0.0
    for _ in range(10):
        q = int(rng.choice([7, 11, 17]))
        batch = synth_reduced_batch(
            int(rng.integers(q)), q, np.arange(q), 1, ErrorDistribution(UNIFORM, 1), rng
        )
        dense = bv_kernel(prepare_sample_state(batch)).probabilities()
        worst = max(worst, float(np.abs(dense - kernel_distribution(batch)).max()))
    check("dense kernel matches closed form", worst < 1e-12, f"max gap {worst:.2e}")

    fh.write(f"{'PASS' if failures == 0 else 'FAIL'}: {7 - failures}/7 invariant groups hold\n")
    return 0 if failures == 0 else 3


def _pooled_chi_square(counts: np.ndarray, probs: np.ndarray, shots: int, min_expected: float = 5.0):
    """Chi-square statistic with low-expectation cells pooled together."""
    expected = probs * shots
    big = expected >= min_expected
    stat = float(((counts[big] - expected[big]) ** 2 / expected[big]).sum())
    dof = int(big.sum()) - 1
    rest_exp = float(expected[~big].sum())
    if rest_exp > 0:
        rest_obs = float(counts[~big].sum())
        stat += (rest_obs - rest_exp) ** 2 / rest_exp
        dof += 1
    return stat, max(dof, 1)


def _add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key=value configuration file")
    for field in ("n", "q", "xi", "kappa", "sigma", "gamma", "delta", "v-size"):
        parser.add_argument(f"--{field}", help=f"override {field.replace('-', '_')} (comma list sweeps)")
    parser.add_argument("--chi-kind", choices=[UNIFORM, GAUSSIAN], help="error law")
    parser.add_argument("--mode", choices=[MODE_CONTROLLED, MODE_ELIMINATION], help="batch construction mode")
    parser.add_argument("--trials", help="solves per sweep point")
    parser.add_argument("--seed", help="master seed")


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    file_values = read_config_file(args.config) if args.config else None
    cli_values = {
        "n": args.n,
        "q": args.q,
        "xi": args.xi,
        "kappa": args.kappa,
        "sigma": args.sigma,
        "gamma": args.gamma,
        "delta": args.delta,
        "v_size": args.v_size,
        "chi_kind": args.chi_kind,
        "mode": args.mode,
        "trials": args.trials,
        "seed": args.seed,
    }
    return build_config(file_values, cli_values)


def _open_out(path: str | None):
    return open(path, "w") if path else sys.stdout


def _cmd_solve(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    for warning in feasibility_warnings(config):
        print(f"warning: {warning}", file=sys.stderr)
    records = run_experiment(config, workers=args.workers)
    by_point: dict[int, list[ExperimentRecord]] = {}
    for record in records:
        by_point.setdefault(record.point_index, []).append(record)
    for pi, recs in sorted(by_point.items()):
        total = len(recs)
        tally = {}
        for r in recs:
            tally[r.outcome] = tally.get(r.outcome, 0) + 1
        head = recs[0]
        fractions = ", ".join(f"{k}={v / total:.3f}" for k, v in sorted(tally.items()))
        print(
            f"point {pi}: n={head.n} q={head.q} xi'={head.xi_prime} L={head.L} M={head.M}"
            f" trials={total}: {fractions}"
        )
    if args.out:
        with _open_out(args.out) as fh:
            emit([r.to_dict() for r in records], args.format, fh)
        print(f"wrote {len(records)} records to {args.out}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    for warning in feasibility_warnings(config):
        print(f"warning: {warning}", file=sys.stderr)
    records = run_experiment(config, workers=args.workers)
    fh = _open_out(args.out)
    try:
        emit([r.to_dict() for r in records], args.format, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _cmd_bounds(args: argparse.Namespace) -> int:
    config = _config_from_args(args)
    rows = report_bounds(config)
    fh = _open_out(args.out)
    try:
        emit(rows, args.format, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    violated = [r for r in rows if r["violated"]]
    if violated:
        print(f"warning: {len(violated)} of {len(rows)} points violate the bound", file=sys.stderr)
    return 0


def _cmd_qram_cost(args: argparse.Namespace) -> int:
    value = qram_cost(args.q, args.n, args.d, args.scheme, args.sample_form)
    print(_fmt(value))
    return 0


def _cmd_selftest(args: argparse.Namespace) -> int:
    return run_selftest(sys.stdout)


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="dclwe",
        description="divide-and-conquer LWE solver: simulation and analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run solves and print outcome fractions")
    _add_config_arguments(p_solve)
    p_solve.add_argument("--out", help="also write records to this path")
    p_solve.add_argument("--format", choices=["csv", "json"], default="csv")
    p_solve.add_argument("--workers", type=int, default=1)
    p_solve.set_defaults(func=_cmd_solve)

    p_sweep = sub.add_parser("sweep", help="run the sweep grid and emit records")
    _add_config_arguments(p_sweep)
    p_sweep.add_argument("--out", help="output path (default stdout)")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_bounds = sub.add_parser("bounds", help="exact success probability vs. its lower bound")
    _add_config_arguments(p_bounds)
    p_bounds.add_argument("--out", help="output path (default stdout)")
    p_bounds.add_argument("--format", choices=["csv", "json"], default="csv")
    p_bounds.set_defaults(func=_cmd_bounds)

    p_qram = sub.add_parser("qram-cost", help="query cost for a memory layout")
    p_qram.add_argument("--q", type=int, required=True)
    p_qram.add_argument("--n", type=int, required=True)
    p_qram.add_argument("--d", type=int, required=True)
    p_qram.add_argument("--scheme", choices=[SCHEME_PRIMITIVE, SCHEME_BUCKET], required=True)
    p_qram.add_argument("--sample-form", choices=[FORM_FULL, FORM_DIVIDED], required=True)
    p_qram.set_defaults(func=_cmd_qram_cost)

    p_self = sub.add_parser("selftest", help="run the structural invariant suite")
    p_self.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleParameters as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except EmptyResult as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DclweError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
