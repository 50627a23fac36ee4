"""Configuration-driven experiment runner.

    harmonics <task> --config <path> [--seed n] [--jobs k] [--out dir]

Tasks: inverse, walk, reduce, membership, factor-check, entropy,
orders-test, reproduce.  Configs are TOML (key/value with nesting) or JSON
with the same structure; unknown keys are rejected against the schema in
config.schema.json.  Reports are canonical JSON (sorted keys, no
timestamps), embedding the tool version and the sha256 of the canonical
config, so identical config + seed reproduces byte-identical outputs.

Exit codes: 0 success, 1 reproduce-suite failure, 2 config/parse error,
3 hypothesis violation (an operation's precondition failed), 4 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

try:
    import tomllib  # py >= 3.11
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

import jsonschema

from . import __version__
from .acceptance import CRITERIA, run_all
from .factor import WindowConfig, entropy_report, estimate_fourier, haar_verdict
from .groups import (
    BallCapExceeded,
    OrderedGroup,
    ParseError,
    ordered_group,
    parse_group,
)
from .inverses import (
    NotLopsided,
    SupportCapExceeded,
    convergence_verdict,
    geometric_l2_partial,
    neumann_l1_inverse,
)
from .measures import build_nu, build_nu_composite
from .reduction import (
    AdaptiveDepthExceeded,
    ReductionError,
    UnsupportedReduction,
    ideal_membership,
    reduce_coefficients,
)
from .ring import parse_ring
from .walks import decay_fit, growth_profile, return_probability, uniform_walk, varopoulos_check

TASKS = [
    "inverse",
    "walk",
    "reduce",
    "membership",
    "factor-check",
    "entropy",
    "orders-test",
    "reproduce",
]

EXIT_OK = 0
EXIT_SUITE_FAIL = 1
EXIT_CONFIG = 2
EXIT_HYPOTHESIS = 3
EXIT_CAP = 4


class ConfigError(ValueError):
    pass


_SCHEMA_PATH = Path(__file__).resolve().parent / "config.schema.json"


def load_config(path: Path) -> dict:
    raw = path.read_bytes()
    try:
        if path.suffix == ".json":
            cfg = json.loads(raw)
        else:
            cfg = tomllib.loads(raw.decode())
    except Exception as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a table/object")
    if _SCHEMA_PATH.exists():
        schema = json.loads(_SCHEMA_PATH.read_text())
        try:
            jsonschema.validate(cfg, schema)
        except jsonschema.ValidationError as exc:
            raise ConfigError(f"config rejected: {exc.message}") from exc
    return cfg


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def config_hash(cfg: dict) -> str:
    return hashlib.sha256(canonical_json(cfg).encode()).hexdigest()


def _write_csv(path: Path, header: list[str], rows: list) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _require(table: dict, key: str):
    if key not in table:
        raise ConfigError(f"config key {key!r} is required for this task")
    return table[key]


def _ordered_group_from(cfg: dict) -> OrderedGroup:
    group = parse_group(_require(cfg, "group"))
    gens = cfg.get("gens")
    if gens:
        return ordered_group(group, gens)
    return ordered_group(group)


def run_task(task: str, cfg: dict, out_dir: Path) -> tuple[dict, list[str]]:
    """Dispatch one experiment; returns (result payload, failure lines)."""
    params = cfg.get("params", {})
    seed = int(cfg.get("seed", 0))
    failures: list[str] = []

    if task == "inverse":
        og = _ordered_group_from(cfg)
        f = parse_ring(_require(cfg, "f"), og.group)
        if "tol" in params:
            inv = neumann_l1_inverse(f, Fraction(params["tol"]))
        else:
            inv = geometric_l2_partial(f, params.get("N"), cap=params.get("cap", 10**6))
        verdict = convergence_verdict(f, k_max=params.get("K", 16))
        result = inv.report()
        result["verdict"] = verdict.verdict
        result["verdict_detail"] = verdict.detail
        _write_csv(
            out_dir / "increments.csv",
            ["n", "increment_l2"],
            list(enumerate(inv.increments, start=1)),
        )
        return result, failures

    if task == "walk":
        og = _ordered_group_from(cfg)
        k_max = params.get("K", 40)
        x = uniform_walk(og, symmetric=params.get("symmetric", True))
        series = return_probability(x, k_max, cap=params.get("cap", 10**7))
        window = tuple(params.get("window", (max(5, k_max // 4), k_max)))
        slope, err = decay_fit(series, window)
        rep = varopoulos_check(og, x, k_max, window=window)
        _write_csv(
            out_dir / "returns.csv",
            ["k", "numerator", "denominator", "value"],
            series.csv_rows(),
        )
        result = {
            "fitted_exponent": slope,
            "stderr": err,
            "window": list(window),
            "varopoulos": rep.as_dict(),
        }
        if "Rmax" in params:
            sizes = growth_profile(og, params["Rmax"], cap=params.get("cap", 10**7))
            _write_csv(out_dir / "growth.csv", ["R", "size"], list(enumerate(sizes)))
            result["growth"] = sizes
        return result, failures

    if task == "reduce":
        og = _ordered_group_from(cfg)
        f = parse_ring(_require(cfg, "f"), og.group)
        rows = []
        for expr in _require(params, "alphas"):
            red = reduce_coefficients(parse_ring(expr, og.group), f)
            rows.append({"alpha": expr, **red.as_dict()})
        return {"reductions": rows}, failures

    if task == "membership":
        og = _ordered_group_from(cfg)
        f = parse_ring(_require(cfg, "f"), og.group)
        rows = []
        for expr in _require(params, "alphas"):
            verdict = ideal_membership(parse_ring(expr, og.group), f, og)
            rows.append({"alpha": expr, **verdict.as_dict()})
        return {"membership": rows}, failures

    if task == "factor-check":
        og = _ordered_group_from(cfg)
        f = parse_ring(_require(cfg, "f"), og.group)
        m = int(f.trace())
        nu_m = params.get("nu_m", m)
        nu = build_nu_composite(nu_m) if params.get("composite") else build_nu(nu_m)
        wc = WindowConfig(
            n_samples=params.get("n_samples", 10**5),
            seed=seed,
            base_tol=params.get("tol", 0.01),
        )
        panel = []
        for i, expr in enumerate(_require(params, "alphas")):
            alpha = parse_ring(expr, og.group)
            member = ideal_membership(alpha, f, og).status == "member"
            wc_i = WindowConfig(
                n_samples=wc.n_samples, seed=wc.seed, stream=i, base_tol=wc.base_tol
            )
            est = estimate_fourier(f, alpha, nu, wc_i)
            panel.append((alpha, member, est))
        report = haar_verdict(panel)
        if not report.passed:
            failures.append("factor-check panel has inconsistent rows")
        _write_csv(
            out_dir / "panel.csv",
            ["alpha", "member", "verdict", "mc_re", "mc_im", "product_re"],
            [(a, m_, v, mc.real, mc.imag, p.real) for a, m_, v, mc, p in report.rows],
        )
        return report.as_dict(), failures

    if task == "entropy":
        og = _ordered_group_from(cfg)
        f = parse_ring(_require(cfg, "f"), og.group)
        rep = entropy_report(f, og, k_check=params.get("K", 30))
        return rep.as_dict(), failures

    if task == "orders-test":
        og = _ordered_group_from(cfg)
        import random as _random

        rng = _random.Random(seed)
        sample = og.random_elements(
            params.get("sample_size", 300), params.get("max_length", 8), rng
        )
        rep = og.check_axioms(sample, n_triples=params.get("n_triples", 10**4), rng=rng)
        if not rep.passed:
            failures.append(rep.first_failure() or "axiom failure")
        return {
            "group": rep.group,
            "order_kind": rep.order_kind,
            "n_checked": rep.n_checked,
            "passed": rep.passed,
            "failures": rep.failures,
        }, failures

    if task == "reproduce":
        keys = params.get("criteria")
        results = run_all(keys=keys, negative_control=params.get("negative_control"))
        rows = [
            {"key": r.key, "title": r.title, "passed": r.passed, "detail": r.detail}
            for r in results
        ]
        for r in results:
            if not r.passed:
                failures.append(f"{r.key}: {r.detail}")
        return {"criteria": rows, "all_passed": not failures}, failures

    raise ConfigError(f"unknown task {task!r}")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="harmonics",
        description="Desk-scale experiments on algebraic actions of ordered groups",
    )
    parser.add_argument("task", choices=TASKS)
    parser.add_argument("--config", type=Path, help="TOML or JSON experiment config")
    parser.add_argument("--seed", type=int, default=None, help="override config seed")
    parser.add_argument("--jobs", type=int, default=1, help="worker pool size hint")
    parser.add_argument("--out", type=Path, default=None, help="output directory")
    args = parser.parse_args(argv)

    try:
        cfg = load_config(args.config) if args.config else {}
        if "task" in cfg and cfg["task"] != args.task:
            raise ConfigError(
                f"config task {cfg['task']!r} does not match requested {args.task!r}"
            )
        if args.seed is not None:
            cfg["seed"] = args.seed
        out_dir = args.out or Path(cfg.get("out", "harmonics-out"))
        out_dir.mkdir(parents=True, exist_ok=True)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        result, failures = run_task(args.task, cfg, out_dir)
    except (ConfigError, ParseError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, NotLopsided, UnsupportedReduction) as exc:
        print(f"hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (
        BallCapExceeded,
        SupportCapExceeded,
        AdaptiveDepthExceeded,
        ReductionError,
    ) as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP

    report = {
        "version": __version__,
        "task": args.task,
        "config_sha256": config_hash(cfg),
        "seed": cfg.get("seed", 0),
        "result": result,
    }
    (out_dir / "report.json").write_text(canonical_json(report) + "\n")
    print(f"report written to {out_dir / 'report.json'}")
    if failures:
        for line in failures:
            print(f"FAIL {line}", file=sys.stderr)
        return EXIT_SUITE_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
