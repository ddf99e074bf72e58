"""Command-line front end: thresholds, order checks, curve emission,
sampling and the randomized theorem suites.

JSON in / JSON out (CSV for curve).  Exit codes: 0 success (and verdict
holds / all suites pass), 1 verdict or suite failure, 2 malformed config.
Identical config + seed gives byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from .expmix import HomogeneousRate, RateVector
from .mc import empirical_cv, ks_test, sample_order_stat, sample_spacing
from .orders import (check_disp, check_hr, check_lorenz, check_st, check_star)
from .orderstats import (OrderStatSpec, PointwiseOrderStat, PointwiseSpacing,
                         SpacingSpec, build_order_stat_direct, build_spacing)
from .suites import run_suite
from .symfun import threshold_order_stat, threshold_spacing

RELATIONS = {
    "st": check_st,
    "hr": check_hr,
    "disp": check_disp,
    "star": check_star,
    "lorenz": check_lorenz,
}


class ConfigError(Exception):
    pass


def _parse_rates(text):
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"rates: could not parse {text!r} as comma-separated reals")
    if not vals or any(v <= 0 for v in vals):
        raise ConfigError("rates: need a nonempty list of positive reals")
    return vals


def _merged_config(args):
    """File config (if any) overridden by inline flags that were given."""
    cfg = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"config: {e}")
        if not isinstance(cfg, dict):
            raise ConfigError("config: top level must be a JSON object")
    for key in ("rates", "gamma", "k", "n", "m", "relation", "seed", "grid",
                "draws", "suite", "instances", "pairs", "max_n"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if isinstance(cfg.get("rates"), str):
        cfg["rates"] = _parse_rates(cfg["rates"])
    return cfg


def _require(cfg, *keys):
    for key in keys:
        if cfg.get(key) is None:
            raise ConfigError(f"{key}: required for this subcommand")
    return [cfg[k] for k in keys]


def _rate_vector(cfg):
    rates = cfg.get("rates")
    if rates is None:
        raise ConfigError("rates: required for this subcommand")
    if not isinstance(rates, (list, tuple)) or any(
            not isinstance(v, (int, float)) or v <= 0 for v in rates):
        raise ConfigError("rates: need a nonempty list of positive reals")
    return RateVector(rates)


def _int_field(cfg, key, lo=1):
    v = cfg[key]
    if not isinstance(v, int) or v < lo:
        raise ConfigError(f"{key}: need an integer >= {lo}, got {v!r}")
    return v


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def cmd_threshold(cfg, out):
    rv = _rate_vector(cfg)
    (k,) = _require(cfg, "k")
    k = _int_field(cfg, "k")
    if cfg.get("m") is not None:
        m = _int_field(cfg, "m")
        if not 1 <= m < k <= rv.n:
            raise ConfigError(f"m: need 1 <= m < k <= n, got m={m}, k={k}, n={rv.n}")
        rep = threshold_spacing(rv, m, k)
    else:
        if not 1 <= k <= rv.n:
            raise ConfigError(f"k: need 1 <= k <= n, got k={k}, n={rv.n}")
        rep = threshold_order_stat(rv, k)
    d = asdict(rep)
    d["rates"] = list(d["rates"])
    _emit(_json(d), out)
    return 0


def _spec_pair(cfg):
    """Heterogeneous X and homogeneous Y specs for the same statistic."""
    rv = _rate_vector(cfg)
    k = _int_field(cfg, "k")
    gamma = cfg.get("gamma")
    if not isinstance(gamma, (int, float)) or gamma <= 0:
        raise ConfigError(f"gamma: need a positive real, got {gamma!r}")
    hom = HomogeneousRate(float(gamma))
    if cfg.get("m") is not None:
        m = _int_field(cfg, "m")
        if not 1 <= m < k <= rv.n:
            raise ConfigError(f"m: need 1 <= m < k <= n, got m={m}, k={k}, n={rv.n}")
        return (PointwiseSpacing(SpacingSpec(m, k, rv.n, hom)),
                PointwiseSpacing(SpacingSpec(m, k, rv.n, rv)))
    if not 1 <= k <= rv.n:
        raise ConfigError(f"k: need 1 <= k <= n, got k={k}, n={rv.n}")
    return (PointwiseOrderStat(OrderStatSpec(k, rv.n, hom)),
            PointwiseOrderStat(OrderStatSpec(k, rv.n, rv)))


def cmd_check(cfg, out):
    _require(cfg, "rates", "gamma", "k", "relation")
    relation = cfg["relation"]
    if relation not in RELATIONS:
        raise ConfigError(f"relation: must be one of {sorted(RELATIONS)}, got {relation!r}")
    Y, X = _spec_pair(cfg)
    v = RELATIONS[relation](Y, X)
    d = asdict(v)
    _emit(_json(d), out)
    return 0 if v.holds else 1


def _exact_dist(cfg):
    rv = _rate_vector(cfg)
    k = _int_field(cfg, "k")
    if cfg.get("m") is not None:
        m = _int_field(cfg, "m")
        if not 1 <= m < k <= rv.n:
            raise ConfigError(f"m: need 1 <= m < k <= n, got m={m}, k={k}, n={rv.n}")
        return build_spacing(SpacingSpec(m, k, rv.n, rv))
    if not 1 <= k <= rv.n:
        raise ConfigError(f"k: need 1 <= k <= n, got k={k}, n={rv.n}")
    return build_order_stat_direct(OrderStatSpec(k, rv.n, rv))


def cmd_curve(cfg, out):
    _require(cfg, "rates", "k")
    grid = cfg.get("grid", 512)
    if not isinstance(grid, int) or grid < 1:
        raise ConfigError(f"grid: need a positive integer, got {grid!r}")
    d = _exact_dist(cfg)
    u = (np.arange(grid) + 0.5) / grid
    xs = np.array([d.quantile(v) for v in u])
    lines = ["x,cdf,pdf,hazard"]
    for x in xs:
        lines.append(f"{float(x)!r},{float(d.cdf(x))!r},"
                     f"{float(d.pdf(x))!r},{float(d.hazard(x))!r}")
    _emit("\n".join(lines) + "\n", out)
    return 0


def cmd_sample(cfg, out):
    _require(cfg, "rates", "k")
    rv = _rate_vector(cfg)
    k = _int_field(cfg, "k")
    draws = cfg.get("draws", 100000)
    if not isinstance(draws, int) or draws < 1:
        raise ConfigError(f"draws: need a positive integer, got {draws!r}")
    seed = cfg.get("seed", 0)
    if cfg.get("m") is not None:
        m = _int_field(cfg, "m")
        spec = SpacingSpec(m, k, rv.n, rv)
        batch = sample_spacing(spec, draws, seed)
        exact = build_spacing(spec)
    else:
        spec = OrderStatSpec(k, rv.n, rv)
        batch = sample_order_stat(spec, draws, seed)
        exact = build_order_stat_direct(spec)
    ks = ks_test(batch, exact)
    x = batch.draws
    d = {
        "spec": batch.spec,
        "seed": batch.seed,
        "n_draws": int(x.size),
        "mean": float(np.mean(x)),
        "sd": float(np.std(x)),
        "cv": empirical_cv(batch),
        "exact_mean": exact.mean(),
        "exact_cv": exact.cv(),
        "ks_distance": ks.distance,
        "ks_critical": ks.critical,
        "ks_passed": ks.passed,
    }
    _emit(_json(d), out)
    return 0


def cmd_verify_paper(cfg, out):
    suite = cfg.get("suite", "all")
    seed = cfg.get("seed", 0)
    instances = cfg.get("instances", 50)
    n_max = cfg.get("max_n", 6)
    pairs = cfg.get("pairs", 200)
    try:
        results = run_suite(suite, seed=seed, instances=instances,
                            n_max=n_max, pairs=pairs)
    except KeyError:
        raise ConfigError(f"suite: unknown suite {suite!r}")
    payload = {
        "seed": seed,
        "suites": [r.to_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    }
    _emit(_json(payload), out)
    return 0 if payload["all_passed"] else 1


def build_parser():
    p = argparse.ArgumentParser(prog="heteroexp")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("threshold", "check", "curve", "sample", "verify-paper"):
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="JSON config file; inline flags override")
        sp.add_argument("--rates", help="comma-separated positive rates")
        sp.add_argument("--k", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--m", type=int)
        sp.add_argument("--gamma", type=float)
        sp.add_argument("--relation", choices=sorted(RELATIONS))
        sp.add_argument("--seed", type=int)
        sp.add_argument("--grid", type=int)
        sp.add_argument("--draws", type=int)
        sp.add_argument("--suite")
        sp.add_argument("--instances", type=int)
        sp.add_argument("--pairs", type=int)
        sp.add_argument("--max-n", dest="max_n", type=int)
        sp.add_argument("--out")
    return p


COMMANDS = {
    "threshold": cmd_threshold,
    "check": cmd_check,
    "curve": cmd_curve,
    "sample": cmd_sample,
    "verify-paper": cmd_verify_paper,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = _merged_config(args)
        return COMMANDS[args.command](cfg, args.out)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
