"""Command line harness: seeded experiments emitting CSV or JSON lines.

Every run produces a list of flat records with one fixed schema, sorted by
(trial, statistic) so output is byte-identical for a given configuration
and master seed.  Counts are serialized as decimal strings (they exceed
every native integer width long before the guards trip), probabilities as
floats rounded to 12 significant digits, and exact rationals ride along as
"num/den" strings in the `exact` column.

Verbs: volume, count-decomposable, capacity, verify, sample, experiment,
chain.  `sumrank <verb> --help` lists the fields each one needs.  Records
carry no timing by default; opt in with --timing, which fills the runtime
column and gives up byte-stable reruns.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import chains, codes, counting, decomposable, linalg, metric
from .counting import SpaceParams
from .galois import field_from_order
from .guards import GuardError
from .montecarlo import DEFAULT_MASTER_SEED, RandomStream

CSV_HEADER = ["verb", "statistic", "trial", "value", "exact", "ci_low",
              "ci_high", "trials", "seed", "runtime", "config"]

_OUT_DIR_ENV = "SUMRANK_OUT_DIR"


# -- record construction ---------------------------------------------------

def _sig12(x):
    return float(f"{float(x):.12g}")


def _value_cell(v):
    """Counts as decimal strings, floats trimmed to 12 significant digits."""
    if v is None:
        return None
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return _sig12(v)
    if isinstance(v, float):
        return _sig12(v)
    return str(v)


def _exact_cell(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    return None


def make_record(verb, statistic, value, config, trial=-1, exact=None,
                ci=None, trials=None, seed=None):
    return {
        "verb": verb,
        "statistic": statistic,
        "trial": trial,
        "value": _value_cell(value),
        "exact": _exact_cell(exact if exact is not None else value),
        "ci_low": None if ci is None else _sig12(ci[0]),
        "ci_high": None if ci is None else _sig12(ci[1]),
        "trials": trials,
        "seed": seed,
        "runtime": None,
        "config": config,
    }


def emit(records, fmt, path=None):
    """Write records, sorted by (trial, statistic), as CSV or JSON lines.

    CSV always starts with the fixed header, so an empty run still emits
    one line.  JSON emits one object per record with keys sorted, nested
    config included, which round-trips exactly.
    """
    records = sorted(records, key=lambda r: (r["trial"], r["statistic"]))
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            row = []
            for col in CSV_HEADER:
                v = rec[col]
                if col == "config":
                    v = json.dumps(v, sort_keys=True, separators=(",", ":"))
                row.append("" if v is None else v)
            writer.writerow(row)
    elif fmt == "json":
        for rec in records:
            buf.write(json.dumps(rec, sort_keys=True, separators=(",", ":")))
            buf.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
    text = buf.getvalue()
    if path is None:
        sys.stdout.write(text)
    else:
        base = os.environ.get(_OUT_DIR_ENV)
        if base and not os.path.isabs(path):
            path = os.path.join(base, path)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# -- shared argument plumbing ----------------------------------------------

def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _int_list(text):
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an int list: {text!r}") from exc


def _field_of(args):
    modulus = tuple(args.modulus) if getattr(args, "modulus", None) else None
    return field_from_order(args.q, modulus=modulus)


def _space_of(args):
    return SpaceParams(field=_field_of(args), m=args.m, eta=args.eta,
                       ell=args.ell)


def _space_config(params, **extra):
    cfg = {"q": params.q, "m": params.m, "eta": params.eta, "ell": params.ell}
    cfg.update(extra)
    return cfg


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
        else str(x.numerator)


def _add_output_flags(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="output format (default csv)")
    parser.add_argument("--out", metavar="PATH",
                        help=f"output file; relative paths land in "
                             f"${_OUT_DIR_ENV} when set, default stdout")
    parser.add_argument("--timing", action="store_true",
                        help="fill the runtime column (breaks byte-identical"
                             " reruns)")


def _add_space_flags(parser, m=True):
    parser.add_argument("--q", type=int, required=True,
                        help="field order, a prime power")
    parser.add_argument("--modulus", type=_int_list, default=None,
                        help="irreducible polynomial, descending comma "
                             "separated coefficients (optional)")
    if m:
        parser.add_argument("--m", type=int, required=True,
                            help="block row count")
    parser.add_argument("--eta", type=int, required=True,
                        help="block column count")
    parser.add_argument("--ell", type=int, required=True,
                        help="number of blocks")


def _add_seed_flags(parser, trials_default=None, trials_help="trial count"):
    parser.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED,
                        help=f"master seed (default {DEFAULT_MASTER_SEED})")
    if trials_default is not None:
        parser.add_argument("--trials", type=int, default=trials_default,
                            help=f"{trials_help} (default {trials_default})")


# -- verb: volume ----------------------------------------------------------

def _run_volume(args):
    params = _space_of(args)
    r = args.r
    cfg = _space_config(params, r=r)
    records = []

    def add(name, value, exact=None):
        records.append(make_record("volume", name, value, cfg, exact=exact))

    sphere = counting.sphere_volume(params, r)
    ball = counting.ball_volume(params, r)
    add("sphere_volume", sphere)
    add("ball_volume", ball)
    s_lo, s_hi = counting.sphere_bounds_logq(params, r)
    b_lo, b_hi = counting.ball_bounds_logq(params, r)
    add("sphere_logq", float(counting.logq_int(sphere, params.q)))
    add("sphere_lower_logq", s_lo)
    add("sphere_upper_logq", s_hi)
    add("ball_logq", float(counting.logq_int(ball, params.q)))
    add("ball_lower_logq", b_lo)
    add("ball_upper_logq", b_hi)
    return records, 0


# -- verb: count-decomposable ----------------------------------------------

def _run_count_decomposable(args):
    field = _field_of(args)
    q = field.q
    eta, ell, w = args.eta, args.ell, args.w
    cfg = {"q": q, "eta": eta, "ell": ell, "w": w}
    records = []
    count = counting.decomposable_count(eta, ell, w, q)
    grass = counting.gaussian_binomial(eta * ell, w, q)
    lo, hi = counting.decomposable_bounds_logq(eta, ell, w, q)
    records.append(make_record("count-decomposable", "decomposable_count",
                               count, cfg))
    records.append(make_record("count-decomposable", "grassmannian_count",
                               grass, cfg))
    records.append(make_record("count-decomposable", "decomposable_logq",
                               float(counting.logq_int(count, q)), cfg))
    records.append(make_record("count-decomposable", "lower_logq", lo, cfg))
    records.append(make_record("count-decomposable", "upper_logq", hi, cfg))
    records.append(make_record("count-decomposable", "dominated",
                               count <= grass, cfg))
    return records, 0


# -- verb: capacity --------------------------------------------------------

def _capacity_records(q, b, rho, trial):
    cfg = {"q": q, "b": _frac_str(b), "rho": _frac_str(rho)}
    penalty = counting.capacity_penalty(rho, b)
    cap = 1 - penalty
    ent_cap = 1 - counting.q_ary_entropy(rho, q)
    singleton = 1 - rho
    recs = [
        make_record("capacity", "capacity", cap, cfg, trial=trial),
        make_record("capacity", "penalty", penalty, cfg, trial=trial),
        make_record("capacity", "entropy_capacity", ent_cap, cfg, trial=trial),
        make_record("capacity", "singleton", singleton, cfg, trial=trial),
    ]
    return recs


def _run_capacity(args):
    if args.b is not None:
        b = args.b
    elif args.m is not None and args.eta is not None:
        b = Fraction(args.eta, args.m)
    else:
        raise ValueError("capacity needs --b, or both --m and --eta")
    records = []
    if args.rho is not None:
        records.extend(_capacity_records(args.q, b, args.rho, trial=0))
    else:
        steps = args.grid
        for i in range(1, steps + 1):
            rho = Fraction(i, steps + 1)
            records.extend(_capacity_records(args.q, b, rho, trial=i - 1))
    return records, 0


# -- verb: verify ----------------------------------------------------------

def _verify_volumes(args):
    """Histogram brute force against the closed-form sphere volumes, every
    configuration with q^(m eta ell) below the cap."""
    records = []
    ok = True
    limit = 2 ** args.max_space_log
    for q in args.q_list:
        field = field_from_order(q)
        for m in range(1, args.max_space_log + 1):
            for eta in range(1, args.max_space_log + 1):
                for ell in range(1, args.max_space_log + 1):
                    if q ** (m * eta * ell) > limit:
                        continue
                    params = SpaceParams(field=field, m=m, eta=eta, ell=ell)
                    hist = metric.weight_histogram(params)
                    good = all(hist[r] == counting.sphere_volume(params, r)
                               for r in range(params.max_weight + 1))
                    ok = ok and good
                    records.append(make_record(
                        "verify", "volumes_pass", good,
                        _space_config(params)))
    return records, ok


def _verify_gb_bounds(args):
    records = []
    ok = True
    for q in args.q_list:
        for n in range(0, args.n_max + 1):
            for k in range(0, n + 1):
                good = counting.gaussian_binomial_bounds_ok(n, k, q)
                ok = ok and good
                records.append(make_record(
                    "verify", "gb_bounds_pass", good,
                    {"q": q, "n": n, "k": k}))
    return records, ok


def _verify_volume_bounds(args):
    records = []
    ok = True
    for q in args.q_list:
        field = field_from_order(q)
        for side in range(1, args.m_max + 1):
            for ell in range(1, args.ell_max + 1):
                params = SpaceParams(field=field, m=side, eta=side, ell=ell)
                for r in range(0, params.max_weight + 1):
                    good = (counting.sphere_bounds_ok(params, r)
                            and counting.ball_bounds_ok(params, r))
                    ok = ok and good
                    records.append(make_record(
                        "verify", "volume_bounds_pass", good,
                        _space_config(params, r=r)))
    return records, ok


def _verify_decomposable_bounds(args):
    records = []
    ok = True
    for q in args.q_list:
        for eta in range(1, args.eta_max + 1):
            for ell in range(1, args.ell_max + 1):
                for w in range(0, eta * ell + 1):
                    good = counting.decomposable_bounds_ok(eta, ell, w, q)
                    ok = ok and good
                    records.append(make_record(
                        "verify", "decomposable_bounds_pass", good,
                        {"q": q, "eta": eta, "ell": ell, "w": w}))
    return records, ok


def _verify_decomposable_dominance(args):
    records = []
    ok = True
    for q in args.q_list:
        for eta in range(1, args.eta_max + 1):
            for ell in range(1, args.ell_max + 1):
                for w in range(0, eta * ell + 1):
                    good = counting.decomposable_le_grassmannian(eta, ell, w, q)
                    ok = ok and good
                    records.append(make_record(
                        "verify", "decomposable_dominance_pass", good,
                        {"q": q, "eta": eta, "ell": ell, "w": w}))
    return records, ok


_VERIFY_TARGETS = {
    "volumes": _verify_volumes,
    "gb-bounds": _verify_gb_bounds,
    "volume-bounds": _verify_volume_bounds,
    "decomposable-bounds": _verify_decomposable_bounds,
    "decomposable-dominance": _verify_decomposable_dominance,
}


def _run_verify(args):
    targets = list(_VERIFY_TARGETS) if args.target == "all" else [args.target]
    records = []
    all_ok = True
    for name in targets:
        recs, ok = _VERIFY_TARGETS[name](args)
        records.extend(recs)
        all_ok = all_ok and ok
    return records, 0 if all_ok else 1


# -- verb: sample ----------------------------------------------------------

def _compact(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _run_sample(args):
    what = args.what
    seed = args.seed
    stream = RandomStream(seed, "sample", what)
    records = []

    def add(i, value, cfg):
        records.append(make_record("sample", what, value, cfg, trial=i,
                                   seed=seed))

    if what == "ball":
        params = _space_of(args)
        cfg = _space_config(params, radius=args.radius)
        for i in range(args.count):
            x = metric.sample_ball_uniform(params, args.radius,
                                           stream.child(i))
            add(i, metric.tuple_code(x), cfg)
    elif what == "rank-matrix":
        field = _field_of(args)
        cfg = {"q": field.q, "m": args.m, "eta": args.eta, "r": args.radius}
        for i in range(args.count):
            grid = metric.sample_uniform_matrix_of_rank(
                field, args.m, args.eta, args.radius, stream.child(i))
            add(i, metric.matrix_code(field.q, grid), cfg)
    elif what == "subspace":
        field = _field_of(args)
        cfg = {"q": field.q, "ambient": args.ambient, "dim": args.dim}
        for i in range(args.count):
            sub = linalg.sample_subspace(field, args.ambient, args.dim,
                                         stream.child(i))
            add(i, _compact(sub.to_json()), cfg)
    elif what == "decomposable":
        field = _field_of(args)
        cfg = {"q": field.q, "eta": args.eta, "ell": args.ell, "w": args.w}
        for i in range(args.count):
            sub = decomposable.sample_decomposable_uniform(
                field, args.eta, args.ell, args.w, stream.child(i))
            add(i, _compact(sub.to_json()), cfg)
    elif what == "linear-code":
        params = _space_of(args)
        cfg = _space_config(params, rate=_frac_str(args.rate))
        for i in range(args.count):
            code = codes.sample_linear_code(params, args.rate,
                                            stream.child(i))
            add(i, _compact(code.to_json()), cfg)
    elif what == "general-code":
        params = _space_of(args)
        cfg = _space_config(params, rate=_frac_str(args.rate))
        for i in range(args.count):
            code = codes.sample_general_code(params, args.rate,
                                             stream.child(i))
            add(i, _compact(code.to_json()), cfg)
    else:
        raise ValueError(f"unknown sample target {what!r}")
    return records, 0


# -- verb: experiment ------------------------------------------------------

def _estimate_records(verb, name, cfg, est, seed):
    recs = [
        make_record(verb, name, est.estimate, cfg,
                    ci=(est.ci_low, est.ci_high), trials=est.trials,
                    seed=seed),
        make_record(verb, "successes", est.successes, cfg,
                    trials=est.trials, seed=seed),
    ]
    if est.mean_value is not None:
        recs.append(make_record(verb, "mean_value", est.mean_value, cfg,
                                trials=est.trials, seed=seed))
    return recs


def _run_experiment(args):
    what = args.what
    seed = args.seed
    stream = RandomStream(seed, "experiment", what)
    if what == "correlation":
        params = _space_of(args)
        cfg = _space_config(params, rho=_frac_str(args.rho))
        center = None
        if args.center is not None:
            center = metric.tuple_from_code(params, args.center)
            cfg["center"] = args.center
        est = codes.correlation_estimate(params, args.rho, args.trials,
                                         stream, center=center)
        return _estimate_records("experiment", "correlation_probability",
                                 cfg, est, seed), 0
    if what == "dimension":
        field = _field_of(args)
        cfg = {"q": field.q, "eta": args.eta, "ell": args.ell,
               "wx": args.wx, "wy": args.wy}
        kwargs = {}
        if args.min_fraction is not None:
            kwargs["min_fraction"] = args.min_fraction
            cfg["min_fraction"] = _frac_str(args.min_fraction)
        if args.exact_dim is not None:
            kwargs["exact_dim"] = args.exact_dim
            cfg["exact_dim"] = args.exact_dim
        est = decomposable.intersection_dimension_estimate(
            field, args.eta, args.ell, args.wx, args.wy, args.trials,
            stream, **kwargs)
        return _estimate_records("experiment", "event_probability",
                                 cfg, est, seed), 0
    if what == "span-correlation":
        params = _space_of(args)
        cfg = _space_config(params, rho=_frac_str(args.rho),
                            gamma=args.gamma,
                            bound_factor=_frac_str(args.bound_factor))
        est = codes.limited_correlation_estimate(
            params, args.rho, args.gamma, args.bound_factor, args.trials,
            stream)
        return _estimate_records("experiment", "span_correlation_probability",
                                 cfg, est, seed), 0
    if what == "subset-event":
        params = _space_of(args)
        rows = tuple(tuple(int(c) for c in row.split(","))
                     for row in args.vectors.split(";") if row)
        cfg = _space_config(params, rho=_frac_str(args.rho),
                            vectors=args.vectors)
        est = codes.subset_span_event_estimate(params, args.rho, rows,
                                               args.trials, stream)
        return _estimate_records("experiment", "subset_event_probability",
                                 cfg, est, seed), 0
    if what == "list-size":
        return _run_list_size(args, stream)
    raise ValueError(f"unknown experiment {what!r}")


def _run_list_size(args, stream):
    """Sample linear codes at rate capacity - eps and tabulate exhaustive
    worst-case list sizes at radius floor(rho n)."""
    params = _space_of(args)
    seed = args.seed
    rho = args.rho
    rate = 1 - counting.capacity_penalty(rho, params.b) - args.eps
    if rate <= 0:
        raise ValueError(f"rate {rate} not positive; lower rho or eps")
    k = int(rate * params.total_dim)  # floor to an integral dimension
    rate_used = Fraction(k, params.total_dim)
    radius = codes.radius_for(params, rho)
    cfg = _space_config(params, rho=_frac_str(rho), eps=_frac_str(args.eps),
                        rate=_frac_str(rate_used), radius=radius)
    records = [
        make_record("experiment", "dimension", k, cfg, seed=seed),
        make_record("experiment", "radius", radius, cfg, seed=seed),
    ]
    sizes = {}
    for i in range(args.codes):
        code = codes.sample_linear_code(params, rate_used, stream.child(i))
        size, witness = codes.max_list_size(code, radius)
        sizes[size] = sizes.get(size, 0) + 1
        records.append(make_record("experiment", "max_list_size", size, cfg,
                                   trial=i, seed=seed))
        records.append(make_record("experiment", "witness_center",
                                   metric.tuple_code(witness), cfg, trial=i,
                                   seed=seed))
    for size in sorted(sizes):
        records.append(make_record(
            "experiment", f"codes_with_max_list_{size:04d}", sizes[size],
            cfg, seed=seed, trials=args.codes))
    return records, 0


# -- verb: chain -----------------------------------------------------------

def _run_chain(args):
    field = _field_of(args)
    seed = args.seed
    stream = RandomStream(seed, "chain")
    cfg = {"q": field.q, "gamma": args.gamma, "set_size": args.set_size,
           "c": args.c, "mode": args.mode}
    records = []
    achieved = 0
    for i in range(args.instances):
        inst = chains.random_chain_instance(field, args.gamma, args.set_size,
                                            args.c, stream.child(i))
        rep = chains.bound_attainment_report(
            inst, mode=args.mode, trials=args.shift_trials,
            rng=stream.child(i, "shift"))
        achieved += rep.achieved

        def add(name, value):
            records.append(make_record("chain", name, value, cfg, trial=i,
                                       seed=seed))
        add("bound", rep.bound)
        add("target", rep.target)
        add("greedy_length", rep.greedy_length)
        add("achieved", rep.achieved)
        add("exact_used", rep.exact_used)
        add("exact_length", rep.exact_length)
    records.append(make_record("chain", "instances_achieved", achieved, cfg,
                               seed=seed, trials=args.instances))
    return records, 0


# -- parser ----------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="sumrank",
        description="Sum-rank metric volumes, random codes, and seeded "
                    "experiments.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("volume", help="exact sphere and ball volumes with "
                                      "log-domain bounds")
    _add_space_flags(p)
    p.add_argument("--r", type=int, required=True, help="radius")
    _add_output_flags(p)

    p = sub.add_parser("count-decomposable",
                       help="product-subspace counts, bounds, and the "
                            "Grassmannian comparison")
    _add_space_flags(p, m=False)
    p.add_argument("--w", type=int, required=True, help="total dimension")
    _add_output_flags(p)

    p = sub.add_parser("capacity",
                       help="list-decoding capacity against entropy and "
                            "Singleton style baselines")
    p.add_argument("--q", type=int, default=2, help="field order (default 2)")
    p.add_argument("--b", type=_fraction, default=None,
                   help="shape ratio eta/m as a fraction")
    p.add_argument("--m", type=int, default=None, help="block rows")
    p.add_argument("--eta", type=int, default=None, help="block columns")
    p.add_argument("--rho", type=_fraction, default=None,
                   help="single relative radius in (0,1)")
    p.add_argument("--grid", type=int, default=19,
                   help="interior grid points i/(grid+1) when --rho absent")
    _add_output_flags(p)

    p = sub.add_parser("verify", help="exact and log-domain bound sweeps; "
                                      "exit 1 when any check fails")
    p.add_argument("target", choices=sorted(_VERIFY_TARGETS) + ["all"])
    p.add_argument("--q-list", type=_int_list, default=[2, 3],
                   help="field orders to sweep (default 2,3)")
    p.add_argument("--max-space-log", type=int, default=12,
                   help="volumes: cap q^(m eta ell) at 2^this (default 12)")
    p.add_argument("--n-max", type=int, default=8,
                   help="gb-bounds: largest n (default 8)")
    p.add_argument("--m-max", type=int, default=4,
                   help="volume-bounds: largest m = eta (default 4)")
    p.add_argument("--ell-max", type=int, default=4,
                   help="largest block count (default 4)")
    p.add_argument("--eta-max", type=int, default=6,
                   help="decomposable sweeps: largest eta (default 6)")
    _add_output_flags(p)

    p = sub.add_parser("sample", help="seeded draws from the exact samplers")
    p.add_argument("what", choices=("ball", "rank-matrix", "subspace",
                                    "decomposable", "linear-code",
                                    "general-code"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_int_list, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--eta", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--r", "--radius", dest="radius", type=int, default=None,
                   help="radius (ball) or rank (rank-matrix)")
    p.add_argument("--w", type=int, default=None,
                   help="decomposable total dimension")
    p.add_argument("--ambient", type=int, default=None,
                   help="subspace: ambient dimension")
    p.add_argument("--dim", type=int, default=None,
                   help="subspace: subspace dimension")
    p.add_argument("--rate", type=_fraction, default=None,
                   help="code rate as a fraction")
    p.add_argument("--count", type=int, default=1, help="number of draws")
    _add_seed_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("experiment", help="Monte Carlo estimators with "
                                          "Wilson intervals")
    p.add_argument("what", choices=("correlation", "dimension",
                                    "span-correlation", "subset-event",
                                    "list-size"))
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_int_list, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--eta", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--rho", type=_fraction, default=None,
                   help="relative radius in (0,1)")
    p.add_argument("--center", type=int, default=None,
                   help="correlation: center point code (default zero)")
    p.add_argument("--wx", type=int, default=None,
                   help="dimension: first total dimension")
    p.add_argument("--wy", type=int, default=None,
                   help="dimension: second total dimension")
    p.add_argument("--min-fraction", type=_fraction, default=None,
                   help="dimension: event dim >= ceil(fraction * wx)")
    p.add_argument("--exact-dim", type=int, default=None,
                   help="dimension: event dim == this")
    p.add_argument("--gamma", type=int, default=None,
                   help="span-correlation: number of draws per trial")
    p.add_argument("--bound-factor", type=_fraction, default=None,
                   help="span-correlation: threshold factor on gamma")
    p.add_argument("--vectors", default=None,
                   help="subset-event: rows like 1,0;0,1;1,1")
    p.add_argument("--eps", type=_fraction, default=None,
                   help="list-size: capacity gap")
    p.add_argument("--codes", type=int, default=100,
                   help="list-size: number of sampled codes (default 100)")
    _add_seed_flags(p, trials_default=10000)
    _add_output_flags(p)

    p = sub.add_parser("chain", help="support-chain bound attainment on "
                                     "random vector sets")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus", type=_int_list, default=None)
    p.add_argument("--gamma", type=int, required=True,
                   help="ambient vector length")
    p.add_argument("--set-size", type=int, required=True,
                   help="vectors per instance")
    p.add_argument("--c", type=int, default=2,
                   help="required new support per step (default 2)")
    p.add_argument("--instances", type=int, default=100,
                   help="random instances (default 100)")
    p.add_argument("--mode", choices=("exhaustive", "random"),
                   default="exhaustive", help="shift search mode")
    p.add_argument("--shift-trials", type=int, default=None,
                   help="random mode: shifts to try")
    _add_seed_flags(p)
    _add_output_flags(p)
    return parser


_RUNNERS = {
    "volume": _run_volume,
    "count-decomposable": _run_count_decomposable,
    "capacity": _run_capacity,
    "verify": _run_verify,
    "sample": _run_sample,
    "experiment": _run_experiment,
    "chain": _run_chain,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        records, status = _RUNNERS[args.verb](args)
    except GuardError as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.timing:
        elapsed = _sig12(time.monotonic() - started)
        for rec in records:
            rec["runtime"] = elapsed
    emit(records, args.format, args.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
