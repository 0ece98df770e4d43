"""Command-line driver: run configured experiments, sweep them, report checks.

Exit codes: 0 ok, 1 failed checks (report/acceptance), 2 config error,
3 domain error, 4 numerical failure.
"""
import argparse
import copy
import csv
import itertools
import json
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np
import yaml
from scipy.interpolate import CubicSpline

from . import acceptance, genfunc, stationary, subspace, szego
from .errors import DomainError
from .integrate import IntegrationError, IntegratorConfig, conservation_drift, integrate
from .resonant import charge_monitor, charges, flow_rhs
from .validator import TailOverflowError, time_map_deviation, validate_averaging

log = logging.getLogger("conflow")

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


class _Loader(yaml.SafeLoader):
    """YAML loader that also reads ``1e-9`` (no decimal point) as a float."""


_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(r"^[-+]?(?:[0-9][0-9_]*)(?:\.[0-9_]*)?[eE][-+]?[0-9]+$"),
    list("-+0123456789"),
)


def parse_yaml(text):
    return yaml.load(text, Loader=_Loader)


# -- configuration -----------------------------------------------------------


def load_schema():
    return json.loads(resources.files("conflow").joinpath("config_schema.json").read_text())


def apply_override(cfg, item):
    """Set ``a.b.c=value`` in a nested dict; the value is parsed as YAML."""
    if "=" not in item:
        raise ConfigError(f"override {item!r} is not KEY=VALUE")
    key, raw = item.split("=", 1)
    try:
        value = parse_yaml(raw)
    except yaml.YAMLError as exc:
        raise ConfigError(f"override {item!r}: {exc}") from exc
    parts = key.strip().split(".")
    if parts[0] == "checks" and len(parts) > 2:
        # check names are dotted result paths
        parts = ["checks", ".".join(parts[1:])]
    node = cfg
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"override {key!r} descends into a non-mapping")
    node[parts[-1]] = value
    return cfg


def load_config(path, overrides=()):
    try:
        with open(path) as fh:
            cfg = parse_yaml(fh) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a mapping")
    for item in overrides:
        apply_override(cfg, item)
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {where}: {exc.message}") from exc


def to_complex(v):
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    if isinstance(v, str):
        try:
            return complex(v.replace(" ", ""))
        except ValueError as exc:
            raise ConfigError(f"cannot parse complex number {v!r}") from exc
    return complex(v)


def integrator_config(cfg, sample_interval, **defaults):
    tol = {**defaults, **cfg.get("tolerances", {})}
    return IntegratorConfig(sample_interval=cfg.get("sample_interval", sample_interval), **tol)


def initial_modes(cfg, N=None):
    init = cfg.get("initial", {"amplitudes": [1, 1]})
    if "amplitudes" in init:
        alpha = np.array([to_complex(v) for v in init["amplitudes"]], dtype=complex)
    elif "random" in init:
        r = init["random"]
        rng = np.random.default_rng(r.get("seed", 0))
        alpha = acceptance.random_modes(r["modes"], rng, r.get("norm", 1.0))
    elif "subspace" in init:
        alpha = subspace.lift(subspace_state(init["subspace"]), N or 64)
    elif "pole" in init:
        alpha = pole_state(init["pole"]).modes(N or 64)
    elif "two_mode" in init:
        alpha = szego.SzegoPoleState(1.0, 2 * init["two_mode"]["epsilon"], 0.0).modes(N or 64)
    else:
        raise ConfigError(f"initial data {sorted(init)} not usable here")
    if N is not None:
        if alpha.size > N:
            raise ConfigError(f"initial data has {alpha.size} modes, truncation N={N}")
        alpha = np.pad(alpha, (0, N - alpha.size))
    return alpha


def subspace_state(d):
    return subspace.SubspaceState(to_complex(d["b"]), to_complex(d["a"]), to_complex(d["p"]))


def pole_state(d):
    return szego.SzegoPoleState(to_complex(d["a"]), to_complex(d["b"]), to_complex(d["p"]))


# -- output ------------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def write_json(path, data):
    Path(path).write_text(json.dumps(_plain(data), indent=2, sort_keys=True) + "\n")


def write_trajectory(path, times, states):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "n", "re", "im", "abs2"])
        for t, row in zip(times, states):
            for n, a in enumerate(row):
                w.writerow([repr(float(t)), n, repr(float(a.real)), repr(float(a.imag)), repr(float(abs(a) ** 2))])


def write_table(path, columns, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(columns)
        for row in rows:
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


def write_charges(path, times, log_):
    keys = list(log_)
    write_table(path, ["t", *keys], [[t, *(log_[k][i] for k in keys)] for i, t in enumerate(times)])


# -- experiments ---------------------------------------------------------------


def run_evolve(cfg, out):
    if "family" in cfg.get("initial", {}):
        raise ConfigError("use the stationary experiment for named families")
    alpha0 = initial_modes(cfg, cfg.get("N"))
    t_end = cfg.get("t_end", 10.0)
    icfg = integrator_config(cfg, 0.1)
    traj = integrate(flow_rhs, alpha0, t_end, icfg, monitor=charge_monitor)
    write_trajectory(out / "trajectory.csv", traj.times, traj.states)
    write_charges(out / "charges.csv", traj.times, traj.charges)
    power = np.abs(traj.states) ** 2
    total = power.sum(axis=1)
    tail = np.divide(power[:, -1], total, out=np.zeros_like(total), where=total > 0)
    return {
        "N": alpha0.size,
        "t_end": t_end,
        "drift": conservation_drift(traj),
        "initial_charges": charges(alpha0)._asdict(),
        "final_charges": charges(traj.final)._asdict(),
        "max_tail_fraction": float(tail.max()),
    }


def measured_period(times, y, level):
    """Mean spacing of upward crossings of ``level``, from a cubic spline of samples."""
    spline = CubicSpline(times, y - level)
    ups = [t for t in spline.roots(extrapolate=False) if spline(t, 1) > 0]
    if len(ups) < 2:
        return None
    return float(np.mean(np.diff(ups)))


def run_subspace(cfg, out):
    init = cfg.get("initial", {})
    if "subspace" not in init:
        raise ConfigError("subspace experiment needs initial.subspace")
    s0 = subspace_state(init["subspace"])
    N = cfg.get("N", 64)
    osc = subspace.oscillation_of(s0)
    moving = osc.A > 0
    t_end = cfg.get("t_end", cfg.get("periods", 3) * osc.period if moving else 1.0)
    icfg = integrator_config(cfg, osc.period / 200, rel_tol=1e-12, abs_tol=1e-12)
    traj = integrate(subspace.subspace_rhs_array, s0.as_array(), t_end, icfg)
    states = [subspace.SubspaceState.from_array(z) for z in traj.states]
    ch = [subspace.subspace_charges(s) for s in states]
    log_ = {k: np.array([getattr(c, k) for c in ch]) for k in ("Q", "E", "S", "H")}
    write_charges(out / "charges.csv", traj.times, log_)
    write_trajectory(out / "trajectory.csv", traj.times, [subspace.lift(s, N) for s in states])
    y = np.array([s.y for s in states])
    y_cf = osc(traj.times)
    ref = ch[0]
    lifted_H = charges(subspace.lift(s0, max(N, 400))).H
    period_meas = measured_period(traj.times, y, osc.B) if moving else None
    return {
        "Omega": osc.Omega,
        "period": osc.period,
        "measured_period": period_meas,
        "period_error": abs(period_meas - osc.period) / osc.period if period_meas else None,
        "y_minus": osc.y_minus,
        "y_plus": osc.y_plus,
        "cascade_ratio": osc.cascade_ratio,
        "y_closed_form_error": float(np.max(np.abs(y - y_cf)) / max(np.max(np.abs(y_cf)), 1e-300)),
        "charges": ref._asdict(),
        "drift": {k: float(np.max(np.abs(v - v[0])) / max(abs(v[0]), 1e-12)) for k, v in log_.items()},
        "H_identity_error": abs(lifted_H - (ref.Q**2 - 2 * ref.S**2)) / max(abs(lifted_H), 1e-300),
    }


def build_stationary(fam, size):
    name = fam["name"]
    c = to_complex(fam.get("c", 1.0))
    p = to_complex(fam.get("p", 0.0))
    poles = [to_complex(v) for v in fam.get("poles", [])]
    if name == "one_mode":
        return stationary.one_mode(fam.get("mode", 0), c, size=size), stationary.residual
    if name == "a0":
        return stationary.family_a0(c, p, size), stationary.residual
    if name == "omega0":
        return stationary.family_omega0(c, p, size), stationary.residual
    if name == "pm":
        return stationary.family_pm(c, p, fam.get("branch", 1), size), stationary.residual
    if name == "blaschke":
        return stationary.blaschke_state(c, poles, size), stationary.residual
    if name == "decimated":
        return stationary.decimated_state(c, p, fam.get("N", 2), size), stationary.residual
    if name == "szego_blaschke":
        return szego.szego_stationary("blaschke", size, c=c, poles=poles)[0], szego.szego_residual
    N = fam.get("N", 2)
    st, _ = szego.szego_stationary("decimated", size, c=c, p=p, N=N, shift=fam.get("shift", N - 1))
    return st, szego.szego_residual


def run_stationary(cfg, out):
    init = cfg.get("initial", {})
    if "family" not in init:
        raise ConfigError("stationary experiment needs initial.family")
    size = cfg.get("N", stationary.DEFAULT_SIZE)
    st, residual_fn = build_stationary(init["family"], size)
    is_szego = init["family"]["name"].startswith("szego")
    result = {
        "lam": st.lam,
        "omega": st.omega,
        "residual": residual_fn(st),
        "tail_bound": stationary.tail_bound(st),
        "zeros": st.zeros,
    }
    if is_szego:
        result["charges"] = szego.szego_charges(st.amplitudes)._asdict()
    else:
        result["charges"] = charges(st.amplitudes)._asdict()
        if st.omega == 0 and st.zeros is not None:
            result["quantization_error"] = abs(stationary.zero_count_quantization(st) - st.lam) / max(abs(st.lam), 1e-300)
    t_end = cfg.get("t_end", 0.0)
    if t_end > 0:
        rhs, mon = (szego.szego_rhs, szego.szego_monitor) if is_szego else (flow_rhs, charge_monitor)
        traj = integrate(rhs, st.amplitudes, t_end, integrator_config(cfg, 0.1), monitor=mon)
        write_trajectory(out / "trajectory.csv", traj.times, traj.states)
        write_charges(out / "charges.csv", traj.times, traj.charges)
        exact = np.array([st.at(t) for t in traj.times])
        result["max_deviation_from_rotation"] = float(np.max(np.abs(traj.states - exact)))
        result["drift"] = conservation_drift(traj)
    return result


def run_szego(cfg, out):
    init = cfg.get("initial", {"two_mode": {"epsilon": 1.0}})
    N = cfg.get("N", 64)
    alpha0 = initial_modes({"initial": init}, N)
    t_end = cfg.get("t_end", 20.0)
    icfg = integrator_config(cfg, 0.1, rel_tol=1e-12, abs_tol=1e-12)
    traj = integrate(szego.szego_rhs, alpha0, t_end, icfg, monitor=szego.szego_monitor)
    write_trajectory(out / "trajectory.csv", traj.times, traj.states)
    write_charges(out / "charges.csv", traj.times, traj.charges)
    result = {"N": N, "t_end": t_end, "drift": conservation_drift(traj)}
    if "two_mode" in init:
        eps = init["two_mode"]["epsilon"]
        inst = szego.two_mode_instability(eps)
        result.update(omega=inst.omega, sup_p=inst.sup_p, t_peak=inst.t_peak)
        data = (1.0, 2 * eps, 0.0)
    elif "pole" in init:
        s = pole_state(init["pole"])
        data = (s.a, s.b, s.p) if all(np.imag(v) == 0 for v in (s.a, s.b, s.p)) else None
    else:
        data = None
    if data is not None:
        err = max(
            np.max(np.abs(y - szego.single_pole_solution(*data, t).modes(N))) for t, y in zip(traj.times, traj.states)
        )
        result["closed_form_error"] = float(err)
        result["pole_frequency"] = float(szego.pole_frequency(*(float(np.real(v)) for v in data)))
    return result


def run_validate(cfg, out):
    alpha0 = initial_modes(cfg)
    eps_list = cfg.get("epsilons", [0.1, 0.05])
    for eps in eps_list:
        if eps > 0.2:
            raise DomainError(f"epsilon {eps} exceeds 0.2")
    N = cfg.get("N", 32)
    horizon = cfg.get("horizon", 1.0)
    vcfg = integrator_config(cfg, 0.05, rel_tol=1e-11, abs_tol=1e-13)
    reports = [validate_averaging(alpha0, eps, horizon, N, vcfg) for eps in eps_list]
    rows = [(t, r.epsilon, e) for r in reports for t, e in zip(r.times, r.error_history)]
    write_table(out / "errors.csv", ["t", "epsilon", "error"], rows)
    errors = [r.error for r in reports]
    ch = subspace.two_mode_charges(*alpha0[:2]) if np.count_nonzero(alpha0[2:]) == 0 and alpha0.size >= 2 else None
    tau_end = 2 * np.pi / (np.sqrt(ch.Q**2 + 12 * ch.S**2) / 6) / 1.5 if ch and ch.Q > 0 else 1.0
    return {
        "N": N,
        "horizon": horizon,
        "epsilons": eps_list,
        "errors": errors,
        "scaled_errors": [r.scaled_error for r in reports],
        "ratios": [b / a if a else None for a, b in zip(errors, errors[1:])],
        "energy_drift": [r.energy_drift for r in reports],
        "tail_fraction": [r.tail_fraction for r in reports],
        "time_map_deviation": time_map_deviation(np.pad(alpha0, (0, max(0, N - alpha0.size))), tau_end),
    }


def run_sums(cfg, out):
    sc = cfg.get("sums", {})
    n_max = sc.get("n_max", 10)
    rhos = sc.get("rhos", [0.1, 0.25, 0.5])
    rows, worst = [], 0.0
    for n in range(n_max + 1):
        for rho in rhos:
            closed = genfunc.appendix_sums(n, rho)
            brute = genfunc.appendix_sums_brute(n, rho, tol=1e-16)
            for i, (c, b) in enumerate(zip(closed, brute)):
                rows.append((n, rho, i + 1, c, b))
                worst = max(worst, abs(c - b) / max(abs(c), 1e-300))
    write_table(out / "sums.csv", ["n", "rho", "formula", "closed", "brute"], rows)
    grid = np.round(np.arange(1, 10) * 0.1, 10)
    master = max(
        abs(genfunc.master_sum_brute(r, th, n, tol=1e-16) - genfunc.master_sum(r, th, n)) / abs(genfunc.master_sum(r, th, n))
        for n in range(n_max + 1)
        for r in grid
        for th in grid
    )
    rng = np.random.default_rng(sc.get("seed", 0))
    samples = sc.get("contour_samples", 512)
    contour = 0.0
    for _ in range(sc.get("contour_states", 10)):
        a = acceptance.random_modes(8, rng)
        contour = max(contour, float(np.max(np.abs(genfunc.rhs_via_contour(a, samples) - flow_rhs(a)))))
    return {
        "appendix_max_rel_error": worst,
        "master_max_rel_error": float(master),
        "contour_max_error": contour,
        "divisibility_failures": acceptance.divisibility_failures(min(n_max, 20)),
    }


EXPERIMENTS = {
    "evolve": run_evolve,
    "subspace": run_subspace,
    "stationary": run_stationary,
    "szego": run_szego,
    "validate": run_validate,
    "sums": run_sums,
}


def _lookup(results, dotted):
    node = results
    for part in dotted.split("."):
        if not isinstance(node, dict) or part not in node:
            return None
        node = node[part]
    return node


def config_checks(cfg, results):
    """``checks: {result.key: limit}`` entries become ``value <= limit`` checks."""
    out = []
    for key, limit in sorted(cfg.get("checks", {}).items()):
        value = _lookup(results, key)
        value = float("nan") if value is None else float(value)
        c = acceptance.Check(key, value, limit)
        out.append(dict(name=key, value=value, limit=limit, kind="max", upper=None, passed=c.passed))
    return out


def execute(cfg, out):
    """Run one validated config, writing artifacts into ``out``; returns the summary."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    kind = cfg["experiment"]
    log.info("running %s into %s", kind, out)
    results = EXPERIMENTS[kind](cfg, out)
    summary = {"experiment": kind, "config": cfg, "results": results, "checks": config_checks(cfg, results)}
    write_json(out / "summary.json", summary)
    return summary


def guarded(fn, *args):
    """Call ``fn`` and translate failures into exit codes."""
    try:
        fn(*args)
    except DomainError as exc:
        log.error("domain error: %s", exc)
        return EXIT_DOMAIN
    except (IntegrationError, TailOverflowError, genfunc.ContourResolutionError, FloatingPointError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, KeyError) as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    return EXIT_OK


# -- commands ----------------------------------------------------------------


def cmd_run(args):
    try:
        cfg = load_config(args.config, args.override)
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    return guarded(execute, cfg, args.out)


def _sweep_one(job):
    cfg, out = job
    logging.basicConfig(level=_log_level())
    return guarded(execute, cfg, out)


def cmd_sweep(args):
    try:
        base = load_config(args.config, args.override)
        axes = []
        for item in args.vary:
            key, _, raw = item.partition("=")
            if not raw:
                raise ConfigError(f"--vary {item!r} is not KEY=V1,V2,...")
            axes.append([f"{key}={v}" for v in raw.split(",")])
        jobs, index = [], []
        for i, combo in enumerate(itertools.product(*axes) if axes else [()]):
            cfg = copy.deepcopy(base)
            for item in combo:
                apply_override(cfg, item)
            validate_config(cfg)
            run_dir = Path(args.out) / f"run_{i:03d}"
            jobs.append((cfg, run_dir))
            index.append({"run": run_dir.name, "overrides": list(combo)})
    except ConfigError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG
    Path(args.out).mkdir(parents=True, exist_ok=True)
    if args.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            codes = list(pool.map(_sweep_one, jobs))
    else:
        codes = [guarded(execute, cfg, out) for cfg, out in jobs]
    for entry, code in zip(index, codes):
        entry["exit_code"] = code
    write_json(Path(args.out) / "sweep.json", {"runs": index})
    return max(codes, default=EXIT_OK)


REPORT_COLUMNS = ["source", "criterion", "check", "value", "limit", "status"]


def collect_rows(path):
    data = json.loads(Path(path).read_text())
    rows = []
    if "criteria" in data:
        for crit in data["criteria"]:
            for c in crit["checks"]:
                rows.append((path, str(crit["criterion"]), c["name"], c["value"], _limit_text(c), c["passed"]))
            if crit["runtime"] > crit["time_limit"]:
                rows.append((path, str(crit["criterion"]), "runtime_s", crit["runtime"], f"<= {crit['time_limit']:g}", False))
    else:
        for c in data.get("checks", []):
            rows.append((path, c.get("criterion", data.get("experiment", "-")), c["name"], c["value"], _limit_text(c), c["passed"]))
    return rows


def _limit_text(c):
    if c.get("kind", "max") == "max":
        return f"<= {c['limit']:g}"
    if c["kind"] == "min":
        return f">= {c['limit']:g}"
    return f"in [{c['limit']:g}, {c['upper']:g}]"


def cmd_report(args):
    rows = []
    try:
        for path in args.summaries:
            rows.extend(collect_rows(path))
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        log.error("cannot read summary: %s", exc)
        return EXIT_CONFIG
    lines = ["\t".join(REPORT_COLUMNS)]
    for src, crit, name, value, limit, ok in rows:
        lines.append("\t".join([str(src), crit, name, repr(float(value)), limit, "PASS" if ok else "FAIL"]))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    failed = sorted({f"{crit}: {name}" for _, crit, name, _, _, ok in rows if not ok})
    if failed:
        sys.stderr.write("failing: " + "; ".join(failed) + "\n")
        return EXIT_FAILED
    return EXIT_OK


def cmd_acceptance(args):
    numbers = sorted(set(args.criterion or acceptance.CRITERIA))
    unknown = [k for k in numbers if k not in acceptance.CRITERIA]
    if unknown:
        log.error("unknown criteria %s", unknown)
        return EXIT_CONFIG
    if args.threads > 1 and len(numbers) > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(acceptance.run_criterion, numbers))
    else:
        results = [acceptance.run_criterion(k) for k in numbers]
    for r in results:
        print(r.line())
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        write_json(Path(args.out) / "acceptance.json", {"criteria": [r.to_dict() for r in results]})
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def _log_level():
    return getattr(logging, os.getenv("CONFLOW_LOG", "WARNING").upper(), logging.WARNING)


def build_parser():
    parser = argparse.ArgumentParser(prog="conflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_default):
        p.add_argument("--config", required=True, help="YAML run configuration")
        p.add_argument("--out", default=out_default, help="output directory")
        p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE", help="set a config key (repeatable)")
        p.add_argument("--threads", type=int, default=1, help="worker processes")

    p = sub.add_parser("run", help="run one experiment")
    common(p, "conflow-out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="run the Cartesian product of --vary values")
    common(p, "conflow-sweep")
    p.add_argument("--vary", action="append", default=[], metavar="KEY=V1,V2", help="values for one key (repeatable)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="tabulate checks from summary files")
    p.add_argument("summaries", nargs="+")
    p.add_argument("--out", help="also write the table here")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("acceptance", help="run acceptance criteria")
    p.add_argument("--criterion", type=int, action="append", help="criterion number (repeatable; default all)")
    p.add_argument("--out", help="directory for acceptance.json")
    p.add_argument("--threads", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_acceptance)
    return parser


def main(argv=None):
    logging.basicConfig(level=_log_level(), format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        log.error("--threads must be >= 1")
        return EXIT_CONFIG
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
