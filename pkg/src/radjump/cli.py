"""Declarative experiment runner.

`radjump run config.json` ingests a JSON experiment config, runs the
certificate battery over the declared profiles, and writes deterministic
CSV/JSON reports.  Exit status: 0 when every certificate passes, 2 when any
certificate fails, 1 on configuration or numerical errors.

Config schema (defaults in parentheses):

    {
      "profiles":  [ {"name": str, "profile": <literal>} | <literal>, ... ],
      "checks":    ["all"] or a list of check names        (["all"])
      "epsilons":  positive reals for the per-eps checks   ([0.5, 1.0, 2.0])
      "lsi_epsilons": grid for the LsiNoReg sup            ([0.25,0.5,1,2,4])
      "t_grid":    OU times for ChiMoment                  ([0.1, 0.5, 1.0])
      "quadrature": {"radial_panels": int, "radial_order": int,
                     "angular_order": int, "w2_nodes": int}  (library defaults)
      "mc":        {"samples": int, "seed": int}           ({0, 0})
      "output":    {"csv": path, "json": path}             (none)
    }

Profile literals are `{"type": "gaussian_mixture", "d", "weights",
"variances"}` or `{"type": "tabulated", "d", "r", "phi", "interp_order"}`.

`radjump corpus --seed S` prints the bundled corpus experiment config;
`radjump eval profile.json --functional h|J|D|I|N` prints one number.
The environment variable RADJUMP_PRECISION in {double, extended} selects the
accumulation precision used by the quadrature and constant assembly.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bounds import DEFAULT_EPS_GRID, LSI_EPS_GRID, run_battery
from .certificates import CHECK_NAMES
from .corpus import corpus
from .errors import ConfigError, RadjumpError
from .functionals import evaluate_functionals
from .radial_core import DEFAULT_SCHEME, QuadratureScheme, profile_from_literal
from .report import write_reports

__all__ = ["ExperimentConfig", "parse_config", "run_experiment", "main"]


@dataclass
class ExperimentConfig:
    profiles: list  # (name, literal) pairs
    checks: tuple = ("all",)
    epsilons: tuple = DEFAULT_EPS_GRID
    lsi_epsilons: tuple = LSI_EPS_GRID
    t_grid: tuple = (0.1, 0.5, 1.0)
    scheme: QuadratureScheme = None
    mc_samples: int = 0
    mc_seed: int = 0
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    raw: dict = field(default_factory=dict)


def _positive_reals(cfg, key, default):
    vals = cfg.get(key)
    if vals is None:
        return tuple(default)
    if not isinstance(vals, list) or not vals:
        raise ConfigError(f"{key}: expected a nonempty array of positive reals")
    out = []
    for i, x in enumerate(vals):
        if not isinstance(x, (int, float)) or isinstance(x, bool) or not x > 0:
            raise ConfigError(f"{key}[{i}]: expected a positive real, got {x!r}")
        out.append(float(x))
    return tuple(out)


def _int_field(obj, key, default, minimum, where):
    val = obj.get(key, default)
    if not isinstance(val, int) or isinstance(val, bool) or val < minimum:
        raise ConfigError(f"{where}.{key}: expected an integer >= {minimum}, got {val!r}")
    return val


def parse_config(cfg: dict) -> ExperimentConfig:
    if not isinstance(cfg, dict):
        raise ConfigError(f"config root: expected an object, got {type(cfg).__name__}")
    profiles_raw = cfg.get("profiles")
    if not isinstance(profiles_raw, list) or not profiles_raw:
        raise ConfigError("profiles: expected a nonempty array")
    profiles = []
    for i, entry in enumerate(profiles_raw):
        where = f"profiles[{i}]"
        if not isinstance(entry, dict):
            raise ConfigError(f"{where}: expected an object")
        if "profile" in entry:
            name = entry.get("name")
            if not isinstance(name, str) or not name:
                raise ConfigError(f"{where}.name: expected a nonempty string")
            literal, where = entry["profile"], f"{where}.profile"
        else:
            literal, name = entry, None
        profile_from_literal(literal, where=where)  # validate eagerly, with field paths
        profiles.append((name, literal))

    checks = cfg.get("checks", ["all"])
    if not isinstance(checks, list) or not checks:
        raise ConfigError("checks: expected a nonempty array of check names")
    valid = set(CHECK_NAMES) | {"all"}
    for i, name in enumerate(checks):
        if name not in valid:
            raise ConfigError(
                f"checks[{i}]: unknown check {name!r}; valid: {', '.join(sorted(valid))}"
            )

    scheme = None
    quad = cfg.get("quadrature")
    if quad is not None:
        if not isinstance(quad, dict):
            raise ConfigError("quadrature: expected an object")
        scheme = QuadratureScheme(
            radial_panels=_int_field(quad, "radial_panels", DEFAULT_SCHEME.radial_panels, 4, "quadrature"),
            radial_order=_int_field(quad, "radial_order", DEFAULT_SCHEME.radial_order, 6, "quadrature"),
            angular_order=_int_field(quad, "angular_order", DEFAULT_SCHEME.angular_order, 4, "quadrature"),
            w2_nodes=_int_field(quad, "w2_nodes", DEFAULT_SCHEME.w2_nodes, 64, "quadrature"),
        )

    mc = cfg.get("mc", {})
    if not isinstance(mc, dict):
        raise ConfigError("mc: expected an object with samples/seed")
    mc_samples = _int_field(mc, "samples", 0, 0, "mc")
    mc_seed = _int_field(mc, "seed", 0, 0, "mc")

    output = cfg.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError("output: expected an object with csv/json paths")
    for key in ("csv", "json"):
        if key in output and (not isinstance(output[key], str) or not output[key]):
            raise ConfigError(f"output.{key}: expected a nonempty path string")

    return ExperimentConfig(
        profiles=profiles,
        checks=tuple(checks),
        epsilons=_positive_reals(cfg, "epsilons", DEFAULT_EPS_GRID),
        lsi_epsilons=_positive_reals(cfg, "lsi_epsilons", LSI_EPS_GRID),
        t_grid=_positive_reals(cfg, "t_grid", (0.1, 0.5, 1.0)),
        scheme=scheme,
        mc_samples=mc_samples,
        mc_seed=mc_seed,
        csv_path=output.get("csv"),
        json_path=output.get("json"),
        raw=cfg,
    )


def _battery_for(entry, cfg: ExperimentConfig):
    name, literal = entry
    scheme = cfg.scheme or DEFAULT_SCHEME
    profile = profile_from_literal(literal, scheme=scheme)
    certs = run_battery(
        profile,
        checks=cfg.checks,
        eps_grid=cfg.epsilons,
        lsi_eps_grid=cfg.lsi_epsilons,
        t_grid=cfg.t_grid,
        scheme=cfg.scheme,
        mc_samples=cfg.mc_samples,
        mc_seed=cfg.mc_seed,
    )
    report = evaluate_functionals(profile, scheme=cfg.scheme)
    display = name or f"{literal.get('type')}_{profile.profile_id[:6]}"
    return display, profile, certs, report


def run_experiment(cfg: ExperimentConfig, jobs: int = 1):
    """Run the battery for every configured profile, in declared order."""
    if jobs <= 1 or len(cfg.profiles) <= 1:
        results = [_battery_for(entry, cfg) for entry in cfg.profiles]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(lambda e: _battery_for(e, cfg), cfg.profiles))
    certs = [c for _, _, batch, _ in results for c in batch]
    named_profiles = [(display, prof) for display, prof, _, _ in results]
    profile_rows = [
        {"name": display, "profile_id": prof.profile_id, "d": prof.dim}
        for display, prof in named_profiles
    ]
    functional_rows = [rep.to_json_dict() for _, _, _, rep in results]
    return certs, named_profiles, profile_rows, functional_rows


def _cmd_run(args) -> int:
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
    except OSError as exc:
        print(f"config error: cannot read {args.config}: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"config error: {args.config} line {exc.lineno}: {exc.msg}", file=sys.stderr)
        return 1
    cfg = parse_config(raw)
    if args.csv:
        cfg.csv_path = args.csv
    if args.json:
        cfg.json_path = args.json
    certs, named_profiles, profile_rows, functional_rows = run_experiment(cfg, jobs=args.jobs)
    write_reports(
        certs,
        csv_path=cfg.csv_path,
        json_path=cfg.json_path,
        profiles=profile_rows,
        config=cfg.raw,
        functionals=functional_rows,
    )
    if args.figures:
        from .figures import render_figures

        render_figures(certs, named_profiles, args.figures)
    n_fail = sum(1 for c in certs if not c.passed)
    print(f"{len(certs)} certificates, {len(certs) - n_fail} passed, {n_fail} failed")
    return 2 if n_fail else 0


def _cmd_corpus(args) -> int:
    cfg = {
        "profiles": corpus(args.seed),
        "checks": ["all"],
        "epsilons": [0.5, 1.0, 2.0],
        "lsi_epsilons": list(LSI_EPS_GRID),
        "t_grid": [0.1, 0.5, 1.0],
        "mc": {"samples": args.mc_samples, "seed": args.seed},
        "output": {"csv": "radjump_report.csv", "json": "radjump_report.json"},
    }
    text = json.dumps(cfg, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_eval(args) -> int:
    with open(args.profile) as fh:
        literal = json.load(fh)
    if isinstance(literal, dict) and "profile" in literal:
        literal = literal["profile"]
    profile = profile_from_literal(literal)
    report = evaluate_functionals(profile)
    print(repr(getattr(report, args.functional)))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="radjump",
        description="Certified entropy/Fisher jump inequalities for radial densities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config")
    p_run.add_argument("--jobs", type=int, default=1)
    p_run.add_argument("--csv", help="override output.csv")
    p_run.add_argument("--json", help="override output.json")
    p_run.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
    p_run.set_defaults(fn=_cmd_run)

    p_corpus = sub.add_parser("corpus", help="print the bundled corpus config")
    p_corpus.add_argument("--seed", type=int, default=0)
    p_corpus.add_argument("--mc-samples", type=int, default=200_000)
    p_corpus.add_argument("--out", help="write to a file instead of stdout")
    p_corpus.set_defaults(fn=_cmd_corpus)

    p_eval = sub.add_parser("eval", help="evaluate one functional of a profile literal")
    p_eval.add_argument("profile")
    p_eval.add_argument("--functional", required=True, choices=["h", "J", "D", "I", "N"])
    p_eval.set_defaults(fn=_cmd_eval)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except RadjumpError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
