"""Experiment runner: reproduces each result class as CSV/JSON output.

Commands::

    antibunch analytic        doubly-excited dynamics without decay
    antibunch g2              mixture g2(tau) from quantum-jump trajectories
    antibunch sweep           g2(0) and brightness over (delta12, gamma12)
    antibunch tip-map         gamma12/delta12 maps around the nanotip
    antibunch tip-experiment  positional-ensemble experiment at the tip

Exit codes: 0 success, 2 configuration error, 3 numerical-invariant
violation.  Every run writes a `run_manifest.json` with the resolved
configuration, derived seeds and output digests; identical configurations
and seeds reproduce byte-identical data files.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import analytic_pee, single_excitation_product
from .config import SCHEMAS, ConfigError, load_config_file, resolve
from .correlations import (
    CorrelationEstimate,
    concat_g2,
    estimate_g2,
    rate_weighted_average,
    save_correlation_csv,
    save_summary_json,
)
from .master_equation import InvariantViolation
from .montecarlo import (
    GROUND_1,
    GROUND_2,
    SimConfig,
    StepSizeError,
    qmc_trajectory,
    save_trajectory_csv,
    trajectory_seeds,
)
from .nanotip import (
    TipGeometry,
    parameter_map,
    realize_parameters,
    sample_sites,
    save_map_csv,
    save_sites_csv,
)
from .operators import PhysicalParams

__all__ = ["main"]


def _status(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _traj_job(job):
    params, cfg = job
    return qmc_trajectory(params, cfg)


def _run_trajectories(jobs, threads: int):
    if threads <= 1:
        return [_traj_job(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_traj_job, jobs))


def _estimate(traj, bin_width, tau_max) -> CorrelationEstimate:
    """Per-realization estimate; photon-poor runs yield an all-zero curve."""
    if traj.count >= 2:
        return estimate_g2(traj, bin_width, tau_max)
    nbins = int(round(tau_max / bin_width))
    centers = (np.arange(nbins) + 0.5) * bin_width
    return CorrelationEstimate(
        tau_bins=centers,
        g2_values=np.zeros(nbins),
        counts=np.zeros(nbins),
        bin_width=bin_width,
        total_time=traj.duration,
        mean_rate=traj.emission_rate,
    )


def _write_manifest(out_dir: Path, command: str, cfg: dict, seed: int,
                    traj_seeds, wall_time: float, files: list[Path],
                    metadata: dict | None = None) -> None:
    digests = {}
    for path in sorted(files):
        digests[path.name] = hashlib.sha256(path.read_bytes()).hexdigest()
    manifest = {
        "command": command,
        "version": __version__,
        "config": {k: list(v) if isinstance(v, tuple) else v for k, v in cfg.items()},
        "master_seed": int(seed),
        "trajectory_seeds": [int(s) for s in np.atleast_1d(traj_seeds)],
        "wall_time_s": wall_time,
        "outputs": digests,
    }
    if metadata:
        manifest["metadata"] = metadata
    with open(out_dir / "run_manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_analytic(cfg: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    omega = cfg["omega"]
    if omega <= 0:
        raise ConfigError("key 'omega': must be positive")
    if cfg["dt_out"] <= 0 or cfg["t_max"] < cfg["dt_out"]:
        raise ConfigError("keys 't_max'/'dt_out': need 0 < dt_out <= t_max")
    t = np.arange(0.0, cfg["t_max"] + 0.5 * cfg["dt_out"], cfg["dt_out"])
    columns = [("t", t)]
    for d12 in cfg["delta12_list"]:
        tag = f"{d12:g}".replace("-", "m").replace(".", "p")
        columns.append((f"pee_delta12_{tag}", analytic_pee(omega, d12, t)))
        columns.append((f"pprod_delta12_{tag}", single_excitation_product(omega, d12, t)))
    path = out_dir / "analytic.csv"
    with open(path, "w") as fh:
        fh.write(",".join(name for name, _ in columns) + "\n")
        for i in range(t.size):
            fh.write(",".join(f"{col[i]:.12g}" for _, col in columns) + "\n")
    return [path]


def _mixture_run(omega, gamma, delta, delta12, gamma12, t1, t2, dt,
                 seed1, seed2):
    """One- and two-atom segment parameters/configs of a mu ~ 1 mixture."""
    p1 = PhysicalParams(omega1=omega, omega2=0.0, delta=delta,
                        gamma1=gamma, gamma2=gamma)
    p2 = PhysicalParams(omega1=omega, omega2=omega, delta=delta,
                        gamma1=gamma, gamma2=gamma,
                        gamma12=gamma12, delta12=delta12)
    c1 = SimConfig(dt=dt, duration=t1, seed=int(seed1), initial_state=GROUND_1)
    c2 = SimConfig(dt=dt, duration=t2, seed=int(seed2), initial_state=GROUND_2)
    return (p1, c1), (p2, c2)


def cmd_g2(cfg: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    seeds = trajectory_seeds(seed, 2)
    try:
        job1, job2 = _mixture_run(
            cfg["omega"], cfg["gamma"], cfg["delta"], cfg["delta12"],
            cfg["gamma12"], cfg["t1"], cfg["t2"], cfg["dt"], seeds[0], seeds[1],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _status("g2: simulating one-atom segment")
    traj1, traj2 = _run_trajectories([job1, job2], threads)
    _status(f"g2: {traj1.count} + {traj2.count} photons")
    est = concat_g2([traj1, traj2], cfg["bin_width"], cfg["tau_max"])
    r1 = traj1.emission_rate
    mu = cfg["mu"]
    extra = {
        "mean_rate_1atom": r1,
        "mean_rate_2atom": traj2.emission_rate,
        "mu": mu,
        # two conventions for the non-interacting Poisson-mixture baseline
        "g2_zero_rate_weighted_baseline": (mu - 1 + np.exp(-mu)) / mu if mu > 0 else 0.0,
        "g2_zero_pair_weighted_baseline": 1.0,
    }
    files = [out_dir / "g2.csv", out_dir / "summary.json",
             out_dir / "trajectory_1atom.csv", out_dir / "trajectory_2atom.csv"]
    save_correlation_csv(est, files[0])
    save_summary_json(files[1], est, est.mean_rate / r1 if r1 > 0 else float("nan"),
                      extra=extra)
    save_trajectory_csv(traj1, files[2])
    save_trajectory_csv(traj2, files[3])
    return files


def cmd_sweep(cfg: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    pairs = [(d, g) for d in cfg["delta12_list"] for g in cfg["gamma12_list"]]
    seeds = trajectory_seeds(seed, 1 + len(pairs))
    try:
        jobs = []
        for i, (d12, g12) in enumerate(pairs):
            job1, job2 = _mixture_run(
                cfg["omega"], cfg["gamma"], 0.0, d12, g12,
                cfg["t1"], cfg["t2"], cfg["dt"], seeds[0], seeds[1 + i],
            )
            jobs.append(job2)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    _status("sweep: simulating shared one-atom segment")
    traj1 = _traj_job(job1)
    _status(f"sweep: simulating {len(jobs)} two-atom segments")
    trajs2 = _run_trajectories(jobs, threads)
    path = out_dir / "sweep.csv"
    with open(path, "w") as fh:
        fh.write("delta12,gamma12,g2_zero,brightness\n")
        for (d12, g12), traj2 in zip(pairs, trajs2):
            est = concat_g2([traj1, traj2], cfg["bin_width"], cfg["tau_max"])
            b = est.mean_rate / traj1.emission_rate
            fh.write(f"{d12:.12g},{g12:.12g},{est.g2_zero:.12g},{b:.12g}\n")
    return [path]


def _tip_from_config(cfg: dict) -> TipGeometry:
    try:
        return TipGeometry.for_wavelength(
            cfg["r_tip_nm"], cfg["epsilon"], cfg["wavelength_nm"]
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_tip_map(cfg: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    tip = _tip_from_config(cfg)
    if cfg["n_r"] < 1 or cfg["n_theta"] < 1:
        raise ConfigError("keys 'n_r'/'n_theta': need at least one grid point")
    if cfg["r_min_nm"] < tip.r_tip:
        raise ConfigError("key 'r_min_nm': first atom would sit inside the sphere")
    r_grid = np.linspace(cfg["r_min_nm"], cfg["r_max_nm"], cfg["n_r"])
    theta_grid = np.radians(
        np.linspace(cfg["theta_min_deg"], cfg["theta_max_deg"], cfg["n_theta"])
    )
    _status(f"tip-map: {cfg['n_r']} x {cfg['n_theta']} grid, geometry {cfg['geometry']}")
    g12, d12, valid = parameter_map(tip, cfg["geometry"], r_grid, theta_grid,
                                    cfg["r12_nm"])
    path = out_dir / "tip_map.csv"
    save_map_csv(path, r_grid, theta_grid, g12, d12, valid)
    return [path]


def cmd_tip_experiment(cfg: dict, out_dir: Path, seed: int, threads: int) -> list[Path]:
    tip = _tip_from_config(cfg)
    n_one, n_two = cfg["n_one"], cfg["n_two"]
    if n_one < 1 or n_two < 1:
        raise ConfigError("keys 'n_one'/'n_two': need at least one realization each")
    if not tip.r_tip <= cfg["r_inner_nm"] < cfg["r_outer_nm"]:
        raise ConfigError("keys 'r_inner_nm'/'r_outer_nm': "
                          "need r_tip <= r_inner < r_outer")
    seeds = trajectory_seeds(seed, 2 + n_one + n_two)
    pos1 = sample_sites(tip, cfg["r_inner_nm"], cfg["r_outer_nm"], n_one,
                        int(seeds[0]))
    pos2 = sample_sites(tip, cfg["r_inner_nm"], cfg["r_outer_nm"], 2 * n_two,
                        int(seeds[1])).reshape(n_two, 2, 3)

    try:
        jobs = []
        for i in range(n_one):
            params = realize_parameters([pos1[i]], tip, cfg["drive_scale"])
            jobs.append((params, SimConfig(dt=cfg["dt"], duration=cfg["duration"],
                                           seed=int(seeds[2 + i]),
                                           initial_state=GROUND_1)))
        for i in range(n_two):
            params = realize_parameters(pos2[i], tip, cfg["drive_scale"])
            jobs.append((params, SimConfig(dt=cfg["dt"], duration=cfg["duration"],
                                           seed=int(seeds[2 + n_one + i]),
                                           initial_state=GROUND_2)))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    _status(f"tip-experiment: {n_one} one-atom + {n_two} two-atom realizations")
    trajs = _run_trajectories(jobs, threads)
    ests = [_estimate(t, cfg["bin_width"], cfg["tau_max"]) for t in trajs]
    est1, est2 = ests[:n_one], ests[n_one:]
    avg1 = rate_weighted_average(est1)
    avg2 = rate_weighted_average(est2)
    mix = rate_weighted_average(ests)
    r_1a, r_2a, r_mix = avg1.mean_rate, avg2.mean_rate, mix.mean_rate

    files = [out_dir / "g2_1atom.csv", out_dir / "g2_2atom.csv",
             out_dir / "g2_mixture.csv", out_dir / "summary.json",
             out_dir / "sites_1atom.csv", out_dir / "sites_2atom.csv"]
    save_correlation_csv(avg1, files[0])
    save_correlation_csv(avg2, files[1])
    save_correlation_csv(mix, files[2])
    with open(files[3], "w") as fh:
        json.dump(
            {
                "R_1A": r_1a,
                "R_2A": r_2a,
                "R_mix": r_mix,
                "brightness": r_mix / r_1a if r_1a > 0 else float("nan"),
                "g2_zero_1atom": avg1.g2_zero,
                "g2_zero_2atom": avg2.g2_zero,
                "g2_zero_mixture": mix.g2_zero,
                "total_photons": int(sum(t.count for t in trajs)),
                "duration": float(sum(t.duration for t in trajs)),
            },
            fh, indent=2, sort_keys=True,
        )
        fh.write("\n")
    save_sites_csv(files[4], pos1)
    save_sites_csv(files[5], pos2.reshape(-1, 3))
    return files


def _shell_metadata(cfg: dict) -> dict:
    """Sampling-volume bookkeeping: the half shell is sampled, but the full
    shell volume is what matches the quoted ensemble volume."""
    ri, ro = cfg["r_inner_nm"], cfg["r_outer_nm"]
    full = 4.0 / 3.0 * np.pi * (ro**3 - ri**3)  # nm^3
    return {
        "sampled_region": "half shell, y > 0",
        "half_shell_volume_cm3": full / 2.0 * 1e-21,
        "full_shell_volume_cm3": full * 1e-21,
    }


_COMMANDS = {
    "analytic": cmd_analytic,
    "g2": cmd_g2,
    "sweep": cmd_sweep,
    "tip-map": cmd_tip_map,
    "tip-experiment": cmd_tip_experiment,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="antibunch",
        description="Photon statistics of small dipole-interacting emitter "
                    "ensembles near a nanofiber tip.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        keys = ", ".join(SCHEMAS[name])
        p = sub.add_parser(name, help=f"config keys: {keys}")
        p.add_argument("--config", type=str, default=None,
                       help="key = value config file")
        p.add_argument("--seed", type=int, default=12345,
                       help="master seed (64-bit)")
        p.add_argument("--threads", type=int, default=1,
                       help="trajectory worker processes")
        p.add_argument("--out", type=str, default=".",
                       help="output directory")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command
    file_values = load_config_file(args.config) if args.config else None
    cfg = resolve(command, file_values, args.set,
                  source=args.config or "<config>")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")

    start = time.perf_counter()
    files = _COMMANDS[command](cfg, out_dir, args.seed, args.threads)
    wall = time.perf_counter() - start
    n_seeds = {"g2": 2, "sweep": 1 + len(cfg.get("delta12_list", ()))
               * len(cfg.get("gamma12_list", (1,))),
               "tip-experiment": 2 + cfg.get("n_one", 0) + cfg.get("n_two", 0)}
    traj_seeds = trajectory_seeds(args.seed, n_seeds.get(command, 0)) \
        if n_seeds.get(command, 0) else []
    metadata = _shell_metadata(cfg) if command == "tip-experiment" else None
    _write_manifest(out_dir, command, cfg, args.seed, traj_seeds, wall, files,
                    metadata)
    _status(f"{command}: wrote {len(files)} data files to {out_dir} "
            f"in {wall:.1f} s")
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (StepSizeError, InvariantViolation, FloatingPointError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
