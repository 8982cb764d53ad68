"""Experiment dispatch and the command-line interface.

Usage: zetasweep <command> --config <path> [--out <path>] [--threads <k>]
[--plot <kind>].  Exit codes: 0 ok, 2 config error, 3 numerical error,
4 I/O error.  Errors are reported as a single JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, kernels
from .config import (COMMANDS, RunConfig, build_h_list, build_joint_spec,
                     build_patch_spec, build_precision, build_shift_spec,
                     build_subject, build_target_spec, parse_config,
                     serialize_config)
from .errors import (ConfigError, EmptyProfileError, KernelError,
                     NoValidSampleError, ZetaSweepError)
from .experiments import (density_comparison, gdelta_scan, joint_sweep,
                          self_recurrence)
from .orbit import (DensityEstimate, ErrorProfile, continuous_sweep,
                    discrete_orbit)
from .plotting import PLOT_KINDS, emit_plot
from .records import ResultRecord, dumps_record, make_header, write_record
from .space import Exhaustion

THREADS_ENV = "ZETASWEEP_THREADS"


def _resolve_threads(config: RunConfig, override: int | None) -> int:
    if override is not None:
        threads = override
    elif config.has("threads"):
        threads = config.get("threads")
    else:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    if threads < 1:
        raise ConfigError("thread count must be at least 1")
    return threads


def _profile_rows(profile: ErrorProfile) -> list:
    rows: list = [s.row() for s in profile.samples]
    rows.extend({"kind": "error_detail", "index": j, "tau": s.tau,
                 "note": s.note}
                for j, s in enumerate(profile.samples) if s.note)
    return rows


def _density_dict(d: DensityEstimate) -> dict:
    return {
        "epsilon": d.epsilon, "horizon": d.horizon, "mode": d.mode,
        "hit_fraction": d.hit_fraction, "hit_count": d.hit_count,
        "ok_count": d.ok_count, "error_count": d.error_count,
    }


def _run_eval(config: RunConfig, prec, threads: int) -> tuple[list, float | None]:
    subject = build_subject(config)
    s = config.get("eval.s")
    if subject.kind == "log_riemann":
        value = kernels.log_zeta_tracked(s, prec)
    else:
        value = complex(subject.evaluate(np.asarray([s]), prec)[0])
    return [{"kind": "value", "s": [s.real, s.imag],
             "re": value.real, "im": value.imag}], None


def _run_sweep_like(config: RunConfig, prec, threads: int):
    subject = build_subject(config)
    patch = build_patch_spec(config)
    target = build_target_spec(config)
    if config.command == "sweep":
        spec = build_shift_spec(config, "continuous")
        profile = continuous_sweep(subject, target, patch, spec, prec, threads)
    else:
        spec = build_shift_spec(config, "discrete")
        profile = discrete_orbit(subject, target, patch, spec, prec, threads)
    return _profile_rows(profile), patch.grid_step


def _run_density(config: RunConfig, prec, threads: int):
    subject = build_subject(config)
    patch = build_patch_spec(config)
    target = build_target_spec(config)
    shift = build_shift_spec(config, "continuous")
    h_list = build_h_list(config, "density.h", shift.t_max)
    report = density_comparison(subject, target, patch,
                                config.get("epsilon"), shift.t_max,
                                shift.step, h_list, prec, threads)
    rows = _profile_rows(report.profile)
    rows.extend({"kind": "density_pair", "h": p.h, "n_max": p.n_max,
                 "subsampled": p.subsampled,
                 "continuous": _density_dict(p.continuous),
                 "discrete": _density_dict(p.discrete)}
                for p in report.pairs)
    rows.extend({"kind": "curve_point", "horizon": h, "fraction": f}
                for h, f in report.curve)
    return rows, patch.grid_step


def _run_recur(config: RunConfig, prec, threads: int):
    subject = build_subject(config)
    patch = build_patch_spec(config)
    shift = build_shift_spec(config, "continuous")
    h_list = build_h_list(config, "recur.h", shift.t_max)
    report = self_recurrence(subject, patch, config.get("epsilon"),
                             shift.t_max, shift.step, h_list, prec, threads)
    rows = _profile_rows(report.profile)
    rows.append({"kind": "density", "role": "continuous",
                 **_density_dict(report.continuous_density)})
    rows.extend({"kind": "density", "role": "discrete", "h": h,
                 "subsampled": sub, **_density_dict(d)}
                for (h, d), sub in zip(report.discrete_densities,
                                       report.subsampled))
    rows.extend({"kind": "best_shift", "rank": i, "tau": tau, "error": err}
                for i, (tau, err) in enumerate(report.best_self_shifts))
    return rows, patch.grid_step


def _run_gdelta(config: RunConfig, prec, threads: int):
    step = config.get("gdelta.grid_step")
    exhaustion = Exhaustion(grid_step=step) if step is not None else Exhaustion()
    result = gdelta_scan(config.get("gdelta.t0"), config.get("gdelta.m_max"),
                         config.get("gdelta.n_max"), prec, exhaustion)
    rows = [{"kind": "gdelta_entry", "m": e.m, "N": e.patch_index,
             "P": str(e.polynomial), "first_hit_n": e.first_hit_n,
             "best_error": e.best_error, "best_n": e.best_n,
             "verified_error": e.verified_error, "scanned": e.scanned,
             "error_note": e.error_note}
            for e in result.entries]
    return rows, result.grid_step


def _run_joint(config: RunConfig, prec, threads: int):
    spec = build_joint_spec(config)
    shift = build_shift_spec(config, "continuous")
    profile = joint_sweep(spec, shift.t_max, shift.step, prec, threads)
    return _profile_rows(profile), None

_RUNNERS = {
    "eval": _run_eval,
    "sweep": _run_sweep_like,
    "orbit": _run_sweep_like,
    "density": _run_density,
    "recur": _run_recur,
    "gdelta": _run_gdelta,
    "joint": _run_joint,
}


def run(config: RunConfig, threads: int | None = None) -> ResultRecord:
    """Dispatch one experiment and assemble its result record."""
    prec = build_precision(config)
    resolved = _resolve_threads(config, threads)
    rows, grid_step = _RUNNERS[config.command](config, prec, resolved)
    header = make_header(config.command, serialize_config(config), prec,
                         grid_step, __version__)
    return ResultRecord(header, tuple(rows))


def _emit_error(exc: Exception, command: str | None) -> None:
    payload = {"error_class": type(exc).__name__, "message": str(exc)}
    if command:
        payload["command"] = command
    print(json.dumps(payload), file=sys.stderr)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="zetasweep",
        description="vertical-shift universality experiments for "
                    "zeta-functions")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True,
                        help="path to the run configuration")
    parser.add_argument("--out", default=None,
                        help="record output path (default: config `out` "
                             "key, else stdout)")
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: config, then "
                             f"${THREADS_ENV}, then 1)")
    parser.add_argument("--plot", choices=PLOT_KINDS, default=None,
                        help="also emit an SVG plot next to the record")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        _emit_error(exc, args.command)
        return 4

    try:
        config = parse_config(text)
        if config.command != args.command:
            raise ConfigError(
                f"config command {config.command!r} does not match CLI "
                f"command {args.command!r}")
        record = run(config, args.threads)
    except ConfigError as exc:
        _emit_error(exc, args.command)
        return 2
    except (KernelError, NoValidSampleError, EmptyProfileError,
            ZetaSweepError, OverflowError, ValueError) as exc:
        _emit_error(exc, args.command)
        return 3

    out_path = args.out if args.out is not None else config.get("out")
    try:
        if out_path is None:
            sys.stdout.write(dumps_record(record))
        else:
            write_record(record, out_path)
        if args.plot is not None:
            if out_path is None:
                _emit_error(ConfigError("--plot requires an output path"),
                            args.command)
                return 2
            emit_plot(record, args.plot, out_path + ".svg")
    except (EmptyProfileError, ConfigError) as exc:
        _emit_error(exc, args.command)
        return 2 if isinstance(exc, ConfigError) else 3
    except OSError as exc:
        _emit_error(exc, args.command)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
