"""Experiment runner: argument parsing, sweep orchestration, CSV emission.

Determinism contract: all randomness flows from --seed, sweep cells are
keyed and sorted before writing, and floats are serialized with 17
significant digits, so identical configs give byte-identical CSV no matter
how many worker threads are used. The config hash covers exactly the
semantically meaningful fields (everything except output paths and thread
count) and lands in the metadata sidecar next to the CSV.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, experiments, h3_oracle, space, spherical, transform
from .errors import ConfigError

__all__ = ["main", "run", "ResultTable", "parse_grid", "parse_fhat"]


# ---------------------------------------------------------------------------
# config helpers

def parse_grid(text: str) -> np.ndarray:
    """a:b:n or a:b:n:log -> n points from a to b (inclusive)."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise ConfigError(f"grid must be start:stop:count[:log], got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad grid numbers in {text!r}") from exc
    if count < 1:
        raise ConfigError("grid count must be at least 1")
    if len(parts) == 4:
        if parts[3] != "log":
            raise ConfigError(f"unknown grid spacing {parts[3]!r}")
        if start <= 0.0 or stop <= 0.0:
            raise ConfigError("log spacing needs positive endpoints")
        return np.geomspace(start, stop, count)
    return np.linspace(start, stop, count)


def parse_space(text: str) -> space.SpaceParams:
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"space must be JSON, got {text!r}") from exc
    return space.SpaceParams.from_config(cfg)


def parse_fhat(text: str) -> transform.SpectralProfile:
    """builtin:gaussian | builtin:band:N | path to a CSV of lambda,re[,im]."""
    if text.startswith("builtin:"):
        parts = text.split(":")
        if parts[1] == "gaussian":
            return transform.gaussian_profile()
        if parts[1] == "band":
            if len(parts) != 3:
                raise ConfigError("builtin band needs builtin:band:N")
            n = float(parts[2])
            if n <= 1.0:
                raise ConfigError("band start must exceed 1")
            return transform.band_profile(n, n + math.sqrt(n))
        raise ConfigError(f"unknown builtin profile {parts[1]!r}")
    path = Path(text)
    if not path.exists():
        raise ConfigError(f"spectral profile file not found: {text}")
    data = np.genfromtxt(path, delimiter=",", skip_header=1)
    data = np.atleast_2d(data)
    if data.shape[1] < 2:
        raise ConfigError("profile CSV needs columns lambda,re[,im]")
    vals = data[:, 1].astype(complex)
    if data.shape[1] > 2:
        vals = vals + 1j * data[:, 2]
    return transform.SpectralProfile(data[:, 0], vals, transform.RAW)


def parse_floats(text: str):
    try:
        return [float(x) for x in text.split(",") if x != ""]
    except ValueError as exc:
        raise ConfigError(f"bad float list {text!r}") from exc


# ---------------------------------------------------------------------------
# result table

def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.17g" % float(value)


@dataclass
class ResultTable:
    schema: str
    columns: list
    rows: list = field(default_factory=list)
    key_columns: tuple = ()
    metadata: dict = field(default_factory=dict)

    def add(self, row: dict):
        if set(row) != set(self.columns):
            raise ConfigError(f"row keys do not match schema {self.schema}")
        self.rows.append(row)

    def sort(self):
        if self.key_columns:
            self.rows.sort(key=lambda r: tuple(r[k] for k in self.key_columns))

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(_fmt(row[c]) for c in self.columns))
        return "\n".join(lines) + "\n"

    def write(self, out_path, meta_path=None):
        text = self.to_csv()
        if out_path is None:
            sys.stdout.write(text)
        else:
            Path(out_path).write_text(text)
            meta = meta_path or (str(out_path) + ".meta.json")
            Path(meta).write_text(json.dumps(self.metadata, indent=2,
                                             sort_keys=True) + "\n")


def config_hash(semantic: dict) -> str:
    blob = json.dumps(semantic, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _pool_map(threads: int, fn, items):
    """Deterministic fan-out: results returned in the order of items."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, x) for x in items]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# subcommands

def _cmd_phi(args, threads: int) -> ResultTable:
    params = parse_space(args.space)
    lam = parse_grid(args.lambda_grid)
    s = parse_grid(args.s_grid)
    if np.any(s <= 0.0):
        raise ConfigError("s grid must be positive")
    backend = {"auto": None,
               "ode": spherical.Backend.ODE,
               "bessel": spherical.Backend.BESSEL_LEADING,
               "hc": spherical.Backend.HC_LEADING,
               "closed": spherical.Backend.CLOSED_FORM_H3}[args.backend]
    table = ResultTable("phi", ["lambda", "s", "value", "backend",
                                "residual_estimate"],
                        key_columns=("lambda", "s"))
    if backend is None:
        default = (spherical.Backend.CLOSED_FORM_H3
                   if params.kind == space.HYPERBOLIC_H3 else spherical.Backend.ODE)
        mat = spherical.phi_matrix(params, lam, s)
        est = 5e-16 if default is spherical.Backend.CLOSED_FORM_H3 else 1e-9
        for i, sv in enumerate(s):
            for j, lv in enumerate(lam):
                table.add({"lambda": float(lv), "s": float(sv),
                           "value": float(mat[i, j]), "backend": default.value,
                           "residual_estimate": est})
    else:
        def cell(pair):
            lv, sv = pair
            ev = spherical.evaluate_phi(params, float(lv), float(sv), backend)
            return {"lambda": float(lv), "s": float(sv), "value": ev.value,
                    "backend": ev.backend.value,
                    "residual_estimate": ev.residual_estimate}
        pairs = [(lv, sv) for lv in lam for sv in s]
        for row in _pool_map(threads, cell, pairs):
            table.add(row)
    table.sort()
    return table


def _cmd_transform_roundtrip(args, threads: int) -> ResultTable:
    params = parse_space(args.space)
    fhat = parse_fhat(args.fhat)
    lam = (parse_grid(args.lambda_grid) if args.lambda_grid
           else fhat.lambda_grid[fhat.lambda_grid > 0.0])
    r_end = float(args.R)
    s_grid = np.linspace(0.0, r_end, max(int(args.s_count), 32))
    f = transform.inverse_sft(params, fhat, s_grid)
    ghat = transform.forward_sft(params, f, lam)
    table = ResultTable("transform-roundtrip",
                        ["lambda", "re_input", "im_input", "re_roundtrip",
                         "im_roundtrip", "abs_err"],
                        key_columns=("lambda",))
    target = fhat.eval(lam)
    for j, lv in enumerate(lam):
        table.add({"lambda": float(lv),
                   "re_input": float(target[j].real),
                   "im_input": float(target[j].imag),
                   "re_roundtrip": float(ghat.values[j].real),
                   "im_roundtrip": float(ghat.values[j].imag),
                   "abs_err": float(abs(ghat.values[j] - target[j]))})
    table.sort()
    return table


def _cmd_evolve(args, threads: int) -> ResultTable:
    params = parse_space(args.space)
    fhat = parse_fhat(args.fhat)
    t_grid = parse_grid(args.t_grid)
    s_grid = parse_grid(args.s_grid)
    if np.any(t_grid < 0.0):
        raise ConfigError("t grid must be nonnegative")
    spec = transform.PropagatorSpec(a=float(args.dispersion),
                                    shifted=bool(args.shifted))
    f0 = transform.inverse_sft(params, fhat, s_grid).values
    u = transform.propagate_batch(params, fhat, t_grid, spec, s_grid)
    table = ResultTable("evolve", ["s", "t", "re_u", "im_u", "abs_err_vs_f0"],
                        key_columns=("s", "t"))
    for i, sv in enumerate(s_grid):
        for k, tv in enumerate(t_grid):
            table.add({"s": float(sv), "t": float(tv),
                       "re_u": float(u[i, k].real), "im_u": float(u[i, k].imag),
                       "abs_err_vs_f0": float(abs(u[i, k] - f0[i]))})
    table.sort()
    return table


def _cmd_maximal_sweep(args, threads: int) -> ResultTable:
    params = parse_space(args.space)
    fhat = parse_fhat(args.fhat)
    alphas = parse_floats(args.alphas)
    if not alphas:
        raise ConfigError("need at least one alpha")
    R = float(args.R)
    table = ResultTable("maximal-sweep",
                        ["alpha", "R", "l1_norm_maximal", "sobolev_norm",
                         "ratio", "t_grid_size", "argmax_t_min", "argmax_t_max"],
                        key_columns=("alpha",))

    def cell(alpha):
        rep = experiments.maximal_ratio(params, fhat, alpha, R)
        return {"alpha": rep.alpha, "R": rep.R,
                "l1_norm_maximal": rep.l1_norm_maximal,
                "sobolev_norm": rep.sobolev_norm, "ratio": rep.ratio,
                "t_grid_size": rep.t_grid_size,
                "argmax_t_min": float(np.min(rep.argmax_t)),
                "argmax_t_max": float(np.max(rep.argmax_t))}

    for row in _pool_map(threads, cell, sorted(alphas)):
        table.add(row)
    table.sort()
    return table


def _cmd_oscillatory(args, threads: int) -> ResultTable:
    params = parse_space(args.space)
    if args.pairs:
        path = Path(args.pairs)
        if not path.exists():
            raise ConfigError(f"pairs file not found: {args.pairs}")
        data = np.atleast_2d(np.genfromtxt(path, delimiter=",", skip_header=1))
        if data.shape[1] < 4:
            raise ConfigError("pairs CSV needs columns s,s_prime,t_s,t_s_prime")
        draws = data[:, :4]
    else:
        draws = experiments.random_admissible_draws(params, int(args.draws),
                                                    seed=int(args.seed))
    table = ResultTable("oscillatory",
                        ["s", "s_prime", "t_s", "t_s_prime", "re_value",
                         "im_value", "scaled_modulus"],
                        key_columns=("s", "s_prime", "t_s", "t_s_prime"))

    def cell(row):
        s, sp, t1, t2 = (float(v) for v in row)
        val = experiments.oscillatory_integral(params, s, sp, (t1, t2))
        return {"s": s, "s_prime": sp, "t_s": t1, "t_s_prime": t2,
                "re_value": val.real, "im_value": val.imag,
                "scaled_modulus": abs(val) * math.sqrt(abs(s - sp))}

    for out in _pool_map(threads, cell, [draws[i] for i in range(draws.shape[0])]):
        table.add(out)
    table.sort()
    return table


def _cmd_sharpness(args, threads: int) -> ResultTable:
    params = parse_space(args.space)
    alphas = sorted(parse_floats(args.alphas))
    n_list = [float(v) for v in parse_floats(args.N)]
    R = float(args.R)
    table = ResultTable("sharpness", ["alpha", "N", "ratio"],
                        key_columns=("alpha", "N"))

    def cell(n):
        return experiments.sharpness_sweep(params, alphas, [n], R=R)

    for rows in _pool_map(threads, cell, sorted(n_list)):
        for row in rows:
            table.add(row)
    table.sort()
    return table


def _cmd_h3_check(args, threads: int) -> ResultTable:
    fhat = parse_fhat(args.fhat)
    times = parse_floats(args.t)
    if not times:
        raise ConfigError("need at least one time")
    s_grid = parse_grid(args.s_grid)
    params = space.hyperbolic_h3()
    spec = transform.PropagatorSpec()
    table = ResultTable("h3-check", ["t", "s", "defect"],
                        key_columns=("t", "s"))

    def cell(t):
        u_hyp = transform.propagate(params, fhat, t, spec, s_grid).values
        u_flat = h3_oracle.euclid_propagator_r3(fhat, t, s_grid)
        pred = np.exp(1j * t) * h3_oracle.sinh_damping(s_grid) * u_flat
        return t, np.abs(u_hyp - pred)

    for t, defects in _pool_map(threads, cell, sorted(times)):
        for i, sv in enumerate(s_grid):
            table.add({"t": float(t), "s": float(sv),
                       "defect": float(defects[i])})
    table.sort()
    return table


_COMMANDS = {
    "phi": _cmd_phi,
    "transform-roundtrip": _cmd_transform_roundtrip,
    "evolve": _cmd_evolve,
    "maximal-sweep": _cmd_maximal_sweep,
    "oscillatory": _cmd_oscillatory,
    "sharpness": _cmd_sharpness,
    "h3-check": _cmd_h3_check,
}

_NON_SEMANTIC = {"out", "meta", "threads", "command"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schromax",
        description="Radial spectral experiments on Damek-Ricci spaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, space_default=None):
        if space_default is None:
            p.add_argument("--space", required=True,
                           help='geometry JSON, e.g. {"kind":"h3"}')
        else:
            p.add_argument("--space", default=space_default)
        p.add_argument("--out", default=None, help="CSV output path")
        p.add_argument("--meta", default=None, help="metadata sidecar path")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=42)

    p = sub.add_parser("phi", help="spherical function table")
    common(p)
    p.add_argument("--lambda-grid", required=True)
    p.add_argument("--s-grid", required=True)
    p.add_argument("--backend", default="auto",
                   choices=["auto", "ode", "bessel", "hc", "closed"])

    p = sub.add_parser("transform-roundtrip", help="forward-inverse defect")
    common(p)
    p.add_argument("--fhat", default="builtin:gaussian")
    p.add_argument("--lambda-grid", default=None)
    p.add_argument("--R", default="10.0")
    p.add_argument("--s-count", default="201")

    p = sub.add_parser("evolve", help="propagator snapshots")
    common(p)
    p.add_argument("--fhat", default="builtin:gaussian")
    p.add_argument("--t-grid", required=True)
    p.add_argument("--s-grid", required=True)
    p.add_argument("--dispersion", default="2.0")
    p.add_argument("--shifted", action="store_true")

    p = sub.add_parser("maximal-sweep", help="maximal ratio per alpha")
    common(p)
    p.add_argument("--fhat", default="builtin:gaussian")
    p.add_argument("--alphas", default="0.1,0.25,0.3")
    p.add_argument("--R", default="2.0")

    p = sub.add_parser("oscillatory", help="measurable-time kernel integral")
    common(p)
    p.add_argument("--pairs", default=None,
                   help="CSV of s,s_prime,t_s,t_s_prime (header row)")
    p.add_argument("--draws", default="50",
                   help="number of seeded draws when --pairs is absent")

    p = sub.add_parser("sharpness", help="band-data ratio growth on H3")
    common(p, space_default='{"kind":"h3"}')
    p.add_argument("--alphas", default="0.1,0.25,0.3")
    p.add_argument("--N", default="16,32,64,128")
    p.add_argument("--R", default="2.0")

    p = sub.add_parser("h3-check", help="closed-form propagator identity")
    common(p, space_default='{"kind":"h3"}')
    p.add_argument("--fhat", default="builtin:gaussian")
    p.add_argument("--t", default="0.1,0.3,0.9")
    p.add_argument("--s-grid", default="0.05:6:40")

    return parser


def run(args) -> ResultTable:
    semantic = {k: v for k, v in vars(args).items()
                if k not in _NON_SEMANTIC and v is not None}
    semantic["command"] = args.command
    started = time.monotonic()
    table = _COMMANDS[args.command](args, max(int(args.threads), 1))
    table.metadata = {
        "schema": table.schema,
        "config_hash": config_hash(semantic),
        "version": __version__,
        "wall_time_s": round(time.monotonic() - started, 3),
        "rows": len(table.rows),
    }
    return table


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    command = getattr(args, "command", "?")
    try:
        table = run(args)
        table.write(args.out, args.meta)
    except ValueError as exc:
        print(f"config error in {command}: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"numerical failure in {command}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
