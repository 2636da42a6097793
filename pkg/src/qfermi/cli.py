"""Command-line front end: CSV tables, figure data, and the check suite.

Exit codes: 0 success, 1 check failure, 2 usage/configuration error.
CSV files carry a header row, comma separators, 12-significant-digit
values, one trailing newline per row, and are written via a temp file and
an atomic rename so partial files are never left behind.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import thermo, verify
from .models import Model, SeriesConvergenceError, SingularPointError
from .spectra import basic_number
from .thermo import (
    ckn_distribution,
    ckn_eos,
    ckn_mu_lowT,
    ckn_mu_numeric,
    fn_distribution,
    fn_eos,
    fn_mu_lowT,
    fn_mu_numeric,
    pvc_distribution,
    pvc_eos,
    q1_limit_distribution,
    vpjc_distribution,
)

_SINGULAR_OFFSET = 1e-9


class ConfigError(Exception):
    """Invalid flags or configuration-file values."""


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(value, ".12g")


def _write_csv(path: str, header, rows) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w", newline="") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(v) for v in row) + "\n")
    os.replace(tmp, path)


def _parse_q_list(text: str):
    values = []
    for part in text.split(","):
        part = part.strip()
        try:
            if "/" in part:
                num, den = part.split("/")
                value = float(num) / float(den)
            else:
                value = float(part)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad deformation value {part!r}") from exc
        if not (math.isfinite(value) and value > 0.0):
            raise ConfigError(f"deformation values must be positive, got {part!r}")
        values.append(value)
    if not values:
        raise ConfigError("empty deformation list")
    return values


def _parse_grid(text: str) -> np.ndarray:
    try:
        start_s, stop_s, count_s = text.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError as exc:
        raise ConfigError(f"grid must be start:stop:count, got {text!r}") from exc
    if count < 2:
        raise ConfigError(f"grid needs at least 2 points, got {count}")
    if not start < stop:
        raise ConfigError(f"grid start must be below stop, got {text!r}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise ConfigError(f"grid bounds must be finite, got {text!r}")
    return np.linspace(start, stop, count)


def _parse_model(text: str) -> Model:
    try:
        return Model.from_name(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _load_config_file(path: str) -> dict:
    values = {}
    try:
        with open(path) as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, _, val = line.partition("=")
                values[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve(args, key: str, fallback):
    """Flag value if given, else config-file value, else built-in default."""
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    if key in args._file_config:
        return args._file_config[key]
    return fallback


# ---------------------------------------------------------------------------
# mapping helpers


def _singular_abscissae(model: Model, q: float):
    if q == 1.0:
        return ()
    if model is Model.VPJC:
        return (0.0,)
    if model is Model.PVC:
        return (math.log(1.0 / q),)
    return ()


def _nudge_grid(grid: np.ndarray, singular_points) -> np.ndarray:
    out = grid.copy()
    for s in singular_points:
        mask = np.abs(out - s) < _SINGULAR_OFFSET
        out[mask] = s + _SINGULAR_OFFSET
    return out


def _distribution_column(model: Model, q: float):
    if model in (Model.VPJC, Model.PVC) and q == 1.0:
        return "n_q1_limit", lambda eta: q1_limit_distribution(eta)
    label = f"n_q{q:g}"
    if model is Model.FN:
        return label, lambda eta: fn_distribution(eta, q)
    if model is Model.CKN:
        return label, lambda eta: ckn_distribution(eta, q)
    if model is Model.PVC:
        return label, lambda eta: pvc_distribution(eta, q)
    if model is Model.VPJC:
        return label, lambda eta: vpjc_distribution(eta, q)
    raise ConfigError(f"no distribution for model {model.value}")


# ---------------------------------------------------------------------------
# commands


def _cmd_dist(args) -> int:
    model = _parse_model(_resolve(args, "model", "vpjc"))
    if model is Model.ARIK_COON:
        raise ConfigError("dist applies to the fermionic models")
    q_list = _parse_q_list(_resolve(args, "q", "0.5"))
    grid = _parse_grid(_resolve(args, "grid", "-5:5:201"))
    out = _resolve(args, "out", f"dist_{model.value}.csv")
    singular = [s for q in q_list for s in _singular_abscissae(model, q)]
    grid = _nudge_grid(grid, singular)
    columns = [_distribution_column(model, q) for q in q_list]
    rows = []
    for eta in grid:
        row = [float(eta)]
        for _, func in columns:
            try:
                row.append(func(float(eta)))
            except SingularPointError:
                row.append(None)
        rows.append(row)
    _write_csv(out, ["eta"] + [label for label, _ in columns], rows)
    return 0


def _eos_point(model: Model, q: float, z: float, g_mult: float, tol: float):
    if model is Model.FN:
        return fn_eos(q, z, tol)
    if model is Model.CKN:
        return ckn_eos(q, z, tol)
    if model is Model.PVC:
        return pvc_eos(q, z, g_mult, tol)
    raise ConfigError("eos applies to the fn, ckn and pvc models")


def _cmd_eos(args) -> int:
    model = _parse_model(_resolve(args, "model", "fn"))
    q_list = _parse_q_list(_resolve(args, "q", "0.5"))
    grid = _parse_grid(_resolve(args, "grid", "0.05:0.9:18"))
    tol = float(_resolve(args, "tol", 1e-10))
    g_mult = float(_resolve(args, "g_mult", 1.0))
    out_base = _resolve(args, "out", f"eos_{model.value}.csv")
    if tol <= 0.0:
        raise ConfigError(f"tolerance must be positive, got {tol}")
    if grid[0] <= 0.0:
        raise ConfigError("eos grids need positive fugacities")
    header = ["z", "pressure", "density", "energy_density", "entropy"]
    for q in q_list:
        rows = []
        skipped = 0
        for z in grid:
            try:
                point = _eos_point(model, q, float(z), g_mult, tol)
                rows.append(
                    [float(z), point.pressure, point.density, point.energy_density, point.entropy]
                )
            except SeriesConvergenceError:
                skipped += 1
                rows.append([float(z), None, None, None, None])
        path = out_base
        if len(q_list) > 1:
            stem, ext = os.path.splitext(out_base)
            path = f"{stem}_q{q:g}{ext or '.csv'}"
        _write_csv(path, header, rows)
        if skipped:
            print(
                f"note: {model.value} q={q:g}: {skipped} rows outside the series "
                "domain left empty",
                file=sys.stderr,
            )
    return 0


def _cmd_virial(args) -> int:
    model = _parse_model(_resolve(args, "model", "fn"))
    if model not in (Model.FN, Model.CKN):
        raise ConfigError("virial applies to the fn and ckn models")
    q_list = _parse_q_list(_resolve(args, "q", "0.3,0.5,0.9,1.5"))
    orders = int(_resolve(args, "orders", 3))
    try:
        fitted = {q: thermo.virial_coefficients(model, q, orders) for q in q_list}
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    targets = {2: 2.0**-2.5, 3: 0.125 - 2.0 * 3.0**-2.5}
    lines = [f"virial coefficients, model={model.value}, orders={orders}"]
    for q, coeffs in fitted.items():
        pretty = ", ".join(f"a{k + 1}={c:.10g}" for k, c in enumerate(coeffs))
        lines.append(f"  q={q:g}: {pretty}")
    for k in range(2, orders + 1):
        values = [coeffs[k - 1] for coeffs in fitted.values()]
        spread = max(values) - min(values)
        line = f"  a{k}: spread across q = {spread:.3e}"
        if k in targets:
            worst = max(abs(v - targets[k]) for v in values)
            line += f", target {targets[k]:.10g}, max deviation {worst:.3e}"
        lines.append(line)
    report = "\n".join(lines)
    print(report)
    out = _resolve(args, "out", None)
    if out:
        with open(out, "w", newline="") as handle:
            handle.write(report + "\n")
    return 0


def _cmd_mu(args) -> int:
    model = _parse_model(_resolve(args, "model", "fn"))
    if model not in (Model.FN, Model.CKN):
        raise ConfigError("mu applies to the fn and ckn models")
    q_list = _parse_q_list(_resolve(args, "q", "0.5,1,2"))
    grid = _parse_grid(_resolve(args, "grid", "0.01:0.2:20"))
    out = _resolve(args, "out", f"mu_{model.value}.csv")
    closed = fn_mu_lowT if model is Model.FN else ckn_mu_lowT
    numeric = fn_mu_numeric if model is Model.FN else ckn_mu_numeric
    header = ["t"]
    for q in q_list:
        header += [f"mu_closed_q{q:g}", f"mu_numeric_q{q:g}"]
    rows = []
    for t in grid:
        row = [float(t)]
        for q in q_list:
            try:
                row += [closed(float(t), q), numeric(float(t), q)]
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        rows.append(row)
    _write_csv(out, header, rows)
    return 0


def _cmd_spectrum(args) -> int:
    model = _parse_model(_resolve(args, "model", "vpjc"))
    q_list = _parse_q_list(_resolve(args, "q", "0.5"))
    nmax = int(_resolve(args, "nmax", 20))
    if nmax < 1:
        raise ConfigError(f"nmax must be at least 1, got {nmax}")
    out = _resolve(args, "out", f"spectrum_{model.value}.csv")
    header = ["n"] + [f"g_q{q:g}" for q in q_list]
    rows = [
        [float(n)] + [basic_number(model, n, q) for q in q_list]
        for n in range(nmax + 1)
    ]
    _write_csv(out, header, rows)
    return 0


def _cmd_check(args) -> int:
    groups = None
    group = _resolve(args, "group", None)
    if group:
        groups = [group]
    seed = int(_resolve(args, "seed", 0))
    vpjc_q = float(_resolve(args, "vpjc_q", 0.5))
    try:
        results = verify.run_checks(
            groups, seed=seed, vpjc_q=vpjc_q, strict_norms=bool(args.strict)
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    for result in results:
        status = "PASS" if result.ok else "FAIL"
        print(f"GROUP {result.name}: {status} ({result.detail})")
    return 0 if all(r.ok for r in results) else 1


_FIG1_QS = (0.5, 0.7, 0.9, 1.0)
_FIG2_QS = (1.0 / 3.0, 0.5)


def _cmd_figure(args) -> int:
    name = args.name
    if name == "fig1":
        xi = float(_resolve(args, "xi", 2.0))
        out = _resolve(args, "out", "fig1.csv")
        grid = np.linspace(0.0, 6.0, 121)
        header = ["x"] + [f"n_q{q:g}" for q in _FIG1_QS]
        rows = [
            [float(x)] + [ckn_distribution(float(x) - xi, q) for q in _FIG1_QS]
            for x in grid
        ]
        _write_csv(out, header, rows)
        return 0
    if name == "fig2":
        out = _resolve(args, "out", "fig2.csv")
        grid = _nudge_grid(np.linspace(-3.0, 5.0, 161), (0.0,))
        header = ["eta"] + [f"n_q{q:g}" for q in _FIG2_QS] + ["n_q1_limit"]
        rows = []
        for eta in grid:
            row = [float(eta)]
            row += [vpjc_distribution(float(eta), q) for q in _FIG2_QS]
            row.append(q1_limit_distribution(float(eta)))
            rows.append(row)
        _write_csv(out, header, rows)
        return 0
    raise ConfigError(f"unknown figure {name!r}; available: fig1, fig2")


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(parser: argparse.ArgumentParser, *names: str) -> None:
    if "model" in names:
        parser.add_argument("--model", help="fn, ckn, pvc or vpjc")
    if "q" in names:
        parser.add_argument("--q", help="comma list of deformation values (a/b allowed)")
    if "grid" in names:
        parser.add_argument("--grid", help="start:stop:count")
    if "tol" in names:
        parser.add_argument("--tol", type=float, help="series tolerance")
    if "out" in names:
        parser.add_argument("--out", help="output path")
    parser.add_argument("--config", help="key=value file; flags take precedence")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfermi",
        description="Deformed fermion oscillator models: tables, figure data, checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dist = sub.add_parser("dist", help="distribution-function curves as CSV")
    _add_common(p_dist, "model", "q", "grid", "out")
    p_dist.set_defaults(func=_cmd_dist)

    p_eos = sub.add_parser("eos", help="equation-of-state tables as CSV")
    _add_common(p_eos, "model", "q", "grid", "tol", "out")
    p_eos.add_argument("--g-mult", dest="g_mult", type=float, help="PVC multiplicity")
    p_eos.set_defaults(func=_cmd_eos)

    p_virial = sub.add_parser("virial", help="fitted virial coefficients")
    _add_common(p_virial, "model", "q", "out")
    p_virial.add_argument("--orders", type=int, help="highest coefficient (2..6)")
    p_virial.set_defaults(func=_cmd_virial)

    p_mu = sub.add_parser("mu", help="low-temperature chemical potential table")
    _add_common(p_mu, "model", "q", "grid", "out")
    p_mu.set_defaults(func=_cmd_mu)

    p_spectrum = sub.add_parser("spectrum", help="basic-number tables as CSV")
    _add_common(p_spectrum, "model", "q", "out")
    p_spectrum.add_argument("--nmax", type=int, help="highest level")
    p_spectrum.set_defaults(func=_cmd_spectrum)

    p_check = sub.add_parser("check", help="run the verification suite")
    _add_common(p_check)
    p_check.add_argument("--group", help=f"restrict to one group: {list(verify.GROUPS)}")
    p_check.add_argument("--seed", type=int, help="seed for randomized checks")
    p_check.add_argument(
        "--vpjc-q", dest="vpjc_q", type=float, help="deformation for the norm audit"
    )
    p_check.add_argument(
        "--strict",
        action="store_true",
        help="fail the fock group on any norm violation",
    )
    p_check.set_defaults(func=_cmd_check)

    p_fig = sub.add_parser("figure", help="pinned figure data as CSV")
    p_fig.add_argument("name", help="fig1 or fig2")
    p_fig.add_argument("--xi", type=float, help="beta*mu for fig1 (default 2)")
    _add_common(p_fig, "out")
    p_fig.set_defaults(func=_cmd_figure)

    return parser


def _merge_negative_values(argv):
    """Join `--grid -5:5:11` style pairs so argparse does not read the value
    as an option; applies to the flags whose values may start with a dash."""
    merged = []
    skip = False
    for k, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token in ("--grid", "--xi") and k + 1 < len(argv):
            merged.append(f"{token}={argv[k + 1]}")
            skip = True
        else:
            merged.append(token)
    return merged


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args._file_config = (
            _load_config_file(args.config) if getattr(args, "config", None) else {}
        )
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
