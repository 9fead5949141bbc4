"""Command-line front end.

Four subcommands cover the common runs: `scan` sweeps transmission and
reflection probabilities over frequency, `field` evaluates a packet on
a space-time grid, `propagator` samples the space-time propagator over
a time window, and `verify` runs the cross-check suites.

Runs are driven by a flat key = value config file; `#` starts a
comment.  Every output CSV echoes the canonical form of its config in
its header and writes a sibling `<basename>.config` file, so a run can
be reproduced byte for byte from its own outputs.  Keys that cannot
change the numbers (thread count, output directory) are deliberately
left out of the echo.

Media can be given either directly as the dimensionless ratios
`medium.v2_over_v1` / `medium.v2_over_v3`, or as physical velocities
`medium.v1` .. `medium.v3`, which are converted; when both appear the
ratios win.  All other quantities are dimensionless: lengths in spacer
widths, times in spacer crossing times.

Exit codes: 0 success, 2 config problem, 3 a quadrature missed its
accuracy target (outputs are still written), 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import verification
from .errors import (
    AccuracyShortfallWarning,
    ConfigError,
    CutoffError,
    EvanescentRegimeError,
)
from .fieldgrid import QuadratureSettings, evaluate_field_grid
from .media import SpectralPoint, TrilayerMedium
from .packets import IncidentPacket
from .packet_propagator import propagator_g
from .trilayer_green import probabilities

__all__ = ["main", "RunConfig", "parse_config_text", "load_config"]

_KEY_RE = re.compile(r"^[a-z][a-z0-9_]*(\.[a-z][a-z0-9_]*)+$")
_INT_RE = re.compile(r"^[+-]?\d+$")


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def parse_config_text(text: str) -> dict:
    """Parse flat key = value lines into a typed mapping."""
    entries: dict = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw_line.strip()!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not _KEY_RE.match(key):
            raise ConfigError(f"line {lineno}: malformed key {key!r}")
        if key in entries:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        if value.lower() in ("true", "false"):
            entries[key] = value.lower() == "true"
        elif _INT_RE.match(value):
            entries[key] = int(value)
        else:
            try:
                entries[key] = float(value)
            except ValueError:
                entries[key] = value
    return entries


def load_config(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text)


@dataclass(frozen=True)
class RunConfig:
    """Canonical form of one run: what gets echoed and where output goes."""

    command: str
    canonical: tuple
    out_dir: Path
    basename: str
    plot_script: bool

    def lines(self) -> list[str]:
        return [f"{key} = {_format_value(value)}" for key, value in self.canonical]


def _require(raw: dict, key: str):
    if key not in raw:
        raise ConfigError(f"missing required key {key}")
    return raw[key]


def _as_float(raw: dict, key: str, default=None) -> float:
    if key not in raw:
        if default is None:
            raise ConfigError(f"missing required key {key}")
        return float(default)
    value = raw[key]
    if isinstance(value, bool) or isinstance(value, str):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)

def _as_int(raw: dict, key: str, default=None) -> int:
    if key not in raw:
        if default is None:
            raise ConfigError(f"missing required key {key}")
        return int(default)
    value = raw[key]
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return int(value)


def _as_bool(raw: dict, key: str, default: bool) -> bool:
    if key not in raw:
        return default
    value = raw[key]
    if not isinstance(value, bool):
        raise ConfigError(f"{key} must be true or false, got {value!r}")
    return value


def _as_str(raw: dict, key: str, default: str) -> str:
    value = raw.get(key, default)
    if not isinstance(value, str):
        raise ConfigError(f"{key} must be a string, got {value!r}")
    return value


def _check_unknown(raw: dict, allowed: set) -> None:
    unknown = sorted(set(raw) - allowed)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")


_MEDIUM_KEYS = {
    "medium.v2_over_v1",
    "medium.v2_over_v3",
    "medium.v1",
    "medium.v2",
    "medium.v3",
    "medium.d",
}


def _build_medium(raw: dict):
    """Dimensionless medium plus its canonical echo entries."""
    have_ratios = "medium.v2_over_v1" in raw or "medium.v2_over_v3" in raw
    have_physical = any(k in raw for k in ("medium.v1", "medium.v2", "medium.v3"))
    if have_ratios:
        a = _as_float(raw, "medium.v2_over_v1")
        b = _as_float(raw, "medium.v2_over_v3")
        if have_physical:
            warnings.warn(
                "both velocity ratios and physical velocities given; ratios take precedence",
                UserWarning,
                stacklevel=2,
            )
    elif have_physical:
        v1 = _as_float(raw, "medium.v1")
        v2 = _as_float(raw, "medium.v2")
        v3 = _as_float(raw, "medium.v3")
        if min(v1, v2, v3) <= 0:
            raise ConfigError("physical velocities must be positive")
        a = v2 / v1
        b = v2 / v3
    else:
        raise ConfigError(
            "medium is unspecified: give medium.v2_over_v1 and medium.v2_over_v3, "
            "or medium.v1 .. medium.v3"
        )
    if not (a > 0 and b > 0) or not (np.isfinite(a) and np.isfinite(b)):
        raise ConfigError(f"velocity ratios must be positive and finite, got {a!r}, {b!r}")
    if "medium.d" in raw and _as_float(raw, "medium.d") <= 0:
        raise ConfigError("medium.d must be positive")
    medium = TrilayerMedium(v1=1.0 / a, v2=1.0, v3=1.0 / b, d=1.0)
    entries = [("medium.v2_over_v1", float(a)), ("medium.v2_over_v3", float(b))]
    return medium, entries


def _build_quadrature(raw: dict):
    tol = _as_float(raw, "quadrature.tol", 1e-8)
    cut = _as_float(raw, "quadrature.envelope_cut", 7.5)
    try:
        settings = QuadratureSettings(tol=tol, envelope_cut=cut)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    entries = [("quadrature.tol", tol), ("quadrature.envelope_cut", cut)]
    return settings, entries


def _build_output(raw: dict, command: str, out_override: str | None):
    basename = _as_str(raw, "output.basename", command)
    if not re.match(r"^[A-Za-z0-9._-]+$", basename):
        raise ConfigError(f"output.basename must be a simple file stem, got {basename!r}")
    plot_script = _as_bool(raw, "output.plot_script", True)
    out_dir = Path(out_override or _as_str(raw, "output.dir", "."))
    entries = [("output.basename", basename), ("output.plot_script", plot_script)]
    return out_dir, basename, plot_script, entries


def _write_csv(path: Path, config: RunConfig, columns, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"# layerwave {config.command}\n")
        for line in config.lines():
            fh.write(f"# {line}\n")
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_format_value(v) for v in row) + "\n")


def _write_sidecars(config: RunConfig, plot_template: str | None) -> None:
    config_path = config.out_dir / f"{config.basename}.config"
    with open(config_path, "w", encoding="utf-8", newline="") as fh:
        for line in config.lines():
            fh.write(line + "\n")
    if plot_template is not None and config.plot_script:
        script_path = config.out_dir / f"{config.basename}_plot.py"
        with open(script_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(plot_template.replace("@BASENAME@", config.basename))


_FIELD_PLOT = '''#!/usr/bin/env python3
"""Plot the space-time field written by layerwave field."""
import io
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

here = Path(__file__).resolve().parent
text = (here / "@BASENAME@.csv").read_text(encoding="utf-8")
body = "".join(line for line in text.splitlines(True) if not line.startswith("#"))
data = np.genfromtxt(io.StringIO(body), delimiter=",", names=True)
xs = np.unique(data["x_tilde"])
ts = np.unique(data["t_tilde"])
f = data["f"].reshape(ts.size, xs.size)

fig, (ax_map, ax_cut) = plt.subplots(1, 2, figsize=(11, 4.2), constrained_layout=True)
mesh = ax_map.pcolormesh(xs, ts, f, shading="auto", cmap="RdBu_r")
fig.colorbar(mesh, ax=ax_map, label="f")
ax_map.set_xlabel("x / d")
ax_map.set_ylabel("t v2 / d")
ax_map.set_title("field")

mid = ts.size // 2
for idx, style in ((0, ":"), (mid, "--"), (ts.size - 1, "-")):
    ax_cut.plot(xs, f[idx], style, label=f"t = {ts[idx]:.3g}")
ax_cut.set_xlabel("x / d")
ax_cut.set_ylabel("f")
ax_cut.legend()
ax_cut.set_title("snapshots")

fig.savefig(here / "@BASENAME@.png", dpi=160)
print(f"wrote {here / '@BASENAME@.png'}")
'''

_SCAN_PLOT = '''#!/usr/bin/env python3
"""Plot the probability sweep written by layerwave scan."""
import io
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

here = Path(__file__).resolve().parent
text = (here / "@BASENAME@.csv").read_text(encoding="utf-8")
body = "".join(line for line in text.splitlines(True) if not line.startswith("#"))
data = np.genfromtxt(io.StringIO(body), delimiter=",", names=True)

fig, ax = plt.subplots(figsize=(6.4, 4.2), constrained_layout=True)
ax.plot(data["omega_tilde"], data["t_prob"], label="transmission")
ax.plot(data["omega_tilde"], data["r_prob"], label="reflection")
ax.set_xlabel("omega d / v2")
ax.set_ylabel("probability")
ax.set_ylim(-0.02, 1.02)
ax.legend()

fig.savefig(here / "@BASENAME@.png", dpi=160)
print(f"wrote {here / '@BASENAME@.png'}")
'''

_PROPAGATOR_PLOT = '''#!/usr/bin/env python3
"""Plot the propagator trace written by layerwave propagator."""
import io
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np

here = Path(__file__).resolve().parent
text = (here / "@BASENAME@.csv").read_text(encoding="utf-8")
body = "".join(line for line in text.splitlines(True) if not line.startswith("#"))
data = np.genfromtxt(io.StringIO(body), delimiter=",", names=True)

fig, ax = plt.subplots(figsize=(6.4, 4.2), constrained_layout=True)
ax.plot(data["tau_tilde"], data["g"])
ax.set_xlabel("tau v2 / d")
ax.set_ylabel("g")

fig.savefig(here / "@BASENAME@.png", dpi=160)
print(f"wrote {here / '@BASENAME@.png'}")
'''


def cmd_scan(args) -> int:
    raw = load_config(args.config)
    allowed = _MEDIUM_KEYS | {
        "scan.omega_min",
        "scan.omega_max",
        "scan.count",
        "scan.k_par",
        "output.dir",
        "output.basename",
        "output.plot_script",
    }
    _check_unknown(raw, allowed)
    medium, medium_entries = _build_medium(raw)
    omega_min = _as_float(raw, "scan.omega_min")
    omega_max = _as_float(raw, "scan.omega_max")
    count = _as_int(raw, "scan.count")
    k_par = _as_float(raw, "scan.k_par", 0.0)
    if count < 1:
        raise ConfigError("scan.count must be at least 1")
    if not omega_min <= omega_max:
        raise ConfigError("scan.omega_min must not exceed scan.omega_max")
    if omega_min <= 0:
        raise ConfigError("scan.omega_min must be positive")
    out_dir, basename, plot, output_entries = _build_output(raw, "scan", args.out)
    canonical = tuple(
        medium_entries
        + [
            ("scan.omega_min", omega_min),
            ("scan.omega_max", omega_max),
            ("scan.count", count),
            ("scan.k_par", k_par),
        ]
        + output_entries
    )
    config = RunConfig("scan", canonical, out_dir, basename, plot)

    rows = []
    for omega in np.linspace(omega_min, omega_max, count):
        spectral = SpectralPoint.at(medium, float(omega), k_par)
        try:
            t_prob, r_prob = probabilities(medium, spectral)
        except (EvanescentRegimeError, CutoffError) as exc:
            raise ConfigError(
                f"scan point omega_tilde={float(omega)!r} has no propagating "
                f"probabilities: {exc}"
            ) from exc
        rows.append((float(omega), t_prob, r_prob, t_prob + r_prob))

    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{basename}.csv"
    _write_csv(csv_path, config, ("omega_tilde", "t_prob", "r_prob", "sum_prob"), rows)
    _write_sidecars(config, _SCAN_PLOT)
    print(f"wrote {csv_path}")
    return 0


def cmd_field(args) -> int:
    raw = load_config(args.config)
    allowed = _MEDIUM_KEYS | {
        "packet.omega0",
        "packet.x_i",
        "packet.sigma_x",
        "packet.k_par",
        "packet.rho_par",
        "packet.amplitude",
        "grid.x_min",
        "grid.x_max",
        "grid.nx",
        "grid.t_min",
        "grid.t_max",
        "grid.nt",
        "grid.component",
        "quadrature.tol",
        "quadrature.envelope_cut",
        "output.dir",
        "output.basename",
        "output.plot_script",
    }
    _check_unknown(raw, allowed)
    medium, medium_entries = _build_medium(raw)
    omega0 = _as_float(raw, "packet.omega0")
    x_i = _as_float(raw, "packet.x_i")
    sigma_x = _as_float(raw, "packet.sigma_x")
    k_par = _as_float(raw, "packet.k_par", 0.0)
    rho_par = _as_float(raw, "packet.rho_par", 0.0)
    amplitude = _as_float(raw, "packet.amplitude", 1.0)
    try:
        packet = IncidentPacket.oblique(
            medium, omega0=omega0, k0_par=k_par, x_i=x_i, sigma_x=sigma_x, amplitude=amplitude
        )
    except ValueError as exc:
        raise ConfigError(f"invalid packet: {exc}") from exc
    x_min = _as_float(raw, "grid.x_min")
    x_max = _as_float(raw, "grid.x_max")
    nx = _as_int(raw, "grid.nx")
    t_min = _as_float(raw, "grid.t_min")
    t_max = _as_float(raw, "grid.t_max")
    nt = _as_int(raw, "grid.nt")
    component = _as_str(raw, "grid.component", "full")
    if nx < 1 or nt < 1:
        raise ConfigError("grid.nx and grid.nt must be at least 1")
    if not (x_min <= x_max and t_min <= t_max):
        raise ConfigError("grid bounds must satisfy min <= max")
    if component not in ("full", "incident", "reflected"):
        raise ConfigError(f"grid.component must be full, incident or reflected, got {component!r}")
    settings, quad_entries = _build_quadrature(raw)
    out_dir, basename, plot, output_entries = _build_output(raw, "field", args.out)
    canonical = tuple(
        medium_entries
        + [
            ("packet.omega0", omega0),
            ("packet.x_i", x_i),
            ("packet.sigma_x", sigma_x),
            ("packet.k_par", k_par),
            ("packet.rho_par", rho_par),
            ("packet.amplitude", amplitude),
            ("grid.x_min", x_min),
            ("grid.x_max", x_max),
            ("grid.nx", nx),
            ("grid.t_min", t_min),
            ("grid.t_max", t_max),
            ("grid.nt", nt),
            ("grid.component", component),
        ]
        + quad_entries
        + output_entries
    )
    config = RunConfig("field", canonical, out_dir, basename, plot)

    xs = np.linspace(x_min, x_max, nx)
    ts = np.linspace(t_min, t_max, nt)
    shortfall = False
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            grid = evaluate_field_grid(
                medium,
                packet,
                xs,
                ts,
                settings=settings,
                threads=args.threads,
                component=component,
                rho_par_tilde=rho_par,
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    for item in caught:
        if issubclass(item.category, AccuracyShortfallWarning):
            shortfall = True
        else:
            warnings.warn_explicit(
                item.message, item.category, item.filename, item.lineno
            )

    rows = []
    for it, t in enumerate(ts):
        for ix, x in enumerate(xs):
            fp = grid.f_plus[it, ix]
            fm = grid.f_minus[it, ix]
            rows.append((float(x), float(t), fp, fm, fp + fm))
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{basename}.csv"
    _write_csv(csv_path, config, ("x_tilde", "t_tilde", "f_plus", "f_minus", "f"), rows)
    _write_sidecars(config, _FIELD_PLOT)
    print(f"wrote {csv_path}")
    if shortfall:
        worst = float(np.max(grid.error_estimate))
        print(
            f"accuracy shortfall: worst error estimate {worst:.3e} "
            f"exceeds quadrature.tol = {settings.tol:.3e}",
            file=sys.stderr,
        )
        return 3
    return 0


def cmd_propagator(args) -> int:
    raw = load_config(args.config)
    allowed = _MEDIUM_KEYS | {
        "propagator.x",
        "propagator.x_src",
        "propagator.tau_min",
        "propagator.tau_max",
        "propagator.count",
        "propagator.k_par",
        "propagator.taper_width",
        "quadrature.tol",
        "quadrature.envelope_cut",
        "output.dir",
        "output.basename",
        "output.plot_script",
    }
    _check_unknown(raw, allowed)
    medium, medium_entries = _build_medium(raw)
    x = _as_float(raw, "propagator.x")
    x_src = _as_float(raw, "propagator.x_src")
    tau_min = _as_float(raw, "propagator.tau_min")
    tau_max = _as_float(raw, "propagator.tau_max")
    count = _as_int(raw, "propagator.count")
    k_par = _as_float(raw, "propagator.k_par", 0.0)
    taper_width = _as_float(raw, "propagator.taper_width", 60.0)
    if count < 1:
        raise ConfigError("propagator.count must be at least 1")
    if not tau_min <= tau_max:
        raise ConfigError("propagator.tau_min must not exceed propagator.tau_max")
    settings, quad_entries = _build_quadrature(raw)
    out_dir, basename, plot, output_entries = _build_output(raw, "propagator", args.out)
    canonical = tuple(
        medium_entries
        + [
            ("propagator.x", x),
            ("propagator.x_src", x_src),
            ("propagator.tau_min", tau_min),
            ("propagator.tau_max", tau_max),
            ("propagator.count", count),
            ("propagator.k_par", k_par),
            ("propagator.taper_width", taper_width),
        ]
        + quad_entries
        + output_entries
    )
    config = RunConfig("propagator", canonical, out_dir, basename, plot)

    rows = []
    shortfall = False
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        for tau in np.linspace(tau_min, tau_max, count):
            value = propagator_g(
                x,
                x_src,
                float(tau),
                medium,
                k_par=k_par,
                tol=settings.tol,
                taper_width=taper_width,
                envelope_cut=settings.envelope_cut,
            )
            rows.append((float(tau), value))
    if any(issubclass(item.category, AccuracyShortfallWarning) for item in caught):
        shortfall = True

    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{basename}.csv"
    _write_csv(csv_path, config, ("tau_tilde", "g"), rows)
    _write_sidecars(config, _PROPAGATOR_PLOT)
    print(f"wrote {csv_path}")
    if shortfall:
        print("accuracy shortfall: some samples missed quadrature.tol", file=sys.stderr)
        return 3
    return 0


def cmd_verify(args) -> int:
    raw = load_config(args.config) if args.config else {}
    allowed = {"output.dir", "output.basename", "output.plot_script"}
    _check_unknown(raw, allowed)
    out_dir, basename, _, _ = _build_output(raw, "verify", args.out)
    report = verification.run_all(seed=args.seed)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / f"{basename}.json"
    with open(report_path, "w", encoding="utf-8", newline="") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for check in report["checks"]:
        status = "ok" if check["passed"] else "FAIL"
        detail = {
            k: v for k, v in check.items() if k not in ("name", "passed")
        }
        summary = ", ".join(f"{k}={_format_value(v)}" for k, v in sorted(detail.items()))
        print(f"{status:4s} {check['name']} ({summary})")
    print(f"wrote {report_path}")
    if not report["passed"]:
        print("verification failed", file=sys.stderr)
        return 4
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="layerwave",
        description="Wave propagation through a three-layer medium",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_scan = sub.add_parser("scan", help="sweep transmission/reflection probabilities")
    p_scan.add_argument("--config", required=True)
    p_scan.add_argument("--out", default=None, help="output directory override")
    p_scan.set_defaults(func=cmd_scan)

    p_field = sub.add_parser("field", help="evaluate a packet field on a space-time grid")
    p_field.add_argument("--config", required=True)
    p_field.add_argument("--out", default=None, help="output directory override")
    p_field.add_argument("--threads", type=int, default=1)
    p_field.set_defaults(func=cmd_field)

    p_prop = sub.add_parser("propagator", help="sample the space-time propagator")
    p_prop.add_argument("--config", required=True)
    p_prop.add_argument("--out", default=None, help="output directory override")
    p_prop.set_defaults(func=cmd_propagator)

    p_verify = sub.add_parser("verify", help="run the cross-check suites")
    p_verify.add_argument("--config", default=None)
    p_verify.add_argument("--out", default=None, help="output directory override")
    p_verify.add_argument("--seed", type=int, default=20240815)
    p_verify.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
