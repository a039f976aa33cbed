"""Command-line front end for the packet-wavelet library.

Commands
--------
- ``render``        sample the packet and its spectrum to CSV (optional PGM)
- ``metrics``       centers, widths, uncertainty products, resolving powers
- ``sweep``         family curves versus sqrt(p), written as a CSV table
- ``cwt analyze``   directional transform of a gridded field, scalogram CSV
- ``cwt roundtrip`` analysis + synthesis fidelity report
- ``verify``        the full numbered verification suite
- ``sources``       composite source pulse (two routes) and spectral density

Configuration is plain UTF-8 ``key=value`` lines with dotted keys
(``packet.p=0.5``); command-line flags override file keys. Numeric values
accept fractions (``1/3``). All CSV output uses the shortest round-trip
decimal form of each binary64 value, starts with a comment line recording the
fully resolved configuration, and is written atomically (temp file + rename),
so identical configurations give byte-identical files.

Exit codes: 0 success; 1 failed verification; 2 configuration/parse error;
3 numerical non-convergence (including insufficient scale/angle coverage).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from fractions import Fraction

import numpy as np

from gwpack.cwt import (
    InsufficientCoverageError,
    admissibility_2d,
    forward_cwt,
    inverse_cwt,
    uniform_angles,
)
from gwpack.fields import (
    ComplexField,
    GridSpec,
    read_field_csv,
    write_field_csv,
    write_pgm,
)
from gwpack.metrics import full_report, run_sweep, sweep_rows
from gwpack.packet import PacketParams, sample_field
from gwpack.sources import composite_pulse, spectral_density
from gwpack.verification import (
    all_criteria,
    format_line,
    run_criterion,
    synthetic_test_image,
)

__all__ = ["main", "ConfigError"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


class ConfigError(ValueError):
    """Malformed configuration: unknown key, bad value, unusable path."""


_DEFAULTS = {
    "packet.p": "8",
    "packet.nu": "1/2",
    "packet.gamma": "1",
    "packet.eps": "1",
    "packet.c": "1",
    "packet.dim": "2",
    "field.t": "0",
    "grid.nx": "256",
    "grid.ny": "256",
    "grid.extent": "",  # empty -> command-specific automatic choice
    "io.out": ".",
    "io.input": "",
    "render.pgm": "false",
    "sweep.mode": "eps-over-gamma",
    "sweep.values": "1/3,2/3,2",
    "sweep.sqrt_p": "1,2,3,4,5,6,7,8",
    "cwt.scales": "32",
    "cwt.scale_min": "0.56",
    "cwt.scale_max": "4.2",
    "cwt.angles": "16",
    "sources.q": "1.3",
    "sources.t_max": "3",
    "sources.nt": "61",
    "sources.nq": "80",
    "tol.rtol": "1e-8",
    "verify.only": "",
}

_SWEEP_MODES = {
    "eps-over-gamma": "fixed_eps_over_gamma",
    "kappa-eps": "fixed_kappa_eps",
}

# the exact sweep table schema, mapped from library row positions
_SWEEP_CSV_COLUMNS = (
    "sqrt_p", "family_value", "dx", "dy", "dkx", "dky",
    "dx_over_sigx", "dy_over_sigy", "prod_x", "prod_y",
    "srp", "arp", "directional", "quad_err",
)
_SWEEP_ROW_PICK = (0, 1, 2, 3, 4, 5, 6, 7, 12, 13, 14, 15, 16, 17)


# ------------------------------------------------------------ config plumbing


def _as_float(text: str, key: str) -> float:
    try:
        if "/" in text:
            return float(Fraction(text))
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: cannot parse {text!r} as a number") from exc


def _as_int(text: str, key: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise ConfigError(f"{key}: cannot parse {text!r} as an integer") from exc


def _as_bool(text: str, key: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "1", "yes", "on"):
        return True
    if low in ("false", "0", "no", "off"):
        return False
    raise ConfigError(f"{key}: cannot parse {text!r} as a boolean")


def _as_float_list(text: str, key: str) -> list[float]:
    items = [s.strip() for s in text.split(",") if s.strip()]
    if not items:
        raise ConfigError(f"{key}: expected a comma-separated list of numbers")
    return [_as_float(s, key) for s in items]


def parse_config_file(path: str) -> dict[str, str]:
    """Read ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    out: dict[str, str] = {}
    for ln, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{ln}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        key = key.strip()
        if key not in _DEFAULTS:
            raise ConfigError(f"{path}:{ln}: unknown configuration key {key!r}")
        out[key] = value.strip()
    return out


_FLAG_TO_KEY = {
    "p": "packet.p",
    "nu": "packet.nu",
    "gamma": "packet.gamma",
    "eps": "packet.eps",
    "c": "packet.c",
    "dim": "packet.dim",
    "t": "field.t",
    "nx": "grid.nx",
    "ny": "grid.ny",
    "extent": "grid.extent",
    "out": "io.out",
    "input": "io.input",
    "mode": "sweep.mode",
    "values": "sweep.values",
    "sqrt_p": "sweep.sqrt_p",
    "scales": "cwt.scales",
    "scale_min": "cwt.scale_min",
    "scale_max": "cwt.scale_max",
    "angles": "cwt.angles",
    "q": "sources.q",
    "t_max": "sources.t_max",
    "nt": "sources.nt",
    "rtol": "tol.rtol",
    "only": "verify.only",
}


def resolve_config(args: argparse.Namespace) -> dict[str, str]:
    """defaults <- config file <- command-line flags."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(parse_config_file(args.config))
    for attr, key in _FLAG_TO_KEY.items():
        value = getattr(args, attr, None)
        if value is not None:
            cfg[key] = str(value)
    if getattr(args, "pgm", False):
        cfg["render.pgm"] = "true"
    return cfg


def _packet_from(cfg: dict[str, str]) -> PacketParams:
    dim = _as_int(cfg["packet.dim"], "packet.dim")
    if dim < 2:
        raise ConfigError("packet.dim must be at least 2")
    eps = _as_float_list(cfg["packet.eps"], "packet.eps")
    if len(eps) == 1 and dim > 2:
        eps = eps * (dim - 1)
    if len(eps) != dim - 1:
        raise ConfigError(
            f"packet.eps needs {dim - 1} entries for packet.dim={dim}, "
            f"got {len(eps)}"
        )
    try:
        return PacketParams(
            p=_as_float(cfg["packet.p"], "packet.p"),
            nu=_as_float(cfg["packet.nu"], "packet.nu"),
            gamma=_as_float(cfg["packet.gamma"], "packet.gamma"),
            eps=tuple(eps),
            c=_as_float(cfg["packet.c"], "packet.c"),
        )
    except ValueError as exc:
        raise ConfigError(f"invalid packet parameters: {exc}") from exc


def _grid_from(cfg: dict[str, str], params: PacketParams, t: float) -> GridSpec:
    nx = _as_int(cfg["grid.nx"], "grid.nx")
    ny = _as_int(cfg["grid.ny"], "grid.ny")
    if nx < 2 or ny < 2:
        raise ConfigError("grid.nx and grid.ny must be at least 2")
    if cfg["grid.extent"]:
        extent = _as_float(cfg["grid.extent"], "grid.extent")
        if extent <= 0:
            raise ConfigError("grid.extent must be positive")
    else:
        widths = [params.sigma_x] + [
            params.sigma_transverse(j) for j in range(params.dim - 1)
        ]
        extent = 8.0 * max(widths) + abs(params.c * t)
    return GridSpec.centered(extent, (nx, ny))


def _out_path(cfg: dict[str, str], name: str) -> str:
    out_dir = cfg["io.out"] or "."
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {out_dir}: {exc}")
    return os.path.join(out_dir, name)


# ------------------------------------------------------------- CSV rendering


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _config_comment(cfg: dict[str, str]) -> str:
    return "# " + " ".join(f"{k}={cfg[k]}" for k in sorted(cfg)) + "\n"


def _replace_into(path: str, writer) -> None:
    """Atomic write: ``writer`` fills a temp file that then replaces path."""
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".gwpack-tmp-")
    os.close(fd)
    try:
        writer(tmp)
        mask = os.umask(0)
        os.umask(mask)
        os.chmod(tmp, 0o666 & ~mask)
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def _write_table(path: str, cfg: dict[str, str], header, rows) -> None:
    def writer(tmp):
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(_config_comment(cfg))
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_cell(v) for v in row) + "\n")

    _replace_into(path, writer)


# ------------------------------------------------------------------ commands


def cmd_render(cfg: dict[str, str]) -> int:
    params = _packet_from(cfg)
    if params.dim != 2:
        raise ConfigError("render writes 2D grids; set packet.dim=2")
    t = _as_float(cfg["field.t"], "field.t")
    grid = _grid_from(cfg, params, t)
    position = sample_field(params, grid, "position", t=t)
    spectrum = sample_field(params, grid.fourier_dual(), "frequency", t=t)
    pos_path = _out_path(cfg, "render_position.csv")
    spec_path = _out_path(cfg, "render_spectrum.csv")
    _replace_into(pos_path, lambda tmp: write_field_csv(tmp, position))
    _replace_into(spec_path, lambda tmp: write_field_csv(tmp, spectrum))
    written = [pos_path, spec_path]
    if _as_bool(cfg["render.pgm"], "render.pgm"):
        for name, fld in (("render_position.pgm", position),
                          ("render_spectrum.pgm", spectrum)):
            path = _out_path(cfg, name)
            _replace_into(path, lambda tmp, f=fld: write_pgm(tmp, f))
            written.append(path)
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


_METRICS_COLUMNS = (
    "p", "nu", "gamma", "eps", "kappa",
    "center_x", "center_y", "width_x", "width_y",
    "center_kx", "center_ky", "width_kx", "width_ky",
    "prod_x", "prod_y", "srp", "arp", "directional", "quad_err",
)


def cmd_metrics(cfg: dict[str, str]) -> int:
    params = _packet_from(cfg)
    if params.dim != 2:
        raise ConfigError("metrics quadrature is 2D; set packet.dim=2")
    t = _as_float(cfg["field.t"], "field.t")
    rtol = _as_float(cfg["tol.rtol"], "tol.rtol")
    rep = full_report(params, t=t, rtol=rtol)
    row = (
        params.p, params.nu, params.gamma,
        ";".join(repr(e) for e in params.eps), params.kappa,
        rep.center_x, rep.center_y, rep.width_x, rep.width_y,
        rep.center_kx, rep.center_ky, rep.width_kx, rep.width_ky,
        rep.product_x, rep.product_y, rep.srp, rep.arp,
        rep.directional, rep.quadrature_err,
    )
    path = _out_path(cfg, "metrics.csv")
    _write_table(path, cfg, _METRICS_COLUMNS, [row])
    for name, value in zip(_METRICS_COLUMNS, row):
        print(f"{name} = {_cell(value)}")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_sweep(cfg: dict[str, str]) -> int:
    mode_name = cfg["sweep.mode"]
    mode = _SWEEP_MODES.get(mode_name)
    if mode is None:
        raise ConfigError(
            f"sweep.mode must be one of {sorted(_SWEEP_MODES)}, "
            f"got {mode_name!r}"
        )
    values = _as_float_list(cfg["sweep.values"], "sweep.values")
    sqrt_p = _as_float_list(cfg["sweep.sqrt_p"], "sweep.sqrt_p")
    nu = _as_float(cfg["packet.nu"], "packet.nu")
    rtol = _as_float(cfg["tol.rtol"], "tol.rtol")
    rows = []
    for value in values:
        try:
            result = run_sweep(mode, value, sqrt_p, nu=nu, rtol=rtol)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for row in sweep_rows(result):
            rows.append(tuple(row[i] for i in _SWEEP_ROW_PICK))
    path = _out_path(cfg, "sweep.csv")
    _write_table(path, cfg, _SWEEP_CSV_COLUMNS, rows)
    print(
        f"wrote {path}: {len(rows)} rows "
        f"({mode_name}, values {cfg['sweep.values']}, "
        f"sqrt_p {cfg['sweep.sqrt_p']})"
    )
    return EXIT_OK


def _cwt_setup(cfg: dict[str, str]):
    params = _packet_from(cfg)
    if params.dim != 2:
        raise ConfigError("the analyzing packet must be 2D; set packet.dim=2")
    n_scales = _as_int(cfg["cwt.scales"], "cwt.scales")
    n_angles = _as_int(cfg["cwt.angles"], "cwt.angles")
    a_min = _as_float(cfg["cwt.scale_min"], "cwt.scale_min")
    a_max = _as_float(cfg["cwt.scale_max"], "cwt.scale_max")
    if n_scales < 1 or n_angles < 1:
        raise ConfigError("cwt.scales and cwt.angles must be at least 1")
    if not 0 < a_min <= a_max:
        raise ConfigError("need 0 < cwt.scale_min <= cwt.scale_max")
    if n_scales == 1:
        scales = np.array([a_min])
    else:
        scales = np.geomspace(a_min, a_max, n_scales)
    return params, scales, uniform_angles(n_angles)


def _input_field(cfg: dict[str, str]) -> ComplexField:
    path = cfg["io.input"]
    if not path:
        raise ConfigError("cwt analyze needs io.input (--input PATH)")
    try:
        return read_field_csv(path)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read field CSV {path}: {exc}") from exc


def cmd_cwt_analyze(cfg: dict[str, str]) -> int:
    params, scales, angles = _cwt_setup(cfg)
    field = _input_field(cfg)
    t = _as_float(cfg["field.t"], "field.t")
    coeffs = forward_cwt(field, params, scales, angles, t=t)
    cell = field.grid.cell_volume()
    xs, ys = field.grid.axes()
    rows = []
    for i, a in enumerate(scales):
        for j, alpha in enumerate(angles):
            slab = np.abs(coeffs.values[i, j])
            flat = int(np.argmax(slab))
            ix, iy = np.unravel_index(flat, slab.shape)
            rows.append((
                float(a), float(alpha),
                float(np.sqrt(np.sum(slab**2) * cell)),
                float(slab[ix, iy]), float(xs[ix]), float(ys[iy]),
            ))
    path = _out_path(cfg, "cwt_scalogram.csv")
    _write_table(
        path, cfg,
        ("scale", "angle", "l2", "max_abs", "argmax_x", "argmax_y"),
        rows,
    )
    top = sorted(rows, key=lambda r: r[3], reverse=True)[:3]
    print(f"wrote {path}: {len(rows)} (scale, angle) cells")
    for a, alpha, _, peak, x, y in top:
        print(
            f"peak response {peak!r} at scale={a!r} angle={alpha!r} "
            f"centered near ({x!r}, {y!r})"
        )
    return EXIT_OK


def cmd_cwt_roundtrip(cfg: dict[str, str]) -> int:
    params, scales, angles = _cwt_setup(cfg)
    t = _as_float(cfg["field.t"], "field.t")
    if cfg["io.input"]:
        field = _input_field(cfg)
    else:
        nx = _as_int(cfg["grid.nx"], "grid.nx")
        ny = _as_int(cfg["grid.ny"], "grid.ny")
        extent = (
            _as_float(cfg["grid.extent"], "grid.extent")
            if cfg["grid.extent"]
            else 10.0
        )
        field = synthetic_test_image(GridSpec.centered(extent, (nx, ny)))
    coeffs = forward_cwt(field, params, scales, angles, t=t)
    adm = admissibility_2d(params, t=t)
    recon = inverse_cwt(coeffs, adm)
    err = float(
        np.linalg.norm(recon.values - field.values)
        / np.linalg.norm(field.values)
    )
    raw = inverse_cwt(coeffs, 1.0, min_coverage=0.0)
    empirical = float(
        np.vdot(raw.values, raw.values).real
        / np.vdot(field.values, raw.values).real
    )
    ratio = empirical / adm.value
    path = _out_path(cfg, "cwt_roundtrip.csv")
    _write_table(
        path, cfg,
        ("rel_l2_error", "gain_constant_empirical", "gain_constant_quadrature",
         "gain_ratio", "scales", "angles", "nx", "ny"),
        [(err, empirical, adm.value, ratio, len(scales), len(angles))
         + tuple(field.grid.shape)],
    )
    print(f"round-trip relative L2 error = {err!r}")
    print(f"gain constant: empirical {empirical!r}, quadrature {adm.value!r} "
          f"(ratio {ratio!r})")
    print(f"wrote {path}")
    return EXIT_OK


def cmd_verify(cfg: dict[str, str]) -> int:
    if cfg["verify.only"]:
        wanted = [_as_int(s, "verify.only")
                  for s in cfg["verify.only"].split(",") if s.strip()]
        known = {idx for idx, _ in all_criteria()}
        bad = [i for i in wanted if i not in known]
        if bad:
            raise ConfigError(f"verify.only: no criterion numbered {bad}")
    else:
        wanted = [idx for idx, _ in all_criteria()]
    failures = 0
    for idx in wanted:
        result = run_criterion(idx)
        print(format_line(result))
        sys.stdout.flush()
        if not result.passed:
            failures += 1
    print(f"{len(wanted) - failures}/{len(wanted)} criteria passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


def cmd_sources(cfg: dict[str, str]) -> int:
    params = _packet_from(cfg)
    t_max = _as_float(cfg["sources.t_max"], "sources.t_max")
    nt = _as_int(cfg["sources.nt"], "sources.nt")
    nq = _as_int(cfg["sources.nq"], "sources.nq")
    if t_max <= 0 or nt < 2 or nq < 2:
        raise ConfigError("need sources.t_max > 0, sources.nt/nq >= 2")
    rtol = _as_float(cfg["tol.rtol"], "tol.rtol")

    pulse_rows = []
    worst_gap = 0.0
    for t in np.linspace(-t_max, t_max, nt):
        closed = composite_pulse(float(t), params)
        quad = composite_pulse(float(t), params, method="quadrature",
                               rtol=rtol)
        gap = abs(closed - quad) / abs(closed)
        worst_gap = max(worst_gap, gap)
        pulse_rows.append((float(t), closed.real, closed.imag, abs(closed),
                           quad.real, quad.imag, gap))
    pulse_path = _out_path(cfg, "sources_pulse.csv")
    _write_table(
        pulse_path, cfg,
        ("t", "re_closed", "im_closed", "abs_closed",
         "re_quadrature", "im_quadrature", "rel_gap"),
        pulse_rows,
    )

    qs = params.kappa * np.geomspace(1.0 / 8.0, 8.0, nq)
    density_rows = [(float(q), float(spectral_density(float(q), params)))
                    for q in qs]
    density_path = _out_path(cfg, "sources_density.csv")
    _write_table(density_path, cfg, ("q", "density"), density_rows)

    print(f"wrote {pulse_path}: {nt} time samples, "
          f"worst closed-vs-quadrature relative gap {worst_gap!r}")
    print(f"wrote {density_path}: {nq} spectral-density samples")
    return EXIT_OK


# ---------------------------------------------------------------- entry point


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--out", help="output directory (io.out)")
    parser.add_argument("--p", help="packet sharpness p (packet.p)")
    parser.add_argument("--nu", help="radial profile order (packet.nu)")
    parser.add_argument("--gamma", help="length scale (packet.gamma)")
    parser.add_argument(
        "--eps", help="transverse scales, comma list for n-D (packet.eps)"
    )
    parser.add_argument("--c", help="propagation speed (packet.c)")
    parser.add_argument("--t", help="evaluation time (field.t)")
    parser.add_argument("--dim", help="space dimension (packet.dim)")
    parser.add_argument("--nx", help="grid points along x (grid.nx)")
    parser.add_argument("--ny", help="grid points along y (grid.ny)")
    parser.add_argument("--extent", help="grid half-width (grid.extent)")
    parser.add_argument("--rtol", help="quadrature tolerance (tol.rtol)")


def _add_cwt_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scales", help="number of scales (cwt.scales)")
    parser.add_argument("--scale-min", dest="scale_min",
                        help="smallest scale (cwt.scale_min)")
    parser.add_argument("--scale-max", dest="scale_max",
                        help="largest scale (cwt.scale_max)")
    parser.add_argument("--angles", help="number of angles (cwt.angles)")
    parser.add_argument("--input", help="field CSV to analyze (io.input)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwpack",
        description="wave-packet wavelets: rendering, metrics, directional "
                    "CWT, verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    render = sub.add_parser(
        "render", help="sample the packet and its spectrum to files")
    _add_common(render)
    render.add_argument("--pgm", action="store_true",
                        help="also write PGM magnitude pictures (render.pgm)")
    _add_common(sub.add_parser(
        "metrics", help="centers, widths, uncertainty and resolving powers"))

    sweep = sub.add_parser("sweep", help="family curves versus sqrt(p)")
    _add_common(sweep)
    sweep.add_argument("--mode", choices=sorted(_SWEEP_MODES),
                       help="sweep family (sweep.mode)")
    sweep.add_argument("--values",
                       help="family values, fractions allowed (sweep.values)")
    sweep.add_argument("--sqrt-p", dest="sqrt_p",
                       help="sqrt(p) list (sweep.sqrt_p)")

    cwt = sub.add_parser("cwt", help="directional continuous wavelet transform")
    cwt_sub = cwt.add_subparsers(dest="subcommand", required=True)
    for name, blurb in (("analyze", "transform a gridded field"),
                        ("roundtrip", "analysis + synthesis fidelity")):
        sp = cwt_sub.add_parser(name, help=blurb)
        _add_common(sp)
        _add_cwt_flags(sp)

    verify = sub.add_parser("verify", help="run the numbered verification suite")
    _add_common(verify)
    verify.add_argument("--only",
                        help="comma list of criterion numbers (verify.only)")

    sources = sub.add_parser(
        "sources", help="source pulse time series and spectral density")
    _add_common(sources)
    sources.add_argument("--q", help="beam spatial frequency (sources.q)")
    sources.add_argument("--t-max", dest="t_max",
                         help="pulse half-window (sources.t_max)")
    sources.add_argument("--nt", help="pulse sample count (sources.nt)")
    return parser


_COMMANDS = {
    ("render", None): cmd_render,
    ("metrics", None): cmd_metrics,
    ("sweep", None): cmd_sweep,
    ("cwt", "analyze"): cmd_cwt_analyze,
    ("cwt", "roundtrip"): cmd_cwt_roundtrip,
    ("verify", None): cmd_verify,
    ("sources", None): cmd_sources,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    key = (args.command, getattr(args, "subcommand", None))
    try:
        cfg = resolve_config(args)
        return _COMMANDS[key](cfg)
    except InsufficientCoverageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
