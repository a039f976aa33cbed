"""End-to-end command-line tests (subprocess level).

Covers every command, the exit-code contract (0 success, 1 failed
verification, 2 config error, 3 non-convergence), config-file/flag
precedence, the exact sweep CSV schema, and byte-identical reruns.
"""

import shutil
import subprocess
import sys

import numpy as np
import pytest

from gwpack.fields import ComplexField, GridSpec, read_field_csv, write_field_csv
from gwpack.packet import PacketParams, sample_field

pytestmark = pytest.mark.filterwarnings("ignore::DeprecationWarning")

SWEEP_HEADER = (
    "sqrt_p,family_value,dx,dy,dkx,dky,dx_over_sigx,dy_over_sigy,"
    "prod_x,prod_y,srp,arp,directional,quad_err"
)


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "gwpack.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
        timeout=300,
    )


def read_table(path):
    """(comment, header, rows-as-string-lists) of a CLI CSV table."""
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# ")
    rows = [line.split(",") for line in lines[2:]]
    return lines[0], lines[1], rows


# ---------------------------------------------------------------- render


def test_render_writes_position_spectrum_and_pgm(tmp_path):
    out = tmp_path / "fig1"
    res = run_cli(
        "render", "--p", "0.5", "--gamma", "0.25", "--eps", "1",
        "--nx", "32", "--ny", "32", "--pgm", "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    for name in (
        "render_position.csv",
        "render_spectrum.csv",
        "render_position.pgm",
        "render_spectrum.pgm",
    ):
        assert (out / name).exists()
    lines = (out / "render_position.csv").read_text().splitlines()
    assert lines[0].startswith("# origin=")
    assert lines[1] == "x,y,re,im,abs"
    assert (
        (out / "render_spectrum.csv").read_text().splitlines()[1]
        == "kx,ky,re,im,abs"
    )
    pgm = (out / "render_position.pgm").read_bytes()
    assert pgm.startswith(b"P5\n32 32\n255\n")
    assert len(pgm) == len(b"P5\n32 32\n255\n") + 32 * 32


def test_rendered_csv_rereads_bit_exactly(tmp_path):
    out = tmp_path / "r"
    res = run_cli(
        "render", "--p", "2", "--gamma", "1", "--eps", "0.5",
        "--nx", "24", "--ny", "20", "--extent", "4", "--t", "0.3",
        "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    reread = read_field_csv(out / "render_position.csv")
    params = PacketParams(p=2.0, nu=0.5, gamma=1.0, eps=(0.5,))
    grid = GridSpec.centered(4.0, (24, 20))
    direct = sample_field(params, grid, "position", t=0.3)
    assert reread.space == "position"
    assert reread.grid == direct.grid
    assert np.array_equal(reread.values, direct.values)


def test_render_rejects_three_dimensions(tmp_path):
    res = run_cli("render", "--dim", "3", "--out", str(tmp_path))
    assert res.returncode == 2
    assert "2D" in res.stderr


# ------------------------------------------------------------- determinism


def test_reruns_are_byte_identical(tmp_path):
    args = (
        "render", "--p", "1", "--gamma", "0.5", "--eps", "16",
        "--nx", "16", "--ny", "16",
    )
    for sub in ("a", "b"):
        res = run_cli(*args, "--out", str(tmp_path / sub))
        assert res.returncode == 0, res.stderr
    for name in ("render_position.csv", "render_spectrum.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (
            tmp_path / "b" / name
        ).read_bytes()


# ------------------------------------------------------- config resolution


def test_config_file_sets_and_flags_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# comment line\n"
        "\n"
        "packet.p = 4\n"
        "packet.eps=2\n"
        "tol.rtol=1e-7\n"
    )
    out = tmp_path / "m"
    res = run_cli(
        "metrics", "--config", str(cfg), "--p", "9", "--out", str(out)
    )
    assert res.returncode == 0, res.stderr
    comment, header, rows = read_table(out / "metrics.csv")
    assert "packet.p=9" in comment  # flag beat the file
    assert "packet.eps=2" in comment  # file beat the default
    cols = dict(zip(header.split(","), rows[0]))
    assert float(cols["p"]) == 9.0
    assert float(cols["kappa"]) == 4.5
    assert cols["eps"] == "2.0"


def test_unknown_config_key_is_exit_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("packet.zz=1\n")
    res = run_cli("metrics", "--config", str(cfg), "--out", str(tmp_path))
    assert res.returncode == 2
    assert "packet.zz" in res.stderr


def test_invalid_parameter_value_is_exit_2(tmp_path):
    res = run_cli("metrics", "--p", "-1", "--out", str(tmp_path))
    assert res.returncode == 2
    res = run_cli("metrics", "--p", "abc", "--out", str(tmp_path))
    assert res.returncode == 2


def test_missing_config_file_is_exit_2(tmp_path):
    res = run_cli(
        "metrics", "--config", str(tmp_path / "nope.cfg"),
        "--out", str(tmp_path),
    )
    assert res.returncode == 2


def test_usage_error_is_exit_2_and_help_is_exit_0():
    assert run_cli("frobnicate").returncode == 2
    assert run_cli().returncode == 2
    assert run_cli("--help").returncode == 0
    assert run_cli("cwt", "--help").returncode == 0


# ------------------------------------------------------------------ metrics


def test_metrics_values_match_library(tmp_path):
    from gwpack.metrics import full_report

    out = tmp_path / "m"
    res = run_cli(
        "metrics", "--p", "4", "--gamma", "1", "--eps", "2", "--out", str(out)
    )
    assert res.returncode == 0, res.stderr
    _, header, rows = read_table(out / "metrics.csv")
    cols = dict(zip(header.split(","), rows[0]))
    rep = full_report(PacketParams(p=4.0, nu=0.5, gamma=1.0, eps=(2.0,)))
    assert float(cols["width_x"]) == rep.width_x
    assert float(cols["prod_x"]) == rep.product_x
    assert float(cols["srp"]) == rep.srp
    assert cols["directional"] == "true"
    assert "width_x = " in res.stdout


# -------------------------------------------------------------------- sweep


def test_sweep_schema_and_content(tmp_path):
    out = tmp_path / "s"
    res = run_cli(
        "sweep", "--mode", "kappa-eps", "--values", "4", "--sqrt-p", "1,2",
        "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    _, header, rows = read_table(out / "sweep.csv")
    assert header == SWEEP_HEADER
    assert len(rows) == 2
    for row in rows:
        assert row[12] in ("true", "false")
        # every non-empty cell reparses as a float
        for cell in row[:12] + row[13:]:
            if cell:
                float(cell)
    assert float(rows[0][0]) == 1.0 and float(rows[1][0]) == 2.0
    assert float(rows[0][1]) == 4.0


def test_sweep_accepts_fraction_values(tmp_path):
    out = tmp_path / "s"
    res = run_cli(
        "sweep", "--mode", "eps-over-gamma", "--values", "1/3",
        "--sqrt-p", "2", "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    comment, _, rows = read_table(out / "sweep.csv")
    assert "sweep.values=1/3" in comment
    assert rows[0][1] == repr(1.0 / 3.0)


def test_sweep_non_directional_cells_are_empty(tmp_path):
    out = tmp_path / "s"
    res = run_cli(
        "sweep", "--mode", "eps-over-gamma", "--values", "2",
        "--sqrt-p", "0.5", "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    _, header, rows = read_table(out / "sweep.csv")
    idx = header.split(",").index
    assert rows[0][idx("srp")] == ""
    assert rows[0][idx("arp")] == ""
    assert rows[0][idx("directional")] == "false"


def test_sweep_bad_mode_in_config_is_exit_2(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("sweep.mode=bogus\n")
    res = run_cli("sweep", "--config", str(cfg), "--out", str(tmp_path))
    assert res.returncode == 2
    assert "sweep.mode" in res.stderr


# ---------------------------------------------------------------------- cwt


def _write_single_component_field(path, carrier=1.8, center=(1.0, -0.5)):
    grid = GridSpec.centered(8.0, (96, 96))
    xs, ys = grid.mesh()
    vals = np.exp(
        -((xs - center[0]) ** 2 + (ys - center[1]) ** 2) / (2 * 2.0**2)
        + 1j * carrier * (xs - center[0])
    )
    write_field_csv(path, ComplexField(grid, vals))


def test_cwt_analyze_locates_the_component(tmp_path):
    src = tmp_path / "field.csv"
    _write_single_component_field(src)
    out = tmp_path / "a"
    res = run_cli(
        "cwt", "analyze", "--input", str(src), "--scales", "8",
        "--scale-min", "1.3", "--scale-max", "3.2", "--angles", "8",
        "--out", str(out),
    )
    assert res.returncode == 0, res.stderr
    _, header, rows = read_table(out / "cwt_scalogram.csv")
    assert header == "scale,angle,l2,max_abs,argmax_x,argmax_y"
    assert len(rows) == 8 * 8
    best = max(rows, key=lambda r: float(r[3]))
    # carrier along +x: the zero-angle member wins, centered on the blob,
    # at scale near kappa/carrier = 4/1.8
    assert float(best[1]) == 0.0
    assert abs(float(best[0]) - 4.0 / 1.8) < 0.6
    assert abs(float(best[4]) - 1.0) < 0.35
    assert abs(float(best[5]) + 0.5) < 0.35


def test_cwt_analyze_requires_input(tmp_path):
    res = run_cli("cwt", "analyze", "--out", str(tmp_path))
    assert res.returncode == 2
    assert "input" in res.stderr


def test_cwt_analyze_rejects_frequency_space_input(tmp_path):
    out = tmp_path / "r"
    assert run_cli(
        "render", "--nx", "32", "--ny", "32", "--out", str(out)
    ).returncode == 0
    res = run_cli(
        "cwt", "analyze", "--input", str(out / "render_spectrum.csv"),
        "--scales", "4", "--scale-min", "1.5", "--scale-max", "3",
        "--angles", "4", "--out", str(tmp_path),
    )
    assert res.returncode == 2


def test_cwt_band_outside_grid_is_exit_2(tmp_path):
    src = tmp_path / "field.csv"
    _write_single_component_field(src)
    res = run_cli(
        "cwt", "analyze", "--input", str(src), "--scales", "4",
        "--scale-min", "0.2", "--scale-max", "0.5", "--angles", "4",
        "--out", str(tmp_path),
    )
    assert res.returncode == 2
    assert "Nyquist" in res.stderr


def test_cwt_roundtrip_default_config_reconstructs(tmp_path):
    out = tmp_path / "rt"
    res = run_cli("cwt", "roundtrip", "--out", str(out))
    assert res.returncode == 0, res.stderr
    _, header, rows = read_table(out / "cwt_roundtrip.csv")
    cols = dict(zip(header.split(","), rows[0]))
    assert float(cols["rel_l2_error"]) < 0.05
    assert 0.95 < float(cols["gain_ratio"]) < 1.05
    assert int(cols["scales"]) == 32 and int(cols["angles"]) == 16
    assert "round-trip relative L2 error" in res.stdout


def test_cwt_roundtrip_insufficient_coverage_is_exit_3(tmp_path):
    res = run_cli(
        "cwt", "roundtrip", "--nx", "64", "--ny", "64",
        "--scale-min", "2.3", "--scale-max", "4.2", "--scales", "8",
        "--angles", "8", "--out", str(tmp_path),
    )
    assert res.returncode == 3
    assert "coverage" in res.stderr


# ------------------------------------------------------------------- verify


def test_verify_subset_passes_and_prints_lines():
    res = run_cli("verify", "--only", "10,4")
    assert res.returncode == 0, res.stderr
    assert "PASS 10" in res.stdout
    assert "PASS  4" in res.stdout
    assert "2/2 criteria passed" in res.stdout


def test_verify_unknown_criterion_is_exit_2():
    res = run_cli("verify", "--only", "99")
    assert res.returncode == 2


# ------------------------------------------------------------------ sources


def test_sources_tables(tmp_path):
    out = tmp_path / "src"
    res = run_cli(
        "sources", "--p", "4", "--nt", "7", "--t-max", "2", "--out", str(out)
    )
    assert res.returncode == 0, res.stderr
    _, header, rows = read_table(out / "sources_pulse.csv")
    assert header == (
        "t,re_closed,im_closed,abs_closed,re_quadrature,im_quadrature,rel_gap"
    )
    assert len(rows) == 7
    assert all(float(r[6]) < 1e-9 for r in rows)  # two routes agree
    assert float(rows[0][0]) == -2.0 and float(rows[-1][0]) == 2.0
    _, dheader, drows = read_table(out / "sources_density.csv")
    assert dheader == "q,density"
    assert all(float(r[1]) > 0 for r in drows)
    qs = [float(r[0]) for r in drows]
    assert qs == sorted(qs)


def test_sources_rejects_bad_window(tmp_path):
    res = run_cli("sources", "--t-max", "0", "--out", str(tmp_path))
    assert res.returncode == 2


# -------------------------------------------------------------- entry point


def test_installed_console_script_works(tmp_path):
    exe = shutil.which("gwpack")
    if exe is None:
        pytest.skip("console script not on PATH")
    res = subprocess.run(
        [exe, "verify", "--only", "10"],
        capture_output=True, text=True, timeout=120,
    )
    assert res.returncode == 0, res.stderr
    assert "PASS 10" in res.stdout
