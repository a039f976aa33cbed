"""Moment quadrature: centers/widths, Heisenberg products, resolving powers.

Oracles here are all independent of the quadrature implementation: closed-form
Gaussian norms and moments, a DFT-based frequency-moment estimate, the
large-p Gaussian-envelope limit measured through the *same* moment functional,
and exact asymptotic laws for the resolving powers.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwpack.fields import GridSpec, field_fft
from gwpack.metrics import (
    EPS_OVER_GAMMA_FAMILY,
    KAPPA_EPS_FAMILY,
    MomentReport,
    SWEEP_COLUMNS,
    centers_and_widths,
    full_report,
    l2_norm,
    resolving_powers,
    run_sweep,
    sweep_rows,
    uncertainty_products,
)
from gwpack.packet import (
    PacketParams,
    evaluate_gwp,
    evaluate_morlet_limit,
    sample_field,
)

TIGHT = PacketParams(p=100.0, nu=0.5, gamma=1.0, eps=(1.0,))


def packet(p, eps=2.0, nu=0.5, gamma=1.0):
    return PacketParams(p=p, nu=nu, gamma=gamma, eps=(eps,))


# ---------------------------------------------------------------- l2_norm


def test_l2_norm_gaussian_matches_analytic():
    sigma = 1.7
    fn = lambda x, y: np.exp(-(x * x + y * y) / (2.0 * sigma**2))
    norm = l2_norm((fn, 0.0, sigma, sigma))
    assert norm == pytest.approx(sigma * math.sqrt(math.pi), rel=1e-12)


def test_l2_norm_translation_invariant():
    sigma = 0.9
    shifted = lambda x, y: np.exp(
        -((x - 3.2) ** 2 + y * y) / (2.0 * sigma**2)
    )
    norm = l2_norm((shifted, 3.2, sigma, sigma))
    assert norm == pytest.approx(sigma * math.sqrt(math.pi), rel=1e-10)


def test_l2_norm_packet_matches_grid_estimate():
    # extent 24 so the stretched-exponential tails are below the tolerance
    params = packet(4.0)
    grid = GridSpec.centered(24.0, (512, 512))
    field = sample_field(params, grid)
    assert l2_norm(params) == pytest.approx(field.l2(), rel=1e-6)


def test_l2_norm_requires_two_dimensions():
    three_d = PacketParams(p=1.0, nu=0.5, gamma=1.0, eps=(1.0, 1.0))
    with pytest.raises(ValueError, match="two-dimensional"):
        l2_norm(three_d)


# ------------------------------------------------- centers and widths


def test_symmetry_centers_vanish():
    rep = full_report(packet(4.0))
    assert abs(rep.center_x) < 1e-10 * rep.width_x
    assert abs(rep.center_y) < 1e-10 * rep.width_y
    assert abs(rep.center_ky) < 1e-10 * rep.width_ky
    assert rep.center_kx > 0.0


def test_position_center_tracks_drift():
    rep = full_report(packet(1024.0), t=0.5)
    assert abs(rep.center_x - 0.5) < 1e-3
    assert abs(rep.center_y) < 1e-10


def test_frequency_moments_time_invariant():
    still = centers_and_widths("frequency", packet(16.0))
    moving = centers_and_widths("frequency", packet(16.0), t=3.0)
    assert moving.center_kx == pytest.approx(still.center_kx, rel=1e-12)
    assert moving.width_kx == pytest.approx(still.width_kx, rel=1e-12)
    assert moving.width_ky == pytest.approx(still.width_ky, rel=1e-12)


def test_rejects_bad_target_and_dimension():
    with pytest.raises(ValueError, match="position.*frequency"):
        centers_and_widths("momentum", packet(4.0))
    three_d = PacketParams(p=1.0, nu=0.5, gamma=1.0, eps=(1.0, 1.0))
    with pytest.raises(ValueError, match="two-dimensional"):
        centers_and_widths("position", three_d)


def test_frequency_moments_match_dft_oracle():
    grid = GridSpec.centered(2.0, (256, 256))
    fhat = field_fft(sample_field(TIGHT, grid))
    kx, ky = fhat.grid.mesh()
    dens = np.abs(fhat.values) ** 2
    m0 = dens.sum()
    ckx = (kx * dens).sum() / m0
    cky = (ky * dens).sum() / m0
    wkx = math.sqrt((kx * kx * dens).sum() / m0 - ckx * ckx)
    wky = math.sqrt((ky * ky * dens).sum() / m0 - cky * cky)
    rep = centers_and_widths("frequency", TIGHT)
    assert rep.center_kx == pytest.approx(ckx, rel=1e-10)
    assert rep.width_kx == pytest.approx(wkx, rel=1e-10)
    assert rep.width_ky == pytest.approx(wky, rel=1e-10)
    assert abs(cky) < 1e-10 * wky and abs(rep.center_ky) < 1e-10 * wky


def test_morlet_limit_widths_through_same_functional():
    # the identical moment functional applied to the large-p envelope limit
    # must return exactly sigma/sqrt(2); the exact packet approaches it
    params = packet(1024.0)
    oracle = lambda x, y: evaluate_morlet_limit(params, x, y, scaled=True)
    limit_rep = centers_and_widths("position", params, evaluator=oracle)
    exact_rep = centers_and_widths("position", params)
    sx, sy = params.sigma_x, params.sigma_transverse(0)
    assert limit_rep.width_x == pytest.approx(sx / math.sqrt(2.0), rel=1e-9)
    assert limit_rep.width_y == pytest.approx(sy / math.sqrt(2.0), rel=1e-9)
    assert exact_rep.width_x == pytest.approx(limit_rep.width_x, rel=3e-3)
    assert exact_rep.width_y == pytest.approx(limit_rep.width_y, rel=3e-3)


def test_pure_gaussian_saturates_heisenberg():
    # a Gaussian wave train saturates the bound: both products exactly 1/2
    params = packet(64.0)
    a, b, k0 = params.sigma_x, params.sigma_transverse(0), params.kappa
    pos = lambda x, y: np.exp(
        1j * k0 * x - x * x / (2 * a * a) - y * y / (2 * b * b)
    )
    frq = lambda kx, ky: np.exp(
        -((kx - k0) ** 2 * a * a + ky * ky * b * b) / 2.0
    )
    rp = centers_and_widths("position", params, evaluator=pos)
    rf = centers_and_widths("frequency", params, evaluator=frq)
    assert rp.width_x * rf.width_kx == pytest.approx(0.5, abs=1e-9)
    assert rp.width_y * rf.width_ky == pytest.approx(0.5, abs=1e-9)
    assert rf.center_kx == pytest.approx(k0, rel=1e-9)


# ------------------------------------- products and resolving powers


def test_uncertainty_products_require_both_domains():
    partial = centers_and_widths("position", packet(4.0))
    with pytest.raises(ValueError, match="position and frequency"):
        uncertainty_products(partial)
    with pytest.raises(ValueError, match="frequency"):
        resolving_powers(MomentReport(width_x=1.0))


def test_heisenberg_products_bounded_below():
    for eps_over_gamma in EPS_OVER_GAMMA_FAMILY:
        for sqrt_p in (1.0, 2.0, 8.0):
            rep = full_report(packet(sqrt_p**2, eps=eps_over_gamma))
            floor = 0.5 - 10.0 * rep.quadrature_err - 1e-9
            assert rep.product_x >= floor
            assert rep.product_y >= floor
    for kappa_eps in KAPPA_EPS_FAMILY:
        for sqrt_p in (1.0, 2.0, 8.0):
            p = sqrt_p**2
            rep = full_report(packet(p, eps=kappa_eps / p))
            floor = 0.5 - 10.0 * rep.quadrature_err - 1e-9
            assert rep.product_x >= floor
            assert rep.product_y >= floor


def test_saturation_improves_with_p():
    loose = full_report(packet(4.0))
    tight = full_report(packet(256.0))
    assert tight.product_x - 0.5 < loose.product_x - 0.5
    assert tight.product_y - 0.5 < loose.product_y - 0.5
    assert tight.product_x > 0.5 and tight.product_y > 0.5


def test_srp_approaches_asymptote():
    p = 1024.0
    rep = full_report(packet(p))
    asym = (2.0 * math.sqrt(p) + 1.0) / (2.0 * math.sqrt(p) - 1.0)
    assert rep.directional
    assert rep.srp == pytest.approx(asym, rel=0.02)


def test_arp_decreases_along_family():
    arps = [full_report(packet(s * s)).arp for s in (2.0, 4.0, 8.0)]
    assert all(a is not None for a in arps)
    assert arps[0] > arps[1] > arps[2]


def test_non_directional_regime_returns_none():
    rep = full_report(packet(0.25))
    assert rep.directional is False
    assert rep.srp is None and rep.arp is None
    assert resolving_powers(rep) == (None, None, False)


def test_directional_transition():
    assert full_report(packet(0.25)).directional is False
    wide = full_report(packet(4.0))
    assert wide.directional is True
    assert wide.center_kx > wide.width_kx
    assert wide.srp == pytest.approx(
        (wide.center_kx + wide.width_kx) / (wide.center_kx - wide.width_kx)
    )


def test_morlet_convergence_rate():
    # the packet approaches its Gaussian-envelope limit like p^(-1/2)
    ratios = []
    ps = [16.0, 64.0, 256.0, 1024.0]
    for p in ps:
        params = packet(p)
        sx, sy = params.sigma_x, params.sigma_transverse(0)
        diff = lambda x, y: evaluate_gwp(
            params, x, y, scaled=True
        ) - evaluate_morlet_limit(params, x, y, scaled=True)
        limit = lambda x, y: evaluate_morlet_limit(params, x, y, scaled=True)
        ratios.append(
            l2_norm((diff, 0.0, sx, sy)) / l2_norm((limit, 0.0, sx, sy))
        )
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    slope = np.polyfit(np.log(ps), np.log(ratios), 1)[0]
    assert abs(slope + 0.5) < 0.1


# ---------------------------------------------------------------- sweeps


def test_run_sweep_flags_off_paper_values():
    assert run_sweep("fixed_eps_over_gamma", 1.0 / 3.0, [2.0]).off_paper is False
    assert run_sweep("fixed_kappa_eps", 8.0, [2.0]).off_paper is False
    assert run_sweep("fixed_kappa_eps", 5.0, [2.0]).off_paper is True


def test_run_sweep_rejects_bad_requests():
    with pytest.raises(ValueError, match="sweep mode"):
        run_sweep("fixed_nothing", 1.0, [2.0])
    with pytest.raises(ValueError, match="positive"):
        run_sweep("fixed_kappa_eps", 8.0, [2.0, -1.0])


def test_sweep_ratio_trends():
    res = run_sweep("fixed_eps_over_gamma", 2.0, [1.0, 2.0, 4.0, 8.0])
    rms_x = res.ratios["dx_over_sigma_x_rms"]
    gap = [abs(r - 1.0) for r in rms_x]
    assert gap[0] > gap[1] > gap[2] > gap[3]
    assert gap[3] < 0.04
    bandwidth = res.ratios["dkx_times_2sigma_x"]
    assert bandwidth[-1] == pytest.approx(math.sqrt(2.0), rel=0.02)
    assert bandwidth[0] < bandwidth[1] < bandwidth[2] < bandwidth[3]


def test_sweep_rows_align_with_columns():
    res = run_sweep("fixed_eps_over_gamma", 2.0, [1.0, 8.0])
    rows = sweep_rows(res)
    assert len(rows) == 2
    assert all(len(row) == len(SWEEP_COLUMNS) for row in rows)
    by_name = dict(zip(SWEEP_COLUMNS, rows[0]))
    assert by_name["sqrt_p"] == 1.0
    assert by_name["family_value"] == 2.0
    assert by_name["directional"] is False and by_name["srp"] is None
    last = dict(zip(SWEEP_COLUMNS, rows[1]))
    assert last["directional"] is True and last["srp"] > 1.0
    assert last["product_x"] == res.reports[1].product_x


@settings(max_examples=8, deadline=None)
@given(
    log_p=st.floats(min_value=-0.7, max_value=4.1),
    eps=st.floats(min_value=0.4, max_value=4.0),
)
def test_heisenberg_never_violated(log_p, eps):
    rep = full_report(packet(math.exp(log_p), eps=eps))
    floor = 0.5 - 10.0 * rep.quadrature_err - 1e-9
    assert rep.product_x >= floor
    assert rep.product_y >= floor
    assert rep.directional == (rep.center_kx > rep.width_kx)
