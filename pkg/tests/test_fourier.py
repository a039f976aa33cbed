"""Spectrum tests: closed-form spot values, essential zero, exponent-form
equivalence, and the DFT cross-check of the closed-form transform."""

import numpy as np
import pytest

from gwpack.fields import ComplexField, GridSpec, field_fft, field_ifft
from gwpack.packet import PacketParams, fourier_gwp, sample_field

FIG1 = PacketParams(p=0.5, nu=0.5, gamma=0.25, eps=(1.0,), c=1.0)
FIG2 = PacketParams(p=1.0, nu=0.5, gamma=0.5, eps=(16.0,), c=1.0)
TIGHT = PacketParams(p=100.0, nu=0.5, gamma=1.0, eps=(1.0,), c=1.0)


def test_zero_at_origin_and_on_negative_axis():
    assert fourier_gwp(FIG1, 0.0, 0.0) == 0.0
    assert fourier_gwp(FIG1, -2.0, 0.0) == 0.0  # k + kx = 0 exactly
    out = fourier_gwp(FIG1, np.array([-1.0, 0.0]), np.array([0.0, 0.0]))
    assert np.all(out == 0.0)


def test_peak_value_fig1():
    # at k = (kappa, 0), t = 0 the exponent collapses to -p:
    # psihat = 2 pi e^{i pi/4} p^{2nu} gamma^{-nu} / (kappa (2 kappa)^{nu+1/2}) e^{-p}
    got = fourier_gwp(FIG1, FIG1.kappa, 0.0, t=0.0)
    want = np.pi * np.exp(-0.5) * np.exp(1j * np.pi / 4)
    assert got == pytest.approx(want, rel=1e-14)
    assert got == pytest.approx(1.3473723597535985 * (1 + 1j), rel=1e-13)


def test_exponent_identity_at_peak():
    # -kappa gamma - p^2/(4 gamma kappa) = -p for any parameter set
    for prm in (FIG1, FIG2, TIGHT):
        k = prm.kappa
        expo = -k * prm.gamma - prm.p**2 / (4 * prm.gamma * k)
        assert expo == pytest.approx(-prm.p, rel=1e-14)


def test_two_printed_exponent_forms_agree():
    # transverse-sum form: -ky^2 eps/(2(k+kx)); radial form: -(k-kx) eps/2.
    # ky^2 = (k-kx)(k+kx) makes them identical; checked on a well-conditioned
    # lattice (|ky| bounded away from 0 so k-kx carries full precision).
    kx, ky = np.meshgrid(
        [-1.0, -0.3, 0.2, 0.8, 2.0], [0.7, 1.3, 2.5], indexing="ij"
    )
    kx, ky = kx.ravel(), ky.ravel()
    k = np.hypot(kx, ky)
    for prm in (FIG1, FIG2):
        eps = prm.eps[0]
        a = -0.5 * ky**2 * eps / (k + kx)
        b = -0.5 * (k - kx) * eps
        assert np.allclose(a, b, rtol=1e-13, atol=1e-15)
        # and the assembled spectra agree with the library path
        expo = (
            -0.5 * (k + kx) * prm.gamma
            - 0.5 * (k - kx) * eps
            - prm.p**2 / (2 * prm.gamma * (k + kx))
        )
        front = (
            2
            * np.pi
            * np.exp(1j * np.pi / 4)
            * prm.p ** (2 * prm.nu)
            * prm.gamma ** (-prm.nu)
            / (k * (k + kx) ** (prm.nu + 0.5))
        )
        assert np.allclose(
            fourier_gwp(prm, kx, ky, t=0.0), front * np.exp(expo), rtol=1e-13
        )


def test_time_dependence_is_pure_phase():
    kx = np.array([0.5, 1.0, 2.0])
    ky = np.array([0.2, -0.4, 0.1])
    k = np.hypot(kx, ky)
    t = 0.7
    a = fourier_gwp(FIG1, kx, ky, t=t)
    b = fourier_gwp(FIG1, kx, ky, t=0.0) * np.exp(-1j * k * FIG1.c * t)
    assert np.allclose(a, b, rtol=1e-13)


def test_essential_zero_beats_any_power():
    # |psihat(t kappa, 0)| / t^10 -> 0 as t -> 0+
    vals = []
    for frac in (0.01, 0.003, 0.001):
        v = abs(fourier_gwp(FIG1, frac * FIG1.kappa, 0.0)) / frac**10
        vals.append(v)
    assert vals[0] > vals[1] > vals[2]
    assert vals[2] < 1e-60


def test_underflow_region_returns_exact_zero():
    # tiny k + kx drives the exponent below the double underflow floor
    assert fourier_gwp(TIGHT, 1e-3, 1e-3) == 0.0


def test_scaled_spectrum():
    kx, ky = 45.0, 3.0
    a = fourier_gwp(TIGHT, kx, ky, t=0.0, scaled=True)
    b = fourier_gwp(TIGHT, kx, ky, t=0.0) * np.exp(TIGHT.p)
    assert a == pytest.approx(b, rel=1e-12)
    assert abs(fourier_gwp(TIGHT, TIGHT.kappa, 0.0, scaled=True)) > 1e-3


def test_dft_oracle_2d():
    # sampled-field DFT vs the closed form on the dual grid
    g = GridSpec.centered(2.0, (256, 256))
    est = field_fft(sample_field(TIGHT, g, "position"))
    exact = sample_field(TIGHT, g.fourier_dual(), "frequency")
    err = np.linalg.norm(est.values - exact.values) / np.linalg.norm(exact.values)
    assert err < 1e-6


def test_dft_oracle_2d_nonzero_time():
    t = 0.3
    g = GridSpec.centered(1.5, (256, 256), center=(TIGHT.c * t, 0.0))
    est = field_fft(sample_field(TIGHT, g, "position", t=t))
    exact = sample_field(TIGHT, g.fourier_dual(), "frequency", t=t)
    err = np.linalg.norm(est.values - exact.values) / np.linalg.norm(exact.values)
    assert err < 1e-6


def test_dft_oracle_3d():
    prm = PacketParams(p=100.0, nu=0.5, gamma=1.0, eps=(1.0, 1.0), c=1.0)
    g = GridSpec.centered(1.2, (64, 64, 64))
    est = field_fft(sample_field(prm, g, "position"))
    exact = sample_field(prm, g.fourier_dual(), "frequency")
    err = np.linalg.norm(est.values - exact.values) / np.linalg.norm(exact.values)
    assert err < 1e-4


def test_parseval():
    g = GridSpec.centered(1.5, (256, 256))
    pos = sample_field(TIGHT, g, "position")
    fre = sample_field(TIGHT, g.fourier_dual(), "frequency")
    a = pos.l2() ** 2
    b = fre.l2() ** 2 / (2 * np.pi) ** 2
    assert a == pytest.approx(b, rel=1e-10)


def test_fft_ifft_roundtrip():
    g = GridSpec.centered(2.0, (64, 32), center=(0.5, -0.25))
    rng = np.random.default_rng(2)
    vals = rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape)
    f = ComplexField(grid=g, values=vals)
    back = field_ifft(field_fft(f), g)
    assert np.allclose(back.values, vals, atol=1e-12)


def test_fft_validates_space_tag():
    g = GridSpec.centered(1.0, (8, 8))
    f = ComplexField(grid=g, values=np.zeros(g.shape), space="frequency")
    with pytest.raises(ValueError):
        field_fft(f)
    with pytest.raises(ValueError):
        field_ifft(ComplexField(grid=g, values=np.zeros(g.shape)), g)


def test_grid_roundtrip_and_validation():
    g = GridSpec.centered((2.0, 3.0), (16, 24), center=(1.0, 0.0))
    assert g.axes()[0][0] == pytest.approx(-1.0)
    assert g.axes()[1][-1] == pytest.approx(3.0 - g.spacing[1])
    d = g.fourier_dual()
    assert d.shape == g.shape
    assert d.spacing[0] == pytest.approx(2 * np.pi / (16 * g.spacing[0]))
    with pytest.raises(ValueError):
        GridSpec(origin=(0.0,), spacing=(1.0, 1.0), shape=(4, 4))
    with pytest.raises(ValueError):
        GridSpec(origin=(0.0,), spacing=(-1.0,), shape=(4,))
    with pytest.raises(ValueError):
        ComplexField(grid=g, values=np.zeros((3, 3)))
