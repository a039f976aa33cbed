r"""Directional 2D continuous wavelet transform on the closed-form spectrum.

The analyzing family is built from one mother packet psi by L1-normalized
dilation, rotation and translation:

    psi_{a,alpha,b}(r) = (1/a) psi(R(alpha)^{-1} (r - b) / a),
    R(alpha) = [[cos a, -sin a], [sin a, cos a]],

so alpha is the orientation of the member's propagation axis (the mother
packet propagates along +x). The spectrum is
a e^{-i k.b} psihat(a R(alpha)^T k). Because psihat is known in closed form,
the forward transform never resamples the wavelet in position space:

    W(a, alpha, b) = (2 pi)^{-2} integral fhat(k) a conj(psihat(a R^T k))
                     e^{i k.b} d^2 k,

one inverse FFT per (scale, angle). Reconstruction integrates
W psi_{a,alpha,b} over da/a^3, d alpha, d^2 b and divides by the
admissibility constant; with this family the unit-gain constant is the plain
integral C = integral |psihat(k)|^2 / |k|^2 d^2 k (no 2 pi powers), because
the diagonal gain multiplier

    G(k) = integral (da/a) d alpha |psihat(a R^T k)|^2

equals exactly that integral, independent of k. Admissibility constants are
offered in both normalization conventions ("without_2pi_power" = the plain
integral above and its n-D analogue with 1/|k|^n; "with_2pi_power" = the
same divided by (2 pi)^n) and via three routes: direct quadrature in polar /
spherical coordinates, a contour-reduced 1D integral against a
doubled-parameter packet, and a closed-form Bessel sum for the axisymmetric
3D case with eps = gamma and 2 nu a nonnegative integer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import roots_legendre

from gwpack.fields import ComplexField, GridSpec, field_fft, field_ifft
from gwpack.packet import PacketParams, evaluate_gwp, fourier_gwp
from gwpack.special import bessel_k

__all__ = [
    "AdmissibilityResult",
    "TransformCoefficients",
    "InsufficientCoverageError",
    "rotation_matrix",
    "family_member",
    "family_spectrum",
    "log_spaced_scales",
    "uniform_angles",
    "essential_band",
    "forward_cwt",
    "inverse_cwt",
    "coverage_map",
    "admissibility_2d",
    "admissibility_nd",
    "admissibility_closed_form_3d",
]

WITH_2PI = "with_2pi_power"
WITHOUT_2PI = "without_2pi_power"


class InsufficientCoverageError(ValueError):
    """Scale/angle set does not tile the signal band; carries diagnostics."""

    def __init__(self, message, coverage_min, coverage_mean):
        super().__init__(message)
        self.coverage_min = coverage_min
        self.coverage_mean = coverage_mean


@dataclass(frozen=True)
class AdmissibilityResult:
    """Admissibility constant with its normalization convention attached."""

    value: float
    convention: str
    method: str
    dim: int
    est_error: float

    def in_convention(self, convention: str) -> float:
        if convention == self.convention:
            return self.value
        factor = (2.0 * np.pi) ** self.dim
        if convention == WITHOUT_2PI and self.convention == WITH_2PI:
            return self.value * factor
        if convention == WITH_2PI and self.convention == WITHOUT_2PI:
            return self.value / factor
        raise ValueError(f"unknown convention {convention!r}")


@dataclass
class TransformCoefficients:
    """W(a, alpha, b) on the translation grid of the analyzed field.

    values has shape (len(scales), len(angles)) + grid.shape.
    """

    scales: np.ndarray
    angles: np.ndarray
    grid: GridSpec
    values: np.ndarray
    params: PacketParams
    t: float = 0.0

    def __post_init__(self):
        self.scales = np.asarray(self.scales, dtype=float)
        self.angles = np.asarray(self.angles, dtype=float)
        if len(self.scales) > 1 and np.any(np.diff(self.scales) <= 0):
            raise ValueError("scales must be strictly increasing")
        want = (len(self.scales), len(self.angles)) + self.grid.shape
        if self.values.shape != want:
            raise ValueError(f"values shape {self.values.shape} != {want}")


def rotation_matrix(alpha: float) -> np.ndarray:
    c, s = math.cos(alpha), math.sin(alpha)
    return np.array([[c, -s], [s, c]])


def _inverse_rotated(alpha, u, v):
    """R(alpha)^{-1} (u, v) componentwise."""
    c, s = math.cos(alpha), math.sin(alpha)
    return c * u + s * v, -s * u + c * v


def log_spaced_scales(a_min: float, a_max: float, ratio: float = 2.0**0.25):
    """Geometric scale ladder hitting both endpoints, step at most ``ratio``."""
    if not (0 < a_min <= a_max) or ratio <= 1:
        raise ValueError("need 0 < a_min <= a_max and ratio > 1")
    steps = max(1, int(math.ceil(math.log(a_max / a_min) / math.log(ratio))))
    if a_min == a_max:
        return np.array([a_min])
    return np.geomspace(a_min, a_max, steps + 1)


def uniform_angles(count: int) -> np.ndarray:
    if count < 1:
        raise ValueError("need at least one angle")
    return 2.0 * np.pi * np.arange(count) / count


def family_member(params: PacketParams, a, alpha, b, x, y, t=0.0):
    """Evaluate psi_{a,alpha,b} = (1/a) psi(R(alpha)^{-1}(r-b)/a), broadcasting."""
    if params.dim != 2:
        raise ValueError("the transform family is two-dimensional")
    dx = np.asarray(x, dtype=float) - b[0]
    dy = np.asarray(y, dtype=float) - b[1]
    xr, yr = _inverse_rotated(alpha, dx, dy)
    return evaluate_gwp(params, xr / a, yr / a, t=t) / a


def family_spectrum(params: PacketParams, a, alpha, b, kx, ky, t=0.0):
    """Spectrum of a family member: a e^{-i k.b} psihat(a R(alpha)^T k)."""
    kx = np.asarray(kx, dtype=float)
    ky = np.asarray(ky, dtype=float)
    kxr, kyr = _inverse_rotated(alpha, kx, ky)
    phase = np.exp(-1j * (kx * b[0] + ky * b[1]))
    return a * phase * fourier_gwp(params, a * kxr, a * kyr, t=t)


def essential_band(params: PacketParams, t=0.0, floor=1e-8):
    """Radial interval [k_lo, k_hi] outside which |psihat| < floor * peak.

    Measured along the spectral ridge (the +kx axis for the mother packet).
    """
    kap = params.kappa
    peak = abs(fourier_gwp(params, kap, 0.0, t=t, scaled=True))
    grid = kap * np.geomspace(1e-4, 1e4, 4097)
    mag = np.abs(fourier_gwp(params, grid, np.zeros_like(grid), t=t, scaled=True))
    good = mag >= floor * peak
    if not np.any(good):
        raise ValueError("could not locate the essential band")
    return float(grid[good][0]), float(grid[good][-1])


def _check_band_fits(params, grid, scales, t):
    k_lo, k_hi = essential_band(params, t=t)
    nyq = np.pi / max(grid.spacing)
    dk = 2.0 * np.pi / min(
        n * d for n, d in zip(grid.shape, grid.spacing)
    )
    a_min, a_max = float(np.min(scales)), float(np.max(scales))
    if k_hi / a_min > nyq:
        raise ValueError(
            f"smallest scale {a_min:g} pushes the wavelet band to "
            f"{k_hi / a_min:.3g}, beyond the grid Nyquist wavenumber {nyq:.3g}"
        )
    if params.kappa / a_max < 3.0 * dk:
        raise ValueError(
            f"largest scale {a_max:g} drops the wavelet band center to "
            f"{params.kappa / a_max:.3g}, below 3 grid wavenumber cells {3 * dk:.3g}"
        )


def forward_cwt(
    field: ComplexField, params: PacketParams, scales, angles, t=0.0
) -> TransformCoefficients:
    """Directional CWT of a 2D field, one FFT product per (scale, angle)."""
    if field.space != "position" or field.grid.ndim != 2:
        raise ValueError("forward_cwt expects a 2D position-space field")
    if params.dim != 2:
        raise ValueError("the analyzing packet must be two-dimensional")
    scales = np.asarray(scales, dtype=float)
    angles = np.asarray(angles, dtype=float)
    if np.any(scales <= 0):
        raise ValueError("scales must be positive")
    _check_band_fits(params, field.grid, scales, t)

    fhat = field_fft(field)
    kxm, kym = fhat.grid.mesh()
    out = np.empty((len(scales), len(angles)) + field.grid.shape, dtype=complex)
    for i, a in enumerate(scales):
        for j, alpha in enumerate(angles):
            kxr, kyr = _inverse_rotated(alpha, kxm, kym)
            psihat = fourier_gwp(params, a * kxr, a * kyr, t=t)
            prod = ComplexField(
                grid=fhat.grid,
                values=fhat.values * (a * np.conj(psihat)),
                space="frequency",
            )
            out[i, j] = field_ifft(prod, field.grid).values
    return TransformCoefficients(
        scales=scales, angles=angles, grid=field.grid, values=out, params=params, t=t
    )


def _log_weights(scales: np.ndarray) -> np.ndarray:
    if len(scales) == 1:
        return np.array([1.0])
    return np.gradient(np.log(scales))


def inverse_cwt(
    coeffs: TransformCoefficients,
    admissibility: AdmissibilityResult | float,
    min_coverage: float = 0.5,
) -> ComplexField:
    """Reconstruct the analyzed field from its transform coefficients.

    ``admissibility`` is converted to the unit-gain normalization (the plain
    no-2pi-power integral) if it carries a convention tag. Raises
    InsufficientCoverageError when the discrete scale/angle set fails to
    tile the band actually carrying coefficient energy (diagnostic gain
    below ``min_coverage``); pass ``min_coverage=0`` to force through.
    """
    if isinstance(admissibility, AdmissibilityResult):
        c_unit = admissibility.in_convention(WITHOUT_2PI)
    else:
        c_unit = float(admissibility)
    grid = coeffs.grid
    w_lna = _log_weights(coeffs.scales)
    w_ang = 2.0 * np.pi / len(coeffs.angles)

    dual = grid.fourier_dual()
    kxm, kym = dual.mesh()
    accum = np.zeros(grid.shape, dtype=complex)
    gain = np.zeros(grid.shape, dtype=float)
    energy = np.zeros(grid.shape, dtype=float)
    for i, a in enumerate(coeffs.scales):
        for j, alpha in enumerate(coeffs.angles):
            kxr, kyr = _inverse_rotated(alpha, kxm, kym)
            psihat = fourier_gwp(coeffs.params, a * kxr, a * kyr, t=coeffs.t)
            what = field_fft(
                ComplexField(grid=grid, values=coeffs.values[i, j])
            ).values
            w = w_lna[i] * w_ang
            accum += w / a * what * psihat
            gain += w * np.abs(psihat) ** 2
            energy += np.abs(what) ** 2

    # coverage check on the wavenumber cells carrying 99.9% of the energy
    order = np.argsort(energy.ravel())[::-1]
    cum = np.cumsum(energy.ravel()[order])
    total = cum[-1]
    if total > 0:
        band = order[: int(np.searchsorted(cum, 0.999 * total)) + 1]
        gband = gain.ravel()[band] / c_unit
        gmin, gmean = float(gband.min()), float(gband.mean())
        if gmin < min_coverage:
            raise InsufficientCoverageError(
                f"scale/angle coverage of the coefficient band is insufficient: "
                f"min gain {gmin:.3g}, mean gain {gmean:.3g} of the admissibility "
                f"constant (threshold {min_coverage:g})",
                gmin,
                gmean,
            )
    spec = ComplexField(grid=dual, values=accum / c_unit, space="frequency")
    return field_ifft(spec, grid)


def coverage_map(params, grid, scales, angles, t=0.0) -> np.ndarray:
    """Discrete gain G(k)/C on the dual grid; ~1 where reconstruction is faithful."""
    scales = np.asarray(scales, dtype=float)
    angles = np.asarray(angles, dtype=float)
    w_lna = _log_weights(scales)
    w_ang = 2.0 * np.pi / len(angles)
    kxm, kym = grid.fourier_dual().mesh()
    gain = np.zeros(grid.shape, dtype=float)
    for i, a in enumerate(scales):
        for j, alpha in enumerate(angles):
            kxr, kyr = _inverse_rotated(alpha, kxm, kym)
            psihat = fourier_gwp(params, a * kxr, a * kyr, t=t)
            gain += w_lna[i] * w_ang * np.abs(psihat) ** 2
    c_unit = admissibility_2d(params).in_convention(WITHOUT_2PI)
    return gain / c_unit


# ---------------------------------------------------------------------------
# admissibility constants


def _angular_nodes(order: int, half_range: float):
    nodes, weights = roots_legendre(order)
    theta = 0.5 * half_range * (nodes + 1.0)
    return theta, 0.5 * half_range * weights


def _sphere_area(m: int) -> float:
    """Surface area of the unit sphere S^m embedded in R^{m+1}."""
    return 2.0 * np.pi ** ((m + 1) / 2.0) / math.gamma((m + 1) / 2.0)


def _radial_cap(params: PacketParams, rtol: float) -> float:
    # |psihat|^2 decays at least like e^{-2 gamma k} along the ridge
    return params.kappa + (abs(math.log(rtol)) + 60.0 + 2.0 * params.p) / (
        2.0 * params.gamma
    )


def _admissibility_direct(params: PacketParams, rtol: float, t: float = 0.0):
    """C in the without-2pi convention by polar/spherical quadrature."""
    n = params.dim
    axisym = len(set(params.eps)) == 1
    if not axisym and n > 3:
        raise NotImplementedError(
            "direct quadrature with unequal eps is implemented for dim <= 3"
        )
    kap = params.kappa
    cap = _radial_cap(params, rtol)

    def make_radial(order):
        if axisym:
            th, w = _angular_nodes(order, np.pi)
            area = _sphere_area(n - 2)
            sin_pow = np.sin(th) ** (n - 2)
            kt = np.sin(th)
            kl = np.cos(th)

            def radial(k):
                zeros = [np.zeros_like(th)] * (n - 2)
                vals = fourier_gwp(params, k * kl, k * kt, *zeros, t=t)
                return area / k * np.sum(w * sin_pow * np.abs(vals) ** 2)

        else:  # n == 3, distinct transverse eps
            th, wth = _angular_nodes(order, np.pi)
            ph, wph = _angular_nodes(order, np.pi / 2.0)
            tt, pp = np.meshgrid(th, ph, indexing="ij")
            ww = np.outer(wth, wph) * np.sin(tt)
            kl = np.cos(tt)
            k2 = np.sin(tt) * np.cos(pp)
            k3 = np.sin(tt) * np.sin(pp)

            def radial(k):
                vals = fourier_gwp(params, k * kl, k * k2, k * k3, t=t)
                return 4.0 / k * np.sum(ww * np.abs(vals) ** 2)

        return radial

    prev = None
    order = 48
    while True:
        radial = make_radial(order)
        val, aerr = quad(
            radial, 0.0, cap, points=[kap / 2, kap, 2 * kap], limit=300
        )
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val, abs(val - prev) + aerr
        if order > 3000:
            raise RuntimeError("angular quadrature failed to converge")
        prev = val
        order *= 2


def _admissibility_reduction(params: PacketParams, rtol: float):
    """C in the with-2pi convention via the contour-reduced 1D integral.

    The squared spectrum modulus equals the spectrum of a doubled packet
    (2 gamma, 2 eps_j, same kappa, order nu2 = 2 nu + (n-1)/2) up to factors,
    and 1/|k|^{n+1} is an integral over imaginary time, which collapses the
    n-D integral to a 1D one against that packet at r = 0:

        C = R / n! * integral_0^inf d tau tau^n sqrt(2/pi)
            (p2 s2)^{nu2} K_{nu2}(p2 s2) / prod_j sqrt(tau + 2 eps_j),
        s2 = sqrt(1 + tau/(2 gamma)), p2 = 2 p,
        R = (2 pi)^{n/2} 2^{-2 nu - (n-1)/2} gamma^{(n-1)/2} / p^{n-1}.
    """
    n = params.dim
    p2 = 2.0 * params.p
    nu2 = 2.0 * params.nu + 0.5 * (n - 1)
    g2 = 2.0 * params.gamma
    front = (
        (2.0 * np.pi) ** (0.5 * n)
        * 2.0 ** (-2.0 * params.nu - 0.5 * (n - 1))
        * params.gamma ** (0.5 * (n - 1))
        / params.p ** (n - 1)
        / math.factorial(n)
        * math.sqrt(2.0 / np.pi)
    )

    # substitute u = s2: tau = 2 gamma (u^2 - 1); integrand decays like e^{-2 p u}
    u_hi = 1.0 + (abs(math.log(rtol)) + 760.0) / p2

    def integrand(u):
        tau = g2 * (u * u - 1.0)
        z = p2 * u
        core = z**nu2 * float(np.real(bessel_k(nu2, z)))
        denom = np.prod([math.sqrt(tau + 2.0 * e) for e in params.eps])
        return tau**n * core / denom * 2.0 * g2 * u

    val, aerr = quad(integrand, 1.0, u_hi, limit=300)
    return front * val, front * aerr


def admissibility_2d(
    params: PacketParams,
    t: float = 0.0,
    convention: str = WITHOUT_2PI,
    rtol: float = 1e-8,
) -> AdmissibilityResult:
    """C = integral |psihat|^2/|k|^2 d^2 k (or /(2 pi)^2 of it) by quadrature.

    Independent of ``t``, since time enters the spectrum only as a unit-modulus
    phase; the parameter exists so callers can assert that numerically.
    """
    if params.dim != 2:
        raise ValueError("admissibility_2d needs a two-dimensional packet")
    val, err = _admissibility_direct(params, rtol, t=t)
    res = AdmissibilityResult(
        value=val, convention=WITHOUT_2PI, method="direct_quadrature",
        dim=2, est_error=err,
    )
    return _converted(res, convention)


def admissibility_nd(
    params: PacketParams,
    method: str = "direct",
    convention: str = WITH_2PI,
    rtol: float = 1e-8,
) -> AdmissibilityResult:
    """n-D admissibility constant by direct quadrature or contour reduction."""
    if method == "direct":
        val, err = _admissibility_direct(params, rtol)
        res = AdmissibilityResult(
            value=val, convention=WITHOUT_2PI, method="direct_quadrature",
            dim=params.dim, est_error=err,
        )
    elif method == "reduction":
        val, err = _admissibility_reduction(params, rtol)
        res = AdmissibilityResult(
            value=val, convention=WITH_2PI, method="reduction_integral",
            dim=params.dim, est_error=err,
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    return _converted(res, convention)


def admissibility_closed_form_3d(
    params: PacketParams, convention: str = WITHOUT_2PI
) -> AdmissibilityResult:
    """Closed-form 3D constant: axisymmetric eps = gamma, 2 nu a nonneg integer.

    C (plain-integral convention) = (2 pi)^4 p^{4 nu} / gamma^{4 nu}
        sum_{m=0}^{2 nu} (2 nu)!/m! 2^{m - 4 nu - 1}
        kappa^{m - 4 nu - 5} gamma^{m - 1} K_{m+3}(4 kappa gamma).
    """
    if params.dim != 3:
        raise ValueError("closed form needs a three-dimensional packet")
    if any(abs(e - params.gamma) > 1e-12 * params.gamma for e in params.eps):
        raise ValueError("closed form needs eps_j = gamma on both transverse axes")
    two_nu = 2.0 * params.nu
    if abs(two_nu - round(two_nu)) > 1e-12 or two_nu < 0:
        raise ValueError("closed form needs 2 nu to be a nonnegative integer")
    m2 = int(round(two_nu))
    kap, gam = params.kappa, params.gamma
    total = 0.0
    for m in range(m2 + 1):
        total += (
            math.factorial(m2)
            / math.factorial(m)
            * 2.0 ** (m - 2.0 * two_nu - 1.0)
            * kap ** (m - 2.0 * two_nu - 5.0)
            * gam ** (m - 1.0)
            * float(np.real(bessel_k(m + 3, 4.0 * kap * gam)))
        )
    val = (2.0 * np.pi) ** 4 * params.p ** (2.0 * two_nu) / gam ** (2.0 * two_nu) * total
    res = AdmissibilityResult(
        value=val, convention=WITHOUT_2PI, method="closed_form_3d",
        dim=3, est_error=0.0,
    )
    return _converted(res, convention)


def _converted(res: AdmissibilityResult, convention: str) -> AdmissibilityResult:
    if convention == res.convention:
        return res
    return AdmissibilityResult(
        value=res.in_convention(convention),
        convention=convention,
        method=res.method,
        dim=res.dim,
        est_error=res.est_error
        * (res.in_convention(convention) / res.value if res.value else 1.0),
    )
