r"""Moving-point-source fields, source pulses, and the beam-superposition oracle.

The elementary outgoing solution exp(i q theta0)/sqrt(x1 + ct) with
theta0 = (x1 - ct) + sum_j x_j^2/(x1 + ct) is singular on the line
x1 = -ct swept by a point source moving at speed c. Cutting it with
Heaviside factors gives ``retarded_field`` (vanishing ahead of the source,
x1 + ct < 0) and ``advanced_field`` (vanishing behind); their sum is a
source-free solution everywhere off the singular line, and shifting the
line into the complex domain (x1 -> x1 - i eps) smooths it into the
nonstationary Gaussian beam (``regularized_sum``).

Superposing beams over spatial frequency q with the density
``spectral_density``

    F(q) = a q^{-nu-1} exp[-gamma (q + kappa^2 / q)],   a = p^{2 nu} / ((2 gamma)^nu sqrt(2 pi)),

reproduces the wave packet exactly; ``beam_superposition_oracle`` evaluates
that quadrature and is the derivation-independent cross-check for the
closed-form packet. Driving the same density with the elementary time pulse
phi(q, t) = A sqrt(q) exp(-2 i q c t), A = -e^{-i pi/4} 4 sqrt(pi) c^2,
yields the composite pulse

    Phi(t) = B sigma^{nu - 1/2} K_{nu - 1/2}(sigma),
    sigma = 2 kappa gamma sqrt(1 + 2 i c t / gamma),
    B = -4 c^2 e^{-i pi/4} p / sqrt(gamma),

available both in closed form and as the quadrature integral (two
independent routes that must agree).

Evaluation exactly on the singular line x1 = -ct returns numpy's masked
constant (scalars) or a masked array entry (arrays) — a flagged singular
marker rather than a NaN.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import kv

from gwpack.packet import PacketParams

__all__ = [
    "retarded_field",
    "advanced_field",
    "regularized_sum",
    "elementary_pulse",
    "composite_pulse",
    "spectral_density",
    "spectral_transform",
    "beam_superposition_oracle",
    "is_singular",
]

# exp arguments below -745 underflow; quadrature grids stop a bit past that
_LOG_TINY_MARGIN = 760.0


def is_singular(value) -> bool | np.ndarray:
    """True where a field evaluation hit the singular line x1 = -ct."""
    if value is np.ma.masked:
        return True
    return np.ma.getmaskarray(value) if np.ma.isMaskedArray(value) else False


def _phase_theta0(x1, transverse, ct):
    # limit of the beam phase as eps -> 0: real for x1 + ct != 0
    xp = x1 + ct
    th = x1 - ct
    for xj in transverse:
        th = th + xj * xj / xp
    return th


def _limit_root(xp):
    # eps -> 0+ limit of sqrt(x1 + ct - i eps): -i sqrt(|.|) on the negative side
    xp = np.asarray(xp, dtype=float)
    return np.where(xp >= 0.0, np.sqrt(np.maximum(xp, 0.0)) + 0.0j,
                    -1j * np.sqrt(np.maximum(-xp, 0.0)))


def _half_field(q, x1, transverse, t, c, side):
    if q <= 0.0:
        raise ValueError("spatial frequency q must be positive")
    x1 = np.asarray(x1, dtype=float)
    transverse = [np.asarray(xj, dtype=float) for xj in transverse]
    if not transverse:
        raise ValueError("at least one transverse coordinate is required")
    ct = c * t
    xp = x1 + ct
    singular = np.broadcast_to(xp == 0.0, np.broadcast_shapes(
        xp.shape, *[xj.shape for xj in transverse]))
    with np.errstate(divide="ignore", invalid="ignore"):
        th = _phase_theta0(x1, transverse, ct)
        vals = np.exp(1j * q * th) / _limit_root(xp)
    support = xp > 0.0 if side > 0 else xp < 0.0
    vals = np.where(support, vals, 0.0 + 0.0j)
    if not singular.any():
        if vals.ndim == 0:
            return complex(vals)
        return vals
    if vals.ndim == 0:
        return np.ma.masked
    return np.ma.MaskedArray(vals, mask=singular)


def retarded_field(q, x1, *transverse, t=0.0, c=1.0):
    """Field behind the moving source: Theta(x1+ct) exp(i q theta0)/sqrt(x1+ct).

    Exactly zero ahead of the source (x1 + ct < 0); on the singular line
    x1 = -ct the flagged masked marker is returned instead of a number.
    """
    return _half_field(q, x1, transverse, t, c, +1)


def advanced_field(q, x1, *transverse, t=0.0, c=1.0):
    """Mirror of ``retarded_field``: supported ahead of the source only.

    On its support the 1/sqrt branch is the eps -> 0+ limit of the
    regularized beam, so retarded + advanced -> ``regularized_sum`` as
    eps -> 0 away from the singular line.
    """
    return _half_field(q, x1, transverse, t, c, -1)


def regularized_sum(q, x1, *transverse, eps, t=0.0, c=1.0):
    """The two half-fields after the complex shift x1 -> x1 - i eps: a beam.

    Written out literally — exp(i q theta_eps) / prod_j sqrt(x1 + ct - i eps_j)
    — so it is an independent code path from the packet module's beam
    evaluator, which it must match identically.
    """
    if q <= 0.0:
        raise ValueError("spatial frequency q must be positive")
    eps_t = (float(eps),) if np.isscalar(eps) else tuple(float(e) for e in eps)
    if any(e <= 0.0 for e in eps_t):
        raise ValueError("the regularization shift eps must be positive")
    if len(eps_t) != len(transverse):
        raise ValueError("need one eps per transverse coordinate")
    x1 = np.asarray(x1, dtype=float)
    ct = c * t
    th = x1 - ct + 0.0j
    denom = 1.0 + 0.0j
    for xj, epsj in zip(transverse, eps_t):
        xj = np.asarray(xj, dtype=float)
        shifted = x1 + ct - 1j * epsj
        th = th + xj * xj / shifted
        denom = denom * np.sqrt(shifted)
    vals = np.exp(1j * q * th) / denom
    return complex(vals) if np.ndim(vals) == 0 else vals


def _amplitude_constant(c: float) -> complex:
    return -np.exp(-0.25j * np.pi) * 4.0 * math.sqrt(math.pi) * c * c


def elementary_pulse(q, t, c: float = 1.0):
    """Time pulse A sqrt(q) exp(-2 i q c t) emitted at spatial frequency q."""
    q = np.asarray(q, dtype=float)
    if not np.all(q > 0.0):
        raise ValueError("spatial frequency q must be positive")
    vals = _amplitude_constant(c) * np.sqrt(q) * np.exp(-2j * q * c * t)
    return complex(vals) if vals.ndim == 0 else vals


def spectral_density(q, params: PacketParams):
    """Beam-superposition weight F(q); zero for q <= 0, positive beyond."""
    q = np.asarray(q, dtype=float)
    a = params.p ** (2.0 * params.nu) / (
        (2.0 * params.gamma) ** params.nu * math.sqrt(2.0 * math.pi)
    )
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        vals = a * q ** (-params.nu - 1.0) * np.exp(
            -params.gamma * (q + params.kappa**2 / q)
        )
    vals = np.where(q > 0.0, vals, 0.0)
    return float(vals) if vals.ndim == 0 else vals


def _weighted_quadrature(params: PacketParams, factor_fn, rtol, max_doublings=10):
    """integral_0^inf F(q) factor(q) dq on the q = kappa e^u grid.

    The substitution makes the density decay like exp(-p cosh u), symmetric
    and double-exponential-ish, so a uniform trapezoid converges spectrally;
    the grid is truncated where the density underflows and refined by node
    doubling until the result settles to ``rtol``.
    """
    kappa, p = params.kappa, params.p
    ucap = math.acosh(1.0 + _LOG_TINY_MARGIN / p)
    n = 257
    prev = None
    for _ in range(max_doublings):
        u = np.linspace(-ucap, ucap, n)
        q = kappa * np.exp(u)
        weights = spectral_density(q, params) * q * (u[1] - u[0])
        est = np.tensordot(weights, factor_fn(q), axes=(0, 0))
        if prev is not None:
            scale = max(
                float(np.max(np.abs(est))), float(np.max(np.abs(prev))), 1e-300
            )
            change = float(np.max(np.abs(est - prev))) / scale
            if change < rtol:
                return est, change
        prev = est
        n = 2 * n - 1
    raise RuntimeError(
        "beam-superposition quadrature failed to converge; "
        "the closed-form evaluator remains available"
    )


def spectral_transform(params: PacketParams, theta_values, rtol: float = 1e-9):
    """integral_0^inf F(q) exp(i q theta) dq for Im(theta) >= 0 (vectorized)."""
    th = np.atleast_1d(np.asarray(theta_values, dtype=complex))
    if np.any(th.imag < -1e-12):
        raise ValueError("spectral_transform needs Im(theta) >= 0 to converge")
    est, _ = _weighted_quadrature(
        params, lambda q: np.exp(1j * np.outer(q, th.ravel())), rtol
    )
    if np.ndim(theta_values) == 0:
        return complex(est[0])
    return est.reshape(np.shape(theta_values))


def composite_pulse(t, params: PacketParams, method: str = "closed_form",
                    rtol: float = 1e-9):
    """Pulse shape Phi(t) produced by the full spectral density.

    ``closed_form`` evaluates B sigma^{nu-1/2} K_{nu-1/2}(sigma) with
    sigma = 2 kappa gamma sqrt(1 + 2 i c t / gamma); ``quadrature``
    integrates F(q) phi(q, t) dq directly. The two routes are independent
    and must agree.
    """
    c = params.c
    if method == "closed_form":
        sigma = (
            2.0
            * params.kappa
            * params.gamma
            * np.sqrt(1.0 + 2j * c * t / params.gamma + 0.0j)
        )
        front = -4.0 * c * c * np.exp(-0.25j * np.pi) * params.p / math.sqrt(
            params.gamma
        )
        order = params.nu - 0.5
        return complex(front * sigma**order * kv(order, sigma))
    if method == "quadrature":
        est, _ = _weighted_quadrature(
            params, lambda q: elementary_pulse(q, t, c=c), rtol
        )
        return complex(est)
    raise ValueError("method must be 'closed_form' or 'quadrature'")


def beam_superposition_oracle(params: PacketParams, *coords, t=0.0,
                              rtol: float = 1e-9):
    """The packet rebuilt as integral_0^inf F(q) beam(q, r, t) dq.

    Independent of the closed-form evaluator: only the beam phase and the
    density enter. Agreement with ``evaluate_gwp`` validates the packet,
    the density, and their normalizations simultaneously.
    """
    if len(coords) != params.dim:
        raise ValueError(
            f"expected {params.dim} coordinates, got {len(coords)}"
        )
    x1 = np.asarray(coords[0], dtype=float)
    ct = params.c * t
    th = x1 - ct + 0.0j
    denom = 1.0 + 0.0j
    for xj, epsj in zip(coords[1:], params.eps):
        xj = np.asarray(xj, dtype=float)
        shifted = x1 + ct - 1j * epsj
        th = th + xj * xj / shifted
        denom = denom * np.sqrt(shifted)
    shape = np.broadcast_shapes(th.shape, np.shape(denom))
    th = np.broadcast_to(th, shape)
    vals = spectral_transform(params, th, rtol=rtol) / denom
    return complex(vals) if np.ndim(vals) == 0 else vals
