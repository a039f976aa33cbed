"""Demo 1: what the packet looks like, in space and in wavenumber.

Renders a broad packet and a tight one on 2D grids, shows that a tight
envelope rides along x at the propagation speed (a broad one genuinely lags:
its intensity is skewed toward the trailing side), and inspects the
closed-form spectrum: exactly zero at k = 0, with essential support that
concentrates in the forward half-plane as p grows.

Run:  python3 demos/01_render_packet.py   (writes PNGs to demos/output/)
"""

import os

import numpy as np

from gwpack import GridSpec, PacketParams, fourier_gwp, sample_field

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # pragma: no cover - plotting is optional sugar
    plt = None

OUT = os.path.join(os.path.dirname(__file__), "output")

BROAD = PacketParams(p=0.5, nu=0.5, gamma=0.25, eps=(1.0,))
TIGHT = PacketParams(p=100.0, nu=0.5, gamma=1.0, eps=(1.0,))


def envelope_center(field):
    """|psi|^2-weighted center of mass on the grid."""
    xs, ys = field.grid.mesh()
    w = np.abs(field.values) ** 2
    return float((xs * w).sum() / w.sum()), float((ys * w).sum() / w.sum())


def main():
    os.makedirs(OUT, exist_ok=True)

    print("== position space ==")
    grid = GridSpec.centered(8.0, (256, 256))
    for label, params in (("broad (p=0.5)", BROAD), ("tight (p=100)", TIGHT)):
        f0 = sample_field(params, grid, "position", t=0.0)
        cx, cy = envelope_center(f0)
        print(f"{label}: sigma_x={params.sigma_x:.3f} "
              f"sigma_y={params.sigma_transverse(0):.3f} "
              f"envelope center at t=0: ({cx:+.3f}, {cy:+.3f})")

    print("\n== a tight envelope moves at speed c along x ==")
    for t in (0.0, 1.0, 2.0):
        ft = sample_field(TIGHT, GridSpec.centered(3.0, (256, 256)), "position",
                          t=t)
        cx, cy = envelope_center(ft)
        print(f"t={t:.1f}: center x = {cx:+.4f}  (expected c*t = {t:+.1f})")
    fb = sample_field(BROAD, GridSpec.centered(12.0, (384, 384)), "position",
                      t=1.0)
    print(f"the broad packet's center at t=1.0 is only "
          f"{envelope_center(fb)[0]:+.3f}: its intensity trails the front")

    print("\n== wavenumber space ==")
    for label, params in (("broad", BROAD), ("tight", TIGHT)):
        kext = 2.5 * params.kappa + 6.0 / params.gamma
        kgrid = GridSpec.centered(kext, (512, 512))
        kmesh = kgrid.mesh()
        mag = np.abs(fourier_gwp(params, *kmesh))
        ix, iy = np.unravel_index(int(np.argmax(mag)), mag.shape)
        kx_peak = kmesh[0][ix, iy]
        left_mass = mag[kmesh[0] < 0].sum() / mag.sum()
        print(f"{label}: |spectrum| peaks at kx = {kx_peak:+.3f} "
              f"(carrier kappa = {params.kappa:.3f}); value at k=0 is "
              f"{abs(fourier_gwp(params, 0.0, 0.0)):.1e}; "
              f"mass at kx<0: {left_mass:.2e}")

    if plt is None:
        print("\nmatplotlib not available - skipping figures")
        return

    fig, axes = plt.subplots(2, 3, figsize=(13, 8))
    for row, (label, params) in enumerate(
        (("p=0.5", BROAD), ("p=100", TIGHT))
    ):
        g = GridSpec.centered(8.0 if row == 0 else 3.0, (256, 256))
        f0 = sample_field(params, g, "position")
        f2 = sample_field(params, g, "position", t=1.5)
        kx, ky = g.fourier_dual().mesh()
        sp = np.abs(sample_field(params, g.fourier_dual(), "frequency").values)
        ext = [g.origin[0], -g.origin[0], g.origin[1], -g.origin[1]]
        axes[row, 0].imshow(np.abs(f0.values).T, origin="lower", extent=ext)
        axes[row, 0].set_title(f"|field| {label}, t=0")
        axes[row, 1].imshow(np.abs(f2.values).T, origin="lower", extent=ext)
        axes[row, 1].set_title(f"|field| {label}, t=1.5")
        kext = [kx.min(), kx.max(), ky.min(), ky.max()]
        axes[row, 2].imshow(sp.T, origin="lower", extent=kext)
        axes[row, 2].set_title(f"|spectrum| {label}")
        for ax in axes[row]:
            ax.set_xlabel("x" if ax is not axes[row, 2] else "kx")
    fig.tight_layout()
    path = os.path.join(OUT, "01_packet_and_spectrum.png")
    fig.savefig(path, dpi=110)
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main()
