"""Demo 3: directional analysis and exact-up-to-coverage synthesis.

Plants three oscillating components in an image — different positions,
wavelengths, and orientations — then lets the transform find them: the
scalogram peaks at the planted (scale, angle, position) triples. Inverting
with the admissibility constant rebuilds the image to ~1%.

Run:  python3 demos/03_directional_cwt.py
"""

import os

import numpy as np

from gwpack import (
    GridSpec,
    PacketParams,
    admissibility_2d,
    forward_cwt,
    inverse_cwt,
    synthetic_test_image,
    uniform_angles,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # pragma: no cover - plotting is optional sugar
    plt = None

OUT = os.path.join(os.path.dirname(__file__), "output")

# ground truth planted by synthetic_test_image
PLANTED = (
    {"pos": (-1.2, 0.8), "kmag": 1.7, "angle_deg": 10.0},
    {"pos": (1.5, 1.0), "kmag": 2.1, "angle_deg": 130.0},
    {"pos": (0.3, -1.4), "kmag": 2.5, "angle_deg": -75.0},
)


def main():
    os.makedirs(OUT, exist_ok=True)
    params = PacketParams(p=8.0, nu=0.5, gamma=1.0, eps=(1.0,))
    grid = GridSpec.centered(10.0, (256, 256))
    scales = np.geomspace(0.56, 4.2, 32)
    angles = uniform_angles(16)
    image = synthetic_test_image(grid)

    print("analyzing a 256x256 image with 32 scales x 16 angles ...")
    coeffs = forward_cwt(image, params, scales, angles)

    # the components overlap in position but separate cleanly in the
    # (scale, angle) energy map: take its three local maxima, then localize
    # each component inside its winning coefficient slab
    mag = np.abs(coeffs.values)
    xs, ys = grid.axes()
    energy = (mag**2).sum(axis=(2, 3))
    work = energy.copy()
    found = []
    for _ in range(3):
        i, j = np.unravel_index(int(np.argmax(work)), work.shape)
        ix, iy = np.unravel_index(int(np.argmax(mag[i, j])), grid.shape)
        found.append((scales[i], angles[j], xs[ix], ys[iy]))
        # a bright component owns a whole scale ridge at its angle, so mask
        # its angular sector across all scales before looking again
        for dj in range(-3, 4):
            work[:, (j + dj) % len(angles)] = 0.0

    print(f"\n{'planted':^36} | {'recovered':^36}")
    print(f"{'|k|':>6} {'angle':>9} {'position':>16} | "
          f"{'kappa/a':>7} {'angle':>9} {'position':>16}")
    for truth, (a, alpha, x, y) in zip(
        sorted(PLANTED, key=lambda d: d["kmag"]),
        sorted(found, key=lambda f: params.kappa / f[0]),
    ):
        ang = np.degrees(alpha)
        ang = ang - 360.0 if ang > 180.0 else ang
        print(f"{truth['kmag']:6.2f} {truth['angle_deg']:6.1f}deg "
              f"({truth['pos'][0]:+.2f},{truth['pos'][1]:+.2f})    | "
              f"{params.kappa / a:7.2f} {ang:6.1f}deg ({x:+.2f},{y:+.2f})")
    step = 360.0 / len(angles)
    print(f"(angle grid is {step:.1f} deg coarse; scale grid ~14% per step)")

    print("\nsynthesizing back ...")
    adm = admissibility_2d(params)
    recon = inverse_cwt(coeffs, adm)
    err = np.linalg.norm(recon.values - image.values) / np.linalg.norm(
        image.values
    )
    print(f"admissibility constant (plain-integral convention): "
          f"{adm.value:.6e}")
    print(f"round-trip relative L2 error: {err:.3e}")

    if plt is None:
        print("\nmatplotlib not available - skipping figures")
        return

    fig, axes = plt.subplots(1, 3, figsize=(13.5, 4.2))
    ext = [xs[0], -xs[0], ys[0], -ys[0]]
    axes[0].imshow(np.abs(image.values).T, origin="lower", extent=ext)
    axes[0].set_title("|image|: three planted components")
    axes[1].imshow(np.abs(recon.values).T, origin="lower", extent=ext)
    axes[1].set_title(f"|reconstruction| (rel err {err:.1e})")
    energy = (np.abs(coeffs.values) ** 2).sum(axis=(2, 3))
    axes[2].imshow(
        energy, origin="lower", aspect="auto",
        extent=[np.degrees(angles[0]), np.degrees(angles[-1]),
                np.log(scales[0]), np.log(scales[-1])],
    )
    axes[2].set_xlabel("angle (deg)"), axes[2].set_ylabel("ln scale")
    axes[2].set_title("coefficient energy by (scale, angle)")
    fig.tight_layout()
    path = os.path.join(OUT, "03_cwt_roundtrip.png")
    fig.savefig(path, dpi=110)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
