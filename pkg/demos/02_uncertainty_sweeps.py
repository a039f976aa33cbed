"""Demo 2: how sharp can the packet get, and at what cost.

Sweeps the sharpness parameter p at fixed shape families and watches
(a) the Heisenberg products Delta_x Delta_kx and Delta_y Delta_ky descend
toward, but never below, the 1/2 floor, (b) the widths converge to the
Gaussian-envelope prediction at the sqrt(p) rate, and (c) the scale and
angular resolving powers improve as the wavelet turns directional.

Run:  python3 demos/02_uncertainty_sweeps.py
"""

import math
import os

import numpy as np

from gwpack import (
    PacketParams,
    evaluate_gwp,
    evaluate_morlet_limit,
    l2_norm,
    run_sweep,
    sweep_rows,
)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:  # pragma: no cover - plotting is optional sugar
    plt = None

OUT = os.path.join(os.path.dirname(__file__), "output")


def main():
    os.makedirs(OUT, exist_ok=True)
    sqrt_p = [1, 2, 3, 4, 6, 8]

    print("== family eps/gamma = 2, gamma = 1 ==")
    result = run_sweep("fixed_eps_over_gamma", 2.0, sqrt_p)
    header = (
        f"{'sqrt_p':>6} {'dx*dkx':>9} {'dy*dky':>9} "
        f"{'dx/sig_rms':>10} {'srp':>8} {'srp_asym':>8} {'arp':>7} dir"
    )
    print(header)
    for s, rep in zip(result.sqrt_p, result.reports):
        asym = (2 * s + 1) / (2 * s - 1) if s > 0.5 else float("nan")
        srp = f"{rep.srp:8.4f}" if rep.srp is not None else "      --"
        arp = f"{rep.arp:7.4f}" if rep.arp is not None else "     --"
        rms = rep.width_x / (PacketParams(
            p=s * s, nu=0.5, gamma=1.0, eps=(2.0,)).sigma_x / math.sqrt(2.0))
        print(f"{s:6.1f} {rep.product_x:9.5f} {rep.product_y:9.5f} "
              f"{rms:10.5f} {srp} {asym:8.4f} {arp} {rep.directional}")
    print("-> products approach the 0.5 floor from above; the width ratio\n"
          "   approaches 1; SRP approaches its large-p closed form.")

    print("\n== Gaussian-envelope limit: deviation shrinks like p^(-1/2) ==")
    ps = [16.0, 64.0, 256.0, 1024.0]
    devs = []
    for p in ps:
        params = PacketParams(p=p, nu=0.5, gamma=1.0, eps=(2.0,))
        sx, sy = params.sigma_x, params.sigma_transverse(0)
        diff = lambda x, y: evaluate_gwp(params, x, y, scaled=True) - \
            evaluate_morlet_limit(params, x, y, scaled=True)
        ref = lambda x, y: evaluate_morlet_limit(params, x, y, scaled=True)
        devs.append(l2_norm((diff, 0.0, sx, sy)) / l2_norm((ref, 0.0, sx, sy)))
        print(f"p={p:6.0f}: relative deviation = {devs[-1]:.5f}")
    slope = np.polyfit(np.log(ps), np.log(devs), 1)[0]
    print(f"log-log slope: {slope:+.3f} (exact envelope limit would be -0.5)")

    print("\n== losing directionality at small p ==")
    for p in (0.25, 1.0, 4.0):
        rep = run_sweep("fixed_eps_over_gamma", 2.0, [math.sqrt(p)]).reports[0]
        tag = "directional" if rep.directional else "NOT directional"
        print(f"p={p:5.2f}: mean kx = {rep.center_kx:.3f}, "
              f"spread = {rep.width_kx:.3f} -> {tag}")

    if plt is None:
        print("\nmatplotlib not available - skipping figures")
        return

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))
    for value, style in ((1.0 / 3.0, "o-"), (2.0 / 3.0, "s-"), (2.0, "^-")):
        res = run_sweep("fixed_eps_over_gamma", value, sqrt_p)
        rows = sweep_rows(res)
        ax1.plot(res.sqrt_p, [r[12] for r in rows], style,
                 label=f"eps/gamma={value:.2f} (x axis)")
        ax2.plot(res.sqrt_p, [r[14] if r[14] else np.nan for r in rows],
                 style, label=f"eps/gamma={value:.2f}")
    ax1.axhline(0.5, color="k", lw=0.8, ls="--", label="1/2 floor")
    ax1.set_xlabel("sqrt(p)"), ax1.set_ylabel("dx * dkx"), ax1.legend()
    ss = np.linspace(1, 8, 100)
    ax2.plot(ss, (2 * ss + 1) / (2 * ss - 1), "k--", lw=0.8,
             label="large-p closed form")
    ax2.set_xlabel("sqrt(p)"), ax2.set_ylabel("scale resolving power")
    ax2.legend()
    fig.tight_layout()
    path = os.path.join(OUT, "02_products_and_srp.png")
    fig.savefig(path, dpi=110)
    print(f"\nwrote {path}")


if __name__ == "__main__":
    main()
