# experiments/visualize_cone.py
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from pathlib import Path

from src.ktheory import ConeVerdict, K0Class, cone_contains
from src.line_bundles import class_of_L, nu_table

OUTPUT_DIR = Path("experiments/results")
VERDICT_CODE = {ConeVerdict.NOT_IN: 0, ConeVerdict.UNKNOWN: 1, ConeVerdict.IN: 2}


def plot_cone(radius: int = 6, k_range: int = 5):
    """Cone membership over the K0 lattice for n = 2 with line-bundle classes on top."""
    xs = np.arange(-radius, radius + 1)
    ys = np.arange(-2, radius + 1)
    grid = np.zeros((len(ys), len(xs)), dtype=int)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            grid[i, j] = VERDICT_CODE[cone_contains(K0Class.of((int(x), int(y))))]

    fig, ax = plt.subplots(figsize=(9, 6))
    cmap = ListedColormap(["#e74c3c", "#bdc3c7", "#2ecc71"])
    ax.imshow(grid, origin="lower", cmap=cmap, vmin=0, vmax=2,
              extent=(xs[0] - 0.5, xs[-1] + 0.5, ys[0] - 0.5, ys[-1] + 0.5))

    classes = [class_of_L(2, k) for k in range(-k_range, k_range + 1)]
    ax.scatter([c.coords[0] for c in classes], [c.coords[1] for c in classes],
               color="#2c3e50", marker="o", zorder=3, label="[L_k], |k| ≤ %d" % k_range)
    for k, c in zip(range(-k_range, k_range + 1), classes):
        ax.annotate(str(k), (c.coords[0], c.coords[1]), textcoords="offset points", xytext=(0, 6),
                    ha="center", fontsize=8)

    ax.set_xlabel("coefficient of Q_1")
    ax.set_ylabel("coefficient of Q_2 (rank)")
    ax.set_title("Positive cone of K0, n = 2 (green: in, grey: undecided, red: not in)",
                 fontsize=12, fontweight="bold")
    ax.legend(loc="upper left")
    ax.grid(True, alpha=0.3)

    path = OUTPUT_DIR / "k0_cone_n2.png"
    plt.tight_layout()
    plt.savefig(path, dpi=300, bbox_inches="tight")
    plt.close(fig)
    print(f"✅ Cone visualization saved: {path}")
    return path


def plot_nu(m_max: int = 12, l_max: int = 8):
    table = nu_table(m_max, l_max)[:, 1:].astype(float)
    fig, ax = plt.subplots(figsize=(8, 6))
    im = ax.imshow(np.log10(table), origin="lower", cmap="viridis", aspect="auto",
                   extent=(0.5, l_max + 0.5, -0.5, m_max + 0.5))
    fig.colorbar(im, ax=ax, label="log10 ν(m, l)")
    ax.set_xlabel("l")
    ax.set_ylabel("m")
    ax.set_title("ν(m, l) = C(m+l-1, m)", fontsize=12, fontweight="bold")

    path = OUTPUT_DIR / "nu_table.png"
    plt.tight_layout()
    plt.savefig(path, dpi=300, bbox_inches="tight")
    plt.close(fig)
    print(f"✅ ν table visualization saved: {path}")
    return path


if __name__ == "__main__":
    print("=" * 70)
    print("K0 CONE AND ν TABLE FIGURES")
    print("=" * 70)
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    plot_cone()
    plot_nu()
    print(f"\n📁 All results in: {OUTPUT_DIR}/")
