"""Figure data emission and headless rendering.

Each figure is produced as a CSV payload (the primary artifact) plus a PNG
rendered next to it with the Agg backend:

* fig1 -- the catenoid mesh (zeta, phi, x, y, z);
* fig2 -- the inverted-double-well zeta-chart potential at m = +/-1,
  eps = 0.1;
* fig3 -- the eta-chart potential V - E at eps = 2 for m = 0, 1, 2 (the
  energy_unity flag shifts the curves by E = 1 for display).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..geometry import CatenoidShape, embed_catenoid  # noqa: E402
from ..potentials import ChannelSpec, v_minus_e, v_zeta  # noqa: E402
from .tabular import write_csv  # noqa: E402

FIGURE_IDS = ("fig1", "fig2", "fig3")


@dataclass(frozen=True)
class FigurePayload:
    which: str
    header: list[str]
    rows: list[list[float]]
    meta: dict = field(default_factory=dict)


def figure_data(which: str, **params) -> FigurePayload:
    """Build the tabular payload behind a figure.

    fig1 params: radius, a, zeta_span, n_zeta, n_phi.
    fig2 params: m, eps, zeta_span, samples.
    fig3 params: eps, m_values, eta_max, samples, energy_unity.
    """
    if which == "fig1":
        shape = CatenoidShape(R=float(params.get("radius", 1.0)), a=float(params.get("a", 1.0)))
        span = float(params.get("zeta_span", 2.0))
        n_zeta = int(params.get("n_zeta", 41))
        n_phi = int(params.get("n_phi", 72))
        zg = np.linspace(-span, span, n_zeta)
        pg = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
        rows = []
        for z in zg:
            for p in pg:
                x, y, zz = embed_catenoid(shape, z, p)
                rows.append([float(z), float(p), float(x), float(y), float(zz)])
        return FigurePayload(
            which=which,
            header=["zeta", "phi", "x", "y", "z"],
            rows=rows,
            meta={"n_zeta": n_zeta, "n_phi": n_phi, "radius": shape.R, "a": shape.a},
        )

    if which == "fig2":
        channel = ChannelSpec(m=int(params.get("m", 1)), eps=float(params.get("eps", 0.1)))
        span = float(params.get("zeta_span", 4.0))
        samples = int(params.get("samples", 801))
        zg = np.linspace(-span, span, samples)
        vals = v_zeta(channel, zg)
        rows = [[float(z), float(v)] for z, v in zip(zg, vals)]
        return FigurePayload(
            which=which, header=["zeta", "V"], rows=rows,
            meta={"m": channel.m, "eps": channel.eps},
        )

    if which == "fig3":
        eps = float(params.get("eps", 2.0))
        m_values = tuple(int(m) for m in params.get("m_values", (0, 1, 2)))
        eta_max = float(params.get("eta_max", 8.0))
        samples = int(params.get("samples", 801))
        energy_unity = bool(params.get("energy_unity", False))
        offset = 1.0 if energy_unity else 0.0
        eg = np.linspace(0.0, eta_max, samples)
        columns = [v_minus_e(ChannelSpec(m=m, eps=eps), eg) + offset for m in m_values]
        rows = [
            [float(eg[i])] + [float(col[i]) for col in columns] for i in range(samples)
        ]
        return FigurePayload(
            which=which,
            header=["eta"] + [f"V_m{m}" for m in m_values],
            rows=rows,
            meta={"eps": eps, "m_values": list(m_values), "energy_unity": energy_unity},
        )

    raise ValueError(f"unknown figure {which!r}; choose from {FIGURE_IDS}")


def write_figure(payload: FigurePayload, csv_path) -> tuple[Path, Path]:
    """Write the CSV payload and render the companion PNG next to it."""
    csv_path = Path(csv_path)
    write_csv(csv_path, payload.header, payload.rows)
    png_path = csv_path.with_suffix(".png")
    render_figure(payload, png_path)
    return csv_path, png_path


def render_figure(payload: FigurePayload, png_path) -> Path:
    png_path = Path(png_path)
    png_path.parent.mkdir(parents=True, exist_ok=True)
    data = np.asarray(payload.rows, dtype=float)

    if payload.which == "fig1":
        n_zeta = payload.meta["n_zeta"]
        n_phi = payload.meta["n_phi"]
        x = data[:, 2].reshape(n_zeta, n_phi)
        y = data[:, 3].reshape(n_zeta, n_phi)
        z = data[:, 4].reshape(n_zeta, n_phi)
        # close the azimuthal seam for rendering
        x = np.column_stack([x, x[:, 0]])
        y = np.column_stack([y, y[:, 0]])
        z = np.column_stack([z, z[:, 0]])
        fig = plt.figure(figsize=(5, 5))
        ax = fig.add_subplot(projection="3d")
        ax.plot_wireframe(x, y, z, rstride=2, cstride=6, linewidth=0.5, color="tab:blue")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_zlabel("z")
        ax.set_title("catenoid section")
    elif payload.which == "fig2":
        fig, ax = plt.subplots(figsize=(5, 3.2))
        ax.plot(data[:, 0], data[:, 1], color="tab:blue")
        ax.set_xlabel(r"$\zeta$")
        ax.set_ylabel(r"$V(\zeta)$")
        ax.set_title(f"m=±{payload.meta['m']}, eps={payload.meta['eps']}")
        ax.grid(alpha=0.3)
    elif payload.which == "fig3":
        fig, ax = plt.subplots(figsize=(5, 3.2))
        for j, m in enumerate(payload.meta["m_values"]):
            ax.plot(data[:, 0], data[:, 1 + j], label=f"m=±{m}" if m else "m=0")
        ax.set_xlabel(r"$\eta^+$")
        ax.set_ylabel(r"$V-E$" + (" (+1)" if payload.meta.get("energy_unity") else ""))
        ax.set_title(f"eps={payload.meta['eps']}")
        ax.legend()
        ax.grid(alpha=0.3)
    else:  # pragma: no cover
        raise ValueError(f"unknown figure {payload.which!r}")

    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return png_path
