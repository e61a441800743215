"""Static SVG figure of the two perturbed homeomorphisms."""

from __future__ import annotations

import io
import re
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .pl import PLHomeo  # noqa: E402


def _attr(f: PLHomeo) -> str:
    return ";".join(f"{_t(x)}:{_t(y)}" for x, y in f.points) + f"|{_t(f.left_slope)}|{_t(f.right_slope)}"


def _t(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_f1_f2(f1: PLHomeo, f2: PLHomeo, key_points: dict, rho_a: PLHomeo | None = None, rho_b: PLHomeo | None = None) -> str:
    """SVG text; the root element carries the exact breakpoints as data attributes."""
    p = key_points["g+(0)"]
    ap = key_points["ag+(0)"]
    bp = key_points["bg+(0)"]
    fbp = key_points["f1(bg+(0))"]
    lo = min(x for x, _ in f1.points + f2.points)
    lo = min(lo, p) - 2
    hi = max(bp, *(x for x, _ in f1.points + f2.points)) + 3
    extra = [pt for g in (rho_a, rho_b) if g is not None for pt in g.points]
    xs = sorted({lo, hi, *(x for x, _ in f1.points + f2.points + tuple(extra) if lo <= x <= hi)})

    with plt.rc_context({"svg.hashsalt": "ordspace", "svg.fonttype": "none"}):
        fig, axes = plt.subplots(1, 2, figsize=(9, 4), sharey=True)
        for ax, f, g, name, marks in (
            (axes[0], f1, rho_a, "f1", [(p, ap), (ap, bp)]),
            (axes[1], f2, rho_b, "f2", [(p, bp), (bp, fbp)]),
        ):
            if g is not None:
                ax.plot([float(x) for x in xs], [float(g(x)) for x in xs], ls="--", lw=1, color="0.6", label=f"rho({'a' if name == 'f1' else 'b'})")
            ax.plot([float(x) for x in xs], [float(f(x)) for x in xs], lw=1.6, color="C0" if name == "f1" else "C3", label=name)
            ax.plot([float(lo), float(hi)], [float(lo), float(hi)], lw=0.6, color="0.85")
            for x, y in marks:
                ax.plot([float(x)], [float(y)], "ko", ms=4)
                ax.annotate(f"({_t(x)}, {_t(y)})", (float(x), float(y)), textcoords="offset points", xytext=(4, -12), fontsize=8)
            ax.axvline(float(p), lw=0.5, color="0.7")
            ax.set_title(name)
            ax.set_xlabel("x")
            ax.legend(loc="upper left", fontsize=8, frameon=False)
        axes[0].set_ylabel("y")
        fig.tight_layout()
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    svg = buf.getvalue()
    data = (
        f' data-f1-breakpoints="{_attr(f1)}" data-f2-breakpoints="{_attr(f2)}"'
        f' data-key-points="{_t(p)},{_t(ap)},{_t(bp)},{_t(fbp)}"'
    )
    return re.sub(r"<svg\b", "<svg" + data, svg, count=1)


def read_plot_data(svg: str) -> dict:
    """Recover the breakpoint attributes written by :func:`render_f1_f2`."""
    out = {}
    for key in ("f1", "f2"):
        m = re.search(rf'data-{key}-breakpoints="([^"]*)"', svg)
        if not m:
            raise ValueError(f"plot carries no {key} breakpoints")
        pts, left, right = m.group(1).split("|")
        points = tuple(tuple(Fraction(v) for v in item.split(":")) for item in pts.split(";"))
        out[key] = PLHomeo(points, Fraction(left), Fraction(right))
    m = re.search(r'data-key-points="([^"]*)"', svg)
    if not m:
        raise ValueError("plot carries no key points")
    out["key_points"] = tuple(Fraction(v) for v in m.group(1).split(","))
    return out
