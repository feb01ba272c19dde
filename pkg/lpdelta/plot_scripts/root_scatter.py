import logging
from typing import List, Optional, Sequence

import pandas as pd
import plotly.graph_objects as go

from lpdelta.core.poly_core import Poly, format_poly
from lpdelta.core.zero_location import (
    DEFAULT_ABERTH_MAX_ITER,
    DEFAULT_ABERTH_TOL,
    DEFAULT_BAND_TOL,
    LOWER,
    UPPER,
    aberth_roots,
)

AXIS = "axis"

# marker style per location
LOCATION_STYLE = {
    UPPER: dict(color="firebrick", symbol="triangle-up"),
    AXIS: dict(color="black", symbol="circle"),
    LOWER: dict(color="royalblue", symbol="triangle-down"),
}


def _location(z: complex, tol: float) -> str:
    if abs(z.imag) <= tol * (1 + abs(z)):
        return AXIS
    return UPPER if z.imag > 0 else LOWER


def _clean(x: float, digits: int) -> float:
    x = round(x, digits)
    # no negative zero in the table
    return 0.0 if x == 0 else x


def root_table(polys: Sequence[Poly], digits: int = 12, tol: float = DEFAULT_BAND_TOL,
               aberth_tol: float = DEFAULT_ABERTH_TOL, max_iter: int = DEFAULT_ABERTH_MAX_ITER) -> pd.DataFrame:
    """
    Numeric roots of every polynomial, one row per root (with multiplicity).

    Columns: poly (index of the input), re, im, location. Rows are ordered by
    input, then by decreasing imaginary part, then by real part.
    """
    rows = []
    for k, p in enumerate(polys):
        if p.is_zero() or p.degree < 1:
            logging.info(f"Polynomial {k} ({format_poly(p)}) has no roots to plot")
            continue
        for z in aberth_roots(p, aberth_tol, max_iter):
            rows.append({"poly": k, "re": _clean(z.real, digits), "im": _clean(z.imag, digits),
                         "location": _location(z, tol)})
    df = pd.DataFrame(rows, columns=["poly", "re", "im", "location"])
    if not df.empty:
        df = df.sort_values(["poly", "im", "re"], ascending=[True, False, True]).reset_index(drop=True)
    return df


def root_scatter(df: pd.DataFrame, labels: Optional[List[str]] = None,
                 width: int = 640, height: int = 480) -> go.Figure:
    """
    Scatter of the roots in the complex plane, one trace per location so
    upper, axis and lower roots are marked distinctly.
    """
    fig = go.Figure()
    for location in (UPPER, AXIS, LOWER):
        part = df[df["location"] == location]
        if part.empty:
            continue
        hover = None
        if labels:
            hover = [labels[int(i)] for i in part["poly"]]
        fig.add_trace(go.Scatter(x=part["re"], y=part["im"], mode="markers",
                                 name=location, text=hover,
                                 marker=dict(size=9, **LOCATION_STYLE[location])))
    fig.add_hline(y=0, line_width=1, line_color="gray")
    fig.update_layout(xaxis_title="Re z", yaxis_title="Im z", width=width, height=height,
                      template="simple_white", legend_title_text="zeros")
    fig.update_yaxes(scaleanchor="x", scaleratio=1)
    return fig


def write_svg(fig: go.Figure, out_file: str) -> None:
    """Export the figure as SVG (kaleido engine)."""
    try:
        fig.write_image(out_file, format="svg")
    except ValueError as e:
        logging.error(f"SVG export failed (is kaleido installed?): {e}")
        raise
    logging.info(f"Root scatter written to {out_file}")
