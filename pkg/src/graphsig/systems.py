"""Graph shift, polynomial graph systems, and the normalized first-order averager.

A shift is one application of an operator matrix chosen by ShiftKind; a
polynomial system combines a signal with its iterated shifts. Powers of the
operator are never formed: applying an order-M filter costs M matrix-vector
products.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import IsolatedVertexError, LengthMismatchError
from .graph import Graph, adjacency, degrees, laplacian, random_walk_matrix, weight_matrix
from .spectral import SpectralDecomposition, gft, igft


class ShiftKind(str, Enum):
    ADJACENCY = "adjacency"
    WEIGHT = "weight"
    LAPLACIAN = "laplacian"
    RANDOM_WALK = "random_walk"


def shift_operator(g: Graph, kind: ShiftKind | str) -> np.ndarray:
    """Materialize the operator matrix for the requested shift kind."""
    kind = ShiftKind(kind)
    if kind is ShiftKind.ADJACENCY:
        return adjacency(g)
    if kind is ShiftKind.WEIGHT:
        return weight_matrix(g)
    if kind is ShiftKind.LAPLACIAN:
        return laplacian(g)
    return random_walk_matrix(g)


def _as_signal(g: Graph, x, what: str = "signal") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != g.n:
        raise LengthMismatchError(f"{what} has length {arr.shape}, expected ({g.n},)")
    if not np.isfinite(arr).all():
        raise ValueError(f"{what} entries must be finite")
    return arr


def _as_coeffs(coeffs) -> np.ndarray:
    h = np.asarray(coeffs, dtype=float)
    if h.ndim != 1 or h.shape[0] < 1:
        raise ValueError("filter needs at least one coefficient")
    if not np.isfinite(h).all():
        raise ValueError("filter coefficients must be finite")
    return h


def shift(g: Graph, kind: ShiftKind | str, x) -> np.ndarray:
    """One application of the selected shift operator."""
    arr = _as_signal(g, x)
    return shift_operator(g, kind) @ arr


def cumulative_sum(g: Graph, x) -> np.ndarray:
    """Each vertex plus the plain sum of its neighbors: x + Ax."""
    arr = _as_signal(g, x)
    return arr + adjacency(g) @ arr


def normalized_average(g: Graph, x) -> np.ndarray:
    """Halfway blend of a vertex with its degree-normalized neighborhood.

    Weighting coefficients sum to one, so a constant maps to itself.
    Raises IsolatedVertexError when any vertex has degree zero.
    """
    arr = _as_signal(g, x)
    d = degrees(g)
    isolated = np.flatnonzero(d == 0.0)
    if isolated.size:
        raise IsolatedVertexError(
            f"vertex {int(isolated[0])} has degree 0; cannot normalize its neighborhood"
        )
    return 0.5 * (arr + (weight_matrix(g) @ arr) / d)


def apply_polynomial(g: Graph, kind: ShiftKind | str, coeffs, x) -> np.ndarray:
    """Order-M polynomial system in the vertex domain.

    Accumulates h_0 x + h_1 Sx + ... + h_{M-1} S^{M-1} x with iterated
    matrix-vector products.
    """
    arr = _as_signal(g, x)
    h = _as_coeffs(coeffs)
    op = shift_operator(g, kind)
    acc = h[0] * arr
    power = arr
    for hm in h[1:]:
        power = op @ power
        acc = acc + hm * power
    return acc


def spectral_response(coeffs, eigenvalues) -> np.ndarray:
    """Per-eigenvalue gain of a polynomial system, by Horner evaluation."""
    h = _as_coeffs(coeffs)
    lam = np.asarray(eigenvalues, dtype=float)
    resp = np.zeros_like(lam)
    for hm in h[::-1]:
        resp = resp * lam + hm
    return resp


def apply_spectral(d: SpectralDecomposition, response, x) -> np.ndarray:
    """Filter in the spectral domain: transform, scale per band, invert."""
    resp = np.asarray(response, dtype=float)
    if resp.ndim != 1 or resp.shape[0] != d.n:
        raise LengthMismatchError(f"response has length {resp.shape}, expected ({d.n},)")
    return igft(d, resp * gft(d, x))


# ---------------------------------------------------------------------------
# Signal CSV: header vertex,value then one row per vertex in order
# ---------------------------------------------------------------------------


def format_signal_csv(x) -> str:
    arr = np.asarray(x, dtype=float)
    lines = ["vertex,value"]
    for i in range(arr.shape[0]):
        lines.append(f"{i},{arr[i]:.17g}")
    return "\n".join(lines) + "\n"


def parse_signal_csv(text: str) -> np.ndarray:
    from .errors import ParseError

    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "vertex,value":
        raise ParseError("line 1: expected header 'vertex,value'")
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'vertex,value', got {line!r}")
        try:
            idx = int(parts[0])
            val = float(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed row {line!r}") from None
        if idx != lineno - 2:
            raise ParseError(f"line {lineno}: vertex {idx} out of order (expected {lineno - 2})")
        values.append(val)
    return np.asarray(values, dtype=float)
