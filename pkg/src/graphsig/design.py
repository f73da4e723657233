"""Least-squares spectral filter design and the closed-form smoothing denoiser.

Filter design samples a desired gain at the (raw, unscaled) eigenvalues,
stacks the Vandermonde system, and solves the M-by-M normal equations by
Gaussian elimination with partial pivoting. Repeated eigenvalues simply
duplicate rows. A collapsed pivot raises IllConditionedError instead of
silently regularizing.

The denoiser minimizes 0.5*||y - x||^2 + alpha * y^T L y. Its vertex-domain
form is a symmetric positive-definite solve via Cholesky, deliberately
independent of the spectral-domain form so the two routes cross-check each
other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import (
    IllConditionedError,
    LengthMismatchError,
    NegativeAlphaError,
    OrderExceedsSizeError,
    ParseError,
)
from .graph import Graph, laplacian
from .spectral import SpectralDecomposition, gft, igft
from .systems import _as_signal

_PIVOT_FLOOR = 1e-13


def parse_kernel(text: str) -> Callable[[np.ndarray], np.ndarray]:
    """Parse a named gain kernel.

    Supported: ``exp:<decay>`` for exp(-decay * lambda) and
    ``const:<value>`` for a flat gain.
    """
    name, _, arg = text.partition(":")
    try:
        value = float(arg) if arg else 1.0
    except ValueError:
        raise ParseError(f"kernel argument {arg!r} is not a number") from None
    if name == "exp":
        return lambda lam: np.exp(-value * np.asarray(lam, dtype=float))
    if name == "const":
        return lambda lam: np.full(np.asarray(lam).shape, value)
    raise ParseError(f"unknown kernel {name!r} (expected 'exp:<decay>' or 'const:<value>')")


@dataclass(frozen=True)
class DesignSpec:
    """Target gain for a filter of a given order.

    Exactly one of ``kernel`` (a named kernel string) or ``gains`` (explicit
    per-eigenvalue targets aligned to the ascending spectrum) must be given.
    """

    order: int
    kernel: str | None = None
    gains: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"filter order must be >= 1, got {self.order}")
        if (self.kernel is None) == (self.gains is None):
            raise ValueError("provide exactly one of 'kernel' or 'gains'")
        if self.gains is not None:
            object.__setattr__(self, "gains", tuple(float(v) for v in self.gains))
            if not all(math.isfinite(v) for v in self.gains):
                raise ValueError("target gains must be finite")

    def target_gains(self, eigenvalues: np.ndarray) -> np.ndarray:
        lam = np.asarray(eigenvalues, dtype=float)
        if self.kernel is not None:
            return parse_kernel(self.kernel)(lam)
        g = np.asarray(self.gains, dtype=float)
        if g.shape != lam.shape:
            raise LengthMismatchError(
                f"explicit gains have length {g.shape[0]}, expected {lam.shape[0]}"
            )
        return g


@dataclass(frozen=True)
class DesignResult:
    """Fitted coefficients plus the gains they actually realize."""

    coefficients: np.ndarray
    realized_gains: np.ndarray
    residual_l2: float

    def __post_init__(self):
        self.coefficients.setflags(write=False)
        self.realized_gains.setflags(write=False)


def _solve_normal_equations(V: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting on V^T V h = V^T g."""
    a = V.T @ V
    b = V.T @ g
    m = a.shape[0]
    lead: float | None = None
    for k in range(m):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            b[[k, p]] = b[[p, k]]
        piv = abs(a[k, k])
        if lead is None:
            lead = piv
        if lead == 0.0 or piv < _PIVOT_FLOOR * lead:
            raise IllConditionedError(
                f"normal-equation pivot {piv:.3e} fell below {_PIVOT_FLOOR:g} of the leading pivot {lead:.3e}"
            )
        for i in range(k + 1, m):
            f = a[i, k] / a[k, k]
            a[i, k:] -= f * a[k, k:]
            b[i] -= f * b[k]
    h = np.zeros(m)
    for k in range(m - 1, -1, -1):
        h[k] = (b[k] - a[k, k + 1:] @ h[k + 1:]) / a[k, k]
    return h


def design_ls(eigenvalues, spec: DesignSpec) -> DesignResult:
    """Least-squares fit of polynomial coefficients to a target gain.

    Raises OrderExceedsSizeError when the order exceeds the number of
    eigenvalues, and IllConditionedError on pivot collapse.
    """
    lam = np.asarray(eigenvalues, dtype=float)
    if not np.isfinite(lam).all():
        raise ValueError("eigenvalues must be finite")
    if spec.order > lam.shape[0]:
        raise OrderExceedsSizeError(
            f"order {spec.order} exceeds the {lam.shape[0]} available eigenvalues"
        )
    targets = spec.target_gains(lam)
    vand = np.vander(lam, spec.order, increasing=True)
    h = _solve_normal_equations(vand, targets)
    realized = vand @ h
    residual = float(np.linalg.norm(realized - targets))
    return DesignResult(coefficients=h, realized_gains=realized, residual_l2=residual)


def _check_alpha(alpha: float) -> float:
    a = float(alpha)
    if math.isnan(a) or math.isinf(a):
        raise ValueError(f"alpha must be finite, got {a!r}")
    if a < 0.0:
        raise NegativeAlphaError(f"alpha must be >= 0, got {a}")
    return a


def denoise_vertex(g: Graph, x, alpha: float) -> np.ndarray:
    """Smoothing denoiser in the vertex domain: solve (I + 2*alpha*L) y = x."""
    arr = _as_signal(g, x)
    a = _check_alpha(alpha)
    system = np.eye(g.n) + 2.0 * a * laplacian(g)
    return cho_solve(cho_factor(system, lower=True), arr)


def denoise_spectral(d: SpectralDecomposition, x, alpha: float) -> np.ndarray:
    """Same denoiser through the spectral route: gain 1/(1 + 2*alpha*lambda_k)."""
    a = _check_alpha(alpha)
    response = 1.0 / (1.0 + 2.0 * a * d.eigenvalues)
    return igft(d, response * gft(d, x))


def smoothness(g: Graph, x) -> float:
    """Laplacian quadratic form x^T L x; small for slowly varying signals."""
    arr = _as_signal(g, x)
    return float(arr @ laplacian(g) @ arr)


def denoise_objective(g: Graph, x, y, alpha: float) -> float:
    """Denoising cost: half the squared deviation plus alpha times smoothness."""
    x_arr = _as_signal(g, x, "x")
    y_arr = _as_signal(g, y, "y")
    a = _check_alpha(alpha)
    diff = y_arr - x_arr
    return float(0.5 * (diff @ diff) + a * (y_arr @ laplacian(g) @ y_arr))


# ---------------------------------------------------------------------------
# Design-result CSV: coefficient section, then gain section
# ---------------------------------------------------------------------------


def format_design_csv(result: DesignResult, eigenvalues, targets) -> str:
    lam = np.asarray(eigenvalues, dtype=float)
    tgt = np.asarray(targets, dtype=float)
    lines = ["m,h"]
    for m, h in enumerate(result.coefficients):
        lines.append(f"{m},{h:.17g}")
    lines.append("k,lambda,target,realized")
    for k in range(lam.shape[0]):
        lines.append(f"{k},{lam[k]:.17g},{tgt[k]:.17g},{result.realized_gains[k]:.17g}")
    return "\n".join(lines) + "\n"


def parse_design_coeffs(text: str) -> np.ndarray:
    """Read the coefficient section back out of a design-result CSV."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "m,h":
        raise ParseError("line 1: expected header 'm,h'")
    coeffs = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line.strip() == "k,lambda,target,realized":
            break
        parts = line.split(",")
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'm,h', got {line!r}")
        try:
            coeffs.append(float(parts[1]))
        except ValueError:
            raise ParseError(f"line {lineno}: malformed coefficient {line!r}") from None
    if not coeffs:
        raise ParseError("no coefficients found")
    return np.asarray(coeffs, dtype=float)
