"""Spectral bipartitioning from the Laplacian eigenstructure.

The sign pattern of the second eigenvector splits the vertices in two.
Entries within 1e-10 of zero go to class 1, which keeps the labeling
deterministic when the eigenvector has exact zeros.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedError, TooSmallError
from .spectral import SpectralDecomposition

_FIEDLER_ZERO = 1e-9
_ENTRY_ZERO = 1e-10


@dataclass(frozen=True)
class Partition:
    """Two-way vertex labeling and the algebraic connectivity behind it."""

    labels: np.ndarray
    fiedler_value: float

    def __post_init__(self):
        self.labels.setflags(write=False)


def fiedler_bipartition(d: SpectralDecomposition) -> Partition:
    """Split vertices by the sign of the second-smallest eigenvector.

    Requires a Laplacian decomposition of a connected graph with at least
    two vertices; raises TooSmallError or DisconnectedError otherwise.
    """
    if d.n < 2:
        raise TooSmallError(f"bipartition needs at least 2 vertices, got {d.n}")
    fiedler_value = float(d.eigenvalues[1])
    if fiedler_value <= _FIEDLER_ZERO:
        raise DisconnectedError(
            f"second eigenvalue {fiedler_value:.3e} is numerically zero; "
            "the graph is disconnected and the splitting vector is ambiguous"
        )
    u1 = d.eigenvectors[:, 1]
    labels = np.where((u1 >= 0.0) | (np.abs(u1) <= _ENTRY_ZERO), 1, 0)
    return Partition(labels=labels.astype(int), fiedler_value=fiedler_value)


def format_partition_csv(p: Partition) -> str:
    lines = ["vertex,label"]
    for i, label in enumerate(p.labels):
        lines.append(f"{i},{int(label)}")
    return "\n".join(lines) + "\n"
