"""Measurements on ring states: fidelity, imbalance, centroid, density.

The population imbalance mirrors the experimental readout of a two-window
interferometer: atoms are counted in two half-ring windows, optionally
weighted by a smooth cos^2 acceptance centered on each window, and the
normalized difference is reported.  For the standard protocol the imbalance
equals -cos(imprinted phase) in the ideal limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (CentroidUndefinedError, IndeterminateImbalanceError,
                     InvalidParameterError)
from .states import GridState, SpectralState, to_grid

TWO_PI = 2.0 * np.pi

WEIGHT_KINDS = ("cosine_squared", "uniform")


def fidelity(a, b) -> float:
    """Squared overlap |<a|b>|^2 of two states of the same representation.

    States must be both spectral with equal cutoff or both grid with equal
    size; mixing representations silently hides truncation error, so it is
    refused rather than converted.
    """
    if isinstance(a, SpectralState) and isinstance(b, SpectralState):
        if a.cutoff != b.cutoff:
            raise InvalidParameterError("cutoff mismatch in fidelity")
        overlap = np.vdot(a.amplitudes, b.amplitudes)
    elif isinstance(a, GridState) and isinstance(b, GridState):
        if a.size != b.size:
            raise InvalidParameterError("grid size mismatch in fidelity")
        overlap = np.vdot(a.values, b.values) * TWO_PI / a.size
    else:
        raise InvalidParameterError(
            "fidelity requires two states of the same representation")
    return float(np.abs(overlap) ** 2)


def _as_grid(state, grid_n: int | None) -> GridState:
    if isinstance(state, GridState):
        if grid_n is not None and grid_n != state.size:
            raise InvalidParameterError(
                "grid_n does not match the state's grid")
        return state
    if isinstance(state, SpectralState):
        if grid_n is None:
            grid_n = 1
            while grid_n < 2 * state.cutoff + 2:
                grid_n *= 2
        return to_grid(state, grid_n)
    raise InvalidParameterError("expected a SpectralState or GridState")


def _window_mask(angles: np.ndarray, window) -> np.ndarray:
    """Boolean mask of grid angles inside the open interval `window`.

    The interval (lo, hi) is taken modulo 2 pi going counterclockwise from
    lo to hi; endpoints are excluded so a boundary grid point never counts
    toward both windows of a split pair.
    """
    lo, hi = window
    span = (hi - lo) % TWO_PI
    if span == 0.0:
        raise InvalidParameterError("window has zero angular extent")
    rel = (angles - lo) % TWO_PI
    return (rel > 0.0) & (rel < span)


def _windows_disjoint(first, second) -> bool:
    lo1, hi1 = first
    lo2, hi2 = second
    s1 = (hi1 - lo1) % TWO_PI
    s2 = (hi2 - lo2) % TWO_PI
    rel = (lo2 - lo1) % TWO_PI
    return rel >= s1 and rel + s2 <= TWO_PI


def window_snap_distance(window, grid_n: int) -> float:
    """Largest angular distance (rad) from a window edge to the grid.

    Window edges land between grid points in general; masks effectively snap
    them to the sampled angles.  This reports the worse of the two edge
    offsets so callers can judge (or log) the discretization of a readout
    window on an `grid_n`-point grid.
    """
    if grid_n < 1:
        raise InvalidParameterError("grid_n must be >= 1")
    pitch = TWO_PI / grid_n
    dists = []
    for edge in window:
        rel = edge % pitch
        dists.append(min(rel, pitch - rel))
    return max(dists)


def population_imbalance(state, *, weight: str = "cosine_squared",
                         right_window=( -0.5 * np.pi, 0.5 * np.pi),
                         left_window=(0.5 * np.pi, 1.5 * np.pi),
                         grid_n: int | None = None) -> float:
    """Normalized population difference (N_R - N_L) / (N_R + N_L).

    Windows are open angular intervals (counterclockwise from first to
    second edge) and must not overlap.  `weight` selects the acceptance
    profile inside each window: "uniform" counts density as-is;
    "cosine_squared" weights by cos^2(alpha - window center), vanishing
    smoothly at the edges of a half-ring window so the readout is
    insensitive to how grid points sit on the boundary.  Raises
    IndeterminateImbalanceError when the total weighted population is too
    small to normalize.
    """
    if weight not in WEIGHT_KINDS:
        raise InvalidParameterError(
            "weight must be one of %s" % (WEIGHT_KINDS,))
    if not _windows_disjoint(right_window, left_window):
        raise InvalidParameterError("readout windows overlap")
    grid = _as_grid(state, grid_n)
    density = np.abs(grid.values) ** 2
    angles = grid.angles
    totals = []
    for window in (right_window, left_window):
        mask = _window_mask(angles, window)
        if weight == "cosine_squared":
            lo, hi = window
            center = lo + 0.5 * ((hi - lo) % TWO_PI)
            w = np.cos(angles - center) ** 2
        else:
            w = np.ones_like(angles)
        totals.append(float(np.sum(density[mask] * w[mask])))
    n_right, n_left = totals
    total = n_right + n_left
    if total < 1e-12:
        raise IndeterminateImbalanceError(
            "total weighted population %.3g is too small to normalize"
            % total)
    return (n_right - n_left) / total


def circular_centroid(state) -> float:
    """Density centroid angle arg(<e^{i alpha}>) in [0, 2 pi).

    For a spectral state the expectation is the ladder correlation
    sum_ell conj(c_{ell+1}) c_ell, evaluated without building a grid.
    Raises CentroidUndefinedError when the circular moment is too small to
    carry a direction (e.g. a uniform or antipodally symmetric density).
    """
    if isinstance(state, SpectralState):
        amps = state.amplitudes
        moment = np.sum(np.conj(amps[1:]) * amps[:-1])
    elif isinstance(state, GridState):
        density = np.abs(state.values) ** 2
        moment = np.sum(density * np.exp(1j * state.angles)) * TWO_PI / \
            state.size
    else:
        raise InvalidParameterError("expected a SpectralState or GridState")
    if np.abs(moment) < 1e-6:
        raise CentroidUndefinedError(
            "circular moment %.3g is too small to define a centroid"
            % np.abs(moment))
    return float(np.angle(moment) % TWO_PI)


@dataclass(frozen=True)
class DensityProfile:
    """Angular density n(alpha) with its grid, normalized to integrate to 1."""

    angles: np.ndarray
    density: np.ndarray

    def __post_init__(self) -> None:
        for name in ("angles", "density"):
            arr = np.array(getattr(self, name), dtype=float, copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.angles.shape != self.density.shape:
            raise InvalidParameterError("angles/density shape mismatch")

    @property
    def total(self) -> float:
        return float(np.sum(self.density) * TWO_PI / len(self.density))


def density_profile(state, grid_n: int | None = None) -> DensityProfile:
    """Angular probability density of a state on a uniform grid."""
    grid = _as_grid(state, grid_n)
    return DensityProfile(angles=grid.angles,
                          density=np.abs(grid.values) ** 2)
