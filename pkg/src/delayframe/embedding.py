"""Hankel (time-delay) embedding of uniformly sampled scalar series."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import DataError, ParameterError

__all__ = [
    "TimeSeries",
    "HankelEmbedding",
    "build_hankel",
    "center_hankel",
    "split_shift",
]


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled scalar series: sample k sits at ``t0 + k * dt``."""

    t0: float
    dt: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ParameterError(f"values must be 1-d, got ndim={v.ndim}")
        if v.shape[0] < 2:
            raise ParameterError(f"need at least 2 samples, got {v.shape[0]}")
        if not np.all(np.isfinite(v)):
            raise DataError("values contain non-finite entries")
        if not (np.isfinite(self.dt) and self.dt > 0.0):
            raise ParameterError(f"dt must be positive and finite, got {self.dt}")
        if not np.isfinite(self.t0):
            raise ParameterError(f"t0 must be finite, got {self.t0}")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.shape[0]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))


@dataclass(frozen=True)
class HankelEmbedding:
    """Delay matrix with entry (i, j) = x[i + j].

    Rows walk the delay axis (length ``delays``), columns the time axis.
    Column j covers the window starting at ``t0 + j * dt``. When
    ``centered`` is true the central row has been subtracted and is kept
    in ``center_row``; an embedding is centered exactly once.
    """

    matrix: np.ndarray = field(repr=False)
    delays: int
    dt: float
    t0: float
    centered: bool = False
    center_row: np.ndarray | None = field(default=None, repr=False)

    @property
    def columns(self) -> int:
        return self.matrix.shape[1]


def build_hankel(x: TimeSeries, delays: int) -> HankelEmbedding:
    """Stack ``delays`` shifted copies of a series into a Hankel matrix.

    A series of length N yields a ``delays x (N - delays + 1)`` matrix, so
    every sample is used and each anti-diagonal is constant.
    """
    if not isinstance(x, TimeSeries):
        raise ParameterError(f"expected a TimeSeries, got {type(x).__name__}")
    if not isinstance(delays, (int, np.integer)) or isinstance(delays, bool):
        raise ParameterError(f"delays must be an integer, got {delays!r}")
    n_samples = len(x)
    if not 2 <= delays <= n_samples:
        raise ParameterError(
            f"delays must be in [2, {n_samples}] for this series, got {delays}"
        )
    width = n_samples - delays + 1
    matrix = sliding_window_view(x.values, width).astype(float, copy=True)
    return HankelEmbedding(
        matrix=matrix, delays=int(delays), dt=x.dt, t0=x.t0, centered=False
    )


def center_hankel(embedding: HankelEmbedding) -> HankelEmbedding:
    """Subtract the central row, keeping it for later geometry.

    Requires an odd number of delays so "central" is unambiguous; with an
    even count, drop one sample from the series and rebuild.
    """
    if not isinstance(embedding, HankelEmbedding):
        raise ParameterError(
            f"expected a HankelEmbedding, got {type(embedding).__name__}"
        )
    if embedding.centered:
        raise ParameterError("embedding is already centered")
    if embedding.delays % 2 == 0:
        raise ParameterError(
            f"centering needs an odd delay count, got {embedding.delays}; "
            "drop one sample from the series and rebuild"
        )
    mid = (embedding.delays - 1) // 2
    center = embedding.matrix[mid].copy()
    return HankelEmbedding(
        matrix=embedding.matrix - center,
        delays=embedding.delays,
        dt=embedding.dt,
        t0=embedding.t0,
        centered=True,
        center_row=center,
    )


def split_shift(embedding: HankelEmbedding):
    """Split into the (all-but-last, all-but-first) column submatrices.

    The two halves cover the same window shifted by one sample; the second
    half's time origin advances by ``dt``. Centering metadata is inherited,
    with the stored center row trimmed to match.
    """
    if not isinstance(embedding, HankelEmbedding):
        raise ParameterError(
            f"expected a HankelEmbedding, got {type(embedding).__name__}"
        )
    if embedding.columns < 3:
        raise ParameterError(
            f"need at least 3 columns to split, got {embedding.columns}"
        )
    center = embedding.center_row
    first = HankelEmbedding(
        matrix=embedding.matrix[:, :-1].copy(),
        delays=embedding.delays,
        dt=embedding.dt,
        t0=embedding.t0,
        centered=embedding.centered,
        center_row=None if center is None else center[:-1].copy(),
    )
    second = HankelEmbedding(
        matrix=embedding.matrix[:, 1:].copy(),
        delays=embedding.delays,
        dt=embedding.dt,
        t0=embedding.t0 + embedding.dt,
        centered=embedding.centered,
        center_row=None if center is None else center[1:].copy(),
    )
    return first, second
