"""Dataset ingestion, subsampling, and synthetic data generation.

Univariate datasets use the UCR-style delimited text format: one series
per row, optionally with the class label in the first field. Rows may be
ragged (variable lengths). Multivariate series use one file per series
(rows = time points, columns = dimensions) listed in a manifest file,
one path per line.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DataFormatError
from .series import as_sample, as_time_series


@dataclass
class Dataset:
    name: str
    series: list[np.ndarray]
    labels: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.series = as_sample(self.series)
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if len(self.labels) != len(self.series):
                raise ValueError(
                    f"{len(self.labels)} labels for {len(self.series)} series"
                )

    def __len__(self) -> int:
        return len(self.series)


def _detect_delimiter(line: str) -> str | None:
    if "\t" in line:
        return "\t"
    if "," in line:
        return ","
    return None  # whitespace split


_DELIMITERS = {"tab": "\t", "comma": ",", "auto": "auto"}


def load_delimited(path, delimiter: str = "auto", label_column: str = "none") -> Dataset:
    """Load a UCR-style delimited file: one univariate series per row.

    With label_column="first" the first field of each row is parsed as an
    integer class label. NaN and infinite values are rejected.
    """
    if delimiter not in _DELIMITERS:
        raise ValueError(f"delimiter must be one of {sorted(_DELIMITERS)}")
    if label_column not in ("first", "none"):
        raise ValueError("label_column must be 'first' or 'none'")
    sep = _DELIMITERS[delimiter]
    series: list[np.ndarray] = []
    labels: list[int] = []
    with open(path) as fh:
        for row_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            row_sep = _detect_delimiter(line) if sep == "auto" else sep
            fields = line.split(row_sep) if row_sep else line.split()
            fields = [f for f in fields if f != ""]
            values = []
            for col_no, field in enumerate(fields, start=1):
                try:
                    values.append(float(field))
                except ValueError:
                    raise DataFormatError(
                        f"{path}: non-numeric field at row {row_no}, column {col_no}: "
                        f"{field!r}"
                    ) from None
            if label_column == "first":
                if not values:
                    raise DataFormatError(f"{path}: empty row {row_no}")
                label = values[0]
                if not math.isfinite(label) or label != int(label):
                    raise DataFormatError(
                        f"{path}: non-integer label at row {row_no}: {label!r}"
                    )
                labels.append(int(label))
                values = values[1:]
            if not values:
                raise DataFormatError(f"{path}: row {row_no} has no data values")
            if not all(math.isfinite(v) for v in values):
                raise DataFormatError(f"{path}: NaN or infinite value at row {row_no}")
            series.append(np.array(values).reshape(-1, 1))
    if not series:
        raise DataFormatError(f"{path}: file contains no series")
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return Dataset(
        name=name,
        series=series,
        labels=np.array(labels, dtype=np.int64) if label_column == "first" else None,
    )


def save_delimited(dataset: Dataset, path, delimiter: str = "tab") -> None:
    """Write a univariate dataset in the delimited format (repr round-trips exactly)."""
    sep = {"tab": "\t", "comma": ","}[delimiter]
    with open(path, "w") as fh:
        for k, x in enumerate(dataset.series):
            if x.shape[1] != 1:
                raise ValueError("delimited format is univariate; use a manifest for d > 1")
            fields = [repr(float(v)) for v in x[:, 0]]
            if dataset.labels is not None:
                fields.insert(0, str(int(dataset.labels[k])))
            fh.write(sep.join(fields) + "\n")


def load_series_file(path, delimiter: str = "auto") -> np.ndarray:
    """Load one (possibly multivariate) series: rows = time points, columns = dims."""
    rows: list[list[float]] = []
    with open(path) as fh:
        for row_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            sep = _detect_delimiter(line) if delimiter == "auto" else _DELIMITERS[delimiter]
            fields = [f for f in (line.split(sep) if sep else line.split()) if f != ""]
            try:
                values = [float(f) for f in fields]
            except ValueError:
                raise DataFormatError(f"{path}: non-numeric field at row {row_no}") from None
            if not all(math.isfinite(v) for v in values):
                raise DataFormatError(f"{path}: NaN or infinite value at row {row_no}")
            rows.append(values)
    if not rows:
        raise DataFormatError(f"{path}: file contains no data")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise DataFormatError(f"{path}: ragged rows in a single-series file")
    return as_time_series(np.array(rows))


def save_series_file(x: np.ndarray, path, delimiter: str = "tab") -> None:
    sep = {"tab": "\t", "comma": ","}[delimiter]
    x = as_time_series(x)
    with open(path, "w") as fh:
        for row in x:
            fh.write(sep.join(repr(float(v)) for v in row) + "\n")


def load_manifest(path) -> Dataset:
    """Load a multivariate dataset from a manifest listing one series file per line."""
    base = os.path.dirname(os.path.abspath(str(path)))
    series = []
    with open(path) as fh:
        for line in fh:
            entry = line.strip()
            if not entry:
                continue
            full = entry if os.path.isabs(entry) else os.path.join(base, entry)
            series.append(load_series_file(full))
    if not series:
        raise DataFormatError(f"{path}: manifest lists no series")
    name = os.path.splitext(os.path.basename(str(path)))[0]
    return Dataset(name=name, series=series)


def merge(name: str, *datasets: Dataset) -> Dataset:
    """Concatenate datasets (e.g. a train and test split) into one sample."""
    series = [x for ds in datasets for x in ds.series]
    labels = None
    if all(ds.labels is not None for ds in datasets):
        labels = np.concatenate([ds.labels for ds in datasets])
    return Dataset(name=name, series=series, labels=labels)


def subsample(dataset: Dataset, size: int, rng: np.random.Generator) -> Dataset:
    """Uniform subsample without replacement; deterministic under the given rng."""
    if size < 1:
        raise ValueError("size must be >= 1")
    if size > len(dataset):
        raise ValueError(f"size {size} exceeds sample size {len(dataset)}")
    idx = rng.choice(len(dataset), size=size, replace=False)
    series = [dataset.series[int(i)] for i in idx]
    labels = dataset.labels[idx] if dataset.labels is not None else None
    return Dataset(name=f"{dataset.name}-sub{size}", series=series, labels=labels)


def znormalize(dataset: Dataset) -> Dataset:
    """Per-series z-normalization (opt-in; constant series are left centered)."""
    out = []
    for x in dataset.series:
        mu = x.mean(axis=0)
        sd = x.std(axis=0)
        sd = np.where(sd > 0, sd, 1.0)
        out.append((x - mu) / sd)
    return Dataset(name=dataset.name, series=out, labels=dataset.labels)


def synth_sines(
    count: int,
    length: int,
    noise_sigma: float,
    rng: np.random.Generator,
    cycles: float = 2.0,
    phase_sigma: float = 0.0,
    warp_amplitude: float = 4.0,
    square_mix: float = 0.5,
) -> Dataset:
    """Noisy, time-warped waves (desk-scale benchmark stand-in).

    Each series is a sinusoid or, with probability square_mix, a square
    wave of the same frequency, resampled along a random smooth warping
    of the time axis. The shape mixture makes the sample multimodal so
    that mean solvers face distinct basins of attraction. With
    noise_sigma = 0, phase_sigma = 0, warp_amplitude = 0, and
    square_mix = 0 all series are identical.
    """
    if count < 1 or length < 1:
        raise ValueError("count and length must be >= 1")
    if noise_sigma < 0:
        raise ValueError("noise_sigma must be nonnegative")
    if not 0.0 <= square_mix <= 1.0:
        raise ValueError("square_mix must lie in [0, 1]")
    t = np.arange(length, dtype=np.float64)
    series = []
    for _ in range(count):
        phase = rng.normal(0.0, phase_sigma) if phase_sigma > 0 else 0.0
        x = np.sin(2.0 * np.pi * cycles * t / length + phase)
        if square_mix > 0 and rng.random() < square_mix:
            x = np.sign(x)
        if warp_amplitude > 0:
            amp = rng.uniform(0.0, warp_amplitude)
            shift = rng.uniform(0.0, 2.0 * np.pi)
            warped = np.clip(
                t + amp * np.sin(2.0 * np.pi * t / length + shift), 0.0, length - 1.0
            )
            x = np.interp(warped, t, x)
        if noise_sigma > 0:
            x = x + rng.normal(0.0, noise_sigma, size=length)
        series.append(x.reshape(-1, 1))
    return Dataset(name=f"sines-{count}x{length}", series=series)
