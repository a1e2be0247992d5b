"""Benchmark data sources: labeled shape grids and the Mackey-Glass series.

The shape grid is a small 2-D classification problem: geometric primitives
painted onto a background, each cell owning exactly one label (later shapes
override earlier ones). Cells are encoded for the networks by concatenating
the thermometer codes of their x and y coordinates, which makes the Hamming
distance between two cells their Manhattan distance in levels.

The Mackey-Glass generator iterates the discrete delay map

    x(t+1) = (1 - gamma) * x(t) + beta * x(t-delay) / (1 + x(t-delay)**exponent)

with a constant pre-history, discards a burn-in prefix, then keeps every
``stride``-th point.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .cc4 import TrainingSample
from .encoding import UnaryCoder, encode_class


@dataclass(frozen=True)
class Disk:
    cx: int
    cy: int
    radius: int
    label: int = 1


@dataclass(frozen=True)
class Rect:
    x0: int
    y0: int
    x1: int
    y1: int
    label: int = 1


Shape = Union[Disk, Rect]


@dataclass(frozen=True)
class ShapeScene:
    width: int = 32
    height: int = 32
    shapes: tuple[Shape, ...] = ()
    background_label: int = 0


def default_scene() -> ShapeScene:
    """Desk-scale two-shape scene: one disk and one square of class 1 on a
    class-0 background, 32x32 cells."""
    return ShapeScene(32, 32, (Disk(9, 9, 6, 1), Rect(18, 18, 27, 27, 1)))


def eight_class_scene() -> ShapeScene:
    """32x32 scene with seven labeled blocks plus background: 8 classes,
    exactly what 3 output bits can separate."""
    blocks = tuple(
        Rect(16 * (i % 2), 8 * (i // 2), 16 * (i % 2) + 15, 8 * (i // 2) + 7, i)
        for i in range(1, 8)
    )
    return ShapeScene(32, 32, blocks)


def render_scene(scene: ShapeScene) -> np.ndarray:
    """Rasterize to a (height, width) int label grid.

    Disk membership is (x-cx)^2 + (y-cy)^2 <= radius^2; rect bounds are
    inclusive. Shapes must lie inside the grid.
    """
    grid = np.full((scene.height, scene.width), scene.background_label, dtype=np.int64)
    xs = np.arange(scene.width)[None, :]
    ys = np.arange(scene.height)[:, None]
    for shape in scene.shapes:
        if isinstance(shape, Disk):
            if not (
                0 <= shape.cx - shape.radius
                and shape.cx + shape.radius < scene.width
                and 0 <= shape.cy - shape.radius
                and shape.cy + shape.radius < scene.height
            ):
                raise ValueError(f"disk out of bounds: {shape}")
            mask = (xs - shape.cx) ** 2 + (ys - shape.cy) ** 2 <= shape.radius**2
        elif isinstance(shape, Rect):
            if not (
                0 <= shape.x0 <= shape.x1 < scene.width
                and 0 <= shape.y0 <= shape.y1 < scene.height
            ):
                raise ValueError(f"rect out of bounds: {shape}")
            mask = (xs >= shape.x0) & (xs <= shape.x1) & (ys >= shape.y0) & (ys <= shape.y1)
        else:
            raise TypeError(f"unknown shape primitive: {shape!r}")
        grid[mask] = shape.label
    return grid


def grid_coders(width: int, height: int) -> tuple[UnaryCoder, UnaryCoder]:
    """Coordinate coders with one level per cell, so distinct coordinates
    get distinct codes and adjacent cells differ in exactly one bit."""
    return UnaryCoder(width, 0.0, float(width)), UnaryCoder(height, 0.0, float(height))


def cell_inputs(
    width: int, height: int, coder_x: UnaryCoder, coder_y: UnaryCoder
) -> np.ndarray:
    """Row-major (height*width, Lx+Ly) input matrix: unary(x) ++ unary(y)
    for each cell."""
    if coder_x.levels < width or coder_y.levels < height:
        raise ValueError("coder levels must be at least the grid dimension")
    x_codes = coder_x.encode_many(np.arange(width, dtype=np.float64))
    y_codes = coder_y.encode_many(np.arange(height, dtype=np.float64))
    left = np.tile(x_codes, (height, 1))
    right = np.repeat(y_codes, width, axis=0)
    return np.concatenate([left, right], axis=1)


def scene_to_samples(
    grid: np.ndarray,
    coder_x: UnaryCoder,
    coder_y: UnaryCoder,
    k: int,
) -> list[TrainingSample]:
    """One sample per cell, row-major: input = unary(x) ++ unary(y),
    output = k-bit class code of the cell label."""
    grid = np.asarray(grid)
    height, width = grid.shape
    labels = np.unique(grid)
    if len(labels) > (1 << k):
        raise ValueError(
            f"{len(labels)} distinct labels exceed the 2^{k} = {1 << k} class capacity"
        )
    inputs = cell_inputs(width, height, coder_x, coder_y)
    flat = grid.ravel()
    return [
        TrainingSample(inputs[i], encode_class(int(flat[i]), k))
        for i in range(flat.size)
    ]


@dataclass(frozen=True)
class SeriesConfig:
    """Mackey-Glass map constants plus sampling policy.

    Defaults are the popular chaotic setting (beta=0.2, gamma=0.1,
    exponent=10, delay=30) with a 3000-point burn-in and every-6th-point
    subsampling.
    """

    beta: float = 0.2
    gamma: float = 0.1
    exponent: float = 10.0
    delay: int = 30
    x0: float = 0.9
    burn_in: int = 3000
    stride: int = 6
    n_samples: int = 1000

    def __post_init__(self):
        if self.delay < 1:
            raise ValueError(f"delay must be >= 1, got {self.delay}")
        if self.burn_in < 0:
            raise ValueError(f"burn_in must be >= 0, got {self.burn_in}")
        if self.stride < 1:
            raise ValueError(f"stride must be >= 1, got {self.stride}")
        if self.n_samples < 1:
            raise ValueError(f"n_samples must be >= 1, got {self.n_samples}")


def iterate_mg(config: SeriesConfig) -> Iterator[float]:
    """Raw delay-map values x(1), x(2), ... with x(t) = x0 for all t <= 0."""
    window = deque([config.x0] * (config.delay + 1), maxlen=config.delay + 1)
    while True:
        x_t = window[-1]
        x_lag = window[0]
        nxt = (1.0 - config.gamma) * x_t + config.beta * x_lag / (
            1.0 + x_lag**config.exponent
        )
        if not math.isfinite(nxt):
            raise ArithmeticError(
                f"series diverged to {nxt!r}; check the map constants"
            )
        window.append(nxt)
        yield nxt


def generate_mg(config: SeriesConfig) -> np.ndarray:
    """Burned-in, subsampled Mackey-Glass series of length ``n_samples``.

    Drops the first ``burn_in`` raw points, then keeps raw points
    burn_in, burn_in + stride, burn_in + 2*stride, ...
    """
    stream = iterate_mg(config)
    for _ in range(config.burn_in):
        next(stream)
    out = np.empty(config.n_samples, dtype=np.float64)
    out[0] = next(stream)
    for i in range(1, config.n_samples):
        for _ in range(config.stride - 1):
            next(stream)
        out[i] = next(stream)
    return out


def make_windows(series, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Sliding one-step-ahead supervision pairs.

    Returns (X, y) with X[t] = series[t : t+k] and y[t] = series[t+k];
    consecutive rows of X overlap in k-1 values, and there are
    len(series) - k of them.
    """
    arr = np.asarray(series, dtype=np.float64)
    if k < 1:
        raise ValueError(f"window size must be >= 1, got {k}")
    if arr.size <= k:
        raise ValueError(f"series of length {arr.size} too short for window size {k}")
    n = arr.size - k
    idx = np.arange(k)[None, :] + np.arange(n)[:, None]
    return arr[idx], arr[k:]


def normalize_minmax(series) -> tuple[np.ndarray, float, float]:
    """Affine map of the series onto [0, 1]; returns (scaled, lo, hi)."""
    arr = np.asarray(series, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("cannot normalize an empty series")
    lo, hi = float(arr.min()), float(arr.max())
    if hi <= lo:
        raise ValueError(f"degenerate range: all values equal {lo}")
    return (arr - lo) / (hi - lo), lo, hi


def denormalize(values, lo: float, hi: float) -> np.ndarray:
    """Inverse of ``normalize_minmax`` for the given parameters."""
    return np.asarray(values, dtype=np.float64) * (hi - lo) + lo


def write_series_csv(series, path) -> None:
    """One value per row, no header."""
    with open(path, "w", newline="\n") as fh:
        for v in np.asarray(series, dtype=np.float64):
            fh.write(f"{float(v)!r}\n")


def write_grid_csv(grid, path) -> None:
    """Row-major cells with header x,y,label."""
    arr = np.asarray(grid)
    with open(path, "w", newline="\n") as fh:
        fh.write("x,y,label\n")
        for y in range(arr.shape[0]):
            for x in range(arr.shape[1]):
                fh.write(f"{x},{y},{int(arr[y, x])}\n")


def scene_to_dict(scene: ShapeScene) -> dict:
    """JSON-ready description of a scene (inverse of ``scene_from_dict``)."""
    shapes = []
    for s in scene.shapes:
        if isinstance(s, Disk):
            shapes.append(
                {"kind": "disk", "cx": s.cx, "cy": s.cy, "radius": s.radius, "label": s.label}
            )
        else:
            shapes.append(
                {"kind": "rect", "x0": s.x0, "y0": s.y0, "x1": s.x1, "y1": s.y1, "label": s.label}
            )
    return {
        "width": scene.width,
        "height": scene.height,
        "background_label": scene.background_label,
        "shapes": shapes,
    }


def scene_from_dict(data: dict) -> ShapeScene:
    """Build a scene from its JSON description."""
    shapes: list[Shape] = []
    for entry in data.get("shapes", []):
        kind = entry.get("kind")
        if kind == "disk":
            shapes.append(
                Disk(entry["cx"], entry["cy"], entry["radius"], entry.get("label", 1))
            )
        elif kind == "rect":
            shapes.append(
                Rect(entry["x0"], entry["y0"], entry["x1"], entry["y1"], entry.get("label", 1))
            )
        else:
            raise ValueError(f"unknown shape kind: {kind!r}")
    return ShapeScene(
        width=data.get("width", 32),
        height=data.get("height", 32),
        shapes=tuple(shapes),
        background_label=data.get("background_label", 0),
    )
