"""Deterministic synthetic data sources: an oscillating ball filmed by three
2-D cameras, a correlated measurement pair, and the two classic cases where a
variance-maximizing orthogonal basis misses the real structure (a point moving
on a circle, and clusters along non-perpendicular axes).

All randomness flows through the SplitMix64 stream in pcakit.rng, so identical
configs produce bit-identical datasets on every platform. Generators that
would draw zero-scale noise skip the draw entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .matrix import Matrix
from .pca import Dataset
from .rng import SplitMix64

AXIS_UNIT_TOL = 1e-12

SPRING_NAMES = ("x_A", "y_A", "x_B", "y_B", "x_C", "y_C")

# Camera orientations (azimuth, elevation) in degrees. Deliberately not
# multiples of 90 so no camera plane is aligned with the motion or with
# another camera.
_CAMERA_ANGLES = ((15.0, 10.0), (100.0, -20.0), (230.0, 35.0))


def _camera_plane(azimuth_deg: float, elevation_deg: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    az = math.radians(azimuth_deg)
    el = math.radians(elevation_deg)
    view = np.array([math.cos(el) * math.cos(az), math.cos(el) * math.sin(az), math.sin(el)])
    up = np.array([0.0, 0.0, 1.0])
    horiz = np.cross(up, view)
    horiz = horiz / np.linalg.norm(horiz)
    vert = np.cross(view, horiz)
    vert = vert / np.linalg.norm(vert)
    return tuple(float(x) for x in horiz), tuple(float(x) for x in vert)


def default_camera_axes() -> tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]:
    """Image-plane bases (horizontal, vertical unit 3-vectors) of the three cameras."""
    return tuple(_camera_plane(az, el) for az, el in _CAMERA_ANGLES)


def default_motion_axis() -> tuple[float, ...]:
    """The hidden oscillation direction; tilted away from every coordinate axis."""
    axis = np.array([1.0, 0.5, 0.25])
    axis = axis / np.linalg.norm(axis)
    return tuple(float(x) for x in axis)


@dataclass
class SpringConfig:
    """Ball on an ideal spring, sampled by three fixed 2-D cameras.

    The ball position is the closed-form cosine solution
    amplitude * cos(2*pi*frequency*t) along motion_axis; each camera records
    the dot products of the position with its two image-plane axes, plus
    independent Gaussian noise of std noise_sigma per coordinate.
    """

    seed: int
    amplitude: float = 1.0
    frequency: float = 0.25
    sample_rate: float = 120.0
    duration: float = 600.0
    camera_axes: tuple = field(default_factory=default_camera_axes)
    motion_axis: tuple = field(default_factory=default_motion_axis)
    noise_sigma: float = 0.0

    def __post_init__(self) -> None:
        if self.amplitude < 0 or self.frequency < 0 or self.noise_sigma < 0:
            raise ValueError("amplitude, frequency, and noise_sigma must be nonnegative")
        axis = np.asarray(self.motion_axis, dtype=float)
        if axis.shape != (3,) or abs(np.linalg.norm(axis) - 1.0) > AXIS_UNIT_TOL:
            raise ValueError("motion_axis must be a unit 3-vector")
        if len(self.camera_axes) != 3:
            raise ValueError("exactly three cameras are required")
        for i, (h, v) in enumerate(self.camera_axes):
            pair = np.array([h, v], dtype=float)
            if pair.shape != (2, 3):
                raise ValueError(f"camera {i} axes must be two 3-vectors")
            dev = np.max(np.abs(pair @ pair.T - np.eye(2)))
            if dev > AXIS_UNIT_TOL:
                raise ValueError(
                    f"camera {i} image-plane axes are not orthonormal (deviation {dev:.3e})"
                )
        exact_n = self.sample_rate * self.duration
        n = round(exact_n)
        if abs(exact_n - n) > 1e-9 or n < 2:
            raise ValueError(
                f"sample_rate * duration must be an integer >= 2, got {exact_n}"
            )
        self.n = int(n)

    def projection_of_motion(self) -> np.ndarray:
        """The 6-vector of camera-coordinate responses to a unit step along motion_axis."""
        axis = np.asarray(self.motion_axis, dtype=float)
        rows = []
        for h, v in self.camera_axes:
            rows.append(float(np.asarray(h) @ axis))
            rows.append(float(np.asarray(v) @ axis))
        return np.array(rows)


@dataclass
class FailureConfig:
    """Scenarios where the dominant-variance directions miss the structure.

    kind "ferris_wheel": points (radius*cos(theta), radius*sin(theta)) with
    theta uniform on [0, 2*pi). kind "non_orthogonal": a mixture of 1-D
    Gaussian clusters along two non-perpendicular unit axes, mixed by
    weights. Both add isotropic Gaussian noise of std noise_sigma.
    """

    kind: str
    n: int
    seed: int
    noise_sigma: float = 0.0
    radius: float = 1.0
    axes: tuple = ((1.0, 0.0), (math.sqrt(0.5), math.sqrt(0.5)))
    weights: tuple = (0.5, 0.5)

    def __post_init__(self) -> None:
        if self.kind not in ("ferris_wheel", "non_orthogonal"):
            raise ValueError(f"unknown failure kind {self.kind!r}")
        if self.n < 3:
            raise ValueError("need at least 3 samples")
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be nonnegative")
        axes = np.asarray(self.axes, dtype=float)
        if axes.shape != (2, 2):
            raise ValueError("axes must be two 2-vectors")
        if np.max(np.abs(np.linalg.norm(axes, axis=1) - 1.0)) > AXIS_UNIT_TOL:
            raise ValueError("cluster axes must be unit vectors")
        weights = np.asarray(self.weights, dtype=float)
        if weights.shape != (2,) or np.any(weights <= 0) or abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must be two positive numbers summing to 1")


def generate_spring(cfg: SpringConfig) -> Dataset:
    """6 x n dataset of (x_A, y_A, x_B, y_B, x_C, y_C) camera tracks."""
    t = np.arange(cfg.n) / cfg.sample_rate
    displacement = cfg.amplitude * np.cos(2.0 * np.pi * cfg.frequency * t)
    data = np.outer(cfg.projection_of_motion(), displacement)
    if cfg.noise_sigma > 0:
        rng = SplitMix64(cfg.seed)
        data = data + cfg.noise_sigma * rng.normals(6 * cfg.n).reshape(6, cfg.n)
    return Dataset(Matrix(data), SPRING_NAMES)


def generate_correlated_pair(rho: float, n: int, seed: int) -> Dataset:
    """2 x n dataset whose empirical correlation converges to rho."""
    if not -1.0 <= rho <= 1.0:
        raise ValueError(f"rho must lie in [-1, 1], got {rho}")
    if n < 3:
        raise ValueError("need at least 3 samples")
    rng = SplitMix64(seed)
    draws = rng.normals(2 * n)
    g1 = draws[:n]
    g2 = draws[n:]
    r2 = rho * g1 + math.sqrt(max(0.0, 1.0 - rho * rho)) * g2
    return Dataset(Matrix(np.vstack([g1, r2])), ("r1", "r2"))


def generate_failure(cfg: FailureConfig) -> Dataset:
    rng = SplitMix64(cfg.seed)
    if cfg.kind == "ferris_wheel":
        theta = 2.0 * np.pi * rng.uniforms(cfg.n)
        data = np.vstack([cfg.radius * np.cos(theta), cfg.radius * np.sin(theta)])
    else:
        selectors = rng.uniforms(cfg.n) < cfg.weights[0]
        coords = rng.normals(cfg.n)
        axes = np.asarray(cfg.axes, dtype=float)
        chosen = np.where(selectors[:, None], axes[0], axes[1])
        data = (chosen * coords[:, None]).T
    if cfg.noise_sigma > 0:
        data = data + cfg.noise_sigma * rng.normals(2 * cfg.n).reshape(2, cfg.n)
    return Dataset(Matrix(data), ("x", "y"))


def snr(signal_variance: float, noise_variance: float) -> float:
    """Signal-to-noise ratio as a plain ratio of variances."""
    if signal_variance < 0:
        raise ValueError("signal variance must be nonnegative")
    if noise_variance <= 0:
        raise ValueError("noise variance must be positive for a finite SNR")
    return signal_variance / noise_variance


def spring_signal_variance(cfg: SpringConfig) -> float:
    """Variance of the noiseless 6-D track along its own line: A^2 ||w||^2 / 2."""
    w = cfg.projection_of_motion()
    return 0.5 * cfg.amplitude**2 * float(w @ w)


def noise_sigma_for_snr(cfg: SpringConfig, target_snr: float) -> float:
    """Per-coordinate noise std that puts the given SNR on the dominant direction."""
    if target_snr <= 0:
        raise ValueError("target SNR must be positive")
    return math.sqrt(spring_signal_variance(cfg) / target_snr)
