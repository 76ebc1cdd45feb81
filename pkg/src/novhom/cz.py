"""Conley-Zehnder indices of sampled nondegenerate symplectic paths.

Convention.  Coordinates are ordered (x_1..x_n, y_1..y_n) with standard
symplectic matrix J0 = [[0, -I], [I, 0]], so a path generated by a
symmetric S(t) solves dPsi/dt = J0 S(t) Psi.  The normalization is fixed
by the planar rotation family exp(J0 * 2 pi alpha t), whose index is 1
for alpha in (0, 1); precomposing with a unitary loop of winding k shifts
the index by 2k, and the index of a block sum is the sum of the block
indices.

Two computations are implemented.  For one plane the index comes from the
winding of the polar-decomposition rotation part together with the parity
forced by the endpoint: sign det(I - Psi(1)) > 0 gives an odd index,
< 0 an even one, and the index is the unique integer of that parity
within distance one of twice the winding.  In any dimension the index is
the half signature of S(0) on the full space plus the signatures of S(t)
restricted to ker(I - Psi(t)) over the interior zeros of det(I - Psi(t)).
The crossing route serves as the oracle for the planar one and is the
only route for n > 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

DEFAULT_MIN_SAMPLES = 512


class PathError(ValueError):
    """The sampled path violates a structural requirement."""


class DegenerateEndpoint(PathError):
    """det(I - Psi(1)) is below the nondegeneracy threshold."""


class CrossingIsolationError(PathError):
    """Too few samples to certify that the detected crossings are isolated."""


def standard_symplectic_matrix(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


@dataclass
class SymplecticPath:
    """Uniform samples of a symplectic path on [0, 1] starting at the identity."""

    samples: np.ndarray
    start_tolerance: float = 1e-9
    symplectic_tolerance: float = 1e-6
    endpoint_threshold: float = 1e-8
    min_samples: int = DEFAULT_MIN_SAMPLES

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)
        if self.samples.ndim != 3 or self.samples.shape[1] != self.samples.shape[2]:
            raise PathError("samples must form a (count, 2n, 2n) array")
        if self.samples.shape[1] % 2:
            raise PathError("matrices must have even dimension")

    @property
    def dimension(self) -> int:
        return self.samples.shape[1]

    @property
    def half_dimension(self) -> int:
        return self.dimension // 2

    def validate(self):
        count = self.samples.shape[0]
        if count < self.min_samples:
            raise PathError(
                f"{count} samples, need at least {self.min_samples}"
            )
        dim = self.dimension
        if not np.allclose(
            self.samples[0], np.eye(dim), atol=self.start_tolerance, rtol=0
        ):
            raise PathError("path does not start at the identity")
        J = standard_symplectic_matrix(self.half_dimension)
        defect = self.samples.transpose(0, 2, 1) @ J @ self.samples - J
        worst = float(np.abs(defect).max())
        if worst > self.symplectic_tolerance:
            raise PathError(f"samples fail the symplectic identity by {worst:.3e}")
        margin = abs(float(np.linalg.det(np.eye(dim) - self.samples[-1])))
        if margin <= self.endpoint_threshold:
            raise DegenerateEndpoint(
                f"|det(I - Psi(1))| = {margin:.3e} is below "
                f"{self.endpoint_threshold:.3e}"
            )
        return self


def _path_derivatives(samples: np.ndarray) -> np.ndarray:
    """Second-order time derivatives of the sample sequence."""
    count = samples.shape[0]
    h = 1.0 / (count - 1)
    dot = np.empty_like(samples)
    dot[1:-1] = (samples[2:] - samples[:-2]) / (2 * h)
    dot[0] = (-3 * samples[0] + 4 * samples[1] - samples[2]) / (2 * h)
    dot[-1] = (3 * samples[-1] - 4 * samples[-2] + samples[-3]) / (2 * h)
    return dot


def _generator_at(path: SymplecticPath, derivatives, index) -> np.ndarray:
    J = standard_symplectic_matrix(path.half_dimension)
    S = -J @ derivatives[index] @ np.linalg.inv(path.samples[index])
    return 0.5 * (S + S.T)


def _signature(eigenvalues, tolerance, what):
    small = np.abs(eigenvalues) <= tolerance
    if small.any():
        raise PathError(
            f"{what} has an eigenvalue of magnitude "
            f"{np.abs(eigenvalues).min():.3e}, indistinguishable from zero"
        )
    return int((eigenvalues > 0).sum() - (eigenvalues < 0).sum())


def crossing_index(path: SymplecticPath, min_gap: int = 4) -> int:
    """Index from sign-counted zeros of det(I - Psi(t)).

    The initial sample contributes half the signature of S(0); every
    interior zero contributes the signature of S(t) restricted to the
    kernel of I - Psi(t).  Zeros are located from sign changes and from
    near-zero local minima of |det| (even-order touching); candidates
    closer together than min_gap samples raise rather than guess.
    """
    path.validate()
    samples = path.samples
    count = samples.shape[0]
    h = 1.0 / (count - 1)
    dim = path.dimension
    eye = np.eye(dim)
    derivatives = _path_derivatives(samples)

    S0 = _generator_at(path, derivatives, 0)
    eig0 = np.linalg.eigvalsh(S0)
    scale0 = 1.0 + float(np.abs(eig0).max())
    sig0 = _signature(eig0, 1e-6 * scale0, "initial crossing form S(0)")
    if sig0 % 2:
        raise PathError("initial signature must be even on an even-dimensional space")
    total = sig0 // 2

    dets = np.linalg.det(eye[None, :, :] - samples)
    magnitude = float(np.abs(dets).max())
    touch_tol = 1e-4 * max(magnitude, 1e-12)

    candidates = set()
    for i in range(1, count - 1):
        if dets[i] == 0.0:
            candidates.add(i)
        elif dets[i] * dets[i + 1] < 0:
            candidates.add(i if abs(dets[i]) <= abs(dets[i + 1]) else i + 1)
        elif (
            abs(dets[i]) < touch_tol
            and abs(dets[i]) <= abs(dets[i - 1])
            and abs(dets[i]) <= abs(dets[i + 1])
        ):
            candidates.add(i)

    ordered = sorted(candidates)
    if ordered and ordered[0] < min_gap:
        raise CrossingIsolationError(
            "crossing candidate too close to the initial crossing at t = 0"
        )
    for a, b in zip(ordered, ordered[1:]):
        if b - a < min_gap:
            raise CrossingIsolationError(
                f"crossing candidates at samples {a} and {b} are closer than "
                f"{min_gap} intervals; refine the sampling"
            )
    if ordered and ordered[-1] > count - 1 - min_gap:
        raise CrossingIsolationError(
            "crossing candidate too close to the nondegenerate endpoint"
        )

    for i in ordered:
        gap_matrix = eye - samples[i]
        sv = np.linalg.svd(gap_matrix, compute_uv=False)
        speed = float(np.linalg.norm(derivatives[i], 2))
        kernel_tol = 2.0 * h * (speed + 1.0)
        kdim = int((sv < kernel_tol).sum())
        if kdim == 0:
            continue
        smallest_regular = sv[dim - kdim - 1] if kdim < dim else np.inf
        if smallest_regular < 4.0 * kernel_tol:
            raise CrossingIsolationError(
                f"cannot separate a {kdim}-dimensional kernel at sample {i}; "
                "refine the sampling"
            )
        _, _, vt = np.linalg.svd(gap_matrix)
        basis = vt[dim - kdim :].T
        S = _generator_at(path, derivatives, i)
        form = basis.T @ S @ basis
        eig = np.linalg.eigvalsh(0.5 * (form + form.T))
        scale = 1.0 + float(np.abs(S).max())
        total += _signature(eig, 1e-4 * scale, f"crossing form at sample {i}")
    return int(total)


def _polar_winding(path: SymplecticPath) -> float:
    samples = path.samples
    u, _, vt = np.linalg.svd(samples)
    rotations = u @ vt
    angles = np.arctan2(rotations[:, 1, 0], rotations[:, 0, 0])
    steps = np.diff(angles)
    steps = (steps + np.pi) % (2 * np.pi) - np.pi
    if np.abs(steps).max() > np.pi / 2:
        raise CrossingIsolationError(
            "rotation part advances more than pi/2 per sample; refine the sampling"
        )
    return float(steps.sum() / (2 * np.pi))


def winding_index_2d(path: SymplecticPath) -> int:
    """Planar index from the polar rotation number and the endpoint parity."""
    path.validate()
    if path.dimension != 2:
        raise PathError("the winding route applies to one symplectic plane only")
    delta = _polar_winding(path)
    endpoint_det = float(np.linalg.det(np.eye(2) - path.samples[-1]))
    parity = 1 if endpoint_det > 0 else 0
    index = 2 * round((2 * delta - parity) / 2) + parity
    if abs(2 * delta - index) > 0.98:
        raise PathError(
            f"winding 2*Delta = {2 * delta:.6f} sits at distance nearly one "
            f"from the admissible index {index}; refine the sampling"
        )
    return int(index)


def conley_zehnder(path: SymplecticPath) -> int:
    """Index of a nondegenerate path from the identity.

    One plane uses the rotation-number route; higher dimensions use the
    crossing route.
    """
    if path.dimension == 2:
        return winding_index_2d(path)
    return crossing_index(path)


def reduce_index(index: int, period: int | None) -> int:
    """Project an integer index to the cyclic grading, identity when period is None."""
    if period is None:
        return int(index)
    period = int(period)
    if period <= 0 or period % 2:
        raise ValueError("grading period must be a positive even integer")
    return int(index) % period


def rotation_path(alpha: float, samples: int = DEFAULT_MIN_SAMPLES) -> SymplecticPath:
    """Rotation by 2 pi alpha t in one symplectic plane."""
    t = np.linspace(0.0, 1.0, samples + 1)
    phi = 2 * np.pi * alpha * t
    mats = np.zeros((samples + 1, 2, 2))
    mats[:, 0, 0] = np.cos(phi)
    mats[:, 0, 1] = -np.sin(phi)
    mats[:, 1, 0] = np.sin(phi)
    mats[:, 1, 1] = np.cos(phi)
    return SymplecticPath(mats)


def hyperbolic_path(rate: float = 1.0, samples: int = DEFAULT_MIN_SAMPLES) -> SymplecticPath:
    """Squeeze diag(exp(rt), exp(-rt)) in one symplectic plane."""
    t = np.linspace(0.0, 1.0, samples + 1)
    mats = np.zeros((samples + 1, 2, 2))
    mats[:, 0, 0] = np.exp(rate * t)
    mats[:, 1, 1] = np.exp(-rate * t)
    return SymplecticPath(mats)


def block_sum_path(first: SymplecticPath, second: SymplecticPath) -> SymplecticPath:
    """Direct sum of two paths, interleaving (x.., y..) coordinate blocks."""
    a = first.samples
    b = second.samples
    if a.shape[0] != b.shape[0]:
        raise PathError("block summands need matching sample counts")
    na = first.half_dimension
    nb = second.half_dimension
    n = na + nb
    count = a.shape[0]
    out = np.zeros((count, 2 * n, 2 * n))
    out[:, :na, :na] = a[:, :na, :na]
    out[:, :na, n : n + na] = a[:, :na, na:]
    out[:, n : n + na, :na] = a[:, na:, :na]
    out[:, n : n + na, n : n + na] = a[:, na:, na:]
    out[:, na:n, na:n] = b[:, :nb, :nb]
    out[:, na:n, n + na :] = b[:, :nb, nb:]
    out[:, n + na :, na:n] = b[:, nb:, :nb]
    out[:, n + na :, n + na :] = b[:, nb:, nb:]
    return SymplecticPath(out)


def loop_shifted(path: SymplecticPath, winding: int) -> SymplecticPath:
    """Precompose with the unitary loop rotating the first plane k full turns."""
    samples = path.samples
    count = samples.shape[0]
    n = path.half_dimension
    t = np.linspace(0.0, 1.0, count)
    phi = 2 * np.pi * winding * t
    loop = np.tile(np.eye(2 * n), (count, 1, 1))
    loop[:, 0, 0] = np.cos(phi)
    loop[:, 0, n] = -np.sin(phi)
    loop[:, n, 0] = np.sin(phi)
    loop[:, n, n] = np.cos(phi)
    return SymplecticPath(loop @ samples)


def path_to_json_dict(path: SymplecticPath) -> dict:
    return {"samples": path.samples.tolist()}


def path_from_json_dict(data) -> SymplecticPath:
    try:
        samples = np.asarray(data["samples"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise PathError(f"malformed path description: {exc}") from exc
    return SymplecticPath(samples)


def load_path(path_or_file) -> SymplecticPath:
    with open(path_or_file, "r", encoding="utf-8") as handle:
        return path_from_json_dict(json.load(handle))
