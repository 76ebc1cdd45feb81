"""Locally Hamiltonian dynamics on the standard symplectic torus.

Coordinates on T^{2n} = R^{2n}/Z^{2n} are z = (x_1..x_n, y_1..y_n) and
the symplectic form is sum dx_i ^ dy_i.  Sign convention: the pairing
<L(V), W> = -omega(V, W) identifies 1-forms with vector fields through
V = J0 * alpha for a covector alpha, where J0 = [[0, -I], [I, 0]].  The
equation integrated here is

    dz/dt = J0 (theta + grad H(t, z)),

so componentwise (xdot_i, ydot_i) = (-alpha_{y_i}, alpha_{x_i}) with
alpha = theta + dH_t.  The cohomology class of the time-averaged
generating form equals theta, which the calabi_invariant check recovers
numerically.

Hamiltonians are trigonometric polynomials
H(t, z) = sum_k c_k cos(2 pi (m_k . z + p_k t) + phi_k) with integer
spatial and temporal frequencies, so the flow is smooth, one-periodic in
time, and has uniformly bounded speed.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .betti import BettiReport, novikov_betti
from .complexes import torus_complex
from .cz import PathError, SymplecticPath, conley_zehnder
from .lattice import WeightedLattice, format_rational, parse_rational

logger = logging.getLogger(__name__)

MIN_STEPS = 64
MIN_GRID_DENSITY = 4


class DynamicsError(ValueError):
    """Invalid torus system data or violated operation precondition."""


@dataclass(frozen=True)
class CosTerm:
    """One summand amplitude * cos(2 pi (m.z + p t) + phase)."""

    amplitude: float
    freq_space: tuple
    freq_time: int = 0
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(
            self, "freq_space", tuple(int(f) for f in self.freq_space)
        )
        object.__setattr__(self, "freq_time", int(self.freq_time))
        object.__setattr__(self, "amplitude", float(self.amplitude))
        object.__setattr__(self, "phase", float(self.phase))


@dataclass(frozen=True)
class TorusSystem:
    """Constant closed 1-form theta plus a trigonometric Hamiltonian on T^{2n}."""

    n: int
    theta: tuple
    hamiltonian: tuple = ()
    steps: int = 2048

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        if self.n < 1:
            raise DynamicsError("half-dimension must be positive")
        theta = tuple(parse_rational(x) for x in self.theta)
        if len(theta) != 2 * self.n:
            raise DynamicsError(
                f"theta has length {len(theta)}, expected {2 * self.n}"
            )
        object.__setattr__(self, "theta", theta)
        terms = tuple(
            t if isinstance(t, CosTerm) else CosTerm(**t) for t in self.hamiltonian
        )
        for t in terms:
            if len(t.freq_space) != 2 * self.n:
                raise DynamicsError("spatial frequency vector has wrong length")
        object.__setattr__(self, "hamiltonian", terms)
        object.__setattr__(self, "steps", int(self.steps))
        if self.steps < MIN_STEPS:
            raise DynamicsError(f"step count must be at least {MIN_STEPS}")

    @property
    def dimension(self) -> int:
        return 2 * self.n

    def speed_bound(self) -> float:
        """Uniform bound on the field's sup norm from the coefficients."""
        theta = max((abs(float(x)) for x in self.theta), default=0.0)
        grad = sum(
            abs(t.amplitude) * 2 * math.pi * max(map(abs, t.freq_space), default=0)
            for t in self.hamiltonian
        )
        return theta + grad

    def lipschitz_bound(self) -> float:
        """Uniform bound on the field's Jacobian norm from the coefficients."""
        return sum(
            abs(t.amplitude)
            * (2 * math.pi) ** 2
            * max(map(abs, t.freq_space), default=0) ** 2
            for t in self.hamiltonian
        )


@lru_cache(maxsize=64)
def _system_arrays(system: TorusSystem):
    dim = system.dimension
    theta = np.array([float(x) for x in system.theta])
    terms = system.hamiltonian
    amps = np.array([t.amplitude for t in terms]) if terms else np.zeros(0)
    freqs = (
        np.array([t.freq_space for t in terms], dtype=float)
        if terms
        else np.zeros((0, dim))
    )
    ptime = np.array([t.freq_time for t in terms], dtype=float) if terms else np.zeros(0)
    phases = np.array([t.phase for t in terms]) if terms else np.zeros(0)
    outer = np.einsum("ki,kj->kij", freqs, freqs) if terms else np.zeros((0, dim, dim))
    return theta, amps, freqs, ptime, phases, outer


def _apply_j0(vectors: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate([-vectors[..., n:], vectors[..., :n]], axis=-1)


def _apply_j0_rows(matrices: np.ndarray, n: int) -> np.ndarray:
    return np.concatenate(
        [-matrices[..., n:, :], matrices[..., :n, :]], axis=-2
    )


def _gradient(system, arrays, t, Z):
    theta, amps, freqs, ptime, phases, _ = arrays
    if amps.size == 0:
        return np.zeros_like(Z)
    args = 2 * math.pi * (Z @ freqs.T + ptime * t) + phases
    weights = -2 * math.pi * amps * np.sin(args)
    return weights @ freqs


def _hessian(system, arrays, t, Z):
    theta, amps, freqs, ptime, phases, outer = arrays
    dim = Z.shape[-1]
    if amps.size == 0:
        return np.zeros(Z.shape[:-1] + (dim, dim))
    args = 2 * math.pi * (Z @ freqs.T + ptime * t) + phases
    weights = -((2 * math.pi) ** 2) * amps * np.cos(args)
    return np.einsum("bk,kij->bij", weights, outer)


def _hamiltonian_values(system, tgrid, Z):
    _, amps, freqs, ptime, phases, _ = _system_arrays(system)
    if amps.size == 0:
        return np.zeros(Z.shape[0])
    args = 2 * math.pi * (Z @ freqs.T + ptime * np.asarray(tgrid)[:, None]) + phases
    return np.cos(args) @ amps


def _rhs(system, arrays, t, Z, D):
    theta = arrays[0]
    n = system.n
    alpha = theta + _gradient(system, arrays, t, Z)
    V = _apply_j0(alpha, n)
    HD = _hessian(system, arrays, t, Z) @ D
    return V, _apply_j0_rows(HD, n)


def _integrate_chunk(system, Z0, steps, t_final, record_trajectory, record_monodromy):
    arrays = _system_arrays(system)
    batch, dim = Z0.shape
    n = system.n
    h = t_final / steps
    Z = Z0.copy()
    D = np.tile(np.eye(dim), (batch, 1, 1))
    traj = np.empty((batch, steps + 1, dim)) if record_trajectory else None
    dpath = np.empty((batch, steps + 1, dim, dim)) if record_monodromy else None
    if record_trajectory:
        traj[:, 0] = Z
    if record_monodromy:
        dpath[:, 0] = D
    for i in range(steps):
        t = i * h
        k1z, k1d = _rhs(system, arrays, t, Z, D)
        k2z, k2d = _rhs(system, arrays, t + h / 2, Z + h / 2 * k1z, D + h / 2 * k1d)
        k3z, k3d = _rhs(system, arrays, t + h / 2, Z + h / 2 * k2z, D + h / 2 * k2d)
        k4z, k4d = _rhs(system, arrays, t + h, Z + h * k3z, D + h * k3d)
        Z = Z + h / 6 * (k1z + 2 * k2z + 2 * k3z + k4z)
        D = D + h / 6 * (k1d + 2 * k2d + 2 * k3d + k4d)
        if record_trajectory:
            traj[:, i + 1] = Z
        if record_monodromy:
            dpath[:, i + 1] = D
    if not np.isfinite(Z).all() or not np.isfinite(D).all():
        raise DynamicsError("flow integration produced non-finite values")
    return Z, D, traj, dpath


def _integrate(
    system,
    Z0,
    steps=None,
    t_final=1.0,
    record_trajectory=False,
    record_monodromy=False,
    threads=None,
):
    Z0 = np.atleast_2d(np.asarray(Z0, dtype=float))
    steps = system.steps if steps is None else int(steps)
    if steps < MIN_STEPS:
        raise DynamicsError(f"step count must be at least {MIN_STEPS}")
    if not 0 < t_final <= 1:
        raise DynamicsError("t_final must lie in (0, 1]")
    if threads and threads > 1 and Z0.shape[0] > 1:
        chunks = np.array_split(np.arange(Z0.shape[0]), min(threads, Z0.shape[0]))
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(
                pool.map(
                    lambda idx: _integrate_chunk(
                        system,
                        Z0[idx],
                        steps,
                        t_final,
                        record_trajectory,
                        record_monodromy,
                    ),
                    chunks,
                )
            )
        Z = np.concatenate([p[0] for p in parts])
        D = np.concatenate([p[1] for p in parts])
        traj = (
            np.concatenate([p[2] for p in parts]) if record_trajectory else None
        )
        dpath = (
            np.concatenate([p[3] for p in parts]) if record_monodromy else None
        )
        return Z, D, traj, dpath
    return _integrate_chunk(
        system, Z0, steps, t_final, record_trajectory, record_monodromy
    )


def flow_and_monodromy(system: TorusSystem, z0, t_final: float = 1.0, steps=None):
    """Lifted endpoint and fundamental solution of the variational equation.

    Classical fixed-step RK4 on the lift to R^{2n}; the returned matrix is
    the Jacobian of the lifted time-t_final map at z0.
    """
    Z, D, _, _ = _integrate(system, [z0], steps=steps, t_final=t_final)
    return Z[0], D[0]


@dataclass
class PeriodicOrbit:
    """One-periodic solution found by the grid-seeded Newton search."""

    base_point: np.ndarray
    displacement: tuple
    trajectory: np.ndarray
    monodromy: np.ndarray
    margin: float
    residual: float
    action: float | None = None
    cz_index: int | None = None
    degenerate: bool = False

    @property
    def contractible(self) -> bool:
        return all(k == 0 for k in self.displacement)

    def to_json_dict(self) -> dict:
        return {
            "base_point": [float(x) for x in self.base_point],
            "displacement": [int(k) for k in self.displacement],
            "margin": float(self.margin),
            "residual": float(self.residual),
            "action": None if self.action is None else float(self.action),
            "cz_index": self.cz_index,
            "degenerate": bool(self.degenerate),
            "contractible": self.contractible,
        }


def _grid_seeds(dimension: int, density: int) -> np.ndarray:
    axes = [np.arange(density) / density] * dimension
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def _loop_distance(traj_a, traj_b) -> float:
    delta = traj_a - traj_b
    delta = (delta + 0.5) % 1.0 - 0.5
    dist = np.linalg.norm(delta, axis=-1)
    return float(np.trapezoid(dist, dx=1.0 / (len(dist) - 1)))


def orbit_action(system: TorusSystem, orbit: PeriodicOrbit) -> float:
    """Action of a contractible orbit with the cone over the lifted loop as cap.

    The symplectic area term is the per-plane shoelace sum of the sampled
    loop; the remainder is the trapezoid integral of theta . lift + H
    along the orbit.
    """
    if not orbit.contractible:
        raise DynamicsError("action is defined for contractible orbits only")
    traj = orbit.trajectory
    n = system.n
    area = 0.0
    for i in range(n):
        x = traj[:, i]
        y = traj[:, n + i]
        area += 0.5 * float(np.sum(x[:-1] * y[1:] - x[1:] * y[:-1]))
    count = traj.shape[0] - 1
    tgrid = np.arange(count + 1) / count
    theta = np.array([float(v) for v in system.theta])
    values = traj @ theta + _hamiltonian_values(system, tgrid, traj)
    integral = float(np.trapezoid(values, dx=1.0 / count))
    return -area + integral


def _k_candidates(displacement: np.ndarray, cap: int):
    base = np.round(displacement).astype(int)
    frac = displacement - base
    options = []
    for c, f in enumerate(frac):
        if abs(f) >= 0.35:
            options.append((c, int(math.copysign(1, f))))
    candidates = [tuple(base)]
    for subset in range(1, 1 << len(options)):
        k = base.copy()
        for bit, (c, step) in enumerate(options):
            if subset >> bit & 1:
                k[c] += step
        candidates.append(tuple(int(v) for v in k))
    return [k for k in candidates if max(map(abs, k), default=0) <= cap]


def _newton_sweep(
    system,
    Z,
    K,
    steps,
    tolerance,
    max_iterations,
    threads=None,
):
    """Damped Newton on lift(z) - z - k for a batch of (seed, target) pairs."""
    dim = Z.shape[1]
    eye = np.eye(dim)
    active = np.arange(Z.shape[0])
    Z = Z.copy()
    roots = []
    for _ in range(max_iterations):
        if active.size == 0:
            break
        ZT, DT, _, _ = _integrate(system, Z[active], steps=steps, threads=threads)
        g = ZT - Z[active] - K[active]
        res = np.abs(g).max(axis=1)
        done = res < tolerance
        for local in np.nonzero(done)[0]:
            roots.append(
                (
                    Z[active[local]].copy(),
                    tuple(int(v) for v in K[active[local]]),
                    float(res[local]),
                )
            )
        keep = ~done
        idx = active[keep]
        if idx.size == 0:
            active = idx
            break
        J = (DT - eye)[keep]
        rhs = -g[keep]
        dets = np.abs(np.linalg.det(J))
        regular = dets >= 1e-12
        delta = np.zeros_like(rhs)
        if regular.any():
            delta[regular] = np.linalg.solve(
                J[regular], rhs[regular][..., None]
            )[..., 0]
        if (~regular).any():
            # singular linearization (degenerate zero sets): take the
            # minimum-norm least-squares step so the iteration can still
            # land on the set and report it as degenerate
            for i in np.nonzero(~regular)[0]:
                delta[i] = np.linalg.lstsq(J[i], rhs[i], rcond=None)[0]
        scale = np.minimum(1.0, 0.25 / np.maximum(np.abs(delta).max(axis=1), 1e-30))
        Z[idx] = Z[idx] + delta * scale[:, None]
        active = idx
    if active.size:
        logger.debug("%d Newton candidates did not converge", int(active.size))
    return roots


def find_periodic_orbits(
    system: TorusSystem,
    grid_density: int,
    newton_tol: float = 1e-10,
    dedupe_radius: float = 1e-4,
    degeneracy_threshold: float = 1e-8,
    max_newton: int = 12,
    threads=None,
):
    """Grid-seeded damped Newton search for one-periodic solutions.

    Each grid seed is flowed for one period; integer displacement targets
    near the observed displacement (globally capped by the observed
    maximum plus one, sound because trigonometric fields have bounded
    speed) feed a Newton iteration on lift(z) - z - k with the variational
    monodromy as Jacobian.  Converged roots are deduplicated by the loop
    distance metric, integral over time of the torus distance between the
    trajectories.  Completeness is probabilistic in the grid density;
    densify until the count stabilizes.
    """
    if grid_density < MIN_GRID_DENSITY:
        raise DynamicsError(
            f"grid density must be at least {MIN_GRID_DENSITY} per coordinate"
        )
    dim = system.dimension
    seeds = _grid_seeds(dim, grid_density)

    # Hunt on a coarsened integrator: the coarse map's fixed points land
    # within the fine Newton basin, so the expensive resolution is only
    # paid for the handful of polished candidates.
    coarse_steps = max(MIN_STEPS, system.steps // 8)
    hunt_tol = min(1e-9, newton_tol)
    ZT, _, _, _ = _integrate(system, seeds, steps=coarse_steps, threads=threads)
    disp = ZT - seeds
    cap = int(math.ceil(float(np.abs(disp).max()))) + 1

    starts = []
    targets = []
    for idx in range(seeds.shape[0]):
        for k in _k_candidates(disp[idx], cap):
            starts.append(seeds[idx])
            targets.append(k)
    if not starts:
        return []
    coarse_roots = _newton_sweep(
        system,
        np.array(starts),
        np.array(targets, dtype=float),
        steps=coarse_steps,
        tolerance=hunt_tol,
        max_iterations=max_newton + 8,
        threads=threads,
    )
    if not coarse_roots:
        return []

    # Cluster coincident coarse roots before polishing; boundary splits
    # only produce duplicate candidates, which the loop-distance pass
    # removes later.
    representatives = {}
    for z, k, _ in coarse_roots:
        key = (k, tuple(np.round(z - np.floor(z), 6)))
        representatives.setdefault(key, (z, k))
    reps = sorted(representatives.values(), key=lambda zk: (zk[1], tuple(zk[0])))
    roots = _newton_sweep(
        system,
        np.array([z for z, _ in reps]),
        np.array([k for _, k in reps], dtype=float),
        steps=system.steps,
        tolerance=newton_tol,
        max_iterations=6,
        threads=threads,
    )
    if not roots:
        return []

    base = np.array([r[0] for r in roots])
    base -= np.floor(base)
    base[base > 1 - 1e-9] = 0.0
    order = sorted(
        range(len(roots)),
        key=lambda i: (roots[i][1], roots[i][2], tuple(np.round(base[i], 9))),
    )
    ZTa, DTa, traj, dpath = _integrate(
        system,
        base[order],
        record_trajectory=True,
        record_monodromy=True,
        threads=threads,
    )

    lip = system.lipschitz_bound()
    prefilter = min(0.25, dedupe_radius * max(1.0, lip) * math.exp(min(lip, 25.0)))
    kept = []
    orbits = []
    for pos, i in enumerate(order):
        k = roots[i][1]
        duplicate = False
        for kept_pos, kept_k in kept:
            if kept_k != k:
                continue
            gap = (base[i] - base[order[kept_pos]] + 0.5) % 1.0 - 0.5
            if np.abs(gap).max() > prefilter:
                continue
            if _loop_distance(traj[pos], traj[kept_pos]) < dedupe_radius:
                duplicate = True
                break
        if duplicate:
            continue
        kept.append((pos, k))
        monodromy = DTa[pos]
        margin = abs(float(np.linalg.det(np.eye(dim) - monodromy)))
        degenerate = margin < degeneracy_threshold
        if degenerate:
            logger.debug(
                "degenerate orbit at %s: |det(I - dphi)| = %.3e", base[i], margin
            )
        orbit = PeriodicOrbit(
            base_point=base[i],
            displacement=k,
            trajectory=traj[pos],
            monodromy=monodromy,
            margin=margin,
            residual=roots[i][2],
            degenerate=degenerate,
        )
        if orbit.contractible:
            orbit.action = orbit_action(system, orbit)
        if not degenerate:
            try:
                orbit.cz_index = conley_zehnder(SymplecticPath(dpath[pos]))
            except PathError as exc:
                logger.debug("index certification failed: %s", exc)
                orbit.cz_index = None
        orbits.append(orbit)
    orbits.sort(
        key=lambda o: (o.displacement, tuple(np.round(o.base_point, 9)))
    )
    return orbits


def calabi_invariant(system: TorusSystem, space_points: int = 128, time_points: int = 128):
    """Pairing of the time-averaged generating 1-form with the basis loops.

    Uniform means over the integration grids are spectrally exact for
    trigonometric polynomials, so this recovers theta to quadrature
    precision; the exact part of the form contributes nothing on closed
    loops.
    """
    dim = system.dimension
    arrays = _system_arrays(system)
    theta = arrays[0]
    out = np.zeros(dim)
    svals = np.arange(space_points) / space_points
    tvals = np.arange(time_points) / time_points
    for i in range(dim):
        Z = np.zeros((space_points, dim))
        Z[:, i] = svals
        acc = 0.0
        for t in tvals:
            acc += float(_gradient(system, arrays, t, Z)[:, i].mean())
        out[i] = theta[i] + acc / time_points
    return out


def theta_weight_lattice(system: TorusSystem) -> WeightedLattice:
    """Weight on first homology evaluating the class of theta on basis loops."""
    if all(x == 0 for x in system.theta):
        return WeightedLattice(system.dimension, ())
    return WeightedLattice(system.dimension, [(system.theta, 1)])


@dataclass
class VerificationReport:
    """Outcome of the orbit-count versus Betti-sum comparison."""

    contractible_count: int
    betti: BettiReport
    verdict: str  # "pass", "fail", or "hypothesis_violated"
    per_index_counts: dict
    orbits: list
    diagnostics: dict = field(default_factory=dict)

    @property
    def betti_total(self) -> int:
        return self.betti.total

    def to_json_dict(self) -> dict:
        return {
            "contractible_count": self.contractible_count,
            "betti": self.betti.to_json_dict(),
            "betti_total": self.betti_total,
            "verdict": self.verdict,
            "per_index_counts": {
                str(k): v for k, v in sorted(self.per_index_counts.items())
            },
            "orbits": [o.to_json_dict() for o in self.orbits],
            "diagnostics": self.diagnostics,
        }

    def format_table(self) -> str:
        lines = [
            "index   orbits",
            *(
                f"{str(k):>5}   {v}"
                for k, v in sorted(
                    self.per_index_counts.items(), key=lambda kv: str(kv[0])
                )
            ),
            f"contractible nondegenerate orbits: {self.contractible_count}",
            f"Betti sum: {self.betti_total}",
            f"verdict: {self.verdict}",
        ]
        return "\n".join(lines)


def verify_main_theorem(
    system: TorusSystem,
    grid_density: int = 8,
    newton_tol: float = 1e-10,
    dedupe_radius: float = 1e-4,
    degeneracy_threshold: float = 1e-8,
    threads=None,
) -> VerificationReport:
    """Count contractible one-periodic solutions against the Betti sum.

    The comparison complex is the torus cell complex completed along the
    rational class theta.  A degenerate contractible orbit voids the
    count's hypotheses: the report then carries no verdict on the
    inequality.
    """
    orbits = find_periodic_orbits(
        system,
        grid_density,
        newton_tol=newton_tol,
        dedupe_radius=dedupe_radius,
        degeneracy_threshold=degeneracy_threshold,
        threads=threads,
    )
    contractible = [o for o in orbits if o.contractible]
    betti = novikov_betti(torus_complex(system.dimension), theta_weight_lattice(system))
    per_index = {}
    for o in contractible:
        if not o.degenerate:
            key = o.cz_index if o.cz_index is not None else "unassigned"
            per_index[key] = per_index.get(key, 0) + 1
    diagnostics = {
        "grid_density": grid_density,
        "steps": system.steps,
        "orbits_total": len(orbits),
        "noncontractible": len(orbits) - len(contractible),
        "degenerate_contractible": sum(1 for o in contractible if o.degenerate),
        "min_margin": min((o.margin for o in contractible), default=None),
        "max_residual": max((o.residual for o in orbits), default=None),
        "theta": [format_rational(Fraction(x)) for x in system.theta],
    }
    if any(o.degenerate for o in contractible):
        verdict = "hypothesis_violated"
        count = sum(1 for o in contractible if not o.degenerate)
    else:
        count = len(contractible)
        verdict = "pass" if count >= betti.total else "fail"
    return VerificationReport(
        contractible_count=count,
        betti=betti,
        verdict=verdict,
        per_index_counts=per_index,
        orbits=orbits,
        diagnostics=diagnostics,
    )


def densify_until_stable(
    system: TorusSystem,
    start_density: int = MIN_GRID_DENSITY,
    max_doublings: int = 3,
    **kwargs,
):
    """Double the grid until two successive densities agree on the orbit count."""
    density = start_density
    previous = None
    for _ in range(max_doublings + 1):
        orbits = find_periodic_orbits(system, density, **kwargs)
        count = len(orbits)
        if previous is not None and count == previous[1]:
            return orbits, density
        previous = (orbits, count)
        density *= 2
    raise DynamicsError(
        f"orbit count did not stabilize up to grid density {density // 2}"
    )


def builtin_systems() -> dict:
    """Named demonstration systems used across the test suite."""
    third = Fraction(1, 3)
    return {
        "t2_two_cosines": TorusSystem(
            1,
            (0, 0),
            (CosTerm(0.05, (1, 0)), CosTerm(0.05, (0, 1))),
        ),
        "t2_translation": TorusSystem(1, (Fraction(1, 2), 0), ()),
        "t2_drift_no_orbits": TorusSystem(
            1, (third, 0), (CosTerm(0.05, (1, 0)),)
        ),
        "t2_tilted_morse": TorusSystem(
            1,
            (0, 0),
            (
                CosTerm(0.03, (1, 0)),
                CosTerm(0.04, (0, 1)),
                CosTerm(0.01, (1, 1)),
            ),
        ),
        "t2_time_dependent": TorusSystem(
            1,
            (0, 0),
            (
                CosTerm(0.05, (1, 0)),
                CosTerm(0.05, (0, 1)),
                CosTerm(0.01, (1, 0), freq_time=1),
            ),
        ),
        "t4_product": TorusSystem(
            2,
            (0, 0, 0, 0),
            tuple(
                CosTerm(0.05, tuple(1 if j == i else 0 for j in range(4)))
                for i in range(4)
            ),
        ),
    }


def system_to_json_dict(system: TorusSystem) -> dict:
    return {
        "n": system.n,
        "theta": [format_rational(Fraction(x)) for x in system.theta],
        "hamiltonian": [
            {
                "amp": t.amplitude,
                "freq_space": list(t.freq_space),
                "freq_time": t.freq_time,
                "phase": t.phase,
            }
            for t in system.hamiltonian
        ],
        "steps": system.steps,
    }


def system_from_json_dict(data) -> TorusSystem:
    try:
        terms = tuple(
            CosTerm(
                t["amp"],
                t["freq_space"],
                t.get("freq_time", 0),
                t.get("phase", 0.0),
            )
            for t in data.get("hamiltonian", [])
        )
        return TorusSystem(
            data["n"],
            tuple(data["theta"]),
            terms,
            steps=data.get("steps", 2048),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise DynamicsError(f"malformed system description: {exc}") from exc


def load_system(path) -> TorusSystem:
    with open(path, "r", encoding="utf-8") as handle:
        return system_from_json_dict(json.load(handle))
