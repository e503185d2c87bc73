"""Covariance dynamics ``dV/dt = M V + V M^T + D`` and its steady state."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import NonFiniteError, NonPhysicalState, SingularSystem, StepSizeError, UnstableSystem
from .measures import physicality

__all__ = [
    "StabilityReport",
    "EvolutionTrace",
    "stability_check",
    "residual",
    "steady_state",
    "evolve",
    "vacuum_initial_state",
    "slowest_decay_rate",
]

STABILITY_MARGIN = -1e-12
STEP_FACTOR = 0.1
HALVING_RTOL = 1e-8


class StabilityReport(NamedTuple):
    stable: bool
    max_real_part: float


def stability_check(m: np.ndarray) -> StabilityReport:
    """Eigenvalue test on the drift matrix (equivalent to Routh-Hurwitz)."""
    max_re = float(np.max(np.linalg.eigvals(m).real))
    return StabilityReport(max_re < STABILITY_MARGIN, max_re)


def slowest_decay_rate(m: np.ndarray) -> float:
    return -stability_check(m).max_real_part


def residual(m: np.ndarray, d: np.ndarray, v: np.ndarray) -> float:
    return float(np.max(np.abs(m @ v + v @ m.T + d)))


def _lyapunov_operator(m: np.ndarray) -> np.ndarray:
    # row-major vec: vec(M V) = (M kron I) vec V, vec(V M^T) = (I kron M) vec V
    n = m.shape[0]
    eye = np.eye(n)
    left = (m[:, None, :, None] * eye[None, :, None, :]).reshape(n * n, n * n)
    right = (eye[:, None, :, None] * m[None, :, None, :]).reshape(n * n, n * n)
    return left + right


def steady_state(m: np.ndarray, d: np.ndarray, check_stability: bool = True) -> np.ndarray:
    """Solve ``M V + V M^T = -D`` as a dense 36x36 linear system.

    One step of iterative refinement is applied so that the residual sits at
    the roundoff floor; the result is symmetrized.
    """
    m = np.asarray(m, dtype=float)
    d = np.asarray(d, dtype=float)
    if check_stability:
        report = stability_check(m)
        if not report.stable:
            raise UnstableSystem(
                f"drift matrix has max eigenvalue real part {report.max_real_part:.3e} >= 0"
            )
    n = m.shape[0]
    op = _lyapunov_operator(m)
    rhs = -d.reshape(-1)
    try:
        x = np.linalg.solve(op, rhs)
        x += np.linalg.solve(op, rhs - op @ x)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"Lyapunov operator is singular: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystem("Lyapunov solve produced non-finite entries")
    v = x.reshape(n, n)
    return 0.5 * (v + v.T)


def vacuum_initial_state(mbar: float = 0.0) -> np.ndarray:
    """Vacuum on both optical modes, thermal occupancy ``mbar`` on ``b``."""
    return np.diag([0.5, 0.5, 0.5, 0.5, mbar + 0.5, mbar + 0.5])


@dataclass
class EvolutionTrace:
    times: np.ndarray
    covariances: np.ndarray
    converged: bool
    final_residual: float
    dt: float
    halving_error: float

    def __len__(self):
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.covariances[-1]


def _rk4(m, d, v0, dt, n_steps, stride):
    mt = m.T
    v = v0.copy()
    half = 0.5 * dt
    samples = [v.copy()]
    steps = [0]
    for k in range(1, n_steps + 1):
        k1 = m @ v + v @ mt + d
        w = v + half * k1
        k2 = m @ w + w @ mt + d
        w = v + half * k2
        k3 = m @ w + w @ mt + d
        w = v + dt * k3
        k4 = m @ w + w @ mt + d
        v = v + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
        v = 0.5 * (v + v.T)
        if k % stride == 0 or k == n_steps:
            if not np.all(np.isfinite(v)):
                raise NonFiniteError(f"covariance overflowed at step {k}")
            samples.append(v.copy())
            steps.append(k)
    return np.array(steps), np.array(samples)


def evolve(
    m: np.ndarray,
    d: np.ndarray,
    v0: np.ndarray,
    t_max: float,
    dt: Optional[float] = None,
    stride: int = 1,
    check_convergence: bool = True,
) -> EvolutionTrace:
    """Integrate the covariance equation with classical fixed-step RK4.

    The default step satisfies ``dt * rho(M) <= 0.1`` and is shrunk so that
    an integer number of steps lands on ``t_max``.  With
    ``check_convergence`` the run is repeated at half the step and
    ``converged`` records whether the final covariances agree to 1e-8
    (relative to the largest entry).  ``stride`` is counted in steps of the
    primary run.
    """
    m = np.asarray(m, dtype=float)
    d = np.asarray(d, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if not t_max > 0:
        raise StepSizeError(f"t_max must be positive, got {t_max!r}")
    if stride < 1:
        raise StepSizeError(f"stride must be >= 1, got {stride!r}")
    scale = max(1.0, float(np.max(np.abs(v0))))
    if np.max(np.abs(v0 - v0.T)) > 1e-12 * scale:
        raise NonPhysicalState("initial covariance is not symmetric")
    phys = physicality(v0)
    if not phys.ok:
        raise NonPhysicalState(
            f"initial covariance is unphysical (min symplectic eigenvalue {phys.min_symplectic_eigenvalue:.6g})"
        )

    if dt is None:
        rho = float(np.max(np.abs(np.linalg.eigvals(m))))
        dt = STEP_FACTOR / rho if rho > 0 else t_max
    if not dt > 0 or not math.isfinite(dt):
        raise StepSizeError(f"step size must be positive and finite, got {dt!r}")
    n_steps = max(1, math.ceil(t_max / dt - 1e-9))
    dt = t_max / n_steps

    # overflow surfaces as NonFiniteError at the next sample
    with np.errstate(over="ignore", invalid="ignore"):
        steps, samples = _rk4(m, d, v0, dt, n_steps, stride)
    halving_error = math.nan
    converged = True
    if check_convergence:
        _, fine = _rk4(m, d, v0, dt / 2, 2 * n_steps, 2 * n_steps)
        ref = max(float(np.max(np.abs(fine[-1]))), 1e-300)
        halving_error = float(np.max(np.abs(fine[-1] - samples[-1]))) / ref
        converged = halving_error < HALVING_RTOL
    return EvolutionTrace(
        times=steps * dt,
        covariances=samples,
        converged=converged,
        final_residual=residual(m, d, samples[-1]),
        dt=dt,
        halving_error=halving_error,
    )
