"""Independent cross-checks: closed forms, brute-force spectra and long-time
integration against the direct steady-state solve."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional

import numpy as np

from .dynamics import evolve, slowest_decay_rate, steady_state, vacuum_initial_state
from .measures import log_negativity, partial_transpose, steering, symplectic_eigenvalues
from .model import PhysicalParams, build_diffusion, build_drift, derive_params

__all__ = [
    "OracleReport",
    "tmsv_covariance",
    "random_symplectic",
    "random_two_mode_state",
    "tmsv_oracle",
    "pt_symplectic_oracle",
    "longtime_vs_direct",
    "run_all",
]

MAX_SQUEEZE = 1.5
LONGTIME_DECAYS = 15.0
LONGTIME_T_CAP = 2000.0


@dataclass(frozen=True)
class OracleReport:
    name: str
    max_abs_error: float
    max_rel_error: float
    cases_run: int
    passed: bool
    tolerance: float
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        seed = "-" if self.seed is None else str(self.seed)
        return (
            f"{status} {self.name}: cases={self.cases_run} max_abs={self.max_abs_error:.3e} "
            f"max_rel={self.max_rel_error:.3e} tol={self.tolerance:.1e} seed={seed}"
        )


def tmsv_covariance(s: float) -> np.ndarray:
    """Two-mode squeezed vacuum with squeezing ``s``."""
    c, sh = math.cosh(2 * s) / 2, math.sinh(2 * s) / 2
    return np.array(
        [[c, 0, sh, 0], [0, c, 0, -sh], [sh, 0, c, 0], [0, -sh, 0, c]], dtype=float
    )


def _rotation(phi):
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def _local_rotations(phi1, phi2):
    out = np.zeros((4, 4))
    out[:2, :2] = _rotation(phi1)
    out[2:, 2:] = _rotation(phi2)
    return out


def _beamsplitter(theta):
    c, s = math.cos(theta), math.sin(theta)
    eye = np.eye(2)
    return np.block([[c * eye, s * eye], [-s * eye, c * eye]])


def _two_mode_squeezer(s):
    c, sh = math.cosh(s), math.sinh(s)
    z = np.diag([1.0, -1.0])
    eye = np.eye(2)
    return np.block([[c * eye, sh * z], [sh * z, c * eye]])


def random_symplectic(rng: np.random.Generator, max_squeeze: float = MAX_SQUEEZE) -> np.ndarray:
    """Rotations, a beam splitter and a bounded two-mode squeezer."""
    return (
        _local_rotations(*rng.uniform(0, 2 * math.pi, 2))
        @ _two_mode_squeezer(rng.uniform(0, max_squeeze))
        @ _beamsplitter(rng.uniform(0, math.pi))
        @ _local_rotations(*rng.uniform(0, 2 * math.pi, 2))
    )


def random_two_mode_state(rng: np.random.Generator, max_squeeze: float = MAX_SQUEEZE) -> np.ndarray:
    """Random physical covariance: symplectic conjugation of a thermal state."""
    nu = 0.5 + rng.exponential(0.5, size=2)
    thermal = np.diag([nu[0], nu[0], nu[1], nu[1]])
    s = random_symplectic(rng, max_squeeze)
    v = s @ thermal @ s.T
    return 0.5 * (v + v.T)


def _report(name, abs_errors, rel_errors, tol, seed=None, relative=False):
    abs_errors = np.asarray(list(abs_errors), dtype=float)
    rel_errors = np.asarray(list(rel_errors), dtype=float)
    max_abs = float(abs_errors.max()) if abs_errors.size else 0.0
    max_rel = float(rel_errors.max()) if rel_errors.size else 0.0
    passed = (max_rel if relative else max_abs) <= tol
    return OracleReport(name, max_abs, max_rel, int(abs_errors.size), passed, tol, seed)


def tmsv_oracle(s_values: Iterable[float] = (0.0, 0.1, 0.25, 0.5, 1.0), tol: float = 1e-9) -> OracleReport:
    """E_N = 2s and steering = ln cosh 2s (both directions) on the TMSV family."""
    abs_err, rel_err = [], []
    for s in s_values:
        if s < 0:
            raise ValueError("squeezing must be non-negative")
        v = tmsv_covariance(s)
        expected = (2 * s, math.log(math.cosh(2 * s)), math.log(math.cosh(2 * s)))
        got = (log_negativity(v)[0], steering(v, "1->2"), steering(v, "2->1"))
        for e, g in zip(expected, got):
            abs_err.append(abs(e - g))
            rel_err.append(abs(e - g) / max(abs(e), 1e-300) if e else abs(g))
    return _report("tmsv", abs_err, rel_err, tol)


def pt_symplectic_oracle(n_random: int = 1000, seed: int = 0, tol: float = 1e-9) -> OracleReport:
    """Closed-form eta_minus against the smallest symplectic eigenvalue of the
    partially transposed covariance."""
    if n_random < 1:
        raise ValueError("n_random must be >= 1")
    rng = np.random.default_rng(seed)
    abs_err, rel_err = [], []
    for _ in range(n_random):
        v = random_two_mode_state(rng)
        closed = log_negativity(v)[1]
        brute = float(symplectic_eigenvalues(partial_transpose(v))[0])
        abs_err.append(abs(closed - brute))
        rel_err.append(abs(closed - brute) / brute)
    return _report("pt_symplectic", abs_err, rel_err, tol, seed)


def longtime_vs_direct(
    params: PhysicalParams,
    t_max: Optional[float] = None,
    tol: float = 1e-6,
    name: str = "longtime_vs_direct",
) -> OracleReport:
    """Integrate from vacuum (thermal mechanics) and compare the end point
    with the Lyapunov solve, entrywise relative to the largest entry.

    The default horizon is 15 slowest decay times, capped at 2000.
    """
    d = derive_params(params)
    m, dm = build_drift(params, d), build_diffusion(params, d)
    direct = steady_state(m, dm)
    if t_max is None:
        t_max = min(LONGTIME_DECAYS / slowest_decay_rate(m), LONGTIME_T_CAP)
    trace = evolve(m, dm, vacuum_initial_state(params.mbar), t_max, stride=1 << 62)
    diff = np.abs(trace.final - direct)
    scale = float(np.max(np.abs(direct)))
    return _report(name, [diff.max()], [diff.max() / scale], tol, relative=True)


def run_all(seed: int = 0, base: Optional[PhysicalParams] = None) -> List[OracleReport]:
    from .sweep import fig2_base

    base = fig2_base() if base is None else base
    reports = [tmsv_oracle(), pt_symplectic_oracle(1000, seed)]
    for r in (0.0, 0.5, 0.5 * math.atanh(0.5 / 0.52)):
        reports.append(longtime_vs_direct(base.replace(r=r), name=f"longtime_vs_direct[r={r:.5f}]"))
    return reports
