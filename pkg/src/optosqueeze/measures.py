"""Two-mode reductions, logarithmic negativity, Gaussian EPR steering and the
zero/entangled/one-way/two-way region taxonomy.

Covariances use the convention ``V_kl = <R_k R_l + R_l R_k>/2`` with
``X = (o + o^dag)/sqrt(2)``, so the vacuum has variance 1/2 per quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DegenerateState, NonPhysicalState
from .model import MODES

__all__ = [
    "DEFAULT_THRESHOLD",
    "TwoModeCovariance",
    "NonlocalityReport",
    "PhysicalityReport",
    "Region",
    "symplectic_form",
    "symplectic_eigenvalues",
    "physicality",
    "mode_index",
    "reduce_two_mode",
    "partial_transpose",
    "log_negativity",
    "steering",
    "quadrature_variances",
    "classify_region",
    "nonlocality_report",
]

DEFAULT_THRESHOLD = 1e-6
PHYSICALITY_TOL = 1e-9
NONPHYSICAL_TOL = 1e-9
DET_FLOOR = 1e-300

Mode = Union[str, int]


def symplectic_form(n_modes: int) -> np.ndarray:
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return np.kron(np.eye(n_modes), omega)


def symplectic_eigenvalues(v: np.ndarray) -> np.ndarray:
    """Symplectic spectrum (ascending), from the moduli of ``eig(i Omega V)``,
    whose eigenvalues come in +/- pairs."""
    v = np.asarray(v, dtype=float)
    n = v.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(n) @ v)))
    return 0.5 * (moduli[0::2] + moduli[1::2])


class PhysicalityReport(NamedTuple):
    ok: bool
    min_symplectic_eigenvalue: float


def physicality(v: np.ndarray, tol: float = PHYSICALITY_TOL) -> PhysicalityReport:
    v = np.asarray(v, dtype=float)
    # the symplectic spectrum is only meaningful for V > 0
    if np.linalg.eigvalsh(0.5 * (v + v.T))[0] <= 0.0:
        return PhysicalityReport(False, float(np.min(symplectic_eigenvalues(v))))
    nu = float(symplectic_eigenvalues(v)[0])
    return PhysicalityReport(nu >= 0.5 - tol, nu)


def mode_index(mode: Mode) -> int:
    if isinstance(mode, (int, np.integer)) and not isinstance(mode, bool):
        if 0 <= mode < len(MODES):
            return int(mode)
    elif mode in MODES:
        return MODES.index(mode)
    raise IndexError(f"unknown mode {mode!r}; expected one of {MODES} or 0..2")


@dataclass(frozen=True)
class TwoModeCovariance:
    """4x4 covariance of a mode pair with blocks ``[[V1, Vc], [Vc^T, V2]]``."""

    v12: np.ndarray
    modes: Tuple[str, str] = ("1", "2")

    @property
    def V1(self) -> np.ndarray:
        return self.v12[:2, :2]

    @property
    def V2(self) -> np.ndarray:
        return self.v12[2:, 2:]

    @property
    def Vc(self) -> np.ndarray:
        return self.v12[:2, 2:]

    def swapped(self) -> "TwoModeCovariance":
        idx = [2, 3, 0, 1]
        return TwoModeCovariance(self.v12[np.ix_(idx, idx)], self.modes[::-1])


def _det2(a: np.ndarray) -> float:
    return float(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def _as_two_mode(tm) -> TwoModeCovariance:
    if isinstance(tm, TwoModeCovariance):
        return tm
    arr = np.asarray(tm, dtype=float)
    if arr.shape != (4, 4):
        raise ValueError(f"expected a 4x4 covariance, got shape {arr.shape}")
    return TwoModeCovariance(arr)


def reduce_two_mode(v: np.ndarray, i: Mode, j: Mode) -> TwoModeCovariance:
    a, b = mode_index(i), mode_index(j)
    if a == b:
        raise IndexError(f"mode pair must be distinct, got {i!r} twice")
    idx = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1]
    sub = np.asarray(v, dtype=float)[np.ix_(idx, idx)]
    return TwoModeCovariance(0.5 * (sub + sub.T), (MODES[a], MODES[b]))


def partial_transpose(v12: np.ndarray) -> np.ndarray:
    """Flip the momentum of the second mode."""
    flip = np.diag([1.0, 1.0, 1.0, -1.0])
    return flip @ np.asarray(v12, dtype=float) @ flip


def log_negativity(tm) -> Tuple[float, float]:
    """Return ``(E_N, eta_minus)``.

    ``eta_minus`` is the smaller partially transposed symplectic eigenvalue in
    closed form, ``sqrt((S - sqrt(S^2 - 4 det V12)) / 2)`` with
    ``S = det V1 + det V2 - 2 det Vc``; ``E_N = max(0, -ln 2 eta_minus)``.
    """
    tm = _as_two_mode(tm)
    sigma = _det2(tm.V1) + _det2(tm.V2) - 2 * _det2(tm.Vc)
    det12 = np.linalg.det(tm.v12)
    scale = max(1.0, sigma * sigma)
    disc = sigma * sigma - 4 * det12
    if disc < -NONPHYSICAL_TOL * scale:
        raise NonPhysicalState(f"negative discriminant {disc:.3e} in eta_minus")
    inner = sigma - math.sqrt(max(disc, 0.0))
    if inner < -NONPHYSICAL_TOL * max(1.0, abs(sigma)):
        raise NonPhysicalState(f"negative radicand {inner:.3e} in eta_minus")
    eta = math.sqrt(max(inner, 0.0) / 2)
    if eta == 0.0:
        raise DegenerateState("eta_minus vanished; the state is not a valid covariance")
    return max(0.0, -math.log(2 * eta)), eta


def _direction(direction) -> int:
    key = str(direction).replace(" ", "").replace("->", "").replace("→", "")
    if key == "12":
        return 0
    if key == "21":
        return 1
    raise ValueError(f"direction must be '1->2' or '2->1', got {direction!r}")


def steering(tm, direction="1->2") -> float:
    """Gaussian steering ``max(0, ln(det V_i / (4 det V12)) / 2)`` where ``i``
    is the steering party."""
    tm = _as_two_mode(tm)
    det12 = np.linalg.det(tm.v12)
    if det12 <= DET_FLOOR:
        raise DegenerateState(f"det V12 = {det12:.3e} is not positive")
    block = tm.V1 if _direction(direction) == 0 else tm.V2
    det_i = _det2(block)
    if det_i <= 0.0:
        raise NonPhysicalState(f"single-mode determinant {det_i:.3e} is not positive")
    return max(0.0, 0.5 * math.log(det_i / (4 * det12)))


def quadrature_variances(v: np.ndarray, mode: Mode) -> Tuple[float, float]:
    k = 2 * mode_index(mode)
    v = np.asarray(v, dtype=float)
    return float(v[k, k]), float(v[k + 1, k + 1])


class Region(NamedTuple):
    label: str
    direction: Optional[str]

    def __str__(self):
        return self.label if self.direction is None else f"{self.label}({self.direction})"


def classify_region(e_n: float, g_12: float, g_21: float, eps: float = DEFAULT_THRESHOLD) -> Region:
    """A: no entanglement; B: entangled, unsteerable; C: one-way steering
    (direction ``'1->2'`` or ``'2->1'``); D: two-way steering."""
    if e_n <= eps:
        return Region("A", None)
    s12, s21 = g_12 > eps, g_21 > eps
    if s12 and s21:
        return Region("D", None)
    if s12:
        return Region("C", "1->2")
    if s21:
        return Region("C", "2->1")
    return Region("B", None)


@dataclass(frozen=True)
class NonlocalityReport:
    modes: Tuple[str, str]
    e_n: float
    g_12: float
    g_21: float
    eta_minus: float
    region: str
    direction: Optional[str]
    threshold: float = DEFAULT_THRESHOLD
    extra: dict = field(default_factory=dict, compare=False)

    def steering_label(self, forward: bool) -> str:
        a, b = self.modes
        return f"G_{a}_to_{b}" if forward else f"G_{b}_to_{a}"

    @property
    def direction_label(self) -> Optional[str]:
        if self.direction is None:
            return None
        a, b = self.modes
        return f"{a}->{b}" if self.direction == "1->2" else f"{b}->{a}"

    def to_dict(self) -> dict:
        return {
            "modes": list(self.modes),
            "EN": self.e_n,
            self.steering_label(True): self.g_12,
            self.steering_label(False): self.g_21,
            "eta_minus": self.eta_minus,
            "region": self.region,
            "direction": self.direction_label,
            "threshold": self.threshold,
            **self.extra,
        }


def nonlocality_report(v: np.ndarray, i: Mode, j: Mode, eps: float = DEFAULT_THRESHOLD) -> NonlocalityReport:
    tm = reduce_two_mode(v, i, j)
    e_n, eta = log_negativity(tm)
    g12 = steering(tm, "1->2")
    g21 = steering(tm, "2->1")
    region = classify_region(e_n, g12, g21, eps)
    return NonlocalityReport(tm.modes, e_n, g12, g21, eta, region.label, region.direction, eps)


def pair_from_string(text: str) -> Tuple[str, str]:
    """Parse ``'a2-b'`` into ``('a2', 'b')``."""
    parts: Sequence[str] = text.replace(",", "-").split("-")
    if len(parts) != 2:
        raise ValueError(f"mode pair must look like 'a2-b', got {text!r}")
    a, b = (p.strip() for p in parts)
    mode_index(a), mode_index(b)
    if a == b:
        raise ValueError(f"mode pair must be distinct, got {text!r}")
    return a, b
