"""Effective linearized model of the squeezed, coupled optomechanical system.

Every rate and detuning is a dimensionless multiple of the mechanical
frequency; ``omega_m`` (rad/s) is carried only to label reports.  Quadrature
ordering throughout the package is ``(X_a1, Y_a1, X_a2, Y_a2, X_b, Y_b)`` and
mode ``a2`` always means the squeezing-picture mode.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import DomainError, NonConvergence

__all__ = [
    "MODES",
    "PhysicalParams",
    "DerivedParams",
    "SteadyAmplitudes",
    "RWAReport",
    "BogoliubovDiagnostics",
    "derive_params",
    "steady_amplitudes",
    "build_drift",
    "build_diffusion",
    "rwa_validity",
    "bogoliubov_diagnostics",
]

MODES = ("a1", "a2", "b")

DETUNING_MODES = ("fixed-red", "self-consistent")

RWA_WARNING_THRESHOLD = 0.1

SELF_CONSISTENT_RTOL = 1e-12
SELF_CONSISTENT_MAX_ITER = 200
SELF_CONSISTENT_DAMPING = 0.5


@dataclass(frozen=True)
class PhysicalParams:
    """User-facing inputs, in units of the mechanical frequency.

    The pump is given either as ``Omega_p`` (together with ``delta2``) or as
    the squeezing parameter ``r`` directly; leaving both unset means no pump.
    ``Delta1`` is only read in ``self-consistent`` detuning mode.
    """

    kappa1: float
    kappa2: float
    gamma_m: float
    J: float
    g: float
    E: float
    delta2: float
    delta: float
    Omega_p: Optional[float] = None
    r: Optional[float] = None
    theta: float = 0.0
    mbar: float = 0.0
    detuning_mode: str = "fixed-red"
    Delta1: Optional[float] = None
    omega_m: float = 2 * math.pi * 23.4e6

    def __post_init__(self):
        for name in ("kappa1", "kappa2", "gamma_m", "omega_m"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")
        if not self.mbar >= 0:
            raise DomainError(f"mbar must be non-negative, got {self.mbar!r}")
        if self.Omega_p is not None and self.r is not None:
            raise DomainError("give either Omega_p or r, not both")
        if self.detuning_mode not in DETUNING_MODES:
            raise DomainError(
                f"detuning_mode must be one of {DETUNING_MODES}, got {self.detuning_mode!r}"
            )
        if self.detuning_mode == "self-consistent" and self.Delta1 is None:
            raise DomainError("self-consistent detuning mode needs Delta1")

    def replace(self, **changes) -> "PhysicalParams":
        """Copy with some fields changed.

        Setting one of ``r``/``Omega_p`` clears the other.
        """
        if "r" in changes and "Omega_p" not in changes:
            changes["Omega_p"] = None
        elif "Omega_p" in changes and "r" not in changes:
            changes["r"] = None
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


class SteadyAmplitudes(NamedTuple):
    a1s: complex
    bs: complex
    G: float
    Delta1p: float


class BogoliubovDiagnostics(NamedTuple):
    eta: Optional[float]
    lam: Optional[float]
    defined: bool


class RWAReport(NamedTuple):
    ratio: float
    warning: bool
    threshold: float


@dataclass(frozen=True)
class DerivedParams:
    """Squeezing-picture quantities derived from :class:`PhysicalParams`."""

    beta: float
    r: float
    Nbath: float
    Mbath: complex
    delta2_s: float
    Js: float
    Delta2: float
    Delta1p: float
    a1s: complex
    bs: complex
    G: float
    eta: Optional[float]
    lam: Optional[float]

    @property
    def bogoliubov_defined(self) -> bool:
        return self.eta is not None

    def to_dict(self) -> dict:
        out = {}
        for key, value in dataclasses.asdict(self).items():
            if isinstance(value, complex):
                out[key + "_re"] = value.real
                out[key + "_im"] = value.imag
            else:
                out[key] = value
        return out


def _squeezing(p: PhysicalParams):
    """Return ``(beta, r, delta2_s)``."""
    if p.r is not None:
        r = float(p.r)
        return math.tanh(2 * r), r, p.delta2 / math.cosh(2 * r)
    omega_p = 0.0 if p.Omega_p is None else float(p.Omega_p)
    if omega_p == 0.0:
        return 0.0, 0.0, float(p.delta2)
    if p.delta2 == 0.0:
        raise DomainError("Omega_p != 0 requires a non-zero delta2 (arctanh domain)")
    beta = omega_p / p.delta2
    if abs(beta) >= 1.0:
        raise DomainError(
            f"|Omega_p/delta2| = {abs(beta):.6g} >= 1 is outside the arctanh domain"
        )
    return beta, 0.5 * math.atanh(beta), p.delta2 * math.sqrt(1.0 - beta * beta)


def _amplitudes(p: PhysicalParams, Js: float, Delta2: float, Delta1p: float):
    c2 = 1j * Delta2 + p.kappa2 / 2
    a1s = p.E * c2 / (Js**2 + (1j * Delta1p + p.kappa1 / 2) * c2)
    bs = 1j * p.g * abs(a1s) ** 2 / (1j + p.gamma_m / 2)
    return complex(a1s), complex(bs)


def steady_amplitudes(p: PhysicalParams, d: DerivedParams) -> SteadyAmplitudes:
    """Steady mean fields ``a1s``, ``bs`` and the coupling ``G = g|a1s|``.

    Only ``d.Js`` and ``d.Delta2`` are read from ``d`` (plus ``d.Delta1p`` in
    fixed-red mode, where it equals one).  In self-consistent mode the
    radiation-pressure shift ``Delta1' = Delta1 - 2 g Re(bs)`` is solved by a
    damped fixed-point iteration.
    """
    if p.detuning_mode == "fixed-red":
        a1s, bs = _amplitudes(p, d.Js, d.Delta2, 1.0)
        return SteadyAmplitudes(a1s, bs, p.g * abs(a1s), 1.0)

    x = float(p.Delta1)
    for _ in range(SELF_CONSISTENT_MAX_ITER):
        _, bs = _amplitudes(p, d.Js, d.Delta2, x)
        x_new = (1 - SELF_CONSISTENT_DAMPING) * x + SELF_CONSISTENT_DAMPING * (
            p.Delta1 - 2 * p.g * bs.real
        )
        if not math.isfinite(x_new):
            break
        if abs(x_new - x) <= SELF_CONSISTENT_RTOL * max(1.0, abs(x_new)):
            a1s, bs = _amplitudes(p, d.Js, d.Delta2, x_new)
            return SteadyAmplitudes(a1s, bs, p.g * abs(a1s), x_new)
        x = x_new
    raise NonConvergence(
        f"self-consistent detuning did not converge in {SELF_CONSISTENT_MAX_ITER} iterations"
    )


def bogoliubov_diagnostics(G: float, Js: float) -> BogoliubovDiagnostics:
    """Coupling ``eta = sqrt(G^2 - Js^2)`` of ``a1`` to the hybrid Bogoliubov
    mode and its two-mode squeezing ``lam = arctanh(Js/G)``; both are defined
    only for ``G > Js``."""
    if not G > abs(Js):
        return BogoliubovDiagnostics(None, None, False)
    return BogoliubovDiagnostics(math.sqrt(G * G - Js * Js), math.atanh(Js / G), True)


def derive_params(p: PhysicalParams) -> DerivedParams:
    beta, r, delta2_s = _squeezing(p)
    Js = math.cosh(r) * p.J
    Delta2 = delta2_s - p.delta
    partial = DerivedParams(
        beta=beta, r=r, Nbath=0.0, Mbath=0j, delta2_s=delta2_s, Js=Js,
        Delta2=Delta2, Delta1p=1.0, a1s=0j, bs=0j, G=0.0, eta=None, lam=None,
    )
    amps = steady_amplitudes(p, partial)
    diag = bogoliubov_diagnostics(amps.G, Js)
    return dataclasses.replace(
        partial,
        Nbath=math.sinh(r) ** 2,
        Mbath=complex(math.cosh(r) * math.sinh(r) * np.exp(-1j * p.theta)),
        Delta1p=amps.Delta1p,
        a1s=amps.a1s,
        bs=amps.bs,
        G=amps.G,
        eta=diag.eta,
        lam=diag.lam,
    )


def build_drift(p: PhysicalParams, d: DerivedParams) -> np.ndarray:
    """6x6 drift matrix of the beam-splitter (rotating-wave) model."""
    k1, k2, gm = p.kappa1 / 2, p.kappa2 / 2, p.gamma_m / 2
    D1, D2, Js, G = d.Delta1p, d.Delta2, d.Js, d.G
    return np.array(
        [
            [-k1, D1, 0.0, Js, 0.0, -G],
            [-D1, -k1, -Js, 0.0, G, 0.0],
            [0.0, Js, -k2, D2, 0.0, 0.0],
            [-Js, 0.0, -D2, -k2, 0.0, 0.0],
            [0.0, -G, 0.0, 0.0, -gm, 1.0],
            [G, 0.0, 0.0, 0.0, -1.0, -gm],
        ]
    )


def build_diffusion(p: PhysicalParams, d: DerivedParams) -> np.ndarray:
    """Diffusion matrix: vacuum noise on ``a1``, squeezed noise on ``a2``,
    thermal noise on ``b``."""
    N, M = d.Nbath, d.Mbath
    two_re_m = 2 * M.real
    # i(M* - M) = 2 Im M
    off = 2 * M.imag
    out = np.zeros((6, 6))
    out[0, 0] = out[1, 1] = p.kappa1 / 2
    out[2:4, 2:4] = (p.kappa2 / 2) * np.array(
        [[2 * N + 1 + two_re_m, off], [off, 2 * N + 1 - two_re_m]]
    )
    out[4, 4] = out[5, 5] = (p.gamma_m / 2) * (2 * p.mbar + 1)
    return out


def rwa_validity(p: PhysicalParams, d: DerivedParams, threshold=RWA_WARNING_THRESHOLD) -> RWAReport:
    """Size of the dropped counter-rotating coupling, ``sinh(r) J`` over
    ``delta1 + delta2_s`` with ``delta1 = delta + Delta1'``.  Advisory only."""
    num = abs(math.sinh(d.r) * p.J)
    den = p.delta + d.Delta1p + d.delta2_s
    if num == 0.0:
        ratio = 0.0
    elif den <= 0.0:
        ratio = math.inf
    else:
        ratio = num / den
    return RWAReport(ratio, ratio > threshold, threshold)
