"""Heisenberg and Schrodinger time evolution under non-Hermitian Hamiltonians.

Conventions (time-independent ``H``, ``G = -i H-`` the decay operator)::

    Heisenberg   i hbar d chi/dt = [chi, H]
                 chi(t) = exp(iHt/hbar) chi exp(-iHt/hbar)
    density      d rho/dt = -(i/hbar)[H+, rho] + (1/hbar){G, rho}
                 rho(t) = exp(-iHt/hbar) rho exp(i H^dag t/hbar)
    state        |psi(t)> = exp(-iHt/hbar) |psi>

Trajectories are never renormalized; trace decay is part of the signal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .brackets import OperatorPair, eval_bracket, make_omega_xi
from .errors import (DimMismatch, NonFiniteState, NonHermitianGenerator,
                     VanishingTrace)
from .operators import (EXPM_NORM_CAP, anticommutator, as_operator, commutator,
                        hermitian_split, is_hermitian, matrix_exponential)

Picture = Literal["heisenberg-observable", "schrodinger-density", "schrodinger-state"]
PICTURES = ("heisenberg-observable", "schrodinger-density", "schrodinger-state")
INTEGRATORS = ("exact", "rk4")


@dataclass(frozen=True, eq=False)
class EvolutionSpec:
    hamiltonian: np.ndarray
    hbar: float = 1.0
    picture: str = "schrodinger-density"
    integrator: str = "exact"
    dt: float = 0.01
    t_final: float = 0.0
    normalize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "hamiltonian", as_operator(self.hamiltonian, "hamiltonian"))
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if self.picture not in PICTURES:
            raise ValueError(f"unknown picture {self.picture!r}")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"unknown integrator {self.integrator!r}")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.t_final < 0:
            raise ValueError("t_final must be non-negative")
        if self.t_final > 0 and self.dt > self.t_final:
            raise ValueError("dt must not exceed t_final")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))

    def derivative(self) -> Callable[[np.ndarray], np.ndarray]:
        h, hbar = self.hamiltonian, self.hbar
        if self.picture == "heisenberg-observable":
            return lambda x: heisenberg_derivative(x, h, hbar)
        if self.picture == "schrodinger-density":
            return lambda x: schrodinger_density_derivative(x, h, hbar)
        return lambda x: (-1j / hbar) * (h @ x)


def heisenberg_derivative(chi, h, hbar: float = 1.0) -> np.ndarray:
    return commutator(chi, h) / (1j * hbar)


def schrodinger_density_derivative(rho, h, hbar: float = 1.0) -> np.ndarray:
    split = hermitian_split(h)
    return (-1j / hbar) * commutator(split.h_plus, rho) + anticommutator(split.gamma, rho) / hbar


def _propagators(h: np.ndarray, t: float, hbar: float, cap: float):
    return (matrix_exponential(1j * h * t / hbar, cap),
            matrix_exponential(-1j * h * t / hbar, cap))


def heisenberg_propagate(h, chi, t: float, hbar: float = 1.0,
                         norm_cap: float = EXPM_NORM_CAP) -> np.ndarray:
    h, chi = as_operator(h, "H"), as_operator(chi, "chi")
    if h.shape != chi.shape:
        raise DimMismatch("observable and Hamiltonian dims differ")
    fwd, back = _propagators(h, t, hbar, norm_cap)
    return fwd @ chi @ back


def density_propagate(h, rho, t: float, hbar: float = 1.0,
                      norm_cap: float = EXPM_NORM_CAP) -> np.ndarray:
    h, rho = as_operator(h, "H"), as_operator(rho, "rho")
    if h.shape != rho.shape:
        raise DimMismatch("density matrix and Hamiltonian dims differ")
    u = matrix_exponential(-1j * h * t / hbar, norm_cap)
    return u @ rho @ u.conj().T


def state_propagate(h, psi, t: float, hbar: float = 1.0,
                    norm_cap: float = EXPM_NORM_CAP) -> np.ndarray:
    h = as_operator(h, "H")
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (h.shape[0],):
        raise DimMismatch(f"state has shape {psi.shape}, Hamiltonian dim {h.shape[0]}")
    return matrix_exponential(-1j * h * t / hbar, norm_cap) @ psi


def exact_propagate(spec: EvolutionSpec, initial, t: float) -> np.ndarray:
    """Closed-form evolution of ``initial`` to time ``t`` in ``spec.picture``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    fn = {"heisenberg-observable": heisenberg_propagate,
          "schrodinger-density": density_propagate,
          "schrodinger-state": state_propagate}[spec.picture]
    return fn(spec.hamiltonian, initial, t, spec.hbar)


def rk4_propagate(derivative: Callable[[np.ndarray], np.ndarray], initial,
                  dt: float, n_steps: int) -> np.ndarray:
    """Classical fixed-step RK4 for an autonomous system.

    Returns an array of shape ``(n_steps + 1, *initial.shape)`` holding the
    state after every step, starting with ``initial``.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative")
    y = np.array(initial, dtype=complex)
    out = np.empty((n_steps + 1,) + y.shape, dtype=complex)
    out[0] = y
    for k in range(n_steps):
        k1 = derivative(y)
        k2 = derivative(y + 0.5 * dt * k1)
        k3 = derivative(y + 0.5 * dt * k2)
        k4 = derivative(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise NonFiniteState(f"non-finite state after step {k + 1} (t = {(k + 1) * dt:g})")
        out[k + 1] = y
    return out


def propagate(spec: EvolutionSpec, initial) -> np.ndarray:
    """Trajectory on the grid ``t_k = k * dt``, ``k = 0..spec.n_steps``."""
    if spec.integrator == "rk4":
        return rk4_propagate(spec.derivative(), initial, spec.dt, spec.n_steps)
    return np.array([exact_propagate(spec, initial, k * spec.dt)
                     for k in range(spec.n_steps + 1)])


def expectation_value(rho, chi, normalize: bool = False) -> complex:
    rho, chi = np.asarray(rho), np.asarray(chi)
    if rho.shape != chi.shape:
        raise DimMismatch(f"rho {rho.shape} vs chi {chi.shape}")
    val = complex(np.trace(rho @ chi))
    if normalize:
        tr = complex(np.trace(rho))
        if abs(tr) <= 1e-12:
            raise VanishingTrace(f"|Tr rho| = {abs(tr):.3g} too small to normalize")
        val /= tr
    return val


@dataclass(frozen=True)
class PictureComparison:
    heis: complex
    schro: complex

    @property
    def gap(self) -> float:
        return abs(self.heis - self.schro)


def compare_pictures(h, rho0, chi0, hbar: float = 1.0, t: float = 1.0) -> PictureComparison:
    """Expectation values ``Tr(rho0 chi(t))`` and ``Tr(rho(t) chi0)``.

    They coincide for Hermitian ``h`` and generally differ otherwise.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    chi_t = heisenberg_propagate(h, chi0, t, hbar)
    rho_t = density_propagate(h, rho0, t, hbar)
    return PictureComparison(expectation_value(rho0, chi_t), expectation_value(rho_t, chi0))


def omega_xi_derivative(chi, xi, hcal, hbar: float = 1.0) -> np.ndarray:
    """``(chi xi H - H xi^T chi) / (i hbar)``."""
    return eval_bracket(make_omega_xi(xi), OperatorPair(chi, hcal)) / (1j * hbar)


def omega_xi_flow(xi, hcal, chi0, hbar: float = 1.0, dt: float = 0.01,
                  n_steps: int = 0) -> np.ndarray:
    """RK4 trajectory of an observable under the ``Omega_xi`` bracket.

    ``hcal`` must be Hermitian (relative defect at most 1e-12).
    """
    hcal = as_operator(hcal, "hcal")
    if not is_hermitian(hcal, 1e-12):
        raise NonHermitianGenerator("generator for the xi flow must be Hermitian")
    xi = as_operator(xi, "xi")
    chi0 = as_operator(chi0, "chi0")
    if not (xi.shape == hcal.shape == chi0.shape):
        raise DimMismatch("xi, hcal and chi0 must share a dimension")
    bm = make_omega_xi(xi)

    def rate(chi):
        return eval_bracket(bm, OperatorPair(chi, hcal)) / (1j * hbar)

    return rk4_propagate(rate, chi0, dt, n_steps)


def trace_rate(rho, h, hbar: float = 1.0) -> complex:
    """``d Tr(rho)/dt = (2/hbar) Tr(G rho)`` along the density flow."""
    return 2.0 / hbar * complex(np.trace(hermitian_split(h).gamma @ rho))

