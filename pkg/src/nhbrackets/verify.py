"""Randomized batch checks of the bracket identities.

Sampling: entries with independent real and imaginary parts uniform in
[-1, 1].  A sampled ``H`` is shifted by ``mu * I`` with the smallest ``mu``
in ``{0, 0.1, 0.2, ...}`` that brings ``cond(H+)`` to at most 1e6.
Density matrices are ``A A^dag / Tr(A A^dag)``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .brackets import (OperatorPair, eval_bracket, lambda_bracket_residual,
                       lambda_density_derivative, make_lambda, make_omega,
                       make_omega_minus_plus, make_omega_xi, verify_mapping_identity)
from .dynamics import schrodinger_density_derivative
from .operators import commutator, fro, hermitian_split

REGULARIZE_COND = 1e6
IDENTITIES = ("mapping_identity", "lambda_bracket", "lambda_flow",
              "omega_xi_reduction", "omega_xi_conservation", "hermitian_reduction")


def random_operator(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    return hermitian_split(random_operator(rng, n)).h_plus


def random_density(rng: np.random.Generator, n: int) -> np.ndarray:
    a = random_operator(rng, n)
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def regularize(h: np.ndarray, cond_max: float = REGULARIZE_COND, step: float = 0.1) -> np.ndarray:
    """Shift ``h`` by the smallest ``k * step * I`` making ``cond(H+) <= cond_max``."""
    eye = np.eye(h.shape[0])
    k = 0
    while np.linalg.cond(hermitian_split(h + k * step * eye).h_plus) > cond_max:
        k += 1
    return h + k * step * eye


def sample_hamiltonian(rng: np.random.Generator, n: int, hermitian_only: bool = False) -> np.ndarray:
    h = random_hermitian(rng, n) if hermitian_only else random_operator(rng, n)
    return regularize(h)


@dataclass
class IdentityResult:
    name: str
    max_residual: float = 0.0
    max_relative: float = 0.0
    checks: int = 0
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def add(self, residual: float, scale: float, tol: float) -> None:
        rel = residual / scale if scale > 0 else residual
        self.max_residual = max(self.max_residual, residual)
        self.max_relative = max(self.max_relative, rel)
        self.checks += 1
        if not rel <= tol:
            self.failures += 1


@dataclass
class VerifyReport:
    dims: list[int]
    n_random: int
    seed: int
    tol: float
    hermitian_only: bool
    results: list[IdentityResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "dims": self.dims, "n_random": self.n_random, "seed": self.seed,
            "tol": self.tol, "hermitian_only": self.hermitian_only,
            "identities": [dict(asdict(r), passed=r.passed) for r in self.results],
            "passed": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def verify_suite(dims=(2, 4, 8), n_random: int = 100, seed: int = 0, tol: float = 1e-12,
                 hermitian_only: bool = False, hbar: float = 1.0) -> VerifyReport:
    """Check every bracket identity on ``n_random`` samples per dimension.

    Failures are recorded in the report, never raised.  Relative residuals
    are compared with ``tol``.
    """
    dims = [int(d) for d in dims]
    if any(d < 2 for d in dims):
        raise ValueError("dims must be >= 2")
    if n_random < 1:
        raise ValueError("n_random must be >= 1")
    rng = np.random.default_rng(seed)
    res = {name: IdentityResult(name) for name in IDENTITIES}
    for n in dims:
        omega = make_omega(n).dense()
        for _ in range(n_random):
            h = sample_hamiltonian(rng, n, hermitian_only)
            chi = random_operator(rng, n)
            rho = random_density(rng, n)
            hcal = random_hermitian(rng, n)
            x = random_operator(rng, n)
            xi_sym = 0.5 * (x + x.T)
            split = hermitian_split(h)

            rep = verify_mapping_identity(h, chi, tol)
            res["mapping_identity"].add(rep.residual, rep.scale, tol)

            scale = fro(rho) * fro(h)
            res["lambda_bracket"].add(lambda_bracket_residual(h, rho), scale, tol)
            flow = lambda_density_derivative(rho, h, hbar)
            ref = schrodinger_density_derivative(rho, h, hbar)
            res["lambda_flow"].add(fro(flow - ref), scale / hbar, tol)

            red = eval_bracket(make_omega_xi(np.eye(n)), OperatorPair(chi, hcal))
            res["omega_xi_reduction"].add(fro(red - commutator(chi, hcal)),
                                          fro(chi) * fro(hcal), tol)

            cons = eval_bracket(make_omega_xi(xi_sym), OperatorPair(hcal, hcal))
            res["omega_xi_conservation"].add(fro(cons), fro(xi_sym) * fro(hcal) ** 2, tol)

            hp = split.h_plus
            dev = max(fro(make_omega_minus_plus(hp).dense() - omega),
                      fro(make_lambda(hp).dense() - omega))
            res["hermitian_reduction"].add(dev, 1.0, tol)
    return VerifyReport(dims, n_random, seed, tol, hermitian_only,
                        [res[name] for name in IDENTITIES])
