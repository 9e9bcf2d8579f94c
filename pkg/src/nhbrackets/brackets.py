"""Generalized 2x2 operator-valued brackets.

A bracket matrix ``M = [[m00, m01], [m10, m11]]`` acts on an operator pair
``v = (top, bottom)`` through the quadratic form ``v^T M v``, with operator
products kept in the written order::

    top m00 top + top m01 bottom + bottom m10 top + bottom m11 bottom

Block entries are either complex scalars (multiples of the identity, kept
symbolic) or full operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Union

import numpy as np

from .errors import DimMismatch, Singular, SingularHermitianPart
from .operators import (COND_CAP, anticommutator, as_operator, commutator, fro,
                        hermitian_split, inverse_checked)

Entry = Union[complex, np.ndarray]


def _entry_dim(e: Entry) -> int | None:
    return None if isinstance(e, Number) else np.asarray(e).shape[0]


@dataclass(frozen=True, eq=False)
class BracketMatrix:
    m00: Entry
    m01: Entry
    m10: Entry
    m11: Entry
    dim: int

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            d = _entry_dim(getattr(self, name))
            if d is not None and d != self.dim:
                raise DimMismatch(f"block {name} has dim {d}, expected {self.dim}")

    def block(self, name: str) -> np.ndarray:
        """Return a block expanded to a dense ``dim x dim`` matrix."""
        e = getattr(self, name)
        if isinstance(e, Number):
            return complex(e) * np.eye(self.dim, dtype=complex)
        return np.asarray(e)

    def dense(self) -> np.ndarray:
        """The full ``2*dim x 2*dim`` matrix."""
        return np.block([[self.block("m00"), self.block("m01")],
                         [self.block("m10"), self.block("m11")]])


@dataclass(frozen=True, eq=False)
class OperatorPair:
    """Column vector ``(top, bottom)``: an observable and a Hamiltonian-like operator."""

    top: np.ndarray
    bottom: np.ndarray

    def __post_init__(self):
        if np.shape(self.top) != np.shape(self.bottom):
            raise DimMismatch(
                f"pair dims differ: {np.shape(self.top)} vs {np.shape(self.bottom)}")

    @property
    def dim(self) -> int:
        return np.shape(self.top)[0]


def _term(a: np.ndarray, e: Entry, b: np.ndarray) -> np.ndarray | None:
    if isinstance(e, Number):
        if e == 0:
            return None
        return complex(e) * (a @ b)
    return a @ e @ b


def eval_bracket(m: BracketMatrix, v: OperatorPair) -> np.ndarray:
    if v.dim != m.dim:
        raise DimMismatch(f"bracket dim {m.dim} vs pair dim {v.dim}")
    top, bot = np.asarray(v.top), np.asarray(v.bottom)
    out = np.zeros((m.dim, m.dim), dtype=complex)
    for a, e, b in ((top, m.m00, top), (top, m.m01, bot),
                    (bot, m.m10, top), (bot, m.m11, bot)):
        t = _term(a, e, b)
        if t is not None:
            out += t
    return out


def make_omega(dim: int) -> BracketMatrix:
    """Symplectic matrix ``[[0, 1], [-1, 0]]``; its bracket is the commutator."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return BracketMatrix(0, 1, -1, 0, dim)


def _hplus_inverse(split, cond_cap: float) -> np.ndarray:
    try:
        return inverse_checked(split.h_plus, cond_cap)
    except Singular as exc:
        raise SingularHermitianPart(f"Hermitian part is singular: {exc}") from exc


def make_omega_minus_plus(h, cond_cap: float = COND_CAP) -> BracketMatrix:
    """Bracket mapping ``[chi, H]`` onto a bracket with the Hermitian part alone.

    Blocks: ``m01 = 1 + H- (H+)^-1``, ``m10 = -1 - (H+)^-1 H-``.
    Evaluated on ``(chi, H+)`` it reproduces ``[chi, H]``.
    """
    split = hermitian_split(h)
    inv = _hplus_inverse(split, cond_cap)
    eye = np.eye(inv.shape[0], dtype=complex)
    return BracketMatrix(0, eye + split.h_minus @ inv, -eye - inv @ split.h_minus, 0,
                         inv.shape[0])


def make_lambda(h, cond_cap: float = COND_CAP) -> BracketMatrix:
    """Bracket with blocks ``1 + i G (H+)^-1`` and ``-1 + i (H+)^-1 G``.

    On ``(rho, H+)`` it evaluates to ``[rho, H+] + i {G, rho}``, with ``G``
    the decay operator of ``h``.
    """
    split = hermitian_split(h)
    inv = _hplus_inverse(split, cond_cap)
    eye = np.eye(inv.shape[0], dtype=complex)
    g = split.gamma
    return BracketMatrix(0, eye + 1j * g @ inv, -eye + 1j * inv @ g, 0, inv.shape[0])


def make_omega_xi(xi) -> BracketMatrix:
    """``[[0, xi], [-xi^T, 0]]`` with the plain (non-conjugating) transpose."""
    xi = as_operator(xi, "xi")
    return BracketMatrix(0, xi, -xi.T, 0, xi.shape[0])


def lambda_density_derivative(rho, h, hbar: float = 1.0,
                              cond_cap: float = COND_CAP) -> np.ndarray:
    """``d rho/dt`` of the non-Hermitian master equation written as a Lambda bracket.

    ``eval(make_lambda(H), (rho, H+))`` carries the decay term with the
    wrong sign relative to the commutator for any scalar prefactor.  Building
    the bracket from ``H^dag`` (same ``H+``, decay operator negated) gives
    ``-i hbar d rho/dt = [rho, H+] - i {G, rho}`` exactly.
    """
    h = as_operator(h, "H")
    split = hermitian_split(h)
    lam = make_lambda(h.conj().T, cond_cap)
    return (1j / hbar) * eval_bracket(lam, OperatorPair(np.asarray(rho), split.h_plus))


@dataclass(frozen=True)
class IdentityReport:
    residual: float
    scale: float
    tol: float

    @property
    def relative(self) -> float:
        return self.residual / self.scale if self.scale > 0 else self.residual

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol * self.scale


def verify_mapping_identity(h, chi, tol: float = 1e-12,
                            cond_cap: float = COND_CAP) -> IdentityReport:
    """Compare ``[chi, H]`` with the Omega_-+ bracket of ``(chi, H+)``.

    The residual is a Frobenius norm; the pass threshold is
    ``tol * ||chi||_F * ||H||_F``.
    """
    h = as_operator(h, "H")
    chi = as_operator(chi, "chi")
    om = make_omega_minus_plus(h, cond_cap)
    lhs = commutator(chi, h)
    rhs = eval_bracket(om, OperatorPair(chi, hermitian_split(h).h_plus))
    return IdentityReport(fro(lhs - rhs), fro(chi) * fro(h), tol)


def lambda_bracket_residual(h, rho, cond_cap: float = COND_CAP) -> float:
    """``||eval(Lambda(H), (rho, H+)) - ([rho, H+] + i{G, rho})||_F``."""
    split = hermitian_split(h)
    lhs = eval_bracket(make_lambda(h, cond_cap), OperatorPair(np.asarray(rho), split.h_plus))
    rhs = commutator(rho, split.h_plus) + 1j * anticommutator(split.gamma, rho)
    return fro(lhs - rhs)
