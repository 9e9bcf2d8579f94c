"""Dense complex operator arithmetic.

Operators are plain ``numpy.ndarray`` objects of shape ``(n, n)`` and dtype
``complex128``.  Functions here never modify their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (DimMismatch, IllConditioned, NonFiniteEntries,
                     NormOverflow, Singular)

EXPM_NORM_CAP = 1e3
COND_CAP = 1e8

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)


def as_operator(a, name: str = "operator") -> np.ndarray:
    """Validate ``a`` as a finite square matrix and return a complex copy."""
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise DimMismatch(f"{name} must be a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFiniteEntries(f"{name} has NaN or Inf entries")
    return m


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimMismatch(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def fro(a) -> float:
    """Frobenius norm, rescaled so tiny or huge entries do not under/overflow."""
    mag = np.abs(np.asarray(a))
    m = float(np.max(mag)) if mag.size else 0.0
    if m == 0.0 or not np.isfinite(m):
        return m
    return m * float(np.linalg.norm(mag / m))


@dataclass(frozen=True)
class HermitianSplit:
    """Hermitian part, anti-Hermitian part and decay operator of an operator.

    ``gamma`` is the Hermitian operator ``-1j * h_minus``.
    """

    h_plus: np.ndarray
    h_minus: np.ndarray
    gamma: np.ndarray


def hermitian_split(h) -> HermitianSplit:
    h = as_operator(h, "H")
    hd = h.conj().T
    h_minus = 0.5 * (h - hd)
    return HermitianSplit(h_plus=0.5 * (h + hd), h_minus=h_minus, gamma=-1j * h_minus)


def commutator(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    _same_dim(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    _same_dim(a, b)
    return a @ b + b @ a


def matrix_exponential(a, norm_cap: float = EXPM_NORM_CAP) -> np.ndarray:
    """Return ``exp(a)``.

    Uses Pade scaling-and-squaring, which stays accurate for defective
    matrices such as a PT dimer at its exceptional point.

    Raises
    ------
    NormOverflow
        If the Frobenius norm of ``a`` exceeds ``norm_cap``.
    """
    a = as_operator(a)
    if fro(a) > norm_cap:
        raise NormOverflow(f"||A||_F = {fro(a):.3g} exceeds cap {norm_cap:.3g}")
    return scipy.linalg.expm(a)


def inverse_checked(a, cond_cap: float = COND_CAP) -> np.ndarray:
    """Invert ``a``, refusing singular or ill-conditioned input.

    The 2-norm condition number is taken from the singular values; a zero
    (or numerically zero) smallest singular value is reported as
    :class:`Singular`, anything with ``cond > cond_cap`` as
    :class:`IllConditioned`.
    """
    a = as_operator(a)
    s = np.linalg.svd(a, compute_uv=False)
    n = a.shape[0]
    if s[0] == 0.0 or s[-1] <= n * np.finfo(float).eps * s[0]:
        raise Singular(f"matrix is singular (sigma_min = {s[-1]:.3g})")
    cond = s[0] / s[-1]
    if cond > cond_cap:
        raise IllConditioned(f"condition number {cond:.3g} exceeds cap {cond_cap:.3g}", cond)
    return np.linalg.inv(a)


def hermiticity_defect(a) -> tuple[float, float]:
    """Return ``(||A - A^dag||_F, ||A + A^dag||_F)``."""
    a = np.asarray(a)
    ad = a.conj().T
    return fro(a - ad), fro(a + ad)


def is_hermitian(a, rtol: float = 1e-12) -> bool:
    """Hermiticity check with tolerance relative to ``||A||_F``."""
    herm, _ = hermiticity_defect(a)
    return herm <= rtol * fro(a)
