"""Catalog of built-in Hamiltonians and helper operators.

=========  ==================  =============================================
name       parameters          operator
=========  ==================  =============================================
pt_dimer   gamma >= 0, v       ``[[i gamma, v], [v, -i gamma]]``
decay      gamma >= 0, n >= 1  ``-i (gamma/2) I_n``
chain      n >= 2, j, g >= 0   hopping ``j`` on the off-diagonals, on-site
                               ``+i g`` on even sites and ``-i g`` on odd
proj       0 <= k < n, n >= 1  ``|k><k|`` in dimension ``n``
=========  ==================  =============================================

The PT dimer has eigenvalues ``+-sqrt(v^2 - gamma^2)``: real for
``|v| > gamma``, an exceptional point at ``|v| = gamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParamOutOfRange, UnknownModel

MAX_DIM = 64


@dataclass(frozen=True)
class Param:
    name: str
    integer: bool = False
    lo: float = -math.inf
    hi: float = math.inf


@dataclass(frozen=True)
class ModelCatalogEntry:
    name: str
    params: tuple[Param, ...]
    generator: Callable[..., np.ndarray]
    doc: str = ""

    def check(self, values) -> list:
        if len(values) != len(self.params):
            raise ParamOutOfRange(
                f"{self.name} takes {len(self.params)} parameters, got {len(values)}")
        out = []
        for p, raw in zip(self.params, values):
            z = complex(raw)
            if z.imag != 0 or not math.isfinite(z.real):
                raise ParamOutOfRange(f"{self.name}: {p.name} must be a finite real, got {raw!r}")
            x = z.real
            if p.integer:
                if x != int(x):
                    raise ParamOutOfRange(f"{self.name}: {p.name} must be an integer, got {x!r}")
                x = int(x)
            if not (p.lo <= x <= p.hi):
                raise ParamOutOfRange(
                    f"{self.name}: {p.name} = {x!r} outside [{p.lo}, {p.hi}]")
            out.append(x)
        return out


def pt_dimer(gamma: float, v: float) -> np.ndarray:
    return np.array([[1j * gamma, v], [v, -1j * gamma]], dtype=complex)


def decay(gamma: float, n: int) -> np.ndarray:
    return -0.5j * gamma * np.eye(n, dtype=complex)


def chain(n: int, j: float, g: float) -> np.ndarray:
    h = np.zeros((n, n), dtype=complex)
    idx = np.arange(n - 1)
    h[idx, idx + 1] = j
    h[idx + 1, idx] = j
    h[np.arange(n), np.arange(n)] = 1j * g * np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return h


def proj(k: int, n: int) -> np.ndarray:
    if k >= n:
        raise ParamOutOfRange(f"proj: index {k} out of range for dimension {n}")
    p = np.zeros((n, n), dtype=complex)
    p[k, k] = 1.0
    return p


CATALOG: dict[str, ModelCatalogEntry] = {
    e.name: e for e in (
        ModelCatalogEntry("pt_dimer", (Param("gamma", lo=0.0), Param("v")), pt_dimer,
                          "balanced gain/loss two-level system"),
        ModelCatalogEntry("decay", (Param("gamma", lo=0.0), Param("n", True, 1, MAX_DIM)),
                          decay, "uniform decay at rate gamma"),
        ModelCatalogEntry("chain", (Param("n", True, 2, MAX_DIM), Param("j"),
                                    Param("g", lo=0.0)), chain,
                          "hopping chain with alternating gain/loss"),
        ModelCatalogEntry("proj", (Param("k", True, 0, MAX_DIM - 1),
                                   Param("n", True, 1, MAX_DIM)), proj,
                          "basis projector"),
    )
}


def builtin_model(name: str, params) -> np.ndarray:
    """Build a catalog operator from positional parameters."""
    try:
        entry = CATALOG[name]
    except KeyError:
        raise UnknownModel(f"unknown model {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    return entry.generator(*entry.check(list(params)))
