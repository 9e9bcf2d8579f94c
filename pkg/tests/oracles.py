"""Reference computations independent of the package's own code paths."""

import mpmath as mp
import numpy as np

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)
KET0 = np.array([[1, 0], [0, 0]], dtype=complex)


def mp_expm(a, dps=40):
    """exp(a) by mpmath at high precision, returned as complex128."""
    with mp.workdps(dps):
        m = mp.expm(mp.matrix(np.asarray(a).tolist()))
        return np.array([[complex(m[i, j]) for j in range(m.cols)] for i in range(m.rows)])


def eig_expm(a):
    """exp(a) via eigendecomposition (diagonalizable input only)."""
    w, v = np.linalg.eig(a)
    return v @ np.diag(np.exp(w)) @ np.linalg.inv(v)


def eig_heisenberg(h, chi, t, hbar=1.0):
    return eig_expm(1j * h * t / hbar) @ chi @ eig_expm(-1j * h * t / hbar)


def eig_density(h, rho, t, hbar=1.0):
    u = eig_expm(-1j * h * t / hbar)
    return u @ rho @ u.conj().T


def central_difference(f, t, h=1e-5):
    return (f(t + h) - f(t - h)) / (2 * h)


def pt_dimer(gamma, v):
    return np.array([[1j * gamma, v], [v, -1j * gamma]])


def random_op(rng, n):
    return rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))


# Frozen from mpmath (40 digits, eigendecomposition propagators) for
# pt_dimer(0.5, 1), rho0 = |0><0|, chi0 = sigma_z, t = 1, hbar = 1.
PT_GAP_HEIS = -0.54740871809958750320
PT_GAP_SCHRO = 0.40930356060782331434
PT_GAP = 0.95671227870741081754
EXP_M02 = 0.81873075307798185
