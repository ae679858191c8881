"""Pauli bases for qubit chains and the two-body coefficient table.

The orthonormal Hermitian basis used for chain operators is
B_alpha = (sigma_a1 x ... x sigma_aM) / sqrt(2^M); expanding in it maps the
Frobenius geometry isometrically onto ordinary Euclidean R^(4^M), which is
what the projection machinery in `membership` relies on.
"""

from __future__ import annotations

import numpy as np

from .linalg import HermitianOp

PAULI_LABELS = "IXYZ"

SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# stack in index order I, X, Y, Z
_SIGMA_STACK = np.stack([SIGMA[c] for c in PAULI_LABELS])


class PauliTwoBodyHamiltonian:
    """Real coefficient table over sigma_a (x) sigma_b, (a, b) in {I,X,Y,Z}^2."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        clean = {}
        for key, val in dict(coeffs).items():
            a, b = key
            if a not in PAULI_LABELS or b not in PAULI_LABELS:
                raise ValueError(f"unknown Pauli label in {key!r}")
            val = float(val)
            if val != 0.0:
                clean[(a, b)] = clean.get((a, b), 0.0) + val
        self.coeffs = clean

    def to_matrix(self) -> HermitianOp:
        mat = np.zeros((4, 4), dtype=complex)
        for (a, b), c in self.coeffs.items():
            mat += c * np.kron(SIGMA[a], SIGMA[b])
        return HermitianOp(mat, 2)

    @classmethod
    def from_matrix(cls, op: HermitianOp, tol: float = 1e-12) -> "PauliTwoBodyHamiltonian":
        if op.local_dim != 2 or op.sites != 2:
            raise ValueError("coefficient table is defined for two qubits only")
        coeffs = {}
        for a in PAULI_LABELS:
            for b in PAULI_LABELS:
                c = np.trace(op.mat @ np.kron(SIGMA[a], SIGMA[b])) / 4.0
                if abs(c.imag) > tol:
                    raise ValueError(f"non-Hermitian content at ({a},{b}): imag {c.imag:.3e}")
                if abs(c.real) > tol:
                    coeffs[(a, b)] = float(c.real)
        return cls(coeffs)

    def __eq__(self, other):
        if not isinstance(other, PauliTwoBodyHamiltonian):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(abs(self.coeffs.get(k, 0.0) - other.coeffs.get(k, 0.0)) <= 1e-12 for k in keys)

    def __repr__(self):
        terms = " + ".join(f"{c:g}*{a}{b}" for (a, b), c in sorted(self.coeffs.items()))
        return f"PauliTwoBodyHamiltonian({terms or '0'})"


def pauli_to_matrix(c: PauliTwoBodyHamiltonian) -> HermitianOp:
    return c.to_matrix()


def matrix_to_pauli(op: HermitianOp, tol: float = 1e-12) -> PauliTwoBodyHamiltonian:
    return PauliTwoBodyHamiltonian.from_matrix(op, tol)


def zz_model() -> PauliTwoBodyHamiltonian:
    return PauliTwoBodyHamiltonian({("Z", "Z"): 1.0})


def heisenberg_model() -> PauliTwoBodyHamiltonian:
    return PauliTwoBodyHamiltonian({("X", "X"): 1.0, ("Y", "Y"): 1.0, ("Z", "Z"): 1.0})


# single-site map: row a, entry (i,j) -> sigma_a[j, i] / sqrt(2), so that
# applying it to the (bra, ket) index pair of a matrix yields the
# coefficients in the orthonormal basis sigma_a / sqrt(2).
_FWD = _SIGMA_STACK.transpose(0, 2, 1).reshape(4, 4) / np.sqrt(2.0)
_BWD = np.linalg.inv(_FWD)


def pauli_coeffs(mat: np.ndarray, sites: int) -> np.ndarray:
    """Real coordinates of a Hermitian qubit-chain matrix in the B_alpha basis.

    Index alpha is row-major over per-site labels (I,X,Y,Z), site 1 slowest.
    The map is an isometry: ||mat||_F = ||coeffs||_2.
    """
    m = sites
    t = mat.reshape((2,) * (2 * m))
    # merge each site's (bra, ket) pair into one 4-dim axis, then transform
    order = []
    for s in range(m):
        order.extend([s, m + s])
    t = t.transpose(order).reshape((4,) * m)
    for ax in range(m):
        t = np.tensordot(_FWD, t, axes=([1], [ax]))
        # tensordot puts the new axis first; rotate it back into place
        t = np.moveaxis(t, 0, ax)
    return np.ascontiguousarray(t.real.reshape(-1))


def pauli_matrix(coeffs: np.ndarray, sites: int) -> np.ndarray:
    """Inverse of `pauli_coeffs`: rebuild the complex matrix."""
    m = sites
    t = coeffs.astype(complex).reshape((4,) * m)
    for ax in range(m):
        t = np.tensordot(_BWD, t, axes=([1], [ax]))
        t = np.moveaxis(t, 0, ax)
    t = t.reshape((2, 2) * m)
    order = [2 * s for s in range(m)] + [2 * s + 1 for s in range(m)]
    return np.ascontiguousarray(t.transpose(order).reshape(2**m, 2**m))


def pauli_index(labels) -> int:
    """Flat basis index of a Pauli string given per-site labels (site 1 first)."""
    idx = 0
    for ch in labels:
        idx = idx * 4 + PAULI_LABELS.index(ch)
    return idx
