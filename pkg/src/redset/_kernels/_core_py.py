"""Pure-numpy implementations of the hot kernels.

Same call signatures as the compiled module `_core`; whichever is available
is selected in `redset._kernels.__init__`.

Site convention: sites are 1-based, site 1 is the leftmost tensor factor,
composite indices are row-major (site 1 varies slowest).
"""

import numpy as np


def apply_two_site(out, psi, gate, i, j, d, M):
    """Accumulate (gate acting on sites i,j of an M-site chain) @ psi into out.

    `gate` is (d*d, d*d) with row index (a, b) = a*d + b for (site i, site j).
    i != j, both in 1..M. Works for non-adjacent pairs (used for the bond
    closing a ring).
    """
    t = psi.reshape((d,) * M)
    moved = np.moveaxis(t, (i - 1, j - 1), (0, 1))
    tail = moved.shape[2:]
    res = gate @ moved.reshape(d * d, -1)
    res = np.moveaxis(res.reshape((d, d) + tail), (0, 1), (i - 1, j - 1))
    out += res.reshape(-1)
    return out


def chain_matvec(psi, gate, bonds, d, M):
    """Sum of a single two-site gate applied at every (i, j) bond in `bonds`."""
    out = np.zeros_like(psi)
    for i, j in bonds:
        apply_two_site(out, psi, gate, int(i), int(j), d, M)
    return out


def transfer_apply(tensors, X, adjoint=False):
    """One step of the completely positive transfer map of a uniform MPS.

    tensors: (d, D, D) complex. Returns sum_s A_s X A_s^dag, or the adjoint
    map sum_s A_s^dag X A_s when adjoint=True.
    """
    if adjoint:
        return np.einsum("sij,ik,skl->jl", tensors.conj(), X, tensors, optimize=True)
    return np.einsum("sij,jl,skl->ik", tensors, X, tensors.conj(), optimize=True)
