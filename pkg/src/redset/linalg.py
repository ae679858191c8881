"""Dense Hermitian linear algebra for finite spin chains.

Conventions fixed here and relied on everywhere else:
  - sites are 1-based, site 1 is the leftmost tensor factor,
  - composite indices are row-major (site 1 varies slowest),
  - the canonical inner product is Frobenius (Hilbert-Schmidt).
"""

from __future__ import annotations

import numpy as np

HERM_TOL = 1e-12


class HermitianOp:
    """Dense Hermitian operator on (C^d)^(tensor M).

    Entries are symmetrized to (A + A^dag)/2 on ingestion; inputs whose
    anti-Hermitian part exceeds HERM_TOL (entrywise, relative to the largest
    entry) are rejected.
    """

    __slots__ = ("mat", "local_dim", "sites")

    def __init__(self, mat, local_dim=2):
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {mat.shape}")
        if local_dim < 2:
            raise ValueError("local_dim must be >= 2")
        dim = mat.shape[0]
        sites = round(np.log(dim) / np.log(local_dim))
        if local_dim**sites != dim or sites < 1:
            raise ValueError(f"matrix dimension {dim} is not a power of local_dim={local_dim}")
        scale = max(1.0, np.abs(mat).max())
        dev = np.abs(mat - mat.conj().T).max()
        if dev > HERM_TOL * scale:
            raise ValueError(f"matrix is not Hermitian (max |A - A^dag| = {dev:.3e})")
        mat = (mat + mat.conj().T) / 2
        mat.setflags(write=False)
        self.mat = mat
        self.local_dim = int(local_dim)
        self.sites = int(sites)

    @property
    def dim(self):
        return self.mat.shape[0]

    def trace(self):
        return float(np.trace(self.mat).real)

    def __add__(self, other):
        self._check_compatible(other)
        return HermitianOp(self.mat + other.mat, self.local_dim)

    def __sub__(self, other):
        self._check_compatible(other)
        return HermitianOp(self.mat - other.mat, self.local_dim)

    def __mul__(self, c):
        return HermitianOp(self.mat * float(c), self.local_dim)

    __rmul__ = __mul__

    def _check_compatible(self, other):
        if self.local_dim != other.local_dim or self.sites != other.sites:
            raise ValueError("operators live on different spaces")

    def __repr__(self):
        return f"HermitianOp(d={self.local_dim}, sites={self.sites})"


class DensityMatrix:
    """HermitianOp restricted to the density operators: PSD, unit trace."""

    __slots__ = ("op",)

    PSD_TOL = 1e-10
    TRACE_TOL = 1e-10

    def __init__(self, op):
        if not isinstance(op, HermitianOp):
            op = HermitianOp(op)
        lo = float(np.linalg.eigvalsh(op.mat)[0])
        if lo < -self.PSD_TOL:
            raise ValueError(f"not positive semidefinite (min eigenvalue {lo:.3e})")
        tr = op.trace()
        if abs(tr - 1.0) > self.TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, expected 1")
        self.op = op

    @property
    def mat(self):
        return self.op.mat

    @property
    def local_dim(self):
        return self.op.local_dim

    @property
    def sites(self):
        return self.op.sites

    def __repr__(self):
        return f"DensityMatrix(d={self.local_dim}, sites={self.sites})"


def identity(dim, local_dim=2):
    return HermitianOp(np.eye(dim), local_dim)


def kron(a: HermitianOp, b: HermitianOp) -> HermitianOp:
    """Tensor (Kronecker) product; site counts add."""
    if a.local_dim != b.local_dim:
        raise ValueError(f"mismatched local_dim: {a.local_dim} vs {b.local_dim}")
    return HermitianOp(np.kron(a.mat, b.mat), a.local_dim)


def _as_tensor(op: HermitianOp):
    d, m = op.local_dim, op.sites
    return op.mat.reshape((d,) * (2 * m))


def partial_trace(op: HermitianOp, keep) -> HermitianOp:
    """Reduce to the given (1-based) sites, tracing out the rest.

    `keep` is an ordered sequence of distinct site indices; the output tensor
    factors appear in the order given. Trace and positivity are preserved.
    """
    keep = list(keep)
    m = op.sites
    if not keep:
        raise ValueError("keep set must be nonempty")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate site in keep={keep}")
    for s in keep:
        if not 1 <= s <= m:
            raise ValueError(f"site {s} out of range 1..{m}")
    d = op.local_dim
    t = _as_tensor(op)
    # einsum: kept sites get free indices, traced sites get repeated ones
    row = [0] * m
    col = [0] * m
    nxt = 0
    for s in keep:
        row[s - 1] = nxt
        col[s - 1] = nxt + len(keep)
        nxt += 1
    nxt = 2 * len(keep)
    for s in range(1, m + 1):
        if s not in keep:
            row[s - 1] = col[s - 1] = nxt
            nxt += 1
    out_idx = list(range(2 * len(keep)))
    red = np.einsum(t, row + col, out_idx)
    k = len(keep)
    return HermitianOp(red.reshape(d**k, d**k), d)


def permute_sites(op: HermitianOp, perm) -> HermitianOp:
    """Reorder tensor factors: output site k holds input site perm[k-1]."""
    m = op.sites
    perm = list(perm)
    if sorted(perm) != list(range(1, m + 1)):
        raise ValueError(f"perm must rearrange 1..{m}, got {perm}")
    d = op.local_dim
    t = _as_tensor(op)
    axes = [p - 1 for p in perm] + [m + p - 1 for p in perm]
    return HermitianOp(t.transpose(axes).reshape(d**m, d**m), d)


def embed_bond(h: HermitianOp, i: int, n: int) -> HermitianOp:
    """Place a two-site operator on the bond (i, i+1) of an n-site chain."""
    if h.sites != 2:
        raise ValueError("h must act on exactly 2 sites")
    if not 1 <= i <= n - 1:
        raise ValueError(f"bond index {i} out of range 1..{n - 1}")
    d = h.local_dim
    mat = h.mat
    if i > 1:
        mat = np.kron(np.eye(d ** (i - 1)), mat)
    if i < n - 1:
        mat = np.kron(mat, np.eye(d ** (n - i - 1)))
    return HermitianOp(mat, d)


def embed_bond_cyclic(h: HermitianOp, n: int) -> HermitianOp:
    """Place a two-site operator on the ring-closing bond (n, 1)."""
    if h.sites != 2:
        raise ValueError("h must act on exactly 2 sites")
    if n < 3:
        raise ValueError("cyclic embedding needs n >= 3")
    # put h on sites (1, 2) then shift all factors one step to the right
    chain = embed_bond(h, 1, n)
    return permute_sites(chain, [n] + list(range(1, n)))


def hermitian_eig(op: HermitianOp):
    """Eigenvalues (ascending) and orthonormal eigenvector columns."""
    try:
        vals, vecs = np.linalg.eigh(op.mat)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"eigendecomposition did not converge: {exc}") from exc
    return vals, vecs


def psd_project(op: HermitianOp) -> HermitianOp:
    """Frobenius-nearest positive semidefinite operator (eigenvalue clip)."""
    vals, vecs = hermitian_eig(op)
    clipped = np.maximum(vals, 0.0)
    return HermitianOp((vecs * clipped) @ vecs.conj().T, op.local_dim)


def operator_norm(op: HermitianOp) -> float:
    """Largest absolute eigenvalue."""
    vals = np.linalg.eigvalsh(op.mat)
    return float(max(abs(vals[0]), abs(vals[-1])))


def simplex_project(w):
    """Euclidean projection of a real vector onto {p >= 0, sum(p) = 1}."""
    u = np.sort(w)[::-1]
    css = np.cumsum(u)
    ks = np.arange(1, len(w) + 1)
    mask = u - (css - 1.0) / ks > 0
    k = int(ks[mask][-1])
    tau = (css[k - 1] - 1.0) / k
    return np.maximum(w - tau, 0.0)


def density_project(op: HermitianOp) -> DensityMatrix:
    """Frobenius projection onto the density operators (PSD, trace one).

    Eigenbasis is kept, the spectrum is projected onto the probability
    simplex.
    """
    vals, vecs = hermitian_eig(op)
    p = simplex_project(vals)
    mat = (vecs * p) @ vecs.conj().T
    mat = (mat + mat.conj().T) / 2
    return DensityMatrix(HermitianOp(mat, op.local_dim))
