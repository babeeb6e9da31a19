"""Dense-matrix brute force for small copy counts.

Explicit states, exact twirls and square-root-measurement discrimination,
kept deliberately independent of the combinatorial modules so the two routes
can check each other.  Everything lives in the computational product basis;
dimensions are capped to keep dense linear algebra honest.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Optional, Sequence, Union

import numpy as np

from .distinguish import LatticeCodebook
from .rep_core import Model

DENSE_DIM_CAP = 4096  # largest full Hilbert-space dimension handled densely
SU2_COPY_CAP = 8

_HERM_TOL = 1e-10
_TRACE_TOL = 1e-10
_NORM_TOL = 1e-12
_EIG_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class PureState:
    """Dense state vector on (C^t)^{x n} tensored with an optional reference."""

    amplitudes: np.ndarray
    n: int
    t: int
    ref_dim: int = 1

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", amps)
        expected = self.t**self.n * self.ref_dim
        if amps.shape != (expected,):
            raise ValueError(
                f"amplitude vector has length {amps.shape[0]}, expected {expected}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {_NORM_TOL}")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Dense density matrix with the same dimension metadata as PureState."""

    matrix: np.ndarray
    n: int
    t: int
    ref_dim: int = 1

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        expected = self.t**self.n * self.ref_dim
        if m.shape != (expected, expected):
            raise ValueError(f"matrix shape {m.shape}, expected square dim {expected}")
        if np.abs(m - m.conj().T).max() > _HERM_TOL:
            raise ValueError("matrix is not Hermitian within 1e-10")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"trace {tr} deviates from 1 beyond {_TRACE_TOL}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def validate(self) -> None:
        """Spectral positivity check (the expensive invariant, run on demand)."""
        low = float(np.linalg.eigvalsh(self.matrix).min())
        if low < -1e-10:
            raise ValueError(f"negative eigenvalue {low}")


def pure_density(psi: PureState) -> DensityOperator:
    """Projector |psi><psi| as a DensityOperator."""
    v = psi.amplitudes
    return DensityOperator(np.outer(v, v.conj()), n=psi.n, t=psi.t, ref_dim=psi.ref_dim)


@dataclass(frozen=True, eq=False)
class Codebook:
    """Finite family of group elements: phase vectors or SU(2) matrices."""

    kind: str  # "mp" or "su2"
    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.kind == "mp":
            for theta in self.elements:
                if any(not 0.0 <= ph < 2.0 * math.pi for ph in theta):
                    raise ValueError(f"phases must lie in [0, 2pi), got {theta}")
        elif self.kind == "su2":
            eye = np.eye(2)
            for u in self.elements:
                u = np.asarray(u, dtype=complex)
                if u.shape != (2, 2):
                    raise ValueError("su2 elements must be 2x2 matrices")
                if np.abs(u @ u.conj().T - eye).max() > 1e-10:
                    raise ValueError("su2 element is not unitary within 1e-10")
                if abs(np.linalg.det(u) - 1.0) > 1e-10:
                    raise ValueError("su2 element determinant differs from 1")
        else:
            raise ValueError(f"unknown codebook kind {self.kind!r}")

    def __len__(self) -> int:
        return len(self.elements)


def codebook_from_lattice(lattice: LatticeCodebook) -> Codebook:
    return Codebook(kind="mp", elements=lattice.elements)


def mp_unitary(theta: Sequence[float], t: int) -> np.ndarray:
    """diag(1, e^{i theta_1}, ..., e^{i theta_{t-1}})."""
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.shape != (t - 1,):
        raise ValueError(f"need {t - 1} phases, got {theta.shape[0]}")
    return np.diag(np.exp(1j * np.concatenate(([0.0], theta))))


def tensor_power_apply(u: np.ndarray, n: int, psi: PureState) -> PureState:
    """Apply u on every one of the n factors, leaving the reference alone."""
    u = np.asarray(u, dtype=complex)
    t = psi.t
    if u.shape != (t, t):
        raise ValueError(f"unitary shape {u.shape} does not match local dim {t}")
    if n != psi.n:
        raise ValueError(f"copy count {n} does not match state metadata {psi.n}")
    amps = psi.amplitudes.reshape((t,) * n + (psi.ref_dim,))
    for axis in range(n):
        amps = np.moveaxis(np.tensordot(u, amps, axes=([1], [axis])), 0, axis)
    return PureState(amps.reshape(-1), n=n, t=t, ref_dim=psi.ref_dim)


def mp_optimal_state(n: int) -> PureState:
    """Uniform superposition of the n+1 step strings 0^j 1^{n-j} (t = 2).

    This is the capacity-achieving input for the single-phase model; its
    twirl is flat on the n+1 weight blocks.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if 2**n > DENSE_DIM_CAP:
        raise ValueError(f"2^{n} exceeds the dense cap {DENSE_DIM_CAP}")
    amps = np.zeros(2**n, dtype=complex)
    for ones in range(n + 1):
        amps[2**ones - 1] = 1.0  # trailing block of `ones` ones
    return PureState(amps / math.sqrt(n + 1), n=n, t=2)


def noon_state(n: int) -> PureState:
    """(|0...0> + |1...1>)/sqrt(2)."""
    if n < 1:
        raise ValueError("n must be positive")
    if 2**n > DENSE_DIM_CAP:
        raise ValueError(f"2^{n} exceeds the dense cap {DENSE_DIM_CAP}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return PureState(amps, n=n, t=2)


def _digit_counts(n: int, t: int) -> np.ndarray:
    """counts[x, j-1] = how often digit j appears in the n-digit base-t index x."""
    d = t**n
    counts = np.zeros((d, t - 1))
    rem = np.arange(d)
    for _ in range(n):
        rem, dig = np.divmod(rem, t)
        for j in range(1, t):
            counts[:, j - 1] += dig == j
    return counts


def mp_twirl(
    rho: DensityOperator, n: int, t: int, grid_points: Optional[int] = None
) -> DensityOperator:
    """Exact phase-group twirl via a finite grid average.

    Matrix elements depend on each phase through trigonometric polynomials of
    degree at most n, so averaging over any grid of N >= n+1 points per axis
    already equals the continuous Haar average.
    """
    if (rho.n, rho.t) != (n, t):
        raise ValueError("density operator metadata does not match (n, t)")
    N = n + 1 if grid_points is None else int(grid_points)
    if N < n + 1:
        raise ValueError(f"need at least n+1 = {n + 1} grid points per axis")
    counts = _digit_counts(n, t)
    if rho.ref_dim > 1:
        counts = np.repeat(counts, rho.ref_dim, axis=0)
    axis = 2.0 * np.pi * np.arange(N) / N
    thetas = np.array(list(itertools.product(axis, repeat=t - 1)))
    v = np.exp(1j * (counts @ thetas.T))  # dim x N^(t-1)
    mask = (v @ v.conj().T) / v.shape[1]  # 1 where weights agree, else averages to 0
    return DensityOperator(rho.matrix * mask, n=n, t=t, ref_dim=rho.ref_dim)


@lru_cache(maxsize=None)
def schur_basis_su2(n: int):
    """Orthonormal basis aligning (C^2)^{x n} with its total-spin blocks.

    Returns (basis, blocks).  basis is real orthogonal, 2^n x 2^n; blocks is
    a tuple of (two_j, mult, offset) and the block occupies columns
    offset .. offset + (two_j+1)*mult, spin projection major (m = j down to
    -j), multiplicity index minor.  Columns with equal multiplicity index are
    related by the lowering operator, which is what makes the factorization
    U_j x C^mult explicit.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > SU2_COPY_CAP:
        raise ValueError(f"n must stay <= {SU2_COPY_CAP} for dense feasibility")
    d = 2**n
    by_ones = [[] for _ in range(n + 1)]
    for x in range(d):
        by_ones[bin(x).count("1")].append(x)

    jminus = np.zeros((d, d))
    for x in range(d):
        for i in range(n):
            if not (x >> i) & 1:
                jminus[x | (1 << i), x] += 1.0

    cols = []
    blocks = []
    offset = 0
    for k in range(n // 2 + 1):
        two_j = n - 2 * k
        idx_k = by_ones[k]
        if k == 0:
            null = np.eye(1)
        else:
            idx_prev = by_ones[k - 1]
            pos_prev = {x: r for r, x in enumerate(idx_prev)}
            raise_map = np.zeros((len(idx_prev), len(idx_k)))
            for c, x in enumerate(idx_k):
                for i in range(n):
                    if (x >> i) & 1:
                        raise_map[pos_prev[x & ~(1 << i)], c] += 1.0
            _, s, vt = np.linalg.svd(raise_map)
            rank = int(np.sum(s > 1e-10))
            null = vt[rank:].T
        mult = null.shape[1]
        expected = comb(n, k) - (comb(n, k - 1) if k >= 1 else 0)
        if mult != expected:
            raise ArithmeticError(f"multiplicity {mult} != {expected} at n={n}, k={k}")
        highest = np.zeros((d, mult))
        highest[idx_k, :] = null
        block_cols = [highest]
        vecs = highest
        for two_m in range(two_j, -two_j, -2):
            coef = math.sqrt((two_j + two_m) * (two_j - two_m + 2)) / 2.0
            vecs = (jminus @ vecs) / coef
            block_cols.append(vecs)
        cols.append(np.concatenate(block_cols, axis=1))
        blocks.append((two_j, mult, offset))
        offset += (two_j + 1) * mult

    basis = np.concatenate(cols, axis=1)
    gram_err = np.abs(basis.T @ basis - np.eye(d)).max()
    if gram_err > 1e-10:
        raise ArithmeticError(f"schur basis lost orthonormality: {gram_err}")
    return basis, tuple(blocks)


def su2_twirl(rho: DensityOperator, n: int) -> DensityOperator:
    """Haar average over SU(2) acting as U^{x n} (x) I_ref.

    Conjugates into the Schur-aligned basis, replaces each isotypic block by
    (I/d_j) (x) partial trace over the spin factor, and conjugates back.
    """
    if rho.t != 2:
        raise ValueError("su2 twirl needs local dimension 2")
    if rho.n != n:
        raise ValueError(f"copy count {n} does not match metadata {rho.n}")
    basis, blocks = schur_basis_su2(n)
    r = rho.ref_dim
    w = basis if r == 1 else np.kron(basis, np.eye(r))
    sigma = w.T @ rho.matrix @ w
    out = np.zeros_like(sigma)
    for two_j, mult, off in blocks:
        dim_u = two_j + 1
        width = mult * r
        lo = off * r
        hi = lo + dim_u * width
        blk = sigma[lo:hi, lo:hi].reshape(dim_u, width, dim_u, width)
        reduced = np.einsum("iaib->ab", blk)
        out[lo:hi, lo:hi] = np.kron(np.eye(dim_u) / dim_u, reduced)
    return DensityOperator(w @ out @ w.T, n=n, t=2, ref_dim=r)


def su2_optimal_state(n: int) -> PureState:
    """Capacity-achieving SU(2) input: per-block maximally entangled states
    with the reference, block weighted by dim^2 / (sum of squared dims)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > SU2_COPY_CAP:
        raise ValueError(f"n must stay <= {SU2_COPY_CAP} for dense feasibility")
    basis, blocks = schur_basis_su2(n)
    ref = n + 1  # >= every block dimension
    total = sum((two_j + 1) ** 2 for two_j, _, _ in blocks)
    schur_amps = np.zeros(2**n * ref, dtype=complex)
    for two_j, mult, off in blocks:
        dim_u = two_j + 1
        # sqrt(p_j / dim) on each of the dim entangled pairs
        amp = dim_u / math.sqrt(total) / math.sqrt(dim_u)
        for i in range(dim_u):
            col = off + i * mult + (i // ref)
            schur_amps[col * ref + (i % ref)] = amp
    full = (basis @ schur_amps.reshape(2**n, ref)).reshape(-1)
    return PureState(full, n=n, t=2, ref_dim=ref)


def von_neumann_entropy(rho: DensityOperator) -> float:
    """-sum eig log eig over eigenvalues above 1e-12, in nats."""
    tr = complex(np.trace(rho.matrix)).real
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"trace {tr} deviates from 1 beyond 1e-8")
    eigs = np.linalg.eigvalsh(rho.matrix)
    if float(eigs.min()) < -1e-10:
        raise ValueError(f"negative eigenvalue {eigs.min()}")
    kept = eigs[eigs > _EIG_FLOOR]
    return float(-np.sum(kept * np.log(kept)))


def _element_unitary(codebook: Codebook, element, t: int) -> np.ndarray:
    if codebook.kind == "mp":
        return mp_unitary(element, t)
    if t != 2:
        raise ValueError("su2 codebooks act on local dimension 2")
    return np.asarray(element, dtype=complex)


def srm_discrimination(codebook: Codebook, psi: PureState, n: int, t: int) -> float:
    """Average success of the square-root measurement on {f(g_j)|psi>}.

    Success = (1/M) sum_j sqrt(G)_{jj}^2 with G the Gram matrix of the coded
    states; rank-deficient Gram matrices trigger a degenerate-codebook
    warning and are handled through the pseudo-inverse square root.
    """
    if len(codebook) < 1:
        raise ValueError("codebook must contain at least one element")
    if (psi.n, psi.t) != (n, t):
        raise ValueError("state metadata does not match (n, t)")
    states = [
        tensor_power_apply(_element_unitary(codebook, g, t), n, psi).amplitudes
        for g in codebook.elements
    ]
    gram = np.array([[np.vdot(a, b) for b in states] for a in states])
    eigs, vecs = np.linalg.eigh(gram)
    if float(eigs.min()) < _EIG_FLOOR:
        warnings.warn(
            f"degenerate codebook: Gram eigenvalue {eigs.min():.3e} below "
            f"{_EIG_FLOOR}; measurement restricted to the span",
            RuntimeWarning,
        )
    root = vecs @ np.diag(np.sqrt(np.clip(eigs, 0.0, None))) @ vecs.conj().T
    diag = np.real(np.diag(root))
    return float(np.mean(diag**2))


def empirical_mi(psi: PureState, model: Union[Model, str], n: int, t: int) -> float:
    """Entropy of the twirled input: the accessible information of this state."""
    model = Model(model)
    rho = pure_density(psi)
    if model is Model.MULTI_PHASE:
        return von_neumann_entropy(mp_twirl(rho, n, t))
    if t != 2:
        raise ValueError("dense SU(t) twirl is only implemented for t = 2")
    return von_neumann_entropy(su2_twirl(rho, n))


def haar_su2(rng: np.random.Generator) -> np.ndarray:
    """One Haar-distributed SU(2) element."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    q = q * (r.diagonal() / np.abs(r.diagonal()))
    return q / np.sqrt(np.linalg.det(q))


def random_pure_state(
    rng: np.random.Generator, n: int, t: int, ref_dim: int = 1
) -> PureState:
    """Haar-random state vector at the given dimensions."""
    d = t**n * ref_dim
    if d > DENSE_DIM_CAP:
        raise ValueError(f"dimension {d} exceeds the dense cap {DENSE_DIM_CAP}")
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(v / np.linalg.norm(v), n=n, t=t, ref_dim=ref_dim)
