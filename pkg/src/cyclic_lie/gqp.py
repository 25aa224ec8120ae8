"""The solvable model groups G(q, p, Omega).

The Lie algebra has orthonormal basis ``(h_1..h_q, f_1..f_p)`` and the only
nonzero brackets are ``[h_i, f_j] = omega_ij f_j``.  ``L_i`` denotes the i-th
row of Omega, ``Omega_j`` its j-th column.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .algebra import (
    DEFAULT_TOL,
    InvariantError,
    LieAlgebra,
    MetricLieAlgebra,
    ToleranceConfig,
    ValidationError,
    _frozen,
    check_cyclic,
)
from .connection import check_vectorial, curvature_report

MAX_PERMUTATION_COLUMNS = 10


@dataclass(frozen=True)
class OmegaMatrix:
    entries: np.ndarray

    def __post_init__(self):
        w = np.array(self.entries, dtype=float)
        if w.ndim == 1:
            w = w[None, :]
        if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
            raise ValidationError(f"Omega must be a non-empty q x p matrix, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValidationError("Omega entries must be finite")
        sv = np.linalg.svd(w, compute_uv=False)
        if w.shape[0] > w.shape[1] or sv.min() <= DEFAULT_TOL.eps_rank * max(1.0, float(np.abs(w).max())):
            raise ValidationError(
                f"Omega^t must have rank q={w.shape[0]}; singular values {sv.tolist()}"
            )
        object.__setattr__(self, "entries", _frozen(w))

    @property
    def q(self) -> int:
        return self.entries.shape[0]

    @property
    def p(self) -> int:
        return self.entries.shape[1]

    @property
    def dim(self) -> int:
        return self.q + self.p

    @property
    def scale(self) -> float:
        return max(1.0, float(np.abs(self.entries).max()))

    @property
    def column_gram(self) -> np.ndarray:
        """``<Omega_i, Omega_j>_0``."""
        return self.entries.T @ self.entries


def build(omega: OmegaMatrix) -> MetricLieAlgebra:
    q, p = omega.q, omega.p
    n = q + p
    c = np.zeros((n, n, n))
    for i in range(q):
        for j in range(p):
            c[i, q + j, q + j] = omega.entries[i, j]
            c[q + j, i, q + j] = -omega.entries[i, j]
    mla = MetricLieAlgebra(LieAlgebra(c), np.eye(n))
    if not check_cyclic(mla):
        raise InvariantError("model algebra failed the cyclic check")
    return mla


@dataclass(frozen=True)
class GqpClosedForms:
    """Curvature data of G(q, p, Omega) assembled from closed formulas.

    Every tensor is full-size in the basis ``(h, f)``; entries not produced
    by a formula (or by the tensor's own symmetries from one) are exactly 0.
    """

    levi_civita: np.ndarray
    curvature: np.ndarray
    ricci: np.ndarray
    scalar: float
    nabla_ricci: np.ndarray
    nabla_K: np.ndarray


def closed_forms(omega: OmegaMatrix) -> GqpClosedForms:
    w = omega.entries
    q, p = omega.q, omega.p
    n = q + p
    g = omega.column_gram
    H = list(range(q))
    F = [q + j for j in range(p)]

    lc = np.zeros((n, n, n))
    for i in range(p):
        lc[F[i], F[i], :q] = w[:, i]
        for j in range(q):
            lc[F[i], H[j], F[i]] = -w[j, i]

    K = np.zeros((n,) * 4)
    for i in range(p):
        for j in range(p):
            if i != j:
                K[F[i], F[j], F[i], F[j]] = -g[i, j]
                K[F[j], F[i], F[i], F[j]] = g[i, j]
        for j in range(q):
            for k in range(q):
                K[F[i], H[j], F[i], H[k]] = -w[j, i] * w[k, i]
                K[H[j], F[i], F[i], H[k]] = w[j, i] * w[k, i]
                K[F[i], H[j], H[k], F[i]] = w[j, i] * w[k, i]
                K[H[j], F[i], H[k], F[i]] = -w[j, i] * w[k, i]

    ric = np.zeros((n, n))
    ric[:q, :q] = -w @ w.T
    for j in range(p):
        ric[F[j], F[j]] = -g[:, j].sum()

    row_sums = w.sum(axis=1)
    scalar = float(-np.sum(w * w) - np.sum(row_sums**2))

    dric = np.zeros((n, n, n))
    for i in range(p):
        for k in range(q):
            val = np.sum((w[k, :] - w[k, i]) * g[:, i])
            dric[F[i], F[i], H[k]] = val
            dric[F[i], H[k], F[i]] = val

    dK = np.zeros((n,) * 5)
    # (nabla_{f_i} K)(f_i, f_k) f_k along h_m, with its (x, y) and (z, out) partners
    for i in range(p):
        for k in range(p):
            if i == k:
                continue
            for m in range(q):
                val = g[i, k] * (w[m, i] - w[m, k])
                dK[F[i], F[i], F[k], F[k], H[m]] = val
                dK[F[i], F[k], F[i], F[k], H[m]] = -val
                dK[F[i], F[i], F[k], H[m], F[k]] = -val
                dK[F[i], F[k], F[i], H[m], F[k]] = val
    # (nabla_{f_i} K)(f_j, h_k) f_i along f_j, same partners
    for i in range(p):
        for j in range(p):
            if i == j:
                continue
            for k in range(q):
                val = (w[k, i] - w[k, j]) * g[j, i]
                dK[F[i], F[j], H[k], F[i], F[j]] = val
                dK[F[i], H[k], F[j], F[i], F[j]] = -val
                dK[F[i], F[j], H[k], F[j], F[i]] = -val
                dK[F[i], H[k], F[j], F[j], F[i]] = val

    return GqpClosedForms(
        levi_civita=lc, curvature=K, ricci=ric, scalar=scalar, nabla_ricci=dric, nabla_K=dK
    )


@dataclass(frozen=True)
class ClassificationFlags:
    cyclic: bool
    constant_curvature: Optional[float]
    negative_sectional: bool
    negative_ricci: bool
    einstein: Optional[float]
    ricci_parallel: bool
    locally_symmetric: bool
    vectorial: Optional[np.ndarray]

    def as_dict(self) -> dict:
        return {
            "cyclic": self.cyclic,
            "constant_curvature": self.constant_curvature,
            "negative_sectional": self.negative_sectional,
            "negative_ricci": self.negative_ricci,
            "einstein": self.einstein,
            "ricci_parallel": self.ricci_parallel,
            "locally_symmetric": self.locally_symmetric,
            "vectorial": None if self.vectorial is None else self.vectorial.tolist(),
        }


def classify(omega: OmegaMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> ClassificationFlags:
    w = omega.entries
    q, p = omega.q, omega.p
    g = omega.column_gram
    thr = tol.eps_eq * omega.scale**2
    col_sums = g.sum(axis=0)  # sum_l <Omega_l, Omega_j>

    all_equal = q == 1 and np.abs(w - w[0, 0]).max() <= tol.eps_eq * omega.scale
    negative_sectional = q == 1 and (
        bool(np.all(w > tol.eps_eq * omega.scale)) or bool(np.all(w < -tol.eps_eq * omega.scale))
    )

    rows = w @ w.T
    row_norms = np.diag(rows)
    einstein = None
    if (
        np.abs(rows - np.diag(row_norms)).max() <= thr
        and np.ptp(row_norms) <= thr
        and np.abs(col_sums - row_norms[0]).max() <= thr
    ):
        einstein = float(-row_norms[0])

    # sum_l (omega_jl - omega_ji) <Omega_l, Omega_i> for every j, i
    riccip = w @ g - w * col_sums[None, :]
    ricci_parallel = bool(np.abs(riccip).max() <= thr * omega.scale)

    locally_symmetric = _columns_in_orthogonal_family(w, tol)

    constant_curvature = None
    vectorial = None
    if all_equal:
        lam = float(w[0, 0])
        constant_curvature = -lam * lam
        vectorial = np.zeros(q + p)
        vectorial[0] = lam

    flags = ClassificationFlags(
        cyclic=True,
        constant_curvature=constant_curvature,
        negative_sectional=negative_sectional,
        negative_ricci=bool(np.all(col_sums > thr)),
        einstein=einstein,
        ricci_parallel=ricci_parallel,
        locally_symmetric=locally_symmetric,
        vectorial=vectorial,
    )
    _guard_einstein(omega, flags, tol)
    return flags


def _columns_in_orthogonal_family(w: np.ndarray, tol: ToleranceConfig) -> bool:
    scale = max(1.0, float(np.abs(w).max()))
    cols = [c for c in w.T if np.linalg.norm(c) > tol.eps_eq * scale]
    distinct = []
    for c in cols:
        if not any(np.linalg.norm(c - d) <= tol.eps_eq * scale for d in distinct):
            distinct.append(c)
    for a, b in itertools.combinations(distinct, 2):
        if abs(a @ b) > tol.eps_eq * scale**2:
            return False
    return True


def _guard_einstein(omega: OmegaMatrix, flags: ClassificationFlags, tol: ToleranceConfig) -> None:
    mla = build(omega)
    _, _, data = curvature_report(mla, tol)
    ric = data.ricci
    lam = float(np.trace(ric)) / mla.dim
    generic = np.abs(ric - lam * np.eye(mla.dim)).max() <= tol.eps_eq * omega.scale**2
    if generic != (flags.einstein is not None):
        raise InvariantError("Einstein verdict disagrees with the generic Ricci tensor")
    if flags.vectorial is not None and check_vectorial(mla, tol) is None:
        raise InvariantError("vectorial verdict disagrees with the bracket test")


@dataclass(frozen=True)
class IsometryWitness:
    """``a = Q b P`` with ``P`` the permutation matrix of ``perm``.

    Column ``j`` of ``a`` equals ``Q`` applied to column ``perm[j]`` of ``b``.
    """

    Q: np.ndarray
    perm: tuple
    residual: float

    @property
    def P(self) -> np.ndarray:
        p = len(self.perm)
        m = np.zeros((p, p))
        for j, k in enumerate(self.perm):
            m[k, j] = 1.0
        return m


def isometric(a: OmegaMatrix, b: OmegaMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> Optional[IsometryWitness]:
    """Search for ``Q`` orthogonal and a column permutation with ``a = Q b P``.

    Returns ``None`` when the shapes differ.  Column permutations are found
    by backtracking on the column Gram matrices; the first consistent one
    (lexicographic in ``perm``) is returned.
    """
    if a.q != b.q or a.p != b.p:
        return None
    p = a.p
    if p > MAX_PERMUTATION_COLUMNS:
        raise ValidationError(f"permutation search is capped at p <= {MAX_PERMUTATION_COLUMNS}")
    ga, gb = a.column_gram, b.column_gram
    scale = max(a.scale, b.scale)
    thr = tol.eps_eq * scale**2

    sig_a = [np.sort(row) for row in ga]
    sig_b = [np.sort(row) for row in gb]
    candidates = [
        [k for k in range(p) if abs(ga[j, j] - gb[k, k]) <= thr and np.abs(sig_a[j] - sig_b[k]).max() <= thr]
        for j in range(p)
    ]
    if any(not c for c in candidates):
        return None
    if np.abs(np.sort(np.diag(ga)) - np.sort(np.diag(gb))).max() > thr:
        return None

    perm = [-1] * p
    used = [False] * p

    def search(j):
        if j == p:
            witness = _solve_rotation(a, b, tuple(perm), tol)
            return witness
        for k in candidates[j]:
            if used[k]:
                continue
            if any(abs(ga[j, jj] - gb[k, perm[jj]]) > thr for jj in range(j)):
                continue
            perm[j] = k
            used[k] = True
            found = search(j + 1)
            used[k] = False
            if found is not None:
                return found
        perm[j] = -1
        return None

    return search(0)


def _solve_rotation(a: OmegaMatrix, b: OmegaMatrix, perm: tuple, tol: ToleranceConfig) -> Optional[IsometryWitness]:
    target = a.entries
    source = b.entries[:, list(perm)]
    # greedy pivoted column selection for a well-conditioned q x q block
    _, _, piv = scipy.linalg.qr(source, pivoting=True)
    cols = np.sort(piv[: a.q])
    q_mat = np.linalg.solve(source[:, cols].T, target[:, cols].T).T
    scale = max(a.scale, b.scale)
    if np.abs(q_mat @ q_mat.T - np.eye(a.q)).max() > tol.eps_eq * scale**2:
        return None
    residual = float(np.abs(target - q_mat @ source).max())
    if residual > tol.eps_eq * scale:
        return None
    return IsometryWitness(Q=q_mat, perm=perm, residual=residual)


def normalize_square(omega: OmegaMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> OmegaMatrix:
    """Return ``D P`` from ``Omega = O S`` (polar) and ``S = P D P^t``.

    The result defines a Lie group isomorphic to G(q, q, Omega) and has the
    same singular values as Omega.  It is not claimed to be isometric.
    """
    w = omega.entries
    if omega.q != omega.p:
        raise ValidationError("normalize_square needs a square Omega")
    if abs(np.linalg.det(w)) <= tol.eps_rank * omega.scale**omega.q:
        raise ValidationError("normalize_square needs an invertible Omega")
    _, s = scipy.linalg.polar(w, side="right")
    d, vecs = np.linalg.eigh(0.5 * (s + s.T))
    return OmegaMatrix(np.diag(d) @ vecs)


def metric_at(omega: OmegaMatrix, s, t=None) -> np.ndarray:
    """Coordinate matrix of the left-invariant metric at the point ``(s, t)``."""
    s = np.asarray(s, dtype=float)
    if s.shape != (omega.q,):
        raise ValidationError(f"s must have length {omega.q}")
    if t is not None and np.shape(t) != (omega.p,):
        raise ValidationError(f"t must have length {omega.p}")
    return np.diag(np.concatenate([np.ones(omega.q), np.exp(-2.0 * (s @ omega.entries))]))
