"""Lie algebras with inner products and their structural queries.

Structure constants are stored dense as ``C[i, j, k]`` with
``[e_i, e_j] = sum_k C[i, j, k] e_k``.  Vectors are coordinate arrays in the
basis ``(e_1, ..., e_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
import scipy.linalg


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class InvariantError(RuntimeError):
    """An internal consistency check failed on a computed object."""


class NotCyclicError(ValidationError):
    """Raised by operations that are only defined for cyclic metrics."""


@dataclass(frozen=True)
class ToleranceConfig:
    eps_rank: float = 1e-9
    eps_eq: float = 1e-9
    eps_cluster: float = 1e-7

    def __post_init__(self):
        for name in ("eps_rank", "eps_eq", "eps_cluster"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be strictly positive")


DEFAULT_TOL = ToleranceConfig()


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional real Lie algebra given by structure constants.

    Only antisymmetry is enforced on construction; the Jacobi identity is a
    separate query (:func:`check_jacobi`) so that broken inputs can be
    represented and rejected explicitly.
    """

    structure: np.ndarray

    def __post_init__(self):
        c = _frozen(self.structure)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] < 1:
            raise ValidationError(f"structure must have shape (n, n, n), got {c.shape}")
        if not np.all(np.isfinite(c)):
            raise ValidationError("structure constants must be finite")
        scale = max(1.0, float(np.abs(c).max()))
        if np.abs(c + c.transpose(1, 0, 2)).max() > 1e-12 * scale:
            raise ValidationError("structure constants are not antisymmetric in (i, j)")
        object.__setattr__(self, "structure", c)

    @property
    def dim(self) -> int:
        return self.structure.shape[0]

    @cached_property
    def ad(self) -> np.ndarray:
        """``ad[i]`` is the matrix of ``ad_{e_i}`` acting on coordinate columns."""
        # (ad_i)[k, j] = C[i, j, k]
        return _frozen(self.structure.transpose(0, 2, 1))

    @property
    def scale(self) -> float:
        return max(1.0, float(np.abs(self.structure).max()))

    @classmethod
    def from_brackets(cls, dim: int, brackets) -> "LieAlgebra":
        """Build from ``{(i, j): coeffs}`` with ``i < j``; other pairs follow by antisymmetry."""
        c = np.zeros((dim, dim, dim))
        for (i, j), coeffs in dict(brackets).items():
            if not (0 <= i < j < dim):
                raise ValidationError(f"bracket index pair ({i}, {j}) must satisfy 0 <= i < j < {dim}")
            coeffs = np.asarray(coeffs, dtype=float)
            if coeffs.shape != (dim,):
                raise ValidationError(f"bracket ({i}, {j}) needs {dim} coefficients")
            c[i, j] = coeffs
            c[j, i] = -coeffs
        return cls(c)

    @classmethod
    def abelian(cls, dim: int) -> "LieAlgebra":
        return cls(np.zeros((dim, dim, dim)))


@dataclass(frozen=True)
class MetricLieAlgebra:
    """A Lie algebra together with a positive-definite Gram matrix."""

    algebra: LieAlgebra
    gram: np.ndarray = field(default=None)

    def __post_init__(self):
        n = self.algebra.dim
        g = np.eye(n) if self.gram is None else np.array(self.gram, dtype=float)
        if g.shape != (n, n):
            raise ValidationError(f"gram must be {n}x{n}, got {g.shape}")
        if not np.all(np.isfinite(g)):
            raise ValidationError("gram must be finite")
        gscale = max(1.0, float(np.abs(g).max()))
        if np.abs(g - g.T).max() > 1e-12 * gscale:
            raise ValidationError("gram is not symmetric")
        g = 0.5 * (g + g.T)
        if np.linalg.eigvalsh(g).min() <= DEFAULT_TOL.eps_rank * gscale:
            raise ValidationError("gram is not positive definite")
        object.__setattr__(self, "gram", _frozen(g))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def structure(self) -> np.ndarray:
        return self.algebra.structure

    @property
    def scale(self) -> float:
        return max(self.algebra.scale, float(np.abs(self.gram).max()))

    @cached_property
    def cho(self):
        return scipy.linalg.cho_factor(self.gram, lower=True)

    @cached_property
    def orthonormal_frame(self) -> np.ndarray:
        """Columns form a gram-orthonormal basis (upper-triangular change of basis)."""
        low = np.linalg.cholesky(self.gram)
        return _frozen(scipy.linalg.solve_triangular(low.T, np.eye(self.dim)))

    def inner(self, u, v) -> float:
        return float(np.asarray(u) @ self.gram @ np.asarray(v))

    def solve_gram(self, rhs) -> np.ndarray:
        return scipy.linalg.cho_solve(self.cho, rhs)

    def ad_transpose(self, i: int) -> np.ndarray:
        """Gram-adjoint of ``ad_{e_i}``: ``G^{-1} ad_i^T G``."""
        return self.solve_gram(self.algebra.ad[i].T @ self.gram)


AlgebraLike = Union[LieAlgebra, MetricLieAlgebra]


def _algebra(x: AlgebraLike) -> LieAlgebra:
    return x.algebra if isinstance(x, MetricLieAlgebra) else x


def _gram(x: AlgebraLike) -> np.ndarray:
    return x.gram if isinstance(x, MetricLieAlgebra) else np.eye(x.dim)


def change_basis(x: AlgebraLike, basis) -> AlgebraLike:
    """Re-express ``x`` in the basis whose vectors are the columns of ``basis``.

    Returns the same kind of object it was given; the gram (if any) becomes
    ``basis^T G basis``.
    """
    t = np.asarray(basis, dtype=float)
    alg = _algebra(x)
    if t.shape != (alg.dim, alg.dim):
        raise ValidationError("change of basis must be square of size dim")
    t_inv = np.linalg.inv(t)
    c = np.einsum("ia,jb,ijk,ck->abc", t, t, alg.structure, t_inv, optimize=True)
    c = 0.5 * (c - c.transpose(1, 0, 2))
    new = LieAlgebra(c)
    if isinstance(x, MetricLieAlgebra):
        g = t.T @ x.gram @ t
        return MetricLieAlgebra(new, 0.5 * (g + g.T))
    return new


def restrict(x: MetricLieAlgebra, basis) -> MetricLieAlgebra:
    """Metric subalgebra spanned by the gram-orthonormal columns of ``basis``.

    Brackets are projected back onto the span; callers are responsible for
    the span being closed under the bracket.
    """
    w = np.asarray(basis, dtype=float)
    c = np.einsum("ia,jb,ijk->abk", w, w, x.structure)
    coords = np.einsum("abk,kl,lc->abc", c, x.gram, w)
    coords = 0.5 * (coords - coords.transpose(1, 0, 2))
    return MetricLieAlgebra(LieAlgebra(coords), w.T @ x.gram @ w)


def bracket(x: AlgebraLike, u, v) -> np.ndarray:
    alg = _algebra(x)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != (alg.dim,) or v.shape != (alg.dim,):
        raise ValidationError(f"vectors must have length {alg.dim}")
    return np.einsum("i,j,ijk->k", u, v, alg.structure)


def check_jacobi(x: AlgebraLike, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    alg = _algebra(x)
    c = alg.structure
    # [e_i, [e_j, e_k]] = sum_m C[j,k,m] [e_i, e_m]
    inner = np.einsum("jkm,imn->ijkn", c, c)
    jac = inner + inner.transpose(1, 2, 0, 3) + inner.transpose(2, 0, 1, 3)
    return bool(np.abs(jac).max() <= tol.eps_eq * alg.scale**2)


def cyclic_defect(mla: MetricLieAlgebra) -> np.ndarray:
    """Trilinear form ``<[X,Y],Z> + <[Y,Z],X> + <[Z,X],Y>`` on basis triples."""
    a = np.einsum("ijl,lk->ijk", mla.structure, mla.gram)
    return a + a.transpose(1, 2, 0) + a.transpose(2, 0, 1)


def check_cyclic(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether the cyclic sum of ``<[X, Y], Z>`` vanishes.

    The sum is trilinear and totally antisymmetric, so it suffices to test
    basis triples ``i < j < k``; triples with a repeated index vanish
    identically.
    """
    n = mla.dim
    if n < 3:
        return True
    d = cyclic_defect(mla)
    i, j, k = np.meshgrid(*(np.arange(n),) * 3, indexing="ij")
    worst = np.abs(d[(i < j) & (j < k)]).max()
    return bool(worst <= tol.eps_eq * mla.scale**2)


def killing_form(x: AlgebraLike) -> np.ndarray:
    ad = _algebra(x).ad
    b = np.einsum("iab,jba->ij", ad, ad)
    return 0.5 * (b + b.T)


def mean_curvature_vector(mla: MetricLieAlgebra) -> np.ndarray:
    """The vector ``H`` with ``<H, u> = tr(ad_u)``."""
    traces = np.einsum("ijj->i", mla.structure)
    return mla.solve_gram(traces)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


def _orthonormalize(vectors: np.ndarray, gram: np.ndarray, drop_below: float = 1e-10) -> np.ndarray:
    """Modified Gram-Schmidt w.r.t. ``gram``, two passes, dropping dependent columns."""
    out = []
    for v in np.asarray(vectors, dtype=float).T:
        w = v.copy()
        for _ in range(2):
            for q in out:
                w = w - (q @ gram @ w) * q
        norm = np.sqrt(max(w @ gram @ w, 0.0))
        if norm > drop_below * max(1.0, np.sqrt(abs(v @ gram @ v))):
            out.append(w / norm)
    n = gram.shape[0]
    return np.array(out).T if out else np.zeros((n, 0))


@dataclass(frozen=True)
class Subspace:
    """Subspace with a basis orthonormal w.r.t. ``gram`` (columns of ``basis``)."""

    basis: np.ndarray
    gram: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "basis", _frozen(self.basis))
        object.__setattr__(self, "gram", _frozen(self.gram))

    @classmethod
    def span(cls, vectors, gram) -> "Subspace":
        gram = np.asarray(gram, dtype=float)
        return cls(_orthonormalize(vectors, gram), gram)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def projector(self) -> np.ndarray:
        """Gram-orthogonal projector onto the subspace."""
        return self.basis @ self.basis.T @ self.gram

    def complement(self) -> "Subspace":
        n = self.ambient_dim
        rest = np.eye(n) - self.projector
        return Subspace.span(_column_space(rest), self.gram)

    def contains(self, v, tol: float = 1e-9) -> bool:
        v = np.asarray(v, dtype=float)
        r = v - self.projector @ v
        return bool(np.sqrt(abs(r @ self.gram @ r)) <= tol * max(1.0, np.sqrt(abs(v @ self.gram @ v))))

    def includes(self, other: "Subspace", tol: float = 1e-9) -> bool:
        return all(self.contains(v, tol) for v in other.basis.T)

    def same_as(self, other: "Subspace", tol: float = 1e-9) -> bool:
        return self.dim == other.dim and bool(np.abs(self.projector - other.projector).max() <= tol)


def _column_space(m: np.ndarray, eps: float = 1e-9, scale: float = 1.0) -> np.ndarray:
    if m.size == 0:
        return np.zeros((m.shape[0], 0))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    return u[:, s > eps * scale]


def _null_space(m: np.ndarray, eps: float = 1e-9, scale: float = 1.0) -> np.ndarray:
    n = m.shape[1]
    if m.size == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(m, full_matrices=True)
    rank = int(np.sum(s > eps * scale))
    return vt[rank:].T


def derived_ideal(x: AlgebraLike, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    alg = _algebra(x)
    n = alg.dim
    vecs = alg.structure.reshape(n * n, n).T
    return Subspace.span(_column_space(vecs, tol.eps_rank, alg.scale), _gram(x))


def bracket_span(x: AlgebraLike, u: Subspace, v: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Span of ``[a, b]`` for ``a`` in ``u`` and ``b`` in ``v``."""
    alg = _algebra(x)
    n = alg.dim
    if u.dim == 0 or v.dim == 0:
        return Subspace(np.zeros((n, 0)), _gram(x))
    vecs = np.einsum("ia,jb,ijk->kab", u.basis, v.basis, alg.structure).reshape(n, -1)
    return Subspace.span(_column_space(vecs, tol.eps_rank, alg.scale), _gram(x))


def center(x: AlgebraLike, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    alg = _algebra(x)
    n = alg.dim
    # rows indexed by (j, k): sum_i x_i C[i, j, k] = 0
    m = alg.structure.reshape(n, n * n).T
    return Subspace.span(_null_space(m, tol.eps_rank, alg.scale), _gram(x))


def left_null(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """``{X : L_X = 0}`` for the Levi-Civita product."""
    from .connection import levi_civita

    s = levi_civita(mla).product
    n = mla.dim
    return Subspace.span(_null_space(s.reshape(n, n * n).T, tol.eps_rank, mla.scale), mla.gram)


def right_null(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """``{X : R_X = 0}`` where ``R_X Y = Y * X``."""
    from .connection import levi_civita

    s = levi_civita(mla).product
    n = mla.dim
    m = s.transpose(1, 0, 2).reshape(n, n * n).T
    return Subspace.span(_null_space(m, tol.eps_rank, mla.scale), mla.gram)


def structural_flags(x: AlgebraLike, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Abelian / nilpotent / solvable / 2-solvable verdicts.

    Uses the lower central series for nilpotency and the derived series for
    solvability, with ranks decided by :func:`derived_ideal`'s threshold.
    """
    alg = _algebra(x)
    n = alg.dim
    whole = Subspace(np.eye(n), np.eye(n))
    d1 = derived_ideal(alg, tol)

    lower = d1
    for _ in range(n + 1):
        if lower.dim == 0:
            break
        nxt = bracket_span(alg, whole, lower, tol)
        if nxt.dim == lower.dim:
            break
        lower = nxt

    derived = d1
    d2 = bracket_span(alg, d1, d1, tol)
    for _ in range(n + 1):
        if derived.dim == 0:
            break
        nxt = bracket_span(alg, derived, derived, tol)
        if nxt.dim == derived.dim:
            break
        derived = nxt

    return {
        "abelian": d1.dim == 0,
        "nilpotent": lower.dim == 0,
        "solvable": derived.dim == 0,
        "two_solvable": d2.dim == 0,
    }


def check_anti_derivation(x: AlgebraLike, k_form, delta, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether ``delta`` is a ``k``-symmetric invertible anti-derivation.

    ``delta`` acts on coordinate columns; the anti-derivation rule is
    ``delta[u, v] = -[delta u, v] - [u, delta v]``.
    """
    alg = _algebra(x)
    k = np.asarray(k_form, dtype=float)
    d = np.asarray(delta, dtype=float)
    n = alg.dim
    if k.shape != (n, n) or d.shape != (n, n):
        raise ValidationError(f"k_form and delta must be {n}x{n}")
    kscale = max(1.0, float(np.abs(k).max()))
    if np.linalg.svd(k, compute_uv=False).min() < tol.eps_rank * kscale:
        raise ValidationError("k_form is degenerate")
    dscale = max(1.0, float(np.abs(d).max()))
    if np.abs(d.T @ k - k @ d).max() > tol.eps_eq * kscale * dscale:
        return False
    if np.linalg.svd(d, compute_uv=False).min() < tol.eps_rank * dscale:
        return False
    c = alg.structure
    lhs = np.einsum("ijm,km->ijk", c, d)
    rhs = -np.einsum("mi,mjk->ijk", d, c) - np.einsum("mj,imk->ijk", d, c)
    return bool(np.abs(lhs - rhs).max() <= tol.eps_eq * alg.scale * dscale)
