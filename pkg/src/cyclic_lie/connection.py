"""Levi-Civita product and curvature of left-invariant metrics.

Everything here works on left-invariant objects, which are constant in the
frame ``(e_1, ..., e_n)``.  Index conventions:

* ``S[i, j, k]``: ``e_i * e_j = sum_k S[i, j, k] e_k`` (Levi-Civita product).
* ``K[i, j, k, l]``: ``K(e_i, e_j) e_k = sum_l K[i, j, k, l] e_l`` with
  ``K(X, Y) = L_[X,Y] - [L_X, L_Y]``.
* ``ric[i, j] = tr(Z -> K(e_i, Z) e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    InvariantError,
    MetricLieAlgebra,
    NotCyclicError,
    ToleranceConfig,
    ValidationError,
    _frozen,
    check_cyclic,
    killing_form,
    mean_curvature_vector,
)


@dataclass(frozen=True)
class LeviCivitaProduct:
    product: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "product", _frozen(self.product))

    @property
    def left(self) -> np.ndarray:
        """``left[i]`` is the matrix of ``L_{e_i}``: ``left[i][k, j] = S[i, j, k]``."""
        return self.product.transpose(0, 2, 1)

    def apply(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u, v, self.product)


@dataclass(frozen=True)
class CurvatureTensor:
    K: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "K", _frozen(self.K))

    def apply(self, x, y, z) -> np.ndarray:
        return np.einsum("i,j,k,ijkl->l", x, y, z, self.K)


@dataclass(frozen=True)
class RicciData:
    ricci: np.ndarray
    scalar: float
    nabla_ricci: np.ndarray
    nabla_K: np.ndarray


def levi_civita(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> LeviCivitaProduct:
    """Solve Koszul's formula with one Cholesky factorization of the gram."""
    n = mla.dim
    # a[i, j, k] = <[e_i, e_j], e_k>
    a = np.einsum("ijl,lk->ijk", mla.structure, mla.gram)
    rhs = a + a.transpose(1, 2, 0) + a.transpose(2, 1, 0)
    # rhs[i,j,k] = <[e_i,e_j],e_k> + <[e_k,e_i],e_j> + <[e_k,e_j],e_i>
    coeffs = mla.solve_gram(rhs.reshape(n * n, n).T / 2.0)
    s = coeffs.T.reshape(n, n, n)
    lc = LeviCivitaProduct(s)
    _check_levi_civita(mla, lc, tol)
    return lc


def _check_levi_civita(mla: MetricLieAlgebra, lc: LeviCivitaProduct, tol: ToleranceConfig) -> None:
    s = lc.product
    scale = mla.scale
    torsion = s - s.transpose(1, 0, 2) - mla.structure
    if np.abs(torsion).max() > tol.eps_eq * scale:
        raise InvariantError(f"Levi-Civita product has torsion {np.abs(torsion).max():.3e}")
    gl = np.einsum("ab,ibc->iac", mla.gram, lc.left)
    skew = gl + gl.transpose(0, 2, 1)
    if np.abs(skew).max() > tol.eps_eq * scale**2:
        raise InvariantError(f"Levi-Civita product is not metric {np.abs(skew).max():.3e}")


def curvature(mla: MetricLieAlgebra, lc: LeviCivitaProduct) -> CurvatureTensor:
    left = lc.left
    l_br = np.einsum("ijm,mab->ijab", mla.structure, left)
    comm = np.einsum("iab,jbc->ijac", left, left)
    mats = l_br - comm + comm.transpose(1, 0, 2, 3)
    # mats[i, j] is the matrix of K(e_i, e_j); K[i, j, k, l] = mats[i, j][l, k]
    return CurvatureTensor(mats.transpose(0, 1, 3, 2))


def ricci(mla: MetricLieAlgebra, K: CurvatureTensor) -> np.ndarray:
    # A trace is frame independent, so the coordinate trace over Z is exact.
    ric = np.einsum("imjm->ij", K.K)
    return 0.5 * (ric + ric.T)


def scalar_curvature(mla: MetricLieAlgebra, ric: np.ndarray) -> float:
    return float(np.trace(mla.solve_gram(ric)))


def ricci_cyclic_formula(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Ricci curvature as ``-B(u, v) - <[H, u], v>`` (cyclic metrics only)."""
    if not check_cyclic(mla, tol):
        raise NotCyclicError("ricci_cyclic_formula requires a cyclic metric")
    h = mean_curvature_vector(mla)
    ad_h = np.einsum("i,ijk->jk", h, mla.structure)  # ad_h[u, :] = [H, e_u]
    m = ad_h @ mla.gram
    return -killing_form(mla) - 0.5 * (m + m.T)


def sectional(mla: MetricLieAlgebra, K: CurvatureTensor, u, v, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    g = mla.gram
    area = (u @ g @ u) * (v @ g @ v) - (u @ g @ v) ** 2
    if area <= tol.eps_rank * mla.scale * (u @ g @ u) * (v @ g @ v):
        raise ValidationError("sectional curvature needs two independent vectors")
    return float(K.apply(u, v, u) @ g @ v / area)


def nabla_ricci(mla: MetricLieAlgebra, lc: LeviCivitaProduct, ric: np.ndarray) -> np.ndarray:
    """``D[a, b, c] = (nabla_{e_a} ric)(e_b, e_c)``.

    ric is left-invariant, so its directional derivative along ``e_a``
    vanishes and only the connection terms survive:
    ``-ric(e_a * e_b, e_c) - ric(e_b, e_a * e_c)``.  Symmetric in ``(b, c)``.
    """
    s = lc.product
    t = np.einsum("abm,mc->abc", s, ric)
    return -t - t.transpose(0, 2, 1)


def nabla_curvature(mla: MetricLieAlgebra, lc: LeviCivitaProduct, K: CurvatureTensor) -> np.ndarray:
    """``T[w, x, y, z, l]``: component along ``e_l`` of ``(nabla_w K)(x, y) z``.

    As for :func:`nabla_ricci`, the derivative of the frame components is
    zero for a left-invariant tensor, leaving
    ``w*(K(x,y)z) - K(w*x,y)z - K(x,w*y)z - K(x,y)(w*z)``.
    """
    s = lc.product
    k = K.K
    return (
        np.einsum("xyzm,wml->wxyzl", k, s)
        - np.einsum("wxm,myzl->wxyzl", s, k)
        - np.einsum("wym,xmzl->wxyzl", s, k)
        - np.einsum("wzm,xyml->wxyzl", s, k)
    )


def curvature_report(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL):
    """Run the whole generic pipeline; returns ``(lc, K, RicciData)``."""
    lc = levi_civita(mla, tol)
    K = curvature(mla, lc)
    ric = ricci(mla, K)
    data = RicciData(
        ricci=ric,
        scalar=scalar_curvature(mla, ric),
        nabla_ricci=nabla_ricci(mla, lc, ric),
        nabla_K=nabla_curvature(mla, lc, K),
    )
    return lc, K, data


def curvature_residuals(mla: MetricLieAlgebra, K: CurvatureTensor) -> dict:
    """Max violations of the algebraic curvature symmetries."""
    k = K.K
    low = np.einsum("ijkl,lm->ijkm", k, mla.gram)
    return {
        "antisymmetry": float(np.abs(k + k.transpose(1, 0, 2, 3)).max()),
        "metric_skew": float(np.abs(low + low.transpose(0, 1, 3, 2)).max()),
        "bianchi": float(np.abs(k + k.transpose(1, 2, 0, 3) + k.transpose(2, 0, 1, 3)).max()),
    }


def check_constant_curvature(
    mla: MetricLieAlgebra, K: CurvatureTensor, tol: ToleranceConfig = DEFAULT_TOL
) -> Optional[float]:
    """Return ``k`` if ``K(u, v) = k u^v`` with ``u^v(w) = <u,w>v - <v,w>u``."""
    n = mla.dim
    g = mla.gram
    k = 0.0
    best = -1.0
    for i in range(n):
        for j in range(i + 1, n):
            val = sectional(mla, K, np.eye(n)[i], np.eye(n)[j], tol)
            if abs(val) > best:
                best, k = abs(val), val
    # pattern[i, j, m, l] = G[i, m] delta_{jl} - G[j, m] delta_{il}
    eye = np.eye(n)
    pattern = np.einsum("im,jl->ijml", g, eye) - np.einsum("jm,il->ijml", g, eye)
    resid = np.abs(K.K - k * pattern).max()
    if resid <= tol.eps_eq * mla.scale**2:
        return float(k)
    return None


def check_vectorial(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL) -> Optional[np.ndarray]:
    """Return ``h`` with ``[u, v] = <u, h> v - <v, h> u``, if one exists.

    Seeded from ``tr(ad_u) = (n - 1) <u, h>`` and then checked on every
    basis pair.
    """
    n = mla.dim
    if n == 1:
        return np.zeros(1)
    traces = np.einsum("ijj->i", mla.structure)
    uh = traces / (n - 1)
    eye = np.eye(n)
    model = np.einsum("i,jk->ijk", uh, eye) - np.einsum("j,ik->ijk", uh, eye)
    if np.abs(model - mla.structure).max() > tol.eps_eq * mla.scale:
        return None
    return mla.solve_gram(uh)
