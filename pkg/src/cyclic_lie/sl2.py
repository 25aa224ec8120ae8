"""Cyclic metrics on sl(2, R) and block products of cyclic factors."""

from __future__ import annotations

from dataclasses import dataclass, field
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
    change_basis,
    check_cyclic,
    check_jacobi,
    killing_form,
)
from .gqp import OmegaMatrix, build

# [X1, X2] = 2 X3, [X2, X3] = -2 X1, [X3, X1] = 2 X2
SL2_ALGEBRA = LieAlgebra.from_brackets(3, {(0, 1): [0, 0, 2], (1, 2): [-2, 0, 0], (0, 2): [0, -2, 0]})


@dataclass(frozen=True)
class Sl2CyclicMetric:
    mu: float
    nu: float

    def __post_init__(self):
        if not (np.isfinite(self.mu) and np.isfinite(self.nu) and self.mu > self.nu > 0):
            raise ValidationError(f"need mu > nu > 0, got mu={self.mu}, nu={self.nu}")

    @property
    def gram(self) -> np.ndarray:
        return np.diag([self.mu + self.nu, self.mu, self.nu])


def build_sl2(m: Sl2CyclicMetric) -> MetricLieAlgebra:
    return MetricLieAlgebra(SL2_ALGEBRA, m.gram)


def sl2_closed_ricci(m: Sl2CyclicMetric):
    """Closed-form ``(ric, sigma)`` in the basis ``(X1, X2, X3)``."""
    mu, nu = m.mu, m.nu
    sigma = (-8 * mu**2 - 8 * mu * nu - 8 * nu**2) / ((mu + nu) * mu * nu)
    return 8.0 * np.diag([1.0, -1.0, -1.0]), sigma


@dataclass(frozen=True)
class ProductSpec:
    r: int = 0
    omega: Optional[OmegaMatrix] = None
    sl2_factors: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "sl2_factors", tuple(self.sl2_factors))
        if self.r < 0:
            raise ValidationError("r must be nonnegative")
        if self.r == 0 and self.omega is None and not self.sl2_factors:
            raise ValidationError("product spec has no blocks")

    @property
    def dim(self) -> int:
        return self.r + (self.omega.dim if self.omega is not None else 0) + 3 * len(self.sl2_factors)

    def blocks(self):
        """``(kind, MetricLieAlgebra)`` per block, in the order used by :func:`build_product`."""
        out = []
        if self.r:
            out.append(("abelian", MetricLieAlgebra(LieAlgebra.abelian(self.r))))
        if self.omega is not None:
            out.append(("gqp", build(self.omega)))
        out.extend(("sl2", build_sl2(m)) for m in self.sl2_factors)
        return out


def block_sum(parts) -> MetricLieAlgebra:
    n = sum(p.dim for p in parts)
    c = np.zeros((n, n, n))
    g = np.zeros((n, n))
    off = 0
    for part in parts:
        d = part.dim
        sl = slice(off, off + d)
        c[sl, sl, sl] = part.structure
        g[sl, sl] = part.gram
        off += d
    return MetricLieAlgebra(LieAlgebra(c), g)


def build_product(spec: ProductSpec) -> MetricLieAlgebra:
    mla = block_sum([b for _, b in spec.blocks()])
    if not check_cyclic(mla):
        raise InvariantError("product of cyclic factors failed the cyclic check")
    return mla


def _signature(b: np.ndarray, tol: float):
    ev = np.linalg.eigvalsh(b)
    return int(np.sum(ev > tol)), int(np.sum(ev < -tol))


def sl2_canonical_basis(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL):
    """Find ``(mu, nu)`` and a basis realising the canonical presentation.

    Returns ``(mu, nu, basis)`` where the columns of ``basis`` satisfy the
    brackets of :data:`SL2_ALGEBRA` and have gram ``diag(mu + nu, mu, nu)``,
    or ``None`` if the metric is not of that form.  ``delta = B^{-1} G`` is
    diagonalised through the pencil ``B v = (1/d) G v`` so that ``G`` (the
    definite side) normalises the eigenvectors.
    """
    if mla.dim != 3:
        raise ValidationError("sl(2, R) canonicalisation needs a 3-dimensional algebra")
    b = killing_form(mla)
    bscale = max(1.0, float(np.abs(b).max()))
    pos, neg = _signature(b, tol.eps_rank * bscale)
    if (pos, neg) != (2, 1):
        raise ValidationError(f"Killing form has signature ({pos}, {neg}); sl(2, R) needs (2, 1)")
    if not check_jacobi(mla, tol) or not check_cyclic(mla, tol):
        return None
    inv_d, vecs = scipy.linalg.eigh(b, mla.gram)
    d8 = 8.0 / inv_d
    order = np.argsort(d8)  # negative one first, then nu, mu
    neg_val, nu, mu = d8[order]
    v1, v3, v2 = (vecs[:, k] for k in order)
    scale = max(1.0, abs(mu), abs(nu))
    if not (nu > tol.eps_eq * scale and mu - nu > tol.eps_cluster * scale):
        return None
    if abs(neg_val + mu + nu) > tol.eps_eq * scale:
        return None
    basis = np.column_stack([v1 * np.sqrt(mu + nu), v2 * np.sqrt(mu), v3 * np.sqrt(nu)])
    bracket12 = np.einsum("i,j,ijk->k", basis[:, 0], basis[:, 1], mla.structure)
    if bracket12 @ mla.gram @ basis[:, 2] < 0:
        basis[:, 2] = -basis[:, 2]
    pushed = change_basis(mla, basis)
    if np.abs(pushed.structure - SL2_ALGEBRA.structure).max() > tol.eps_eq * mla.scale:
        return None
    return float(mu), float(nu), basis


def sl2_canonical_parameters(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL):
    """``(mu, nu)`` of a cyclic metric on sl(2, R), or ``None``."""
    found = sl2_canonical_basis(mla, tol)
    if found is None:
        return None
    return found[0], found[1]
