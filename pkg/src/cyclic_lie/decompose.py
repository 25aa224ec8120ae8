"""Split a cyclic metric Lie algebra into abelian, G(q, p, Omega) and sl(2, R) factors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    InvariantError,
    MetricLieAlgebra,
    NotCyclicError,
    Subspace,
    ToleranceConfig,
    ValidationError,
    _column_space,
    _null_space,
    center,
    change_basis,
    check_cyclic,
    check_jacobi,
    derived_ideal,
    killing_form,
    restrict,
)
from .gqp import OmegaMatrix
from .sl2 import ProductSpec, Sl2CyclicMetric, build_product, sl2_canonical_basis

MAX_ATTEMPTS = 5


@dataclass(frozen=True)
class Decomposition:
    """Result of :func:`decompose`.

    ``change_of_basis`` has the adapted basis as columns, expressed in the
    input coordinates, ordered ``[R^r | h_1..h_q | f_1..f_p | sl2 blocks]``.
    """

    r: int
    omega: Optional[OmegaMatrix]
    sl2_params: tuple
    change_of_basis: np.ndarray

    @property
    def product_spec(self) -> ProductSpec:
        return ProductSpec(
            r=self.r,
            omega=self.omega,
            sl2_factors=tuple(Sl2CyclicMetric(mu, nu) for mu, nu in self.sl2_params),
        )


def decompose(mla: MetricLieAlgebra, tol: ToleranceConfig = DEFAULT_TOL, seed: int = 0) -> Decomposition:
    """Recover ``R^r x G(q, p, Omega) x sl(2, R)^m`` from a cyclic metric Lie algebra.

    The radical is the Killing-orthogonal of the derived ideal; its metric
    complement is a semisimple ideal whose simple factors are read off the
    commutant of its adjoint representation.  Randomised steps draw from
    ``numpy.random.default_rng(seed)`` and are retried up to
    ``MAX_ATTEMPTS`` times.
    """
    if not check_jacobi(mla, tol):
        raise ValidationError("structure constants violate the Jacobi identity")
    if not check_cyclic(mla, tol):
        raise NotCyclicError("decompose requires a cyclic metric")
    rng = np.random.default_rng(seed)

    frame = mla.orthonormal_frame
    work = change_basis(mla, frame)
    n = work.dim

    if np.abs(work.structure).max() <= tol.eps_rank * work.scale:
        empty = np.zeros((n, 0))
        return _assemble(mla, frame, np.eye(n), empty, empty, None, [], tol)

    b = killing_form(work)
    der = derived_ideal(work, tol)
    rad_vecs = _null_space(der.basis.T @ b, tol.eps_rank, max(1.0, float(np.abs(b).max())))
    rad = Subspace.span(rad_vecs, np.eye(n))
    semi = rad.complement()

    sl2_blocks = []
    if semi.dim:
        if semi.dim % 3:
            raise ValidationError(f"semisimple part has dimension {semi.dim}, not a multiple of 3")
        for ideal in _simple_ideals(work, semi, tol, rng):
            sub = restrict(work, ideal)
            found = sl2_canonical_basis(sub, tol)
            if found is None:
                raise ValidationError("simple ideal does not carry a cyclic sl(2, R) metric")
            mu, nu, basis = found
            sl2_blocks.append((mu, nu, ideal @ basis))
        sl2_blocks.sort(key=lambda blk: (blk[0], blk[1]))

    center_vecs, omega, h_vecs, f_vecs = _solvable_part(work, rad, tol, rng)
    return _assemble(mla, frame, center_vecs, h_vecs, f_vecs, omega, sl2_blocks, tol)


def _simple_ideals(work: MetricLieAlgebra, semi: Subspace, tol: ToleranceConfig, rng):
    """Simple ideals of the semisimple ideal ``semi`` (orthonormal bases).

    Operators commuting with every ``ad_x`` restricted to ``semi`` are the
    linear combinations of the projectors onto the simple ideals, so a
    generic element of the commutant has the ideals as eigenspaces.
    """
    sub = restrict(work, semi.basis)
    k = sub.dim
    eye = np.eye(k)
    rows = [np.kron(eye, a) - np.kron(a.T, eye) for a in sub.algebra.ad]
    commutant = _null_space(np.vstack(rows), tol.eps_rank, sub.scale)
    m = commutant.shape[1]
    if m * 3 != k:
        raise ValidationError(f"semisimple part of dimension {k} has {m} simple factors; expected {k // 3}")
    for _ in range(MAX_ATTEMPTS):
        t = (commutant @ rng.standard_normal(m)).reshape(k, k, order="F")
        t = 0.5 * (t + t.T)
        vals, vecs = np.linalg.eigh(t)
        groups = _cluster(vals, tol.eps_cluster * max(1.0, float(np.abs(vals).max())))
        if all(len(g) == 3 for g in groups):
            return [semi.basis @ vecs[:, g] for g in groups]
    raise InvariantError("could not separate the simple ideals")


def _cluster(vals: np.ndarray, gap: float):
    groups = [[0]]
    for i in range(1, len(vals)):
        if vals[i] - vals[i - 1] <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _solvable_part(work: MetricLieAlgebra, rad: Subspace, tol: ToleranceConfig, rng):
    n = work.dim
    empty = np.zeros((n, 0))
    if rad.dim == 0:
        return empty, None, empty, empty
    sub = restrict(work, rad.basis)
    a = derived_ideal(sub, tol)
    z = center(sub, tol)
    center_vecs = rad.basis @ z.basis
    if a.dim == 0:
        return center_vecs, None, empty, empty
    if np.abs(np.einsum("ia,jb,ijk->abk", a.basis, a.basis, sub.structure)).max() > tol.eps_eq * sub.scale:
        raise ValidationError("derived ideal of the radical is not abelian")
    # h = a^perp minus the centre, inside the radical
    rest = np.eye(sub.dim) - a.projector - z.projector
    h = Subspace.span(_column_space(rest, tol.eps_rank), np.eye(sub.dim))
    if h.dim + a.dim + z.dim != sub.dim:
        raise InvariantError("radical does not split as [r, r] + h + centre")

    # ad_u restricted to [r, r]; symmetric for u in h on a cyclic algebra
    ops = [a.basis.T @ np.einsum("i,ikj->kj", u, sub.algebra.ad) @ a.basis for u in h.basis.T]
    ops = [0.5 * (o + o.T) for o in ops]
    thr = tol.eps_cluster * sub.scale
    for _ in range(MAX_ATTEMPTS):
        combo = sum(c * o for c, o in zip(rng.standard_normal(len(ops)), ops))
        _, vecs = np.linalg.eigh(combo)
        diag = [vecs.T @ o @ vecs for o in ops]
        if all(np.abs(d - np.diag(np.diag(d))).max() <= thr for d in diag):
            break
    else:
        raise InvariantError("simultaneous diagonalisation of ad_h on [r, r] failed")

    w = np.array([np.diag(d) for d in diag])  # w[i, j] = <[h_i, f_j], f_j>
    h_vecs = rad.basis @ h.basis
    f_vecs = rad.basis @ a.basis @ vecs

    row_order = sorted(range(w.shape[0]), key=lambda i: (round(float(np.linalg.norm(w[i])), 9), tuple(np.round(w[i], 9))))
    w = w[row_order]
    h_vecs = h_vecs[:, row_order]
    col_order = sorted(range(w.shape[1]), key=lambda j: (round(float(np.linalg.norm(w[:, j])), 9), tuple(np.round(w[:, j], 9))))
    w = w[:, col_order]
    f_vecs = f_vecs[:, col_order]
    return center_vecs, OmegaMatrix(w), h_vecs, f_vecs


def _assemble(mla, frame, center_vecs, h_vecs, f_vecs, omega, sl2_blocks, tol):
    cols = [center_vecs, h_vecs, f_vecs] + [blk[2] for blk in sl2_blocks]
    result = Decomposition(
        r=center_vecs.shape[1],
        omega=omega,
        sl2_params=tuple((blk[0], blk[1]) for blk in sl2_blocks),
        change_of_basis=frame @ np.hstack(cols),
    )
    _verify(mla, result, tol)
    return result


def _verify(mla: MetricLieAlgebra, result: Decomposition, tol: ToleranceConfig) -> None:
    expected = build_product(result.product_spec)
    if expected.dim != mla.dim:
        raise InvariantError("decomposition blocks do not add up to the input dimension")
    pushed = change_basis(mla, result.change_of_basis)
    scale = max(mla.scale, expected.scale)
    if np.abs(pushed.gram - expected.gram).max() > 1e-9 * scale:
        raise InvariantError("adapted basis does not carry the block metric")
    if np.abs(pushed.structure - expected.structure).max() > tol.eps_eq * scale:
        raise InvariantError("adapted basis does not carry the block brackets")


# ---------------------------------------------------------------------------
# catalog of low-dimensional families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    dim: int
    label: str
    r: int
    q: int
    p: int
    sl2_count: int
    constraints: str

    @property
    def family(self) -> dict:
        return {"r": self.r, "q": self.q, "p": self.p, "omega_shape": [self.q, self.p] if self.q else None,
                "sl2_count": self.sl2_count}


_CATALOG = [
    CatalogEntry(2, "G(1,1,(l))", 0, 1, 1, 0, "l != 0"),
    CatalogEntry(3, "R x G(1,1,(l))", 1, 1, 1, 0, "l != 0"),
    CatalogEntry(3, "G(1,2,(l1,l2))", 0, 1, 2, 0, "(l1, l2) != (0, 0)"),
    CatalogEntry(3, "SL2~ with h1", 0, 0, 0, 1, "mu > nu > 0"),
    CatalogEntry(4, "R^2 x G(1,1,(l))", 2, 1, 1, 0, "l != 0"),
    CatalogEntry(4, "R x G(1,2,(l1,l2))", 1, 1, 2, 0, "(l1, l2) != (0, 0)"),
    CatalogEntry(4, "R x SL2~", 1, 0, 0, 1, "mu > nu > 0"),
    CatalogEntry(4, "G(1,3,(l1,l2,l3))", 0, 1, 3, 0, "(l1, l2, l3) != 0"),
    CatalogEntry(4, "G(2,2,Omega)", 0, 2, 2, 0, "det Omega != 0"),
    CatalogEntry(5, "R^3 x G(1,1,(l))", 3, 1, 1, 0, "l != 0"),
    CatalogEntry(5, "R^2 x G(1,2,(l1,l2))", 2, 1, 2, 0, "(l1, l2) != (0, 0)"),
    CatalogEntry(5, "R^2 x SL2~", 2, 0, 0, 1, "mu > nu > 0"),
    CatalogEntry(5, "R x G(1,3,(l1,l2,l3))", 1, 1, 3, 0, "(l1, l2, l3) != 0"),
    CatalogEntry(5, "R x G(2,2,Omega)", 1, 2, 2, 0, "det Omega != 0"),
    CatalogEntry(5, "G(2,3,(P;Q))", 0, 2, 3, 0, "P ^ Q != 0"),
    CatalogEntry(5, "G(1,4,(l1,l2,l3,l4))", 0, 1, 4, 0, "(l1, l2, l3, l4) != 0"),
]


def catalog(dim: int) -> list:
    """Families of non-abelian cyclic groups of the given dimension (2 to 5).

    The list has no ``G(1,1,(l)) x SL2~`` entry in dimension 5, although that
    product is cyclic as well.
    """
    if not 2 <= dim <= 5:
        raise ValidationError("catalog covers dimensions 2 to 5")
    return [e for e in _CATALOG if e.dim == dim]


def instantiate(entry: CatalogEntry, rng) -> ProductSpec:
    """Random admissible member of a catalog family."""
    omega = None
    if entry.q:
        while True:
            w = rng.uniform(-2.0, 2.0, size=(entry.q, entry.p))
            try:
                omega = OmegaMatrix(w)
                break
            except ValidationError:
                continue
    sl2 = []
    for _ in range(entry.sl2_count):
        nu, mu = np.sort(rng.uniform(0.1, 3.0, size=2))
        sl2.append(Sl2CyclicMetric(float(mu), float(nu)))
    return ProductSpec(r=entry.r, omega=omega, sl2_factors=sl2)
