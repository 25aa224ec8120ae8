"""Reference implementations used only by the tests.

They share no code with the package: loops instead of einsum, a dense
solve instead of Cholesky, textbook (rather than operator) conventions.
"""

import itertools

import numpy as np


def brute_bracket_form(c, g):
    """a[i, j, k] = <[e_i, e_j], e_k>."""
    n = c.shape[0]
    a = np.zeros((n, n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        a[i, j, k] = sum(c[i, j, m] * g[m, k] for m in range(n))
    return a


def brute_cyclic_defect(c, g):
    a = brute_bracket_form(c, g)
    n = c.shape[0]
    worst = 0.0
    for i, j, k in itertools.product(range(n), repeat=3):
        worst = max(worst, abs(a[i, j, k] + a[j, k, i] + a[k, i, j]))
    return worst


def brute_connection(c, g):
    """Gamma[i, j, :] = coordinates of nabla_{e_i} e_j (Koszul formula)."""
    n = c.shape[0]
    a = brute_bracket_form(c, g)
    gam = np.zeros((n, n, n))
    for i in range(n):
        for j in range(n):
            rhs = np.array([0.5 * (a[i, j, k] - a[j, k, i] + a[k, i, j]) for k in range(n)])
            gam[i, j] = np.linalg.solve(g, rhs)
    return gam


def brute_riemann(c, g):
    """R[i, j, k, :] = R(e_i, e_j) e_k with R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]."""
    n = c.shape[0]
    gam = brute_connection(c, g)

    def nab(x, y):
        return np.einsum("i,j,ijk->k", x, y, gam)

    eye = np.eye(n)
    r = np.zeros((n, n, n, n))
    for i, j, k in itertools.product(range(n), repeat=3):
        ei, ej, ek = eye[i], eye[j], eye[k]
        r[i, j, k] = nab(ei, nab(ej, ek)) - nab(ej, nab(ei, ek)) - nab(c[i, j], ek)
    return r


def brute_sectional(c, g, u, v):
    """Textbook sectional curvature <R(u, v) v, u> / |u ^ v|^2."""
    r = brute_riemann(c, g)
    ruv_v = np.einsum("i,j,k,ijkl->l", u, v, v, r)
    return float(ruv_v @ g @ u / ((u @ g @ u) * (v @ g @ v) - (u @ g @ v) ** 2))


def brute_ricci(c, g):
    """ric(x, y) = tr(z -> R(z, x) y)."""
    r = brute_riemann(c, g)
    n = c.shape[0]
    ric = np.zeros((n, n))
    for x, y in itertools.product(range(n), repeat=2):
        ric[x, y] = sum(r[z, x, y, z] for z in range(n))
    return ric


def brute_killing(c):
    n = c.shape[0]
    ads = [np.array([[c[i, j, k] for j in range(n)] for k in range(n)]) for i in range(n)]
    return np.array([[np.trace(ads[i] @ ads[j]) for j in range(n)] for i in range(n)])


def fd_sectional(metric, x0, a, b, h=1e-4):
    """Sectional curvature of the coordinate plane (a, b) at x0 from central differences.

    ``metric(x)`` returns the coordinate metric matrix.  Uses
    R_abab = 1/2 (2 g_ab,ab - g_aa,bb - g_bb,aa) + g_ef (Gam^e_ab Gam^f_ab - Gam^e_bb Gam^f_aa)
    with lowered Christoffels and the inverse metric for the quadratic term.
    Sign fixed by the hyperbolic plane (-1) and the round sphere (+1).
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    e = np.eye(n) * h

    def dg(k, x):
        return (metric(x + e[k]) - metric(x - e[k])) / (2 * h)

    def ddg(k, l):
        return (
            metric(x0 + e[k] + e[l]) - metric(x0 + e[k] - e[l]) - metric(x0 - e[k] + e[l]) + metric(x0 - e[k] - e[l])
        ) / (4 * h * h)

    g0 = metric(x0)
    ginv = np.linalg.inv(g0)
    d = np.array([dg(k, x0) for k in range(n)])  # d[k, i, j] = g_ij,k
    # first-kind Christoffel: low[c, i, j] = Gamma_{c,ij}
    low = 0.5 * (d.transpose(1, 0, 2) + d.transpose(1, 2, 0) - d)
    gab_ab = ddg(a, b)[a, b]
    gaa_bb = ddg(b, b)[a, a]
    gbb_aa = ddg(a, a)[b, b]
    second = 0.5 * (2 * gab_ab - gaa_bb - gbb_aa)
    quad = low[:, a, b] @ ginv @ low[:, a, b] - low[:, b, b] @ ginv @ low[:, a, a]
    r_abab = second + quad
    return float(r_abab / (g0[a, a] * g0[b, b] - g0[a, b] ** 2))


def random_spd(rng, n, cond=10.0):
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    ev = np.exp(rng.uniform(0, np.log(cond), size=n))
    return q @ np.diag(ev) @ q.T


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))
