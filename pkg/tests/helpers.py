"""Shared independent oracles used by the test suite.

These deliberately avoid the library's own linear-algebra paths: matrix
products are explicit scalar loops and the decoder oracle is plain gradient
descent, so agreement with the closed forms is meaningful.
"""

from __future__ import annotations

import numpy as np


def loop_matmul(a, b):
    """Naive triple-loop matrix product (any scalar field)."""
    a = np.asarray(a)
    b = np.asarray(b)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.result_type(a, b))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            acc = 0
            for t in range(a.shape[1]):
                acc += a[i, t] * b[t, j]
            out[i, j] = acc
    return out


def gd_ridge_decoder(s_hat, z, c, max_iter=200_000, tol=1e-12):
    """Minimize c/2 ||Z - S V||^2 + 1/2 ||V||^2 by plain gradient descent."""
    s_hat = np.asarray(s_hat, dtype=float)
    z = np.asarray(z, dtype=float)
    v = np.zeros((s_hat.shape[1], z.shape[1]))
    # Lipschitz constant of the gradient: c * lambda_max(S^T S) + 1
    lam = np.linalg.eigvalsh(s_hat.T @ s_hat).max()
    step = 1.0 / (c * lam + 1.0)
    for _ in range(max_iter):
        grad = -c * s_hat.T @ (z - s_hat @ v) + v
        v_new = v - step * grad
        if np.abs(v_new - v).max() < tol:
            return v_new
        v = v_new
    return v


def normal_equation_residual(g, w, c, eta, conjugate=True):
    """Max-norm residual of (G* G + I/c) eta - G* W and its tolerance scale."""
    gt = g.conj().T if conjugate else g.T
    rhs = gt @ w
    resid = gt @ (g @ eta) + eta / c - rhs
    scale = max(1.0, float(np.abs(rhs).max()))
    return float(np.abs(resid).max()), scale


def rank_variance_chi2(ranks_per_dataset):
    """Friedman chi-squared recomputed from rank deviations around the mean.

    ``ranks_per_dataset`` is (R datasets, S models); uses the identity
    that the average rank over models is (S+1)/2.
    """
    ranks = np.asarray(ranks_per_dataset, dtype=float)
    r, s = ranks.shape
    avg = ranks.mean(axis=0)
    center = (s + 1) / 2.0
    return 12.0 * r / (s * (s + 1)) * float(np.sum((avg - center) ** 2))
