"""Real-valued ridge regression closed forms (primal/dual/auto).

The complex counterpart lives in :mod:`rvflx.matrix`; this module is the one
certified implementation for real systems, shared by the plain network
training and the autoencoder decoder solve.
"""

from __future__ import annotations

import numpy as np

from .errors import NumericError
from .matrix import CERTIFICATE_RTOL, resolve_ridge_mode


def real_ridge(g: np.ndarray, w: np.ndarray, c: float,
               mode: str = "auto") -> np.ndarray:
    """Solve ``min_eta c/2 ||G eta - W||^2 + 1/2 ||eta||^2`` in closed form.

    primal: ``(Gt G + I/c)^-1 Gt W``; dual: ``Gt (G Gt + I/c)^-1 W``.
    'auto' resolves to dual iff G has fewer rows (samples) than columns
    (features). Every solve is checked against the normal equations:
    max-norm of ``(Gt G + I/c) eta - Gt W`` must be within
    ``1e-8 * max(1, |Gt W|_max)``.
    """
    g = np.asarray(g, dtype=float)
    w = np.asarray(w, dtype=float)
    if c <= 0:
        raise ValueError(f"regularization c must be > 0, got {c}")
    if g.ndim != 2 or w.ndim != 2 or g.shape[0] != w.shape[0]:
        raise ValueError(f"incompatible shapes g{g.shape}, w{w.shape}")
    if not (np.isfinite(g).all() and np.isfinite(w).all()):
        raise NumericError("non-finite values in solve input")

    k, n = g.shape
    branch = resolve_ridge_mode(k, n, mode)
    rhs = g.T @ w

    if branch == "primal":
        a = g.T @ g
        a[np.diag_indices_from(a)] += 1.0 / c
        eta = np.linalg.solve(a, rhs)
    else:
        b = g @ g.T
        b[np.diag_indices_from(b)] += 1.0 / c
        eta = g.T @ np.linalg.solve(b, w)

    scale = max(1.0, float(np.abs(rhs).max()))
    tol = CERTIFICATE_RTOL * scale
    resid = g.T @ (g @ eta) + eta / c - rhs
    if np.abs(resid).max() > tol:
        a = g.T @ g
        a[np.diag_indices_from(a)] += 1.0 / c
        eta = eta - np.linalg.solve(a, resid)
        resid = g.T @ (g @ eta) + eta / c - rhs
        if np.abs(resid).max() > tol:
            raise NumericError(
                f"ridge solve certificate failed: residual "
                f"{np.abs(resid).max():.3e} > {tol:.3e}")
    return eta
