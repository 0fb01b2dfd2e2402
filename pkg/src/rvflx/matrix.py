"""Dense real/complex matrix primitives: seeded random draws and ridge solves.

Matrices are plain ``numpy.ndarray`` objects (float64 / complex128, row-major).
Randomness goes through ``make_rng`` so that a given seed produces the same
draw sequence on every platform and run.
"""

from __future__ import annotations

import hashlib

import numpy as np

from .errors import NumericError

#: Relative tolerance of the normal-equation optimality certificate.
CERTIFICATE_RTOL = 1e-8


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic generator (PCG64) for *seed*; same seed, same stream."""
    return np.random.default_rng(int(seed))


def derive_seed(base_seed: int, *parts) -> int:
    """Stable 63-bit sub-seed from a base seed and hashable context parts.

    Uses SHA-256 over the textual representation, so the result does not
    depend on process, platform, or interpreter hash randomization.
    """
    text = "\x1f".join([str(int(base_seed)), *(str(p) for p in parts)])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def uniform_matrix(rng: np.random.Generator, rows: int, cols: int,
                   lo: float, hi: float) -> np.ndarray:
    """Draw a ``rows x cols`` matrix with i.i.d. uniform entries on [lo, hi).

    Raises ``ValueError`` for empty shapes or a degenerate interval.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix shape must be positive, got {rows}x{cols}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi})")
    return rng.uniform(lo, hi, size=(rows, cols))


def complex_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex matrix product a @ b, composed from real products.

    Computed as ``(ar br - ai bi) + i (ar bi + ai br)``. Besides being the
    textbook definition, this makes products with exactly-zero imaginary
    blocks bit-identical to the corresponding real product on any BLAS,
    which the real-network reduction tests rely on.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"incompatible shapes {a.shape} @ {b.shape}")
    if not (np.iscomplexobj(a) or np.iscomplexobj(b)):
        return a @ b
    a = a.astype(complex, copy=False)
    b = b.astype(complex, copy=False)
    # contiguous component copies so every product is the same plain dgemm
    ar, ai = np.ascontiguousarray(a.real), np.ascontiguousarray(a.imag)
    br, bi = np.ascontiguousarray(b.real), np.ascontiguousarray(b.imag)
    real = ar @ br - ai @ bi
    imag = ar @ bi + ai @ br
    return real + 1j * imag


def resolve_ridge_mode(n_rows: int, n_cols: int, mode: str) -> str:
    """Resolve 'auto' to 'dual' iff there are fewer samples than features."""
    if mode == "auto":
        return "dual" if n_rows < n_cols else "primal"
    if mode not in ("primal", "dual"):
        raise ValueError(f"unknown ridge mode {mode!r}")
    return mode


def hermitian_solve_regularized(g: np.ndarray, w: np.ndarray, c: float,
                                mode: str = "auto",
                                literal_transpose: bool = False) -> np.ndarray:
    """Solve the complex ridge system for output weights eta.

    Minimizes ``c/2 * ||g @ eta - w||^2 + 1/2 * ||eta||^2`` through one of two
    algebraically equivalent closed forms:

    - primal: ``(Gh G + I/c)^-1 Gh W``
    - dual:   ``Gh (G Gh + I/c)^-1 W``

    where ``Gh`` is the conjugate (Hermitian) transpose. ``mode='auto'``
    picks dual iff ``g`` has fewer rows than columns.

    Parameters
    ----------
    g : (k, n) complex or real design matrix.
    w : (k, d) real or complex target matrix.
    c : regularization weight on the data term, > 0.
    mode : 'primal', 'dual' or 'auto'.
    literal_transpose : use the plain (non-conjugate) transpose everywhere.
        With complex data this no longer minimizes the objective above; it
        exists to reproduce formulations stated with a plain transpose.

    Returns
    -------
    eta : (n, d) array solving the system.

    Raises
    ------
    NumericError
        If inputs are non-finite or the normal-equation residual certificate
        ``|(Gh G + I/c) eta - Gh W|_max <= 1e-8 * max(1, |Gh W|_max)``
        cannot be met even after one step of iterative refinement.
    """
    g = np.asarray(g)
    w = np.asarray(w)
    if c <= 0:
        raise ValueError(f"regularization c must be > 0, got {c}")
    if g.ndim != 2 or w.ndim != 2 or g.shape[0] != w.shape[0]:
        raise ValueError(f"incompatible shapes g{g.shape}, w{w.shape}")
    if not (np.isfinite(g).all() and np.isfinite(w).all()):
        raise NumericError("non-finite values in solve input")

    def ct(m):
        return m.T if literal_transpose else m.conj().T

    k, n = g.shape
    branch = resolve_ridge_mode(k, n, mode)
    gt = ct(g)
    rhs = gt @ w

    if branch == "primal":
        a = gt @ g
        a[np.diag_indices_from(a)] += 1.0 / c
        eta = np.linalg.solve(a, rhs)
    else:
        b = g @ gt
        b[np.diag_indices_from(b)] += 1.0 / c
        eta = gt @ np.linalg.solve(b, w)

    # Optimality certificate on the normal equations; one refinement retry.
    scale = max(1.0, float(np.abs(rhs).max()))
    tol = CERTIFICATE_RTOL * scale
    resid = gt @ (g @ eta) + eta / c - rhs
    if np.abs(resid).max() > tol:
        if branch == "primal":
            eta = eta - np.linalg.solve(a, resid)
        else:
            a = gt @ g
            a[np.diag_indices_from(a)] += 1.0 / c
            eta = eta - np.linalg.solve(a, resid)
        resid = gt @ (g @ eta) + eta / c - rhs
        if np.abs(resid).max() > tol:
            raise NumericError(
                f"ridge solve certificate failed: residual "
                f"{np.abs(resid).max():.3e} > {tol:.3e}")
    return eta
