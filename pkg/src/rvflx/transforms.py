"""Real-to-complex dataset transforms.

Two ways to build the imaginary channel of ``Z_x = Z + i*S``:

- ``natural``: ``S = 0``. Every real matrix is already complex.
- ``autoencoder``: a random linear encoder followed by a closed-form ridge
  decoder produces a latent map of the data; the (normalized) latent image
  of ``Z`` becomes ``S``.

Normalization (``xi``) is per-column min-max scaling to [0, 1], fitted on the
training matrix and reused for unseen data so train and test live on the same
scale. Columns that are constant during fitting map to zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .matrix import uniform_matrix
from .solvers import real_ridge

TRANSFORM_SCHEMA = "rvflx-transform/1"


def xi_fit_apply(m: np.ndarray):
    """Min-max scale columns of *m* to [0, 1]; return (scaled, (min, max))."""
    m = np.asarray(m, dtype=float)
    if m.size == 0:
        raise ValueError("cannot fit normalization on an empty matrix")
    lo = m.min(axis=0)
    hi = m.max(axis=0)
    return xi_apply(m, (lo, hi)), (lo, hi)


def xi_apply(m: np.ndarray, params) -> np.ndarray:
    """Apply stored min-max parameters; out-of-range values clamp to [0, 1]."""
    lo, hi = params
    m = np.asarray(m, dtype=float)
    span = hi - lo
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (m - lo) / span
    out[:, span == 0] = 0.0  # constant columns carry no information
    return np.clip(out, 0.0, 1.0)


@dataclass(frozen=True)
class FittedTransform:
    """Frozen state needed to map new real data into the complex plane.

    ``encoder_weights`` (random, r x r), ``decoder_weights`` (ridge solution,
    r x r) and ``xi_params`` are present only for the autoencoder kind.
    """

    kind: str                               # "natural" | "autoencoder"
    varpi: int = 0
    encoder_weights: np.ndarray | None = None
    decoder_weights: np.ndarray | None = None
    xi_params: tuple | None = None

    @property
    def n_features(self) -> int | None:
        if self.kind == "natural":
            return None
        return self.encoder_weights.shape[0]


def fit_natural(z: np.ndarray) -> FittedTransform:
    """Transform whose imaginary part is identically zero (stateless)."""
    return FittedTransform(kind="natural")


def fit_autoencoder(z: np.ndarray, c: float, varpi: int,
                    rng: np.random.Generator) -> FittedTransform:
    """Fit the random-encoder / closed-form-decoder latent map on *z*.

    Encoder weights are uniform on [-1, 1]; the decoder minimizes
    ``c/2 ||Z - S_hat V||^2 + 1/2 ||V||^2`` where ``S_hat`` is the normalized
    encoder image of Z. ``varpi`` selects whether the decoder or its
    transpose builds the imaginary part at apply time.
    """
    z = np.asarray(z, dtype=float)
    if c <= 0:
        raise ValueError(f"regularization c must be > 0, got {c}")
    if varpi not in (0, 1):
        raise ValueError(f"varpi must be 0 or 1, got {varpi}")
    r = z.shape[1]
    enc = uniform_matrix(rng, r, r, -1.0, 1.0)
    s_hat, _ = xi_fit_apply(z @ enc)
    v = real_ridge(s_hat, z, c, mode="auto")
    mix = varpi * v + (1 - varpi) * v.T
    _, xi_params = xi_fit_apply(z @ mix)
    return FittedTransform(kind="autoencoder", varpi=int(varpi),
                           encoder_weights=enc, decoder_weights=v,
                           xi_params=xi_params)


def apply_transform(t: FittedTransform, z: np.ndarray) -> np.ndarray:
    """Map real matrix *z* to its complex representation under *t*."""
    z = np.asarray(z, dtype=float)
    if t.kind == "natural":
        return z.astype(complex)
    if z.shape[1] != t.n_features:
        raise ValueError(
            f"transform fitted on {t.n_features} columns, got {z.shape[1]}")
    mix = t.varpi * t.decoder_weights + (1 - t.varpi) * t.decoder_weights.T
    s = xi_apply(z @ mix, t.xi_params)
    return z + 1j * s


# ---------------------------------------------------------------------------
# Serialization (JSON sidecar)
# ---------------------------------------------------------------------------

def transform_to_dict(t: FittedTransform) -> dict:
    d = {"schema": TRANSFORM_SCHEMA, "kind": t.kind, "varpi": t.varpi}
    if t.kind == "autoencoder":
        d["encoder_weights"] = t.encoder_weights.tolist()
        d["decoder_weights"] = t.decoder_weights.tolist()
        d["xi_min"] = t.xi_params[0].tolist()
        d["xi_max"] = t.xi_params[1].tolist()
    return d


def transform_from_dict(d: dict) -> FittedTransform:
    if d.get("schema") != TRANSFORM_SCHEMA:
        raise ValueError(f"unsupported transform schema {d.get('schema')!r}")
    if d["kind"] == "natural":
        return FittedTransform(kind="natural")
    return FittedTransform(
        kind="autoencoder",
        varpi=int(d["varpi"]),
        encoder_weights=np.asarray(d["encoder_weights"], dtype=float),
        decoder_weights=np.asarray(d["decoder_weights"], dtype=float),
        xi_params=(np.asarray(d["xi_min"], dtype=float),
                   np.asarray(d["xi_max"], dtype=float)),
    )


def save_transform(t: FittedTransform, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(transform_to_dict(t), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_transform(path) -> FittedTransform:
    with open(path, encoding="utf-8") as fh:
        return transform_from_dict(json.load(fh))
