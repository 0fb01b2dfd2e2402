"""The four trainable models and their closed-form training pipelines.

Kinds
-----
``rvfl``
    Random hidden layer plus a direct input-to-output link; real arithmetic.
``elm``
    Same, without the direct link.
``rvflx_n``
    Complex network over the natural transform (zero imaginary input).
``rvflx_auto``
    Complex network over the autoencoder transform.

Hidden weights/biases are drawn once from a seeded generator and never
updated; only the output weights are solved (ridge closed form). The complex
kinds optionally sparsify the hidden parameters: a fraction ``alpha`` of
weight entries and of bias entries is forced to exactly zero (the whole
complex entry), acting as regularization.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .activations import ACTIVATION_NAMES, apply_complex, apply_real
from .errors import DataError
from .matrix import (complex_matmul, hermitian_solve_regularized, make_rng,
                     uniform_matrix)
from .solvers import real_ridge
from .transforms import (FittedTransform, apply_transform, fit_autoencoder,
                         fit_natural, transform_from_dict, transform_to_dict)

MODEL_KINDS = ("rvfl", "elm", "rvflx_n", "rvflx_auto")
COMPLEX_KINDS = ("rvflx_n", "rvflx_auto")
MODEL_SCHEMA = "rvflx-model/1"


@dataclass(frozen=True)
class HyperParams:
    """One grid point: regularization, width, activation, sparsity, seed.

    ``alpha`` is the fraction of hidden weight and bias entries forced to
    zero (complex kinds only; exact count via floor). ``varpi`` selects the
    decoder orientation of the autoencoder transform. ``direct_link=False``
    drops the input block from the output solve (the "woDL" variant).
    """

    c: float = 1.0
    n_hidden: int = 100
    activation: str = "relu"
    alpha: float = 0.0
    varpi: int = 0
    direct_link: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError(f"c must be > 0, got {self.c}")
        if self.n_hidden < 1:
            raise ValueError(f"n_hidden must be >= 1, got {self.n_hidden}")
        if self.activation not in ACTIVATION_NAMES:
            raise ValueError(f"unknown activation {self.activation!r}")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.varpi not in (0, 1):
            raise ValueError(f"varpi must be 0 or 1, got {self.varpi}")

    def to_dict(self) -> dict:
        return {"c": self.c, "n_hidden": self.n_hidden,
                "activation": self.activation, "alpha": self.alpha,
                "varpi": self.varpi, "direct_link": self.direct_link,
                "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "HyperParams":
        return cls(c=float(d["c"]), n_hidden=int(d["n_hidden"]),
                   activation=d["activation"], alpha=float(d["alpha"]),
                   varpi=int(d["varpi"]), direct_link=bool(d["direct_link"]),
                   seed=int(d["seed"]))


@dataclass(frozen=True)
class FittedModel:
    """Frozen random weights, fitted transform, and solved output weights."""

    kind: str
    hp: HyperParams
    hidden_weights: np.ndarray       # (r, n_hidden), real or complex
    hidden_bias: np.ndarray          # (1, n_hidden), real or complex
    eta: np.ndarray                  # output weights, real or complex
    transform: FittedTransform | None = None
    class_names: tuple = field(default_factory=tuple)

    @property
    def n_features(self) -> int:
        return self.hidden_weights.shape[0]


def init_real_params(hp: HyperParams, r: int, rng: np.random.Generator):
    """Random real hidden parameters: weights U[-1,1], one bias per node U[0,1]."""
    fw = uniform_matrix(rng, r, hp.n_hidden, -1.0, 1.0)
    fb = uniform_matrix(rng, 1, hp.n_hidden, 0.0, 1.0)
    return fw, fb


def init_complex_params(hp: HyperParams, r: int, rng: np.random.Generator,
                        zero_imaginary: bool = False):
    """Random complex hidden parameters with alpha-sparsification applied.

    Draw order is fixed: real weight block, real bias row, imaginary weight
    block, imaginary bias row. The real-part draws therefore coincide with
    ``init_real_params`` under the same generator state, which is what makes
    the real-network reduction testable. ``zero_imaginary`` is a test hook
    that zeroes both imaginary blocks after drawing (draws still consumed).

    Sparsification zeroes ``floor(alpha * count)`` entries of the weight
    matrix and of the bias row, chosen uniformly without replacement; a
    zeroed entry loses both components.
    """
    if r < 1:
        raise ValueError(f"need at least one feature, got r={r}")
    fw_re = uniform_matrix(rng, r, hp.n_hidden, -1.0, 1.0)
    fb_re = uniform_matrix(rng, 1, hp.n_hidden, 0.0, 1.0)
    fw_im = uniform_matrix(rng, r, hp.n_hidden, -1.0, 1.0)
    fb_im = uniform_matrix(rng, 1, hp.n_hidden, 0.0, 1.0)
    if zero_imaginary:
        fw_im[:] = 0.0
        fb_im[:] = 0.0
    fw = fw_re + 1j * fw_im
    fb = fb_re + 1j * fb_im

    n_w = math.floor(hp.alpha * fw.size)
    n_b = math.floor(hp.alpha * fb.size)
    if n_w:
        idx = rng.choice(fw.size, size=n_w, replace=False)
        fw.reshape(-1)[idx] = 0.0
    if n_b:
        idx = rng.choice(fb.size, size=n_b, replace=False)
        fb.reshape(-1)[idx] = 0.0
    return fw, fb


def forward_hidden_real(z, fw, fb, kind: str) -> np.ndarray:
    if z.shape[1] != fw.shape[0]:
        raise ValueError(f"incompatible shapes {z.shape} @ {fw.shape}")
    return apply_real(kind, z @ fw + fb)


def forward_hidden_complex(zx, fw, fb, kind: str) -> np.ndarray:
    """Hidden features: componentwise activation of ``zx @ fw + fb``."""
    return apply_complex(kind, complex_matmul(zx, fw) + fb)


def _validate_training_data(z: np.ndarray, w_onehot: np.ndarray) -> None:
    if z.ndim != 2 or z.shape[0] == 0:
        raise DataError("training data has no rows")
    if w_onehot.shape[0] != z.shape[0]:
        raise DataError(
            f"{z.shape[0]} feature rows but {w_onehot.shape[0]} target rows")
    if w_onehot.ndim != 2 or w_onehot.shape[1] < 2:
        raise DataError("need one-hot targets with at least two classes")
    row_sums = w_onehot.sum(axis=1)
    if not np.allclose(row_sums, 1.0):
        raise DataError("target rows must be one-hot (sum to 1)")


def train(kind: str, hp: HyperParams, z: np.ndarray, w_onehot: np.ndarray,
          class_names=None, zero_imaginary: bool = False) -> FittedModel:
    """Train a model of *kind* on features *z* and one-hot targets.

    Real kinds solve ``real_ridge`` on ``[Z, G1]`` (or ``G1`` for elm).
    Complex kinds first fit the real-to-complex transform on the training
    features, lift them, build the complex hidden layer, and solve the
    complex ridge system against the (real) targets. One regularization
    weight ``hp.c`` is shared by the transform's decoder solve and the
    output solve.
    """
    if kind not in MODEL_KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    z = np.asarray(z, dtype=float)
    w_onehot = np.asarray(w_onehot, dtype=float)
    _validate_training_data(z, w_onehot)
    if class_names is None:
        class_names = tuple(str(i) for i in range(w_onehot.shape[1]))
    rng = make_rng(hp.seed)
    r = z.shape[1]

    if kind in ("rvfl", "elm"):
        fw, fb = init_real_params(hp, r, rng)
        g1 = forward_hidden_real(z, fw, fb, hp.activation)
        g2 = np.hstack([z, g1]) if kind == "rvfl" else g1
        eta = real_ridge(g2, w_onehot, hp.c, mode="auto")
        return FittedModel(kind=kind, hp=hp, hidden_weights=fw,
                           hidden_bias=fb, eta=eta,
                           class_names=tuple(class_names))

    if kind == "rvflx_n":
        transform = fit_natural(z)
    else:
        transform = fit_autoencoder(z, hp.c, hp.varpi, rng)
    zx = apply_transform(transform, z)
    fw, fb = init_complex_params(hp, r, rng, zero_imaginary=zero_imaginary)
    g1 = forward_hidden_complex(zx, fw, fb, hp.activation)
    g2 = np.hstack([zx, g1]) if hp.direct_link else g1
    eta = hermitian_solve_regularized(g2, w_onehot, hp.c, mode="auto")
    return FittedModel(kind=kind, hp=hp, hidden_weights=fw, hidden_bias=fb,
                       eta=eta, transform=transform,
                       class_names=tuple(class_names))


def decision_scores(model: FittedModel, z: np.ndarray) -> np.ndarray:
    """Per-class scores; complex kinds emit elementwise magnitudes."""
    z = np.asarray(z, dtype=float)
    if z.shape[1] != model.n_features:
        raise ValueError(
            f"model expects {model.n_features} features, got {z.shape[1]}")
    if model.kind in ("rvfl", "elm"):
        g1 = forward_hidden_real(z, model.hidden_weights, model.hidden_bias,
                                 model.hp.activation)
        g2 = np.hstack([z, g1]) if model.kind == "rvfl" else g1
        return g2 @ model.eta
    zx = apply_transform(model.transform, z)
    g1 = forward_hidden_complex(zx, model.hidden_weights, model.hidden_bias,
                                model.hp.activation)
    g2 = np.hstack([zx, g1]) if model.hp.direct_link else g1
    return np.abs(complex_matmul(g2, model.eta))


def predict(model: FittedModel, z: np.ndarray):
    """Return (scores, predicted class indices); ties pick the lowest index."""
    scores = decision_scores(model, z)
    return scores, np.argmax(scores, axis=1)


def ablation_variants(hp: HyperParams) -> dict:
    """The four configurations compared in ablations, same seed and folds."""
    return {
        "full": hp,
        "alpha0": replace(hp, alpha=0.0),
        "wodl": replace(hp, direct_link=False),
        "wodl_alpha0": replace(hp, alpha=0.0, direct_link=False),
    }


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _array_to_obj(a: np.ndarray):
    if np.iscomplexobj(a):
        return {"real": a.real.tolist(), "imag": a.imag.tolist()}
    return a.tolist()


def _array_from_obj(obj) -> np.ndarray:
    if isinstance(obj, dict):
        return (np.asarray(obj["real"], dtype=float)
                + 1j * np.asarray(obj["imag"], dtype=float))
    return np.asarray(obj, dtype=float)


def model_to_dict(model: FittedModel) -> dict:
    d = {
        "schema": MODEL_SCHEMA,
        "kind": model.kind,
        "hyperparams": model.hp.to_dict(),
        "hidden_weights": _array_to_obj(model.hidden_weights),
        "hidden_bias": _array_to_obj(model.hidden_bias),
        "eta": _array_to_obj(model.eta),
        "class_names": list(model.class_names),
        "transform": (transform_to_dict(model.transform)
                      if model.transform is not None else None),
    }
    return d


def model_from_dict(d: dict) -> FittedModel:
    if d.get("schema") != MODEL_SCHEMA:
        raise ValueError(f"unsupported model schema {d.get('schema')!r}")
    return FittedModel(
        kind=d["kind"],
        hp=HyperParams.from_dict(d["hyperparams"]),
        hidden_weights=_array_from_obj(d["hidden_weights"]),
        hidden_bias=_array_from_obj(d["hidden_bias"]),
        eta=_array_from_obj(d["eta"]),
        transform=(transform_from_dict(d["transform"])
                   if d["transform"] is not None else None),
        class_names=tuple(d["class_names"]),
    )


def save_model(model: FittedModel, path, extra: dict | None = None) -> None:
    """Write the model as versioned JSON; *extra* adds artifact metadata."""
    d = model_to_dict(model)
    if extra:
        d.update(extra)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(d, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path) -> FittedModel:
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))


def load_model_dict(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
