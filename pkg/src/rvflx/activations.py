"""The six hidden-layer activations and their split complex form.

The complex form applies the real activation separately to the real and
imaginary components: ``sigma_x(z) = sigma(Re z) + i * sigma(Im z)``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import expit

ACTIVATION_NAMES = ("sigmoid", "sine", "tribas", "radbas", "tansig", "relu")

_FUNCS = {
    "sigmoid": expit,
    "sine": np.sin,
    "tribas": lambda x: np.maximum(0.0, 1.0 - np.abs(x)),
    "radbas": lambda x: np.exp(-np.square(x)),
    "tansig": np.tanh,  # tansig(x) = 2/(1+exp(-2x)) - 1 == tanh(x)
    "relu": lambda x: np.maximum(0.0, x),
}


def apply_real(kind: str, m: np.ndarray) -> np.ndarray:
    """Apply activation *kind* elementwise to a real array."""
    try:
        f = _FUNCS[kind]
    except KeyError:
        raise ValueError(
            f"unknown activation {kind!r}; expected one of {ACTIVATION_NAMES}"
        ) from None
    return f(np.asarray(m, dtype=float))


def apply_complex(kind: str, m: np.ndarray) -> np.ndarray:
    """Apply activation *kind* componentwise to a complex array."""
    m = np.asarray(m, dtype=complex)
    return apply_real(kind, m.real) + 1j * apply_real(kind, m.imag)
