"""Divergences, variational formulas and index bounds for finite-dimensional algebras."""

from ._core import (
    Error,
    InvalidInput,
    NotPositive,
    Unsupported,
    __version__,
    bell_orbifold,
    certainty_relation,
    fidelity,
    generalized_fidelity,
    kosaki_entropy,
    lp_norm_oracle,
    orbifold_index,
    pinching_index,
    relative_entropy,
    sandwiched_renyi,
)

__all__ = [
    "Error",
    "InvalidInput",
    "NotPositive",
    "Unsupported",
    "__version__",
    "bell_orbifold",
    "certainty_relation",
    "fidelity",
    "generalized_fidelity",
    "kosaki_entropy",
    "lp_norm_oracle",
    "orbifold_index",
    "pinching_index",
    "relative_entropy",
    "sandwiched_renyi",
]
