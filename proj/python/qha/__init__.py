"""Quantum harmonic analysis of time-series data sets.

Signals are complex numpy vectors of length d; data sets are (N, d) arrays
with one signal per row; operators are (d, d) complex arrays; phase-space
functions are (d, d) real arrays indexed by (time lag, frequency) mod d.
"""

from ._core import (
    alc,
    cohen_class,
    data_operator,
    differential_entropy,
    eigenvalues,
    entropy_bounds,
    experiment_names,
    gaussian_window,
    gen_chirps,
    gen_gaussian_combos,
    gen_local_components,
    gen_random_tf_weighted,
    hermite_basis,
    mixed_state_localization,
    rect_measure,
    run_experiment,
    spectrogram,
    total_correlation,
    von_neumann_entropy,
)

__all__ = [
    "alc",
    "cohen_class",
    "data_operator",
    "differential_entropy",
    "eigenvalues",
    "entropy_bounds",
    "experiment_names",
    "gaussian_window",
    "gen_chirps",
    "gen_gaussian_combos",
    "gen_local_components",
    "gen_random_tf_weighted",
    "hermite_basis",
    "mixed_state_localization",
    "rect_measure",
    "run_experiment",
    "spectrogram",
    "total_correlation",
    "von_neumann_entropy",
]

__version__ = "0.1.0"
