"""Steady patterns behind a directional quench.

Thin Python layer over the compiled solvers. Fields come back as dicts of
numpy arrays: ``x`` (and ``y``) hold cell centres, ``u`` the values, with
2D arrays indexed ``u[j, i]`` for the point ``(x[i], y[j])``.
"""

from ._core import (
    NumericalError,
    ParameterError,
    QuenchError,
    __version__,
    amplitude_of_half_period,
    bistable_wave,
    complete_elliptic_K,
    continue_front,
    continue_strip,
    critical_quantity,
    decay_rates,
    evolve_1d,
    grid_centers,
    half_period_of_amplitude,
    predict,
    run_cli,
    sample_orbit,
    solve_front,
    solve_hinfty,
    solve_strip,
    sweep,
    verify_dichotomy,
)

__all__ = [
    "NumericalError",
    "ParameterError",
    "QuenchError",
    "__version__",
    "amplitude_of_half_period",
    "bistable_wave",
    "complete_elliptic_K",
    "continue_front",
    "continue_strip",
    "critical_quantity",
    "decay_rates",
    "evolve_1d",
    "grid_centers",
    "half_period_of_amplitude",
    "predict",
    "run_cli",
    "sample_orbit",
    "solve_front",
    "solve_hinfty",
    "solve_strip",
    "sweep",
    "verify_dichotomy",
]
