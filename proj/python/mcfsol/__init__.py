"""Soliton slices, radial graphs, spectra and end oscillation in warped products."""

from ._core import (
    AmbientSpace,
    MCFSolError,
    SolitonProblem,
    __version__,
    classify_growth,
    critical_curve,
    curve_translator,
    exact_residual,
    find_slices,
    lambda1,
    oscillation,
    probe_entire,
    rayleigh_quotient,
    run_command,
    shoot,
    slice_analysis,
    stability_potential,
)

__all__ = [
    "AmbientSpace",
    "MCFSolError",
    "SolitonProblem",
    "__version__",
    "classify_growth",
    "critical_curve",
    "curve_translator",
    "exact_residual",
    "find_slices",
    "lambda1",
    "oscillation",
    "probe_entire",
    "rayleigh_quotient",
    "run_command",
    "shoot",
    "slice_analysis",
    "stability_potential",
]
