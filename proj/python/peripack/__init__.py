"""Packings of homothetic convex bodies.

Generators for the disk and square families, an exact/tolerance-aware
verifier, perimeter/escape metrics, and the perimeter bounds, all exposed
over canonical JSON strings (see the README for the schema).
"""

from ._peripack import (
    PeripackError,
    __version__,
    bound,
    depth_profile,
    dyadic_certificate,
    eq12_check,
    fit_scaling,
    gen_apollonian_chain,
    gen_explicit_disks,
    gen_ford,
    gen_greedy_square,
    gen_grid_translates,
    gen_layers_general,
    gen_sloped_squares,
    gen_square_layers,
    measure,
    render_svg,
    totient,
    totient_sq_sum,
    totient_sum,
    verify,
)

__all__ = [
    "PeripackError",
    "__version__",
    "bound",
    "depth_profile",
    "dyadic_certificate",
    "eq12_check",
    "fit_scaling",
    "gen_apollonian_chain",
    "gen_explicit_disks",
    "gen_ford",
    "gen_greedy_square",
    "gen_grid_translates",
    "gen_layers_general",
    "gen_sloped_squares",
    "gen_square_layers",
    "measure",
    "render_svg",
    "totient",
    "totient_sq_sum",
    "totient_sum",
    "verify",
]
