"""Minimum-dimension positive Markov realizations of discrete-time transfer functions."""

from ._posreal import (
    Config,
    PosrealError,
    TransferFunction,
    certify_exact_minimality,
    check_divisibility_condition,
    check_external_positivity,
    classify,
    compound_realize,
    detect_rational_angles,
    find_certificate,
    karpelevic_vertices,
    lemma1_transform,
    load_config_file,
    markov_parameters,
    minimal_markov_dimension,
    mu_sequence,
    normalize_dominant_pole,
    pair_feasible,
    perturb_to_rational,
    realize,
    region_scan,
    solve_feasibility,
    synthesize,
    theorem_certificate,
    verify_realization,
)

__all__ = [
    "Config",
    "PosrealError",
    "TransferFunction",
    "certify_exact_minimality",
    "check_divisibility_condition",
    "check_external_positivity",
    "classify",
    "compound_realize",
    "detect_rational_angles",
    "find_certificate",
    "karpelevic_vertices",
    "lemma1_transform",
    "load_config_file",
    "markov_parameters",
    "minimal_markov_dimension",
    "mu_sequence",
    "normalize_dominant_pole",
    "pair_feasible",
    "perturb_to_rational",
    "realize",
    "region_scan",
    "solve_feasibility",
    "synthesize",
    "theorem_certificate",
    "verify_realization",
]
