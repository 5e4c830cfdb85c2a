"""Skew ruled surfaces in standard striction-line form.

Builds surfaces (expression parser with jet arithmetic, canonical gallery,
reconstruction from invariants), evaluates the invariants k / delta /
sigma and the induced curvatures, traces the distinguished curve families,
fits the power law k_N = f(u) w^n, and verifies the classification table
as executable checks. See the `ruledgeo` CLI for the command-line front end.
"""

from .analysis import (
    ClassificationReport,
    NoFit,
    PowerLawFit,
    classify,
    fit_power_law,
    near_miss_surfaces,
    verify_all,
    verify_proposition,
)
from .errors import RuledGeoError
from .families import CurveFamily, TracedCurve, direction_field, normal_curvature_along, trace_curve
from .invariants import (
    CurvaturePair,
    FundamentalForms,
    extract_invariants,
    fundamental_forms,
    gaussian_mean,
    normal_curvature,
    principal_directions,
)
from .jets import Jet2, backend_name
from .parser import parse_expression
from .surface import (
    CurveR3,
    InvariantTriple,
    StandardRuledSurface,
    gallery,
    gallery_names,
    gallery_spec,
    load_spec,
    load_spec_file,
    standardize,
    surface_from_invariants,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "CurvaturePair",
    "CurveFamily",
    "CurveR3",
    "FundamentalForms",
    "InvariantTriple",
    "Jet2",
    "NoFit",
    "PowerLawFit",
    "RuledGeoError",
    "StandardRuledSurface",
    "TracedCurve",
    "backend_name",
    "classify",
    "direction_field",
    "extract_invariants",
    "fit_power_law",
    "fundamental_forms",
    "gallery",
    "gallery_names",
    "gallery_spec",
    "gaussian_mean",
    "load_spec",
    "load_spec_file",
    "near_miss_surfaces",
    "normal_curvature",
    "normal_curvature_along",
    "parse_expression",
    "principal_directions",
    "standardize",
    "surface_from_invariants",
    "trace_curve",
    "verify_all",
    "verify_proposition",
]
