"""Exact computations with Sullivan minimal algebras: cohomology, acyclic closures,
Ext, the word-length spectral sequences, the Toomer invariant e0 and the invariant r."""

__version__ = "0.1.0"

from .algebra import FreeAlgebra, Generator, Polynomial, parse_polynomial
from .model import SullivanModel, dk_model, extract_k, is_pure, pure_model, validate
from .homology import certify_ellipticity, cohomology_dim, cohomology_dims, fundamental_class
from .closure import build as build_closure, verify_acyclic
from .ext import gorenstein_check, r_invariant_computed
from .spectral import e0_from_ss, ext_page, mm_page, r_from_ss
from .invariants import cat_lower_bound_report, r_formula_pure, toomer_e0_fundamental, toomer_e0_projection
from .modelfile import ModelFile, parse_model

__all__ = [
    "FreeAlgebra", "Generator", "Polynomial", "parse_polynomial",
    "SullivanModel", "dk_model", "extract_k", "is_pure", "pure_model", "validate",
    "certify_ellipticity", "cohomology_dim", "cohomology_dims", "fundamental_class",
    "build_closure", "verify_acyclic",
    "gorenstein_check", "r_invariant_computed",
    "e0_from_ss", "ext_page", "mm_page", "r_from_ss",
    "cat_lower_bound_report", "r_formula_pure", "toomer_e0_fundamental", "toomer_e0_projection",
    "ModelFile", "parse_model",
]
