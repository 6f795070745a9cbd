"""Reasoning toolkit for four-valued (Belnap-Dunn) modal logics with [], [*] and I."""

from .formula import (
    And, BBox, Box, Formula, Ign, Neg, Or, ParseError, Sequent, Tri, Var,
    parse_formula, parse_sequent, to_text, to_unicode,
)
from .semantics import (
    Frame, FrameClass, Model, PointedModel, TruthState, eval_formula, parse_model, dump_model,
)
from .oracle import EnumerationBudget, find_countermodel, valid_on_frame
from .tableau import prove

__version__ = "0.1.0"

__all__ = [
    "And", "BBox", "Box", "Formula", "Ign", "Neg", "Or", "ParseError", "Sequent", "Tri", "Var",
    "parse_formula", "parse_sequent", "to_text", "to_unicode",
    "Frame", "FrameClass", "Model", "PointedModel", "TruthState", "eval_formula", "parse_model",
    "dump_model", "EnumerationBudget", "find_countermodel", "valid_on_frame", "prove",
]
