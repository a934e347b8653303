"""Decide whether an element of Q(sqrt a, sqrt b) is a sum of two squares."""

from .biquad import BiquadElem, BiquadField, make_field, norm_total
from .decision import Verdict, decide, decide_coords, explain, format_explain
from .errors import BiquadError
from .oracle import SearchParams, corpus_crosscheck, find_witness, verify_witness

__all__ = [
    "BiquadElem",
    "BiquadError",
    "BiquadField",
    "SearchParams",
    "Verdict",
    "corpus_crosscheck",
    "decide",
    "decide_coords",
    "explain",
    "find_witness",
    "format_explain",
    "make_field",
    "norm_total",
    "verify_witness",
]
__version__ = "0.1.0"
