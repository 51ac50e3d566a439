"""Orbifold pure braid groups: combing normal forms, kernel rewriting, configuration
groupoids and the D^k_n arrangements, all exact and desk scale."""

from .freeprod import ProductSignature, FreeProductWord, parse_word, format_word
from .braids import BraidWord, artin_action, is_trivial, pure_generator, strand_trace
from .orbifold import (
    CombedForm, OrbWord, Surface, comb, conjugation_table, delta, equal, is_identity, lift,
    parse_orbword, parse_surface, polyvf_series, section, stretch,
)

__version__ = "0.1.0"
SCHEMA = "orbibraid/1"
