"""Exact computations on finitely presented monoids that embed in groups:
prime ideals (characters), the right Ore condition, localizations,
flatness of monoid actions, points and their stabilizer data, and the
complete list of subtoposes of monoid type."""

from .errors import GuardError, InputError, ParseError
from .families import (IntMatrix2, RatMatrix2, SupernaturalNumber,
                       adjugate_check, mat_in_M_y_e11, mat_in_M_y_zero,
                       mat_prime_membership, parse_matrix2, parse_supernatural,
                       smith_normal_form, sn_divides, sn_in_A_y, sn_in_M_y,
                       tk_element_key, tk_normal_form, tk_words_equal)
from .msets import (FiniteLeftMSet, FiniteRightMSet, FlatnessReport,
                    SymbolicMSet, TensorProduct, check_flat, parse_mset,
                    tensor)
from .ore import (OreQuery, OreVerdict, is_right_ore, ore_witness_table,
                  replay_witness)
from .points import (DivisibilityPoset, EndoClassification,
                     EventuallyPeriodicWord, PointDescriptor, PosetIdeal,
                     check_My_equals_Ay, endo_monoid_free, ideal_enumerate,
                     my_ay_disagreement, parse_point, point_membership)
from .presentation import (EPSILON, UNKNOWN, MonoidPresentation, Relation,
                           Word, enumerate_elements, format_presentation,
                           normal_form, parse_presentation, parse_word,
                           words_equal)
from .primes import (Character, LocalizedPresentation, enumerate_prime_ideals,
                     groupification, localization_presentation)
from .registry import (BUILTIN_SUMMARY, resolve_builtin, resolve_presentation)
from .subtoposes import (CrossValidation, SubtoposRecord,
                         cross_validate_flatness, enumerate_monoid_subtoposes)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
