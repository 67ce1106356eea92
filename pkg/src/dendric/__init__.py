"""Combinatorics of minimal shift spaces and free-group checks of their return words."""

from .errors import InputError, InvariantViolation, MembershipError, NotABasisError, RangeError
from .freegroup import (StallingsGraph, contains, express, is_basis_of_free_group, is_free_family,
                        rank, stallings, subgroup_equals)
from .language import (ExtensionGraph, LanguageApprox, check_eq1, complexity, dendric_report,
                       extension_graph, generate_language, is_connected, is_tree, multiplicity)
from .rauzy import RauzyGraph, check_prop4, rauzy_graph, rauzy_group
from .returns import (DerivedSystem, ReturnSet, check_durand, derive, lemma2_morphism,
                      return_words, right_return_words)
from .tame import (ElementaryMove, TameCertificate, apply_move, tame_decompose,
                   verify_certificate)
from .words import (Alphabet, GroupWord, Substitution, Word, apply, apply_group, compose,
                    is_primitive, parse_group_word, parse_substitution, reduce, word)

__version__ = "0.1.0"
