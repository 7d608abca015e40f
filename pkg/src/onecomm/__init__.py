"""Commutators and noncommutators of finite groups, with Z_2^10 x| A_6 built in."""

from .characters import (CharacterTable, burnside_character_table, class_mult_coefficients,
                         commutator_count_via_frobenius, frobenius_sum, load_character_table)
from .commutators import (check_perfect_threshold, check_proposition1, commutator_width_le2,
                          commutators_bruteforce, commutators_class_reduced, is_perfect,
                          noncommutators)
from .group import ConjugacyPartition, FiniteGroup, center, conjugacy_classes, element_order
from .perm import Permutation, PermGroupTable, compose, generate, inverse
from .semidirect import SdpElement, SdpGroup, build_paper_group

__version__ = "0.1.0"
