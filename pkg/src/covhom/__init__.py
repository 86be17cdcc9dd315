"""Exact homology computations for abelian covers of the punctured sphere.

Fermat curves, generalized Fermat curves and cyclic covers are handled
through Schreier generators, Fox calculus and character decompositions.
"""

from .alexander import (
    AlexanderMatrix,
    HomologyReport,
    build_alexander_matrix,
    closed_form_matrix,
    crowell_ranks,
    fox_derivative,
    homology_space,
)
from .burau import collapse_ring, verify_reduction
from .characters import CharacterIndex, decomposition_table, isotypic_dimension
from .cover import Cover, CoverSpec, Kind, coset_label, homology_action, rewrite, schreier_generators
from .groupring import FiniteAbelianGroup, RingElement, augmentation, norm_element, regular_representation
from .linalg import kernel_basis, rank_mod_p, smith_normal_form
from .magnus import commutative_image, magnus_coefficient, theta
from .words import Word, commutator, conjugate, multiply, parse_word

__version__ = "0.1.0"
