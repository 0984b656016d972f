"""Bound quivers, relation extensions and first Hochschild cohomology."""

from .cycles import (CycleReport, FormulaMismatch, UnknownPoint, chordless_cycles, classify_arrows,
                     delete_point, hochschild_degree, n_B_euler, n_B_theorem)
from .equivalence import (ArrowPartition, Lemma31Violation, arrow_equivalence_classes, relation_invariant,
                          strongly_minimal_relations)
from .extension import (ExtensionResult, NotStronglyMinimal, Potential, UnknownArrow, check_no_forbidden_walk,
                        cyclic_derivative, relation_extension)
from .fileformat import ParseError, SemanticError, parse_quiver_file, print_quiver_file, read_quiver_file
from .hochschild import (Derivation, DerivationSpace, NotADerivation, check_exact_sequence, der0_basis,
                         derivation_space, hh1_dimension, int0_basis, is_constrained,
                         project_derivation)
from .quiver import Arrow, Element, PathWord, Quiver, QuiverError, element
from .relations import (Circuit, FamilyTooLarge, NotAGeneratingSet, NotARelation, ParallelFamily, circuits, is_minimal,
                        is_strongly_minimal, strengthen_relation, strengthen_system)
from .rewriting import (CompletionOverflow, NotAdmissible, NotFiniteDimensional, Presentation,
                        centre_dimension, complete_rewriting, dimension, normal_form)

__version__ = "0.1.0"
