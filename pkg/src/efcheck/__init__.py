"""Exact polyhedral tools for checking extended-formulation relationships."""
from .numeric import Matrix, Rational, rank, solve_linear_system
from .polyhedron import (Block, HPolyhedron, LinearConstraint, Rel, VarSpace, VPolytope,
                         contains_point, equals, is_bounded, is_subset, remove_redundant)
from .lp import LPProblem, LPOutcome, Sense, Status, solve
from .projection import ProjectionKind, ProjectionResult, fm_eliminate, project_onto_block
from .vertices import enumerate_vertices
from .ef import (BlockedPolyhedron, EFVerdict, check_ef_iff, check_ef_linear_map,
                 check_ef_standard, detect_effective_G_zero, verify_map_image)
from .augmentation import AugmentationSpec, build_augmentation, build_example_1, demonstrate_mutual_ef
from .mstp import (WeightedGraph, build_edmonds, build_martin, build_martin_restated,
                   check_subtour_redundancy, kruskal, paradox_demo)
from .auxiliary import LinkingMap, check_equivalence, solve_direct, solve_via_auxiliary

__version__ = "0.1.0"
