"""Exact workbench for Leibniz and Lie algebras given by structure constants."""
from .algebra import (
    Algebra,
    change_basis,
    center,
    fingerprint,
    is_leibniz,
    is_lie,
    is_nilpotent,
    is_solvable,
    leibniz_residual,
    nil_index,
    right_annihilator,
    series,
)
from .catalog import CatalogId, build, default_suite, nilradical
from .cohomology import (
    Cochain,
    differential,
    hochschild_serre_h2,
    invariant_cohomology,
    verify_cocycle_representatives,
)
from .derivations import (
    LinearMap,
    derivation_space,
    inner_derivations,
    nil_independent,
    verify_derivation_parametrization,
    verify_nilradical,
)
from .document import dumps, loads
from .gradings import Gradation, gradation_length, max_length_search, verify_gradation
from .linalg import Matrix, Subspace, null_space, rank, rref

__version__ = "0.1.0"
