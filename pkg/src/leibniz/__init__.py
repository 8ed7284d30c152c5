"""Exact computations with finite-dimensional Leibniz algebras.

Structure constants are exact rationals or sparse polynomials in named
parameters.  The package covers the Leibniz identity, central and derived
series, derivations, gradations, a catalog of quasi-filiform nilpotent
algebras with their solvable extensions, an extension workbench for
non-existence arguments, invariant profiles, and JSON serialization.
"""

from __future__ import annotations

from .algebra import (
    Algebra,
    LinearMap,
    Subspace,
    abelian,
    apply_basis_change,
    bracket,
    from_table,
    is_lie,
    leibniz_residual,
    verify_leibniz,
)
from .catalog import get_entry, list_families, make, rebase_link
from .derivations import (
    derivation_space,
    match_derivation_pattern,
    nil_independence_rank,
    nil_independent_pair,
    verify_nilradical_candidate,
)
from .errors import (
    LeibnizError,
    PolynomialEntries,
    DimensionMismatch,
    SingularMap,
    NotInvariant,
    UnknownPattern,
    CapExceeded,
    UnknownSymbol,
    CyclicSubstitution,
    BudgetExceeded,
    BadDim,
    BadParam,
    ParseError,
)
from .gradation import Gradation, search_max_length_gradation, verify_gradation
from .harness import run_harness
from .invariants import distinguish, profile
from .scalars import Poly, format_scalar, parse_scalar, var
from .serialization import dump, load, parse, serialize
from .structure import (
    derived_series,
    is_nilpotent,
    is_quasi_filiform,
    is_solvable,
    lower_central_series,
    right_annihilator,
)
from .workbench import (
    auto_solve_linear,
    build_generic_extension,
    residual_system,
    run_script,
    substitute,
)

__version__ = "0.1.0"
