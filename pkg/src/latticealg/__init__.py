"""Exact algebraic states on finite classical lattices."""
from .functionals import LocalFunctional, dirac, is_state, state, total_variation, uniform_state
from .geometry import (
    ChoquetDecomposition,
    CxFunction,
    CxState,
    StatePolytope,
    alternative_decompositions,
    choquet_decompose,
    cx_expectation,
    cx_indicator,
    cx_join,
    cx_meet,
    cx_unit,
    decomposition_range,
    extreme_points,
    full_simplex,
    is_multiplicative,
    is_simplex,
    kadison,
    kadison_injective,
    membership,
    multiply,
    state_vector,
)
from .gibbs import (
    Hamiltonian,
    density_observables,
    dlr_verify,
    gibbs_boundary_state,
    gibbs_decomposition_check,
    gibbs_reference,
    level_set_probabilities,
    microcanonical_states,
    stationary_analysis,
)
from .lattice import (
    Configuration,
    RegionFamily,
    Universe,
    Verdict,
    enumerate_configurations,
    fixture_a,
    fixture_b,
    verify_directed_family,
)
from .morphisms import (
    MorphismFamily,
    ReferenceMeasure,
    dual,
    explicit_reference,
    lift,
    marginal,
    uniform_reference,
    verify_morphism_axioms,
)
from .observables import LocalObservable, combine, constant, evaluate, indicator, point_indicator, sup_norm, unit
from .quasilocal import (
    QuasilocalElement,
    collect,
    equivalent,
    is_positive,
    normal_form,
    order_unit_e,
    p_E_norm,
    pair,
    qjoin,
    rewrite,
)
from .symmetry import (
    LatticeSymmetry,
    SymmetryGroup,
    act_observable,
    act_state,
    breakdown_report,
    invariant_states,
)
from .threads import Thread, restrict_state, thread_from_top, tl_identify, verify_thread

__version__ = "0.1.0"
