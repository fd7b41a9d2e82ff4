"""Exact analysis of coalitional games with belief-function priors over states."""
from .choquet import choquet_integral, choquet_via_mass, expectation
from .coregeo import (
    aggregate_contract, core_membership, core_nonempty, core_vertices, exante_core_hrep,
    exante_core_vrep, exante_membership, exante_sufficient, lift_core_point, lineality_basis,
    same_pseudo_vertex,
)
from .errors import BelGameError, PreconditionError, UnsupportedConfigurationError, ValidationError
from .games import (
    BelGame, Contract, TUGame, expected_game, is_convex_tu, is_efficient, is_exante_convex,
    is_feasible, marginal_vector, shapley_contract, shapley_value,
)
from .setfunc import (
    BeliefFunction, Capacity, Kind, MassFunction, StateSpace, belief_from_capacity,
    belief_from_mass, classify, mobius_inverse, plausibility, zeta,
)
from .solutions import (
    Verdict, bargaining_set_membership, blocks, kernel_membership, legitimate_blocking,
    prenucleolus_contract, prenucleolus_tu, strong_bargaining_set_membership, surplus, theta,
)

__version__ = "0.1.0"
