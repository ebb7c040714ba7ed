"""Assortment optimization under the sequential multinomial logit model."""
from .choice import (
    choice_probability,
    expected_revenue,
    expected_revenue_by_level,
    no_choice_probability,
    palm_choice_probability,
    palm_expected_revenue,
    palm_no_choice_probability,
    total_utility,
    utility_share,
    weighted_revenue,
)
from .errors import (
    ConfigError,
    DomainError,
    InstanceFormatError,
    InvalidAssortmentError,
    InvalidInstanceError,
    ResourceLimitError,
    SMLError,
    UnsupportedModelError,
)
from .experiments import FamilyConfig, generate_instance, optimality_gap, run_benchmark
from .instancefile import dump_instance, load_dataset, load_instance, parse_instance
from .model import Instance, Product
from .optimize import (
    Method,
    OptimizationResult,
    enumerate_rol_candidates,
    first_gap,
    palm_solve_rol,
    solve_brute_force,
    solve_revenue_ordered,
    solve_rol,
    verify_optimality_bounds,
)
from .phenomena import Effect, EffectWitness, check_choice_overload, check_regularity_violation, scan_for_effects

__version__ = "0.1.0"
