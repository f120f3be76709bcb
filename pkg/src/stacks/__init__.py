"""
Finite groupoids and weak equivalences, finite sites and prestacks, Čech diagrams,
the level-2 homotopy limit, descent checking and prefactorization data.
"""

from .groupoids import (FiniteGroupoid, ExplicitGroupoid, DiscreteGroupoid, GroupGroupoid,
                        ActionGroupoid, ProductGroupoid, GroupoidFunctor, Components,
                        WeakEquivalenceVerdict, validate_groupoid, validate_functor, pi0,
                        is_weak_equivalence)
from .sites import Site, site_builtin, validate_site
from .prestacks import Prestack, prestack_builtin, validate_prestack, constant_bg, functions, representable
from .cech import (SlotFunctor, HolimGroupoid, CoverVerdict, DescentReport, cech_diagram, holim2,
                   comparison_functor, check_cover, descent_check)
from .prefactorization import (TensorComplex, StructureMap, PrefactData, PrefactReport, ObsModel,
                               reorder, validate_prefact, prefact_check, obs_assignment)

__all__ = [
    'FiniteGroupoid', 'ExplicitGroupoid', 'DiscreteGroupoid', 'GroupGroupoid', 'ActionGroupoid',
    'ProductGroupoid', 'GroupoidFunctor', 'Components', 'WeakEquivalenceVerdict',
    'validate_groupoid', 'validate_functor', 'pi0', 'is_weak_equivalence', 'Site',
    'site_builtin', 'validate_site', 'Prestack', 'prestack_builtin', 'validate_prestack',
    'constant_bg', 'functions', 'representable',
    'SlotFunctor', 'HolimGroupoid', 'CoverVerdict', 'DescentReport', 'cech_diagram', 'holim2',
    'comparison_functor', 'check_cover', 'descent_check', 'TensorComplex', 'StructureMap',
    'PrefactData', 'PrefactReport', 'ObsModel', 'reorder', 'validate_prefact', 'prefact_check',
    'obs_assignment'
]
