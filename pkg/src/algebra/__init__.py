"""
Lie algebras, Lie modules, graded-commutative algebras, the DGLA tensor construction,
invariant pairings, finite groups, validators and the builtin catalog.
"""

from .lie import LieAlgebra, LieModule
from .gca import GCA
from .pairing import InvariantPairing
from .dgla import DGLA, build_dgla
from .validators import StructureValidator, ValidationReport
from .catalog import (builtin, resolve_builtin, lie_builtin, gca_builtin, module_builtin,
                      pairing_builtin, levi_civita, sl2, abelian, heisenberg3, iso21, gravity,
                      torus_gca, surface_gca, interval_forms, resolve_dgla)
from .groups import (FiniteGroup, group_builtin, validate_group, cyclic, symmetric, dihedral,
                     quaternion, cycle_label, BUNDLED_GROUPS)

__all__ = [
    'LieAlgebra', 'LieModule', 'GCA', 'InvariantPairing', 'DGLA', 'build_dgla',
    'StructureValidator', 'ValidationReport', 'builtin', 'resolve_builtin', 'lie_builtin',
    'gca_builtin', 'module_builtin', 'pairing_builtin', 'levi_civita', 'sl2', 'abelian',
    'heisenberg3', 'iso21', 'gravity', 'torus_gca', 'surface_gca', 'interval_forms', 'resolve_dgla',
    'FiniteGroup', 'group_builtin', 'validate_group', 'cyclic', 'symmetric', 'dihedral',
    'quaternion', 'cycle_label', 'BUNDLED_GROUPS'
]
