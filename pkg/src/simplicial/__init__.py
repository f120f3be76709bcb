"""
The simplex category: ordinal maps, cofaces and codegeneracies, the relation families,
epi–mono factorization and level-2 cosimplicial groupoids.
"""

from .ordinals import (Convention, OrdinalMap, identity, coface, codegeneracy, compose, all_maps)
from .identities import IdentityReport, FAMILY_READING, family_instances, verify_simplicial_identities
from .factorization import Factorization, epi_mono_factor
from .cosimplicial import CosimplicialGroupoid, validate_cosimplicial, constant_diagram

__all__ = [
    'Convention', 'OrdinalMap', 'identity', 'coface', 'codegeneracy', 'compose', 'all_maps',
    'IdentityReport', 'FAMILY_READING', 'family_instances', 'verify_simplicial_identities',
    'Factorization', 'epi_mono_factor', 'CosimplicialGroupoid', 'validate_cosimplicial',
    'constant_diagram'
]
