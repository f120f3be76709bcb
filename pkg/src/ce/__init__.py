"""
Chevalley–Eilenberg complexes and Lie algebra (co)homology.
"""

from .complexes import (CEComplexSpec, Direction, ce_cochain_complex, ce_chain_complex,
                        lie_cohomology, lie_homology, invariant_dimension, wedges)

__all__ = [
    'CEComplexSpec', 'Direction', 'ce_cochain_complex', 'ce_chain_complex',
    'lie_cohomology', 'lie_homology', 'invariant_dimension', 'wedges'
]
