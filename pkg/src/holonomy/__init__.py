"""
Surface-group representations into finite groups and their transport groupoids.
"""

from .representations import (SurfaceRep, RepEnumeration, ConjugationClasses, surface_relation,
                              enumerate_reps, conjugate_rep, conj_classes_of_reps, image_subgroup,
                              rep_to_bundle, conjugation_functor, bundle_summary)

__all__ = [
    'SurfaceRep', 'RepEnumeration', 'ConjugationClasses', 'surface_relation', 'enumerate_reps',
    'conjugate_rep', 'conj_classes_of_reps', 'image_subgroup', 'rep_to_bundle',
    'conjugation_functor', 'bundle_summary'
]
