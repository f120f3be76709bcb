"""
Maurer–Cartan theory of a DGLA over nilpotent dg Artinian coefficients: defects,
tangent spaces, obstruction lifting, gauge action and paths, Chern–Simons and the
Cartan splitting.
"""

from .artinian import (ArtinianAlgebra, artinian_builtin, dual_numbers, truncated,
                       two_variable, odd_dual, validate_artinian)
from .elements import (DeformationSpace, TensorElement, MCElement, CONSTANT, form_label,
                       parse_form, element_from_payload)
from .maurer_cartan import (mc_defect, bianchi_residual, mc_tangent, TangentSpace,
                            mc_set_dual_numbers, mc_lift, mc_solve, LiftResult)
from .gauge import gauge_act, exp_ad, PolyPath, gauge_path_check, constant_path
from .chern_simons import (CyclicStructure, cs_value, cs_gradient, finite_difference_gradient,
                           gradient_is_zero)
from .cartan import CartanSplit, split_cartan
from .batteries import BatteryResult, BATTERIES, gauge_battery, cs_battery, cartan_battery

__all__ = [
    'ArtinianAlgebra', 'artinian_builtin', 'dual_numbers', 'truncated', 'two_variable',
    'odd_dual', 'validate_artinian', 'DeformationSpace', 'TensorElement', 'MCElement',
    'CONSTANT', 'form_label', 'parse_form', 'element_from_payload', 'mc_defect',
    'bianchi_residual', 'mc_tangent', 'TangentSpace', 'mc_set_dual_numbers', 'mc_lift',
    'mc_solve', 'LiftResult', 'gauge_act', 'exp_ad', 'PolyPath', 'gauge_path_check',
    'constant_path', 'CyclicStructure', 'cs_value', 'cs_gradient',
    'finite_difference_gradient', 'gradient_is_zero', 'CartanSplit', 'split_cartan',
    'BatteryResult', 'BATTERIES', 'gauge_battery', 'cs_battery', 'cartan_battery'
]
