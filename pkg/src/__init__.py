"""
Moduli Desk
Main source package.
"""

__version__ = "0.3.0"
__description__ = "Exact finite checks for Maurer-Cartan moduli, descent of groupoid-valued prestacks and surface-group holonomy."
