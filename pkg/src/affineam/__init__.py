"""
AffineAM - Affine Automata as Arthur-Merlin Verifiers

Exact-rational simulation of one-way and two-way automata with affine
registers verifying languages against honest and optimally cheating provers.
"""

__version__ = "0.1.0"
__author__ = "AffineAM Team"
