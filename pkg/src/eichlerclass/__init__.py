"""Exact invariants of CM quadratic orders over Q(sqrt(p)) and Eichler class numbers.

The package computes, in exact integer and rational arithmetic:

* the real quadratic field F = Q(sqrt(p)): fundamental unit, h(F), zeta_F(-1),
  prime decomposition;
* the totally imaginary quadratic extensions K/F with [O_K^x : O_F^x] > 1,
  their Hasse unit indices, class numbers and integral bases;
* all quadratic O_F-orders and proper Z[sqrt(p)]-orders B with w(B) > 1;
* the class number h(O) = Mass(O) + Ell(O) of an Eichler order of
  square-free level in a totally definite quaternion algebra over F.
"""

from .arith import Rational, kronecker, sigma1, factorize, is_prime
from .realquad import QuadInt, QuadNumber, RealQuadField, PrimeIdealF, build_field
from .cmfield import CMFieldDescriptor, enumerate_cm_fields
from .orders import OrderInvariant, enumerate_suborders_OF, enumerate_proper_A_orders
from .quaternion import EichlerInput, ClassNumberReport, class_number_eichler
from .context import field_context

__all__ = [
    "Rational",
    "kronecker",
    "sigma1",
    "factorize",
    "is_prime",
    "QuadInt",
    "QuadNumber",
    "RealQuadField",
    "PrimeIdealF",
    "build_field",
    "CMFieldDescriptor",
    "enumerate_cm_fields",
    "OrderInvariant",
    "enumerate_suborders_OF",
    "enumerate_proper_A_orders",
    "EichlerInput",
    "ClassNumberReport",
    "class_number_eichler",
    "field_context",
]

__version__ = "0.1.0"
