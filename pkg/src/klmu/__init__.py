"""Kazhdan-Lusztig polynomials, mu-coefficients and cells for the affine Weyl group B~2.

The core objects are :func:`b2` (and :func:`a2` for A~2), whose elements are
built from words such as ``b2()("rtstr")``, and the shared KL cache returned
by :func:`engine`.
"""

from .coxeter import CoxeterSystem, GroupElement, a2, b2
from .kl import engine, kl_polynomial, mu, mu_tilde
from .laurent import KLPoly, LaurentPoly

__all__ = [
    "CoxeterSystem",
    "GroupElement",
    "KLPoly",
    "LaurentPoly",
    "a2",
    "b2",
    "engine",
    "kl_polynomial",
    "mu",
    "mu_tilde",
]

__version__ = "0.1.0"
