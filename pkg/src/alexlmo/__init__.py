"""Exact diagram algebra for the degree-truncated LMO invariant of a
3-manifold with ``H_1 = Z`` and its relation to the Alexander polynomial."""

from .exactnum import SymmetricLaurent, TruncatedSeries, b_coefficients, nu_series
from .diagrams import DiagramCombination, UniTrivalentDiagram, canonicalize, theta, wheel
from .closure import close, iota, p_wh
from .wheels import AlphaSeries, WheelSeries, alpha_from_alexander, exp_disjoint
from .weights import CPolynomial, w_conway, w_eval
from .knots import ConwayPolynomial, alexander_from_seifert, conway_from_pd
from .lmo import LMOElement, NotInImageError, lmo_forward, lmo_invert
from .kernels import BACKEND

__version__ = "0.1.0"
