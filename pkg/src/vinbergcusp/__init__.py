"""Exact computations around the E7 and E8 Vinberg representations."""

from .cuspgen import CuspDatum, CuspReport, generate_cusp_data, verify_report
from .curves import CurveSpec, HeightSpec, count_affine_points, jacobian_order_F2, l_polynomial
from .grading import Grading, compute_grading
from .reducibility import Certificate, CertKind, verify_certificate
from .rootsys import CartanType, RootSystem, build_root_system

__version__ = "0.1.0"
