"""Implicit equations of tensor-product surfaces from moving planes and quadrics."""
from .algebra import (BiHomPoly, MovingForm, SurfaceParam, XForm, load_fixture, parse_bipoly,
                      parse_xform, transpose_params)
from .detrep import (assemble_complex, assemble_d2, assemble_mpq, complex_determinant,
                     det_forms, minor_ratio, mpq_determinant)
from .fields import GF, QQ, parse_field
from .oracle import implicit_equation, power_check, proportional
from .syzygy import (koszul_z2, moving_planes, plane_generated_quadrics, quadratic_relations,
                     reduced_quadrics, saturated_quadrics)
from .thresholds import analyze, base_degree_r, eta0, mu0, nu0, zeta0

__version__ = "0.1.0"
