"""Model monomial weights in C²: Hessian eigenvalue asymptotics, coercivity
multipliers, spectrum decisions and numerical verification harnesses."""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .exponents import (DerivedSets, ExponentSet, WeightProfile, classify,  # noqa: E402
                        derived_sets, gamma_uv, discreteness_hypotheses)
from .weight import (HessianEval, Point2C, det_trace_closed_form, hessian_at,  # noqa: E402
                     lambda_approx, weight_value)
from .support import (CoercivityMultiplier, DeltaAnalysis, Direction, RegionLabel,  # noqa: E402
                      SpectrumDecision, classify_region, coercivity_multiplier,
                      delta_analysis, lambda_exponent, optimal_delta, predicted_lambda,
                      spectrum_decision, sufficient_delta, support_max)
from .disc import (DiscFunction, RadialPotential, bergman_project,  # noqa: E402
                   cauchy_annulus_ratio, dbar_energy, false_inequality_ratio,
                   poincare_defect, uncertainty_ratio)
from .energy import (EnergyReport, QuadratureSpec, TestFunction,  # noqa: E402
                     coercivity_certificate, region_decomposition_check,
                     standard_family, weighted_energy)
from .admissibility import (RadiusEstimate, doubling_constant, kappa_radius_check,  # noqa: E402
                            laplacian, rho_by_definition, rho_by_poly_formula)
from .report import AnalysisReport, parse_gamma  # noqa: E402

GAMMA_FIG = ExponentSet([(16, 0), (12, 3), (8, 6), (4, 9), (0, 12)])
