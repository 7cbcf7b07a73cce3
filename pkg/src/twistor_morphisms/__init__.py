"""Twistor correspondences and the morphisms of null curves they induce."""

from .causal import (
    BP1Point,
    PlanePairLift,
    apply_causal,
    apply_causal_lift,
    apply_causal_to_curve,
    causal_closed_form,
    demonstrate_nonlocality,
    lift_g_point,
)
from .correspondence import dual_kappa, dual_kappa_inverse, kappa, kappa_inverse, lambda_inverse
from .curves import FPoint, GPoint, NullCurve, make_null_curve, make_tangent_family, random_null_curve
from .endomorphisms import Degree1Map, Degree2Map, InvariantCausalMap, check_base_point_free, random_map
from .errors import SingularInputError, TwistorError
from .harness import SuiteConfig, SuiteReport, run_suite
from .jets import Jet
from .selfdual import apply_f1, apply_to_curve, degree2_closed_form, moebius_closed_form, verify_locality_F
from .spinors import Spinor, null_factorize, projective_distance

__version__ = "0.1.0"
