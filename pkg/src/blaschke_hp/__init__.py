"""Numerical study of when the derivative of a finite Blaschke product lies in H^p.

The package evaluates Blaschke products and their derivatives, computes the
integral functionals that characterise ``B' in H^p`` for ``1/2 < p < 1``
(boundary means, sublevel-set integrals, cone counting functions, dyadic
Carleson sums) and runs scaling experiments over families of zero sets.
"""
__version__ = "0.1.0"

from .core import (BlaschkeProduct, ZeroList, boundary_derivative, default_unimodular,
                   derivative, derivative_bound, evaluate, frostman_shift, log_modulus,
                   make_product, mobius_shift, preimages, pseudo_distance, read_product,
                   read_zero_list, value_and_derivative)
from .norms import (DEFAULT_CONFIG, Enclosure, NormReport, QuadratureConfig, annulus_weight,
                    besov_norm, boundary_mean, carleson_integral, hp_norm, integral_mean,
                    mixed_besov_norm, norm_report, sublevel_enclosure, sublevel_integral,
                    weak_hp_quasinorm)
from .cone import (BoundaryArcSet, ConeProfile, StolzAngle, box_kernel, cone_count_check,
                   cone_function, cone_norm, cone_profile, in_stolz, level_arcs)
from .dyadic import (DyadicSector, DyadicTree, MaximalFamily, build_tree, corollary_F_sum,
                     epsilon_family, maximal_families, protas_dyadic_sum, sector_density,
                     separation_constant, verbitskii_profile)
from .lab import (FamilySpec, FunctionalReport, SweepReport, functional_report, generate,
                  preimage_sum, sweep, sweep_exponent, theorem1_ratios)
from .estimators import BlaschkeFunctionals, ScalingExponentRegressor
from .exceptions import (BlaschkeError, ConvergenceError, CrossCheckError, DepthWarning,
                         DiskDomainError, EnclosureError, NumericalError, ParameterError,
                         RootResidualError, TruncationWarning)
