"""zetasweep: vertical-shift universality experiments for zeta-functions.

The package evaluates the Riemann and Hurwitz zeta-functions in and around
the critical strip, runs vertical-shift orbits against admissible target
functions, and estimates how often the shifted function approximates the
target to a given tolerance.
"""

__version__ = "0.1.0"

from .errors import (ConditioningError, ConfigError, EmptyProfileError,
                     GeometryError, KernelError, NoValidSampleError,
                     PoleError, PrecisionError, ZeroProximityError,
                     ZetaSweepError)
from .kernels import (DEFAULT_PRECISION, EvalPrecision, HurwitzParams,
                      RationalPolynomial, ZERO_POLYNOMIAL, exp_poly_eval,
                      hurwitz_zeta, log_zeta_tracked, riemann_zeta,
                      riemann_zeta_alternating)
from .space import (CLASSICAL_STRIP, CompactPatch, Disc, Exhaustion,
                    Rectangle, StripDomain, build_patch, frechet_distance,
                    mergelyan_fit, sup_distance)
from .enumeration import BaseIndex, encode_base, enumerate_base
from .targets import TargetFunction
from .orbit import (BestShift, ContinuousShift, DensityEstimate,
                    DiscreteShift, ErrorProfile, ProfileSample, Subject,
                    continuous_sweep, discrete_orbit, error_at, hit_density,
                    search_best_shift, translate)
from .experiments import (DensityComparisonReport, GdeltaScanResult,
                          JointComponent, JointSpec, RecurrenceReport,
                          density_comparison, gdelta_scan, joint_sweep,
                          self_recurrence)
from .config import RunConfig, parse_config, serialize_config
from .records import ResultRecord, dumps_record, loads_record, read_record, write_record
from .plotting import emit_plot, render_plot
from .cli import run

__all__ = [name for name in dir() if not name.startswith("_")]
