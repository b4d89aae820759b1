"""Prime zeta function statistics and Riemann zero-difference repulsion."""

__version__ = "0.1.0"

from .characters import (DirichletCharacter, build_character, character_error_bound, character_prime_series,
                         character_truncation_mse, standard_characters, parse_character_spec)
from .curves import Curve, delta_grid
from .errors import (CharacterError, DomainError, EmptyTableError, InsufficientSamplesError, MonotonicityError,
                     SingularityError, ZeroParseError, ZeroTableError)
from .prime_zeta import covariance_curve, mobius, prime_zeta_full, truncated_prime_zeta, truncation_mse
from .primes import PrimeTable, nth_prime, sieve_primes
from .repulsion import ConditionalGaussian, conditional_at_zero, extreme_prob_curve, normal_cdf
from .sampling import (MomentSummary, SampleConfig, empirical_covariance, lyapunov_ratio, normality_summary,
                       sample_series)
from .zeros import DiffHistogram, ZeroTable, diff_histogram, load_zeros, trough_score
from .zeta import (EULER_GAMMA, EvalAccuracy, euler_gamma_residual, log_abs_zeta_1line, zeta_complex,
                   zeta_real)
