"""Degrees of freedom of electromagnetic signals limited in space, time
and frequency, with truncation-error verification against exact plane
waves."""

__version__ = "0.1.0"

from .bounds import (AsymptoticCase, CountingMode, DofBreakdown, PhysicalConstants,
                     SignalExtent, TruncationOrder, dof_3d_closed_form, dof_3d_discrete_sum,
                     dof_asymptotic, dof_space, dof_time, error_decay_factor,
                     separable_error_bound, truncation_error_bound, truncation_point)
from .errors import DivergenceError, DomainError, RangeError
from .mutual_info import (FrequencyGrid, MiResult, mi_lower_bound, modes_at_frequency,
                          mutual_information, total_modes)
from .oracle import (ErrorReport, PlaneWaveSpec, SpacetimePoint, decay_experiment,
                     empirical_error, plane_wave_exact, plane_wave_series)
from .special import (gamma_lower_bound, harmonic_addition_kernel, legendre_p,
                      spherical_bessel_bound, spherical_bessel_j)
