"""Exact counting, sampling, and limit-law analysis of random
finite-dimensional representations of the special linear Lie algebras.

A random n-dimensional representation is a uniformly chosen multiset of
irreducibles whose dimensions sum to n.  The package counts these objects
exactly, samples them (directly and through the grand-canonical Boltzmann
model), and compares exact finite-n distributions of their observables
against the limit laws, with certified truncation errors throughout.
"""

from .boltzmann import (
    BoltzmannParams,
    boltzmann_sample,
    default_cutoff,
    exact_count_mgf,
    exact_expected_shape,
    exact_prob_height_le,
    exact_prob_max_dim_le,
    expected_dim,
    rejection_uniform_sample,
    sampling_census,
    solve_saddle,
    third_moment_dim,
    truncation_tv_bound,
    variance_dim,
)
from .census import (
    BudgetError,
    IrrepCensus,
    cumulative_count,
    dim_count,
    enumerate_irreps,
    flatten_weights,
    growth_envelope,
    inverse_moment_tail,
    region_volume,
    remainder_envelope,
    weighted_tail_bound,
    write_csv,
)
from .exact_count import (
    CountTable,
    Representation,
    count_by_convolution,
    count_representations,
    counts_excluding_one_weight,
    uniform_sample,
)
from .limits import (
    LimitConstants,
    asymptotic_saddle,
    compute_constants,
    count_mgf,
    count_mgf_log_modulus,
    dim_moment_integral,
    dispersion_constant,
    exp_cdf,
    gumbel_cdf,
    limit_shape,
    saddle_scale_constant,
    variance_scale_constant,
)
from .stats import (
    STAT_NAMES,
    StatSample,
    default_shape_grid,
    normalize,
    stat_height,
    stat_max_dim,
    stat_multiplicity,
    stat_num_irreps,
    stat_shape,
)
from .weights import (
    degree,
    dim_irrep,
    dim_poly,
    height_functional,
    superfactorial,
    twice_height,
    weyl_numerator,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
