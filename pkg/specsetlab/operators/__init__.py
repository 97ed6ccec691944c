from specsetlab.operators.operator_core import (
    enlarge_disks,
    eval_block,
    eval_rational,
    is_spectral,
    jordan_block,
    numerical_range_bounds,
    resolvent,
    spectral_norm,
    spectrum_in_interior,
    sup_norm,
)
from specsetlab.operators.quadrature import Measure, integrate_kernel
from specsetlab.operators.cauchy_decomposition import (
    decompose,
    empirical_cb_ratio,
    g_poisson,
    g_residual,
    poisson_kernel,
    pullback_check,
    residual_kernel,
)
from specsetlab.operators.random_instances import random_instance, random_rational
