from specsetlab.bounds.bounds import (
    crossover,
    gamma,
    gamma_1,
    gamma_estimate,
    gamma_k,
    h_annulus,
    h_sector,
    paulsen_bound,
    paulsen_crossovers,
    paulsen_psi,
    shields_bound,
    thm0_bound,
    thm1_upper,
)
