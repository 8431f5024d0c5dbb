//! Information-theoretic security analysis of the rotation-key encryption:
//! Holevo information of Bob's view, guessing bounds, encoded-state
//! overlaps, and the random-basis attack.

mod attack;
mod density;

pub use attack::{
    attack_success_limit_large_d, attack_success_probability, average_overlap,
    confidence_regions, overlap_grid, random_attack_mc, AttackOutcome, LogBase, OverlapCell,
    RegionCell,
};
pub use density::{
    binomial_entropy, guess_probability_bound, holevo_asymptotic, holevo_exact,
    holevo_exact_capped, input_density_bruteforce, rho_max_eigenvalue,
    rho_max_eigenvalue_asymptotic, symmetric_density, DensityMatrix, SymmetricState,
    DEFAULT_HOLEVO_MODE_CAP,
};
