//! Deterministic fixtures shared by the benchmarks.

use hbsums::fuzz::{random_coupling_matrix, random_instance, trial_rng};
use hbsums::{CouplingMatrix, Instance};

pub const SEED: u64 = 0xbe7c;

/// Random instance with `n` factors of degree at most 3 and up to 6 zeros of G.
pub fn instance(n: usize) -> Instance {
    random_instance(&mut trial_rng(SEED, n), n, 3, 6)
}

pub fn coupling(n: usize) -> CouplingMatrix {
    random_coupling_matrix(&mut trial_rng(SEED ^ 1, n), n)
}
