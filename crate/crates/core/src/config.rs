use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Knobs shared by every computation that enumerates, searches or samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Seed of the single random stream used by randomized splittings and
    /// certificate sampling.
    pub seed: u64,
    /// Largest group order accepted by the closure computation.
    pub element_bound: usize,
    /// Largest sublattice index any family scan will reach.
    pub index_budget: u64,
    /// Primes are never searched beyond this value.
    pub prime_search_bound: u64,
    /// Consecutive irreducible minimal polynomials required before a
    /// rational constituent is declared irreducible.
    pub irreducibility_rounds: usize,
    /// Random draws allowed per splitting step before giving up.
    pub split_attempts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            element_bound: 20_000,
            index_budget: 10_000,
            prime_search_bound: 10_000_000,
            irreducibility_rounds: 20,
            split_attempts: 200,
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config {
            seed,
            ..Config::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}
