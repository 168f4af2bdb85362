use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_241_031;
pub const DEFAULT_CUTOFF: usize = 12;

/// Knobs shared by every randomized or truncated computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    /// Resolution length beyond which dimensions are reported as above the cutoff.
    pub cutoff: usize,
    pub random_trials: usize,
    /// Largest `q^h` for which an exhaustive search over a finite field is attempted.
    pub exhaustive_limit: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: DEFAULT_SEED,
            cutoff: DEFAULT_CUTOFF,
            random_trials: 200,
            exhaustive_limit: 1_000_000,
        }
    }
}

impl Settings {
    /// Defaults, with the seed taken from `STRATIKIT_SEED` when set.
    pub fn from_env() -> Self {
        let mut s = Settings::default();
        if let Some(seed) = std::env::var("STRATIKIT_SEED")
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            s.seed = seed;
        }
        s
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Settings { seed, ..self }
    }

    pub fn with_cutoff(self, cutoff: usize) -> Self {
        Settings { cutoff, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// An independent stream derived from the seed and a tag.
    pub fn rng_for(&self, tag: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}
