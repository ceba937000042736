//! Engine-wide knobs.

/// Which variant of a formula with a known misprint is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Reading {
    /// The variant consistent with the surrounding theory (default).
    #[default]
    Consistent,
    /// Every formula taken verbatim, including its odd-looking variants.
    Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Failures kept per report; the report still counts all of them.
    pub max_failures: usize,
    pub reading: Reading,
    /// Cap on the total dimension of product constructions.
    pub max_product_dim: usize,
    /// Cap on the total arity of cochains that may be materialized.
    pub max_cochain_arity: usize,
    /// Cap on the number of candidates an exhaustive search may visit.
    pub search_budget: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_failures: 32,
            reading: Reading::Consistent,
            max_product_dim: 12,
            max_cochain_arity: 5,
            search_budget: 1 << 20,
        }
    }
}

impl Config {
    pub fn literal() -> Self {
        Config {
            reading: Reading::Literal,
            ..Config::default()
        }
    }
}
