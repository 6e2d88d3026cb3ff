use std::env;

/// Resource caps shared by the capped operations.
///
/// Every field can be overridden through an environment variable, see
/// [`Limits::from_env`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest degree of a dense [`Polynomial`](crate::polynomials::Polynomial).
    pub max_dense_degree: usize,
    /// Largest degree an SPS expansion may reach.
    pub max_expansion_degree: usize,
    /// Upper bound on the number of term products formed by one expansion.
    pub max_expansion_work: u64,
    /// Largest degree for which `d^(2d)` is materialized.
    pub max_strong_degree: usize,
    /// Largest power applied to a non-dyadic mantissa by the orientation predicate.
    pub exponent_cap: u64,
    /// Largest point set accepted by the convex-chain dynamic program.
    pub chain_cap: usize,
    /// Largest spread of binary exponents inside one exact sum.
    pub max_pow2_span: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_dense_degree: 1_000_000,
            max_expansion_degree: 100_000,
            max_expansion_work: 10_000_000,
            max_strong_degree: 5_000,
            exponent_cap: 1 << 16,
            chain_cap: 400,
            max_pow2_span: 1 << 24,
        }
    }
}

impl Limits {
    /// Defaults overridden by `LOGSPS_MAX_DENSE_DEGREE`, `LOGSPS_MAX_EXPANSION_DEGREE`,
    /// `LOGSPS_MAX_EXPANSION_WORK`, `LOGSPS_MAX_STRONG_DEGREE`, `LOGSPS_EXPONENT_CAP`,
    /// `LOGSPS_CHAIN_CAP` and `LOGSPS_MAX_POW2_SPAN`. Unparsable values are ignored.
    pub fn from_env() -> Self {
        fn read<T: std::str::FromStr>(name: &str, slot: &mut T) {
            if let Some(v) = env::var(name).ok().and_then(|s| s.trim().parse().ok()) {
                *slot = v;
            }
        }
        let mut l = Limits::default();
        read("LOGSPS_MAX_DENSE_DEGREE", &mut l.max_dense_degree);
        read("LOGSPS_MAX_EXPANSION_DEGREE", &mut l.max_expansion_degree);
        read("LOGSPS_MAX_EXPANSION_WORK", &mut l.max_expansion_work);
        read("LOGSPS_MAX_STRONG_DEGREE", &mut l.max_strong_degree);
        read("LOGSPS_EXPONENT_CAP", &mut l.exponent_cap);
        read("LOGSPS_CHAIN_CAP", &mut l.chain_cap);
        read("LOGSPS_MAX_POW2_SPAN", &mut l.max_pow2_span);
        l
    }
}
