//! Empirical distributions and the deterministic randomness driving them.
//!
//! Sampling is fully empirical: a distribution is a sorted multiset of
//! observed values, evaluated as a step ECDF and sampled by the
//! left-continuous empirical inverse (index `floor(u * n)`).
//!
//! Randomness comes from xoshiro256** (Blackman & Vigna) seeded through the
//! SplitMix64 finalizer, not the platform default, so value sequences are
//! identical across runs, platforms and — given this description — across
//! reimplementations. Uniform doubles are built as `(x >> 11) * 2^-53`,
//! uniform indices as `floor(u * n)`. Streams are keyed by `(seed,
//! stream_id)`; per-node-pair stream ids are a stable hash of the pair, so
//! generation order cannot affect results.

use alloc::vec::Vec;

use crate::trace::NodeId;

/// Sampling failure.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SampleError {
    #[error("empirical distribution requires at least one sample")]
    EmptyDistribution,
    #[error("weighted choice requires at least one positive weight")]
    AllZeroWeights,
}

/// SplitMix64 finalizer: one full 64-bit mixing step.
fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// SplitMix64 sequence generator, used only to expand seeds.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// A deterministic random stream: xoshiro256** state expanded from
/// `(seed, stream_id)` via SplitMix64. Equal keys give equal sequences.
#[derive(Clone, Debug)]
pub struct RngStream {
    s: [u64; 4],
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut sm = SplitMix64::new(seed ^ mix64(stream_id));
        let mut s = [
            sm.next_u64(),
            sm.next_u64(),
            sm.next_u64(),
            sm.next_u64(),
        ];
        if s == [0; 4] {
            // xoshiro must not start from the all-zero state.
            s[0] = 1;
        }
        RngStream { s }
    }

    /// Stream for an unordered node pair: the stream id is a stable hash of
    /// the two ids, so per-pair sequences do not depend on generation order.
    pub fn for_pair(seed: u64, a: NodeId, b: NodeId) -> Self {
        let (lo, hi) = if a <= b { (a.0, b.0) } else { (b.0, a.0) };
        Self::new(seed, mix64(mix64(lo).wrapping_add(hi)))
    }

    /// xoshiro256** step.
    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform double in `[0, 1)` from the top 53 bits.
    pub fn next_f64(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / 9_007_199_254_740_992.0; // 2^-53
        (self.next_u64() >> 11) as f64 * SCALE
    }

    /// Uniform index in `0..n` as `floor(u * n)`. `n` must be positive.
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        let idx = (self.next_f64() * n as f64) as usize;
        idx.min(n - 1)
    }
}

/// A sorted multiset of observed non-negative integer values supporting
/// ECDF evaluation and inverse-transform sampling. Never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    samples: Vec<u64>,
}

impl EmpiricalDistribution {
    /// Takes ownership of the samples and sorts them.
    pub fn from_samples(mut samples: Vec<u64>) -> Result<Self, SampleError> {
        if samples.is_empty() {
            return Err(SampleError::EmptyDistribution);
        }
        samples.sort_unstable();
        Ok(EmpiricalDistribution { samples })
    }

    /// Fraction of samples `<= x`.
    pub fn ecdf(&self, x: u64) -> f64 {
        let below = self.samples.partition_point(|&s| s <= x);
        below as f64 / self.samples.len() as f64
    }

    /// Left-continuous empirical quantile: `samples[floor(u * n)]` for
    /// `u` in `[0, 1)`. Always a member of the sample set.
    pub fn quantile(&self, u: f64) -> u64 {
        let n = self.samples.len();
        let idx = ((u * n as f64) as usize).min(n - 1);
        self.samples[idx]
    }

    /// One inverse-transform draw.
    pub fn sample(&self, rng: &mut RngStream) -> u64 {
        let u = rng.next_f64();
        self.quantile(u)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[u64] {
        &self.samples
    }

    pub fn min(&self) -> u64 {
        self.samples[0]
    }

    pub fn max(&self) -> u64 {
        self.samples[self.samples.len() - 1]
    }
}

/// Picks index `i` with probability `weights[i] / sum(weights)`.
/// Weights must be non-negative; zero-weight entries are never chosen.
pub fn weighted_choice(weights: &[f64], rng: &mut RngStream) -> Result<usize, SampleError> {
    debug_assert!(weights.iter().all(|&w| w >= 0.0));
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(SampleError::AllZeroWeights);
    }
    let target = rng.next_f64() * total;
    let mut acc = 0.0;
    let mut last_positive = None;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last_positive = Some(i);
            if target < acc {
                return Ok(i);
            }
        }
    }
    // Float round-off can leave `target` marginally above the final
    // accumulator; fall back to the last positive-weight entry.
    Ok(last_positive.expect("total > 0 implies a positive weight"))
}
