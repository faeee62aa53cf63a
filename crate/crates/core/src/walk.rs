//! Random walks in the flip graph, starting from any valid scheme.
//!
//! Each step samples one admissible flip uniformly, applies it, and then
//! reduces eagerly; every improvement of the best rank is recorded. Walks
//! are restricted to prime fields — flips over `Z` can grow coefficients
//! without bound — and are bit-reproducible from their seed: the RNG is a
//! fixed, published generator (SplitMix64) with unbiased rejection sampling,
//! so a `WalkReport` replays identically on every platform.

use alloc::vec::Vec;
use core::fmt;

use crate::flip::{apply_flip, enumerate_flips, reduce};
use crate::scheme::{Scheme, StructureError};

/// SplitMix64 (Steele–Lea–Flood; the java.util.SplittableRandom generator).
///
/// State transition: `state += 0x9E3779B97F4A7C15`; output: the finalizer
/// `z ^= z>>30, z *= 0xBF58476D1CE4E5B9, z ^= z>>27, z *= 0x94D049BB133111EB,
/// z ^= z>>31` applied to the new state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Unbiased uniform sample in `[0, n)` by rejection of the biased tail.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let threshold = n.wrapping_neg() % n; // 2^64 mod n
        loop {
            let v = self.next_u64();
            if v >= threshold {
                return v % n;
            }
        }
    }
}

/// Derives the seed of walker `walker` from a search seed: one SplitMix64
/// finalization of `seed + (walker+1)·γ`. Published so that walker results
/// can be reproduced individually with `random_walk`.
pub fn mix_seed(seed: u64, walker: u64) -> u64 {
    mix64(seed.wrapping_add(walker.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// When reductions run. Eager reduction after every flip is the only policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReductionPolicy {
    #[default]
    Eager,
}

/// Walk parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    pub seed: u64,
    pub max_steps: u64,
    pub reduction_policy: ReductionPolicy,
    /// Restart from the seed scheme after this many steps without a new best
    /// rank (the RNG stream continues; only the current scheme resets).
    pub restart_after: Option<u64>,
    /// Stop as soon as the best rank reaches this value.
    pub target_rank: Option<usize>,
    /// How often the walk re-asserts that its best scheme verifies.
    pub checkpoint_every: u64,
}

impl WalkConfig {
    pub fn new(seed: u64, max_steps: u64) -> Self {
        WalkConfig {
            seed,
            max_steps,
            reduction_policy: ReductionPolicy::Eager,
            restart_after: None,
            target_rank: None,
            checkpoint_every: 1024,
        }
    }
}

/// Trace of one walk (or of the winning walker of a parallel search).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkReport {
    /// The seed this walk actually ran with.
    pub seed: u64,
    pub start_rank: usize,
    pub best_rank: usize,
    /// Flip steps performed (may stop short of the budget at the target
    /// rank or when no move is admissible).
    pub steps_taken: u64,
    /// `(step, rank)` at every improvement of the best rank; strictly
    /// decreasing in rank, increasing in step.
    pub rank_trajectory: Vec<(u64, usize)>,
    pub best_scheme: Scheme,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WalkError {
    /// The input scheme fails Brent verification.
    InvalidScheme,
    /// Walks require a prime-field scheme.
    NotPrimeField,
    /// A config invariant is violated.
    BadConfig(&'static str),
    /// Structural failure while validating the input.
    Structure(StructureError),
}

impl fmt::Display for WalkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WalkError::InvalidScheme => write!(f, "input scheme fails Brent verification"),
            WalkError::NotPrimeField => {
                write!(f, "walks require a prime-field scheme; reduce mod p first")
            }
            WalkError::BadConfig(msg) => write!(f, "bad walk config: {msg}"),
            WalkError::Structure(e) => write!(f, "structural error: {e}"),
        }
    }
}

impl core::error::Error for WalkError {}

/// Runs one seeded random walk. Fully deterministic in `(s, cfg)`.
pub fn random_walk(s: &Scheme, cfg: &WalkConfig) -> Result<WalkReport, WalkError> {
    if !s.ring().is_prime_field() {
        return Err(WalkError::NotPrimeField);
    }
    if cfg.checkpoint_every == 0 {
        return Err(WalkError::BadConfig("checkpoint_every must be at least 1"));
    }
    if !s.verify_quick().map_err(WalkError::Structure)? {
        return Err(WalkError::InvalidScheme);
    }

    let ReductionPolicy::Eager = cfg.reduction_policy;
    let mut rng = SplitMix64::new(cfg.seed);
    let start_rank = s.rank();
    let mut current = s.clone();
    let mut best = s.clone();
    let mut best_rank = start_rank;
    let mut trajectory = Vec::new();
    let mut steps_taken = 0u64;
    let mut since_improvement = 0u64;

    let done = |best_rank: usize| cfg.target_rank.is_some_and(|t| best_rank <= t);

    if !done(best_rank) {
        for step in 1..=cfg.max_steps {
            let moves = enumerate_flips(&current);
            if moves.is_empty() {
                break;
            }
            let mv = moves[rng.below(moves.len() as u64) as usize];
            current = apply_flip(&current, mv).expect("enumerated move must be admissible");
            current = reduce(&current);
            steps_taken = step;
            since_improvement += 1;

            if current.rank() < best_rank {
                best = current.clone();
                best_rank = best.rank();
                trajectory.push((step, best_rank));
                since_improvement = 0;
                if done(best_rank) {
                    break;
                }
            }

            if step % cfg.checkpoint_every == 0 {
                assert!(
                    best.verify_quick().map_err(WalkError::Structure)?,
                    "walk invariant breached: best scheme fails verification at step {step}"
                );
            }

            if let Some(limit) = cfg.restart_after {
                if since_improvement >= limit {
                    current = s.clone();
                    since_improvement = 0;
                }
            }
        }
    }

    assert!(
        best.verify_quick().map_err(WalkError::Structure)?,
        "walk invariant breached: best scheme fails verification at termination"
    );
    Ok(WalkReport {
        seed: cfg.seed,
        start_rank,
        best_rank,
        steps_taken,
        rank_trajectory: trajectory,
        best_scheme: best,
    })
}

/// Runs `walkers` independent walks with seeds `mix_seed(cfg.seed, i)` and
/// returns the report of the walker achieving the minimum best rank, ties
/// broken by the lowest walker index.
///
/// This reference implementation is sequential; any parallel driver must
/// reduce complete walker reports with the same rule, which makes the result
/// independent of scheduling by construction.
pub fn parallel_search(s: &Scheme, cfg: &WalkConfig, walkers: usize) -> Result<WalkReport, WalkError> {
    if walkers == 0 {
        return Err(WalkError::BadConfig("walkers must be at least 1"));
    }
    let mut winner: Option<WalkReport> = None;
    for w in 0..walkers {
        let wcfg = WalkConfig {
            seed: mix_seed(cfg.seed, w as u64),
            ..*cfg
        };
        let report = random_walk(s, &wcfg)?;
        let better = match &winner {
            None => true,
            Some(best) => report.best_rank < best.best_rank,
        };
        if better {
            winner = Some(report);
        }
    }
    Ok(winner.expect("at least one walker ran"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    extern crate alloc;

    fn z2() -> RingSpec {
        RingSpec::prime_field(2).unwrap()
    }

    #[test]
    fn splitmix_reference_values() {
        // Frozen reference vectors (independently computed from the
        // published constants); the stream may never change across
        // platforms or versions.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 16294208416658607535);
        assert_eq!(rng.next_u64(), 7960286522194355700);
        assert_eq!(rng.next_u64(), 487617019471545679);
        let mut rng = SplitMix64::new(1234567);
        assert_eq!(rng.next_u64(), 6457827717110365317);
        assert_eq!(rng.next_u64(), 3203168211198807973);
        assert_eq!(rng.next_u64(), 9817491932198370423);
    }

    #[test]
    fn below_is_in_range_and_deterministic() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..1000 {
            assert!(rng.below(7) < 7);
        }
        let mut x = SplitMix64::new(9);
        let mut y = SplitMix64::new(9);
        for _ in 0..100 {
            assert_eq!(x.below(13), y.below(13));
        }
    }

    #[test]
    fn zero_budget_returns_input() {
        let s = Scheme::standard(2, 2, 2, z2());
        let report = random_walk(&s, &WalkConfig::new(1, 0)).unwrap();
        assert_eq!(report.best_rank, 8);
        assert_eq!(report.steps_taken, 0);
        assert_eq!(report.best_scheme, s);
        assert!(report.rank_trajectory.is_empty());
    }

    #[test]
    fn walks_reject_integer_schemes() {
        let s = Scheme::standard(2, 2, 2, RingSpec::integers());
        assert_eq!(
            random_walk(&s, &WalkConfig::new(1, 10)).unwrap_err(),
            WalkError::NotPrimeField
        );
    }

    #[test]
    fn walks_reject_invalid_schemes() {
        let s = Scheme::standard(2, 2, 2, z2()).without_term(0);
        assert_eq!(
            random_walk(&s, &WalkConfig::new(1, 10)).unwrap_err(),
            WalkError::InvalidScheme
        );
    }

    #[test]
    fn walk_is_deterministic_and_monotone() {
        let s = Scheme::standard(2, 2, 3, z2());
        let cfg = WalkConfig::new(7, 400);
        let a = random_walk(&s, &cfg).unwrap();
        let b = random_walk(&s, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.best_rank <= a.start_rank);
        assert!(a.best_scheme.verify().unwrap().valid);
        // Trajectory is strictly decreasing in rank, increasing in step.
        for w in a.rank_trajectory.windows(2) {
            assert!(w[1].0 > w[0].0);
            assert!(w[1].1 < w[0].1);
        }
    }

    #[test]
    fn single_walker_equals_mixed_seed_walk() {
        let s = Scheme::standard(2, 2, 2, z2());
        let cfg = WalkConfig::new(5, 200);
        let par = parallel_search(&s, &cfg, 1).unwrap();
        let solo = random_walk(&s, &WalkConfig { seed: mix_seed(5, 0), ..cfg }).unwrap();
        assert_eq!(par, solo);
    }

    #[test]
    fn walk_226_stays_within_naive_rank() {
        let s = Scheme::standard(2, 2, 6, z2());
        assert_eq!(s.rank(), 24);
        let report = random_walk(&s, &WalkConfig::new(13, 2000)).unwrap();
        assert!(report.best_rank <= 24);
        assert!(report.best_scheme.verify().unwrap().valid);
        let mut last = s.rank();
        for &(_, rank) in &report.rank_trajectory {
            assert!(rank < last, "trajectory ranks strictly decrease");
            last = rank;
        }
    }

    #[test]
    fn target_rank_stops_early() {
        let s = Scheme::standard(2, 2, 2, z2());
        let cfg = WalkConfig {
            target_rank: Some(8),
            ..WalkConfig::new(3, 1000)
        };
        let report = random_walk(&s, &cfg).unwrap();
        assert_eq!(report.steps_taken, 0);
        assert_eq!(report.best_rank, 8);
    }
}
