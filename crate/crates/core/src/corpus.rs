//! Seeded random inputs for the property suites: flip pairs with random
//! involutions and random rational series. The seed fully determines output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flip_pair::{FlipPair, Symbol};
use crate::linalg::{default_labels, mat_pow, IntMatrix};
use crate::markov::Graph;
use crate::series::TruncatedSeries;

pub const DEFAULT_SEED: u64 = 20_211_005;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    /// Number of pairs to produce.
    pub size: usize,
    /// Largest alphabet.
    pub max_alphabet: usize,
    /// Longest period the corpus must stay cheap to enumerate at.
    pub period: u32,
    /// Cap on the number of walks with `period` symbols, which bounds the
    /// cost of brute-force enumeration at that period.
    pub walk_cap: u64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            size: 50,
            max_alphabet: 6,
            period: 12,
            walk_cap: 1_000_000,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random involution of `0..n`: a shuffled alphabet whose
/// consecutive entries are swapped with probability one half.
pub fn random_involution(rng: &mut impl Rng, n: usize) -> Vec<Symbol> {
    let mut order: Vec<Symbol> = (0..n).collect();
    order.shuffle(rng);
    let mut tau: Vec<Symbol> = (0..n).collect();
    let mut i = 0;
    while i + 1 < n {
        if rng.gen_bool(0.5) {
            tau[order[i]] = order[i + 1];
            tau[order[i + 1]] = order[i];
            i += 2;
        } else {
            i += 1;
        }
    }
    tau
}

/// Random flip pair on `n` symbols: each orbit `{(a, b), (τb, τa)}` of the
/// reversal symmetry is an edge set with probability `density`, so
/// `AJ = JAᵀ` holds by construction.
pub fn random_flip_pair(rng: &mut impl Rng, n: usize, density: f64) -> FlipPair {
    let tau = random_involution(rng, n);
    let mut edges = vec![vec![0i64; n]; n];
    let mut decided = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if decided[a][b] {
                continue;
            }
            let on = i64::from(rng.gen_bool(density));
            let (c, d) = (tau[b], tau[a]);
            edges[a][b] = on;
            edges[c][d] = on;
            decided[a][b] = true;
            decided[c][d] = true;
        }
    }
    let a = IntMatrix::square(default_labels(n), &edges).expect("n x n");
    FlipPair::from_involution("random", a, &tau).expect("symmetric by construction")
}

fn walk_count(a: &IntMatrix, symbols: u32) -> Option<u64> {
    let p = mat_pow(a, symbols.saturating_sub(1)).ok()?;
    p.entries().iter().try_fold(0u64, |acc, x| acc.checked_add(x.to_u64()?))
}

/// Essential nonempty random pairs within the walk cap. Alphabet sizes and
/// densities vary from pair to pair.
pub fn flip_pair_corpus(seed: u64, config: &CorpusConfig) -> Vec<FlipPair> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(config.size);
    while out.len() < config.size {
        let n = rng.gen_range(1..=config.max_alphabet);
        let density = rng.gen_range(0.2..0.6);
        let p = random_flip_pair(&mut rng, n, density);
        if !Graph::from_pair(&p).is_essential() || p.edge_count() == 0 {
            continue;
        }
        if walk_count(p.a(), config.period).is_none_or(|w| w > config.walk_cap) {
            continue;
        }
        let name = format!("corpus #{} (seed {seed})", out.len());
        out.push(p.with_name(name));
    }
    out
}

/// Random series of the given order with coefficients `p/q`, `|p| ≤ 5`,
/// `1 ≤ q ≤ 4`, and the given constant term.
pub fn random_series(rng: &mut impl Rng, order: usize, constant: i64) -> TruncatedSeries {
    let mut coeffs = vec![BigRational::from_integer(BigInt::from(constant))];
    for _ in 1..=order {
        let p: i64 = rng.gen_range(-5..=5);
        let q: i64 = rng.gen_range(1..=4);
        coeffs.push(BigRational::new(p.into(), q.into()));
    }
    TruncatedSeries::from_coeffs(order, coeffs)
}
