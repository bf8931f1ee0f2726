//! Constructive machinery: higher block pairs, flip pairs from sliding-block
//! flips, and the decomposition of a one-block flip conjugacy into half
//! elementary equivalences.

mod build_pair;
mod decompose;
mod higher_block;

pub use build_pair::{build_flip_pair, BlockFlipSpec, BlockMap, DEFAULT_VERIFY_PERIOD};
pub use decompose::{decompose_conjugacy, Decomposition, OneBlockConjugacySpec};
pub use higher_block::{block_pair, higher_block};

use thiserror::Error;

use crate::equivalence::{ChainError, EquivalenceError};
use crate::flip_pair::{FlipPair, FlipPairError, Symbol};
use crate::linalg::{IntMatrix, LinalgError};
use crate::markov::{Graph, MarkovError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid block flip: {0}")]
    InvalidBlockFlip(String),
    #[error("invalid conjugacy: {0}")]
    InvalidConjugacy(String),
    #[error("{which} is not essential")]
    NotEssential { which: &'static str },
    #[error("link D_{k} is not a half elementary equivalence: {error}")]
    LinkFailed { k: usize, error: EquivalenceError },
    #[error("recoding to the higher block pair failed: {0}")]
    Recoding(String),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Equivalence(#[from] EquivalenceError),
    #[error(transparent)]
    FlipPair(#[from] FlipPairError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// Label of a word: labels concatenated when every label is one character,
/// otherwise joined with `.`.
pub fn word_label(alphabet: &[String], w: &[Symbol]) -> String {
    let sep = if alphabet.iter().all(|l| l.chars().count() == 1) {
        ""
    } else {
        "."
    };
    w.iter()
        .map(|&s| alphabet[s].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}

/// Flip pair on `labels` with the given adjacency and symbol involution,
/// restricted to its essential part. Returns the pair and, for each kept
/// symbol, its index in the unpruned alphabet.
pub(crate) fn assemble_pair(
    name: String,
    labels: Vec<String>,
    adj: impl Fn(usize, usize) -> bool,
    tau: &[Symbol],
) -> Result<(FlipPair, Vec<usize>)> {
    let full = IntMatrix::from_fn(labels.clone(), labels.clone(), |r, c| i64::from(adj(r, c)))?;
    let keep_mask = Graph::from_matrix(&full)?.essential();
    let kept: Vec<usize> = (0..labels.len()).filter(|&s| keep_mask[s]).collect();
    let mut position = vec![usize::MAX; labels.len()];
    for (new, &old) in kept.iter().enumerate() {
        position[old] = new;
    }
    let kept_labels: Vec<String> = kept.iter().map(|&s| labels[s].clone()).collect();
    let a = IntMatrix::from_fn(kept_labels.clone(), kept_labels, |r, c| {
        i64::from(adj(kept[r], kept[c]))
    })?;
    let new_tau = kept
        .iter()
        .map(|&s| position[tau[s]])
        .collect::<Vec<_>>();
    if new_tau.contains(&usize::MAX) {
        return Err(FlipPairError::UnknownSymbol("flip leaves the essential part".into()).into());
    }
    Ok((FlipPair::from_involution(name, a, &new_tau)?, kept))
}
