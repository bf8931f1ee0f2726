//! Decomposition of a one-block flip conjugacy `ψ` into a chain of half
//! elementary equivalences of lag `4m`, where `m` is a window for `ψ⁻¹`.
//!
//! Level `k = 1..=2m+1` has alphabet `𝒜_k` of triples `(u, w, v)` with
//! `i = ⌊(k-1)/2⌋`, `j = k - 2i`, `u, v` words of length `i` over the target
//! and `w` a word of length `j` over the source. A triple is kept when some
//! `z ∈ B_k(X_A)` realizes it as `(Ψ(z[..i]), z[i..i+j], Ψ(z[i+j..]))`.
//! Level `2m+1` is then the `(2m+1)`-block pair of the target under
//! `(u, w, v) ↦ uΨ(w)v`, and the reversed higher block chain of the target
//! closes the loop.
//!
//! Along the chain a letter at coordinate `i` carries `ψ(x)_{[i, i+k-1]}`, and
//! each step down the higher block chain keeps the last symbol. The composed
//! conjugacy is therefore `σ^{2m} ∘ ψ`, which reduces to `ψ` when `m = 0`.

use std::collections::{BTreeSet, HashMap};
use std::convert::Infallible;

use super::{assemble_pair, block_pair, higher_block, word_label, ConstructionError, Result};
use super::DEFAULT_VERIFY_PERIOD;
use crate::equivalence::{
    check_periodic_bijection, he_check, he_check_with, BijectionFailure, EquivalenceError, StrongChain,
};
use crate::flip_pair::{FlipPair, Symbol, Word};
use crate::linalg::IntMatrix;
use crate::markov::{Graph, PeriodicPoint};

fn invalid(msg: String) -> ConstructionError {
    ConstructionError::InvalidConjugacy(msg)
}

/// A conjugacy `ψ(x)_i = Ψ(x_i)` from `(X_A, σ, φ_J)` to `(X_B, σ, φ_K)`
/// whose inverse reads the window `y_{[-m, m]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneBlockConjugacySpec {
    source: FlipPair,
    target: FlipPair,
    psi: Vec<Symbol>,
    inverse_window: usize,
}

impl OneBlockConjugacySpec {
    pub fn new(source: FlipPair, target: FlipPair, psi: Vec<Symbol>, inverse_window: usize) -> Result<Self> {
        Self::with_verify_period(source, target, psi, inverse_window, DEFAULT_VERIFY_PERIOD)
    }

    /// Checks that `Ψ` maps edges to edges and commutes with the symbol
    /// involutions, that `Ψ(z)` determines the centre of every
    /// `z ∈ B_{2m+1}(X_A)`, and that `ψ` is a bijection on periodic points up
    /// to `period`. Both matrices must be essential.
    pub fn with_verify_period(
        source: FlipPair,
        target: FlipPair,
        psi: Vec<Symbol>,
        inverse_window: usize,
        period: usize,
    ) -> Result<Self> {
        if psi.len() != source.len() {
            return Err(invalid(format!(
                "Ψ has {} images for {} symbols",
                psi.len(),
                source.len()
            )));
        }
        if let Some(&b) = psi.iter().find(|&&b| b >= target.len()) {
            return Err(invalid(format!("image index {b} is outside the target alphabet")));
        }
        let ga = Graph::from_pair(&source);
        let gb = Graph::from_pair(&target);
        if !ga.is_essential() {
            return Err(ConstructionError::NotEssential { which: "source" });
        }
        if !gb.is_essential() {
            return Err(ConstructionError::NotEssential { which: "target" });
        }
        let sa = source.alphabet();
        for a in 0..source.len() {
            for &b in ga.successors(a) {
                if !gb.allows(psi[a], psi[b]) {
                    return Err(invalid(format!("the edge {} {} maps to a non-edge", sa[a], sa[b])));
                }
            }
            if psi[source.tau().apply(a)] != target.tau().apply(psi[a]) {
                return Err(invalid(format!("Ψ does not commute with the flips at {}", sa[a])));
            }
        }
        let m = inverse_window;
        let mut centre: HashMap<Word, Symbol> = HashMap::new();
        for z in ga.blocks(2 * m + 1)? {
            let image: Word = z.iter().map(|&s| psi[s]).collect();
            match centre.get(&image) {
                Some(&c) if c != z[m] => {
                    return Err(invalid(format!(
                        "inverse window {m} is too small: {} and a block with centre {} share an image",
                        word_label(sa, &z),
                        sa[c]
                    )))
                }
                _ => {
                    centre.insert(image, z[m]);
                }
            }
        }
        let spec = OneBlockConjugacySpec {
            source,
            target,
            psi,
            inverse_window,
        };
        check_periodic_bijection(&ga, &gb, period, |x| Ok::<_, Infallible>(spec.apply(x)))
            .map_err(|f| invalid(format!("ψ is not a bijection on period {}: {}", f.period, f.reason)))?;
        Ok(spec)
    }

    pub fn source(&self) -> &FlipPair {
        &self.source
    }

    pub fn target(&self) -> &FlipPair {
        &self.target
    }

    pub fn psi(&self) -> &[Symbol] {
        &self.psi
    }

    pub fn inverse_window(&self) -> usize {
        self.inverse_window
    }

    pub fn apply(&self, x: &PeriodicPoint) -> PeriodicPoint {
        x.map(|s| self.psi[s])
    }

    fn image(&self, w: &[Symbol]) -> Word {
        w.iter().map(|&s| self.psi[s]).collect()
    }
}

type Triple = (Word, Word, Word);

/// One level `(C_k, L_k)` with its triples and their target words `uΨ(w)v`.
struct Level {
    pair: FlipPair,
    triples: Vec<Triple>,
    words: Vec<Word>,
}

fn level(spec: &OneBlockConjugacySpec, k: usize) -> Result<Level> {
    let i = (k - 1) / 2;
    let j = k - 2 * i;
    let ga = Graph::from_pair(&spec.source);
    let gb = Graph::from_pair(&spec.target);
    let set: BTreeSet<Triple> = ga
        .blocks(k)?
        .into_iter()
        .map(|z| (spec.image(&z[..i]), z[i..i + j].to_vec(), spec.image(&z[i + j..])))
        .collect();
    let triples: Vec<Triple> = set.into_iter().collect();
    let index: HashMap<&Triple, usize> = triples.iter().enumerate().map(|(n, t)| (t, n)).collect();
    let (src, dst) = (&spec.source, &spec.target);
    let tau = triples
        .iter()
        .map(|(u, w, v)| {
            let flipped = (
                dst.flip_word(v).expect("target symbols"),
                src.flip_word(w).expect("source symbols"),
                dst.flip_word(u).expect("target symbols"),
            );
            index
                .get(&flipped)
                .copied()
                .ok_or_else(|| invalid(format!("the flip of a level-{k} triple is not realized")))
        })
        .collect::<Result<Vec<_>>>()?;
    let words: Vec<Word> = triples
        .iter()
        .map(|(u, w, v)| [u.clone(), spec.image(w), v.clone()].concat())
        .collect();
    let labels = triples
        .iter()
        .map(|(u, w, v)| {
            format!(
                "{}|{}|{}",
                word_label(dst.alphabet(), u),
                word_label(src.alphabet(), w),
                word_label(dst.alphabet(), v)
            )
        })
        .collect();
    let adj = |p: usize, q: usize| {
        let (wp, wq) = (&triples[p].1, &triples[q].1);
        let follows = if j == 1 {
            ga.allows(wp[0], wq[0])
        } else {
            wp[1] == wq[0]
        };
        words[p][1..] == words[q][..k - 1] && gb.allows(words[p][k - 1], words[q][k - 1]) && follows
    };
    let (pair, kept) = assemble_pair(format!("C{k}"), labels, adj, &tau)?;
    Ok(Level {
        pair,
        triples: kept.iter().map(|&n| triples[n].clone()).collect(),
        words: kept.iter().map(|&n| words[n].clone()).collect(),
    })
}

/// `(D_k, E_k)` from level `k` to level `k + 1`.
fn link_matrices(lo: &Level, hi: &Level) -> Result<(IntMatrix, IntMatrix)> {
    let k = lo.words.first().map_or(0, Vec::len);
    let first = |t: &Triple| t.1[0];
    let last = |t: &Triple| *t.1.last().expect("w is non-empty");
    let d = IntMatrix::from_fn(lo.pair.alphabet().to_vec(), hi.pair.alphabet().to_vec(), |x, y| {
        i64::from(lo.words[x][..] == hi.words[y][..k] && last(&lo.triples[x]) == first(&hi.triples[y]))
    })?;
    let e = IntMatrix::from_fn(hi.pair.alphabet().to_vec(), lo.pair.alphabet().to_vec(), |y, x| {
        i64::from(hi.words[y][1..] == lo.words[x][..] && last(&hi.triples[y]) == first(&lo.triples[x]))
    })?;
    Ok((d, e))
}

/// The result of decomposing a one-block conjugacy.
#[derive(Clone, Debug)]
pub struct Decomposition {
    chain: StrongChain,
    relabel: Vec<Symbol>,
    shift: usize,
    levels: Vec<FlipPair>,
}

impl Decomposition {
    /// Chain of even lag `4m`, ending at the target itself when `m ≥ 1`.
    pub fn chain(&self) -> &StrongChain {
        &self.chain
    }

    /// Symbol map from the chain's last pair onto the target alphabet; the
    /// identity unless `m = 0`.
    pub fn relabel(&self) -> &[Symbol] {
        &self.relabel
    }

    /// `2m`: the composed conjugacy is `σ^{shift} ∘ ψ`.
    pub fn shift(&self) -> usize {
        self.shift
    }

    /// The intermediate pairs `(C_k, L_k)`, `k = 1..=2m+1`.
    pub fn levels(&self) -> &[FlipPair] {
        &self.levels
    }

    /// The composed conjugacy of the chain followed by the relabelling.
    pub fn gamma_point(&self, x: &PeriodicPoint) -> std::result::Result<PeriodicPoint, EquivalenceError> {
        Ok(self.chain.gamma_point(x)?.map(|s| self.relabel[s]))
    }

    /// Compares the composed conjugacy with `σ^{2m} ∘ ψ` on every periodic
    /// point of period at most `period`.
    pub fn check_against(
        &self,
        spec: &OneBlockConjugacySpec,
        period: usize,
    ) -> std::result::Result<(), BijectionFailure> {
        let g = Graph::from_pair(&spec.source);
        for m in 1..=period {
            let mut failure = None;
            g.for_each_periodic(m, |x| {
                if failure.is_some() {
                    return;
                }
                let x = PeriodicPoint::new(x.to_vec());
                let expected = spec.apply(&x).shift(self.shift as i64);
                let reason = match self.gamma_point(&x) {
                    Ok(y) if y == expected => return,
                    Ok(_) => "composed conjugacy differs from σ^{2m}∘ψ".to_string(),
                    Err(e) => e.to_string(),
                };
                failure = Some(BijectionFailure {
                    period: m,
                    reason,
                    witness: Some(x.symbols().to_vec()),
                });
            });
            if let Some(f) = failure {
                return Err(f);
            }
        }
        Ok(())
    }
}

/// Builds the lag-`4m` chain from the source pair to the target pair.
pub fn decompose_conjugacy(spec: &OneBlockConjugacySpec) -> Result<Decomposition> {
    let m = spec.inverse_window;
    let top = 2 * m + 1;
    let levels = (1..=top).map(|k| level(spec, k)).collect::<Result<Vec<_>>>()?;

    let base = &levels[0].pair;
    if base.len() != spec.source.len()
        || !base.a().same_entries(spec.source.a())
        || !base.j().same_entries(spec.source.j())
    {
        return Err(ConstructionError::Recoding("C_1 and L_1 differ from A and J".into()));
    }

    // (u, w, v) ↦ uΨ(w)v onto the (2m+1)-block pair of the target
    let (block, block_words) = block_pair(&spec.target, top)?;
    let position: HashMap<&Word, usize> = block_words.iter().enumerate().map(|(n, w)| (w, n)).collect();
    let last = &levels[top - 1];
    let pi = last
        .words
        .iter()
        .map(|w| {
            position
                .get(w)
                .copied()
                .ok_or_else(|| ConstructionError::Recoding("a triple has no block".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<usize> = pi.iter().copied().collect();
    if distinct.len() != pi.len() || pi.len() != block.len() {
        return Err(ConstructionError::Recoding(format!(
            "{} triples against {} blocks",
            pi.len(),
            block.len()
        )));
    }
    for x in 0..pi.len() {
        if pi[last.pair.tau().apply(x)] != block.tau().apply(pi[x]) {
            return Err(ConstructionError::Recoding("flips do not correspond".into()));
        }
        for y in 0..pi.len() {
            if last.pair.allows(x, y) != block.allows(pi[x], pi[y]) {
                return Err(ConstructionError::Recoding("transitions do not correspond".into()));
            }
        }
    }

    let pair_names = levels.iter().map(|l| l.pair.clone()).collect();
    if m == 0 {
        return Ok(Decomposition {
            chain: StrongChain::identity(spec.source.clone()),
            relabel: pi,
            shift: 0,
            levels: pair_names,
        });
    }

    let mut chain = StrongChain::identity(spec.source.clone());
    for k in 1..top {
        let (d, e) = link_matrices(&levels[k - 1], &levels[k])?;
        let from = if k == 1 { &spec.source } else { &levels[k - 1].pair };
        let fail = |error| ConstructionError::LinkFailed { k, error };
        let cert = he_check_with(from, &levels[k].pair, &d, Some(&e)).map_err(fail)?;
        let cert = if k + 1 == top {
            let mut inverse = vec![0; pi.len()];
            for (x, &b) in pi.iter().enumerate() {
                inverse[b] = x;
            }
            let moved = IntMatrix::from_fn(from.alphabet().to_vec(), block.alphabet().to_vec(), |r, b| {
                i64::from(d.is_one(r, inverse[b]))
            })?;
            he_check(from, &block, &moved).map_err(fail)?
        } else {
            cert
        };
        chain.push(cert)?;
    }
    let (_, up) = higher_block(&spec.target, 2 * m)?;
    let chain = chain.concat(up.reversed())?;
    Ok(Decomposition {
        chain,
        relabel: (0..spec.target.len()).collect(),
        shift: 2 * m,
        levels: pair_names,
    })
}
