//! A flip pair presenting a shift-flip system whose flip is a sliding block
//! code `φ(x)_i = Φ(x_{[-i-n, -i+n]})` on `X_A`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{assemble_pair, word_label, ConstructionError, Result};
use crate::flip_pair::{FlipPair, Symbol, Word};
use crate::linalg::IntMatrix;
use crate::markov::{reverse, Graph, PeriodicPoint};

/// Periods up to which a block flip is checked before it is accepted.
pub const DEFAULT_VERIFY_PERIOD: usize = 6;

/// A block rule `Φ : B_{2n+1}(X_A) → alphabet` inducing a flip on `X_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFlipSpec {
    a: IntMatrix,
    window: usize,
    phi: BTreeMap<Word, Symbol>,
}

fn invalid(msg: String) -> ConstructionError {
    ConstructionError::InvalidBlockFlip(msg)
}

impl BlockFlipSpec {
    pub fn new(a: IntMatrix, window: usize, phi: BTreeMap<Word, Symbol>) -> Result<Self> {
        Self::with_verify_period(a, window, phi, DEFAULT_VERIFY_PERIOD)
    }

    /// Validates the rule: `Φ` is total on `B_{2n+1}(X_A)`, and on periodic
    /// points up to `period` the induced map stays in `X_A`, squares to the
    /// identity and satisfies `σ∘φ = φ∘σ⁻¹`.
    pub fn with_verify_period(
        a: IntMatrix,
        window: usize,
        phi: BTreeMap<Word, Symbol>,
        period: usize,
    ) -> Result<Self> {
        let g = Graph::from_matrix(&a)?;
        let len = 2 * window + 1;
        let labels = a.row_labels().to_vec();
        let show = |w: &[Symbol]| word_label(&labels, w);
        let blocks = g.blocks(len)?;
        let block_set: BTreeSet<&Word> = blocks.iter().collect();
        for (block, &image) in &phi {
            if block.iter().any(|&s| s >= g.len()) || image >= g.len() {
                return Err(invalid(format!("rule entry {block:?} uses an unknown symbol")));
            }
            if !block_set.contains(block) {
                return Err(invalid(format!("{} is not a {len}-block of X_A", show(block))));
            }
        }
        if let Some(b) = blocks.iter().find(|b| !phi.contains_key(*b)) {
            return Err(invalid(format!("no image for the block {}", show(b))));
        }
        let spec = BlockFlipSpec { a, window, phi };
        for m in 1..=period {
            let mut failure = None;
            g.for_each_periodic(m, |x| {
                if failure.is_some() {
                    return;
                }
                let x = PeriodicPoint::new(x.to_vec());
                let y = spec.apply(&x).expect("rule is total on blocks");
                let problem = if !y.lies_in(&g) {
                    Some("its image leaves X_A")
                } else if spec.apply(&y).expect("image lies in X_A") != x {
                    Some("φ∘φ does not fix it")
                } else if spec.apply(&x.shift(-1)).expect("total") != y.shift(1) {
                    Some("σ∘φ and φ∘σ⁻¹ differ on it")
                } else {
                    None
                };
                if let Some(p) = problem {
                    failure = Some(format!("periodic point ({}) of period {m}: {p}", show(x.symbols())));
                }
            });
            if let Some(f) = failure {
                return Err(invalid(f));
            }
        }
        Ok(spec)
    }

    /// Tabulates `rule` over `B_{2n+1}(X_A)` and validates the result.
    pub fn from_rule(a: IntMatrix, window: usize, rule: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let blocks = Graph::from_matrix(&a)?.blocks(2 * window + 1)?;
        let phi = blocks.into_iter().map(|b| {
            let image = rule(&b);
            (b, image)
        });
        Self::new(a, window, phi.collect())
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn phi(&self) -> &BTreeMap<Word, Symbol> {
        &self.phi
    }

    /// The induced map on a periodic point.
    pub fn apply(&self, x: &PeriodicPoint) -> Result<PeriodicPoint> {
        let n = self.window as i64;
        let image = (0..x.period() as i64)
            .map(|i| {
                let block = x.window(-i - n, -i + n);
                self.phi.get(&block).copied().ok_or_else(|| {
                    invalid(format!(
                        "no image for the block {}",
                        word_label(self.a.row_labels(), &block)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicPoint::new(image))
    }

    /// `(x_{[-n,n]}, reversed φ(x)_{[-n,n]})` read from `w = x_{[-2n,2n]}`.
    fn letter(&self, w: &[Symbol]) -> Option<(Word, Word)> {
        let n = self.window;
        let u = w[n..=3 * n].to_vec();
        // φ(x)_k = Φ(x_{[-k-n, -k+n]}) for k = -n..=n; position k + n
        let phis = (0..=2 * n)
            .map(|p| self.phi.get(&w[2 * n - p..=4 * n - p]).copied())
            .collect::<Option<Vec<_>>>()?;
        Some((u, reverse(&phis)))
    }
}

/// The block map `θ(x)_i = (x_{[i-n, i+n]}, reversed φ(x)_{[-i-n, -i+n]})`
/// onto the constructed pair; it reads the window `x_{[i-2n, i+2n]}`.
#[derive(Clone, Debug)]
pub struct BlockMap {
    spec: BlockFlipSpec,
    pair: FlipPair,
    letters: HashMap<(Word, Word), Symbol>,
}

impl BlockMap {
    pub fn pair(&self) -> &FlipPair {
        &self.pair
    }

    pub fn spec(&self) -> &BlockFlipSpec {
        &self.spec
    }

    /// Letter of the constructed alphabet read from a `(4n+1)`-window.
    pub fn letter_of(&self, w: &[Symbol]) -> Option<Symbol> {
        self.spec.letter(w).and_then(|l| self.letters.get(&l).copied())
    }

    pub fn apply(&self, x: &PeriodicPoint) -> Result<PeriodicPoint> {
        let r = 2 * self.spec.window as i64;
        let image = (0..x.period() as i64)
            .map(|i| {
                let w = x.window(i - r, i + r);
                self.letter_of(&w).ok_or_else(|| {
                    invalid(format!(
                        "window {} gives no letter",
                        word_label(self.spec.a.row_labels(), &w)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PeriodicPoint::new(image))
    }
}

/// Builds the flip pair on realized letters `(u, v)`, scanning every
/// `(4n+1)`-block of `X_A`. Transitions follow the overlap rule on both
/// coordinates (`u` read forwards, `v` backwards) and the flip swaps the
/// coordinates, reversing each.
pub fn build_flip_pair(spec: &BlockFlipSpec) -> Result<(FlipPair, BlockMap)> {
    let n = spec.window;
    let g = Graph::from_matrix(&spec.a)?;
    let mut set = BTreeSet::new();
    for w in g.blocks(4 * n + 1)? {
        set.insert(spec.letter(&w).expect("spec is total"));
    }
    let letters: Vec<(Word, Word)> = set.into_iter().collect();
    let index: HashMap<&(Word, Word), usize> = letters.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let tau = letters
        .iter()
        .map(|(u, v)| {
            index
                .get(&(reverse(v), reverse(u)))
                .copied()
                .ok_or_else(|| invalid("the flip of a letter is not realized".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let alphabet = spec.a.row_labels();
    let labels = letters
        .iter()
        .map(|(u, v)| format!("{}|{}", word_label(alphabet, u), word_label(alphabet, v)))
        .collect();
    let last = 2 * n;
    let adj = |p: usize, q: usize| {
        let ((u, v), (u2, v2)) = (&letters[p], &letters[q]);
        u[1..] == u2[..last]
            && v[1..] == v2[..last]
            && g.allows(u[last], u2[last])
            && g.allows(v2[last], v[last])
    };
    let (pair, kept) = assemble_pair("built".into(), labels, adj, &tau)?;
    let letters = kept
        .iter()
        .enumerate()
        .map(|(new, &old)| (letters[old].clone(), new))
        .collect();
    let map = BlockMap {
        spec: spec.clone(),
        pair: pair.clone(),
        letters,
    };
    Ok((pair, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::check_periodic_bijection;
    use crate::markov::{count_fixed_with, count_pmn_bruteforce};

    fn golden_a() -> IntMatrix {
        IntMatrix::from_square_rows(&[vec![1, 1], vec![1, 0]]).unwrap()
    }

    fn ex1_aj() -> FlipPair {
        let a = IntMatrix::from_square_rows(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ])
        .unwrap();
        FlipPair::from_involution("AJ", a, &[2, 3, 0, 1]).unwrap()
    }

    /// `θ` is a conjugacy on periodic points and transports the counts.
    fn check_transport(spec: &BlockFlipSpec) {
        let (q, theta) = build_flip_pair(spec).unwrap();
        let src = Graph::from_matrix(spec.a()).unwrap();
        let dst = Graph::from_pair(&q);
        check_periodic_bijection(&src, &dst, 6, |x| theta.apply(x)).unwrap();
        let tau = q.tau().clone();
        src.for_each_periodic(5, |x| {
            let x = PeriodicPoint::new(x.to_vec());
            let lhs = theta.apply(&spec.apply(&x).unwrap()).unwrap();
            let rhs = theta.apply(&x).unwrap().flip(|s| tau.apply(s));
            assert_eq!(lhs, rhs);
        });
        for m in 1..=5 {
            for n in 0..=1 {
                let direct = count_fixed_with(&src, m, n, |x| spec.apply(x).unwrap());
                assert_eq!(count_pmn_bruteforce(&q, m, n).unwrap(), direct, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn zero_window_collapses_to_input() {
        let p = ex1_aj();
        let tau = p.tau().clone();
        let spec = BlockFlipSpec::from_rule(p.a().clone(), 0, |b| tau.apply(b[0])).unwrap();
        let (q, _) = build_flip_pair(&spec).unwrap();
        assert!(q.a().same_entries(p.a()));
        assert!(q.j().same_entries(p.j()));
        assert_eq!(q.alphabet()[0], "1|3");
        check_transport(&spec);

        let spec = BlockFlipSpec::from_rule(golden_a(), 0, |b| b[0]).unwrap();
        let (q, _) = build_flip_pair(&spec).unwrap();
        assert!(q.a().same_entries(&golden_a()));
        assert!(q.j().same_entries(&IntMatrix::identity(q.alphabet().to_vec())));
    }

    #[test]
    fn window_one_flips_on_golden_mean() {
        for pick in [0usize, 2] {
            let spec = BlockFlipSpec::from_rule(golden_a(), 1, |b| b[pick]).unwrap();
            let (q, _) = build_flip_pair(&spec).unwrap();
            assert!(q.len() >= 2);
            check_transport(&spec);
        }
        let spec = BlockFlipSpec::from_rule(golden_a(), 1, |b| b[1]).unwrap();
        check_transport(&spec);
    }

    #[test]
    fn invalid_rules_are_rejected() {
        let mut phi = BTreeMap::new();
        phi.insert(vec![0], 0);
        assert!(matches!(
            BlockFlipSpec::new(golden_a(), 0, phi),
            Err(ConstructionError::InvalidBlockFlip(msg)) if msg.contains("no image")
        ));

        let not_involution = BlockFlipSpec::from_rule(golden_a(), 0, |_| 0);
        assert!(matches!(
            not_involution,
            Err(ConstructionError::InvalidBlockFlip(msg)) if msg.contains("φ∘φ")
        ));

        let labels: Vec<String> = ["11", "12", "21"].iter().map(|s| s.to_string()).collect();
        let two_block = IntMatrix::square(labels, &[vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap();
        let leaves = BlockFlipSpec::from_rule(two_block, 0, |b| b[0]);
        assert!(matches!(
            leaves,
            Err(ConstructionError::InvalidBlockFlip(msg)) if msg.contains("leaves X_A")
        ));

        let mut phi = BTreeMap::new();
        phi.insert(vec![1, 1, 1], 0);
        assert!(matches!(
            BlockFlipSpec::new(golden_a(), 1, phi),
            Err(ConstructionError::InvalidBlockFlip(msg)) if msg.contains("not a 3-block")
        ));
    }
}
