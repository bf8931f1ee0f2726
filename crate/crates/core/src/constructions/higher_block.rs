//! Higher block flip pairs and the lag-`n` chain joining a pair to its
//! `(n+1)`-block pair.
//!
//! The `k`-block alphabet is every walk of length `k` in the graph of `A`, in
//! lexicographic order. For an essential `A` these are exactly the
//! `k`-blocks of `X_A`; for a non-essential `A` the extra walks keep the
//! product identities of each link exact.

use std::collections::HashMap;

use super::{word_label, Result};
use crate::equivalence::StrongChain;
use crate::flip_pair::{FlipPair, Word};
use crate::linalg::IntMatrix;
use crate::markov::Graph;

/// The `k`-block pair `(A_k, J_k)` and its alphabet as words of `p`.
/// `A_k(u, v) = 1` iff `r(u) = l(v)` and `u·t(v)` is a walk;
/// `J_k(u, v) = 1` iff `v` is the flipped word `τ(u_k) ... τ(u_1)`.
pub fn block_pair(p: &FlipPair, k: usize) -> Result<(FlipPair, Vec<Word>)> {
    let g = Graph::from_pair(p);
    let words = g.walks(k)?;
    if k == 1 {
        return Ok((p.clone(), words));
    }
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let tau = words
        .iter()
        .map(|w| index[&p.flip_word(w).expect("walk symbols are in range")])
        .collect::<Vec<_>>();
    let labels: Vec<String> = words.iter().map(|w| word_label(p.alphabet(), w)).collect();
    let a = IntMatrix::from_fn(labels.clone(), labels, |r, c| {
        i64::from(words[r][1..] == words[c][..k - 1])
    })?;
    let pair = FlipPair::from_involution(format!("{}[{k}]", p.name()), a, &tau)?;
    Ok((pair, words))
}

/// The `(n+1)`-block pair of `p` with a chain of `n` half elementary
/// equivalences from `p` to it. Link `k` is `R_k(u, v) = [u = l(v)]`, with
/// `S_k(v, u) = [u = r(v)]` as its derived partner.
pub fn higher_block(p: &FlipPair, n: usize) -> Result<(FlipPair, StrongChain)> {
    let mut pairs = vec![p.clone()];
    let mut words = vec![Graph::from_pair(p).walks(1)?];
    let mut rs = Vec::with_capacity(n);
    for k in 1..=n {
        let (next, next_words) = block_pair(p, k + 1)?;
        let cur = &pairs[k - 1];
        let cur_words = &words[k - 1];
        let r = IntMatrix::from_fn(cur.alphabet().to_vec(), next.alphabet().to_vec(), |u, v| {
            i64::from(cur_words[u][..] == next_words[v][..k])
        })?;
        rs.push(r);
        pairs.push(next);
        words.push(next_words);
    }
    let top = pairs.last().expect("at least the base pair").clone();
    Ok((top, StrongChain::from_links(pairs, &rs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{gamma_point, sse_verify, verify_prop22};
    use crate::markov::PeriodicPoint;
    use crate::zeta::lind_zeta;

    fn golden() -> FlipPair {
        let a = IntMatrix::from_square_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        FlipPair::with_identity_flip("golden", a).unwrap()
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

    #[test]
    fn one_point_stays_one_point() {
        for n in 0..4 {
            let (q, chain) = higher_block(&FlipPair::one_point(), n).unwrap();
            assert_eq!(q.len(), 1);
            assert_eq!(chain.lag(), n);
            assert!(sse_verify(&chain).passed);
        }
    }

    #[test]
    fn golden_two_block() {
        let (q, chain) = higher_block(&golden(), 1).unwrap();
        assert_eq!(q.alphabet(), &["11".to_string(), "12".to_string(), "21".to_string()]);
        assert_eq!(q.tau().images(), &[0, 2, 1]);
        assert_eq!(
            q.a(),
            &IntMatrix::square(q.alphabet().to_vec(), &[vec![1, 1, 0], vec![0, 0, 1], vec![1, 1, 0]]).unwrap()
        );
        assert_eq!(chain.lag(), 1);
        let link = &chain.links()[0];
        let x = PeriodicPoint::new(vec![0, 1]);
        assert_eq!(gamma_point(link, &x).unwrap(), PeriodicPoint::new(vec![1, 2]));
        assert!(verify_prop22(link, 5).passed);
    }

    #[test]
    fn example1_two_block_keeps_lind_zeta() {
        let p = ex1_aj();
        let (q, chain) = higher_block(&p, 1).unwrap();
        assert_eq!(q.len(), 8);
        assert!(sse_verify(&chain).passed);
        assert_eq!(lind_zeta(&p, 10).unwrap(), lind_zeta(&q, 10).unwrap());
    }

    #[test]
    fn chains_have_requested_lag() {
        for n in 1..=3 {
            let (q, chain) = higher_block(&golden(), n).unwrap();
            assert_eq!(chain.lag(), n);
            assert!(chain.target().same_system(&q));
            let r = sse_verify(&chain);
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn non_essential_matrices_still_give_links() {
        // the edge 1 -> 2 lies on no bi-infinite path
        let a = IntMatrix::from_square_rows(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 1]]).unwrap();
        let p = FlipPair::from_involution("loose", a, &[1, 0, 2]).unwrap();
        let (_, chain) = higher_block(&p, 2).unwrap();
        assert!(sse_verify(&chain).passed);
    }
}
