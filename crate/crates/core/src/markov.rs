//! The topological Markov chain `X_A` of a zero-one matrix.
//!
//! Admissible blocks, word utilities and brute-force periodic point
//! enumeration. The enumerators here are the oracles for every counting
//! formula in the crate; they never consult matrix powers.

use num_traits::Zero;
use thiserror::Error;

use crate::flip_pair::{FlipPair, Symbol, Word};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("transition matrix must be square and zero-one")]
    NotZeroOneSquare,
    #[error("block length must be at least 1")]
    EmptyBlock,
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("{op} needs a nonempty word")]
    EmptyWord { op: &'static str },
    #[error("center needs an odd-length word, got length {0}")]
    EvenLength(usize),
}

/// Adjacency view of a zero-one square matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    allowed: Vec<bool>,
    succ: Vec<Vec<Symbol>>,
}

impl Graph {
    pub fn from_matrix(a: &IntMatrix) -> Result<Self, MarkovError> {
        if !a.is_square() || !a.is_zero_one() {
            return Err(MarkovError::NotZeroOneSquare);
        }
        let n = a.rows();
        let allowed: Vec<bool> = a.entries().iter().map(|e| !e.is_zero()).collect();
        Ok(Self::from_allowed(n, allowed))
    }

    pub fn from_pair(p: &FlipPair) -> Self {
        let n = p.len();
        let allowed = (0..n * n).map(|k| p.allows(k / n, k % n)).collect();
        Self::from_allowed(n, allowed)
    }

    fn from_allowed(n: usize, allowed: Vec<bool>) -> Self {
        let succ = (0..n)
            .map(|a| (0..n).filter(|&b| allowed[a * n + b]).collect())
            .collect();
        Graph { n, allowed, succ }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn allows(&self, a: Symbol, b: Symbol) -> bool {
        self.allowed[a * self.n + b]
    }

    pub fn successors(&self, a: Symbol) -> &[Symbol] {
        &self.succ[a]
    }

    /// Symbols lying on some bi-infinite path: repeatedly strip symbols with
    /// no surviving predecessor or successor.
    pub fn essential(&self) -> Vec<bool> {
        let n = self.n;
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for a in 0..n {
                if !alive[a] {
                    continue;
                }
                let has_out = (0..n).any(|b| alive[b] && self.allows(a, b));
                let has_in = (0..n).any(|b| alive[b] && self.allows(b, a));
                if !has_out || !has_in {
                    alive[a] = false;
                    changed = true;
                }
            }
            if !changed {
                return alive;
            }
        }
    }

    pub fn is_essential(&self) -> bool {
        self.essential().iter().all(|&b| b)
    }

    /// All words of length `n` whose consecutive symbols are allowed, over
    /// the symbols kept by `keep`, in lexicographic order.
    fn paths(&self, n: usize, keep: &[bool]) -> Vec<Word> {
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(n);
        fn rec(g: &Graph, n: usize, keep: &[bool], buf: &mut Word, out: &mut Vec<Word>) {
            if buf.len() == n {
                out.push(buf.clone());
                return;
            }
            let next: Vec<Symbol> = match buf.last() {
                None => (0..g.n).filter(|&s| keep[s]).collect(),
                Some(&last) => g.succ[last].iter().copied().filter(|&s| keep[s]).collect(),
            };
            for s in next {
                buf.push(s);
                rec(g, n, keep, buf, out);
                buf.pop();
            }
        }
        rec(self, n, keep, &mut buf, &mut out);
        out
    }

    /// `B_n(X_A)`: length-`n` words occurring in points of `X_A`.
    pub fn blocks(&self, n: usize) -> Result<Vec<Word>, MarkovError> {
        if n == 0 {
            return Err(MarkovError::EmptyBlock);
        }
        Ok(self.paths(n, &self.essential()))
    }

    /// Every length-`n` walk in the graph, stranded symbols included.
    pub fn walks(&self, n: usize) -> Result<Vec<Word>, MarkovError> {
        if n == 0 {
            return Err(MarkovError::EmptyBlock);
        }
        Ok(self.paths(n, &vec![true; self.n]))
    }

    /// Visits every closed walk of length `m` in lexicographic order.
    pub fn for_each_periodic(&self, m: usize, mut visit: impl FnMut(&[Symbol])) {
        if m == 0 {
            return;
        }
        let mut buf = vec![0; m];
        fn rec(g: &Graph, depth: usize, buf: &mut [Symbol], visit: &mut dyn FnMut(&[Symbol])) {
            let m = buf.len();
            if depth == m {
                if g.allows(buf[m - 1], buf[0]) {
                    visit(buf);
                }
                return;
            }
            if depth == 0 {
                for s in 0..g.n {
                    buf[0] = s;
                    rec(g, 1, buf, visit);
                }
            } else {
                for i in 0..g.succ[buf[depth - 1]].len() {
                    buf[depth] = g.succ[buf[depth - 1]][i];
                    rec(g, depth + 1, buf, visit);
                }
            }
        }
        rec(self, 0, &mut buf, &mut visit);
    }
}

/// A point of `X_A` with `σ^m x = x`, stored as one period `x_0 .. x_{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicPoint {
    symbols: Word,
}

impl PeriodicPoint {
    pub fn new(symbols: Word) -> Self {
        assert!(!symbols.is_empty(), "periodic points need period >= 1");
        PeriodicPoint { symbols }
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Coordinate `x_i` for any integer `i`.
    pub fn at(&self, i: i64) -> Symbol {
        self.symbols[i.rem_euclid(self.period() as i64) as usize]
    }

    /// `σ^k x`, so `(σ^k x)_i = x_{i+k}`.
    pub fn shift(&self, k: i64) -> PeriodicPoint {
        let m = self.period() as i64;
        PeriodicPoint {
            symbols: (0..m).map(|i| self.at(i + k)).collect(),
        }
    }

    /// One-block flip `φ(x)_i = τ(x_{-i})`.
    pub fn flip(&self, tau: impl Fn(Symbol) -> Symbol) -> PeriodicPoint {
        let m = self.period() as i64;
        PeriodicPoint {
            symbols: (0..m).map(|i| tau(self.at(-i))).collect(),
        }
    }

    /// Coordinatewise image under a symbol map.
    pub fn map(&self, f: impl Fn(Symbol) -> Symbol) -> PeriodicPoint {
        PeriodicPoint {
            symbols: self.symbols.iter().map(|&s| f(s)).collect(),
        }
    }

    /// Window `x_{[lo, hi]}` read cyclically.
    pub fn window(&self, lo: i64, hi: i64) -> Word {
        (lo..=hi).map(|i| self.at(i)).collect()
    }

    pub fn lies_in(&self, g: &Graph) -> bool {
        let m = self.period() as i64;
        (0..m).all(|i| g.allows(self.at(i), self.at(i + 1)))
    }
}

pub fn blocks(a: &IntMatrix, n: usize) -> Result<Vec<Word>, MarkovError> {
    Graph::from_matrix(a)?.blocks(n)
}

pub fn is_essential(a: &IntMatrix) -> Result<bool, MarkovError> {
    Ok(Graph::from_matrix(a)?.is_essential())
}

/// All period-`m` points of `X_A` in lexicographic order.
pub fn enumerate_periodic(a: &IntMatrix, m: usize) -> Result<Vec<PeriodicPoint>, MarkovError> {
    if m == 0 {
        return Err(MarkovError::ZeroPeriod);
    }
    let g = Graph::from_matrix(a)?;
    let mut out = Vec::new();
    g.for_each_periodic(m, |x| out.push(PeriodicPoint::new(x.to_vec())));
    Ok(out)
}

/// Brute-force `p_{m,n}`: period-`m` points with `σ^n φ_{J,A}(x) = x`, i.e.
/// `τ_J(x_{(-i-n) mod m}) = x_i` for every `i`.
pub fn count_pmn_bruteforce(p: &FlipPair, m: usize, n: i64) -> Result<u64, MarkovError> {
    Ok(count_pmn_many(p, m, &[n])?[0])
}

/// `p_{m,n}` for several `n` from a single enumeration of period-`m` points.
pub fn count_pmn_many(p: &FlipPair, m: usize, ns: &[i64]) -> Result<Vec<u64>, MarkovError> {
    if m == 0 {
        return Err(MarkovError::ZeroPeriod);
    }
    let g = Graph::from_pair(p);
    let shifts: Vec<usize> = ns.iter().map(|n| n.rem_euclid(m as i64) as usize).collect();
    let tau = p.tau();
    let mut counts = vec![0u64; ns.len()];
    g.for_each_periodic(m, |x| {
        for (c, &n) in counts.iter_mut().zip(&shifts) {
            if (0..m).all(|i| tau.apply(x[(2 * m - i - n) % m]) == x[i]) {
                *c += 1;
            }
        }
    });
    Ok(counts)
}

/// Counts period-`m` points with `σ^n(ψ(x)) = x` for an arbitrary point map
/// `ψ` on periodic points.
pub fn count_fixed_with(
    g: &Graph,
    m: usize,
    n: i64,
    map: impl Fn(&PeriodicPoint) -> PeriodicPoint,
) -> u64 {
    let mut count = 0u64;
    g.for_each_periodic(m, |x| {
        let x = PeriodicPoint::new(x.to_vec());
        if map(&x).shift(n) == x {
            count += 1;
        }
    });
    count
}

/// Reversed word `w̃`.
pub fn reverse<T: Clone>(w: &[T]) -> Vec<T> {
    w.iter().rev().cloned().collect()
}

/// `l(w)`: drop the last symbol.
pub fn left<T: Clone>(w: &[T]) -> Result<Vec<T>, MarkovError> {
    match w.split_last() {
        Some((_, rest)) => Ok(rest.to_vec()),
        None => Err(MarkovError::EmptyWord { op: "left" }),
    }
}

/// `r(w)`: drop the first symbol.
pub fn right<T: Clone>(w: &[T]) -> Result<Vec<T>, MarkovError> {
    match w.split_first() {
        Some((_, rest)) => Ok(rest.to_vec()),
        None => Err(MarkovError::EmptyWord { op: "right" }),
    }
}

/// `i(w)`: first symbol.
pub fn initial<T: Clone>(w: &[T]) -> Result<T, MarkovError> {
    w.first()
        .cloned()
        .ok_or(MarkovError::EmptyWord { op: "initial" })
}

/// `t(w)`: last symbol.
pub fn terminal<T: Clone>(w: &[T]) -> Result<T, MarkovError> {
    w.last()
        .cloned()
        .ok_or(MarkovError::EmptyWord { op: "terminal" })
}

/// `c(w)`: middle symbol of an odd-length word.
pub fn center<T: Clone>(w: &[T]) -> Result<T, MarkovError> {
    if w.len().is_multiple_of(2) {
        return Err(MarkovError::EvenLength(w.len()));
    }
    Ok(w[w.len() / 2].clone())
}
