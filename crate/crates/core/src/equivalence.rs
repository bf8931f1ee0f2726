//! Half elementary equivalences, strong shift-flip chains and shift-flip
//! equivalences, with the conjugacy `γ_{R,S}` they induce on periodic points.
//!
//! `S` is always derived as `S = K Rᵀ J`. A caller may supply an `S` to
//! cross-check, but it must agree with the derived matrix.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::flip_pair::{FlipPair, Symbol};
use crate::linalg::{mat_mul, mat_pow, rational_rref, IntMatrix, LinalgError};
use crate::markov::{Graph, PeriodicPoint};

/// Default cell budget `|src| · |dst|` for [`he_search`].
pub const HE_SEARCH_BUDGET: usize = 30;
/// Default candidate budget `(entry_max + 1)^dim` for [`sfe_bounded_search`].
pub const SFE_SEARCH_BUDGET: u128 = 1 << 20;

pub const ID_A_RS: &str = "A = RS";
pub const ID_B_SR: &str = "B = SR";
pub const ID_S_KRJ: &str = "S = K Rᵀ J";
pub const ID_R_JSK: &str = "R = J Sᵀ K";
pub const ID_AK_RS: &str = "A^k = RS";
pub const ID_BK_SR: &str = "B^k = SR";
pub const ID_AR_RB: &str = "AR = RB";
pub const ID_SA_BS: &str = "SA = BS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivalenceError {
    #[error("{matrix} is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    Shape {
        matrix: &'static str,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("{matrix} is not zero-one at ({row}, {col})")]
    NotZeroOne {
        matrix: &'static str,
        row: usize,
        col: usize,
    },
    #[error("{matrix} has a negative entry at ({row}, {col})")]
    Negative {
        matrix: &'static str,
        row: usize,
        col: usize,
    },
    #[error("identity {identity} fails at ({row}, {col})")]
    IdentityFailed {
        identity: &'static str,
        row: usize,
        col: usize,
    },
    #[error("derived identity SA = BS fails at ({row}, {col}) although the defining identities hold")]
    DerivationBroken { row: usize, col: usize },
    #[error("lag must be at least 1")]
    ZeroLag,
    #[error("{a1} {a2} is not an admissible 2-block")]
    Inadmissible { a1: String, a2: String },
    #[error("no symbol b with R({a1}, b) = S(b, {a2}) = 1")]
    NoGammaImage { a1: String, a2: String },
    #[error("more than one symbol b with R({a1}, b) = S(b, {a2}) = 1")]
    AmbiguousGammaImage { a1: String, a2: String },
    #[error("chain endpoints do not match")]
    EndpointMismatch,
    #[error("chain has {pairs} pairs for {links} links")]
    PairCount { pairs: usize, links: usize },
    #[error("search space {needed} exceeds the budget {budget}")]
    Budget { needed: String, budget: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl EquivalenceError {
    /// Identity name for identity failures, for report locators.
    pub fn identity(&self) -> Option<&'static str> {
        match self {
            EquivalenceError::IdentityFailed { identity, .. } => Some(identity),
            EquivalenceError::DerivationBroken { .. } => Some(ID_SA_BS),
            _ => None,
        }
    }
}

type Result<T> = std::result::Result<T, EquivalenceError>;

fn check_shape(matrix: &'static str, m: &IntMatrix, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(EquivalenceError::Shape {
            matrix,
            rows,
            cols,
            got_rows: m.rows(),
            got_cols: m.cols(),
        });
    }
    Ok(())
}

fn check_identity(identity: &'static str, lhs: &IntMatrix, rhs: &IntMatrix) -> Result<()> {
    match lhs.first_difference(rhs) {
        Some((row, col)) => Err(EquivalenceError::IdentityFailed { identity, row, col }),
        None => Ok(()),
    }
}

/// `K Rᵀ J` for `R : src → dst`.
pub fn derive_s(src: &FlipPair, dst: &FlipPair, r: &IntMatrix) -> Result<IntMatrix> {
    Ok(mat_mul(&mat_mul(dst.j(), &r.transpose())?, src.j())?)
}

/// `R` relabelled with the source and target alphabets after a shape check.
fn labelled_r(src: &FlipPair, dst: &FlipPair, r: &IntMatrix) -> Result<IntMatrix> {
    check_shape("R", r, src.len(), dst.len())?;
    Ok(r.with_labels(src.alphabet().to_vec(), dst.alphabet().to_vec())?)
}

fn labelled_s(src: &FlipPair, dst: &FlipPair, s: &IntMatrix) -> Result<IntMatrix> {
    check_shape("S", s, dst.len(), src.len())?;
    Ok(s.with_labels(dst.alphabet().to_vec(), src.alphabet().to_vec())?)
}

/// A half elementary equivalence `(R, S)` from `(A, J)` to `(B, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfElemCert {
    source: FlipPair,
    target: FlipPair,
    r: IntMatrix,
    s: IntMatrix,
}

impl HalfElemCert {
    /// Assembles a certificate without checking anything. Intended for
    /// exercising the failure paths of the verifiers.
    pub fn new_unchecked(source: FlipPair, target: FlipPair, r: IntMatrix, s: IntMatrix) -> Self {
        HalfElemCert { source, target, r, s }
    }

    pub fn source(&self) -> &FlipPair {
        &self.source
    }

    pub fn target(&self) -> &FlipPair {
        &self.target
    }

    pub fn r(&self) -> &IntMatrix {
        &self.r
    }

    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    /// `(S, R)` from `(B, K)` back to `(A, J)`.
    pub fn reversed(&self) -> HalfElemCert {
        HalfElemCert {
            source: self.target.clone(),
            target: self.source.clone(),
            r: self.s.clone(),
            s: self.r.clone(),
        }
    }
}

/// Checks `R` as a half elementary equivalence from `src` to `dst`.
pub fn he_check(src: &FlipPair, dst: &FlipPair, r: &IntMatrix) -> Result<HalfElemCert> {
    he_check_with(src, dst, r, None)
}

/// As [`he_check`], additionally requiring a supplied `S` to equal `K Rᵀ J`.
pub fn he_check_with(
    src: &FlipPair,
    dst: &FlipPair,
    r: &IntMatrix,
    supplied_s: Option<&IntMatrix>,
) -> Result<HalfElemCert> {
    let r = labelled_r(src, dst, r)?;
    if let Some((row, col)) = r.first_non_zero_one() {
        return Err(EquivalenceError::NotZeroOne { matrix: "R", row, col });
    }
    let s = derive_s(src, dst, &r)?;
    if let Some(given) = supplied_s {
        let given = labelled_s(src, dst, given)?;
        check_identity(ID_S_KRJ, &given, &s)?;
    }
    if let Some((row, col)) = s.first_non_zero_one() {
        return Err(EquivalenceError::NotZeroOne { matrix: "S", row, col });
    }
    let back = mat_mul(&mat_mul(src.j(), &s.transpose())?, dst.j())?;
    check_identity(ID_R_JSK, &r, &back)?;
    check_identity(ID_A_RS, src.a(), &mat_mul(&r, &s)?)?;
    check_identity(ID_B_SR, dst.a(), &mat_mul(&s, &r)?)?;
    Ok(HalfElemCert {
        source: src.clone(),
        target: dst.clone(),
        r,
        s,
    })
}

/// All half elementary equivalences from `src` to `dst`, in lexicographic
/// order of `R` read row by row, up to `max_solutions`.
pub fn he_search(src: &FlipPair, dst: &FlipPair, max_solutions: usize) -> Result<Vec<HalfElemCert>> {
    he_search_with_budget(src, dst, max_solutions, HE_SEARCH_BUDGET)
}

pub fn he_search_with_budget(
    src: &FlipPair,
    dst: &FlipPair,
    max_solutions: usize,
    budget: usize,
) -> Result<Vec<HalfElemCert>> {
    let (na, nb) = (src.len(), dst.len());
    if na * nb > budget {
        return Err(EquivalenceError::Budget {
            needed: format!("{} cells", na * nb),
            budget: format!("{budget} cells"),
        });
    }
    let mut search = HeSearch {
        src,
        dst,
        na,
        nb,
        r: vec![vec![0u8; nb]; na],
        max_solutions,
        found: Vec::new(),
    };
    if max_solutions > 0 {
        search.cell(0)?;
    }
    Ok(search.found)
}

struct HeSearch<'a> {
    src: &'a FlipPair,
    dst: &'a FlipPair,
    na: usize,
    nb: usize,
    r: Vec<Vec<u8>>,
    max_solutions: usize,
    found: Vec<HalfElemCert>,
}

impl HeSearch<'_> {
    fn cell(&mut self, k: usize) -> Result<()> {
        if self.found.len() >= self.max_solutions {
            return Ok(());
        }
        if k == self.na * self.nb {
            let r = IntMatrix::from_fn(
                self.src.alphabet().to_vec(),
                self.dst.alphabet().to_vec(),
                |a, b| i64::from(self.r[a][b]),
            )?;
            if let Ok(cert) = he_check(self.src, self.dst, &r) {
                self.found.push(cert);
            }
            return Ok(());
        }
        let (a, col) = (k / self.nb, k % self.nb);
        for v in [0u8, 1] {
            self.r[a][col] = v;
            if self.consistent(a, col) {
                self.cell(k + 1)?;
            }
        }
        self.r[a][col] = 0;
        Ok(())
    }

    /// Row `a` is assigned through column `upto`, earlier rows are complete.
    /// With `S(b, c) = R(τ_J c, τ_K b)` we need
    /// `A(a, τ_J c') = Σ_b R(a, b) R(c', τ_K b)` for every pair of rows; the
    /// known part of each sum bounds it from below and is exact once the row
    /// is complete.
    fn consistent(&self, a: usize, upto: usize) -> bool {
        let tk = self.dst.tau();
        let tj = self.src.tau();
        let complete = upto + 1 == self.nb;
        let known = |row: usize, col: usize| row < a || col <= upto;
        for c in 0..=a {
            let mut fwd = 0u32;
            let mut bwd = 0u32;
            for b in 0..self.nb {
                let kb = tk.apply(b);
                if known(a, b) && known(c, kb) {
                    fwd += u32::from(self.r[a][b] & self.r[c][kb]);
                }
                if known(c, b) && known(a, kb) {
                    bwd += u32::from(self.r[c][b] & self.r[a][kb]);
                }
            }
            let want_fwd = u32::from(self.src.allows(a, tj.apply(c)));
            let want_bwd = u32::from(self.src.allows(c, tj.apply(a)));
            if fwd > want_fwd || bwd > want_bwd {
                return false;
            }
            if complete && (fwd != want_fwd || bwd != want_bwd) {
                return false;
            }
        }
        true
    }
}

/// `Γ_{R,S}(a₁a₂)`: the unique `b` with `R(a₁, b) = S(b, a₂) = 1`.
pub fn gamma_block(cert: &HalfElemCert, a1: Symbol, a2: Symbol) -> Result<Symbol> {
    let labels = cert.source.alphabet();
    let names = || (labels[a1].clone(), labels[a2].clone());
    if !cert.source.allows(a1, a2) {
        let (a1, a2) = names();
        return Err(EquivalenceError::Inadmissible { a1, a2 });
    }
    let mut found = None;
    for b in 0..cert.target.len() {
        if cert.r.is_one(a1, b) && cert.s.is_one(b, a2) {
            if found.is_some() {
                let (a1, a2) = names();
                return Err(EquivalenceError::AmbiguousGammaImage { a1, a2 });
            }
            found = Some(b);
        }
    }
    found.ok_or_else(|| {
        let (a1, a2) = names();
        EquivalenceError::NoGammaImage { a1, a2 }
    })
}

/// `γ_{R,S}(x)_i = Γ_{R,S}(x_i x_{i+1})`.
pub fn gamma_point(cert: &HalfElemCert, x: &PeriodicPoint) -> Result<PeriodicPoint> {
    let m = x.period() as i64;
    let image = (0..m)
        .map(|i| gamma_block(cert, x.at(i), x.at(i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PeriodicPoint::new(image))
}

/// First point where an intertwining check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointWitness {
    pub period: usize,
    pub point: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop22Report {
    pub m_max: usize,
    pub points_checked: u64,
    pub passed: bool,
    pub counterexample: Option<PointWitness>,
}

/// Checks `γ ∘ φ_{J,A} = σ_B ∘ φ_{K,B} ∘ γ` on all periodic points of
/// period at most `m_max`.
pub fn verify_prop22(cert: &HalfElemCert, m_max: usize) -> Prop22Report {
    let g = Graph::from_pair(&cert.source);
    let tj = cert.source.tau().clone();
    let tk = cert.target.tau().clone();
    let mut points_checked = 0u64;
    for m in 1..=m_max {
        let mut witness = None;
        g.for_each_periodic(m, |x| {
            if witness.is_some() {
                return;
            }
            points_checked += 1;
            let x = PeriodicPoint::new(x.to_vec());
            let lhs = gamma_point(cert, &x.flip(|s| tj.apply(s)));
            let rhs = gamma_point(cert, &x).map(|y| y.flip(|s| tk.apply(s)).shift(1));
            let detail = match (lhs, rhs) {
                (Ok(l), Ok(r)) if l == r => return,
                (Ok(l), Ok(r)) => format!(
                    "γ∘φ gives {} but σ∘φ∘γ gives {}",
                    cert.target.format_word(l.symbols()),
                    cert.target.format_word(r.symbols())
                ),
                (Err(e), _) | (_, Err(e)) => e.to_string(),
            };
            witness = Some(PointWitness {
                period: m,
                point: cert.source.format_word(x.symbols()),
                detail,
            });
        });
        if witness.is_some() {
            return Prop22Report {
                m_max,
                points_checked,
                passed: false,
                counterexample: witness,
            };
        }
    }
    Prop22Report {
        m_max,
        points_checked,
        passed: true,
        counterexample: None,
    }
}

/// Failure of a point map to be a period-preserving bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionFailure {
    pub period: usize,
    pub reason: String,
    pub witness: Option<Vec<Symbol>>,
}

/// Checks that `map` sends period-`m` points of `src` injectively onto the
/// period-`m` points of `dst`, for every `m ≤ m_max`.
pub fn check_periodic_bijection<E: fmt::Display>(
    src: &Graph,
    dst: &Graph,
    m_max: usize,
    map: impl Fn(&PeriodicPoint) -> std::result::Result<PeriodicPoint, E>,
) -> std::result::Result<(), BijectionFailure> {
    for m in 1..=m_max {
        let mut images = HashSet::new();
        let mut failure = None;
        src.for_each_periodic(m, |x| {
            if failure.is_some() {
                return;
            }
            let x = PeriodicPoint::new(x.to_vec());
            let fail = |reason: String| BijectionFailure {
                period: m,
                reason,
                witness: Some(x.symbols().to_vec()),
            };
            match map(&x) {
                Err(e) => failure = Some(fail(e.to_string())),
                Ok(y) if y.period() != m => failure = Some(fail("period changed".into())),
                Ok(y) if !y.lies_in(dst) => failure = Some(fail("image outside target".into())),
                Ok(y) => {
                    if !images.insert(y) {
                        failure = Some(fail("not injective".into()));
                    }
                }
            }
        });
        if let Some(f) = failure {
            return Err(f);
        }
        let mut target_count = 0usize;
        dst.for_each_periodic(m, |_| target_count += 1);
        if target_count != images.len() {
            return Err(BijectionFailure {
                period: m,
                reason: format!("{} images for {} target points", images.len(), target_count),
                witness: None,
            });
        }
    }
    Ok(())
}

/// A link failure inside a chain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("link {index}: {error}")]
pub struct ChainError {
    pub index: usize,
    pub error: EquivalenceError,
}

/// A strong shift-flip equivalence: `pairs[i]` is joined to `pairs[i + 1]`
/// by `links[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongChain {
    pairs: Vec<FlipPair>,
    links: Vec<HalfElemCert>,
}

impl StrongChain {
    /// The lag-zero chain at `p`.
    pub fn identity(p: FlipPair) -> Self {
        StrongChain {
            pairs: vec![p],
            links: Vec::new(),
        }
    }

    /// Checks every `R` against its neighbouring pairs.
    pub fn from_links(pairs: Vec<FlipPair>, rs: &[IntMatrix]) -> std::result::Result<Self, ChainError> {
        if pairs.len() != rs.len() + 1 {
            return Err(ChainError {
                index: rs.len().min(pairs.len()),
                error: EquivalenceError::PairCount {
                    pairs: pairs.len(),
                    links: rs.len(),
                },
            });
        }
        let links = rs
            .iter()
            .enumerate()
            .map(|(index, r)| {
                he_check(&pairs[index], &pairs[index + 1], r).map_err(|error| ChainError { index, error })
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(StrongChain { pairs, links })
    }

    pub fn new_unchecked(pairs: Vec<FlipPair>, links: Vec<HalfElemCert>) -> Self {
        StrongChain { pairs, links }
    }

    /// Appends a link whose source is the current target.
    pub fn push(&mut self, cert: HalfElemCert) -> std::result::Result<(), ChainError> {
        if !cert.source.same_system(self.target()) {
            return Err(ChainError {
                index: self.lag(),
                error: EquivalenceError::EndpointMismatch,
            });
        }
        self.pairs.push(cert.target.clone());
        self.links.push(cert);
        Ok(())
    }

    pub fn concat(mut self, other: StrongChain) -> std::result::Result<StrongChain, ChainError> {
        if !other.source().same_system(self.target()) {
            return Err(ChainError {
                index: self.lag(),
                error: EquivalenceError::EndpointMismatch,
            });
        }
        self.pairs.extend(other.pairs.into_iter().skip(1));
        self.links.extend(other.links);
        Ok(self)
    }

    pub fn reversed(&self) -> StrongChain {
        StrongChain {
            pairs: self.pairs.iter().rev().cloned().collect(),
            links: self.links.iter().rev().map(HalfElemCert::reversed).collect(),
        }
    }

    pub fn lag(&self) -> usize {
        self.links.len()
    }

    pub fn pairs(&self) -> &[FlipPair] {
        &self.pairs
    }

    pub fn links(&self) -> &[HalfElemCert] {
        &self.links
    }

    pub fn source(&self) -> &FlipPair {
        &self.pairs[0]
    }

    pub fn target(&self) -> &FlipPair {
        self.pairs.last().expect("a chain has at least one pair")
    }

    /// The composed conjugacy `γ_k ∘ ... ∘ γ_1` on a periodic point.
    pub fn gamma_point(&self, x: &PeriodicPoint) -> Result<PeriodicPoint> {
        self.links.iter().try_fold(x.clone(), |y, link| gamma_point(link, &y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkFailure {
    pub index: usize,
    pub error: String,
    pub identity: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SseReport {
    pub lag: usize,
    pub parity: &'static str,
    pub consequence: String,
    pub passed: bool,
    pub failure: Option<LinkFailure>,
}

/// Re-verifies every link of a chain against its neighbouring pairs.
pub fn sse_verify(chain: &StrongChain) -> SseReport {
    let lag = chain.lag();
    let even = lag.is_multiple_of(2);
    let consequence = if even {
        format!("(X_A, σ, φ_J) ≅ (X_B, σ, σ^{lag}∘φ_K), so the flip systems are conjugate")
    } else {
        format!("(X_A, σ, φ_J) ≅ (X_B, σ, σ^{lag}∘φ_K), a conjugacy to the shifted flip")
    };
    let failure = chain_failure(chain);
    SseReport {
        lag,
        parity: if even { "even" } else { "odd" },
        consequence,
        passed: failure.is_none(),
        failure: failure.map(|ChainError { index, error }| LinkFailure {
            index,
            identity: error.identity(),
            error: error.to_string(),
        }),
    }
}

fn chain_failure(chain: &StrongChain) -> Option<ChainError> {
    if chain.pairs.len() != chain.links.len() + 1 {
        return Some(ChainError {
            index: chain.links.len().min(chain.pairs.len()),
            error: EquivalenceError::PairCount {
                pairs: chain.pairs.len(),
                links: chain.links.len(),
            },
        });
    }
    for (index, link) in chain.links.iter().enumerate() {
        let (p, q) = (&chain.pairs[index], &chain.pairs[index + 1]);
        let fail = |error| Some(ChainError { index, error });
        if !link.source.same_system(p) || !link.target.same_system(q) {
            return fail(EquivalenceError::EndpointMismatch);
        }
        if let Err(e) = he_check_with(p, q, &link.r, Some(&link.s)) {
            return fail(e);
        }
    }
    None
}

/// A shift-flip equivalence of lag `k` from `(A, J)` to `(B, K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftFlipCert {
    source: FlipPair,
    target: FlipPair,
    r: IntMatrix,
    s: IntMatrix,
    lag: usize,
}

impl ShiftFlipCert {
    pub fn source(&self) -> &FlipPair {
        &self.source
    }

    pub fn target(&self) -> &FlipPair {
        &self.target
    }

    pub fn r(&self) -> &IntMatrix {
        &self.r
    }

    pub fn s(&self) -> &IntMatrix {
        &self.s
    }

    pub fn lag(&self) -> usize {
        self.lag
    }
}

pub fn sfe_check(src: &FlipPair, dst: &FlipPair, r: &IntMatrix, lag: usize) -> Result<ShiftFlipCert> {
    sfe_check_with(src, dst, r, lag, None)
}

/// Checks `A^k = RS`, `B^k = SR`, `AR = RB` with `S = K Rᵀ J`, then asserts
/// the consequence `SA = BS`.
pub fn sfe_check_with(
    src: &FlipPair,
    dst: &FlipPair,
    r: &IntMatrix,
    lag: usize,
    supplied_s: Option<&IntMatrix>,
) -> Result<ShiftFlipCert> {
    if lag == 0 {
        return Err(EquivalenceError::ZeroLag);
    }
    let r = labelled_r(src, dst, r)?;
    if let Some(i) = r.entries().iter().position(|e| e.is_negative()) {
        return Err(EquivalenceError::Negative {
            matrix: "R",
            row: i / r.cols(),
            col: i % r.cols(),
        });
    }
    let s = derive_s(src, dst, &r)?;
    if let Some(given) = supplied_s {
        let given = labelled_s(src, dst, given)?;
        check_identity(ID_S_KRJ, &given, &s)?;
    }
    let k = u32::try_from(lag).map_err(|_| EquivalenceError::ZeroLag)?;
    check_identity(ID_AK_RS, &mat_pow(src.a(), k)?, &mat_mul(&r, &s)?)?;
    check_identity(ID_BK_SR, &mat_pow(dst.a(), k)?, &mat_mul(&s, &r)?)?;
    check_identity(ID_AR_RB, &mat_mul(src.a(), &r)?, &mat_mul(&r, dst.a())?)?;
    if let Some((row, col)) = mat_mul(&s, src.a())?.first_difference(&mat_mul(dst.a(), &s)?) {
        return Err(EquivalenceError::DerivationBroken { row, col });
    }
    Ok(ShiftFlipCert {
        source: src.clone(),
        target: dst.clone(),
        r,
        s,
        lag,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfeSearchResult {
    pub certs: Vec<ShiftFlipCert>,
    /// Dimension of the rational solution space of `AR = RB`.
    pub intertwiner_dimension: usize,
    pub candidates: u64,
}

impl SfeSearchResult {
    /// "none within bounds" when empty; never a non-existence claim.
    pub fn summary(&self) -> String {
        if self.certs.is_empty() {
            "none within bounds".to_string()
        } else {
            format!("{} certificate(s) found", self.certs.len())
        }
    }
}

pub fn sfe_bounded_search(
    src: &FlipPair,
    dst: &FlipPair,
    lag_max: usize,
    entry_max: u32,
) -> Result<SfeSearchResult> {
    sfe_bounded_search_with_budget(src, dst, lag_max, entry_max, SFE_SEARCH_BUDGET)
}

/// Exhaustive search over `R` with entries in `0..=entry_max` and lags
/// `1..=lag_max`. Candidates are drawn from the integer points of the
/// solution space of `AR = RB`: the free coordinates of its reduced row
/// echelon form range over the box and the pivots are solved for.
pub fn sfe_bounded_search_with_budget(
    src: &FlipPair,
    dst: &FlipPair,
    lag_max: usize,
    entry_max: u32,
    budget: u128,
) -> Result<SfeSearchResult> {
    if lag_max == 0 {
        return Err(EquivalenceError::ZeroLag);
    }
    let (na, nb) = (src.len(), dst.len());
    let vars = na * nb;
    let var = |a: usize, c: usize| a * nb + c;
    let mut eqs = Vec::with_capacity(vars);
    for a in 0..na {
        for c in 0..nb {
            let mut row = vec![BigRational::zero(); vars];
            for b in 0..na {
                row[var(b, c)] += BigRational::from_integer(src.a().get(a, b).clone());
            }
            for d in 0..nb {
                row[var(a, d)] -= BigRational::from_integer(dst.a().get(d, c).clone());
            }
            eqs.push(row);
        }
    }
    let (rref, pivots) = rational_rref(eqs, vars);
    let free: Vec<usize> = (0..vars).filter(|v| !pivots.contains(v)).collect();
    let dim = free.len();
    let side = u128::from(entry_max) + 1;
    let needed = (0..dim).try_fold(1u128, |acc, _| acc.checked_mul(side));
    match needed {
        Some(n) if n <= budget => {}
        _ => {
            return Err(EquivalenceError::Budget {
                needed: format!("{side}^{dim} candidates"),
                budget: format!("{budget} candidates"),
            })
        }
    }

    let mut certs = Vec::new();
    let mut candidates = 0u64;
    let mut assign = vec![0u32; dim];
    let max = BigRational::from_integer(BigInt::from(entry_max));
    loop {
        candidates += 1;
        let mut x = vec![BigRational::zero(); vars];
        for (f, &v) in free.iter().zip(&assign) {
            x[*f] = BigRational::from_integer(BigInt::from(v));
        }
        let mut ok = true;
        for (row, &p) in rref.iter().zip(&pivots) {
            let val: BigRational = -free
                .iter()
                .map(|&f| &row[f] * &x[f])
                .fold(BigRational::zero(), |acc, t| acc + t);
            if !val.is_integer() || val.is_negative() || val > max {
                ok = false;
                break;
            }
            x[p] = val;
        }
        if ok {
            let r = IntMatrix::from_fn(src.alphabet().to_vec(), dst.alphabet().to_vec(), |a, c| {
                x[var(a, c)].to_integer().to_i64().expect("bounded entry")
            })?;
            for lag in 1..=lag_max {
                if let Ok(cert) = sfe_check(src, dst, &r, lag) {
                    certs.push(cert);
                }
            }
        }
        // odometer over the free coordinates, last coordinate fastest
        let mut i = dim;
        loop {
            if i == 0 {
                certs.sort_by(|p, q| p.lag.cmp(&q.lag).then_with(|| p.r.entries().cmp(q.r.entries())));
                return Ok(SfeSearchResult {
                    certs,
                    intertwiner_dimension: dim,
                    candidates,
                });
            }
            i -= 1;
            if assign[i] < entry_max {
                assign[i] += 1;
                break;
            }
            assign[i] = 0;
        }
    }
}
