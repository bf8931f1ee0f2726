//! Closed-form flip periodic-point counts and the zeta functions built on them.
//!
//! For a flip pair `(A, J)`:
//!
//! ```text
//! p_{2m-1,0} = Δ_Jᵀ A^{m-1} Δ_{AJ}
//! p_{2m,0}   = Δ_Jᵀ A^m Δ_J
//! p_{2m,1}   = Δ_{JA}ᵀ A^{m-1} Δ_{AJ}
//! ```
//!
//! The generating function packages these as
//! `G(t) = Σ_m p_{2m-1,0} t^{2m-1} + ½(p_{2m,0} + p_{2m,1}) t^{2m}`, and the
//! Lind zeta function of the infinite dihedral action is
//! `ζ_α(t) = ζ_A(t²)^{1/2} exp(G(t))`. The square root is never taken: we
//! evaluate `exp(½ Σ_n tr(Aⁿ) t^{2n}/n + G(t))`, which is the same series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::flip_pair::FlipPair;
use crate::linalg::{delta, mat_mul, mat_pow, trace, IntMatrix, IntVector, LinalgError};
use crate::markov::{count_fixed_with, count_pmn_bruteforce, Graph, MarkovError};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZetaError {
    #[error("m must be at least 1")]
    ZeroM,
    #[error("series order must be at least 1")]
    ZeroOrder,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Markov(#[from] MarkovError),
}

/// `(p_{2m-1,0}, p_{2m,0}, p_{2m,1})` for one `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipCountTriple {
    pub m: usize,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub p_odd: BigInt,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub p_even0: BigInt,
    #[serde(serialize_with = "crate::io::ser_bigint")]
    pub p_even1: BigInt,
}

impl FlipCountTriple {
    pub fn from_u64(m: usize, p_odd: u64, p_even0: u64, p_even1: u64) -> Self {
        FlipCountTriple {
            m,
            p_odd: p_odd.into(),
            p_even0: p_even0.into(),
            p_even1: p_even1.into(),
        }
    }
}

struct Diagonals {
    j: IntVector,
    aj: IntVector,
    ja: IntVector,
}

fn diagonals(p: &FlipPair) -> Result<Diagonals, ZetaError> {
    Ok(Diagonals {
        j: delta(p.j())?,
        aj: delta(&mat_mul(p.a(), p.j())?)?,
        ja: delta(&mat_mul(p.j(), p.a())?)?,
    })
}

/// The three bilinear forms for a single `m ≥ 1`.
pub fn p_flip_counts(p: &FlipPair, m: usize) -> Result<FlipCountTriple, ZetaError> {
    if m == 0 {
        return Err(ZetaError::ZeroM);
    }
    let d = diagonals(p)?;
    let prev = mat_pow(p.a(), (m - 1) as u32)?;
    let cur = mat_mul(&prev, p.a())?;
    Ok(FlipCountTriple {
        m,
        p_odd: d.j.bilinear(&prev, &d.aj)?,
        p_even0: d.j.bilinear(&cur, &d.j)?,
        p_even1: d.ja.bilinear(&prev, &d.aj)?,
    })
}

/// Triples for `m = 1..=m_max`, sharing row-vector powers.
pub fn flip_count_triples(p: &FlipPair, m_max: usize) -> Result<Vec<FlipCountTriple>, ZetaError> {
    let d = diagonals(p)?;
    let a = p.a();
    let n = p.len();
    let row_times = |v: &[BigInt]| -> Vec<BigInt> {
        (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&r| !v[r].is_zero())
                    .map(|r| &v[r] * a.get(r, c))
                    .sum()
            })
            .collect()
    };
    let dot = |u: &[BigInt], v: &[BigInt]| -> BigInt { u.iter().zip(v).map(|(x, y)| x * y).sum() };
    // u = Δ_Jᵀ A^{m-1}, w = Δ_{JA}ᵀ A^{m-1}
    let mut u = d.j.entries().to_vec();
    let mut w = d.ja.entries().to_vec();
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let next_u = row_times(&u);
        out.push(FlipCountTriple {
            m,
            p_odd: dot(&u, d.aj.entries()),
            p_even0: dot(&next_u, d.j.entries()),
            p_even1: dot(&w, d.aj.entries()),
        });
        u = next_u;
        w = row_times(&w);
    }
    Ok(out)
}

/// `G(t)` truncated at `order`.
pub fn generating_function(p: &FlipPair, order: usize) -> Result<TruncatedSeries, ZetaError> {
    if order == 0 {
        return Err(ZetaError::ZeroOrder);
    }
    let triples = flip_count_triples(p, order.div_ceil(2))?;
    let mut g = TruncatedSeries::zero(order);
    let two = BigInt::from(2);
    for t in &triples {
        let odd = 2 * t.m - 1;
        let even = 2 * t.m;
        g.set_coeff(odd, BigRational::from_integer(t.p_odd.clone()));
        g.set_coeff(
            even,
            BigRational::new(&t.p_even0 + &t.p_even1, two.clone()),
        );
    }
    Ok(g)
}

/// `tr(A^n)` for `n = 1..=n_max`.
pub fn traces(a: &IntMatrix, n_max: usize) -> Result<Vec<BigInt>, ZetaError> {
    let mut out = Vec::with_capacity(n_max);
    if n_max == 0 {
        return Ok(out);
    }
    let mut power = a.clone();
    out.push(trace(&power)?);
    for _ in 1..n_max {
        power = mat_mul(&power, a)?;
        out.push(trace(&power)?);
    }
    Ok(out)
}

/// `ζ_A(t) = exp(Σ tr(Aⁿ) tⁿ / n)`.
pub fn artin_mazur_zeta(a: &IntMatrix, order: usize) -> Result<TruncatedSeries, ZetaError> {
    if order == 0 {
        return Err(ZetaError::ZeroOrder);
    }
    let tr = traces(a, order)?;
    let mut inner = TruncatedSeries::zero(order);
    for (k, t) in tr.into_iter().enumerate() {
        let n = k + 1;
        inner.set_coeff(n, BigRational::new(t, BigInt::from(n)));
    }
    Ok(inner.exp()?)
}

/// `ζ_α(t)` assembled as `exp(½ Σ tr(Aⁿ) t^{2n}/n + G(t))`.
pub fn lind_zeta(p: &FlipPair, order: usize) -> Result<TruncatedSeries, ZetaError> {
    if order == 0 {
        return Err(ZetaError::ZeroOrder);
    }
    let tr = traces(p.a(), order / 2)?;
    let mut inner = generating_function(p, order)?;
    for (k, t) in tr.into_iter().enumerate() {
        let n = k + 1;
        let c = inner.coeff(2 * n) + BigRational::new(t, BigInt::from(2 * n));
        inner.set_coeff(2 * n, c);
    }
    Ok(inner.exp()?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop31Row {
    pub m: usize,
    pub identity: &'static str,
    /// Left side, counted for `(σ, φ)`.
    pub lhs: u64,
    /// Right side, counted directly for the flip `σ∘φ`.
    pub rhs: u64,
    /// Right side through `p_{m,n}(σ, σ∘φ) = p_{m,n+1}(σ, φ)`.
    pub rhs_via_shift: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop31Report {
    pub rows: Vec<Prop31Row>,
    pub passed: bool,
}

/// Checks, by enumeration, that `(σ, φ)` and `(σ, σ∘φ)` have swapped even
/// counts and equal odd counts for `m = 1..=m_max`.
pub fn verify_prop31(p: &FlipPair, m_max: usize) -> Result<Prop31Report, ZetaError> {
    if m_max == 0 {
        return Err(ZetaError::ZeroM);
    }
    let g = Graph::from_pair(p);
    let tau = p.tau().clone();
    let shifted_flip = |x: &crate::markov::PeriodicPoint| x.flip(|s| tau.apply(s)).shift(1);
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let odd = 2 * m - 1;
        let even = 2 * m;
        let cases: [(&'static str, usize, i64, i64); 3] = [
            ("p_{2m-1,0}(T,φ) = p_{2m-1,0}(T,Tφ)", odd, 0, 0),
            ("p_{2m,0}(T,φ) = p_{2m,1}(T,Tφ)", even, 0, 1),
            ("p_{2m,1}(T,φ) = p_{2m,0}(T,Tφ)", even, 1, 0),
        ];
        for (identity, period, n_lhs, n_rhs) in cases {
            let lhs = count_pmn_bruteforce(p, period, n_lhs)?;
            let rhs = count_fixed_with(&g, period, n_rhs, shifted_flip);
            let rhs_via_shift = count_pmn_bruteforce(p, period, n_rhs + 1)?;
            rows.push(Prop31Row {
                m,
                identity,
                lhs,
                rhs,
                rhs_via_shift,
                passed: lhs == rhs && rhs == rhs_via_shift,
            });
        }
    }
    let passed = rows.iter().all(|r| r.passed);
    Ok(Prop31Report { rows, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn ex1_a() -> IntMatrix {
        IntMatrix::from_square_rows(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ])
        .unwrap()
    }

    fn ex1_aj() -> FlipPair {
        let j = IntMatrix::from_square_rows(&[
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        FlipPair::new("ex1-AJ", ex1_a(), j).unwrap()
    }

    fn ex1_ai() -> FlipPair {
        FlipPair::with_identity_flip("ex1-AI", ex1_a()).unwrap()
    }

    #[test]
    fn example1_triples() {
        for m in 1..=5 {
            let t = p_flip_counts(&ex1_aj(), m).unwrap();
            assert_eq!(t, FlipCountTriple::from_u64(m, 0, 0, 0));
        }
        assert_eq!(
            p_flip_counts(&ex1_ai(), 1).unwrap(),
            FlipCountTriple::from_u64(1, 0, 8, 0)
        );
        assert_eq!(p_flip_counts(&ex1_ai(), 0), Err(ZetaError::ZeroM));
    }

    #[test]
    fn incremental_triples_match_single_evaluation() {
        for p in [ex1_aj(), ex1_ai(), FlipPair::one_point()] {
            let all = flip_count_triples(&p, 6).unwrap();
            for t in all {
                assert_eq!(t, p_flip_counts(&p, t.m).unwrap());
            }
        }
    }

    #[test]
    fn generating_function_examples() {
        assert!(generating_function(&ex1_aj(), 12).unwrap().is_zero());
        assert_eq!(
            generating_function(&ex1_ai(), 8).unwrap(),
            TruncatedSeries::from_integers(8, &[0, 0, 4, 0, 8, 0, 16, 0, 32])
        );
        let one = generating_function(&FlipPair::one_point(), 7).unwrap();
        assert_eq!(one, TruncatedSeries::from_integers(7, &[0, 1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(
            generating_function(&FlipPair::one_point(), 0),
            Err(ZetaError::ZeroOrder)
        );
    }

    #[test]
    fn artin_mazur_examples() {
        let empty = IntMatrix::identity(vec![]);
        assert_eq!(artin_mazur_zeta(&empty, 6).unwrap(), TruncatedSeries::one(6));
        let gm = IntMatrix::from_square_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(
            artin_mazur_zeta(&gm, 9).unwrap(),
            TruncatedSeries::from_integers(9, &[1, 1, 2, 3, 5, 8, 13, 21, 34, 55])
        );
        assert_eq!(
            artin_mazur_zeta(&ex1_a(), 8).unwrap(),
            TruncatedSeries::from_integers(8, &[1, 0, 4, 0, 16, 0, 64, 0, 256])
        );
    }

    #[test]
    fn lind_zeta_of_empty_and_flipless_systems() {
        let empty = IntMatrix::identity(vec![]);
        let p = FlipPair::new("empty", empty.clone(), empty).unwrap();
        assert_eq!(lind_zeta(&p, 5).unwrap(), TruncatedSeries::one(5));
        // (1 - 4t⁴)^{-1/2} = Σ C(2k, k) t^{4k}
        assert_eq!(
            lind_zeta(&ex1_aj(), 12).unwrap(),
            TruncatedSeries::from_integers(12, &[1, 0, 0, 0, 2, 0, 0, 0, 6, 0, 0, 0, 20])
        );
    }

    #[test]
    fn prop31_examples() {
        let r = verify_prop31(&ex1_aj(), 3).unwrap();
        assert!(r.passed);
        assert!(r.rows.iter().all(|row| row.lhs == 0 && row.rhs == 0));

        let r = verify_prop31(&ex1_ai(), 3).unwrap();
        assert!(r.passed);
        for row in &r.rows {
            let expected = if row.identity.starts_with("p_{2m,0}") {
                1u64 << (row.m + 2)
            } else {
                0
            };
            assert_eq!(row.lhs, expected, "{row:?}");
        }

        let r = verify_prop31(&FlipPair::one_point(), 4).unwrap();
        assert!(r.passed);
        assert!(r.rows.iter().all(|row| row.lhs == 1));
    }
}
