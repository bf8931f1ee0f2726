//! Truncated formal power series over exact rationals.
//!
//! A series of order `N` stores the coefficients of `t^0 ..= t^N`. Products
//! and transcendental operations discard every term of degree above `N`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Order used when none is requested.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("exp needs a zero constant term, got {0}")]
    NonzeroConstant(BigRational),
    #[error("log needs constant term 1, got {0}")]
    ConstantNotOne(BigRational),
    #[error("bad coefficient `{0}`")]
    BadCoefficient(String),
    #[error("series of order {order} needs {expected} coefficients, got {got}")]
    CoefficientCount {
        order: usize,
        expected: usize,
        got: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Builds from coefficients; missing high coefficients are zero and extra
    /// ones are truncated away.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| rat(c)))
    }

    /// Exact coefficient list of length `order + 1`.
    pub fn from_exact(coeffs: Vec<BigRational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::CoefficientCount {
                order: 0,
                expected: 1,
                got: 0,
            });
        }
        Ok(TruncatedSeries { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set_coeff(&mut self, k: usize, c: BigRational) {
        if k < self.coeffs.len() {
            self.coeffs[k] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-truncates at a smaller order, or pads with zeros at a larger one.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `exp(a)` from `f' = a' f`: `n f_n = Σ_{k=1..n} k a_k f_{n-k}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(self.coeffs[0].clone()));
        }
        let n = self.order();
        let mut f = Self::zero(n);
        f.coeffs[0] = BigRational::one();
        for m in 1..=n {
            let mut acc = BigRational::zero();
            for k in 1..=m {
                let ak = &self.coeffs[k];
                if !ak.is_zero() {
                    acc += ak * rat(k as i64) * &f.coeffs[m - k];
                }
            }
            f.coeffs[m] = acc / rat(m as i64);
        }
        Ok(f)
    }

    /// `log(a)` for constant term 1, from `a g' = a'`:
    /// `n g_n = n a_n - Σ_{k=1..n-1} k g_k a_{n-k}`.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::ConstantNotOne(self.coeffs[0].clone()));
        }
        let n = self.order();
        let mut g = Self::zero(n);
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * rat(m as i64);
            for k in 1..m {
                if !g.coeffs[k].is_zero() {
                    acc -= &g.coeffs[k] * rat(k as i64) * &self.coeffs[m - k];
                }
            }
            g.coeffs[m] = acc / rat(m as i64);
        }
        Ok(g)
    }

    /// `a(t²)` at the same order.
    pub fn substitute_t_squared(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if 2 * k > n {
                break;
            }
            out.coeffs[2 * k] = c.clone();
        }
        out
    }

    /// Coefficients as `"p/q"` strings in lowest terms with `q > 0`.
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fraction_string).collect()
    }

    pub fn from_fraction_strings(order: usize, coeffs: &[String]) -> Result<Self, SeriesError> {
        if coeffs.len() != order + 1 {
            return Err(SeriesError::CoefficientCount {
                order,
                expected: order + 1,
                got: coeffs.len(),
            });
        }
        let parsed = coeffs
            .iter()
            .map(|s| parse_fraction(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs: parsed })
    }
}

/// `p/q` with `q > 0`; `BigRational` already keeps lowest terms.
pub fn fraction_string(c: &BigRational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_fraction(s: &str) -> Result<BigRational, SeriesError> {
    let bad = || SeriesError::BadCoefficient(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => c.to_string(),
                1 => format!("({c})t"),
                _ => format!("({c})t^{k}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{} + O(t^{})", terms.join(" + "), self.order() + 1)
    }
}
