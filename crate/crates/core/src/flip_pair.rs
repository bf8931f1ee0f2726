//! Flip pairs `(A, J)`: zero-one matrices with `AJ = JAᵀ` and `J² = I`.
//!
//! A validated pair stores the symbol involution `τ_J` read off `J`, and the
//! one-block flip acts on points by `φ(x)_i = τ_J(x_{-i})`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{mat_mul, IntMatrix, LinalgError};

/// Index into an alphabet.
pub type Symbol = usize;
/// Finite word over an alphabet, as symbol indices.
pub type Word = Vec<Symbol>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipPairError {
    #[error("{matrix} is not square")]
    NotSquare { matrix: &'static str },
    #[error("{matrix} is not zero-one at ({row}, {col})")]
    NotZeroOne {
        matrix: &'static str,
        row: usize,
        col: usize,
    },
    #[error("A and J differ in shape ({a} vs {j})")]
    ShapeMismatch { a: usize, j: usize },
    #[error("A and J carry different labels")]
    LabelMismatch,
    #[error("J² ≠ I at ({row}, {col})")]
    JSquaredNotIdentity { row: usize, col: usize },
    #[error("AJ ≠ JAᵀ at ({row}, {col})")]
    NotReversible { row: usize, col: usize },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Total map on an alphabet given by images of each symbol index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolMap {
    images: Vec<Symbol>,
}

impl SymbolMap {
    pub fn new(images: Vec<Symbol>) -> Self {
        SymbolMap { images }
    }

    pub fn identity(n: usize) -> Self {
        SymbolMap {
            images: (0..n).collect(),
        }
    }

    pub fn apply(&self, s: Symbol) -> Symbol {
        self.images[s]
    }

    pub fn images(&self) -> &[Symbol] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(a, &b)| b < self.images.len() && self.images[b] == a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipPair {
    name: String,
    a: IntMatrix,
    j: IntMatrix,
    tau: SymbolMap,
    allowed: Vec<bool>,
}

/// Checks the flip-pair axioms and extracts `τ_J`.
pub fn validate_flip_pair(a: &IntMatrix, j: &IntMatrix) -> Result<FlipPair, FlipPairError> {
    FlipPair::new("", a.clone(), j.clone())
}

impl FlipPair {
    pub fn new(name: impl Into<String>, a: IntMatrix, j: IntMatrix) -> Result<Self, FlipPairError> {
        if !a.is_square() {
            return Err(FlipPairError::NotSquare { matrix: "A" });
        }
        if !j.is_square() {
            return Err(FlipPairError::NotSquare { matrix: "J" });
        }
        if a.rows() != j.rows() {
            return Err(FlipPairError::ShapeMismatch {
                a: a.rows(),
                j: j.rows(),
            });
        }
        if a.row_labels() != j.row_labels() || a.row_labels() != a.col_labels() || j.row_labels() != j.col_labels() {
            return Err(FlipPairError::LabelMismatch);
        }
        if let Some((row, col)) = a.first_non_zero_one() {
            return Err(FlipPairError::NotZeroOne {
                matrix: "A",
                row,
                col,
            });
        }
        if let Some((row, col)) = j.first_non_zero_one() {
            return Err(FlipPairError::NotZeroOne {
                matrix: "J",
                row,
                col,
            });
        }
        let n = a.rows();
        let j2 = mat_mul(&j, &j)?;
        let id = IntMatrix::identity(a.row_labels().to_vec());
        if let Some((row, col)) = j2.first_difference(&id) {
            return Err(FlipPairError::JSquaredNotIdentity { row, col });
        }
        let aj = mat_mul(&a, &j)?;
        let jat = mat_mul(&j, &a.transpose())?;
        if let Some((row, col)) = aj.first_difference(&jat) {
            return Err(FlipPairError::NotReversible { row, col });
        }
        // A zero-one J with J² = I is a permutation matrix.
        let images = (0..n)
            .map(|r| (0..n).find(|&c| j.get(r, c).is_one()).expect("J is a permutation"))
            .collect();
        let tau = SymbolMap::new(images);
        let allowed = a.entries().iter().map(|e| !e.is_zero()).collect();
        Ok(FlipPair {
            name: name.into(),
            a,
            j,
            tau,
            allowed,
        })
    }

    /// The one-symbol pair `([1], [1])`.
    pub fn one_point() -> Self {
        let a = IntMatrix::from_square_rows(&[vec![1]]).expect("1x1");
        FlipPair::new("one-point", a.clone(), a).expect("valid one-point pair")
    }

    /// Pair with `J = I`; valid exactly when `A` is symmetric.
    pub fn with_identity_flip(name: impl Into<String>, a: IntMatrix) -> Result<Self, FlipPairError> {
        let j = IntMatrix::identity(a.row_labels().to_vec());
        FlipPair::new(name, a, j)
    }

    /// Builds the pair from a matrix and an explicit involution on its symbols.
    pub fn from_involution(
        name: impl Into<String>,
        a: IntMatrix,
        tau: &[Symbol],
    ) -> Result<Self, FlipPairError> {
        let labels = a.row_labels().to_vec();
        let j = IntMatrix::from_fn(labels.clone(), labels, |r, c| i64::from(tau[r] == c))?;
        FlipPair::new(name, a, j)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn j(&self) -> &IntMatrix {
        &self.j
    }

    pub fn tau(&self) -> &SymbolMap {
        &self.tau
    }

    pub fn alphabet(&self) -> &[String] {
        self.a.row_labels()
    }

    pub fn len(&self) -> usize {
        self.a.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.a.rows() == 0
    }

    /// `A(a, b) = 1`.
    pub fn allows(&self, a: Symbol, b: Symbol) -> bool {
        self.allowed[a * self.len() + b]
    }

    pub fn symbol(&self, label: &str) -> Result<Symbol, FlipPairError> {
        self.alphabet()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FlipPairError::UnknownSymbol(label.to_string()))
    }

    /// Parses a whitespace-separated word of labels.
    pub fn parse_word(&self, text: &str) -> Result<Word, FlipPairError> {
        text.split_whitespace().map(|l| self.symbol(l)).collect()
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        w.iter()
            .map(|&s| self.alphabet()[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn check_word(&self, w: &[Symbol]) -> Result<(), FlipPairError> {
        match w.iter().find(|&&s| s >= self.len()) {
            Some(s) => Err(FlipPairError::UnknownSymbol(format!("#{s}"))),
            None => Ok(()),
        }
    }

    /// Symbol-wise image under `τ_J`.
    pub fn apply_tau(&self, w: &[Symbol]) -> Result<Word, FlipPairError> {
        self.check_word(w)?;
        Ok(w.iter().map(|&s| self.tau.apply(s)).collect())
    }

    /// Reverses the word and applies `τ_J` to each symbol.
    pub fn flip_word(&self, w: &[Symbol]) -> Result<Word, FlipPairError> {
        self.check_word(w)?;
        Ok(w.iter().rev().map(|&s| self.tau.apply(s)).collect())
    }

    /// Whether consecutive symbols are all allowed by `A`.
    pub fn is_path(&self, w: &[Symbol]) -> bool {
        w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// Relabels by a permutation: symbol `i` becomes symbol `perm[i]`, with
    /// the new label list given in the new order.
    pub fn permuted(&self, perm: &[usize], labels: Vec<String>) -> Result<FlipPair, FlipPairError> {
        let a = self.a.permute_square(perm, labels.clone())?;
        let j = self.j.permute_square(perm, labels)?;
        FlipPair::new(self.name.clone(), a, j)
    }

    pub fn is_symmetric(&self) -> bool {
        self.a == self.a.transpose()
    }

    /// Equal matrices and labels, ignoring the name.
    pub fn same_system(&self, other: &FlipPair) -> bool {
        self.a == other.a && self.j == other.j
    }

    /// Number of ones in `A`.
    pub fn edge_count(&self) -> usize {
        self.allowed.iter().filter(|&&b| b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::default_labels;

    fn ex1() -> (IntMatrix, IntMatrix) {
        let a = IntMatrix::from_square_rows(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ])
        .unwrap();
        let j = IntMatrix::from_square_rows(&[
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ])
        .unwrap();
        (a, j)
    }

    #[test]
    fn example1_pairs_are_valid() {
        let (a, j) = ex1();
        let p = validate_flip_pair(&a, &j).unwrap();
        assert_eq!(p.tau().images(), &[2, 3, 0, 1]);
        assert!(p.tau().is_involution());
        assert!(FlipPair::with_identity_flip("ai", a).is_ok());
    }

    #[test]
    fn bad_j_is_rejected() {
        let a = IntMatrix::from_square_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        let j = IntMatrix::from_square_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(
            validate_flip_pair(&a, &j),
            Err(FlipPairError::JSquaredNotIdentity { row: 0, col: 1 })
        );
    }

    #[test]
    fn other_axiom_failures() {
        let a = IntMatrix::from_square_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let i = IntMatrix::identity(default_labels(2));
        assert!(matches!(
            validate_flip_pair(&a, &i),
            Err(FlipPairError::NotReversible { .. })
        ));
        let two = IntMatrix::from_square_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            validate_flip_pair(&two, &i),
            Err(FlipPairError::NotZeroOne {
                matrix: "A",
                row: 0,
                col: 0
            })
        );
        let i3 = IntMatrix::identity(default_labels(3));
        assert!(matches!(
            validate_flip_pair(&a, &i3),
            Err(FlipPairError::ShapeMismatch { .. })
        ));
        let other = IntMatrix::identity(vec!["x".into(), "y".into()]);
        assert_eq!(
            validate_flip_pair(&two, &other),
            Err(FlipPairError::LabelMismatch)
        );
    }

    #[test]
    fn degenerate_alphabets() {
        let empty = IntMatrix::identity(vec![]);
        let p = validate_flip_pair(&empty, &empty).unwrap();
        assert!(p.is_empty());
        let one = FlipPair::one_point();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn word_actions() {
        let (a, j) = ex1();
        let p = validate_flip_pair(&a, &j).unwrap();
        assert_eq!(p.apply_tau(&[]).unwrap(), Vec::<Symbol>::new());
        let w = p.parse_word("1 2").unwrap();
        assert_eq!(p.format_word(&p.apply_tau(&w).unwrap()), "3 4");
        assert_eq!(p.format_word(&p.flip_word(&w).unwrap()), "4 3");
        assert_eq!(p.flip_word(&[0]).unwrap(), vec![2]);
        assert_eq!(p.flip_word(&p.flip_word(&w).unwrap()).unwrap(), w);
        assert!(matches!(p.parse_word("1 9"), Err(FlipPairError::UnknownSymbol(_))));
        assert!(p.apply_tau(&[7]).is_err());

        let pi = FlipPair::with_identity_flip("", a).unwrap();
        assert_eq!(pi.apply_tau(&w).unwrap(), w);
    }
}
