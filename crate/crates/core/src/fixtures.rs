//! The two worked examples as embedded matrices, optionally overridden from a
//! directory of standalone copies.

use std::path::Path;

use crate::flip_pair::FlipPair;
use crate::io::{parse_doc, DocError, MatrixDoc};
use crate::linalg::IntMatrix;

/// File names under `fixtures/matrices/`, in the order of [`Fixtures`] fields.
pub const MATRIX_FILES: [&str; 6] = [
    "example1_A.json",
    "example1_J.json",
    "example2_A.json",
    "example2_B.json",
    "example2_C.json",
    "example2_J.json",
];

const EMBEDDED: [&str; 6] = [
    include_str!("../fixtures/matrices/example1_A.json"),
    include_str!("../fixtures/matrices/example1_J.json"),
    include_str!("../fixtures/matrices/example2_A.json"),
    include_str!("../fixtures/matrices/example2_B.json"),
    include_str!("../fixtures/matrices/example2_C.json"),
    include_str!("../fixtures/matrices/example2_J.json"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixtures {
    pub ex1_a: IntMatrix,
    pub ex1_j: IntMatrix,
    pub ex2_a: IntMatrix,
    pub ex2_b: IntMatrix,
    pub ex2_c: IntMatrix,
    pub ex2_j: IntMatrix,
}

/// Where a fixture failed to load.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{file}: {error}")]
pub struct FixtureError {
    pub file: String,
    pub error: DocError,
}

fn parse(file: &str, text: &str) -> Result<IntMatrix, FixtureError> {
    parse_doc::<MatrixDoc>(text)
        .and_then(|d| d.to_matrix())
        .map_err(|error| FixtureError {
            file: file.to_string(),
            error,
        })
}

impl Fixtures {
    /// The copies compiled into the binary.
    pub fn embedded() -> Self {
        Self::from_texts(EMBEDDED.map(String::from)).expect("embedded fixtures parse")
    }

    /// Reads each file of [`MATRIX_FILES`] present in `dir`; absent files
    /// fall back to the embedded copy.
    pub fn from_dir(dir: &Path) -> Result<Self, FixtureError> {
        let mut texts = EMBEDDED.map(String::from);
        for (text, file) in texts.iter_mut().zip(MATRIX_FILES) {
            let path = dir.join(file);
            if path.exists() {
                *text = std::fs::read_to_string(&path).map_err(|e| FixtureError {
                    file: path.display().to_string(),
                    error: DocError::Invalid {
                        path: String::new(),
                        message: e.to_string(),
                    },
                })?;
            }
        }
        Self::from_texts(texts)
    }

    fn from_texts(texts: [String; 6]) -> Result<Self, FixtureError> {
        let m = |i: usize| parse(MATRIX_FILES[i], &texts[i]);
        Ok(Fixtures {
            ex1_a: m(0)?,
            ex1_j: m(1)?,
            ex2_a: m(2)?,
            ex2_b: m(3)?,
            ex2_c: m(4)?,
            ex2_j: m(5)?,
        })
    }

    pub fn ex1_aj(&self) -> Result<FlipPair, crate::flip_pair::FlipPairError> {
        FlipPair::new("example 1 AJ", self.ex1_a.clone(), self.ex1_j.clone())
    }

    pub fn ex1_ai(&self) -> Result<FlipPair, crate::flip_pair::FlipPairError> {
        FlipPair::with_identity_flip("example 1 AI", self.ex1_a.clone())
    }

    pub fn ex2_aj(&self) -> Result<FlipPair, crate::flip_pair::FlipPairError> {
        FlipPair::new("example 2 AJ", self.ex2_a.clone(), self.ex2_j.clone())
    }

    pub fn ex2_bj(&self) -> Result<FlipPair, crate::flip_pair::FlipPairError> {
        FlipPair::new("example 2 BJ", self.ex2_b.clone(), self.ex2_j.clone())
    }

    pub fn ex2_cj(&self) -> Result<FlipPair, crate::flip_pair::FlipPairError> {
        FlipPair::new("example 2 CJ", self.ex2_c.clone(), self.ex2_j.clone())
    }
}

/// Golden mean shift `[[1, 1], [1, 0]]` with the identity flip.
pub fn golden_mean() -> FlipPair {
    let a = IntMatrix::from_square_rows(&[vec![1, 1], vec![1, 0]]).expect("2x2");
    FlipPair::with_identity_flip("golden mean", a).expect("symmetric")
}
