//! Exact computations for shift-flip systems of finite type.

pub mod cli;
pub mod constructions;
pub mod corpus;
pub mod equivalence;
pub mod fixtures;
pub mod flip_pair;
pub mod io;
pub mod linalg;
pub mod markov;
pub mod paper_examples;
pub mod report;
pub mod series;
pub mod zeta;
