//! Strategies shared by the property suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use shiftflip::corpus::{random_flip_pair, rng};
use shiftflip::flip_pair::FlipPair;
use shiftflip::linalg::{default_labels, IntMatrix};
use shiftflip::markov::Graph;
use shiftflip::series::TruncatedSeries;

/// Essential nonempty flip pairs on at most `max_n` symbols.
pub fn flip_pairs(max_n: usize) -> impl Strategy<Value = FlipPair> {
    (any::<u64>(), 1..=max_n, 0.2f64..0.7).prop_filter_map("not essential", |(seed, n, density)| {
        let p = random_flip_pair(&mut rng(seed), n, density);
        (Graph::from_pair(&p).is_essential() && p.edge_count() > 0).then_some(p)
    })
}

/// Flip pairs with no essentiality requirement.
pub fn any_flip_pairs(max_n: usize) -> impl Strategy<Value = FlipPair> {
    (any::<u64>(), 0..=max_n, 0.0f64..1.0).prop_map(|(seed, n, density)| random_flip_pair(&mut rng(seed), n, density))
}

pub fn square_matrices(n: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    n.prop_flat_map(move |n| proptest::collection::vec(proptest::collection::vec(lo..=hi, n), n))
        .prop_map(|rows| IntMatrix::square(default_labels(rows.len()), &rows).unwrap())
}

pub fn matrices(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    (rows, cols)
        .prop_flat_map(move |(r, c)| proptest::collection::vec(proptest::collection::vec(lo..=hi, c), r).prop_map(move |rows| (rows, c)))
        .prop_map(|(rows, c)| IntMatrix::from_rows(default_labels(rows.len()), default_labels(c), &rows).unwrap())
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

/// Series of the given order with a fixed constant term.
pub fn series(order: usize, constant: i64) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec(rational(), order).prop_map(move |tail| {
        let head = BigRational::from_integer(BigInt::from(constant));
        TruncatedSeries::from_coeffs(order, std::iter::once(head).chain(tail))
    })
}
