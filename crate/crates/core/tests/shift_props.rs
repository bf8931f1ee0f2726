mod common;

use std::collections::BTreeSet;

use common::{any_flip_pairs, flip_pairs, square_matrices};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use shiftflip::constructions::higher_block;
use shiftflip::flip_pair::FlipPair;
use shiftflip::linalg::{mat_pow, trace};
use shiftflip::markov::{count_pmn_bruteforce, count_pmn_many, enumerate_periodic, Graph, PeriodicPoint};
use shiftflip::zeta::{generating_function, lind_zeta, p_flip_counts};

fn relabelled(p: &FlipPair, seed: u64) -> (FlipPair, Vec<usize>) {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..p.len()).collect();
    perm.shuffle(&mut shiftflip::corpus::rng(seed));
    let mut labels = vec![String::new(); p.len()];
    for (old, &new) in perm.iter().enumerate() {
        labels[new] = format!("s{}", p.alphabet()[old]);
    }
    (p.permuted(&perm, labels).unwrap(), perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn flipped_blocks_stay_blocks(p in flip_pairs(6), n in 1usize..=5) {
        let blocks = Graph::from_pair(&p).blocks(n).unwrap();
        let set: BTreeSet<_> = blocks.iter().cloned().collect();
        for w in &blocks {
            let f = p.flip_word(w).unwrap();
            prop_assert!(set.contains(&f));
            prop_assert_eq!(&p.flip_word(&f).unwrap(), w);
        }
    }

    #[test]
    fn identity_flip_iff_symmetric(a in square_matrices(0..=5, 0, 1)) {
        let symmetric = a == a.transpose();
        prop_assert_eq!(FlipPair::with_identity_flip("a", a).is_ok(), symmetric);
    }

    #[test]
    fn periodic_points_count_traces(p in any_flip_pairs(6), m in 1usize..=7) {
        let points = enumerate_periodic(p.a(), m).unwrap();
        let tr = trace(&mat_pow(p.a(), m as u32).unwrap()).unwrap();
        prop_assert_eq!(BigInt::from(points.len()), tr);
    }

    #[test]
    fn counts_depend_on_parity_only(p in flip_pairs(6), m in 1usize..=6) {
        let ns: Vec<i64> = (-4..=4).collect();
        let counts = count_pmn_many(&p, m, &ns).unwrap();
        for (k, &n) in ns.iter().enumerate() {
            let base = if m % 2 == 0 { n.rem_euclid(2) } else { 0 };
            prop_assert_eq!(counts[k], count_pmn_bruteforce(&p, m, base).unwrap());
            prop_assert_eq!(counts[k], count_pmn_bruteforce(&p, m, m as i64 + n).unwrap());
        }
    }

    #[test]
    fn flip_permutes_periodic_points(p in flip_pairs(6), m in 1usize..=6) {
        let points = enumerate_periodic(p.a(), m).unwrap();
        let set: BTreeSet<PeriodicPoint> = points.iter().cloned().collect();
        let images: BTreeSet<PeriodicPoint> = points.iter().map(|x| x.flip(|s| p.tau().apply(s))).collect();
        prop_assert_eq!(images, set);
    }

    #[test]
    fn closed_forms_match_brute_force(p in flip_pairs(6), m in 1usize..=5) {
        let t = p_flip_counts(&p, m).unwrap();
        prop_assert_eq!(t.p_odd, count_pmn_bruteforce(&p, 2 * m - 1, 0).unwrap().into());
        prop_assert_eq!(t.p_even0, count_pmn_bruteforce(&p, 2 * m, 0).unwrap().into());
        prop_assert_eq!(t.p_even1, count_pmn_bruteforce(&p, 2 * m, 1).unwrap().into());
    }

    #[test]
    fn generating_function_even_terms(p in flip_pairs(5)) {
        let g = generating_function(&p, 10).unwrap();
        for m in 1..=5usize {
            let twice = g.coeff(2 * m) * BigRational::from_integer(2.into());
            prop_assert!(twice.is_integer());
            let oracle = count_pmn_bruteforce(&p, 2 * m, 0).unwrap() + count_pmn_bruteforce(&p, 2 * m, 1).unwrap();
            prop_assert_eq!(twice.to_integer(), BigInt::from(oracle));
            let odd = count_pmn_bruteforce(&p, 2 * m - 1, 0).unwrap();
            prop_assert_eq!(g.coeff(2 * m - 1), BigRational::from_integer(odd.into()));
        }
    }

    #[test]
    fn lind_zeta_ignores_labels(p in flip_pairs(6), seed in any::<u64>()) {
        let (q, _) = relabelled(&p, seed);
        prop_assert_eq!(lind_zeta(&p, 12).unwrap(), lind_zeta(&q, 12).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lind_zeta_survives_higher_blocks(p in flip_pairs(4), n in 1usize..=3) {
        let (q, _) = higher_block(&p, n).unwrap();
        prop_assert_eq!(lind_zeta(&p, 8).unwrap(), lind_zeta(&q, 8).unwrap());
    }
}
