//! Expected-versus-computed table for the two worked examples, the seeded
//! random corpus and the series algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::constructions::{block_pair, decompose_conjugacy, higher_block, OneBlockConjugacySpec};
use crate::corpus::{flip_pair_corpus, random_series, rng, CorpusConfig, DEFAULT_SEED};
use crate::equivalence::{he_check_with, sfe_bounded_search, sfe_check_with, sse_verify, verify_prop22, StrongChain};
use crate::fixtures::{golden_mean, Fixtures};
use crate::flip_pair::FlipPair;
use crate::linalg::{char_poly, mat_pow, rank_profile, IntMatrix, IntPolynomial};
use crate::markov::count_pmn_many;
use crate::series::{fraction_string, TruncatedSeries};
use crate::zeta::{generating_function, lind_zeta, p_flip_counts, FlipCountTriple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleRow {
    pub criterion: u32,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleOptions {
    /// Truncation override for every series row; each row otherwise uses its
    /// own default order.
    pub order: Option<usize>,
    pub seed: u64,
    pub corpus: CorpusConfig,
    pub series_samples: usize,
}

impl Default for ExampleOptions {
    fn default() -> Self {
        ExampleOptions {
            order: None,
            seed: DEFAULT_SEED,
            corpus: CorpusConfig::default(),
            series_samples: 100,
        }
    }
}

type Computed = Result<String, String>;

fn row(criterion: u32, check: impl Into<String>, expected: impl Into<String>, computed: Computed) -> ExampleRow {
    let expected = expected.into();
    let (computed, passed) = match computed {
        Ok(c) => {
            let ok = c == expected;
            (c, ok)
        }
        Err(e) => (format!("error: {e}"), false),
    };
    ExampleRow {
        criterion,
        check: check.into(),
        expected,
        computed,
        passed,
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Coefficients as a bracketed list; integers print without a denominator.
pub fn coeff_list(s: &TruncatedSeries) -> String {
    let items: Vec<String> = s
        .coeffs()
        .iter()
        .map(|c| if c.is_integer() { c.numer().to_string() } else { fraction_string(c) })
        .collect();
    format!("[{}]", items.join(", "))
}

fn triple(t: &FlipCountTriple) -> String {
    format!("({}, {}, {})", t.p_odd, t.p_even0, t.p_even1)
}

fn brute_triple(p: &FlipPair, m: usize) -> Result<String, String> {
    let odd = count_pmn_many(p, 2 * m - 1, &[0]).map_err(err)?;
    let even = count_pmn_many(p, 2 * m, &[0, 1]).map_err(err)?;
    Ok(format!("({}, {}, {})", odd[0], even[0], even[1]))
}

/// Runs every row. A row whose inputs cannot be built fails with the error
/// as its computed value.
pub fn paper_examples(fixtures: &Fixtures, opts: &ExampleOptions) -> Vec<ExampleRow> {
    let mut rows = Vec::new();
    generating_functions(fixtures, opts, &mut rows);
    example1_counts(fixtures, &mut rows);
    corpus_rows(opts, &mut rows);
    charpolys(fixtures, &mut rows);
    example2_counts(fixtures, &mut rows);
    jordan_probe(fixtures, &mut rows);
    example1_sfe(fixtures, opts, &mut rows);
    higher_block_pipeline(fixtures, opts, &mut rows);
    decompositions(fixtures, &mut rows);
    series_algebra(opts, &mut rows);
    rows
}

fn generating_functions(f: &Fixtures, opts: &ExampleOptions, rows: &mut Vec<ExampleRow>) {
    let order = opts.order.unwrap_or(12);
    let zero = TruncatedSeries::zero(order);
    rows.push(row(
        1,
        format!("G for example 1 (A, J) through order {order}"),
        coeff_list(&zero),
        f.ex1_aj().map_err(err).and_then(|p| generating_function(&p, order).map_err(err)).map(|g| coeff_list(&g)),
    ));
    // 4t²/(1 - 2t²) = Σ_{k≥1} 2^{k+1} t^{2k}
    let mut expected = TruncatedSeries::zero(order);
    for k in (2..=order).step_by(2) {
        expected.set_coeff(k, BigRational::from_integer(BigInt::from(2u32).pow(k as u32 / 2 + 1)));
    }
    rows.push(row(
        1,
        format!("G for example 1 (A, I) = 4t²/(1 - 2t²) through order {order}"),
        coeff_list(&expected),
        f.ex1_ai().map_err(err).and_then(|p| generating_function(&p, order).map_err(err)).map(|g| coeff_list(&g)),
    ));
}

fn example1_counts(f: &Fixtures, rows: &mut Vec<ExampleRow>) {
    for m in 1..=4usize {
        rows.push(row(
            2,
            format!("brute-force (p_{{2m-1,0}}, p_{{2m,0}}, p_{{2m,1}}) for example 1 (A, I), m = {m}"),
            format!("(0, {}, 0)", 1u64 << (m + 2)),
            f.ex1_ai().map_err(err).and_then(|p| brute_triple(&p, m)),
        ));
    }
}

fn corpus_rows(opts: &ExampleOptions, rows: &mut Vec<ExampleRow>) {
    let corpus = flip_pair_corpus(opts.seed, &opts.corpus);
    let size = corpus.len();
    let formula = || -> Computed {
        let mut mismatches = Vec::new();
        for (i, p) in corpus.iter().enumerate() {
            for m in 1..=5 {
                let f = triple(&p_flip_counts(p, m).map_err(err)?);
                let b = brute_triple(p, m)?;
                if f != b {
                    mismatches.push(format!("pair {i}, m = {m}: formula {f}, brute force {b}"));
                }
            }
        }
        Ok(summarize(mismatches, "mismatches", size))
    };
    rows.push(row(
        3,
        format!("closed-form triples equal brute force, corpus seed {}, m ≤ 5", opts.seed),
        format!("0 mismatches over {size} pairs"),
        formula(),
    ));
    let periodicity = || -> Computed {
        let ns: Vec<i64> = (-4..=4).collect();
        let mut violations = Vec::new();
        for (i, p) in corpus.iter().enumerate() {
            for m in 1..=6usize {
                let counts = count_pmn_many(p, m, &ns).map_err(err)?;
                for (k, &n) in ns.iter().enumerate() {
                    let base = if m % 2 == 0 { n.rem_euclid(2) } else { 0 };
                    let reference = counts[ns.iter().position(|&x| x == base).expect("0 and 1 are sampled")];
                    if counts[k] != reference {
                        violations.push(format!("pair {i}, m = {m}, n = {n}: {} vs {reference}", counts[k]));
                    }
                }
            }
        }
        Ok(summarize(violations, "violations", size))
    };
    rows.push(row(
        4,
        format!("p_{{m,n}} depends only on the parity of n (m even) and not on n (m odd), seed {}, m ≤ 6, |n| ≤ 4", opts.seed),
        format!("0 violations over {size} pairs"),
        periodicity(),
    ));
}

fn summarize(failures: Vec<String>, what: &str, size: usize) -> String {
    match failures.first() {
        None => format!("0 {what} over {size} pairs"),
        Some(first) => format!("{} {what} over {size} pairs, first: {first}", failures.len()),
    }
}

/// `t(t - 1)⁴(t² - 3t + 1)`.
pub fn example2_char_poly() -> IntPolynomial {
    IntPolynomial::from_i64(&[0, 1])
        .mul(&IntPolynomial::from_i64(&[-1, 1]).pow(4))
        .mul(&IntPolynomial::from_i64(&[1, -3, 1]))
}

fn charpolys(f: &Fixtures, rows: &mut Vec<ExampleRow>) {
    let expected = example2_char_poly().to_string();
    for (name, m) in [("A", &f.ex2_a), ("B", &f.ex2_b), ("C", &f.ex2_c)] {
        rows.push(row(
            5,
            format!("characteristic polynomial of example 2 {name}"),
            expected.clone(),
            char_poly(m).map(|p| p.to_string()).map_err(err),
        ));
    }
}

/// The closed forms in `λ, μ` (roots of `t² - 3t + 1`) as integers:
/// `s_0 = 5, s_1 = 2, s_{k+1} = 3s_k - s_{k-1}` and
/// `(p_{2m-1,0}, p_{2m,0}, p_{2m,1}) = (8s_m - 3s_{m-1}, s_{m+1}, 55s_m - 21s_{m-1})`.
pub fn example2_closed_form(m: usize) -> (i64, i64, i64) {
    let mut s = vec![5i64, 2];
    while s.len() < m + 2 {
        let k = s.len();
        s.push(3 * s[k - 1] - s[k - 2]);
    }
    (8 * s[m] - 3 * s[m - 1], s[m + 1], 55 * s[m] - 21 * s[m - 1])
}

fn example2_counts(f: &Fixtures, rows: &mut Vec<ExampleRow>) {
    for m in 1..=4usize {
        let (a, b, c) = example2_closed_form(m);
        let expected = format!("({a}, {b}, {c})");
        let computed = || -> Computed {
            let pairs = [f.ex2_aj(), f.ex2_bj(), f.ex2_cj()];
            let mut seen = Vec::new();
            for (name, p) in ["A", "B", "C"].iter().zip(pairs) {
                let p = p.map_err(err)?;
                let formula = triple(&p_flip_counts(&p, m).map_err(err)?);
                let brute = brute_triple(&p, m)?;
                seen.push((format!("{name} formula"), formula));
                seen.push((format!("{name} brute force"), brute));
            }
            let first = &seen[0].1;
            match seen.iter().find(|(_, v)| v != first) {
                None => Ok(first.clone()),
                Some((who, v)) => Ok(format!("disagreement: {} gives {first}, {who} gives {v}", seen[0].0)),
            }
        };
        rows.push(row(
            6,
            format!("triples of example 2 (A, J), (B, J), (C, J), m = {m}"),
            expected,
            computed(),
        ));
    }
}

fn jordan_probe(f: &Fixtures, rows: &mut Vec<ExampleRow>) {
    let one = BigInt::one();
    let profile = |m: &IntMatrix| rank_profile(m, &one, 4).map_err(err);
    for (name, m, expected) in [("A", &f.ex2_a, 6), ("B", &f.ex2_b, 6), ("C", &f.ex2_c, 5)] {
        rows.push(row(
            7,
            format!("rank({name} - I) for example 2"),
            expected.to_string(),
            profile(m).map(|p| p.first().map_or("empty".into(), |r| r.to_string())),
        ));
    }
    let distinguish = || -> Computed {
        let (a, b, c) = (profile(&f.ex2_a)?, profile(&f.ex2_b)?, profile(&f.ex2_c)?);
        Ok(if a == b && a != c {
            "profile(A) = profile(B) ≠ profile(C)".to_string()
        } else {
            format!("profiles A {a:?}, B {b:?}, C {c:?}")
        })
    };
    rows.push(row(
        7,
        "rank((M - I)^j), j = 1..4, separates C from A and B",
        "profile(A) = profile(B) ≠ profile(C)",
        distinguish(),
    ));
    let search = || -> Computed {
        let (a, c) = (f.ex2_aj().map_err(err)?, f.ex2_cj().map_err(err)?);
        Ok(sfe_bounded_search(&a, &c, 2, 1).map_err(err)?.summary())
    };
    rows.push(row(
        7,
        "bounded shift-flip search (A, J) to (C, J), lag ≤ 2, entries ≤ 1",
        "none within bounds",
        search(),
    ));
}

fn example1_sfe(f: &Fixtures, opts: &ExampleOptions, rows: &mut Vec<ExampleRow>) {
    for k in 1..=2u32 {
        let check = || -> Computed {
            let (aj, ai) = (f.ex1_aj().map_err(err)?, f.ex1_ai().map_err(err)?);
            let ak = mat_pow(aj.a(), k).map_err(err)?;
            sfe_check_with(&aj, &ai, &ak, 2 * k as usize, Some(&ak)).map_err(err)?;
            Ok("accepted".into())
        };
        rows.push(row(
            8,
            format!("(R, S) = (A^{k}, A^{k}) is a shift-flip equivalence of lag {} from (A, J) to (A, I)", 2 * k),
            "accepted",
            check(),
        ));
    }
    let order = opts.order.unwrap_or(12);
    let differ = || -> Computed {
        let (aj, ai) = (f.ex1_aj().map_err(err)?, f.ex1_ai().map_err(err)?);
        let (x, y) = (lind_zeta(&aj, order).map_err(err)?, lind_zeta(&ai, order).map_err(err)?);
        Ok(if x == y { "equal".into() } else { "differ".into() })
    };
    rows.push(row(
        8,
        format!("Lind zeta of (A, J) and (A, I) through order {order}"),
        "differ",
        differ(),
    ));
}

fn chain_links_pass(chain: &StrongChain) -> Result<(), String> {
    for (i, l) in chain.links().iter().enumerate() {
        he_check_with(l.source(), l.target(), l.r(), Some(l.s())).map_err(|e| format!("link {i}: {e}"))?;
    }
    Ok(())
}

fn higher_block_pipeline(f: &Fixtures, opts: &ExampleOptions, rows: &mut Vec<ExampleRow>) {
    let order = opts.order.unwrap_or(10);
    let expected = "sse pass, γ bijective, lind zeta equal";
    for (name, pair) in [("golden mean", Ok(golden_mean())), ("example 1 (A, J)", f.ex1_aj())] {
        for n in 1..=3usize {
            let run = || -> Computed {
                let p = pair.clone().map_err(err)?;
                let (q, chain) = higher_block(&p, n).map_err(err)?;
                let sse = sse_verify(&chain);
                if !sse.passed {
                    return Ok(format!("sse fail: {:?}", sse.failure));
                }
                for (i, link) in chain.links().iter().enumerate() {
                    let r = verify_prop22(link, 6);
                    if !r.passed {
                        return Ok(format!("γ of link {i} fails: {:?}", r.counterexample));
                    }
                }
                let same = lind_zeta(&p, order).map_err(err)? == lind_zeta(&q, order).map_err(err)?;
                Ok(format!(
                    "sse pass, γ bijective, lind zeta {}",
                    if same { "equal" } else { "differ" }
                ))
            };
            rows.push(row(
                9,
                format!("higher block n = {n} of {name}, periods ≤ 6, order {order}"),
                expected,
                run(),
            ));
        }
    }
}

fn decompositions(f: &Fixtures, rows: &mut Vec<ExampleRow>) {
    let relabel = || -> Result<OneBlockConjugacySpec, String> {
        let p = f.ex1_aj().map_err(err)?;
        let perm = vec![1, 2, 3, 0];
        let labels = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let q = p.permuted(&perm, labels).map_err(err)?;
        OneBlockConjugacySpec::new(p, q, perm, 0).map_err(err)
    };
    let round_trip = |p: FlipPair| -> Result<OneBlockConjugacySpec, String> {
        let (three, words) = block_pair(&p, 3).map_err(err)?;
        let psi = words.iter().map(|w| w[1]).collect();
        OneBlockConjugacySpec::new(three, p, psi, 1).map_err(err)
    };
    let cases: [(&str, usize, Result<OneBlockConjugacySpec, String>); 3] = [
        ("relabelling of example 1 (A, J), m = 0", 0, relabel()),
        ("centre of 3-blocks onto the golden mean, m = 1", 4, round_trip(golden_mean())),
        (
            "centre of 3-blocks onto example 1 (A, J), m = 1",
            4,
            f.ex1_aj().map_err(err).and_then(round_trip),
        ),
    ];
    for (name, lag, spec) in cases {
        let run = || -> Computed {
            let spec = spec.clone()?;
            let d = decompose_conjugacy(&spec).map_err(err)?;
            chain_links_pass(d.chain())?;
            d.check_against(&spec, 6).map_err(|e| format!("{e:?}"))?;
            Ok(format!("lag {}, links pass, γ = σ^{}∘ψ on periods ≤ 6", d.chain().lag(), d.shift()))
        };
        rows.push(row(
            10,
            format!("decomposition of the {name}"),
            format!("lag {lag}, links pass, γ = σ^{lag_half}∘ψ on periods ≤ 6", lag_half = lag / 2),
            run(),
        ));
    }
}

fn series_algebra(opts: &ExampleOptions, rows: &mut Vec<ExampleRow>) {
    let order = opts.order.unwrap_or(16);
    let samples = opts.series_samples;
    let mut r = rng(opts.seed);
    let mut failures = [0usize; 3];
    for _ in 0..samples {
        let f = random_series(&mut r, order, 0);
        let g = random_series(&mut r, order, 0);
        let h = random_series(&mut r, order, 1);
        let exp_f = f.exp().expect("zero constant");
        if exp_f.log().ok() != Some(f.clone()) {
            failures[0] += 1;
        }
        let sum = f.add(&g).expect("same order");
        let product = exp_f.mul(&g.exp().expect("zero constant")).expect("same order");
        if sum.exp().ok() != Some(product) {
            failures[1] += 1;
        }
        let additive = sum.substitute_t_squared() == f.substitute_t_squared().add(&g.substitute_t_squared()).expect("same order");
        let multiplicative = f.mul(&h).expect("same order").substitute_t_squared()
            == f.substitute_t_squared().mul(&h.substitute_t_squared()).expect("same order");
        if !(additive && multiplicative) {
            failures[2] += 1;
        }
    }
    let names = [
        "log(exp f) = f",
        "exp(f + g) = exp(f)·exp(g)",
        "t ↦ t² respects sums and products",
    ];
    for (name, bad) in names.iter().zip(failures) {
        rows.push(row(
            11,
            format!("{name} on {samples} random series of order {order}, seed {}", opts.seed),
            format!("0 failures of {samples}"),
            Ok(format!("{bad} failures of {samples}")),
        ));
    }
}
