//! JSON documents for matrices, pairs, series, certificates, chains and
//! construction specs.
//!
//! Integers are written as JSON numbers when they fit in `i64` and as decimal
//! strings otherwise; both forms are accepted on input. Every document
//! rejects unknown fields.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::constructions::{BlockFlipSpec, ConstructionError, OneBlockConjugacySpec};
use crate::equivalence::{derive_s, HalfElemCert, StrongChain};
use crate::flip_pair::{FlipPair, FlipPairError, Symbol, Word};
use crate::linalg::{default_labels, IntMatrix, LinalgError};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid document at `{path}`: {message}")]
    Invalid { path: String, message: String },
}

impl DocError {
    fn invalid(path: impl Into<String>, message: impl fmt::Display) -> Self {
        DocError::Invalid {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, DocError>;

/// Writes a big integer as a JSON number when it fits in `i64`, else as a string.
pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

/// Integer entry of a document.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_bigint(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim()
                    .parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

pub type Rows = Vec<Vec<JsonInt>>;

fn rows_of(m: &IntMatrix) -> Rows {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(JsonInt).collect())
        .collect()
}

fn bigint_rows(rows: &Rows) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect()
}

/// Column count of nested rows; an empty row list has zero columns.
fn width(rows: &Rows, path: &str) -> Result<usize> {
    let w = rows.first().map_or(0, Vec::len);
    for (i, r) in rows.iter().enumerate() {
        if r.len() != w {
            return Err(DocError::invalid(
                format!("{path}[{i}]"),
                format!("row has {} entries, expected {w}", r.len()),
            ));
        }
    }
    Ok(w)
}

/// Matrix with labeled rows and columns given as bare rows.
pub fn matrix_from_rows(
    rows: &Rows,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    path: &str,
) -> Result<IntMatrix> {
    IntMatrix::from_rows(row_labels, col_labels, &bigint_rows(rows)).map_err(|e| DocError::invalid(path, e))
}

/// Bare rows with default labels on both sides.
pub fn unlabeled_matrix(rows: &Rows, path: &str) -> Result<IntMatrix> {
    let w = width(rows, path)?;
    matrix_from_rows(rows, default_labels(rows.len()), default_labels(w), path)
}

/// `{"labels": [...], "rows": [[...]...]}`. Square matrices use `labels` for
/// both sides; a rectangular matrix adds `col_labels`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_labels: Option<Vec<String>>,
    pub rows: Rows,
}

impl MatrixDoc {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let square_labels = m.row_labels() == m.col_labels();
        MatrixDoc {
            labels: Some(m.row_labels().to_vec()),
            col_labels: (!square_labels).then(|| m.col_labels().to_vec()),
            rows: rows_of(m),
        }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix> {
        let w = width(&self.rows, "rows")?;
        let row_labels = self.labels.clone().unwrap_or_else(|| default_labels(self.rows.len()));
        let col_labels = match (&self.col_labels, &self.labels) {
            (Some(c), _) => c.clone(),
            (None, Some(l)) if w == self.rows.len() => l.clone(),
            _ => default_labels(w),
        };
        matrix_from_rows(&self.rows, row_labels, col_labels, "rows")
    }
}

/// `{"name", "alphabet", "A", "J"}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<Vec<String>>,
    #[serde(rename = "A")]
    pub a: Rows,
    #[serde(rename = "J")]
    pub j: Rows,
}

impl PairDoc {
    pub fn from_pair(p: &FlipPair) -> Self {
        PairDoc {
            name: p.name().to_string(),
            alphabet: Some(p.alphabet().to_vec()),
            a: rows_of(p.a()),
            j: rows_of(p.j()),
        }
    }

    /// Validated pair; `prefix` locates errors inside an enclosing document.
    pub fn to_pair_at(&self, prefix: &str) -> Result<FlipPair> {
        let n = self.a.len();
        let labels = self.alphabet.clone().unwrap_or_else(|| default_labels(n));
        let a = matrix_from_rows(&self.a, labels.clone(), labels.clone(), &format!("{prefix}A"))?;
        let j = matrix_from_rows(&self.j, labels.clone(), labels, &format!("{prefix}J"))?;
        FlipPair::new(self.name.clone(), a, j).map_err(|e| pair_error(prefix, e))
    }

    pub fn to_pair(&self) -> Result<FlipPair> {
        self.to_pair_at("")
    }
}

fn pair_error(prefix: &str, e: FlipPairError) -> DocError {
    let field = match &e {
        FlipPairError::NotZeroOne { matrix, .. } | FlipPairError::NotSquare { matrix } => (*matrix).to_string(),
        FlipPairError::JSquaredNotIdentity { .. } => "J".into(),
        FlipPairError::NotReversible { .. } => "A".into(),
        _ => String::new(),
    };
    DocError::invalid(format!("{prefix}{field}"), e)
}

/// `{"order": N, "coeffs": ["p/q", ...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl SeriesDoc {
    pub fn from_series(s: &TruncatedSeries) -> Self {
        SeriesDoc {
            order: s.order(),
            coeffs: s.to_fraction_strings(),
        }
    }

    pub fn to_series(&self) -> Result<TruncatedSeries> {
        TruncatedSeries::from_fraction_strings(self.order, &self.coeffs)
            .map_err(|e: SeriesError| DocError::invalid("coeffs", e))
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    He,
    Sfe,
}

/// `{"kind": "he"|"sfe", "lag": k, "R": rows, "S": rows}` with `S` optional.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub kind: CertKind,
    pub lag: usize,
    #[serde(rename = "R")]
    pub r: Rows,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Rows>,
}

impl CertificateDoc {
    pub fn he(cert: &HalfElemCert) -> Self {
        CertificateDoc {
            kind: CertKind::He,
            lag: 1,
            r: rows_of(cert.r()),
            s: Some(rows_of(cert.s())),
        }
    }

    pub fn r_matrix(&self) -> Result<IntMatrix> {
        unlabeled_matrix(&self.r, "R")
    }

    pub fn s_matrix(&self) -> Result<Option<IntMatrix>> {
        self.s.as_ref().map(|s| unlabeled_matrix(s, "S")).transpose()
    }
}

/// `{"pairs": [pair...], "links": [certificate...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub pairs: Vec<PairDoc>,
    pub links: Vec<CertificateDoc>,
}

impl ChainDoc {
    pub fn from_chain(chain: &StrongChain) -> Self {
        ChainDoc {
            pairs: chain.pairs().iter().map(PairDoc::from_pair).collect(),
            links: chain.links().iter().map(CertificateDoc::he).collect(),
        }
    }

    /// Chain whose links are not yet checked; `sse_verify` does that. A
    /// missing `S` is derived from `R` when the shapes allow it.
    pub fn to_chain_unchecked(&self) -> Result<StrongChain> {
        if self.links.len() + 1 != self.pairs.len() {
            return Err(DocError::invalid(
                "links",
                format!("{} pairs need {} links, got {}", self.pairs.len(), self.pairs.len().saturating_sub(1), self.links.len()),
            ));
        }
        let pairs = self
            .pairs
            .iter()
            .enumerate()
            .map(|(i, p)| p.to_pair_at(&format!("pairs[{i}].")))
            .collect::<Result<Vec<_>>>()?;
        let mut links = Vec::with_capacity(self.links.len());
        for (i, l) in self.links.iter().enumerate() {
            let at = |field: &str| format!("links[{i}].{field}");
            if l.kind != CertKind::He || l.lag != 1 {
                return Err(DocError::invalid(at("kind"), "chain links must be half elementary (kind he, lag 1)"));
            }
            let (src, dst) = (&pairs[i], &pairs[i + 1]);
            let r = matrix_from_rows(&l.r, src.alphabet().to_vec(), dst.alphabet().to_vec(), &at("R"))?;
            let s = match &l.s {
                Some(s) => matrix_from_rows(s, dst.alphabet().to_vec(), src.alphabet().to_vec(), &at("S"))?,
                None => derive_s(src, dst, &r).map_err(|e| DocError::invalid(at("R"), e))?,
            };
            links.push(HalfElemCert::new_unchecked(src.clone(), dst.clone(), r, s));
        }
        Ok(StrongChain::new_unchecked(pairs, links))
    }
}

/// One entry of a block flip: `{"block": "a b c", "image": "d"}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PhiEntry {
    pub block: String,
    pub image: String,
}

/// `{"A": matrix, "window": n, "phi": [entry...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct BlockFlipSpecDoc {
    #[serde(rename = "A")]
    pub a: MatrixDoc,
    pub window: usize,
    pub phi: Vec<PhiEntry>,
}

fn lookup(labels: &[String], label: &str, path: &str) -> Result<Symbol> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| DocError::invalid(path, format!("unknown symbol `{label}`")))
}

fn parse_labels(labels: &[String], text: &str, path: &str) -> Result<Word> {
    text.split_whitespace().map(|l| lookup(labels, l, path)).collect()
}

fn construction_error(path: &str, e: ConstructionError) -> DocError {
    DocError::invalid(path, e)
}

impl BlockFlipSpecDoc {
    pub fn from_spec(spec: &BlockFlipSpec) -> Self {
        let labels = spec.a().row_labels();
        let fmt = |w: &[Symbol]| w.iter().map(|&s| labels[s].as_str()).collect::<Vec<_>>().join(" ");
        BlockFlipSpecDoc {
            a: MatrixDoc::from_matrix(spec.a()),
            window: spec.window(),
            phi: spec
                .phi()
                .iter()
                .map(|(w, &s)| PhiEntry {
                    block: fmt(w),
                    image: labels[s].clone(),
                })
                .collect(),
        }
    }

    pub fn to_spec(&self, verify_period: usize) -> Result<BlockFlipSpec> {
        let a = self.a.to_matrix().map_err(|e| prefixed("A.", e))?;
        let labels = a.row_labels().to_vec();
        let mut phi = BTreeMap::new();
        for (i, e) in self.phi.iter().enumerate() {
            let w = parse_labels(&labels, &e.block, &format!("phi[{i}].block"))?;
            let s = lookup(&labels, e.image.trim(), &format!("phi[{i}].image"))?;
            if phi.insert(w, s).is_some() {
                return Err(DocError::invalid(format!("phi[{i}].block"), "duplicate block"));
            }
        }
        BlockFlipSpec::with_verify_period(a, self.window, phi, verify_period).map_err(|e| construction_error("phi", e))
    }
}

fn prefixed(prefix: &str, e: DocError) -> DocError {
    match e {
        DocError::Invalid { path, message } | DocError::Schema { path, message } => DocError::Invalid {
            path: format!("{prefix}{path}"),
            message,
        },
        other => other,
    }
}

/// `{"from": pair, "to": pair, "psi": {label: label}, "inverse_window": m}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ConjugacySpecDoc {
    pub from: PairDoc,
    pub to: PairDoc,
    pub psi: BTreeMap<String, String>,
    pub inverse_window: usize,
}

impl ConjugacySpecDoc {
    pub fn from_spec(spec: &OneBlockConjugacySpec) -> Self {
        let (src, dst) = (spec.source(), spec.target());
        ConjugacySpecDoc {
            from: PairDoc::from_pair(src),
            to: PairDoc::from_pair(dst),
            psi: spec
                .psi()
                .iter()
                .enumerate()
                .map(|(a, &b)| (src.alphabet()[a].clone(), dst.alphabet()[b].clone()))
                .collect(),
            inverse_window: spec.inverse_window(),
        }
    }

    pub fn to_spec(&self, verify_period: usize) -> Result<OneBlockConjugacySpec> {
        let src = self.from.to_pair_at("from.")?;
        let dst = self.to.to_pair_at("to.")?;
        let mut psi = Vec::with_capacity(src.len());
        for a in src.alphabet() {
            let b = self
                .psi
                .get(a)
                .ok_or_else(|| DocError::invalid("psi", format!("no image for `{a}`")))?;
            psi.push(lookup(dst.alphabet(), b, &format!("psi.{a}"))?);
        }
        if let Some(extra) = self.psi.keys().find(|k| !src.alphabet().contains(k)) {
            return Err(DocError::invalid(format!("psi.{extra}"), "not a symbol of `from`"));
        }
        OneBlockConjugacySpec::with_verify_period(src, dst, psi, self.inverse_window, verify_period)
            .map_err(|e| construction_error("psi", e))
    }
}

/// Row of a count table.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CountRow {
    pub m: usize,
    pub n: i64,
    pub count: u64,
}

/// Parses a document, reporting syntax errors by line and column and schema
/// errors by field path. Trailing content is rejected.
pub fn parse_doc<T: DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        json_error(e.into_inner(), Some(path))
    })?;
    de.end().map_err(|e| json_error(e, None))?;
    Ok(value)
}

/// Typed view of an already parsed value, with field paths on errors.
pub fn from_value<T: DeserializeOwned>(value: serde_json::Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        DocError::Schema {
            path,
            message: strip_position(&e.into_inner().to_string()),
        }
    })
}

fn json_error(e: serde_json::Error, path: Option<String>) -> DocError {
    use serde_json::error::Category;
    match (e.classify(), path) {
        (Category::Data, Some(path)) => DocError::Schema {
            path,
            message: strip_position(&e.to_string()),
        },
        _ => DocError::Json {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        },
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

impl From<LinalgError> for DocError {
    fn from(e: LinalgError) -> Self {
        DocError::invalid("", e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::he_check;
    use crate::series::parse_fraction;

    fn golden() -> FlipPair {
        let a = IntMatrix::from_square_rows(&[vec![1, 1], vec![1, 0]]).unwrap();
        FlipPair::with_identity_flip("golden", a).unwrap()
    }

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + fmt::Debug>(v: &T) {
        let text = to_json(v);
        let back: T = parse_doc(&text).unwrap();
        assert_eq!(&back, v);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn big_integers_use_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let doc = MatrixDoc::from_matrix(&IntMatrix::square(vec!["x".into()], &[vec![big.clone()]]).unwrap());
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.contains("\"123456789012345678901234567890\""));
        round_trip(&doc);
        assert_eq!(doc.to_matrix().unwrap().get(0, 0), &big);
        let parsed: MatrixDoc = parse_doc(r#"{"rows": [["7", -2], [0, 1]]}"#).unwrap();
        assert_eq!(parsed.to_matrix().unwrap().to_rows()[0][0], BigInt::from(7));
    }

    #[test]
    fn matrix_labels() {
        let m: MatrixDoc = parse_doc(r#"{"labels": ["a", "b"], "rows": [[1, 0], [0, 1]]}"#).unwrap();
        assert_eq!(m.to_matrix().unwrap().col_labels(), &["a".to_string(), "b".to_string()]);
        let rect: MatrixDoc = parse_doc(r#"{"labels": ["a"], "rows": [[1, 0]]}"#).unwrap();
        let r = rect.to_matrix().unwrap();
        assert_eq!(r.col_labels(), &default_labels(2)[..]);
        round_trip(&MatrixDoc::from_matrix(&r));
        let ragged: MatrixDoc = parse_doc(r#"{"rows": [[1, 0], [1]]}"#).unwrap();
        assert!(matches!(ragged.to_matrix(), Err(DocError::Invalid { path, .. }) if path == "rows[1]"));
    }

    #[test]
    fn pair_round_trip() {
        let doc = PairDoc::from_pair(&golden());
        round_trip(&doc);
        assert_eq!(doc.to_pair().unwrap(), golden());
    }

    #[test]
    fn pair_errors_name_the_field() {
        let bad: PairDoc = parse_doc(r#"{"A": [[1, 1], [0, 1]], "J": [[1, 0], [0, 1]]}"#).unwrap();
        assert!(matches!(bad.to_pair(), Err(DocError::Invalid { path, .. }) if path == "A"));
        let bad: PairDoc = parse_doc(r#"{"A": [[1, 2], [0, 1]], "J": [[1, 0], [0, 1]]}"#).unwrap();
        assert!(matches!(bad.to_pair(), Err(DocError::Invalid { path, .. }) if path == "A"));
    }

    #[test]
    fn syntax_and_schema_errors() {
        let e = parse_doc::<PairDoc>("{\n  \"A\": [[1]],\n  \"J\": [[1]\n}").unwrap_err();
        assert!(matches!(e, DocError::Json { line: 4, .. }), "{e:?}");
        let e = parse_doc::<PairDoc>(r#"{"A": [[1]], "J": [[1]], "K": 3}"#).unwrap_err();
        assert!(matches!(e, DocError::Schema { .. }), "{e:?}");
        let e = parse_doc::<PairDoc>(r#"{"A": [[1, "x"]], "J": [[1]]}"#).unwrap_err();
        assert!(matches!(&e, DocError::Schema { path, .. } if path == "A[0][1]"), "{e:?}");
        let e = parse_doc::<PairDoc>(r#"{"A": [[1]], "J": [[1]]} x"#).unwrap_err();
        assert!(matches!(e, DocError::Json { .. }));
    }

    #[test]
    fn series_round_trip() {
        let s = TruncatedSeries::from_coeffs(3, ["0", "1/2", "-3", "5/7"].iter().map(|c| parse_fraction(c).unwrap()));
        let doc = SeriesDoc::from_series(&s);
        assert_eq!(doc.coeffs, vec!["0/1", "1/2", "-3/1", "5/7"]);
        round_trip(&doc);
        assert_eq!(doc.to_series().unwrap(), s);
        let short = SeriesDoc {
            order: 3,
            coeffs: vec!["1".into()],
        };
        assert!(short.to_series().is_err());
    }

    #[test]
    fn chain_round_trip() {
        let (_, chain) = crate::constructions::higher_block(&golden(), 2).unwrap();
        let doc = ChainDoc::from_chain(&chain);
        round_trip(&doc);
        let back = doc.to_chain_unchecked().unwrap();
        assert_eq!(back.pairs(), chain.pairs());
        assert_eq!(back.links(), chain.links());
        let mut no_s = doc.clone();
        for l in &mut no_s.links {
            l.s = None;
        }
        assert_eq!(no_s.to_chain_unchecked().unwrap().links(), chain.links());
        let mut short = doc;
        short.links.pop();
        assert!(short.to_chain_unchecked().is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let (_, chain) = crate::constructions::higher_block(&golden(), 1).unwrap();
        let link = &chain.links()[0];
        let cert = he_check(link.source(), link.target(), link.r()).unwrap();
        let doc = CertificateDoc::he(&cert);
        round_trip(&doc);
        assert!(doc.r_matrix().unwrap().same_entries(cert.r()));
        let sfe: CertificateDoc = parse_doc(r#"{"kind": "sfe", "lag": 2, "R": [[1, 1], [1, 0]]}"#).unwrap();
        assert_eq!(sfe.kind, CertKind::Sfe);
        assert_eq!(sfe.s_matrix().unwrap(), None);
        round_trip(&sfe);
    }

    #[test]
    fn block_flip_spec_round_trip() {
        let a = IntMatrix::square(vec!["a".into(), "b".into()], &[vec![1, 1], vec![1, 0]]).unwrap();
        let spec = BlockFlipSpec::from_rule(a, 1, |w| w[0]).unwrap();
        let doc = BlockFlipSpecDoc::from_spec(&spec);
        round_trip(&doc);
        assert_eq!(doc.to_spec(4).unwrap().phi(), spec.phi());
        let mut bad = doc.clone();
        bad.phi[0].image = "z".into();
        assert!(matches!(bad.to_spec(4), Err(DocError::Invalid { path, .. }) if path == "phi[0].image"));
    }

    #[test]
    fn conjugacy_spec_round_trip() {
        let p = golden();
        let spec = OneBlockConjugacySpec::new(p.clone(), p, vec![0, 1], 0).unwrap();
        let doc = ConjugacySpecDoc::from_spec(&spec);
        round_trip(&doc);
        assert_eq!(doc.to_spec(4).unwrap().psi(), spec.psi());
        let mut missing = doc;
        missing.psi.remove("1");
        assert!(missing.to_spec(4).is_err());
    }

    #[test]
    fn count_rows_round_trip() {
        round_trip(&vec![CountRow { m: 2, n: -1, count: 8 }]);
    }
}
