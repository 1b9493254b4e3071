//! JSON file formats.
//!
//! - family: `{"n": 7, "sets": [[1,2,4], …]}` with 1-based points
//! - vector system: `{"n": 4, "q": 2, "vectors": [[0,0,1,1], …]}`
//! - Gram matrix: `{"n": 2, "N": 5, "a": "…", "b": "…", "gram": [["1", …], …], "coords": …}`
//! - matrix: `{"p": 5, "rows": [["1", "2"], …]}`, `p` omitted for ℚ or ℚ(√d)
//!
//! Exact scalars are always strings in the syntax of [`crate::exactfield`].

use std::fmt::Display;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::GramTwoDistance;
use crate::error::{Error, Result};
use crate::exactfield::{parse_rational, ExactScalar, Fp, Matrix, OrderedField, PrimeFieldCtx, QuadExt, Rational};
use crate::families::{SetFamily, VectorSystem};

fn parse_json<'a, T: Deserialize<'a>>(what: &str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::malformed(format!("{what} JSON: {e}")))
}

fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl FamilyJson {
    pub fn from_family(f: &SetFamily) -> Self {
        Self {
            n: f.n(),
            sets: f
                .to_point_lists()
                .into_iter()
                .map(|s| s.into_iter().map(|x| x + 1).collect())
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<SetFamily> {
        let mut sets = Vec::with_capacity(self.sets.len());
        for (i, s) in self.sets.iter().enumerate() {
            let mut points = Vec::with_capacity(s.len());
            for &x in s {
                if x == 0 || x > self.n {
                    return Err(Error::malformed(format!(
                        "sets[{i}] contains point {x} outside [1, {}]",
                        self.n
                    )));
                }
                points.push(x - 1);
            }
            sets.push(points);
        }
        SetFamily::new(self.n, sets)
    }

    /// Sets sorted lexicographically, for reports.
    pub fn canonical(&self) -> Self {
        let mut sets = self.sets.clone();
        for s in &mut sets {
            s.sort_unstable();
        }
        sets.sort();
        Self { n: self.n, sets }
    }
}

pub fn parse_family(text: &str) -> Result<SetFamily> {
    parse_json::<FamilyJson>("family", text)?.to_family()
}

pub fn family_to_json(f: &SetFamily) -> String {
    to_pretty(&FamilyJson::from_family(f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorSystemJson {
    pub n: usize,
    pub q: u8,
    pub vectors: Vec<Vec<u8>>,
}

impl VectorSystemJson {
    pub fn from_system(h: &VectorSystem) -> Self {
        Self {
            n: h.n(),
            q: h.q(),
            vectors: h.vectors().to_vec(),
        }
    }
}

pub fn parse_vector_system(text: &str) -> Result<VectorSystem> {
    let v: VectorSystemJson = parse_json("vector system", text)?;
    VectorSystem::new(v.n, v.q, v.vectors)
}

pub fn vector_system_to_json(h: &VectorSystem) -> String {
    to_pretty(&VectorSystemJson::from_system(h))
}

/// Reads either a family or a vector system; families become their
/// characteristic vectors.
pub fn parse_family_or_vectors(text: &str) -> Result<VectorSystem> {
    let value: Value = parse_json("input", text)?;
    if value.get("vectors").is_some() {
        parse_vector_system(text)
    } else {
        parse_family(text)?.characteristic_vectors()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramJson {
    pub n: usize,
    #[serde(rename = "N")]
    pub count: usize,
    pub a: String,
    pub b: String,
    pub gram: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub affine_dim: Option<usize>,
}

impl GramJson {
    pub fn from_gram<T: OrderedField>(g: &GramTwoDistance<T>) -> Self {
        Self {
            n: g.ambient_dim(),
            count: g.point_count(),
            a: g.value_a().to_string(),
            b: g.value_b().to_string(),
            gram: g
                .gram()
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            coords: g.coords().map(<[_]>::to_vec),
            affine_dim: g.affine_dim(),
        }
    }
}

/// A Gram matrix over whichever field its entries need.
#[derive(Clone, Debug, PartialEq)]
pub enum GramData {
    Rational(GramTwoDistance<Rational>),
    Quadratic(GramTwoDistance<QuadExt>),
}

/// A parsed Gram file with the declared point count kept separately, so a
/// mismatch can be reported instead of silently corrected.
#[derive(Clone, Debug, PartialEq)]
pub struct GramFile {
    pub declared_count: usize,
    pub data: GramData,
}

fn build_gram<T: OrderedField>(json: &GramJson, parse: impl Fn(&str) -> Result<T>) -> Result<GramTwoDistance<T>> {
    let a = parse(&json.a)?;
    let b = parse(&json.b)?;
    let mut rows = Vec::with_capacity(json.gram.len());
    for (i, row) in json.gram.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, x) in row.iter().enumerate() {
            out.push(parse(x).map_err(|e| Error::malformed(format!("gram[{i}][{j}]: {e}")))?);
        }
        rows.push(out);
    }
    let gram = Matrix::from_rows(rows)?;
    if !gram.is_square() {
        return Err(Error::malformed("gram must be square"));
    }
    if let Some(coords) = &json.coords {
        if coords.len() != gram.rows() || coords.iter().any(|c| c.len() != json.n) {
            return Err(Error::malformed(format!(
                "coords must list {} points with {} coordinates each",
                gram.rows(),
                json.n
            )));
        }
    }
    let g = GramTwoDistance::from_parts_unchecked(json.n, a, b, gram, json.coords.clone());
    Ok(match json.affine_dim {
        Some(d) => g.with_affine_dim(d),
        None => g,
    })
}

pub fn parse_gram(text: &str) -> Result<GramFile> {
    let json: GramJson = parse_json("gram", text)?;
    let radicand = [&json.a, &json.b]
        .into_iter()
        .map(|s| ExactScalar::parse_real(s))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find_map(|x| match x {
            ExactScalar::Quadratic(q) => Some(q.radicand()),
            _ => None,
        });
    let data = match radicand {
        Some(d) => GramData::Quadratic(build_gram(&json, |s| QuadExt::parse(s, Some(d)))?),
        None => GramData::Rational(build_gram(&json, parse_rational)?),
    };
    Ok(GramFile {
        declared_count: json.count,
        data,
    })
}

pub fn gram_to_json<T: OrderedField>(g: &GramTwoDistance<T>) -> String {
    to_pretty(&GramJson::from_gram(g))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatrixData {
    Rational(Matrix<Rational>),
    Quadratic(Matrix<QuadExt>),
    Modular(Matrix<Fp>),
}

fn parse_rows<T: crate::exactfield::Field>(
    rows: &[Vec<String>],
    parse: impl Fn(&str) -> Result<T>,
) -> Result<Matrix<T>> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| parse(x).map_err(|e| Error::malformed(format!("rows[{i}][{j}]: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(parsed)
}

pub fn parse_matrix(text: &str) -> Result<MatrixData> {
    let json: MatrixJson = parse_json("matrix", text)?;
    if let Some(p) = json.p {
        let field =
            PrimeFieldCtx::new(p).map_err(|_| Error::malformed(format!("p = {p} is not a prime below 2^31")))?;
        return parse_rows(&json.rows, |s| match ExactScalar::parse_modular(s, &field)? {
            ExactScalar::Modular(x) => Ok(x),
            _ => unreachable!("parse_modular yields residues"),
        })
        .map(MatrixData::Modular);
    }
    let radicand = json
        .rows
        .iter()
        .flatten()
        .filter(|s| s.contains("sqrt("))
        .map(|s| QuadExt::parse(s, None).map(|q| q.radicand()))
        .next()
        .transpose()?;
    match radicand {
        Some(d) => parse_rows(&json.rows, |s| QuadExt::parse(s, Some(d))).map(MatrixData::Quadratic),
        None => parse_rows(&json.rows, parse_rational).map(MatrixData::Rational),
    }
}

pub fn matrix_to_json<T: Display + Clone>(m: &Matrix<T>, p: Option<u64>) -> String {
    to_pretty(&MatrixJson {
        p,
        rows: m
            .to_rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect(),
    })
}
