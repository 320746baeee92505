//! JSON documents for algebras, tensors and reports.
//!
//! Rationals are written as strings `"p/q"` or `"p"`; on input bare JSON integers are
//! accepted as well. Bracket and multi-index positions in files are 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::killing::KillingTypeReport;
use crate::lie::{Bracket, MetricLieAlgebra};
use crate::linalg::Matrix;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::sym::{MultiIndex, SymTensor};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLiteral {
    Integer(i64),
    Text(String),
}

impl RationalLiteral {
    pub fn parse(&self) -> Result<Rational> {
        match self {
            RationalLiteral::Integer(n) => Ok(crate::rational::int(*n)),
            RationalLiteral::Text(s) => parse_rational(s),
        }
    }
}

impl From<&Rational> for RationalLiteral {
    fn from(r: &Rational) -> Self {
        RationalLiteral::Text(format_rational(r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    /// Basis index (1-based, as a string key) to coefficient.
    pub result: BTreeMap<String, RationalLiteral>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<BracketDoc>,
    /// Defaults to the identity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<RationalLiteral>>>,
}

fn document_error(e: impl std::fmt::Display) -> Error {
    Error::Document(e.to_string())
}

impl AlgebraDoc {
    pub fn from_algebra(alg: &MetricLieAlgebra) -> Self {
        let brackets = alg
            .brackets()
            .into_iter()
            .map(|b| BracketDoc {
                i: b.i + 1,
                j: b.j + 1,
                result: b
                    .result
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| ((k + 1).to_string(), c.into()))
                    .collect(),
            })
            .collect();
        let g = alg.gram().gram();
        let gram = (0..g.rows())
            .map(|r| g.row(r).iter().map(RationalLiteral::from).collect())
            .collect();
        AlgebraDoc {
            name: alg.name().to_string(),
            dimension: alg.n(),
            brackets,
            gram: Some(gram),
        }
    }

    pub fn to_algebra(&self) -> Result<MetricLieAlgebra> {
        let n = self.dimension;
        if n == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            if b.i == 0 || b.j == 0 || b.i > n || b.j > n {
                return Err(Error::InvalidInput(format!(
                    "bracket [e{}, e{}] is out of range 1..={n}",
                    b.i, b.j
                )));
            }
            if b.i >= b.j {
                return Err(Error::InvalidInput(format!(
                    "bracket [e{}, e{}] must have i < j",
                    b.i, b.j
                )));
            }
            let mut result = vec![crate::rational::int(0); n];
            for (k, c) in &b.result {
                let idx: usize = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad basis index {k:?}")))?;
                if idx == 0 || idx > n {
                    return Err(Error::InvalidInput(format!(
                        "basis index {idx} in [e{}, e{}] is out of range 1..={n}",
                        b.i, b.j
                    )));
                }
                result[idx - 1] = c.parse()?;
            }
            brackets.push(Bracket {
                i: b.i - 1,
                j: b.j - 1,
                result,
            });
        }
        let gram = match &self.gram {
            None => Matrix::identity(n),
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(Error::InvalidInput(format!("gram must be {n}x{n}")));
                }
                let parsed = rows
                    .iter()
                    .map(|r| r.iter().map(RationalLiteral::parse).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = Matrix::from_rows(parsed)?;
                if let Some((row, col)) = first_asymmetry(&m) {
                    return Err(Error::NotSymmetric { row: row + 1, col: col + 1 });
                }
                m
            }
        };
        MetricLieAlgebra::new(&self.name, n, &brackets, gram)
    }
}

fn first_asymmetry(m: &Matrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (i + 1..m.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| m.get(i, j) != m.get(j, i))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDoc {
    pub degree: usize,
    /// Comma-separated exponents to coefficient.
    pub coeffs: BTreeMap<String, RationalLiteral>,
}

impl TensorDoc {
    pub fn from_tensor(t: &SymTensor) -> Self {
        TensorDoc {
            degree: t.degree(),
            coeffs: t.terms().map(|(m, c)| (m.key(), c.into())).collect(),
        }
    }

    /// The tensor on an `n`-dimensional algebra.
    pub fn to_tensor(&self, n: usize) -> Result<SymTensor> {
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (key, c) in &self.coeffs {
            let exps = key
                .split(',')
                .map(|e| e.trim().parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::InvalidInput(format!("bad multi-index {key:?}")))?;
            terms.push((MultiIndex::new(exps), c.parse()?));
        }
        SymTensor::from_terms(n, self.degree, terms)
    }
}

/// A conformal Killing tensor not of Killing type, with everything needed to
/// reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub algebra: AlgebraDoc,
    pub degree: usize,
    pub tensor: TensorDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReportDoc {
    pub p: usize,
    pub dim_sym: usize,
    pub dim_killing: usize,
    pub dim_image_l: usize,
    pub dim_conformal: usize,
    pub dim_killing_type: usize,
    pub verdict: bool,
    pub cross_check: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<TensorDoc>,
}

impl From<&KillingTypeReport> for DegreeReportDoc {
    fn from(r: &KillingTypeReport) -> Self {
        DegreeReportDoc {
            p: r.degree,
            dim_sym: r.dim_sym,
            dim_killing: r.dim_killing,
            dim_image_l: r.dim_image_l,
            dim_conformal: r.dim_conformal,
            dim_killing_type: r.dim_killing_type,
            verdict: r.verdict,
            cross_check: r.cross_check,
            witness: r.witness.as_ref().map(TensorDoc::from_tensor),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicatesDoc {
    pub dim_center: usize,
    pub dim_derived: usize,
    pub is_abelian: bool,
    pub is_unimodular: bool,
    pub is_two_step_nilpotent: bool,
    pub is_ad_invariant_metric: bool,
}

impl PredicatesDoc {
    pub fn of(alg: &MetricLieAlgebra) -> Self {
        let p = alg.predicates();
        PredicatesDoc {
            dim_center: p.center.dim(),
            dim_derived: p.derived.dim(),
            is_abelian: p.is_abelian,
            is_unimodular: p.is_unimodular,
            is_two_step_nilpotent: p.is_two_step_nilpotent,
            is_ad_invariant_metric: p.is_ad_invariant_metric,
        }
    }
}

pub fn parse_algebra(json: &str) -> Result<MetricLieAlgebra> {
    let doc: AlgebraDoc = serde_json::from_str(json).map_err(document_error)?;
    doc.to_algebra()
}

pub fn parse_tensor(json: &str, n: usize) -> Result<SymTensor> {
    let doc: TensorDoc = serde_json::from_str(json).map_err(document_error)?;
    doc.to_tensor(n)
}

pub fn parse_witness(json: &str) -> Result<(MetricLieAlgebra, SymTensor)> {
    let doc: WitnessDoc = serde_json::from_str(json).map_err(document_error)?;
    let alg = doc.algebra.to_algebra()?;
    let tensor = doc.tensor.to_tensor(alg.n())?;
    if tensor.degree() != doc.degree {
        return Err(Error::DegreeMismatch {
            expected: doc.degree,
            found: tensor.degree(),
        });
    }
    Ok((alg, tensor))
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

/// `(1, 0, -1/2)`.
pub fn format_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// A tensor in the algebra's basis names.
pub fn format_tensor(alg: &MetricLieAlgebra, t: &SymTensor) -> String {
    t.display_with(alg.basis_names())
}
