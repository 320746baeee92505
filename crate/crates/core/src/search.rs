//! Seeded exploration of random metrics on fixed brackets.
//!
//! Reports verdict counts per degree and keeps every witness with the data needed to
//! reproduce it. The outcome depends only on the algebra, the seed, the number of
//! trials and the degree bound.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::format::{AlgebraDoc, DegreeReportDoc, RationalLiteral, TensorDoc, WitnessDoc};
use crate::killing::check_killing_type_up_to;
use crate::lie::{random_gram, MetricLieAlgebra};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub gram: Vec<Vec<RationalLiteral>>,
    /// Degrees whose verdict is false.
    pub failing_degrees: Vec<usize>,
    pub cross_checks_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub algebra: String,
    pub seed: u64,
    pub trials: usize,
    pub max_degree: usize,
    /// Trials whose verdict is true in every degree.
    pub all_true: usize,
    pub with_witness: usize,
    pub results: Vec<TrialResult>,
    pub witnesses: Vec<WitnessDoc>,
}

impl SearchSummary {
    pub fn found_witness(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

fn literal_rows(g: &Matrix) -> Vec<Vec<RationalLiteral>> {
    (0..g.rows())
        .map(|r| g.row(r).iter().map(RationalLiteral::from).collect())
        .collect()
}

/// Draws `trials` Gram matrices from a ChaCha8 stream seeded with `seed`, in order,
/// and checks Killing type up to `max_degree` for each.
pub fn search(alg: &MetricLieAlgebra, trials: usize, seed: u64, max_degree: usize) -> Result<SearchSummary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let grams: Vec<Matrix> = (0..trials).map(|_| random_gram(alg.n(), &mut rng)).collect();
    let outcomes: Vec<(TrialResult, Vec<WitnessDoc>)> = grams
        .into_par_iter()
        .enumerate()
        .map(|(trial, gram)| -> Result<_> {
            let metric = alg.with_gram(gram.clone())?;
            let reports = check_killing_type_up_to(&metric, max_degree)?;
            let algebra_doc = AlgebraDoc::from_algebra(&metric);
            let witnesses = reports
                .iter()
                .filter_map(|r| {
                    r.witness.as_ref().map(|w| WitnessDoc {
                        algebra: algebra_doc.clone(),
                        degree: r.degree,
                        tensor: TensorDoc::from_tensor(w),
                    })
                })
                .collect();
            let result = TrialResult {
                trial,
                gram: literal_rows(&gram),
                failing_degrees: reports.iter().filter(|r| !r.verdict).map(|r| r.degree).collect(),
                cross_checks_agree: reports.iter().all(|r| r.cross_check),
            };
            Ok((result, witnesses))
        })
        .collect::<Result<_>>()?;
    let mut results = Vec::with_capacity(trials);
    let mut witnesses = Vec::new();
    for (r, w) in outcomes {
        results.push(r);
        witnesses.extend(w);
    }
    Ok(SearchSummary {
        algebra: alg.name().to_string(),
        seed,
        trials,
        max_degree,
        all_true: results.iter().filter(|r| r.failing_degrees.is_empty()).count(),
        with_witness: results.iter().filter(|r| !r.failing_degrees.is_empty()).count(),
        results,
        witnesses,
    })
}

/// Per-degree documents for a single metric, in degree order.
pub fn degree_docs(alg: &MetricLieAlgebra, max_degree: usize) -> Result<Vec<DegreeReportDoc>> {
    Ok(check_killing_type_up_to(alg, max_degree)?
        .iter()
        .map(DegreeReportDoc::from)
        .collect())
}
