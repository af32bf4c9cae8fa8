//! Empirical scaling: replay a generated family at several sizes and fit
//! the log-log slope of total work against the edge budget.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::generators::{
    gen_arbitrary_removal, gen_degree_biased, gen_random, Family, GenError, GenSpec,
};
use crate::mis::implicit::ceil_sqrt;
use crate::replay::{run, Algorithm, ReplayError, RunOptions, RunReport, ScalingSummary};
use crate::stream::UpdateStream;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScalingFamily {
    /// Arbitrary-removal sequence with delta = ⌈√m⌉.
    ArbitraryRemoval,
    DegreeBiased,
    /// m random edge insertions on max(16, m/4) vertices.
    RandomIncremental,
}

impl ScalingFamily {
    pub const ALL: [ScalingFamily; 3] = [
        ScalingFamily::ArbitraryRemoval,
        ScalingFamily::DegreeBiased,
        ScalingFamily::RandomIncremental,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScalingFamily::ArbitraryRemoval => "arbitrary-removal",
            ScalingFamily::DegreeBiased => "degree-biased",
            ScalingFamily::RandomIncremental => "random-incremental",
        }
    }

    pub fn stream(self, m: usize) -> Result<UpdateStream, GenError> {
        match self {
            ScalingFamily::ArbitraryRemoval => gen_arbitrary_removal(m, ceil_sqrt(m)),
            ScalingFamily::DegreeBiased => gen_degree_biased(m),
            ScalingFamily::RandomIncremental => {
                let mut spec = GenSpec::random(Family::RandomEdges, (m / 4).max(16), m, m as u64);
                spec.p_insert = 1.0;
                gen_random(&spec)
            }
        }
    }
}

impl fmt::Display for ScalingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalingFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ScalingFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}`"))
    }
}

/// Least-squares slope of ln(y) against ln(x).
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two points");
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Runs `alg` on `family` at every size (in parallel) and fits the slope
/// of total edges touched. The returned report describes the largest run.
pub fn cmd_scaling(
    alg: Algorithm,
    family: ScalingFamily,
    sizes: &[usize],
) -> Result<RunReport, ReplayError> {
    if sizes.len() < 2 {
        return Err(ReplayError::Generator(GenError::SpecViolation(
            "scaling needs at least two sizes".into(),
        )));
    }
    let runs: Vec<RunReport> = sizes
        .par_iter()
        .map(|&m| {
            let stream = family.stream(m)?;
            Ok(run(alg, &stream, RunOptions::default())?.report)
        })
        .collect::<Result<_, ReplayError>>()?;
    let work: Vec<u64> = runs.iter().map(|r| r.totals.edges_touched.max(1)).collect();
    let xs: Vec<f64> = sizes.iter().map(|&m| m as f64).collect();
    let ys: Vec<f64> = work.iter().map(|&w| w as f64).collect();
    let slope = fit_slope(&xs, &ys);
    let largest = (0..sizes.len())
        .max_by_key(|&i| sizes[i])
        .expect("non-empty");
    let mut report = runs[largest].clone();
    report.scaling = Some(ScalingSummary {
        family: family.name().to_string(),
        sizes: sizes.to_vec(),
        edges_touched: work,
        slope,
    });
    Ok(report)
}
