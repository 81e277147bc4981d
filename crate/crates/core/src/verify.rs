//! Named suites of exact identity checks, as run by `zm verify`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matching::{check_ewens_normalization, check_pushforward};
use crate::perm::{
    check_cocycle_additivity, check_cocycle_additivity_sampled, check_cocycle_stability,
    check_cocycle_stability_sampled, check_equivariance, check_quasi_invariance,
};
use crate::report::Report;
use crate::scalar::ExactScalar;
use crate::spherical::{
    check_characteristic_map, check_decomposition, check_embedding_l, check_explicit_formula,
    check_hook_reconciliation, check_phi_constancy, check_reproducing, check_spherical_orthogonality,
};
use crate::symfunc::{check_generating_identity, check_jack_orthogonality, check_specialization};
use crate::zmeasure::{check_normalization, check_transposition_symmetry, ZMeasureParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Normalization,
    Transposition,
    Pushforward,
    Cocycle,
    QuasiInvariance,
    Orthogonality,
    Decomposition,
    ExplicitFormula,
    Embedding,
    GeneratingIdentity,
    All,
}

impl Suite {
    pub const EACH: [Suite; 10] = [
        Suite::Normalization,
        Suite::Transposition,
        Suite::Pushforward,
        Suite::Cocycle,
        Suite::QuasiInvariance,
        Suite::Orthogonality,
        Suite::Decomposition,
        Suite::ExplicitFormula,
        Suite::Embedding,
        Suite::GeneratingIdentity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Transposition => "transposition",
            Suite::Pushforward => "pushforward",
            Suite::Cocycle => "cocycle",
            Suite::QuasiInvariance => "quasi-invariance",
            Suite::Orthogonality => "orthogonality",
            Suite::Decomposition => "decomposition",
            Suite::ExplicitFormula => "explicit-formula",
            Suite::Embedding => "embedding",
            Suite::GeneratingIdentity => "generating-identity",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Levels and parameters for a run. Without `n`, every level from 1 to
/// `max_n` is checked; without `z`, each suite uses its default grid.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n: Option<usize>,
    pub max_n: usize,
    pub z: Option<ExactScalar>,
    /// Random cases per level for cocycle checks beyond the exhaustive range.
    pub sampled_cases: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n: None,
            max_n: 3,
            z: None,
            sampled_cases: 10_000,
            seed: 0,
        }
    }
}

impl VerifyOptions {
    fn levels(&self) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => (1..=self.max_n).collect(),
        }
    }

    fn zs(&self, default: &[ExactScalar]) -> Vec<ExactScalar> {
        match &self.z {
            Some(z) => vec![z.clone()],
            None => default.to_vec(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Report>,
    pub elapsed_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(Report::passed)
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn gaussian(re: i64, im: i64) -> ExactScalar {
    ExactScalar::new(q(re, 1), q(im, 1))
}

/// `z ∈ {2, 5/3, 1+i}`, `z' ∈ {3, conj(z)}`, `θ ∈ {1/2, 1, 2}`.
pub fn zmeasure_grid(n: usize) -> Result<Vec<ZMeasureParams>> {
    let mut out = Vec::new();
    for z in [ExactScalar::from_int(2), ExactScalar::from_ratio(5, 3), gaussian(1, 1)] {
        for zp in [ExactScalar::from_int(3), z.conj()] {
            for theta in [q(1, 2), q(1, 1), q(2, 1)] {
                out.push(ZMeasureParams::new(z.clone(), zp.clone(), theta, n)?);
            }
        }
    }
    Ok(out)
}

fn spherical_zs() -> Vec<ExactScalar> {
    vec![ExactScalar::from_int(2), gaussian(1, 1), ExactScalar::from_ratio(5, 3)]
}

fn collect<T, F>(items: Vec<T>, f: F) -> Result<Vec<Report>>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<Report> + Sync + Send,
{
    items.par_iter().map(f).collect()
}

fn run_one(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Report>> {
    let mut cases = Vec::new();
    for n in opts.levels() {
        match suite {
            Suite::Normalization => {
                cases.extend(collect(zmeasure_grid(n)?, check_normalization)?);
                cases.extend(collect(vec![q(1, 2), q(1, 1), q(3, 2), q(5, 1)], |t| {
                    check_ewens_normalization(t, n)
                })?);
            }
            Suite::Transposition => cases.extend(collect(zmeasure_grid(n)?, check_transposition_symmetry)?),
            Suite::Pushforward => {
                cases.extend(collect(vec![q(1, 2), q(1, 1), q(3, 2), q(5, 1)], |t| check_pushforward(t, n))?)
            }
            Suite::Cocycle => {
                if n <= 3 {
                    cases.push(check_cocycle_stability(n)?);
                    cases.push(check_cocycle_additivity(n)?);
                    cases.push(check_equivariance(n)?);
                } else {
                    cases.push(check_cocycle_stability_sampled(n, opts.sampled_cases, opts.seed)?);
                    cases.push(check_cocycle_additivity_sampled(n, opts.sampled_cases, opts.seed)?);
                }
            }
            Suite::QuasiInvariance => {
                cases.extend(collect(vec![q(1, 2), q(1, 1), q(2, 1)], |t| check_quasi_invariance(t, n))?)
            }
            Suite::Orthogonality => {
                cases.push(check_spherical_orthogonality(n)?);
                cases.push(check_reproducing(n)?);
                cases.push(check_characteristic_map(n)?);
                cases.push(check_jack_orthogonality(n, &q(2, 1))?);
            }
            Suite::Decomposition => {
                cases.extend(collect(opts.zs(&spherical_zs()), |z| check_decomposition(z, n))?);
                if n <= 3 {
                    cases.extend(collect(opts.zs(&spherical_zs()), |z| check_phi_constancy(z, n))?);
                }
            }
            Suite::ExplicitFormula => {
                cases.extend(collect(opts.zs(&spherical_zs()), |z| check_explicit_formula(z, n))?);
                cases.push(check_hook_reconciliation(n)?);
            }
            Suite::Embedding => {
                let zs = opts.zs(&[ExactScalar::from_int(2), gaussian(1, 1)]);
                cases.extend(collect(zs, |z| check_embedding_l(z, n))?);
            }
            Suite::GeneratingIdentity => {
                for big_n in [q(2, 1), q(4, 1), q(6, 1)] {
                    cases.push(check_specialization(n, &big_n)?);
                }
                let m = n.max(3);
                cases.extend(collect(vec![q(2, 1), q(4, 1), q(7, 3)], |big_n| {
                    check_generating_identity(big_n, n, m)
                })?);
            }
            Suite::All => unreachable!("expanded by run_suite"),
        }
    }
    Ok(cases)
}

/// Runs a suite; `All` runs every suite in turn. The first domain error
/// (capacity, pole, bad parameter) aborts the run.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut cases = Vec::new();
    for s in suites {
        cases.extend(run_one(s, opts)?);
    }
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        cases,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
