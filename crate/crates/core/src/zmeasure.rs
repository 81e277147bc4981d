//! The z-measures `M^(n)_{z,z',θ}` on Young diagrams with n boxes and their
//! θ-Plancherel limit.
//!
//! ```text
//! M(λ) = n! (z)_{λ,θ} (z')_{λ,θ} / ((t)_n H(λ,θ) H'(λ,θ)),   t = z z' / θ
//! ```
//!
//! Weights are Gaussian rationals. For parameters outside the admissible
//! series the measure is complex and signed; it still sums to one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{
    enumerate_partitions, factorial, generalized_pochhammer, hook_products, pochhammer, Partition,
};
use crate::report::Report;
use crate::sampling::{seeded_rng, ExactDiscrete};
use crate::scalar::{format_rational, to_decimal_string, ExactScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMeasureParams {
    z: ExactScalar,
    z_prime: ExactScalar,
    theta: BigRational,
    n: usize,
}

impl ZMeasureParams {
    pub fn new(z: ExactScalar, z_prime: ExactScalar, theta: BigRational, n: usize) -> Result<Self> {
        if !theta.is_positive() {
            return Err(Error::InvalidParameter(format!("θ must be positive, got {theta}")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(ZMeasureParams {
            z,
            z_prime,
            theta,
            n,
        })
    }

    pub fn z(&self) -> &ExactScalar {
        &self.z
    }

    pub fn z_prime(&self) -> &ExactScalar {
        &self.z_prime
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `t = z z' / θ`.
    pub fn t(&self) -> ExactScalar {
        (&self.z * &self.z_prime).scale(&self.theta.recip())
    }

    pub fn with_n(&self, n: usize) -> Result<Self> {
        Self::new(self.z.clone(), self.z_prime.clone(), self.theta.clone(), n)
    }

    /// Parameters `(-z/θ, -z'/θ, 1/θ)` of the transposed measure.
    pub fn transposed(&self) -> Self {
        let inv = self.theta.recip();
        ZMeasureParams {
            z: -self.z.scale(&inv),
            z_prime: -self.z_prime.scale(&inv),
            theta: inv,
            n: self.n,
        }
    }

    /// `(t)_n`, or a pole error when it vanishes.
    fn pochhammer_t(&self) -> Result<ExactScalar> {
        let t = self.t();
        let value = pochhammer(&t, self.n);
        if value.is_zero() {
            return Err(Error::Pole {
                t: t.to_string(),
                n: self.n,
            });
        }
        Ok(value)
    }
}

fn weight_given_denominator(
    params: &ZMeasureParams,
    poch_t: &ExactScalar,
    lambda: &Partition,
) -> ExactScalar {
    let hooks = hook_products(lambda, &params.theta);
    let num = ExactScalar::from(factorial(params.n))
        * generalized_pochhammer(&params.z, lambda, &params.theta)
        * generalized_pochhammer(&params.z_prime, lambda, &params.theta);
    let den = poch_t.scale(&(hooks.h * hooks.h_prime));
    num / den
}

fn check_size(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.size() != n {
        return Err(Error::InvalidParameter(format!(
            "diagram {lambda} has {} boxes, expected {n}",
            lambda.size()
        )));
    }
    Ok(())
}

pub fn zmeasure_weight(params: &ZMeasureParams, lambda: &Partition) -> Result<ExactScalar> {
    check_size(lambda, params.n)?;
    let poch_t = params.pochhammer_t()?;
    Ok(weight_given_denominator(params, &poch_t, lambda))
}

/// Where a [`MeasureTable`] came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSource {
    ZMeasure {
        z: String,
        z_prime: String,
        theta: String,
        t: String,
    },
    Plancherel {
        theta: String,
    },
    /// Built from inner products of zonal spherical functions.
    SphericalInnerProduct {
        z: String,
    },
}

/// A full table of weights over Y_n, in enumeration order.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureTable {
    pub n: usize,
    pub entries: Vec<(Partition, ExactScalar)>,
    pub source: MeasureSource,
    /// Whether the weights sum to exactly one.
    pub normalized: bool,
}

impl MeasureTable {
    pub fn new(n: usize, entries: Vec<(Partition, ExactScalar)>, source: MeasureSource) -> Self {
        let total: ExactScalar = entries.iter().map(|(_, w)| w).sum();
        MeasureTable {
            n,
            normalized: total.is_one(),
            entries,
            source,
        }
    }

    pub fn get(&self, lambda: &Partition) -> Option<&ExactScalar> {
        self.entries
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, w)| w)
    }

    pub fn total(&self) -> ExactScalar {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|(_, w)| w.is_real())
    }

    /// Real nonnegative weights, if the table is a probability vector.
    pub fn probabilities(&self) -> Option<Vec<BigRational>> {
        self.entries
            .iter()
            .map(|(_, w)| w.as_real().filter(|r| !r.is_negative()).cloned())
            .collect()
    }

    /// CSV with columns `partition, weight_numerator, weight_denominator,
    /// decimal`; complex tables get two extra columns for the imaginary part.
    pub fn to_csv(&self) -> String {
        let complex = !self.is_real();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["partition", "weight_numerator", "weight_denominator", "decimal"];
        if complex {
            header.extend(["weight_im_numerator", "weight_im_denominator"]);
        }
        w.write_record(&header).expect("in-memory csv");
        for (lambda, weight) in &self.entries {
            let mut row = vec![
                lambda.to_string(),
                weight.re().numer().to_string(),
                weight.re().denom().to_string(),
                to_decimal_string(weight.re(), 12),
            ];
            if complex {
                row.push(weight.im().numer().to_string());
                row.push(weight.im().denom().to_string());
            }
            w.write_record(&row).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf8 csv")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|(lambda, w)| {
                serde_json::json!({
                    "partition": lambda.parts(),
                    "weight": w.to_string(),
                    "re": format_rational(w.re()),
                    "im": format_rational(w.im()),
                    "decimal": to_decimal_string(w.re(), 12),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "source": self.source,
            "normalized": self.normalized,
            "entries": entries,
        })
    }
}

/// The full table over Y_n; `normalized` records the exact Σ = 1 check.
pub fn zmeasure_table(params: &ZMeasureParams) -> Result<MeasureTable> {
    let diagrams = enumerate_partitions(params.n)?;
    let poch_t = params.pochhammer_t()?;
    let entries: Vec<_> = diagrams
        .into_par_iter()
        .map(|lambda| {
            let w = weight_given_denominator(params, &poch_t, &lambda);
            (lambda, w)
        })
        .collect();
    Ok(MeasureTable::new(
        params.n,
        entries,
        MeasureSource::ZMeasure {
            z: params.z.to_string(),
            z_prime: params.z_prime.to_string(),
            theta: format_rational(&params.theta),
            t: params.t().to_string(),
        },
    ))
}

/// `n! θ^n / (H(λ,θ) H'(λ,θ))`.
pub fn plancherel_weight(theta: &BigRational, n: usize, lambda: &Partition) -> Result<BigRational> {
    if !theta.is_positive() {
        return Err(Error::InvalidParameter(format!("θ must be positive, got {theta}")));
    }
    check_size(lambda, n)?;
    let hooks = hook_products(lambda, theta);
    Ok(BigRational::from_integer(factorial(n)) * num_traits::pow(theta.clone(), n)
        / (hooks.h * hooks.h_prime))
}

pub fn plancherel_table(theta: &BigRational, n: usize) -> Result<MeasureTable> {
    let entries = enumerate_partitions(n)?
        .into_par_iter()
        .map(|lambda| {
            let w = plancherel_weight(theta, n, &lambda)?;
            Ok((lambda, ExactScalar::real(w)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureTable::new(
        n,
        entries,
        MeasureSource::Plancherel {
            theta: format_rational(theta),
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Series {
    Principal,
    Complementary,
    Degenerate,
    NonAdmissible,
}

/// How to read the second clause of the degenerate-series condition
/// `(z = -m, z' < -m+1) or (z' = -m, z < ? )`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DegenerateReading {
    /// `z < -m + 1`, symmetric with the first clause.
    #[default]
    Symmetric,
    /// `z < m - 1`, exactly as the condition is usually printed.
    AsPrinted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub series: Series,
    /// True when the verdict rests on the `z < m - 1` clause that only the
    /// as-printed reading accepts.
    pub as_printed_branch: bool,
}

fn as_positive_integer(r: &BigRational) -> Option<BigInt> {
    (r.is_integer() && r.is_positive()).then(|| r.to_integer())
}

/// True if `x ∈ Z_{≤0} + Z_{≥0} θ`.
fn in_negative_cone(x: &BigRational, theta: &BigRational) -> bool {
    // x = a + bθ with a ≤ 0 needs bθ ≥ x; integrality of x - bθ is periodic
    // in b with period denom(θ), so one period past the threshold suffices.
    let start = (x / theta).ceil().to_integer().max(BigInt::zero());
    let period = theta.denom().clone();
    let mut b = start.clone();
    while b < &start + &period {
        if (x - theta * BigRational::from_integer(b.clone())).is_integer() {
            return true;
        }
        b += 1;
    }
    false
}

fn degenerate_first(a: &ExactScalar, b: &ExactScalar, theta: &BigRational) -> bool {
    // a = mθ, b > (m-1)θ
    let (Some(a), Some(b)) = (a.as_real(), b.as_real()) else {
        return false;
    };
    match as_positive_integer(&(a / theta)) {
        Some(m) => b > &(theta * BigRational::from_integer(m - 1)),
        None => false,
    }
}

/// Series membership of `(z, z', θ)`; principal is tested first, then
/// complementary, then degenerate. `m` ranges over positive integers.
pub fn classify_parameters(
    z: &ExactScalar,
    z_prime: &ExactScalar,
    theta: &BigRational,
    reading: DegenerateReading,
) -> Classification {
    let verdict = |series| Classification {
        series,
        as_printed_branch: false,
    };
    let in_cone = z.as_real().is_some_and(|x| in_negative_cone(x, theta));
    if !in_cone && *z_prime == z.conj() {
        return verdict(Series::Principal);
    }
    if let (Some(x), Some(y)) = (z.as_real(), z_prime.as_real()) {
        // Z + Zθ = (1/q)Z for θ = p/q in lowest terms.
        let q = BigRational::from_integer(theta.denom().clone());
        let (xs, ys) = (x * &q, y * &q);
        if !xs.is_integer() && !ys.is_integer() && xs.floor() == ys.floor() {
            return verdict(Series::Complementary);
        }
        if degenerate_first(z, z_prime, theta) || degenerate_first(z_prime, z, theta) {
            return verdict(Series::Degenerate);
        }
        // (z = -m, z' < -m+1)
        if let Some(m) = as_positive_integer(&-x) {
            if y < &BigRational::from_integer(1 - m) {
                return verdict(Series::Degenerate);
            }
        }
        // (z' = -m, z < -m+1) or, as printed, z < m-1
        if let Some(m) = as_positive_integer(&-y) {
            let symmetric = x < &BigRational::from_integer(BigInt::one() - &m);
            let printed = x < &BigRational::from_integer(m - 1);
            match reading {
                DegenerateReading::Symmetric if symmetric => {
                    return verdict(Series::Degenerate);
                }
                DegenerateReading::AsPrinted if printed => {
                    return Classification {
                        series: Series::Degenerate,
                        as_printed_branch: !symmetric,
                    };
                }
                _ => {}
            }
        }
    }
    verdict(Series::NonAdmissible)
}

/// Checks `M_{z,z',θ}(λ) = M_{-z/θ,-z'/θ,1/θ}(λ')` for every λ ⊢ n.
pub fn check_transposition_symmetry(params: &ZMeasureParams) -> Result<Report> {
    let mirrored = params.transposed();
    let lhs = zmeasure_table(params)?;
    let rhs_poch = mirrored.pochhammer_t()?;
    let mut report = Report::new(
        "transposition",
        "M_{z,z',θ}(λ) = M_{-z/θ,-z'/θ,1/θ}(λ')",
        params.n,
    )
    .param("z", &params.z)
    .param("z'", &params.z_prime)
    .param("theta", format_rational(&params.theta));
    for (lambda, w) in &lhs.entries {
        let other = weight_given_denominator(&mirrored, &rhs_poch, &lambda.transpose());
        report.check(*w == other, || format!("λ={lambda}: {w} vs {other}"));
    }
    Ok(report)
}

/// Exact Σ_{λ ⊢ n} M(λ) = 1 check.
pub fn check_normalization(params: &ZMeasureParams) -> Result<Report> {
    let table = zmeasure_table(params)?;
    let mut report = Report::new("normalization", "sum_{λ ⊢ n} M_{z,z',θ}(λ) = 1", params.n)
        .param("z", &params.z)
        .param("z'", &params.z_prime)
        .param("theta", format_rational(&params.theta));
    let total = table.total();
    report.check(total.is_one(), || format!("sum = {total}"));
    Ok(report)
}

/// The law to draw partitions from.
#[derive(Clone, Debug)]
pub enum PartitionLaw {
    ZMeasure(ZMeasureParams),
    Plancherel { theta: BigRational, n: usize },
}

/// i.i.d. draws by exact inverse CDF over the full table.
///
/// Parameters classified non-admissible are rejected, as are tables that
/// contain a negative or non-real weight.
pub fn sample_partitions(law: &PartitionLaw, count: usize, seed: u64) -> Result<Vec<Partition>> {
    let table = match law {
        PartitionLaw::ZMeasure(params) => {
            let class = classify_parameters(
                &params.z,
                &params.z_prime,
                &params.theta,
                DegenerateReading::Symmetric,
            );
            if class.series == Series::NonAdmissible {
                return Err(Error::NotAdmissible(format!(
                    "(z, z', θ) = ({}, {}, {}) is in no admissible series",
                    params.z, params.z_prime, params.theta
                )));
            }
            zmeasure_table(params)?
        }
        PartitionLaw::Plancherel { theta, n } => plancherel_table(theta, *n)?,
    };
    if count == 0 {
        return Ok(Vec::new());
    }
    let probs = table.probabilities().ok_or_else(|| {
        Error::NotAdmissible("weight table contains negative or complex entries".into())
    })?;
    let law = ExactDiscrete::new(&probs)?;
    let mut rng = seeded_rng(seed);
    Ok((0..count)
        .map(|_| table.entries[law.sample(&mut rng)].0.clone())
        .collect())
}

/// Relative error `|M_{z,z,θ}(λ) - P(λ)| / P(λ)` against the Plancherel weight.
pub fn plancherel_relative_error(z: &ExactScalar, theta: &BigRational, lambda: &Partition) -> Result<BigRational> {
    let n = lambda.size();
    let params = ZMeasureParams::new(z.clone(), z.clone(), theta.clone(), n)?;
    let w = zmeasure_weight(&params, lambda)?;
    let w = w
        .as_real()
        .ok_or_else(|| Error::InvalidParameter("complex weight".into()))?
        .clone();
    let p = plancherel_weight(theta, n, lambda)?;
    Ok(((w - &p) / p).abs())
}
