//! Zonal spherical functions of the Gelfand pair (S(2n), H(n)), the spherical
//! function φ_z restricted to S(2n), the z-measure with θ = 1/2 obtained from
//! inner products, and the embeddings L_z: L²(X(n)) → L²(X(n+1)).
//!
//! Functions on X(n) are taken with the uniform measure, so
//! `(f, g) = (1/|X(n)|) Σ_x f(x) conj(g(x))`. Square roots never appear:
//! `F_z^(n) = c_n^{1/2} z^{[x]}` enters only through `c_n` and `|·|²`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matching::{ewens_normalizer, enumerate_matchings, Matching, MAX_MATCHING_LEVEL};
use crate::partition::{dimension, enumerate_partitions, factorial, odd_double_factorial, pochhammer, Partition};
use crate::perm::{
    act, character, coset_type, enumerate_hyperoctahedral, enumerate_symmetric, hyperoctahedral_order,
    transpositions, SignedDomainPermutation, MAX_HYPEROCTAHEDRAL_LEVEL,
};
use crate::report::Report;
use crate::scalar::ExactScalar;
use crate::symfunc::{characteristic_map, convert_basis, doubled_hook_product, jack_family, zonal_content_product, Basis, JackOrder, MAX_JACK_DEGREE};
use crate::zmeasure::{zmeasure_weight, MeasureSource, MeasureTable, ZMeasureParams};

/// A bi-H(n)-invariant function, stored by coset type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunctionOnCosets {
    pub n: usize,
    pub values: BTreeMap<Partition, ExactScalar>,
}

impl ClassFunctionOnCosets {
    /// Missing coset types are zero.
    pub fn new<I>(n: usize, values: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, ExactScalar)>,
    {
        let values: BTreeMap<_, _> = values.into_iter().collect();
        if let Some(rho) = values.keys().find(|rho| rho.size() != n) {
            return Err(Error::InvalidParameter(format!("coset type {rho} is not a partition of {n}")));
        }
        Ok(ClassFunctionOnCosets { n, values })
    }

    pub fn at(&self, rho: &Partition) -> ExactScalar {
        self.values.get(rho).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Value at a matching, through its cycle type.
    pub fn at_matching(&self, x: &Matching) -> ExactScalar {
        self.at(&x.cycle_type())
    }

    pub fn at_permutation(&self, g: &SignedDomainPermutation) -> ExactScalar {
        self.at(&coset_type(g))
    }
}

/// The canonical representative `g_ρ` of the double coset of type ρ: for a
/// part r on labels a+1..a+r, `g(a+j) = a+j` and `g(-(a+j)) = -(a+j+1)`,
/// with `g(-(a+r)) = -(a+1)`. Then `(identity matching)·g_ρ` has the pairs
/// `{a+j, -(a+j+1)}`, one cycle per part.
pub fn coset_representative(rho: &Partition) -> SignedDomainPermutation {
    let n = rho.size();
    let mut line: Vec<i32> = vec![0; 2 * n];
    let pos = |e: i32| if e < 0 { (e + n as i32) as usize } else { (e + n as i32 - 1) as usize };
    let mut a = 0i32;
    for &r in rho.parts() {
        let r = r as i32;
        for j in 1..=r {
            line[pos(a + j)] = a + j;
            let next = if j == r { a + 1 } else { a + j + 1 };
            line[pos(-(a + j))] = -next;
        }
        a += r;
    }
    SignedDomainPermutation::from_one_line(&line).expect("blocks form a bijection")
}

/// How the table of w^λ was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphericalRoute {
    /// `(1/|H(n)|) Σ_h χ^{2λ}(g_ρ h)`.
    CharacterAverage,
    /// Power-sum coefficients of `J_λ^(2)` through the inverse of ch''.
    Jack,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalFunctionTable {
    pub n: usize,
    /// Partitions of n, in the order of [`enumerate_partitions`]; rows are λ,
    /// columns are coset types ρ.
    pub labels: Vec<Partition>,
    pub values: Vec<Vec<ExactScalar>>,
}

impl SphericalFunctionTable {
    pub fn get(&self, lambda: &Partition, rho: &Partition) -> Option<&ExactScalar> {
        let i = self.labels.iter().position(|p| p == lambda)?;
        let j = self.labels.iter().position(|p| p == rho)?;
        Some(&self.values[i][j])
    }

    /// `w^λ` as a class function.
    pub fn function(&self, lambda: &Partition) -> Option<ClassFunctionOnCosets> {
        let i = self.labels.iter().position(|p| p == lambda)?;
        Some(ClassFunctionOnCosets {
            n: self.n,
            values: self.labels.iter().cloned().zip(self.values[i].iter().cloned()).collect(),
        })
    }
}

pub fn zonal_spherical_table(n: usize, route: SphericalRoute) -> Result<SphericalFunctionTable> {
    let labels = enumerate_partitions(n)?;
    let values = match route {
        SphericalRoute::CharacterAverage => {
            if n > MAX_HYPEROCTAHEDRAL_LEVEL - 1 {
                return Err(Error::Capacity {
                    what: "character-average spherical level",
                    requested: n,
                    max: MAX_HYPEROCTAHEDRAL_LEVEL - 1,
                });
            }
            let h = enumerate_hyperoctahedral(n)?;
            let order = BigRational::from_integer(hyperoctahedral_order(n));
            // cycle types of g_ρ h, tallied once per ρ
            let tallies: Vec<HashMap<Partition, i64>> = labels
                .par_iter()
                .map(|rho| {
                    let g = coset_representative(rho);
                    let mut tally = HashMap::new();
                    for k in &h {
                        *tally.entry(g.then(k).expect("same level").cycle_type()).or_insert(0) += 1;
                    }
                    tally
                })
                .collect();
            labels
                .par_iter()
                .map(|lambda| {
                    let doubled = lambda.doubled();
                    tallies
                        .iter()
                        .map(|tally| {
                            let sum: i64 = tally
                                .iter()
                                .map(|(ty, count)| Ok(count * character(&doubled, ty)?))
                                .sum::<Result<i64>>()?;
                            Ok(ExactScalar::real(BigRational::from_integer(sum.into()) / &order))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?
        }
        SphericalRoute::Jack => {
            if n > MAX_JACK_DEGREE - 2 {
                return Err(Error::Capacity {
                    what: "Jack-route spherical level",
                    requested: n,
                    max: MAX_JACK_DEGREE - 2,
                });
            }
            let two = BigRational::from_integer(2.into());
            let family = jack_family(n, &two, JackOrder::default())?;
            let order = BigRational::from_integer(hyperoctahedral_order(n));
            labels
                .iter()
                .map(|lambda| {
                    let j = family.iter().find(|j| &j.lambda == lambda).expect("family is complete");
                    let p = convert_basis(&j.expansion, Basis::PowerSum)?;
                    // ch''(w) = J  ⇔  w(ρ) = c_ρ z_ρ 2^{l(ρ)} / |H(n)|
                    Ok(labels
                        .iter()
                        .map(|rho| {
                            let factor = BigRational::from_integer(rho.z_factor() << rho.len()) / &order;
                            p.coefficient(rho).scale(&factor)
                        })
                        .collect())
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(SphericalFunctionTable { n, labels, values })
}

/// Number of x ∈ X(n) of each cycle type, by enumeration.
pub fn cycle_type_counts(n: usize) -> Result<BTreeMap<Partition, BigInt>> {
    let mut counts: BTreeMap<Partition, BigInt> = enumerate_partitions(n)?
        .into_iter()
        .map(|p| (p, BigInt::zero()))
        .collect();
    for x in enumerate_matchings(n)? {
        *counts.get_mut(&x.cycle_type()).expect("partition of n") += 1;
    }
    Ok(counts)
}

fn nonzero(z: &ExactScalar) -> Result<BigRational> {
    if z.is_zero() {
        return Err(Error::InvalidParameter("z must be nonzero".into()));
    }
    Ok(z.norm_sqr())
}

/// `c_n = (2n-1)!! / (t (t+2) … (t+2n-2))` with `t = |z|²`; `|F_z^(n)|² = c_n |z|^{2[x]}`.
pub fn spherical_constant(z: &ExactScalar, n: usize) -> Result<BigRational> {
    let t = nonzero(z)?;
    Ok(BigRational::from_integer(odd_double_factorial(n)) / ewens_normalizer(&t, n))
}

/// `φ_z(g) = (1/|X(n)|) Σ_x c_n z^{[x·g]} conj(z)^{[x]}` at one permutation.
pub fn spherical_function_at(z: &ExactScalar, g: &SignedDomainPermutation) -> Result<ExactScalar> {
    let n = g.level();
    let c = spherical_constant(z, n)?;
    let zbar = z.conj();
    let xs = enumerate_matchings(n)?;
    let total: ExactScalar = xs
        .iter()
        .map(|x| Ok(z.pow(act(x, g)?.cycle_count() as u32) * zbar.pow(x.cycle_count() as u32)))
        .sum::<Result<ExactScalar>>()?;
    let size = BigRational::from_integer(xs.len().into());
    Ok(total.scale(&(c / size)))
}

/// φ_z on every coset type, evaluated at the canonical representatives.
pub fn spherical_function_phi(z: &ExactScalar, n: usize) -> Result<ClassFunctionOnCosets> {
    nonzero(z)?;
    let values = enumerate_partitions(n)?
        .into_par_iter()
        .map(|rho| {
            let v = spherical_function_at(z, &coset_representative(&rho))?;
            Ok((rho, v))
        })
        .collect::<Result<Vec<_>>>()?;
    ClassFunctionOnCosets::new(n, values)
}

/// `M(λ) = c_n dim(2λ) |(1/|X(n)|) Σ_x z^{[x]} w^λ(x)|²`.
pub fn zmeasure_by_inner_product(z: &ExactScalar, n: usize) -> Result<MeasureTable> {
    let table = zonal_spherical_table(n, SphericalRoute::CharacterAverage)?;
    zmeasure_from_table(z, &table)
}

fn zmeasure_from_table(z: &ExactScalar, table: &SphericalFunctionTable) -> Result<MeasureTable> {
    let n = table.n;
    let c = spherical_constant(z, n)?;
    let counts = cycle_type_counts(n)?;
    let size = BigRational::from_integer(counts.values().sum());
    let mut entries = Vec::with_capacity(table.labels.len());
    for (lambda, row) in table.labels.iter().zip(&table.values) {
        let inner: ExactScalar = table
            .labels
            .iter()
            .zip(row)
            .map(|(rho, w)| z.pow(rho.len() as u32) * w.scale(&BigRational::from_integer(counts[rho].clone())))
            .sum::<ExactScalar>()
            .scale(&size.recip());
        let dim = BigRational::from_integer(dimension(&lambda.doubled())?);
        entries.push((lambda.clone(), ExactScalar::real(&c * dim * inner.norm_sqr())));
    }
    Ok(MeasureTable::new(
        n,
        entries,
        MeasureSource::SphericalInnerProduct { z: z.to_string() },
    ))
}

/// `n! / (|z|²/2)_n · ∏_{(i,j)∈λ} (z + 2(j-1) - (i-1)) (z̄ + 2(j-1) - (i-1)) / h(2λ)`.
pub fn explicit_zmeasure(z: &ExactScalar, n: usize, lambda: &Partition) -> Result<ExactScalar> {
    if lambda.size() != n {
        return Err(Error::LevelMismatch {
            expected: n,
            found: lambda.size(),
        });
    }
    let half = ExactScalar::real(nonzero(z)? / BigRational::from_integer(2.into()));
    let poch = pochhammer(&half, n);
    let poch_inv = poch.inv().ok_or_else(|| Error::Pole {
        t: half.to_string(),
        n,
    })?;
    let prod = zonal_content_product(lambda, z) * zonal_content_product(lambda, &z.conj());
    Ok((prod * poch_inv)
        .scale(&BigRational::from_integer(factorial(n)))
        .scale(&doubled_hook_product(lambda).recip()))
}

pub fn explicit_zmeasure_table(z: &ExactScalar, n: usize) -> Result<MeasureTable> {
    let entries = enumerate_partitions(n)?
        .into_iter()
        .map(|lambda| {
            let w = explicit_zmeasure(z, n, &lambda)?;
            Ok((lambda, w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureTable::new(
        n,
        entries,
        MeasureSource::SphericalInnerProduct { z: z.to_string() },
    ))
}

/// The z-measure parameters `(z/2, z̄/2, θ = 1/2)` that reproduce the
/// explicit formula.
pub fn corresponding_parameters(z: &ExactScalar, n: usize) -> Result<ZMeasureParams> {
    let half = BigRational::new(1.into(), 2.into());
    ZMeasureParams::new(z.scale(&half), z.conj().scale(&half), half, n)
}

fn check_level(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n > max {
        return Err(Error::Capacity {
            what,
            requested: n,
            max,
        });
    }
    Ok(())
}

/// `w^λ(e) = 1`, both construction routes agree, and
/// `(w^λ, w^μ) = δ_{λμ} / dim 2λ` under the uniform measure on X(n).
pub fn check_spherical_orthogonality(n: usize) -> Result<Report> {
    check_level(n, 5, "spherical orthogonality level")?;
    let brute = zonal_spherical_table(n, SphericalRoute::CharacterAverage)?;
    let jack = zonal_spherical_table(n, SphericalRoute::Jack)?;
    let counts = cycle_type_counts(n)?;
    let size = BigRational::from_integer(counts.values().sum());
    let identity = Partition::column(n);
    let mut report = Report::new("orthogonality", "(w^λ, w^μ) = δ_{λμ} / dim 2λ, w^λ(e) = 1", n);
    for (i, lambda) in brute.labels.iter().enumerate() {
        let at_e = brute.get(lambda, &identity).expect("identity type");
        report.check(at_e.is_one(), || format!("w^{lambda}(e) = {at_e}"));
        report.check(brute.values[i] == jack.values[i], || format!("routes differ for w^{lambda}"));
        for (k, mu) in brute.labels.iter().enumerate() {
            let ip: ExactScalar = brute
                .labels
                .iter()
                .enumerate()
                .map(|(j, rho)| {
                    (&brute.values[i][j] * brute.values[k][j].conj())
                        .scale(&BigRational::from_integer(counts[rho].clone()))
                })
                .sum::<ExactScalar>()
                .scale(&size.recip());
            let expected = if i == k {
                ExactScalar::real(BigRational::from_integer(dimension(&lambda.doubled())?).recip())
            } else {
                ExactScalar::zero()
            };
            report.check(ip == expected, || format!("(w^{lambda}, w^{mu}) = {ip}, expected {expected}"));
        }
    }
    Ok(report)
}

/// `(1/|X(n)|) Σ_x w^λ(x·g) w^μ(x) = δ_{λμ} w^λ(g) / dim 2λ` for every
/// g ∈ S(2n) (n ≤ 3) or every canonical representative (larger n).
pub fn check_reproducing(n: usize) -> Result<Report> {
    check_level(n, 4, "reproducing identity level")?;
    let table = zonal_spherical_table(n, SphericalRoute::CharacterAverage)?;
    let xs = enumerate_matchings(n)?;
    let size = BigRational::from_integer(xs.len().into());
    let group: Vec<SignedDomainPermutation> = if n <= 3 {
        enumerate_symmetric(n)?.collect()
    } else {
        table.labels.iter().map(coset_representative).collect()
    };
    let index: HashMap<&Partition, usize> = table.labels.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let types: Vec<usize> = xs.iter().map(|x| index[&x.cycle_type()]).collect();
    let dims: Vec<BigRational> = table
        .labels
        .iter()
        .map(|l| Ok(BigRational::from_integer(dimension(&l.doubled())?)))
        .collect::<Result<_>>()?;
    let mut report = Report::new(
        "reproducing",
        "(1/|X(n)|) Σ_x w^λ(x·g) w^μ(x) = δ_{λμ} w^λ(g) / dim 2λ",
        n,
    )
    .param("elements", if n <= 3 { "all of S(2n)" } else { "coset representatives" });
    for g in &group {
        let moved: Vec<usize> = xs.iter().map(|x| Ok(index[&act(x, g)?.cycle_type()])).collect::<Result<_>>()?;
        let g_type = index[&coset_type(g)];
        for (i, row_l) in table.values.iter().enumerate() {
            for (k, row_m) in table.values.iter().enumerate() {
                let sum: ExactScalar = moved
                    .iter()
                    .zip(&types)
                    .map(|(&a, &b)| &row_l[a] * &row_m[b])
                    .sum::<ExactScalar>()
                    .scale(&size.recip());
                let expected = if i == k {
                    row_l[g_type].scale(&dims[i].recip())
                } else {
                    ExactScalar::zero()
                };
                report.check(sum == expected, || {
                    format!("g={g}, λ={}, μ={}: {sum} vs {expected}", table.labels[i], table.labels[k])
                });
            }
        }
    }
    Ok(report)
}

/// `ch''(w^λ) = J_λ^(2)`, and `(ch'' w^λ, ch'' w^μ) = δ_{λμ} h(2λ)`.
pub fn check_characteristic_map(n: usize) -> Result<Report> {
    check_level(n, 5, "characteristic map level")?;
    let two = BigRational::from_integer(2.into());
    let table = zonal_spherical_table(n, SphericalRoute::CharacterAverage)?;
    let family = jack_family(n, &two, JackOrder::default())?;
    let mut report = Report::new("characteristic-map", "ch''(w^λ) = J_λ^(2)", n);
    let images: Vec<_> = table
        .labels
        .iter()
        .map(|l| characteristic_map(&table.function(l).expect("row")))
        .collect::<Result<_>>()?;
    for (lambda, image) in table.labels.iter().zip(&images) {
        let j = family.iter().find(|j| &j.lambda == lambda).expect("family is complete");
        report.check(image.same_as(&j.expansion)?, || format!("λ={lambda}: ch'' gives {image}"));
    }
    for (a, la) in images.iter().zip(&table.labels) {
        for (b, lb) in images.iter().zip(&table.labels) {
            let v = crate::symfunc::jack_inner_product(a, b, &two)?;
            let expected = if la == lb {
                ExactScalar::real(doubled_hook_product(la))
            } else {
                ExactScalar::zero()
            };
            report.check(v == expected, || format!("(ch'' w^{la}, ch'' w^{lb}) = {v}"));
        }
    }
    Ok(report)
}

/// φ_z is constant on double cosets: every g ∈ S(2n) gives the value at its
/// coset type.
pub fn check_phi_constancy(z: &ExactScalar, n: usize) -> Result<Report> {
    check_level(n, 3, "exhaustive φ level")?;
    let phi = spherical_function_phi(z, n)?;
    let mut report = Report::new("phi-constancy", "φ_z constant on H(n) g H(n)", n).param("z", z);
    for g in enumerate_symmetric(n)? {
        let v = spherical_function_at(z, &g)?;
        let expected = phi.at_permutation(&g);
        report.check(v == expected, || format!("g={g}: {v} vs {expected}"));
    }
    Ok(report)
}

/// `φ_z(g) = Σ_{|λ|=n} M(λ) w^λ(g)` for every coset type, with M from
/// inner products; also `φ_z(e) = 1` and `Σ M = 1`.
pub fn check_decomposition(z: &ExactScalar, n: usize) -> Result<Report> {
    check_level(n, 5, "decomposition level")?;
    let table = zonal_spherical_table(n, SphericalRoute::CharacterAverage)?;
    let measure = zmeasure_from_table(z, &table)?;
    let phi = spherical_function_phi(z, n)?;
    let mut report = Report::new("decomposition", "φ_z(g) = Σ_{|λ|=n} M_{z,1/2}(λ) w^λ(g)", n).param("z", z);
    report.check(measure.normalized, || format!("Σ M = {}", measure.total()));
    report.check(phi.at(&Partition::column(n)).is_one(), || "φ_z(e) ≠ 1".into());
    for (j, rho) in table.labels.iter().enumerate() {
        let rhs: ExactScalar = measure
            .entries
            .iter()
            .zip(&table.values)
            .map(|((_, m), row)| m * &row[j])
            .sum();
        let lhs = phi.at(rho);
        report.check(lhs == rhs, || format!("ρ={rho}: φ = {lhs}, Σ M w = {rhs}"));
    }
    Ok(report)
}

/// Inner-product z-measure equals the explicit product formula, and both
/// equal the general z-measure at `(z/2, z̄/2, θ = 1/2)`.
pub fn check_explicit_formula(z: &ExactScalar, n: usize) -> Result<Report> {
    check_level(n, 5, "explicit formula level")?;
    let inner = zmeasure_by_inner_product(z, n)?;
    let params = corresponding_parameters(z, n)?;
    let mut report = Report::new(
        "explicit-formula",
        "M(λ) = n!/(z z̄/2)_n ∏ (z+2(j-1)-(i-1))(z̄+2(j-1)-(i-1)) / h(2λ)",
        n,
    )
    .param("z", z)
    .param("zmeasure-parameters", "(z/2, conj(z)/2, 1/2)");
    for (lambda, m) in &inner.entries {
        let explicit = explicit_zmeasure(z, n, lambda)?;
        report.check(*m == explicit, || format!("λ={lambda}: inner product {m}, formula {explicit}"));
        let general = zmeasure_weight(&params, lambda)?;
        report.check(general == explicit, || format!("λ={lambda}: z-measure {general}, formula {explicit}"));
    }
    Ok(report)
}

/// `h(2λ) = 4^n H(λ; 1/2) H'(λ; 1/2)` for all λ ⊢ n.
pub fn check_hook_reconciliation(n: usize) -> Result<Report> {
    let half = BigRational::new(1.into(), 2.into());
    let four_n = BigRational::from_integer(BigInt::from(4).pow(n as u32));
    let mut report = Report::new("hook-reconciliation", "h(2λ) = 4^n H(λ,1/2) H'(λ,1/2)", n);
    for lambda in enumerate_partitions(n)? {
        let hp = crate::partition::hook_products(&lambda, &half);
        let rhs = &four_n * hp.h * hp.h_prime;
        let lhs = doubled_hook_product(&lambda);
        report.check(lhs == rhs, || format!("λ={lambda}: {lhs} vs {rhs}"));
    }
    Ok(report)
}

/// `L_z^(n)` without its scalar: the returned vector v on X(n+1) satisfies
/// `L f = ((2n+1)/(2n+t))^{1/2} v`, with `v(y) = z f(p(y))` on the embedded
/// copy of X(n) and `v(y) = f(p(y))` elsewhere.
pub struct EmbeddingL {
    pub z: ExactScalar,
    pub n: usize,
    /// `(2n+1)/(2n+t)`, the square of the scalar.
    pub scale_sq: BigRational,
    lower: Vec<Matching>,
    lower_index: HashMap<Matching, usize>,
    upper: Vec<Matching>,
    upper_index: HashMap<Matching, usize>,
    /// `p(y)` as an index into `lower`, and whether y is embedded.
    projection: Vec<(usize, bool)>,
}

impl EmbeddingL {
    pub fn new(z: &ExactScalar, n: usize) -> Result<Self> {
        let t = nonzero(z)?;
        check_level(n + 1, MAX_MATCHING_LEVEL, "matching level")?;
        let lower = enumerate_matchings(n)?;
        let upper = enumerate_matchings(n + 1)?;
        let lower_index: HashMap<Matching, usize> = lower.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let upper_index: HashMap<Matching, usize> = upper.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let projection = upper
            .iter()
            .map(|y| Ok((lower_index[&y.canonical_projection()?], y.is_embedded())))
            .collect::<Result<_>>()?;
        let two_n = BigRational::from_integer((2 * n).into());
        let scale_sq = (&two_n + BigRational::one()) / (two_n + t);
        Ok(EmbeddingL {
            z: z.clone(),
            n,
            scale_sq,
            lower,
            lower_index,
            upper,
            upper_index,
            projection,
        })
    }

    /// The vector v with `L f = scale · v`.
    pub fn apply(&self, f: &[ExactScalar]) -> Vec<ExactScalar> {
        self.projection
            .iter()
            .map(|&(i, embedded)| if embedded { &self.z * &f[i] } else { f[i].clone() })
            .collect()
    }

    /// `‖L f‖²` under the uniform measure on X(n+1).
    pub fn norm_sq_of_image(&self, f: &[ExactScalar]) -> BigRational {
        let v = self.apply(f);
        let sum: BigRational = v.iter().map(ExactScalar::norm_sqr).sum();
        sum * &self.scale_sq / BigRational::from_integer(self.upper.len().into())
    }

    fn regular(
        xs: &[Matching],
        index: &HashMap<Matching, usize>,
        g: &SignedDomainPermutation,
        f: &[ExactScalar],
    ) -> Result<Vec<ExactScalar>> {
        xs.iter().map(|x| Ok(f[index[&act(x, g)?]].clone())).collect()
    }
}

/// Isometry (Gram matrix of the indicator basis), intertwining with every
/// transposition of S(2n), and `L F_z^(n) = F_z^(n+1)`.
pub fn check_embedding_l(z: &ExactScalar, n: usize) -> Result<Report> {
    check_level(n, 4, "embedding level")?;
    let l = EmbeddingL::new(z, n)?;
    let size = l.lower.len();
    let size_upper = BigRational::from_integer(l.upper.len().into());
    let mut report = Report::new(
        "embedding",
        "L_z^(n) isometric, L(Reg^n(g) f) = Reg^(n+1)(g) L f",
        n,
    )
    .param("z", z);
    let indicator = |i: usize| -> Vec<ExactScalar> {
        (0..size).map(|k| if k == i { ExactScalar::one() } else { ExactScalar::zero() }).collect()
    };
    let images: Vec<Vec<ExactScalar>> = (0..size).map(|i| l.apply(&indicator(i))).collect();
    let expected_diag = BigRational::from_integer(size.into()).recip();
    for (i, vi) in images.iter().enumerate() {
        for (k, vk) in images.iter().enumerate() {
            let ip: ExactScalar = vi
                .iter()
                .zip(vk)
                .map(|(a, b)| a * b.conj())
                .sum::<ExactScalar>()
                .scale(&(&l.scale_sq / &size_upper));
            let expected = if i == k {
                ExactScalar::real(expected_diag.clone())
            } else {
                ExactScalar::zero()
            };
            report.check(ip == expected, || format!("<L e_{i}, L e_{k}> = {ip}"));
        }
    }
    for g in transpositions(n) {
        let lifted = g.lift();
        for (i, image) in images.iter().enumerate() {
            let lhs = l.apply(&EmbeddingL::regular(&l.lower, &l.lower_index, &g, &indicator(i))?);
            let rhs = EmbeddingL::regular(&l.upper, &l.upper_index, &lifted, image)?;
            report.check(lhs == rhs, || format!("g={g}, f=e_{i}"));
        }
    }
    let c_n = spherical_constant(z, n)?;
    let c_next = spherical_constant(z, n + 1)?;
    report.check(&l.scale_sq * &c_n == c_next, || "scale² c_n ≠ c_(n+1)".into());
    let f: Vec<ExactScalar> = l.lower.iter().map(|x| z.pow(x.cycle_count() as u32)).collect();
    let image = l.apply(&f);
    for (y, v) in l.upper.iter().zip(&image) {
        let expected = z.pow(y.cycle_count() as u32);
        report.check(*v == expected, || format!("y={y}: L z^[x] gives {v}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn zs() -> Vec<ExactScalar> {
        vec![
            ExactScalar::from_int(2),
            ExactScalar::new(r(1, 1), r(1, 1)),
            ExactScalar::from_ratio(5, 3),
        ]
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn representatives_realize_their_type() {
        for n in 1..=8 {
            for rho in enumerate_partitions(n).unwrap() {
                assert_eq!(coset_type(&coset_representative(&rho)), rho);
            }
        }
        assert_eq!(coset_representative(&p(&[1])).one_line(), vec![-1, 1]);
        assert_eq!(coset_representative(&p(&[2])).one_line(), vec![-1, -2, 1, 2]);
    }

    #[test]
    fn level_one_and_two() {
        let t = zonal_spherical_table(1, SphericalRoute::CharacterAverage).unwrap();
        assert_eq!(t.values, vec![vec![ExactScalar::one()]]);
        // w^(2) ≡ 1, w^(1,1) = (1, -1/2) on ((2), (1,1))
        let t = zonal_spherical_table(2, SphericalRoute::CharacterAverage).unwrap();
        assert_eq!(t.labels, vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(t.values[0], vec![ExactScalar::one(), ExactScalar::one()]);
        assert_eq!(t.values[1], vec![ExactScalar::from_ratio(-1, 2), ExactScalar::one()]);
    }

    #[test]
    fn routes_agree() {
        for n in 1..=4 {
            let a = zonal_spherical_table(n, SphericalRoute::CharacterAverage).unwrap();
            let b = zonal_spherical_table(n, SphericalRoute::Jack).unwrap();
            assert_eq!(a, b, "n={n}");
            for row in &a.values {
                for w in row {
                    assert!(w.is_real());
                    assert!(w.norm_sqr() <= BigRational::one());
                }
            }
        }
        assert!(zonal_spherical_table(6, SphericalRoute::CharacterAverage).is_err());
        assert!(zonal_spherical_table(9, SphericalRoute::Jack).is_err());
    }

    #[test]
    fn orthogonality_and_reproducing() {
        for n in 1..=3 {
            let rep = check_spherical_orthogonality(n).unwrap();
            assert!(rep.passed(), "{rep}");
            let rep = check_reproducing(n).unwrap();
            assert!(rep.passed(), "{rep}");
            let rep = check_characteristic_map(n).unwrap();
            assert!(rep.passed(), "{rep}");
        }
    }

    #[test]
    fn phi_basics() {
        for z in zs() {
            let phi = spherical_function_phi(&z, 1).unwrap();
            assert!(phi.at(&p(&[1])).is_one());
            for n in 1..=3 {
                let phi = spherical_function_phi(&z, n).unwrap();
                assert!(phi.at(&Partition::column(n)).is_one());
                for h in enumerate_hyperoctahedral(n).unwrap() {
                    assert!(spherical_function_at(&z, &h).unwrap().is_one());
                }
            }
            assert!(check_phi_constancy(&z, 2).unwrap().passed());
        }
        assert!(spherical_function_phi(&ExactScalar::zero(), 2).is_err());
    }

    #[test]
    fn inner_product_measure() {
        for z in zs() {
            let m = zmeasure_by_inner_product(&z, 1).unwrap();
            assert_eq!(m.entries, vec![(p(&[1]), ExactScalar::one())]);
            for n in 1..=4 {
                assert!(zmeasure_by_inner_product(&z, n).unwrap().normalized);
            }
        }
    }

    #[test]
    fn explicit_small() {
        let z = ExactScalar::from_int(2);
        // t = 4: (2)_2 = 6; (2): 2·4 ·... checked against the inner-product route
        let inner = zmeasure_by_inner_product(&z, 2).unwrap();
        for (lambda, m) in &inner.entries {
            assert_eq!(*m, explicit_zmeasure(&z, 2, lambda).unwrap());
        }
        // (2): 2!/(2·3) · (2·4)(2·4)/h((4)) = 1/3 · 64/24 = 8/9
        assert_eq!(explicit_zmeasure(&z, 2, &p(&[2])).unwrap(), ExactScalar::from_ratio(8, 9));
        assert_eq!(explicit_zmeasure(&z, 2, &p(&[1, 1])).unwrap(), ExactScalar::from_ratio(1, 9));
        assert_eq!(explicit_zmeasure(&z, 1, &p(&[1])).unwrap(), ExactScalar::one());
        assert!(explicit_zmeasure(&ExactScalar::zero(), 1, &p(&[1])).is_err());
    }

    #[test]
    fn decomposition_and_explicit_formula() {
        for z in zs() {
            for n in 1..=3 {
                let rep = check_decomposition(&z, n).unwrap();
                assert!(rep.passed(), "{rep}");
                let rep = check_explicit_formula(&z, n).unwrap();
                assert!(rep.passed(), "{rep}");
            }
        }
    }

    #[test]
    fn correspondence_with_general_zmeasure() {
        for z in zs() {
            for n in 1..=6 {
                let params = corresponding_parameters(&z, n).unwrap();
                for lambda in enumerate_partitions(n).unwrap() {
                    assert_eq!(
                        zmeasure_weight(&params, &lambda).unwrap(),
                        explicit_zmeasure(&z, n, &lambda).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn hook_reconciliation() {
        for n in 1..=10 {
            assert!(check_hook_reconciliation(n).unwrap().passed());
        }
    }

    #[test]
    fn embedding() {
        let z = ExactScalar::new(r(1, 1), r(1, 1));
        let l = EmbeddingL::new(&z, 1).unwrap();
        assert_eq!(l.norm_sq_of_image(&[ExactScalar::one()]), BigRational::one());
        for z in [ExactScalar::from_int(2), ExactScalar::new(r(1, 1), r(1, 1))] {
            for n in 1..=2 {
                let rep = check_embedding_l(&z, n).unwrap();
                assert!(rep.passed(), "{rep}");
            }
        }
        assert!(check_embedding_l(&ExactScalar::zero(), 2).is_err());
    }

    #[test]
    fn class_function_validation() {
        assert!(ClassFunctionOnCosets::new(2, [(p(&[1]), ExactScalar::one())]).is_err());
        let f = ClassFunctionOnCosets::new(2, [(p(&[2]), ExactScalar::one())]).unwrap();
        assert!(f.at(&p(&[1, 1])).is_zero());
        assert!(f.at_matching(&Matching::from_pairs(&[(-2, 1), (-1, 2)]).unwrap()).is_one());
    }
}
