//! Homogeneous symmetric functions in the power-sum and monomial bases,
//! Jack polynomials in integral form, the α-deformed Hall inner product and
//! the characteristic map of bi-H(n)-invariant functions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, factorial, hook_length_product, Partition};
use crate::perm::hyperoctahedral_order;
use crate::report::Report;
use crate::scalar::{format_rational, ExactScalar};
use crate::spherical::ClassFunctionOnCosets;

/// Bound on the degree for basis conversion.
pub const MAX_SYMFUNC_DEGREE: usize = 12;
/// Bound on |λ| for Jack polynomials.
pub const MAX_JACK_DEGREE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    PowerSum,
    Monomial,
}

/// A homogeneous symmetric function of degree n in one basis. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    degree: usize,
    basis: Basis,
    coeffs: BTreeMap<Partition, ExactScalar>,
}

impl SymFunc {
    pub fn zero(degree: usize, basis: Basis) -> Self {
        SymFunc {
            degree,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(degree: usize, basis: Basis, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, ExactScalar)>,
    {
        let mut f = SymFunc::zero(degree, basis);
        for (lambda, c) in terms {
            if lambda.size() != degree {
                return Err(Error::InvalidParameter(format!(
                    "term {lambda} in a symmetric function of degree {degree}"
                )));
            }
            f.add_term(lambda, c);
        }
        Ok(f)
    }

    /// `p_ρ`.
    pub fn power_sum(rho: &Partition) -> Self {
        Self::basis_element(rho, Basis::PowerSum)
    }

    /// `m_μ`.
    pub fn monomial(mu: &Partition) -> Self {
        Self::basis_element(mu, Basis::Monomial)
    }

    fn basis_element(lambda: &Partition, basis: Basis) -> Self {
        let mut f = SymFunc::zero(lambda.size(), basis);
        f.coeffs.insert(lambda.clone(), ExactScalar::one());
        f
    }

    fn add_term(&mut self, lambda: Partition, c: ExactScalar) {
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(lambda) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coefficient(&self, lambda: &Partition) -> ExactScalar {
        self.coeffs.get(lambda).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = SymFunc::zero(self.degree, self.basis);
        if !c.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Sum in the basis of `self`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::LevelMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let other = convert_basis(other, self.basis)?;
        let mut out = self.clone();
        for (k, v) in other.coeffs {
            out.add_term(k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-ExactScalar::one()))
    }

    /// Equality as symmetric functions, across bases.
    pub fn same_as(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SymFuncJson::from(self)).expect("serializable")
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let letter = match self.basis {
            Basis::PowerSum => "p",
            Basis::Monomial => "m",
        };
        for (k, (lambda, c)) in self.coeffs.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){letter}{lambda}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    basis: Basis,
    degree: usize,
    /// `[partition, num, den]` or `[partition, num, den, num_i, den_i]`.
    terms: Vec<serde_json::Value>,
}

impl From<&SymFunc> for SymFuncJson {
    fn from(f: &SymFunc) -> Self {
        let terms = f
            .coeffs
            .iter()
            .map(|(lambda, c)| {
                let mut row = vec![
                    serde_json::to_value(lambda).expect("partition"),
                    c.re().numer().to_string().into(),
                    c.re().denom().to_string().into(),
                ];
                if !c.is_real() {
                    row.push(c.im().numer().to_string().into());
                    row.push(c.im().denom().to_string().into());
                }
                serde_json::Value::Array(row)
            })
            .collect();
        SymFuncJson {
            basis: f.basis,
            degree: f.degree,
            terms,
        }
    }
}

impl Serialize for SymFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SymFuncJson::deserialize(d)?;
        let big = |v: &serde_json::Value| -> std::result::Result<BigInt, D::Error> {
            v.as_str()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| D::Error::custom("coefficient must be an integer string"))
        };
        let mut terms = Vec::new();
        for row in &raw.terms {
            let row = row.as_array().ok_or_else(|| D::Error::custom("term must be an array"))?;
            if row.len() != 3 && row.len() != 5 {
                return Err(D::Error::custom("term must have 3 or 5 entries"));
            }
            let lambda: Partition = serde_json::from_value(row[0].clone()).map_err(D::Error::custom)?;
            let ratio = |n: &serde_json::Value, d: &serde_json::Value| -> std::result::Result<BigRational, D::Error> {
                let den = big(d)?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(big(n)?, den))
            };
            let re = ratio(&row[1], &row[2])?;
            let im = if row.len() == 5 { ratio(&row[3], &row[4])? } else { BigRational::zero() };
            terms.push((lambda, ExactScalar::new(re, im)));
        }
        SymFunc::from_terms(raw.degree, raw.basis, terms).map_err(D::Error::custom)
    }
}

/// Transition data between p and m at one degree. Partitions are indexed in
/// the order of [`enumerate_partitions`].
struct Transition {
    labels: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `p_ρ = Σ_μ p_to_m[ρ][μ] m_μ`.
    p_to_m: Vec<Vec<BigRational>>,
    /// `m_μ = Σ_ρ m_to_p[μ][ρ] p_ρ`.
    m_to_p: Vec<Vec<BigRational>>,
}

/// Number of maps from the parts of ρ to the rows of μ whose fibres sum to
/// the row lengths: the coefficient of `m_μ` in `p_ρ`.
fn power_to_monomial_count(rho: &[usize], mu: &[usize]) -> u64 {
    fn rec(parts: &[usize], room: &mut [usize]) -> u64 {
        let Some((&r, rest)) = parts.split_first() else {
            return room.iter().all(|&x| x == 0) as u64;
        };
        let mut total = 0;
        for i in 0..room.len() {
            if room[i] >= r {
                room[i] -= r;
                total += rec(rest, room);
                room[i] += r;
            }
        }
        total
    }
    rec(rho, &mut mu.to_vec())
}

fn invert(matrix: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = matrix.len();
    let mut a: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let da = &factor * &a[col][j];
                let di = &factor * &inv[col][j];
                a[r][j] -= da;
                inv[r][j] -= di;
            }
        }
    }
    inv
}

fn transition(n: usize) -> Result<Arc<Transition>> {
    if n > MAX_SYMFUNC_DEGREE {
        return Err(Error::Capacity {
            what: "symmetric function degree",
            requested: n,
            max: MAX_SYMFUNC_DEGREE,
        });
    }
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Transition>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("cache poisoned").get(&n) {
        return Ok(t.clone());
    }
    let labels = enumerate_partitions(n)?;
    let p_to_m: Vec<Vec<BigRational>> = labels
        .iter()
        .map(|rho| {
            labels
                .iter()
                .map(|mu| BigRational::from_integer(power_to_monomial_count(rho.parts(), mu.parts()).into()))
                .collect()
        })
        .collect();
    // p = R m, so m = R^{-1} p.
    let m_to_p = invert(&p_to_m);
    let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let t = Arc::new(Transition {
        labels,
        index,
        p_to_m,
        m_to_p,
    });
    cache.write().expect("cache poisoned").insert(n, t.clone());
    Ok(t)
}

fn apply_matrix(f: &SymFunc, matrix: &[Vec<BigRational>], t: &Transition, target: Basis) -> SymFunc {
    let mut out: Vec<ExactScalar> = vec![ExactScalar::zero(); t.labels.len()];
    for (lambda, c) in &f.coeffs {
        let row = &matrix[t.index[lambda]];
        for (j, r) in row.iter().enumerate() {
            if !r.is_zero() {
                out[j] += c.scale(r);
            }
        }
    }
    SymFunc {
        degree: f.degree,
        basis: target,
        coeffs: t
            .labels
            .iter()
            .cloned()
            .zip(out)
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }
}

pub fn convert_basis(f: &SymFunc, target: Basis) -> Result<SymFunc> {
    if f.basis == target {
        return Ok(f.clone());
    }
    let t = transition(f.degree)?;
    Ok(match target {
        Basis::Monomial => apply_matrix(f, &t.p_to_m, &t, target),
        Basis::PowerSum => apply_matrix(f, &t.m_to_p, &t, target),
    })
}

/// `α^{l(ρ)} z_ρ`, the squared norm of `p_ρ`.
pub fn power_sum_norm(rho: &Partition, alpha: &BigRational) -> BigRational {
    num_traits::pow(alpha.clone(), rho.len()) * BigRational::from_integer(rho.z_factor())
}

/// Bilinear extension of `(p_ρ, p_σ) = δ_{ρσ} α^{l(ρ)} z_ρ`.
pub fn jack_inner_product(f: &SymFunc, g: &SymFunc, alpha: &BigRational) -> Result<ExactScalar> {
    if f.degree != g.degree {
        return Err(Error::LevelMismatch {
            expected: f.degree,
            found: g.degree,
        });
    }
    let f = convert_basis(f, Basis::PowerSum)?;
    let g = convert_basis(g, Basis::PowerSum)?;
    Ok(f.coeffs
        .iter()
        .filter_map(|(rho, a)| g.coeffs.get(rho).map(|b| (a * b).scale(&power_sum_norm(rho, alpha))))
        .sum())
}

/// Linear extension of dominance used by the Gram–Schmidt construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum JackOrder {
    /// Lexicographically increasing, starting from `(1^n)`.
    #[default]
    Lexicographic,
    /// `n(λ)` decreasing, ties broken lexicographically decreasing.
    NStatistic,
}

impl JackOrder {
    fn arrange(self, mut parts: Vec<Partition>) -> Vec<Partition> {
        match self {
            JackOrder::Lexicographic => parts.sort(),
            JackOrder::NStatistic => {
                parts.sort_by(|a, b| b.n_statistic().cmp(&a.n_statistic()).then_with(|| b.cmp(a)))
            }
        }
        parts
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JackPolynomial {
    pub lambda: Partition,
    pub alpha: BigRational,
    /// Monomial expansion.
    pub expansion: SymFunc,
}

fn require_alpha(alpha: &BigRational) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::InvalidParameter(format!("Jack parameter must be positive, got {alpha}")));
    }
    Ok(())
}

/// All `J_λ^(α)` with |λ| = n, by Gram–Schmidt on monomials in the given
/// order, normalized so the coefficient of `m_{(1^n)}` is n!.
pub fn jack_family(n: usize, alpha: &BigRational, order: JackOrder) -> Result<Vec<JackPolynomial>> {
    require_alpha(alpha)?;
    if n > MAX_JACK_DEGREE {
        return Err(Error::Capacity {
            what: "Jack polynomial degree",
            requested: n,
            max: MAX_JACK_DEGREE,
        });
    }
    type Key = (usize, BigRational, JackOrder);
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<Vec<JackPolynomial>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (n, alpha.clone(), order);
    if let Some(v) = cache.read().expect("cache poisoned").get(&key) {
        return Ok(v.as_ref().clone());
    }
    let t = transition(n)?;
    let size = t.labels.len();
    let weights: Vec<BigRational> = t.labels.iter().map(|rho| power_sum_norm(rho, alpha)).collect();
    let ip = |u: &[BigRational], v: &[BigRational]| -> BigRational {
        u.iter()
            .zip(v)
            .zip(&weights)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), w)| a * b * w)
            .sum()
    };
    let column = t.index[&Partition::column(n)];
    // (monomial coords, power coords, squared norm) of the monic orthogonal family
    let mut done: Vec<(Vec<BigRational>, Vec<BigRational>, BigRational)> = Vec::new();
    let mut out = Vec::with_capacity(size);
    for lambda in order.arrange(t.labels.clone()) {
        let i = t.index[&lambda];
        let mut mono = vec![BigRational::zero(); size];
        mono[i] = BigRational::one();
        let mut pow = t.m_to_p[i].clone();
        for (m_prev, p_prev, norm) in &done {
            let c = ip(&pow, p_prev) / norm;
            if c.is_zero() {
                continue;
            }
            for (a, b) in mono.iter_mut().zip(m_prev) {
                *a -= &c * b;
            }
            for (a, b) in pow.iter_mut().zip(p_prev) {
                *a -= &c * b;
            }
        }
        let norm = ip(&pow, &pow);
        let scale = BigRational::from_integer(factorial(n)) / &mono[column];
        let expansion = SymFunc {
            degree: n,
            basis: Basis::Monomial,
            coeffs: t
                .labels
                .iter()
                .zip(&mono)
                .filter(|(_, c)| !c.is_zero())
                .map(|(l, c)| (l.clone(), ExactScalar::real(c * &scale)))
                .collect(),
        };
        out.push(JackPolynomial {
            lambda,
            alpha: alpha.clone(),
            expansion,
        });
        done.push((mono, pow, norm));
    }
    out.sort_by(|a, b| b.lambda.cmp(&a.lambda));
    cache.write().expect("cache poisoned").insert(key, Arc::new(out.clone()));
    Ok(out)
}

pub fn jack_polynomial(lambda: &Partition, alpha: &BigRational) -> Result<JackPolynomial> {
    jack_polynomial_with_order(lambda, alpha, JackOrder::default())
}

pub fn jack_polynomial_with_order(lambda: &Partition, alpha: &BigRational, order: JackOrder) -> Result<JackPolynomial> {
    jack_family(lambda.size(), alpha, order)?
        .into_iter()
        .find(|j| &j.lambda == lambda)
        .ok_or_else(|| Error::Internal(format!("no Jack polynomial for {lambda}")))
}

/// `ch''(f) = |H(n)| Σ_ρ z_ρ^{-1} 2^{-l(ρ)} f(ρ) p_ρ`.
pub fn characteristic_map(f: &ClassFunctionOnCosets) -> Result<SymFunc> {
    let n = f.n;
    let order = BigRational::from_integer(hyperoctahedral_order(n));
    let terms = f.values.iter().map(|(rho, v)| {
        let c = &order / (BigRational::from_integer(rho.z_factor()) * BigRational::from_integer(BigInt::one() << rho.len()));
        (rho.clone(), v.scale(&c))
    });
    SymFunc::from_terms(n, Basis::PowerSum, terms)
}

/// The ring homomorphism `p_k ↦ value` (for `value = N` this evaluates at N
/// ones).
pub fn specialize_power_sums(f: &SymFunc, value: &ExactScalar) -> Result<ExactScalar> {
    let f = convert_basis(f, Basis::PowerSum)?;
    Ok(f.coeffs.iter().map(|(rho, c)| c * value.pow(rho.len() as u32)).sum())
}

/// `∏_{(i,j)∈λ} (z + 2(j-1) - (i-1))`.
pub fn zonal_content_product(lambda: &Partition, z: &ExactScalar) -> ExactScalar {
    lambda
        .boxes()
        .map(|(i, j)| z + ExactScalar::from_int(2 * (j as i64 - 1) - (i as i64 - 1)))
        .product()
}

/// `h(2λ)` as a rational.
pub fn doubled_hook_product(lambda: &Partition) -> BigRational {
    BigRational::from_integer(hook_length_product(&lambda.doubled()))
}

/// Pairwise inner products of the family: zero off the diagonal, and
/// `h(2λ)` on it when α = 2.
pub fn check_jack_orthogonality(n: usize, alpha: &BigRational) -> Result<Report> {
    let family = jack_family(n, alpha, JackOrder::default())?;
    let two = BigRational::from_integer(2.into());
    let mut report = Report::new(
        "jack-orthogonality",
        if *alpha == two { "(J_λ, J_μ) = δ_{λμ} h(2λ)" } else { "(J_λ, J_μ) = 0 for λ ≠ μ" },
        n,
    )
    .param("alpha", format_rational(alpha));
    for a in &family {
        for b in &family {
            let v = jack_inner_product(&a.expansion, &b.expansion, alpha)?;
            if a.lambda != b.lambda {
                report.check(v.is_zero(), || format!("({}, {}) = {v}", a.lambda, b.lambda));
            } else if *alpha == two {
                let h = ExactScalar::real(doubled_hook_product(&a.lambda));
                report.check(v == h, || format!("({0}, {0}) = {v}, h(2λ) = {h}", a.lambda));
            }
        }
    }
    Ok(report)
}

/// `J_λ^(2)(1^N) = ∏ (N + 2(j-1) - (i-1))` for every λ ⊢ n.
pub fn check_specialization(n: usize, big_n: &BigRational) -> Result<Report> {
    let two = BigRational::from_integer(2.into());
    let value = ExactScalar::real(big_n.clone());
    let mut report = Report::new(
        "jack-specialization",
        "J_λ^(2)(1,…,1) = ∏ (N + 2(j-1) - (i-1))",
        n,
    )
    .param("N", format_rational(big_n));
    for j in jack_family(n, &two, JackOrder::default())? {
        let lhs = specialize_power_sums(&j.expansion, &value)?;
        let rhs = zonal_content_product(&j.lambda, &value);
        report.check(lhs == rhs, || format!("λ={}: {lhs} vs {rhs}", j.lambda));
    }
    Ok(report)
}

/// Weak compositions of n into m parts.
fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, m - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Degree-n part of `∏_{i≤m} (1 - x_i)^{-N/2} = Σ_λ J_λ^(2)(x) J_λ^(2)(1^N) / h(2λ)`,
/// compared coefficient by coefficient in m variables.
pub fn check_generating_identity(big_n: &BigRational, n: usize, m: usize) -> Result<Report> {
    if m < n {
        return Err(Error::InvalidParameter(format!("need at least {n} variables, got {m}")));
    }
    if m > MAX_SYMFUNC_DEGREE {
        return Err(Error::Capacity {
            what: "number of variables",
            requested: m,
            max: MAX_SYMFUNC_DEGREE,
        });
    }
    let two = BigRational::from_integer(2.into());
    let family = jack_family(n, &two, JackOrder::default())?;
    let value = ExactScalar::real(big_n.clone());
    let weights: Vec<(JackPolynomial, ExactScalar)> = family
        .into_iter()
        .map(|j| {
            let w = specialize_power_sums(&j.expansion, &value)?.scale(&doubled_hook_product(&j.lambda).recip());
            Ok((j, w))
        })
        .collect::<Result<_>>()?;
    let half = big_n / &two;
    // (N/2)_a / a!
    let binomial = |a: usize| -> BigRational {
        (0..a).fold(BigRational::one(), |acc, k| {
            acc * (&half + BigRational::from_integer(k.into())) / BigRational::from_integer((k + 1).into())
        })
    };
    let mut report = Report::new(
        "generating-identity",
        "{∏(1-x_i)^(-N/2)}_n = Σ_{|λ|=n} J_λ^(2)(x) J_λ^(2)(1,…,1) / h(2λ)",
        n,
    )
    .param("N", format_rational(big_n))
    .param("variables", m);
    for a in compositions(n, m) {
        let lhs = ExactScalar::real(a.iter().map(|&k| binomial(k)).product());
        let mu = Partition::from_unsorted(a.clone());
        let rhs: ExactScalar = weights.iter().map(|(j, w)| j.expansion.coefficient(&mu) * w).sum();
        report.check(lhs == rhs, || format!("x^{a:?}: {lhs} vs {rhs}"));
    }
    Ok(report)
}

/// Gram–Schmidt output does not depend on the linear extension used.
pub fn check_jack_order_independence(n: usize, alpha: &BigRational) -> Result<Report> {
    let a = jack_family(n, alpha, JackOrder::Lexicographic)?;
    let b = jack_family(n, alpha, JackOrder::NStatistic)?;
    let mut report = Report::new("jack-order-independence", "J_λ independent of processing order", n)
        .param("alpha", format_rational(alpha));
    for (x, y) in a.iter().zip(&b) {
        report.check(x == y, || format!("λ={}", x.lambda));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::character;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn s(n: i64) -> ExactScalar {
        ExactScalar::from_int(n)
    }

    type Poly = HashMap<Vec<usize>, i64>;

    /// `p_ρ` expanded as a polynomial in `vars` variables.
    fn expand_power_sum(rho: &Partition, vars: usize) -> Poly {
        let mut poly: Poly = HashMap::from([(vec![0; vars], 1)]);
        for &k in rho.parts() {
            let mut next = Poly::new();
            for (e, c) in &poly {
                for i in 0..vars {
                    let mut e2 = e.clone();
                    e2[i] += k;
                    *next.entry(e2).or_default() += c;
                }
            }
            poly = next;
        }
        poly
    }

    #[test]
    fn power_to_monomial_small() {
        let f = convert_basis(&SymFunc::power_sum(&p(&[1])), Basis::Monomial).unwrap();
        assert_eq!(f, SymFunc::monomial(&p(&[1])));
        let f = convert_basis(&SymFunc::power_sum(&p(&[2])), Basis::Monomial).unwrap();
        assert_eq!(f, SymFunc::monomial(&p(&[2])));
        let f = convert_basis(&SymFunc::power_sum(&p(&[1, 1])), Basis::Monomial).unwrap();
        let expected = SymFunc::from_terms(2, Basis::Monomial, [(p(&[2]), s(1)), (p(&[1, 1]), s(2))]).unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn transition_matches_polynomial_expansion() {
        for n in 1..=6 {
            for rho in enumerate_partitions(n).unwrap() {
                let poly = expand_power_sum(&rho, n);
                let f = convert_basis(&SymFunc::power_sum(&rho), Basis::Monomial).unwrap();
                for mu in enumerate_partitions(n).unwrap() {
                    let mut e = mu.parts().to_vec();
                    e.resize(n, 0);
                    let c = poly.get(&e).copied().unwrap_or(0);
                    assert_eq!(f.coefficient(&mu), s(c), "p{rho} at m{mu}");
                }
            }
        }
    }

    #[test]
    fn round_trips() {
        for n in 1..=8 {
            for lambda in enumerate_partitions(n).unwrap() {
                let m = SymFunc::monomial(&lambda);
                let back = convert_basis(&convert_basis(&m, Basis::PowerSum).unwrap(), Basis::Monomial).unwrap();
                assert_eq!(back, m);
            }
        }
        assert!(convert_basis(&SymFunc::monomial(&Partition::row(13)), Basis::PowerSum).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let two = q(2, 1);
        let p2 = SymFunc::power_sum(&p(&[2]));
        let p11 = SymFunc::power_sum(&p(&[1, 1]));
        let p1 = SymFunc::power_sum(&p(&[1]));
        assert_eq!(jack_inner_product(&p2, &p2, &two).unwrap(), s(4));
        assert_eq!(jack_inner_product(&p11, &p2, &q(3, 7)).unwrap(), s(0));
        let alpha = q(5, 3);
        assert_eq!(jack_inner_product(&p1, &p1, &alpha).unwrap(), ExactScalar::real(alpha));
        assert!(jack_inner_product(&p1, &p2, &two).is_err());
    }

    #[test]
    fn small_jacks() {
        let two = q(2, 1);
        let j1 = jack_polynomial(&p(&[1]), &two).unwrap();
        assert_eq!(j1.expansion, SymFunc::monomial(&p(&[1])));
        // J_(2)^(2) = 3 m_2 + 2 m_11 = 2 p_2 + p_1^2
        let j2 = jack_polynomial(&p(&[2]), &two).unwrap();
        let expected = SymFunc::from_terms(2, Basis::Monomial, [(p(&[2]), s(3)), (p(&[1, 1]), s(2))]).unwrap();
        assert_eq!(j2.expansion, expected);
        let via_p = SymFunc::from_terms(2, Basis::PowerSum, [(p(&[2]), s(2)), (p(&[1, 1]), s(1))]).unwrap();
        assert!(j2.expansion.same_as(&via_p).unwrap());
        let j11 = jack_polynomial(&p(&[1, 1]), &two).unwrap();
        assert_eq!(j11.expansion, SymFunc::monomial(&p(&[1, 1])).scale(&s(2)));
        for n in 1..=6 {
            let j = jack_polynomial(&Partition::row(n), &two).unwrap();
            let norm = jack_inner_product(&j.expansion, &j.expansion, &two).unwrap();
            assert_eq!(norm, ExactScalar::real(BigRational::from_integer(factorial(2 * n))));
        }
    }

    #[test]
    fn triangular_and_normalized() {
        for alpha in [q(1, 2), q(1, 1), q(2, 1)] {
            for n in 1..=6 {
                for j in jack_family(n, &alpha, JackOrder::default()).unwrap() {
                    assert_eq!(
                        j.expansion.coefficient(&Partition::column(n)),
                        ExactScalar::real(BigRational::from_integer(factorial(n)))
                    );
                    for (mu, _) in j.expansion.terms() {
                        assert!(j.lambda.dominates(mu), "{} has m{mu}", j.lambda);
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_and_order_independence() {
        for alpha in [q(1, 2), q(1, 1), q(2, 1)] {
            for n in 1..=6 {
                let r = check_jack_orthogonality(n, &alpha).unwrap();
                assert!(r.passed(), "{r}");
                let r = check_jack_order_independence(n, &alpha).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        assert!(jack_family(11, &q(2, 1), JackOrder::default()).is_err());
        assert!(jack_family(2, &q(0, 1), JackOrder::default()).is_err());
    }

    #[test]
    fn alpha_one_is_hook_times_schur() {
        let one = q(1, 1);
        for n in 1..=5 {
            for j in jack_family(n, &one, JackOrder::default()).unwrap() {
                // s_λ = Σ_ρ χ^λ(ρ) / z_ρ p_ρ
                let schur = SymFunc::from_terms(
                    n,
                    Basis::PowerSum,
                    enumerate_partitions(n).unwrap().into_iter().map(|rho| {
                        let chi = character(&j.lambda, &rho).unwrap();
                        let c = BigRational::new(chi.into(), rho.z_factor());
                        (rho, ExactScalar::real(c))
                    }),
                )
                .unwrap();
                let h = ExactScalar::real(BigRational::from_integer(hook_length_product(&j.lambda)));
                assert!(j.expansion.same_as(&schur.scale(&h)).unwrap(), "λ={}", j.lambda);
            }
        }
    }

    #[test]
    fn specialization() {
        for big_n in [2, 4, 6] {
            for n in 1..=5 {
                let r = check_specialization(n, &q(big_n, 1)).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        // literal substitution at N ones agrees with the homomorphism
        let j = jack_polynomial(&p(&[2, 1]), &q(2, 1)).unwrap();
        let vars = 3;
        let mut literal = ExactScalar::zero();
        for (mu, c) in j.expansion.terms() {
            let count = compositions(mu.size(), vars)
                .into_iter()
                .filter(|a| Partition::from_unsorted(a.clone()) == *mu)
                .count();
            literal += c * s(count as i64);
        }
        assert_eq!(literal, specialize_power_sums(&j.expansion, &s(3)).unwrap());
    }

    #[test]
    fn generating_identity() {
        for big_n in [q(2, 1), q(4, 1), q(7, 3)] {
            for (n, m) in [(1, 3), (2, 2), (2, 3), (3, 3)] {
                let r = check_generating_identity(&big_n, n, m).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        assert!(check_generating_identity(&q(2, 1), 3, 2).is_err());
    }

    #[test]
    fn characteristic_map_small() {
        let f = ClassFunctionOnCosets::new(1, [(p(&[1]), s(1))]).unwrap();
        assert_eq!(characteristic_map(&f).unwrap(), SymFunc::power_sum(&p(&[1])));
        let a = ClassFunctionOnCosets::new(2, [(p(&[2]), s(3)), (p(&[1, 1]), s(-1))]).unwrap();
        let b = ClassFunctionOnCosets::new(2, [(p(&[2]), ExactScalar::i()), (p(&[1, 1]), s(5))]).unwrap();
        let combo = ClassFunctionOnCosets::new(
            2,
            [(p(&[2]), s(3) * s(2) + ExactScalar::i()), (p(&[1, 1]), s(-2) + s(5))],
        )
        .unwrap();
        let lhs = characteristic_map(&combo).unwrap();
        let rhs = characteristic_map(&a).unwrap().scale(&s(2)).add(&characteristic_map(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip() {
        let f = SymFunc::from_terms(
            3,
            Basis::PowerSum,
            [(p(&[3]), ExactScalar::new(q(1, 2), q(-3, 1))), (p(&[2, 1]), s(7))],
        )
        .unwrap();
        let text = f.to_json();
        assert!(text.contains("\"basis\":\"power-sum\""));
        assert_eq!(serde_json::from_str::<SymFunc>(&text).unwrap(), f);
        assert!(serde_json::from_str::<SymFunc>(r#"{"basis":"monomial","degree":2,"terms":[[[3],"1","1"]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn conversion_round_trip(n in 1usize..=7, seed in any::<u64>()) {
            let parts = enumerate_partitions(n).unwrap();
            let terms = parts.iter().enumerate().map(|(k, l)| {
                let v = (seed.rotate_left(k as u32 * 7) % 11) as i64 - 5;
                (l.clone(), ExactScalar::from_ratio(v, (k + 1) as i64))
            });
            let f = SymFunc::from_terms(n, Basis::PowerSum, terms).unwrap();
            let back = convert_basis(&convert_basis(&f, Basis::Monomial).unwrap(), Basis::PowerSum).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
