//! Young diagrams and the hook / Pochhammer products built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// Default bound on `n` for [`enumerate_partitions`]; p(60) = 966467.
pub const MAX_PARTITION_SIZE: usize = 60;

/// A weakly decreasing sequence of positive integers.
///
/// The derived ordering is lexicographic on the parts, so among partitions of
/// the same size `(n)` is the largest and `(1^n)` the smallest.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "zero part inside partition: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary positive sizes into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `(n)`, or the empty partition for `n = 0`.
    pub fn row(n: usize) -> Self {
        Partition::from_unsorted(vec![n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of boxes |λ|.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows l(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length λ_i for 1-based `i`; zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        self.parts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// The transposed diagram: λ'_j = #{i : λ_i ≥ j}.
    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Boxes `(i, j)` with 1-based row and column, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (1..=len).map(move |j| (r + 1, j)))
    }

    /// `2λ = (2λ_1, 2λ_2, ...)`.
    pub fn doubled(&self) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| 2 * p).collect(),
        }
    }

    /// Multiplicities `m_k` of each part size `k`, indexed from 1.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.parts.first().copied().unwrap_or(0) + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// `z_ρ = ∏ k^{m_k} m_k!`, the centralizer order of cycle type ρ.
    pub fn z_factor(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigInt::one(), |acc, (k, &m)| {
                acc * BigInt::from(k).pow(m as u32) * factorial(m)
            })
    }

    /// Dominance order: `self ≥ other` iff every partial sum of `self`
    /// is at least the corresponding partial sum of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let (mut a, mut b) = (0usize, 0usize);
        for k in 0..self.len().max(other.len()) {
            a += self.parts.get(k).copied().unwrap_or(0);
            b += other.parts.get(k).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// `n(λ) = Σ (i-1) λ_i`; strictly decreasing along dominance.
    pub fn n_statistic(&self) -> usize {
        self.parts.iter().enumerate().map(|(i, p)| i * p).sum()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,1)`, `[3,1]`, `3,1` or `3 1`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(n, MAX_PARTITION_SIZE)
}

pub fn enumerate_partitions_bounded(n: usize, bound: usize) -> Result<Vec<Partition>> {
    if n > bound {
        return Err(Error::Capacity {
            what: "partition size",
            requested: n,
            max: bound,
        });
    }
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `1·3·…·(2n-1) = |X(n)|`.
pub fn odd_double_factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * (2 * k - 1))
}

/// Rising factorial `a(a+1)…(a+n-1)`.
pub fn pochhammer(a: &ExactScalar, n: usize) -> ExactScalar {
    (0..n)
        .map(|k| a + &ExactScalar::from_int(k as i64))
        .product()
}

/// `(z)_{λ,θ} = ∏_{(i,j)∈λ} (z + (j-1) - (i-1)θ)`.
pub fn generalized_pochhammer(z: &ExactScalar, lambda: &Partition, theta: &BigRational) -> ExactScalar {
    lambda
        .boxes()
        .map(|(i, j)| {
            let shift = BigRational::from_integer(BigInt::from(j - 1))
                - theta * BigRational::from_integer(BigInt::from(i - 1));
            z + &ExactScalar::real(shift)
        })
        .product()
}

/// The pair `H(λ,θ)`, `H'(λ,θ)` of deformed hook products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookProducts {
    pub h: BigRational,
    pub h_prime: BigRational,
}

/// `H = ∏ (arm + leg·θ + 1)` and `H' = ∏ (arm + leg·θ + θ)`.
pub fn hook_products(lambda: &Partition, theta: &BigRational) -> HookProducts {
    let conj = lambda.transpose();
    let mut h = BigRational::one();
    let mut h_prime = BigRational::one();
    for (i, j) in lambda.boxes() {
        let arm = BigRational::from_integer(BigInt::from(lambda.row_len(i) - j));
        let leg = BigRational::from_integer(BigInt::from(conj.row_len(j) - i));
        let base = arm + leg * theta;
        h *= &base + BigRational::one();
        h_prime *= base + theta;
    }
    HookProducts { h, h_prime }
}

/// Product of the ordinary hook lengths of λ.
pub fn hook_length_product(lambda: &Partition) -> BigInt {
    let conj = lambda.transpose();
    lambda
        .boxes()
        .map(|(i, j)| (lambda.row_len(i) - j) + (conj.row_len(j) - i) + 1)
        .fold(BigInt::one(), |acc, h| acc * h)
}

/// Number of standard Young tableaux of shape λ, `|λ|!/h(λ)`.
pub fn dimension(lambda: &Partition) -> Result<BigInt> {
    let (q, r) = factorial(lambda.size()).div_rem(&hook_length_product(lambda));
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "hook length formula not integral for {lambda}"
        )));
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent count via the pentagonal-number recurrence.
    fn partition_count(n: usize) -> usize {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut acc = 0i64;
            for k in 1i64.. {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                acc += sign * table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    acc += sign * table[i - g2];
                }
            }
            table[i] = acc;
        }
        table[n] as usize
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(1).unwrap(), vec![p(&[1])]);
        let four = enumerate_partitions(4).unwrap();
        assert_eq!(
            four,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
        for n in 0..=25 {
            let parts = enumerate_partitions(n).unwrap();
            assert_eq!(parts.len(), partition_count(n));
            assert!(parts.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn enumeration_bound() {
        assert!(matches!(
            enumerate_partitions(61),
            Err(Error::Capacity { requested: 61, .. })
        ));
        assert!(enumerate_partitions_bounded(5, 4).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[2]).transpose(), p(&[1, 1]));
        assert_eq!(p(&[3, 1]).transpose(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
        assert_eq!(p(&[4, 2, 1]).transpose(), p(&[3, 2, 1, 1]));
    }

    #[test]
    fn transpose_matches_cell_reflection() {
        for n in 0..=10 {
            for lam in enumerate_partitions(n).unwrap() {
                let cells: Vec<(usize, usize)> = lam.boxes().map(|(i, j)| (j, i)).collect();
                let mut rows = vec![0usize; cells.iter().map(|c| c.0).max().unwrap_or(0)];
                for (i, _) in cells {
                    rows[i - 1] += 1;
                }
                assert_eq!(lam.transpose(), Partition::new(rows).unwrap());
            }
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        assert_eq!("(3,1)".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert_eq!("()".parse::<Partition>().unwrap(), Partition::empty());
        assert!("(1,x)".parse::<Partition>().is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ExactScalar::from_int(3), 2), ExactScalar::from_int(12));
        assert_eq!(
            pochhammer(&ExactScalar::from_ratio(1, 2), 3),
            ExactScalar::from_ratio(15, 8)
        );
        assert_eq!(pochhammer(&"1+1i".parse().unwrap(), 0), ExactScalar::one());
    }

    #[test]
    fn generalized_pochhammer_examples() {
        let z: ExactScalar = "7/3+1i".parse().unwrap();
        assert_eq!(generalized_pochhammer(&z, &p(&[1]), &q(5, 2)), z);
        assert_eq!(
            generalized_pochhammer(&ExactScalar::from_int(2), &p(&[2]), &q(1, 2)),
            ExactScalar::from_int(6)
        );
        // (2)·(2 - 1/2)
        assert_eq!(
            generalized_pochhammer(&ExactScalar::from_int(2), &p(&[1, 1]), &q(1, 2)),
            ExactScalar::from_int(3)
        );
    }

    #[test]
    fn hook_examples() {
        let theta = q(3, 7);
        let single = hook_products(&p(&[1]), &theta);
        assert_eq!(single.h, q(1, 1));
        assert_eq!(single.h_prime, theta);
        let two = hook_products(&p(&[2]), &q(1, 2));
        assert_eq!(two.h, q(2, 1));
        assert_eq!(two.h_prime, q(3, 4));
        assert_eq!(hook_length_product(&p(&[4])), BigInt::from(24));
        assert_eq!(hook_length_product(&p(&[2, 2])), BigInt::from(12));
        assert_eq!(hook_length_product(&p(&[1])), BigInt::from(1));
        assert_eq!(dimension(&p(&[4])).unwrap(), BigInt::from(1));
        assert_eq!(dimension(&p(&[2, 2])).unwrap(), BigInt::from(2));
        for n in 1..=20 {
            assert_eq!(dimension(&Partition::row(n)).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn hook_product_symmetry() {
        let thetas = [q(1, 2), q(1, 1), q(2, 1), q(3, 5)];
        for n in 0..=10 {
            for lam in enumerate_partitions(n).unwrap() {
                for theta in &thetas {
                    let lhs = hook_products(&lam, theta).h;
                    let rhs = hook_products(&lam.transpose(), &theta.recip()).h_prime
                        * num_traits::pow(theta.clone(), n);
                    assert_eq!(lhs, rhs, "{lam} θ={theta}");
                }
                let h1 = hook_products(&lam, &q(1, 1));
                let h = BigRational::from_integer(hook_length_product(&lam));
                assert_eq!(h1.h, h);
                assert_eq!(h1.h_prime, h);
            }
        }
    }

    #[test]
    fn generalized_pochhammer_symmetry() {
        let thetas = [q(1, 2), q(1, 1), q(2, 1), q(3, 5)];
        let zs: Vec<ExactScalar> = ["2", "-5/3", "1/7", "11", "1+1i"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for n in 0..=10 {
            for lam in enumerate_partitions(n).unwrap() {
                for theta in &thetas {
                    let minus_theta = ExactScalar::real(-theta.clone());
                    for z in &zs {
                        let lhs = generalized_pochhammer(z, &lam, theta);
                        let arg = -(z.scale(&theta.recip()));
                        let rhs = minus_theta.pow(n as u32)
                            * generalized_pochhammer(&arg, &lam.transpose(), &theta.recip());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn sum_of_squared_dimensions() {
        for n in 0..=10 {
            let total: BigInt = enumerate_partitions(n)
                .unwrap()
                .iter()
                .map(|l| {
                    let d = dimension(l).unwrap();
                    &d * &d
                })
                .sum();
            assert_eq!(total, factorial(n));
        }
    }

    #[test]
    fn doubled_hooks_reconcile_with_half_theta_products() {
        let half = q(1, 2);
        for n in 0..=10 {
            for lam in enumerate_partitions(n).unwrap() {
                let hp = hook_products(&lam, &half);
                let lhs = BigRational::from_integer(hook_length_product(&lam.doubled()));
                let rhs = num_traits::pow(q(4, 1), n) * hp.h * hp.h_prime;
                assert_eq!(lhs, rhs, "{lam}");
            }
        }
    }

    #[test]
    fn z_factor_and_dominance() {
        assert_eq!(p(&[2]).z_factor(), BigInt::from(2));
        assert_eq!(p(&[1, 1]).z_factor(), BigInt::from(2));
        assert_eq!(p(&[2, 2, 1]).z_factor(), BigInt::from(8));
        assert!(p(&[3, 1]).dominates(&p(&[2, 2])));
        assert!(!p(&[3, 1, 1, 1]).dominates(&p(&[2, 2, 2])));
        assert!(!p(&[2, 2, 2]).dominates(&p(&[3, 1, 1, 1])));
    }

    proptest! {
        #[test]
        fn transpose_is_an_involution(raw in proptest::collection::vec(1usize..9, 0..9)) {
            let lam = Partition::from_unsorted(raw);
            let t = lam.transpose();
            prop_assert_eq!(t.size(), lam.size());
            prop_assert_eq!(t.transpose(), lam);
        }
    }
}
