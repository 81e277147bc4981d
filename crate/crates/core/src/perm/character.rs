//! Irreducible characters of symmetric groups by the Murnaghan–Nakayama
//! rule, on beta-sets: removing a border strip of length r moves one bead
//! from position b to b - r, with sign `(-1)^{beads strictly between}`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// Characters are kept in `i64`; |χ| ≤ sqrt(n!) stays far below that here.
pub const MAX_CHARACTER_DEGREE: usize = 24;

type Key = (Partition, Partition);

fn cache() -> &'static RwLock<HashMap<Key, i64>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, i64>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// χ^μ evaluated on the class of cycle type ρ.
pub fn character(mu: &Partition, rho: &Partition) -> Result<i64> {
    if mu.size() != rho.size() {
        return Err(Error::InvalidParameter(format!(
            "character of {mu} on {rho}: sizes differ"
        )));
    }
    if mu.size() > MAX_CHARACTER_DEGREE {
        return Err(Error::Capacity {
            what: "character degree",
            requested: mu.size(),
            max: MAX_CHARACTER_DEGREE,
        });
    }
    Ok(mn(mu, rho.parts()))
}

fn mn(mu: &Partition, rho: &[usize]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return 1;
    };
    let key = (mu.clone(), Partition::from_unsorted(rho.to_vec()));
    if let Some(&v) = cache().read().expect("cache poisoned").get(&key) {
        return v;
    }
    let len = mu.len();
    let beta: Vec<usize> = mu
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i)
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&c| target < c && c < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(k, &c)| c - (len - 1 - k))
            .collect();
        let smaller = Partition::from_unsorted(parts);
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&smaller, rest);
    }
    cache().write().expect("cache poisoned").insert(key, total);
    total
}

/// Full table of S(n2): rows indexed by irreducibles, columns by cycle types,
/// both in the order of [`enumerate_partitions`].
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n2: usize,
    pub labels: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn get(&self, mu: &Partition, rho: &Partition) -> Option<i64> {
        let i = self.labels.iter().position(|p| p == mu)?;
        let j = self.labels.iter().position(|p| p == rho)?;
        Some(self.values[i][j])
    }

    /// `Σ_ρ z_ρ^{-1} χ^μ(ρ) χ^ν(ρ) = δ_{μν}`, checked exactly for all pairs.
    pub fn first_orthogonality_holds(&self) -> bool {
        let z: Vec<BigInt> = self.labels.iter().map(Partition::z_factor).collect();
        for (a, row_a) in self.values.iter().enumerate() {
            for (b, row_b) in self.values.iter().enumerate() {
                let sum: BigRational = row_a
                    .iter()
                    .zip(row_b)
                    .zip(&z)
                    .map(|((x, y), z)| BigRational::new(BigInt::from(x * y), z.clone()))
                    .sum();
                let expected = if a == b { BigRational::one() } else { BigRational::zero() };
                if sum != expected {
                    return false;
                }
            }
        }
        true
    }
}

pub fn character_table(n2: usize) -> Result<CharacterTable> {
    let labels = enumerate_partitions(n2)?;
    let values = labels
        .iter()
        .map(|mu| labels.iter().map(|rho| character(mu, rho)).collect())
        .collect::<Result<_>>()?;
    Ok(CharacterTable { n2, labels, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::dimension;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    type Poly = HashMap<Vec<u32>, i64>;

    fn mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.entry(e).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Frobenius: χ^λ(ρ) is the coefficient of `x^{λ+δ}` in `a_δ · p_ρ`.
    fn frobenius(lambda: &Partition, rho: &Partition) -> i64 {
        let l = lambda.len();
        let mut vandermonde = Poly::new();
        let mut perm: Vec<usize> = (0..l).collect();
        loop {
            let mut e = vec![0u32; l];
            for (i, &s) in perm.iter().enumerate() {
                e[s] = (l - 1 - i) as u32;
            }
            let inversions = (0..l)
                .flat_map(|i| (i + 1..l).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            vandermonde.insert(e, if inversions % 2 == 0 { 1 } else { -1 });
            let Some(i) = (1..l).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
            let j = (i..l).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
        let mut poly = vandermonde;
        for &k in rho.parts() {
            let power_sum: Poly = (0..l)
                .map(|i| {
                    let mut e = vec![0u32; l];
                    e[i] = k as u32;
                    (e, 1)
                })
                .collect();
            poly = mul(&poly, &power_sum);
        }
        let target: Vec<u32> = (0..l).map(|i| (lambda.parts()[i] + l - 1 - i) as u32).collect();
        poly.get(&target).copied().unwrap_or(0)
    }

    #[test]
    fn s4_table() {
        let t = character_table(4).unwrap();
        let labels: Vec<Partition> = [&[4][..], &[3, 1], &[2, 2], &[2, 1, 1], &[1, 1, 1, 1]]
            .iter()
            .map(|x| p(x))
            .collect();
        assert_eq!(t.labels, labels);
        let expected = vec![
            vec![1, 1, 1, 1, 1],
            vec![-1, 0, -1, 1, 3],
            vec![0, -1, 2, 0, 2],
            vec![1, 0, -1, -1, 3],
            vec![-1, 1, 1, -1, 1],
        ];
        assert_eq!(t.values, expected);
    }

    #[test]
    fn agrees_with_frobenius_formula() {
        for n in 1..=7 {
            for lambda in enumerate_partitions(n).unwrap() {
                for rho in enumerate_partitions(n).unwrap() {
                    assert_eq!(character(&lambda, &rho).unwrap(), frobenius(&lambda, &rho), "{lambda} {rho}");
                }
            }
        }
    }

    #[test]
    fn trivial_and_dimension() {
        for n in 1..=10 {
            for rho in enumerate_partitions(n).unwrap() {
                assert_eq!(character(&Partition::row(n), &rho).unwrap(), 1);
            }
            for mu in enumerate_partitions(n).unwrap() {
                let d = character(&mu, &Partition::column(n)).unwrap();
                assert_eq!(BigInt::from(d), dimension(&mu).unwrap());
            }
        }
    }

    #[test]
    fn orthogonality_up_to_ten() {
        for n in 1..=10 {
            assert!(character_table(n).unwrap().first_orthogonality_holds(), "n={n}");
        }
    }

    #[test]
    fn guards() {
        assert!(character(&p(&[2]), &p(&[1])).is_err());
        assert!(character(&Partition::row(25), &Partition::row(25)).is_err());
    }

    #[test]
    fn concurrent_lookups_agree() {
        let mu = p(&[4, 3, 2, 1]);
        let rho = p(&[3, 3, 2, 1, 1]);
        let expected = frobenius(&mu, &rho);
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let (mu, rho) = (mu.clone(), rho.clone());
                std::thread::spawn(move || character(&mu, &rho).unwrap())
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), expected);
        }
    }
}
