//! The groups S(2n) and H(n) acting on the signed domain, their right action
//! on matchings, coset types and the fundamental cocycle
//! `c(x; g) = [x·g] - [x]`.

pub mod character;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{element, enumerate_matchings, signed_domain, slot, Matching, MAX_MATCHING_LEVEL};
use crate::partition::Partition;
use crate::report::Report;
use crate::sampling::seeded_rng;
use crate::scalar::format_rational;

pub use character::{character, character_table, CharacterTable};

/// Largest level for exhaustive scans of S(2n); |S(10)| = 3628800.
pub const MAX_SYMMETRIC_LEVEL: usize = 5;
/// Largest level for listing H(n); |H(6)| = 46080.
pub const MAX_HYPEROCTAHEDRAL_LEVEL: usize = 6;

/// A bijection of `{-n,…,-1,1,…,n}`.
///
/// Products follow the right-action convention: `g.then(h)` is `gh`, the
/// permutation `i ↦ h(g(i))`, so that `(x·g)·h = x·(gh)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedDomainPermutation {
    /// `images[slot(e)] = g(e)`.
    images: Vec<i32>,
}

impl SignedDomainPermutation {
    pub fn identity(n: usize) -> Self {
        SignedDomainPermutation {
            images: (0..2 * n).map(element).collect(),
        }
    }

    /// From the images of `-n, …, -1, 1, …, n` in that order.
    pub fn from_one_line(line: &[i32]) -> Result<Self> {
        if !line.len().is_multiple_of(2) {
            return Err(Error::Parse(format!(
                "one-line notation needs an even length, got {}",
                line.len()
            )));
        }
        let n = line.len() / 2;
        let bound = n as i32;
        let mut images = vec![0i32; 2 * n];
        let mut hit = vec![false; 2 * n];
        for (e, &img) in signed_domain(n).zip(line) {
            if img == 0 || img.abs() > bound || std::mem::replace(&mut hit[slot(img)], true) {
                return Err(Error::Parse(format!("{line:?} is not a bijection of the signed domain")));
            }
            images[slot(e)] = img;
        }
        Ok(SignedDomainPermutation { images })
    }

    /// The transposition `(i j)` in S(2n).
    pub fn transposition(n: usize, i: i32, j: i32) -> Result<Self> {
        let bound = n as i32;
        if i == j || [i, j].iter().any(|&e| e == 0 || e.abs() > bound) {
            return Err(Error::InvalidParameter(format!("({i} {j}) is not a transposition of S({})", 2 * n)));
        }
        let mut g = Self::identity(n);
        g.images[slot(i)] = j;
        g.images[slot(j)] = i;
        Ok(g)
    }

    /// `t̆ = (-n n) … (-1 1)`.
    pub fn tbreve(n: usize) -> Self {
        SignedDomainPermutation {
            images: (0..2 * n).map(|s| -element(s)).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.images.len() / 2
    }

    #[inline]
    pub fn apply(&self, e: i32) -> i32 {
        self.images[slot(e)]
    }

    /// Images of `-n, …, -1, 1, …, n`.
    pub fn one_line(&self) -> Vec<i32> {
        signed_domain(self.level()).map(|e| self.apply(e)).collect()
    }

    fn check_level(&self, other: usize) -> Result<()> {
        if self.level() != other {
            return Err(Error::LevelMismatch {
                expected: self.level(),
                found: other,
            });
        }
        Ok(())
    }

    /// The product `gh`: apply `self`, then `h`.
    pub fn then(&self, h: &Self) -> Result<Self> {
        self.check_level(h.level())?;
        Ok(self.then_unchecked(h))
    }

    fn then_unchecked(&self, h: &Self) -> Self {
        SignedDomainPermutation {
            images: self.images.iter().map(|&e| h.apply(e)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (s, &img) in self.images.iter().enumerate() {
            images[slot(img)] = element(s);
        }
        SignedDomainPermutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(s, &e)| e == element(s))
    }

    /// Membership in H(n): `g(-k) = -g(k)` for all k.
    pub fn is_in_h(&self) -> bool {
        (1..=self.level() as i32).all(|k| self.apply(-k) == -self.apply(k))
    }

    /// Cycle type as a permutation of 2n points.
    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.images.len()];
        let mut lengths = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut s = start;
            while !seen[s] {
                seen[s] = true;
                s = slot(self.images[s]);
                len += 1;
            }
            lengths.push(len);
        }
        Partition::from_unsorted(lengths)
    }

    /// The same permutation in S(2n+2), fixing `±(n+1)`.
    pub fn lift(&self) -> Self {
        let mut images = self.images.clone();
        let top = self.level() as i32 + 1;
        images.push(-top);
        images.push(top);
        SignedDomainPermutation { images }
    }
}

impl fmt::Display for SignedDomainPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line: Vec<String> = self.one_line().iter().map(i32::to_string).collect();
        write!(f, "[{}]", line.join(","))
    }
}

impl fmt::Debug for SignedDomainPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for SignedDomainPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedDomainPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let line: Vec<i32> = Vec::deserialize(d)?;
        Self::from_one_line(&line).map_err(serde::de::Error::custom)
    }
}

/// The right action `x·g = {{g(i_1), g(i_2)}, …}`.
pub fn act(x: &Matching, g: &SignedDomainPermutation) -> Result<Matching> {
    g.check_level(x.level())?;
    Ok(act_unchecked(x, g))
}

pub(crate) fn act_unchecked(x: &Matching, g: &SignedDomainPermutation) -> Matching {
    let partner = x.partner_slots();
    let mut out = vec![0i32; partner.len()];
    for (s, &b) in partner.iter().enumerate() {
        out[slot(g.apply(element(s)))] = g.apply(b);
    }
    Matching::from_partner_slots(out)
}

/// The partition of n indexing the double coset `H(n) g H(n)`: the cycle
/// type of `(identity matching)·g`.
pub fn coset_type(g: &SignedDomainPermutation) -> Partition {
    act_unchecked(&Matching::identity(g.level()), g).cycle_type()
}

/// `c(x; g) = [x·g]_n - [x]_n`.
pub fn cocycle(x: &Matching, g: &SignedDomainPermutation) -> Result<i64> {
    g.check_level(x.level())?;
    Ok(cocycle_unchecked(x, g))
}

fn cocycle_unchecked(x: &Matching, g: &SignedDomainPermutation) -> i64 {
    act_unchecked(x, g).cycle_count() as i64 - x.cycle_count() as i64
}

fn capacity(n: usize, max: usize, what: &'static str) -> Result<()> {
    if n > max {
        return Err(Error::Capacity {
            what,
            requested: n,
            max,
        });
    }
    Ok(())
}

/// Lexicographic walk over S(2n) (by the slot-indexed image vector).
pub struct SymmetricGroupIter {
    current: Option<Vec<i32>>,
}

impl Iterator for SymmetricGroupIter {
    type Item = SignedDomainPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        let images = self.current.take()?;
        let mut next: Vec<usize> = images.iter().map(|&e| slot(e)).collect();
        if next_permutation(&mut next) {
            self.current = Some(next.into_iter().map(element).collect());
        }
        Some(SignedDomainPermutation { images })
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn enumerate_symmetric(n: usize) -> Result<SymmetricGroupIter> {
    capacity(n, MAX_SYMMETRIC_LEVEL, "symmetric group level")?;
    Ok(SymmetricGroupIter {
        current: Some(SignedDomainPermutation::identity(n).images),
    })
}

/// All of H(n): `k ↦ s_k π(k)`, `-k ↦ -s_k π(k)`, with π in lexicographic
/// order and, for each π, sign vectors counted in binary with `s_1` most
/// significant and `+` before `-`.
pub fn enumerate_hyperoctahedral(n: usize) -> Result<Vec<SignedDomainPermutation>> {
    capacity(n, MAX_HYPEROCTAHEDRAL_LEVEL, "hyperoctahedral group level")?;
    let mut pi: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        for bits in 0u32..(1 << n) {
            let mut images = vec![0; 2 * n];
            for k in 1..=n {
                let negative = bits >> (n - k) & 1 == 1;
                let img = if negative { -(pi[k - 1] as i32) } else { pi[k - 1] as i32 };
                images[slot(k as i32)] = img;
                images[slot(-(k as i32))] = -img;
            }
            out.push(SignedDomainPermutation { images });
        }
        if !next_permutation(&mut pi) {
            break;
        }
    }
    Ok(out)
}

/// All transpositions `(i j)` with `i < j` in the natural order of the
/// signed domain.
pub fn transpositions(n: usize) -> Vec<SignedDomainPermutation> {
    let domain: Vec<i32> = signed_domain(n).collect();
    let mut out = Vec::new();
    for (a, &i) in domain.iter().enumerate() {
        for &j in &domain[a + 1..] {
            out.push(SignedDomainPermutation::transposition(n, i, j).expect("valid"));
        }
    }
    out
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SignedDomainPermutation {
    let mut images: Vec<i32> = signed_domain(n).collect();
    images.shuffle(rng);
    SignedDomainPermutation { images }
}

/// Uniform random matching, as the orbit image of a uniform permutation.
pub fn random_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matching {
    act_unchecked(&Matching::identity(n), &random_permutation(n, rng))
}

/// Cylinder form of quasi-invariance,
/// `μ_t({y·g}) = t^{[y·g]-[y]} μ_t({y})`, for all y ∈ X(n) and all
/// transpositions g.
pub fn check_quasi_invariance(t: &BigRational, n: usize) -> Result<Report> {
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    capacity(n, MAX_MATCHING_LEVEL - 1, "matching level")?;
    let mut report = Report::new(
        "quasi-invariance",
        "μ_t({y·g}) = t^([y·g]-[y]) μ_t({y})",
        n,
    )
    .param("t", format_rational(t))
    .param("generators", "transpositions");
    let gens = transpositions(n);
    let norm = crate::matching::ewens_normalizer(t, n);
    let weight = |cycles: usize| num_traits::pow(t.clone(), cycles) / &norm;
    for y in enumerate_matchings(n)? {
        let before = y.cycle_count();
        for g in &gens {
            let after = act_unchecked(&y, g).cycle_count();
            let c = after as i64 - before as i64;
            let factor = if c >= 0 {
                num_traits::pow(t.clone(), c as usize)
            } else {
                num_traits::pow(t.recip(), (-c) as usize)
            };
            let lhs = weight(after);
            let rhs = factor * weight(before);
            report.check(lhs == rhs, || format!("y={y}, g={g}: {lhs} vs {rhs}"));
        }
    }
    Ok(report)
}

/// `c(x; g↑) = c(p(x); g)` for x ∈ X(n+1) and g ∈ S(2n), exhaustively.
pub fn check_cocycle_stability(n: usize) -> Result<Report> {
    capacity(n, 3, "exhaustive cocycle level")?;
    let mut report = Report::new(
        "cocycle-stability",
        "[p(x)·g]_n - [p(x)]_n = [x·g]_(n+1) - [x]_(n+1)",
        n,
    );
    let upper = enumerate_matchings(n + 1)?;
    for g in enumerate_symmetric(n)? {
        let lifted = g.lift();
        for x in &upper {
            stability_case(&mut report, x, &g, &lifted);
        }
    }
    Ok(report)
}

/// Randomized version of [`check_cocycle_stability`].
pub fn check_cocycle_stability_sampled(n: usize, cases: usize, seed: u64) -> Result<Report> {
    capacity(n + 1, MAX_MATCHING_LEVEL, "matching level")?;
    let mut rng = seeded_rng(seed);
    let mut report = Report::new(
        "cocycle-stability",
        "[p(x)·g]_n - [p(x)]_n = [x·g]_(n+1) - [x]_(n+1)",
        n,
    )
    .param("cases", cases)
    .param("seed", seed);
    for _ in 0..cases {
        let x = random_matching(n + 1, &mut rng);
        let g = random_permutation(n, &mut rng);
        stability_case(&mut report, &x, &g, &g.lift());
    }
    Ok(report)
}

fn stability_case(report: &mut Report, x: &Matching, g: &SignedDomainPermutation, lifted: &SignedDomainPermutation) {
    let upper = cocycle_unchecked(x, lifted);
    let lower = cocycle_unchecked(&x.canonical_projection().expect("level ≥ 2"), g);
    report.check(upper == lower, || format!("x={x}, g={g}: {upper} vs {lower}"));
}

/// `c(x; gh) = c(x·g; h) + c(x; g)` for all x ∈ X(n), g, h ∈ S(2n).
pub fn check_cocycle_additivity(n: usize) -> Result<Report> {
    capacity(n, 3, "exhaustive cocycle level")?;
    let mut report = Report::new("cocycle-additivity", "c(x; gh) = c(x·g; h) + c(x; g)", n);
    let group: Vec<_> = enumerate_symmetric(n)?.collect();
    for x in enumerate_matchings(n)? {
        for g in &group {
            let xg = act_unchecked(&x, g);
            let c_g = xg.cycle_count() as i64 - x.cycle_count() as i64;
            for h in &group {
                additivity_case(&mut report, &x, &xg, c_g, g, h);
            }
        }
    }
    Ok(report)
}

pub fn check_cocycle_additivity_sampled(n: usize, cases: usize, seed: u64) -> Result<Report> {
    capacity(n, MAX_MATCHING_LEVEL, "matching level")?;
    let mut rng = seeded_rng(seed);
    let mut report = Report::new("cocycle-additivity", "c(x; gh) = c(x·g; h) + c(x; g)", n)
        .param("cases", cases)
        .param("seed", seed);
    for _ in 0..cases {
        let x = random_matching(n, &mut rng);
        let g = random_permutation(n, &mut rng);
        let h = random_permutation(n, &mut rng);
        let xg = act_unchecked(&x, &g);
        let c_g = xg.cycle_count() as i64 - x.cycle_count() as i64;
        additivity_case(&mut report, &x, &xg, c_g, &g, &h);
    }
    Ok(report)
}

fn additivity_case(
    report: &mut Report,
    x: &Matching,
    xg: &Matching,
    c_g: i64,
    g: &SignedDomainPermutation,
    h: &SignedDomainPermutation,
) {
    let lhs = cocycle_unchecked(x, &g.then_unchecked(h));
    let rhs = cocycle_unchecked(xg, h) + c_g;
    report.check(lhs == rhs, || format!("x={x}, g={g}, h={h}: {lhs} vs {rhs}"));
}

/// `p(x·g↑) = p(x)·g` for x ∈ X(n+1) and g ∈ S(2n).
pub fn check_equivariance(n: usize) -> Result<Report> {
    capacity(n, 3, "exhaustive equivariance level")?;
    let mut report = Report::new("equivariance", "p(x·g) = p(x)·g", n);
    let upper = enumerate_matchings(n + 1)?;
    for g in enumerate_symmetric(n)? {
        let lifted = g.lift();
        for x in &upper {
            let lhs = act_unchecked(x, &lifted).canonical_projection()?;
            let rhs = act_unchecked(&x.canonical_projection()?, &g);
            report.check(lhs == rhs, || format!("x={x}, g={g}"));
        }
    }
    Ok(report)
}

/// `|H(n)| = 2^n n!` as a big integer.
pub fn hyperoctahedral_order(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(2 * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeSet, HashSet};

    fn perm(line: &[i32]) -> SignedDomainPermutation {
        SignedDomainPermutation::from_one_line(line).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn group_laws() {
        let g = perm(&[1, -2, 3, -3, 2, -1]);
        let h = perm(&[3, 2, 1, -1, -2, -3]);
        assert!(g.then(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().then(&g).unwrap().is_identity());
        let t = SignedDomainPermutation::tbreve(3);
        assert!(t.then(&t).unwrap().is_identity());
        let k = perm(&[-3, 1, -1, 2, 3, -2]);
        let left = g.then(&h).unwrap().then(&k).unwrap();
        let right = g.then(&h.then(&k).unwrap()).unwrap();
        assert_eq!(left, right);
        assert!(matches!(
            g.then(&SignedDomainPermutation::identity(2)),
            Err(Error::LevelMismatch { .. })
        ));
    }

    #[test]
    fn one_line_round_trip() {
        let g = perm(&[2, -1, 1, -2]);
        assert_eq!(g.apply(-2), 2);
        assert_eq!(g.apply(2), -2);
        assert_eq!(g.one_line(), vec![2, -1, 1, -2]);
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(json, "[2,-1,1,-2]");
        assert_eq!(serde_json::from_str::<SignedDomainPermutation>(&json).unwrap(), g);
        assert!(SignedDomainPermutation::from_one_line(&[1, 1]).is_err());
        assert!(SignedDomainPermutation::from_one_line(&[1, 2, 3]).is_err());
    }

    #[test]
    fn hyperoctahedral_two_is_the_listed_group() {
        let listed = [
            [-2, -1, 1, 2],
            [2, -1, 1, -2],
            [-2, 1, -1, 2],
            [2, 1, -1, -2],
            [-1, -2, 2, 1],
            [1, -2, 2, -1],
            [-1, 2, -2, 1],
            [1, 2, -2, -1],
        ];
        let h2 = enumerate_hyperoctahedral(2).unwrap();
        let got: Vec<Vec<i32>> = h2.iter().map(|g| g.one_line()).collect();
        let want: Vec<Vec<i32>> = listed.iter().map(|l| l.to_vec()).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn membership_matches_centralizer() {
        for n in 1..=3 {
            let t = SignedDomainPermutation::tbreve(n);
            let mut count = 0;
            for g in enumerate_symmetric(n).unwrap() {
                let conj = g.inverse().then(&t).unwrap().then(&g).unwrap();
                assert_eq!(g.is_in_h(), conj == t, "{g}");
                count += g.is_in_h() as usize;
            }
            assert_eq!(BigInt::from(count), hyperoctahedral_order(n));
            let listed = enumerate_hyperoctahedral(n).unwrap();
            assert_eq!(BigInt::from(listed.len()), hyperoctahedral_order(n));
            assert!(listed.iter().all(SignedDomainPermutation::is_in_h));
            assert_eq!(listed.iter().collect::<HashSet<_>>().len(), listed.len());
        }
        assert_eq!(enumerate_symmetric(3).unwrap().count(), 720);
        assert!(enumerate_symmetric(6).is_err());
    }

    #[test]
    fn action_laws() {
        for n in 1..=3 {
            let group: Vec<_> = enumerate_symmetric(n).unwrap().collect();
            let id = Matching::identity(n);
            let orbit: HashSet<Matching> = group.iter().map(|g| act(&id, g).unwrap()).collect();
            assert_eq!(orbit.len(), enumerate_matchings(n).unwrap().len());
            for x in enumerate_matchings(n).unwrap() {
                assert_eq!(act(&x, &SignedDomainPermutation::identity(n)).unwrap(), x);
                for g in group.iter().step_by(7) {
                    for h in group.iter().step_by(11) {
                        let lhs = act(&act(&x, g).unwrap(), h).unwrap();
                        let rhs = act(&x, &g.then(h).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            for h in enumerate_hyperoctahedral(n).unwrap() {
                assert_eq!(act(&id, &h).unwrap(), id);
            }
        }
        let x = Matching::identity(2);
        assert!(act(&x, &SignedDomainPermutation::identity(3)).is_err());
    }

    #[test]
    fn orbit_of_identity_is_everything_at_level_four() {
        let mut rng = seeded_rng(5);
        let mut orbit = HashSet::new();
        while orbit.len() < 105 {
            orbit.insert(random_matching(4, &mut rng));
        }
        assert_eq!(orbit.len(), enumerate_matchings(4).unwrap().len());
    }

    #[test]
    fn coset_types() {
        assert_eq!(coset_type(&SignedDomainPermutation::identity(3)), Partition::new(vec![1, 1, 1]).unwrap());
        let t = SignedDomainPermutation::transposition(2, 1, 2).unwrap();
        assert_eq!(coset_type(&t), Partition::new(vec![2]).unwrap());
        for n in 1..=4 {
            let types: BTreeSet<Partition> = enumerate_symmetric(n).unwrap().map(|g| coset_type(&g)).collect();
            assert_eq!(types.len(), crate::partition::enumerate_partitions(n).unwrap().len());
        }
    }

    #[test]
    fn coset_type_is_constant_on_double_cosets() {
        for n in 1..=3 {
            let h = enumerate_hyperoctahedral(n).unwrap();
            for g in enumerate_symmetric(n).unwrap() {
                let ty = coset_type(&g);
                for a in &h {
                    let ag = a.then(&g).unwrap();
                    for b in h.iter().step_by(3) {
                        assert_eq!(coset_type(&ag.then(b).unwrap()), ty);
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_on_transpositions() {
        for n in 1..=4 {
            for x in enumerate_matchings(n).unwrap() {
                assert_eq!(cocycle(&x, &SignedDomainPermutation::identity(n)).unwrap(), 0);
                let dec = x.cycle_decomposition();
                let cycle_of = |e: i32| {
                    dec.cycles
                        .iter()
                        .position(|c| c.labels.iter().any(|j| j.abs() == e.abs()))
                        .unwrap()
                };
                for g in transpositions(n) {
                    let (i, j) = signed_domain(n)
                        .filter(|&e| g.apply(e) != e)
                        .fold((0, 0), |(a, _), e| if a == 0 { (e, 0) } else { (a, e) });
                    let c = cocycle(&x, &g).unwrap();
                    if cycle_of(i) == cycle_of(j) {
                        assert!(c == 0 || c == 1, "x={x} g={g} c={c}");
                    } else {
                        assert_eq!(c, -1, "x={x} g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_checks() {
        for n in 1..=2 {
            assert!(check_cocycle_stability(n).unwrap().passed());
            assert!(check_cocycle_additivity(n).unwrap().passed());
            assert!(check_equivariance(n).unwrap().passed());
        }
        assert!(check_cocycle_stability_sampled(4, 500, 1).unwrap().passed());
        assert!(check_cocycle_additivity_sampled(4, 500, 1).unwrap().passed());
        assert!(check_cocycle_stability(4).is_err());
    }

    #[test]
    fn quasi_invariance_small() {
        for t in [q(1, 2), q(1, 1), q(2, 1)] {
            for n in 1..=3 {
                let r = check_quasi_invariance(&t, n).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        // t = 1: every g preserves the uniform measure
        for x in enumerate_matchings(3).unwrap() {
            for g in transpositions(3) {
                let one = q(1, 1);
                assert_eq!(
                    crate::matching::ewens_weight(&one, &act(&x, &g).unwrap()).unwrap(),
                    crate::matching::ewens_weight(&one, &x).unwrap()
                );
            }
        }
        for h in enumerate_hyperoctahedral(3).unwrap() {
            for x in enumerate_matchings(3).unwrap() {
                assert_eq!(cocycle(&x, &h).unwrap(), 0);
            }
        }
    }

    #[test]
    fn cocycle_bounds() {
        let mut rng = seeded_rng(2);
        for _ in 0..2000 {
            let x = random_matching(5, &mut rng);
            let g = random_permutation(5, &mut rng);
            assert!(cocycle(&x, &g).unwrap().abs() <= 4);
        }
    }
}
