//! Perfect matchings of the signed domain `{-n,…,-1,1,…,n}`: the finite
//! spaces X(n), their cycle structure, the canonical projections
//! X(n+1) → X(n) and the Ewens-type measures
//!
//! ```text
//! μ_t(x) = t^{[x]} / (t (t+2) … (t+2n-2)).
//! ```

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::report::Report;
use crate::sampling::seeded_rng;
use crate::scalar::format_rational;

/// Default bound on the level for exhaustive enumeration; |X(8)| = 2027025.
pub const MAX_MATCHING_LEVEL: usize = 8;

/// Storage slot of a signed element: `-k ↦ 2k-2`, `k ↦ 2k-1`.
///
/// Slots do not depend on the level, so X(n) embeds in X(n+1) by appending.
#[inline]
pub fn slot(e: i32) -> usize {
    debug_assert!(e != 0);
    let k = e.unsigned_abs() as usize;
    if e < 0 {
        2 * k - 2
    } else {
        2 * k - 1
    }
}

#[inline]
pub fn element(slot: usize) -> i32 {
    let k = (slot / 2 + 1) as i32;
    if slot.is_multiple_of(2) {
        -k
    } else {
        k
    }
}

/// The signed domain in natural order `-n, …, -1, 1, …, n`.
pub fn signed_domain(n: usize) -> impl Iterator<Item = i32> {
    let n = n as i32;
    (-n..=-1).chain(1..=n)
}

/// A pairing of `{-n,…,-1,1,…,n}` into n unordered pairs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    partner: Vec<i32>,
}

impl Matching {
    /// Builds a matching from its pairs, checking that they cover the domain.
    pub fn from_pairs(pairs: &[(i32, i32)]) -> Result<Self> {
        let n = pairs.len();
        let bound = n as i32;
        let mut partner = vec![0i32; 2 * n];
        for &(a, b) in pairs {
            for e in [a, b] {
                if e == 0 || e.abs() > bound {
                    return Err(Error::InvalidParameter(format!(
                        "element {e} outside the domain of X({n})"
                    )));
                }
            }
            if a == b || partner[slot(a)] != 0 || partner[slot(b)] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "pair {{{a},{b}}} reuses an element"
                )));
            }
            partner[slot(a)] = b;
            partner[slot(b)] = a;
        }
        Ok(Matching { partner })
    }

    /// `{{-1,1},{-2,2},…,{-n,n}}`, the fixed point of H(n).
    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|s| -element(s)).collect();
        Matching { partner }
    }

    pub fn level(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, e: i32) -> i32 {
        self.partner[slot(e)]
    }

    /// Pairs in canonical form: inside a pair the element of smaller absolute
    /// value comes first (negative first on ties); pairs are sorted by their
    /// first element's absolute value, then sign.
    pub fn pairs(&self) -> Vec<(i32, i32)> {
        let key = |e: i32| (e.abs(), e);
        let mut out: Vec<(i32, i32)> = signed_domain(self.level())
            .filter_map(|a| {
                let b = self.partner(a);
                (key(a) < key(b)).then_some((a, b))
            })
            .collect();
        out.sort_by_key(|&(a, _)| key(a));
        out
    }

    /// Walks `a → partner(a) → -partner(a) → …`, starting each cycle at the
    /// smallest positive label not yet visited.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.level();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n as i32 {
            if seen[start as usize] {
                continue;
            }
            let mut labels = Vec::new();
            let mut j = start;
            loop {
                seen[j.unsigned_abs() as usize] = true;
                labels.push(j);
                j = -self.partner(j);
                if j == start {
                    break;
                }
            }
            cycles.push(Cycle { labels });
        }
        let cycle_type = Partition::from_unsorted(cycles.iter().map(|c| c.labels.len()).collect());
        CycleDecomposition { cycles, cycle_type }
    }

    /// `[x]_n`, the number of cycles.
    pub fn cycle_count(&self) -> usize {
        let n = self.level();
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for start in 1..=n as i32 {
            if seen[start as usize] {
                continue;
            }
            count += 1;
            let mut j = start;
            loop {
                seen[j.unsigned_abs() as usize] = true;
                j = -self.partner(j);
                if j == start {
                    break;
                }
            }
        }
        count
    }

    pub fn cycle_type(&self) -> Partition {
        self.cycle_decomposition().cycle_type
    }

    /// The image in X(n+1) obtained by adding the pair `{-(n+1), n+1}`.
    pub fn embed(&self) -> Matching {
        let mut partner = self.partner.clone();
        let top = self.level() as i32 + 1;
        partner.push(top);
        partner.push(-top);
        Matching { partner }
    }

    /// True if `{-n, n}` is one of the pairs, i.e. the matching lies in the
    /// embedded copy of X(n-1).
    pub fn is_embedded(&self) -> bool {
        let n = self.level() as i32;
        n >= 1 && self.partner(n) == -n
    }

    /// `p_{n-1,n}`: drop `±n`, joining their partners if they were not paired
    /// with each other.
    pub fn canonical_projection(&self) -> Result<Matching> {
        let n = self.level();
        if n < 2 {
            return Err(Error::InvalidParameter(
                "canonical projection needs a matching of level at least 2".into(),
            ));
        }
        let top = n as i32;
        let mut partner = self.partner[..2 * n - 2].to_vec();
        let a = self.partner(-top);
        if a != top {
            let b = self.partner(top);
            partner[slot(a)] = b;
            partner[slot(b)] = a;
        }
        Ok(Matching { partner })
    }

    /// The 2n+1 elements of X(n+1) projecting onto `self`; the embedded
    /// copy comes first, then the two ways of splitting each pair in
    /// canonical order.
    pub fn preimages(&self) -> Vec<Matching> {
        let top = self.level() as i32 + 1;
        let mut out = vec![self.embed()];
        for (a, b) in self.pairs() {
            for (ea, eb) in [(-top, top), (top, -top)] {
                let mut pairs: Vec<(i32, i32)> =
                    self.pairs().into_iter().filter(|&p| p != (a, b)).collect();
                pairs.push((a, ea));
                pairs.push((eb, b));
                out.push(Matching::from_pairs(&pairs).expect("valid split"));
            }
        }
        out
    }

    /// Raw partner table indexed by [`slot`].
    pub(crate) fn partner_slots(&self) -> &[i32] {
        &self.partner
    }

    pub(crate) fn from_partner_slots(partner: Vec<i32>) -> Self {
        Matching { partner }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{{a},{b}}}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Matching {
    /// A JSON array of `[a, b]` pairs in canonical order.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[i32; 2]> = self.pairs().into_iter().map(|(a, b)| [a, b]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[i32; 2]> = Vec::deserialize(d)?;
        let pairs: Vec<(i32, i32)> = raw.into_iter().map(|[a, b]| (a, b)).collect();
        Matching::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// One cycle `j_1 → -j_2 → j_2 → … → -j_1 → j_1`, stored as `[j_1, …, j_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub labels: Vec<i32>,
}

impl Cycle {
    /// Number of pairs of the matching on this cycle.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Full traversal `j_1, -j_2, j_2, …, -j_1`.
    pub fn elements(&self) -> Vec<i32> {
        let k = self.labels.len();
        let mut out = Vec::with_capacity(2 * k);
        for i in 0..k {
            out.push(self.labels[i]);
            out.push(-self.labels[(i + 1) % k]);
        }
        out
    }

    /// The pairs `{j_i, -j_{i+1}}` making up this cycle.
    pub fn pairs(&self) -> Vec<(i32, i32)> {
        let k = self.labels.len();
        (0..k)
            .map(|i| (self.labels[i], -self.labels[(i + 1) % k]))
            .collect()
    }

    /// Arrow orientation at each point: clockwise at `|j_1|`, flipping
    /// whenever consecutive labels change sign.
    pub fn orientations(&self) -> Vec<Orientation> {
        let first = self.labels.first().map_or(1, |j| j.signum());
        self.labels
            .iter()
            .map(|j| {
                if j.signum() == first {
                    Orientation::Clockwise
                } else {
                    Orientation::Counterclockwise
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Clockwise,
    Counterclockwise,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Cycle>,
    /// Pair counts of the cycles, sorted; a partition of n.
    pub cycle_type: Partition,
}

impl CycleDecomposition {
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }
}

pub fn enumerate_matchings(n: usize) -> Result<Vec<Matching>> {
    enumerate_matchings_bounded(n, MAX_MATCHING_LEVEL)
}

/// All of X(n). Order: the smallest unpaired element (in `-n < … < n`) is
/// paired with each larger unpaired element in increasing order, recursively.
pub fn enumerate_matchings_bounded(n: usize, bound: usize) -> Result<Vec<Matching>> {
    if n > bound {
        return Err(Error::Capacity {
            what: "matching level",
            requested: n,
            max: bound,
        });
    }
    fn rec(order: &[i32], partner: &mut Vec<i32>, out: &mut Vec<Matching>) {
        let Some(pos) = order.iter().position(|&e| partner[slot(e)] == 0) else {
            out.push(Matching {
                partner: partner.clone(),
            });
            return;
        };
        let a = order[pos];
        for &b in &order[pos + 1..] {
            if partner[slot(b)] != 0 {
                continue;
            }
            partner[slot(a)] = b;
            partner[slot(b)] = a;
            rec(order, partner, out);
            partner[slot(a)] = 0;
            partner[slot(b)] = 0;
        }
    }
    let order: Vec<i32> = signed_domain(n).collect();
    let mut out = Vec::new();
    rec(&order, &mut vec![0; 2 * n], &mut out);
    Ok(out)
}

fn require_positive(t: &BigRational) -> Result<()> {
    if !t.is_positive() {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    Ok(())
}

/// `t (t+2) … (t+2n-2)`.
pub fn ewens_normalizer(t: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, k| {
        acc * (t + BigRational::from_integer(BigInt::from(2 * k)))
    })
}

/// `μ_t^(n)(x) = t^{[x]} / (t (t+2) … (t+2n-2))`.
pub fn ewens_weight(t: &BigRational, x: &Matching) -> Result<BigRational> {
    require_positive(t)?;
    Ok(num_traits::pow(t.clone(), x.cycle_count()) / ewens_normalizer(t, x.level()))
}

/// Σ_{x ∈ X(n)} μ_t(x) = 1, exactly.
pub fn check_ewens_normalization(t: &BigRational, n: usize) -> Result<Report> {
    require_positive(t)?;
    let total: BigRational = enumerate_matchings(n)?
        .iter()
        .map(|x| ewens_weight(t, x))
        .sum::<Result<BigRational>>()?;
    let mut report = Report::new("ewens-normalization", "sum_{x ∈ X(n)} μ_t(x) = 1", n)
        .param("t", format_rational(t));
    report.check(total.is_one(), || format!("sum = {total}"));
    Ok(report)
}

/// `μ_t^(n+1)(p^{-1}(x)) = μ_t^(n)(x)` for every x ∈ X(n).
pub fn check_pushforward(t: &BigRational, n: usize) -> Result<Report> {
    require_positive(t)?;
    if n + 1 > MAX_MATCHING_LEVEL {
        return Err(Error::Capacity {
            what: "matching level",
            requested: n + 1,
            max: MAX_MATCHING_LEVEL,
        });
    }
    let lower = enumerate_matchings(n)?;
    let mut mass: HashMap<Matching, BigRational> = HashMap::new();
    for y in enumerate_matchings(n + 1)? {
        let w = ewens_weight(t, &y)?;
        *mass.entry(y.canonical_projection()?).or_insert_with(BigRational::zero) += w;
    }
    let mut report = Report::new("pushforward", "μ_t^(n+1)(p^{-1}{x}) = μ_t^(n)(x)", n)
        .param("t", format_rational(t));
    for x in &lower {
        let expected = ewens_weight(t, x)?;
        let got = mass.get(x).cloned().unwrap_or_else(BigRational::zero);
        report.check(got == expected, || format!("x={x}: {got} vs {expected}"));
    }
    Ok(report)
}

fn small_ratio(t: &BigRational) -> Result<(u128, u128)> {
    match (t.numer().to_u64(), t.denom().to_u64()) {
        (Some(p), Some(q)) => Ok((p as u128, q as u128)),
        _ => Err(Error::InvalidParameter(format!(
            "t = {t} has numerator or denominator beyond 64 bits"
        ))),
    }
}

/// Grows a matching level by level: from level k, the pair `{-(k+1), k+1}`
/// is added with probability `t/(t+2k)`; otherwise one of the 2k ways of
/// splitting an existing pair is chosen uniformly. The law of the result is
/// μ_t^(n).
pub fn sample_matching_with<R: Rng + ?Sized>(t: &BigRational, n: usize, rng: &mut R) -> Result<Matching> {
    require_positive(t)?;
    let (p, q) = small_ratio(t)?;
    let mut x = Matching { partner: Vec::new() };
    for k in 0..n {
        let top = k as i32 + 1;
        let total = p + 2 * (k as u128) * q;
        let r = rng.gen_range(0..total);
        if r < p {
            x = x.embed();
            continue;
        }
        let position = ((r - p) / q) as usize;
        let (a, b) = x.pairs()[position / 2];
        let (ea, eb) = if position.is_multiple_of(2) { (-top, top) } else { (top, -top) };
        let mut partner = x.partner;
        partner.push(0);
        partner.push(0);
        for (u, v) in [(a, ea), (eb, b)] {
            partner[slot(u)] = v;
            partner[slot(v)] = u;
        }
        x = Matching { partner };
    }
    Ok(x)
}

pub fn sample_matching(t: &BigRational, n: usize, seed: u64) -> Result<Matching> {
    sample_matching_with(t, n, &mut seeded_rng(seed))
}

/// `count` independent draws from one seeded stream.
pub fn sample_matchings(t: &BigRational, n: usize, count: usize, seed: u64) -> Result<Vec<Matching>> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| sample_matching_with(t, n, &mut rng)).collect()
}

/// Text rendering of the arrow-on-circle picture:
///
/// ```text
/// X(6): 2 circles
/// circle 1: 1(cw) 3(ccw) 5(cw) 2(cw)
/// circle 2: 4(cw) 6(cw)
/// ```
pub fn render_cycles(x: &Matching) -> String {
    let dec = x.cycle_decomposition();
    let mut out = format!(
        "X({}): {} circle{}\n",
        x.level(),
        dec.cycle_count(),
        if dec.cycle_count() == 1 { "" } else { "s" }
    );
    for (k, cycle) in dec.cycles.iter().enumerate() {
        let points: Vec<String> = cycle
            .labels
            .iter()
            .zip(cycle.orientations())
            .map(|(j, o)| {
                let mark = match o {
                    Orientation::Clockwise => "cw",
                    Orientation::Counterclockwise => "ccw",
                };
                format!("{}({mark})", j.abs())
            })
            .collect();
        out.push_str(&format!("circle {}: {}\n", k + 1, points.join(" ")));
    }
    out
}

/// Inverse of [`render_cycles`]. The first point of each circle is read as
/// the positive label `j_1`.
pub fn parse_cycles(text: &str) -> Result<Matching> {
    let bad = |msg: &str| Error::Parse(format!("cycle rendering: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| bad("empty input"))?;
    let level: usize = header
        .trim()
        .strip_prefix("X(")
        .and_then(|rest| rest.split(')').next())
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| bad("missing X(n) header"))?;
    let mut pairs = Vec::new();
    for line in lines {
        let (_, body) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let mut labels = Vec::new();
        for token in body.split_whitespace() {
            let (num, mark) = token
                .strip_suffix(')')
                .and_then(|t| t.split_once('('))
                .ok_or_else(|| bad(token))?;
            let label: i32 = num.parse().map_err(|_| bad(token))?;
            let signed = match mark {
                "cw" => label,
                "ccw" => -label,
                _ => return Err(bad(token)),
            };
            labels.push(signed);
        }
        pairs.extend(Cycle { labels }.pairs());
    }
    let x = Matching::from_pairs(&pairs)?;
    if x.level() != level {
        return Err(bad("header level does not match the circles"));
    }
    Ok(x)
}
