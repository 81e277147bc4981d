//! Exact inverse-CDF sampling over a finite table of rational weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Deterministic generator used by every sampler in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A discrete law over `0..len` with exact rational weights.
///
/// A draw takes a uniform 64-bit integer `k` and returns the first index with
/// `k / 2^64 < cdf(i)`; the cumulative sums stay exact and are only scaled by
/// `2^64` (rounded up) for the comparison.
#[derive(Clone, Debug)]
pub struct ExactDiscrete {
    thresholds: Vec<u128>,
}

impl ExactDiscrete {
    pub fn new(weights: &[BigRational]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParameter("empty weight table".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::NotAdmissible(format!("negative weight {w}")));
        }
        let scale = BigInt::one() << 64u32;
        let mut cum = BigRational::zero();
        let mut thresholds = Vec::with_capacity(weights.len());
        for w in weights {
            cum += w;
            let scaled = cum.numer() * &scale;
            let (q, r) = scaled.div_rem(cum.denom());
            let ceil = if r.is_zero() { q } else { q + 1 };
            thresholds.push(ceil.to_u128().expect("cumulative weight overflow"));
        }
        if !cum.is_one() {
            return Err(Error::InvalidParameter(format!(
                "weights sum to {cum}, not 1"
            )));
        }
        Ok(ExactDiscrete { thresholds })
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let k = rng.gen::<u64>() as u128;
        self.thresholds.partition_point(|&t| t <= k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_weights_are_never_drawn() {
        let law = ExactDiscrete::new(&[q(0, 1), q(1, 3), q(0, 1), q(2, 3)]).unwrap();
        let mut rng = seeded_rng(3);
        for _ in 0..2000 {
            let k = law.sample(&mut rng);
            assert!(k == 1 || k == 3);
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(ExactDiscrete::new(&[q(1, 2)]).is_err());
        assert!(ExactDiscrete::new(&[q(3, 2), q(-1, 2)]).is_err());
        assert!(ExactDiscrete::new(&[]).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let law = ExactDiscrete::new(&[q(1, 7), q(6, 7)]).unwrap();
        let a: Vec<usize> = (0..50).map({
            let mut r = seeded_rng(9);
            move |_| law.sample(&mut r)
        }).collect();
        let law = ExactDiscrete::new(&[q(1, 7), q(6, 7)]).unwrap();
        let b: Vec<usize> = (0..50).map({
            let mut r = seeded_rng(9);
            move |_| law.sample(&mut r)
        }).collect();
        assert_eq!(a, b);
    }
}
