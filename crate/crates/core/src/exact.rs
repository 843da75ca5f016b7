//! Exact non-negative rationals and the rounding applied when they are reported.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

/// Exact non-negative rational number.
pub type Exact = Ratio<BigUint>;

pub fn exact_from_u64(v: u64) -> Exact {
    Exact::from_integer(BigUint::from(v))
}

pub fn exact_ratio(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Exact {
    Exact::new(num.into(), den.into())
}

pub fn to_f64(v: &Exact) -> f64 {
    // Ratio<BigUint> -> f64 via the integer quotient plus a 64-bit scaled remainder.
    let (q, r) = v.numer().div_rem(v.denom());
    let whole = q.to_f64().unwrap_or(f64::INFINITY);
    if r.is_zero() {
        return whole;
    }
    let scale = BigUint::from(1u8) << 64usize;
    let frac = (r * &scale) / v.denom();
    whole + frac.to_f64().unwrap_or(0.0) / 2f64.powi(64)
}

/// Decimal string rounded half-up to `places` digits.
pub fn round_half_up(v: &Exact, places: u32) -> String {
    let scale = BigUint::from(10u8).pow(places);
    let two = BigUint::from(2u8);
    let scaled = (v.numer() * &scale * &two + v.denom()) / (v.denom() * &two);
    if places == 0 {
        return scaled.to_string();
    }
    let (int, frac) = scaled.div_rem(&scale);
    format!("{}.{:0>width$}", int, frac.to_string(), width = places as usize)
}

/// Rounded value as an `f64`, for JSON emission.
pub fn rounded_f64(v: &Exact, places: u32) -> f64 {
    round_half_up(v, places).parse().expect("decimal string")
}

/// `numerator/denominator` in lowest terms.
pub fn to_fraction_string(v: &Exact) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Order-independent exact sum of rationals.
///
/// Numerators are grouped by denominator so that summing many values with a
/// handful of distinct denominators never grows a huge common denominator
/// until [`ExactSum::total`] is called.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactSum {
    by_denominator: BTreeMap<BigUint, BigUint>,
    count: u64,
}

impl ExactSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: &Exact) {
        self.add_parts(v.numer().clone(), v.denom().clone());
    }

    /// Adds `num / den` (not necessarily reduced).
    pub fn add_parts(&mut self, num: BigUint, den: BigUint) {
        self.count += 1;
        if num.is_zero() {
            return;
        }
        *self.by_denominator.entry(den).or_default() += num;
    }

    pub fn merge(mut self, other: ExactSum) -> ExactSum {
        self.count += other.count;
        for (den, num) in other.by_denominator {
            *self.by_denominator.entry(den).or_default() += num;
        }
        self
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn total(&self) -> Exact {
        self.by_denominator
            .iter()
            .fold(Exact::zero(), |acc, (den, num)| {
                acc + Exact::new(num.clone(), den.clone())
            })
    }

    /// Mean of the added values; zero when nothing was added.
    pub fn mean(&self) -> Exact {
        if self.count == 0 {
            return Exact::zero();
        }
        self.total() / exact_from_u64(self.count)
    }
}
