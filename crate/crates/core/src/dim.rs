//! Dimension values and σ-weights.
//!
//! Dimensions are exact big integers whenever the ring provides integers,
//! so weight sums and Følner ratios stay exact until the final conversion to
//! `f64`. Rings with non-integral dimensions fall back to doubles.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

const EXACT_F64_LIMIT: u64 = 1 << 53;

#[derive(Clone, Debug, PartialEq)]
pub enum Dim {
    Int(BigUint),
    Real(f64),
}

impl Dim {
    pub fn one() -> Dim {
        Dim::Int(BigUint::one())
    }

    pub fn from_u64(v: u64) -> Dim {
        Dim::Int(BigUint::from(v))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Dim::Int(n) => n.to_f64().unwrap_or(f64::INFINITY),
            Dim::Real(x) => *x,
        }
    }

    pub fn as_int(&self) -> Option<&BigUint> {
        match self {
            Dim::Int(n) => Some(n),
            Dim::Real(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Dim::Int(_))
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Dim::Int(n) => Some(BigRational::from_integer(BigInt::from(n.clone()))),
            Dim::Real(x) => BigRational::from_float(*x),
        }
    }

    pub fn mul(&self, other: &Dim) -> Dim {
        match (self, other) {
            (Dim::Int(a), Dim::Int(b)) => Dim::Int(a * b),
            _ => Dim::Real(self.to_f64() * other.to_f64()),
        }
    }

    /// σ(ξ) = d(ξ)².
    pub fn sigma(&self) -> Weight {
        match self {
            Dim::Int(n) => Weight::Exact(n * n),
            Dim::Real(x) => Weight::Approx(x * x),
        }
    }

    /// Compares with tolerance for inexact values, exactly otherwise.
    pub fn approx_eq(&self, other: &Dim, tol: f64) -> bool {
        match (self, other) {
            (Dim::Int(a), Dim::Int(b)) => a == b,
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
            }
        }
    }

    /// `self >= other`, exactly when both are integers.
    pub fn ge(&self, other: &Dim, tol: f64) -> bool {
        match (self, other) {
            (Dim::Int(a), Dim::Int(b)) => a >= b,
            _ => self.to_f64() >= other.to_f64() - tol,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Int(n) => write!(f, "{n}"),
            Dim::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Value of `Π numer / Π denom` rounded once to the nearest double.
///
/// Exact when all factors are integers; the products are formed in big
/// integer arithmetic so huge dimensions do not overflow.
pub fn dim_ratio(numer: &[&Dim], denom: &[&Dim]) -> f64 {
    if numer.iter().chain(denom).all(|d| d.is_exact()) {
        let mut n = BigUint::one();
        for d in numer {
            n *= d.as_int().unwrap();
        }
        let mut m = BigUint::one();
        for d in denom {
            m *= d.as_int().unwrap();
        }
        if let (Some(a), Some(b)) = (n.to_u64(), m.to_u64()) {
            if a < EXACT_F64_LIMIT && b < EXACT_F64_LIMIT {
                return a as f64 / b as f64;
            }
        }
        return BigRational::new(BigInt::from(n), BigInt::from(m))
            .to_f64()
            .unwrap_or(f64::NAN);
    }
    let n: f64 = numer.iter().map(|d| d.to_f64()).product();
    let m: f64 = denom.iter().map(|d| d.to_f64()).product();
    n / m
}

/// Exact version of [`dim_ratio`]; `None` if a factor is not rational.
pub fn dim_ratio_exact(numer: &[&Dim], denom: &[&Dim]) -> Option<BigRational> {
    let mut acc = BigRational::one();
    for d in numer {
        acc *= d.to_rational()?;
    }
    for d in denom {
        acc /= d.to_rational()?;
    }
    Some(acc)
}

/// A σ-weight (sum of squared dimensions).
#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Exact(BigUint),
    Approx(f64),
}

impl Default for Weight {
    fn default() -> Self {
        Weight::zero()
    }
}

impl Weight {
    pub fn zero() -> Weight {
        Weight::Exact(BigUint::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Weight::Exact(n) => n.to_f64().unwrap_or(f64::INFINITY),
            Weight::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            Weight::Exact(n) => Some(n),
            Weight::Approx(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Weight::Exact(n) => n.is_zero(),
            Weight::Approx(x) => *x == 0.0,
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        match (self, other) {
            (Weight::Exact(a), Weight::Exact(b)) => Weight::Exact(a + b),
            _ => Weight::Approx(self.to_f64() + other.to_f64()),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Weight::Exact(n) => Some(BigRational::from_integer(BigInt::from(n.clone()))),
            Weight::Approx(x) => BigRational::from_float(*x),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Exact(n) => write!(f, "{n}"),
            Weight::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl<'a> std::iter::Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc.add(w))
    }
}

impl std::iter::Sum<Weight> for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |acc, w| acc.add(&w))
    }
}

/// A nonnegative quantity that is exact when its inputs were.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Approx(f64),
}

impl Quantity {
    pub fn zero() -> Quantity {
        Quantity::Exact(BigRational::zero())
    }

    pub fn from_weight(w: &Weight) -> Quantity {
        match w {
            Weight::Exact(n) => Quantity::Exact(BigRational::from_integer(BigInt::from(n.clone()))),
            Weight::Approx(x) => Quantity::Approx(*x),
        }
    }

    /// `num / den`; exact when both weights are exact.
    pub fn ratio(num: &Weight, den: &Weight) -> Quantity {
        match (num, den) {
            (Weight::Exact(a), Weight::Exact(b)) if !b.is_zero() => Quantity::Exact(
                BigRational::new(BigInt::from(a.clone()), BigInt::from(b.clone())),
            ),
            _ => Quantity::Approx(num.to_f64() / den.to_f64()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Quantity::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Quantity::Approx(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Quantity::Exact(_))
    }

    pub fn add(&self, other: &Quantity) -> Quantity {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => Quantity::Exact(a + b),
            _ => Quantity::Approx(self.to_f64() + other.to_f64()),
        }
    }

    /// Multiplies by a double, read as the exact dyadic rational it encodes.
    pub fn scale(&self, factor: f64) -> Quantity {
        match self {
            Quantity::Exact(a) => match BigRational::from_float(factor) {
                Some(f) => Quantity::Exact(a * f),
                None => Quantity::Approx(f64::NAN),
            },
            Quantity::Approx(x) => Quantity::Approx(x * factor),
        }
    }

    /// Comparison that is exact when both sides are exact.
    pub fn compare(&self, other: &Quantity) -> Ordering {
        match (self, other) {
            (Quantity::Exact(a), Quantity::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    pub fn lt(&self, other: &Quantity) -> bool {
        self.compare(other) == Ordering::Less
    }
}
