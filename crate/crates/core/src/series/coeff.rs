use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::params::Mode;
use crate::rational::{self, Rational};

/// Field operations needed by the jet algorithms, implemented for exact
/// rationals and for `f64`.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_text(&self) -> String;

    /// `self += a * b`
    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self = self.add_ref(&a.mul_ref(b));
    }

    /// The first `len` coefficients of the product of `a` and `b`.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j].add_prod(x, y);
            }
        }
        out
    }
}

/// Numerators over the least common denominator.
fn common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    (nums, den)
}

impl Coeff for Rational {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        rational::int(v)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_text(&self) -> String {
        rational::to_text(self)
    }
    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let a = &a[..a.len().min(len)];
        let b = &b[..b.len().min(len)];
        if a.is_empty() || b.is_empty() {
            return vec![<Rational as Zero>::zero(); len];
        }
        let (na, da) = common_denominator(a);
        let (nb, db) = common_denominator(b);
        let den = da * db;
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = BigInt::zero();
            for i in k.saturating_sub(nb.len() - 1)..=k.min(na.len() - 1) {
                if !na[i].is_zero() {
                    acc += &na[i] * &nb[k - i];
                }
            }
            out.push(Rational::new(acc, den.clone()));
        }
        out
    }
}

impl Coeff for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(r: &Rational) -> Self {
        rational::to_f64(r)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_one(&self) -> bool {
        *self == 1.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_text(&self) -> String {
        format!("{self:e}")
    }
    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}
