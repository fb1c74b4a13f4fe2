//! Truncated formal power series and the free-probability transforms built
//! on them.
//!
//! A [`TruncSeries`] of order `N` stores the coefficients `c_0..=c_N`.
//! Binary operations between jets of different orders truncate to the
//! smaller order. Division needs a divisor with non-zero constant term;
//! callers that want to cancel a `z^k` factor use [`TruncSeries::shift_down`].

mod coeff;
mod transforms;

pub use coeff::Coeff;
pub use transforms::{
    a220910_ode_residual, bp_series, cumulants_from_moments, gf_closed_expand, moment_series,
    moments_from_cumulants, r_series_closed, s_series_closed, s_series_from_moments, ClosedGf,
    CumulantTable, RClosed, RRoute,
};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Mode;
use crate::rational::Rational;

pub const DEFAULT_ORDER: usize = 16;
pub const MAX_ORDER: usize = 64;

#[derive(Clone, PartialEq)]
pub struct TruncSeries<C: Coeff = Rational> {
    coeffs: Vec<C>,
}

impl<C: Coeff> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(Coeff::to_text).collect();
        write!(f, "TruncSeries[{}]", terms.join(", "))
    }
}

#[derive(Serialize)]
struct SeriesJson {
    order: usize,
    mode: Mode,
    coeffs: Vec<String>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Builds a jet from `c_0..=c_N`. At least one coefficient is required.
    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant term");
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries::from_coeffs(vec![C::zero(); order + 1])
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::constant(C::one(), order)
    }

    /// The jet of `z`.
    pub fn identity(order: usize) -> Self {
        TruncSeries::monomial(C::one(), 1, order)
    }

    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// Jet of a polynomial given by its coefficients; extra terms are dropped.
    pub fn polynomial(coeffs: &[C], order: usize) -> Self {
        let mut s = TruncSeries::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        TruncSeries::from_coeffs(self.coeffs[..=keep].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncSeries::from_coeffs(
            (0..=n)
                .map(|i| self.coeffs[i].add_ref(&other.coeffs[i]))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncSeries::from_coeffs(
            (0..=n)
                .map(|i| self.coeffs[i].sub_ref(&other.coeffs[i]))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        TruncSeries::from_coeffs(self.coeffs.iter().map(|c| c.neg_ref()).collect())
    }

    pub fn scale(&self, k: &C) -> Self {
        TruncSeries::from_coeffs(self.coeffs.iter().map(|c| c.mul_ref(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        TruncSeries::from_coeffs(C::convolve(&self.coeffs, &other.coeffs, n + 1))
    }

    /// Multiplicative inverse; the constant term must be non-zero.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::SeriesPrecondition(
                "cannot invert a jet with zero constant term".into(),
            ));
        }
        let inv0 = C::one().div_ref(c0);
        let n = self.order();
        let mut out: Vec<C> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                acc.add_prod(&self.coeffs[j], &out[k - j]);
            }
            out.push(acc.neg_ref().mul_ref(&inv0));
        }
        Ok(TruncSeries::from_coeffs(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Divides by `z^k`, requiring the first `k` coefficients to vanish.
    /// The result has order `N - k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::SeriesPrecondition(format!(
                "cannot divide an order-{} jet by z^{k}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::SeriesPrecondition(format!(
                "coefficient {i} is non-zero; jet is not divisible by z^{k}"
            )));
        }
        Ok(TruncSeries::from_coeffs(self.coeffs[k..].to_vec()))
    }

    /// Multiplies by `z^k` keeping the order.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        if k <= n {
            out[k..].clone_from_slice(&self.coeffs[..=n - k]);
        }
        TruncSeries::from_coeffs(out)
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return TruncSeries::zero(0);
        }
        TruncSeries::from_coeffs(
            (1..=self.order())
                .map(|i| self.coeffs[i].mul_ref(&C::from_i64(i as i64)))
                .collect(),
        )
    }

    /// `self ∘ inner`, truncated to the smaller order. `inner` must have zero
    /// constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition(
                "inner series of a composition must have zero constant term".into(),
            ));
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = TruncSeries::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[z^n] g = (1/n) [w^{n-1}] (w / f(w))^n`.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition(
                "reversion needs zero constant term".into(),
            ));
        }
        let n = self.order();
        if n == 0 {
            return Ok(TruncSeries::zero(0));
        }
        if self.coeffs[1].is_zero() {
            return Err(Error::SeriesPrecondition(
                "reversion needs a non-zero linear coefficient".into(),
            ));
        }
        // f(w)/w as an order-(n-1) jet.
        let quotient = self.shift_down(1)?;
        let h = quotient.inverse()?;
        let mut out = vec![C::zero(); n + 1];
        let mut power = h.clone();
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            *slot = power.coeffs[k - 1].div_ref(&C::from_i64(k as i64));
            if k < n {
                power = power.mul(&h);
            }
        }
        Ok(TruncSeries::from_coeffs(out))
    }

    /// Square root of a jet with constant term one.
    pub fn sqrt1p(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesPrecondition(
                "square root expansion needs constant term 1".into(),
            ));
        }
        let n = self.order();
        let two = C::from_i64(2);
        let mut g: Vec<C> = Vec::with_capacity(n + 1);
        g.push(C::one());
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc = acc.sub_ref(&g[j].mul_ref(&g[k - j]));
            }
            g.push(acc.div_ref(&two));
        }
        Ok(TruncSeries::from_coeffs(g))
    }

    /// `(1 + u)^alpha` for a jet `1 + u`, via the recurrence that follows
    /// from `f g' = alpha f' g`.
    pub fn pow1p(&self, alpha: &Rational) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesPrecondition(
                "power expansion needs constant term 1".into(),
            ));
        }
        let alpha = C::from_rational(alpha);
        let n = self.order();
        let mut g: Vec<C> = Vec::with_capacity(n + 1);
        g.push(C::one());
        for k in 1..=n {
            let mut acc = C::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                let weight = alpha
                    .mul_ref(&C::from_i64(j as i64))
                    .sub_ref(&C::from_i64((k - j) as i64));
                acc.add_prod(&weight, &self.coeffs[j].mul_ref(&g[k - j]));
            }
            g.push(acc.div_ref(&C::from_i64(k as i64)));
        }
        Ok(TruncSeries::from_coeffs(g))
    }

    /// Coefficient-wise `c_n * k^n`, i.e. the jet of `f(k z)`.
    pub fn rescale(&self, k: &C) -> Self {
        let mut factor = C::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul_ref(&factor));
            factor = factor.mul_ref(k);
        }
        TruncSeries::from_coeffs(out)
    }

    pub fn is_zero_jet(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    pub fn to_json(&self) -> String {
        let doc = SeriesJson {
            order: self.order(),
            mode: C::MODE,
            coeffs: self.coeffs.iter().map(Coeff::to_text).collect(),
        };
        serde_json::to_string(&doc).expect("jet serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,coeff\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i},{}\n", c.to_text()));
        }
        out
    }
}

impl TruncSeries<Rational> {
    pub fn to_f64(&self) -> TruncSeries<f64> {
        TruncSeries::from_coeffs(self.coeffs.iter().map(crate::rational::to_f64).collect())
    }
}

/// The jet of `z (1 + z)^{-p}`.
pub fn fuss_substitution(p: &Rational, order: usize) -> Result<TruncSeries> {
    let one_plus_z =
        TruncSeries::polynomial(&[crate::rational::int(1), crate::rational::int(1)], order);
    Ok(one_plus_z.pow1p(&-p.clone())?.shift_up(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn jet(values: &[i64]) -> TruncSeries {
        TruncSeries::from_coeffs(values.iter().map(|&v| int(v)).collect())
    }

    fn geometric(k: i64, order: usize) -> TruncSeries {
        TruncSeries::from_coeffs(
            (0..=order as u32)
                .map(|n| crate::rational::pow(&int(k), n))
                .collect(),
        )
    }

    #[test]
    fn compose_identity_and_rescale() {
        let f = jet(&[0, 1, 1, 0, 0]);
        assert_eq!(f.compose(&TruncSeries::identity(4)).unwrap(), f);
        let ones = geometric(1, 6);
        let two_z = TruncSeries::monomial(int(2), 1, 6);
        assert_eq!(ones.compose(&two_z).unwrap(), geometric(2, 6));
    }

    #[test]
    fn compose_rejects_nonzero_constant() {
        let f = jet(&[1, 1, 1]);
        assert!(matches!(
            f.compose(&jet(&[1, 1, 0])),
            Err(Error::SeriesPrecondition(_))
        ));
    }

    #[test]
    fn compose_truncates_to_smaller_order() {
        let f = geometric(1, 8);
        let g = TruncSeries::identity(5);
        assert_eq!(f.compose(&g).unwrap().order(), 5);
    }

    #[test]
    fn revert_examples() {
        assert_eq!(
            TruncSeries::<Rational>::identity(7).revert().unwrap(),
            TruncSeries::identity(7)
        );
        // z/(1-z) -> z/(1+z)
        let n = 9;
        let f = geometric(1, n).shift_up(1);
        let expected = geometric(-1, n).shift_up(1);
        assert_eq!(f.revert().unwrap(), expected);
        // z(1+z)^{-2} -> z B_2(z)^2, with B_2^2 coefficients raney(2, 2, n).
        let g = fuss_substitution(&int(2), n).unwrap();
        let inv = g.revert().unwrap();
        let b2sq = bp_series(&int(2), &int(2), n);
        assert_eq!(inv, b2sq.shift_up(1));
    }

    #[test]
    fn revert_rejects_degenerate_input() {
        assert!(jet(&[1, 1, 0]).revert().is_err());
        assert!(jet(&[0, 0, 1]).revert().is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(
            jet(&[1, 2, 1, 0, 0]).sqrt1p().unwrap(),
            jet(&[1, 1, 0, 0, 0])
        );
        // (1 - sqrt(1-4z)) / (2z) is the Catalan jet.
        let n = 8;
        let root = TruncSeries::polynomial(&[int(1), int(-4)], n + 1)
            .sqrt1p()
            .unwrap();
        let catalan = TruncSeries::one(n + 1)
            .sub(&root)
            .shift_down(1)
            .unwrap()
            .scale(&ratio(1, 2));
        assert_eq!(catalan.coeffs()[..5], jet(&[1, 1, 2, 5, 14]).coeffs()[..]);
        assert!(jet(&[2, 1]).sqrt1p().is_err());
    }

    #[test]
    fn pow_examples() {
        let one_plus_z = jet(&[1, 1, 0, 0, 0, 0]);
        assert_eq!(one_plus_z.pow1p(&int(2)).unwrap(), jet(&[1, 2, 1, 0, 0, 0]));
        let f = jet(&[1, 3, -1, 4, 0, 2]);
        assert_eq!(f.pow1p(&ratio(1, 2)).unwrap(), f.sqrt1p().unwrap());
        let p = ratio(5, 2);
        let prod = one_plus_z
            .pow1p(&-p.clone())
            .unwrap()
            .mul(&one_plus_z.pow1p(&p).unwrap());
        assert_eq!(prod, TruncSeries::one(5));
        assert!(jet(&[0, 1]).pow1p(&int(2)).is_err());
    }

    #[test]
    fn inverse_requires_unit_constant() {
        assert!(jet(&[0, 1, 2]).inverse().is_err());
        let inv = jet(&[1, -1, 0, 0]).inverse().unwrap();
        assert_eq!(inv, jet(&[1, 1, 1, 1]));
    }

    #[test]
    fn shift_down_checks_divisibility() {
        assert_eq!(jet(&[0, 0, 3, 4]).shift_down(2).unwrap(), jet(&[3, 4]));
        assert!(jet(&[0, 1, 3]).shift_down(2).is_err());
    }

    #[test]
    fn float_jets_follow_the_same_algebra() {
        let f = TruncSeries::<f64>::from_coeffs(vec![0.0, 1.0, 0.5, -0.25, 0.125]);
        let g = f.revert().unwrap();
        let id = f.compose(&g).unwrap();
        for (i, c) in id.coeffs().iter().enumerate() {
            let want = if i == 1 { 1.0 } else { 0.0 };
            assert!((c - want).abs() < 1e-14);
        }
        assert!(id.to_json().contains("\"mode\":\"float\""));
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            jet(&[1, 0]).scale(&ratio(1, 2)).to_json(),
            r#"{"order":1,"mode":"exact","coeffs":["1/2","0/1"]}"#
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn sqrt_squares_back(tail in proptest::collection::vec(small_rational(), 8)) {
            let mut coeffs = vec![int(1)];
            coeffs.extend(tail);
            let f = TruncSeries::from_coeffs(coeffs);
            let g = f.sqrt1p().unwrap();
            prop_assert_eq!(g.mul(&g), f);
        }

        #[test]
        fn revert_composes_to_identity(
            lead in small_rational().prop_filter("non-zero", |r| *r != int(0)),
            tail in proptest::collection::vec(small_rational(), 7),
        ) {
            let mut coeffs = vec![int(0), lead];
            coeffs.extend(tail);
            let f = TruncSeries::from_coeffs(coeffs);
            let g = f.revert().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), TruncSeries::identity(8));
            prop_assert_eq!(g.compose(&f).unwrap(), TruncSeries::identity(8));
        }
    }
}
