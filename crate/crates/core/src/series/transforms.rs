use num_traits::{One, Zero};

use super::{TruncSeries, MAX_ORDER};
use crate::error::{Error, Result};
use crate::exact_seq::{deformed_fuss, raney};
use crate::params::Params;
use crate::rational::{self, int, Rational};

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "series order {order} exceeds the maximum {MAX_ORDER}"
        )));
    }
    Ok(())
}

/// Jet of `B_p(z)^r`, whose coefficients are the Raney numbers.
pub fn bp_series(p: &Rational, r: &Rational, order: usize) -> TruncSeries {
    TruncSeries::from_coeffs((0..=order as u64).map(|n| raney(p, r, n)).collect())
}

/// Moment generating jet `t B_p + (1 - t) B_p^2` of `eta(p, t)`.
pub fn moment_series(params: &Params, order: usize) -> Result<TruncSeries> {
    let (p, t) = params.require_exact()?;
    let b = bp_series(p, &int(1), order);
    let m = b.scale(t).add(&b.mul(&b).scale(&(Rational::one() - t)));
    for (n, c) in m.coeffs().iter().enumerate() {
        let direct = deformed_fuss(params, n as u64)?;
        if *c != direct {
            return Err(Error::Inconsistency(format!(
                "moment jet coefficient {n} = {} but a_n = {}",
                rational::to_text(c),
                rational::to_text(&direct)
            )));
        }
    }
    Ok(m)
}

/// Free cumulants `r_1..r_N` of a measure, in order.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantTable {
    pub params: Option<Params>,
    pub values: Vec<Rational>,
}

impl CumulantTable {
    pub fn new(values: Vec<Rational>) -> Self {
        CumulantTable {
            params: None,
            values,
        }
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = Some(params);
        self
    }

    /// `r_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> Option<&Rational> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// The R-transform jet `sum r_n z^n`.
    pub fn r_jet(&self) -> TruncSeries {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(self.values.iter().cloned());
        TruncSeries::from_coeffs(coeffs)
    }
}

/// Solves `1 + R(z M(z)) = M(z)` for `R` given the moment jet `M` of order
/// `N`, returning `r_1..r_N`.
pub fn cumulants_from_moments(m: &TruncSeries) -> Result<CumulantTable> {
    if !m.coeff(0).is_one() {
        return Err(Error::SeriesPrecondition(
            "moment jet must start with m_0 = 1".into(),
        ));
    }
    let n = m.order();
    if n == 0 {
        return Ok(CumulantTable::new(Vec::new()));
    }
    let inner = m.shift_up(1).revert()?;
    let r = m.sub(&TruncSeries::one(n)).compose(&inner)?;
    Ok(CumulantTable::new(r.into_coeffs().split_off(1)))
}

/// Inverse of [`cumulants_from_moments`]: `y = z M(z)` solves
/// `y = z (1 + R(y))`, so `y` is the reversion of `w / (1 + R(w))`.
pub fn moments_from_cumulants(r: &CumulantTable) -> Result<TruncSeries> {
    let n = r.values.len();
    if n == 0 {
        return Ok(TruncSeries::one(0));
    }
    let one_plus_r = r.r_jet().add(&TruncSeries::one(n));
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(one_plus_r.inverse()?.into_coeffs());
    let y = TruncSeries::from_coeffs(coeffs).revert()?;
    y.shift_down(1)
}

/// S-transform jet from moments: with `chi` the inverse of `M - 1`,
/// `S(z) = (1 + z) chi(z) / z`. An order-`N` moment jet yields order `N - 1`.
pub fn s_series_from_moments(m: &TruncSeries) -> Result<TruncSeries> {
    if !m.coeff(0).is_one() {
        return Err(Error::SeriesPrecondition(
            "moment jet must start with m_0 = 1".into(),
        ));
    }
    if m.order() < 1 || m.coeff(1).is_zero() {
        return Err(Error::SeriesPrecondition(
            "S-transform needs a non-zero first moment".into(),
        ));
    }
    let n = m.order();
    let chi = m.sub(&TruncSeries::one(n)).revert()?;
    let one_plus_z = TruncSeries::polynomial(&[int(1), int(1)], n);
    one_plus_z.mul(&chi).shift_down(1)
}

/// Closed-form S-transform of `eta(p, t)`:
/// `(2 + 2w)^{1-p} (sqrt(D) + t)^p / (sqrt(D) + 2 - t)` with
/// `D = (2 - t)^2 + 4 (1 - t) w`.
///
/// Expanded as `(1 + w)^{1-p} A^p / ((2 - t) B)` where
/// `sqrt(D) = (2 - t) Q`, `Q = sqrt(1 + 4(1 - t) w / (2 - t)^2)`,
/// `A = ((2 - t) Q + t) / 2` and `B = (Q + 1) / 2` all have constant term 1,
/// so the powers of two cancel and rational `p` stays exact.
pub fn s_series_closed(params: &Params, order: usize) -> Result<TruncSeries> {
    check_order(order)?;
    let (p, t) = params.require_exact()?;
    let two = int(2);
    let two_minus_t = &two - t;
    if two_minus_t.is_zero() {
        return Err(Error::InvalidParameter(
            "closed-form S-transform is undefined at t = 2".into(),
        ));
    }
    let half = rational::ratio(1, 2);
    let radicand = TruncSeries::polynomial(
        &[
            int(1),
            int(4) * (Rational::one() - t) / (&two_minus_t * &two_minus_t),
        ],
        order,
    );
    let q = radicand.sqrt1p()?;
    let a = q
        .scale(&two_minus_t)
        .add(&TruncSeries::constant(t.clone(), order))
        .scale(&half);
    let b = q.add(&TruncSeries::one(order)).scale(&half);
    let one_plus_w = TruncSeries::polynomial(&[int(1), int(1)], order);
    let numerator = one_plus_w.pow1p(&(Rational::one() - p))?.mul(&a.pow1p(p)?);
    numerator.div(&b.scale(&two_minus_t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RRoute {
    Closed,
    /// The closed form was singular; cumulants came from the moment jet.
    MomentFallback,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RClosed {
    pub jet: TruncSeries,
    pub route: RRoute,
}

/// Closed-form R-transform jet of `eta(p, t)` for `p` in {2, 3}.
pub fn r_series_closed(p: u32, t: &Rational, order: usize) -> Result<RClosed> {
    check_order(order)?;
    let one = Rational::one();
    let t_minus_1 = t - &one;
    let jet = match p {
        2 if t_minus_1.is_zero() => {
            // z / (1 - z)
            TruncSeries::from_coeffs(
                (0..=order)
                    .map(|n| if n == 0 { int(0) } else { int(1) })
                    .collect(),
            )
        }
        2 => {
            let root =
                TruncSeries::polynomial(&[int(1), int(2) - int(4) * t, int(1)], order).sqrt1p()?;
            let poly = TruncSeries::polynomial(&[&one - t, int(3) * t - int(2), int(-1)], order);
            let factor = TruncSeries::polynomial(&[t_minus_1.clone(), int(-1)], order);
            poly.add(&factor.mul(&root))
                .scale(&(one.clone() / (int(2) * &t_minus_1)))
        }
        3 if t_minus_1.is_zero() => {
            let params = Params::exact(int(3), t.clone());
            let cumulants = cumulants_from_moments(&moment_series(&params, order)?)?;
            return Ok(RClosed {
                jet: cumulants.r_jet(),
                route: RRoute::MomentFallback,
            });
        }
        3 => {
            let sq = &t_minus_1 * &t_minus_1;
            let root = TruncSeries::polynomial(&[int(1), int(-4) * t], order).sqrt1p()?;
            let poly = TruncSeries::polynomial(
                &[-sq.clone(), int(4) - int(7) * t + int(4) * t * t, int(-2)],
                order,
            );
            let factor = TruncSeries::polynomial(&[sq.clone(), -t.clone()], order);
            let den = TruncSeries::polynomial(&[sq.clone(), int(2) * &t_minus_1, int(1)], order)
                .scale(&int(2));
            poly.add(&factor.mul(&root)).div(&den)?
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "closed-form R-transform is available for p = 2 or 3, not {p}"
            )))
        }
    };
    if !jet.coeff(0).is_zero() {
        return Err(Error::Inconsistency(format!(
            "closed-form R-transform has constant term {}",
            rational::to_text(jet.coeff(0))
        )));
    }
    Ok(RClosed {
        jet,
        route: RRoute::Closed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedGf {
    /// `(1 + 18z - 27z^2 + sqrt((1 - z)(1 - 9z)^3)) / 2`
    Ex1,
    /// `(1 + 20z - 8z^2 + sqrt((1 - 8z)^3)) / (2 (1 + z)^3)`
    A022558,
    /// `(1 + 36z + sqrt((1 - 12z)^3)) / (2 (1 + 4z)^2)`
    A220910,
}

impl ClosedGf {
    pub fn name(self) -> &'static str {
        match self {
            ClosedGf::Ex1 => "ex1_gf",
            ClosedGf::A022558 => "a022558_gf",
            ClosedGf::A220910 => "a220910_gf",
        }
    }
}

fn poly_pow(base: &[i64], exp: u32, order: usize) -> TruncSeries {
    let b = TruncSeries::polynomial(&base.iter().map(|&v| int(v)).collect::<Vec<_>>(), order);
    (0..exp).fold(TruncSeries::one(order), |acc, _| acc.mul(&b))
}

pub fn gf_closed_expand(name: ClosedGf, order: usize) -> Result<TruncSeries> {
    let half = rational::ratio(1, 2);
    let jet = match name {
        ClosedGf::Ex1 => {
            let radicand = poly_pow(&[1, -1], 1, order).mul(&poly_pow(&[1, -9], 3, order));
            TruncSeries::polynomial(&[int(1), int(18), int(-27)], order)
                .add(&radicand.sqrt1p()?)
                .scale(&half)
        }
        ClosedGf::A022558 => {
            let root = poly_pow(&[1, -8], 3, order).sqrt1p()?;
            TruncSeries::polynomial(&[int(1), int(20), int(-8)], order)
                .add(&root)
                .scale(&half)
                .div(&poly_pow(&[1, 1], 3, order))?
        }
        ClosedGf::A220910 => {
            let root = poly_pow(&[1, -12], 3, order).sqrt1p()?;
            TruncSeries::polynomial(&[int(1), int(36)], order)
                .add(&root)
                .scale(&half)
                .div(&poly_pow(&[1, 4], 2, order))?
        }
    };
    Ok(jet)
}

/// `(1 - 8z - 48z^2) M'(z) + (26 - 24z) M(z) - 27` on the A220910 jet of
/// the given order; vanishes identically (to order `N - 1`).
pub fn a220910_ode_residual(order: usize) -> Result<TruncSeries> {
    let m = gf_closed_expand(ClosedGf::A220910, order)?;
    let n = order.saturating_sub(1);
    let lhs = TruncSeries::polynomial(&[int(1), int(-8), int(-48)], n)
        .mul(&m.derivative())
        .add(&TruncSeries::polynomial(&[int(26), int(-24)], n).mul(&m.truncate(n)));
    Ok(lhs.sub(&TruncSeries::constant(int(27), n)))
}
