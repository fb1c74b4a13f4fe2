//! Densities whose moments are free cumulants (or rescalings of them), and
//! the two pattern-avoidance sequences expressed as moment integrals.

use std::f64::consts::PI;

use super::quadrature::{integrate, QuadConfig, QuadResult};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CumulantCase {
    /// Moments `1, r_1(2,t), r_2(2,t), ...` for `1 < t <= 4/3`.
    P2,
    /// Moments `1, r_1(3,t), r_2(3,t), ...` for `1/2 <= t <= 3/2`.
    P3,
    /// Moments are A220910 on `(0, 12)`.
    A220910,
    /// Moments are A022558 on `(0, 8)`.
    A022558,
}

impl CumulantCase {
    pub fn name(self) -> &'static str {
        match self {
            CumulantCase::P2 => "p2",
            CumulantCase::P3 => "p3",
            CumulantCase::A220910 => "a220910",
            CumulantCase::A022558 => "a022558",
        }
    }
}

/// Support interval of the case; `t` is ignored for the fixed sequences.
pub fn cumulant_support(case: CumulantCase, t: f64) -> Result<(f64, f64)> {
    match case {
        CumulantCase::P2 => {
            if !(t > 1.0 && t <= 4.0 / 3.0) {
                return Err(Error::InvalidParameter(format!(
                    "the p = 2 cumulant density needs 1 < t <= 4/3, got {t}"
                )));
            }
            let w = 2.0 * (t * t - t).sqrt();
            Ok((2.0 * t - 1.0 - w, 2.0 * t - 1.0 + w))
        }
        CumulantCase::P3 => {
            if !(0.5..=1.5).contains(&t) {
                return Err(Error::InvalidParameter(format!(
                    "the p = 3 cumulant density needs 1/2 <= t <= 3/2, got {t}"
                )));
            }
            Ok((0.0, 4.0 * t))
        }
        CumulantCase::A220910 => Ok((0.0, 12.0)),
        CumulantCase::A022558 => Ok((0.0, 8.0)),
    }
}

fn density(case: CumulantCase, t: f64, x: f64) -> f64 {
    match case {
        CumulantCase::P2 => {
            let arg = 4.0 * t * (t - 1.0) - (x - 2.0 * t + 1.0).powi(2);
            (1.0 - t * x + x) * arg.max(0.0).sqrt() / (2.0 * PI * (t - 1.0) * x.powi(3))
        }
        CumulantCase::P3 => {
            let s = t - 1.0;
            (t - x * s * s) * (4.0 * t - x).max(0.0).sqrt()
                / (2.0 * PI * (t * x - x + 1.0).powi(2) * x.sqrt())
        }
        CumulantCase::A220910 => {
            (12.0 - x).max(0.0).powf(1.5) / (2.0 * PI * (x + 4.0).powi(2) * x.sqrt())
        }
        CumulantCase::A022558 => {
            (x * (8.0 - x).max(0.0).powi(3)).sqrt() / (2.0 * PI * (x + 1.0).powi(3))
        }
    }
}

pub fn cumulant_measure_eval(case: CumulantCase, t: f64, x: f64) -> Result<f64> {
    let (lo, hi) = cumulant_support(case, t)?;
    if !(x > lo && x < hi) {
        return Err(Error::InvalidParameter(format!(
            "x = {x} outside the support ({lo}, {hi}) of case {}",
            case.name()
        )));
    }
    Ok(density(case, t, x))
}

/// `int x^n density(x) dx` over the support, after the substitution
/// `x = lo + (hi - lo)(1 - cos theta)/2`, which absorbs the square-root
/// behaviour at both ends.
pub fn cumulant_measure_moment(
    case: CumulantCase,
    t: f64,
    n: u32,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    let (lo, hi) = cumulant_support(case, t)?;
    let half = 0.5 * (hi - lo);
    let integrand = |theta: f64| {
        let x = lo + half * (1.0 - theta.cos());
        x.powi(n as i32) * density(case, t, x) * half * theta.sin()
    };
    integrate(integrand, 0.0, PI, cfg)
}
