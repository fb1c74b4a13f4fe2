//! Floating-point densities `W_{p,r}` and `f_{p,t} = t W_{p,1} + (1 - t) W_{p,2}`
//! on `(0, c(p))`, evaluated through the angle parametrization
//! `x = rho(phi)`, `0 < phi < pi/p`, or through the elementary closed forms.

mod closed;
mod cumulant;
pub mod quadrature;

pub use closed::{w_closed, ClosedP};
pub use cumulant::{
    cumulant_measure_eval, cumulant_measure_moment, cumulant_support, CumulantCase,
};
pub use quadrature::{QuadConfig, QuadResult};

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensitySample {
    pub x: f64,
    /// Parametrization angle; `None` for closed-form evaluations.
    pub phi: Option<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportInfo {
    pub p: f64,
    pub upper: f64,
}

/// `c(p) = p^p (p - 1)^{1 - p}`.
pub fn support_c(p: f64) -> Result<SupportInfo> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "the support c(p) needs p > 1, got {p}"
        )));
    }
    Ok(SupportInfo {
        p,
        upper: p.powf(p) * (p - 1.0).powf(1.0 - p),
    })
}

fn check_angle(p: f64, phi: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::InvalidParameter(format!("need p > 1, got {p}")));
    }
    if !(phi > 0.0 && phi < PI / p) {
        return Err(Error::InvalidParameter(format!(
            "angle {phi} outside (0, pi/p) for p = {p}"
        )));
    }
    Ok(())
}

/// `rho(phi) = sin(p phi)^p / (sin(phi) sin((p - 1) phi)^{p - 1})`.
pub fn rho(p: f64, phi: f64) -> Result<f64> {
    check_angle(p, phi)?;
    Ok(rho_unchecked(p, phi))
}

fn rho_unchecked(p: f64, phi: f64) -> f64 {
    (p * phi).sin().powf(p) / (phi.sin() * ((p - 1.0) * phi).sin().powf(p - 1.0))
}

/// Logarithmic derivative form
/// `rho' = rho (p^2 cot(p phi) - cot(phi) - (p - 1)^2 cot((p - 1) phi))`.
pub fn rho_prime(p: f64, phi: f64) -> Result<f64> {
    check_angle(p, phi)?;
    Ok(rho_prime_unchecked(p, phi))
}

fn rho_prime_unchecked(p: f64, phi: f64) -> f64 {
    let q = p - 1.0;
    let cot = |a: f64| a.cos() / a.sin();
    rho_unchecked(p, phi) * (p * p * cot(p * phi) - cot(phi) - q * q * cot(q * phi))
}

/// `W_{p,r}` at the point `x = rho(phi)`.
pub fn w_at_angle(p: f64, r: f64, phi: f64) -> f64 {
    let q = p - 1.0;
    (q * phi).sin().powf(p - r - 1.0) * phi.sin() * (r * phi).sin()
        / (PI * (p * phi).sin().powf(p - r))
}

const SCAN_POINTS: usize = 64;
const ANGLE_TOL: f64 = 1e-13;

/// Solves `rho(phi) = x` on `(0, pi/p)`.
///
/// A 64-point scan first checks that `rho` is strictly decreasing and
/// supplies the bisection bracket.
pub fn solve_angle(p: f64, x: f64) -> Result<f64> {
    let upper = support_c(p)?.upper;
    if !(x > 0.0 && x < upper) {
        return Err(Error::OutOfSupport { x, upper });
    }
    let end = PI / p;
    let grid: Vec<f64> = (1..=SCAN_POINTS)
        .map(|k| end * k as f64 / (SCAN_POINTS + 1) as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|&phi| rho_unchecked(p, phi)).collect();
    if let Some(w) = values.windows(2).position(|w| !(w[1] < w[0])) {
        return Err(Error::Bracketing(format!(
            "rho is not strictly decreasing near phi = {} for p = {p}",
            grid[w]
        )));
    }
    let (mut lo, mut hi) = if x >= values[0] {
        (0.0, grid[0])
    } else if x <= values[SCAN_POINTS - 1] {
        (grid[SCAN_POINTS - 1], end)
    } else {
        let k = values
            .windows(2)
            .position(|w| w[0] >= x && x >= w[1])
            .ok_or_else(|| Error::Bracketing(format!("no bracket for x = {x}")))?;
        (grid[k], grid[k + 1])
    };
    while hi - lo > ANGLE_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if rho_unchecked(p, mid) > x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `W_{p,r}(x)` through the angle parametrization.
pub fn w_param(p: f64, r: f64, x: f64) -> Result<DensitySample> {
    let phi = solve_angle(p, x)?;
    Ok(DensitySample {
        x,
        phi: Some(phi),
        value: w_at_angle(p, r, phi),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Parametric,
    Closed,
}

/// `f_{p,t}` at the point `x = rho(phi)`.
pub fn f_at_angle(p: f64, t: f64, phi: f64) -> f64 {
    t * w_at_angle(p, 1.0, phi) + (1.0 - t) * w_at_angle(p, 2.0, phi)
}

pub fn f_pt(params: &Params, x: f64, route: Route) -> Result<DensitySample> {
    let (p, t) = (params.p_f64(), params.t_f64());
    match route {
        Route::Parametric => {
            let phi = solve_angle(p, x)?;
            Ok(DensitySample {
                x,
                phi: Some(phi),
                value: f_at_angle(p, t, phi),
            })
        }
        Route::Closed => {
            let cp = ClosedP::from_p(p).ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "no closed-form density for p = {p}; use p in {{2, 3, 3/2}}"
                ))
            })?;
            let value = t * w_closed(cp, 1, x)? + (1.0 - t) * w_closed(cp, 2, x)?;
            Ok(DensitySample {
                x,
                phi: None,
                value,
            })
        }
    }
}

/// `int_0^{c(p)} x^n f_{p,t}(x) dx`, integrated in the angle variable as
/// `int rho^n f_{p,t}(rho) |rho'| dphi` over `(0, pi/p)`.
pub fn moment_quadrature(params: &Params, n: u32, cfg: &QuadConfig) -> Result<QuadResult> {
    let (p, t) = (params.p_f64(), params.t_f64());
    support_c(p)?;
    let integrand = |phi: f64| {
        rho_unchecked(p, phi).powi(n as i32)
            * f_at_angle(p, t, phi)
            * rho_prime_unchecked(p, phi).abs()
    };
    quadrature::integrate(integrand, 0.0, PI / p, cfg)
}
