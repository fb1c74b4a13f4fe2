//! `Psi_{p,t}` on `[0, pi]`, its minimum, and the lower boundary `g(p)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiPoint {
    pub p: f64,
    pub t: f64,
    pub phi: f64,
    pub value: f64,
    /// Largest pairwise gap between the three algebraic forms.
    pub deviation: f64,
}

/// Evaluates the three equal forms
/// `t sin((1-1/p)phi) + 2(1-t) sin(phi) cos(phi/p)`,
/// `(2-t) sin(phi) cos(phi/p) - t cos(phi) sin(phi/p)` and
/// `(1-t) sin((1+1/p)phi) + sin((1-1/p)phi)`.
pub fn psi(p: f64, t: f64, phi: f64) -> Result<PsiPoint> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Psi needs p >= 1, got {p}"
        )));
    }
    if !(0.0..=PI).contains(&phi) {
        return Err(Error::InvalidParameter(format!(
            "Psi is defined for phi in [0, pi], got {phi}"
        )));
    }
    let forms = psi_forms(p, t, phi);
    let deviation = (forms[0] - forms[1])
        .abs()
        .max((forms[0] - forms[2]).abs())
        .max((forms[1] - forms[2]).abs());
    Ok(PsiPoint {
        p,
        t,
        phi,
        value: forms[0],
        deviation,
    })
}

fn psi_forms(p: f64, t: f64, phi: f64) -> [f64; 3] {
    let a = phi / p;
    [
        t * (phi - a).sin() + 2.0 * (1.0 - t) * phi.sin() * a.cos(),
        (2.0 - t) * phi.sin() * a.cos() - t * phi.cos() * a.sin(),
        (1.0 - t) * (phi + a).sin() + (phi - a).sin(),
    ]
}

fn psi_value(p: f64, t: f64, phi: f64) -> f64 {
    psi_forms(p, t, phi)[0]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiMin {
    pub phi: f64,
    pub value: f64,
}

const GRID: usize = 512;
const GOLDEN_TOL: f64 = 1e-12;
const TIE_TOL: f64 = 1e-14;

fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > GOLDEN_TOL {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimum of `Psi_{p,t}` over `[0, pi]`: a 512-point scan, then golden
/// section inside every bracket around a local grid minimum.
pub fn psi_min(p: f64, t: f64) -> Result<PsiMin> {
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Psi needs p >= 1, got {p}"
        )));
    }
    let step = PI / (GRID - 1) as f64;
    let grid: Vec<f64> = (0..GRID).map(|i| i as f64 * step).collect();
    let values: Vec<f64> = grid.iter().map(|&phi| psi_value(p, t, phi)).collect();
    // Psi(0) = 0 always; an interior minimum that ties an endpoint wins.
    let mut best = if values[GRID - 1] < values[0] {
        PsiMin {
            phi: PI,
            value: values[GRID - 1],
        }
    } else {
        PsiMin {
            phi: 0.0,
            value: values[0],
        }
    };
    for i in 1..GRID - 1 {
        if values[i] <= values[i - 1] && values[i] <= values[i + 1] {
            let (phi, value) = golden_section(|x| psi_value(p, t, x), grid[i - 1], grid[i + 1]);
            let (phi, value) = if value <= values[i] {
                (phi, value)
            } else {
                (grid[i], values[i])
            };
            if value <= best.value + TIE_TOL {
                best = PsiMin {
                    phi,
                    value: value.min(best.value),
                };
            }
        }
    }
    Ok(best)
}

/// Feasibility slack on the minimum, absorbing rounding at a touching zero.
pub const FEASIBILITY_SLACK: f64 = 1e-12;
const G_TOL: f64 = 1e-9;

/// `g(p)`, the least `t` with `Psi_{p,t} >= 0` on `[0, pi]`, by bisection
/// over `t` in `[0, 1]`. Feasible `t` form an interval since `Psi` is affine
/// in `t`.
pub fn g_of_p(p: f64) -> Result<f64> {
    let feasible = |t: f64| -> Result<bool> { Ok(psi_min(p, t)?.value >= -FEASIBILITY_SLACK) };
    if feasible(0.0)? {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while hi - lo > G_TOL {
        let mid = 0.5 * (lo + hi);
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_special_values() {
        for t in [-0.5, 0.0, 0.3, 1.0, 1.7] {
            for phi in [0.0, 0.4, 1.3, 2.9, PI] {
                let v = psi(1.0, t, phi).unwrap().value;
                assert!((v - (1.0 - t) * (2.0 * phi).sin()).abs() < 1e-14);
            }
            for p in [1.0, 1.5, 2.0, 3.7] {
                let end = psi(p, t, PI).unwrap().value;
                assert!((end - t * (PI / p).sin()).abs() < 1e-14);
                let one = psi(p, 1.0, 0.8).unwrap().value;
                assert!((one - ((1.0 - 1.0 / p) * 0.8).sin()).abs() < 1e-14);
            }
        }
        assert!(psi(2.0, 0.5, -0.1).is_err());
        assert!(psi(2.0, 0.5, 3.2).is_err());
        assert!(psi(0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn three_forms_agree_on_grid() {
        for i in 0..10 {
            for j in 0..10 {
                for k in 0..10 {
                    let p = 1.0 + 0.45 * i as f64;
                    let t = -0.5 + 0.25 * j as f64;
                    let phi = PI * k as f64 / 9.0;
                    assert!(psi(p, t, phi).unwrap().deviation <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn psi_min_examples() {
        let m = psi_min(1.5, 0.2).unwrap();
        assert!(m.value.abs() <= 1e-9, "{m:?}");
        let star = 3.0 * (5f64 / 8.0).sqrt().asin();
        assert!((m.phi - star).abs() < 1e-5, "{} vs {star}", m.phi);
        assert!(psi_min(1.0, 1.0).unwrap().value.abs() < 1e-15);
        let m = psi_min(2.0, 0.0).unwrap();
        assert!(m.value.abs() < 1e-15);
        assert!(m.phi == 0.0 || (m.phi - PI).abs() < 1e-12);
    }

    #[test]
    fn g_examples() {
        assert!((g_of_p(1.5).unwrap() - 0.2).abs() <= 1e-6);
        assert!(g_of_p(2.0).unwrap() <= 1e-6);
        assert!(g_of_p(3.5).unwrap() <= 1e-6);
        assert!((g_of_p(1.0).unwrap() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn g_is_strictly_decreasing_on_one_two() {
        let values: Vec<f64> = (1..=19)
            .map(|k| g_of_p(1.0 + 0.05 * k as f64).unwrap())
            .collect();
        for w in values.windows(2) {
            assert!(w[0] - w[1] > 1e-6, "{values:?}");
        }
        assert!(values.iter().all(|&g| (0.0..=1.0).contains(&g)));
    }
}
