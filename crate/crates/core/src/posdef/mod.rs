//! Positive definiteness of `a_n(p, t)`: the `Psi` criterion and `g(p)`,
//! exact Hankel sections, the `(p, t)` classification, and free infinite
//! divisibility through the shifted cumulant sequence.

mod hankel;
mod psi;

pub use hankel::{hankel_matrix, hankel_report, hankel_report_values, HankelVerdict, Verdict};
pub use psi::{g_of_p, psi, psi_min, PsiMin, PsiPoint, FEASIBILITY_SLACK};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_seq::deformed_fuss;
use crate::params::Params;
use crate::rational::{self, int, Rational};
use crate::series;

pub const DEFAULT_HANKEL_SIZE: usize = 8;
pub const MAX_HANKEL_SIZE: usize = 16;

/// Points within this distance of an edge of `[g(p), 2p/(p+1)]` count as inside.
pub const BOUNDARY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub params: Params,
    pub g: f64,
    pub theorem_verdict: bool,
    pub hankel: HankelVerdict,
    /// The Hankel section is indefinite at a point the theorem places in
    /// the closed domain.
    pub contradiction: bool,
}

/// `2p / (p + 1)`, the upper edge of the domain.
pub fn upper_edge(p: &Rational) -> Rational {
    int(2) * p / (p + int(1))
}

pub fn classify_point(params: &Params, m: usize) -> Result<Classification> {
    let (p, t) = params.require_exact()?;
    if *p < int(1) {
        return Err(Error::InvalidParameter(format!(
            "classification covers p >= 1 only, got p = {}",
            rational::to_text(p)
        )));
    }
    if m == 0 || m > MAX_HANKEL_SIZE {
        return Err(Error::InvalidParameter(format!(
            "Hankel size must be in 1..={MAX_HANKEL_SIZE}, got {m}"
        )));
    }
    let g = g_of_p(rational::to_f64(p))?;
    let tf = rational::to_f64(t);
    let upper = upper_edge(p);
    let theorem_verdict = tf >= g - BOUNDARY_TOL && tf <= rational::to_f64(&upper) + BOUNDARY_TOL;
    let values = (0..(2 * m - 1) as u64)
        .map(|n| deformed_fuss(params, n))
        .collect::<Result<Vec<_>>>()?;
    let hankel = hankel_report_values(&values, m)?;
    let inside_closed = tf >= g - 1e-9 && *t <= upper;
    Ok(Classification {
        params: params.clone(),
        g,
        theorem_verdict,
        contradiction: hankel.verdict.is_indefinite() && inside_closed,
        hankel,
    })
}

/// Hankel verdict of the shifted free cumulants `(r_2, r_3, ...)` of
/// `eta(p, t)` at size `m`.
pub fn infdiv_check(p: u32, t: &Rational, m: usize) -> Result<HankelVerdict> {
    if p != 2 && p != 3 {
        return Err(Error::InvalidParameter(format!(
            "infinite divisibility is checked for p = 2 or 3, got {p}"
        )));
    }
    let pr = int(p as i64);
    if *t < Rational::zero() || *t > upper_edge(&pr) {
        return Err(Error::InvalidParameter(format!(
            "t = {} lies outside the positive-definiteness domain [0, {}] for p = {p}",
            rational::to_text(t),
            rational::to_text(&upper_edge(&pr))
        )));
    }
    let params = Params::exact(pr, t.clone());
    let moments = series::moment_series(&params, 2 * m)?;
    let cumulants = series::cumulants_from_moments(&moments)?;
    hankel_report_values(&cumulants.values[1..], m)
}

/// Smallest `n` bound used to witness `a_n(p, t) < 0` above the upper edge:
/// `ceil(2 / (t + pt - 2p)) + 1`.
pub fn negativity_horizon(p: &Rational, t: &Rational) -> Option<u64> {
    let slope = t + p * t - int(2) * p;
    if slope <= Rational::zero() {
        return None;
    }
    let bound = (int(2) / slope).ceil();
    Some(rational::to_f64(&bound) as u64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_seq::necessary_gap;
    use crate::rational::ratio;

    #[test]
    fn classify_examples() {
        let c = classify_point(&Params::ratios((2, 1), (7, 5)), 8).unwrap();
        assert!(!c.theorem_verdict);
        assert_eq!(c.hankel.verdict, Verdict::Indefinite);
        assert!(deformed_fuss(&Params::ratios((2, 1), (7, 5)), 12).unwrap() < int(0));

        let c = classify_point(&Params::ratios((5, 1), (5, 3)), 6).unwrap();
        assert!(c.theorem_verdict);
        assert_eq!(c.hankel.verdict, Verdict::PositiveDefinite);

        let c = classify_point(&Params::ratios((3, 2), (1, 5)), 6).unwrap();
        assert!(c.theorem_verdict);
        assert!(!c.hankel.verdict.is_indefinite());
        assert!(!c.contradiction);

        assert!(classify_point(&Params::ratios((1, 2), (1, 2)), 4).is_err());
        assert!(classify_point(&Params::float(2.0, 0.5).unwrap(), 4).is_err());
    }

    #[test]
    fn infdiv_examples() {
        let v = infdiv_check(2, &ratio(1, 2), 2).unwrap();
        assert_eq!(v.minors[1], ratio(-21, 64));
        assert_eq!(v.verdict, Verdict::Indefinite);
        assert_eq!(
            infdiv_check(2, &int(0), 4).unwrap().verdict,
            Verdict::PositiveSemidefinite
        );
        assert!(!infdiv_check(3, &int(1), 5).unwrap().verdict.is_indefinite());
        assert!(infdiv_check(2, &ratio(3, 2), 3).is_err());
        assert!(infdiv_check(4, &int(1), 3).is_err());
    }

    #[test]
    fn necessary_condition_coherence() {
        for i in 0..8 {
            for j in 0..8 {
                let params = Params::exact(ratio(4 + i, 4), ratio(j * 3 - 2, 8));
                let v = classify_point(&params, 3).unwrap();
                if !v.hankel.verdict.is_indefinite() {
                    assert!(necessary_gap(&params).unwrap() >= int(0));
                }
            }
        }
    }

    #[test]
    fn above_upper_edge_moments_turn_negative() {
        for (p, t) in [
            ((2, 1), (7, 5)),
            ((3, 1), (8, 5)),
            ((3, 2), (13, 10)),
            ((5, 1), (17, 10)),
        ] {
            let (p, t) = (ratio(p.0, p.1), ratio(t.0, t.1));
            let horizon = negativity_horizon(&p, &t).unwrap();
            let params = Params::exact(p, t);
            assert!((0..=horizon).any(|n| deformed_fuss(&params, n).unwrap() < int(0)));
        }
        assert_eq!(negativity_horizon(&int(2), &int(1)), None);
    }
}
