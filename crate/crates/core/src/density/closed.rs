//! Elementary closed forms of `W_{p,r}` for `p` in {2, 3, 3/2} and `r` in {1, 2}.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedP {
    Two,
    Three,
    ThreeHalves,
}

impl ClosedP {
    pub const ALL: [ClosedP; 3] = [ClosedP::Two, ClosedP::Three, ClosedP::ThreeHalves];

    pub fn from_p(p: f64) -> Option<Self> {
        if p == 2.0 {
            Some(ClosedP::Two)
        } else if p == 3.0 {
            Some(ClosedP::Three)
        } else if p == 1.5 {
            Some(ClosedP::ThreeHalves)
        } else {
            None
        }
    }

    pub fn value(self) -> f64 {
        match self {
            ClosedP::Two => 2.0,
            ClosedP::Three => 3.0,
            ClosedP::ThreeHalves => 1.5,
        }
    }

    /// Right end of the support: 4, 27/4 and 3 sqrt(3) / 2.
    pub fn upper(self) -> f64 {
        match self {
            ClosedP::Two => 4.0,
            ClosedP::Three => 27.0 / 4.0,
            ClosedP::ThreeHalves => 1.5 * 3f64.sqrt(),
        }
    }
}

pub fn w_closed(p: ClosedP, r: u32, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < p.upper()) {
        return Err(Error::OutOfSupport {
            x,
            upper: p.upper(),
        });
    }
    let sqrt3 = 3f64.sqrt();
    let value = match (p, r) {
        (ClosedP::Two, 1) => ((4.0 - x) / x).sqrt() / (2.0 * PI),
        (ClosedP::Two, 2) => (x * (4.0 - x)).sqrt() / (2.0 * PI),
        (ClosedP::Three, 1) => {
            let u = 1.0 + (1.0 - 4.0 * x / 27.0).sqrt();
            let v = (4.0 * x).cbrt();
            (3.0 * u.powf(2.0 / 3.0) - v) / (sqrt3 * PI * v * v * u.cbrt())
        }
        (ClosedP::Three, 2) => {
            let u = 1.0 + (1.0 - 4.0 * x / 27.0).sqrt();
            let v = (4.0 * x).cbrt();
            (9.0 * u.powf(4.0 / 3.0) - v * v) / (2.0 * PI * 3f64.powf(1.5) * v * u.powf(2.0 / 3.0))
        }
        (ClosedP::ThreeHalves, r @ (1 | 2)) => {
            let s = (1.0 - 4.0 * x * x / 27.0).sqrt();
            let third = (1.0 + s).cbrt() - (1.0 - s).cbrt();
            let two_thirds = (1.0 + s).powf(2.0 / 3.0) - (1.0 - s).powf(2.0 / 3.0);
            let y = (2.0 * x).cbrt();
            if r == 1 {
                sqrt3 * third / (2.0 * y * PI) + sqrt3 * y * two_thirds / (4.0 * PI)
            } else {
                sqrt3 * (2.0 * x).powf(5.0 / 3.0) / (8.0 * PI) * third
                    + sqrt3 * y * (x * x - 1.0) / (4.0 * PI) * two_thirds
            }
        }
        _ => {
            return Err(Error::InvalidParameter(format!(
                "closed forms exist for r = 1 or 2, not {r}"
            )))
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marchenko_pastur_and_semicircle() {
        assert!((w_closed(ClosedP::Two, 1, 2.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert!((w_closed(ClosedP::Two, 2, 2.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        for i in 1..100 {
            let x = 4.0 * i as f64 / 100.0;
            let w = w_closed(ClosedP::Two, 2, x).unwrap();
            assert!(w >= 0.0);
            // symmetric about the centre 2
            assert!((w - w_closed(ClosedP::Two, 2, 4.0 - x).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn three_halves_r2_goes_negative() {
        let upper = ClosedP::ThreeHalves.upper();
        let min = (1..400)
            .map(|i| w_closed(ClosedP::ThreeHalves, 2, upper * i as f64 / 400.0).unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(min < 0.0);
    }

    #[test]
    fn rejects_out_of_support_and_bad_r() {
        assert!(w_closed(ClosedP::Three, 1, 6.75).is_err());
        assert!(w_closed(ClosedP::Three, 1, 0.0).is_err());
        assert!(w_closed(ClosedP::Two, 3, 1.0).is_err());
        assert_eq!(ClosedP::from_p(2.5), None);
    }
}
