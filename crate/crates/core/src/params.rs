use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// A `(p, t)` point of the deformed Fuss family.
#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    Exact { p: Rational, t: Rational },
    Float { p: f64, t: f64 },
}

impl Params {
    pub fn exact(p: Rational, t: Rational) -> Self {
        Params::Exact { p, t }
    }

    pub fn float(p: f64, t: f64) -> Result<Self> {
        if !p.is_finite() || !t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "float parameters must be finite, got p={p}, t={t}"
            )));
        }
        Ok(Params::Float { p, t })
    }

    /// Shorthand for `Params::exact(num_p/den_p, num_t/den_t)`.
    pub fn ratios(p: (i64, i64), t: (i64, i64)) -> Self {
        Params::exact(rational::ratio(p.0, p.1), rational::ratio(t.0, t.1))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Params::Exact { .. } => Mode::Exact,
            Params::Float { .. } => Mode::Float,
        }
    }

    pub fn require_exact(&self) -> Result<(&Rational, &Rational)> {
        match self {
            Params::Exact { p, t } => Ok((p, t)),
            Params::Float { .. } => Err(Error::InvalidParameter(
                "operation requires exact (rational) parameters".into(),
            )),
        }
    }

    pub fn p_f64(&self) -> f64 {
        match self {
            Params::Exact { p, .. } => rational::to_f64(p),
            Params::Float { p, .. } => *p,
        }
    }

    pub fn t_f64(&self) -> f64 {
        match self {
            Params::Exact { t, .. } => rational::to_f64(t),
            Params::Float { t, .. } => *t,
        }
    }

    pub fn to_float(&self) -> Params {
        Params::Float {
            p: self.p_f64(),
            t: self.t_f64(),
        }
    }

    /// Text form of `p` (`num/den` in exact mode).
    pub fn p_text(&self) -> String {
        match self {
            Params::Exact { p, .. } => rational::to_text(p),
            Params::Float { p, .. } => format!("{p}"),
        }
    }

    pub fn t_text(&self) -> String {
        match self {
            Params::Exact { t, .. } => rational::to_text(t),
            Params::Float { t, .. } => format!("{t}"),
        }
    }
}
