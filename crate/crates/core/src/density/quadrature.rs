//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use serde::Serialize;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights at `XGK[1], XGK[3], XGK[5], XGK[7]`.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    /// Relative floor, so that large moments are not held to an absolute
    /// target below their rounding error.
    pub rel_tol: f64,
    /// Maximum number of bisections applied to any subinterval.
    pub max_level: u32,
    /// Distance kept from each endpoint of the integration range.
    pub inset: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-13,
            max_level: 20,
            inset: 1e-12,
        }
    }
}

impl QuadConfig {
    pub fn with_abs_tol(mut self, tol: f64) -> Self {
        self.abs_tol = tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub est_error: f64,
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    level: u32,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kron += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Integrates `f` over `[a + inset, b - inset]`. The reported error also
/// counts the two skipped slivers, estimated from `f` at the inset points.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    let (lo, hi) = (a + cfg.inset, b - cfg.inset);
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "empty integration range [{a}, {b}]"
        )));
    }
    let (value, err) = kronrod(&f, lo, hi);
    let mut segments = vec![Segment {
        a: lo,
        b: hi,
        value,
        err,
        level: 0,
    }];
    loop {
        let total: f64 = segments.iter().map(|s| s.value).sum();
        let total_err: f64 = segments.iter().map(|s| s.err).sum();
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::NonConvergence {
                est_error: f64::INFINITY,
                tol: cfg.abs_tol,
            });
        }
        let tol = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if total_err <= tol {
            let sliver = cfg.inset * (f(lo).abs() + f(hi).abs());
            return Ok(QuadResult {
                value: total,
                est_error: total_err + if sliver.is_finite() { sliver } else { 0.0 },
            });
        }
        let worst = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| s.level < cfg.max_level)
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i);
        let Some(i) = worst else {
            return Err(Error::NonConvergence {
                est_error: total_err,
                tol,
            });
        };
        let seg = segments.swap_remove(i);
        let mid = 0.5 * (seg.a + seg.b);
        for (a, b) in [(seg.a, mid), (mid, seg.b)] {
            let (value, err) = kronrod(&f, a, b);
            segments.push(Segment {
                a,
                b,
                value,
                err,
                level: seg.level + 1,
            });
        }
    }
}
