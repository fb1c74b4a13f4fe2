//! Reproduction checks for every published number, grouped into eleven
//! criteria. Each criterion runs independently and reports pass/fail with
//! the first few failure messages.

use std::fmt;
use std::time::{Duration, Instant};

use crate::density::{
    self, cumulant_measure_moment, quadrature, w_closed, w_param, ClosedP, CumulantCase,
    QuadConfig, Route,
};
use crate::error::Result;
use crate::exact_seq::{self, A220910Method, TransformDirection};
use crate::params::Params;
use crate::posdef::{self, Verdict};
use crate::rational::{self, int, ratio, Rational};
use crate::series::{self, ClosedGf, TruncSeries, DEFAULT_ORDER};
use crate::table::SeqTable;

pub const A220910_LISTING: [i64; 11] =
    [1, 1, 3, 14, 83, 570, 4318, 35068, 299907, 2668994, 24513578];
pub const EX1_LISTING: [i64; 11] = [1, 2, 5, 16, 64, 304, 1632, 9552, 59520, 388720, 2632864];
pub const A022558_LISTING: [i64; 11] = [1, 1, 2, 6, 23, 103, 512, 2740, 15485, 91245, 555662];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Exact,
    Numeric,
    Posdef,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::Exact => "exact",
            Category::Numeric => "numeric",
            Category::Posdef => "posdef",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub series_order: usize,
    pub hankel_size: usize,
    pub quad: QuadConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            series_order: DEFAULT_ORDER,
            hankel_size: posdef::DEFAULT_HANKEL_SIZE,
            quad: QuadConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub category: Category,
    pub passed: bool,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] C{:<2} {:<8} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.category.name(),
            self.title,
            self.elapsed.as_secs_f64()
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n       - {msg}")?;
        }
        Ok(())
    }
}

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub category: Category,
    run: fn(&VerifyConfig, &mut Vec<String>) -> Result<()>,
    /// Wall-clock budget, when the criterion states one.
    budget: Option<Duration>,
}

impl Criterion {
    pub fn run(&self, cfg: &VerifyConfig) -> Outcome {
        let start = Instant::now();
        let mut failures = Vec::new();
        if let Err(e) = (self.run)(cfg, &mut failures) {
            failures.push(format!("error: {e}"));
        }
        let elapsed = start.elapsed();
        if let Some(budget) = self.budget {
            if elapsed > budget {
                failures.push(format!(
                    "runtime {:.2}s exceeds budget {:.0}s",
                    elapsed.as_secs_f64(),
                    budget.as_secs_f64()
                ));
            }
        }
        Outcome {
            id: self.id,
            title: self.title,
            category: self.category,
            passed: failures.is_empty(),
            failures,
            elapsed,
        }
    }
}

fn expect(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

fn show(values: &[Rational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "A220910 by four methods",
            category: Category::Exact,
            run: c1_a220910,
            budget: Some(Duration::from_secs(1)),
        },
        Criterion {
            id: 2,
            title: "3^n r_n(2, 4/3) listing",
            category: Category::Exact,
            run: c2_scaled_cumulants,
            budget: None,
        },
        Criterion {
            id: 3,
            title: "binomial transform gives A022558",
            category: Category::Exact,
            run: c3_binomial_transform,
            budget: None,
        },
        Criterion {
            id: 4,
            title: "cumulant polynomials of eta(2, t)",
            category: Category::Exact,
            run: c4_cumulant_polynomials,
            budget: None,
        },
        Criterion {
            id: 5,
            title: "generating-function identities",
            category: Category::Exact,
            run: c5_gf_identities,
            budget: None,
        },
        Criterion {
            id: 6,
            title: "S/R transform consistency",
            category: Category::Exact,
            run: c6_transforms,
            budget: None,
        },
        Criterion {
            id: 7,
            title: "g(p) values and monotonicity",
            category: Category::Numeric,
            run: c7_g_function,
            budget: Some(Duration::from_secs(5)),
        },
        Criterion {
            id: 8,
            title: "parametric vs closed-form densities",
            category: Category::Numeric,
            run: c8_densities,
            budget: None,
        },
        Criterion {
            id: 9,
            title: "moment and cumulant quadrature",
            category: Category::Numeric,
            run: c9_quadrature,
            budget: Some(Duration::from_secs(30)),
        },
        Criterion {
            id: 10,
            title: "positivity classification",
            category: Category::Posdef,
            run: c10_positivity,
            budget: None,
        },
        Criterion {
            id: 11,
            title: "A220910 recurrence and differential equation",
            category: Category::Exact,
            run: c11_recurrence,
            budget: None,
        },
    ]
}

/// Runs the criteria accepted by `filter`, in order.
pub fn run_selected<F: Fn(&Criterion) -> bool>(cfg: &VerifyConfig, filter: F) -> Vec<Outcome> {
    criteria()
        .iter()
        .filter(|c| filter(c))
        .map(|c| c.run(cfg))
        .collect()
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<Outcome> {
    run_selected(cfg, |_| true)
}

fn c1_a220910(_: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let listing = ints(&A220910_LISTING);
    let reference = exact_seq::a220910_table(51, A220910Method::Recurrence)?;
    for method in A220910Method::ALL {
        let table = exact_seq::a220910_table(51, method)?;
        expect(f, table[..11] == listing[..], || {
            format!("{} listing: {}", method.name(), show(&table[..11]))
        });
        expect(f, table == reference, || {
            format!(
                "{} disagrees with the recurrence for some n <= 50",
                method.name()
            )
        });
    }
    Ok(())
}

/// `3^n r_n(2, 4/3)` with the `n = 0` term set to one.
fn scaled_cumulants(jet: &TruncSeries, len: usize) -> Vec<Rational> {
    let mut out = jet.rescale(&int(3)).into_coeffs();
    out.truncate(len);
    out[0] = int(1);
    out
}

fn scaled_cumulant_sequence(order: usize) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let t = ratio(4, 3);
    let m = series::moment_series(&Params::exact(int(2), t.clone()), order)?;
    let via_moments = scaled_cumulants(&series::cumulants_from_moments(&m)?.r_jet(), order + 1);
    let via_closed = scaled_cumulants(&series::r_series_closed(2, &t, order)?.jet, order + 1);
    Ok((via_moments, via_closed))
}

fn c2_scaled_cumulants(cfg: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let listing = ints(&EX1_LISTING);
    let order = cfg.series_order.max(10);
    let (via_moments, via_closed) = scaled_cumulant_sequence(order)?;
    expect(f, via_moments[..11] == listing[..], || {
        format!("moment route: {}", show(&via_moments[..11]))
    });
    expect(f, via_closed[..11] == listing[..], || {
        format!("closed route: {}", show(&via_closed[..11]))
    });
    let gf = series::gf_closed_expand(ClosedGf::Ex1, order)?;
    expect(f, gf.coeffs() == via_moments.as_slice(), || {
        "ex1_gf jet differs from the cumulant sequence".into()
    });
    Ok(())
}

fn c3_binomial_transform(cfg: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let order = cfg.series_order.max(10);
    let (a, _) = scaled_cumulant_sequence(order)?;
    let b =
        exact_seq::binomial_transform(&SeqTable::new("ex1", 0, a)?, TransformDirection::Forward)?;
    expect(f, b.values[..11] == ints(&A022558_LISTING)[..], || {
        format!("binomial transform: {}", show(&b.values[..11]))
    });
    let gf = series::gf_closed_expand(ClosedGf::A022558, order)?;
    expect(f, gf.coeffs() == b.values.as_slice(), || {
        "a022558_gf jet differs from the binomial transform".into()
    });
    Ok(())
}

fn c4_cumulant_polynomials(_: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    for t in [int(0), ratio(1, 2), int(1), ratio(7, 6), ratio(4, 3)] {
        let m = series::moment_series(&Params::exact(int(2), t.clone()), 4)?;
        let r = series::cumulants_from_moments(&m)?.values;
        let t2 = &t * &t;
        let t3 = &t2 * &t;
        let t4 = &t3 * &t;
        let want = [
            int(2) - &t,
            int(1) + &t - &t2,
            int(3) * &t2 - int(2) * &t3,
            int(-4) * &t2 + int(10) * &t3 - int(5) * &t4,
        ];
        expect(f, r[..4] == want[..], || {
            format!("t = {t}: cumulants {}", show(&r))
        });
        let disc = &r[1] * &r[3] - &r[2] * &r[2];
        let identity = &t2 * (&t - int(1)) * (&t - int(2)) * (&t2 - int(2));
        expect(f, disc == identity, || {
            format!("t = {t}: r2 r4 - r3^2 = {disc}")
        });
    }
    Ok(())
}

fn c5_gf_identities(cfg: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let order = cfg.series_order.max(DEFAULT_ORDER);
    let one_plus_z = TruncSeries::polynomial(&ints(&[1, 1]), order);
    for p in [int(2), int(3), ratio(3, 2), ratio(5, 2)] {
        let b = series::bp_series(&p, &int(1), order);
        let rhs = TruncSeries::one(order).add(&b.pow1p(&p)?.shift_up(1));
        expect(f, b == rhs, || format!("p = {p}: B != 1 + z B^p"));
        let sub = b.compose(&series::fuss_substitution(&p, order)?)?;
        expect(f, sub == one_plus_z, || {
            format!("p = {p}: B(z(1+z)^-p) != 1 + z")
        });
        for r in [ratio(1, 2), int(2), int(3), int(-1), ratio(5, 3)] {
            let lambert = b.pow1p(&r)?;
            let raney: Vec<_> = (0..=order as u64)
                .map(|n| exact_seq::raney(&p, &r, n))
                .collect();
            expect(f, lambert.coeffs() == raney.as_slice(), || {
                format!("p = {p}, r = {r}: B^r coefficients are not Raney numbers")
            });
        }
    }
    Ok(())
}

fn c6_transforms(cfg: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let order = cfg.series_order.max(12);
    let grid = [
        ((2, 1), (1, 2)),
        ((2, 1), (1, 1)),
        ((2, 1), (4, 3)),
        ((3, 1), (1, 1)),
        ((3, 1), (3, 2)),
        ((3, 2), (1, 5)),
    ];
    for (p, t) in grid {
        let params = Params::ratios(p, t);
        let label = format!("(p, t) = ({}, {})", params.p_text(), params.t_text());
        let m = series::moment_series(&params, order + 1)?;
        let r = series::cumulants_from_moments(&m.truncate(order))?.r_jet();
        let s = series::s_series_from_moments(&m)?;
        let zs = s.shift_up(1);
        let rs = r.compose(&zs)?;
        expect(f, rs == TruncSeries::identity(order), || {
            format!("{label}: R(zS(z)) != z")
        });
        let s_closed = series::s_series_closed(&params, order)?;
        expect(f, s_closed == s, || {
            format!("{label}: closed S differs from moment route")
        });
        if p.1 == 1 && (p.0 == 2 || p.0 == 3) {
            let (_, t) = params.require_exact()?;
            let closed = series::r_series_closed(p.0 as u32, t, order)?;
            expect(f, closed.jet == r, || {
                format!("{label}: closed R differs from cumulants")
            });
        }
    }
    Ok(())
}

fn c7_g_function(_: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let g32 = posdef::g_of_p(1.5)?;
    expect(f, (g32 - 0.2).abs() <= 1e-6, || format!("g(3/2) = {g32}"));
    let g2 = posdef::g_of_p(2.0)?;
    expect(f, g2 <= 1e-6, || format!("g(2) = {g2}"));
    let g1 = posdef::g_of_p(1.0)?;
    expect(f, (g1 - 1.0).abs() <= 1e-6, || format!("g(1) = {g1}"));
    let values = (1..=19)
        .map(|k| posdef::g_of_p(1.0 + 0.05 * k as f64))
        .collect::<Result<Vec<_>>>()?;
    for (k, w) in values.windows(2).enumerate() {
        expect(f, w[0] - w[1] > 1e-6, || {
            format!(
                "g not strictly decreasing at p = {:.2}: {} -> {}",
                1.05 + 0.05 * k as f64,
                w[0],
                w[1]
            )
        });
    }
    expect(f, values.iter().all(|g| (0.0..=1.0).contains(g)), || {
        "g outside [0, 1]".into()
    });
    Ok(())
}

fn c8_densities(_: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    for cp in ClosedP::ALL {
        for r in [1u32, 2] {
            let mut worst = 0f64;
            for i in 0..50 {
                let x = cp.upper() * (i as f64 + 0.5) / 50.0;
                let a = w_param(cp.value(), r as f64, x)?.value;
                let b = w_closed(cp, r, x)?;
                worst = worst.max((a - b).abs());
            }
            expect(f, worst <= 1e-10, || {
                format!(
                    "W_{{{},{r}}}: max parametric/closed gap {worst:e}",
                    cp.value()
                )
            });
        }
    }
    let upper = ClosedP::ThreeHalves.upper();
    let negative = (1..400).any(|i| {
        w_closed(ClosedP::ThreeHalves, 2, upper * i as f64 / 400.0).is_ok_and(|w| w < 0.0)
    });
    expect(f, negative, || "W_{3/2,2} never negative".into());
    let boundary = Params::ratios((3, 2), (1, 5));
    for i in 0..400 {
        let x = upper * (i as f64 + 0.5) / 400.0;
        let v = density::f_pt(&boundary, x, Route::Parametric)?.value;
        expect(f, v >= -1e-12, || format!("f_{{3/2,1/5}}({x}) = {v:e}"));
    }
    Ok(())
}

/// Density on `[1, 9]` whose moments are `3^n r_n(2, 4/3)`.
fn scaled_cumulant_density(x: f64) -> f64 {
    ((x - 1.0) * (9.0 - x).powi(3)).max(0.0).sqrt() / (2.0 * std::f64::consts::PI * x.powi(3))
}

fn c9_quadrature(cfg: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    for (p, t) in [
        ((2, 1), (1, 2)),
        ((2, 1), (4, 3)),
        ((3, 1), (1, 1)),
        ((3, 2), (1, 5)),
    ] {
        let params = Params::ratios(p, t);
        for n in 0..=10u32 {
            let exact = rational::to_f64(&exact_seq::deformed_fuss(&params, n as u64)?);
            let q = density::moment_quadrature(&params, n, &cfg.quad)?;
            let rel = (q.value / exact - 1.0).abs();
            expect(f, rel <= 1e-8, || {
                format!(
                    "({}, {}) n = {n}: relative error {rel:e}",
                    params.p_text(),
                    params.t_text()
                )
            });
        }
    }
    let half_span = 4.0;
    for n in 0..=8u32 {
        let want = EX1_LISTING[n as usize] as f64;
        let direct = quadrature::integrate(
            |theta: f64| {
                let x = 5.0 - half_span * theta.cos();
                x.powi(n as i32) * scaled_cumulant_density(x) * half_span * theta.sin()
            },
            0.0,
            std::f64::consts::PI,
            &cfg.quad,
        )?;
        let rel = (direct.value / want - 1.0).abs();
        expect(f, rel <= 1e-7, || {
            format!("[1, 9] density integral n = {n}: relative error {rel:e}")
        });
        let scaled = cumulant_measure_moment(CumulantCase::P2, 4.0 / 3.0, n, &cfg.quad)?.value
            * 3f64.powi(n as i32);
        let rel = (scaled / want - 1.0).abs();
        expect(f, rel <= 1e-7, || {
            format!("p2 cumulant measure n = {n}: relative error {rel:e}")
        });
        let want = A220910_LISTING[n as usize] as f64;
        let got = cumulant_measure_moment(CumulantCase::A220910, 0.0, n, &cfg.quad)?.value;
        let rel = (got / want - 1.0).abs();
        expect(f, rel <= 1e-7, || {
            format!("A220910 integral n = {n}: relative error {rel:e}")
        });
    }
    Ok(())
}

fn c10_positivity(cfg: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let catalan: Vec<_> = (0..19)
        .map(|n| exact_seq::raney(&int(2), &int(1), n))
        .collect();
    for m in 1..=10 {
        let v = posdef::hankel_report_values(&catalan, m)?;
        expect(f, v.minors.iter().all(|d| *d == int(1)), || {
            format!("Catalan minors at m = {m}")
        });
    }
    let m = cfg.hankel_size;
    for i in 0..20i64 {
        for j in 0..20i64 {
            let params = Params::exact(int(1) + ratio(2 * i, 19), ratio(2 * j, 19));
            let c = posdef::classify_point(&params, m)?;
            expect(f, !c.contradiction, || {
                format!(
                    "({}, {}): theorem inside but Hankel indefinite",
                    params.p_text(),
                    params.t_text()
                )
            });
        }
    }
    let c = posdef::classify_point(&Params::ratios((2, 1), (7, 5)), 8)?;
    expect(
        f,
        c.hankel.verdict == Verdict::Indefinite && !c.theorem_verdict,
        || {
            format!(
                "(2, 7/5): {:?}, theorem {}",
                c.hankel.verdict, c.theorem_verdict
            )
        },
    );
    let v = posdef::infdiv_check(2, &ratio(1, 2), 5)?;
    expect(f, v.verdict.is_indefinite(), || {
        format!("infdiv (2, 1/2): {:?}", v.verdict)
    });
    for (p, t) in [
        (2, int(0)),
        (2, ratio(7, 6)),
        (2, ratio(4, 3)),
        (3, int(1)),
        (3, ratio(3, 2)),
    ] {
        let v = posdef::infdiv_check(p, &t, 5)?;
        expect(f, !v.verdict.is_indefinite(), || {
            format!("infdiv ({p}, {t}): indefinite")
        });
    }
    Ok(())
}

fn c11_recurrence(_: &VerifyConfig, f: &mut Vec<String>) -> Result<()> {
    let a = exact_seq::a220910_table(51, A220910Method::ClosedA)?;
    for n in 2..=50usize {
        let ni = n as i64;
        let lhs = int(ni) * &a[n];
        let rhs = int(8 * ni - 34) * &a[n - 1] + int(24 * (2 * ni - 3)) * &a[n - 2];
        expect(f, lhs == rhs, || format!("recurrence fails at n = {n}"));
    }
    let residual = series::a220910_ode_residual(40)?;
    expect(f, residual.is_zero_jet(), || {
        "differential equation residual is non-zero".into()
    });
    let jet = series::gf_closed_expand(ClosedGf::A220910, 40)?;
    let c = jet.coeffs();
    for n in 2..=40usize {
        let ni = n as i64;
        let combo =
            int(ni) * &c[n] - int(8 * (ni - 1)) * &c[n - 1] - int(48 * (ni - 2)) * &c[n - 2]
                + int(26) * &c[n - 1]
                - int(24) * &c[n - 2];
        expect(f, combo == int(0), || {
            format!("coefficient of z^{} is {combo}", n - 1)
        });
    }
    Ok(())
}
