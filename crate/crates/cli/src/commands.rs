use clap::ValueEnum;
use rayon::prelude::*;
use serde_json::{json, Value};

use fuss_deform::density::{self, QuadConfig, Route};
use fuss_deform::exact_seq::{self, A220910Method};
use fuss_deform::posdef::{self, Classification};
use fuss_deform::rational::{self, int, to_text};
use fuss_deform::series::{self, ClosedGf, RRoute, TruncSeries};
use fuss_deform::verify::{self, Category, VerifyConfig};
use fuss_deform::{Params, Rational, SeqTable};

use crate::output::{csv_table, emit, num, CliError};
use crate::GlobalOpts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqSubject {
    A,
    Raney,
    Constellation,
    A220910,
    A022558,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqMethod {
    Recurrence,
    ClosedA,
    ClosedB,
    Cumulant,
}

impl From<SeqMethod> for A220910Method {
    fn from(m: SeqMethod) -> Self {
        match m {
            SeqMethod::Recurrence => A220910Method::Recurrence,
            SeqMethod::ClosedA => A220910Method::ClosedA,
            SeqMethod::ClosedB => A220910Method::ClosedB,
            SeqMethod::Cumulant => A220910Method::Cumulant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformRoute {
    Moments,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityRoute {
    Parametric,
    Closed,
}

/// Closed interval of exact parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct Range {
    pub lo: Rational,
    pub hi: Rational,
}

impl Range {
    /// `steps` evenly spaced points from `lo` to `hi` inclusive.
    fn points(&self, steps: usize) -> Vec<Rational> {
        if steps == 1 || self.lo == self.hi {
            return vec![self.lo.clone()];
        }
        let span = &self.hi - &self.lo;
        let last = int(steps as i64 - 1);
        (0..steps)
            .map(|i| &self.lo + &span * int(i as i64) / &last)
            .collect()
    }
}

pub fn parse_range(s: &str) -> Result<Range, String> {
    let parse = |v: &str| rational::parse(v.trim()).map_err(|e| e.to_string());
    let range = match s.split_once(':') {
        Some((lo, hi)) => Range {
            lo: parse(lo)?,
            hi: parse(hi)?,
        },
        None => {
            let v = parse(s)?;
            Range {
                lo: v.clone(),
                hi: v,
            }
        }
    };
    if range.lo > range.hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok(range)
}

fn need(value: Option<Rational>, flag: &str, subject: &str) -> Result<Rational, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("`seq {subject}` needs --{flag}")))
}

pub fn seq(
    g: &GlobalOpts,
    subject: SeqSubject,
    n: u64,
    p: Option<Rational>,
    t: Option<Rational>,
    r: Option<Rational>,
    method: SeqMethod,
) -> Result<(), CliError> {
    let len = n as usize + 1;
    let table = match subject {
        SeqSubject::A => {
            let params = Params::exact(need(p, "p", "a")?, need(t, "t", "a")?);
            exact_seq::deformed_fuss_table(&params, len)?
        }
        SeqSubject::Raney => {
            let p = need(p, "p", "raney")?;
            let r = need(r, "r", "raney")?;
            let values = (0..=n).map(|k| exact_seq::raney(&p, &r, k)).collect();
            SeqTable::new(
                format!("raney(p={},r={})", to_text(&p), to_text(&r)),
                0,
                values,
            )?
        }
        SeqSubject::Constellation => {
            let p = need(p, "p", "constellation")?;
            if !p.is_integer() {
                return Err(CliError::Usage(format!(
                    "constellation counts need an integer p, got {}",
                    to_text(&p)
                )));
            }
            let p = p
                .to_integer()
                .try_into()
                .map_err(|_| CliError::Usage("p too large".into()))?;
            let values = (1..=n.max(1))
                .map(|k| exact_seq::constellation_count(p, k))
                .collect::<Result<Vec<_>, _>>()?;
            SeqTable::new(format!("constellation(p={p})"), 1, values)?
        }
        SeqSubject::A220910 => {
            let method = A220910Method::from(method);
            SeqTable::new("a220910", 0, exact_seq::a220910_table(len, method)?)?
        }
        SeqSubject::A022558 => {
            let jet = series::gf_closed_expand(ClosedGf::A022558, n as usize)?;
            SeqTable::new("a022558", 0, jet.into_coeffs())?
        }
    };
    emit(g, || table.to_csv(), || table.to_json())
}

fn jet_texts(jet: &TruncSeries) -> Vec<String> {
    jet.coeffs().iter().map(to_text).collect()
}

pub fn transforms(
    g: &GlobalOpts,
    p: Rational,
    t: Rational,
    route: TransformRoute,
) -> Result<(), CliError> {
    let order = g.series_order;
    let params = Params::exact(p.clone(), t.clone());
    let m = series::moment_series(&params, order + 1)?;
    let (r, s, r_route) = match route {
        TransformRoute::Moments => {
            let r = series::cumulants_from_moments(&m.truncate(order))?.r_jet();
            (r, series::s_series_from_moments(&m)?, "moments")
        }
        TransformRoute::Closed => {
            let small = if p == int(2) {
                Some(2)
            } else if p == int(3) {
                Some(3)
            } else {
                None
            };
            let p_int = small.ok_or_else(|| {
                CliError::Usage(format!(
                    "closed R-transform needs p in {{2, 3}}, got {}",
                    to_text(&p)
                ))
            })?;
            let closed = series::r_series_closed(p_int, &t, order)?;
            let label = match closed.route {
                RRoute::Closed => "closed",
                RRoute::MomentFallback => "moment-fallback",
            };
            (closed.jet, series::s_series_closed(&params, order)?, label)
        }
    };
    let m = m.truncate(order);
    let jets = [("M", &m), ("R", &r), ("S", &s)];
    emit(
        g,
        || {
            let rows = jets.iter().flat_map(|(name, jet)| {
                jet_texts(jet)
                    .into_iter()
                    .enumerate()
                    .map(move |(n, c)| format!("{name},{n},{c}"))
            });
            csv_table("series,n,coeff", rows)
        },
        || {
            json!({
                "p": to_text(&p),
                "t": to_text(&t),
                "order": order,
                "r_route": r_route,
                "M": jet_texts(&m),
                "R": jet_texts(&r),
                "S": jet_texts(&s),
            })
            .to_string()
        },
    )
}

fn float_text(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn density(
    g: &GlobalOpts,
    p: Rational,
    t: Rational,
    grid: usize,
    route: DensityRoute,
) -> Result<(), CliError> {
    if grid == 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    let params = Params::exact(p, t);
    let upper = density::support_c(params.p_f64())?.upper;
    let route = match route {
        DensityRoute::Parametric => Route::Parametric,
        DensityRoute::Closed => Route::Closed,
    };
    let samples = (0..grid)
        .map(|i| density::f_pt(&params, upper * (i as f64 + 0.5) / grid as f64, route))
        .collect::<Result<Vec<_>, _>>()?;
    emit(
        g,
        || {
            let rows = samples
                .iter()
                .map(|s| format!("{},{},{}", num(s.x), float_text(s.phi), num(s.value)));
            csv_table("x,phi,f", rows)
        },
        || serde_json::to_string(&samples).expect("samples serialize"),
    )
}

pub fn moments_check(
    g: &GlobalOpts,
    p: Rational,
    t: Rational,
    n: u32,
    rel_tol: f64,
) -> Result<(), CliError> {
    let params = Params::exact(p, t);
    let cfg = QuadConfig::default().with_abs_tol(g.tol);
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for k in 0..=n {
        let exact = rational::to_f64(&exact_seq::deformed_fuss(&params, k as u64)?);
        let q = density::moment_quadrature(&params, k, &cfg)?;
        let rel = (q.value / exact - 1.0).abs();
        if rel.is_nan() || rel > rel_tol {
            mismatches.push(format!(
                "n = {k}: quadrature {} vs exact {exact} (relative {rel:e})",
                q.value
            ));
        }
        rows.push((k, q));
    }
    let (pt, tt) = (params.p_text(), params.t_text());
    emit(
        g,
        || {
            let lines = rows
                .iter()
                .map(|(k, q)| format!("{pt},{tt},{k},{},{}", num(q.value), num(q.est_error)));
            csv_table("p,t,n,value,est_error", lines)
        },
        || {
            let docs: Vec<Value> = rows
                .iter()
                .map(|(k, q)| json!({"p": pt, "t": tt, "n": k, "value": q.value, "est_error": q.est_error}))
                .collect();
            Value::Array(docs).to_string()
        },
    )?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "moment mismatch: {}",
            mismatches.join("; ")
        )))
    }
}

pub fn gfun(g: &GlobalOpts, p_min: f64, p_max: f64, steps: usize) -> Result<(), CliError> {
    if !(p_min >= 1.0 && p_max >= p_min && steps >= 1) {
        return Err(CliError::Usage(
            "need 1 <= p-min <= p-max and steps >= 1".into(),
        ));
    }
    let ps: Vec<f64> = if steps == 1 {
        vec![p_min]
    } else {
        (0..steps)
            .map(|i| p_min + (p_max - p_min) * i as f64 / (steps - 1) as f64)
            .collect()
    };
    let values = ps
        .iter()
        .map(|&p| posdef::g_of_p(p).map(|v| (p, v)))
        .collect::<Result<Vec<_>, _>>()?;
    emit(
        g,
        || {
            csv_table(
                "p,g",
                values
                    .iter()
                    .map(|(p, v)| format!("{},{}", num(*p), num(*v))),
            )
        },
        || {
            let docs: Vec<Value> = values
                .iter()
                .map(|(p, v)| json!({"p": p, "g": v}))
                .collect();
            Value::Array(docs).to_string()
        },
    )
}

fn theorem_text(c: &Classification) -> &'static str {
    if c.theorem_verdict {
        "inside"
    } else {
        "outside"
    }
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "p": c.params.p_text(),
        "t": c.params.t_text(),
        "g": c.g,
        "upper": to_text(&posdef::upper_edge(c.params.require_exact().expect("exact").0)),
        "theorem": theorem_text(c),
        "hankel": serde_json::from_str::<Value>(&c.hankel.to_json()).expect("valid json"),
        "contradiction": c.contradiction,
    })
}

fn contradiction_error(cells: &[&Classification]) -> CliError {
    let list: Vec<_> = cells
        .iter()
        .map(|c| format!("({}, {})", c.params.p_text(), c.params.t_text()))
        .collect();
    CliError::Contradiction(format!(
        "Hankel section indefinite inside the theorem's domain at {}",
        list.join(", ")
    ))
}

pub fn posdef(g: &GlobalOpts, p: Rational, t: Rational) -> Result<(), CliError> {
    let c = posdef::classify_point(&Params::exact(p, t), g.hankel_size)?;
    emit(
        g,
        || {
            csv_table(
                "p,t,g,theorem,hankel_verdict,contradiction",
                [format!(
                    "{},{},{},{},{},{}",
                    c.params.p_text(),
                    c.params.t_text(),
                    num(c.g),
                    theorem_text(&c),
                    c.hankel.verdict.name(),
                    c.contradiction
                )],
            )
        },
        || classification_json(&c).to_string(),
    )?;
    if c.contradiction {
        return Err(contradiction_error(&[&c]));
    }
    Ok(())
}

pub fn infdiv(g: &GlobalOpts, p: u32, t: Rational) -> Result<(), CliError> {
    let v = posdef::infdiv_check(p, &t, g.hankel_size)?;
    emit(
        g,
        || {
            csv_table(
                "p,t,size,verdict",
                [format!(
                    "{p},{},{},{}",
                    to_text(&t),
                    v.size,
                    v.verdict.name()
                )],
            )
        },
        || {
            json!({
                "p": p,
                "t": to_text(&t),
                "cumulant_hankel": serde_json::from_str::<Value>(&v.to_json()).expect("valid json"),
            })
            .to_string()
        },
    )
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("FUSS_DEFORM_THREADS") {
        let n: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "FUSS_DEFORM_THREADS must be a positive integer, got {raw:?}"
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Failure(format!("cannot start worker threads: {e}")))
}

pub fn domain_grid(g: &GlobalOpts, p: Range, t: Range, steps: usize) -> Result<(), CliError> {
    if steps == 0 {
        return Err(CliError::Usage("--steps must be positive".into()));
    }
    if p.lo < int(1) {
        return Err(CliError::Usage(format!(
            "p range must lie in [1, inf), got lower end {}",
            to_text(&p.lo)
        )));
    }
    let cells: Vec<Params> = p
        .points(steps)
        .into_iter()
        .flat_map(|pv| {
            t.points(steps)
                .into_iter()
                .map(move |tv| Params::exact(pv.clone(), tv))
        })
        .collect();
    let m = g.hankel_size;
    let results = thread_pool()?.install(|| {
        cells
            .par_iter()
            .map(|params| posdef::classify_point(params, m))
            .collect::<Result<Vec<_>, _>>()
    })?;
    emit(
        g,
        || {
            let rows = results.iter().map(|c| {
                format!(
                    "{},{},{},{}",
                    c.params.p_text(),
                    c.params.t_text(),
                    theorem_text(c),
                    c.hankel.verdict.name()
                )
            });
            csv_table("p,t,theorem,hankel_verdict", rows)
        },
        || Value::Array(results.iter().map(classification_json).collect()).to_string(),
    )?;
    let bad: Vec<_> = results.iter().filter(|c| c.contradiction).collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(contradiction_error(&bad))
    }
}

fn selector(only: Option<&str>) -> Result<impl Fn(&verify::Criterion) -> bool, CliError> {
    let mut categories = Vec::new();
    let mut ids = Vec::new();
    if let Some(list) = only {
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.to_ascii_lowercase().as_str() {
                "exact" => categories.push(Category::Exact),
                "numeric" => categories.push(Category::Numeric),
                "posdef" => categories.push(Category::Posdef),
                other => {
                    let id = other
                        .trim_start_matches('c')
                        .parse::<u8>()
                        .map_err(|_| CliError::Usage(format!("unknown --only entry {item:?}")))?;
                    ids.push(id);
                }
            }
        }
    }
    let all = categories.is_empty() && ids.is_empty();
    Ok(move |c: &verify::Criterion| all || categories.contains(&c.category) || ids.contains(&c.id))
}

pub fn verify(g: &GlobalOpts, only: Option<&str>) -> Result<(), CliError> {
    let cfg = VerifyConfig {
        series_order: g.series_order,
        hankel_size: g.hankel_size,
        quad: QuadConfig::default().with_abs_tol(g.tol),
    };
    let outcomes = verify::run_selected(&cfg, selector(only)?);
    if outcomes.is_empty() {
        return Err(CliError::Usage("--only selected no criteria".into()));
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("C{}", o.id))
        .collect();
    emit(
        g,
        || {
            let mut text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
            text.push_str(&format!(
                "{} of {} criteria passed\n",
                outcomes.len() - failed.len(),
                outcomes.len()
            ));
            text
        },
        || {
            let docs: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    json!({
                        "id": o.id,
                        "category": o.category.name(),
                        "title": o.title,
                        "passed": o.passed,
                        "failures": o.failures,
                        "seconds": o.elapsed.as_secs_f64(),
                    })
                })
                .collect();
            Value::Array(docs).to_string()
        },
    )?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "failing criteria: {}",
            failed.join(", ")
        )))
    }
}
