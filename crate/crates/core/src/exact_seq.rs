//! Exact computation of the integer and rational sequences: Raney numbers,
//! the deformed family `a_n(p, t)`, constellation counts, binomial
//! transforms and the A220910 sequence.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::Params;
use crate::rational::{self, binom, int, ratio, Rational};
use crate::series;
use crate::table::SeqTable;

/// Raney number `binom(np + r, n) r / (np + r)`: one for `n = 0`, otherwise
/// `(r / n!) prod_{i=1}^{n-1} (np + r - i)`.
pub fn raney(p: &Rational, r: &Rational, n: u64) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let base = p * int(n as i64) + r;
    let mut acc = r.clone();
    for i in 1..n {
        acc *= &base - int(i as i64);
    }
    acc / Rational::from_integer(rational::factorial(n))
}

fn affine_form(p: &Rational, t: &Rational, n: u64) -> Rational {
    t * raney(p, &int(1), n) + (Rational::one() - t) * raney(p, &int(2), n)
}

/// `binom(np, n) (n(2p - t - pt) + 2) / ((np - n + 1)(np - n + 2))`, or
/// `None` where the denominator vanishes.
fn product_form(p: &Rational, t: &Rational, n: u64) -> Option<Rational> {
    let nr = int(n as i64);
    let shifted = &nr * p - &nr;
    let den = (&shifted + int(1)) * (&shifted + int(2));
    if den.is_zero() {
        return None;
    }
    let lin = &nr * (int(2) * p - t - p * t) + int(2);
    Some(binom(&(&nr * p), n) * lin / den)
}

/// `a_n(p, t)`, computed from the two-Raney affine combination and checked
/// against the single-binomial product form.
pub fn deformed_fuss(params: &Params, n: u64) -> Result<Rational> {
    let (p, t) = params.require_exact()?;
    let value = affine_form(p, t, n);
    if let Some(other) = product_form(p, t, n) {
        if other != value {
            return Err(Error::Inconsistency(format!(
                "a_{n}({}, {}): affine form {} != product form {}",
                params.p_text(),
                params.t_text(),
                rational::to_text(&value),
                rational::to_text(&other)
            )));
        }
    }
    Ok(value)
}

pub fn deformed_fuss_table(params: &Params, len: usize) -> Result<SeqTable> {
    let values = (0..len as u64)
        .map(|n| deformed_fuss(params, n))
        .collect::<Result<Vec<_>>>()?;
    SeqTable::new(
        format!("a(p={},t={})", params.p_text(), params.t_text()),
        0,
        values,
    )
}

/// Number of rooted `p`-constellations with `n` polygons,
/// `binom(np, n) (p + 1) p^{n-1} / ((np - n + 1)(np - n + 2))`.
pub fn constellation_count(p: i64, n: u64) -> Result<Rational> {
    if p < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "constellation counts need p >= 2 and n >= 1, got p={p}, n={n}"
        )));
    }
    let pr = int(p);
    let nr = int(n as i64);
    let shifted = &nr * &pr - &nr;
    let value = binom(&(&nr * &pr), n) * int(p + 1) * rational::pow(&pr, n as u32 - 1)
        / ((&shifted + int(1)) * (&shifted + int(2)));

    let t = ratio(2 * p, p + 1);
    let via_family = int(p + 1) * rational::pow(&pr, n as u32) / int(2 * p)
        * deformed_fuss(&Params::exact(pr.clone(), t), n)?;
    if via_family != value {
        return Err(Error::Inconsistency(format!(
            "C_{p}({n}) = {} disagrees with the a_n(p, 2p/(p+1)) route {}",
            rational::to_text(&value),
            rational::to_text(&via_family)
        )));
    }
    if !rational::is_integer(&value) || !value.is_positive() {
        return Err(Error::Inconsistency(format!(
            "C_{p}({n}) = {} is not a positive integer",
            rational::to_text(&value)
        )));
    }
    Ok(value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformDirection {
    /// `b_n = sum_k (-1)^{n-k} binom(n, k) a_k`
    Forward,
    /// `a_n = sum_k binom(n, k) b_k`
    Inverse,
}

pub fn binomial_transform(seq: &SeqTable, direction: TransformDirection) -> Result<SeqTable> {
    if seq.is_empty() {
        return Err(Error::InvalidParameter("empty sequence".into()));
    }
    let values = (0..seq.len() as u64)
        .map(|n| {
            seq.values
                .iter()
                .enumerate()
                .take(n as usize + 1)
                .map(|(k, a)| {
                    let c = Rational::from_integer(rational::binom_int(n, k as u64)) * a;
                    match direction {
                        TransformDirection::Inverse => c,
                        TransformDirection::Forward if (n - k as u64) % 2 == 1 => -c,
                        TransformDirection::Forward => c,
                    }
                })
                .fold(Rational::zero(), |acc, x| acc + x)
        })
        .collect();
    let label = match direction {
        TransformDirection::Forward => format!("binomial({})", seq.label),
        TransformDirection::Inverse => format!("inverse-binomial({})", seq.label),
    };
    SeqTable::new(label, seq.offset, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A220910Method {
    Recurrence,
    ClosedA,
    ClosedB,
    Cumulant,
}

impl A220910Method {
    pub const ALL: [A220910Method; 4] = [
        A220910Method::Recurrence,
        A220910Method::ClosedA,
        A220910Method::ClosedB,
        A220910Method::Cumulant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            A220910Method::Recurrence => "recurrence",
            A220910Method::ClosedA => "closed_a",
            A220910Method::ClosedB => "closed_b",
            A220910Method::Cumulant => "cumulant",
        }
    }
}

/// `n a_n = (8n - 34) a_{n-1} + 24 (2n - 3) a_{n-2}`, seeded with `1, 1`.
fn a220910_recurrence(len: usize) -> Vec<Rational> {
    let mut out = vec![int(1), int(1)];
    for n in 2..len as i64 {
        let next = (int(8 * n - 34) * &out[n as usize - 1]
            + int(24 * (2 * n - 3)) * &out[n as usize - 2])
            / int(n);
        out.push(next);
    }
    out.truncate(len);
    out
}

fn neg_four_pow(n: u64) -> Rational {
    rational::pow(&int(-4), n as u32)
}

/// First closed form: a power of `-4` plus a central binomial times a
/// finite hypergeometric-type sum.
fn a220910_closed_a(n: u64) -> Rational {
    let nr = int(n as i64);
    let half = ratio(1, 2);
    let head = (int(1) - int(8) * &nr) / int(2) * neg_four_pow(n);
    let three_pow = rational::pow(&int(3), n as u32 + 1);
    let mut sum = Rational::zero();
    // prod_{i<k} (n - i), grown incrementally.
    let mut falling = Rational::one();
    for k in 0..=n {
        if k > 0 {
            falling *= &nr - int(k as i64 - 1);
        }
        let mut half_prod = Rational::one();
        for i in 0..=k + 1 {
            half_prod *= &nr - int(i as i64) - &half;
        }
        let den = int(8) * rational::pow(&int(-3), k as u32) * half_prod;
        sum += &three_pow * int(k as i64 + 1) * &falling / den;
    }
    head + Rational::from_integer(rational::binom_int(2 * n, n)) * sum
}

/// Second closed form; the inner alternating sum is accumulated exactly
/// left to right.
fn a220910_closed_b(n: u64) -> Rational {
    let nr = int(n as i64);
    let three_halves = ratio(3, 2);
    let mut inner = Rational::zero();
    let mut term = Rational::one(); // (-3)^k / k! * prod_{i<k} (i - 3/2)
    for k in 0..=n + 1 {
        if k > 0 {
            term = term * int(-3) * (int(k as i64 - 1) - &three_halves) / int(k as i64);
        }
        inner += &term;
    }
    neg_four_pow(n) * (int(1) - int(8) * &nr) / int(16) * (int(8) - inner)
        + Rational::from_integer(rational::binom_int(2 * n, n))
            * rational::pow(&int(3), n as u32 + 3)
            / (int(32) * (&nr + int(1)))
}

/// `2^n r_n(3, 3/2)` from the exact free cumulants, with `a_0 = 1`.
fn a220910_cumulant(len: usize) -> Result<Vec<Rational>> {
    let order = len.max(2);
    // Free cumulants scale like moments, and the rescaled jet stays integral.
    let moments = series::moment_series(&Params::ratios((3, 1), (3, 2)), order)?.rescale(&int(2));
    let cumulants = series::cumulants_from_moments(&moments)?;
    let mut out = vec![int(1)];
    out.extend(cumulants.values.into_iter().take(len.saturating_sub(1)));
    out.truncate(len);
    Ok(out)
}

/// The first `len` terms of A220910 by the chosen method.
pub fn a220910_table(len: usize, method: A220910Method) -> Result<Vec<Rational>> {
    match method {
        A220910Method::Recurrence => Ok(a220910_recurrence(len)),
        A220910Method::ClosedA => Ok((0..len as u64).map(a220910_closed_a).collect()),
        A220910Method::ClosedB => Ok((0..len as u64).map(a220910_closed_b).collect()),
        A220910Method::Cumulant => a220910_cumulant(len),
    }
}

pub fn a220910(n: u64, method: A220910Method) -> Result<Rational> {
    match method {
        A220910Method::ClosedA => Ok(a220910_closed_a(n)),
        A220910Method::ClosedB => Ok(a220910_closed_b(n)),
        _ => Ok(a220910_table(n as usize + 1, method)?
            .pop()
            .expect("non-empty table")),
    }
}

/// `a_2(p, t) - a_1(p, t)^2`, which must equal `2p - pt - t^2 + 3t - 3`.
pub fn necessary_gap(params: &Params) -> Result<Rational> {
    let (p, t) = params.require_exact()?;
    let a1 = deformed_fuss(params, 1)?;
    let a2 = deformed_fuss(params, 2)?;
    let gap = a2 - &a1 * &a1;
    let polynomial = int(2) * p - p * t - t * t + int(3) * t - int(3);
    if gap != polynomial {
        return Err(Error::Inconsistency(format!(
            "a_2 - a_1^2 = {} but 2p - pt - t^2 + 3t - 3 = {}",
            rational::to_text(&gap),
            rational::to_text(&polynomial)
        )));
    }
    Ok(gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force count of sequences over {1, 1-p} with length np, all
    /// partial sums non-negative and total zero.
    fn count_balanced(p: i64, n: usize) -> u64 {
        let len = n * p as usize;
        let mut count = 0;
        for mask in 0u64..(1 << len) {
            let mut sum = 0i64;
            let mut ok = true;
            for i in 0..len {
                sum += if mask >> i & 1 == 1 { 1 } else { 1 - p };
                if sum < 0 {
                    ok = false;
                    break;
                }
            }
            if ok && sum == 0 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn raney_matches_brute_force_counts() {
        for n in 0..=4 {
            let oracle = count_balanced(2, n);
            assert_eq!(raney(&int(2), &int(1), n as u64), int(oracle as i64));
        }
        assert_eq!(
            (0..5)
                .map(|n| raney(&int(2), &int(1), n))
                .collect::<Vec<_>>(),
            [1, 1, 2, 5, 14].map(int).to_vec()
        );
        for n in 0..=3 {
            assert_eq!(
                raney(&int(3), &int(1), n as u64),
                int(count_balanced(3, n) as i64)
            );
        }
    }

    #[test]
    fn raney_edge_cases() {
        for n in 1..6 {
            assert_eq!(raney(&ratio(7, 3), &int(0), n), int(0));
        }
        assert_eq!(raney(&int(0), &int(0), 0), int(1));
        assert_eq!(
            raney(&int(2), &int(1), 3) * int(-1),
            raney(&int(-1), &int(-1), 3)
        );
        assert_eq!(raney(&int(-1), &int(-1), 3), int(-5));
    }

    #[test]
    fn deformed_fuss_examples() {
        for t in [ratio(1, 3), ratio(-5, 2), int(4)] {
            let params = Params::exact(int(1), t.clone());
            for n in 0..8u64 {
                let nr = int(n as i64);
                assert_eq!(deformed_fuss(&params, n).unwrap(), int(1) + &nr - &nr * &t);
            }
        }
        assert_eq!(
            deformed_fuss(&Params::ratios((7, 3), (2, 9)), 0).unwrap(),
            int(1)
        );
        assert_eq!(
            deformed_fuss(&Params::ratios((2, 1), (1, 1)), 3).unwrap(),
            int(5)
        );
    }

    #[test]
    fn deformed_fuss_special_slices() {
        // t = 2/(p+1) gives binom(np, n) 2 / (np - n + 2).
        let p = ratio(5, 2);
        let params = Params::exact(p.clone(), int(2) / (&p + int(1)));
        for n in 0..10u64 {
            let nr = int(n as i64);
            let want = binom(&(&nr * &p), n) * int(2) / (&nr * &p - &nr + int(2));
            assert_eq!(deformed_fuss(&params, n).unwrap(), want);
        }
    }

    #[test]
    fn deformed_fuss_rejects_float_params() {
        assert!(deformed_fuss(&Params::float(2.0, 0.5).unwrap(), 2).is_err());
    }

    #[test]
    fn constellation_examples() {
        assert_eq!(constellation_count(2, 1).unwrap(), int(1));
        assert_eq!(constellation_count(2, 2).unwrap(), int(3));
        let listed: Vec<_> = (1..=4)
            .map(|n| constellation_count(2, n).unwrap())
            .collect();
        assert_eq!(listed, [1, 3, 12, 56].map(int).to_vec());
        for n in 1..=10u64 {
            let lhs = constellation_count(3, n).unwrap() * int(6);
            let rhs = int(4)
                * rational::pow(&int(3), n as u32)
                * deformed_fuss(&Params::ratios((3, 1), (3, 2)), n).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(constellation_count(1, 3).is_err());
        assert!(constellation_count(3, 0).is_err());
    }

    #[test]
    fn constellations_are_positive_integers() {
        for p in 2..=5 {
            for n in 1..=15 {
                let c = constellation_count(p, n).unwrap();
                assert!(rational::is_integer(&c) && c > int(0));
            }
        }
    }

    #[test]
    fn binomial_transform_examples() {
        let a = SeqTable::from_integers("ex1", &[1, 2, 5, 16, 64, 304]).unwrap();
        let b = binomial_transform(&a, TransformDirection::Forward).unwrap();
        assert_eq!(b.values, [1, 1, 2, 6, 23, 103].map(int).to_vec());
        let delta = SeqTable::from_integers("delta", &[1, 0, 0, 0, 0]).unwrap();
        let alt = binomial_transform(&delta, TransformDirection::Forward).unwrap();
        assert_eq!(alt.values, [1, -1, 1, -1, 1].map(int).to_vec());
    }

    #[test]
    fn a220910_listing_and_recurrence_seed() {
        let listed = [1, 1, 3, 14, 83, 570, 4318, 35068, 299907, 2668994, 24513578].map(int);
        for method in A220910Method::ALL {
            assert_eq!(
                a220910_table(11, method).unwrap(),
                listed.to_vec(),
                "{}",
                method.name()
            );
        }
        assert_eq!(
            int(2) * a220910(2, A220910Method::Recurrence).unwrap(),
            int(6)
        );
        assert_eq!(a220910(0, A220910Method::Cumulant).unwrap(), int(1));
        assert_eq!(a220910(7, A220910Method::Cumulant).unwrap(), int(35068));
    }

    #[test]
    fn closed_forms_agree_with_recurrence() {
        let oracle = a220910_table(31, A220910Method::Recurrence).unwrap();
        for n in 0..=30u64 {
            assert_eq!(a220910_closed_a(n), oracle[n as usize]);
            assert_eq!(a220910_closed_b(n), oracle[n as usize]);
        }
    }

    #[test]
    fn necessary_gap_examples() {
        for t in [ratio(1, 2), int(3), ratio(-2, 7)] {
            let gap = necessary_gap(&Params::exact(int(1), t.clone())).unwrap();
            assert_eq!(gap, -((&t - int(1)) * (&t - int(1))));
        }
        assert_eq!(
            necessary_gap(&Params::ratios((2, 1), (1, 1))).unwrap(),
            int(1)
        );
        assert_eq!(
            necessary_gap(&Params::ratios((2, 1), (2, 1))).unwrap(),
            int(-1)
        );
    }

    fn grid_rational() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn fuss_catalan_integrality(p in 1i64..=6, n in 0u64..=25) {
            let v = raney(&int(p), &int(1), n);
            prop_assert!(rational::is_integer(&v) && v > int(0));
        }

        #[test]
        fn reflection_identity(p in grid_rational(), r in grid_rational(), n in 0u64..=9) {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            prop_assert_eq!(raney(&p, &r, n) * sign, raney(&(int(1) - &p), &(-r.clone()), n));
        }

        #[test]
        fn affine_in_t(p in grid_rational(), t in grid_rational(), n in 0u64..=8) {
            let a0 = deformed_fuss(&Params::exact(p.clone(), int(0)), n).unwrap();
            let a1 = deformed_fuss(&Params::exact(p.clone(), int(1)), n).unwrap();
            let at = deformed_fuss(&Params::exact(p, t.clone()), n).unwrap();
            prop_assert_eq!(at, &a0 + &t * (a1 - &a0));
        }

        #[test]
        fn binomial_transform_round_trip(values in proptest::collection::vec(grid_rational(), 20)) {
            let seq = SeqTable::new("rand", 0, values).unwrap();
            let fwd = binomial_transform(&seq, TransformDirection::Forward).unwrap();
            let back = binomial_transform(&fwd, TransformDirection::Inverse).unwrap();
            prop_assert_eq!(&back.values, &seq.values);
            let inv_first = binomial_transform(&seq, TransformDirection::Inverse).unwrap();
            let back2 = binomial_transform(&inv_first, TransformDirection::Forward).unwrap();
            prop_assert_eq!(back2.values, seq.values);
        }
    }
}
