//! Exact finite-section positivity tests for Hankel matrices `[a_{i+j}]`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::table::SeqTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::PositiveDefinite => "positive_definite",
            Verdict::PositiveSemidefinite => "positive_semidefinite",
            Verdict::Indefinite => "indefinite",
        }
    }

    pub fn is_indefinite(self) -> bool {
        self == Verdict::Indefinite
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HankelVerdict {
    pub size: usize,
    /// Leading principal minors of orders `1..=size`.
    pub minors: Vec<Rational>,
    pub verdict: Verdict,
}

#[derive(Serialize)]
struct HankelJson<'a> {
    size: usize,
    minors: Vec<String>,
    verdict: &'a str,
}

impl HankelVerdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&HankelJson {
            size: self.size,
            minors: self.minors.iter().map(rational::to_text).collect(),
            verdict: self.verdict.name(),
        })
        .expect("verdict serializes")
    }
}

fn determinant(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &pv;
            let (top, rest) = a.split_at_mut(r);
            for (x, y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// Semidefiniteness by exact `LDL^T` with symmetric (largest-diagonal)
/// pivoting.
fn is_semidefinite(mut a: Vec<Vec<Rational>>) -> bool {
    let mut remaining: Vec<usize> = (0..a.len()).collect();
    while !remaining.is_empty() {
        let &best = remaining
            .iter()
            .max_by(|&&i, &&j| a[i][i].cmp(&a[j][j]))
            .expect("non-empty");
        let pivot = a[best][best].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            // Every remaining diagonal is zero; a PSD matrix then has a zero block.
            return remaining
                .iter()
                .all(|&i| remaining.iter().all(|&j| a[i][j].is_zero()));
        }
        remaining.retain(|&i| i != best);
        for &i in &remaining {
            let factor = &a[i][best] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for &j in &remaining {
                let delta = &factor * &a[best][j];
                a[i][j] -= delta;
            }
        }
    }
    true
}

pub fn hankel_matrix(values: &[Rational], m: usize) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|i| (0..m).map(|j| values[i + j].clone()).collect())
        .collect()
}

/// Classifies the `m x m` Hankel section of `seq`, which needs `2m - 1` values.
pub fn hankel_report(seq: &SeqTable, m: usize) -> Result<HankelVerdict> {
    hankel_report_values(&seq.values, m)
}

pub fn hankel_report_values(values: &[Rational], m: usize) -> Result<HankelVerdict> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "Hankel size must be at least 1".into(),
        ));
    }
    let needed = 2 * m - 1;
    if values.len() < needed {
        return Err(Error::InsufficientData {
            needed,
            got: values.len(),
        });
    }
    let h = hankel_matrix(values, m);
    let minors: Vec<Rational> = (1..=m)
        .map(|k| determinant(h[..k].iter().map(|row| row[..k].to_vec()).collect()))
        .collect();
    let verdict = if minors.iter().all(Signed::is_positive) {
        Verdict::PositiveDefinite
    } else if is_semidefinite(h) {
        Verdict::PositiveSemidefinite
    } else {
        Verdict::Indefinite
    };
    Ok(HankelVerdict {
        size: m,
        minors,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_seq::{deformed_fuss, raney};
    use crate::params::Params;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    /// Oracle: Leibniz expansion over all permutations.
    fn leibniz(a: &[Vec<Rational>]) -> Rational {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in permutations(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.len();
        permutations(n)
            .into_iter()
            .map(|perm| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| perm[i] > perm[j])
                    .count();
                let prod = (0..n).fold(int(1), |acc, i| acc * &a[i][perm[i]]);
                if inversions % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .fold(int(0), |acc, x| acc + x)
    }

    #[test]
    fn catalan_minors_are_one() {
        let catalan: Vec<_> = (0..19).map(|n| raney(&int(2), &int(1), n)).collect();
        let v = hankel_report_values(&catalan, 10).unwrap();
        assert_eq!(v.minors, vec![int(1); 10]);
        assert_eq!(v.verdict, Verdict::PositiveDefinite);
        // Small sections cross-checked against the permutation expansion.
        for k in 1..=5 {
            assert_eq!(leibniz(&hankel_matrix(&catalan, k)), int(1));
        }
    }

    #[test]
    fn all_ones_is_semidefinite() {
        let v = hankel_report_values(&vec![int(1); 9], 5).unwrap();
        assert_eq!(v.minors, [1, 0, 0, 0, 0].map(int).to_vec());
        assert_eq!(v.verdict, Verdict::PositiveSemidefinite);
    }

    #[test]
    fn degenerate_p_one_is_indefinite() {
        let params = Params::ratios((1, 1), (1, 2));
        let values: Vec<_> = (0..3).map(|n| deformed_fuss(&params, n).unwrap()).collect();
        let v = hankel_report_values(&values, 2).unwrap();
        assert_eq!(v.minors[1], ratio(-1, 4));
        assert_eq!(v.verdict, Verdict::Indefinite);
    }

    #[test]
    fn shifted_delta_is_semidefinite() {
        let mut values = vec![int(1)];
        values.extend(vec![int(0); 8]);
        assert_eq!(
            hankel_report_values(&values, 5).unwrap().verdict,
            Verdict::PositiveSemidefinite
        );
    }

    #[test]
    fn insufficient_data() {
        let err = hankel_report_values(&[int(1), int(1)], 2).unwrap_err();
        assert_eq!(err, Error::InsufficientData { needed: 3, got: 2 });
    }

    #[test]
    fn json_layout() {
        let v = hankel_report_values(&vec![int(1); 3], 2).unwrap();
        assert_eq!(
            v.to_json(),
            r#"{"size":2,"minors":["1/1","0/1"],"verdict":"positive_semidefinite"}"#
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=3).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn minors_match_leibniz(values in proptest::collection::vec(small_rational(), 7)) {
            let v = hankel_report_values(&values, 4).unwrap();
            for k in 1..=4 {
                prop_assert_eq!(&v.minors[k - 1], &leibniz(&hankel_matrix(&values, k)));
            }
        }

        #[test]
        fn indefinite_sections_stay_indefinite(values in proptest::collection::vec(small_rational(), 11)) {
            let mut seen = false;
            for m in 1..=6 {
                let v = hankel_report_values(&values, m).unwrap();
                if seen {
                    prop_assert!(v.verdict.is_indefinite());
                }
                seen |= v.verdict.is_indefinite();
            }
        }

        #[test]
        fn gram_matrices_are_semidefinite(rows in proptest::collection::vec(
            proptest::collection::vec(small_rational(), 4), 1..4)) {
            // B^T B is PSD for any B; check the LDL path directly.
            let g: Vec<Vec<Rational>> = (0..4)
                .map(|i| (0..4).map(|j| rows.iter().fold(int(0), |acc, r| acc + &r[i] * &r[j])).collect())
                .collect();
            prop_assert!(is_semidefinite(g));
        }
    }
}
