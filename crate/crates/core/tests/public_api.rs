use fuss_deform::exact_seq::{self, A220910Method, TransformDirection};
use fuss_deform::posdef::{self, Verdict};
use fuss_deform::rational::{int, parse, ratio};
use fuss_deform::series::{self, TruncSeries};
use fuss_deform::{Params, SeqTable};

#[test]
fn table_json_round_trip() {
    let values = exact_seq::a220910_table(12, A220910Method::ClosedB).unwrap();
    let table = SeqTable::new("a220910", 0, values).unwrap();
    let back = SeqTable::from_json(&table.to_json()).unwrap();
    assert_eq!(back, table);
    assert!(table
        .to_csv()
        .starts_with("label,offset,n,value\na220910,0,0,1/1\n"));
}

#[test]
fn catalan_moments_have_unit_free_cumulants() {
    let m = series::moment_series(&Params::exact(int(2), int(1)), 10).unwrap();
    let r = series::cumulants_from_moments(&m).unwrap();
    assert_eq!(r.values.len(), 10);
    assert!(r.values.iter().all(|v| *v == int(1)));
    let m2 = series::moments_from_cumulants(&r).unwrap();
    assert_eq!(m2, m);
}

#[test]
fn binomial_transform_inverts() {
    let seq = exact_seq::deformed_fuss_table(&Params::ratios((5, 2), (1, 3)), 9).unwrap();
    let fwd = exact_seq::binomial_transform(&seq, TransformDirection::Forward).unwrap();
    let back = exact_seq::binomial_transform(&fwd, TransformDirection::Inverse).unwrap();
    assert_eq!(back.values, seq.values);
}

#[test]
fn delta_one_is_semidefinite() {
    let ones = vec![int(1); 9];
    let v = posdef::hankel_report_values(&ones, 5).unwrap();
    assert_eq!(v.verdict, Verdict::PositiveSemidefinite);
    let gap = exact_seq::necessary_gap(&Params::exact(int(1), ratio(1, 2))).unwrap();
    assert_eq!(gap, ratio(-1, 4));
}

#[test]
fn jets_serialize_exactly() {
    let s = TruncSeries::from_coeffs(vec![int(1), parse("0.25").unwrap(), ratio(-2, 3)]);
    assert_eq!(
        s.to_json(),
        r#"{"order":2,"mode":"exact","coeffs":["1/1","1/4","-2/3"]}"#
    );
    assert_eq!(s.to_csv(), "n,coeff\n0,1/1\n1,1/4\n2,-2/3\n");
}
