use num_rational::BigRational;
use proptest::prelude::*;

use quadfrieze::enumerate::{enumerate_friezes, CensusRecord, CensusResult, Positivity, SearchConfig};
use quadfrieze::qint::{Domain, FieldTag};
use quadfrieze::triangulate::{enumerate_triangulations, triangulation_of_cc_frieze};
use quadfrieze::FriezeClass;

fn census(d: i64, n: usize, bound: i64, workers: usize) -> CensusResult {
    let t = FieldTag::new(d).unwrap();
    let cfg = SearchConfig::new(
        Domain::Quadratic(t),
        n,
        BigRational::from_integer(bound.into()),
        Positivity::All,
        workers,
    )
    .unwrap();
    enumerate_friezes(&cfg).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn census_members_are_valid_friezes(
        d in prop::sample::select(vec![-1i64, -2, -3, -5, -7, -11, -13]),
        n in 0usize..=2,
        bound in 4i64..=12,
    ) {
        let r = census(d, n, bound, 2);
        let b = BigRational::from_integer(bound.into());
        for f in &r.friezes {
            prop_assert!(f.validate().all());
            prop_assert_eq!(f.height(), n);
            for q in f.extract_quiddity().entries() {
                prop_assert!(q.abs_sq() <= b);
                prop_assert!(q.is_integral());
            }
        }
        let mut sorted = r.friezes.clone();
        sorted.sort_by_key(|f| f.extract_quiddity().to_quad_ints().unwrap());
        prop_assert_eq!(&sorted, &r.friezes);
    }
}

#[test]
fn worker_count_does_not_change_output() {
    let one = serde_json::to_string(&census(-3, 2, 9, 1).to_record()).unwrap();
    for w in [2, 3, 8] {
        assert_eq!(serde_json::to_string(&census(-3, 2, 9, w).to_record()).unwrap(), one);
    }
}

#[test]
fn json_round_trip() {
    let r = census(-7, 2, 8, 4);
    let json = serde_json::to_string_pretty(&r.to_record()).unwrap();
    let rec: CensusRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(CensusResult::from_record(&rec).unwrap(), r);
}

#[test]
fn positive_census_is_the_cc_part_of_the_full_one() {
    for n in 1..=4 {
        let pos = enumerate_friezes(&SearchConfig::integers(n, Positivity::PositiveOnly)).unwrap();
        let all = enumerate_friezes(&SearchConfig::integers(n, Positivity::All)).unwrap();
        let cc: Vec<_> = all
            .friezes
            .iter()
            .filter(|f| f.classify() == FriezeClass::ConwayCoxeter)
            .cloned()
            .collect();
        assert_eq!(pos.friezes, cc);
        let twisted = all.counts[&FriezeClass::TwistedConwayCoxeter];
        assert_eq!(twisted, if n % 2 == 1 { cc.len() } else { 0 });
    }
}

#[test]
fn cc_census_matches_triangulations() {
    for n in 1..=5 {
        let pos = enumerate_friezes(&SearchConfig::integers(n, Positivity::PositiveOnly)).unwrap();
        let mut from_census: Vec<_> = pos
            .friezes
            .iter()
            .map(|f| triangulation_of_cc_frieze(f).unwrap())
            .collect();
        from_census.sort();
        assert_eq!(from_census, enumerate_triangulations(n + 3).unwrap());
    }
}
