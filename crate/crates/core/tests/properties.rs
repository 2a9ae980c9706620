use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use quadfrieze::eta::{inverse_rewrite, reduce_to_canonical, rewrite_step, grow_cycle};
use quadfrieze::orders::{
    bezout, factor_principal, zalpha_membership, eval_poly, FractionalIdeal, IdealHNF,
};
use quadfrieze::qint::{small_elements, FieldTag, QuadInt, QuadRat};
use quadfrieze::{QuiddityCycle, RewriteRule};

const DS: [i64; 12] = [-1, -2, -3, -5, -6, -7, -11, -13, -15, -19, -23, -163];

fn tag_strategy() -> impl Strategy<Value = FieldTag> {
    prop::sample::select(DS.to_vec()).prop_map(|d| FieldTag::new(d).unwrap())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn quad_rat(t: FieldTag) -> impl Strategy<Value = QuadRat> {
    (-30i64..=30, 1i64..=6, -30i64..=30, 1i64..=6)
        .prop_map(move |(a, b, c, d)| QuadRat::new(t, rat(a, b), rat(c, d)))
}

fn with_tag<S: Strategy>(f: impl Fn(FieldTag) -> S + Clone + 'static) -> impl Strategy<Value = (FieldTag, S::Value)>
where
    S::Value: Clone,
{
    tag_strategy().prop_flat_map(move |t| (Just(t), f(t)))
}

fn quad_int(t: FieldTag, r: i64) -> impl Strategy<Value = QuadInt> {
    (-r..=r, -r..=r).prop_map(move |(a, b)| QuadInt::new(t, a, b))
}

proptest! {
    #[test]
    fn field_axioms((t, (x, y, z)) in with_tag(|t| (quad_rat(t), quad_rat(t), quad_rat(t)))) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
        }
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.tag(), t);
    }

    #[test]
    fn integers_closed((_t, (x, y)) in with_tag(|t| (quad_int(t, 50), quad_int(t, 50)))) {
        let (xr, yr) = (x.to_quad_rat(), y.to_quad_rat());
        prop_assert!((&xr * &yr).is_integral());
        prop_assert!((&xr - &yr).is_integral());
        prop_assert_eq!((&xr * &yr).to_quad_int().unwrap(), &x * &y);
        prop_assert_eq!(QuadRat::from(&x).norm(), BigRational::from_integer(x.norm()));
        if !y.is_zero() {
            let p = &x * &y;
            prop_assert_eq!(p.div_exact(&y), Some(x.clone()));
        }
    }

    #[test]
    fn small_elements_match_brute_force(d in -200i64..=-1, bound in 1i64..=40) {
        let Ok(t) = FieldTag::new(d) else { return Ok(()); };
        let b = BigRational::from_integer(bound.into());
        let got = small_elements(t, &b);
        let r = 2 * bound + 2;
        let mut want: Vec<QuadInt> = (-r..=r)
            .flat_map(|a| (-r..=r).map(move |c| (a, c)))
            .map(|(a, c)| QuadInt::new(t, a, c))
            .filter(|z| BigRational::from_integer(z.norm()) < b)
            .collect();
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn rewrite_then_inverse_round_trips(
        choices in prop::collection::vec((any::<u8>(), 0usize..64, -3i64..=3), 0..10),
        tri in any::<bool>(),
    ) {
        let t = FieldTag::gaussian();
        let cycle = grow_cycle(t, tri, &choices, 12);
        prop_assert!(cycle.is_quiddity_cycle());
        let trace = reduce_to_canonical(&cycle).unwrap();
        prop_assert_eq!(trace.replay().unwrap(), trace.terminal.clone());
        prop_assert_eq!(trace.unwind().unwrap(), cycle.clone());
        for s in &trace.steps {
            let (after, flip) = rewrite_step(&s.before, s.rule, s.position).unwrap();
            prop_assert_eq!(&after, &s.after);
            prop_assert_eq!(flip, s.rule.flips_sign());
            let back = inverse_rewrite(&after, s.rule, s.position, &s.split()).unwrap();
            prop_assert_eq!(&back, &s.before);
            let shrink = if s.rule == RewriteRule::MergeZero { 2 } else { 1 };
            prop_assert_eq!(after.len() + shrink, s.before.len());
        }
    }

    #[test]
    fn rotations_stay_quiddity_cycles(
        choices in prop::collection::vec((any::<u8>(), 0usize..64, -3i64..=3), 0..10),
        k in 0usize..12,
    ) {
        let t = FieldTag::gaussian();
        let cycle: QuiddityCycle = grow_cycle(t, true, &choices, 12);
        prop_assert!(cycle.rotated(k % cycle.len()).is_quiddity_cycle());
    }

    #[test]
    fn ideal_norms_multiply((t, (x, y)) in with_tag(|t| (quad_int(t, 12), quad_int(t, 12)))) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let i = IdealHNF::principal(&x).unwrap();
        let j = IdealHNF::principal(&y).unwrap();
        prop_assert_eq!(i.norm(), x.norm());
        let ij = i.mul(&j);
        prop_assert_eq!(ij.norm(), i.norm() * j.norm());
        prop_assert_eq!(&ij, &IdealHNF::principal(&(&x * &y)).unwrap());
        // re-normalising an HNF is the identity
        let (a, b, c) = ij.hnf();
        prop_assert_eq!(IdealHNF::new(t, a.clone(), b.clone(), c.clone()).unwrap(), ij.clone());
        let basis = ij.basis();
        prop_assert_eq!(IdealHNF::from_generators(t, &basis).unwrap(), ij.clone());
        let inv = FractionalIdeal::integral(i.clone()).inverse();
        prop_assert!(FractionalIdeal::integral(i).mul(&inv).is_integral());
    }

    #[test]
    fn factorisation_reconstructs((_t, (x, m)) in with_tag(|t| (quad_int(t, 15), 1i64..=30))) {
        prop_assume!(!x.is_zero());
        let t = x.tag();
        let alpha = &x.to_quad_rat() * &QuadRat::from_ratio(t, rat(1, m));
        let f = factor_principal(&alpha).unwrap();
        prop_assert_eq!(f.product(), FractionalIdeal::principal(&alpha).unwrap());
        prop_assert_eq!(f.negative_part().next().is_some(), !alpha.is_integral());
    }

    #[test]
    fn bezout_witnesses_check((_t, (x, y)) in with_tag(|t| (quad_int(t, 20), quad_int(t, 20)))) {
        let t = x.tag();
        match bezout(&x, &y) {
            Ok((u, v)) => prop_assert_eq!(&(&u * &x) + &(&v * &y), QuadInt::one(t)),
            Err(_) => {
                prop_assume!(!x.is_zero() || !y.is_zero());
                let gens = [x.clone(), y.clone()];
                let i = IdealHNF::from_generators(t, &gens).unwrap();
                prop_assert!(!i.is_unit_ideal());
            }
        }
    }

    #[test]
    fn zalpha_expressions_evaluate(coeffs in prop::collection::vec(-20i64..=20, 1..5)) {
        let t = FieldTag::new(-13).unwrap();
        let alpha = QuadRat::parse(t, "(-2+5*tau)/47").unwrap();
        let cs: Vec<BigInt> = coeffs.iter().map(|&c| c.into()).collect();
        let x = eval_poly(&cs, &alpha);
        let found = zalpha_membership(&x, &alpha, cs.len()).unwrap();
        prop_assert!(found.len() <= cs.len());
        prop_assert_eq!(eval_poly(&found, &alpha), x);
    }
}
