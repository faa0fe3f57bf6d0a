use std::cmp::Ordering;
use std::collections::BTreeMap;

use proptest::prelude::*;
use turanlab::exact::{fmt_pq, parse_rational, poch, rat, MultiPoly, Rational, Ring, Vars};
use turanlab::families::{FamilySpec, SequenceSpec};
use turanlab::series::{turanian, Verdict};

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..9).prop_map(|(p, q)| rat(p, q))
}

fn positive_rat() -> impl Strategy<Value = Rational> {
    (1i64..30, 1i64..6).prop_map(|(p, q)| rat(p, q))
}

fn vars() -> Vars {
    Vars::new(["x", "y"])
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((small_rat(), 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        let v = vars();
        terms.into_iter().fold(v.constant(Rational::from_integer(0.into())), |acc, (c, i, j)| {
            acc.add(&v.var("x").pow(i).mul(&v.var("y").pow(j)).scale(&c))
        })
    })
}

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        Just(FamilySpec::KS),
        (1usize..4).prop_map(|r| FamilySpec::G { r }),
        (1usize..4).prop_map(|r| FamilySpec::F { r }),
        (1usize..3).prop_map(|r| FamilySpec::PochReciprocal { r }),
        Just(FamilySpec::H),
        Just(FamilySpec::Y),
        Just(FamilySpec::YRecip),
        (1i64..4, 1i64..3).prop_map(|(p, q)| FamilySpec::KScaled {
            base: Box::new(FamilySpec::KS),
            k: rat(p, q),
        }),
    ]
}

fn sequence() -> impl Strategy<Value = SequenceSpec> {
    prop_oneof![
        positive_rat().prop_map(|c| SequenceSpec::Constant { c }),
        Just(SequenceSpec::FactorialReciprocal),
        Just(SequenceSpec::Factorial),
        positive_rat().prop_map(|ratio| SequenceSpec::Geometric { ratio }),
        (positive_rat(), prop::collection::vec((0i64..20, 1i64..5).prop_map(|(p, q)| rat(p, q)), 0..5)).prop_map(|(head, tail)| {
            SequenceSpec::List { values: std::iter::once(head).chain(tail).collect() }
        }),
    ]
}

fn at(x: &Rational, y: &Rational) -> BTreeMap<String, Rational> {
    BTreeMap::from([("x".to_string(), x.clone()), ("y".to_string(), y.clone())])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_text_round_trips(r in small_rat()) {
        prop_assert_eq!(parse_rational(&fmt_pq(&r)).unwrap(), r);
    }

    #[test]
    fn poly_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn eval_is_a_homomorphism(a in poly(), b in poly(), x in small_rat(), y in small_rat()) {
        let p = at(&x, &y);
        let ea = a.eval(&p).unwrap();
        let eb = b.eval(&p).unwrap();
        prop_assert_eq!(a.mul(&b).eval(&p).unwrap(), &ea * &eb);
        prop_assert_eq!(a.add(&b).eval(&p).unwrap(), &ea + &eb);
    }

    #[test]
    fn poly_text_round_trips(a in poly()) {
        prop_assert_eq!(vars().parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn pochhammer_splits(x in small_rat(), m in 0usize..6, n in 0usize..6) {
        let whole = poch(&x, m + n);
        let split = poch(&x, m).times(&poch(&x.plus_rational(&Rational::from_integer((m as i64).into())), n));
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn phi_all_agrees_with_phi(f in family(), mu in positive_rat()) {
        let all = f.phi_all::<Rational>(8, &mu).unwrap();
        for (n, v) in all.iter().enumerate() {
            prop_assert_eq!(v, &f.phi::<Rational>(n, &mu).unwrap());
        }
    }

    #[test]
    fn turanian_symmetric_in_shifts(
        f in family(), s in sequence(), mu in positive_rat(), a in positive_rat(), b in positive_rat()
    ) {
        let ab = turanian::<Rational>(&f, &s, &mu, &a, &b, 6).unwrap();
        let ba = turanian::<Rational>(&f, &s, &mu, &b, &a, 6).unwrap();
        prop_assert_eq!(ab.delta.coeffs(), ba.delta.coeffs());
    }

    #[test]
    fn zero_shift_gives_zero(f in family(), s in sequence(), mu in positive_rat(), b in positive_rat()) {
        let zero = Rational::from_integer(0.into());
        let r = turanian::<Rational>(&f, &s, &mu, &zero, &b, 6).unwrap();
        prop_assert_eq!(r.verdict, Verdict::AllZero);
    }

    #[test]
    fn rows_sum_and_verdict_matches_signs(
        f in family(), s in sequence(), mu in positive_rat(), a in positive_rat(), b in positive_rat()
    ) {
        let r = turanian::<Rational>(&f, &s, &mu, &a, &b, 7).unwrap();
        prop_assert!(r.rows_sum_to_delta());
        let signs: Vec<Ordering> = r.signs.iter().map(|s| s.unwrap()).collect();
        match r.verdict {
            Verdict::AllNonNegative => prop_assert!(signs.iter().all(|s| *s != Ordering::Less)),
            Verdict::AllNonPositive => prop_assert!(signs.iter().all(|s| *s != Ordering::Greater)),
            Verdict::AllZero => prop_assert!(signs.iter().all(|s| *s == Ordering::Equal)),
            Verdict::Mixed { .. } => {
                prop_assert!(signs.contains(&Ordering::Less) && signs.contains(&Ordering::Greater))
            }
            Verdict::Indeterminate => prop_assert!(false, "exact input gave an indeterminate verdict"),
        }
    }

    #[test]
    fn ks_with_unit_sequence_vanishes(mu in positive_rat(), a in positive_rat(), b in positive_rat()) {
        let one = SequenceSpec::Constant { c: rat(1, 1) };
        let r = turanian::<Rational>(&FamilySpec::KS, &one, &mu, &a, &b, 8).unwrap();
        prop_assert_eq!(r.verdict, Verdict::AllZero);
    }
}
