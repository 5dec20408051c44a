use hallpi::arith::{
    e_star, multiplicative_order, order_mod, pi_part, primes_up_to, r_part_pow_minus_one, r_part_pow_minus_sign, valuation,
    PrimeSet,
};
use hallpi::lie::{group_order, order_factors, parse_group_id, pi_intersection, prime_power, Family, GroupId};
use hallpi::oracle::{classify_epi_minus_dpi, decide, decide_dpi, decide_upi, EpiSubject, Holds, Property};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(61).into_iter().filter(|&r| r > 2).collect::<Vec<_>>())
}

fn odd_pi() -> impl Strategy<Value = PrimeSet> {
    prop::collection::vec(odd_prime(), 1..4).prop_map(|v| PrimeSet::new(v).unwrap())
}

fn simple_group() -> impl Strategy<Value = GroupId> {
    let qs: Vec<u64> = (2..=64).filter(|&q| prime_power(q).is_some()).collect();
    (prop::sample::select(Family::ALL.to_vec()), 1u32..=7, prop::sample::select(qs))
        .prop_filter_map("not simple", |(f, n, q)| GroupId::with_q(f, if f.is_parametric() { n } else { 0 }, q).ok())
}

fn direct_r_part(mut n: BigUint, r: u64) -> BigUint {
    let mut part = BigUint::one();
    while (&n % r).is_zero() {
        n /= r;
        part *= r;
    }
    part
}

proptest! {
    #[test]
    fn closed_forms_match_division(k in 2u64..200, m in 1u64..40, r in odd_prime()) {
        prop_assume!(k % r != 0);
        let kb = BigUint::from(k);
        let power = kb.pow(m as u32);
        prop_assert_eq!(r_part_pow_minus_one(&kb, m, r).unwrap(), direct_r_part(&power - 1u32, r));
        let signed = if m % 2 == 0 { &power - 1u32 } else { &power + 1u32 };
        prop_assert_eq!(r_part_pow_minus_sign(&kb, m, r).unwrap(), direct_r_part(signed, r));
    }

    #[test]
    fn order_divides_r_minus_one(q in 2u64..10_000, r in odd_prime()) {
        prop_assume!(q % r != 0);
        let e = order_mod(q, r).unwrap();
        prop_assert_eq!((r - 1) % e, 0);
        prop_assert_eq!(BigUint::from(q).modpow(&BigUint::from(e), &BigUint::from(r)), BigUint::one());
        prop_assert_eq!(multiplicative_order(&BigUint::from(q % r), r).unwrap(), e);
    }

    #[test]
    fn e_star_is_order_of_minus_q(q in 2u64..10_000, r in odd_prime()) {
        prop_assume!(q % r != 0);
        let minus_q = r - q % r;
        prop_assert_eq!(e_star(order_mod(q, r).unwrap()), order_mod(minus_q, r).unwrap());
    }

    #[test]
    fn pi_part_is_multiplicative(a in 1u64..1_000_000, b in 1u64..1_000_000, pi in odd_pi()) {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        let whole = pi_part(&(&a * &b), &pi).unwrap();
        prop_assert_eq!(&whole, &(pi_part(&a, &pi).unwrap() * pi_part(&b, &pi).unwrap()));
        prop_assert!((&a * &b % &whole).is_zero());
    }

    #[test]
    fn order_factor_valuations(g in simple_group(), t in odd_prime()) {
        prop_assert_eq!(order_factors(&g).valuation(t), valuation(&group_order(&g), t));
    }

    #[test]
    fn descriptors_round_trip(g in simple_group()) {
        prop_assert_eq!(parse_group_id(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn upi_equals_dpi(g in simple_group(), pi in odd_pi()) {
        prop_assert_eq!(decide_upi(&g, &pi).holds, decide_dpi(&g, &pi).holds);
    }

    #[test]
    fn yes_verdicts_carry_one_tag_and_true_traces(g in simple_group(), pi in odd_pi()) {
        let d = decide_dpi(&g, &pi);
        if d.holds == Holds::Yes {
            prop_assert!(d.condition.is_some());
            prop_assert!(d.trace.iter().all(|r| r.value));
        } else {
            prop_assert!(d.condition.is_none());
        }
    }

    #[test]
    fn small_pi_is_trivially_yes(g in simple_group(), pi in odd_pi()) {
        if pi_intersection(&pi, &g).len() <= 1 {
            for p in [Property::E, Property::C, Property::D, Property::U] {
                prop_assert_eq!(decide(&g, &pi, p).holds, Holds::Yes);
            }
        }
    }

    #[test]
    fn dpi_excludes_epi_minus_dpi(g in simple_group(), pi in odd_pi()) {
        let (case, _) = classify_epi_minus_dpi(&EpiSubject::Lie(g.clone()), &pi).unwrap();
        let d = decide_dpi(&g, &pi);
        if d.holds == Holds::Yes {
            prop_assert!(case.is_none());
        }
        let e = decide(&g, &pi, Property::E).holds;
        prop_assert_eq!(e == Holds::Yes, d.holds == Holds::Yes || case.is_some());
        prop_assert_eq!(decide(&g, &pi, Property::C).holds, e);
    }

    #[test]
    fn decisions_are_deterministic(g in simple_group(), pi in odd_pi()) {
        for p in [Property::E, Property::D] {
            prop_assert_eq!(decide(&g, &pi, p).to_json(), decide(&g, &pi, p).to_json());
        }
    }

    #[test]
    fn even_pi_is_out_of_scope(g in simple_group(), pi in odd_pi()) {
        let with_two = pi.union(&PrimeSet::new([2]).unwrap());
        if pi_intersection(&with_two, &g).len() >= 2 {
            prop_assert_eq!(decide_dpi(&g, &with_two).holds, Holds::OutOfScope);
        }
    }
}
