mod common;

use common::mobius_sieve;
use dirconv::grothendieck::{ExtFunction, Fraction};
use dirconv::series::{iso_decode, iso_encode};
use dirconv::text::{parse_ext, parse_function, write_ext, write_function, Overrides};
use dirconv::{ArithFunction, MonoidSpec, Norm, RingDescriptor};
use proptest::prelude::*;

const B: u64 = 48;

fn int_fn(values: &[i64], bound: u64) -> ArithFunction {
    let z = RingDescriptor::Integer;
    ArithFunction::from_fn(MonoidSpec::nstar(), z.clone(), bound, |n| z.from_i64(values[n as usize - 1])).unwrap()
}

fn values() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -5i64..=5], B as usize)
}

proptest! {
    #[test]
    fn convolution_commutes(a in values(), b in values()) {
        let (a, b) = (int_fn(&a, B), int_fn(&b, B));
        prop_assert_eq!(a.convolve(&b).unwrap(), b.convolve(&a).unwrap());
    }

    #[test]
    fn inverse_round_trip(mut a in values(), head in prop::bool::ANY) {
        a[0] = if head { 1 } else { -1 };
        let a = int_fn(&a, B);
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.convolve(&inv).unwrap(), ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::Integer, B));
        prop_assert_eq!(inv.invert().unwrap(), a);
    }

    #[test]
    fn norm_is_multiplicative(a in values(), b in values()) {
        let (a, b) = (int_fn(&a, B), int_fn(&b, B));
        let prod = a.convolve(&b).unwrap().norm();
        match (a.norm(), b.norm()) {
            (Norm::Value(m), Norm::Value(n)) if m * n <= B => prop_assert_eq!(prod, Norm::Value(m * n)),
            _ => prop_assert_eq!(prod, Norm::ZeroUpToBound),
        }
    }

    #[test]
    fn truncation_commutes_with_products(a in values(), b in values(), cut in 1..=B) {
        let (a, b) = (int_fn(&a, B), int_fn(&b, B));
        let lhs = a.convolve(&b).unwrap().truncate(cut);
        prop_assert_eq!(lhs, a.truncate(cut).convolve(&b.truncate(cut)).unwrap());
    }

    #[test]
    fn fractions_reduce(m in 1u64..500, n in 1u64..500, k in 1u64..50) {
        let q = Fraction::new(m * k, n * k).unwrap();
        prop_assert_eq!(q, Fraction::new(m, n).unwrap());
        prop_assert!(q.mul(&q.inv()).unwrap().is_one());
        prop_assert_eq!(q.to_string().parse::<Fraction>().unwrap(), q);
    }

    #[test]
    fn series_round_trip(a in values()) {
        let spec = MonoidSpec::gamma(2).unwrap();
        let z = RingDescriptor::Integer;
        let in_box = |n: u64| 8 % (n & n.wrapping_neg()) == 0 && 9 % (n >> n.trailing_zeros()) == 0;
        let f = ArithFunction::from_fn(spec, z.clone(), 72, |n| {
            if in_box(n) { z.from_i64(a[(n % B) as usize]) } else { z.zero() }
        })
        .unwrap();
        let back = iso_decode(&iso_encode(&f, &[3, 2]).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn function_files_round_trip(a in values()) {
        let f = int_fn(&a, B);
        let text = write_function(&f);
        let g = parse_function(&text, &Overrides::default()).unwrap();
        prop_assert_eq!(write_function(&g), text);
        prop_assert_eq!(g, f);
    }

    #[test]
    fn ext_files_round_trip(a in values(), d in prop::sample::select(vec![1u64, 2, 3, 6])) {
        let x = ExtFunction::new(d, int_fn(&a, B)).unwrap();
        let text = write_ext(&x);
        let y = parse_ext(&text, &Overrides::default()).unwrap();
        prop_assert_eq!(write_ext(&y), text);
        prop_assert_eq!(y, x);
    }
}

#[test]
fn mobius_matches_sieve_at_small_bounds() {
    let sieve = mobius_sieve(300);
    let q = RingDescriptor::Rational;
    for bound in [1, 2, 30, 300] {
        let mu = ArithFunction::constant(MonoidSpec::nstar(), bound, q.one()).invert().unwrap();
        for n in 1..=bound {
            assert_eq!(mu.value(n).unwrap(), q.from_i64(sieve[n as usize]));
        }
    }
}
