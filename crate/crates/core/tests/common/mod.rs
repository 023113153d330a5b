#![allow(dead_code)]

use std::collections::BTreeMap;

use dirconv::dirichlet::ArithFunction;
use dirconv::module::ModuleFunction;
use dirconv::monoid::MonoidSpec;
use dirconv::ring::{RingDescriptor, RingElement, TruncPoly};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Linear sieve for the Möbius function on `0..=n`.
pub fn mobius_sieve(n: usize) -> Vec<i64> {
    let mut mu = vec![0i64; n + 1];
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    if n >= 1 {
        mu[1] = 1;
    }
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if i * p > n {
                break;
            }
            composite[i * p] = true;
            if i % p == 0 {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = -mu[i];
        }
    }
    mu
}

/// Trial-division factorization.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| factor(p) == [(p, 1)]).collect()
}

/// `Σ_{ab = n} α(a)β(b)` by scanning every `a <= n`.
pub fn brute_convolve(alpha: &ArithFunction, beta: &ArithFunction) -> BTreeMap<u64, RingElement> {
    let spec = alpha.spec();
    let bound = alpha.bound().min(beta.bound());
    let ring = alpha.ring();
    let mut out = BTreeMap::new();
    for n in 1..=bound {
        if !spec.contains(n) {
            continue;
        }
        let mut acc = ring.zero();
        for a in 1..=n {
            if n % a == 0 && spec.contains(a) && spec.contains(n / a) {
                let t = alpha.value(a).unwrap().mul(&beta.value(n / a).unwrap()).unwrap();
                acc = acc.add(&t).unwrap();
            }
        }
        out.insert(n, acc);
    }
    out
}

pub fn q_ring() -> RingDescriptor {
    RingDescriptor::Rational
}

pub fn rand_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Polynomial of degree at most `degree` in the ring `Poly:cap`.
pub fn rand_poly(rng: &mut ChaCha8Rng, ring: &RingDescriptor, degree: usize) -> RingElement {
    let RingDescriptor::Poly { tolerance, degree_cap } = ring else {
        panic!("not a polynomial ring: {ring}");
    };
    let coeffs = (0..=degree).map(|_| rand_complex(rng)).collect();
    RingElement::Poly(TruncPoly::new(coeffs, *degree_cap, *tolerance))
}

/// A random element: small integers for exact rings, unit-box complex
/// numbers, degree-2 polynomials.
pub fn rand_elem(rng: &mut ChaCha8Rng, ring: &RingDescriptor) -> RingElement {
    match ring {
        RingDescriptor::Complex { .. } => ring.from_complex(rand_complex(rng)).unwrap(),
        RingDescriptor::Poly { .. } => rand_poly(rng, ring, 2),
        RingDescriptor::Rational if rng.gen_bool(0.3) => {
            let num = ring.from_i64(rng.gen_range(-4..=4));
            num.mul(&ring.from_i64(rng.gen_range(1..=3)).inverse().unwrap()).unwrap()
        }
        _ => ring.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn rand_nonzero(rng: &mut ChaCha8Rng, ring: &RingDescriptor) -> RingElement {
    loop {
        let r = rand_elem(rng, ring);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Each window element carries a random value with probability `density`.
pub fn rand_fn(
    rng: &mut ChaCha8Rng,
    spec: &MonoidSpec,
    ring: &RingDescriptor,
    bound: u64,
    density: f64,
) -> ArithFunction {
    ArithFunction::from_fn(spec.clone(), ring.clone(), bound, |_| {
        if rng.gen_bool(density) {
            rand_elem(rng, ring)
        } else {
            ring.zero()
        }
    })
    .unwrap()
}

pub fn rand_module(
    rng: &mut ChaCha8Rng,
    spec: &MonoidSpec,
    ring: &RingDescriptor,
    rank: usize,
    bound: u64,
    density: f64,
) -> ModuleFunction {
    let elems: Vec<u64> = spec.elements_up_to(bound).into_iter().map(|m| m.value()).collect();
    let mut values = Vec::new();
    for n in elems {
        if rng.gen_bool(density) {
            values.push((n, (0..rank).map(|_| rand_elem(rng, ring)).collect()));
        }
    }
    ModuleFunction::new(spec.clone(), ring.clone(), rank, bound, values).unwrap()
}
