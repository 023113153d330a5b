//! Derivations on rings of arithmetic functions.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::dirichlet::{check_ring, ArithFunction};
use crate::error::{Error, Result};
use crate::module::{ModuleFunction, Vector};
use crate::primes::{factorize, is_prime, valuation};
use crate::ring::{RingDescriptor, RingElement};

/// A derivation `D: R -> M` of the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseDerivation {
    Zero,
    /// `d/dz` on a truncated polynomial ring; only into `M = R`.
    PolyDerivative,
}

impl BaseDerivation {
    pub fn apply(&self, r: &RingElement, rank: usize) -> Result<Vector> {
        match self {
            BaseDerivation::Zero => Ok(vec![r.ring().zero(); rank]),
            BaseDerivation::PolyDerivative => {
                if rank != 1 {
                    return Err(Error::RankMismatch { left: 1, right: rank });
                }
                Ok(vec![r.poly_derivative()?])
            }
        }
    }

    fn check_ring(&self, ring: &RingDescriptor) -> Result<()> {
        match (self, ring) {
            (BaseDerivation::PolyDerivative, RingDescriptor::Poly { .. }) | (BaseDerivation::Zero, _) => Ok(()),
            _ => Err(Error::WrongRing {
                expected: "a truncated polynomial ring",
                got: ring.clone(),
            }),
        }
    }
}

impl std::str::FromStr for BaseDerivation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(BaseDerivation::Zero),
            "poly" => Ok(BaseDerivation::PolyDerivative),
            _ => Err(Error::parse(format!("unknown base derivation '{s}'"))),
        }
    }
}

/// A completely additive map `δ: Γ -> R^m`, given on primes.
///
/// Primes without an explicit value take `fallback` when one is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    ring: RingDescriptor,
    rank: usize,
    prime_values: BTreeMap<u64, Vector>,
    fallback: Option<Vector>,
}

impl Character {
    pub fn new(
        ring: RingDescriptor,
        rank: usize,
        prime_values: impl IntoIterator<Item = (u64, Vector)>,
    ) -> Result<Self> {
        let mut c = Character {
            ring,
            rank,
            prime_values: BTreeMap::new(),
            fallback: None,
        };
        for (p, v) in prime_values {
            if !is_prime(p) {
                return Err(Error::ShapeMismatch(format!("{p} is not a prime")));
            }
            c.check_vector(&v)?;
            c.prime_values.insert(p, v);
        }
        Ok(c)
    }

    /// The zero character of rank `m`.
    pub fn zero(ring: RingDescriptor, rank: usize) -> Self {
        let fallback = Some(vec![ring.zero(); rank]);
        Character {
            ring,
            rank,
            prime_values: BTreeMap::new(),
            fallback,
        }
    }

    /// The rank-one character with `δ(p) = c` for every prime.
    pub fn constant(c: RingElement) -> Self {
        Character {
            ring: c.ring(),
            rank: 1,
            prime_values: BTreeMap::new(),
            fallback: Some(vec![c]),
        }
    }

    /// A rank-one character with `δ(p) = f(p)` for every prime `p <= max_prime`.
    pub fn from_prime_fn(
        ring: RingDescriptor,
        max_prime: u64,
        mut f: impl FnMut(u64) -> RingElement,
    ) -> Result<Self> {
        Self::new(
            ring,
            1,
            (2..=max_prime).filter(|&p| is_prime(p)).map(|p| (p, vec![f(p)])),
        )
    }

    /// `δ(p) = -log p` over the complex numbers, for `p <= max_prime`.
    pub fn neg_log(ring: RingDescriptor, max_prime: u64) -> Result<Self> {
        let r = ring.clone();
        Self::from_prime_fn(ring, max_prime, |p| {
            r.from_complex(Complex64::new(-(p as f64).ln(), 0.0))
                .expect("ring embeds the complex numbers")
        })
    }

    fn check_vector(&self, v: &[RingElement]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: v.len(),
            });
        }
        v.iter().try_for_each(|x| check_ring(&self.ring, x))
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn prime_values(&self) -> &BTreeMap<u64, Vector> {
        &self.prime_values
    }

    pub fn at_prime(&self, p: u64) -> Result<&Vector> {
        self.prime_values
            .get(&p)
            .or(self.fallback.as_ref())
            .ok_or(Error::MissingPrimeValue(p))
    }

    /// `δ(∏ p^a) = Σ a·δ(p)`.
    pub fn eval(&self, n: u64) -> Result<Vector> {
        let mut acc = vec![self.ring.zero(); self.rank];
        for (p, e) in factorize(n) {
            for (slot, x) in acc.iter_mut().zip(self.at_prime(p)?) {
                slot.add_assign(&x.scale_i64(e as i64))?;
            }
        }
        Ok(acc)
    }
}

/// The pair `(D, δ)` determining a lifted derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpec {
    pub base: BaseDerivation,
    pub character: Character,
}

impl DerivationSpec {
    pub fn new(base: BaseDerivation, character: Character) -> Result<Self> {
        base.check_ring(character.ring())?;
        if base == BaseDerivation::PolyDerivative && character.rank() != 1 {
            return Err(Error::RankMismatch {
                left: 1,
                right: character.rank(),
            });
        }
        Ok(DerivationSpec { base, character })
    }
}

/// `D̃(α)(n) = D(α(n)) + α(n)·δ(n)`.
pub fn lift_derivation(dspec: &DerivationSpec, alpha: &ArithFunction) -> Result<ModuleFunction> {
    let ch = &dspec.character;
    if ch.ring() != alpha.ring() {
        return Err(Error::MixedRings {
            left: alpha.ring().clone(),
            right: ch.ring().clone(),
        });
    }
    let values = alpha
        .iter()
        .map(|(n, a)| {
            let mut v = dspec.base.apply(a, ch.rank())?;
            if !a.is_exact_zero() {
                for (slot, d) in v.iter_mut().zip(ch.eval(n)?) {
                    slot.add_assign(&a.mul(&d)?)?;
                }
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModuleFunction::from_parts(
        alpha.window().clone(),
        alpha.ring().clone(),
        ch.rank(),
        values,
    ))
}

/// `D̃_p(α)(n) = D(α(n)) + α(np)·v_p(np)`, valid up to `floor(B/p)`.
pub fn p_derivation(p: u64, base: BaseDerivation, alpha: &ArithFunction) -> Result<ArithFunction> {
    if !is_prime(p) {
        return Err(Error::ShapeMismatch(format!("{p} is not a prime")));
    }
    base.check_ring(alpha.ring())?;
    alpha.spec().element(p)?;
    let bound = alpha.bound() / p;
    if bound < 1 {
        return Err(Error::BoundTooSmall {
            bound: alpha.bound(),
            reason: format!("the {p}-derivation needs a bound of at least {p}"),
        });
    }
    let window = alpha.window().truncate(bound);
    let values = window
        .elements()
        .iter()
        .map(|&n| {
            let a = alpha.get(n).expect("n lies in the window");
            let mut v = base.apply(a, 1)?.remove(0);
            let np = n * p;
            if let Some(shifted) = alpha.get(np) {
                v.add_assign(&shifted.scale_i64(valuation(np, p) as i64))?;
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArithFunction::from_parts(window, alpha.ring().clone(), values))
}

fn scale_by_log(alpha: &ArithFunction, f: impl Fn(&RingElement, &RingElement) -> Result<RingElement>) -> Result<ArithFunction> {
    let ring = alpha.ring();
    let values = alpha
        .iter()
        .map(|(n, a)| {
            let log = ring.from_complex(Complex64::new((n as f64).ln(), 0.0))?;
            f(a, &log)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ArithFunction::from_parts(alpha.window().clone(), ring.clone(), values))
}

/// `D_L(α)(n) = -log(n)·α(n)`.
pub fn log_derivation(alpha: &ArithFunction) -> Result<ArithFunction> {
    if !matches!(alpha.ring(), RingDescriptor::Complex { .. }) {
        return Err(Error::WrongRing {
            expected: "the complex numbers",
            got: alpha.ring().clone(),
        });
    }
    scale_by_log(alpha, |a, log| Ok(a.mul(log)?.neg()))
}

/// `D̃(α)(n) = α(n)' - log(n)·α(n)` on polynomial-valued functions.
pub fn holo_derivation(alpha: &ArithFunction) -> Result<ArithFunction> {
    if !matches!(alpha.ring(), RingDescriptor::Poly { .. }) {
        return Err(Error::WrongRing {
            expected: "a truncated polynomial ring",
            got: alpha.ring().clone(),
        });
    }
    scale_by_log(alpha, |a, log| a.poly_derivative()?.sub(&a.mul(log)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidSpec;

    fn q(n: i64) -> RingElement {
        RingDescriptor::Rational.from_i64(n)
    }

    fn c(re: f64, im: f64) -> RingElement {
        RingDescriptor::complex().from_complex(Complex64::new(re, im)).unwrap()
    }

    fn sample_q(seed: i64, bound: u64) -> ArithFunction {
        ArithFunction::from_fn(MonoidSpec::nstar(), RingDescriptor::Rational, bound, |n| {
            q(((n as i64 * 7 + seed) % 5) - 2)
        })
        .unwrap()
    }

    #[test]
    fn character_additivity() {
        let ch = Character::constant(q(1));
        assert_eq!(ch.eval(12).unwrap(), vec![q(3)]);
        assert_eq!(ch.eval(1).unwrap(), vec![q(0)]);
        let partial = Character::new(RingDescriptor::Rational, 1, [(2, vec![q(1)])]).unwrap();
        assert_eq!(partial.eval(3), Err(Error::MissingPrimeValue(3)));
        for m in 1..=12u64 {
            for n in 1..=12u64 {
                let lhs = ch.eval(m * n).unwrap();
                let mut rhs = ch.eval(m).unwrap();
                rhs[0].add_assign(&ch.eval(n).unwrap()[0]).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lift_examples() {
        let z = DerivationSpec::new(BaseDerivation::Zero, Character::zero(RingDescriptor::Rational, 1)).unwrap();
        assert!(lift_derivation(&z, &sample_q(1, 30)).unwrap().is_zero());

        let omega = DerivationSpec::new(BaseDerivation::Zero, Character::constant(q(1))).unwrap();
        let d12 = ArithFunction::new(MonoidSpec::nstar(), RingDescriptor::Rational, 20, [(12, q(5))]).unwrap();
        let out = lift_derivation(&omega, &d12).unwrap();
        assert_eq!(out.get(12).unwrap(), &vec![q(15)]);
    }

    #[test]
    fn lift_leibniz_exact() {
        let omega = DerivationSpec::new(BaseDerivation::Zero, Character::constant(q(1))).unwrap();
        let (a, b) = (sample_q(1, 60), sample_q(3, 60));
        let lhs = lift_derivation(&omega, &a.convolve(&b).unwrap()).unwrap();
        let da = lift_derivation(&omega, &a).unwrap();
        let db = lift_derivation(&omega, &b).unwrap();
        let rhs = ModuleFunction::act(&b, &da).unwrap().add(&ModuleFunction::act(&a, &db).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn p_derivation_examples() {
        let one = ArithFunction::constant(MonoidSpec::nstar(), 20, q(1));
        let d = p_derivation(2, BaseDerivation::Zero, &one).unwrap();
        assert_eq!(d.bound(), 10);
        assert_eq!(d.value(1).unwrap(), q(1));
        assert_eq!(d.value(2).unwrap(), q(2));
        assert_eq!(d.value(3).unwrap(), q(1));
        let e = ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::Rational, 20);
        assert!(p_derivation(2, BaseDerivation::Zero, &e).unwrap().is_zero());
        let tiny = ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::Rational, 2);
        assert!(matches!(p_derivation(3, BaseDerivation::Zero, &tiny), Err(Error::BoundTooSmall { .. })));
    }

    #[test]
    fn p_derivation_leibniz() {
        for p in [2, 3, 5] {
            let (a, b) = (sample_q(2, 90), sample_q(4, 90));
            let lhs = p_derivation(p, BaseDerivation::Zero, &a.convolve(&b).unwrap()).unwrap();
            let da = p_derivation(p, BaseDerivation::Zero, &a).unwrap();
            let db = p_derivation(p, BaseDerivation::Zero, &b).unwrap();
            let rhs = da.convolve(&b).unwrap().add(&a.convolve(&db).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn log_examples() {
        let one = ArithFunction::constant(MonoidSpec::nstar(), 10, c(1.0, 0.0));
        let d = log_derivation(&one).unwrap();
        assert!(d.value(1).unwrap().is_zero());
        let v = d.value(2).unwrap().to_complex().unwrap();
        assert!((v.re + 2f64.ln()).abs() < 1e-15);
        assert!(matches!(log_derivation(&sample_q(0, 5)), Err(Error::WrongRing { .. })));

        let lifted = lift_derivation(
            &DerivationSpec::new(BaseDerivation::Zero, Character::neg_log(RingDescriptor::complex(), 10).unwrap()).unwrap(),
            &one,
        )
        .unwrap();
        assert_eq!(lifted.component(0).unwrap(), d);
    }

    #[test]
    fn holo_examples() {
        let ring = RingDescriptor::poly(4);
        let zpoly = ring.parse_element("0,1").unwrap();
        let a = ArithFunction::new(MonoidSpec::nstar(), ring.clone(), 10, [(2, zpoly)]).unwrap();
        let d = holo_derivation(&a).unwrap();
        let l2 = 2f64.ln();
        let expected = ring.parse_element(&format!("1,{}", -l2)).unwrap();
        assert_eq!(d.value(2).unwrap(), expected);
        assert!(d.value(3).unwrap().is_zero());
    }
}
