//! Truncated power series and Laurent series in prime-indexed variables,
//! and their identification with arithmetic functions on `Γ(k)`.
//!
//! The variable `x_i` stands for the `i`-th prime, so `n = ∏ p_i^{a_i}`
//! corresponds to the monomial `x^a`.

use std::collections::BTreeMap;

use crate::dirichlet::{check_ring, ArithFunction};
use crate::error::{Error, Result};
use crate::grothendieck::ExtFunction;
use crate::monoid::MonoidSpec;
use crate::primes::first_primes;
use crate::ring::{RingDescriptor, RingElement};

/// A power series in `k` variables known up to per-variable caps.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    ring: RingDescriptor,
    caps: Vec<u32>,
    coeffs: BTreeMap<Vec<u32>, RingElement>,
}

fn within(a: &[u32], caps: &[u32]) -> bool {
    a.iter().zip(caps).all(|(x, c)| x <= c)
}

/// Every exponent vector in the box `0 <= a <= caps`, lexicographically.
fn exponent_box(caps: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=c).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `∏ p_i^{a_i}`, or `None` on overflow.
fn monomial_value(primes: &[u64], a: &[u32]) -> Option<u64> {
    primes
        .iter()
        .zip(a)
        .try_fold(1u64, |acc, (&p, &e)| acc.checked_mul(p.checked_pow(e)?))
}

impl TruncatedSeries {
    pub fn zero(ring: RingDescriptor, caps: Vec<u32>) -> Self {
        TruncatedSeries {
            ring,
            caps,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingDescriptor, caps: Vec<u32>) -> Self {
        let mut s = Self::zero(ring.clone(), caps);
        s.coeffs.insert(vec![0; s.caps.len()], ring.one());
        s
    }

    pub fn monomial(caps: Vec<u32>, exponents: Vec<u32>, c: RingElement) -> Result<Self> {
        let mut s = Self::zero(c.ring(), caps);
        s.set(exponents, c)?;
        Ok(s)
    }

    pub fn from_terms(
        ring: RingDescriptor,
        caps: Vec<u32>,
        terms: impl IntoIterator<Item = (Vec<u32>, RingElement)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ring, caps);
        for (a, c) in terms {
            s.set(a, c)?;
        }
        Ok(s)
    }

    pub fn set(&mut self, exponents: Vec<u32>, c: RingElement) -> Result<()> {
        check_ring(&self.ring, &c)?;
        if exponents.len() != self.caps.len() {
            return Err(Error::ShapeMismatch(format!(
                "exponent vector of length {} in {} variables",
                exponents.len(),
                self.caps.len()
            )));
        }
        if !within(&exponents, &self.caps) {
            return Err(Error::ShapeMismatch(format!(
                "exponents {exponents:?} exceed caps {:?}",
                self.caps
            )));
        }
        if c.is_exact_zero() {
            self.coeffs.remove(&exponents);
        } else {
            self.coeffs.insert(exponents, c);
        }
        Ok(())
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn coeff(&self, exponents: &[u32]) -> RingElement {
        self.coeffs
            .get(exponents)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Stored terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RingElement)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(RingElement::is_zero)
    }

    pub fn truncate(&self, caps: &[u32]) -> Result<Self> {
        self.check_nvars(caps.len())?;
        let caps: Vec<u32> = caps.iter().zip(&self.caps).map(|(a, b)| *a.min(b)).collect();
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(a, _)| within(a, &caps))
            .map(|(a, c)| (a.clone(), c.clone()))
            .collect();
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            caps,
            coeffs,
        })
    }

    fn check_nvars(&self, k: usize) -> Result<()> {
        if k == self.caps.len() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "{} variables against {k}",
                self.caps.len()
            )))
        }
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<Vec<u32>> {
        if self.ring != other.ring {
            return Err(Error::MixedRings {
                left: self.ring.clone(),
                right: other.ring.clone(),
            });
        }
        self.check_nvars(other.nvars())?;
        Ok(self.caps.iter().zip(&other.caps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let caps = self.check_compatible(other)?;
        let mut out = self.truncate(&caps)?;
        for (a, c) in other.coeffs.iter().filter(|(a, _)| within(a, &caps)) {
            let sum = out.coeff(a).add(c)?;
            out.set(a.clone(), sum)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            ring: self.ring.clone(),
            caps: self.caps.clone(),
            coeffs: self.coeffs.iter().map(|(a, c)| (a.clone(), c.neg())).collect(),
        }
    }

    /// Cauchy product, discarding terms beyond the common caps.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        let caps = self.check_compatible(other)?;
        let mut acc: BTreeMap<Vec<u32>, RingElement> = BTreeMap::new();
        for (a, x) in &self.coeffs {
            if !within(a, &caps) {
                continue;
            }
            for (b, y) in &other.coeffs {
                let e: Vec<u32> = a.iter().zip(b).map(|(i, j)| i + j).collect();
                if !within(&e, &caps) {
                    continue;
                }
                let p = x.mul(y)?;
                match acc.get_mut(&e) {
                    Some(slot) => slot.add_assign(&p)?,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_exact_zero());
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            caps,
            coeffs: acc,
        })
    }
}

impl PartialEq for TruncatedSeries {
    /// Same ring and caps, coefficients equal (missing terms count as zero).
    fn eq(&self, other: &Self) -> bool {
        if self.ring != other.ring || self.caps != other.caps {
            return false;
        }
        let zero = self.ring.zero();
        let keys: std::collections::BTreeSet<_> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().all(|a| {
            self.coeffs.get(a).unwrap_or(&zero) == other.coeffs.get(a).unwrap_or(&zero)
        })
    }
}

fn gamma_rank(spec: &MonoidSpec) -> Option<usize> {
    match spec {
        MonoidSpec::PrimeGenerated(k) => Some(*k),
        _ => None,
    }
}

fn check_gamma(spec: &MonoidSpec, k: usize) -> Result<()> {
    match gamma_rank(spec) {
        Some(j) if j == k => Ok(()),
        _ => Err(Error::SpecMismatch {
            expected: format!("gamma({k})"),
            got: spec.to_string(),
        }),
    }
}

/// `Φ_k(α) = Σ α(n) x^{a(n)}` over the exponent box `caps`.
///
/// Every coefficient in the box must be exact, so `∏ p_i^{caps_i}` may not
/// exceed the bound of `α`.
pub fn iso_encode(alpha: &ArithFunction, caps: &[u32]) -> Result<TruncatedSeries> {
    check_gamma(alpha.spec(), caps.len())?;
    let primes = first_primes(caps.len());
    let corner = monomial_value(&primes, caps);
    if corner.is_none_or(|c| c > alpha.bound()) {
        return Err(Error::BoundTooSmall {
            bound: alpha.bound(),
            reason: format!("caps {caps:?} reach past the bound"),
        });
    }
    let mut s = TruncatedSeries::zero(alpha.ring().clone(), caps.to_vec());
    for a in exponent_box(caps) {
        let n = monomial_value(&primes, &a).expect("inside the corner");
        let c = alpha.get(n).expect("inside the window").clone();
        s.set(a, c)?;
    }
    Ok(s)
}

/// The function on `Γ(k)` with `α(∏ p_i^{a_i}) = s[a]`, tabulated up to
/// `∏ p_i^{caps_i}`; elements outside the exponent box get zero.
pub fn iso_decode(s: &TruncatedSeries) -> Result<ArithFunction> {
    let k = s.nvars();
    let primes = first_primes(k);
    let bound = monomial_value(&primes, s.caps())
        .ok_or_else(|| Error::Overflow(format!("caps {:?}", s.caps())))?;
    let spec = MonoidSpec::gamma(k)?;
    let mut alpha = ArithFunction::zero(spec, s.ring().clone(), bound);
    for (a, c) in s.terms() {
        let n = monomial_value(&primes, a).expect("inside the corner");
        alpha.set(n, c.clone())?;
    }
    Ok(alpha)
}

/// `x^shift · body`, with the body known up to its caps. The absolute
/// exponents `shift + caps` bound the known region.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    shift: Vec<i64>,
    body: TruncatedSeries,
}

impl LaurentSeries {
    pub fn new(shift: Vec<i64>, body: TruncatedSeries) -> Result<Self> {
        body.check_nvars(shift.len())?;
        let mut ls = LaurentSeries { shift, body };
        ls.canonicalize();
        Ok(ls)
    }

    /// The series with the given absolute terms, known up to `top`.
    pub fn from_terms(
        ring: RingDescriptor,
        top: Vec<i64>,
        terms: impl IntoIterator<Item = (Vec<i64>, RingElement)>,
    ) -> Result<Self> {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut shift = vec![0i64; top.len()];
        for (a, _) in &terms {
            if a.len() != top.len() {
                return Err(Error::ShapeMismatch(format!("exponent vector {a:?}")));
            }
            for (s, &x) in shift.iter_mut().zip(a) {
                *s = (*s).min(x);
            }
        }
        let caps = relative(&top, &shift)?;
        let mut body = TruncatedSeries::zero(ring, caps);
        for (a, c) in terms {
            let rel = relative(&a, &shift)?;
            body.set(rel, c)?;
        }
        Self::new(shift, body)
    }

    pub fn one(ring: RingDescriptor, caps: Vec<u32>) -> Self {
        let k = caps.len();
        LaurentSeries {
            shift: vec![0; k],
            body: TruncatedSeries::one(ring, caps),
        }
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn body(&self) -> &TruncatedSeries {
        &self.body
    }

    pub fn ring(&self) -> &RingDescriptor {
        self.body.ring()
    }

    pub fn nvars(&self) -> usize {
        self.shift.len()
    }

    /// Absolute exponents up to which the series is known.
    pub fn top(&self) -> Vec<i64> {
        self.shift
            .iter()
            .zip(self.body.caps())
            .map(|(&s, &c)| s + c as i64)
            .collect()
    }

    /// Nonzero terms keyed by absolute exponents.
    pub fn terms(&self) -> BTreeMap<Vec<i64>, RingElement> {
        self.body
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| {
                let abs = a.iter().zip(&self.shift).map(|(&x, &s)| x as i64 + s).collect();
                (abs, c.clone())
            })
            .collect()
    }

    pub fn coeff(&self, exponents: &[i64]) -> RingElement {
        match relative(exponents, &self.shift) {
            Ok(a) if within(&a, self.body.caps()) => self.body.coeff(&a),
            _ => self.ring().zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Moves positive shifts into the body, then raises negative shifts
    /// while `x_i` divides every term.
    fn canonicalize(&mut self) {
        for i in 0..self.nvars() {
            if self.shift[i] > 0 {
                let s = self.shift[i] as u32;
                self.rebase(i, |a| a + s, self.body.caps[i] + s);
                self.shift[i] = 0;
            }
            if self.body.coeffs.is_empty() {
                continue;
            }
            let lowest = self.body.coeffs.keys().map(|a| a[i]).min().expect("nonempty");
            let raise = (lowest as i64).min(-self.shift[i]).max(0) as u32;
            if raise > 0 {
                self.rebase(i, |a| a - raise, self.body.caps[i] - raise);
                self.shift[i] += raise as i64;
            }
        }
    }

    fn rebase(&mut self, i: usize, f: impl Fn(u32) -> u32, cap: u32) {
        let coeffs = std::mem::take(&mut self.body.coeffs);
        self.body.coeffs = coeffs
            .into_iter()
            .map(|(mut a, c)| {
                a[i] = f(a[i]);
                (a, c)
            })
            .collect();
        self.body.caps[i] = cap;
    }

    fn check_compatible(&self, other: &LaurentSeries) -> Result<()> {
        if self.ring() != other.ring() {
            return Err(Error::MixedRings {
                left: self.ring().clone(),
                right: other.ring().clone(),
            });
        }
        self.body.check_nvars(other.nvars())
    }

    /// Drops everything above `top` (componentwise) and forgets it.
    pub fn truncate_top(&self, top: &[i64]) -> Result<LaurentSeries> {
        self.body.check_nvars(top.len())?;
        let top: Vec<i64> = top.iter().zip(self.top()).map(|(&a, b)| a.min(b)).collect();
        let terms = self
            .terms()
            .into_iter()
            .filter(|(a, _)| a.iter().zip(&top).all(|(x, t)| x <= t))
            .collect::<Vec<_>>();
        Self::from_terms_with_floor(self.ring().clone(), top, &self.shift, terms)
    }

    fn from_terms_with_floor(
        ring: RingDescriptor,
        top: Vec<i64>,
        floor: &[i64],
        terms: impl IntoIterator<Item = (Vec<i64>, RingElement)>,
    ) -> Result<Self> {
        let shift: Vec<i64> = floor.iter().zip(&top).map(|(&f, &t)| f.min(t).min(0)).collect();
        let caps = relative(&top, &shift)?;
        let mut body = TruncatedSeries::zero(ring, caps);
        for (a, c) in terms {
            body.set(relative(&a, &shift)?, c)?;
        }
        Self::new(shift, body)
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_compatible(other)?;
        let top: Vec<i64> = self.top().iter().zip(other.top()).map(|(&a, b)| a.min(b)).collect();
        let floor: Vec<i64> = self.shift.iter().zip(&other.shift).map(|(&a, &b)| a.min(b)).collect();
        let mut terms = self.terms();
        for (a, c) in other.terms() {
            match terms.get_mut(&a) {
                Some(slot) => slot.add_assign(&c)?,
                None => {
                    terms.insert(a, c);
                }
            }
        }
        let terms = terms
            .into_iter()
            .filter(|(a, c)| !c.is_exact_zero() && a.iter().zip(&top).all(|(x, t)| x <= t))
            .collect::<Vec<_>>();
        Self::from_terms_with_floor(self.ring().clone(), top, &floor, terms)
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            shift: self.shift.clone(),
            body: self.body.neg(),
        }
    }

    /// Shifts add; the bodies multiply within their common caps.
    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check_compatible(other)?;
        let shift = self.shift.iter().zip(&other.shift).map(|(a, b)| a + b).collect();
        Self::new(shift, self.body.mul(&other.body)?)
    }
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ring() == other.ring() && self.top() == other.top() && self.terms() == other.terms()
    }
}

/// `a - shift`, which must be nonnegative.
fn relative(a: &[i64], shift: &[i64]) -> Result<Vec<u32>> {
    a.iter()
        .zip(shift)
        .map(|(&x, &s)| {
            u32::try_from(x - s).map_err(|_| Error::ShapeMismatch(format!("exponent {x} below shift {s}")))
        })
        .collect()
}

fn prime_exponents(primes: &[u64], mut n: u64) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(primes.len());
    for &p in primes {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push(e);
    }
    (n == 1).then_some(out)
}

/// `Φ(α) = Σ α(q) q^x`, known up to the absolute exponents `top`.
///
/// The function must live on `Γ(k)` or `N*` with support in `Γ(k)`, where
/// `k = top.len()`; the region up to `top` must be exact.
pub fn laurent_encode(alpha: &ExtFunction, top: &[i64]) -> Result<LaurentSeries> {
    let k = top.len();
    let primes = first_primes(k);
    if !matches!(alpha.spec(), MonoidSpec::FullNStar) {
        check_gamma(alpha.spec(), k)?;
    }
    let d = alpha.denominator();
    let shift: Vec<i64> = prime_exponents(&primes, d)
        .ok_or(Error::DenominatorOutsideVariables(d))?
        .into_iter()
        .map(|e| -(e as i64))
        .collect();
    let caps = relative(top, &shift).map_err(|_| Error::BoundTooSmall {
        bound: alpha.bound(),
        reason: format!("top {top:?} lies below the denominator {d}"),
    })?;
    let corner = monomial_value(&primes, &caps);
    if corner.is_none_or(|c| c > alpha.bound()) {
        return Err(Error::BoundTooSmall {
            bound: alpha.bound(),
            reason: format!("top {top:?} reaches past the bound"),
        });
    }
    let mut body = TruncatedSeries::zero(alpha.ring().clone(), caps);
    for (n, c) in alpha.core().support() {
        let a = prime_exponents(&primes, n).ok_or_else(|| Error::SpecMismatch {
            expected: format!("support in gamma({k})"),
            got: format!("{} with {n} in the support", alpha.spec()),
        })?;
        if within(&a, body.caps()) {
            body.set(a, c.clone())?;
        }
    }
    LaurentSeries::new(shift, body)
}

/// The function on the Grothendieck group of `Γ(k)` with `α(q) = ls[q^x]`,
/// zero on exponents outside the known box.
pub fn laurent_decode(ls: &LaurentSeries) -> Result<ExtFunction> {
    let k = ls.nvars();
    let primes = first_primes(k);
    let neg: Vec<u32> = ls.shift.iter().map(|&s| (-s).max(0) as u32).collect();
    let pos: Vec<u32> = ls.shift.iter().map(|&s| s.max(0) as u32).collect();
    let overflow = || Error::Overflow(format!("shift {:?}", ls.shift));
    let d = monomial_value(&primes, &neg).ok_or_else(overflow)?;
    let lift = monomial_value(&primes, &pos).ok_or_else(overflow)?;
    let corner = monomial_value(&primes, ls.body.caps()).ok_or_else(overflow)?;
    let bound = corner.checked_mul(lift).ok_or_else(overflow)?;
    let mut core = ArithFunction::zero(MonoidSpec::gamma(k)?, ls.ring().clone(), bound);
    for (a, c) in ls.body.terms() {
        let n = monomial_value(&primes, a).expect("inside the corner") * lift;
        core.set(n, c.clone())?;
    }
    ExtFunction::new(d, core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::Fraction;

    fn q(n: i64) -> RingElement {
        RingDescriptor::Rational.from_i64(n)
    }

    fn sample(k: usize, bound: u64, seed: u64) -> ArithFunction {
        ArithFunction::from_fn(MonoidSpec::gamma(k).unwrap(), RingDescriptor::Rational, bound, |n| {
            q(((n.wrapping_mul(2654435761).wrapping_add(seed) >> 7) % 7) as i64 - 3)
        })
        .unwrap()
    }

    #[test]
    fn truncated_products() {
        let r = RingDescriptor::Rational;
        let a = TruncatedSeries::from_terms(r.clone(), vec![1], [(vec![0], q(1)), (vec![1], q(1))]).unwrap();
        let b = TruncatedSeries::from_terms(r.clone(), vec![1], [(vec![0], q(1)), (vec![1], q(-1))]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), TruncatedSeries::one(r.clone(), vec![1]));
        assert_eq!(a.mul(&TruncatedSeries::one(r.clone(), vec![1])).unwrap(), a);
        let x1 = TruncatedSeries::monomial(vec![2, 2], vec![1, 0], q(1)).unwrap();
        let x2 = TruncatedSeries::monomial(vec![2, 2], vec![0, 1], q(1)).unwrap();
        assert_eq!(x1.mul(&x2).unwrap(), TruncatedSeries::monomial(vec![2, 2], vec![1, 1], q(1)).unwrap());
    }

    #[test]
    fn encode_examples() {
        let g2 = MonoidSpec::gamma(2).unwrap();
        let ind12 = ArithFunction::new(g2.clone(), RingDescriptor::Rational, 72, [(12, q(1))]).unwrap();
        let s = iso_encode(&ind12, &[3, 2]).unwrap();
        assert_eq!(s, TruncatedSeries::monomial(vec![3, 2], vec![2, 1], q(1)).unwrap());
        let e = ArithFunction::unit(g2.clone(), RingDescriptor::Rational, 72);
        assert_eq!(iso_encode(&e, &[3, 2]).unwrap(), TruncatedSeries::one(RingDescriptor::Rational, vec![3, 2]));
        assert!(matches!(iso_encode(&e, &[4, 2]), Err(Error::BoundTooSmall { .. })));
        let n = ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::Rational, 72);
        assert!(matches!(iso_encode(&n, &[1, 1]), Err(Error::SpecMismatch { .. })));
    }

    #[test]
    fn encode_round_trip_and_products() {
        let caps = [4, 3, 2];
        let (a, b) = (sample(3, 10800, 1), sample(3, 10800, 2));
        let sa = iso_encode(&a, &caps).unwrap();
        let back = iso_decode(&sa).unwrap();
        assert_eq!(iso_encode(&back, &caps).unwrap(), sa);
        for (n, v) in back.support() {
            assert_eq!(a.get(n), Some(v));
        }
        let lhs = iso_encode(&a.convolve(&b).unwrap(), &caps).unwrap();
        let rhs = sa.mul(&iso_encode(&b, &caps).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn encodings_compatible_across_ranks() {
        let a = sample(3, 720, 5);
        let sub = MonoidSpec::gamma(2).unwrap();
        let low = iso_encode(&a.restrict_to(&sub).unwrap(), &[3, 2]).unwrap();
        let high = iso_encode(&a, &[3, 2, 0]).unwrap();
        for (e, c) in low.terms() {
            let mut e3 = e.clone();
            e3.push(0);
            assert_eq!(&high.coeff(&e3), c);
        }
        assert_eq!(low.terms().count(), high.terms().count());
    }

    #[test]
    fn laurent_examples() {
        let g2 = MonoidSpec::gamma(2).unwrap();
        let three_halves = ExtFunction::from_values(
            g2.clone(),
            RingDescriptor::Rational,
            2,
            1 << 12,
            [(Fraction::new(3, 2).unwrap(), q(1))],
        )
        .unwrap();
        let ls = laurent_encode(&three_halves, &[2, 2]).unwrap();
        assert_eq!(ls.terms().into_iter().collect::<Vec<_>>(), vec![(vec![-1, 1], q(1))]);
        assert_eq!(ls.top(), vec![2, 2]);
        assert!(laurent_decode(&ls).unwrap().agrees_with(&three_halves));

        let e = ExtFunction::embed(&ArithFunction::unit(g2.clone(), RingDescriptor::Rational, 100));
        assert_eq!(laurent_encode(&e, &[2, 2]).unwrap(), LaurentSeries::one(RingDescriptor::Rational, vec![2, 2]));

        let n = ExtFunction::new(5, ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::Rational, 100)).unwrap();
        assert_eq!(laurent_encode(&n, &[1, 1]).unwrap_err(), Error::DenominatorOutsideVariables(5));
    }

    #[test]
    fn laurent_canonical_form() {
        let r = RingDescriptor::Rational;
        let body = TruncatedSeries::from_terms(r.clone(), vec![4], [(vec![2], q(1)), (vec![3], q(2))]).unwrap();
        let ls = LaurentSeries::new(vec![-3], body).unwrap();
        assert_eq!(ls.shift(), &[-1]);
        assert_eq!(ls.top(), vec![1]);
        let again = LaurentSeries::new(ls.shift().to_vec(), ls.body().clone()).unwrap();
        assert_eq!(again.shift(), ls.shift());
        assert_eq!(again.body(), ls.body());
    }

    #[test]
    fn laurent_products() {
        let g2 = MonoidSpec::gamma(2).unwrap();
        let bound = 1u64 << 40;
        let mk = |vals: &[((u64, u64), i64)]| {
            ExtFunction::from_values(
                g2.clone(),
                RingDescriptor::Rational,
                216,
                bound,
                vals.iter().map(|&((m, n), c)| (Fraction::new(m, n).unwrap(), q(c))),
            )
            .unwrap()
        };
        let a = mk(&[((1, 8), 2), ((3, 2), -1), ((27, 1), 1)]);
        let b = mk(&[((1, 27), 1), ((4, 9), 3), ((1, 1), -2)]);
        let la = laurent_encode(&a, &[3, 3]).unwrap();
        let lb = laurent_encode(&b, &[3, 3]).unwrap();
        let prod = la.mul(&lb).unwrap();
        let direct = laurent_encode(&a.convolve(&b).unwrap(), &[6, 6]).unwrap();
        assert_eq!(direct.truncate_top(&prod.top()).unwrap(), prod);
        let sum = la.add(&lb).unwrap();
        assert_eq!(laurent_encode(&a.add(&b).unwrap(), &[3, 3]).unwrap(), sum);
    }
}
