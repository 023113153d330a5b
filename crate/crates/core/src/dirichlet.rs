//! The ring of arithmetic functions on a monoid under Dirichlet convolution.
//!
//! An [`ArithFunction`] stores one coefficient for every monoid element up to
//! its bound `B`. Since every divisor of `n` is at most `n`, convolution and
//! inversion computed on that window are exact for all `n <= B`: nothing
//! beyond the bound is ever needed. Results of binary operations live on the
//! smaller of the two windows.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::monoid::{MonoidSpec, Window};
use crate::primes::{factorize, is_prime};
use crate::ring::{RingDescriptor, RingElement};

#[derive(Clone, Debug)]
pub struct ArithFunction {
    window: Window,
    ring: RingDescriptor,
    values: Vec<RingElement>,
}

/// Outcome of the norm `N(α) = min { n : α(n) != 0 }` on a finite window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    Value(u64),
    /// Every stored value is zero; nothing is known past the bound.
    ZeroUpToBound,
}

impl Norm {
    pub fn value(self) -> Option<u64> {
        match self {
            Norm::Value(n) => Some(n),
            Norm::ZeroUpToBound => None,
        }
    }
}

pub(crate) fn check_ring(ring: &RingDescriptor, r: &RingElement) -> Result<()> {
    if r.belongs_to(ring) {
        Ok(())
    } else {
        Err(Error::MixedRings {
            left: ring.clone(),
            right: r.ring(),
        })
    }
}

pub(crate) fn check_same(
    w1: &Window,
    r1: &RingDescriptor,
    w2: &Window,
    r2: &RingDescriptor,
) -> Result<()> {
    if r1 != r2 {
        return Err(Error::MixedRings {
            left: r1.clone(),
            right: r2.clone(),
        });
    }
    if w1.spec() != w2.spec() {
        return Err(Error::MonoidMismatch {
            left: w1.spec().to_string(),
            right: w2.spec().to_string(),
        });
    }
    Ok(())
}

/// Common window of two windows over the same monoid.
pub(crate) fn common_window(w1: &Window, w2: &Window) -> Window {
    if w1.bound() <= w2.bound() {
        w1.clone()
    } else {
        w2.clone()
    }
}

impl ArithFunction {
    /// Builds a function from explicit values; every other element maps to zero.
    pub fn new(
        spec: MonoidSpec,
        ring: RingDescriptor,
        bound: u64,
        assignments: impl IntoIterator<Item = (u64, RingElement)>,
    ) -> Result<Self> {
        let mut f = Self::zero(spec, ring, bound);
        for (n, r) in assignments {
            f.set(n, r)?;
        }
        Ok(f)
    }

    pub fn zero(spec: MonoidSpec, ring: RingDescriptor, bound: u64) -> Self {
        let window = Window::new(spec, bound);
        let values = vec![ring.zero(); window.len()];
        ArithFunction {
            window,
            ring,
            values,
        }
    }

    /// The convolution identity `e`.
    pub fn unit(spec: MonoidSpec, ring: RingDescriptor, bound: u64) -> Self {
        Self::embed_scalar(spec, bound, ring.one())
    }

    /// The constant function `n -> c`.
    pub fn constant(spec: MonoidSpec, bound: u64, c: RingElement) -> Self {
        let window = Window::new(spec, bound);
        let values = vec![c.clone(); window.len()];
        ArithFunction {
            window,
            ring: c.ring(),
            values,
        }
    }

    /// Tabulates `f` over the window.
    pub fn from_fn(
        spec: MonoidSpec,
        ring: RingDescriptor,
        bound: u64,
        mut f: impl FnMut(u64) -> RingElement,
    ) -> Result<Self> {
        let window = Window::new(spec, bound);
        let values = window
            .elements()
            .iter()
            .map(|&n| {
                let r = f(n);
                check_ring(&ring, &r).map(|_| r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ArithFunction {
            window,
            ring,
            values,
        })
    }

    pub(crate) fn from_parts(window: Window, ring: RingDescriptor, values: Vec<RingElement>) -> Self {
        debug_assert_eq!(window.len(), values.len());
        ArithFunction {
            window,
            ring,
            values,
        }
    }

    pub fn set(&mut self, n: u64, r: RingElement) -> Result<()> {
        check_ring(&self.ring, &r)?;
        if !self.window.spec().contains(n) {
            return Err(self.window.spec().not_in(n));
        }
        let idx = self.window.index_of(n).ok_or(Error::OutsideBound {
            n,
            bound: self.bound(),
        })?;
        self.values[idx] = r;
        Ok(())
    }

    pub fn spec(&self) -> &MonoidSpec {
        self.window.spec()
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn bound(&self) -> u64 {
        self.window.bound()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub(crate) fn values(&self) -> &[RingElement] {
        &self.values
    }

    /// Value at `n`, or `None` when `n` is outside the monoid or the window.
    pub fn get(&self, n: u64) -> Option<&RingElement> {
        self.window.index_of(n).map(|i| &self.values[i])
    }

    /// Value at `n`, treating elements outside the monoid as zero.
    pub fn value(&self, n: u64) -> Result<RingElement> {
        if n > self.bound() {
            return Err(Error::OutsideBound {
                n,
                bound: self.bound(),
            });
        }
        Ok(self.get(n).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &RingElement)> {
        self.window.elements().iter().copied().zip(&self.values)
    }

    /// Elements with a nonzero value, ascending.
    pub fn support(&self) -> impl Iterator<Item = (u64, &RingElement)> {
        self.iter().filter(|(_, r)| !r.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(RingElement::is_zero)
    }

    /// Restriction to the elements `n <= bound`.
    pub fn truncate(&self, bound: u64) -> Self {
        if bound >= self.bound() {
            return self.clone();
        }
        let window = self.window.truncate(bound);
        let values = self.values[..window.len()].to_vec();
        ArithFunction {
            window,
            ring: self.ring.clone(),
            values,
        }
    }

    /// Equality on the common window of two functions over the same monoid
    /// and ring.
    pub fn agrees_with(&self, other: &ArithFunction) -> bool {
        if check_same(&self.window, &self.ring, &other.window, &other.ring).is_err() {
            return false;
        }
        self.values.iter().zip(&other.values).all(|(a, b)| a == b)
    }

    fn check_compatible(&self, other: &ArithFunction) -> Result<Window> {
        check_same(&self.window, &self.ring, &other.window, &other.ring)?;
        Ok(common_window(&self.window, &other.window))
    }

    pub fn add(&self, other: &ArithFunction) -> Result<ArithFunction> {
        let window = self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .take(window.len())
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(window, self.ring.clone(), values))
    }

    pub fn neg(&self) -> ArithFunction {
        let values = self.values.iter().map(RingElement::neg).collect();
        Self::from_parts(self.window.clone(), self.ring.clone(), values)
    }

    pub fn sub(&self, other: &ArithFunction) -> Result<ArithFunction> {
        self.add(&other.neg())
    }

    /// Scalar multiple `r·α`.
    pub fn scale(&self, r: &RingElement) -> Result<ArithFunction> {
        check_ring(&self.ring, r)?;
        let values = self
            .values
            .iter()
            .map(|v| r.mul(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(self.window.clone(), self.ring.clone(), values))
    }

    /// Dirichlet convolution `(α·β)(n) = Σ_{ab=n} α(a)β(b)`.
    pub fn convolve(&self, other: &ArithFunction) -> Result<ArithFunction> {
        let window = self.check_compatible(other)?;
        let mut out = vec![self.ring.zero(); window.len()];
        let rows = (0..window.len()).filter(|&i| !self.values[i].is_exact_zero());
        let mut err = None;
        window.for_each_pair(rows, |i, j, k| {
            if err.is_some() || other.values[j].is_exact_zero() {
                return;
            }
            if let Err(e) = self.values[i]
                .mul(&other.values[j])
                .and_then(|p| out[k].add_assign(&p))
            {
                err = Some(e);
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(Self::from_parts(window, self.ring.clone(), out)),
        }
    }

    /// Convolution inverse, defined exactly when `α(1)` is a unit of the ring.
    ///
    /// Values are produced in ascending order from
    /// `β(1) = α(1)^{-1}` and `β(n) = -α(1)^{-1} Σ_{ab=n, b≠n} α(a)β(b)`;
    /// every `b` in the sum is a proper divisor of `n`, hence already known.
    pub fn invert(&self) -> Result<ArithFunction> {
        let window = self.window.clone();
        let len = window.len();
        if len == 0 {
            return Ok(self.clone());
        }
        let inv1 = self.values[0]
            .inverse()
            .map_err(|_| Error::NotAUnit(self.ring.clone()))?;
        let neg_inv1 = inv1.neg();
        // acc[k] accumulates Σ α(a)β(b) over a >= 2 for the element at index k.
        let mut acc = vec![self.ring.zero(); len];
        let mut beta: Vec<RingElement> = Vec::with_capacity(len);
        let active: Vec<usize> = (1..len)
            .filter(|&i| !self.values[i].is_exact_zero())
            .collect();
        let els = window.elements();
        for k in 0..len {
            let b_val = if k == 0 {
                inv1.clone()
            } else {
                neg_inv1.mul(&acc[k])?
            };
            if !b_val.is_exact_zero() {
                let b = els[k];
                for &i in &active {
                    let Some(n) = els[i].checked_mul(b).filter(|&n| n <= window.bound()) else {
                        break;
                    };
                    let idx = window.index_of(n).expect("window is closed under products");
                    let p = self.values[i].mul(&b_val)?;
                    acc[idx].add_assign(&p)?;
                }
            }
            beta.push(b_val);
        }
        Ok(Self::from_parts(window, self.ring.clone(), beta))
    }

    /// Least `n` in the window with a nonzero value.
    pub fn norm(&self) -> Norm {
        self.support()
            .next()
            .map_or(Norm::ZeroUpToBound, |(n, _)| Norm::Value(n))
    }

    /// The scalar embedding `i(r)`: `r` at 1, zero elsewhere.
    pub fn embed_scalar(spec: MonoidSpec, bound: u64, r: RingElement) -> Self {
        let mut f = Self::zero(spec, r.ring(), bound);
        if !f.values.is_empty() {
            f.values[0] = r;
        }
        f
    }

    /// The projection `π(α) = α(1)`.
    pub fn project(&self) -> RingElement {
        self.values
            .first()
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_unit(&self) -> bool {
        self.project().inverse().is_ok()
    }

    /// Pointwise product with a totally multiplicative function.
    pub fn twist(&self, l: &TotallyMultiplicativeFn) -> Result<ArithFunction> {
        if l.ring() != &self.ring {
            return Err(Error::MixedRings {
                left: self.ring.clone(),
                right: l.ring().clone(),
            });
        }
        let values = self
            .iter()
            .map(|(n, v)| l.eval(n)?.mul(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(self.window.clone(), self.ring.clone(), values))
    }

    /// Extension by zero from a submonoid to `target`.
    pub fn extend_to(&self, target: &MonoidSpec) -> Result<ArithFunction> {
        self.spec().check_submonoid_of(target, self.bound())?;
        let window = Window::new(target.clone(), self.bound());
        let values = window
            .elements()
            .iter()
            .map(|&n| self.get(n).cloned().unwrap_or_else(|| self.ring.zero()))
            .collect();
        Ok(Self::from_parts(window, self.ring.clone(), values))
    }

    /// Restriction to a submonoid `sub`.
    pub fn restrict_to(&self, sub: &MonoidSpec) -> Result<ArithFunction> {
        sub.check_submonoid_of(self.spec(), self.bound())?;
        let window = Window::new(sub.clone(), self.bound());
        let values = window
            .elements()
            .iter()
            .map(|&n| self.get(n).cloned().expect("submonoid element is stored"))
            .collect();
        Ok(Self::from_parts(window, self.ring.clone(), values))
    }
}

impl PartialEq for ArithFunction {
    /// Structural equality: same monoid, ring and bound, equal values.
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window && self.ring == other.ring && self.values == other.values
    }
}

/// A totally multiplicative function, given by its values on primes.
#[derive(Clone, Debug, PartialEq)]
pub struct TotallyMultiplicativeFn {
    ring: RingDescriptor,
    prime_values: BTreeMap<u64, RingElement>,
}

impl TotallyMultiplicativeFn {
    pub fn new(
        ring: RingDescriptor,
        prime_values: impl IntoIterator<Item = (u64, RingElement)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, v) in prime_values {
            if !is_prime(p) {
                return Err(Error::ShapeMismatch(format!("{p} is not a prime")));
            }
            check_ring(&ring, &v)?;
            map.insert(p, v);
        }
        Ok(TotallyMultiplicativeFn {
            ring,
            prime_values: map,
        })
    }

    /// Takes the value `f(p)` for every prime `p <= max_prime`.
    pub fn from_prime_fn(
        ring: RingDescriptor,
        max_prime: u64,
        mut f: impl FnMut(u64) -> RingElement,
    ) -> Result<Self> {
        Self::new(
            ring,
            (2..=max_prime).filter(|&p| is_prime(p)).map(|p| (p, f(p))),
        )
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn prime_values(&self) -> &BTreeMap<u64, RingElement> {
        &self.prime_values
    }

    /// `L(∏ p^a) = ∏ L(p)^a`, with `L(1) = 1`.
    pub fn eval(&self, n: u64) -> Result<RingElement> {
        let mut acc = self.ring.one();
        for (p, e) in factorize(n) {
            let v = self
                .prime_values
                .get(&p)
                .ok_or(Error::MissingPrimeValue(p))?;
            acc = acc.mul(&v.pow(e as u64))?;
        }
        Ok(acc)
    }

    /// Tabulates `L` on a monoid window.
    pub fn to_function(&self, spec: MonoidSpec, bound: u64) -> Result<ArithFunction> {
        let window = Window::new(spec, bound);
        let values = window
            .elements()
            .iter()
            .map(|&n| self.eval(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ArithFunction::from_parts(window, self.ring.clone(), values))
    }
}
