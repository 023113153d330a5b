//! The Grothendieck group of a monoid and functions on it with bounded
//! denominators.
//!
//! An [`ExtFunction`] is stored as a pair `(d, core)` with
//! `α(q) = core(d·q)`, so that every value lives on the monoid itself.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::derivation::DerivationSpec;
use crate::dirichlet::{check_same, ArithFunction};
use crate::error::{Error, Result};
use crate::module::{ModuleFunction, Vector};
use crate::monoid::{MonoidSpec, Window};
use crate::primes::{factorize, gcd};
use crate::ring::{RingDescriptor, RingElement};

/// A reduced positive fraction `m/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::ShapeMismatch(format!("{m}/{n} is not a positive fraction")));
        }
        let g = gcd(m, n);
        Ok(Fraction { num: m / g, den: n / g })
    }

    pub fn integer(m: u64) -> Self {
        Fraction { num: m, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn mul(&self, other: &Fraction) -> Result<Fraction> {
        // Cross-cancel first so intermediate products stay small.
        let g1 = gcd(self.num, other.den);
        let g2 = gcd(other.num, self.den);
        let num = (self.num / g1).checked_mul(other.num / g2);
        let den = (self.den / g2).checked_mul(other.den / g1);
        match (num, den) {
            (Some(num), Some(den)) => Ok(Fraction { num, den }),
            _ => Err(Error::Overflow(format!("{self} * {other}"))),
        }
    }

    pub fn inv(&self) -> Fraction {
        Fraction {
            num: self.den,
            den: self.num,
        }
    }

    /// Signed prime exponents.
    pub fn exponents(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for (p, e) in factorize(self.num) {
            out.insert(p, e as i64);
        }
        for (p, e) in factorize(self.den) {
            out.insert(p, -(e as i64));
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("bad fraction '{s}'"));
        let (m, n) = match s.split_once('/') {
            Some((m, n)) => (m.trim(), n.trim()),
            None => (s.trim(), "1"),
        };
        let m = m.parse().map_err(|_| bad())?;
        let n = n.parse().map_err(|_| bad())?;
        Fraction::new(m, n).map_err(|_| bad())
    }
}

/// The class of `(m, n)` in the Grothendieck group of `spec`.
pub fn groth_reduce(spec: &MonoidSpec, m: u64, n: u64) -> Result<Fraction> {
    spec.element(m)?;
    spec.element(n)?;
    Fraction::new(m, n)
}

/// An abelian group written multiplicatively.
pub trait AbelianGroup: Clone {
    fn identity() -> Self;
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;

    fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::identity(), |acc, _| acc.op(&base))
    }
}

/// The positive rationals under multiplication.
impl AbelianGroup for Fraction {
    fn identity() -> Self {
        Fraction::integer(1)
    }

    fn op(&self, other: &Self) -> Self {
        self.mul(other).expect("fraction product fits in u64")
    }

    fn inverse(&self) -> Self {
        self.inv()
    }
}

/// The reals under addition.
impl AbelianGroup for f64 {
    fn identity() -> Self {
        0.0
    }

    fn op(&self, other: &Self) -> Self {
        self + other
    }

    fn inverse(&self) -> Self {
        -self
    }
}

/// A monoid morphism `Γ -> G`, given by its values on primes.
#[derive(Clone, Debug)]
pub struct MonoidMorphism<G> {
    prime_values: BTreeMap<u64, G>,
}

impl<G: AbelianGroup> MonoidMorphism<G> {
    pub fn new(prime_values: impl IntoIterator<Item = (u64, G)>) -> Self {
        MonoidMorphism {
            prime_values: prime_values.into_iter().collect(),
        }
    }

    pub fn eval(&self, n: u64) -> Result<G> {
        self.extend(&Fraction::integer(n))
    }

    /// The unique extension `f̄(m/n) = f(m)·f(n)^{-1}` to the group.
    pub fn extend(&self, q: &Fraction) -> Result<G> {
        let mut acc = G::identity();
        for (p, e) in q.exponents() {
            let v = self.prime_values.get(&p).ok_or(Error::MissingPrimeValue(p))?;
            acc = acc.op(&v.pow(e));
        }
        Ok(acc)
    }
}

pub fn universal_extend<G: AbelianGroup>(f: &MonoidMorphism<G>, q: &Fraction) -> Result<G> {
    f.extend(q)
}

/// Shared handling of scalar and vector cores.
trait Core: Clone {
    type Value: Clone;
    fn window(&self) -> &Window;
    fn value_at(&self, i: usize) -> &Self::Value;
    fn zero_value(&self) -> Self::Value;
    fn value_is_zero(v: &Self::Value) -> bool;
    fn rebuild(&self, window: Window, values: Vec<Self::Value>) -> Self;

    fn all_zero(&self) -> bool {
        (0..self.window().len()).all(|i| Self::value_is_zero(self.value_at(i)))
    }

    /// `n -> core(n / e)`, zero where `e ∤ n` or `n/e ∉ Γ`.
    fn shift(&self, e: u64) -> Self {
        if e == 1 {
            return self.clone();
        }
        let w = self.window();
        let window = Window::new(w.spec().clone(), w.bound().saturating_mul(e));
        let values = window
            .elements()
            .iter()
            .map(|&n| {
                (n % e == 0)
                    .then(|| w.index_of(n / e))
                    .flatten()
                    .map(|i| self.value_at(i).clone())
                    .unwrap_or_else(|| self.zero_value())
            })
            .collect();
        self.rebuild(window, values)
    }

    /// Whether the support lies in `gΓ`.
    fn strippable(&self, g: u64) -> bool {
        let w = self.window();
        w.elements().iter().enumerate().all(|(i, &n)| {
            Self::value_is_zero(self.value_at(i)) || (n % g == 0 && w.spec().contains(n / g))
        })
    }

    /// `m -> core(m·g)`.
    fn strip(&self, g: u64) -> Self {
        let w = self.window();
        let window = Window::new(w.spec().clone(), w.bound() / g);
        let values = window
            .elements()
            .iter()
            .map(|&m| {
                let i = w.index_of(m * g).expect("m·g lies in the window");
                self.value_at(i).clone()
            })
            .collect();
        self.rebuild(window, values)
    }
}

impl Core for ArithFunction {
    type Value = RingElement;

    fn window(&self) -> &Window {
        ArithFunction::window(self)
    }

    fn value_at(&self, i: usize) -> &RingElement {
        &self.values()[i]
    }

    fn zero_value(&self) -> RingElement {
        self.ring().zero()
    }

    fn value_is_zero(v: &RingElement) -> bool {
        v.is_zero()
    }

    fn rebuild(&self, window: Window, values: Vec<RingElement>) -> Self {
        ArithFunction::from_parts(window, self.ring().clone(), values)
    }
}

impl Core for ModuleFunction {
    type Value = Vector;

    fn window(&self) -> &Window {
        ModuleFunction::window(self)
    }

    fn value_at(&self, i: usize) -> &Vector {
        &self.values()[i]
    }

    fn zero_value(&self) -> Vector {
        vec![self.ring().zero(); self.rank()]
    }

    fn value_is_zero(v: &Vector) -> bool {
        v.iter().all(RingElement::is_zero)
    }

    fn rebuild(&self, window: Window, values: Vec<Vector>) -> Self {
        ModuleFunction::from_parts(window, self.ring().clone(), self.rank(), values)
    }
}

/// Strips atoms of `d` from the denominator while the core allows it.
fn canonicalize<C: Core>(mut d: u64, mut core: C) -> (u64, C) {
    if core.all_zero() {
        return (d, core);
    }
    'outer: while d > 1 {
        for g in core.window().spec().atoms_dividing(d) {
            if core.window().bound() >= g && core.strippable(g) {
                core = core.strip(g);
                d /= g;
                continue 'outer;
            }
        }
        break;
    }
    (d, core)
}

fn checked_product(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("denominator {a}·{b}")))
}

/// Where `q` lands in the core of a function with denominator `d`:
/// `Some(d·q)` when that is a monoid element, `None` when the value is zero.
fn core_index(spec: &MonoidSpec, d: u64, q: &Fraction) -> Result<Option<u64>> {
    if d % q.denominator() != 0 {
        return Ok(None);
    }
    let x = checked_product(d / q.denominator(), q.numerator())?;
    Ok(spec.contains(x).then_some(x))
}

/// `core_index` for a stored value: fractions with `d·q > bound` are unknown
/// even when `d·q` is not a monoid element, since stripping a denominator
/// only checked the support inside the window.
fn known_index(spec: &MonoidSpec, d: u64, bound: u64, q: &Fraction) -> Result<Option<u64>> {
    let scaled = q.numerator() as u128 * d as u128;
    if scaled > bound as u128 * q.denominator() as u128 {
        let n = scaled.div_ceil(q.denominator() as u128);
        return Err(Error::OutsideBound {
            n: u64::try_from(n).unwrap_or(u64::MAX),
            bound,
        });
    }
    core_index(spec, d, q)
}

/// A function on the Grothendieck group with a common denominator.
#[derive(Clone, Debug)]
pub struct ExtFunction {
    d: u64,
    core: ArithFunction,
}

impl ExtFunction {
    /// `α(q) = core(d·q)`, brought to canonical form.
    pub fn new(d: u64, core: ArithFunction) -> Result<Self> {
        core.spec().element(d)?;
        let (d, core) = canonicalize(d, core);
        Ok(ExtFunction { d, core })
    }

    /// The inclusion `F(Γ,R) -> F^f(G(Γ),R)`.
    pub fn embed(alpha: &ArithFunction) -> Self {
        ExtFunction {
            d: 1,
            core: alpha.clone(),
        }
    }

    /// The function with the given values at fractions, exact for `q` with
    /// `d·q <= bound`.
    pub fn from_values(
        spec: MonoidSpec,
        ring: RingDescriptor,
        d: u64,
        bound: u64,
        values: impl IntoIterator<Item = (Fraction, RingElement)>,
    ) -> Result<Self> {
        spec.element(d)?;
        let mut core = ArithFunction::zero(spec.clone(), ring, bound);
        for (q, r) in values {
            match core_index(&spec, d, &q)? {
                Some(n) => core.set(n, r)?,
                None => return Err(Error::ShapeMismatch(format!("{q} is not representable with denominator {d}"))),
            }
        }
        Self::new(d, core)
    }

    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn core(&self) -> &ArithFunction {
        &self.core
    }

    pub fn spec(&self) -> &MonoidSpec {
        self.core.spec()
    }

    pub fn ring(&self) -> &RingDescriptor {
        self.core.ring()
    }

    /// Bound of the core: values are exact for `q` with `d·q <= bound`.
    pub fn bound(&self) -> u64 {
        self.core.bound()
    }

    /// False when the core vanishes up to the bound but `d > 1`, so the
    /// reduction could not be decided.
    pub fn is_canonical(&self) -> bool {
        self.d == 1 || !self.core.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_zero()
    }

    pub fn is_embedded(&self) -> bool {
        self.d == 1
    }

    pub fn value(&self, q: &Fraction) -> Result<RingElement> {
        match known_index(self.spec(), self.d, self.bound(), q)? {
            None => Ok(self.ring().zero()),
            Some(n) => Ok(self.core.get(n).expect("n lies in the window").clone()),
        }
    }

    /// Nonzero values keyed by fraction.
    pub fn support(&self) -> Vec<(Fraction, RingElement)> {
        self.core
            .support()
            .map(|(n, r)| (Fraction::new(n, self.d).expect("positive"), r.clone()))
            .collect()
    }

    /// The same function written with denominator `e·d`.
    pub fn with_denominator_multiple(&self, e: u64) -> Result<ExtFunction> {
        self.spec().element(e)?;
        Ok(ExtFunction {
            d: checked_product(self.d, e)?,
            core: self.core.shift(e),
        })
    }

    fn common(&self, other: &ExtFunction) -> Result<(u64, ArithFunction, ArithFunction)> {
        check_same(self.core.window(), self.ring(), other.core.window(), other.ring())?;
        let d = checked_product(self.d, other.d)?;
        Ok((d, self.core.shift(other.d), other.core.shift(self.d)))
    }

    pub fn add(&self, other: &ExtFunction) -> Result<ExtFunction> {
        let (d, a, b) = self.common(other)?;
        Self::new(d, a.add(&b)?)
    }

    pub fn neg(&self) -> ExtFunction {
        ExtFunction {
            d: self.d,
            core: self.core.neg(),
        }
    }

    pub fn sub(&self, other: &ExtFunction) -> Result<ExtFunction> {
        self.add(&other.neg())
    }

    pub fn convolve(&self, other: &ExtFunction) -> Result<ExtFunction> {
        check_same(self.core.window(), self.ring(), other.core.window(), other.ring())?;
        let d = checked_product(self.d, other.d)?;
        Self::new(d, self.core.convolve(&other.core)?)
    }

    /// Equality of values on the range where both are known.
    pub fn agrees_with(&self, other: &ExtFunction) -> bool {
        self.common(other).is_ok_and(|(_, a, b)| a.agrees_with(&b))
    }
}

impl PartialEq for ExtFunction {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

/// A module-valued function on the Grothendieck group.
#[derive(Clone, Debug)]
pub struct ExtModuleFunction {
    d: u64,
    core: ModuleFunction,
}

impl ExtModuleFunction {
    pub fn new(d: u64, core: ModuleFunction) -> Result<Self> {
        core.spec().element(d)?;
        let (d, core) = canonicalize(d, core);
        Ok(ExtModuleFunction { d, core })
    }

    pub fn embed(f: &ModuleFunction) -> Self {
        ExtModuleFunction { d: 1, core: f.clone() }
    }

    pub fn denominator(&self) -> u64 {
        self.d
    }

    pub fn core(&self) -> &ModuleFunction {
        &self.core
    }

    pub fn rank(&self) -> usize {
        self.core.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.core.is_zero()
    }

    pub fn value(&self, q: &Fraction) -> Result<Vector> {
        match known_index(self.core.spec(), self.d, self.core.bound(), q)? {
            None => Ok(vec![self.core.ring().zero(); self.rank()]),
            Some(n) => Ok(self.core.get(n).expect("n lies in the window").clone()),
        }
    }

    fn common(&self, other: &ExtModuleFunction) -> Result<(u64, ModuleFunction, ModuleFunction)> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        check_same(self.core.window(), self.core.ring(), other.core.window(), other.core.ring())?;
        let d = checked_product(self.d, other.d)?;
        Ok((d, self.core.shift(other.d), other.core.shift(self.d)))
    }

    pub fn add(&self, other: &ExtModuleFunction) -> Result<ExtModuleFunction> {
        let (d, a, b) = self.common(other)?;
        Self::new(d, a.add(&b)?)
    }

    /// `(α·f)(q) = Σ_{q'q''=q} α(q') f(q'')`.
    pub fn act(alpha: &ExtFunction, f: &ExtModuleFunction) -> Result<ExtModuleFunction> {
        let d = checked_product(alpha.d, f.d)?;
        Self::new(d, ModuleFunction::act(&alpha.core, &f.core)?)
    }

    pub fn agrees_with(&self, other: &ExtModuleFunction) -> bool {
        self.common(other).is_ok_and(|(_, a, b)| a.agrees_with(&b))
    }
}

impl PartialEq for ExtModuleFunction {
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

/// `D̄(α)(q) = D(α(q)) + α(q)·δ̄(q)` with `δ̄(m/n) = δ(m) - δ(n)`.
///
/// On the core this reads `n -> D(A(n)) + A(n)·(δ(n) - δ(d))`.
pub fn ext_derivation(dspec: &DerivationSpec, alpha: &ExtFunction) -> Result<ExtModuleFunction> {
    let ch = &dspec.character;
    if ch.ring() != alpha.ring() {
        return Err(Error::MixedRings {
            left: alpha.ring().clone(),
            right: ch.ring().clone(),
        });
    }
    let delta_d = ch.eval(alpha.d)?;
    let values = alpha
        .core
        .iter()
        .map(|(n, a)| {
            let mut v = dspec.base.apply(a, ch.rank())?;
            if !a.is_exact_zero() {
                for ((slot, dn), dd) in v.iter_mut().zip(ch.eval(n)?).zip(&delta_d) {
                    slot.add_assign(&a.mul(&dn.sub(dd)?)?)?;
                }
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let core = ModuleFunction::from_parts(
        alpha.core.window().clone(),
        alpha.ring().clone(),
        ch.rank(),
        values,
    );
    ExtModuleFunction::new(alpha.d, core)
}
