//! Submonoids of the multiplicative monoid of positive integers.
//!
//! Every monoid handled by the crate is realized inside (N*, ·): the full
//! monoid, the monoid generated by the first `k` primes, a monoid generated by
//! an explicit list of integers, or an affine monoid in N^k pushed into N*
//! through distinct primes.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::primes::{divisors, factorize, first_primes, is_prime};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonoidSpec {
    FullNStar,
    PrimeGenerated(usize),
    FinitelyGenerated(Vec<u64>),
    AffineEmbedded {
        vectors: Vec<Vec<u64>>,
        primes: Vec<u64>,
    },
}

/// An element of a monoid, identified with its image in N*.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoidElement(u64);

impl MonoidElement {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl MonoidSpec {
    pub fn nstar() -> Self {
        MonoidSpec::FullNStar
    }

    pub fn gamma(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidMonoid("gamma(k) needs k >= 1".into()));
        }
        Ok(MonoidSpec::PrimeGenerated(k))
    }

    /// Monoid generated by `gens`; the list is sorted and deduplicated.
    pub fn generated(mut gens: Vec<u64>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidMonoid("generator list is empty".into()));
        }
        if let Some(g) = gens.iter().find(|&&g| g < 2) {
            return Err(Error::InvalidMonoid(format!("generator {g} is below 2")));
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(MonoidSpec::FinitelyGenerated(gens))
    }

    pub fn affine(vectors: Vec<Vec<u64>>, primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() || vectors.is_empty() {
            return Err(Error::InvalidMonoid("affine monoid needs vectors and primes".into()));
        }
        if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidMonoid(format!("{p} is not prime")));
        }
        let mut sorted = primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::InvalidMonoid("embedding primes must be distinct".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != primes.len()) {
            return Err(Error::InvalidMonoid(format!(
                "vector {v:?} has length {}, expected {}",
                v.len(),
                primes.len()
            )));
        }
        let spec = MonoidSpec::AffineEmbedded { vectors, primes };
        spec.generators().expect("affine monoid has generators")?;
        Ok(spec)
    }

    /// Monoid generators as integers; `None` for the full monoid N*.
    pub fn generators(&self) -> Option<Result<Vec<u64>>> {
        match self {
            MonoidSpec::FullNStar => None,
            MonoidSpec::PrimeGenerated(k) => Some(Ok(first_primes(*k))),
            MonoidSpec::FinitelyGenerated(g) => Some(Ok(g.clone())),
            MonoidSpec::AffineEmbedded { vectors, primes } => Some(
                vectors
                    .iter()
                    .filter(|v| v.iter().any(|&a| a > 0))
                    .map(|v| embed_affine(primes, v).map(MonoidElement::value))
                    .collect::<Result<Vec<_>>>()
                    .map(|mut g| {
                        g.sort_unstable();
                        g.dedup();
                        g
                    }),
            ),
        }
    }

    fn generator_list(&self) -> Option<Vec<u64>> {
        self.generators()
            .map(|g| g.expect("generators validated at construction"))
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        match self {
            MonoidSpec::FullNStar => true,
            MonoidSpec::PrimeGenerated(k) => {
                let mut m = n;
                for p in first_primes(*k) {
                    while m % p == 0 {
                        m /= p;
                    }
                }
                m == 1
            }
            _ => {
                let gens = self.generator_list().unwrap_or_default();
                generated_by(n, &gens, &mut HashMap::new())
            }
        }
    }

    pub fn element(&self, n: u64) -> Result<MonoidElement> {
        if self.contains(n) {
            Ok(MonoidElement(n))
        } else {
            Err(self.not_in(n))
        }
    }

    pub(crate) fn not_in(&self, n: u64) -> Error {
        Error::NotInMonoid {
            n,
            monoid: self.to_string(),
        }
    }

    /// Ordered pairs `(a, b)` of monoid elements with `ab = n`, ascending in `a`.
    pub fn divisor_pairs(&self, n: MonoidElement) -> Result<Vec<(MonoidElement, MonoidElement)>> {
        let n = n.value();
        if !self.contains(n) {
            return Err(self.not_in(n));
        }
        let full = matches!(self, MonoidSpec::FullNStar);
        Ok(divisors(n)
            .into_iter()
            .filter(|&a| full || (self.contains(a) && self.contains(n / a)))
            .map(|a| (MonoidElement(a), MonoidElement(n / a)))
            .collect())
    }

    /// All elements `n <= bound`, ascending.
    pub fn elements_up_to(&self, bound: u64) -> Vec<MonoidElement> {
        self.element_values(bound)
            .into_iter()
            .map(MonoidElement)
            .collect()
    }

    fn element_values(&self, bound: u64) -> Vec<u64> {
        if bound == 0 {
            return Vec::new();
        }
        let Some(gens) = self.generator_list() else {
            return (1..=bound).collect();
        };
        let mut elems = vec![1u64];
        for g in gens {
            let existing = elems.len();
            for i in 0..existing {
                let mut x = elems[i];
                while let Some(y) = x.checked_mul(g).filter(|&y| y <= bound) {
                    elems.push(y);
                    x = y;
                }
            }
        }
        elems.sort_unstable();
        elems.dedup();
        elems
    }

    /// Irreducible pieces used when clearing denominators: the primes of `d`
    /// for N* and Γ(k), the generators dividing `d` otherwise. Only atoms `g`
    /// with `d / g` still in the monoid are returned, in increasing order.
    pub fn atoms_dividing(&self, d: u64) -> Vec<u64> {
        let candidates: Vec<u64> = match self {
            MonoidSpec::FullNStar | MonoidSpec::PrimeGenerated(_) => {
                factorize(d).into_iter().map(|(p, _)| p).collect()
            }
            _ => self.generator_list().unwrap_or_default(),
        };
        candidates
            .into_iter()
            .filter(|&g| d % g == 0 && self.contains(g) && self.contains(d / g))
            .collect()
    }

    /// Whether every element of `self` up to `bound` lies in `other`.
    pub fn is_submonoid_of(&self, other: &MonoidSpec, bound: u64) -> bool {
        if self == other || matches!(other, MonoidSpec::FullNStar) {
            return true;
        }
        self.element_values(bound).into_iter().all(|n| other.contains(n))
    }

    pub(crate) fn check_submonoid_of(&self, other: &MonoidSpec, bound: u64) -> Result<()> {
        if self.is_submonoid_of(other, bound) {
            Ok(())
        } else {
            Err(Error::NotASubmonoid {
                monoid: self.to_string(),
                target: other.to_string(),
                bound,
            })
        }
    }
}

fn generated_by(n: u64, gens: &[u64], memo: &mut HashMap<u64, bool>) -> bool {
    if n == 1 {
        return true;
    }
    if let Some(&known) = memo.get(&n) {
        return known;
    }
    let found = gens
        .iter()
        .any(|&g| n % g == 0 && generated_by(n / g, gens, memo));
    memo.insert(n, found);
    found
}

/// Pushes an exponent vector into N* as `∏ p_i^{v_i}`.
///
/// The caller is responsible for `v` lying in the affine monoid; only the
/// arithmetic is checked.
pub fn embed_affine(primes: &[u64], v: &[u64]) -> Result<MonoidElement> {
    if primes.len() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "vector of length {} for {} primes",
            v.len(),
            primes.len()
        )));
    }
    let mut acc = 1u64;
    for (&p, &e) in primes.iter().zip(v) {
        let e = u32::try_from(e).map_err(|_| Error::Overflow(format!("exponent {e}")))?;
        acc = p
            .checked_pow(e)
            .and_then(|x| acc.checked_mul(x))
            .ok_or_else(|| Error::Overflow(format!("embedding {v:?}")))?;
    }
    Ok(MonoidElement(acc))
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            MonoidSpec::FullNStar => write!(f, "nstar"),
            MonoidSpec::PrimeGenerated(k) => write!(f, "gamma({k})"),
            MonoidSpec::FinitelyGenerated(g) => write!(f, "gen({})", join(g)),
            MonoidSpec::AffineEmbedded { vectors, primes } => {
                let vs: Vec<String> = vectors.iter().map(|v| format!("({})", join(v))).collect();
                write!(f, "affine[{}]@primes({})", vs.join(","), join(primes))
            }
        }
    }
}

impl FromStr for MonoidSpec {
    type Err = Error;

    /// `nstar`, `gamma(k)`, `gen(4,6,9)` or `affine[(1,0),(1,2)]@primes(2,3)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::parse(format!("bad monoid syntax '{s}'"));
        let ints = |t: &str| -> Result<Vec<u64>> {
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.parse::<u64>().map_err(|_| bad()))
                .collect()
        };
        let invalid = |e: Error| match e {
            Error::InvalidMonoid(m) => Error::parse(m),
            other => other,
        };
        if s == "nstar" {
            return Ok(MonoidSpec::FullNStar);
        }
        if let Some(k) = s.strip_prefix("gamma(").and_then(|t| t.strip_suffix(')')) {
            return MonoidSpec::gamma(k.parse().map_err(|_| bad())?).map_err(invalid);
        }
        if let Some(g) = s.strip_prefix("gen(").and_then(|t| t.strip_suffix(')')) {
            return MonoidSpec::generated(ints(g)?).map_err(invalid);
        }
        if let Some(rest) = s.strip_prefix("affine[") {
            let (vecs, primes) = rest.split_once("]@primes(").ok_or_else(bad)?;
            let primes = ints(primes.strip_suffix(')').ok_or_else(bad)?)?;
            let inner = vecs.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
            let vectors = inner
                .split("),(")
                .map(ints)
                .collect::<Result<Vec<_>>>()?;
            return MonoidSpec::affine(vectors, primes).map_err(invalid);
        }
        Err(bad())
    }
}

/// The elements of a monoid up to a bound, with index lookup.
///
/// Functions over a monoid store one value per element of their window, in
/// the window's ascending order.
#[derive(Clone, Debug)]
pub struct Window {
    spec: MonoidSpec,
    bound: u64,
    elements: Arc<[u64]>,
}

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.spec == other.spec
    }
}

impl Window {
    pub fn new(spec: MonoidSpec, bound: u64) -> Self {
        let elements: Arc<[u64]> = spec.element_values(bound).into();
        Window {
            spec,
            bound,
            elements,
        }
    }

    pub fn spec(&self) -> &MonoidSpec {
        &self.spec
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, n: u64) -> Option<usize> {
        if n == 0 || n > self.bound {
            return None;
        }
        if matches!(self.spec, MonoidSpec::FullNStar) {
            return Some((n - 1) as usize);
        }
        self.elements.binary_search(&n).ok()
    }

    /// The same monoid cut down to a smaller bound.
    pub fn truncate(&self, bound: u64) -> Window {
        if bound >= self.bound {
            return self.clone();
        }
        let cut = self.elements.partition_point(|&n| n <= bound);
        Window {
            spec: self.spec.clone(),
            bound,
            elements: self.elements[..cut].into(),
        }
    }

    /// Calls `f(i, j, k)` for every pair of element indices `i` (drawn from
    /// `rows`) and `j` whose product is the element at index `k`.
    pub(crate) fn for_each_pair(
        &self,
        rows: impl IntoIterator<Item = usize>,
        mut f: impl FnMut(usize, usize, usize),
    ) {
        let el = &self.elements;
        for i in rows {
            let a = el[i];
            for (j, &b) in el.iter().enumerate() {
                match a.checked_mul(b) {
                    Some(n) if n <= self.bound => {
                        let k = self.index_of(n).expect("window is closed under products");
                        f(i, j, k);
                    }
                    _ => break,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vals(v: Vec<MonoidElement>) -> Vec<u64> {
        v.into_iter().map(MonoidElement::value).collect()
    }

    #[test]
    fn membership() {
        let g2 = MonoidSpec::gamma(2).unwrap();
        assert!(g2.contains(12));
        assert!(!g2.contains(5));
        let g46 = MonoidSpec::generated(vec![4, 6]).unwrap();
        assert!(g46.contains(24));
        assert!(g46.contains(1));
        assert!(!g46.contains(2));
        assert!(!g46.contains(12));
        assert!(g46.contains(144));
    }

    #[test]
    fn divisor_pair_lists() {
        let pairs = |spec: &MonoidSpec, n| {
            spec.divisor_pairs(spec.element(n).unwrap())
                .unwrap()
                .into_iter()
                .map(|(a, b)| (a.value(), b.value()))
                .collect::<Vec<_>>()
        };
        assert_eq!(pairs(&MonoidSpec::nstar(), 6), vec![(1, 6), (2, 3), (3, 2), (6, 1)]);
        assert_eq!(pairs(&MonoidSpec::gamma(1).unwrap(), 8), vec![(1, 8), (2, 4), (4, 2), (8, 1)]);
        for spec in [MonoidSpec::nstar(), MonoidSpec::generated(vec![4, 6]).unwrap()] {
            assert_eq!(pairs(&spec, 1), vec![(1, 1)]);
        }
        assert_eq!(
            pairs(&MonoidSpec::generated(vec![4, 6]).unwrap(), 24),
            vec![(1, 24), (4, 6), (6, 4), (24, 1)]
        );
        let g = MonoidSpec::gamma(1).unwrap();
        assert!(matches!(
            g.divisor_pairs(MonoidElement(3)),
            Err(Error::NotInMonoid { n: 3, .. })
        ));
    }

    #[test]
    fn affine_embedding() {
        assert_eq!(embed_affine(&[2, 3], &[1, 2]).unwrap().value(), 18);
        assert_eq!(embed_affine(&[2, 3], &[0, 0]).unwrap().value(), 1);
        assert_eq!(embed_affine(&[2, 3], &[2, 1]).unwrap().value(), 12);
    }

    #[test]
    fn enumeration() {
        let g2 = MonoidSpec::gamma(2).unwrap();
        assert_eq!(vals(g2.elements_up_to(10)), vec![1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(vals(MonoidSpec::nstar().elements_up_to(4)), vec![1, 2, 3, 4]);
        let g4 = MonoidSpec::generated(vec![4]).unwrap();
        assert_eq!(vals(g4.elements_up_to(20)), vec![1, 4, 16]);
        let aff = MonoidSpec::affine(vec![vec![1, 0], vec![1, 2]], vec![2, 3]).unwrap();
        assert_eq!(vals(aff.elements_up_to(40)), vec![1, 2, 4, 8, 16, 18, 32, 36]);
    }

    #[test]
    fn syntax_round_trip() {
        for s in ["nstar", "gamma(3)", "gen(4,6,9)", "affine[(1,0),(1,2)]@primes(2,3)"] {
            let spec: MonoidSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("gamma(0)".parse::<MonoidSpec>().is_err());
        assert!("gen(1,4)".parse::<MonoidSpec>().is_err());
        assert!("affine[(1,0)]@primes(2,4)".parse::<MonoidSpec>().is_err());
        assert!("monoid".parse::<MonoidSpec>().is_err());
    }

    #[test]
    fn window_lookup() {
        let w = Window::new(MonoidSpec::gamma(2).unwrap(), 10);
        assert_eq!(w.elements(), &[1, 2, 3, 4, 6, 8, 9]);
        assert_eq!(w.index_of(6), Some(4));
        assert_eq!(w.index_of(5), None);
        assert_eq!(w.index_of(12), None);
        assert_eq!(w.truncate(4).elements(), &[1, 2, 3, 4]);
        let mut pairs = Vec::new();
        w.for_each_pair(0..w.len(), |i, j, k| pairs.push((w.elements()[i], w.elements()[j], w.elements()[k])));
        assert!(pairs.contains(&(2, 3, 6)));
        assert!(pairs.iter().all(|&(a, b, n)| a * b == n && n <= 10));
        assert_eq!(pairs.len(), 19);
    }

    #[test]
    fn submonoid_checks() {
        let g1 = MonoidSpec::gamma(1).unwrap();
        let g2 = MonoidSpec::gamma(2).unwrap();
        assert!(g1.is_submonoid_of(&g2, 100));
        assert!(!g2.is_submonoid_of(&g1, 100));
        let g46 = MonoidSpec::generated(vec![4, 6]).unwrap();
        assert!(g46.is_submonoid_of(&g2, 1000));
    }

    #[test]
    fn atoms() {
        assert_eq!(MonoidSpec::nstar().atoms_dividing(12), vec![2, 3]);
        let g46 = MonoidSpec::generated(vec![4, 6]).unwrap();
        assert_eq!(g46.atoms_dividing(24), vec![4, 6]);
        assert_eq!(g46.atoms_dividing(16), vec![4]);
    }
}
