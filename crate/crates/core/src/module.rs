//! Functions with values in a free module `R^m`, acted on by convolution.

use crate::dirichlet::{check_ring, check_same, common_window, ArithFunction, TotallyMultiplicativeFn};
use crate::error::{Error, Result};
use crate::monoid::{MonoidSpec, Window};
use crate::ring::{RingDescriptor, RingElement};

pub type Vector = Vec<RingElement>;

#[derive(Clone, Debug)]
pub struct ModuleFunction {
    window: Window,
    ring: RingDescriptor,
    rank: usize,
    values: Vec<Vector>,
}

fn zero_vector(ring: &RingDescriptor, rank: usize) -> Vector {
    vec![ring.zero(); rank]
}

fn add_vectors(a: &mut Vector, b: &[RingElement]) -> Result<()> {
    for (x, y) in a.iter_mut().zip(b) {
        x.add_assign(y)?;
    }
    Ok(())
}

fn is_zero_vector(v: &[RingElement]) -> bool {
    v.iter().all(RingElement::is_zero)
}

impl ModuleFunction {
    pub fn new(
        spec: MonoidSpec,
        ring: RingDescriptor,
        rank: usize,
        bound: u64,
        assignments: impl IntoIterator<Item = (u64, Vector)>,
    ) -> Result<Self> {
        let mut f = Self::zero(spec, ring, rank, bound);
        for (n, v) in assignments {
            f.set(n, v)?;
        }
        Ok(f)
    }

    pub fn zero(spec: MonoidSpec, ring: RingDescriptor, rank: usize, bound: u64) -> Self {
        let window = Window::new(spec, bound);
        let values = vec![zero_vector(&ring, rank); window.len()];
        ModuleFunction {
            window,
            ring,
            rank,
            values,
        }
    }

    pub(crate) fn from_parts(window: Window, ring: RingDescriptor, rank: usize, values: Vec<Vector>) -> Self {
        debug_assert_eq!(window.len(), values.len());
        ModuleFunction {
            window,
            ring,
            rank,
            values,
        }
    }

    /// Views a scalar function as a rank-one module function.
    pub fn from_scalar(alpha: &ArithFunction) -> Self {
        let values = alpha.values().iter().map(|v| vec![v.clone()]).collect();
        Self::from_parts(alpha.window().clone(), alpha.ring().clone(), 1, values)
    }

    /// Builds `n -> r·v` from a scalar function and a fixed vector.
    pub fn from_scalar_times(alpha: &ArithFunction, v: &[RingElement]) -> Result<Self> {
        for x in v {
            check_ring(alpha.ring(), x)?;
        }
        let values = alpha
            .values()
            .iter()
            .map(|r| v.iter().map(|x| r.mul(x)).collect::<Result<Vector>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(alpha.window().clone(), alpha.ring().clone(), v.len(), values))
    }

    pub fn set(&mut self, n: u64, v: Vector) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: v.len(),
            });
        }
        for x in &v {
            check_ring(&self.ring, x)?;
        }
        if !self.window.spec().contains(n) {
            return Err(self.window.spec().not_in(n));
        }
        let idx = self.window.index_of(n).ok_or(Error::OutsideBound {
            n,
            bound: self.bound(),
        })?;
        self.values[idx] = v;
        Ok(())
    }

    pub fn spec(&self) -> &MonoidSpec {
        self.window.spec()
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bound(&self) -> u64 {
        self.window.bound()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub(crate) fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn get(&self, n: u64) -> Option<&Vector> {
        self.window.index_of(n).map(|i| &self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Vector)> {
        self.window.elements().iter().copied().zip(&self.values)
    }

    pub fn support(&self) -> impl Iterator<Item = (u64, &Vector)> {
        self.iter().filter(|(_, v)| !is_zero_vector(v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    /// The `i`-th coordinate function.
    pub fn component(&self, i: usize) -> Result<ArithFunction> {
        if i >= self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: i + 1,
            });
        }
        let values = self.values.iter().map(|v| v[i].clone()).collect();
        Ok(ArithFunction::from_parts(self.window.clone(), self.ring.clone(), values))
    }

    pub fn truncate(&self, bound: u64) -> Self {
        if bound >= self.bound() {
            return self.clone();
        }
        let window = self.window.truncate(bound);
        let values = self.values[..window.len()].to_vec();
        Self::from_parts(window, self.ring.clone(), self.rank, values)
    }

    /// Equality on the common window.
    pub fn agrees_with(&self, other: &ModuleFunction) -> bool {
        self.rank == other.rank
            && check_same(&self.window, &self.ring, &other.window, &other.ring).is_ok()
            && self.values.iter().zip(&other.values).all(|(a, b)| a == b)
    }

    fn check_compatible(&self, other: &ModuleFunction) -> Result<Window> {
        check_same(&self.window, &self.ring, &other.window, &other.ring)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(common_window(&self.window, &other.window))
    }

    pub fn add(&self, other: &ModuleFunction) -> Result<ModuleFunction> {
        let window = self.check_compatible(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .take(window.len())
            .map(|(a, b)| {
                let mut s = a.clone();
                add_vectors(&mut s, b)?;
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(window, self.ring.clone(), self.rank, values))
    }

    pub fn neg(&self) -> ModuleFunction {
        let values = self
            .values
            .iter()
            .map(|v| v.iter().map(RingElement::neg).collect())
            .collect();
        Self::from_parts(self.window.clone(), self.ring.clone(), self.rank, values)
    }

    /// The module action `(α·f)(n) = Σ_{ab=n} α(a) f(b)`.
    pub fn act(alpha: &ArithFunction, f: &ModuleFunction) -> Result<ModuleFunction> {
        check_same(alpha.window(), alpha.ring(), &f.window, &f.ring)?;
        let window = common_window(alpha.window(), &f.window);
        let mut out = vec![zero_vector(&f.ring, f.rank); window.len()];
        let av = alpha.values();
        let rows = (0..window.len()).filter(|&i| !av[i].is_exact_zero());
        let mut err = None;
        window.for_each_pair(rows, |i, j, k| {
            if err.is_some() {
                return;
            }
            for (slot, x) in out[k].iter_mut().zip(&f.values[j]) {
                if x.is_exact_zero() {
                    continue;
                }
                if let Err(e) = av[i].mul(x).and_then(|p| slot.add_assign(&p)) {
                    err = Some(e);
                    return;
                }
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(Self::from_parts(window, f.ring.clone(), f.rank, out)),
        }
    }

    /// Pushforward `φ_*(f) = φ ∘ f` along a linear map.
    pub fn map(&self, phi: &LinearMap) -> Result<ModuleFunction> {
        if phi.ring != self.ring {
            return Err(Error::MixedRings {
                left: self.ring.clone(),
                right: phi.ring.clone(),
            });
        }
        if phi.cols != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: phi.cols,
            });
        }
        let values = self
            .values
            .iter()
            .map(|v| phi.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(self.window.clone(), self.ring.clone(), phi.rows(), values))
    }

    /// `Φ_{L,M}(f)(n) = L(n) f(n)`.
    pub fn phi_l(&self, l: &TotallyMultiplicativeFn) -> Result<ModuleFunction> {
        if l.ring() != &self.ring {
            return Err(Error::MixedRings {
                left: self.ring.clone(),
                right: l.ring().clone(),
            });
        }
        let values = self
            .iter()
            .map(|(n, v)| {
                let ln = l.eval(n)?;
                v.iter().map(|x| ln.mul(x)).collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_parts(self.window.clone(), self.ring.clone(), self.rank, values))
    }

    /// The twisted action `α ·_L f = Φ_{L,R}(α)·f`.
    pub fn twist_act(
        l: &TotallyMultiplicativeFn,
        alpha: &ArithFunction,
        f: &ModuleFunction,
    ) -> Result<ModuleFunction> {
        Self::act(&alpha.twist(l)?, f)
    }

    /// Extension by zero from a submonoid.
    pub fn extend_to(&self, target: &MonoidSpec) -> Result<ModuleFunction> {
        self.spec().check_submonoid_of(target, self.bound())?;
        let window = Window::new(target.clone(), self.bound());
        let values = window
            .elements()
            .iter()
            .map(|&n| {
                self.get(n)
                    .cloned()
                    .unwrap_or_else(|| zero_vector(&self.ring, self.rank))
            })
            .collect();
        Ok(Self::from_parts(window, self.ring.clone(), self.rank, values))
    }

    pub fn restrict_to(&self, sub: &MonoidSpec) -> Result<ModuleFunction> {
        sub.check_submonoid_of(self.spec(), self.bound())?;
        let window = Window::new(sub.clone(), self.bound());
        let values = window
            .elements()
            .iter()
            .map(|&n| self.get(n).cloned().expect("submonoid element is stored"))
            .collect();
        Ok(Self::from_parts(window, self.ring.clone(), self.rank, values))
    }
}

impl PartialEq for ModuleFunction {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window
            && self.ring == other.ring
            && self.rank == other.rank
            && self.values == other.values
    }
}

/// An `R`-linear map `R^cols -> R^rows`, stored as a row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    ring: RingDescriptor,
    cols: usize,
    entries: Vec<Vector>,
}

impl LinearMap {
    pub fn new(ring: RingDescriptor, cols: usize, entries: Vec<Vector>) -> Result<Self> {
        for row in &entries {
            if row.len() != cols {
                return Err(Error::RankMismatch {
                    left: cols,
                    right: row.len(),
                });
            }
            for x in row {
                check_ring(&ring, x)?;
            }
        }
        Ok(LinearMap { ring, cols, entries })
    }

    /// Builds a matrix from integer entries.
    pub fn from_i64(ring: RingDescriptor, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        Self::new(ring, cols, entries)
    }

    pub fn identity(ring: RingDescriptor, m: usize) -> Self {
        let entries = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        LinearMap {
            ring,
            cols: m,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, v: &[RingElement]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::RankMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        self.entries
            .iter()
            .map(|row| {
                let mut acc = self.ring.zero();
                for (a, x) in row.iter().zip(v) {
                    acc.add_assign(&a.mul(x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &LinearMap) -> Result<LinearMap> {
        if first.rows() != self.cols {
            return Err(Error::RankMismatch {
                left: self.cols,
                right: first.rows(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|row| {
                (0..first.cols)
                    .map(|j| {
                        let mut acc = self.ring.zero();
                        for (k, a) in row.iter().enumerate() {
                            acc.add_assign(&a.mul(&first.entries[k][j])?)?;
                        }
                        Ok(acc)
                    })
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearMap {
            ring: self.ring.clone(),
            cols: first.cols,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> RingElement {
        RingDescriptor::Rational.from_i64(n)
    }

    fn sample(bound: u64) -> ModuleFunction {
        ModuleFunction::new(
            MonoidSpec::nstar(),
            RingDescriptor::Rational,
            2,
            bound,
            [(1, vec![q(1), q(2)]), (3, vec![q(0), q(-1)]), (4, vec![q(5), q(0)])],
        )
        .unwrap()
    }

    #[test]
    fn unit_acts_trivially() {
        let f = sample(40);
        let e = ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::Rational, 40);
        assert_eq!(ModuleFunction::act(&e, &f).unwrap(), f);
    }

    #[test]
    fn single_divisor_pair() {
        let d2 = ArithFunction::new(MonoidSpec::nstar(), RingDescriptor::Rational, 12, [(2, q(1))]).unwrap();
        let v = vec![q(7), q(-2)];
        let f = ModuleFunction::new(MonoidSpec::nstar(), RingDescriptor::Rational, 2, 12, [(3, v.clone())]).unwrap();
        let g = ModuleFunction::act(&d2, &f).unwrap();
        assert_eq!(g.get(6).unwrap(), &v);
        assert_eq!(g.support().count(), 1);
    }

    #[test]
    fn pushforwards() {
        let f = sample(30);
        let id = LinearMap::identity(RingDescriptor::Rational, 2);
        assert_eq!(f.map(&id).unwrap(), f);
        let proj = LinearMap::from_i64(RingDescriptor::Rational, &[&[1, 0]]).unwrap();
        assert_eq!(f.map(&proj).unwrap().component(0).unwrap(), f.component(0).unwrap());
        // 0 -> R -> R^2 -> R -> 0 with x -> (x, 0) and (x, y) -> y.
        let incl = LinearMap::from_i64(RingDescriptor::Rational, &[&[1], &[0]]).unwrap();
        let quot = LinearMap::from_i64(RingDescriptor::Rational, &[&[0, 1]]).unwrap();
        let g = ModuleFunction::from_scalar(&f.component(0).unwrap());
        assert!(g.map(&incl).unwrap().map(&quot).unwrap().is_zero());
        assert!(matches!(f.map(&incl), Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn composition() {
        let a = LinearMap::from_i64(RingDescriptor::Rational, &[&[1, 2], &[3, 4]]).unwrap();
        let b = LinearMap::from_i64(RingDescriptor::Rational, &[&[0, 1], &[1, 0]]).unwrap();
        let f = sample(30);
        let lhs = f.map(&a.compose(&b).unwrap()).unwrap();
        let rhs = f.map(&b).unwrap().map(&a).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn extension_by_zero() {
        let g1 = MonoidSpec::gamma(1).unwrap();
        let g2 = MonoidSpec::gamma(2).unwrap();
        let z = ModuleFunction::zero(g1.clone(), RingDescriptor::Rational, 2, 50);
        assert!(z.extend_to(&g2).unwrap().is_zero());
        let f = ModuleFunction::new(g1.clone(), RingDescriptor::Rational, 2, 50, [(1, vec![q(1), q(1)]), (8, vec![q(2), q(0)])]).unwrap();
        let ext = f.extend_to(&g2).unwrap();
        assert!(ext.support().all(|(n, _)| g1.contains(n)));
        assert_eq!(ext.restrict_to(&g1).unwrap(), f);
    }

    #[test]
    fn rank_checked() {
        let f = sample(10);
        let g = ModuleFunction::zero(MonoidSpec::nstar(), RingDescriptor::Rational, 3, 10);
        assert!(matches!(f.add(&g), Err(Error::RankMismatch { .. })));
        let mut h = f.clone();
        assert!(h.set(2, vec![q(1)]).is_err());
    }
}
