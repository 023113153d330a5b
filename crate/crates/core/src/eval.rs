//! Numeric evaluation of truncated Dirichlet series.

use num_complex::Complex64;

use crate::derivation::{holo_derivation, log_derivation};
use crate::dirichlet::{ArithFunction, TotallyMultiplicativeFn};
use crate::error::{Error, Result};
use crate::ring::RingDescriptor;

/// `F_α(z) = Σ_{n <= B} α(n)(z)·n^{-z}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletSeriesValue {
    pub z: Complex64,
    pub value: Complex64,
    pub truncation: u64,
}

/// `n^{-z} = exp(-z log n)`.
pub fn n_pow_neg(n: u64, z: Complex64) -> Complex64 {
    (-z * (n as f64).ln()).exp()
}

/// Sums over the window in ascending `n`. Polynomial values are evaluated
/// at `z`; exact rings are embedded in the complex numbers.
pub fn eval_f(alpha: &ArithFunction, z: Complex64) -> Result<DirichletSeriesValue> {
    let mut value = Complex64::new(0.0, 0.0);
    for (n, a) in alpha.support() {
        let c = a.eval_at(z).ok_or_else(|| Error::WrongRing {
            expected: "a ring embedded in the complex numbers",
            got: alpha.ring().clone(),
        })?;
        value += c * n_pow_neg(n, z);
    }
    Ok(DirichletSeriesValue {
        z,
        value,
        truncation: alpha.bound(),
    })
}

/// Bound on the omitted tail when every `|α(n)| <= 1` and `Re z > 1`.
///
/// By convexity `n^{-s}` is at most its average over `[n-1/2, n+1/2]`, so
/// `Σ_{n > B} n^{-s} <= (B + 1/2)^{1-s} / (s - 1)`.
pub fn tail_bound(bound: u64, z: Complex64) -> Option<f64> {
    let s = z.re;
    (s > 1.0).then(|| (bound as f64 + 0.5).powf(1.0 - s) / (s - 1.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeCheck {
    pub z: Complex64,
    /// `(F(z+h) - F(z-h)) / 2h`.
    pub finite_difference: Complex64,
    /// `F_{D̃α}(z)`.
    pub analytic: Complex64,
    pub discrepancy: f64,
}

pub const DEFAULT_STEP: f64 = 1e-4;

/// Compares a central difference of `F_α` with `F_{D̃α}` for the
/// holomorphic derivation `D̃`, which is the log-derivation on constants.
pub fn check_derivative_identity(alpha: &ArithFunction, z: Complex64, h: f64) -> Result<DerivativeCheck> {
    let step = Complex64::new(h, 0.0);
    let plus = eval_f(alpha, z + step)?.value;
    let minus = eval_f(alpha, z - step)?.value;
    let finite_difference = (plus - minus) / (2.0 * h);
    let derived = match alpha.ring() {
        RingDescriptor::Complex { .. } => log_derivation(alpha)?,
        _ => holo_derivation(alpha)?,
    };
    let analytic = eval_f(&derived, z)?.value;
    Ok(DerivativeCheck {
        z,
        finite_difference,
        analytic,
        discrepancy: (finite_difference - analytic).norm(),
    })
}

/// `Φ_L(α)(n) = L(n)·α(n)` for complex or polynomial coefficients.
pub fn eval_twist(l: &TotallyMultiplicativeFn, alpha: &ArithFunction) -> Result<ArithFunction> {
    if !matches!(alpha.ring(), RingDescriptor::Complex { .. } | RingDescriptor::Poly { .. }) {
        return Err(Error::WrongRing {
            expected: "complex or polynomial coefficients",
            got: alpha.ring().clone(),
        });
    }
    alpha.twist(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidSpec;
    use crate::ring::RingElement;

    fn c(re: f64) -> RingElement {
        RingDescriptor::complex().from_complex(Complex64::new(re, 0.0)).unwrap()
    }

    #[test]
    fn closed_forms() {
        let z = Complex64::new(1.3, 0.7);
        let e = ArithFunction::unit(MonoidSpec::nstar(), RingDescriptor::complex(), 10);
        assert!((eval_f(&e, z).unwrap().value - 1.0).norm() < 1e-15);
        let d2 = ArithFunction::new(MonoidSpec::nstar(), RingDescriptor::complex(), 10, [(2, c(1.0))]).unwrap();
        let v = eval_f(&d2, Complex64::new(1.0, 0.0)).unwrap().value;
        assert!((v - 0.5).norm() < 1e-15);
    }

    #[test]
    fn zeta_two() {
        let one = ArithFunction::constant(MonoidSpec::nstar(), 1000, c(1.0));
        let z = Complex64::new(2.0, 0.0);
        let v = eval_f(&one, z).unwrap().value;
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let tail = tail_bound(1000, z).unwrap();
        assert!(tail < 1e-3);
        assert!((zeta2 - v.re).abs() <= tail);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn derivative_of_delta_two() {
        let ring = RingDescriptor::poly(2);
        let d2 = ArithFunction::new(MonoidSpec::nstar(), ring.clone(), 10, [(2, ring.one())]).unwrap();
        for z in [Complex64::new(1.0, 0.0), Complex64::new(2.5, -0.4)] {
            let chk = check_derivative_identity(&d2, z, DEFAULT_STEP).unwrap();
            let exact = -(2f64.ln()) * n_pow_neg(2, z);
            assert!((chk.analytic - exact).norm() < 1e-12);
            assert!(chk.discrepancy < 1e-6);
        }
        let e = ArithFunction::unit(MonoidSpec::nstar(), ring, 10);
        let chk = check_derivative_identity(&e, Complex64::new(2.0, 0.0), DEFAULT_STEP).unwrap();
        assert!(chk.analytic.norm() < 1e-15 && chk.finite_difference.norm() < 1e-9);
    }

    #[test]
    fn shifted_zeta() {
        let inv = TotallyMultiplicativeFn::from_prime_fn(RingDescriptor::complex(), 200, |p| c(1.0 / p as f64)).unwrap();
        let one = ArithFunction::constant(MonoidSpec::nstar(), 200, c(1.0));
        let z = Complex64::new(1.5, 0.2);
        let lhs = eval_f(&eval_twist(&inv, &one).unwrap(), z).unwrap().value;
        let rhs = eval_f(&one, z + 1.0).unwrap().value;
        assert!((lhs - rhs).norm() < 1e-12);
    }
}
