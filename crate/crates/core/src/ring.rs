//! Coefficient rings.
//!
//! Elements are tagged with the ring they live in; binary operations refuse
//! to combine elements of different rings. Exact rings (integers, rationals,
//! residues) compare exactly, the floating rings compare up to the absolute
//! tolerance carried by their descriptor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Which ring a coefficient belongs to.
#[derive(Clone, Debug, PartialEq)]
pub enum RingDescriptor {
    Integer,
    Rational,
    Modular(u64),
    Complex { tolerance: f64 },
    /// Polynomials in one variable with complex coefficients, truncated above
    /// `degree_cap`. They stand in for germs of holomorphic functions.
    Poly { tolerance: f64, degree_cap: usize },
}

impl RingDescriptor {
    pub fn modular(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::parse(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(RingDescriptor::Modular(modulus))
    }

    pub fn complex() -> Self {
        RingDescriptor::Complex {
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn poly(degree_cap: usize) -> Self {
        RingDescriptor::Poly {
            tolerance: DEFAULT_TOLERANCE,
            degree_cap,
        }
    }

    /// True for rings without zero divisors whose equality is exact.
    pub fn is_exact_domain(&self) -> bool {
        matches!(self, RingDescriptor::Integer | RingDescriptor::Rational)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RingDescriptor::Complex { .. } | RingDescriptor::Poly { .. })
    }

    pub fn zero(&self) -> RingElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElement {
        self.from_i64(1)
    }

    /// Image of an integer under the unique ring map Z -> R.
    pub fn from_i64(&self, n: i64) -> RingElement {
        match *self {
            RingDescriptor::Integer => RingElement::Integer(BigInt::from(n)),
            RingDescriptor::Rational => RingElement::Rational(BigRational::from_integer(n.into())),
            RingDescriptor::Modular(m) => RingElement::Modular {
                value: (n as i128).rem_euclid(m as i128) as u64,
                modulus: m,
            },
            RingDescriptor::Complex { tolerance } => RingElement::Complex {
                value: Complex64::new(n as f64, 0.0),
                tolerance,
            },
            RingDescriptor::Poly {
                tolerance,
                degree_cap,
            } => RingElement::Poly(TruncPoly::constant(
                Complex64::new(n as f64, 0.0),
                degree_cap,
                tolerance,
            )),
        }
    }

    /// Embeds a complex number; only defined for the floating rings.
    pub fn from_complex(&self, z: Complex64) -> Result<RingElement> {
        match *self {
            RingDescriptor::Complex { tolerance } => Ok(RingElement::Complex {
                value: z,
                tolerance,
            }),
            RingDescriptor::Poly {
                tolerance,
                degree_cap,
            } => Ok(RingElement::Poly(TruncPoly::constant(z, degree_cap, tolerance))),
            _ => Err(Error::WrongRing {
                expected: "a complex or polynomial ring",
                got: self.clone(),
            }),
        }
    }

    /// Parses a ring literal belonging to this ring.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let s = s.trim();
        match *self {
            RingDescriptor::Integer => s
                .parse::<BigInt>()
                .map(RingElement::Integer)
                .map_err(|_| Error::parse(format!("bad integer literal '{s}'"))),
            RingDescriptor::Rational => parse_rational(s).map(RingElement::Rational),
            RingDescriptor::Modular(m) => {
                let (value, modulus) = match s.split_once(" mod ") {
                    Some((v, md)) => {
                        let md: u64 = md
                            .trim()
                            .parse()
                            .map_err(|_| Error::parse(format!("bad modulus in '{s}'")))?;
                        (v.trim(), md)
                    }
                    None => (s, m),
                };
                if modulus != m {
                    return Err(Error::parse(format!(
                        "literal '{s}' has modulus {modulus}, ring has {m}"
                    )));
                }
                let v: BigInt = value
                    .parse()
                    .map_err(|_| Error::parse(format!("bad residue literal '{s}'")))?;
                let r = v.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits");
                Ok(RingElement::Modular {
                    value: r,
                    modulus: m,
                })
            }
            RingDescriptor::Complex { tolerance } => Ok(RingElement::Complex {
                value: parse_complex(s)?,
                tolerance,
            }),
            RingDescriptor::Poly {
                tolerance,
                degree_cap,
            } => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .unwrap_or(s);
                let coeffs = inner
                    .split(',')
                    .map(parse_complex)
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() > degree_cap + 1 {
                    return Err(Error::parse(format!(
                        "polynomial '{s}' exceeds degree cap {degree_cap}"
                    )));
                }
                Ok(RingElement::Poly(TruncPoly::new(coeffs, degree_cap, tolerance)))
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RingDescriptor::Integer => write!(f, "Z"),
            RingDescriptor::Rational => write!(f, "Q"),
            RingDescriptor::Modular(m) => write!(f, "Zmod:{m}"),
            RingDescriptor::Complex { tolerance } if tolerance == DEFAULT_TOLERANCE => write!(f, "C"),
            RingDescriptor::Complex { tolerance } => write!(f, "C:{tolerance:e}"),
            RingDescriptor::Poly {
                tolerance,
                degree_cap,
            } if tolerance == DEFAULT_TOLERANCE => write!(f, "Poly:{degree_cap}"),
            RingDescriptor::Poly {
                tolerance,
                degree_cap,
            } => write!(f, "Poly:{degree_cap}:{tolerance:e}"),
        }
    }
}

impl FromStr for RingDescriptor {
    type Err = Error;

    /// Accepts `Q`, `Z`, `Zmod:m`, `C`, `C:tol`, `Poly:k` and `Poly:k:tol`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let tol = |t: &str| -> Result<f64> {
            let v: f64 = t
                .parse()
                .map_err(|_| Error::parse(format!("bad tolerance '{t}'")))?;
            if v.is_nan() || v < 0.0 {
                return Err(Error::parse(format!("tolerance must be nonnegative, got {t}")));
            }
            Ok(v)
        };
        match parts.as_slice() {
            ["Q"] => Ok(RingDescriptor::Rational),
            ["Z"] => Ok(RingDescriptor::Integer),
            ["Zmod", m] => RingDescriptor::modular(
                m.parse()
                    .map_err(|_| Error::parse(format!("bad modulus '{m}'")))?,
            ),
            ["C"] => Ok(RingDescriptor::complex()),
            ["C", t] => Ok(RingDescriptor::Complex { tolerance: tol(t)? }),
            ["Poly", k] | ["Poly", k, _] => {
                let degree_cap = k
                    .parse()
                    .map_err(|_| Error::parse(format!("bad degree cap '{k}'")))?;
                let tolerance = match parts.get(2) {
                    Some(t) => tol(t)?,
                    None => DEFAULT_TOLERANCE,
                };
                Ok(RingDescriptor::Poly {
                    tolerance,
                    degree_cap,
                })
            }
            _ => Err(Error::parse(format!("unknown ring '{s}'"))),
        }
    }
}

/// A polynomial with complex coefficients truncated above a degree cap.
/// The coefficient vector always has length `cap + 1`.
#[derive(Clone, Debug)]
pub struct TruncPoly {
    coeffs: Vec<Complex64>,
    tolerance: f64,
}

impl TruncPoly {
    pub fn new(mut coeffs: Vec<Complex64>, degree_cap: usize, tolerance: f64) -> Self {
        coeffs.resize(degree_cap + 1, Complex64::zero());
        TruncPoly { coeffs, tolerance }
    }

    pub fn constant(c: Complex64, degree_cap: usize, tolerance: f64) -> Self {
        Self::new(vec![c], degree_cap, tolerance)
    }

    pub fn degree_cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation at `z`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> TruncPoly {
        let mut out = vec![Complex64::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out[k - 1] = c * k as f64;
        }
        TruncPoly {
            coeffs: out,
            tolerance: self.tolerance,
        }
    }

    fn mul(&self, other: &TruncPoly) -> TruncPoly {
        let cap = self.degree_cap();
        let mut out = vec![Complex64::zero(); cap + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(cap + 1 - i) {
                out[i + j] += a * b;
            }
        }
        TruncPoly {
            coeffs: out,
            tolerance: self.tolerance,
        }
    }

    fn inverse(&self) -> Option<TruncPoly> {
        let c0 = self.coeffs[0];
        if c0.norm() <= self.tolerance || c0.is_zero() {
            return None;
        }
        let inv0 = c0.inv();
        let mut out = vec![Complex64::zero(); self.coeffs.len()];
        out[0] = inv0;
        for k in 1..out.len() {
            let s: Complex64 = (1..=k).map(|j| self.coeffs[j] * out[k - j]).sum();
            out[k] = -inv0 * s;
        }
        Some(TruncPoly {
            coeffs: out,
            tolerance: self.tolerance,
        })
    }
}

/// An element of one of the coefficient rings.
#[derive(Clone, Debug)]
pub enum RingElement {
    Integer(BigInt),
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
    Complex { value: Complex64, tolerance: f64 },
    Poly(TruncPoly),
}

impl RingElement {
    pub fn ring(&self) -> RingDescriptor {
        match self {
            RingElement::Integer(_) => RingDescriptor::Integer,
            RingElement::Rational(_) => RingDescriptor::Rational,
            RingElement::Modular { modulus, .. } => RingDescriptor::Modular(*modulus),
            RingElement::Complex { tolerance, .. } => RingDescriptor::Complex {
                tolerance: *tolerance,
            },
            RingElement::Poly(p) => RingDescriptor::Poly {
                tolerance: p.tolerance,
                degree_cap: p.degree_cap(),
            },
        }
    }

    pub fn belongs_to(&self, ring: &RingDescriptor) -> bool {
        match (self, ring) {
            (RingElement::Integer(_), RingDescriptor::Integer)
            | (RingElement::Rational(_), RingDescriptor::Rational) => true,
            (RingElement::Modular { modulus, .. }, RingDescriptor::Modular(m)) => modulus == m,
            _ => self.ring() == *ring,
        }
    }

    fn mixed(&self, other: &RingElement) -> Error {
        Error::MixedRings {
            left: self.ring(),
            right: other.ring(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Integer(v) => v.is_zero(),
            RingElement::Rational(v) => v.is_zero(),
            RingElement::Modular { value, .. } => *value == 0,
            RingElement::Complex { value, tolerance } => value.norm() <= *tolerance,
            RingElement::Poly(p) => p.coeffs.iter().all(|c| c.norm() <= p.tolerance),
        }
    }

    /// True only for an exact zero, ignoring tolerances. Used to skip work.
    pub(crate) fn is_exact_zero(&self) -> bool {
        match self {
            RingElement::Complex { value, .. } => value.is_zero(),
            RingElement::Poly(p) => p.coeffs.iter().all(|c| c.is_zero()),
            _ => self.is_zero(),
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &RingElement) -> Result<()> {
        match (&mut *self, other) {
            (RingElement::Integer(a), RingElement::Integer(b)) => *a += b,
            (RingElement::Rational(a), RingElement::Rational(b)) => *a += b,
            (
                RingElement::Modular { value: a, modulus },
                RingElement::Modular {
                    value: b,
                    modulus: m2,
                },
            ) if *modulus == *m2 => {
                *a = ((*a as u128 + *b as u128) % *modulus as u128) as u64;
            }
            (
                RingElement::Complex {
                    value: a,
                    tolerance,
                },
                RingElement::Complex {
                    value: b,
                    tolerance: t2,
                },
            ) if tolerance == t2 => *a += b,
            (RingElement::Poly(a), RingElement::Poly(b))
                if a.tolerance == b.tolerance && a.coeffs.len() == b.coeffs.len() =>
            {
                for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
                    *x += y;
                }
            }
            _ => return Err(self.mixed(other)),
        }
        Ok(())
    }

    pub fn neg(&self) -> RingElement {
        match self {
            RingElement::Integer(a) => RingElement::Integer(-a),
            RingElement::Rational(a) => RingElement::Rational(-a),
            RingElement::Modular { value, modulus } => RingElement::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            RingElement::Complex { value, tolerance } => RingElement::Complex {
                value: -value,
                tolerance: *tolerance,
            },
            RingElement::Poly(p) => RingElement::Poly(TruncPoly {
                coeffs: p.coeffs.iter().map(|c| -c).collect(),
                tolerance: p.tolerance,
            }),
        }
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        Ok(match (self, other) {
            (RingElement::Integer(a), RingElement::Integer(b)) => RingElement::Integer(a * b),
            (RingElement::Rational(a), RingElement::Rational(b)) => RingElement::Rational(a * b),
            (
                RingElement::Modular { value: a, modulus },
                RingElement::Modular {
                    value: b,
                    modulus: m2,
                },
            ) if modulus == m2 => RingElement::Modular {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            (
                RingElement::Complex {
                    value: a,
                    tolerance,
                },
                RingElement::Complex {
                    value: b,
                    tolerance: t2,
                },
            ) if tolerance == t2 => RingElement::Complex {
                value: a * b,
                tolerance: *tolerance,
            },
            (RingElement::Poly(a), RingElement::Poly(b))
                if a.tolerance == b.tolerance && a.coeffs.len() == b.coeffs.len() =>
            {
                RingElement::Poly(a.mul(b))
            }
            _ => return Err(self.mixed(other)),
        })
    }

    /// Multiplies by the image of an integer.
    pub fn scale_i64(&self, k: i64) -> RingElement {
        self.mul(&self.ring().from_i64(k))
            .expect("integer image lives in the same ring")
    }

    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.ring().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Multiplicative inverse, when the element is a unit.
    pub fn inverse(&self) -> Result<RingElement> {
        let fail = || Error::NotInvertible(self.ring());
        match self {
            RingElement::Integer(a) => {
                if a.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(fail())
                }
            }
            RingElement::Rational(a) => {
                if a.is_zero() {
                    Err(fail())
                } else {
                    Ok(RingElement::Rational(a.recip()))
                }
            }
            RingElement::Modular { value, modulus } => {
                let g = BigInt::from(*value).extended_gcd(&BigInt::from(*modulus));
                if !g.gcd.is_one() {
                    return Err(fail());
                }
                let inv = g.x.mod_floor(&BigInt::from(*modulus));
                Ok(RingElement::Modular {
                    value: inv.to_u64().expect("residue fits"),
                    modulus: *modulus,
                })
            }
            RingElement::Complex { value, tolerance } => {
                if value.norm() <= *tolerance || value.is_zero() {
                    Err(fail())
                } else {
                    Ok(RingElement::Complex {
                        value: value.inv(),
                        tolerance: *tolerance,
                    })
                }
            }
            RingElement::Poly(p) => p.inverse().map(RingElement::Poly).ok_or_else(fail),
        }
    }

    /// Formal derivative in the polynomial variable, kept at the same cap.
    pub fn poly_derivative(&self) -> Result<RingElement> {
        match self {
            RingElement::Poly(p) => Ok(RingElement::Poly(p.derivative())),
            _ => Err(Error::WrongRing {
                expected: "a truncated polynomial ring",
                got: self.ring(),
            }),
        }
    }

    /// Value as a complex number, for rings that embed in C.
    pub fn to_complex(&self) -> Option<Complex64> {
        match self {
            RingElement::Integer(a) => a.to_f64().map(|x| Complex64::new(x, 0.0)),
            RingElement::Rational(a) => a.to_f64().map(|x| Complex64::new(x, 0.0)),
            RingElement::Complex { value, .. } => Some(*value),
            _ => None,
        }
    }

    /// Evaluates the element as a function of `z`: polynomials are evaluated,
    /// scalars are constant.
    pub fn eval_at(&self, z: Complex64) -> Option<Complex64> {
        match self {
            RingElement::Poly(p) => Some(p.eval(z)),
            _ => self.to_complex(),
        }
    }

    pub fn as_poly(&self) -> Option<&TruncPoly> {
        match self {
            RingElement::Poly(p) => Some(p),
            _ => None,
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RingElement::Integer(a), RingElement::Integer(b)) => a == b,
            (RingElement::Rational(a), RingElement::Rational(b)) => a == b,
            (
                RingElement::Modular { value, modulus },
                RingElement::Modular {
                    value: v2,
                    modulus: m2,
                },
            ) => value == v2 && modulus == m2,
            (
                RingElement::Complex { value, tolerance },
                RingElement::Complex {
                    value: v2,
                    tolerance: t2,
                },
            ) => tolerance == t2 && (value - v2).norm() <= *tolerance,
            (RingElement::Poly(a), RingElement::Poly(b)) => {
                a.tolerance == b.tolerance
                    && a.coeffs.len() == b.coeffs.len()
                    && a
                        .coeffs
                        .iter()
                        .zip(&b.coeffs)
                        .all(|(x, y)| (x - y).norm() <= a.tolerance)
            }
            _ => false,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Integer(a) => write!(f, "{a}"),
            RingElement::Rational(a) => write!(f, "{a}"),
            RingElement::Modular { value, modulus } => write!(f, "{value} mod {modulus}"),
            RingElement::Complex { value, .. } => write!(f, "{}", format_complex(*value)),
            RingElement::Poly(p) => {
                let last = p
                    .coeffs
                    .iter()
                    .rposition(|c| !c.is_zero())
                    .unwrap_or(0);
                let parts: Vec<String> =
                    p.coeffs[..=last].iter().map(|c| format_complex(*c)).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// `a+bi` with shortest round-trip float formatting.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let bad = || Error::parse(format!("bad complex literal '{s}'"));
    let num = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(s.parse::<f64>().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re: f64 = body[..i].parse().map_err(|_| bad())?;
            Ok(Complex64::new(re, num(&body[i..])?))
        }
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::parse(format!("bad rational literal '{s}'"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
