//! The `dirconv` command-line tool.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::derivation::{
    holo_derivation, lift_derivation, log_derivation, p_derivation, BaseDerivation, Character, DerivationSpec,
};
use crate::dirichlet::{ArithFunction, Norm};
use crate::error::Error;
use crate::eval::{check_derivative_identity, eval_f, DEFAULT_STEP};
use crate::grothendieck::{ext_derivation, ExtFunction};
use crate::module::ModuleFunction;
use crate::monoid::MonoidSpec;
use crate::ring::{parse_complex, RingDescriptor, RingElement};
use crate::series::{iso_decode, iso_encode, laurent_decode, laurent_encode};
use crate::text::{self, FileKind, Overrides};

#[derive(Parser, Debug)]
#[command(name = "dirconv", version, about = "Dirichlet convolution rings over monoids of positive integers")]
pub struct Cli {
    /// Coefficient ring for files without a `ring=` field.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Bound for files without a `bound=` field; truncates files that have one.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Monoid for files without a `monoid=` field.
    #[arg(long, global = true)]
    monoid: Option<String>,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DeriveKind {
    Lift,
    P,
    Log,
    Holo,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum BaseKind {
    Zero,
    Poly,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dirichlet product of two functions, or the action on a module function.
    Convolve { left: PathBuf, right: PathBuf },
    /// Sum of two files of the same kind.
    Add { left: PathBuf, right: PathBuf },
    /// Inverse of a unit.
    Invert { input: PathBuf },
    /// Least n with a nonzero value; 0 when the function vanishes up to its bound.
    Norm { input: PathBuf },
    /// Pointwise product with a totally multiplicative function.
    Twist {
        input: PathBuf,
        /// Prime values of the multiplicative function.
        #[arg(long = "char")]
        character: PathBuf,
    },
    /// Applies a derivation.
    Derive {
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: DeriveKind,
        /// Prime for `--kind p`.
        #[arg(long)]
        p: Option<u64>,
        /// Additive character for `--kind lift`.
        #[arg(long)]
        delta: Option<PathBuf>,
        /// Derivation of the coefficient ring.
        #[arg(long, value_enum, default_value = "zero")]
        base: BaseKind,
    },
    /// Views a function on the monoid as one on its group of fractions.
    ExtEmbed { input: PathBuf },
    /// Product of two functions on the group of fractions.
    ExtConvolve { left: PathBuf, right: PathBuf },
    /// Power series (or Laurent series) of a function on Γ(k).
    Encode {
        input: PathBuf,
        /// Per-variable exponent caps, for functions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        caps: Option<Vec<u32>>,
        /// Absolute top exponents, for functions on the group of fractions.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        top: Option<Vec<i64>>,
    },
    /// Inverse of `encode`.
    Decode { input: PathBuf },
    /// Evaluates the truncated Dirichlet series.
    Eval {
        input: PathBuf,
        /// Evaluation points `a+bi`; may be repeated.
        #[arg(long, required = true, allow_hyphen_values = true)]
        z: Vec<String>,
        /// Also compare a finite difference with the series of the derivation.
        #[arg(long)]
        check_derivative: bool,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        h: f64,
    },
    /// Checks ring identities on the given functions.
    Check {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Runs the built-in identity suite.
    Selftest,
}

/// Why a command failed, with the input it concerns.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Input(Option<PathBuf>, Error),
    /// Some checks failed; carries the full report.
    Failed(usize, String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Io(..) => 1,
            Failure::Input(_, e) if e.is_parse() => 1,
            Failure::Input(..) => 2,
            Failure::Failed(..) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => write!(f, "{msg}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Input(Some(p), e) => write!(f, "{}: {e}", p.display()),
            Failure::Input(None, e) => write!(f, "{e}"),
            Failure::Failed(n, _) => write!(f, "{n} check(s) failed"),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

trait Context<T> {
    fn about(self, path: &Path) -> Outcome<T>;
    fn plain(self) -> Outcome<T>;
}

impl<T> Context<T> for crate::error::Result<T> {
    fn about(self, path: &Path) -> Outcome<T> {
        self.map_err(|e| Failure::Input(Some(path.to_path_buf()), e))
    }

    fn plain(self) -> Outcome<T> {
        self.map_err(|e| Failure::Input(None, e))
    }
}

struct Session {
    overrides: Overrides,
}

impl Session {
    fn read(&self, path: &PathBuf) -> Outcome<String> {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(path.clone(), e))
    }

    fn kind(&self, path: &PathBuf) -> Outcome<(String, FileKind)> {
        let src = self.read(path)?;
        let kind = text::detect_kind(&src).about(path)?;
        Ok((src, kind))
    }

    fn function(&self, path: &PathBuf) -> Outcome<ArithFunction> {
        text::parse_function(&self.read(path)?, &self.overrides).about(path)
    }

    fn ext(&self, path: &PathBuf) -> Outcome<ExtFunction> {
        let (src, kind) = self.kind(path)?;
        match kind {
            FileKind::Function => Ok(ExtFunction::embed(&text::parse_function(&src, &self.overrides).about(path)?)),
            FileKind::Ext => text::parse_ext(&src, &self.overrides).about(path),
            _ => Err(Failure::Input(Some(path.clone()), Error::parse("expected a function file"))),
        }
    }
}

fn wrong_kind(path: &Path, what: &str) -> Failure {
    Failure::Input(Some(path.to_path_buf()), Error::parse(format!("expected {what}")))
}

fn format_sci(z: Complex64) -> String {
    format!("{:.11e}{}{:.11e}i", z.re, if z.im.is_sign_negative() { "-" } else { "+" }, z.im.abs())
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(output) => match &cli.out {
            Some(path) => match std::fs::write(path, output) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {}", Failure::Io(path.clone(), e));
                    1
                }
            },
            None => {
                let _ = stdout.write_all(output.as_bytes());
                0
            }
        },
        Err(Failure::Failed(n, report)) => {
            let _ = stdout.write_all(report.as_bytes());
            let _ = writeln!(stderr, "error: {n} check(s) failed");
            3
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Outcome<String> {
    let overrides = Overrides {
        ring: cli.ring.as_deref().map(str::parse).transpose().plain()?,
        monoid: cli.monoid.as_deref().map(str::parse).transpose().plain()?,
        bound: cli.bound,
    };
    let s = Session { overrides };
    match &cli.command {
        Command::Convolve { left, right } => {
            let a = s.function(left)?;
            let (src, kind) = s.kind(right)?;
            match kind {
                FileKind::Function => {
                    let b = text::parse_function(&src, &s.overrides).about(right)?;
                    Ok(text::write_function(&a.convolve(&b).about(right)?))
                }
                FileKind::Module => {
                    let f = text::parse_module(&src, &s.overrides).about(right)?;
                    Ok(text::write_module(&ModuleFunction::act(&a, &f).about(right)?))
                }
                _ => Err(wrong_kind(right, "a function or module file")),
            }
        }
        Command::Add { left, right } => add(&s, left, right),
        Command::Invert { input } => Ok(text::write_function(&s.function(input)?.invert().about(input)?)),
        Command::Norm { input } => Ok(match s.function(input)?.norm() {
            Norm::Value(n) => format!("{n}\n"),
            Norm::ZeroUpToBound => "0\n".to_string(),
        }),
        Command::Twist { input, character } => {
            let l = text::parse_multiplicative(&s.read(character)?, &s.overrides).about(character)?;
            let (src, kind) = s.kind(input)?;
            match kind {
                FileKind::Function => {
                    let a = text::parse_function(&src, &s.overrides).about(input)?;
                    Ok(text::write_function(&a.twist(&l).about(input)?))
                }
                FileKind::Module => {
                    let f = text::parse_module(&src, &s.overrides).about(input)?;
                    Ok(text::write_module(&f.phi_l(&l).about(input)?))
                }
                _ => Err(wrong_kind(input, "a function or module file")),
            }
        }
        Command::Derive {
            input,
            kind,
            p,
            delta,
            base,
        } => derive(&s, input, *kind, *p, delta.as_ref(), *base),
        Command::ExtEmbed { input } => Ok(text::write_ext(&ExtFunction::embed(&s.function(input)?))),
        Command::ExtConvolve { left, right } => {
            let a = s.ext(left)?;
            let b = s.ext(right)?;
            Ok(text::write_ext(&a.convolve(&b).about(right)?))
        }
        Command::Encode { input, caps, top } => {
            let (src, kind) = s.kind(input)?;
            match (kind, caps, top) {
                (FileKind::Function, Some(caps), None) => {
                    let a = text::parse_function(&src, &s.overrides).about(input)?;
                    Ok(text::write_series(&iso_encode(&a, caps).about(input)?))
                }
                (FileKind::Ext | FileKind::Function, None, Some(top)) => {
                    let a = s.ext(input)?;
                    Ok(text::write_laurent(&laurent_encode(&a, top).about(input)?))
                }
                _ => Err(Failure::Usage(
                    "encode takes --caps for function files or --top for fraction files".into(),
                )),
            }
        }
        Command::Decode { input } => {
            let (src, kind) = s.kind(input)?;
            match kind {
                FileKind::Series => {
                    let series = text::parse_series(&src, &s.overrides).about(input)?;
                    Ok(text::write_function(&iso_decode(&series).about(input)?))
                }
                FileKind::Laurent => {
                    let ls = text::parse_laurent(&src, &s.overrides).about(input)?;
                    Ok(text::write_ext(&laurent_decode(&ls).about(input)?))
                }
                _ => Err(wrong_kind(input, "a series file")),
            }
        }
        Command::Eval {
            input,
            z,
            check_derivative,
            h,
        } => {
            let a = s.function(input)?;
            let mut out = String::new();
            for lit in z {
                let z = parse_complex(lit).plain()?;
                let v = eval_f(&a, z).about(input)?;
                write!(out, "{} {}", format_sci(z), format_sci(v.value)).unwrap();
                if *check_derivative {
                    let chk = check_derivative_identity(&a, z, *h).about(input)?;
                    write!(out, " {:.11e}", chk.discrepancy).unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
        Command::Check { inputs } => {
            let fns = inputs
                .iter()
                .map(|p| s.function(p))
                .collect::<Outcome<Vec<_>>>()?;
            for (f, p) in fns.iter().zip(inputs).skip(1) {
                fns[0].add(f).about(p)?;
            }
            report(check_items(&fns))
        }
        Command::Selftest => report(selftest_items()),
    }
}

fn add(s: &Session, left: &PathBuf, right: &PathBuf) -> Outcome<String> {
    let (lsrc, lkind) = s.kind(left)?;
    let (rsrc, rkind) = s.kind(right)?;
    if lkind != rkind {
        return Err(wrong_kind(right, "a file of the same kind as the first"));
    }
    let ov = &s.overrides;
    match lkind {
        FileKind::Function => {
            let a = text::parse_function(&lsrc, ov).about(left)?;
            let b = text::parse_function(&rsrc, ov).about(right)?;
            Ok(text::write_function(&a.add(&b).about(right)?))
        }
        FileKind::Module => {
            let a = text::parse_module(&lsrc, ov).about(left)?;
            let b = text::parse_module(&rsrc, ov).about(right)?;
            Ok(text::write_module(&a.add(&b).about(right)?))
        }
        FileKind::Ext => {
            let a = text::parse_ext(&lsrc, ov).about(left)?;
            let b = text::parse_ext(&rsrc, ov).about(right)?;
            Ok(text::write_ext(&a.add(&b).about(right)?))
        }
        FileKind::Series => {
            let a = text::parse_series(&lsrc, ov).about(left)?;
            let b = text::parse_series(&rsrc, ov).about(right)?;
            Ok(text::write_series(&a.add(&b).about(right)?))
        }
        FileKind::Laurent => {
            let a = text::parse_laurent(&lsrc, ov).about(left)?;
            let b = text::parse_laurent(&rsrc, ov).about(right)?;
            Ok(text::write_laurent(&a.add(&b).about(right)?))
        }
        FileKind::ExtModule => Err(wrong_kind(left, "a function, module, fraction or series file")),
    }
}

fn derive(
    s: &Session,
    input: &PathBuf,
    kind: DeriveKind,
    p: Option<u64>,
    delta: Option<&PathBuf>,
    base: BaseKind,
) -> Outcome<String> {
    let base = match base {
        BaseKind::Zero => BaseDerivation::Zero,
        BaseKind::Poly => BaseDerivation::PolyDerivative,
    };
    let (src, file_kind) = s.kind(input)?;
    match kind {
        DeriveKind::Lift => {
            let delta = delta.ok_or_else(|| Failure::Usage("--kind lift needs --delta".into()))?;
            let ch = text::parse_character(&s.read(delta)?, &s.overrides).about(delta)?;
            let dspec = DerivationSpec::new(base, ch).about(delta)?;
            match file_kind {
                FileKind::Function => {
                    let a = text::parse_function(&src, &s.overrides).about(input)?;
                    Ok(text::write_module(&lift_derivation(&dspec, &a).about(input)?))
                }
                FileKind::Ext => {
                    let a = text::parse_ext(&src, &s.overrides).about(input)?;
                    Ok(text::write_ext_module(&ext_derivation(&dspec, &a).about(input)?))
                }
                _ => Err(wrong_kind(input, "a function or fraction file")),
            }
        }
        _ => {
            if file_kind != FileKind::Function {
                return Err(wrong_kind(input, "a function file"));
            }
            let a = text::parse_function(&src, &s.overrides).about(input)?;
            let out = match kind {
                DeriveKind::P => {
                    let p = p.ok_or_else(|| Failure::Usage("--kind p needs --p".into()))?;
                    p_derivation(p, base, &a)
                }
                DeriveKind::Log => log_derivation(&a),
                _ => holo_derivation(&a),
            };
            Ok(text::write_function(&out.about(input)?))
        }
    }
}

fn report(items: Vec<(String, bool)>) -> Outcome<String> {
    let mut out = String::new();
    let mut failed = 0;
    for (name, ok) in &items {
        writeln!(out, "{} {name}", if *ok { "PASS" } else { "FAIL" }).unwrap();
        failed += usize::from(!ok);
    }
    if failed > 0 {
        return Err(Failure::Failed(failed, out));
    }
    Ok(out)
}

/// Ring identities on user-supplied functions.
fn check_items(fns: &[ArithFunction]) -> Vec<(String, bool)> {
    let mut items = Vec::new();
    let ok = |r: crate::error::Result<bool>| r.unwrap_or(false);
    for (i, a) in fns.iter().enumerate() {
        let e = ArithFunction::unit(a.spec().clone(), a.ring().clone(), a.bound());
        items.push((format!("identity #{}", i + 1), ok(a.convolve(&e).map(|x| x == *a))));
        if a.is_unit() {
            let inv = ok(a.invert().and_then(|b| a.convolve(&b)).map(|x| x == e));
            items.push((format!("inverse #{}", i + 1), inv));
        }
        for (j, b) in fns.iter().enumerate().skip(i + 1) {
            let tag = format!("#{} #{}", i + 1, j + 1);
            let comm = a.convolve(b).and_then(|ab| b.convolve(a).map(|ba| ab == ba));
            items.push((format!("commutativity {tag}"), ok(comm)));
            if a.ring().is_exact_domain() {
                let norm = a.convolve(b).map(|ab| match (a.norm(), b.norm(), ab.norm()) {
                    (Norm::Value(x), Norm::Value(y), n) if x * y <= ab.bound() => n == Norm::Value(x * y),
                    _ => true,
                });
                items.push((format!("norm {tag}"), ok(norm)));
            }
            for (k, c) in fns.iter().enumerate().skip(j + 1) {
                let tag = format!("#{} #{} #{}", i + 1, j + 1, k + 1);
                let assoc = (|| Ok(a.convolve(b)?.convolve(c)? == a.convolve(&b.convolve(c)?)?))();
                items.push((format!("associativity {tag}"), ok(assoc)));
                let dist = (|| Ok(a.convolve(&b.add(c)?)? == a.convolve(b)?.add(&a.convolve(c)?)?))();
                items.push((format!("distributivity {tag}"), ok(dist)));
            }
        }
    }
    items
}

fn sample(spec: &MonoidSpec, ring: &RingDescriptor, bound: u64, seed: u64) -> ArithFunction {
    ArithFunction::from_fn(spec.clone(), ring.clone(), bound, |n| {
        let h = n.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(seed.wrapping_mul(0xBF58_476D_1CE4_E5B9));
        ring.from_i64(((h >> 40) % 7) as i64 - 3)
    })
    .expect("values lie in the ring")
}

/// Values of degree 2 under a cap of 4, so products are never truncated.
fn sample_poly(bound: u64, seed: u64) -> ArithFunction {
    let ring = RingDescriptor::poly(4);
    ArithFunction::from_fn(MonoidSpec::nstar(), ring.clone(), bound, |n| {
        let h = n.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(seed);
        let c = |k: u32| ((h >> (20 + 7 * k)) % 9) as f64 / 4.0 - 1.0;
        ring.parse_element(&format!("{},{},{}", c(0), c(1), c(2))).expect("literal")
    })
    .expect("values lie in the ring")
}

/// The built-in identity suite.
pub fn selftest_items() -> Vec<(String, bool)> {
    let q = RingDescriptor::Rational;
    let nstar = MonoidSpec::nstar();
    let mut items: Vec<(String, bool)> = Vec::new();
    let mut push = |name: &str, r: crate::error::Result<bool>| items.push((name.to_string(), r.unwrap_or(false)));

    push("mobius inversion: mu * 1 = e", (|| {
        let one = ArithFunction::constant(nstar.clone(), 2000, q.one());
        let mu = one.invert()?;
        Ok(mu.convolve(&one)? == ArithFunction::unit(nstar.clone(), q.clone(), 2000))
    })());

    push("inverse round trip", (|| {
        let mut a = sample(&nstar, &q, 300, 1);
        a.set(1, q.from_i64(-1))?;
        let e = ArithFunction::unit(nstar.clone(), q.clone(), 300);
        Ok(a.convolve(&a.invert()?)? == e && a.invert()?.invert()? == a)
    })());

    push("inverse round trip over Z/7 on gen(4,6)", (|| {
        let ring = RingDescriptor::modular(7)?;
        let spec = MonoidSpec::generated(vec![4, 6])?;
        let mut a = sample(&spec, &ring, 500, 2);
        a.set(1, ring.from_i64(3))?;
        Ok(a.convolve(&a.invert()?)? == ArithFunction::unit(spec, ring, 500))
    })());

    push("power series round trip and product", (|| {
        let g3 = MonoidSpec::gamma(3)?;
        let caps = [4, 3, 2];
        let (a, b) = (sample(&g3, &q, 10800, 3), sample(&g3, &q, 10800, 4));
        let sa = iso_encode(&a, &caps)?;
        let round = iso_encode(&iso_decode(&sa)?, &caps)? == sa;
        Ok(round && iso_encode(&a.convolve(&b)?, &caps)? == sa.mul(&iso_encode(&b, &caps)?)?)
    })());

    push("Laurent product", (|| {
        let g2 = MonoidSpec::gamma(2)?;
        let a = ExtFunction::new(8, sample(&g2, &q, 1 << 30, 5))?;
        let b = ExtFunction::new(27, sample(&g2, &q, 1 << 30, 6))?;
        let prod = laurent_encode(&a, &[3, 3])?.mul(&laurent_encode(&b, &[3, 3])?)?;
        Ok(laurent_encode(&a.convolve(&b)?, &[6, 6])?.truncate_top(&prod.top())? == prod)
    })());

    push("Leibniz: lifted derivation", (|| {
        let d = DerivationSpec::new(BaseDerivation::Zero, Character::constant(q.one()))?;
        let (a, b) = (sample(&nstar, &q, 200, 7), sample(&nstar, &q, 200, 8));
        let lhs = lift_derivation(&d, &a.convolve(&b)?)?;
        let rhs = ModuleFunction::act(&b, &lift_derivation(&d, &a)?)?.add(&ModuleFunction::act(&a, &lift_derivation(&d, &b)?)?)?;
        Ok(lhs == rhs)
    })());

    push("Leibniz: p-derivation", (|| {
        let (a, b) = (sample(&nstar, &q, 200, 9), sample(&nstar, &q, 200, 10));
        let mut ok = true;
        for p in [2, 3, 5] {
            let d = |x: &ArithFunction| p_derivation(p, BaseDerivation::Zero, x);
            ok &= d(&a.convolve(&b)?)? == d(&a)?.convolve(&b)?.add(&a.convolve(&d(&b)?)?)?;
        }
        Ok(ok)
    })());

    push("Leibniz: holomorphic derivation", (|| {
        let (a, b) = (sample_poly(120, 11), sample_poly(120, 12));
        let lhs = holo_derivation(&a.convolve(&b)?)?;
        let rhs = holo_derivation(&a)?.convolve(&b)?.add(&a.convolve(&holo_derivation(&b)?)?)?;
        Ok(lhs == rhs)
    })());

    push("embedding into fractions is multiplicative", (|| {
        let (a, b) = (sample(&nstar, &q, 300, 13), sample(&nstar, &q, 300, 14));
        Ok(ExtFunction::embed(&a.convolve(&b)?) == ExtFunction::embed(&a).convolve(&ExtFunction::embed(&b))?)
    })());

    push("derivative identity for delta_2", (|| {
        let ring = RingDescriptor::poly(2);
        let d2 = ArithFunction::new(nstar.clone(), ring.clone(), 10, [(2, ring.one())])?;
        let z = Complex64::new(1.5, 0.5);
        let chk = check_derivative_identity(&d2, z, DEFAULT_STEP)?;
        let exact = -(2f64.ln()) * (-z * 2f64.ln()).exp();
        Ok((chk.analytic - exact).norm() < 1e-12 && chk.discrepancy < 1e-6)
    })());

    push("unit criterion over Z", (|| {
        let z = RingDescriptor::Integer;
        let mut ok = true;
        for (c, unit) in [(1, true), (-1, true), (2, false), (3, false)] {
            let mut a = sample(&nstar, &z, 100, 15);
            a.set(1, RingElement::Integer(c.into()))?;
            ok &= a.invert().is_ok() == unit;
        }
        Ok(ok)
    })());

    items
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_with(std::iter::once("dirconv").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn selftest_passes() {
        let (code, out, _) = run(&["selftest"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().all(|l| l.starts_with("PASS ")));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(&["frobnicate"]).0, 1);
        assert_eq!(run(&["norm", "/nonexistent/x.fn"]).0, 1);
        assert_eq!(run(&["--version"]).0, 0);
    }

    #[test]
    fn sci_format() {
        assert_eq!(format_sci(Complex64::new(0.5, -2.0)), "5.00000000000e-1-2.00000000000e0i");
    }
}
