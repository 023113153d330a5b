//! Plain-text file formats.
//!
//! Every file is a header line of `key=value` fields followed by one entry
//! per line; blank lines and lines starting with `#` are skipped.
//!
//! ```text
//! monoid=nstar ring=Q bound=12
//! 1 1
//! 2 -1/2
//! ```
//!
//! * functions: `<n> <literal>`, nonzero values only, ascending `n`
//! * extended functions add `denominator=<d>` and key entries by fraction `m/n`
//! * module functions add `rank=<m>` and use vector values `[v1,...,vm]`
//! * series: header `ring=<R> caps=<c1,...,ck>`, entries `a1,...,ak <literal>`
//! * Laurent series add `shift=<s1,...,sk>`; entry exponents are relative to it
//! * characters: header `ring=<R> [rank=<m>]`, entries `<p> <literal or vector>`

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::derivation::Character;
use crate::dirichlet::{ArithFunction, TotallyMultiplicativeFn};
use crate::error::{Error, Result};
use crate::grothendieck::{ExtFunction, ExtModuleFunction, Fraction};
use crate::module::{ModuleFunction, Vector};
use crate::monoid::MonoidSpec;
use crate::ring::{RingDescriptor, RingElement};
use crate::series::{LaurentSeries, TruncatedSeries};

pub const DEFAULT_BOUND: u64 = 1024;

/// Values supplied on the command line for header fields.
///
/// A field missing from the header is taken from here; a field present in
/// both must agree, except that a smaller `bound` truncates.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub ring: Option<RingDescriptor>,
    pub monoid: Option<MonoidSpec>,
    pub bound: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Function,
    Ext,
    Module,
    ExtModule,
    Series,
    Laurent,
}

struct Document<'a> {
    header: BTreeMap<&'a str, &'a str>,
    entries: Vec<(usize, &'a str, &'a str)>,
}

fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_document(src: &str) -> Result<Document<'_>> {
    let mut lines = content_lines(src);
    let mut header = BTreeMap::new();
    let mut entries = Vec::new();
    let Some((lineno, first)) = lines.next() else {
        return Ok(Document { header, entries });
    };
    let has_header = first.split_whitespace().all(|f| f.contains('='));
    if has_header {
        for field in first.split_whitespace() {
            let (k, v) = field.split_once('=').expect("checked above");
            if header.insert(k, v).is_some() {
                return Err(Error::parse(format!("line {lineno}: duplicate header field '{k}'")));
            }
        }
    }
    let rest = (!has_header).then_some((lineno, first)).into_iter().chain(lines);
    for (lineno, line) in rest {
        let (key, value) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::parse(format!("line {lineno}: expected '<key> <value>', got '{line}'")))?;
        entries.push((lineno, key, value.trim()));
    }
    Ok(Document { header, entries })
}

impl Document<'_> {
    fn field<T>(&self, key: &str, parse: impl FnOnce(&str) -> Result<T>) -> Result<Option<T>> {
        self.header.get(key).map(|v| parse(v)).transpose()
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.header.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(Error::parse(format!("unexpected header field '{k}'"))),
            None => Ok(()),
        }
    }

    fn ring(&self, ov: &Overrides) -> Result<RingDescriptor> {
        let own = self.field("ring", |v| v.parse())?;
        match (own, &ov.ring) {
            (Some(r), Some(o)) if &r != o => Err(Error::MixedRings {
                left: r,
                right: o.clone(),
            }),
            (Some(r), _) => Ok(r),
            (None, Some(o)) => Ok(o.clone()),
            (None, None) => Ok(RingDescriptor::Rational),
        }
    }

    fn monoid(&self, ov: &Overrides) -> Result<MonoidSpec> {
        let own: Option<MonoidSpec> = self.field("monoid", |v| v.parse())?;
        match (own, &ov.monoid) {
            (Some(m), Some(o)) if &m != o => Err(Error::MonoidMismatch {
                left: m.to_string(),
                right: o.to_string(),
            }),
            (Some(m), _) => Ok(m),
            (None, Some(o)) => Ok(o.clone()),
            (None, None) => Ok(MonoidSpec::nstar()),
        }
    }

    /// Returns the stored bound and the bound to truncate to.
    fn bound(&self, ov: &Overrides) -> Result<(u64, u64)> {
        let own = self.field("bound", parse_u64)?;
        match (own, ov.bound) {
            (Some(b), Some(o)) if o > b => Err(Error::BoundTooSmall {
                bound: b,
                reason: format!("--bound {o} exceeds the stored bound"),
            }),
            (Some(b), Some(o)) => Ok((b, o)),
            (Some(b), None) => Ok((b, b)),
            (None, Some(o)) => Ok((o, o)),
            (None, None) => Ok((DEFAULT_BOUND, DEFAULT_BOUND)),
        }
    }

    fn rank(&self) -> Result<usize> {
        let r = self.field("rank", |v| parse_u64(v).map(|r| r as usize))?.unwrap_or(1);
        if r == 0 {
            return Err(Error::parse("rank must be positive"));
        }
        Ok(r)
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::parse(format!("bad integer '{s}'")))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::parse(format!("bad list entry '{x}' in '{s}'"))))
        .collect()
}

fn at_line<T>(lineno: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("line {lineno}: {msg}")),
        other => other,
    })
}

/// Splits `[a, b, c]` at top-level commas, so parenthesized polynomial
/// literals stay whole.
pub fn parse_vector(ring: &RingDescriptor, s: &str) -> Result<Vector> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::parse(format!("expected a vector '[...]', got '{s}'")))?;
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    parts.into_iter().map(|p| ring.parse_element(p)).collect()
}

pub fn format_vector(v: &[RingElement]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|x| match x {
            RingElement::Poly(_) => format!("({x})"),
            _ => x.to_string(),
        })
        .collect();
    format!("[{}]", parts.join(","))
}

/// Inspects the header to tell the file kinds apart.
pub fn detect_kind(src: &str) -> Result<FileKind> {
    let doc = parse_document(src)?;
    let h = |k| doc.header.contains_key(k);
    Ok(if h("shift") {
        FileKind::Laurent
    } else if h("caps") {
        FileKind::Series
    } else if h("denominator") && h("rank") {
        FileKind::ExtModule
    } else if h("denominator") {
        FileKind::Ext
    } else if h("rank") {
        FileKind::Module
    } else {
        FileKind::Function
    })
}

pub fn parse_function(src: &str, ov: &Overrides) -> Result<ArithFunction> {
    let doc = parse_document(src)?;
    doc.check_keys(&["monoid", "ring", "bound"])?;
    let ring = doc.ring(ov)?;
    let spec = doc.monoid(ov)?;
    let (bound, cut) = doc.bound(ov)?;
    let mut f = ArithFunction::zero(spec, ring.clone(), bound);
    for &(lineno, key, value) in &doc.entries {
        let n = at_line(lineno, parse_u64(key))?;
        let r = at_line(lineno, ring.parse_element(value))?;
        f.set(n, r)?;
    }
    Ok(f.truncate(cut))
}

fn function_header(spec: &MonoidSpec, ring: &RingDescriptor, bound: u64) -> String {
    format!("monoid={spec} ring={ring} bound={bound}")
}

pub fn write_function(f: &ArithFunction) -> String {
    let mut out = function_header(f.spec(), f.ring(), f.bound());
    out.push('\n');
    for (n, r) in f.support() {
        writeln!(out, "{n} {r}").unwrap();
    }
    out
}

pub fn parse_module(src: &str, ov: &Overrides) -> Result<ModuleFunction> {
    let doc = parse_document(src)?;
    doc.check_keys(&["monoid", "ring", "bound", "rank"])?;
    let ring = doc.ring(ov)?;
    let spec = doc.monoid(ov)?;
    let (bound, cut) = doc.bound(ov)?;
    let rank = doc.rank()?;
    let mut f = ModuleFunction::zero(spec, ring.clone(), rank, bound);
    for &(lineno, key, value) in &doc.entries {
        let n = at_line(lineno, parse_u64(key))?;
        let v = at_line(lineno, parse_vector(&ring, value))?;
        f.set(n, v)?;
    }
    Ok(f.truncate(cut))
}

pub fn write_module(f: &ModuleFunction) -> String {
    let mut out = function_header(f.spec(), f.ring(), f.bound());
    writeln!(out, " rank={}", f.rank()).unwrap();
    for (n, v) in f.support() {
        writeln!(out, "{n} {}", format_vector(v)).unwrap();
    }
    out
}

fn format_fraction(q: &Fraction) -> String {
    if q.denominator() == 1 {
        q.numerator().to_string()
    } else {
        q.to_string()
    }
}

pub fn parse_ext(src: &str, ov: &Overrides) -> Result<ExtFunction> {
    let doc = parse_document(src)?;
    doc.check_keys(&["monoid", "ring", "bound", "denominator"])?;
    let ring = doc.ring(ov)?;
    let spec = doc.monoid(ov)?;
    let (bound, cut) = doc.bound(ov)?;
    let d = doc.field("denominator", parse_u64)?.unwrap_or(1);
    let values = doc
        .entries
        .iter()
        .map(|&(lineno, key, value)| {
            let q: Fraction = at_line(lineno, key.parse())?;
            let r = at_line(lineno, ring.parse_element(value))?;
            Ok((q, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = ExtFunction::from_values(spec, ring, d, bound, values)?;
    if cut < bound {
        ExtFunction::new(f.denominator(), f.core().truncate(cut))
    } else {
        Ok(f)
    }
}

pub fn write_ext(f: &ExtFunction) -> String {
    let mut out = function_header(f.spec(), f.ring(), f.bound());
    writeln!(out, " denominator={}", f.denominator()).unwrap();
    for (q, r) in f.support() {
        writeln!(out, "{} {r}", format_fraction(&q)).unwrap();
    }
    out
}

pub fn write_ext_module(f: &ExtModuleFunction) -> String {
    let core = f.core();
    let mut out = function_header(core.spec(), core.ring(), core.bound());
    writeln!(out, " rank={} denominator={}", f.rank(), f.denominator()).unwrap();
    for (n, v) in core.support() {
        let q = Fraction::new(n, f.denominator()).expect("positive");
        writeln!(out, "{} {}", format_fraction(&q), format_vector(v)).unwrap();
    }
    out
}

fn parse_series_body(doc: &Document<'_>, ov: &Overrides) -> Result<TruncatedSeries> {
    let ring = doc.ring(ov)?;
    let caps: Vec<u32> = doc
        .field("caps", parse_list)?
        .ok_or_else(|| Error::parse("series header needs 'caps'"))?;
    let mut s = TruncatedSeries::zero(ring.clone(), caps);
    for &(lineno, key, value) in &doc.entries {
        let a: Vec<u32> = at_line(lineno, parse_list(key))?;
        let c = at_line(lineno, ring.parse_element(value))?;
        s.set(a, c)?;
    }
    Ok(s)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn write_series_terms(out: &mut String, s: &TruncatedSeries) {
    for (a, c) in s.terms() {
        writeln!(out, "{} {c}", join(a)).unwrap();
    }
}

pub fn parse_series(src: &str, ov: &Overrides) -> Result<TruncatedSeries> {
    let doc = parse_document(src)?;
    doc.check_keys(&["ring", "caps"])?;
    parse_series_body(&doc, ov)
}

pub fn write_series(s: &TruncatedSeries) -> String {
    let mut out = format!("ring={} caps={}\n", s.ring(), join(s.caps()));
    write_series_terms(&mut out, s);
    out
}

pub fn parse_laurent(src: &str, ov: &Overrides) -> Result<LaurentSeries> {
    let doc = parse_document(src)?;
    doc.check_keys(&["ring", "caps", "shift"])?;
    let shift: Vec<i64> = doc
        .field("shift", parse_list)?
        .ok_or_else(|| Error::parse("Laurent header needs 'shift'"))?;
    LaurentSeries::new(shift, parse_series_body(&doc, ov)?)
}

pub fn write_laurent(s: &LaurentSeries) -> String {
    let body = s.body();
    let mut out = format!(
        "ring={} caps={} shift={}\n",
        body.ring(),
        join(body.caps()),
        join(s.shift())
    );
    write_series_terms(&mut out, body);
    out
}

fn prime_entries<'a>(doc: &Document<'a>) -> Result<Vec<(usize, u64, &'a str)>> {
    doc.entries
        .iter()
        .map(|&(lineno, key, value)| Ok((lineno, at_line(lineno, parse_u64(key))?, value)))
        .collect()
}

pub fn parse_character(src: &str, ov: &Overrides) -> Result<Character> {
    let doc = parse_document(src)?;
    doc.check_keys(&["ring", "rank"])?;
    let ring = doc.ring(ov)?;
    let rank = doc.rank()?;
    let values = prime_entries(&doc)?
        .into_iter()
        .map(|(lineno, p, value)| {
            let v = if value.starts_with('[') {
                parse_vector(&ring, value)
            } else {
                ring.parse_element(value).map(|r| vec![r])
            };
            Ok((p, at_line(lineno, v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Character::new(ring, rank, values)
}

pub fn parse_multiplicative(src: &str, ov: &Overrides) -> Result<TotallyMultiplicativeFn> {
    let doc = parse_document(src)?;
    doc.check_keys(&["ring"])?;
    let ring = doc.ring(ov)?;
    let values = prime_entries(&doc)?
        .into_iter()
        .map(|(lineno, p, value)| Ok((p, at_line(lineno, ring.parse_element(value))?)))
        .collect::<Result<Vec<_>>>()?;
    TotallyMultiplicativeFn::new(ring, values)
}
