//! The standard graded polynomial ring `F_p[x_1..x_n]`.
//!
//! Monomials are dense exponent vectors of fixed width so they are `Copy`
//! and cheap to hash. A [`Polynomial`] keeps its terms sorted descending in
//! grevlex; algorithms that need another order work on term slices sorted
//! by that order through the free functions at the bottom of this module.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Field;

/// Width of the exponent vector. Rings expose at most [`MAX_RING_VARS`]
/// variables; the slack is used by elimination, which prepends one
/// auxiliary variable.
pub const MAX_VARS: usize = 16;
pub const MAX_RING_VARS: usize = 12;

/// `F_p[x_1..x_n]` with named variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(field: Field, names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_RING_VARS {
            return Err(Error::VariableCount(names.len()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !is_identifier(n) {
                return Err(Error::Parse { position: 0, message: format!("invalid variable name `{n}`") });
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Self { field, names }))
    }

    /// Variables named `x1..xn`.
    pub fn numbered(field: Field, n: usize) -> Result<Arc<Self>> {
        Self::new(field, (1..=n).map(|i| format!("x{i}")))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.field, Monomial::var(i), 1)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse(text, self)
    }

    pub fn display<'a>(&'a self, f: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: f }
    }

    pub fn format(&self, f: &Polynomial) -> String {
        self.display(f).to_string()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Exponent vector with cached total degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "Monomial{:?}", &self.exps[..last])
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { deg: 0, exps: [0; MAX_VARS] };

    pub fn new(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::ONE;
        m.exps[..exps.len()].copy_from_slice(exps);
        m.deg = exps.iter().map(|&e| e as u32).sum();
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for i in 0..MAX_VARS {
            out.exps[i] = out.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        out.deg += other.deg;
        out
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut out = *other;
        for i in 0..MAX_VARS {
            out.exps[i] -= self.exps[i];
        }
        out.deg -= self.deg;
        out
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = Self::ONE;
        for i in 0..MAX_VARS {
            out.exps[i] = self.exps[i].max(other.exps[i]);
        }
        out.deg = out.exps.iter().map(|&e| e as u32).sum();
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Lowers exponent `i` by one if positive (colon by a variable).
    pub fn colon_var(&self, i: usize) -> Monomial {
        let mut out = *self;
        if out.exps[i] > 0 {
            out.exps[i] -= 1;
            out.deg -= 1;
        }
        out
    }

    /// Inserts a zero exponent at position 0, moving every variable up one.
    pub fn shift_up(&self) -> Monomial {
        assert_eq!(self.exps[MAX_VARS - 1], 0, "no room for auxiliary variable");
        let mut out = Self::ONE;
        out.exps[1..].copy_from_slice(&self.exps[..MAX_VARS - 1]);
        out.deg = self.deg;
        out
    }

    /// Inverse of [`Monomial::shift_up`]; requires exponent 0 in slot 0.
    pub fn shift_down(&self) -> Monomial {
        assert_eq!(self.exps[0], 0);
        let mut out = Self::ONE;
        out.exps[..MAX_VARS - 1].copy_from_slice(&self.exps[1..]);
        out.deg = self.deg;
        out
    }

    pub fn eval(&self, field: Field, point: &[u32]) -> u32 {
        let mut acc = 1;
        for (i, &x) in point.iter().enumerate() {
            for _ in 0..self.exps[i] {
                acc = field.mul(acc, x);
            }
        }
        acc
    }
}

/// Term orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// First `k` variables form a block compared by grevlex before the
    /// remaining variables (also grevlex). Eliminates the first block.
    Elimination(usize),
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b, 0, MAX_VARS, a.deg, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let da: u32 = a.exps[..k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..k].iter().map(|&e| e as u32).sum();
                grevlex(a, b, 0, k, da, db).then_with(|| grevlex(a, b, k, MAX_VARS, a.deg - da, b.deg - db))
            }
        }
    }
}

#[inline]
fn grevlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize, da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for i in (lo..hi).rev() {
            if a.exps[i] != b.exps[i] {
                // smaller exponent in the last differing variable is larger
                return b.exps[i].cmp(&a.exps[i]);
            }
        }
        Ordering::Equal
    })
}

/// Monomial with a nonzero coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coef: u32,
}

/// Polynomial over `F_p`, terms sorted descending in grevlex, no zero
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Self {
        Self { field, terms: Vec::new() }
    }

    pub fn constant(field: Field, c: i64) -> Self {
        Self::monomial(field, Monomial::ONE, field.reduce(c))
    }

    pub fn monomial(field: Field, m: Monomial, c: u32) -> Self {
        let c = c % field.p();
        if c == 0 {
            Self::zero(field)
        } else {
            Self { field, terms: vec![Term { mono: m, coef: c }] }
        }
    }

    /// Collects arbitrary `(monomial, coefficient)` pairs.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let raw: Vec<Term> = terms.into_iter().map(|(mono, c)| Term { mono, coef: field.reduce(c) }).collect();
        Self { field, terms: normalize(raw, field, &MonomialOrder::Grevlex) }
    }

    /// Wraps terms sorted in `order`, re-sorting into grevlex.
    pub fn from_ordered(field: Field, mut terms: Vec<Term>, order: &MonomialOrder) -> Self {
        if *order != MonomialOrder::Grevlex {
            terms.sort_unstable_by(|a, b| MonomialOrder::Grevlex.compare(&b.mono, &a.mono));
        }
        Self { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms sorted descending in `order`.
    pub fn terms_in(&self, order: &MonomialOrder) -> Vec<Term> {
        let mut t = self.terms.clone();
        if *order != MonomialOrder::Grevlex {
            t.sort_unstable_by(|a, b| order.compare(&b.mono, &a.mono));
        }
        t
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<Term> {
        if *order == MonomialOrder::Grevlex {
            return self.terms.first().copied();
        }
        self.terms.iter().copied().max_by(|a, b| order.compare(&a.mono, &b.mono))
    }

    /// Maximum total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.mono.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|u| u.mono.degree() == t.mono.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| t.mono == *m).map_or(0, |t| t.coef)
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.field.p();
        if c == 0 {
            return Self::zero(self.field);
        }
        let f = self.field;
        Self { field: f, terms: self.terms.iter().map(|t| Term { mono: t.mono, coef: f.mul(t.coef, c) }).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Self {
        let c = c % self.field.p();
        if c == 0 {
            return Self::zero(self.field);
        }
        let f = self.field;
        Self {
            field: f,
            terms: self.terms.iter().map(|t| Term { mono: t.mono.mul(m), coef: f.mul(t.coef, c) }).collect(),
        }
    }

    /// Scales so the grevlex-leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(self.field.inv(t.coef)),
        }
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.field;
        self.terms.iter().fold(0, |acc, t| f.add(acc, f.mul(t.coef, t.mono.eval(f, point))))
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.field, divisor.field);
        let lead = *divisor.terms.first()?;
        let f = self.field;
        let inv = f.inv(lead.coef);
        let order = MonomialOrder::Grevlex;
        let mut rem = self.terms.clone();
        let mut quot = Vec::new();
        while let Some(t) = rem.first().copied() {
            if !lead.mono.divides(&t.mono) {
                return None;
            }
            let q = Term { mono: lead.mono.quotient_of(&t.mono), coef: f.mul(t.coef, inv) };
            rem = add_scaled(&rem, &divisor.terms, f.neg(q.coef), &q.mono, f, &order);
            quot.push(q);
        }
        Some(Polynomial { field: f, terms: quot })
    }

    /// Moves every variable up one slot (auxiliary variable at index 0).
    pub fn shift_up(&self) -> Polynomial {
        Polynomial::from_terms(self.field, self.terms.iter().map(|t| (t.mono.shift_up(), t.coef as i64)))
    }

    pub fn shift_down(&self) -> Polynomial {
        Polynomial::from_terms(self.field, self.terms.iter().map(|t| (t.mono.shift_down(), t.coef as i64)))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let terms = add_scaled(&self.terms, &rhs.terms, 1, &Monomial::ONE, self.field, &MonomialOrder::Grevlex);
        Polynomial { field: self.field, terms }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let f = self.field;
        let terms = add_scaled(&self.terms, &rhs.terms, f.neg(1), &Monomial::ONE, f, &MonomialOrder::Grevlex);
        Polynomial { field: f, terms }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(self.field.neg(1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let f = self.field;
        let order = MonomialOrder::Grevlex;
        let mut acc: Vec<Term> = Vec::new();
        for t in &self.terms {
            acc = add_scaled(&acc, &rhs.terms, t.coef, &t.mono, f, &order);
        }
        Polynomial { field: f, terms: acc }
    }
}

/// Sorts descending in `order`, merges equal monomials, drops zeros.
pub fn normalize(mut terms: Vec<Term>, field: Field, order: &MonomialOrder) -> Vec<Term> {
    terms.sort_unstable_by(|a, b| order.compare(&b.mono, &a.mono));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.mono == t.mono => last.coef = field.add(last.coef, t.coef),
            _ => out.push(t),
        }
        if out.last().is_some_and(|l| l.coef == 0) {
            out.pop();
        }
    }
    out.retain(|t| t.coef != 0);
    out
}

/// `a + c * m * b` for term lists sorted descending in `order`.
pub fn add_scaled(a: &[Term], b: &[Term], c: u32, m: &Monomial, field: Field, order: &MonomialOrder) -> Vec<Term> {
    if c == 0 || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| Term { mono: b[j].mono.mul(m), coef: field.mul(b[j].coef, c) };
    let mut bj = next_b(0);
    while i < a.len() && j < b.len() {
        match order.compare(&a[i].mono, &bj.mono) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(bj);
                j += 1;
                if j < b.len() {
                    bj = next_b(j);
                }
            }
            Ordering::Equal => {
                let s = field.add(a[i].coef, bj.coef);
                if s != 0 {
                    out.push(Term { mono: a[i].mono, coef: s });
                }
                i += 1;
                j += 1;
                if j < b.len() {
                    bj = next_b(j);
                }
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(next_b(j));
        j += 1;
    }
    out
}

/// All degree-`t` monomials in `n` variables, descending in `order`.
pub fn graded_piece_basis(n: usize, t: u32, order: &MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fill_degree(&mut exps, 0, t, &mut out);
    out.sort_unstable_by(|a, b| order.compare(b, a));
    out
}

fn fill_degree(exps: &mut Vec<u16>, i: usize, remaining: u32, out: &mut Vec<Monomial>) {
    let n = exps.len();
    if n == 0 {
        if remaining == 0 {
            out.push(Monomial::ONE);
        }
        return;
    }
    if i == n - 1 {
        exps[i] = remaining as u16;
        out.push(Monomial::new(exps));
        return;
    }
    for e in 0..=remaining {
        exps[i] = e as u16;
        fill_degree(exps, i + 1, remaining - e, out);
    }
}

pub struct PolyDisplay<'a> {
    ring: &'a Ring,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let field = self.poly.field;
        for (k, t) in self.poly.terms.iter().enumerate() {
            let c = field.lift_symmetric(t.coef);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            let mono = self.ring.format_monomial(&t.mono);
            match (abs, t.mono.degree()) {
                (_, 0) => write!(f, "{abs}")?,
                (1, _) => write!(f, "{mono}")?,
                _ => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// Parses `text` in the grammar `term ((+|-) term)*`, where a term is a
/// `*`-separated product of integers and `var` or `var^exp` factors.
/// Whitespace is ignored. Positions in errors are character offsets.
pub fn parse(text: &str, ring: &Ring) -> Result<Polynomial> {
    Parser { chars: text.chars().collect(), pos: 0, ring }.polynomial()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('\u{2212}') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let field = self.ring.field();
        let mut terms = Vec::new();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut negative = self.sign().unwrap_or(false);
        loop {
            let (mono, c) = self.term()?;
            terms.push((mono, if negative { -c } else { c }));
            match self.peek() {
                None => break,
                Some(_) => match self.sign() {
                    Some(n) => negative = n,
                    None => return self.err(format!("unexpected character `{}`", self.chars[self.pos])),
                },
            }
        }
        Ok(Polynomial::from_terms(field, terms))
    }

    fn term(&mut self) -> Result<(Monomial, i64)> {
        let p = self.ring.field().p() as i64;
        let mut exps = [0u16; MAX_VARS];
        let mut coef: i64 = 1;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = self.integer()?;
                    coef = coef * (v % p as u64) as i64 % p;
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let start = self.pos;
                    let name = self.identifier();
                    let Some(idx) = self.ring.names().iter().position(|n| *n == name) else {
                        self.pos = start;
                        return self.err(format!("unknown variable `{name}`"));
                    };
                    let mut e: u64 = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        match self.peek() {
                            Some(c) if c.is_ascii_digit() => e = self.integer()?,
                            _ => return self.err("malformed exponent"),
                        }
                    }
                    let total = exps[idx] as u64 + e;
                    if total > u16::MAX as u64 {
                        return self.err("exponent too large");
                    }
                    exps[idx] = total as u16;
                }
                Some(c) => return self.err(format!("expected a factor, found `{c}`")),
                None => return self.err("expected a factor, found end of input"),
            }
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let deg = exps.iter().map(|&e| e as u32).sum();
        Ok((Monomial { deg, exps }, coef))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}
