//! Sparse multivariate polynomials in graded-lex order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ring::Ring;

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// All monomials in `nvars` variables of degree `<= d`, ascending.
pub fn monomials_up_to(nvars: usize, d: u64, cap: usize) -> Result<Vec<Monomial>> {
    let count = binomial(nvars as u64 + d, d);
    if count > cap as u128 {
        return Err(Error::ResourceLimit(format!(
            "{count} monomials of degree <= {d} in {nvars} variables (cap {cap})"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    for t in 0..=d {
        let mut cur = vec![0u32; nvars];
        fill_degree(&mut cur, 0, t as u32, &mut out);
    }
    Ok(out)
}

/// Monomials of total degree exactly `t`, ascending.
pub fn monomials_of_degree(nvars: usize, t: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill_degree(&mut cur, 0, t as u32, &mut out);
    out
}

fn fill_degree(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    if pos + 1 >= cur.len() {
        if cur.is_empty() {
            if left == 0 {
                out.push(Monomial(vec![]));
            }
            return;
        }
        cur[pos] = left;
        out.push(Monomial(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for a in 0..=left {
        cur[pos] = a;
        fill_degree(cur, pos + 1, left - a, out);
    }
    cur[pos] = 0;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: FieldElement) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize, field: &Field) -> Self {
        Self::monomial(nvars, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
        field: &Field,
    ) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(m, c, field);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Graded-lex largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Largest term degree; `-1` for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement, field: &Field) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, field: &Field) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c, field);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Result<Self> {
        self.add(&other.neg(field), field)
    }

    pub fn neg(&self, field: &Field) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElement, field: &Field) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, &a)| (m.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Result<Self> {
        self.check_arity(other)?;
        let mut acc: std::collections::HashMap<Monomial, FieldElement> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_default();
                *slot = field.add(*slot, field.mul(ca, cb));
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, mut n: u64, field: &Field) -> Self {
        let mut base = self.clone();
        let mut acc = Polynomial::constant(self.nvars, field.one());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, field).expect("same arity");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, field).expect("same arity");
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement], field: &Field) -> Result<FieldElement> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = field.zero();
        for (m, &c) in &self.terms {
            let mut t = c;
            for (&x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = field.mul(t, field.pow(x, e as u128));
                }
            }
            acc = field.add(acc, t);
        }
        Ok(acc)
    }

    /// Substitutes `subs[i]` for variable `i`.
    pub fn compose(&self, subs: &[Polynomial], field: &Field) -> Result<Polynomial> {
        if subs.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                got: subs.len(),
            });
        }
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut acc = Polynomial::zero(target);
        for (m, &c) in &self.terms {
            let mut t = Polynomial::constant(target, c);
            for (s, &e) in subs.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&s.pow(e as u64, field), field)?;
                }
            }
            acc = acc.add(&t, field)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `i` (0-based).
    pub fn partial(&self, i: usize, field: &Field) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), field.mul(c, field.from_u64(e as u64)), field);
        }
        out
    }

    /// Applies `f` to every coefficient (e.g. a field embedding).
    pub fn map_coeffs(&self, field: &Field, f: impl Fn(FieldElement) -> FieldElement) -> Self {
        Polynomial::from_terms(self.nvars, self.terms.iter().map(|(m, &c)| (m.clone(), f(c))), field)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, field: &Field) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, &c)) => self.scale(field.inv(c).expect("nonzero"), field),
        }
    }

    /// Terms in descending graded-lex order, e.g. `1*y1^2 + 1*y2^2 + 6*y3`.
    pub fn display(&self, field: &Field, var_prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let coeff = field.format_element(c);
            if field.e() == 1 {
                out.push_str(&coeff);
            } else {
                write!(out, "({coeff})").unwrap();
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(out, "*{var_prefix}{}", v + 1).unwrap(),
                    _ => write!(out, "*{var_prefix}{}^{e}", v + 1).unwrap(),
                }
            }
        }
        out
    }

    /// One-line form without unit coefficients or spaces, e.g. `y1^2+6*y3+1`.
    pub fn compact(&self, field: &Field, var_prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, &c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                out.push('+');
            }
            let mut factors = Vec::new();
            let is_const = m.0.iter().all(|&e| e == 0);
            if c != field.one() || is_const {
                let coeff = field.format_element(c);
                factors.push(if field.e() == 1 { coeff } else { format!("({coeff})") });
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("{var_prefix}{}", v + 1)),
                    _ => factors.push(format!("{var_prefix}{}^{e}", v + 1)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// `F[x_1..x_n]` as a [`Ring`] for generic circuit evaluation.
#[derive(Clone, Debug)]
pub struct PolyRing {
    pub field: Field,
    pub nvars: usize,
}

impl PolyRing {
    pub fn new(field: &Field, nvars: usize) -> Self {
        PolyRing {
            field: field.clone(),
            nvars,
        }
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars, i, &self.field)
    }
}

impl Ring for PolyRing {
    type Elem = Polynomial;

    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars)
    }
    fn one(&self) -> Polynomial {
        Polynomial::constant(self.nvars, self.field.one())
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b, &self.field).expect("ring elements share arity")
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b, &self.field).expect("ring elements share arity")
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        a.neg(&self.field)
    }
    fn constant(&self, c: FieldElement) -> Polynomial {
        Polynomial::constant(self.nvars, c)
    }
}
