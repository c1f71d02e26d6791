//! Finite Laurent polynomials in a formal variable `ε`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::circuit::Instance;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ring::Ring;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    /// Exponent -> nonzero coefficient.
    terms: BTreeMap<i64, FieldElement>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: FieldElement) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// `c ε^k`.
    pub fn monomial(k: i64, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn eps(field: &Field) -> Self {
        LaurentPoly::monomial(1, field.one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, FieldElement)>, field: &Field) -> Self {
        let mut out = LaurentPoly::zero();
        for (k, c) in terms {
            out.add_term(k, c, field);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: FieldElement, field: &Field) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert(field.zero());
        *slot = field.add(*slot, c);
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, FieldElement)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, k: i64) -> FieldElement {
        self.terms.get(&k).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Least exponent, `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Greatest exponent, `None` for zero.
    pub fn top_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let mut out = self.clone();
        for (&k, &c) in &other.terms {
            out.add_term(k, c, field);
        }
        out
    }

    pub fn neg(&self, field: &Field) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, &c)| (k, field.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        self.add(&other.neg(field), field)
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        let mut out = LaurentPoly::zero();
        for (&i, &a) in &self.terms {
            for (&j, &b) in &other.terms {
                out.add_term(i + j, field.mul(a, b), field);
            }
        }
        out
    }

    pub fn pow(&self, n: u64, field: &Field) -> Self {
        let mut acc = LaurentPoly::constant(field.one());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            base = base.mul(&base, field);
            k >>= 1;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(FieldElement) -> FieldElement) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, &c)| (k, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Membership in the ideal generated by `ε` in `F[ε]`.
    pub fn in_eps_ideal(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 1)
    }

    /// The value at `ε = 0`.
    pub fn eps_zero_value(&self) -> Result<FieldElement> {
        match self.valuation() {
            Some(v) if v < 0 => Err(Error::NegativeValuation(v)),
            _ => Ok(self.coeff(0)),
        }
    }

    /// `<exp>:<coeffs> ...`, ascending exponents.
    pub fn format(&self, field: &Field) -> String {
        self.terms
            .iter()
            .map(|(k, &c)| format!("{k}:{}", field.format_element(c)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str, field: &Field) -> Result<Self> {
        let mut out = LaurentPoly::zero();
        for tok in text.split_whitespace() {
            let (exp, coeff) = tok.split_once(':').ok_or_else(|| Error::Syntax {
                line: 0,
                msg: format!("term `{tok}` is not `<exp>:<coeffs>`"),
            })?;
            let k: i64 = exp.parse().map_err(|_| Error::Syntax {
                line: 0,
                msg: format!("bad exponent `{exp}`"),
            })?;
            out.add_term(k, field.parse_element(coeff)?, field);
        }
        Ok(out)
    }
}

/// `F((ε))` restricted to finite supports.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    pub field: Field,
}

impl LaurentRing {
    pub fn new(field: &Field) -> Self {
        LaurentRing {
            field: field.clone(),
        }
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(self.field.one())
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b, &self.field)
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b, &self.field)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg(&self.field)
    }
    fn constant(&self, c: FieldElement) -> LaurentPoly {
        LaurentPoly::constant(c)
    }
}

/// A point with Laurent coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub coords: Vec<LaurentPoly>,
}

impl Witness {
    pub fn new(coords: Vec<LaurentPoly>) -> Self {
        Witness { coords }
    }

    /// A point of `F^n` viewed as an `ε`-free witness.
    pub fn exact(point: &[FieldElement]) -> Self {
        Witness {
            coords: point.iter().map(|&c| LaurentPoly::constant(c)).collect(),
        }
    }

    /// Each coordinate within `span{ε^j : -low <= j <= high}`.
    pub fn within_window(&self, low: u128, high: u128) -> bool {
        self.coords.iter().all(|c| {
            c.valuation().is_none_or(|v| (-v) as i128 <= low as i128)
                && c.top_degree().is_none_or(|t| t as i128 <= high as i128)
        })
    }

    /// One `x<i> : <exp>:<coeffs> ...` line per variable.
    pub fn parse(text: &str, field: &Field, nvars: usize) -> Result<Self> {
        let mut coords: Vec<Option<LaurentPoly>> = vec![None; nvars];
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let at_line = |e: Error| match e {
                Error::Syntax { msg, .. } => Error::Syntax { line, msg },
                other => other,
            };
            let (name, rest) = content.split_once(':').ok_or_else(|| Error::Syntax {
                line,
                msg: "expected `x<i> : <terms>`".into(),
            })?;
            let i: usize = name
                .trim()
                .strip_prefix('x')
                .and_then(|s| s.parse().ok())
                .filter(|&i| i >= 1 && i <= nvars)
                .ok_or_else(|| Error::Syntax {
                    line,
                    msg: format!("`{}` is not a variable x1..x{nvars}", name.trim()),
                })?;
            if coords[i - 1].is_some() {
                return Err(Error::Syntax {
                    line,
                    msg: format!("x{i} given twice"),
                });
            }
            coords[i - 1] = Some(LaurentPoly::parse(rest, field).map_err(at_line)?);
        }
        let missing = coords.iter().position(|c| c.is_none());
        if let Some(i) = missing {
            return Err(Error::Syntax {
                line: text.lines().count() + 1,
                msg: format!("no line for x{}", i + 1),
            });
        }
        Ok(Witness {
            coords: coords.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn serialize(&self, field: &Field) -> String {
        let mut out = String::new();
        for (i, c) in self.coords.iter().enumerate() {
            let body = c.format(field);
            if body.is_empty() {
                writeln!(out, "x{} :", i + 1).unwrap();
            } else {
                writeln!(out, "x{} : {body}", i + 1).unwrap();
            }
        }
        out
    }
}

/// `(D, D')`: the product of the syntactic degrees and `max * D`.
pub fn eps_degree_bounds(inst: &Instance) -> Result<(u128, u128)> {
    let profile = inst.degree_profile();
    if let Some(i) = profile.degrees.iter().position(|&d| d == 0) {
        return Err(Error::ConstantCircuit(inst.circuits[i].name.clone()));
    }
    let d = profile.product;
    Ok((d, d.saturating_mul(profile.max as u128)))
}
