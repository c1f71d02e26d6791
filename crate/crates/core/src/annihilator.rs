//! Annihilating polynomials by linear algebra over the powers of the inputs.

use std::cell::OnceCell;
use std::collections::HashMap;

use crate::circuit::Instance;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::jacobian::JacobianProbe;
use crate::limits::Limits;
use crate::linalg::ColumnReducer;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::rng::seeded;

/// Annihilators of degree at most `degree_bound`, in reduced echelon form:
/// each element is monic in its graded-lex leading monomial, and no leading
/// monomial appears in another element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnSpace {
    pub degree_bound: u64,
    pub basis: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrdegResult {
    pub k: usize,
    /// Indices of an independent subset of size `k`, ascending.
    pub basis: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Never,
    FirstRelation,
    FirstDegree,
    NonzeroConstant,
}

#[derive(Clone, Debug)]
pub struct AnnOptions {
    pub limits: Limits,
    /// Use sound shortcuts (Jacobian certificates of independence, more
    /// inputs than variables) before falling back to linear algebra.
    pub shortcuts: bool,
}

impl Default for AnnOptions {
    fn default() -> Self {
        AnnOptions {
            limits: Limits::default(),
            shortcuts: true,
        }
    }
}

/// Expands an instance once and answers annihilator queries about it.
pub struct Analyzer<'a> {
    inst: &'a Instance,
    opts: AnnOptions,
    expanded: Vec<Polynomial>,
    degrees: Vec<u64>,
    probe: OnceCell<Option<JacobianProbe>>,
}

impl<'a> Analyzer<'a> {
    pub fn new(inst: &'a Instance, opts: AnnOptions) -> Result<Self> {
        let expanded = inst.expand_all(opts.limits.expand_terms)?;
        let degrees = inst.degree_profile().degrees;
        Ok(Analyzer {
            inst,
            opts,
            expanded,
            degrees,
            probe: OnceCell::new(),
        })
    }

    pub fn instance(&self) -> &Instance {
        self.inst
    }

    pub fn expanded(&self) -> &[Polynomial] {
        &self.expanded
    }

    fn field(&self) -> &Field {
        &self.inst.field
    }

    /// Annihilators of `f_subset` with degree `<= d`, as polynomials in one
    /// variable per subset entry.
    fn search(&self, subset: &[usize], d: u64, stop: Stop) -> Result<Vec<Polynomial>> {
        let field = self.field();
        let limits = &self.opts.limits;
        let m = subset.len();
        let polys: Vec<&Polynomial> = subset.iter().map(|&i| &self.expanded[i]).collect();
        let mut rows: HashMap<Monomial, usize> = HashMap::new();
        let mut columns: Vec<Monomial> = Vec::new();
        let mut reducer = ColumnReducer::new(field);
        let mut found = Vec::new();
        let mut prev: HashMap<Monomial, Polynomial> = HashMap::new();
        for t in 0..=d {
            let mut layer = HashMap::new();
            for alpha in monomials_of_degree(m, t) {
                if columns.len() >= limits.columns {
                    return Err(Error::ResourceLimit(format!(
                        "annihilator system exceeds {} unknowns",
                        limits.columns
                    )));
                }
                let power = if t == 0 {
                    Polynomial::constant(self.inst.nvars, field.one())
                } else {
                    let i = alpha.exponents().iter().rposition(|&e| e > 0).unwrap();
                    let mut parent = alpha.exponents().to_vec();
                    parent[i] -= 1;
                    prev[&Monomial::new(parent)].mul(polys[i], field)?
                };
                if power.num_terms() > limits.expand_terms {
                    return Err(Error::ResourceLimit(format!(
                        "a power of the inputs has {} terms (cap {})",
                        power.num_terms(),
                        limits.expand_terms
                    )));
                }
                for (mono, _) in power.terms() {
                    let next = rows.len();
                    rows.entry(mono.clone()).or_insert(next);
                }
                let mut col = vec![FieldElement::ZERO; rows.len()];
                for (mono, &c) in power.terms() {
                    col[rows[mono]] = c;
                }
                columns.push(alpha.clone());
                let relation = reducer.push(col);
                if reducer.footprint() > limits.cells {
                    return Err(Error::ResourceLimit(format!(
                        "annihilator elimination exceeds {} stored entries",
                        limits.cells
                    )));
                }
                if t < d {
                    layer.insert(alpha, power);
                }
                if let Some(rel) = relation {
                    let ann = Polynomial::from_terms(
                        m,
                        rel.iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(j, &c)| (columns[j].clone(), c)),
                        field,
                    );
                    let nonzero_constant = !ann.constant_term().is_zero();
                    found.push(ann);
                    if stop == Stop::FirstRelation
                        || (stop == Stop::NonzeroConstant && nonzero_constant)
                    {
                        return Ok(found);
                    }
                }
            }
            if stop == Stop::FirstDegree && !found.is_empty() {
                return Ok(found);
            }
            prev = layer;
        }
        Ok(found)
    }

    /// Product of the subset's degrees, each at least one.
    pub fn perron(&self, subset: &[usize]) -> u64 {
        subset
            .iter()
            .fold(1u64, |acc, &i| acc.saturating_mul(self.degrees[i].max(1)))
    }

    /// The annihilator space of all inputs up to degree `d`.
    pub fn annihilator_space(&self, d: u64) -> Result<AnnSpace> {
        let all: Vec<usize> = (0..self.inst.m()).collect();
        Ok(AnnSpace {
            degree_bound: d,
            basis: self.search(&all, d, Stop::Never)?,
        })
    }

    fn jacobian_certifies(&self, subset: &[usize]) -> Result<bool> {
        let probe = self.probe.get_or_init(|| JacobianProbe::new(self.inst, 1 << 10).ok());
        match probe {
            Some(p) => Ok(p.max_rank(subset, &mut seeded(0x1ac0b1a5), 2)? == subset.len()),
            None => Ok(false),
        }
    }

    /// Whether `f_subset` admits a nonzero annihilator over the instance field.
    pub fn is_dependent(&self, subset: &[usize]) -> Result<bool> {
        if subset.is_empty() {
            return Ok(false);
        }
        if self.opts.shortcuts {
            if subset.len() > self.inst.nvars {
                return Ok(true);
            }
            if self.jacobian_certifies(subset)? {
                return Ok(false);
            }
        }
        let d = self.perron(subset);
        Ok(!self.search(subset, d, Stop::FirstRelation)?.is_empty())
    }

    /// Greedy maximal independent subset.
    pub fn trdeg(&self) -> Result<TrdegResult> {
        let mut basis = Vec::new();
        for i in 0..self.inst.m() {
            if self.opts.shortcuts && basis.len() == self.inst.nvars {
                break;
            }
            basis.push(i);
            if self.is_dependent(&basis)? {
                basis.pop();
            }
        }
        Ok(TrdegResult {
            k: basis.len(),
            basis,
        })
    }

    /// The generator of the annihilator ideal when trdeg is `m - 1`.
    pub fn minimal_annihilator(&self) -> Result<Polynomial> {
        let m = self.inst.m();
        let k = self.trdeg()?.k;
        if k + 1 != m {
            return Err(Error::NotPrincipalCase { k, m });
        }
        self.generator()
    }

    /// Least-degree annihilator of all inputs, monic in its leading
    /// monomial. Unique up to scalars when trdeg is `m - 1`; not checked here.
    pub fn generator(&self) -> Result<Polynomial> {
        let all: Vec<usize> = (0..self.inst.m()).collect();
        let found = self.search(&all, self.perron(&all), Stop::FirstDegree)?;
        found.into_iter().next().ok_or_else(|| {
            Error::Precondition("no annihilator within the degree bound".into())
        })
    }

    /// Whether every annihilator has zero constant term, using the space up
    /// to degree `max_deg^k`.
    pub fn ann_at_zero_direct(&self) -> Result<bool> {
        let m = self.inst.m();
        if m == 0 {
            return Ok(true);
        }
        let k = self.trdeg()?.k;
        let dmax = self.degrees.iter().copied().max().unwrap_or(1).max(1);
        let d = dmax.saturating_pow(k as u32);
        let all: Vec<usize> = (0..m).collect();
        let found = self.search(&all, d, Stop::NonzeroConstant)?;
        Ok(found.iter().all(|a| a.constant_term().is_zero()))
    }
}

pub fn annihilator_space(inst: &Instance, d: u64, limits: &Limits) -> Result<AnnSpace> {
    Analyzer::new(inst, options(limits))?.annihilator_space(d)
}

pub fn is_dependent(inst: &Instance, subset: &[usize], limits: &Limits) -> Result<bool> {
    Analyzer::new(inst, options(limits))?.is_dependent(subset)
}

pub fn trdeg(inst: &Instance, limits: &Limits) -> Result<TrdegResult> {
    Analyzer::new(inst, options(limits))?.trdeg()
}

pub fn minimal_annihilator(inst: &Instance, limits: &Limits) -> Result<Polynomial> {
    Analyzer::new(inst, options(limits))?.minimal_annihilator()
}

pub fn ann_at_zero_direct(inst: &Instance, limits: &Limits) -> Result<bool> {
    Analyzer::new(inst, options(limits))?.ann_at_zero_direct()
}

fn options(limits: &Limits) -> AnnOptions {
    AnnOptions {
        limits: limits.clone(),
        shortcuts: true,
    }
}
