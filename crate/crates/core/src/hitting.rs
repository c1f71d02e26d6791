//! Certifying candidate hitting sets for a parameterized circuit family by
//! reduction to approximate satisfiability.

use rand::Rng;
use rayon::prelude::*;

use crate::aps::{aps_decide, ApsOptions, ApsVerdict};
use crate::circuit::{Circuit, CircuitBuilder, Instance};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::rng::{split_seed, seeded};

/// A circuit `Ψ(y, x)` whose first `params` variables are parameters and
/// whose remaining variables are the essential ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub field: Field,
    pub psi: Circuit,
    pub params: usize,
}

impl Family {
    pub fn new(field: Field, psi: Circuit, params: usize) -> Result<Self> {
        if params > psi.nvars() {
            return Err(Error::Precondition(format!(
                "{params} parameters but only {} variables",
                psi.nvars()
            )));
        }
        Ok(Family { field, psi, params })
    }

    /// Number of essential variables.
    pub fn n(&self) -> usize {
        self.psi.nvars() - self.params
    }

    /// Instance grammar with a single circuit plus a `params <s>` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut params = None;
        let mut rest = String::new();
        for (idx, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("").trim();
            if let Some(v) = content.strip_prefix("params") {
                if params.is_some() {
                    return Err(Error::Syntax {
                        line: idx + 1,
                        msg: "duplicate `params` line".into(),
                    });
                }
                params = Some(v.trim().parse::<usize>().map_err(|_| Error::Syntax {
                    line: idx + 1,
                    msg: "expected `params <count>`".into(),
                })?);
                rest.push('\n');
            } else {
                rest.push_str(line);
                rest.push('\n');
            }
        }
        let inst = Instance::parse(&rest)?;
        let line = text.lines().count() + 1;
        let params = params.ok_or_else(|| Error::Syntax {
            line,
            msg: "missing `params` line".into(),
        })?;
        if inst.m() != 1 {
            return Err(Error::Syntax {
                line,
                msg: format!("a family has exactly one circuit, found {}", inst.m()),
            });
        }
        let psi = inst.circuits.into_iter().next().unwrap().circuit;
        Family::new(inst.field, psi, params)
    }

    pub fn serialize(&self) -> String {
        let inst = Instance::new(self.field.clone(), self.psi.nvars(), vec![self.psi.clone()]);
        let text = inst.serialize();
        let (head, tail) = text.split_at(text.find("circuit").unwrap_or(text.len()));
        format!("{head}params {}\n{tail}", self.params)
    }

    /// `Ψ(y, v)` as a circuit in the parameters only.
    pub fn specialize_x(&self, v: &[FieldElement]) -> Result<Circuit> {
        let s = self.params;
        let subs: Vec<Circuit> = (0..s)
            .map(|i| Circuit::var(s, i))
            .chain(v.iter().map(|&c| Circuit::constant(s, c)))
            .collect();
        self.psi.substitute(s, &subs)
    }

    /// `Ψ(α, x)` as a circuit in the essential variables only.
    pub fn specialize_y(&self, alpha: &[FieldElement]) -> Result<Circuit> {
        let n = self.n();
        let subs: Vec<Circuit> = alpha
            .iter()
            .map(|&c| Circuit::constant(n, c))
            .chain((0..n).map(|i| Circuit::var(n, i)))
            .collect();
        self.psi.substitute(n, &subs)
    }
}

/// A family, a target degree `r` and a candidate set `H`.
#[derive(Clone, Debug)]
pub struct HittingInstance {
    pub family: Family,
    pub r: u64,
    pub points: Vec<Vec<FieldElement>>,
}

impl HittingInstance {
    pub fn new(family: Family, r: u64, points: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = family.n();
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                got: p.len(),
            });
        }
        Ok(HittingInstance { family, r, points })
    }
}

/// The `n + h + 1` circuits in `(y, x)`: `x_i^(r+1) - 1`, `Ψ - 1` and
/// `Ψ(y, v_i)`.
pub fn build_criterion(hi: &HittingInstance) -> Result<Instance> {
    let fam = &hi.family;
    let field = &fam.field;
    let order = hi.r + 1;
    if order.is_multiple_of(field.p()) {
        return Err(Error::CharDividesOrder {
            p: field.p(),
            order,
        });
    }
    let (s, n) = (fam.params, fam.n());
    let total = s + n;
    let mut circuits = Vec::with_capacity(n + hi.points.len() + 1);
    let mut names = Vec::new();
    for i in 0..n {
        let mut b = CircuitBuilder::new(total);
        let x = b.var(s + i);
        let pw = b.pow(x, order, field);
        let one = b.constant(field.one());
        let out = b.sub(pw, one, field);
        circuits.push(b.finish(out));
        names.push(format!("root{}", i + 1));
    }
    {
        let mut b = CircuitBuilder::new(total);
        let vars: Vec<usize> = (0..total).map(|i| b.var(i)).collect();
        let psi = b.inline(&fam.psi, &vars);
        let one = b.constant(field.one());
        let out = b.sub(psi, one, field);
        circuits.push(b.finish(out).pruned());
        names.push("normalized".to_string());
    }
    for (i, v) in hi.points.iter().enumerate() {
        circuits.push(fam.specialize_x(v)?.widen(total, 0));
        names.push(format!("hit{}", i + 1));
    }
    let mut inst = Instance::new(field.clone(), total, circuits);
    for (nc, name) in inst.circuits.iter_mut().zip(names) {
        nc.name = name;
    }
    Ok(inst)
}

#[derive(Clone, Debug)]
pub struct Certification {
    /// `H` hits every nonzero member of the family's closure.
    pub certified: bool,
    pub verdict: ApsVerdict,
}

/// A set is certified exactly when the criterion system is not
/// approximately satisfiable.
pub fn certify(hi: &HittingInstance, opts: &ApsOptions) -> Result<Certification> {
    let system = build_criterion(hi)?;
    let verdict = aps_decide(&system, opts)?;
    Ok(Certification {
        certified: !verdict.answer,
        verdict,
    })
}

/// First parameter point (lexicographic, first parameter most significant)
/// whose specialization is a nonzero polynomial vanishing on all of `H`.
pub fn brute_counterexample(hi: &HittingInstance, budget: u128, term_cap: usize) -> Result<Option<Vec<FieldElement>>> {
    let fam = &hi.family;
    let field = &fam.field;
    let q = field.order();
    let s = fam.params;
    let total = q
        .checked_pow(s as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::ResourceLimit(format!("{q}^{s} parameter points exceed {budget}")))?;
    let hit: Vec<Circuit> = hi
        .points
        .iter()
        .map(|v| fam.specialize_x(v))
        .collect::<Result<_>>()?;
    for index in 0..total {
        let mut alpha = vec![FieldElement::ZERO; s];
        let mut code = index;
        for slot in alpha.iter_mut().rev() {
            *slot = field.element(code % q)?;
            code /= q;
        }
        let fools = hit
            .iter()
            .map(|c| c.eval(field, &alpha))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| v.is_zero());
        if !fools {
            continue;
        }
        if !fam.specialize_y(&alpha)?.expand(field, term_cap)?.is_zero() {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// `h` uniform points of `F_q^n`.
pub fn random_candidate<R: Rng + ?Sized>(fam: &Family, h: usize, rng: &mut R) -> Vec<Vec<FieldElement>> {
    (0..h)
        .map(|_| (0..fam.n()).map(|_| fam.field.sample(rng)).collect())
        .collect()
}

/// Random candidates of size `h`; the first certified one by candidate index.
pub fn search(
    fam: &Family,
    r: u64,
    h: usize,
    budget: usize,
    seed: u64,
    opts: &ApsOptions,
) -> Result<Vec<Vec<FieldElement>>> {
    if h == 0 || budget == 0 {
        return Err(Error::NotFound(budget));
    }
    let found = (0..budget as u64).into_par_iter().find_map_first(|i| {
        let mut rng = seeded(split_seed(seed, "hitting", i));
        let points = random_candidate(fam, h, &mut rng);
        let trial = ApsOptions {
            seed: split_seed(seed, "hitting-aps", i),
            ..opts.clone()
        };
        let run = HittingInstance::new(fam.clone(), r, points.clone())
            .and_then(|hi| certify(&hi, &trial));
        match run {
            Ok(c) if c.certified => Some(Ok(points)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    found.unwrap_or(Err(Error::NotFound(budget)))
}

/// All `q^(n h)` candidates in lexicographic order; the first certified one.
pub fn exhaustive_search(
    fam: &Family,
    r: u64,
    h: usize,
    max_candidates: u128,
    opts: &ApsOptions,
) -> Result<Vec<Vec<FieldElement>>> {
    let q = fam.field.order();
    let cells = (fam.n() * h) as u32;
    let total = q
        .checked_pow(cells)
        .filter(|&t| t <= max_candidates)
        .ok_or_else(|| Error::ResourceLimit(format!("{q}^{cells} candidates exceed {max_candidates}")))?;
    if h == 0 {
        return Err(Error::NotFound(0));
    }
    for index in 0..total {
        let mut code = index;
        let mut flat = vec![FieldElement::ZERO; cells as usize];
        for slot in flat.iter_mut().rev() {
            *slot = fam.field.element(code % q)?;
            code /= q;
        }
        let points: Vec<Vec<FieldElement>> = flat.chunks(fam.n()).map(|c| c.to_vec()).collect();
        let hi = HittingInstance::new(fam.clone(), r, points.clone())?;
        if certify(&hi, opts)?.certified {
            return Ok(points);
        }
    }
    Err(Error::NotFound(total as usize))
}

/// One point per line. Over a prime field coordinates are comma-separated;
/// over an extension they are whitespace-separated constants `c0,c1,...`.
pub fn parse_points(text: &str, field: &Field, n: usize) -> Result<Vec<Vec<FieldElement>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let coords: Vec<&str> = if field.e() == 1 {
            content.split(',').map(str::trim).collect()
        } else {
            content.split_whitespace().collect()
        };
        if coords.len() != n {
            return Err(Error::Syntax {
                line: idx + 1,
                msg: format!("expected {n} coordinates, found {}", coords.len()),
            });
        }
        out.push(
            coords
                .iter()
                .map(|c| field.parse_element(c))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(out)
}

pub fn format_point(field: &Field, point: &[FieldElement]) -> String {
    let sep = if field.e() == 1 { "," } else { " " };
    point
        .iter()
        .map(|&c| field.format_element(c))
        .collect::<Vec<_>>()
        .join(sep)
}
