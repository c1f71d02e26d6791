//! Exhaustive fiber and image statistics of a square polynomial map.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::circuit::Instance;
use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Image code of every domain point, indexed by the point's code.
///
/// A point `(a_1..a_n)` has code `sum a_j q^(j-1)` with `a_j` in packed form.
pub fn image_codes(inst: &Instance, budget: u128) -> Result<Vec<u64>> {
    let q = inst.field.order();
    let n = inst.nvars;
    let total = domain_size(q, n, budget)?;
    if inst.m() != n {
        return Err(Error::Precondition(format!(
            "expected a square instance, got {} circuits in {n} variables",
            inst.m()
        )));
    }
    let field = &inst.field;
    const CHUNK: u64 = 4096;
    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Result<Vec<u64>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut scratch = Vec::new();
            let mut point = vec![FieldElement::ZERO; n];
            let mut out = Vec::with_capacity((end - start) as usize);
            for code in start..end {
                decode_into(code, q, &mut point, field);
                let mut b = 0u64;
                let mut scale = 1u64;
                for nc in &inst.circuits {
                    let v = nc.circuit.eval_with(field, &point, &mut scratch)?;
                    b += v.packed() as u64 * scale;
                    scale = scale.wrapping_mul(q as u64);
                }
                out.push(b);
            }
            Ok(out)
        })
        .collect();
    let mut codes = Vec::with_capacity(total as usize);
    for part in parts {
        codes.extend(part?);
    }
    Ok(codes)
}

fn domain_size(q: u128, n: usize, budget: u128) -> Result<u64> {
    let total = q.checked_pow(n as u32).filter(|&t| t <= budget && t <= u64::MAX as u128);
    total.map(|t| t as u64).ok_or_else(|| {
        Error::ResourceLimit(format!("{q}^{n} points exceed the enumeration budget {budget}"))
    })
}

fn decode_into(mut code: u64, q: u128, point: &mut [FieldElement], field: &crate::field::Field) {
    for slot in point.iter_mut() {
        *slot = field
            .element((code % q as u64) as u128)
            .expect("digit below the field order");
        code /= q as u64;
    }
}

/// Decodes a point code into coordinates.
pub fn decode_point(code: u64, inst: &Instance) -> Vec<FieldElement> {
    let mut point = vec![FieldElement::ZERO; inst.nvars];
    decode_into(code, inst.field.order(), &mut point, &inst.field);
    point
}

/// Fiber-size statistics of `a -> (f_1(a), ..., f_n(a))` on all of `F^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub n: usize,
    pub qprime: u128,
    /// Product of syntactic degrees.
    pub d: u128,
    /// Maximum syntactic degree.
    pub dmax: u128,
    /// Fiber size -> number of image points with that fiber size.
    pub histogram: BTreeMap<u64, u64>,
    pub image_size: u64,
    pub domain_size: u64,
}

/// Bounds from the four gap lemmas, each as an exact integer comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCheck {
    pub holds: bool,
    pub observed: u128,
    pub bound: u128,
    pub statement: String,
}

pub fn fiber_stats(inst: &Instance, budget: u128) -> Result<GapReport> {
    let mut codes = image_codes(inst, budget)?;
    let domain_size = codes.len() as u64;
    codes.par_sort_unstable();
    let mut histogram = BTreeMap::new();
    let mut image_size = 0;
    let mut i = 0;
    while i < codes.len() {
        let mut j = i + 1;
        while j < codes.len() && codes[j] == codes[i] {
            j += 1;
        }
        *histogram.entry((j - i) as u64).or_insert(0) += 1;
        image_size += 1;
        i = j;
    }
    let profile = inst.degree_profile();
    Ok(GapReport {
        n: inst.nvars,
        qprime: inst.field.order(),
        d: profile.product,
        dmax: profile.max as u128,
        histogram,
        image_size,
        domain_size,
    })
}

impl GapReport {
    /// `q'^(n-1)`.
    fn qn1(&self) -> u128 {
        self.qprime.pow(self.n.saturating_sub(1) as u32)
    }

    /// Number of domain points whose fiber has more than `t` points.
    pub fn points_with_fiber_above(&self, t: u64) -> u128 {
        self.histogram
            .range(t + 1..)
            .map(|(&size, &count)| size as u128 * count as u128)
            .sum()
    }

    pub fn points_with_fiber_at_most(&self, t: u64) -> u128 {
        self.domain_size as u128 - self.points_with_fiber_above(t)
    }

    /// Independent inputs: `#{a : N > D} <= n D D' q'^(n-1)`.
    pub fn small_preimage(&self) -> GapCheck {
        let observed = self.points_with_fiber_above(self.d as u64);
        let bound = self.n as u128 * self.d * self.dmax * self.qn1();
        GapCheck {
            holds: observed <= bound,
            observed,
            bound,
            statement: "points with fiber > D".into(),
        }
    }

    /// Dependent inputs: `#{a : N <= k} <= k D q'^(n-1)` with `k = 2D`.
    pub fn large_preimage(&self) -> GapCheck {
        let k = 2 * self.d;
        let observed = self.points_with_fiber_at_most(k as u64);
        let bound = k * self.d * self.qn1();
        GapCheck {
            holds: observed <= bound,
            observed,
            bound,
            statement: "points with fiber <= 2D".into(),
        }
    }

    /// Independent inputs: `|Im| >= (1/D - n D'/q') q'^n`, compared as
    /// `|Im| D q' + n D D' q'^n >= q'^(n+1)`.
    pub fn large_image(&self) -> GapCheck {
        let qn = self.qn1() * self.qprime;
        let lhs = self.image_size as u128 * self.d * self.qprime + self.n as u128 * self.d * self.dmax * qn;
        let rhs = qn * self.qprime;
        GapCheck {
            holds: lhs >= rhs,
            observed: self.image_size as u128,
            bound: (rhs.saturating_sub(self.n as u128 * self.d * self.dmax * qn))
                .div_ceil(self.d * self.qprime),
            statement: "image size (lower bound)".into(),
        }
    }

    /// Dependent inputs: `|Im| <= D q'^(n-1)`.
    pub fn small_image(&self) -> GapCheck {
        let bound = self.d * self.qn1();
        GapCheck {
            holds: self.image_size as u128 <= bound,
            observed: self.image_size as u128,
            bound,
            statement: "image size (upper bound)".into(),
        }
    }

    /// Sum of fiber sizes over the image.
    pub fn total_fiber(&self) -> u128 {
        self.histogram
            .iter()
            .map(|(&s, &c)| s as u128 * c as u128)
            .sum()
    }
}
