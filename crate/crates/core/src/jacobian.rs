//! Jacobian matrices of circuits and their rank at random points.

use rand::Rng;

use crate::circuit::{Circuit, Instance};
use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::linalg::rank;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianReport {
    pub rank: usize,
    pub trials: usize,
    /// Whether the characteristic is large enough for rank to equal trdeg.
    pub applicable: bool,
    pub reason: String,
}

/// Entry `(i, j)` computes the derivative of `f_i` in `x_j`.
pub fn jacobian_matrix(inst: &Instance) -> Vec<Vec<Circuit>> {
    inst.circuits
        .iter()
        .map(|c| {
            (0..inst.nvars)
                .map(|j| c.circuit.formal_partial(j, &inst.field))
                .collect()
        })
        .collect()
}

/// Partial-derivative circuits lifted to a field large enough for random
/// evaluation to be informative.
#[derive(Clone, Debug)]
pub struct JacobianProbe {
    pub field: Field,
    nvars: usize,
    entries: Vec<Vec<Circuit>>,
}

impl JacobianProbe {
    /// Lifts `inst` to the smallest extension with at least `min_size` elements.
    pub fn new(inst: &Instance, min_size: u128) -> Result<Self> {
        let j = inst.field.extension_degree_for(min_size);
        let lifted = if j == 1 {
            inst.clone()
        } else {
            inst.extend(j)?
        };
        Ok(JacobianProbe {
            entries: jacobian_matrix(&lifted),
            nvars: inst.nvars,
            field: lifted.field,
        })
    }

    /// Rank of the rows `rows` of the Jacobian evaluated at `point`.
    pub fn rank_at(&self, rows: &[usize], point: &[FieldElement]) -> Result<usize> {
        let mut scratch = Vec::new();
        let mut matrix = Vec::with_capacity(rows.len());
        for &i in rows {
            let row = self.entries[i]
                .iter()
                .map(|c| c.eval_with(&self.field, point, &mut scratch))
                .collect::<Result<Vec<_>>>()?;
            matrix.push(row);
        }
        Ok(rank(matrix, &self.field))
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<FieldElement> {
        (0..self.nvars).map(|_| self.field.sample(rng)).collect()
    }

    /// Maximum rank over `trials` random points.
    pub fn max_rank<R: Rng + ?Sized>(
        &self,
        rows: &[usize],
        rng: &mut R,
        trials: usize,
    ) -> Result<usize> {
        let target = rows.len().min(self.nvars);
        let mut best = 0;
        for _ in 0..trials {
            let pt = self.random_point(rng);
            best = best.max(self.rank_at(rows, &pt)?);
            if best == target {
                break;
            }
        }
        Ok(best)
    }
}

/// Randomized rank of the Jacobian with the applicability flag of the
/// large-characteristic criterion (`p > D'^min(m, n)`).
pub fn jacobian_rank<R: Rng + ?Sized>(
    inst: &Instance,
    rng: &mut R,
    trials: usize,
) -> Result<JacobianReport> {
    let trials = trials.max(1);
    let r = inst.m().min(inst.nvars);
    let dmax = inst.degree_profile().max;
    let bound = 4u128
        .saturating_mul(r as u128)
        .saturating_mul(dmax.saturating_sub(1) as u128)
        .saturating_mul(trials as u128);
    let probe = JacobianProbe::new(inst, bound.saturating_add(1))?;
    let rows: Vec<usize> = (0..inst.m()).collect();
    let mut best = 0;
    for _ in 0..trials {
        let pt = probe.random_point(rng);
        best = best.max(probe.rank_at(&rows, &pt)?);
    }
    let threshold = (dmax as u128).checked_pow(r as u32);
    let p = inst.field.p() as u128;
    let applicable = threshold.is_some_and(|t| p > t);
    let reason = match threshold {
        Some(t) if applicable => format!("characteristic {p} exceeds {dmax}^{r} = {t}"),
        Some(t) => format!("criterion inapplicable: characteristic {p} <= {dmax}^{r} = {t}"),
        None => format!("criterion inapplicable: {dmax}^{r} overflows"),
    };
    Ok(JacobianReport {
        rank: best,
        trials,
        applicable,
        reason,
    })
}
