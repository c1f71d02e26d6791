//! Approximate satisfiability: does every annihilator of the inputs vanish
//! at the origin? Decided through trdeg, the principal case, and random
//! linear reduction to `k + 1` inputs.

use std::fmt;

use rand::Rng;

use crate::annihilator::{AnnOptions, Analyzer};
use crate::circuit::{Circuit, Instance};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::laurent::{eps_degree_bounds, LaurentPoly, LaurentRing, Witness};
use crate::limits::Limits;
use crate::poly::Polynomial;
use crate::rng::{split_seed, seeded};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// A circuit is a nonzero constant.
    ConstantShortcut,
    /// trdeg equals the number of inputs.
    IndependentCase,
    /// trdeg is one less than the number of inputs.
    PrincipalCase,
    /// Random reduction to `k + 1` inputs.
    Reduced,
    /// The annihilator space up to `max_deg^k`.
    DirectOracle,
    /// Every reduction plan over a tiny sample field.
    Exhaustive,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ConstantShortcut => "constant-shortcut",
            Route::IndependentCase => "independent-case",
            Route::PrincipalCase => "principal-case",
            Route::Reduced => "reduced",
            Route::DirectOracle => "direct-oracle",
            Route::Exhaustive => "exhaustive",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ApsVerdict {
    pub answer: bool,
    pub route: Route,
    /// trdeg of the instance after dropping zero circuits.
    pub k: Option<usize>,
    /// Number of inputs after dropping zero circuits.
    pub m: usize,
    /// Accepted reduction trials (trdeg preserved).
    pub trials: usize,
    /// Plans discarded because trdeg dropped.
    pub resamples: usize,
    /// Seed of each accepted trial.
    pub seeds: Vec<u64>,
    /// Generator of the annihilator ideal in the principal case.
    pub annihilator: Option<Polynomial>,
    /// The pipeline's own verdict when the answer came from the oracle.
    pub pipeline: Option<Box<ApsVerdict>>,
}

impl ApsVerdict {
    fn simple(answer: bool, route: Route, k: Option<usize>, m: usize) -> Self {
        ApsVerdict {
            answer,
            route,
            k,
            m,
            trials: 0,
            resamples: 0,
            seeds: vec![],
            annihilator: None,
            pipeline: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ApsOptions {
    pub trials: usize,
    pub seed: u64,
    /// Answer with the direct annihilator-space oracle, keeping the pipeline
    /// verdict alongside.
    pub oracle: bool,
    /// Plans drawn per accepted trial before giving up.
    pub max_resamples: usize,
    pub limits: Limits,
}

impl Default for ApsOptions {
    fn default() -> Self {
        ApsOptions {
            trials: 10,
            seed: 0,
            oracle: false,
            max_resamples: 32,
            limits: Limits::default(),
        }
    }
}

/// The instance with identically-zero circuits removed, or the first
/// nonzero constant circuit.
pub enum Preprocessed {
    Constant { name: String, value: FieldElement },
    Instance(Instance),
}

pub fn preprocess(inst: &Instance, limits: &Limits) -> Result<Preprocessed> {
    let mut kept = Vec::new();
    for nc in &inst.circuits {
        let p = nc.circuit.expand(&inst.field, limits.expand_terms)?;
        if p.is_zero() {
            continue;
        }
        if p.total_degree() == 0 {
            return Ok(Preprocessed::Constant {
                name: nc.name.clone(),
                value: p.constant_term(),
            });
        }
        kept.push(nc.clone());
    }
    Ok(Preprocessed::Instance(Instance {
        field: inst.field.clone(),
        nvars: inst.nvars,
        circuits: kept,
    }))
}

/// Result of checking a Laurent point.
#[derive(Clone, Debug)]
pub struct WitnessCheck {
    pub satisfied: bool,
    /// Whether every coordinate respects the `(-D, D')` exponent window;
    /// `None` when the window is undefined (constant circuits).
    pub within_window: Option<bool>,
    pub values: Vec<LaurentPoly>,
}

/// Whether every `f_i(w)` lies in the ideal generated by `ε`.
pub fn verify_witness(inst: &Instance, w: &Witness) -> Result<WitnessCheck> {
    let ring = LaurentRing::new(&inst.field);
    let values = inst
        .circuits
        .iter()
        .map(|c| c.circuit.eval(&ring, &w.coords))
        .collect::<Result<Vec<_>>>()?;
    let within_window = eps_degree_bounds(inst)
        .ok()
        .map(|(low, high)| w.within_window(low, high));
    Ok(WitnessCheck {
        satisfied: values.iter().all(|v| v.in_eps_ideal()),
        within_window,
        values,
    })
}

/// A linear map from `m` inputs to `k + 1` combinations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionPlan {
    pub k: usize,
    /// Field the coefficients are drawn from (all of it is the sample set).
    pub field: Field,
    /// `(k + 1) x m`.
    pub coeffs: Vec<Vec<FieldElement>>,
    /// `(k + 1) max_deg^k`, the numerator of the error bound.
    pub delta_numerator: u128,
}

impl ReductionPlan {
    pub fn sample_size(&self) -> u128 {
        self.field.order()
    }

    pub fn delta(&self) -> f64 {
        self.delta_numerator as f64 / self.sample_size() as f64
    }
}

/// `(k + 1) max_deg^k`.
fn delta_numerator(inst: &Instance, k: usize) -> u128 {
    let dmax = inst.degree_profile().max.max(1) as u128;
    (k as u128 + 1).saturating_mul(dmax.saturating_pow(k as u32))
}

/// The smallest extension of the instance field with at least
/// `2 (k + 1) max_deg^k` elements.
pub fn sample_field(inst: &Instance, k: usize) -> Result<Field> {
    let need = delta_numerator(inst, k).saturating_mul(2);
    let j = inst.field.extension_degree_for(need);
    if j == 1 {
        return Ok(inst.field.clone());
    }
    Ok(inst.field.extension(j)?.0)
}

/// `g_i = sum_j c_ij f_j`, sharing each `f_j` within `g_i`.
pub fn reduce_with_plan(inst: &Instance, plan: &ReductionPlan) -> Result<Instance> {
    if plan.coeffs.iter().any(|row| row.len() != inst.m()) {
        return Err(Error::ArityMismatch {
            expected: inst.m(),
            got: plan.coeffs.first().map_or(0, |r| r.len()),
        });
    }
    let lifted = if plan.field == inst.field {
        inst.clone()
    } else {
        inst.lift(&crate::field::Embedding::new(&inst.field, &plan.field)?)?
    };
    let parts: Vec<&Circuit> = lifted.circuits.iter().map(|c| &c.circuit).collect();
    let circuits = plan
        .coeffs
        .iter()
        .map(|row| Circuit::linear_combination(lifted.nvars, &parts, row, &plan.field))
        .collect();
    Ok(Instance::new(plan.field.clone(), lifted.nvars, circuits))
}

/// Draws a plan with entries uniform in the sample field and applies it.
pub fn random_reduce<R: Rng + ?Sized>(
    inst: &Instance,
    k: usize,
    rng: &mut R,
) -> Result<(ReductionPlan, Instance)> {
    let m = inst.m();
    if k + 1 >= m {
        return Err(Error::Precondition(format!(
            "reduction needs trdeg below m - 1 (k = {k}, m = {m})"
        )));
    }
    let field = sample_field(inst, k)?;
    let coeffs = (0..=k)
        .map(|_| (0..m).map(|_| field.sample(rng)).collect())
        .collect();
    let plan = ReductionPlan {
        k,
        field,
        coeffs,
        delta_numerator: delta_numerator(inst, k),
    };
    let reduced = reduce_with_plan(inst, &plan)?;
    Ok((plan, reduced))
}

fn analyzer<'a>(inst: &'a Instance, limits: &Limits) -> Result<Analyzer<'a>> {
    Analyzer::new(
        inst,
        AnnOptions {
            limits: limits.clone(),
            shortcuts: true,
        },
    )
}

/// Principal-case answer: the generator's constant term vanishes.
fn principal_answer(a: &Analyzer) -> Result<(bool, Polynomial)> {
    let gen = a.generator()?;
    Ok((gen.constant_term().is_zero(), gen))
}

/// Verdict of a reduced instance whose trdeg is `k`, or `None` if the
/// plan lost transcendence degree.
pub fn reduced_answer(reduced: &Instance, k: usize, limits: &Limits) -> Result<Option<bool>> {
    let a = analyzer(reduced, limits)?;
    if a.trdeg()?.k != k {
        return Ok(None);
    }
    Ok(Some(principal_answer(&a)?.0))
}

pub fn aps_decide(inst: &Instance, opts: &ApsOptions) -> Result<ApsVerdict> {
    let pipeline = pipeline(inst, opts)?;
    if !opts.oracle || pipeline.route == Route::ConstantShortcut {
        return Ok(pipeline);
    }
    let Preprocessed::Instance(pre) = preprocess(inst, &opts.limits)? else {
        unreachable!("constant instances return above");
    };
    let answer = analyzer(&pre, &opts.limits)?.ann_at_zero_direct()?;
    Ok(ApsVerdict {
        k: pipeline.k,
        m: pipeline.m,
        pipeline: Some(Box::new(pipeline)),
        ..ApsVerdict::simple(answer, Route::DirectOracle, None, 0)
    })
}

fn pipeline(inst: &Instance, opts: &ApsOptions) -> Result<ApsVerdict> {
    let pre = match preprocess(inst, &opts.limits)? {
        Preprocessed::Constant { .. } => {
            return Ok(ApsVerdict::simple(false, Route::ConstantShortcut, None, inst.m()))
        }
        Preprocessed::Instance(p) => p,
    };
    let m = pre.m();
    let a = analyzer(&pre, &opts.limits)?;
    let k = a.trdeg()?.k;
    if k == m {
        return Ok(ApsVerdict::simple(true, Route::IndependentCase, Some(k), m));
    }
    if k + 1 == m {
        let (answer, gen) = principal_answer(&a)?;
        let mut v = ApsVerdict::simple(answer, Route::PrincipalCase, Some(k), m);
        v.annihilator = Some(gen);
        return Ok(v);
    }
    let mut v = ApsVerdict::simple(true, Route::Reduced, Some(k), m);
    let trials = opts.trials.max(1);
    let mut draw = 0u64;
    while v.trials < trials {
        if v.resamples >= opts.max_resamples * trials {
            return Err(Error::ResourceLimit(format!(
                "{} reduction plans lost transcendence degree",
                v.resamples
            )));
        }
        let seed = split_seed(opts.seed, "aps", draw);
        draw += 1;
        let (_, reduced) = random_reduce(&pre, k, &mut seeded(seed))?;
        match reduced_answer(&reduced, k, &opts.limits)? {
            None => v.resamples += 1,
            Some(ans) => {
                v.trials += 1;
                v.seeds.push(seed);
                if !ans {
                    v.answer = false;
                    return Ok(v);
                }
            }
        }
    }
    Ok(v)
}

/// Every plan over the sample field, for tiny cases. The answer is the
/// conjunction over trdeg-preserving plans, since a plan can only err
/// towards a positive answer.
pub fn aps_exhaustive(inst: &Instance, limits: &Limits, max_plans: u128) -> Result<ApsVerdict> {
    let pre = match preprocess(inst, limits)? {
        Preprocessed::Constant { .. } => {
            return Ok(ApsVerdict::simple(false, Route::ConstantShortcut, None, inst.m()))
        }
        Preprocessed::Instance(p) => p,
    };
    let m = pre.m();
    let k = analyzer(&pre, limits)?.trdeg()?.k;
    if k + 1 >= m {
        let mut v = pipeline(&pre, &ApsOptions {
            limits: limits.clone(),
            ..ApsOptions::default()
        })?;
        v.m = m;
        return Ok(v);
    }
    let field = sample_field(&pre, k)?;
    let cells = ((k + 1) * m) as u32;
    let q = field.order();
    let total = q.checked_pow(cells).filter(|&t| t <= max_plans).ok_or_else(|| {
        Error::ResourceLimit(format!("{q}^{cells} plans exceed the sweep cap {max_plans}"))
    })?;
    let mut v = ApsVerdict::simple(true, Route::Exhaustive, Some(k), m);
    for index in 0..total {
        let mut code = index;
        let coeffs = (0..=k)
            .map(|_| {
                (0..m)
                    .map(|_| {
                        let c = field.element(code % q).expect("digit below the order");
                        code /= q;
                        c
                    })
                    .collect()
            })
            .collect();
        let plan = ReductionPlan {
            k,
            field: field.clone(),
            coeffs,
            delta_numerator: delta_numerator(&pre, k),
        };
        let reduced = reduce_with_plan(&pre, &plan)?;
        match reduced_answer(&reduced, k, limits)? {
            None => v.resamples += 1,
            Some(ans) => {
                v.trials += 1;
                if !ans {
                    v.answer = false;
                    return Ok(v);
                }
            }
        }
    }
    Ok(v)
}

/// Single-trial disagreement of the reduction with the direct oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct StressReport {
    pub oracle: bool,
    /// Trials whose plan preserved trdeg.
    pub trials: usize,
    pub disagreements: usize,
    pub resamples: usize,
    pub delta: f64,
}

impl StressReport {
    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.disagreements as f64 / self.trials as f64
        }
    }
}

/// `None` when no reduction applies (`k >= m - 1` or a constant circuit).
pub fn reduction_stress(
    inst: &Instance,
    seeds: u64,
    base_seed: u64,
    limits: &Limits,
) -> Result<Option<StressReport>> {
    let Preprocessed::Instance(pre) = preprocess(inst, limits)? else {
        return Ok(None);
    };
    let a = analyzer(&pre, limits)?;
    let k = a.trdeg()?.k;
    if k + 1 >= pre.m() {
        return Ok(None);
    }
    let oracle = a.ann_at_zero_direct()?;
    let mut report = StressReport {
        oracle,
        trials: 0,
        disagreements: 0,
        resamples: 0,
        delta: 0.0,
    };
    for s in 0..seeds {
        let mut rng = seeded(split_seed(base_seed, "stress", s));
        let (plan, reduced) = random_reduce(&pre, k, &mut rng)?;
        report.delta = plan.delta();
        match reduced_answer(&reduced, k, limits)? {
            None => report.resamples += 1,
            Some(ans) => {
                report.trials += 1;
                if ans != oracle {
                    report.disagreements += 1;
                }
            }
        }
    }
    Ok(Some(report))
}
