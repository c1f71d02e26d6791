//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::fmt::Display;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use algdep_core::annihilator::{ann_at_zero_direct, is_dependent, minimal_annihilator, trdeg};
use algdep_core::aps::{
    aps_decide, reduce_with_plan, reduced_answer, reduction_stress, verify_witness, ApsOptions,
    ReductionPlan, Route,
};
use algdep_core::field::roots_of_unity;
use algdep_core::hitting::{brute_counterexample, certify, parse_points, random_candidate, Family, HittingInstance};
use algdep_core::jacobian::{jacobian_matrix, jacobian_rank};
use algdep_core::laurent::LaurentPoly;
use algdep_core::poly::PolyRing;
use algdep_core::protocol::gap::fiber_stats;
use algdep_core::protocol::gs::{gs_round, ExplicitSet};
use algdep_core::protocol::{
    am_decide, coam_decide, lift_to_qprime, reduce_to_square, threshold, Mode, ProtocolParams,
    Squared,
};
use algdep_core::rng::{seeded, split_seed};
use algdep_core::{mk_field, Field, Instance, Limits, Monomial, Polynomial, Witness};

use common::*;

#[derive(Default)]
struct Check {
    checks: usize,
    failures: Vec<String>,
}

impl Check {
    fn ensure(&mut self, ok: bool, what: impl Display) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn within(&mut self, limit: Duration, what: &str, f: impl FnOnce(&mut Check)) {
        let start = Instant::now();
        f(self);
        let took = start.elapsed();
        self.ensure(took <= limit, format!("{what} took {took:.2?} (limit {limit:?})"));
    }

    fn finish(self, summary: String) -> Result<String, String> {
        if self.failures.is_empty() {
            Ok(format!("{} checks; {summary}", self.checks))
        } else {
            Err(format!(
                "{} of {} checks failed: {}",
                self.failures.len(),
                self.checks,
                self.failures.join("; ")
            ))
        }
    }
}

fn poly_from(field: &Field, nvars: usize, terms: &[(&[u32], i64)]) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        terms
            .iter()
            .map(|(e, c)| (Monomial::new(e.to_vec()), field.from_i64(*c))),
        field,
    )
}

fn golden_examples() -> Result<String, String> {
    let mut c = Check::default();
    let limits = Limits::default();
    let second = Duration::from_secs(1);
    let opts = ApsOptions {
        seed: 1,
        trials: 8,
        ..ApsOptions::default()
    };

    c.within(second, "x, xy - 1", |c| {
        let inst = fixture("x_xy1.inst");
        let v = aps_decide(&inst, &opts).unwrap();
        c.ensure(v.answer && v.route == Route::IndependentCase, "{x, xy-1} is not YES via independent-case");
        let w = Witness::parse(&fixture_text("x_xy1.wit"), &inst.field, 2).unwrap();
        let f = &inst.field;
        c.ensure(
            w.coords == vec![LaurentPoly::eps(f), LaurentPoly::monomial(-1, f.one())],
            "witness file is not (eps, 1/eps)",
        );
        let check = verify_witness(&inst, &w).unwrap();
        c.ensure(check.satisfied, "(eps, 1/eps) does not satisfy {x, xy-1}");
        c.ensure(check.within_window == Some(true), "(eps, 1/eps) outside the exponent window");
    });

    c.within(second, "x, x + 1", |c| {
        let v = aps_decide(&fixture("x_x1.inst"), &opts).unwrap();
        c.ensure(!v.answer, "{x, x+1} answered YES");
    });

    c.within(second, "x1, x1, x1 x2 - 1", |c| {
        let inst = fixture("dup_principal.inst");
        let v = aps_decide(&inst, &opts).unwrap();
        c.ensure(v.answer && v.route == Route::PrincipalCase, "{X1, X1, X1X2-1} is not YES via principal-case");
        let f = &inst.field;
        let target = poly_from(f, 3, &[(&[1, 0, 0], 1), (&[0, 1, 0], -1)]);
        let proportional = v.annihilator.as_ref().is_some_and(|a| {
            let (_, &lead) = a.leading_term().unwrap();
            *a == target.scale(lead, f)
        });
        c.ensure(proportional, "principal annihilator is not proportional to Y1 - Y2");
    });

    let plan_for = |inst: &Instance| ReductionPlan {
        k: 2,
        field: inst.field.clone(),
        coeffs: [[1, 0, 0, 0], [0, 0, 1, 0], [1, 1, 0, -1]]
            .iter()
            .map(|row| row.iter().map(|&v| inst.field.from_i64(v)).collect())
            .collect(),
        delta_numerator: 12,
    };

    c.within(second, "first appendix example", |c| {
        let inst = fixture("example1.inst");
        c.ensure(trdeg(&inst, &limits).unwrap().k == 2, "first example trdeg is not 2");
        let v = aps_decide(&inst, &opts).unwrap();
        c.ensure(!v.answer, "first example answered YES");
        c.ensure(!ann_at_zero_direct(&inst, &limits).unwrap(), "direct oracle says YES on the first example");
        let reduced = reduce_with_plan(&inst, &plan_for(&inst)).unwrap();
        let expected = fixture("example1_reduced.inst");
        c.ensure(
            reduced.expand_all(1000).unwrap() == expected.expand_all(1000).unwrap(),
            "adversarial plan does not give (X1, X1X2 - 1, 0)",
        );
        c.ensure(trdeg(&reduced, &limits).unwrap().k == 2, "adversarial plan drops trdeg");
        c.ensure(
            reduced_answer(&reduced, 2, &limits).unwrap() == Some(true),
            "adversarial plan does not reproduce the false YES",
        );
        c.ensure(aps_decide(&reduced, &opts).unwrap().answer, "reduced instance is not in APS");
    });

    c.within(second, "second appendix example", |c| {
        let inst = fixture("example2.inst");
        c.ensure(!aps_decide(&inst, &opts).unwrap().answer, "second example answered YES");
        let reduced = reduce_with_plan(&inst, &plan_for(&inst)).unwrap();
        let last = reduced.circuit(2).expand(&inst.field, 100).unwrap();
        c.ensure(
            last == Polynomial::constant(2, inst.field.from_i64(-1)),
            "f1 + f2 - f4 is not the constant -1",
        );
        for reading in ["example2_reduced_plus.inst", "example2_reduced_minus.inst"] {
            let v = aps_decide(&fixture(reading), &opts).unwrap();
            c.ensure(!v.answer && v.route == Route::ConstantShortcut, format!("{reading} answered YES"));
        }
        c.ensure(!aps_decide(&reduced, &opts).unwrap().answer, "reduced second example answered YES");
    });

    c.finish("all golden verdicts match".into())
}

fn dependence_corpus() -> Result<String, String> {
    let mut c = Check::default();
    let limits = Limits::default();
    let start = Instant::now();
    let mut rng = seeded(2);

    for (name, zero_jacobian) in [("xp_yp_p2.inst", true), ("xp_yp_p3.inst", true), ("mixed_p3.inst", false)] {
        let inst = fixture(name);
        c.ensure(trdeg(&inst, &limits).unwrap().k == 2, format!("{name} is not independent"));
        let report = jacobian_rank(&inst, &mut rng, 4).unwrap();
        c.ensure(report.rank < 2, format!("{name} has a full-rank Jacobian"));
        c.ensure(
            !report.applicable && report.reason.contains("criterion inapplicable"),
            format!("{name} Jacobian not flagged inapplicable"),
        );
        if zero_jacobian {
            let all_zero = jacobian_matrix(&inst)
                .iter()
                .flatten()
                .all(|e| e.expand(&inst.field, 100).unwrap().is_zero());
            c.ensure(all_zero, format!("{name} Jacobian is not identically zero"));
        }
    }
    // With p = 2 the mixed pair is {xy, xy}, which is dependent.
    let degenerate = fixture("mixed_p2.inst");
    c.ensure(
        is_dependent(&degenerate, &[0, 1], &limits).unwrap(),
        "{xy, xy} over F_2 reported independent",
    );

    for (name, p) in [("frob_p2.inst", 2u32), ("frob_p3.inst", 3)] {
        let inst = fixture(name);
        c.ensure(is_dependent(&inst, &[0, 1], &limits).unwrap(), format!("{name} is not dependent"));
        let expected = poly_from(&inst.field, 2, &[(&[p, 0], 1), (&[0, 1], -1)]);
        c.ensure(
            minimal_annihilator(&inst, &limits).unwrap() == expected,
            format!("{name} annihilator is not y1^{p} - y2"),
        );
    }
    for name in ["circle.inst", "circle_f101.inst"] {
        let inst = fixture(name);
        let expected = poly_from(&inst.field, 3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 1], -1)]);
        c.ensure(
            minimal_annihilator(&inst, &limits).unwrap() == expected,
            format!("{name} minimal annihilator is not y1^2 + y2^2 - y3"),
        );
    }
    let took = start.elapsed();
    c.ensure(took <= Duration::from_secs(10), format!("corpus took {took:.2?}"));
    c.finish(format!("{took:.2?}"))
}

fn var0(b: &mut algdep_core::CircuitBuilder, _: &Field) -> usize {
    b.var(0)
}
fn var1(b: &mut algdep_core::CircuitBuilder, _: &Field) -> usize {
    b.var(1)
}
fn sum(b: &mut algdep_core::CircuitBuilder, _: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    b.add(x, y)
}
fn prod(b: &mut algdep_core::CircuitBuilder, _: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    b.mul(x, y)
}
fn prod_sq(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let p = prod(b, f);
    b.pow(p, 2, f)
}
fn sum_sq(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let s = sum(b, f);
    b.pow(s, 2, f)
}
fn sum_of_squares(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    let (x2, y2) = (b.pow(x, 2, f), b.pow(y, 2, f));
    b.add(x2, y2)
}
fn sum_of_cubes(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    let (x3, y3) = (b.pow(x, 3, f), b.pow(y, 3, f));
    b.add(x3, y3)
}
fn shear(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    let x2 = b.pow(x, 2, f);
    b.add(y, x2)
}
fn x_sq(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let x = b.var(0);
    b.pow(x, 2, f)
}
fn y_sq(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let y = b.var(1);
    b.pow(y, 2, f)
}
fn x2y(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    let x2 = b.pow(x, 2, f);
    b.mul(x2, y)
}
fn xy2(b: &mut algdep_core::CircuitBuilder, f: &Field) -> usize {
    let (x, y) = (b.var(0), b.var(1));
    let y2 = b.pow(y, 2, f);
    b.mul(x, y2)
}

/// `(instance, dependent)` with `n = m <= 2` over small prime fields.
fn square_corpus() -> Vec<(String, Instance, bool)> {
    let mut out = Vec::new();
    let mut add = |label: &str, p: u64, n: usize, parts: &[Gadget], dep: bool| {
        out.push((format!("{label}/F{p}"), build(p, 1, n, parts), dep));
    };
    for p in [2, 3, 5, 7] {
        add("x1", p, 1, &[var0], false);
        add("x1,x2", p, 2, &[var0, var1], false);
        add("x1,x2+x1^2", p, 2, &[var0, shear], false);
        add("x1,x1", p, 2, &[var0, var0], true);
    }
    for p in [2, 3, 5] {
        add("x1x2,x1+x2", p, 2, &[prod, sum], false);
        add("x1+x2,(x1+x2)^2", p, 2, &[sum, sum_sq], true);
    }
    for p in [2, 3] {
        add("x1x2,(x1x2)^2", p, 2, &[prod, prod_sq], true);
    }
    add("x1+x2,x1^2+x2^2", 2, 2, &[sum, sum_of_squares], true);
    add("x1+x2,x1^3+x2^3", 3, 2, &[sum, sum_of_cubes], true);
    add("x1^2,x2^2", 2, 2, &[x_sq, y_sq], false);
    add("x1^2x2,x1x2^2", 3, 2, &[x2y, xy2], false);
    out
}

fn gap_lemmas() -> Result<String, String> {
    let mut c = Check::default();
    let limits = Limits::default();
    let max_q: u128 = 1 << 12;
    let mut reports = 0;
    for (label, inst, dep) in square_corpus() {
        c.ensure(
            is_dependent(&inst, &(0..inst.m()).collect::<Vec<_>>(), &limits).unwrap() == dep,
            format!("{label}: dependence label disagrees with is_dependent"),
        );
        let profile = inst.degree_profile();
        let (d, dmax) = (profile.product, profile.max as u128);
        let am = threshold(Mode::Am, inst.nvars, d, dmax);
        let coam = threshold(Mode::CoAm, inst.nvars, d, dmax);
        let p = inst.field.p() as u128;
        let mut j = 1;
        while p.pow(j as u32) <= max_q {
            let q = p.pow(j as u32);
            if q > am.min(coam) {
                let lifted = lift_to_qprime(&inst, j).unwrap();
                let r = fiber_stats(&lifted, limits.enumeration).unwrap();
                reports += 1;
                let mut gap_check = |applies: bool, check: algdep_core::protocol::gap::GapCheck| {
                    if applies {
                        c.ensure(
                            check.holds,
                            format!("{label} q'={q}: {} observed {} bound {}", check.statement, check.observed, check.bound),
                        );
                    }
                };
                if dep {
                    gap_check(q > am, r.large_preimage());
                    gap_check(q > coam, r.small_image());
                } else {
                    gap_check(q > am, r.small_preimage());
                    gap_check(q > coam, r.large_image());
                }
            }
            j += 1;
        }
    }
    c.finish(format!("{reports} exhaustive fiber reports, zero violations allowed"))
}

fn protocol_simulation() -> Result<String, String> {
    let mut c = Check::default();
    let mut corpus: Vec<(String, Instance, bool)> = square_corpus()
        .into_iter()
        .filter(|(label, inst, _)| {
            inst.field.p() == 5 && !label.contains("x1x2,x1+x2")
                || inst.field.p() == 2 && label.starts_with("x1+x2,x1^2")
        })
        .collect();
    corpus.push(("x1+x2 (m < n)/F5".into(), build(5, 1, 2, &[sum]), false));
    corpus.push(("x1,x1^2 (m > n)/F7".into(), fixture("parabola.inst"), true));

    let rounds = 64;
    let budget = 1 << 24;
    let mut good_seeds = 0;
    let mut misses = Vec::new();
    for seed in 0..100u64 {
        let mut all = true;
        for (idx, (label, inst, dep)) in corpus.iter().enumerate() {
            for mode in [Mode::Am, Mode::CoAm] {
                let mut rng = seeded(split_seed(seed, "acceptance-protocol", (idx * 2 + (mode == Mode::CoAm) as usize) as u64));
                let decided = match reduce_to_square(inst, &mut rng).unwrap() {
                    Squared::Dependent => true,
                    Squared::Square(sq) => {
                        let profile = sq.degree_profile();
                        let bound = threshold(mode, sq.nvars, profile.product, profile.max as u128);
                        let j = sq.field.extension_degree_for(bound + 1);
                        let lifted = lift_to_qprime(&sq, j).unwrap();
                        let params = ProtocolParams::new(&lifted, rounds).unwrap();
                        match mode {
                            Mode::Am => am_decide(&lifted, &params, budget, &mut rng).unwrap().dependent,
                            Mode::CoAm => coam_decide(&lifted, &params, budget, &mut rng).unwrap().dependent,
                        }
                    }
                };
                if decided != *dep {
                    all = false;
                    misses.push(format!("seed {seed} {label} {mode:?}"));
                }
            }
        }
        good_seeds += all as usize;
    }
    c.ensure(
        good_seeds >= 95,
        format!("only {good_seeds}/100 seeds agree on every instance ({})", misses.join(", ")),
    );

    let mut rng = seeded(3);
    let mut gaps = Vec::new();
    for m in [8u128, 32, 128, 512] {
        let bits = 20;
        let draw = |size: u128, rng: &mut algdep_core::rng::Rng| {
            let mut members = std::collections::BTreeSet::new();
            while (members.len() as u128) < size {
                members.insert(rng.gen_range(0..1u128 << bits));
            }
            ExplicitSet::new(bits, members)
        };
        let honest = draw(2 * m, &mut rng);
        let cheating = draw(m, &mut rng);
        let rate = |set: &ExplicitSet, rng: &mut algdep_core::rng::Rng| {
            (0..400).filter(|_| gs_round(set, m, 1, rng).accept).count() as f64 / 400.0
        };
        let (h, ch) = (rate(&honest, &mut rng), rate(&cheating, &mut rng));
        c.ensure(h - ch >= 0.1, format!("m={m}: honest {h:.3} vs cheating {ch:.3}"));
        gaps.push(format!("m={m}: {:.2}", h - ch));
    }
    c.finish(format!("{good_seeds}/100 seeds fully agree; GS gaps {}", gaps.join(", ")))
}

/// Oracle-feasible corpus: `m <= 4`, degree at most 3 over `F_2`, `F_3`, `F_7`.
fn oracle_corpus() -> Vec<(String, Instance)> {
    let mut out: Vec<(String, Instance)> = fixture_names(".inst")
        .into_iter()
        .map(|n| {
            let inst = fixture(&n);
            (n, inst)
        })
        .filter(|(_, inst)| {
            inst.m() <= 4 && [2, 3, 7].contains(&inst.field.p()) && inst.field.e() == 1 && inst.degree_profile().max <= 3
        })
        .collect();
    let mut rng = seeded(11);
    for p in [2u64, 3, 7] {
        let field = mk_field(p, 1).unwrap();
        for i in 0..12 {
            let m = 2 + i % 3;
            let n = 1 + i % 2;
            let circuits = (0..m).map(|_| random_low_degree(&field, n, 3, &mut rng)).collect();
            out.push((format!("random-{p}-{i}"), Instance::new(field.clone(), n, circuits)));
        }
    }
    out
}

fn random_reduction() -> Result<String, String> {
    let mut c = Check::default();
    let limits = Limits::default();
    let mut stressed = 0;
    let mut worst = 0.0f64;
    let mut stress_corpus: Vec<(String, Instance)> = vec![
        ("example1".into(), fixture("example1.inst")),
        ("example2".into(), fixture("example2.inst")),
    ];
    let mut rng = seeded(5);
    for p in [2u64, 3, 7] {
        let field = mk_field(p, 1).unwrap();
        let mut found = 0;
        while found < 2 {
            let circuits = (0..4).map(|_| random_low_degree(&field, 2, 2, &mut rng)).collect();
            let inst = Instance::new(field.clone(), 2, circuits);
            let nonconstant = inst.expand_all(1000).unwrap().iter().all(|f| f.total_degree() >= 1);
            if nonconstant && trdeg(&inst, &limits).is_ok_and(|t| t.k == 2) {
                stress_corpus.push((format!("random-{p}-{found}"), inst));
                found += 1;
            }
        }
    }
    for (label, inst) in &stress_corpus {
        match reduction_stress(inst, 200, 17, &limits) {
            Ok(Some(r)) => {
                stressed += 1;
                worst = worst.max(r.rate() / r.delta);
                c.ensure(
                    r.rate() <= r.delta,
                    format!("{label}: disagreement {:.3} > delta {:.3}", r.rate(), r.delta),
                );
            }
            Ok(None) => c.ensure(false, format!("{label}: no reduction applies")),
            Err(e) => c.ensure(false, format!("{label}: {e}")),
        }
    }

    let mut agreed = 0;
    let mut skipped = 0;
    for (label, inst) in oracle_corpus() {
        let oracle = match ann_at_zero_direct(&inst, &limits) {
            Ok(v) => v,
            Err(algdep_core::Error::ResourceLimit(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => {
                c.ensure(false, format!("{label}: oracle failed: {e}"));
                continue;
            }
        };
        let opts = ApsOptions {
            trials: 10,
            seed: split_seed(23, &label, 0),
            ..ApsOptions::default()
        };
        let v = aps_decide(&inst, &opts).unwrap();
        c.ensure(v.answer == oracle, format!("{label}: aps {} vs oracle {oracle}", v.answer));
        agreed += (v.answer == oracle) as usize;
    }
    c.finish(format!(
        "{stressed} instances x 200 seeds, worst rate/delta {worst:.2}; aps agrees with the oracle on {agreed} instances ({skipped} beyond caps)"
    ))
}

fn hitting_suite() -> Result<String, String> {
    let mut c = Check::default();
    let opts = ApsOptions::default();
    let linear = Family::parse(&fixture_text("linear.family")).unwrap();
    let f = linear.field.clone();
    let load = |name: &str| parse_points(&fixture_text(name), &f, 2).unwrap();

    let axis = HittingInstance::new(linear.clone(), 1, load("axis.pts")).unwrap();
    c.ensure(certify(&axis, &opts).unwrap().certified, "axis pair not certified");
    let diag = HittingInstance::new(linear.clone(), 1, load("diagonal.pts")).unwrap();
    c.ensure(!certify(&diag, &opts).unwrap().certified, "{(1,1)} certified");
    c.ensure(
        brute_counterexample(&diag, 1 << 16, 10_000).unwrap() == Some(vec![f.from_u64(1), f.from_u64(4)]),
        "counterexample for {(1,1)} is not (1,4)",
    );

    let mut linear_f3_text = fixture_text("linear.family");
    linear_f3_text = linear_f3_text.replace("field 5 1", "field 3 1");
    let families = [
        ("linear/F5", linear.clone(), 1u64, vec![(0, 2), (1, 10), (2, 20), (3, 2)]),
        ("linear/F3", Family::parse(&linear_f3_text).unwrap(), 1, vec![(1, 5), (2, 10), (3, 2)]),
        ("quadratic/F5", Family::parse(&fixture_text("quadratic.family")).unwrap(), 2, vec![(0, 1), (1, 5), (2, 5)]),
    ];
    let mut rng = seeded(29);
    let (mut certified, mut refuted) = (0, 0);
    for (label, fam, r, sizes) in &families {
        for &(h, count) in sizes {
            for _ in 0..count {
                let points = random_candidate(fam, h, &mut rng);
                let hi = HittingInstance::new(fam.clone(), *r, points).unwrap();
                let cert = certify(&hi, &opts).unwrap().certified;
                let ce = brute_counterexample(&hi, 1 << 16, 10_000).unwrap();
                c.ensure(!(cert && ce.is_some()), format!("{label} h={h}: certified set has a counterexample"));
                certified += cert as usize;
                refuted += ce.is_some() as usize;
            }
        }
    }

    let mut rng = seeded(31);
    let mut premise = 0;
    for i in 0..1000 {
        let (p, e, r) = [(5u64, 1usize, 3u64), (7, 1, 2), (3, 2, 1), (2, 3, 6), (5, 1, 1)][i % 5];
        let base = mk_field(p, e).unwrap();
        let roots = roots_of_unity(&base, r + 1).unwrap();
        let field = &roots.field;
        let a = match rng.gen_range(0..3) {
            0 => {
                let z = roots.roots[rng.gen_range(0..roots.roots.len())];
                let tail = (1..4).map(|k| (k, field.sample(&mut rng)));
                LaurentPoly::from_terms(std::iter::once((0, z)).chain(tail), field)
            }
            1 => {
                let z = roots.roots[rng.gen_range(0..roots.roots.len())];
                LaurentPoly::from_terms([(0, z), (-1, field.sample(&mut rng)), (2, field.sample(&mut rng))], field)
            }
            _ => LaurentPoly::from_terms((-2..3).map(|k| (k, field.sample(&mut rng))), field),
        };
        let shifted = a.pow(r + 1, field).sub(&LaurentPoly::constant(field.one()), field);
        if shifted.in_eps_ideal() {
            premise += 1;
            let forced = a
                .eps_zero_value()
                .map(|v| field.pow(v, (r + 1) as u128) == field.one())
                .unwrap_or(false);
            c.ensure(forced, format!("sample {i}: eps^0 value is not a root of unity"));
        }
    }
    c.ensure(premise >= 300, format!("only {premise} samples satisfied the premise"));
    c.finish(format!(
        "{certified} certified and {refuted} refuted random candidates, never both; {premise}/1000 Laurent samples exercised the forcing step"
    ))
}

fn infrastructure() -> Result<String, String> {
    let mut c = Check::default();
    let start = Instant::now();
    for (p, e) in [(2u64, 2usize), (2, 3), (3, 2)] {
        let f = mk_field(p, e).unwrap();
        let els: Vec<_> = f.elements().collect();
        c.ensure(els.len() as u128 == f.order(), format!("F_{p}^{e} element count"));
        let q = f.order();
        for &a in &els {
            c.ensure(f.add(a, f.zero()) == a && f.mul(a, f.one()) == a, "identities");
            c.ensure(f.add(a, f.neg(a)) == f.zero(), "additive inverse");
            if !a.is_zero() {
                c.ensure(f.mul(a, f.inv(a).unwrap()) == f.one(), "multiplicative inverse");
            }
            c.ensure(f.pow(a, q) == a, format!("a^q != a in F_{p}^{e}"));
            for &b in &els {
                c.ensure(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), "commutativity");
                c.ensure(
                    f.pow(f.add(a, b), p as u128) == f.add(f.pow(a, p as u128), f.pow(b, p as u128)),
                    format!("Frobenius additivity in F_{p}^{e}"),
                );
                for &d in &els {
                    c.ensure(f.add(f.add(a, b), d) == f.add(a, f.add(b, d)), "additive associativity");
                    c.ensure(f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d)), "multiplicative associativity");
                    c.ensure(f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d)), "distributivity");
                }
            }
        }
        let mut images: Vec<_> = els.iter().map(|&a| f.pow(a, p as u128)).collect();
        images.sort();
        images.dedup();
        c.ensure(images.len() == els.len(), "Frobenius is not a bijection");
    }

    let f25 = mk_field(5, 2).unwrap();
    let ring = PolyRing::new(&f25, 2);
    let mut rng = seeded(37);
    let points: Vec<Vec<_>> = f25.elements().flat_map(|a| f25.elements().map(move |b| vec![a, b])).collect();
    for i in 0..24 {
        let circ = random_circuit(&f25, 2, 12, &mut rng);
        let expanded = circ.expand(&f25, 1 << 16).unwrap();
        let generic = circ.eval(&ring, &[ring.var(0), ring.var(1)]).unwrap();
        c.ensure(expanded == generic, format!("circuit {i}: expand differs from generic evaluation"));
        let agree = points
            .iter()
            .all(|pt| expanded.eval(pt, &f25).unwrap() == circ.eval(&f25, pt).unwrap());
        c.ensure(agree, format!("circuit {i}: expansion disagrees with evaluation on F_25^2"));
    }

    for name in fixture_names(".inst") {
        let inst = fixture(&name);
        c.ensure(Instance::parse(&inst.serialize()).unwrap() == inst, format!("{name} round trip"));
    }
    for name in fixture_names(".family") {
        let fam = Family::parse(&fixture_text(&name)).unwrap();
        c.ensure(Family::parse(&fam.serialize()).unwrap() == fam, format!("{name} round trip"));
    }
    for name in fixture_names(".wit") {
        let inst = fixture(&name.replace(".wit", ".inst"));
        let w = Witness::parse(&fixture_text(&name), &inst.field, inst.nvars).unwrap();
        c.ensure(
            Witness::parse(&w.serialize(&inst.field), &inst.field, inst.nvars).unwrap() == w,
            format!("{name} round trip"),
        );
    }
    let f5 = mk_field(5, 1).unwrap();
    for name in fixture_names(".pts") {
        let pts = parse_points(&fixture_text(&name), &f5, 2).unwrap();
        let text: String = pts.iter().map(|p| algdep_core::hitting::format_point(&f5, p) + "\n").collect();
        c.ensure(parse_points(&text, &f5, 2).unwrap() == pts, format!("{name} round trip"));
    }

    let run = || {
        let mut out = String::new();
        let v = aps_decide(&fixture("example1.inst"), &ApsOptions { seed: 41, ..ApsOptions::default() }).unwrap();
        out += &format!("{:?}|{:?}|{:?}\n", v.answer, v.route, v.seeds);
        let fam = Family::parse(&fixture_text("linear.family")).unwrap();
        let found = algdep_core::hitting::search(&fam, 1, 2, 10, 43, &ApsOptions::default()).unwrap();
        out += &format!("{found:?}\n");
        let inst = lift_to_qprime(&build(5, 1, 2, &[var0, shear]), 3).unwrap();
        let params = ProtocolParams::new(&inst, 16).unwrap();
        let d = am_decide(&inst, &params, 1 << 24, &mut seeded(47)).unwrap();
        out += &d.transcript.dump();
        out += &format!("{:?}\n", jacobian_rank(&fixture("circle_f101.inst"), &mut seeded(53), 3).unwrap());
        out += &format!("{:?}\n", reduction_stress(&fixture("example1.inst"), 5, 59, &Limits::default()).unwrap());
        out
    };
    c.ensure(run() == run(), "repeated runs with equal seeds differ");

    let took = start.elapsed();
    c.ensure(took <= Duration::from_secs(60), format!("took {took:.2?}"));
    c.finish(format!("{took:.2?}"))
}

type Criterion = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("golden examples", golden_examples),
        ("dependence corpus", dependence_corpus),
        ("gap lemmas", gap_lemmas),
        ("protocol simulation", protocol_simulation),
        ("random reduction", random_reduction),
        ("hitting-set toy suite", hitting_suite),
        ("infrastructure properties", infrastructure),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id} {name}: PASS ({took:.1?}) {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} {name}: FAIL ({took:.1?}) {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
