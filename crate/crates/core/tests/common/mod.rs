#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;

use algdep_core::annihilator::Analyzer;
use algdep_core::linalg::rank;
use algdep_core::poly::monomials_up_to;
use algdep_core::{mk_field, AnnOptions, Circuit, CircuitBuilder, Field, Instance, Polynomial};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture(name: &str) -> Instance {
    Instance::parse(&fixture_text(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_names(ext: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut out: Vec<String> = std::fs::read_dir(dir)
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(ext))
        .collect();
    out.sort();
    out
}

pub type Gadget = fn(&mut CircuitBuilder, &Field) -> usize;

/// Instance from builder closures, one per circuit.
pub fn build(p: u64, e: usize, nvars: usize, parts: &[Gadget]) -> Instance {
    let field = mk_field(p, e).unwrap();
    let circuits = parts
        .iter()
        .map(|g| {
            let mut b = CircuitBuilder::new(nvars);
            let out = g(&mut b, &field);
            b.finish(out)
        })
        .collect();
    Instance::new(field, nvars, circuits)
}

/// A random circuit with exactly `gates` gates; operands are drawn from
/// earlier gates.
pub fn random_circuit<R: Rng>(field: &Field, nvars: usize, gates: usize, rng: &mut R) -> Circuit {
    let mut b = CircuitBuilder::new(nvars);
    let mut last = b.var(rng.gen_range(0..nvars));
    while b.len() < gates {
        let roll = rng.gen_range(0..10);
        let n = b.len();
        last = match roll {
            0 => b.var(rng.gen_range(0..nvars)),
            1 => b.constant(field.sample(rng)),
            2..=5 => b.add(rng.gen_range(0..n), rng.gen_range(0..n)),
            _ => b.mul(rng.gen_range(0..n), rng.gen_range(0..n)),
        };
    }
    b.finish(last)
}

/// A random nonconstant circuit of syntactic degree at most `max_deg`.
pub fn random_low_degree<R: Rng>(field: &Field, nvars: usize, max_deg: u64, rng: &mut R) -> Circuit {
    loop {
        let c = random_circuit(field, nvars, rng.gen_range(3..9), rng);
        let d = c.syntactic_degree();
        if (1..=max_deg).contains(&d) {
            return c;
        }
    }
}

/// Dependence by dense rank of the full coefficient matrix of
/// `{f^a : |a| <= bound}`; shares no code with the incremental reducer.
pub fn dense_is_dependent(polys: &[Polynomial], field: &Field, bound: u64) -> bool {
    let m = polys.len();
    if m == 0 {
        return false;
    }
    let nvars = polys[0].nvars();
    let exps = monomials_up_to(m, bound, 1 << 20).unwrap();
    let mut columns = Vec::with_capacity(exps.len());
    for e in &exps {
        let mut acc = Polynomial::constant(nvars, field.one());
        for (i, &k) in e.exponents().iter().enumerate() {
            acc = acc.mul(&polys[i].pow(k as u64, field), field).unwrap();
        }
        columns.push(acc);
    }
    let mut index = std::collections::HashMap::new();
    for c in &columns {
        for (mono, _) in c.terms() {
            let next = index.len();
            index.entry(mono.clone()).or_insert(next);
        }
    }
    let rows: Vec<Vec<_>> = columns
        .iter()
        .map(|c| {
            let mut row = vec![field.zero(); index.len()];
            for (mono, &v) in c.terms() {
                row[index[mono]] = v;
            }
            row
        })
        .collect();
    rank(rows, field) < columns.len()
}

/// Largest independent subset size by trying every subset.
pub fn brute_trdeg(inst: &Instance) -> usize {
    let polys = inst.expand_all(1 << 16).unwrap();
    let degrees = inst.degree_profile().degrees;
    let m = polys.len();
    let mut best = 0;
    for mask in 0u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if idx.len() <= best || idx.len() > inst.nvars {
            continue;
        }
        let sub: Vec<Polynomial> = idx.iter().map(|&i| polys[i].clone()).collect();
        let bound = idx.iter().map(|&i| degrees[i].max(1)).product();
        if !dense_is_dependent(&sub, &inst.field, bound) {
            best = idx.len();
        }
    }
    best
}

pub fn analyzer(inst: &Instance) -> Analyzer<'_> {
    Analyzer::new(inst, AnnOptions::default()).unwrap()
}
