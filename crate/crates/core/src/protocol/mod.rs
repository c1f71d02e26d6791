//! Fiber-counting gap statistics and simulated Arthur-Merlin protocols for
//! algebraic dependence of a square polynomial map over `F_{q'}`.

pub mod gap;
pub mod gs;

use std::fmt::Write as _;

use rand::Rng;

use crate::circuit::{Circuit, CircuitBuilder, Instance};
use crate::error::{Error, Result};
use crate::field::FieldElement;
use gap::{decode_point, image_codes, GapReport};
use gs::{acceptance_threshold, gs_round, CertifiedSet, Round};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Am,
    CoAm,
}

/// Field-size threshold for the given protocol: `4nDD' + 4kD` with `k = 2D`
/// (AM) or `D(2D + nD')` (coAM). `q'` must exceed it.
pub fn threshold(mode: Mode, n: usize, d: u128, dmax: u128) -> u128 {
    let n = n as u128;
    match mode {
        Mode::Am => 4 * n * d * dmax + 4 * (2 * d) * d,
        Mode::CoAm => d * (2 * d + n * dmax),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolParams {
    pub qprime: u128,
    pub n: usize,
    /// Product of syntactic degrees.
    pub d: u128,
    /// Maximum syntactic degree.
    pub dmax: u128,
    /// Preimage threshold `2D`.
    pub k: u128,
    pub rounds: usize,
}

impl ProtocolParams {
    /// Parameters for an instance already lifted to `F_{q'}`.
    pub fn new(inst: &Instance, rounds: usize) -> Result<Self> {
        let profile = inst.degree_profile();
        if let Some(i) = profile.degrees.iter().position(|&d| d == 0) {
            return Err(Error::ConstantCircuit(inst.circuits[i].name.clone()));
        }
        Ok(ProtocolParams {
            qprime: inst.field.order(),
            n: inst.nvars,
            d: profile.product,
            dmax: profile.max as u128,
            k: 2 * profile.product,
            rounds,
        })
    }

    pub fn threshold(&self, mode: Mode) -> u128 {
        threshold(mode, self.n, self.d, self.dmax)
    }

    pub fn require(&self, mode: Mode) -> Result<()> {
        let bound = self.threshold(mode);
        if self.qprime > bound {
            Ok(())
        } else {
            Err(Error::ThresholdViolation {
                qprime: self.qprime,
                bound,
            })
        }
    }
}

/// The instance over `F_{q^d}`.
pub fn lift_to_qprime(inst: &Instance, d: usize) -> Result<Instance> {
    if d <= 1 {
        Ok(inst.clone())
    } else {
        inst.extend(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapVerdict {
    ConsistentWithDependent,
    ConsistentWithIndependent,
    /// Neither side's bound holds; impossible above the threshold.
    Inconclusive,
}

impl std::fmt::Display for GapVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GapVerdict::ConsistentWithDependent => "consistent-with-dependent",
            GapVerdict::ConsistentWithIndependent => "consistent-with-independent",
            GapVerdict::Inconclusive => "inconclusive",
        })
    }
}

fn verdict(dependent_side: bool, independent_side: bool) -> GapVerdict {
    match (dependent_side, independent_side) {
        (true, false) => GapVerdict::ConsistentWithDependent,
        (false, true) => GapVerdict::ConsistentWithIndependent,
        _ => GapVerdict::Inconclusive,
    }
}

/// Compares the preimage-size distribution with the small- and
/// large-preimage bounds.
pub fn check_am_gap(report: &GapReport, params: &ProtocolParams) -> Result<GapVerdict> {
    params.require(Mode::Am)?;
    Ok(verdict(report.large_preimage().holds, report.small_preimage().holds))
}

/// Compares the image size with `D q'^(n-1)` and `2 D q'^(n-1)`.
pub fn check_coam_gap(report: &GapReport, params: &ProtocolParams) -> Result<GapVerdict> {
    params.require(Mode::CoAm)?;
    let unit = params.d * params.qprime.pow(params.n.saturating_sub(1) as u32);
    let im = report.image_size as u128;
    Ok(verdict(im <= unit, im > 2 * unit))
}

/// Outcome of shrinking the variable count to the number of inputs.
#[derive(Clone, Debug)]
pub enum Squared {
    /// More inputs than variables.
    Dependent,
    Square(Instance),
}

/// Makes `m = n`: shortcut for `m > n`, random linear restriction of the
/// variables for `m < n`.
pub fn reduce_to_square<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> Result<Squared> {
    let (m, n) = (inst.m(), inst.nvars);
    if m > n {
        return Ok(Squared::Dependent);
    }
    if m == n {
        return Ok(Squared::Square(inst.clone()));
    }
    let d = inst.degree_profile().product.max(1);
    let min_size = (64 * m as u128).saturating_mul(d).max(1 << 12);
    let j = inst.field.extension_degree_for(min_size);
    let lifted = lift_to_qprime(inst, j)?;
    let field = &lifted.field;
    let subs: Vec<Circuit> = (0..n)
        .map(|_| {
            let mut b = CircuitBuilder::new(m);
            let mut acc = None;
            for l in 0..m {
                let c = b.constant(field.sample(rng));
                let z = b.var(l);
                let t = b.mul(c, z);
                acc = Some(match acc {
                    None => t,
                    Some(a) => b.add(a, t),
                });
            }
            let out = acc.unwrap_or_else(|| b.constant(field.zero()));
            b.finish(out)
        })
        .collect();
    let circuits = lifted
        .circuits
        .iter()
        .map(|c| c.circuit.substitute(m, &subs))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Instance::new(field.clone(), m, circuits);
    for (dst, src) in out.circuits.iter_mut().zip(&inst.circuits) {
        dst.name = src.name.clone();
    }
    Ok(Squared::Square(out))
}

/// Rounds of one protocol run with the decision rule applied.
#[derive(Clone, Debug)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub accepted: usize,
    /// Fraction of accepting rounds separating the two cases.
    pub threshold: f64,
    /// Size bound the prover claims to exceed (on the squared set).
    pub claimed: u128,
}

impl Transcript {
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, r) in self.rounds.iter().enumerate() {
            writeln!(out, "round {}: {}", i + 1, r.describe()).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub dependent: bool,
    pub transcript: Transcript,
}

fn point_bits(inst: &Instance) -> u32 {
    let total = inst.field.order().pow(inst.nvars as u32);
    128 - (total - 1).max(1).leading_zeros()
}

fn image_of(inst: &Instance, point: &[FieldElement]) -> Option<u128> {
    let q = inst.field.order();
    let mut code = 0u128;
    let mut scale = 1u128;
    for c in &inst.circuits {
        code += c.circuit.eval(&inst.field, point).ok()?.packed() * scale;
        scale *= q;
    }
    Some(code)
}

/// `f^{-1}(b)`: membership is checked by evaluation.
struct Fiber<'a> {
    inst: &'a Instance,
    bits: u32,
    target: u128,
    members: Vec<(u128, u128)>,
}

impl CertifiedSet for Fiber<'_> {
    fn bit_len(&self) -> u32 {
        self.bits
    }
    fn members(&self) -> &[(u128, u128)] {
        &self.members
    }
    fn verify(&self, member: u128, _cert: u128) -> bool {
        member < 1 << self.bits
            && image_of(self.inst, &decode_point(member as u64, self.inst)) == Some(self.target)
    }
}

/// `Im(f)`: a member's certificate is one of its preimages.
struct Image<'a> {
    inst: &'a Instance,
    bits: u32,
    members: Vec<(u128, u128)>,
}

impl CertifiedSet for Image<'_> {
    fn bit_len(&self) -> u32 {
        self.bits
    }
    fn members(&self) -> &[(u128, u128)] {
        &self.members
    }
    fn verify(&self, member: u128, cert: u128) -> bool {
        cert < 1 << self.bits && image_of(self.inst, &decode_point(cert as u64, self.inst)) == Some(member)
    }
}

fn run_rounds<S: CertifiedSet, R: Rng + ?Sized>(
    set: &S,
    m: u128,
    rounds: usize,
    rng: &mut R,
) -> Transcript {
    // Squaring the set turns the factor-2 gap into a factor-4 gap.
    let squared = m.saturating_mul(m);
    let rounds: Vec<Round> = (0..rounds).map(|_| gs_round(set, squared, 2, rng)).collect();
    let accepted = rounds.iter().filter(|r| r.accept).count();
    Transcript {
        rounds,
        accepted,
        threshold: acceptance_threshold(squared, 2),
        claimed: squared,
    }
}

fn large(t: &Transcript) -> bool {
    t.accepted as f64 >= t.threshold * t.rounds.len() as f64
}

/// AM side: Arthur picks `a`, Merlin proves `|f^{-1}(f(a))| > 2D`.
pub fn am_decide<R: Rng + ?Sized>(
    inst: &Instance,
    params: &ProtocolParams,
    budget: u128,
    rng: &mut R,
) -> Result<Decision> {
    params.require(Mode::Am)?;
    let codes = image_codes(inst, budget)?;
    let a = rng.gen_range(0..codes.len());
    let target = codes[a];
    let set = Fiber {
        inst,
        bits: point_bits(inst),
        target: target as u128,
        members: codes
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == target)
            .map(|(i, _)| (i as u128, 0))
            .collect(),
    };
    let transcript = run_rounds(&set, params.d, params.rounds, rng);
    Ok(Decision {
        dependent: large(&transcript),
        transcript,
    })
}

/// coAM side: Merlin proves `|Im(f)| > 2 D q'^(n-1)`, certifying image
/// points by preimages.
pub fn coam_decide<R: Rng + ?Sized>(
    inst: &Instance,
    params: &ProtocolParams,
    budget: u128,
    rng: &mut R,
) -> Result<Decision> {
    params.require(Mode::CoAm)?;
    let codes = image_codes(inst, budget)?;
    let mut first: Vec<(u128, u128)> = codes
        .iter()
        .enumerate()
        .map(|(i, &c)| (c as u128, i as u128))
        .collect();
    first.sort_unstable();
    first.dedup_by_key(|e| e.0);
    let set = Image {
        inst,
        bits: point_bits(inst),
        members: first,
    };
    let m = params.d * params.qprime.pow(params.n.saturating_sub(1) as u32);
    let transcript = run_rounds(&set, m, params.rounds, rng);
    Ok(Decision {
        dependent: !large(&transcript),
        transcript,
    })
}
