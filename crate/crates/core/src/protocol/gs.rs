//! Set lower-bound rounds with affine hashing over the two-element field.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rand::Rng;

/// A finite set of bit strings whose members come with checkable
/// certificates. `members` is what the (unbounded) prover searches.
pub trait CertifiedSet {
    /// Width of the member encoding.
    fn bit_len(&self) -> u32;
    /// `(member, certificate)` pairs.
    fn members(&self) -> &[(u128, u128)];
    fn verify(&self, member: u128, cert: u128) -> bool;
}

/// A set given by its member list; certificates are ignored.
#[derive(Clone, Debug)]
pub struct ExplicitSet {
    bits: u32,
    members: Vec<(u128, u128)>,
    lookup: HashSet<u128>,
}

impl ExplicitSet {
    pub fn new(bits: u32, members: impl IntoIterator<Item = u128>) -> Self {
        let mut lookup = HashSet::new();
        let members: Vec<(u128, u128)> = members
            .into_iter()
            .filter(|&x| lookup.insert(x))
            .map(|x| (x, 0))
            .collect();
        ExplicitSet {
            bits,
            members,
            lookup,
        }
    }
}

impl CertifiedSet for ExplicitSet {
    fn bit_len(&self) -> u32 {
        self.bits
    }
    fn members(&self) -> &[(u128, u128)] {
        &self.members
    }
    fn verify(&self, member: u128, _cert: u128) -> bool {
        self.lookup.contains(&member)
    }
}

/// `h(x) = Ax + b` over GF(2), with `A` stored column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHash {
    pub out_bits: u32,
    pub columns: Vec<u64>,
    pub offset: u64,
}

impl AffineHash {
    pub fn sample<R: Rng + ?Sized>(in_bits: u32, out_bits: u32, rng: &mut R) -> Self {
        assert!(out_bits <= 64);
        let mask = if out_bits == 64 { u64::MAX } else { (1u64 << out_bits) - 1 };
        AffineHash {
            out_bits,
            columns: (0..in_bits).map(|_| rng.gen::<u64>() & mask).collect(),
            offset: rng.gen::<u64>() & mask,
        }
    }

    /// `A` restricted to the columns `from..from + bits`, applied to `x`.
    fn linear_part(&self, x: u128, from: usize, bits: u32) -> u64 {
        let mut acc = 0;
        let mut rest = x;
        let mut j = 0;
        while rest != 0 && j < bits as usize {
            if rest & 1 == 1 {
                acc ^= self.columns[from + j];
            }
            rest >>= 1;
            j += 1;
        }
        acc
    }

    /// Hash of the concatenation of `parts`, each `bits` wide.
    pub fn apply(&self, parts: &[u128], bits: u32) -> u64 {
        parts
            .iter()
            .enumerate()
            .fold(self.offset, |acc, (i, &x)| acc ^ self.linear_part(x, i * bits as usize, bits))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Response {
    pub points: Vec<u128>,
    pub certs: Vec<u128>,
}

/// One verifier challenge and the prover's answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub hash: AffineHash,
    pub response: Option<Response>,
    pub accept: bool,
}

impl Round {
    /// Re-runs the verifier's check on the recorded data.
    pub fn recheck<S: CertifiedSet + ?Sized>(&self, set: &S) -> bool {
        match &self.response {
            None => false,
            Some(r) => {
                self.hash.apply(&r.points, set.bit_len()) == 0
                    && r.points.iter().zip(&r.certs).all(|(&x, &c)| set.verify(x, c))
            }
        }
    }

    pub fn describe(&self) -> String {
        let mut out = format!("l={} b={:x} A=", self.hash.out_bits, self.hash.offset);
        for (i, c) in self.hash.columns.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{c:x}").unwrap();
        }
        match &self.response {
            None => out.push_str(" response=none"),
            Some(r) => {
                out.push_str(" response=");
                for (i, (x, c)) in r.points.iter().zip(&r.certs).enumerate() {
                    if i > 0 {
                        out.push('|');
                    }
                    write!(out, "{x:x}/{c:x}").unwrap();
                }
            }
        }
        write!(out, " accept={}", self.accept).unwrap();
        out
    }
}

/// Output length `ceil(log2(4 m))`.
pub fn hash_bits(m: u128) -> u32 {
    let target = m.max(1).saturating_mul(4);
    let mut l = 0;
    while l < 127 && (1u128 << l) < target {
        l += 1;
    }
    l
}

/// Brute-force prover: some tuple in `S^copies` hashing to zero.
fn prove<S: CertifiedSet + ?Sized>(set: &S, hash: &AffineHash, copies: usize) -> Option<Response> {
    let bits = set.bit_len();
    let members = set.members();
    match copies {
        1 => members
            .iter()
            .find(|(x, _)| hash.apply(&[*x], bits) == 0)
            .map(|&(x, c)| Response {
                points: vec![x],
                certs: vec![c],
            }),
        2 => {
            // Meet in the middle: A1 x + b = A2 y.
            let mut right: HashMap<u64, usize> = HashMap::with_capacity(members.len());
            for (i, &(y, _)) in members.iter().enumerate() {
                right.entry(hash.linear_part(y, bits as usize, bits)).or_insert(i);
            }
            members.iter().find_map(|&(x, cx)| {
                let key = hash.offset ^ hash.linear_part(x, 0, bits);
                right.get(&key).map(|&j| Response {
                    points: vec![x, members[j].0],
                    certs: vec![cx, members[j].1],
                })
            })
        }
        _ => unimplemented!("only one or two copies"),
    }
}

/// One round on `S^copies` against the bound `m` on its size.
pub fn gs_round<S: CertifiedSet + ?Sized, R: Rng + ?Sized>(
    set: &S,
    m: u128,
    copies: usize,
    rng: &mut R,
) -> Round {
    let in_bits = set.bit_len() * copies as u32;
    let hash = AffineHash::sample(in_bits, hash_len(m, copies), rng);
    let response = prove(set, &hash, copies);
    let mut round = Round {
        hash,
        response,
        accept: false,
    };
    round.accept = round.recheck(set);
    round
}

/// Guaranteed rate for sets of size at least `4m` (`2m` for a single copy)
/// and maximal rate for sets of size at most `m`, for hash range `2^l`.
fn rates(m: u128, copies: usize, l: u32) -> (f64, f64) {
    let range = (1u128 << l) as f64;
    let large = if copies == 1 { 2.0 } else { 4.0 } * m as f64;
    let x = (large / range).min(1.0);
    (x - x * x / 2.0, (m as f64 / range).min(1.0))
}

/// Distance from the midpoint to the nearer rate, in standard deviations.
fn separation(honest: f64, cheating: f64) -> f64 {
    let mid = (honest + cheating) / 2.0;
    let sd = |p: f64| (p * (1.0 - p)).sqrt().max(f64::MIN_POSITIVE);
    ((mid - cheating) / sd(cheating)).min((honest - mid) / sd(honest))
}

/// Hash length used by [`gs_round`]: `ceil(log2(4m))` for a single copy;
/// for two copies, that or one more bit, whichever separates the two
/// rates better.
pub fn hash_len(m: u128, copies: usize) -> u32 {
    let base = hash_bits(m);
    if copies == 1 || base >= 63 {
        return base;
    }
    let score = |l| {
        let (h, c) = rates(m, copies, l);
        separation(h, c)
    };
    if score(base + 1) > score(base) {
        base + 1
    } else {
        base
    }
}

/// Midpoint between the honest and cheating rates at [`hash_len`].
pub fn acceptance_threshold(m: u128, copies: usize) -> f64 {
    let (honest, cheating) = rates(m, copies, hash_len(m, copies));
    (honest + cheating) / 2.0
}
