//! Prime fields `F_p` and extensions `F_{p^e}`.
//!
//! An element is stored as its coefficient vector over `F_p` packed into a
//! single base-`p` integer (`c0 + c1 p + ... + c_{e-1} p^{e-1}`), so equality
//! is structural and elements are `Copy`. Extension fields with at most
//! 2^16 elements carry Zech-logarithm tables; larger ones fall back to
//! schoolbook arithmetic modulo the defining polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::upoly::UPoly;

const MAX_PRIME_BITS: u32 = 61;
const TABLE_LIMIT: u128 = 1 << 16;
const NO_LOG: u32 = u32::MAX;

/// Characteristic, degree and defining polynomial of a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    pub p: u64,
    pub e: usize,
    /// Monic defining polynomial, low-to-high, length `e + 1`.
    pub modulus: Vec<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u128);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Base-`p` packed coefficient vector.
    pub fn packed(self) -> u128 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
    zech: Vec<u32>,
    neg_shift: u32,
}

struct Inner {
    desc: FieldDesc,
    order: u128,
    tables: Option<Tables>,
}

/// Shared handle to a finite field; cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.e() == other.e())
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e() == 1 {
            write!(f, "F_{}", self.p())
        } else {
            write!(f, "F_{}^{}", self.p(), self.e())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Primality by trial division, with a deterministic Miller-Rabin above 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    if n < (1 << 32) {
        let mut d = 41u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        return true;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn registry() -> &'static Mutex<HashMap<(u64, usize), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds `F_{p^e}` with the first irreducible monic modulus in base-`p`
/// order (coefficients `c0..c_{e-1}` read with `c0` least significant).
pub fn mk_field(p: u64, e: usize) -> Result<Field> {
    if e == 0 {
        return Err(Error::Precondition("extension degree must be at least 1".into()));
    }
    if p >= 1 << MAX_PRIME_BITS {
        return Err(Error::TooLarge(format!("prime {p} exceeds {MAX_PRIME_BITS} bits")));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = (p as u128)
        .checked_pow(e as u32)
        .filter(|_| e <= 128)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{e} does not fit in 128 bits")))?;
    if let Some(f) = registry().lock().unwrap().get(&(p, e)) {
        return Ok(f.clone());
    }
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        first_irreducible(p, e)
    };
    let mut inner = Inner {
        desc: FieldDesc { p, e, modulus },
        order,
        tables: None,
    };
    if e > 1 && order <= TABLE_LIMIT {
        inner.tables = Some(build_tables(&inner));
    }
    let field = Field(Arc::new(inner));
    registry()
        .lock()
        .unwrap()
        .entry((p, e))
        .or_insert(field.clone());
    Ok(field)
}

fn first_irreducible(p: u64, e: usize) -> Vec<u64> {
    let prime = mk_field(p, 1).expect("prime field");
    let count = (p as u128).pow(e as u32);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(e + 1);
        let mut v = code;
        for _ in 0..e {
            coeffs.push((v % p as u128) as u64);
            v /= p as u128;
        }
        coeffs.push(1);
        let poly = UPoly::new(coeffs.iter().map(|&c| prime.from_u64(c)).collect(), &prime);
        if poly.is_irreducible(&prime) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.order;
    let n = (q - 1) as usize;
    let factors = prime_factors(q - 1);
    let one = FieldElement(1);
    let generator = (1..q)
        .map(FieldElement)
        .find(|&g| {
            factors
                .iter()
                .all(|&r| slow_pow(inner, g, (q - 1) / r) != one)
        })
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; n];
    let mut log = vec![NO_LOG; q as usize];
    let mut cur = one;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = cur.0 as u32;
        log[cur.0 as usize] = i as u32;
        cur = slow_mul(inner, cur, generator);
    }
    let zech = (0..n)
        .map(|k| {
            let s = slow_add(inner, one, FieldElement(exp[k] as u128));
            if s.is_zero() {
                NO_LOG
            } else {
                log[s.0 as usize]
            }
        })
        .collect();
    let neg_shift = if inner.desc.p == 2 { 0 } else { (n / 2) as u32 };
    Tables {
        log,
        exp,
        zech,
        neg_shift,
    }
}

fn digits(inner: &Inner, a: FieldElement) -> Vec<u64> {
    let p = inner.desc.p as u128;
    let mut v = a.0;
    (0..inner.desc.e)
        .map(|_| {
            let d = (v % p) as u64;
            v /= p;
            d
        })
        .collect()
}

fn pack(inner: &Inner, ds: &[u64]) -> FieldElement {
    let p = inner.desc.p as u128;
    FieldElement(ds.iter().rev().fold(0u128, |acc, &d| acc * p + d as u128))
}

fn slow_add(inner: &Inner, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = inner.desc.p;
    if p == 2 {
        return FieldElement(a.0 ^ b.0);
    }
    let (da, db) = (digits(inner, a), digits(inner, b));
    let s: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
    pack(inner, &s)
}

fn slow_neg(inner: &Inner, a: FieldElement) -> FieldElement {
    let p = inner.desc.p;
    if p == 2 {
        return a;
    }
    let s: Vec<u64> = digits(inner, a)
        .iter()
        .map(|&x| if x == 0 { 0 } else { p - x })
        .collect();
    pack(inner, &s)
}

fn slow_mul(inner: &Inner, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = inner.desc.p as u128;
    let e = inner.desc.e;
    if e == 1 {
        return FieldElement(a.0 * b.0 % p);
    }
    let (da, db) = (digits(inner, a), digits(inner, b));
    let mut prod = vec![0u128; 2 * e - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
        }
    }
    let modulus = &inner.desc.modulus;
    for top in (e..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().take(e).enumerate() {
            let idx = top - e + j;
            prod[idx] = (prod[idx] + (p - c) * m as u128) % p;
        }
        prod[top] = 0;
    }
    let ds: Vec<u64> = prod.iter().take(e).map(|&x| x as u64).collect();
    pack(inner, &ds)
}

fn slow_pow(inner: &Inner, a: FieldElement, mut n: u128) -> FieldElement {
    let mut base = a;
    let mut acc = FieldElement(1);
    while n > 0 {
        if n & 1 == 1 {
            acc = slow_mul(inner, acc, base);
        }
        base = slow_mul(inner, base, base);
        n >>= 1;
    }
    acc
}

impl Field {
    pub fn desc(&self) -> &FieldDesc {
        &self.0.desc
    }

    pub fn p(&self) -> u64 {
        self.0.desc.p
    }

    pub fn e(&self) -> usize {
        self.0.desc.e
    }

    /// Number of elements `q = p^e`.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Element with packed value `v`; rejects `v >= q`.
    pub fn element(&self, v: u128) -> Result<FieldElement> {
        if v >= self.order() {
            return Err(Error::FieldMismatch(format!("{v} is not an element of {self}")));
        }
        Ok(FieldElement(v))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, v: i64) -> FieldElement {
        let p = self.p() as i128;
        FieldElement(((v as i128 % p + p) % p) as u128)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        FieldElement((v % self.p()) as u128)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() != self.e() {
            return Err(Error::FieldMismatch(format!(
                "{} coefficients given for {self}",
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::FieldMismatch(format!("coefficient {c} is not below {}", self.p())));
        }
        Ok(pack(&self.0, coeffs))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        digits(&self.0, a)
    }

    /// All elements in packed order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.desc.e == 1 {
            let p = inner.desc.p as u128;
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        if inner.desc.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        match &inner.tables {
            Some(t) => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let n = t.exp.len() as u64;
                let la = t.log[a.0 as usize] as u64;
                let lb = t.log[b.0 as usize] as u64;
                let z = t.zech[((lb + n - la) % n) as usize];
                if z == NO_LOG {
                    FieldElement::ZERO
                } else {
                    FieldElement(t.exp[((la + z as u64) % n) as usize] as u128)
                }
            }
            None => slow_add(inner, a, b),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if a.0 == 0 {
            return a;
        }
        if inner.desc.e == 1 {
            return FieldElement(inner.desc.p as u128 - a.0);
        }
        match &inner.tables {
            Some(t) => {
                let n = t.exp.len() as u64;
                let l = t.log[a.0 as usize] as u64;
                FieldElement(t.exp[((l + t.neg_shift as u64) % n) as usize] as u128)
            }
            None => slow_neg(inner, a),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.0;
        if inner.desc.e == 1 {
            let p = inner.desc.p;
            if p < 1 << 32 {
                return FieldElement(((a.0 as u64 * b.0 as u64) % p) as u128);
            }
            return FieldElement(a.0 * b.0 % p as u128);
        }
        match &inner.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return FieldElement::ZERO;
                }
                let n = t.exp.len();
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                FieldElement(t.exp[if s >= n { s - n } else { s }] as u128)
            }
            None => slow_mul(inner, a, b),
        }
    }

    pub fn pow(&self, a: FieldElement, n: u128) -> FieldElement {
        if let Some(t) = &self.0.tables {
            if n == 0 {
                return self.one();
            }
            if a.0 == 0 {
                return a;
            }
            let m = t.exp.len() as u128;
            let l = t.log[a.0 as usize] as u128;
            return FieldElement(t.exp[((l * (n % m)) % m) as usize] as u128);
        }
        let mut base = a;
        let mut acc = self.one();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let n = t.exp.len();
            let l = t.log[a.0 as usize] as usize;
            return Ok(FieldElement(t.exp[(n - l) % n] as u128));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Uniform element; deterministic for a given generator state.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.order()))
    }

    /// `c0,c1,...` (or a single integer over a prime field).
    pub fn format_element(&self, a: FieldElement) -> String {
        if self.e() == 1 {
            return a.0.to_string();
        }
        self.coeffs(a)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let coeffs = text
            .split(',')
            .map(|s| {
                s.trim().parse::<u64>().map_err(|_| {
                    Error::FieldMismatch(format!("`{text}` is not a constant of {self}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    /// `F_{p^{e j}}` together with the embedding of `self` into it.
    pub fn extension(&self, j: usize) -> Result<(Field, Embedding)> {
        let big = mk_field(self.p(), self.e() * j)?;
        let emb = Embedding::new(self, &big)?;
        Ok((big, emb))
    }

    /// Smallest extension degree `j` with `q^j >= min_size`.
    pub fn extension_degree_for(&self, min_size: u128) -> usize {
        let q = self.order();
        let mut j = 1;
        let mut size = q;
        while size < min_size {
            size = size.saturating_mul(q);
            j += 1;
        }
        j
    }
}

/// Field embedding `F_{p^a} -> F_{p^b}` with `a | b`, fixed by sending the
/// generator of the small field to the least (packed) root of its modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub from: Field,
    pub to: Field,
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(from: &Field, to: &Field) -> Result<Self> {
        if from.p() != to.p() || !to.e().is_multiple_of(from.e()) {
            return Err(Error::FieldMismatch(format!("{from} does not embed in {to}")));
        }
        let powers = if from.e() == 1 {
            vec![to.one()]
        } else {
            let modulus = UPoly::new(
                from.desc().modulus.iter().map(|&c| to.from_u64(c)).collect(),
                to,
            );
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let theta = modulus
                .roots(to, &mut rng)
                .into_iter()
                .min()
                .ok_or_else(|| Error::FieldMismatch(format!("no root of modulus in {to}")))?;
            let mut pw = Vec::with_capacity(from.e());
            let mut cur = to.one();
            for _ in 0..from.e() {
                pw.push(cur);
                cur = to.mul(cur, theta);
            }
            pw
        };
        Ok(Embedding {
            from: from.clone(),
            to: to.clone(),
            powers,
        })
    }

    pub fn identity(field: &Field) -> Self {
        Embedding {
            from: field.clone(),
            to: field.clone(),
            powers: (0..field.e())
                .map(|i| {
                    FieldElement((field.p() as u128).pow(i as u32))
                })
                .collect(),
        }
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        if self.from.e() == 1 {
            return a;
        }
        if self.from == self.to {
            return a;
        }
        let to = &self.to;
        self.from
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(to.zero(), |acc, (&c, &t)| {
                if c == 0 {
                    acc
                } else {
                    to.add(acc, to.mul(to.from_u64(c), t))
                }
            })
    }
}

/// The `k`-th roots of unity, living in the smallest extension that has them.
#[derive(Clone, Debug)]
pub struct RootsOfUnity {
    pub field: Field,
    pub embedding: Embedding,
    pub roots: Vec<FieldElement>,
}

pub fn roots_of_unity(field: &Field, k: u64) -> Result<RootsOfUnity> {
    if k == 0 {
        return Err(Error::Precondition("order must be positive".into()));
    }
    if k.is_multiple_of(field.p()) {
        return Err(Error::CharDividesOrder { p: field.p(), order: k });
    }
    let q_mod = field.order() % k as u128;
    let mut j = 1usize;
    let mut acc = q_mod;
    while !(acc + k as u128 - 1).is_multiple_of(k as u128) {
        acc = acc * q_mod % k as u128;
        j += 1;
    }
    let (big, embedding) = field.extension(j)?;
    let cofactor = (big.order() - 1) / k as u128;
    let primes = prime_factors(k as u128);
    let gen = big
        .elements()
        .skip(1)
        .map(|x| big.pow(x, cofactor))
        .find(|&y| primes.iter().all(|&r| big.pow(y, k as u128 / r) != big.one()))
        .expect("cyclic group contains an element of order k");
    let mut roots: Vec<FieldElement> = (0..k)
        .scan(big.one(), |cur, _| {
            let out = *cur;
            *cur = big.mul(*cur, gen);
            Some(out)
        })
        .collect();
    roots.sort();
    Ok(RootsOfUnity {
        field: big,
        embedding,
        roots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = mk_field(7, 1).unwrap();
        assert_eq!(f.desc().modulus, vec![0, 1]);
        assert_eq!(f.add(f.from_u64(3), f.from_u64(5)), f.from_u64(1));
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.mul(f.from_u64(3), f.inv(f.from_u64(3)).unwrap()), f.one());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(mk_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(mk_field(2, 200), Err(Error::TooLarge(_))));
        assert!(matches!(mk_field((1 << 61) + 1, 1), Err(Error::TooLarge(_))));
    }

    fn brute_first_irreducible(p: u64, e: usize) -> Vec<u64> {
        // Enumerate monic polynomials in base-p order and test by root search
        // (valid for e <= 3, where reducible means having a linear factor).
        let count = p.pow(e as u32);
        for code in 0..count {
            let mut coeffs = Vec::new();
            let mut v = code;
            for _ in 0..e {
                coeffs.push(v % p);
                v /= p;
            }
            coeffs.push(1);
            let has_root = (0..p).any(|x| {
                coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0
            });
            if !has_root {
                return coeffs;
            }
        }
        unreachable!()
    }

    #[test]
    fn canonical_modulus_matches_root_search() {
        assert_eq!(mk_field(2, 2).unwrap().desc().modulus, vec![1, 1, 1]);
        for (p, e) in [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (7, 3)] {
            assert_eq!(mk_field(p, e).unwrap().desc().modulus, brute_first_irreducible(p, e));
        }
    }

    #[test]
    fn f4_product_of_t_and_t_plus_one() {
        let f = mk_field(2, 2).unwrap();
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let t1 = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.mul(t, t1), f.one());
    }

    #[test]
    fn table_and_schoolbook_agree() {
        for (p, e) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = mk_field(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, b), slow_mul(&f.0, a, b));
                    assert_eq!(f.add(a, b), slow_add(&f.0, a, b));
                }
                assert_eq!(f.neg(a), slow_neg(&f.0, a));
            }
        }
    }

    #[test]
    fn large_extension_uses_schoolbook() {
        let f = mk_field(3, 12).unwrap();
        assert!(f.0.tables.is_none());
        let a = f.from_coeffs(&[1, 2, 0, 1, 0, 0, 2, 0, 0, 1, 1, 2]).unwrap();
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), f.one());
        assert_eq!(f.pow(a, f.order() - 1), f.one());
    }

    #[test]
    fn roots_of_unity_small_cases() {
        let f7 = mk_field(7, 1).unwrap();
        let r = roots_of_unity(&f7, 3).unwrap();
        let brute: Vec<_> = f7
            .elements()
            .filter(|&x| f7.pow(x, 3) == f7.one())
            .collect();
        assert_eq!(r.roots, brute);
        assert_eq!(r.roots, vec![f7.from_u64(1), f7.from_u64(2), f7.from_u64(4)]);
        assert_eq!(roots_of_unity(&f7, 1).unwrap().roots, vec![f7.one()]);
        let f2 = mk_field(2, 1).unwrap();
        assert_eq!(
            roots_of_unity(&f2, 2).unwrap_err(),
            Error::CharDividesOrder { p: 2, order: 2 }
        );
        // 5th roots over F_2 live in F_16.
        let r5 = roots_of_unity(&f2, 5).unwrap();
        assert_eq!(r5.field.e(), 4);
        assert_eq!(r5.roots.len(), 5);
        for &z in &r5.roots {
            assert_eq!(r5.field.pow(z, 5), r5.field.one());
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = mk_field(2, 2).unwrap();
        let (big, emb) = small.extension(3).unwrap();
        assert_eq!(big.e(), 6);
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.map(small.mul(a, b)), big.mul(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(small.add(a, b)), big.add(emb.map(a), emb.map(b)));
            }
        }
        let small = mk_field(3, 2).unwrap();
        let (big, emb) = small.extension(2).unwrap();
        let images: std::collections::BTreeSet<_> = small.elements().map(|a| emb.map(a)).collect();
        assert_eq!(images.len(), 9);
        for a in small.elements() {
            assert_eq!(big.pow(emb.map(a), 9), emb.map(a));
        }
    }

    #[test]
    fn element_text_round_trip() {
        let f = mk_field(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.parse_element(&f.format_element(a)).unwrap(), a);
        }
        assert!(f.parse_element("1").is_err());
        assert!(f.parse_element("3,0").is_err());
    }
}
