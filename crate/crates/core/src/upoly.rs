//! Dense univariate polynomials over a [`Field`], used for modulus search and
//! for locating roots when embedding one field into another.

use rand::Rng;

use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    /// Low-to-high, no trailing zeros.
    coeffs: Vec<FieldElement>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<FieldElement>, _field: &Field) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn x(field: &Field) -> Self {
        UPoly::new(vec![field.zero(), field.one()], field)
    }

    pub fn constant(c: FieldElement, field: &Field) -> Self {
        UPoly::new(vec![c], field)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn eval(&self, x: FieldElement, field: &Field) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, other: &Self, field: &Field) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = field.zero();
        let c = (0..n)
            .map(|i| {
                field.add(
                    *self.coeffs.get(i).unwrap_or(&z),
                    *other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        UPoly::new(c, field)
    }

    pub fn sub(&self, other: &Self, field: &Field) -> Self {
        let neg = UPoly::new(other.coeffs.iter().map(|&c| field.neg(c)).collect(), field);
        self.add(&neg, field)
    }

    pub fn mul(&self, other: &Self, field: &Field) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly { coeffs: vec![] };
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UPoly::new(out, field)
    }

    /// Remainder modulo a nonzero divisor.
    pub fn rem(&self, divisor: &Self, field: &Field) -> Self {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.coeffs[d]).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let c = field.mul(r[top], lead_inv);
            if !c.is_zero() {
                for (j, &m) in divisor.coeffs.iter().enumerate() {
                    let idx = top - d + j;
                    r[idx] = field.sub(r[idx], field.mul(c, m));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r, field)
    }

    pub fn monic(&self, field: &Field) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = field.inv(lead).expect("nonzero");
                UPoly::new(self.coeffs.iter().map(|&c| field.mul(c, inv)).collect(), field)
            }
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self, field: &Field) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field);
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn mulmod(&self, other: &Self, modulus: &Self, field: &Field) -> Self {
        self.mul(other, field).rem(modulus, field)
    }

    pub fn powmod(&self, mut n: u128, modulus: &Self, field: &Field) -> Self {
        let mut base = self.rem(modulus, field);
        let mut acc = UPoly::constant(field.one(), field).rem(modulus, field);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mulmod(&base, modulus, field);
            }
            base = base.mulmod(&base, modulus, field);
            n >>= 1;
        }
        acc
    }

    /// Ben-Or test: no factor of degree `<= deg/2`.
    pub fn is_irreducible(&self, field: &Field) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let x = UPoly::x(field);
        let mut xq = x.clone();
        for _ in 0..d / 2 {
            xq = xq.powmod(field.order(), self, field);
            let g = self.gcd(&xq.sub(&x, field), field);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Distinct roots lying in `field`, in no particular order.
    pub fn roots<R: Rng + ?Sized>(&self, field: &Field, rng: &mut R) -> Vec<FieldElement> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let f = self.monic(field);
        let x = UPoly::x(field);
        let xq = x.powmod(field.order(), &f, field);
        let split = f.gcd(&xq.sub(&x, field), field);
        let mut out = Vec::new();
        split_linear(&split, field, rng, &mut out);
        out
    }
}

fn split_linear<R: Rng + ?Sized>(
    f: &UPoly,
    field: &Field,
    rng: &mut R,
    out: &mut Vec<FieldElement>,
) {
    match f.degree() {
        None | Some(0) => {}
        Some(1) => out.push(field.neg(f.coeffs[0])),
        Some(d) => loop {
            let probe = UPoly::new((0..d).map(|_| field.sample(rng)).collect(), field);
            if probe.degree().unwrap_or(0) == 0 {
                continue;
            }
            let g = if field.p() == 2 {
                // Absolute trace: sum of the 2^i powers.
                let mut acc = UPoly::new(vec![], field);
                let mut cur = probe.rem(f, field);
                for _ in 0..field.e() {
                    acc = acc.add(&cur, field);
                    cur = cur.mulmod(&cur, f, field);
                }
                f.gcd(&acc, field)
            } else {
                let h = probe.powmod((field.order() - 1) / 2, f, field);
                f.gcd(&h.sub(&UPoly::constant(field.one(), field), field), field)
            };
            match g.degree() {
                Some(k) if k > 0 && k < d => {
                    let rest = quotient(f, &g, field);
                    split_linear(&g, field, rng, out);
                    split_linear(&rest, field, rng, out);
                    return;
                }
                _ => continue,
            }
        },
    }
}

fn quotient(f: &UPoly, g: &UPoly, field: &Field) -> UPoly {
    let dg = g.degree().unwrap();
    let lead_inv = field.inv(g.coeffs[dg]).unwrap();
    let mut r = f.coeffs.clone();
    let mut q = vec![field.zero(); r.len() - dg];
    for top in (dg..r.len()).rev() {
        let c = field.mul(r[top], lead_inv);
        q[top - dg] = c;
        if !c.is_zero() {
            for (j, &m) in g.coeffs.iter().enumerate() {
                let idx = top - dg + j;
                r[idx] = field.sub(r[idx], field.mul(c, m));
            }
        }
    }
    UPoly::new(q, field)
}
