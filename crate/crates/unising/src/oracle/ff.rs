//! Finite fields 𝔽_{p^k} in logarithmic encoding with Zech logarithms, and
//! small square matrices over them.
//!
//! An element is a `u32`: 0 is zero and e+1 stands for gᵉ, g the root of the
//! defining polynomial. The polynomial is the least primitive monic one of
//! degree k when coefficient vectors are read as base-p numbers, so every run
//! uses the same generator. Subfields are the powers of g^((Q−1)/(p^d−1)),
//! which makes all generators compatible by construction.

use crate::numth::prime_power;

pub type Elem = u32;

#[derive(Clone, Debug)]
pub struct Field {
    pub p: u32,
    pub k: u32,
    /// Field size p^k.
    pub size: u32,
    /// c₀..c_{k−1} with xᵏ = Σ cᵢxⁱ in the field.
    pub poly: Vec<u32>,
    /// Base-p code of gᵉ.
    exp: Vec<u32>,
    /// Inverse of `exp`, indexed by code (entry 0 unused).
    log: Vec<u32>,
    /// zech[n] = encoded 1 + gⁿ.
    zech: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field of size {0} exceeds the table limit 2^22")]
    TooLarge(u64),
}

fn digits(mut c: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn code(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |a, &x| a * p + x)
}

impl Field {
    pub fn new(size: u64) -> Result<Field, FieldError> {
        let (p, k) = prime_power(size).ok_or(FieldError::NotPrimePower(size))?;
        if size > 1 << 22 {
            return Err(FieldError::TooLarge(size));
        }
        let (p, k, size) = (p as u32, k, size as u32);
        for c in 0..size {
            let poly = digits(c, p, k);
            if let Some(exp) = Self::powers(p, k, &poly) {
                let mut log = vec![0u32; size as usize];
                for (e, &x) in exp.iter().enumerate() {
                    log[x as usize] = e as u32;
                }
                let mut f = Field { p, k, size, poly, exp, log, zech: Vec::new() };
                f.zech = (0..size - 1)
                    .map(|n| {
                        let mut d = digits(f.exp[n as usize], p, k);
                        d[0] = (d[0] + 1) % p;
                        f.from_code(code(&d, p))
                    })
                    .collect();
                return Ok(f);
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// Codes of x⁰, x¹, … modulo the polynomial, if x has order size−1.
    fn powers(p: u32, k: u32, poly: &[u32]) -> Option<Vec<u32>> {
        let size = p.pow(k);
        let mut cur = vec![0u32; k as usize];
        cur[0] = 1;
        let mut out = Vec::with_capacity(size as usize - 1);
        for _ in 0..size - 1 {
            let c = code(&cur, p);
            if c == 1 && !out.is_empty() {
                return None;
            }
            out.push(c);
            // multiply by x
            let top = cur[k as usize - 1];
            for i in (1..k as usize).rev() {
                cur[i] = (cur[i - 1] + top * poly[i]) % p;
            }
            cur[0] = top * poly[0] % p;
        }
        (code(&cur, p) == 1).then_some(out)
    }

    fn from_code(&self, c: u32) -> Elem {
        if c == 0 {
            0
        } else {
            self.log[c as usize] + 1
        }
    }

    pub fn to_code(&self, x: Elem) -> u32 {
        if x == 0 {
            0
        } else {
            self.exp[x as usize - 1]
        }
    }

    /// Order of the multiplicative group.
    pub fn units(&self) -> u32 {
        self.size - 1
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// gᵉ.
    pub fn gen_pow(&self, e: i64) -> Elem {
        e.rem_euclid(self.units() as i64) as u32 + 1
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x != 0).then(|| x - 1)
    }

    /// The prime-field element n·1.
    pub fn int(&self, n: i64) -> Elem {
        self.from_code(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.units();
        let s = (a - 1) + (b - 1);
        (if s >= n { s - n } else { s }) + 1
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.units();
        let d = (b + n - a) % n;
        let z = self.zech[d as usize];
        if z == 0 {
            0
        } else {
            self.mul(a, z)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 || self.p == 2 {
            a
        } else {
            self.mul(a, self.gen_pow(self.units() as i64 / 2))
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.gen_pow(-((a - 1) as i64)))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = self.units() as u64;
        ((a as u64 - 1) * (e % n) % n) as u32 + 1
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> u64 {
        let n = self.units() as u64;
        n / crate::numth::gcd(n, a as u64 - 1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }
}

/// An n×n matrix, n ≤ 3, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub n: u8,
    pub e: [Elem; 9],
}

impl Mat {
    pub fn from_rows(n: usize, entries: &[Elem]) -> Mat {
        assert_eq!(entries.len(), n * n);
        let mut e = [0; 9];
        e[..n * n].copy_from_slice(entries);
        Mat { n: n as u8, e }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat { n: n as u8, e: [0; 9] };
        for i in 0..n {
            m.e[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Elem {
        self.e[i * self.n as usize + j]
    }

    pub fn mul(&self, f: &Field, o: &Mat) -> Mat {
        let n = self.n as usize;
        let mut r = Mat { n: self.n, e: [0; 9] };
        for i in 0..n {
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s = f.add(s, f.mul(self.at(i, k), o.at(k, j)));
                }
                r.e[i * n + j] = s;
            }
        }
        r
    }

    pub fn det(&self, f: &Field) -> Elem {
        let a = |i, j| self.at(i, j);
        match self.n {
            1 => a(0, 0),
            2 => f.sub(f.mul(a(0, 0), a(1, 1)), f.mul(a(0, 1), a(1, 0))),
            3 => {
                let mut s = 0;
                for (c, sign) in [(0usize, false), (1, true), (2, false)] {
                    let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
                    let (lo, hi) = (c1.min(c2), c1.max(c2));
                    let minor = f.sub(f.mul(a(1, lo), a(2, hi)), f.mul(a(1, hi), a(2, lo)));
                    let t = f.mul(a(0, c), minor);
                    s = if sign { f.sub(s, t) } else { f.add(s, t) };
                }
                s
            }
            _ => unreachable!(),
        }
    }

    /// Entrywise x ↦ x^e followed by transposition; with e = q over 𝔽_{q²}
    /// this is the conjugate transpose.
    pub fn frob_transpose(&self, f: &Field, e: u64) -> Mat {
        let n = self.n as usize;
        let mut r = Mat { n: self.n, e: [0; 9] };
        for i in 0..n {
            for j in 0..n {
                r.e[j * n + i] = f.pow(self.at(i, j), e);
            }
        }
        r
    }

    pub fn scale(&self, f: &Field, s: Elem) -> Mat {
        let mut r = *self;
        for x in r.e.iter_mut().take(self.n as usize * self.n as usize) {
            *x = f.mul(*x, s);
        }
        r
    }

    /// Representative of the coset modulo the scalars g^(step·t): the first
    /// nonzero entry gets a logarithm below `step`.
    pub fn normalize(&self, f: &Field, step: u32) -> Mat {
        let nn = self.n as usize * self.n as usize;
        match self.e[..nn].iter().find(|&&x| x != 0) {
            None => *self,
            Some(&x) => {
                let l = x - 1;
                let shift = l - l % step;
                self.scale(f, f.gen_pow(-(shift as i64)))
            }
        }
    }

    /// Packs the entries into one word, `bits` per entry.
    pub fn key(&self, bits: u32) -> u64 {
        let nn = self.n as usize * self.n as usize;
        self.e[..nn].iter().fold(0u64, |a, &x| (a << bits) | x as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 125, 729, 4096, 15625] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.order(f.gen_pow(1)), q - 1);
        }
    }

    #[test]
    fn prime_field_is_integers() {
        let f = Field::new(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f.add(f.int(a), f.int(b)), f.int(a + b));
                assert_eq!(f.mul(f.int(a), f.int(b)), f.int(a * b));
            }
        }
    }

    #[test]
    fn subfield_is_fixed_by_frobenius() {
        let f = Field::new(25).unwrap();
        let sub: Vec<Elem> = f.elements().filter(|&x| f.pow(x, 5) == x).collect();
        assert_eq!(sub.len(), 5);
        let nu = f.gen_pow(6);
        assert_eq!(f.pow(nu, 5), nu);
    }

    #[test]
    fn det_multiplicative() {
        let f = Field::new(9).unwrap();
        let a = Mat::from_rows(3, &[1, 2, 0, 4, 5, 6, 0, 8, 3]);
        let b = Mat::from_rows(3, &[7, 0, 1, 2, 3, 0, 5, 0, 9]);
        assert_eq!(a.mul(&f, &b).det(&f), f.mul(a.det(&f), b.det(&f)));
    }

    fn field_axioms(q: u64, a: u32, b: u32, c: u32) {
        let f = Field::new(q).unwrap();
        let (a, b, c) = (a % f.size, b % f.size, c % f.size);
        assert_eq!(f.add(a, b), f.add(b, a));
        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    proptest! {
        #[test]
        fn axioms(a in 0u32..1 << 20, b in 0u32..1 << 20, c in 0u32..1 << 20, qi in 0usize..8) {
            let q = [4u64, 8, 9, 25, 27, 49, 64, 729][qi];
            field_axioms(q, a, b, c);
        }
    }
}
