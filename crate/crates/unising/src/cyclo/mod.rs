//! Exact arithmetic in cyclotomic fields.
//!
//! A value is stored in the Zumbroich basis of its minimal field ℚ(ζₙ).
//! For n = ∏ p^a the basis is the tensor product of the prime-power bases:
//! for odd p the exponents `i + j·p^(a-1)` with `0 <= i < p^(a-1)` and
//! `1 <= j < p`, for p = 2 the exponents `0 <= i < 2^(a-1)`. Every operation
//! re-canonicalises and shrinks n to the conductor, so two values are equal
//! exactly when their stored forms are equal.

pub mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::numth::{factorize, gcd, inv_mod, is_prime, lcm, rem};

pub use text::ParseError;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("root of unity of order 0")]
    ZeroOrder,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// The root of unity exp(2πi·num/den), kept as a reduced fraction in [0, 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    den: u64,
    num: u64,
}

impl Root {
    pub const ONE: Root = Root { den: 1, num: 0 };

    pub fn new(n: u64, k: i64) -> Root {
        assert!(n > 0, "root of unity of order 0");
        Root::reduced(n, rem(k, n))
    }

    fn reduced(n: u64, k: u64) -> Root {
        let k = k % n;
        if k == 0 {
            return Root::ONE;
        }
        let g = gcd(n, k);
        Root { den: n / g, num: k / g }
    }

    pub fn order(self) -> u64 {
        self.den
    }

    pub fn exponent(self) -> u64 {
        self.num
    }

    pub fn mul(self, o: Root) -> Root {
        let n = lcm(self.den, o.den);
        let k = (self.num as u128 * (n / self.den) as u128 + o.num as u128 * (n / o.den) as u128)
            % n as u128;
        Root::reduced(n, k as u64)
    }

    pub fn inv(self) -> Root {
        Root::reduced(self.den, self.den - self.num)
    }

    pub fn pow(self, e: i64) -> Root {
        let k = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        Root::reduced(self.den, k as u64)
    }

    /// Exponent of this root as a power of ζ_m (requires order | m).
    fn exp_in(self, m: u64) -> u64 {
        debug_assert_eq!(m % self.den, 0);
        self.num * (m / self.den)
    }
}

/// An element of ℚ(ζₙ) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycNum {
    n: u64,
    terms: Vec<(u64, Rat)>,
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum { n: 1, terms: Vec::new() }
    }

    pub fn one() -> CycNum {
        CycNum::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> CycNum {
        if r.is_zero() {
            CycNum::zero()
        } else {
            CycNum { n: 1, terms: vec![(0, r)] }
        }
    }

    pub fn from_int(n: i64) -> CycNum {
        CycNum::from_rat(int(n))
    }

    pub fn from_root(r: Root) -> CycNum {
        let mut acc = Accum::new();
        acc.push(r, Rat::one());
        acc.finish()
    }

    /// ζₙᵏ.
    pub fn e(n: u64, k: i64) -> CycNum {
        CycNum::from_root(Root::new(n, k))
    }

    /// The conductor: the least n with the value in ℚ(ζₙ).
    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Canonical (exponent, coefficient) pairs, ascending by exponent.
    pub fn terms(&self) -> &[(u64, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn as_rational(&self) -> Option<Rat> {
        match (self.n, self.terms.as_slice()) {
            (1, []) => Some(Rat::zero()),
            (1, [(0, c)]) => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|i| i.to_i64())
    }

    pub fn is_nonneg_integer(&self) -> bool {
        self.as_integer().is_some_and(|i| !i.is_negative())
    }

    /// True when every coefficient is an integer. For values written as
    /// integer combinations of roots of unity this holds exactly.
    pub fn has_integral_coeffs(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    fn roots(&self) -> impl Iterator<Item = (Root, &Rat)> + '_ {
        let n = self.n;
        self.terms.iter().map(move |(e, c)| (Root::reduced(n, *e), c))
    }

    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// The automorphism ζ ↦ ζᵘ (u must be prime to the conductor).
    pub fn galois(&self, u: i64) -> CycNum {
        if self.n <= 2 {
            return self.clone();
        }
        debug_assert_eq!(gcd(rem(u, self.n), self.n), 1);
        let mut acc = Accum::new();
        for (r, c) in self.roots() {
            acc.push(r.pow(u), c.clone());
        }
        acc.finish()
    }

    pub fn scale(&self, s: &Rat) -> CycNum {
        if s.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Multiply by a root of unity.
    pub fn shift(&self, r: Root) -> CycNum {
        let mut acc = Accum::new();
        acc.add_shifted(self, r, &Rat::one());
        acc.finish()
    }

    pub fn pow(&self, mut e: u32) -> CycNum {
        let mut base = self.clone();
        let mut out = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        out
    }

    /// |x|² as a rational, when x·conj(x) is rational.
    pub fn norm2(&self) -> Option<Rat> {
        (self * &self.conj()).as_rational()
    }

    /// Floating-point value, for diagnostics only.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (r, c) in self.roots() {
            let t = std::f64::consts::TAU * r.num as f64 / r.den as f64;
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> CycNum {
        CycNum::from_int(n)
    }
}

impl From<Rat> for CycNum {
    fn from(r: Rat) -> CycNum {
        CycNum::from_rat(r)
    }
}

/// A formal sum of roots of unity with rational coefficients. Building a
/// value through one accumulator and a single [`Accum::finish`] is much
/// cheaper than repeated canonical additions.
#[derive(Clone, Default, Debug)]
pub struct Accum {
    terms: Vec<(Root, Rat)>,
}

impl Accum {
    pub fn new() -> Accum {
        Accum::default()
    }

    pub fn push(&mut self, r: Root, c: Rat) {
        if !c.is_zero() {
            self.terms.push((r, c));
        }
    }

    pub fn add_rat(&mut self, c: Rat) {
        self.push(Root::ONE, c);
    }

    pub fn add(&mut self, x: &CycNum, s: &Rat) {
        for (r, c) in x.roots() {
            self.push(r, c * s);
        }
    }

    pub fn add_shifted(&mut self, x: &CycNum, shift: Root, s: &Rat) {
        for (r, c) in x.roots() {
            self.push(r.mul(shift), c * s);
        }
    }

    /// Adds s·a·b.
    pub fn add_product(&mut self, a: &CycNum, b: &CycNum, s: &Rat) {
        if a.is_zero() || b.is_zero() || s.is_zero() {
            return;
        }
        for (ra, ca) in a.roots() {
            let cs = ca * s;
            for (rb, cb) in b.roots() {
                self.push(ra.mul(rb), &cs * cb);
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn finish(self) -> CycNum {
        canon(self.terms)
    }
}

/// Integer numerators over a fixed denominator, for hot loops where
/// big-rational coefficient arithmetic dominates.
#[derive(Clone, Debug, Default)]
pub struct IntCyc(Vec<(Root, i128)>);

impl CycNum {
    /// `self · den` with integer coefficients, if they are integral and fit.
    pub fn to_int(&self, den: i128) -> Option<IntCyc> {
        let d = BigInt::from(den);
        let mut out = Vec::with_capacity(self.terms.len());
        for (r, c) in self.roots() {
            let x = c * Rat::from_integer(d.clone());
            if !x.is_integer() {
                return None;
            }
            out.push((r, i128::try_from(x.to_integer()).ok()?));
        }
        Some(IntCyc(out))
    }

    /// Least common denominator of the coefficients.
    pub fn denominator(&self) -> BigInt {
        self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }
}

/// [`Accum`] over [`IntCyc`] values with checked `i128` arithmetic.
#[derive(Clone, Debug, Default)]
pub struct IntAccum {
    terms: Vec<(Root, i128)>,
    overflow: bool,
}

impl IntAccum {
    pub fn new() -> IntAccum {
        IntAccum::default()
    }

    /// Adds s·a·b.
    pub fn add_product(&mut self, a: &IntCyc, b: &IntCyc, s: i128) {
        for &(ra, ca) in &a.0 {
            let Some(cs) = ca.checked_mul(s) else {
                self.overflow = true;
                return;
            };
            for &(rb, cb) in &b.0 {
                match cs.checked_mul(cb) {
                    Some(c) => self.terms.push((ra.mul(rb), c)),
                    None => self.overflow = true,
                }
            }
        }
    }

    /// The accumulated sum divided by `den`, or `None` after an overflow.
    pub fn finish(mut self, den: &BigInt) -> Option<CycNum> {
        if self.overflow {
            return None;
        }
        self.terms.sort_unstable_by_key(|x| x.0);
        let mut out: Vec<(Root, Rat)> = Vec::new();
        let mut i = 0;
        while i < self.terms.len() {
            let r = self.terms[i].0;
            let mut c: i128 = 0;
            while i < self.terms.len() && self.terms[i].0 == r {
                c = c.checked_add(self.terms[i].1)?;
                i += 1;
            }
            if c != 0 {
                out.push((r, Rat::new(BigInt::from(c), den.clone())));
            }
        }
        Some(canon(out))
    }
}

fn merge(t: &mut Vec<(Root, Rat)>) {
    t.sort_by_key(|a| a.0);
    let mut out: Vec<(Root, Rat)> = Vec::with_capacity(t.len());
    for (r, c) in t.drain(..) {
        match out.last_mut() {
            Some((lr, lc)) if *lr == r => *lc += c,
            _ => {
                if out.last().is_some_and(|(_, c)| c.is_zero()) {
                    out.pop();
                }
                out.push((r, c));
            }
        }
    }
    if out.last().is_some_and(|(_, c)| c.is_zero()) {
        out.pop();
    }
    *t = out;
}

/// Canonical form of a formal sum. Splits off the largest prime p of the
/// common order, canonicalises the p-fibres in the smaller field, and either
/// descends to the subfield or assembles the tensor-basis coordinates.
fn canon(mut t: Vec<(Root, Rat)>) -> CycNum {
    merge(&mut t);
    if t.is_empty() {
        return CycNum::zero();
    }
    let m = t.iter().fold(1, |acc, (r, _)| lcm(acc, r.den));
    if m == 1 {
        return CycNum::from_rat(t.pop().unwrap().1);
    }
    let &(p, a) = factorize(m).last().unwrap();
    let pp = p.pow(a);
    let r = m / pp;

    if p == 2 {
        return canon_two(t, m, a);
    }

    // Fibre decomposition ζ_m^k = ζ_pp^u · ζ_r^v.
    let r_inv = inv_mod(r % pp, pp).unwrap();
    let pp_inv = inv_mod(pp % r, r).unwrap_or(0);
    let mut parts: BTreeMap<u64, Vec<(Root, Rat)>> = BTreeMap::new();
    for (root, c) in t {
        let k = root.exp_in(m) as u128;
        let u = (k * r_inv as u128 % pp as u128) as u64;
        let v = if r == 1 { 0 } else { (k * pp_inv as u128 % r as u128) as u64 };
        parts.entry(u).or_default().push((Root::reduced(r, v), c));
    }
    let sub: BTreeMap<u64, CycNum> = parts
        .into_iter()
        .map(|(u, v)| (u, canon(v)))
        .filter(|(_, x)| !x.is_zero())
        .collect();
    if sub.is_empty() {
        return CycNum::zero();
    }

    let h = pp / p;
    let zero = CycNum::zero();
    let get = |u: u64| sub.get(&u).unwrap_or(&zero);
    // Fibres {i + j·h : 0 <= j < p} indexed by i < h.
    let mut fibres: BTreeMap<u64, ()> = BTreeMap::new();
    for &u in sub.keys() {
        fibres.insert(u % h, ());
    }

    // Entries in `sub` are nonzero, so a fibre can only be constant when it
    // is entirely absent or entirely present.
    let fibre_keys = |i: u64| sub.range(i..).map(|(&u, _)| u).filter(move |u| u % h == i);
    let constant = |i: u64, from: u64| -> bool {
        let present: Vec<u64> = fibre_keys(i).filter(|u| u / h >= from).collect();
        present.is_empty()
            || (present.len() as u64 == p - from && present.iter().all(|&u| get(u) == get(present[0])))
    };
    let descends = if a == 1 {
        constant(0, 1)
    } else {
        fibres.keys().filter(|&&i| i % p != 0).all(|&i| constant(i, 0))
    };

    if descends {
        if a == 1 {
            // x = Σ_{j>=1} (C_j − C_0) ζ_p^j with C_1 = … = C_{p−1}, so x = C_0 − C_1.
            return get(0) - get(h);
        }
        let mut acc = Accum::new();
        for (&u, x) in &sub {
            if (u % h) % p == 0 {
                acc.add_shifted(x, Root::reduced(pp, u), &Rat::one());
            }
        }
        return acc.finish();
    }

    // Coordinates B_{i,j} = C_{i+jh} − C_i on the basis ζ_pp^{i+jh}, j >= 1.
    let mut coords: Vec<(u64, CycNum)> = Vec::new();
    for &i in fibres.keys() {
        let ci = get(i);
        if ci.is_zero() {
            for u in fibre_keys(i).filter(|&u| u != i) {
                coords.push((u, get(u).clone()));
            }
        } else {
            for j in 1..p {
                let b = get(i + j * h) - ci;
                if !b.is_zero() {
                    coords.push((i + j * h, b));
                }
            }
        }
    }
    assemble(pp, coords)
}

/// 2-power part: basis ζ^i, i < 2^(a−1), with ζ^(i + 2^(a−1)) = −ζ^i.
fn canon_two(t: Vec<(Root, Rat)>, m: u64, a: u32) -> CycNum {
    let h = m / 2;
    let mut coef: BTreeMap<u64, Rat> = BTreeMap::new();
    for (root, c) in t {
        let k = root.exp_in(m);
        let (i, s) = if k >= h { (k - h, -c) } else { (k, c) };
        *coef.entry(i).or_insert_with(Rat::zero) += s;
    }
    coef.retain(|_, c| !c.is_zero());
    if a == 1 || coef.keys().all(|i| i % 2 == 0) {
        // Only even exponents remain, so the order drops.
        return canon(coef.into_iter().map(|(i, c)| (Root::reduced(m, i), c)).collect());
    }
    CycNum { n: m, terms: coef.into_iter().collect() }
}

/// Build the canonical form from coordinates over the ζ_pp basis, each
/// coordinate a canonical element of a field prime to p.
fn assemble(pp: u64, coords: Vec<(u64, CycNum)>) -> CycNum {
    let l = coords.iter().fold(1, |acc, (_, b)| lcm(acc, b.n));
    let n = pp * l;
    let mut terms: Vec<(u64, Rat)> = Vec::new();
    for (t, b) in coords {
        for (v, c) in lift(&b, l) {
            let e = ((t as u128 * l as u128 + v as u128 * pp as u128) % n as u128) as u64;
            terms.push((e, c));
        }
    }
    terms.sort_by_key(|x| x.0);
    CycNum { n, terms }
}

/// Zumbroich coordinates of `b` inside ℚ(ζ_l), for a multiple l of its conductor.
fn lift(b: &CycNum, l: u64) -> Vec<(u64, Rat)> {
    let scale = l / b.n;
    let mut out: Vec<(u64, Rat)> = b.terms.iter().map(|(e, c)| (e * scale, c.clone())).collect();
    for (q, _) in factorize(l) {
        if q == 2 || b.n.is_multiple_of(q) {
            continue;
        }
        let step = l / q;
        out = out
            .into_iter()
            .flat_map(|(e, c)| (1..q).map(move |j| ((e + j * step) % l, -c.clone())))
            .collect();
    }
    out
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut acc = Accum::new();
        acc.add(self, &Rat::one());
        acc.add(o, &Rat::one());
        acc.finish()
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        if o.is_zero() {
            return self.clone();
        }
        let mut acc = Accum::new();
        acc.add(self, &Rat::one());
        acc.add(o, &-Rat::one());
        acc.finish()
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        if let Some(r) = self.as_rational() {
            return o.scale(&r);
        }
        if let Some(r) = o.as_rational() {
            return self.scale(&r);
        }
        let mut acc = Accum::new();
        acc.add_product(self, o, &Rat::one());
        acc.finish()
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                (&self).$m(&o)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, o: &CycNum) -> CycNum {
                (&self).$m(o)
            }
        }
        impl $tr<CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, o: CycNum) -> CycNum {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, o: &CycNum) {
        *self = &*self + o;
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        let mut acc = Accum::new();
        for x in iter {
            acc.add(&x, &Rat::one());
        }
        acc.finish()
    }
}

/// ζₙᵏ, with a domain error for n = 0.
pub fn root_of_unity(n: u64, k: i64) -> Result<CycNum, CycloError> {
    if n == 0 {
        return Err(CycloError::ZeroOrder);
    }
    Ok(CycNum::e(n, k))
}

/// Σ_{t=1}^{f−1} εᵗ for ε = ζ_f^step.
pub fn geometric_sum(f: u64, step: i64) -> CycNum {
    let mut acc = Accum::new();
    let e = Root::new(f.max(1), step);
    for t in 1..f as i64 {
        acc.push(e.pow(t), Rat::one());
    }
    acc.finish()
}

/// The quadratic Gauss sum Σ_t (t|p) ζ_pᵗ, which is √p for p ≡ 1 (mod 4)
/// and √−p for p ≡ 3 (mod 4).
pub fn gauss_sqrt(p: u64) -> Result<CycNum, CycloError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(CycloError::NotOddPrime(p));
    }
    let mut acc = Accum::new();
    for t in 1..p {
        let s = crate::numth::legendre(t as i64, p);
        acc.push(Root::new(p, t as i64), int(s as i64));
    }
    Ok(acc.finish())
}

/// √q for q = pᵏ: rational for even k, otherwise p^((k−1)/2)·gauss_sqrt(p),
/// which squares to −q when p ≡ 3 (mod 4).
pub fn sqrt_q(p: u64, k: u32) -> Result<CycNum, CycloError> {
    let big = |e: u32| Rat::from_integer(BigInt::from(p).pow(e));
    if k.is_multiple_of(2) {
        Ok(CycNum::from_rat(big(k / 2)))
    } else {
        Ok(gauss_sqrt(p)?.scale(&big((k - 1) / 2)))
    }
}

/// ι = ζ₄.
pub fn iota() -> CycNum {
    CycNum::e(4, 1)
}

/// √−3 = ζ₃ − ζ₃².
pub fn sqrt_m3() -> CycNum {
    &CycNum::e(3, 1) - &CycNum::e(3, 2)
}

#[cfg(test)]
mod tests;
