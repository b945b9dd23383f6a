//! Conjugacy classes, character tables and the parametric builders.

mod pgl2;
mod pgu3;
mod psl2;
mod psu3;
mod quotient;
mod ree;
mod suzuki;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclo::{Accum, CycNum, IntAccum, IntCyc, Rat};
use crate::numth::gcd;

pub use pgl2::build_pgl2;
pub use pgu3::{build_pgu3, pgu3_order};
pub use psl2::build_psl2;
pub use psu3::build_psu3;
pub use quotient::{canonical_quotient, QuotientError};
pub use ree::build_ree;
pub use suzuki::build_suzuki;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Pgl2,
    Psl2,
    Pgu3,
    Psu3,
    Suzuki,
    Ree2G2,
    Ingested,
}

impl Family {
    pub const BUILT: [Family; 6] =
        [Family::Pgl2, Family::Psl2, Family::Pgu3, Family::Psu3, Family::Suzuki, Family::Ree2G2];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Pgl2 => "PGL2",
            Family::Psl2 => "PSL2",
            Family::Pgu3 => "PGU3",
            Family::Psu3 => "PSU3",
            Family::Suzuki => "SUZUKI",
            Family::Ree2G2 => "REE2G2",
            Family::Ingested => "INGESTED",
        }
    }

    pub fn from_tag(s: &str) -> Option<Family> {
        let up = s.to_ascii_uppercase();
        Family::BUILT
            .into_iter()
            .chain([Family::Ingested])
            .find(|f| f.tag() == up)
            .or(match up.as_str() {
                "SZ" => Some(Family::Suzuki),
                "REE" | "2G2" => Some(Family::Ree2G2),
                _ => None,
            })
    }

    /// Whether `q` is a parameter this family's builder accepts.
    pub fn admissible(self, q: u64) -> bool {
        let pp = crate::numth::prime_power(q);
        match self {
            Family::Pgl2 | Family::Pgu3 => pp.is_some(),
            Family::Psl2 => pp.is_some_and(|(p, _)| p != 2),
            Family::Psu3 => pp.is_some(),
            Family::Suzuki => pp.is_some_and(|(p, k)| p == 2 && k % 2 == 1 && k >= 3),
            Family::Ree2G2 => pp.is_some_and(|(p, k)| p == 3 && k % 2 == 1 && k >= 3),
            Family::Ingested => false,
        }
    }

    pub fn build(self, q: u64) -> Result<CharTable, TableError> {
        match self {
            Family::Pgl2 => build_pgl2(q),
            Family::Psl2 => build_psl2(q),
            Family::Pgu3 => build_pgu3(q),
            Family::Psu3 => build_psu3(q),
            Family::Suzuki => build_suzuki(q),
            Family::Ree2G2 => build_ree(q),
            Family::Ingested => Err(TableError::Domain("ingested tables have no builder".into())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilyId {
    pub tag: Family,
    /// The field size; for the Ree groups this is q² = 3^(2m+1).
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub label: String,
    pub order: u64,
    pub size: u128,
    /// `power_to[j]` is the index of the class of gʲ, for 0 <= j < order.
    pub power_to: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharRow {
    pub label: String,
    pub param: Vec<i64>,
    pub values: Vec<CycNum>,
}

impl CharRow {
    pub fn degree(&self) -> &CycNum {
        &self.values[0]
    }

    pub fn is_rational(&self) -> bool {
        self.values.iter().all(|v| v.is_rational())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    pub family: FamilyId,
    pub name: String,
    pub order: u128,
    pub classes: Vec<ConjClass>,
    pub chars: Vec<CharRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unknown class label {0:?}")]
    UnknownClass(String),
    #[error("unknown character label {0:?}")]
    UnknownChar(String),
    #[error("class {class}: {detail}")]
    Class { class: String, detail: String },
    #[error("class equation: sizes sum to {got}, group order {order}")]
    ClassEquation { got: u128, order: u128 },
    #[error("{rows} characters but {cols} classes")]
    Shape { rows: usize, cols: usize },
    #[error("sum of squared degrees is {got}, group order {order}")]
    DegreeSum { got: String, order: u128 },
    #[error("row orthogonality fails for {a} and {b}: got {got}")]
    RowOrthogonality { a: String, b: String, got: String },
    #[error("column orthogonality fails for {c} and {d}: got {got}")]
    ColumnOrthogonality { c: String, d: String, got: String },
    #[error("power map of {class}: {detail}")]
    PowerMap { class: String, detail: String },
    #[error("character {char} at {class}: {detail}")]
    Value { char: String, class: String, detail: String },
}

impl CharTable {
    pub fn class_index(&self, label: &str) -> Result<usize, TableError> {
        find_label(self.classes.iter().map(|c| c.label.as_str()), label)
            .ok_or_else(|| TableError::UnknownClass(label.to_string()))
    }

    pub fn char_index(&self, label: &str) -> Result<usize, TableError> {
        find_label(self.chars.iter().map(|c| c.label.as_str()), label)
            .ok_or_else(|| TableError::UnknownChar(label.to_string()))
    }

    pub fn centralizer(&self, c: usize) -> u128 {
        self.order / self.classes[c].size
    }

    pub fn value(&self, chi: usize, c: usize) -> &CycNum {
        &self.chars[chi].values[c]
    }

    /// Full validation: class data, power maps and both orthogonality relations.
    pub fn validate(&self) -> Result<(), TableError> {
        self.validate_classes()?;
        self.validate_values()?;
        self.validate_orthogonality()
    }

    pub fn validate_classes(&self) -> Result<(), TableError> {
        let n = self.classes.len();
        if n == 0 || self.classes[0].order != 1 {
            return Err(TableError::Domain("first class must be the identity".into()));
        }
        let mut total = 0u128;
        for (i, c) in self.classes.iter().enumerate() {
            let err = |d: String| TableError::PowerMap { class: c.label.clone(), detail: d };
            if c.size == 0 || !self.order.is_multiple_of(c.size) {
                return Err(TableError::Class {
                    class: c.label.clone(),
                    detail: format!("size {} does not divide {}", c.size, self.order),
                });
            }
            total += c.size;
            if c.power_to.len() as u64 != c.order {
                return Err(err(format!("{} entries for order {}", c.power_to.len(), c.order)));
            }
            if c.power_to.iter().any(|&t| t >= n) {
                return Err(err("index out of range".into()));
            }
            if c.power_to[0] != 0 {
                return Err(err("g^0 is not the identity".into()));
            }
            if c.order > 1 && c.power_to[1] != i {
                return Err(err("g^1 is not g".into()));
            }
            for (j, &t) in c.power_to.iter().enumerate() {
                let expect = c.order / gcd(c.order, j as u64);
                if self.classes[t].order != expect {
                    return Err(err(format!(
                        "g^{j} lands in {} of order {}, expected order {expect}",
                        self.classes[t].label, self.classes[t].order
                    )));
                }
            }
            // (g^j)^k = g^(jk)
            let m = c.order;
            for j in 1..m {
                let d = &self.classes[c.power_to[j as usize]];
                for k in 1..d.order {
                    if d.power_to[k as usize] != c.power_to[(j * k % m) as usize] {
                        return Err(err(format!("(g^{j})^{k} disagrees with g^{}", j * k % m)));
                    }
                }
            }
        }
        if total != self.order {
            return Err(TableError::ClassEquation { got: total, order: self.order });
        }
        Ok(())
    }

    /// Values are algebraic integers, degrees are positive integers and each
    /// character is compatible with the Galois action on power maps.
    pub fn validate_values(&self) -> Result<(), TableError> {
        let (rows, cols) = (self.chars.len(), self.classes.len());
        if rows != cols {
            return Err(TableError::Shape { rows, cols });
        }
        for ch in &self.chars {
            if ch.values.len() != cols {
                return Err(TableError::Shape { rows: ch.values.len(), cols });
            }
            let verr = |c: usize, d: &str| TableError::Value {
                char: ch.label.clone(),
                class: self.classes[c].label.clone(),
                detail: d.to_string(),
            };
            if !ch.values[0].as_integer().is_some_and(|d| d > BigInt::zero()) {
                return Err(verr(0, "degree is not a positive integer"));
            }
            for (c, v) in ch.values.iter().enumerate() {
                if !v.has_integral_coeffs() {
                    return Err(verr(c, "not an algebraic integer"));
                }
                let m = self.classes[c].order;
                if v.conductor() > 1 && !m.is_multiple_of(v.conductor()) && !(2 * m).is_multiple_of(v.conductor()) {
                    return Err(verr(c, "value outside the field of the element order"));
                }
            }
        }
        for (c, cl) in self.classes.iter().enumerate() {
            for u in unit_generators(cl.order) {
                let t = cl.power_to[u as usize];
                for ch in &self.chars {
                    if ch.values[t] != ch.values[c].galois(u as i64) {
                        return Err(TableError::PowerMap {
                            class: cl.label.clone(),
                            detail: format!(
                                "{}(g^{u}) is not the Galois image of {}(g)",
                                ch.label, ch.label
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate_orthogonality(&self) -> Result<(), TableError> {
        let n = self.classes.len();
        let conj: Vec<Vec<CycNum>> =
            self.chars.iter().map(|r| r.values.iter().map(|v| v.conj()).collect()).collect();
        let order = Rat::from_integer(BigInt::from(self.order));

        let mut deg2 = Rat::zero();
        for r in &self.chars {
            let d = r.degree().as_rational().unwrap();
            deg2 += &d * &d;
        }
        if deg2 != order {
            return Err(TableError::DegreeSum { got: deg2.to_string(), order: self.order });
        }

        let fast = FastRows::new(self, &conj);
        let sizes: Vec<u128> = self.classes.iter().map(|c| c.size).collect();
        let ones = vec![1u128; self.chars.len()];
        for c in 0..n {
            for d in c..n {
                let got = fast.inner(
                    |x| (&self.chars[x].values[c], &conj[x][d]),
                    |x| (fast.get(x, c, false), fast.get(x, d, true)),
                    &ones,
                );
                let want = if c == d {
                    CycNum::from_rat(Rat::from_integer(BigInt::from(self.centralizer(c))))
                } else {
                    CycNum::zero()
                };
                if got != want {
                    return Err(TableError::ColumnOrthogonality {
                        c: self.classes[c].label.clone(),
                        d: self.classes[d].label.clone(),
                        got: got.to_string(),
                    });
                }
            }
        }
        for a in 0..self.chars.len() {
            for b in a..self.chars.len() {
                let got = fast.inner(
                    |c| (&self.chars[a].values[c], &conj[b][c]),
                    |c| (fast.get(a, c, false), fast.get(b, c, true)),
                    &sizes,
                );
                let want = if a == b { CycNum::from_rat(order.clone()) } else { CycNum::zero() };
                if got != want {
                    return Err(TableError::RowOrthogonality {
                        a: self.chars[a].label.clone(),
                        b: self.chars[b].label.clone(),
                        got: got.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Index of the class of (class c)^(-1).
    pub fn inverse_class(&self, c: usize) -> usize {
        let cl = &self.classes[c];
        cl.power_to[((cl.order - 1) % cl.order) as usize]
    }
}

/// Table values scaled to integer numerators over a common denominator.
struct FastRows {
    den: i128,
    den2: BigInt,
    vals: Option<(Vec<Vec<IntCyc>>, Vec<Vec<IntCyc>>)>,
}

impl FastRows {
    fn new(t: &CharTable, conj: &[Vec<CycNum>]) -> FastRows {
        let den = t
            .chars
            .iter()
            .flat_map(|r| r.values.iter())
            .fold(BigInt::from(1), |acc, v| num_integer::Integer::lcm(&acc, &v.denominator()));
        let den = i128::try_from(den).unwrap_or(0);
        let conv = |rows: Vec<&Vec<CycNum>>| -> Option<Vec<Vec<IntCyc>>> {
            rows.into_iter().map(|r| r.iter().map(|v| v.to_int(den)).collect()).collect()
        };
        let vals = if den == 0 {
            None
        } else {
            conv(t.chars.iter().map(|r| &r.values).collect()).zip(conv(conj.iter().collect()))
        };
        FastRows { den, den2: BigInt::from(den) * BigInt::from(den), vals }
    }

    fn get(&self, row: usize, c: usize, conj: bool) -> &IntCyc {
        let (v, w) = self.vals.as_ref().unwrap();
        if conj { &w[row][c] } else { &v[row][c] }
    }

    /// Σ_k w_k·x_k·y_k, over integers when possible.
    fn inner<'a>(
        &'a self,
        exact: impl Fn(usize) -> (&'a CycNum, &'a CycNum),
        int: impl Fn(usize) -> (&'a IntCyc, &'a IntCyc),
        weights: &[u128],
    ) -> CycNum {
        if self.vals.is_some() && self.den != 0 {
            let mut acc = IntAccum::new();
            for (k, &w) in weights.iter().enumerate() {
                let (x, y) = int(k);
                acc.add_product(x, y, i128::try_from(w).unwrap_or(i128::MAX));
            }
            if let Some(v) = acc.finish(&self.den2) {
                return v;
            }
        }
        let mut acc = Accum::new();
        for (k, &w) in weights.iter().enumerate() {
            let (x, y) = exact(k);
            acc.add_product(x, y, &Rat::from_integer(BigInt::from(w)));
        }
        acc.finish()
    }
}

/// Match a label exactly, then ignoring a `FAMILY:` prefix, then ignoring a
/// trailing `^1`.
fn find_label<'a>(labels: impl Iterator<Item = &'a str> + Clone, want: &str) -> Option<usize> {
    fn strip(s: &str) -> &str {
        s.split_once(':').map_or(s, |(_, r)| r)
    }
    let norm = |s: &str| s.strip_suffix("^1").unwrap_or(s).to_string();
    labels
        .clone()
        .position(|l| l == want)
        .or_else(|| labels.clone().position(|l| strip(l) == want))
        .or_else(|| labels.clone().position(|l| norm(strip(l)) == norm(strip(want))))
}

/// A generating set of (ℤ/m)^×.
pub fn unit_generators(m: u64) -> Vec<u64> {
    if m <= 2 {
        return Vec::new();
    }
    let mut seen = vec![false; m as usize];
    seen[1] = true;
    let mut size = 1usize;
    let target = crate::numth::phi(m) as usize;
    let mut gens = Vec::new();
    for u in 2..m {
        if size == target {
            break;
        }
        if gcd(u, m) != 1 || seen[u as usize] {
            continue;
        }
        gens.push(u);
        // closure of the subgroup under multiplication by u
        let mut frontier: Vec<u64> = (0..m).filter(|&x| seen[x as usize]).collect();
        while let Some(x) = frontier.pop() {
            let y = x * u % m;
            if !seen[y as usize] {
                seen[y as usize] = true;
                size += 1;
                frontier.push(y);
            }
            for &g in &gens {
                let z = x * g % m;
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    size += 1;
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

/// Assembles a table from class descriptions with power maps given by label.
pub(crate) struct Builder {
    family: FamilyId,
    name: String,
    order: u128,
    classes: Vec<(String, u64, u128, Vec<String>)>,
    chars: Vec<CharRow>,
}

impl Builder {
    pub fn new(tag: Family, q: u64, order: u128) -> Builder {
        Builder {
            family: FamilyId { tag, q },
            name: format!("{}({})", tag.tag(), q),
            order,
            classes: Vec::new(),
            chars: Vec::new(),
        }
    }

    pub fn label(&self, sym: &str) -> String {
        format!("{}:{}", self.family.tag.tag(), sym)
    }

    /// Adds a class; `power(j)` names the class symbol of gʲ.
    pub fn class(&mut self, sym: &str, order: u64, centralizer: u128, power: impl Fn(u64) -> String) {
        assert!(self.order.is_multiple_of(centralizer), "{sym}: centralizer {centralizer} ∤ {}", self.order);
        let pm = (0..order).map(|j| self.label(&power(j))).collect();
        self.classes.push((self.label(sym), order, self.order / centralizer, pm));
    }

    pub fn syms(&self) -> Vec<String> {
        let pre = format!("{}:", self.family.tag.tag());
        self.classes.iter().map(|c| c.0.strip_prefix(&pre).unwrap().to_string()).collect()
    }

    pub fn char(&mut self, label: String, param: Vec<i64>, values: Vec<CycNum>) {
        self.chars.push(CharRow { label, param, values });
    }

    /// A row given as a function of the class index.
    pub fn char_fn(&mut self, label: String, param: Vec<i64>, f: impl Fn(usize) -> CycNum) {
        let values = (0..self.classes.len()).map(f).collect();
        self.char(label, param, values);
    }

    pub fn finish(self) -> Result<CharTable, TableError> {
        let index: HashMap<&str, usize> =
            self.classes.iter().enumerate().map(|(i, c)| (c.0.as_str(), i)).collect();
        let mut classes = Vec::with_capacity(self.classes.len());
        for (label, order, size, pm) in &self.classes {
            let power_to = pm
                .iter()
                .map(|l| {
                    index.get(l.as_str()).copied().ok_or_else(|| TableError::PowerMap {
                        class: label.clone(),
                        detail: format!("unknown target {l}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            classes.push(ConjClass { label: label.clone(), order: *order, size: *size, power_to });
        }
        Ok(CharTable {
            family: self.family,
            name: self.name,
            order: self.order,
            classes,
            chars: self.chars,
        })
    }
}

/// ζₙ^k, shorthand for the builders.
pub(crate) fn z(n: u64, k: i64) -> CycNum {
    CycNum::e(n, k)
}

pub(crate) fn num(n: i64) -> CycNum {
    CycNum::from_int(n)
}

/// Smallest element of the orbit of x under multiplication by `mults` mod n.
pub(crate) fn orbit_min(x: u64, n: u64, mults: &[u64]) -> u64 {
    let mut best = x % n;
    let mut seen = vec![x % n];
    let mut i = 0;
    while i < seen.len() {
        let y = seen[i];
        for &g in mults {
            let w = ((y as u128 * g as u128) % n as u128) as u64;
            if !seen.contains(&w) {
                best = best.min(w);
                seen.push(w);
            }
        }
        i += 1;
    }
    best
}

#[cfg(test)]
mod tests;

/// Label of the torus power t^x with t ~ t⁻¹, or `id` when x ≡ 0.
pub(crate) fn fold_label(sym: &str, x: u64, n: u64, id: &str) -> String {
    let x = x % n;
    let x = x.min(n - x);
    match x {
        0 => id.to_string(),
        1 => sym.to_string(),
        _ => format!("{sym}^{x}"),
    }
}

/// Adds classes t^1..t^(n/2) of a cyclic torus of order n with t ~ t⁻¹;
/// `cent(x)` gives the centralizer order of t^x.
pub(crate) fn torus_classes(b: &mut Builder, sym: &str, n: u64, id: &str, cent: impl Fn(u64) -> u128) {
    for x in 1..=n / 2 {
        let order = n / gcd(n, x);
        let s = sym.to_string();
        let idl = id.to_string();
        b.class(&fold_label(sym, x, n, id), order, cent(x), move |j| fold_label(&s, x * j, n, &idl));
    }
}
