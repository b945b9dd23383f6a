//! Brute-force ground truth for small groups: the groups are enumerated as
//! matrices over finite fields, classes and power maps come from actual
//! multiplication, and the results are compared with the generic tables.

pub mod ff;

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{Accum, CycNum, Rat};
use crate::gtables::{CharTable, Family};
use crate::mult::{eig1_mult, MultError};
use crate::numth::{gcd, prime_power};
use ff::{Field, Mat};

pub const DEFAULT_BOUND: u128 = 3_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("|G| = {required} exceeds the enumeration bound {bound}")]
    Refused { required: u128, bound: u128 },
    #[error("{0} cannot be enumerated")]
    Unsupported(String),
    #[error("enumeration produced {got} elements, expected {expected}")]
    Count { got: usize, expected: u128 },
    #[error(transparent)]
    Field(#[from] ff::FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EClass {
    /// Index of a representative element.
    pub rep: usize,
    pub order: u64,
    pub size: u128,
    pub power_to: Vec<usize>,
}

/// A projective matrix group given by all of its elements.
#[derive(Clone, Debug)]
pub struct EnumeratedGroup {
    pub family: Family,
    pub q: u64,
    pub field: Field,
    /// Scalars g^(step·t) are divided out.
    step: u32,
    bits: u32,
    pub elements: Vec<Mat>,
    index: HashMap<u64, usize>,
    pub identity: usize,
    pub gens: Vec<usize>,
    pub class_of: Vec<usize>,
    pub classes: Vec<EClass>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn find(&self, m: &Mat) -> Option<usize> {
        self.index.get(&m.normalize(&self.field, self.step).key(self.bits)).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].mul(&self.field, &self.elements[b]);
        self.find(&m).expect("product left the group")
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        let mut r = self.identity;
        for _ in 0..e {
            r = self.mul(r, a);
        }
        r
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn inverse(&self, a: usize) -> usize {
        self.pow(a, self.element_order(a) - 1)
    }

    /// Size of the subgroup generated by `gens`.
    fn closure_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut todo = VecDeque::from([self.identity]);
        let mut n = 1;
        while let Some(x) = todo.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    n += 1;
                    todo.push_back(y);
                }
            }
        }
        n
    }

    fn pick_generators(&mut self) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x756e_6973);
        let mut gens = Vec::new();
        while self.closure_size(&gens) < self.order() {
            gens.push(rng.gen_range(0..self.order()));
        }
        self.gens = gens;
    }

    fn compute_classes(&mut self) {
        let inv: Vec<usize> = self.gens.iter().map(|&g| self.inverse(g)).collect();
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        // the identity first, then in element order
        let starts = std::iter::once(self.identity).chain(0..self.order());
        for s in starts {
            if class_of[s] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[s] = id;
            let mut todo = vec![s];
            let mut size = 1u128;
            while let Some(x) = todo.pop() {
                for (&g, &gi) in self.gens.iter().zip(&inv) {
                    let y = self.mul(self.mul(g, x), gi);
                    if class_of[y] == usize::MAX {
                        class_of[y] = id;
                        size += 1;
                        todo.push(y);
                    }
                }
            }
            classes.push(EClass { rep: s, order: self.element_order(s), size, power_to: Vec::new() });
        }
        for c in classes.iter_mut() {
            let mut x = self.identity;
            for _ in 0..c.order {
                c.power_to.push(class_of[x]);
                x = self.mul(x, c.rep);
            }
        }
        self.class_of = class_of;
        self.classes = classes;
    }

    fn assemble(
        family: Family,
        q: u64,
        field: Field,
        step: u32,
        elements: Vec<Mat>,
        expected: u128,
    ) -> Result<EnumeratedGroup, OracleError> {
        if elements.len() as u128 != expected {
            return Err(OracleError::Count { got: elements.len(), expected });
        }
        let bits = 32 - (field.size - 1).leading_zeros();
        let index: HashMap<u64, usize> = elements.iter().enumerate().map(|(i, m)| (m.key(bits), i)).collect();
        let n = elements[0].n as usize;
        let mut g = EnumeratedGroup {
            family,
            q,
            field,
            step,
            bits,
            elements,
            index,
            identity: 0,
            gens: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        g.identity = g.find(&Mat::identity(n)).expect("identity missing");
        g.pick_generators();
        g.compute_classes();
        Ok(g)
    }
}

/// |G| of the projective group, or None for an unsupported family.
pub fn theoretical_order(family: Family, q: u64) -> Option<u128> {
    let q = q as u128;
    Some(match family {
        Family::Pgl2 => q * (q * q - 1),
        Family::Psl2 => q * (q * q - 1) / gcd(2, q as u64 - 1) as u128,
        Family::Pgu3 => q.pow(3) * (q * q - 1) * (q.pow(3) + 1),
        Family::Psu3 => q.pow(3) * (q * q - 1) * (q.pow(3) + 1) / gcd(3, q as u64 + 1) as u128,
        _ => return None,
    })
}

pub fn enumerate(family: Family, q: u64) -> Result<EnumeratedGroup, OracleError> {
    enumerate_bounded(family, q, DEFAULT_BOUND)
}

pub fn enumerate_bounded(family: Family, q: u64, bound: u128) -> Result<EnumeratedGroup, OracleError> {
    let unsupported = || OracleError::Unsupported(format!("{family}({q})"));
    if prime_power(q).is_none() || (family == Family::Psl2 && q.is_multiple_of(2)) {
        return Err(unsupported());
    }
    let order = theoretical_order(family, q).ok_or_else(unsupported)?;
    if order > bound {
        return Err(OracleError::Refused { required: order, bound });
    }
    match family {
        Family::Pgl2 | Family::Psl2 => {
            let f = Field::new(q)?;
            let els = linear2(&f, family == Family::Psl2);
            EnumeratedGroup::assemble(family, q, f, 1, els, order)
        }
        _ => {
            let f = Field::new(q * q)?;
            let els = unitary3(&f, q, family == Family::Psu3);
            EnumeratedGroup::assemble(family, q, f, q as u32 - 1, els, order)
        }
    }
}

/// PGL₂(q) (or its index-2 subgroup PSL₂(q) for odd q), first nonzero entry 1.
fn linear2(f: &Field, special: bool) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            if a == 0 && b != 1 {
                continue;
            }
            if a != 0 && a != 1 {
                continue;
            }
            for c in f.elements() {
                for d in f.elements() {
                    let m = Mat::from_rows(2, &[a, b, c, d]);
                    let det = m.det(f);
                    // the determinant modulo squares is well defined on cosets
                    if det != 0 && (!special || (det - 1).is_multiple_of(2)) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Hermitian product Σ xᵢ·yᵢ^q of two vectors over 𝔽_{q²}.
fn herm(f: &Field, q: u64, x: &[u32; 3], y: &[u32; 3]) -> u32 {
    (0..3).fold(0, |s, i| f.add(s, f.mul(x[i], f.pow(y[i], q))))
}

/// PGU₃(q) as unitary matrices for the identity form, modulo the scalars of
/// norm 1; with `special` only the image of SU₃(q).
fn unitary3(f: &Field, q: u64, special: bool) -> Vec<Mat> {
    let mut unit = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                let v = [a, b, c];
                if herm(f, q, &v, &v) == 1 {
                    unit.push(v);
                }
            }
        }
    }
    let step = q as u32 - 1;
    let cube = gcd(3, q + 1) as u32;
    let bits = 32 - (f.size - 1).leading_zeros();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for v1 in &unit {
        // fixing the first nonzero entry of column one picks one coset rep
        let lead = v1.iter().find(|&&x| x != 0).unwrap();
        if (lead - 1) >= step {
            continue;
        }
        for v2 in unit.iter().filter(|v| herm(f, q, v, v1) == 0) {
            for v3 in unit.iter().filter(|v| herm(f, q, v, v1) == 0 && herm(f, q, v, v2) == 0) {
                let m = Mat::from_rows(3, &[v1[0], v2[0], v3[0], v1[1], v2[1], v3[1], v1[2], v2[2], v3[2]]);
                if special {
                    // det lies in μ_{q+1} = ⟨g^(q−1)⟩; SU₃·Z needs a cube there
                    let t = (m.det(f) - 1) / step;
                    if !t.is_multiple_of(cube) {
                        continue;
                    }
                }
                let m = m.normalize(f, step);
                if seen.insert(m.key(bits)) {
                    out.push(m);
                }
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `matching[c]` is the enumerated class matched with model class c.
    pub matching: Vec<usize>,
    pub unique: bool,
    pub problems: Vec<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Joint colour refinement of both class sets by (order, size, colours of the powers).
fn refine(a: &[(u64, u128, &[usize])], b: &[(u64, u128, &[usize])]) -> (Vec<usize>, Vec<usize>) {
    let mut ids: HashMap<(u64, u128), usize> = HashMap::new();
    let mut col = |x: &(u64, u128, &[usize])| {
        let n = ids.len();
        *ids.entry((x.0, x.1)).or_insert(n)
    };
    let mut ca: Vec<usize> = a.iter().map(&mut col).collect();
    let mut cb: Vec<usize> = b.iter().map(&mut col).collect();
    let mut count = ids.len();
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut next = |c: usize, p: &[usize], old: &[usize]| {
            let key = (c, p.iter().map(|&j| old[j]).collect::<Vec<_>>());
            let n = ids.len();
            *ids.entry(key).or_insert(n)
        };
        let na: Vec<usize> = a.iter().enumerate().map(|(i, x)| next(ca[i], x.2, &ca)).collect();
        let nb: Vec<usize> = b.iter().enumerate().map(|(i, x)| next(cb[i], x.2, &cb)).collect();
        let n = ids.len();
        ca = na;
        cb = nb;
        if n == count {
            return (ca, cb);
        }
        count = n;
    }
}

/// Extends `map` by c ↦ t and everything the power maps force; false on conflict.
fn force(model: &CharTable, truth: &EnumeratedGroup, map: &mut [usize], used: &mut [bool], c: usize, t: usize) -> bool {
    let mut todo = vec![(c, t)];
    while let Some((c, t)) = todo.pop() {
        if map[c] != usize::MAX {
            if map[c] != t {
                return false;
            }
            continue;
        }
        if used[t] {
            return false;
        }
        map[c] = t;
        used[t] = true;
        let (pm, pt) = (&model.classes[c].power_to, &truth.classes[t].power_to);
        if pm.len() != pt.len() {
            return false;
        }
        todo.extend(pm.iter().copied().zip(pt.iter().copied()));
    }
    true
}

/// Counts power-map preserving bijections respecting colours, stopping at two.
fn search(
    model: &CharTable,
    truth: &EnumeratedGroup,
    colours: (&[usize], &[usize]),
    map: Vec<usize>,
    used: Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    if found.len() >= 2 {
        return;
    }
    let Some(c) = map.iter().position(|&x| x == usize::MAX) else {
        found.push(map);
        return;
    };
    for t in 0..truth.classes.len() {
        if used[t] || colours.1[t] != colours.0[c] {
            continue;
        }
        let (mut m2, mut u2) = (map.clone(), used.clone());
        if force(model, truth, &mut m2, &mut u2, c, t) {
            search(model, truth, colours, m2, u2, found);
        }
    }
}

/// Matches the classes of a generic table with an enumerated group: class
/// count, (order, size) multiset and the full power map.
pub fn compare_structure(model: &CharTable, truth: &EnumeratedGroup) -> StructureReport {
    let mut problems = Vec::new();
    let nm = model.classes.len();
    if nm != truth.classes.len() {
        problems.push(format!("class count {} vs {}", nm, truth.classes.len()));
        return StructureReport { matching: Vec::new(), unique: false, problems };
    }
    if model.order != truth.order() as u128 {
        problems.push(format!("group order {} vs {}", model.order, truth.order()));
    }
    let a: Vec<(u64, u128, &[usize])> =
        model.classes.iter().map(|c| (c.order, c.size, c.power_to.as_slice())).collect();
    let b: Vec<(u64, u128, &[usize])> =
        truth.classes.iter().map(|c| (c.order, c.size, c.power_to.as_slice())).collect();
    let (ca, cb) = refine(&a, &b);
    let (mut sa, mut sb) = (ca.clone(), cb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        for (i, c) in model.classes.iter().enumerate() {
            if !cb.contains(&ca[i]) {
                problems.push(format!("class {} (order {}, size {}) has no counterpart", c.label, c.order, c.size));
            }
        }
        if problems.is_empty() {
            problems.push("class fingerprints differ in multiplicity".into());
        }
        return StructureReport { matching: Vec::new(), unique: false, problems };
    }
    let mut found = Vec::new();
    search(model, truth, (&ca, &cb), vec![usize::MAX; nm], vec![false; nm], &mut found);
    match found.first() {
        None => {
            problems.push("no power-map preserving class correspondence".into());
            StructureReport { matching: Vec::new(), unique: false, problems }
        }
        Some(m) => StructureReport { matching: m.clone(), unique: found.len() == 1, problems },
    }
}

/// [χ restricted to ⟨g⟩, 1], summing χ over the actual powers of element `g`.
pub fn frobenius_m(truth: &EnumeratedGroup, char_values: &[CycNum], g: usize) -> Option<u64> {
    let mut acc = Accum::new();
    let one = Rat::from_integer(1.into());
    let mut x = truth.identity;
    let mut m = 0u64;
    loop {
        acc.add(&char_values[truth.class_of[x]], &one);
        m += 1;
        x = truth.mul(x, g);
        if x == truth.identity {
            break;
        }
    }
    let s = acc.finish().as_rational()? / Rat::from_integer(m.into());
    use num_traits::ToPrimitive;
    s.is_integer().then(|| s.to_integer().to_u64()).flatten()
}

/// Checks frobenius_m against eig1_mult for every row and class; returns the
/// number of (row, class) pairs compared.
pub fn double_entry(model: &CharTable, truth: &EnumeratedGroup, matching: &[usize]) -> Result<usize, String> {
    let mut n = 0;
    for (chi, row) in model.chars.iter().enumerate() {
        let mut vals = vec![CycNum::from_int(0); truth.classes.len()];
        for (c, &t) in matching.iter().enumerate() {
            vals[t] = row.values[c].clone();
        }
        for (c, &t) in matching.iter().enumerate() {
            let f = frobenius_m(truth, &vals, truth.classes[t].rep);
            let e = eig1_mult(model, chi, c).map_err(|e: MultError| e.to_string())?;
            if f != Some(e) {
                return Err(format!("{} at {}: frobenius {:?}, table {}", row.label, model.classes[c].label, f, e));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// Fixed-space dimension of a permutation (its number of cycles) and of the
/// standard constituent (one less).
pub fn perm_fixed_space(perm: &[usize]) -> (usize, usize) {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for s in 0..perm.len() {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
    }
    (cycles, cycles.saturating_sub(1))
}
