//! Eigenvalue multiplicities M_χ(g) and the full eigenvalue spectrum.
//!
//! For g of order m the multiplicity of ζ_m^i in a representation affording χ is
//! (1/m)·Σ_j χ(g^j)·ζ_m^(−ij). [`eig_mult`] evaluates that sum term by term
//! through the power map. [`spectrum`] groups the j with gcd(j, m) = d: since
//! χ(g^(du)) = σ_u(χ(g^d)) on a validated table, each group is a field trace
//! Tr_{ℚ(ζ_{m/d})/ℚ}(χ(g^d)·ζ_{m/d}^(−i)), which reduces to Ramanujan sums.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclo::{Accum, Rat, Root};
use crate::gtables::{CharTable, TableError};
use crate::numth::{divisors, moebius, phi};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MultError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("table corruption: multiplicity of E({m})^{i} for {char} at {class} is {value}")]
    NotNatural { char: String, class: String, m: u64, i: u64, value: String },
    #[error("table corruption: {char}({class}^{d}) lies outside the field of its order")]
    Field { char: String, class: String, d: u64 },
}

fn natural(t: &CharTable, chi: usize, c: usize, i: u64, v: &Rat) -> Result<u64, MultError> {
    if v.is_integer() && !v.is_negative() {
        if let Some(x) = v.to_integer().to_u64() {
            return Ok(x);
        }
    }
    Err(MultError::NotNatural {
        char: t.chars[chi].label.clone(),
        class: t.classes[c].label.clone(),
        m: t.classes[c].order,
        i,
        value: v.to_string(),
    })
}

/// Multiplicity of the eigenvalue ζ_m^i (m the order of class `c`), by the
/// direct sum over the powers of g.
pub fn eig_mult(t: &CharTable, chi: usize, c: usize, i: i64) -> Result<u64, MultError> {
    let cl = &t.classes[c];
    let m = cl.order;
    let mut acc = Accum::new();
    let one = Rat::one();
    for (j, &pc) in cl.power_to.iter().enumerate() {
        acc.add_shifted(&t.chars[chi].values[pc], Root::new(m, -i * j as i64), &one);
    }
    let s = acc.finish();
    let iu = crate::numth::rem(i, m);
    let Some(v) = s.as_rational() else {
        return Err(MultError::NotNatural {
            char: t.chars[chi].label.clone(),
            class: cl.label.clone(),
            m,
            i: iu,
            value: format!("({s})/{m}"),
        });
    };
    natural(t, chi, c, iu, &(v / Rat::from_integer(BigInt::from(m))))
}

/// M_χ(g): multiplicity of the eigenvalue 1.
pub fn eig1_mult(t: &CharTable, chi: usize, c: usize) -> Result<u64, MultError> {
    eig_mult(t, chi, c, 0)
}

/// Label-based [`eig_mult`].
pub fn eig_mult_by_label(t: &CharTable, chi: &str, class: &str, i: i64) -> Result<u64, MultError> {
    eig_mult(t, t.char_index(chi)?, t.class_index(class)?, i)
}

/// Multiplicities of ζ_m^0, …, ζ_m^(m−1) for χ at class `c`; they sum to χ(1).
pub fn spectrum(t: &CharTable, chi: usize, c: usize) -> Result<Vec<u64>, MultError> {
    spectrum_range(t, chi, c, t.classes[c].order)
}

/// The first `upto` entries of [`spectrum`].
fn spectrum_range(t: &CharTable, chi: usize, c: usize, upto: u64) -> Result<Vec<u64>, MultError> {
    let cl = &t.classes[c];
    let m = cl.order;
    let row = &t.chars[chi];
    // (n = m/d, terms of χ(g^d) as roots with coefficients)
    let mut parts: Vec<(u64, Vec<(Root, Rat)>)> = Vec::new();
    for d in divisors(m) {
        let n = m / d;
        let x = &row.values[cl.power_to[(d % m) as usize]];
        let f = x.conductor();
        if !n.is_multiple_of(f) {
            return Err(MultError::Field { char: row.label.clone(), class: cl.label.clone(), d });
        }
        let terms = x.terms().iter().map(|(e, a)| (Root::new(f, *e as i64), a.clone())).collect();
        parts.push((n, terms));
    }
    let ms = Rat::from_integer(BigInt::from(m));
    let mut out = Vec::with_capacity(upto as usize);
    let mut total = Rat::zero();
    for i in 0..upto {
        let mut s = Rat::zero();
        for (n, terms) in &parts {
            let shift = Root::new(*n, -(i as i64));
            let phin = phi(*n);
            for (r, a) in terms {
                let o = r.mul(shift).order();
                let mu = moebius(o);
                if mu != 0 {
                    let k = (phin / phi(o)) as i64 * mu;
                    s += a * Rat::from_integer(BigInt::from(k));
                }
            }
        }
        let v = s / &ms;
        let x = natural(t, chi, c, i, &v)?;
        total += v;
        out.push(x);
    }
    if upto == m && Some(total.clone()) != row.degree().as_rational() {
        return Err(MultError::NotNatural {
            char: row.label.clone(),
            class: cl.label.clone(),
            m,
            i: m,
            value: format!("spectrum sums to {total}"),
        });
    }
    Ok(out)
}

/// M_χ(g) through the grouped sum; agrees with [`eig1_mult`] on validated tables.
pub fn eig1_fast(t: &CharTable, chi: usize, c: usize) -> Result<u64, MultError> {
    Ok(spectrum_range(t, chi, c, 1)?[0])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultVector {
    pub char_label: String,
    /// (class label, M_χ) in table order.
    pub entries: Vec<(String, u64)>,
    /// Per class, the multiplicities of ζ_m^i for i = 0..m.
    pub full_spectrum: Option<Vec<Vec<u64>>>,
}

impl MultVector {
    pub fn get(&self, class: &str) -> Option<u64> {
        self.entries.iter().find(|(l, _)| l == class).map(|x| x.1)
    }

    pub fn zero_classes(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().filter(|(_, m)| *m == 0).map(|(l, _)| l.as_str())
    }
}

pub fn mult_vector(t: &CharTable, chi: usize, with_spectrum: bool) -> Result<MultVector, MultError> {
    let mut entries = Vec::with_capacity(t.classes.len());
    let mut full = Vec::new();
    for c in 0..t.classes.len() {
        let m = if with_spectrum {
            let s = spectrum(t, chi, c)?;
            let m0 = s[0];
            full.push(s);
            m0
        } else {
            eig1_fast(t, chi, c)?
        };
        entries.push((t.classes[c].label.clone(), m));
    }
    Ok(MultVector {
        char_label: t.chars[chi].label.clone(),
        entries,
        full_spectrum: with_spectrum.then_some(full),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtables::{build_pgl2, build_pgu3, build_psl2, build_psu3, build_ree, build_suzuki};

    fn idx(t: &CharTable, chi: &str, c: &str) -> (usize, usize) {
        (t.char_index(chi).unwrap(), t.class_index(c).unwrap())
    }

    #[test]
    fn psi_at_b_pgl2_4() {
        let t = build_pgl2(4).unwrap();
        assert_eq!(eig_mult_by_label(&t, "psi", "b", 0).unwrap(), 0);
    }

    #[test]
    fn principal_is_one() {
        let t = build_psu3(5).unwrap();
        for c in 0..t.classes.len() {
            assert_eq!(eig1_mult(&t, 0, c).unwrap(), 1);
            assert_eq!(eig1_fast(&t, 0, c).unwrap(), 1);
        }
    }

    #[test]
    fn a5_degree4_at_5cycle() {
        let t = build_psl2(5).unwrap();
        let chi = t.chars.iter().position(|r| r.degree().as_i64() == Some(4)).unwrap();
        for c in t.classes.iter().enumerate().filter(|(_, c)| c.order == 5).map(|x| x.0) {
            assert_eq!(eig1_mult(&t, chi, c).unwrap(), 0);
        }
    }

    #[test]
    fn pgl2_even_closed_forms() {
        for q in [4u64, 8, 16] {
            let t = build_pgl2(q).unwrap();
            let a = t.class_index("a").unwrap();
            let c = t.class_index("c").unwrap();
            for (chi, row) in t.chars.iter().enumerate() {
                if row.label.starts_with("chi_") {
                    assert_eq!(eig1_mult(&t, chi, a).unwrap(), 1);
                }
                if row.label.starts_with("theta_") {
                    assert_eq!(eig1_mult(&t, chi, c).unwrap(), (q - 2) / 2);
                }
            }
        }
    }

    #[test]
    fn pgu3_steinberg_like_zeros() {
        for q in [3u64, 4, 5, 7] {
            let t = build_pgu3(q).unwrap();
            let name = if (q + 1) % 3 == 0 { "chi_{q^2-q}^(0)" } else { "chi_{q^2-q}" };
            let chi = t.char_index(name).unwrap();
            for (c, cl) in t.classes.iter().enumerate() {
                let l = &cl.label[5..];
                if l == "F" || l == "G" {
                    assert_eq!(eig1_mult(&t, chi, c).unwrap(), 0, "q={q} {l}");
                }
            }
        }
    }

    #[test]
    fn ree27_chi8_at_y() {
        let t = build_ree(27).unwrap();
        // χ₈(1) = q⁶ = 27³ and χ₈ vanishes on X and Y
        let (chi, c) = idx(&t, "chi_8", "Y");
        assert_eq!(eig1_mult(&t, chi, c).unwrap(), 2187);
        let (chi, c) = idx(&t, "chi_9", "Y");
        assert_eq!(eig1_mult(&t, chi, c).unwrap(), 73);
    }

    /// The grouped route and the direct sum agree everywhere.
    fn agree_all(t: &CharTable) {
        for chi in 0..t.chars.len() {
            for c in 0..t.classes.len() {
                let s = spectrum(t, chi, c).unwrap();
                for (i, &x) in s.iter().enumerate() {
                    assert_eq!(eig_mult(t, chi, c, i as i64).unwrap(), x, "{} {}", chi, c);
                }
            }
        }
    }

    #[test]
    fn routes_agree() {
        agree_all(&build_pgl2(9).unwrap());
        agree_all(&build_psl2(13).unwrap());
        agree_all(&build_pgu3(3).unwrap());
        agree_all(&build_psu3(5).unwrap());
        agree_all(&build_suzuki(8).unwrap());
    }

    #[test]
    fn routes_agree_ree27_eig1() {
        let t = build_ree(27).unwrap();
        for chi in 0..t.chars.len() {
            for c in 0..t.classes.len() {
                assert_eq!(eig1_mult(&t, chi, c).unwrap(), eig1_fast(&t, chi, c).unwrap());
            }
        }
    }

    #[test]
    fn corrupted_power_map_detected() {
        let mut t = build_pgl2(7).unwrap();
        let b = t.class_index("b").unwrap();
        // send g^2 to the wrong class
        let wrong = t.class_index("c").unwrap();
        t.classes[b].power_to[2] = wrong;
        let bad = (0..t.chars.len()).any(|chi| eig1_mult(&t, chi, b).is_err());
        assert!(bad);
    }

    #[test]
    fn mult_vector_spectrum_sums() {
        let t = build_suzuki(8).unwrap();
        for chi in 1..t.chars.len() {
            let v = mult_vector(&t, chi, true).unwrap();
            let spec = v.full_spectrum.as_ref().unwrap();
            for (c, s) in spec.iter().enumerate() {
                assert_eq!(s[0], v.entries[c].1);
                assert!(s.iter().all(|&x| x >= 1));
            }
        }
    }
}
