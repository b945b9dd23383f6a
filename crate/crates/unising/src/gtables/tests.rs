use super::*;

fn check(t: &CharTable) {
    if let Err(e) = t.validate() {
        panic!("{}: {e}", t.name);
    }
}

#[test]
fn pgl2_small() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49] {
        check(&build_pgl2(q).unwrap());
    }
}

#[test]
fn pgl2_q5_degrees() {
    let t = build_pgl2(5).unwrap();
    assert_eq!(t.order, 120);
    let mut d: Vec<i64> = t.chars.iter().map(|c| c.degree().as_i64().unwrap()).collect();
    d.sort();
    assert_eq!(d, vec![1, 1, 4, 4, 5, 5, 6]);
    assert_eq!(d.iter().map(|x| x * x).sum::<i64>(), 120);
}

#[test]
fn pgl2_q2_is_s3() {
    let t = build_pgl2(2).unwrap();
    assert_eq!(t.classes.len(), 3);
    let d: Vec<i64> = t.chars.iter().map(|c| c.degree().as_i64().unwrap()).collect();
    assert_eq!(d, vec![1, 2, 1]);
}

#[test]
fn psl2_small() {
    for q in [3u64, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49] {
        check(&build_psl2(q).unwrap());
    }
    assert!(build_psl2(8).is_err());
}

#[test]
fn psl2_q5_is_a5() {
    let t = build_psl2(5).unwrap();
    let mut s: Vec<u128> = t.classes.iter().map(|c| c.size).collect();
    s.sort();
    assert_eq!(s, vec![1, 12, 12, 15, 20]);
    let mut d: Vec<i64> = t.chars.iter().map(|c| c.degree().as_i64().unwrap()).collect();
    d.sort();
    assert_eq!(d, vec![1, 3, 3, 4, 5]);
}

#[test]
fn labels_resolve() {
    let t = build_pgl2(4).unwrap();
    assert_eq!(t.class_index("b").unwrap(), t.class_index("PGL2:b").unwrap());
    assert_eq!(t.class_index("b^1").unwrap(), t.class_index("b").unwrap());
    assert!(t.class_index("zz").is_err());
    assert!(t.char_index("psi").is_ok());
}

#[test]
fn unit_generators_generate() {
    for m in 1..200u64 {
        let gens = unit_generators(m);
        let mut seen = std::collections::BTreeSet::from([1 % m.max(1)]);
        let mut todo = vec![1 % m.max(1)];
        while let Some(x) = todo.pop() {
            for &g in &gens {
                let y = x * g % m;
                if seen.insert(y) {
                    todo.push(y);
                }
            }
        }
        let want = if m <= 2 { 1 } else { crate::numth::phi(m) as usize };
        assert_eq!(seen.len(), want, "m = {m}");
    }
}

#[test]
fn corrupted_table_rejected() {
    let mut t = build_pgl2(5).unwrap();
    t.chars[2].values[1] = CycNum::from_int(7);
    assert!(t.validate().is_err());
    let mut t = build_pgl2(5).unwrap();
    let last = t.classes.len() - 1;
    t.classes[last].size += 1;
    assert!(t.validate().is_err());
}

/// For pairwise coprime x ≤ y ≤ z, none equal to m, with xyz | m and
/// m > 6: x + y + z < m.
#[test]
fn small_coprime_divisor_sums() {
    use crate::numth::{divisors, gcd};
    for m in 7..=200u64 {
        let ds = divisors(m);
        for &x in &ds {
            for &y in ds.iter().filter(|&&y| y >= x) {
                for &z in ds.iter().filter(|&&z| z >= y) {
                    let ok = gcd(x, y) == 1 && gcd(x, z) == 1 && gcd(y, z) == 1;
                    if !ok || x == m || y == m || z == m || m % (x * y * z) != 0 {
                        continue;
                    }
                    assert!(x + y + z < m, "m={m} x={x} y={y} z={z}");
                }
            }
        }
    }
}

#[test]
fn pgu3_small() {
    for q in [2u64, 3, 4, 5] {
        check(&build_pgu3(q).unwrap());
    }
}

#[test]
fn pgu3_index_set_sizes() {
    let count = |t: &CharTable, pre: &str| {
        t.classes.iter().filter(|c| c.label.starts_with(pre)).count()
    };
    let t = build_pgu3(4).unwrap();
    assert_eq!(t.order, 4u128.pow(3) * 15 * 65);
    // F classes are indexed by the quotient set 𝒞, G by 𝒟, E by 𝒠
    assert_eq!(count(&t, "PGU3:F"), 5);
    assert_eq!(count(&t, "PGU3:G"), 4);
    assert_eq!(count(&t, "PGU3:E"), 2);
    let t = build_pgu3(5).unwrap();
    assert_eq!(count(&t, "PGU3:G"), 6 + 2);
    assert_eq!(count(&t, "PGU3:E"), 4);
    assert_eq!(build_pgu3(2).unwrap().order, 216);
}

#[test]
fn psu3_small() {
    for (q, n) in [(2u64, 6usize), (5, 14), (8, 28)] {
        let t = build_psu3(q).unwrap();
        check(&t);
        assert_eq!(t.classes.len(), n);
    }
    assert_eq!(build_psu3(5).unwrap().order, 126000);
    let t = build_psu3(4).unwrap();
    check(&t);
    assert_eq!(t.family.tag, Family::Psu3);
}

#[test]
fn suzuki_8() {
    let t = build_suzuki(8).unwrap();
    check(&t);
    assert_eq!(t.classes.len(), 11);
    assert_eq!(t.order, 29120);
    assert!(build_suzuki(2).is_err());
    assert!(build_suzuki(16).is_err());
}

#[test]
fn suzuki_32() {
    check(&build_suzuki(32).unwrap());
}

#[test]
fn ree_27() {
    let t = build_ree(27).unwrap();
    check(&t);
    assert_eq!(t.classes.len(), 35);
    assert_eq!(t.order, 10073444472);
}
