use super::{canonical_quotient, num, orbit_min, z, Builder, CharTable, CycNum, Family, TableError};
use crate::cyclo::iota;
use crate::numth::{exact_sqrt, gcd, prime_power};

fn pw(sym: &str, x: u64) -> String {
    if x == 1 { sym.to_string() } else { format!("{sym}^{x}") }
}

/// Character table of the Suzuki group Sz(q), q = 2^(2m+1) ≥ 8.
pub fn build_suzuki(q: u64) -> Result<CharTable, TableError> {
    if !Family::Suzuki.admissible(q) {
        return Err(TableError::Domain(format!("Sz: q = {q} is not an odd power of 2 with q >= 8")));
    }
    debug_assert!(prime_power(q).is_some());
    let r = exact_sqrt(2 * q).unwrap();
    let qq = q as u128;
    let g = qq * qq * (qq * qq + 1) * (qq - 1);
    let (n0, n1, n2) = (q - 1, q + r + 1, q - r + 1);
    let mut b = Builder::new(Family::Suzuki, q, g);
    b.class("1", 1, g, |_| "1".into());
    b.class("s", 2, qq * qq, |j| if j % 2 == 0 { "1".into() } else { "s".into() });
    b.class("r", 4, 2 * qq, |j| ["1", "r", "s", "r^-1"][(j % 4) as usize].into());
    b.class("r^-1", 4, 2 * qq, |j| ["1", "r^-1", "s", "r"][(j % 4) as usize].into());

    let qe = |e: super::QuotientError| TableError::Domain(e.to_string());
    let tori: [(&str, u64, Vec<u64>); 3] = [
        ("a", n0, vec![n0 - 1]),
        ("b", n1, vec![n1 - 1, q % n1]),
        ("c", n2, vec![n2 - 1, q % n2]),
    ];
    let mut reps = Vec::new();
    for (sym, n, ms) in &tori {
        let all: Vec<u64> = (1..*n).collect();
        let o = canonical_quotient(&all, |&x| ms.iter().map(|&m| x * m % n).collect()).map_err(qe)?;
        for &x in &o {
            let (n, ms, sym2) = (*n, ms.clone(), sym.to_string());
            b.class(&pw(sym, x), n / gcd(x, n), n as u128, move |j| match x * j % n {
                0 => "1".into(),
                y => pw(&sym2, orbit_min(y, n, &ms)),
            });
        }
        reps.push(o);
    }
    let kind: Vec<(char, i64)> = b
        .syms()
        .iter()
        .map(|s| match s.as_str() {
            "1" => ('1', 0),
            "s" => ('s', 0),
            "r" => ('r', 0),
            "r^-1" => ('i', 0),
            _ => {
                let t = s.chars().next().unwrap();
                (t, s.split_once('^').map_or(1, |(_, e)| e.parse().unwrap()))
            }
        })
        .collect();
    let (qi, ri) = (q as i64, r as i64);
    let orbit4 = |n: u64, e: i64| -> CycNum { [1, -1, qi, -qi].iter().map(|&m| z(n, e * m)).sum() };

    b.char_fn("1".into(), vec![], |_| num(1));
    b.char_fn("St".into(), vec![], |c| {
        num(match kind[c].0 {
            '1' => qi * qi,
            'a' => 1,
            'b' | 'c' => -1,
            _ => 0,
        })
    });
    for &i in &reps[0] {
        let i = i as i64;
        b.char_fn(format!("X_{i}"), vec![i], |c| match kind[c] {
            ('1', _) => num(qi * qi + 1),
            ('s' | 'r' | 'i', _) => num(1),
            ('a', x) => z(n0, i * x) + z(n0, -i * x),
            _ => num(0),
        });
    }
    for (fam, n, t, deg, sv) in
        [("Y", n1, 'b', (qi - ri + 1) * (qi - 1), ri - 1), ("Z", n2, 'c', (qi + ri + 1) * (qi - 1), -ri - 1)]
    {
        let idx = if t == 'b' { 1 } else { 2 };
        for &j in &reps[idx] {
            let j = j as i64;
            b.char_fn(format!("{fam}_{j}"), vec![j], |c| match kind[c] {
                ('1', _) => num(deg),
                ('s', _) => num(sv),
                ('r' | 'i', _) => num(-1),
                (tt, x) if tt == t => -orbit4(n, j * x),
                _ => num(0),
            });
        }
    }
    for (w, e) in [(1i64, 1i64), (2, -1)] {
        let half = ri / 2;
        b.char_fn(format!("W_{w}"), vec![e], |c| match kind[c].0 {
            '1' => num(half * (qi - 1)),
            's' => num(-half),
            'r' => iota() * num(e * half),
            'i' => iota() * num(-e * half),
            'a' => num(0),
            'b' => num(1),
            _ => num(-1),
        });
    }
    b.finish()
}
