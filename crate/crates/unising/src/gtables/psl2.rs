use super::{num, torus_classes, z, Builder, CharTable, CycNum, Family, TableError};
use crate::cyclo::{rat, sqrt_q};
use crate::numth::{legendre, prime_power};

/// Character table of PSL₂(q), q odd.
pub fn build_psl2(q: u64) -> Result<CharTable, TableError> {
    let Some((p, k)) = prime_power(q) else {
        return Err(TableError::Domain(format!("PSL2: {q} is not a prime power")));
    };
    if p == 2 {
        return Err(TableError::Domain(format!("PSL2: q = {q} is even; use PGL2")));
    }
    let g = (q * (q * q - 1) / 2) as u128;
    let (na, nb) = ((q - 1) / 2, q.div_ceil(2));
    let mut b = Builder::new(Family::Psl2, q, g);
    b.class("I", 1, g, |_| "I".into());
    // c^h is conjugate to c iff h is a square in F_q
    let unip = move |me: &'static str, other: &'static str| {
        move |h: u64| -> String {
            if h.is_multiple_of(p) {
                "I".into()
            } else if k % 2 == 0 || legendre(h as i64, p) == 1 {
                me.into()
            } else {
                other.into()
            }
        }
    };
    b.class("c", p, q as u128, unip("c", "d"));
    b.class("d", p, q as u128, unip("d", "c"));
    let inv = |n: u64| move |x: u64| if 2 * x == n { 2 * n as u128 } else { n as u128 };
    torus_classes(&mut b, "a", na, "I", inv(na));
    torus_classes(&mut b, "b", nb, "I", inv(nb));

    let syms = b.syms();
    let kind: Vec<(char, i64)> = syms
        .iter()
        .map(|s| {
            let t = s.chars().next().unwrap();
            let e = s.split_once('^').map_or(1, |(_, e)| e.parse().unwrap());
            (t, e)
        })
        .collect();
    let qi = q as i64;
    let (ra, rb) = (q - 1, q + 1);
    let row = |v: [CycNum; 3], fa: &dyn Fn(i64) -> CycNum, fb: &dyn Fn(i64) -> CycNum| {
        kind.iter()
            .map(|&(t, e)| match t {
                'I' => v[0].clone(),
                'c' => v[1].clone(),
                'd' => v[2].clone(),
                'a' => fa(e),
                _ => fb(e),
            })
            .collect::<Vec<_>>()
    };
    let n = |x: i64| num(x);
    b.char("1".into(), vec![], row([n(1), n(1), n(1)], &|_| n(1), &|_| n(1)));
    b.char("psi".into(), vec![], row([n(qi), n(0), n(0)], &|_| n(1), &|_| n(-1)));
    let q1 = q % 4 == 1;
    let imax = if q1 { (q - 5) / 4 } else { (q - 3) / 4 };
    for i in 1..=imax as i64 {
        let r = row([n(qi + 1), n(1), n(1)], &|l| z(ra, 2 * i * l) + z(ra, -2 * i * l), &|_| n(0));
        b.char(format!("chi_{i}"), vec![i], r);
    }
    let jmax = if q1 { (q - 1) / 4 } else { (q - 3) / 4 };
    for j in 1..=jmax as i64 {
        let r = row([n(qi - 1), n(-1), n(-1)], &|_| n(0), &|m| {
            -(z(rb, 2 * j * m) + z(rb, -2 * j * m))
        });
        b.char(format!("theta_{j}"), vec![j], r);
    }
    // √q if q ≡ 1 mod 4, else √−q
    let s = sqrt_q(p, k).map_err(|e| TableError::Domain(e.to_string()))?;
    let half = rat(1, 2);
    let sgn = |e: i64| n(if e % 2 == 0 { 1 } else { -1 });
    for (idx, e) in [(1, 1i64), (2, -1)] {
        let se = s.scale(&rat(e, 1));
        if q1 {
            let plus = (n(1) + &se).scale(&half);
            let minus = (n(1) - &se).scale(&half);
            let deg = n((qi + 1) / 2);
            let r = row([deg, plus, minus], &|l| sgn(l), &|_| n(0));
            b.char(format!("xi_{idx}"), vec![idx], r);
        } else {
            let plus = (n(-1) + &se).scale(&half);
            let minus = (n(-1) - &se).scale(&half);
            let deg = n((qi - 1) / 2);
            let r = row([deg, plus, minus], &|_| n(0), &|m| sgn(m + 1));
            b.char(format!("eta_{idx}"), vec![idx], r);
        }
    }
    b.finish()
}
