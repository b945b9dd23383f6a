use super::{num, torus_classes, z, Builder, CharTable, Family, TableError};
use crate::numth::prime_power;

/// Character table of PGL₂(q).
pub fn build_pgl2(q: u64) -> Result<CharTable, TableError> {
    let Some((p, _)) = prime_power(q) else {
        return Err(TableError::Domain(format!("PGL2: {q} is not a prime power")));
    };
    let (qq, g) = (q as u128, (q * (q * q - 1)) as u128);
    let mut b = Builder::new(Family::Pgl2, q, g);
    b.class("I", 1, g, |_| "I".into());
    b.class("c", p, qq, move |j| if j % p == 0 { "I".into() } else { "c".into() });
    let inv = |n: u64| move |x: u64| if 2 * x == n { 2 * n as u128 } else { n as u128 };
    torus_classes(&mut b, "a", q - 1, "I", inv(q - 1));
    torus_classes(&mut b, "b", q + 1, "I", inv(q + 1));

    // exponent of each class in its torus
    let syms = b.syms();
    let tor = |s: &str, t: char| -> Option<i64> {
        let rest = s.strip_prefix(t)?;
        Some(if rest.is_empty() { 1 } else { rest[1..].parse().unwrap() })
    };
    let kind: Vec<(char, i64)> = syms
        .iter()
        .map(|s| match s.as_str() {
            "I" => ('I', 0),
            "c" => ('c', 0),
            _ => tor(s, 'a').map(|l| ('a', l)).or(tor(s, 'b').map(|m| ('b', m))).unwrap(),
        })
        .collect();
    let (qi, ra, rb) = (q as i64, q - 1, q + 1);
    let sgn = |e: i64| num(if e % 2 == 0 { 1 } else { -1 });
    let ch = |v: [i64; 2], fa: &dyn Fn(i64) -> super::CycNum, fb: &dyn Fn(i64) -> super::CycNum| {
        kind.iter()
            .map(|&(t, e)| match t {
                'I' => num(v[0]),
                'c' => num(v[1]),
                'a' => fa(e),
                _ => fb(e),
            })
            .collect::<Vec<_>>()
    };

    if q.is_multiple_of(2) {
        b.char("1".into(), vec![], ch([1, 1], &|_| num(1), &|_| num(1)));
        b.char("psi".into(), vec![], ch([qi, 0], &|_| num(1), &|_| num(-1)));
    } else {
        for k in 0..2i64 {
            let lbl = if k == 0 { "1".to_string() } else { "lambda_1".to_string() };
            b.char(lbl, vec![k], ch([1, 1], &|l| sgn(k * l), &|m| sgn(k * m)));
        }
        for k in 0..2i64 {
            b.char(format!("psi_{k}"), vec![k], ch([qi, 0], &|l| sgn(k * l), &|m| -sgn(k * m)));
        }
    }
    let imax = if q.is_multiple_of(2) { (q - 2) / 2 } else { (q - 3) / 2 };
    for i in 1..=imax as i64 {
        let row = ch([qi + 1, 1], &|l| z(ra, i * l) + z(ra, -i * l), &|_| num(0));
        b.char(format!("chi_{i}"), vec![i], row);
    }
    let jmax = if q.is_multiple_of(2) { q / 2 } else { (q - 1) / 2 };
    for j in 1..=jmax as i64 {
        let row = ch([qi - 1, -1], &|_| num(0), &|m| -(z(rb, j * m) + z(rb, -j * m)));
        b.char(format!("theta_{j}"), vec![j], row);
    }
    b.finish()
}
