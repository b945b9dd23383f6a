use super::{canonical_quotient, num, z, Builder, CharTable, CycNum, Family, TableError};
use crate::numth::{gcd, prime_power};

/// |PGU₃(q)| = q³(q²−1)(q³+1).
pub fn pgu3_order(q: u64) -> u128 {
    let q = q as u128;
    q * q * q * (q * q - 1) * (q * q * q + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum K {
    I,
    A,
    B,
    C(u64),
    D(u64),
    E(u64, u64),
    F(u64),
    G(u64),
}

impl K {
    pub(crate) fn sym(self) -> String {
        match self {
            K::I => "I".into(),
            K::A => "A".into(),
            K::B => "B".into(),
            K::C(1) => "C".into(),
            K::C(a) => format!("C^{a}"),
            K::D(b) => format!("D({b})"),
            K::E(a, b) => format!("E({a},{b})"),
            K::F(1) => "F".into(),
            K::F(c) => format!("F^{c}"),
            K::G(1) => "G".into(),
            K::G(d) => format!("G^{d}"),
        }
    }
}

/// Index data shared with the PSU₃ builder.
pub(crate) struct Pgu3Data {
    pub n: u64,
    pub kinds: Vec<K>,
    /// δ: the exponent of the determinant-type linear character.
    pub delta: Vec<i64>,
}

/// Lexicographically least translate of the 3-set {x, y, z} ⊂ ℤ/N with a 0.
fn canon_e(ex: [u64; 3], n: u64) -> (u64, u64) {
    let mut best = None;
    for &t in &ex {
        let mut pr: Vec<u64> = ex.iter().map(|&x| (x + n - t) % n).collect();
        pr.sort();
        let pair = (pr[1], pr[2]);
        if best.is_none_or(|b| pair < b) {
            best = Some(pair);
        }
    }
    best.unwrap()
}

fn cls_exps(ex: [u64; 3], n: u64) -> K {
    let ex = ex.map(|x| x % n);
    if ex[0] == ex[1] && ex[1] == ex[2] {
        return K::I;
    }
    for i in 0..3 {
        let o: Vec<u64> = (0..3).filter(|&j| j != i).map(|j| ex[j]).collect();
        if o[0] == o[1] {
            return K::C((ex[i] + n - o[0]) % n);
        }
    }
    let (a, b) = canon_e(ex, n);
    K::E(a, b)
}

pub fn build_pgu3(q: u64) -> Result<CharTable, TableError> {
    Ok(pgu3_parts(q)?.0)
}

pub(crate) fn pgu3_parts(q: u64) -> Result<(CharTable, Pgu3Data), TableError> {
    let Some((p, _)) = prime_power(q) else {
        return Err(TableError::Domain(format!("PGU3: {q} is not a prime power")));
    };
    let n = q + 1;
    let three = n.is_multiple_of(3);
    let s = n / 3;
    let mq = q * q - q + 1;
    let q2 = q * q - 1;
    let g = pgu3_order(q);
    let (qq, nn) = (q as u128, n as u128);
    let cc = move |c: u64| (c % q2).min((q2 - c % q2) * q % q2);
    let cd = move |d: u64| {
        let d = d % mq;
        d.min((mq - d) * q % mq).min(d * q % mq * q % mq)
    };
    let qe = |e: crate::gtables::QuotientError| TableError::Domain(e.to_string());
    let e_reps = {
        let all: Vec<(u64, u64)> = (1..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        canonical_quotient(&all, |&(a, b)| {
            let sorted = |x: u64, y: u64| (x.min(y), x.max(y));
            vec![sorted(b - a, n - a), sorted(n - b, n - b + a)]
        })
        .map_err(qe)?
    };
    let f_reps = {
        let all: Vec<u64> = (1..q2).filter(|c| c % (q - 1) != 0).collect();
        canonical_quotient(&all, |&c| vec![(q2 - c) * q % q2]).map_err(qe)?
    };
    let g_reps = {
        let all: Vec<u64> = (1..mq).collect();
        canonical_quotient(&all, |&d| vec![(mq - d) * q % mq, d * q % mq * q % mq]).map_err(qe)?
    };
    debug_assert!(f_reps.iter().all(|&c| cc(c) == c) && g_reps.iter().all(|&d| cd(d) == d));

    let mut kinds = vec![K::I, K::A, K::B];
    kinds.extend((1..n).map(K::C));
    kinds.extend((1..n).map(K::D));
    kinds.extend(e_reps.iter().map(|&(a, b)| K::E(a, b)));
    kinds.extend(f_reps.iter().map(|&c| K::F(c)));
    kinds.extend(g_reps.iter().map(|&d| K::G(d)));

    let mut bld = Builder::new(Family::Pgu3, q, g);
    for &k in &kinds {
        let sym = k.sym();
        let (order, cent): (u64, u128) = match k {
            K::I => (1, g),
            K::A => (p, qq * qq * qq * (qq + 1)),
            K::B => (if p == 2 { 4 } else { p }, qq * qq),
            K::C(a) => (n / gcd(a, n), qq * (qq + 1) * (qq * qq - 1)),
            K::D(b) => (p * n / gcd(b, n), qq * (qq + 1)),
            K::E(a, b) => {
                let sp = three && (a, b) == (s, 2 * s);
                (n / gcd(gcd(a, b), n), if sp { 3 * nn * nn } else { nn * nn })
            }
            K::F(c) => (q2 / gcd(c, q2), q2 as u128),
            K::G(d) => {
                let sp = three && d % (mq / 3) == 0;
                (mq / gcd(d, mq), if sp { 3 * mq as u128 } else { mq as u128 })
            }
        };
        let power = move |j: u64| -> K {
            match k {
                K::I => K::I,
                K::A => if j.is_multiple_of(p) { K::I } else { K::A },
                K::B if p == 2 => [K::I, K::B, K::A, K::B][(j % 4) as usize],
                K::B => if j.is_multiple_of(p) { K::I } else { K::B },
                K::C(a) => match a * j % n {
                    0 => K::I,
                    x => K::C(x),
                },
                K::D(b) => {
                    let x = b * j % n;
                    match (j.is_multiple_of(p), x) {
                        (true, 0) => K::I,
                        (true, x) => K::C(x),
                        (false, 0) => K::A,
                        (false, x) => K::D(x),
                    }
                }
                K::E(a, b) => cls_exps([a * j, b * j, 0], n),
                K::F(c) => {
                    let x = c * j % q2;
                    if x == 0 {
                        K::I
                    } else if x.is_multiple_of(q - 1) {
                        K::C((n - x / (q - 1) % n) % n)
                    } else {
                        K::F(cc(x))
                    }
                }
                K::G(d) => match d * j % mq {
                    0 => K::I,
                    x => K::G(cd(x)),
                },
            }
        };
        bld.class(&sym, order, cent, move |j| power(j).sym());
    }

    let delta: Vec<i64> = kinds
        .iter()
        .map(|k| match *k {
            K::I | K::A | K::B => 0,
            K::C(a) => a as i64,
            K::D(b) => b as i64,
            K::E(a, b) => (a + b) as i64,
            K::F(c) => -(c as i64),
            K::G(d) => d as i64,
        })
        .collect();

    let ni = n as i64;
    let qi = q as i64;
    let rho = |e: i64| z(n, e);
    let ks: &[i64] = if three { &[0, 1, 2] } else { &[0] };
    let tw = |k: i64| if three { format!("^({k})") } else { String::new() };
    for &k in ks {
        let lam = |c: usize| if three { z(3, k * delta[c]) } else { num(1) };
        let fam: [(&str, [i64; 8]); 3] = [
            ("chi_1", [1; 8]),
            ("chi_{q^2-q}", [qi * qi - qi, -qi, 0, -(qi - 1), 1, 2, 0, -1]),
            ("chi_{q^3}", [qi * qi * qi, 0, 0, qi, 0, -1, 1, -1]),
        ];
        for (name, vals) in fam {
            bld.char_fn(format!("{name}{}", tw(k)), vec![k], |c| {
                let slot = match kinds[c] {
                    K::I => 0,
                    K::A => 1,
                    K::B => 2,
                    K::C(_) => 3,
                    K::D(_) => 4,
                    K::E(..) => 5,
                    K::F(_) => 6,
                    K::G(_) => 7,
                };
                num(vals[slot]) * lam(c)
            });
        }
    }
    let hs: Vec<i64> = (1..ni).filter(|h| !(three && h % s as i64 == 0)).collect();
    let cyc = |x: i64, y: i64, h: i64| -> CycNum {
        [(x, y, 0), (y, 0, x), (0, x, y)]
            .iter()
            .map(|&(u, v, t)| rho(h * (u + v - 2 * t)))
            .sum()
    };
    for sign in [1i64, -1] {
        for &h in &hs {
            let name = if sign == 1 { "chi_{q^2-q+1}" } else { "chi_{q(q^2-q+1)}" };
            bld.char_fn(format!("{name}^({h})"), vec![h], |c| match kinds[c] {
                K::I => num(if sign == 1 { qi * qi - qi + 1 } else { qi * (qi * qi - qi + 1) }),
                K::A => num(if sign == 1 { -(qi - 1) } else { qi }),
                K::B => num(if sign == 1 { 1 } else { 0 }),
                K::C(a) => {
                    let a = a as i64;
                    if sign == 1 {
                        num(-(qi - 1)) * rho(a * h) + rho(-2 * a * h)
                    } else {
                        num(qi - 1) * rho(a * h) + num(qi) * rho(-2 * a * h)
                    }
                }
                K::D(b) => {
                    let b = b as i64;
                    if sign == 1 { rho(b * h) + rho(-2 * b * h) } else { -rho(b * h) }
                }
                K::E(a, b) => num(sign) * cyc(a as i64, b as i64, h),
                K::F(c) => rho(-(c as i64) * h),
                K::G(_) => num(0),
            });
        }
    }
    let mut us = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let c = (2 * n - a - b) % n;
            if c > b {
                us.push([a, b, c]);
            }
        }
    }
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for u in us {
        let ui = u.map(|x| x as i64);
        let label = format!("chi_{{(q-1)(q^2-q+1)}}^({},{},{})", u[0], u[1], u[2]);
        bld.char_fn(label, ui.to_vec(), |c| match kinds[c] {
            K::I => num((qi - 1) * (qi * qi - qi + 1)),
            K::A => num(2 * qi - 1),
            K::B => num(-1),
            K::C(a) => num(qi - 1) * ui.iter().map(|&x| rho(a as i64 * x)).sum::<CycNum>(),
            K::D(b) => -ui.iter().map(|&x| rho(b as i64 * x)).sum::<CycNum>(),
            K::E(a, b) => {
                let e = [a as i64, b as i64, 0];
                -PERMS
                    .iter()
                    .map(|pm| rho(e[0] * ui[pm[0]] + e[1] * ui[pm[1]] + e[2] * ui[pm[2]]))
                    .sum::<CycNum>()
            }
            _ => num(0),
        });
    }
    for &i in &f_reps {
        let ii = i as i64;
        bld.char_fn(format!("chi_{{(q+1)(q^2-q+1)}}^({i})"), vec![ii], |c| match kinds[c] {
            K::I => num((qi + 1) * (qi * qi - qi + 1)),
            K::A | K::B => num(1),
            K::C(a) => num(qi + 1) * rho(-(a as i64) * ii),
            K::D(b) => rho(-(b as i64) * ii),
            K::F(c) => {
                let c = c as i64;
                z(q2, c * ii) + z(q2, -qi * c * ii)
            }
            _ => num(0),
        });
    }
    for &j in g_reps.iter().filter(|&&j| !(three && j % (mq / 3) == 0)) {
        let jj = j as i64;
        bld.char_fn(format!("chi_{{(q-1)(q+1)^2}}^({j})"), vec![jj], |c| match kinds[c] {
            K::I => num((qi - 1) * (qi + 1) * (qi + 1)),
            K::A => num(-(qi + 1)),
            K::B => num(-1),
            K::G(d) => {
                let dj = d as i64 * jj;
                -(z(mq, dj) + z(mq, -qi * dj) + z(mq, qi * qi * dj))
            }
            _ => num(0),
        });
    }
    let table = bld.finish()?;
    Ok((table, Pgu3Data { n, kinds, delta }))
}
