use super::{canonical_quotient, num, orbit_min, z, Builder, CharTable, CycNum, Family, TableError};
use crate::cyclo::{rat, sqrt_m3};
use crate::numth::{gcd, prime_power};

fn pw(sym: &str, x: u64) -> String {
    if x == 1 { sym.to_string() } else { format!("{sym}^{x}") }
}


#[derive(Clone, Copy, PartialEq, Eq)]
enum K {
    Known(usize),
    Jr(u64),
    V(u64),
    S(u64),
    Js(u64),
    W(u64),
}

/// Character table of the Ree group ²G₂(Q), Q = 3^(2m+1) ≥ 27.
pub fn build_ree(q2: u64) -> Result<CharTable, TableError> {
    if !Family::Ree2G2.admissible(q2) {
        return Err(TableError::Domain(format!("Ree: {q2} is not 3^(2m+1) with m >= 1")));
    }
    let (_, k) = prime_power(q2).unwrap();
    let m = (k - 1) / 2;
    let (r, s) = (3u64.pow(m + 1), 3u64.pow(m));
    let q = q2;
    let nn = (q + 1) / 4;
    let mu = r.div_ceil(2);
    let (nv, nw) = (q - r + 1, q + r + 1);
    let qq = q as u128;
    let g = qq * qq * qq * (qq * qq * qq + 1) * (qq - 1);
    let mut b = Builder::new(Family::Ree2G2, q, g);

    let qe = |e: super::QuotientError| TableError::Domain(e.to_string());
    let orbits = |n: u64, gens: &[u64]| {
        let all: Vec<u64> = (1..n).collect();
        canonical_quotient(&all, |&x| gens.iter().map(|&g| x * g % n).collect()).map_err(qe)
    };
    let gv = [r - 1, nv - 1];
    let gw = [r + 1, nw - 1];
    let g0 = [mu % nn];
    let g1 = [nn - 1];
    let bs = orbits(nv, &gv)?;
    let es = orbits(nw, &gw)?;
    let c0 = orbits(nn, &g0)?;
    let c1 = orbits(nn, &g1)?;

    let cyc3 = |a: &'static str, b2: &'static str| move |j: u64| -> String {
        ["1", a, b2][(j % 3) as usize].into()
    };
    b.class("1", 1, g, |_| "1".into());
    b.class("X", 3, qq * qq * qq, |j| if j % 3 == 0 { "1".into() } else { "X".into() });
    b.class("T", 3, 2 * qq * qq, cyc3("T", "T^-1"));
    b.class("T^-1", 3, 2 * qq * qq, cyc3("T^-1", "T"));
    let nine = |a: &'static str, b2: &'static str| move |j: u64| -> String {
        if j.is_multiple_of(9) {
            "1".into()
        } else if j.is_multiple_of(3) {
            "X".into()
        } else if j % 3 == 1 {
            a.into()
        } else {
            b2.into()
        }
    };
    b.class("Y", 9, 3 * qq, nine("Y", "Y"));
    b.class("YT", 9, 3 * qq, nine("YT", "YT^-1"));
    b.class("YT^-1", 9, 3 * qq, nine("YT^-1", "YT"));
    b.class("J", 2, qq * (qq * qq - 1), |j| if j % 2 == 0 { "1".into() } else { "J".into() });
    b.class("JT", 6, 2 * qq, |j| ["1", "JT", "T^-1", "J", "T", "JT^-1"][(j % 6) as usize].into());
    b.class("JT^-1", 6, 2 * qq, |j| ["1", "JT^-1", "T", "J", "T^-1", "JT"][(j % 6) as usize].into());
    let mut kinds: Vec<K> = (0..10).map(K::Known).collect();

    let nr = q - 1;
    for a in 1..=(q - 3) / 2 {
        b.class(&pw("JR", a), nr / gcd(a, nr), nr as u128, move |j| match a * j % nr {
            0 => "1".into(),
            x if x == nr / 2 => "J".into(),
            x => pw("JR", x.min(nr - x)),
        });
        kinds.push(K::Jr(a));
    }
    let cyclic = |b: &mut Builder, sym: &'static str, n: u64, reps: &[u64], gens: [u64; 2]| {
        for &x in reps {
            b.class(&pw(sym, x), n / gcd(x, n), n as u128, move |j| match x * j % n {
                0 => "1".into(),
                y => pw(sym, orbit_min(y, n, &gens)),
            });
        }
    };
    cyclic(&mut b, "V", nv, &bs, gv);
    kinds.extend(bs.iter().map(|&x| K::V(x)));
    // J^c S^d with J central in the centralizer of S
    let sp = move |c: u64, d: u64, j: u64| -> String {
        let (cc, x) = (c * j % 2, d * j % nn);
        match (cc, x) {
            (1, 0) => "J".into(),
            (_, 0) => "1".into(),
            (0, x) => pw("S", orbit_min(x, nn, &g0)),
            (_, x) => pw("JS", orbit_min(x, nn, &g1)),
        }
    };
    for &d in &c0 {
        b.class(&pw("S", d), nn / gcd(d, nn), (q + 1) as u128, move |j| sp(0, d, j));
        kinds.push(K::S(d));
    }
    for &d in &c1 {
        b.class(&pw("JS", d), 2 * nn / gcd(d, nn), (q + 1) as u128, move |j| sp(1, d, j));
        kinds.push(K::Js(d));
    }
    cyclic(&mut b, "W", nw, &es, gw);
    kinds.extend(es.iter().map(|&x| K::W(x)));

    // entries on the first ten classes, as (a, b) meaning (a + b√−3)/6
    let (qi, ri, si) = (q as i64, r as i64, s as i64);
    let six = |v: [i64; 10]| v.map(|x| (6 * x, 0));
    let known: Vec<(&str, [(i64, i64); 10])> = vec![
        ("1", six([1; 10])),
        ("2", [(ri * (qi - 1) * (qi + ri + 1), 0), (-(3 * qi + ri), 0), (-ri, qi), (-ri, -qi),
               (2 * ri, 0), (-ri, -ri), (-ri, ri), (-3 * (qi - 1), 0), (3, -3 * si), (3, 3 * si)]),
        ("3", [(ri * (qi - 1) * (qi - ri + 1), 0), (3 * qi - ri, 0), (-ri, qi), (-ri, -qi),
               (2 * ri, 0), (-ri, -ri), (-ri, ri), (3 * (qi - 1), 0), (-3, 3 * si), (-3, -3 * si)]),
        ("4", [(ri * (qi - 1) * (qi + ri + 1), 0), (-(3 * qi + ri), 0), (-ri, -qi), (-ri, qi),
               (2 * ri, 0), (-ri, ri), (-ri, -ri), (-3 * (qi - 1), 0), (3, 3 * si), (3, -3 * si)]),
        ("5", [(ri * (qi - 1) * (qi - ri + 1), 0), (3 * qi - ri, 0), (-ri, -qi), (-ri, qi),
               (2 * ri, 0), (-ri, ri), (-ri, -ri), (3 * (qi - 1), 0), (-3, -3 * si), (-3, 3 * si)]),
        ("6", [(2 * ri * (qi * qi - 1), 0), (-2 * ri, 0), (-2 * ri, 2 * qi), (-2 * ri, -2 * qi),
               (-2 * ri, 0), (ri, ri), (ri, -ri), (0, 0), (0, 0), (0, 0)]),
        ("7", [(2 * ri * (qi * qi - 1), 0), (-2 * ri, 0), (-2 * ri, -2 * qi), (-2 * ri, 2 * qi),
               (-2 * ri, 0), (ri, -ri), (ri, ri), (0, 0), (0, 0), (0, 0)]),
        ("8", six([qi * qi * qi, 0, 0, 0, 0, 0, 0, qi, 0, 0])),
        ("9", six([qi * qi - qi + 1, -(qi - 1), 1, 1, 1, 1, 1, -1, -1, -1])),
        ("10", six([qi * (qi * qi - qi + 1), qi, 0, 0, 0, 0, 0, -qi, 0, 0])),
    ];
    let sm3 = sqrt_m3();
    let val = |(a, b2): (i64, i64)| (num(a) + sm3.clone() * num(b2)).scale(&rat(1, 6));
    let f11 = |j: i64| {
        let e = if j % 2 == 0 { 1 } else { -1 };
        six([(qi + 1) * (qi * qi - qi + 1), 1, 1, 1, 1, 1, 1, (qi + 1) * e, e, e])
    };
    let f12 = six([(qi * qi - 1) * (qi + ri + 1), -(qi + ri + 1), -(ri + 1), -(ri + 1), -1, -1, -1, 0, 0, 0]);
    let f13 = |l: i64| {
        let e = 1 + 2 * if l == 0 { 1 } else { -1 };
        six([(qi - 1) * (qi * qi - qi + 1), 2 * qi - 1, -1, -1, -1, -1, -1, e * (qi - 1), -e, -e])
    };
    let f14 = six([(qi * qi - 1) * (qi - ri + 1), -(qi - ri + 1), ri - 1, ri - 1, -1, -1, -1, 0, 0, 0]);

    let mut add = |label: String, param: Vec<i64>, kn: &[(i64, i64); 10], semi: &dyn Fn(K) -> CycNum| {
        let vals = kinds
            .iter()
            .map(|&k| match k {
                K::Known(i) => val(kn[i]),
                k => semi(k),
            })
            .collect();
        b.char(label, param, vals);
    };
    // unipotent rows: values on S/JS, V, W, and whether the JR value is 1
    let uni_s = [1, -1, 1, -1, 0, 0, -1];
    let uni_v = [-1, 0, -1, 0, -1, -1, -1];
    let uni_w = [0, 1, 0, 1, 1, 1, -1];
    let alt = |a: u64| num(if a.is_multiple_of(2) { 1 } else { -1 });
    for (name, kn) in &known {
        let semi = |k: K| -> CycNum {
            let u = name.parse::<usize>().unwrap();
            match (u, k) {
                (1, _) => num(1),
                (2..=8, K::Jr(_)) => num(if u == 8 { 1 } else { 0 }),
                (2..=8, K::S(_) | K::Js(_)) => num(uni_s[u - 2]),
                (2..=8, K::V(_)) => num(uni_v[u - 2]),
                (2..=8, K::W(_)) => num(uni_w[u - 2]),
                (9 | 10, K::Jr(a)) => alt(a),
                (9, K::S(_)) => num(3),
                (10, K::S(_)) => num(-3),
                (9, K::Js(_)) => num(-1),
                (10, K::Js(_)) => num(1),
                _ => num(0),
            }
        };
        add(format!("chi_{name}"), vec![], kn, &semi);
    }
    for j in 1..=((q - 3) / 2) as i64 {
        let semi = |k: K| match k {
            K::Jr(a) => z(nr, j * a as i64) + z(nr, -j * a as i64),
            _ => num(0),
        };
        add(format!("chi_11^({j})"), vec![j], &f11(j), &semi);
    }
    let orbit6 = |n: u64, g: u64, e: u64| -> CycNum {
        let mut x = e % n;
        let mut acc = CycNum::zero();
        for _ in 0..6 {
            acc += &z(n, x as i64);
            x = x * g % n;
        }
        acc
    };
    for &n in &bs {
        let semi = |k: K| match k {
            K::V(x) => -orbit6(nv, r - 1, n * x),
            _ => num(0),
        };
        add(format!("chi_12^({n})"), vec![n as i64], &f12, &semi);
    }
    let cval = |l: i64, k: u64, d: u64, js: bool| -> CycNum {
        let e = k * d % nn;
        if l == 0 || !js {
            return orbit6(nn, mu, e);
        }
        let pair = |x: u64| z(nn, x as i64) + z(nn, -(x as i64));
        pair(e) - pair(e * mu % nn) - pair(e * mu % nn * mu % nn)
    };
    for (l, ks) in [(0i64, &c0), (1, &c1)] {
        for &kk in ks {
            let semi = |k: K| match k {
                K::S(d) => -cval(l, kk, d, false),
                K::Js(d) => -cval(l, kk, d, true),
                _ => num(0),
            };
            add(format!("chi_13^({l},{kk})"), vec![l, kk as i64], &f13(l), &semi);
        }
    }
    for &mm in &es {
        let semi = |k: K| match k {
            K::W(x) => -orbit6(nw, nw - r - 1, mm * x),
            _ => num(0),
        };
        add(format!("chi_14^({mm})"), vec![mm as i64], &f14, &semi);
    }
    b.finish()
}
