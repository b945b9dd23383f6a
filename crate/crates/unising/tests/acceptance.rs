//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use unising::classify::{cross_check, cross_check_table, is_unisingular};
use unising::gtables::{CharTable, Family};
use unising::ingest::{self, IngestError};
use unising::mult::{eig1_fast, eig1_mult, spectrum};
use unising::numth::{gcd, prime_power};
use unising::oracle;

/// Multiplicity computations that failed integrality or the spectrum sum.
static VIOLATIONS: AtomicUsize = AtomicUsize::new(0);
/// Multiplicities and spectra computed.
static COMPUTED: AtomicUsize = AtomicUsize::new(0);

type Check = Result<String, String>;

fn m1(t: &CharTable, chi: usize, c: usize) -> Option<u64> {
    COMPUTED.fetch_add(1, Ordering::Relaxed);
    eig1_mult(t, chi, c).inspect_err(|_| _ = VIOLATIONS.fetch_add(1, Ordering::Relaxed)).ok()
}

fn spec(t: &CharTable, chi: usize, c: usize) -> Option<Vec<u64>> {
    COMPUTED.fetch_add(1, Ordering::Relaxed);
    // spectrum() itself rejects non-integral entries and a sum other than χ(1)
    let s = spectrum(t, chi, c).inspect_err(|_| _ = VIOLATIONS.fetch_add(1, Ordering::Relaxed)).ok()?;
    let deg = t.chars[chi].degree().as_i64()? as u64;
    if s.iter().sum::<u64>() != deg {
        VIOLATIONS.fetch_add(1, Ordering::Relaxed);
        return None;
    }
    Some(s)
}

fn build(f: Family, q: u64) -> Result<CharTable, String> {
    f.build(q).map_err(|e| format!("{f}({q}): {e}"))
}

fn admissible(f: Family, qs: impl IntoIterator<Item = u64>) -> Vec<u64> {
    qs.into_iter().filter(|&q| f.admissible(q)).collect()
}

fn crit1() -> Check {
    let mut runs = Vec::new();
    for q in admissible(Family::Pgl2, 2..=49) {
        runs.push((Family::Pgl2, q));
    }
    for q in admissible(Family::Psl2, 2..=49) {
        runs.push((Family::Psl2, q));
    }
    for q in admissible(Family::Pgu3, 2..=13) {
        runs.push((Family::Pgu3, q));
        runs.push((Family::Psu3, q));
    }
    runs.extend([(Family::Suzuki, 8), (Family::Suzuki, 32), (Family::Ree2G2, 27), (Family::Ree2G2, 243)]);
    for &(f, q) in &runs {
        let t = build(f, q)?;
        t.validate().map_err(|e| format!("{}: {e}", t.name))?;
    }
    Ok(format!("{} tables validated exactly", runs.len()))
}

fn crit2() -> Check {
    let mut runs = Vec::new();
    runs.extend(admissible(Family::Psl2, 5..=49).into_iter().map(|q| (Family::Psl2, q)));
    runs.extend(admissible(Family::Pgl2, 2..=31).into_iter().map(|q| (Family::Pgl2, q)));
    for q in admissible(Family::Pgu3, 2..=13) {
        runs.push((Family::Pgu3, q));
        runs.push((Family::Psu3, q));
    }
    let (mut rows, mut witnesses) = (0, 0);
    for &(f, q) in &runs {
        let r = cross_check(f, q).map_err(|e| {
            VIOLATIONS.fetch_add(1, Ordering::Relaxed);
            format!("{f}({q}): {e}")
        })?;
        COMPUTED.fetch_add(r.rows.len() * r.rows.len(), Ordering::Relaxed);
        if !r.ok() {
            return Err(format!("{f}({q}):\n{}", r.to_text()));
        }
        rows += r.rows.len();
        witnesses += r.rows.iter().map(|x| x.verdict.witnesses.len()).sum::<usize>();
    }
    Ok(format!("{} groups, {rows} characters, {witnesses} witnesses, 0 disagreements", runs.len()))
}

fn expect(t: &CharTable, chi: &str, class: &str, want: u64) -> Result<(), String> {
    let a = t.char_index(chi).map_err(|e| e.to_string())?;
    let c = t.class_index(class).map_err(|e| e.to_string())?;
    match m1(t, a, c) {
        Some(m) if m == want => Ok(()),
        got => Err(format!("{}: M_{chi}({class}) = {got:?}, expected {want}", t.name)),
    }
}

fn crit3() -> Check {
    let mut n = 0;
    for q in [4u64, 8, 16] {
        let t = build(Family::Pgl2, q)?;
        for row in t.chars.iter().map(|r| r.label.clone()) {
            if row.starts_with("chi_") {
                expect(&t, &row, "a", 1)?;
                n += 1;
            }
            if row.starts_with("theta_") {
                expect(&t, &row, "c", (q - 2) / 2)?;
                n += 1;
            }
        }
    }
    for q in [7u64, 27] {
        let (p, k) = prime_power(q).unwrap();
        let t = build(Family::Psl2, q)?;
        expect(&t, "eta_1", "c", (p.pow(k - 1) - 1) / 2)?;
        n += 1;
    }
    expect(&build(Family::Psl2, 9)?, "xi_1", "d", 1)?;
    n += 1;
    for q in [3u64, 4, 5] {
        let t = build(Family::Pgu3, q)?;
        let sfx = if (q + 1) % 3 == 0 { "^(0)" } else { "" };
        expect(&t, &format!("chi_{{q^2-q}}{sfx}"), "D(1)", 0)?;
        expect(&t, &format!("chi_{{q^3}}{sfx}"), "G", q)?;
        n += 2;
    }
    expect(&build(Family::Ree2G2, 27)?, "chi_9", "Y", 73)?;
    Ok(format!("{} spot values exact", n + 1))
}

fn crit4() -> Check {
    let mut n = 0;
    for q in [8u64, 32] {
        let t = build(Family::Suzuki, q)?;
        for chi in 1..t.chars.len() {
            for c in 0..t.classes.len() {
                let s = spec(&t, chi, c).ok_or_else(|| format!("Sz({q}) {}: bad spectrum", t.chars[chi].label))?;
                if let Some(i) = s.iter().position(|&x| x == 0) {
                    return Err(format!(
                        "Sz({q}) {} at {}: E({})^{i} missing",
                        t.chars[chi].label, t.classes[c].label, t.classes[c].order
                    ));
                }
                n += s.len();
            }
        }
    }
    Ok(format!("{n} eigenvalue multiplicities, all >= 1"))
}

fn crit5() -> Check {
    let mut n = 0;
    for q in [27u64, 243] {
        let t = build(Family::Ree2G2, q)?;
        for chi in 0..t.chars.len() {
            for (c, cl) in t.classes.iter().enumerate() {
                COMPUTED.fetch_add(1, Ordering::Relaxed);
                let m = eig1_fast(&t, chi, c).map_err(|e| {
                    VIOLATIONS.fetch_add(1, Ordering::Relaxed);
                    e.to_string()
                })?;
                if m == 0 {
                    let kind = if gcd(cl.order, 3) == 1 { "3'-class" } else { "class" };
                    return Err(format!("{}: {} vanishes at {kind} {}", t.name, t.chars[chi].label, cl.label));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} multiplicities, all >= 1"))
}

fn crit6() -> Check {
    let mut runs = Vec::new();
    runs.extend([5u64, 7, 9, 11, 13].map(|q| (Family::Psl2, q)));
    runs.extend([3u64, 5, 7, 9].map(|q| (Family::Pgl2, q)));
    runs.extend([2u64, 3, 4, 5].map(|q| (Family::Pgu3, q)));
    runs.extend([2u64, 3, 5].map(|q| (Family::Psu3, q)));
    let mut pairs = 0;
    for &(f, q) in &runs {
        let t = build(f, q)?;
        let g = oracle::enumerate(f, q).map_err(|e| format!("{f}({q}): {e}"))?;
        let s = oracle::compare_structure(&t, &g);
        if !s.ok() {
            return Err(format!("{}: {}", t.name, s.problems.join("; ")));
        }
        pairs += oracle::double_entry(&t, &g, &s.matching).map_err(|e| {
            VIOLATIONS.fetch_add(1, Ordering::Relaxed);
            format!("{}: {e}", t.name)
        })?;
    }
    COMPUTED.fetch_add(pairs, Ordering::Relaxed);
    Ok(format!("{} groups enumerated, {pairs} Frobenius values agree", runs.len()))
}

fn failing(t: &CharTable) -> Result<Vec<(usize, Vec<String>)>, String> {
    let mut out = Vec::new();
    for chi in 0..t.chars.len() {
        for c in 0..t.classes.len() {
            m1(t, chi, c);
        }
        let v = is_unisingular(t, chi).map_err(|e| e.to_string())?;
        if !v.unisingular {
            out.push((chi, v.witnesses.into_iter().map(|w| w.class).collect()));
        }
    }
    Ok(out)
}

fn crit7() -> Check {
    let fx = |n: &str| ingest::fixture(n).map_err(|e| e.to_string());
    let m11 = fx("M11")?;
    let f = failing(&m11)?;
    let want: Vec<(usize, Vec<String>)> = (1..=3).map(|r| (r, vec!["11A".into(), "11B".into()])).collect();
    if f != want || (1..=3).any(|r| m11.chars[r].degree().as_i64() != Some(10)) {
        return Err(format!("M11 failures {f:?}"));
    }

    let sz2 = fx("Sz2")?;
    let nonlinear: Vec<_> = failing(&sz2)?.into_iter().filter(|(c, _)| sz2.chars[*c].degree().as_i64() != Some(1)).collect();
    let five = |w: &Vec<String>| w.iter().all(|l| sz2.classes[sz2.class_index(l).unwrap()].order == 5);
    if nonlinear.len() != 1 || sz2.chars[nonlinear[0].0].degree().as_i64() != Some(4) || !five(&nonlinear[0].1) {
        return Err(format!("Sz(2) failures {nonlinear:?}"));
    }

    let ree3 = fx("Ree3")?;
    let f: Vec<usize> =
        failing(&ree3)?.into_iter().map(|x| x.0).filter(|&c| ree3.chars[c].degree().as_i64() != Some(1)).collect();
    let deg = |c: usize| ree3.chars[c].degree().as_i64().unwrap();
    let sevens = f.iter().filter(|&&c| deg(c) == 7 && !ree3.chars[c].is_rational()).count();
    let eights = f.iter().filter(|&&c| deg(c) == 8).count();
    let all7 = ree3.chars.iter().filter(|r| r.degree().as_i64() == Some(7) && !r.is_rational()).count();
    if f.len() != 5 || sevens != 2 || eights != 3 || all7 != 2 {
        return Err(format!("2G2(3) nonlinear failures {f:?}"));
    }

    let mut optional = Vec::new();
    for name in ["M23", "HS", "HS.2", "McL", "McL.2"] {
        match ingest::fixture(name) {
            Ok(t) => {
                let r = cross_check_table(&t).map_err(|e| e.to_string())?;
                if !r.ok() {
                    return Err(format!("{name}:\n{}", r.to_text()));
                }
                optional.push(name);
            }
            Err(IngestError::NotShipped(_)) => {}
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    let opt = if optional.is_empty() { "none present".to_string() } else { optional.join(" ") };
    Ok(format!("M11, Sz2, Ree3 match; optional fixtures: {opt}"))
}

fn crit8() -> Check {
    // full spectra on every criterion-1 table except the largest Ree group
    let mut tables = Vec::new();
    for q in admissible(Family::Pgl2, 2..=49) {
        tables.push(build(Family::Pgl2, q)?);
    }
    for q in admissible(Family::Psl2, 3..=49) {
        tables.push(build(Family::Psl2, q)?);
    }
    for q in admissible(Family::Pgu3, 2..=13) {
        tables.push(build(Family::Pgu3, q)?);
        tables.push(build(Family::Psu3, q)?);
    }
    tables.push(build(Family::Suzuki, 8)?);
    tables.push(build(Family::Suzuki, 32)?);
    tables.push(build(Family::Ree2G2, 27)?);
    for name in ["M11", "Sz2", "Ree3"] {
        tables.push((*ingest::fixture(name).map_err(|e| e.to_string())?).clone());
    }
    for t in &tables {
        for chi in 0..t.chars.len() {
            for c in 0..t.classes.len() {
                spec(t, chi, c);
            }
        }
    }
    let v = VIOLATIONS.load(Ordering::Relaxed);
    let n = COMPUTED.load(Ordering::Relaxed);
    if v > 0 {
        return Err(format!("{v} violations in {n} computations"));
    }
    Ok(format!("0 violations in {n} computations ({} tables fully swept)", tables.len()))
}

fn main() {
    let crits: [(&str, fn() -> Check); 8] = [
        ("table validity", crit1),
        ("classification reproduction", crit2),
        ("closed-form spot values", crit3),
        ("Suzuki full spectra", crit4),
        ("Ree eigenvalue one", crit5),
        ("oracle equivalence", crit6),
        ("fixtures", crit7),
        ("integrality and spectrum sums", crit8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in crits.iter().enumerate() {
        let t0 = Instant::now();
        let r = f();
        let secs = t0.elapsed().as_secs_f64();
        match r {
            Ok(d) => println!("PASS {}: {name}: {d} [{secs:.1}s]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}: {name}: {e} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
