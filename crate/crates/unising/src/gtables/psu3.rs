use super::pgu3::{pgu3_parts, K};
use super::{num, Builder, CharTable, CycNum, Family, TableError};
use crate::cyclo::rat;

/// Character table of PSU₃(q); equal to PGU₃(q) when 3 ∤ q+1.
pub fn build_psu3(q: u64) -> Result<CharTable, TableError> {
    let (pg, data) = pgu3_parts(q)?;
    if data.n % 3 != 0 {
        let mut t = pg;
        t.family.tag = Family::Psu3;
        t.name = format!("PSU3({q})");
        for c in &mut t.classes {
            c.label = c.label.replacen("PGU3:", "PSU3:", 1);
        }
        return Ok(t);
    }
    let keep: Vec<usize> = (0..pg.classes.len()).filter(|&c| data.delta[c] % 3 == 0).collect();
    // (index in PGU3, B-part f)
    let mut cols: Vec<(usize, Option<u64>)> = Vec::new();
    for &c in &keep {
        if data.kinds[c] == K::B {
            cols.extend((0..3).map(|f| (c, Some(f))));
        } else {
            cols.push((c, None));
        }
    }
    let strip = |l: &str| l.strip_prefix("PGU3:").unwrap().to_string();
    let sym = |c: usize, f: Option<u64>| match f {
        Some(f) => format!("B_{f}"),
        None => strip(&pg.classes[c].label),
    };
    let mut b = Builder::new(Family::Psu3, q, pg.order / 3);
    for &(c, f) in &cols {
        let cl = &pg.classes[c];
        let cent = if f.is_some() { pg.centralizer(c) } else { pg.centralizer(c) / 3 };
        let pw = cl.power_to.clone();
        let kinds = data.kinds.clone();
        let labels: Vec<String> = pg.classes.iter().map(|x| strip(&x.label)).collect();
        b.class(&sym(c, f), cl.order, cent, move |j| {
            let t = pw[j as usize];
            match (kinds[t], f) {
                (K::B, Some(f)) => format!("B_{f}"),
                _ => labels[t].clone(),
            }
        });
    }

    let lin = pg.char_index("chi_1^(1)")?;
    let mut seen: Vec<Vec<CycNum>> = Vec::new();
    for row in &pg.chars {
        let r: Vec<CycNum> = cols.iter().map(|&(c, _)| row.values[c].clone()).collect();
        if seen.contains(&r) {
            continue;
        }
        seen.push(r.clone());
        let invariant = (0..pg.classes.len())
            .all(|c| &row.values[c] * &pg.chars[lin].values[c] == row.values[c]);
        let label = row.label.strip_suffix("^(0)").unwrap_or(&row.label).to_string();
        if !invariant {
            b.char(label, row.param.clone(), r);
            continue;
        }
        let qi = q as i64;
        for n in 0..3u64 {
            let vals = cols
                .iter()
                .zip(&r)
                .map(|(&(_, f), v)| match f {
                    Some(f) => num(if f == n { qi } else { 0 }) - num((qi + 1) / 3),
                    None => v.scale(&rat(1, 3)),
                })
                .collect();
            b.char(format!("chi_{{(q-1)(q^2-q+1)/3}}^({n})"), vec![n as i64], vals);
        }
    }
    b.finish()
}
