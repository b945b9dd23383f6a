//! Reading and writing character tables in the `UNISING-TBL v1` text format,
//! and the embedded fixture tables. The grammar is in `docs/tablefile.md`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cyclo::text::parse as parse_cyc;
use crate::gtables::{CharRow, CharTable, ConjClass, Family, FamilyId, TableError};

pub const MAGIC: &str = "UNISING-TBL v1";
pub const FIXTURE_ENV: &str = "UNISING_FIXTURE_DIR";

/// Names accepted by [`fixture`].
pub const FIXTURES: [&str; 8] = ["M11", "M23", "HS", "HS.2", "McL", "McL.2", "Sz2", "Ree3"];

const EMBEDDED: [(&str, &str); 3] = [
    ("M11", include_str!("../../fixtures/M11.tbl")),
    ("Sz2", include_str!("../../fixtures/Sz2.tbl")),
    ("Ree3", include_str!("../../fixtures/Ree3.tbl")),
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: power map of {class}: {msg}")]
    PowerMap { line: usize, class: String, msg: String },
    #[error("invalid table: {0}")]
    Validation(#[from] TableError),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {0} is not shipped; put {0}.tbl in ${FIXTURE_ENV}")]
    NotShipped(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    /// Whitespace-separated tokens with their 1-based columns.
    fn tokens(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices().chain(std::iter::once((self.text.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        out
    }

    fn err<T>(&self, col: usize, msg: impl Into<String>) -> Result<T, IngestError> {
        Err(IngestError::Syntax { line: self.no, col, msg: msg.into() })
    }
}

fn number<T: std::str::FromStr>(l: &Line, (col, tok): (usize, &str), what: &str) -> Result<T, IngestError> {
    tok.parse().or_else(|_| l.err(col, format!("expected {what}, found {tok:?}")))
}

/// Parses and validates a table. The family is INGESTED unless a `family`
/// line names a built family.
pub fn parse(text: &str) -> Result<CharTable, IngestError> {
    let t = parse_unchecked(text)?;
    t.validate()?;
    Ok(t)
}

/// Parses without the invariant checks (power-map indices are still checked).
pub fn parse_unchecked(text: &str) -> Result<CharTable, IngestError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, t)| Line { no: i + 1, text: t.trim_end_matches('\r') })
        .filter(|l| {
            let t = l.text.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });
    let eof = |what: &str| IngestError::Syntax { line: text.lines().count() + 1, col: 1, msg: format!("unexpected end of input, expected {what}") };

    let first = lines.next().ok_or_else(|| eof("magic line"))?;
    if first.text.trim() != MAGIC {
        return first.err(1, format!("expected {MAGIC:?}"));
    }

    let mut name = None;
    let mut order = None;
    let mut nclasses = None;
    let mut nchars = None;
    let mut family = FamilyId { tag: Family::Ingested, q: 0 };
    loop {
        let l = lines.next().ok_or_else(|| eof("CLASSES"))?;
        let toks = l.tokens();
        match toks[0].1 {
            "CLASSES" if toks.len() == 1 => break,
            "name" if toks.len() == 2 => name = Some(toks[1].1.to_string()),
            "order" if toks.len() == 2 => order = Some(number::<u128>(&l, toks[1], "group order")?),
            "classes" if toks.len() == 2 => nclasses = Some(number::<usize>(&l, toks[1], "class count")?),
            "characters" if toks.len() == 2 => nchars = Some(number::<usize>(&l, toks[1], "character count")?),
            "family" if toks.len() == 3 => {
                let tag = Family::from_tag(toks[1].1)
                    .filter(|f| *f != Family::Ingested)
                    .map_or_else(|| l.err(toks[1].0, "unknown family"), Ok)?;
                let q = number::<u64>(&l, toks[2], "q")?;
                if !tag.admissible(q) {
                    return l.err(toks[2].0, format!("q = {q} is not admissible for {tag}"));
                }
                family = FamilyId { tag, q };
            }
            k => return l.err(toks[0].0, format!("unexpected header item {k:?}")),
        }
    }
    let missing = |w: &str| IngestError::Syntax { line: 1, col: 1, msg: format!("header lacks {w}") };
    let name = name.ok_or_else(|| missing("name"))?;
    let order = order.ok_or_else(|| missing("order"))?;
    let nclasses = nclasses.ok_or_else(|| missing("classes"))?;
    let nchars = nchars.ok_or_else(|| missing("characters"))?;
    if nclasses == 0 {
        return Err(missing("a nonempty class list"));
    }

    let mut classes = Vec::with_capacity(nclasses);
    let mut class_lines = Vec::with_capacity(nclasses);
    for _ in 0..nclasses {
        let l = lines.next().ok_or_else(|| eof("class line"))?;
        let toks = l.tokens();
        if toks.len() != 4 {
            return l.err(1, "class line needs: label order size powermap");
        }
        let ord: u64 = number(&l, toks[1], "element order")?;
        if ord == 0 || ord > crate::cyclo::text::MAX_ORDER {
            return l.err(toks[1].0, format!("element order outside 1..={}", crate::cyclo::text::MAX_ORDER));
        }
        let size: u128 = number(&l, toks[2], "class size")?;
        let mut power_to = Vec::with_capacity(ord as usize);
        for part in toks[3].1.split(',') {
            let j: usize = part.parse().or_else(|_| l.err(toks[3].0, format!("bad power map entry {part:?}")))?;
            power_to.push(j);
        }
        classes.push(ConjClass { label: toks[0].1.to_string(), order: ord, size, power_to });
        class_lines.push(l.no);
    }
    for (c, cl) in classes.iter().enumerate() {
        let bad = |msg: String| IngestError::PowerMap { line: class_lines[c], class: cl.label.clone(), msg };
        if cl.power_to.len() as u64 != cl.order {
            return Err(bad(format!("{} entries for order {}", cl.power_to.len(), cl.order)));
        }
        if let Some(&j) = cl.power_to.iter().find(|&&j| j >= nclasses) {
            return Err(bad(format!("class index {j} out of range")));
        }
        if classes[..c].iter().any(|o| o.label == cl.label) {
            return Err(bad("duplicate class label".into()));
        }
    }

    let l = lines.next().ok_or_else(|| eof("CHARS"))?;
    if l.text.trim() != "CHARS" {
        return l.err(1, "expected CHARS");
    }
    let mut chars = Vec::with_capacity(nchars);
    for _ in 0..nchars {
        let l = lines.next().ok_or_else(|| eof("character line"))?;
        let toks = l.tokens();
        if toks.len() != nclasses + 2 {
            return l.err(1, format!("character line needs a label, a parameter list and {nclasses} values"));
        }
        let (pc, ptok) = toks[1];
        let inner = ptok
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .map_or_else(|| l.err(pc, "expected a parameter list like [1,2]"), Ok)?;
        let param = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.parse::<i64>().or_else(|_| l.err(pc, format!("bad parameter {x:?}"))))
                .collect::<Result<Vec<_>, _>>()?
        };
        let mut values = Vec::with_capacity(nclasses);
        for &(col, tok) in &toks[2..] {
            let v = parse_cyc(tok).or_else(|e| l.err(col + e.col - 1, e.msg))?;
            values.push(v);
        }
        if chars.iter().any(|r: &CharRow| r.label == toks[0].1) {
            return l.err(1, "duplicate character label");
        }
        chars.push(CharRow { label: toks[0].1.to_string(), param, values });
    }
    let l = lines.next().ok_or_else(|| eof("END"))?;
    if l.text.trim() != "END" {
        return l.err(1, "expected END");
    }
    if let Some(l) = lines.next() {
        return l.err(1, "text after END");
    }
    Ok(CharTable { family, name, order, classes, chars })
}

/// Renders a table; `parse(render(t)) == t` for tables with whitespace-free labels.
pub fn render(t: &CharTable) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{MAGIC}");
    let _ = writeln!(s, "name {}", t.name);
    if t.family.tag != Family::Ingested {
        let _ = writeln!(s, "family {} {}", t.family.tag, t.family.q);
    }
    let _ = writeln!(s, "order {}", t.order);
    let _ = writeln!(s, "classes {}", t.classes.len());
    let _ = writeln!(s, "characters {}", t.chars.len());
    s += "CLASSES\n";
    for c in &t.classes {
        let pm: Vec<String> = c.power_to.iter().map(|j| j.to_string()).collect();
        let _ = writeln!(s, "{} {} {} {}", c.label, c.order, c.size, pm.join(","));
    }
    s += "CHARS\n";
    for r in &t.chars {
        let p: Vec<String> = r.param.iter().map(|x| x.to_string()).collect();
        let _ = write!(s, "{} [{}]", r.label, p.join(","));
        for v in &r.values {
            let _ = write!(s, " {v}");
        }
        s.push('\n');
    }
    s += "END\n";
    s
}

pub fn read_file(path: &std::path::Path) -> Result<CharTable, IngestError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| IngestError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse(&text)
}

fn cache() -> &'static Mutex<HashMap<String, Arc<CharTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<CharTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// A fixture table by name. A file `<name>.tbl` in `$UNISING_FIXTURE_DIR`
/// takes precedence over the embedded copy.
pub fn fixture(name: &str) -> Result<Arc<CharTable>, IngestError> {
    let name = FIXTURES
        .iter()
        .find(|f| f.eq_ignore_ascii_case(name))
        .ok_or_else(|| IngestError::UnknownFixture(name.to_string()))?;
    if let Some(t) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(*name) {
        return Ok(t.clone());
    }
    let external = std::env::var_os(FIXTURE_ENV).map(|d| PathBuf::from(d).join(format!("{name}.tbl")));
    let t = match external.filter(|p| p.is_file()) {
        Some(p) => read_file(&p)?,
        None => {
            let text = EMBEDDED
                .iter()
                .find(|(n, _)| n == name)
                .ok_or_else(|| IngestError::NotShipped(name.to_string()))?
                .1;
            parse(text)?
        }
    };
    let t = Arc::new(t);
    cache().lock().unwrap_or_else(|e| e.into_inner()).insert(name.to_string(), t.clone());
    Ok(t)
}
