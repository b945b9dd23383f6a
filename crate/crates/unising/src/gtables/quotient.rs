use std::collections::{BTreeSet, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("relation leaves the index set at {0}")]
    NotClosed(String),
    #[error("relation is not symmetric or transitive at {0}")]
    NotEquivalence(String),
}

/// One representative per orbit, the smallest element of each orbit, sorted.
///
/// `moves(x)` lists the elements directly related to `x`; the equivalence is
/// its reflexive-transitive closure, which must also be symmetric and stay
/// inside `reps`.
pub fn canonical_quotient<T, F>(reps: &[T], moves: F) -> Result<Vec<T>, QuotientError>
where
    T: Ord + Clone + Hash + Debug,
    F: Fn(&T) -> Vec<T>,
{
    let all: HashSet<&T> = reps.iter().collect();
    let closure = |x: &T| -> Result<BTreeSet<T>, QuotientError> {
        let mut orbit = BTreeSet::from([x.clone()]);
        let mut todo = vec![x.clone()];
        while let Some(y) = todo.pop() {
            for w in moves(&y) {
                if !all.contains(&w) {
                    return Err(QuotientError::NotClosed(format!("{w:?}")));
                }
                if orbit.insert(w.clone()) {
                    todo.push(w);
                }
            }
        }
        Ok(orbit)
    };
    let mut done: HashSet<T> = HashSet::new();
    let mut out = Vec::new();
    for x in reps {
        if done.contains(x) {
            continue;
        }
        let orbit = closure(x)?;
        for y in &orbit {
            if closure(y)? != orbit {
                return Err(QuotientError::NotEquivalence(format!("{y:?}")));
            }
            if !done.insert(y.clone()) {
                return Err(QuotientError::NotEquivalence(format!("{y:?}")));
            }
        }
        out.push(orbit.into_iter().next().unwrap());
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton() {
        assert_eq!(canonical_quotient(&[7u64], |_| vec![7]).unwrap(), vec![7]);
    }

    #[test]
    fn d_relation_q4() {
        let (q, m) = (4i64, 13i64);
        let set: Vec<i64> = (1..m).collect();
        let r = canonical_quotient(&set, |&d| vec![(-d * q).rem_euclid(m), (d * q * q).rem_euclid(m)])
            .unwrap();
        assert_eq!(r.len(), 4);
        assert_eq!(r[0], 1);
    }

    #[test]
    fn rejects_escape() {
        let e = canonical_quotient(&[1u64, 2], |&x| vec![x + 1]).unwrap_err();
        assert!(matches!(e, QuotientError::NotClosed(_)));
    }

    #[test]
    fn rejects_asymmetric() {
        // 1 -> 2 but 2 -> nothing
        let e = canonical_quotient(&[1u64, 2], |&x| if x == 1 { vec![2] } else { vec![] })
            .unwrap_err();
        assert!(matches!(e, QuotientError::NotEquivalence(_)));
    }
}
