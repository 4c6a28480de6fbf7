use std::fmt;

use super::matroid::{Matroid, EXPLICIT_LIMIT};
use super::set::Set;
use crate::error::{Error, Result};

/// A witness that a rank function is not a matroid rank function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyRank(usize),
    Increment { set: Set, element: usize, jump: i64 },
    Submodular { set: Set, e: usize, f: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyRank(r) => write!(f, "r(∅) = {r}"),
            Violation::Increment { set, element, jump } => {
                write!(f, "adding {element} to {set} changes the rank by {jump}")
            }
            Violation::Submodular { set, e, f: g } => {
                write!(f, "submodularity fails at {set} with elements {e} and {g}")
            }
        }
    }
}

/// Exhaustive check of r(∅) = 0, unit increase, and local submodularity.
///
/// Together these imply the full rank axioms.
pub fn find_violation(m: &Matroid) -> Option<Violation> {
    let n = m.n();
    if m.rank(Set::EMPTY) != 0 {
        return Some(Violation::EmptyRank(m.rank(Set::EMPTY)));
    }
    for x in 0..1u64 << n {
        let x = Set(x);
        let r = m.rank(x) as i64;
        let rest = m.ground() - x;
        for e in rest {
            let re = m.rank(x.with(e)) as i64;
            if re != r && re != r + 1 {
                return Some(Violation::Increment { set: x, element: e, jump: re - r });
            }
        }
        for e in rest {
            let re = m.rank(x.with(e));
            for f in rest.iter().filter(|&f| f > e) {
                if re + m.rank(x.with(f)) < m.rank(x.with(e).with(f)) + r as usize {
                    return Some(Violation::Submodular { set: x, e, f });
                }
            }
        }
    }
    None
}

/// Runs [`find_violation`] when the ground set is small enough to be exhaustive.
pub fn check_axioms(m: &Matroid) -> Result<()> {
    if m.n() > EXPLICIT_LIMIT {
        return Err(Error::TooLarge { what: "axiom check", size: m.n(), limit: EXPLICIT_LIMIT });
    }
    match find_violation(m) {
        None => Ok(()),
        Some(v) => Err(Error::NotMatroid(v.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_matroids_pass() {
        for n in 0..7 {
            for r in 0..=n {
                assert_eq!(find_violation(&Matroid::uniform(r, n)), None);
            }
        }
    }

    #[test]
    fn rank_jump_is_reported() {
        let m = Matroid::from_rank_fn_unchecked(1, |x| 2 * x.len()).unwrap();
        assert!(matches!(find_violation(&m), Some(Violation::Increment { .. })));
    }

    #[test]
    fn submodularity_failure_is_reported() {
        // 0 parallel to 1 and to 2, yet 1 and 2 independent.
        let m = Matroid::from_rank_fn_unchecked(3, |x| match x.0 {
            0 => 0,
            0b011 | 0b101 => 1,
            0b110 | 0b111 => 2,
            _ => 1,
        })
        .unwrap();
        assert!(find_violation(&m).is_some());
        assert!(Matroid::from_rank_fn(3, |x| x.len().min(5).min(if x == Set(0b11) { 1 } else { 3 })).is_err());
    }
}
