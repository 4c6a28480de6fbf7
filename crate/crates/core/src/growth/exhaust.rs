use std::collections::HashMap;

use super::Caps;
use crate::budget::Budget;
use crate::class::{class_membership, ClassSpec};
use crate::error::{Error, Result};
use crate::geometry::pg;
use crate::kernel::{combinations, invariant_key, is_isomorphic, InvariantKey, Matroid, MAX_GROUND};

/// Largest rank accepted by [`h_exhaustive`].
pub const H_RANK_LIMIT: usize = 4;

/// A value of h(n) with the matroids attaining it.
#[derive(Clone, Debug)]
pub struct HValue {
    pub value: u64,
    pub witnesses: Vec<Matroid>,
    /// False when a cap stopped the search; `value` is then a lower bound.
    pub exact: bool,
}

/// Up-to-isomorphism store of matroids.
#[derive(Default)]
struct IsoSet {
    buckets: HashMap<InvariantKey, Vec<Matroid>>,
}

impl IsoSet {
    /// Inserts `m` unless an isomorphic copy is present.
    fn insert(&mut self, m: &Matroid) -> bool {
        let bucket = self.buckets.entry(invariant_key(m)).or_default();
        if bucket.iter().any(|x| is_isomorphic(x, m).is_some()) {
            return false;
        }
        bucket.push(m.clone());
        true
    }
}

/// The largest ε(M) over members M of the class with r(M) ≤ n.
///
/// With fields given, every member is a restriction of PG(n − 1, q) for the
/// least listed q, and restrictions are tried from largest to smallest.
/// Otherwise simple matroids are grown one element at a time from a basis,
/// keeping only members, up to isomorphism.
pub fn h_exhaustive(spec: &ClassSpec, n: usize, caps: &Caps) -> Result<HValue> {
    spec.validate()?;
    if n == 0 || n > H_RANK_LIMIT {
        return Err(Error::Precondition(format!("rank {n} is outside 1..={H_RANK_LIMIT}")));
    }
    let budget = Budget::new("growth-rate exhaustion", caps.nodes);
    match spec.fields.iter().min() {
        Some(&q) => over_restrictions(spec, n, q, caps, &budget),
        None => over_extensions(spec, n, caps, &budget),
    }
}

fn member(spec: &ClassSpec, m: &Matroid, exact: &mut bool) -> Result<bool> {
    match class_membership(spec, m) {
        Ok(b) => Ok(b),
        Err(e) if e.is_budget() => {
            *exact = false;
            Ok(false)
        }
        Err(e) => Err(e),
    }
}

fn over_restrictions(spec: &ClassSpec, n: usize, q: u32, caps: &Caps, budget: &Budget) -> Result<HValue> {
    let g = pg(n, q)?;
    let mut exact = true;
    for removed in 0..g.n() {
        let mut seen = IsoSet::default();
        let mut witnesses = Vec::new();
        let mut deletions = Vec::new();
        combinations(g.ground(), removed, &mut |d| deletions.push(d));
        for d in deletions {
            if budget.tick().is_err() {
                return Ok(HValue { value: 0, witnesses: Vec::new(), exact: false });
            }
            let m = g.delete(d);
            if !seen.insert(&m) {
                continue;
            }
            if member(spec, &m, &mut exact)? {
                witnesses.push(m);
                if witnesses.len() >= caps.witnesses {
                    break;
                }
            }
        }
        if !witnesses.is_empty() {
            let value = witnesses[0].epsilon() as u64;
            return Ok(HValue { value, witnesses, exact });
        }
    }
    Ok(HValue { value: 0, witnesses: Vec::new(), exact })
}

/// Extensions of a simple matroid that stay simple and keep the rank.
fn simple_extensions(m: &Matroid, budget: &Budget) -> Result<Vec<Matroid>> {
    let mut out = Vec::new();
    for sub in crate::geometry::linear_subclasses(m, Some(budget))? {
        let gens = crate::geometry::ModularCut::from_linear_subclass(m, &sub).minimal();
        if gens.is_empty() || gens.iter().any(|&f| m.rank(f) <= 1) {
            continue;
        }
        budget.tick()?;
        out.push(m.extend_unchecked(gens)?);
    }
    Ok(out)
}

fn over_extensions(spec: &ClassSpec, n: usize, caps: &Caps, budget: &Budget) -> Result<HValue> {
    let mut exact = true;
    let mut best: Vec<Matroid> = Vec::new();
    let mut best_value = 0u64;
    'ranks: for r in 1..=n {
        let start = Matroid::uniform(r, r);
        if !member(spec, &start, &mut exact)? {
            continue;
        }
        let mut level = vec![start];
        loop {
            let size = level[0].n() as u64;
            if size > best_value {
                best_value = size;
                best.clear();
            }
            if size == best_value {
                let mut seen = IsoSet::default();
                for m in best.iter() {
                    seen.insert(m);
                }
                for m in &level {
                    if best.len() < caps.witnesses && seen.insert(m) {
                        best.push(m.clone());
                    }
                }
            }
            if level[0].n() == MAX_GROUND {
                exact = false;
                continue 'ranks;
            }
            let mut seen = IsoSet::default();
            let mut next = Vec::new();
            for m in &level {
                let exts = match simple_extensions(m, budget) {
                    Ok(e) => e,
                    Err(e) if e.is_budget() => {
                        exact = false;
                        break 'ranks;
                    }
                    Err(e) => return Err(e),
                };
                for ext in exts {
                    if seen.insert(&ext) && member(spec, &ext, &mut exact)? {
                        next.push(ext);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
    }
    Ok(HValue { value: best_value, witnesses: best, exact })
}
