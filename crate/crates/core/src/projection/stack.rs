use super::density::representable;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::kernel::{Matroid, Set};

/// Layers F_1, ..., F_k of a (q, k, t)-stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackWitness {
    pub layers: Vec<Set>,
    pub q: u32,
    pub t: usize,
}

impl StackWitness {
    pub fn to_text(&self) -> String {
        let mut out = format!("stack q={} k={} t={}\n", self.q, self.layers.len(), self.t);
        for l in &self.layers {
            let elems: Vec<String> = l.iter().map(|e| e.to_string()).collect();
            out.push_str(&format!("layer {}\n", elems.join(" ")));
        }
        out
    }

    /// Checks disjointness, that the layers span `m`, and each layer's rank
    /// cap and non-representability after contracting the earlier layers.
    pub fn verify(&self, m: &Matroid) -> Result<bool> {
        let mut used = Set::EMPTY;
        for &f in &self.layers {
            m.check_subset(f)?;
            if !f.is_disjoint(used) {
                return Ok(false);
            }
            let layer = m.contract(used).restrict(shift(f, used));
            if layer.full_rank() > self.t || representable(&layer, self.q, None)? {
                return Ok(false);
            }
            used |= f;
        }
        Ok(m.is_spanning(used))
    }
}

/// Renumbers `f` (disjoint from `removed`) into the ground set of a minor
/// that drops `removed`.
fn shift(f: Set, removed: Set) -> Set {
    f.iter().map(|e| e - (removed & Set::full(e)).len()).collect()
}

/// Inverse of [`shift`].
fn unshift(f: Set, removed: Set, n: usize) -> Set {
    let kept = (Set::full(n) - removed).to_vec();
    f.map(&kept)
}

/// A (q, k, t)-stack structure on `m`: disjoint layers spanning `m`, each of
/// rank at most t and not GF(q)-representable once the earlier layers are
/// contracted. Layers are taken to be flats of the current contraction,
/// which loses nothing: enlarging a layer to its closure keeps its rank and
/// keeps it non-representable, and only adds loops to later layers.
pub fn find_stack(m: &Matroid, q: u32, t: usize, k: usize, budget: &Budget) -> Result<Option<StackWitness>> {
    if 2 * k > m.full_rank() {
        return Err(Error::Precondition(format!("a stack of height {k} has rank at least {}", 2 * k)));
    }
    if t < 2 {
        return Err(Error::Precondition("stack layers need rank cap t >= 2".into()));
    }
    let mut layers = Vec::new();
    if go(m, q, t, k, Set::EMPTY, &mut layers, budget)? {
        Ok(Some(StackWitness { layers, q, t }))
    } else {
        Ok(None)
    }
}

fn go(m: &Matroid, q: u32, t: usize, k: usize, used: Set, layers: &mut Vec<Set>, budget: &Budget) -> Result<bool> {
    let remaining = m.full_rank() - m.rank(used);
    if layers.len() == k {
        return Ok(remaining == 0);
    }
    let left = k - layers.len();
    if remaining < 2 * left || remaining > t * left {
        return Ok(false);
    }
    let minor = m.contract(used);
    let loops = minor.loops();
    for rank in 2..=t.min(remaining) {
        for &f in minor.flats_of_rank(rank) {
            budget.tick()?;
            let layer = f - loops;
            if representable(&minor.restrict(layer), q, Some(budget))? {
                continue;
            }
            let real = unshift(layer, used, m.n());
            layers.push(real);
            if go(m, q, t, k, used | real, layers, budget)? {
                return Ok(true);
            }
            layers.pop();
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg;

    fn budget() -> Budget {
        Budget::new("stack search", 100_000)
    }

    #[test]
    fn single_layer() {
        let u24 = Matroid::uniform(2, 4);
        let w = find_stack(&u24, 2, 2, 1, &budget()).unwrap().unwrap();
        assert_eq!(w.layers, vec![u24.ground()]);
        assert!(w.verify(&u24).unwrap());
    }

    #[test]
    fn binary_matroids_have_no_stacks() {
        let fano = pg(3, 2).unwrap();
        assert!(find_stack(&fano, 2, 3, 1, &budget()).unwrap().is_none());
    }

    #[test]
    fn two_layers() {
        let m = Matroid::uniform(2, 4).direct_sum(&Matroid::uniform(2, 4)).unwrap();
        let w = find_stack(&m, 2, 2, 2, &budget()).unwrap().unwrap();
        assert_eq!(w.layers.len(), 2);
        assert!(w.verify(&m).unwrap());
        assert!(find_stack(&m, 3, 2, 2, &budget()).unwrap().is_none());
    }

    #[test]
    fn budget_is_an_error() {
        let m = Matroid::uniform(2, 4).direct_sum(&Matroid::uniform(2, 4)).unwrap();
        assert!(find_stack(&m, 2, 2, 2, &Budget::new("t", 1)).unwrap_err().is_budget());
    }

    #[test]
    fn shifting_round_trips() {
        let removed = Set(0b0101);
        let f = Set(0b1010_1010);
        assert_eq!(unshift(shift(f, removed), removed, 8), f);
    }
}
