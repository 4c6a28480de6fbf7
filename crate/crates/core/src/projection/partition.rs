use crate::error::{Error, Result};
use crate::kernel::{Matroid, Set};

/// Largest rank handled by [`flat_partition_min`].
pub const PARTITION_RANK_LIMIT: usize = 4;

/// The fewest parts in a partition of E(G) into at least two flats of G.
///
/// Branch and bound: the least uncovered element is covered by each flat
/// inside the uncovered set, larger flats first, and a branch is cut when
/// even the largest remaining flat cannot beat the best partition found.
pub fn flat_partition_min(g: &Matroid) -> Result<usize> {
    if g.full_rank() > PARTITION_RANK_LIMIT {
        return Err(Error::TooLarge { what: "exhaustive regime exceeded: flat partition rank", size: g.full_rank(), limit: PARTITION_RANK_LIMIT });
    }
    if g.n() < 2 {
        return Err(Error::Precondition("a partition into two or more flats needs two elements".into()));
    }
    let mut flats: Vec<Set> = g.all_flats().filter(|f| !f.is_empty() && *f != g.ground()).collect();
    flats.sort_by_key(|f| std::cmp::Reverse(f.len()));
    if !g.loops().is_empty() {
        // Loops lie in every flat.
        return Err(Error::Precondition("flats of a matroid with loops overlap".into()));
    }
    let mut best = usize::MAX;
    search(&flats, g.ground(), 0, &mut best);
    if best == usize::MAX {
        return Err(Error::Precondition("E(G) has no partition into two or more flats".into()));
    }
    Ok(best)
}

fn search(flats: &[Set], uncovered: Set, used: usize, best: &mut usize) {
    let Some(e) = uncovered.first() else {
        *best = (*best).min(used);
        return;
    };
    let largest = flats.iter().find(|f| f.is_subset(uncovered)).map_or(1, |f| f.len());
    if used.saturating_add(uncovered.len().div_ceil(largest)) >= *best {
        return;
    }
    for &f in flats {
        if f.contains(e) && f.is_subset(uncovered) {
            search(flats, uncovered - f, used + 1, best);
        }
    }
}

/// A `t`-subset of `flats` whose members meet in a flat F0 and whose
/// differences F − F0 are skew in G/F0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    pub core: Set,
    pub petals: Vec<Set>,
}

pub fn skew_sunflower(g: &Matroid, flats: &[Set], t: usize) -> Result<Option<Sunflower>> {
    let Some(&first) = flats.first() else {
        return Ok(None);
    };
    let s = g.rank(first);
    for &f in flats {
        g.check_subset(f)?;
        if !g.is_flat(f) || g.rank(f) != s {
            return Err(Error::Precondition(format!("{f} is not a rank-{s} flat")));
        }
    }
    if t == 0 {
        return Err(Error::Precondition("a sunflower needs at least one petal".into()));
    }
    let mut chosen = Vec::new();
    Ok(pick(g, flats, t, 0, g.ground(), &mut chosen))
}

fn pick(g: &Matroid, flats: &[Set], t: usize, start: usize, core: Set, chosen: &mut Vec<Set>) -> Option<Sunflower> {
    if chosen.len() == t {
        let r0 = g.rank(core);
        let union = chosen.iter().fold(Set::EMPTY, |a, &b| a | b);
        let sum: usize = chosen.iter().map(|&f| g.rank(f) - r0).sum();
        return (g.rank(union) - r0 == sum).then(|| Sunflower { core, petals: chosen.clone() });
    }
    for i in start..flats.len() {
        if flats.len() - i < t - chosen.len() {
            break;
        }
        chosen.push(flats[i]);
        let found = pick(g, flats, t, i + 1, core & flats[i], chosen);
        chosen.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg;

    #[test]
    fn small_geometries() {
        assert_eq!(flat_partition_min(&pg(2, 3).unwrap()).unwrap(), 4);
        assert_eq!(flat_partition_min(&pg(3, 2).unwrap()).unwrap(), 5);
        assert_eq!(flat_partition_min(&pg(4, 2).unwrap()).unwrap(), 5);
        assert!(flat_partition_min(&pg(5, 2).unwrap()).is_err());
    }

    #[test]
    fn sunflowers() {
        let g = pg(3, 2).unwrap();
        let points = g.flats_of_rank(1);
        let sf = skew_sunflower(&g, &points[..4], 2).unwrap().unwrap();
        assert_eq!(sf.core, Set::EMPTY);
        let lines = g.flats_of_rank(2);
        let sf = skew_sunflower(&g, lines, 2).unwrap().unwrap();
        assert_eq!(sf.core.len(), 1);
        let one = skew_sunflower(&g, lines, 1).unwrap().unwrap();
        assert_eq!(one.core, lines[0]);
        assert!(skew_sunflower(&g, lines, 3).unwrap().is_none());
    }
}
