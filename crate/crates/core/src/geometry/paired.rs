use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::kernel::{find_violation, Matroid, Set};

/// The extension of G ≅ PG(n+1, q) by two elements `x1 = |G|`, `x2 = |G|+1`
/// in which each `x_i` is free, `{x1, x2}` is skew to every flat of rank
/// below `n` and spanned by no hyperplane, and the rank-n flats skew to
/// `{x1, x2}` are exactly `fprime`.
///
/// These conditions fix the rank function. It is only a matroid when no
/// hyperplane contains two rank-n flats outside `fprime`; otherwise the
/// construction reports the violated axiom.
pub fn paired_extension(g: &Matroid, fprime: &[Set]) -> Result<Matroid> {
    let big_r = g.full_rank();
    if big_r < 2 {
        return Err(Error::Precondition("the geometry needs rank at least 2".into()));
    }
    let n = big_r - 2;
    let skew: HashSet<Set> = fprime.iter().copied().collect();
    for &f in &skew {
        g.check_subset(f)?;
        if !g.is_flat(f) || g.rank(f) != n {
            return Err(Error::Precondition(format!("{f} is not a rank-{n} flat")));
        }
    }
    let ng = g.n();
    let (x1, x2) = (ng, ng + 1);
    let gset = Set::full(ng);
    let m = Matroid::from_rank_fn_unchecked(ng + 2, |x| {
        let a = x & gset;
        let ra = g.rank(a);
        match (x.contains(x1), x.contains(x2)) {
            (false, false) => ra,
            (true, false) | (false, true) => (ra + 1).min(big_r),
            (true, true) => {
                if ra < n {
                    ra + 2
                } else if ra == n {
                    if skew.contains(&g.closure(a)) {
                        n + 2
                    } else {
                        n + 1
                    }
                } else {
                    big_r
                }
            }
        }
    })?;
    if let Some(v) = find_violation(&m) {
        return Err(Error::NotMatroid(format!("no two-element extension realizes this flat set: {v}")));
    }
    check_conditions(g, &m, &skew)?;
    Ok(m)
}

fn check_conditions(g: &Matroid, m: &Matroid, skew: &HashSet<Set>) -> Result<()> {
    let ng = g.n();
    let pair = Set::single(ng).with(ng + 1);
    let free = g.extend_unchecked(vec![g.ground()])?;
    for x in [ng, ng + 1] {
        let other = pair.without(x);
        let del = m.delete(other);
        if !del.same_rank_function(&free) {
            return Err(Error::Invariant(format!("deleting element {} does not leave a free extension", other.first().unwrap())));
        }
    }
    if !m.restrict(Set::full(ng)).same_rank_function(g) {
        return Err(Error::Invariant("restriction to the geometry changed".into()));
    }
    let n = g.full_rank() - 2;
    for (rank, level) in g.flats_by_rank().iter().enumerate() {
        for &f in level {
            let skew_now = m.rank(f | pair) == rank + 2;
            if rank < n && !skew_now {
                return Err(Error::Invariant(format!("pair is not skew to the rank-{rank} flat {f}")));
            }
            if rank == n && skew_now != skew.contains(&f) {
                return Err(Error::Invariant(format!("skewness to {f} disagrees with the chosen flats")));
            }
            if rank + 1 == g.full_rank() && m.rank(f | pair) == rank {
                return Err(Error::Invariant(format!("hyperplane {f} spans the pair")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg;
    use crate::kernel::is_isomorphic;

    #[test]
    fn all_points_skew() {
        let g = pg(3, 2).unwrap();
        let pts: Vec<Set> = g.flats_of_rank(1).to_vec();
        let m = paired_extension(&g, &pts).unwrap();
        assert_eq!((m.n(), m.full_rank()), (9, 3));
    }

    #[test]
    fn empty_flat_set_is_not_realizable_in_the_plane() {
        let g = pg(3, 2).unwrap();
        assert!(matches!(paired_extension(&g, &[]), Err(Error::NotMatroid(_))));
    }

    #[test]
    fn sizes_of_fprime_separate_isomorphism_classes() {
        let g = pg(3, 2).unwrap();
        let pts: Vec<Set> = g.flats_of_rank(1).to_vec();
        let all = paired_extension(&g, &pts).unwrap();
        let six = paired_extension(&g, &pts[1..]).unwrap();
        assert!(is_isomorphic(&all, &six).is_none());
        assert!(paired_extension(&g, &pts[2..]).is_err());
    }
}
