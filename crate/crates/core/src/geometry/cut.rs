use std::collections::{HashMap, HashSet};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::kernel::{invariant_key, is_isomorphic, Matroid, Set};

/// A family of flats closed upward and under intersection of modular pairs.
///
/// The empty cut is allowed and adds a coloop. Any nonempty cut contains the
/// ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularCut {
    flats: Vec<Set>,
}

impl ModularCut {
    /// The empty cut: the new element is a coloop.
    pub fn empty() -> Self {
        ModularCut { flats: Vec::new() }
    }

    /// `{E(M)}`: the free extension.
    pub fn free(m: &Matroid) -> Self {
        ModularCut { flats: vec![m.ground()] }
    }

    /// All flats containing the flat `f`.
    pub fn principal(m: &Matroid, f: Set) -> Result<Self> {
        m.check_subset(f)?;
        if !m.is_flat(f) {
            return Err(Error::InvalidCut(format!("{f} is not a flat")));
        }
        Ok(ModularCut { flats: upward(m, &[f]) })
    }

    /// The smallest modular cut containing every flat in `gens`.
    pub fn generated(m: &Matroid, gens: &[Set]) -> Result<Self> {
        for &g in gens {
            m.check_subset(g)?;
            if !m.is_flat(g) {
                return Err(Error::InvalidCut(format!("{g} is not a flat")));
            }
        }
        let mut members: HashSet<Set> = upward(m, gens).into_iter().collect();
        loop {
            let list: Vec<Set> = members.iter().copied().collect();
            let mut added = Vec::new();
            for (i, &a) in list.iter().enumerate() {
                for &b in &list[i + 1..] {
                    let c = a & b;
                    if !members.contains(&c) && m.is_modular_pair(a, b) {
                        added.push(c);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            members.extend(upward(m, &added));
        }
        let mut flats: Vec<Set> = members.into_iter().collect();
        flats.sort();
        Ok(ModularCut { flats })
    }

    /// The cut of flats all of whose hyperplanes lie in `subclass`.
    pub fn from_linear_subclass(m: &Matroid, subclass: &[Set]) -> Self {
        let chosen: HashSet<Set> = subclass.iter().copied().collect();
        let hyper = m.hyperplanes();
        let mut flats: Vec<Set> = m
            .all_flats()
            .filter(|&f| hyper.iter().filter(|h| f.is_subset(**h)).all(|h| chosen.contains(h)))
            .collect();
        flats.sort();
        ModularCut { flats }
    }

    /// Takes the flats as given; call [`ModularCut::validate`] before use.
    pub fn from_flats(mut flats: Vec<Set>) -> Self {
        flats.sort();
        flats.dedup();
        ModularCut { flats }
    }

    pub fn flats(&self) -> &[Set] {
        &self.flats
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn contains(&self, f: Set) -> bool {
        self.flats.binary_search(&f).is_ok()
    }

    /// Members with no proper subset in the cut.
    pub fn minimal(&self) -> Vec<Set> {
        self.flats
            .iter()
            .copied()
            .filter(|&f| !self.flats.iter().any(|&g| g != f && g.is_subset(f)))
            .collect()
    }

    pub fn validate(&self, m: &Matroid) -> Result<()> {
        for &f in &self.flats {
            m.check_subset(f)?;
            if !m.is_flat(f) {
                return Err(Error::InvalidCut(format!("{f} is not a flat")));
            }
        }
        if self.flats.is_empty() {
            return Ok(());
        }
        if !self.contains(m.ground()) {
            return Err(Error::InvalidCut("not upward closed: the ground set is missing".into()));
        }
        for &f in &self.flats {
            for e in m.ground() - f {
                let g = m.closure(f.with(e));
                if !self.contains(g) {
                    return Err(Error::InvalidCut(format!("not upward closed: {f} is in but {g} is not")));
                }
            }
        }
        for (i, &a) in self.flats.iter().enumerate() {
            for &b in &self.flats[i + 1..] {
                if m.is_modular_pair(a, b) && !self.contains(a & b) {
                    return Err(Error::InvalidCut(format!("modular pair {a}, {b} with intersection outside")));
                }
            }
        }
        Ok(())
    }
}

fn upward(m: &Matroid, gens: &[Set]) -> Vec<Set> {
    let mut seen: HashSet<Set> = gens.iter().copied().collect();
    let mut stack: Vec<Set> = gens.to_vec();
    while let Some(f) = stack.pop() {
        let mut rest = m.ground() - f;
        while let Some(e) = rest.first() {
            let g = m.closure(f.with(e));
            rest -= g;
            if seen.insert(g) {
                stack.push(g);
            }
        }
    }
    let mut out: Vec<Set> = seen.into_iter().collect();
    out.sort();
    out
}

/// How to choose a modular cut relative to the matroid being extended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CutSpec {
    Free,
    Coloop,
    Principal(Set),
    Generated(Vec<Set>),
    Cut(ModularCut),
}

impl CutSpec {
    /// Minimal members of the resolved cut. Only `Cut` needs the full axiom check.
    pub(crate) fn generators(&self, m: &Matroid) -> Result<Vec<Set>> {
        match self {
            CutSpec::Free => Ok(vec![m.ground()]),
            CutSpec::Coloop => Ok(Vec::new()),
            CutSpec::Principal(f) => {
                m.check_subset(*f)?;
                if !m.is_flat(*f) {
                    return Err(Error::InvalidCut(format!("{f} is not a flat")));
                }
                Ok(vec![*f])
            }
            CutSpec::Generated(gens) => Ok(ModularCut::generated(m, gens)?.minimal()),
            CutSpec::Cut(c) => {
                c.validate(m)?;
                Ok(c.minimal())
            }
        }
    }
}

/// The single-element extension whose new element `n` is spanned exactly by
/// the flats in `cut`.
pub fn extend(m: &Matroid, cut: &ModularCut) -> Result<Matroid> {
    cut.validate(m)?;
    m.extend_unchecked(cut.minimal())
}

/// Every linear subclass of the hyperplanes of `m`: sets of hyperplanes
/// meeting each coline in none, one, or all of its hyperplanes.
pub fn linear_subclasses(m: &Matroid, budget: Option<&Budget>) -> Result<Vec<Vec<Set>>> {
    let hyper = m.hyperplanes().to_vec();
    let r = m.full_rank();
    let colines: Vec<Vec<usize>> = if r >= 2 {
        m.flats_of_rank(r - 2)
            .iter()
            .map(|&c| (0..hyper.len()).filter(|&i| c.is_subset(hyper[i])).collect())
            .collect()
    } else {
        Vec::new()
    };
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); hyper.len()];
    for (j, c) in colines.iter().enumerate() {
        for &i in c {
            through[i].push(j);
        }
    }
    let mut state = vec![0u8; hyper.len()]; // 0 unset, 1 in, 2 out
    let mut out = Vec::new();
    subclass_dfs(0, &hyper, &colines, &through, &mut state, &mut out, budget)?;
    Ok(out)
}

fn subclass_dfs(
    i: usize,
    hyper: &[Set],
    colines: &[Vec<usize>],
    through: &[Vec<usize>],
    state: &mut Vec<u8>,
    out: &mut Vec<Vec<Set>>,
    budget: Option<&Budget>,
) -> Result<()> {
    if let Some(b) = budget {
        b.tick()?;
    }
    if i == hyper.len() {
        out.push((0..hyper.len()).filter(|&j| state[j] == 1).map(|j| hyper[j]).collect());
        return Ok(());
    }
    for choice in [2u8, 1u8] {
        state[i] = choice;
        let ok = through[i].iter().all(|&c| {
            let ins = colines[c].iter().filter(|&&h| state[h] == 1).count();
            let outs = colines[c].iter().filter(|&&h| state[h] == 2).count();
            ins < 2 || outs == 0
        });
        if ok {
            subclass_dfs(i + 1, hyper, colines, through, state, out, budget)?;
        }
    }
    state[i] = 0;
    Ok(())
}

/// Result of [`enumerate_extensions`].
#[derive(Clone, Debug)]
pub struct Extensions {
    pub matroids: Vec<Matroid>,
    /// Set when the cap stopped the enumeration early.
    pub truncated: bool,
}

/// All single-element extensions of `m` (one per modular cut, the coloop
/// first), optionally reduced up to isomorphism, stopping at `cap` results.
pub fn enumerate_extensions(m: &Matroid, iso_reduce: bool, cap: usize) -> Result<Extensions> {
    let mut cuts = vec![Vec::new()];
    for sub in linear_subclasses(m, None)? {
        cuts.push(ModularCut::from_linear_subclass(m, &sub).minimal());
    }
    let mut matroids: Vec<Matroid> = Vec::new();
    let mut buckets: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    let mut truncated = false;
    for gens in cuts {
        let ext = m.extend_unchecked(gens)?;
        if iso_reduce {
            let key = invariant_key(&ext);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().any(|&j| is_isomorphic(&matroids[j], &ext).is_some()) {
                continue;
            }
            bucket.push(matroids.len());
        }
        if matroids.len() == cap {
            truncated = true;
            break;
        }
        matroids.push(ext);
    }
    Ok(Extensions { matroids, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg;

    #[test]
    fn u11_has_three_extensions() {
        let ext = enumerate_extensions(&Matroid::uniform(1, 1), true, usize::MAX).unwrap();
        assert_eq!(ext.matroids.len(), 3);
        assert!(!ext.truncated);
        let ranks: Vec<usize> = ext.matroids.iter().map(|e| e.full_rank()).collect();
        assert_eq!(ranks, vec![2, 1, 1]);
    }

    #[test]
    fn free_extension_of_u23() {
        let u23 = Matroid::uniform(2, 3);
        let free = extend(&u23, &ModularCut::free(&u23)).unwrap();
        assert!(free.same_rank_function(&Matroid::uniform(2, 4)));
        let all = enumerate_extensions(&u23, true, usize::MAX).unwrap();
        assert!(all.matroids.iter().any(|e| is_isomorphic(e, &Matroid::uniform(2, 4)).is_some()));
        let one = enumerate_extensions(&u23, true, 1).unwrap();
        assert_eq!(one.matroids.len(), 1);
        assert!(one.truncated);
    }

    #[test]
    fn principal_extension_of_fano_on_a_line() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0];
        let ext = extend(&fano, &ModularCut::principal(&fano, line).unwrap()).unwrap();
        let quotient = ext.contract(Set::single(7));
        assert_eq!((quotient.full_rank(), quotient.epsilon()), (2, 5));
    }

    #[test]
    fn invalid_cuts_are_rejected() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0];
        assert!(extend(&fano, &ModularCut::from_flats(vec![line])).is_err());
        let two_lines = ModularCut::from_flats(vec![fano.flats_of_rank(2)[0], fano.flats_of_rank(2)[1], fano.ground()]);
        assert!(two_lines.validate(&fano).is_err());
        assert!(ModularCut::principal(&fano, Set(0b11)).is_err());
    }

    #[test]
    fn projective_cuts_are_principal() {
        let g = pg(3, 2).unwrap();
        let subs = linear_subclasses(&g, None).unwrap();
        assert_eq!(subs.len(), g.all_flats().count());
        for s in subs {
            let cut = ModularCut::from_linear_subclass(&g, &s);
            cut.validate(&g).unwrap();
            assert_eq!(cut.minimal().len(), 1);
        }
    }

    #[test]
    fn generated_cut_closes_modular_intersections() {
        let g = pg(3, 2).unwrap();
        let lines = g.flats_of_rank(2);
        let cut = ModularCut::generated(&g, &[lines[0], lines[1]]).unwrap();
        cut.validate(&g).unwrap();
        assert!(cut.contains(lines[0] & lines[1]));
    }
}
