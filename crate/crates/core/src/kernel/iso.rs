use std::collections::HashSet;

use super::matroid::Matroid;
use super::set::Set;
use crate::budget::Budget;
use crate::error::Result;

/// Isomorphism-invariant summary used to bucket matroids before backtracking.
pub type InvariantKey = Vec<u32>;

/// Per-element invariant: loop flag, parallel class size, and for every rank
/// the sorted sizes of the flats of that rank through the element.
pub fn element_signatures(m: &Matroid) -> Vec<Vec<u32>> {
    let levels = m.flats_by_rank();
    let classes = m.parallel_classes();
    (0..m.n())
        .map(|e| {
            let mut sig = vec![m.rank(Set::single(e)) as u32];
            sig.push(classes.iter().find(|c| c.contains(e)).map_or(0, |c| c.len() as u32));
            for level in levels.iter().skip(1) {
                let mut sizes: Vec<u32> = level.iter().filter(|f| f.contains(e)).map(|f| f.len() as u32).collect();
                sizes.sort_unstable();
                sig.push(sizes.len() as u32);
                sig.extend(sizes);
            }
            sig
        })
        .collect()
}

/// Rank, size, ε, flat counts per rank, line sizes and element signatures.
pub fn invariant_key(m: &Matroid) -> InvariantKey {
    let levels = m.flats_by_rank();
    let mut key = vec![m.n() as u32, m.full_rank() as u32, m.epsilon() as u32, m.loops().len() as u32];
    key.extend(levels.iter().map(|l| l.len() as u32));
    if let Some(lines) = levels.get(2) {
        let mut sizes: Vec<u32> = lines.iter().map(|l| l.len() as u32).collect();
        sizes.sort_unstable();
        key.extend(sizes);
    }
    let mut sigs = element_signatures(m);
    sigs.sort();
    for s in sigs {
        key.push(u32::MAX);
        key.extend(s);
    }
    key
}

/// A rank-preserving bijection `φ` with `φ[e]` the image in `n` of element `e` of `m`.
pub fn is_isomorphic(m: &Matroid, n: &Matroid) -> Option<Vec<usize>> {
    is_isomorphic_colored(m, n, &vec![0; m.n()], &vec![0; n.n()])
}

/// Isomorphism that also preserves the given element colors.
pub fn is_isomorphic_colored(m: &Matroid, n: &Matroid, cm: &[u32], cn: &[u32]) -> Option<Vec<usize>> {
    if m.n() != n.n() || m.full_rank() != n.full_rank() || m.epsilon() != n.epsilon() {
        return None;
    }
    let cm_sorted = sorted(cm);
    if cm_sorted != sorted(cn) {
        return None;
    }
    let lm = m.flats_by_rank();
    let ln = n.flats_by_rank();
    if lm.iter().map(Vec::len).ne(ln.iter().map(Vec::len)) {
        return None;
    }
    let mut sm = element_signatures(m);
    let mut sn = element_signatures(n);
    for (s, &c) in sm.iter_mut().zip(cm) {
        s.push(c);
    }
    for (s, &c) in sn.iter_mut().zip(cn) {
        s.push(c);
    }
    if sorted(&sm) != sorted(&sn) {
        return None;
    }
    let cands: Vec<Vec<usize>> = sm.iter().map(|s| (0..n.n()).filter(|&f| &sn[f] == s).collect()).collect();
    embed(m, n, Some(cands), None).ok().flatten()
}

fn sorted<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Finds an injection `φ` of the ground set of `dom` into that of `cod` with
/// `r_cod(φX) = r_dom(X)` for all `X`, so that `dom` is isomorphic to the
/// restriction of `cod` to the image.
///
/// Elements are mapped one at a time. When `e` is appended to the prefix `P`,
/// it is enough to compare `e ∈ cl(F ∩ P)` with the image condition for every
/// flat `F` of `dom`, since `cl(S) ∩ P` is such a set for every `S ⊆ P`.
pub fn embed(
    dom: &Matroid,
    cod: &Matroid,
    cands: Option<Vec<Vec<usize>>>,
    budget: Option<&Budget>,
) -> Result<Option<Vec<usize>>> {
    if dom.n() > cod.n() {
        return Ok(None);
    }
    let cands = cands.unwrap_or_else(|| {
        (0..dom.n())
            .map(|e| {
                let lp = dom.is_loop(e);
                (0..cod.n()).filter(|&f| cod.is_loop(f) == lp).collect()
            })
            .collect()
    });
    if cands.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let order = search_order(dom, &cands);
    let flats: Vec<Set> = dom.all_flats().collect();
    let mut checks = Vec::with_capacity(order.len());
    let mut prefix = Set::EMPTY;
    for &e in &order {
        let distinct: HashSet<Set> = flats.iter().map(|&f| f & prefix).collect();
        let mut list: Vec<(Set, bool)> =
            distinct.into_iter().map(|s| (s, dom.rank(s.with(e)) == dom.rank(s))).collect();
        list.sort();
        checks.push(list);
        prefix = prefix.with(e);
    }
    let mut search = Search { cod, order, cands, checks, budget, phi: vec![usize::MAX; dom.n()], used: Set::EMPTY };
    Ok(if search.go(0)? { Some(search.phi) } else { None })
}

/// Most constrained first: elements spanned by the prefix, then fewest candidates.
fn search_order(dom: &Matroid, cands: &[Vec<usize>]) -> Vec<usize> {
    let mut order = Vec::with_capacity(dom.n());
    let mut left = dom.ground();
    let mut prefix = Set::EMPTY;
    while !left.is_empty() {
        let span = dom.closure(prefix);
        let pick = left
            .iter()
            .min_by_key(|&e| (!span.contains(e), cands[e].len(), e))
            .expect("nonempty");
        order.push(pick);
        left = left.without(pick);
        prefix = prefix.with(pick);
    }
    order
}

struct Search<'a> {
    cod: &'a Matroid,
    order: Vec<usize>,
    cands: Vec<Vec<usize>>,
    checks: Vec<Vec<(Set, bool)>>,
    budget: Option<&'a Budget>,
    phi: Vec<usize>,
    used: Set,
}

impl Search<'_> {
    fn image(&self, s: Set) -> Set {
        s.iter().map(|e| self.phi[e]).collect()
    }

    fn go(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let e = self.order[depth];
        for i in 0..self.cands[e].len() {
            let f = self.cands[e][i];
            if self.used.contains(f) {
                continue;
            }
            if let Some(b) = self.budget {
                b.tick()?;
            }
            let ok = self.checks[depth].iter().all(|&(s, spanned)| {
                let t = self.image(s);
                (self.cod.rank(t.with(f)) == self.cod.rank(t)) == spanned
            });
            if !ok {
                continue;
            }
            self.phi[e] = f;
            self.used = self.used.with(f);
            if self.go(depth + 1)? {
                return Ok(true);
            }
            self.used = self.used.without(f);
            self.phi[e] = usize::MAX;
        }
        Ok(false)
    }
}
