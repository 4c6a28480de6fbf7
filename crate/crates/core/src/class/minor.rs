use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::Result;
use crate::kernel::{embed, invariant_key, is_isomorphic, Matroid, Set};

/// `N ≅ M / contract \ delete`, with `map[i]` the element of M playing the
/// role of element `i` of N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub contract: Set,
    pub delete: Set,
    pub map: Vec<usize>,
}

/// An N-minor of M, searched without a node limit.
pub fn has_minor(m: &Matroid, n: &Matroid) -> Option<MinorWitness> {
    has_minor_budgeted(m, n, &Budget::unlimited("minor search")).expect("unlimited budget")
}

/// An N-minor of M, or `None`; budget exhaustion is an error.
///
/// The contraction set can be taken independent with closure a flat F of
/// rank r(M) − r(N), and then N must be a restriction of M / B for a basis B
/// of F. Contractions isomorphic to one already refuted are skipped.
pub fn has_minor_budgeted(m: &Matroid, n: &Matroid, budget: &Budget) -> Result<Option<MinorWitness>> {
    let (mn, nn) = (m.n(), n.n());
    let (mr, nr) = (m.full_rank(), n.full_rank());
    if nn > mn || nr > mr || nn - nr > mn - mr {
        return Ok(None);
    }
    let n_loops = n.loops().len();
    let n_classes = class_sizes(n);
    let mut refuted: HashMap<Vec<u32>, Vec<Matroid>> = HashMap::new();
    for &f in m.flats_of_rank(mr - nr) {
        budget.tick()?;
        let b = basis_of(m, f);
        let cod = m.contract(b);
        if cod.loops().len() < n_loops || cod.epsilon() < n.epsilon() {
            continue;
        }
        let cod_classes = class_sizes(&cod);
        let cands: Vec<Vec<usize>> = (0..nn)
            .map(|e| {
                (0..cod.n())
                    .filter(|&g| match (n_classes[e], cod_classes[g]) {
                        (0, 0) => true,
                        (a, c) => a > 0 && c >= a,
                    })
                    .collect()
            })
            .collect();
        let key = invariant_key(&cod);
        if let Some(bucket) = refuted.get(&key) {
            if bucket.iter().any(|x| is_isomorphic(x, &cod).is_some()) {
                continue;
            }
        }
        if let Some(phi) = embed(n, &cod, Some(cands), Some(budget))? {
            let rest = (m.ground() - b).to_vec();
            let map: Vec<usize> = phi.iter().map(|&i| rest[i]).collect();
            let image: Set = map.iter().collect();
            return Ok(Some(MinorWitness { contract: b, delete: m.ground() - b - image, map }));
        }
        refuted.entry(key).or_default().push(cod);
    }
    Ok(None)
}

/// Size of each element's parallel class, 0 for loops.
fn class_sizes(m: &Matroid) -> Vec<usize> {
    let mut out = vec![0; m.n()];
    for c in m.parallel_classes() {
        for e in c {
            out[e] = c.len();
        }
    }
    out
}

/// Greedy basis of `x` in element order.
pub(crate) fn basis_of(m: &Matroid, x: Set) -> Set {
    let mut b = Set::EMPTY;
    for e in x {
        if m.rank(b.with(e)) > b.len() {
            b = b.with(e);
        }
    }
    b
}

/// Checks a witness against both matroids.
pub fn verify_witness(m: &Matroid, n: &Matroid, w: &MinorWitness) -> bool {
    let Ok(minor) = m.minor(w.contract, w.delete) else {
        return false;
    };
    let rest = (m.ground() - w.contract - w.delete).to_vec();
    if rest.len() != n.n() {
        return false;
    }
    let pos: Vec<usize> = w.map.iter().map(|e| rest.iter().position(|x| x == e).unwrap_or(usize::MAX)).collect();
    if pos.contains(&usize::MAX) {
        return false;
    }
    Set::full(n.n()).subsets().all(|x| {
        let img: Set = x.iter().map(|e| pos[e]).collect();
        minor.rank(img) == n.rank(x)
    })
}
