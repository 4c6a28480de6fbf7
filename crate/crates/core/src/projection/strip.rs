use std::collections::HashMap;

use super::density::{d_bound, density_d};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{linear_subclasses, pg, pg_size, ModularCut, ProjectionCertificate};
use crate::kernel::{combinations, invariant_key, is_isomorphic, is_isomorphic_colored, Matroid, Set, MAX_GROUND};

/// Outcome of [`strip_to_projection`].
#[derive(Clone, Debug)]
pub struct Stripped {
    pub deleted: Set,
    pub k: usize,
    /// Certificate whose projection simplifies to si(M\D).
    pub certificate: ProjectionCertificate,
}

/// Smallest D ⊆ cl_M(K) such that M\D is, up to simplification, a
/// k-element projection of PG(r + k − 1, q) for some k.
pub fn strip_to_projection(m: &Matroid, k_set: Set, q: u32, budget: &Budget) -> Result<Option<Stripped>> {
    m.check_subset(k_set)?;
    if !m.is_simple() {
        return Err(Error::Precondition("strip_to_projection needs a simple matroid".into()));
    }
    let span = m.closure(k_set);
    for size in 0..=span.len() {
        let mut candidates = Vec::new();
        combinations(span, size, &mut |d| candidates.push(d));
        for d in candidates {
            let rest = m.delete(d);
            if rest.full_rank() < 2 {
                continue;
            }
            if let Some(certificate) = find_projection_witness(&rest, q, budget)? {
                return Ok(Some(Stripped { deleted: d, k: certificate.k(), certificate }));
            }
        }
    }
    Ok(None)
}

/// Values of k allowed by the density bound for a rank-r matroid with
/// ε points.
pub fn admissible_k(q: u32, r: usize, epsilon: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 0usize;
    // A projection partitions PG(r + k − 1, q) into ε flats, so ε ≥ q^{(r+k)/2 − 1}.
    while (q as u128).pow((r + k).saturating_sub(2) as u32) <= (epsilon as u128).pow(2) {
        if let Some(d) = density_d(q, r, k, epsilon) {
            if d <= d_bound(q, k) {
                out.push(k);
            }
        }
        k += 1;
    }
    out
}

/// A certificate whose projection has simplification isomorphic to si(M),
/// found by extending PG(r + k − 1, q) one element at a time through every
/// admissible modular cut, up to isomorphism fixing K.
pub fn find_projection_witness(m: &Matroid, q: u32, budget: &Budget) -> Result<Option<ProjectionCertificate>> {
    let (target, _) = m.simplify();
    let r = target.full_rank();
    if r < 2 {
        return Ok(None);
    }
    let eps = target.n() as u64;
    for k in admissible_k(q, r, eps) {
        let size = pg_size(r + k, q) as usize + k;
        if size > MAX_GROUND {
            return Err(Error::TooLarge { what: "projection witness ground set", size, limit: MAX_GROUND });
        }
        let g = pg(r + k, q)?;
        let mut seen: Vec<HashMap<Vec<u32>, Vec<Matroid>>> = vec![HashMap::new(); k + 1];
        if let Some(cert) = extend_search(&g, &g, Set::EMPTY, k, q, &target, &mut seen, budget)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn extend_search(
    g: &Matroid,
    cur: &Matroid,
    k_set: Set,
    k: usize,
    q: u32,
    target: &Matroid,
    seen: &mut [HashMap<Vec<u32>, Vec<Matroid>>],
    budget: &Budget,
) -> Result<Option<ProjectionCertificate>> {
    let depth = k_set.len();
    if depth == k {
        let cert = ProjectionCertificate::new(cur.clone(), k_set, q, None)?;
        let (si, _) = cert.projected.simplify();
        if si.n() == target.n() && is_isomorphic(&si, target).is_some() {
            return Ok(Some(cert));
        }
        return Ok(None);
    }
    let cuts: Vec<Vec<Set>> = if depth == 0 {
        // Flats of one rank are all equivalent in a projective geometry.
        (2..=g.full_rank()).map(|rho| vec![g.flats_of_rank(rho)[0]]).collect()
    } else {
        let forbidden = forbidden_flats(cur, k_set);
        linear_subclasses(cur, Some(budget))?
            .iter()
            .map(|sub| ModularCut::from_linear_subclass(cur, sub).minimal())
            .filter(|gens| forbidden.iter().all(|&f| !gens.iter().any(|x| x.is_subset(f))))
            .collect()
    };
    for gens in cuts {
        budget.tick()?;
        let next = cur.extend_unchecked(gens)?;
        let next_k = k_set.with(cur.n());
        let colors: Vec<u32> = (0..next.n()).map(|e| u32::from(next_k.contains(e))).collect();
        let key = invariant_key(&next);
        let bucket = seen[depth + 1].entry(key).or_default();
        if bucket.iter().any(|x| is_isomorphic_colored(x, &next, &colors, &colors).is_some()) {
            continue;
        }
        bucket.push(next.clone());
        if let Some(cert) = extend_search(g, &next, next_k, k, q, target, seen, budget)? {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

/// cl(K) and each cl(K ∪ {e}); a cut containing one of them would make the
/// new element depend on K or put e in the closure of the enlarged K.
pub(crate) fn forbidden_flats(m: &Matroid, k_set: Set) -> Vec<Set> {
    let base = m.closure(k_set);
    let mut out = vec![base];
    let mut rest = m.ground() - base;
    while let Some(e) = rest.first() {
        let f = m.closure(base.with(e));
        rest -= f;
        out.push(f);
    }
    out
}
