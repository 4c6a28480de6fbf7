use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::{dq_compare, Caps, GrowthProfile};
use crate::budget::Budget;
use crate::class::{class_membership, class_params, ClassSpec};
use crate::error::{Error, Result};
use crate::geometry::{linear_subclasses, pg, pg_size, ModularCut, ProjectionCertificate};
use crate::kernel::{invariant_key, is_isomorphic, is_isomorphic_colored, InvariantKey, Matroid, Set, MAX_GROUND};
use crate::projection::strip::forbidden_flats;
use crate::projection::{d_bound, density_d};

/// Result of [`kd_search`].
#[derive(Clone, Debug)]
pub struct SearchReport {
    /// The ≺-largest (k, d) found, if any candidate is a member.
    pub profile: Option<GrowthProfile>,
    /// Certificates of members attaining the profile.
    pub witnesses: Vec<ProjectionCertificate>,
    /// Membership-oracle calls.
    pub queries: u64,
    /// Set when any enumeration hit a cap.
    pub truncated: bool,
}

impl SearchReport {
    pub fn to_text(&self) -> String {
        let mut out = match &self.profile {
            Some(p) => format!(
                "profile q={} k={} d={} qd={} truncated={}\n",
                p.q,
                p.k,
                p.d,
                p.qd(),
                self.truncated
            ),
            None => format!("profile none truncated={}\n", self.truncated),
        };
        out.push_str(&format!("queries {}\nwitnesses {}\n", self.queries, self.witnesses.len()));
        out
    }
}

/// Searches the simple rank-m members of the class that are k-element
/// projections of PG(m + k − 1, q), for k ≤ caps.k_max, and returns the
/// ≺-largest (k, d). Candidates are the contractions of iterated
/// single-element extensions of the geometry, up to isomorphism fixing the
/// added elements.
pub fn kd_search(spec: &ClassSpec, m: usize, caps: &Caps) -> Result<SearchReport> {
    if m < 2 {
        return Err(Error::Precondition(format!("rank {m} is below 2")));
    }
    let q = class_params(spec)?.q;
    let queries = AtomicU64::new(0);
    let mut truncated = false;
    let mut best: Option<(usize, u64)> = None;
    let mut witnesses: Vec<ProjectionCertificate> = Vec::new();
    for k in 0..=caps.k_max {
        if pg_size(m + k, q) as usize + k > MAX_GROUND {
            truncated = true;
            break;
        }
        let budget = Budget::new("projection enumeration", caps.nodes);
        let mut certs = Vec::new();
        let g = pg(m + k, q)?;
        match lifts(&g, k, &budget) {
            Ok(lifted) => {
                for (l, k_set) in lifted {
                    certs.push(ProjectionCertificate::new(l, k_set, q, None)?);
                }
            }
            Err(e) if e.is_budget() => truncated = true,
            Err(e) => return Err(e),
        }
        let checked: Vec<Result<Option<(u64, ProjectionCertificate)>>> = certs
            .into_par_iter()
            .map(|cert| {
                let (si, _) = cert.projected.simplify();
                let Some(d) = density_d(q, m, k, si.n() as u64) else {
                    return Ok(None);
                };
                if d > d_bound(q, k) {
                    return Ok(None);
                }
                queries.fetch_add(1, Ordering::Relaxed);
                match class_membership(spec, &si) {
                    Ok(true) => Ok(Some((d, cert))),
                    Ok(false) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect();
        for c in checked {
            let (d, cert) = match c {
                Ok(Some(x)) => x,
                Ok(None) => continue,
                Err(e) if e.is_budget() => {
                    truncated = true;
                    continue;
                }
                Err(e) => return Err(e),
            };
            match best.map(|b| dq_compare((k, d), b)) {
                None | Some(std::cmp::Ordering::Greater) => {
                    best = Some((k, d));
                    witnesses.clear();
                    witnesses.push(cert);
                }
                Some(std::cmp::Ordering::Equal) => {
                    let (si, _) = cert.projected.simplify();
                    let fresh = witnesses.iter().all(|w| is_isomorphic(&w.projected.simplify().0, &si).is_none());
                    if fresh && witnesses.len() < caps.witnesses {
                        witnesses.push(cert);
                    }
                }
                Some(std::cmp::Ordering::Less) => {}
            }
        }
    }
    let profile = best.map(|(k, d)| GrowthProfile::new(q, k, d)).transpose()?;
    Ok(SearchReport { profile, witnesses, queries: queries.into_inner(), truncated })
}

/// Every extension of `g` by k elements K such that K is independent and
/// no element of g becomes a loop of the contraction by K, up to
/// isomorphism fixing K setwise.
fn lifts(g: &Matroid, k: usize, budget: &Budget) -> Result<Vec<(Matroid, Set)>> {
    let mut level = vec![(g.clone(), Set::EMPTY)];
    for depth in 0..k {
        let mut seen: HashMap<InvariantKey, Vec<(Matroid, Vec<u32>)>> = HashMap::new();
        let mut next = Vec::new();
        for (cur, k_set) in &level {
            let forbidden = forbidden_flats(cur, *k_set);
            let cuts: Vec<Vec<Set>> = if depth == 0 {
                // Flats of one rank are all equivalent in a projective geometry.
                (1..=g.full_rank()).map(|rho| vec![g.flats_of_rank(rho)[0]]).collect()
            } else {
                linear_subclasses(cur, Some(budget))?
                    .iter()
                    .map(|sub| ModularCut::from_linear_subclass(cur, sub).minimal())
                    .collect()
            };
            for gens in cuts {
                if gens.is_empty() || forbidden.iter().any(|&f| gens.iter().any(|x| x.is_subset(f))) {
                    continue;
                }
                budget.tick()?;
                let ext = cur.extend_unchecked(gens)?;
                let next_k = k_set.with(cur.n());
                let colors: Vec<u32> = (0..ext.n()).map(|e| u32::from(next_k.contains(e))).collect();
                let bucket = seen.entry(invariant_key(&ext)).or_default();
                if bucket.iter().any(|(x, c)| is_isomorphic_colored(x, &ext, c, &colors).is_some()) {
                    continue;
                }
                bucket.push((ext.clone(), colors));
                next.push((ext, next_k));
            }
        }
        level = next;
    }
    Ok(level)
}
