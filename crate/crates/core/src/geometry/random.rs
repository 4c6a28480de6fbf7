use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::certificate::ProjectionCertificate;
use super::cut::ModularCut;
use super::pg;
use crate::error::{Error, Result};
use crate::kernel::{Matroid, Set, MAX_GROUND};

/// Field order, number of projected elements, and projected rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateShape {
    pub q: u32,
    pub k: usize,
    pub r: usize,
}

impl CertificateShape {
    /// Ranks `r <= 4` whose lifted matroid fits the 64-element ground set.
    pub fn ranks_for(q: u32, k: usize) -> Vec<usize> {
        (2..=4)
            .filter(|&r| super::pg_size(r + k, q) as usize + k <= MAX_GROUND)
            .collect()
    }
}

const ATTEMPTS: usize = 500;

/// A random k-element projection of PG(r+k−1, q), reproducible from `seed`.
///
/// The first cut is principal on a random flat of rank at least 2. Later
/// cuts are principal or generated by two random flats, redrawn until the
/// new element stays independent of K and K stays a flat.
pub fn random_certificate(shape: CertificateShape, seed: u64) -> Result<ProjectionCertificate> {
    let CertificateShape { q, k, r } = shape;
    if r < 2 {
        return Err(Error::Precondition("projections need rank at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = pg(r + k, q)?;
    let mut cur = g.clone();
    let mut k_set = Set::EMPTY;
    for _ in 0..k {
        let forbidden = forbidden_flats(&cur, k_set);
        let mut chosen = None;
        for _ in 0..ATTEMPTS {
            let gens = if k_set.is_empty() || rng.gen_bool(0.5) {
                vec![random_flat(&cur, &mut rng)]
            } else {
                let a = random_flat(&cur, &mut rng);
                let b = random_flat(&cur, &mut rng);
                ModularCut::generated(&cur, &[a, b])?.minimal()
            };
            if forbidden.iter().all(|&f| !gens.iter().any(|g| g.is_subset(f))) {
                chosen = Some(gens);
                break;
            }
        }
        let gens = chosen.ok_or_else(|| Error::Invariant("no admissible cut found".into()))?;
        let p = cur.n();
        cur = cur.extend_unchecked(gens)?;
        k_set = k_set.with(p);
    }
    ProjectionCertificate::new(cur, k_set, q, Some(seed))
}

/// cl(K) and every cl(K ∪ {e}): a cut containing one of these would make the
/// new element dependent on K or pull e into cl(K).
fn forbidden_flats(m: &Matroid, k_set: Set) -> Vec<Set> {
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

fn random_flat(m: &Matroid, rng: &mut ChaCha8Rng) -> Set {
    let rank = rng.gen_range(2..=m.full_rank());
    *m.flats_of_rank(rank).choose(rng).expect("every rank has a flat")
}

/// `count` certificates cycling through the admissible ranks of `(q, k)`,
/// with seeds `base_seed, base_seed + 1, ...`.
pub fn sample_certificates(q: u32, k: usize, count: usize, base_seed: u64) -> Result<Vec<ProjectionCertificate>> {
    let ranks = CertificateShape::ranks_for(q, k);
    if ranks.is_empty() {
        return Err(Error::TooLarge { what: "certificate", size: super::pg_size(2 + k, q) as usize, limit: MAX_GROUND });
    }
    (0..count)
        .into_par_iter()
        .map(|i| {
            let shape = CertificateShape { q, k, r: ranks[i % ranks.len()] };
            random_certificate(shape, base_seed.wrapping_add(i as u64))
        })
        .collect()
}
