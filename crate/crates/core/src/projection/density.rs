use crate::class::find_representation;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::geometry::{is_projective_geometry, pg_size, ProjectionCertificate};
use crate::kernel::{Matroid, Set};

/// ε(M) written as (q^{r+k} − 1)/(q − 1) − q·d for a k-element projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub q: u32,
    pub r: usize,
    pub k: usize,
    pub epsilon: u64,
    pub d: u64,
    /// q·d, the number of points lost to the projection.
    pub d_raw: u64,
    /// d ≤ (q^{2k} − 1)/(q² − 1).
    pub in_bound: bool,
    /// ε ≥ q^{k/2}.
    pub floor_ok: bool,
}

impl DensityReport {
    pub fn to_text(&self) -> String {
        format!(
            "density q={} r={} k={}\nepsilon {}\nd {}\nd_raw {}\nin_bound {}\nfloor_ok {}\n",
            self.q, self.r, self.k, self.epsilon, self.d, self.d_raw, self.in_bound, self.floor_ok
        )
    }
}

/// (q^{2k} − 1)/(q² − 1).
pub fn d_bound(q: u32, k: usize) -> u64 {
    pg_size(k, q * q)
}

/// The d with ε = (q^{r+k} − 1)/(q − 1) − q·d, if one exists.
pub fn density_d(q: u32, r: usize, k: usize, epsilon: u64) -> Option<u64> {
    let total = pg_size(r + k, q);
    let lost = total.checked_sub(epsilon)?;
    (lost % q as u64 == 0).then(|| lost / q as u64)
}

pub fn density_params(cert: &ProjectionCertificate) -> Result<DensityReport> {
    let (q, r, k) = (cert.q, cert.r(), cert.k());
    let epsilon = cert.projected.epsilon() as u64;
    let d = density_d(q, r, k, epsilon).ok_or_else(|| {
        Error::Invariant(format!(
            "epsilon {epsilon} is not (q^(r+k)-1)/(q-1) minus a multiple of q for q={q}, r={r}, k={k}"
        ))
    })?;
    Ok(DensityReport {
        q,
        r,
        k,
        epsilon,
        d,
        d_raw: d * q as u64,
        in_bound: d <= d_bound(q, k),
        floor_ok: (epsilon as u128).pow(2) >= (q as u128).pow(k as u32),
    })
}

/// Maps geometry elements (the numbering of `projected`) to lifted elements.
fn lift(cert: &ProjectionCertificate, s: Set) -> Set {
    s.map(&cert.geometry_elements())
}

/// ⊓(F, K) in the lifted matroid for a set F of geometry elements.
pub fn local_conn_k(cert: &ProjectionCertificate, f: Set) -> usize {
    cert.lifted.local_conn(lift(cert, f), cert.k_set)
}

/// A certificate for a spanning restriction of `cert.projected` lying in
/// P_q(k′): a rank-(r+k′) flat F of the geometry with ⊓(F, K) = k′ that
/// contains a rank-r flat skew to K. A maximal J ⊆ K skew to F has k − k′
/// elements; the certificate is (M̂/J)|(F ∪ (K − J)) with K − J projected.
pub fn spanning_subprojection(cert: &ProjectionCertificate, kprime: usize) -> Result<ProjectionCertificate> {
    let (r, k) = (cert.r(), cert.k());
    if kprime > k {
        return Err(Error::Precondition(format!("k' = {kprime} exceeds k = {k}")));
    }
    if kprime == k {
        return Ok(cert.clone());
    }
    let g = cert.geometry();
    let flats = g.flats_by_rank();
    let lifted = &cert.lifted;
    let skew = flats[r]
        .iter()
        .copied()
        .find(|&f| local_conn_k(cert, f) == 0)
        .ok_or_else(|| Error::Invariant(format!("no rank-{r} flat of the geometry is skew to K")))?;
    let f = flats[r + kprime]
        .iter()
        .copied()
        .find(|&f| skew.is_subset(f) && local_conn_k(cert, f) == kprime)
        .ok_or_else(|| Error::Invariant(format!("no rank-{} flat with local connectivity {kprime} to K", r + kprime)))?;
    let lf = lift(cert, f);
    let mut j = Set::EMPTY;
    for e in cert.k_set {
        if lifted.rank(lf | j.with(e)) == lifted.rank(lf) + j.len() + 1 {
            j = j.with(e);
        }
    }
    if j.len() != k - kprime {
        return Err(Error::Invariant(format!("{} elements of K are skew to F, expected {}", j.len(), k - kprime)));
    }
    let contracted = lifted.contract(j);
    let kept = (lifted.ground() - j).to_vec();
    let renumber = |s: Set| -> Set { s.iter().map(|e| kept.iter().position(|&x| x == e).expect("kept")).collect() };
    let keep = cert.k_set - j;
    let support = renumber(lf | keep);
    let order = support.to_vec();
    let new_k: Set = renumber(keep).iter().map(|e| order.iter().position(|&x| x == e).expect("in support")).collect();
    let sub = ProjectionCertificate::new(contracted.restrict(support), new_k, cert.q, cert.seed)?;
    let expected = cert.projected.restrict(f);
    if sub.r() != r || !sub.projected.same_rank_function(&expected) {
        return Err(Error::Invariant("subprojection is not the spanning restriction onto F".into()));
    }
    Ok(sub)
}

/// Elements whose contraction changes d, with the size check from the
/// generic-point bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SensitiveReport {
    pub d: u64,
    pub set: Set,
    /// ε(M|X).
    pub epsilon: u64,
    /// ε(M|X) < q^{58k⁴}.
    pub within_bound: bool,
}

/// Tests every element directly: contract it and compare ε(M/e) with
/// (q^{r(M/e)+k} − 1)/(q − 1) − q·d.
pub fn sensitive_elements(cert: &ProjectionCertificate) -> Result<SensitiveReport> {
    let report = density_params(cert)?;
    let (q, k, d) = (cert.q, cert.k(), report.d);
    let m = &cert.projected;
    let set: Set = (0..m.n())
        .filter(|&e| {
            let c = m.contract(Set::single(e));
            let target = pg_size(c.full_rank() + k, q).checked_sub(q as u64 * d);
            target != Some(c.epsilon() as u64)
        })
        .collect();
    let epsilon = m.restrict(set).epsilon() as u64;
    let exp = 58u32.saturating_mul((k as u32).saturating_pow(4));
    let within_bound = match (q as u128).checked_pow(exp) {
        Some(b) => (epsilon as u128) < b,
        None => true,
    };
    Ok(SensitiveReport { d, set, epsilon, within_bound })
}

/// Union of the flats F of the geometry with ⊓(F, K) ≥ 1 and
/// ⊓(F, K) = r(F) − j for j ∈ {1, 2}, such that every subflat F′ with
/// ⊓(F′, K) ≥ 1 has ⊓(F′, K) ≤ r(F′) − j. Contracting an element outside
/// this set leaves d unchanged.
pub fn sensitive_cover(cert: &ProjectionCertificate) -> Set {
    let g = cert.geometry();
    let flats = g.flats_by_rank();
    // Per flat: its slack r(F) − ⊓(F, K), for flats meeting K's closure.
    let mut touched: Vec<(Set, usize)> = Vec::new();
    let mut cover = Set::EMPTY;
    for (rank, level) in flats.iter().enumerate() {
        for &f in level {
            let conn = local_conn_k(cert, f);
            if conn == 0 {
                continue;
            }
            let slack = rank - conn;
            let min_sub = touched.iter().filter(|(s, _)| s.is_subset(f)).map(|&(_, j)| j).min();
            if (1..=2).contains(&slack) && min_sub.map_or(true, |j| j >= slack) {
                cover |= f;
            }
            touched.push((f, slack));
        }
    }
    cover
}

/// Largest candidate for a cached projective geometry.
const REPRESENT_CAP: usize = 64;

/// Whether a small matroid is GF(q)-representable; a simple rank-h matroid
/// with (q^h − 1)/(q − 1) points is representable only as PG(h − 1, q).
pub fn representable(m: &Matroid, q: u32, budget: Option<&Budget>) -> Result<bool> {
    let (si, _) = m.simplify();
    let h = si.full_rank();
    let count = pg_size(h, q);
    let n = si.n() as u64;
    if n > count {
        return Ok(false);
    }
    if n == count && n as usize <= REPRESENT_CAP && h >= 1 {
        return Ok(is_projective_geometry(&si, q));
    }
    Ok(find_representation(&si, q, REPRESENT_CAP, budget)?.is_some())
}

/// The largest h in 1..=max(1, r − 1) with every restriction of rank at most
/// h GF(q)-representable. Levels h ≥ 2 are computed both from restrictions
/// and from skewness of K to the flats of rank at most h + 1 of the geometry;
/// disagreement is an error.
pub fn local_rep_level(cert: &ProjectionCertificate) -> Result<usize> {
    let m = &cert.projected;
    let r = cert.r();
    let q = cert.q;
    let top = (r - 1).max(1);
    let mut definitional = 1;
    for h in 2..=top {
        let mut ok = true;
        for &f in m.flats_of_rank(h) {
            if !representable(&m.restrict(f), q, None)? {
                ok = false;
                break;
            }
        }
        if !ok {
            break;
        }
        definitional = h;
    }
    let g = cert.geometry();
    let flats = g.flats_by_rank();
    let first_bad = (2..flats.len()).find(|&rho| flats[rho].iter().any(|&f| local_conn_k(cert, f) > 0));
    for h in 2..=top {
        let by_skew = first_bad.map_or(true, |rho| h + 1 < rho);
        let by_def = h <= definitional;
        if by_skew != by_def {
            return Err(Error::Invariant(format!(
                "level {h}: restrictions say {by_def}, skewness of K says {by_skew}"
            )));
        }
    }
    Ok(definitional)
}
