use crate::error::{Error, Result};
use crate::kernel::{Matroid, Set};

/// Whether a·φ ≥ b for nonnegative integers a and b, with φ the golden
/// ratio: for a, b > 0 this is (b/a)² − (b/a) − 1 ≤ 0.
fn golden_at_least(a: i128, b: i128) -> bool {
    if b <= 0 {
        return true;
    }
    if a <= 0 {
        return false;
    }
    b * b - a * b - a * a <= 0
}

/// Whether φ^j·ε_f ≥ ε, using φ^j = F_j·φ + F_{j−1} with Fibonacci F.
pub fn phi_dense(eps_f: u64, j: usize, eps: u64) -> bool {
    if j == 0 {
        return eps_f >= eps;
    }
    let (mut prev, mut cur) = (0i128, 1i128);
    for _ in 1..j {
        (prev, cur) = (cur, prev + cur);
    }
    let (ef, e) = (eps_f as i128, eps as i128);
    golden_at_least(ef * cur, e - ef * prev)
}

/// A restriction onto a flat, chosen as in the roundness argument.
#[derive(Clone, Debug)]
pub struct RoundRestriction {
    pub flat: Set,
    pub matroid: Matroid,
}

/// An inclusion-minimal flat F of `m` with ε(M|F) ≥ φ^{r(F) − r(M)}·ε(M).
/// Minimality forces M|F to be weakly round; that is checked and a failure
/// is reported as an error.
pub fn weakly_round_dense_restriction(m: &Matroid) -> Result<RoundRestriction> {
    let r = m.full_rank();
    let eps = m.epsilon() as u64;
    let flats = m.flats_by_rank();
    for (rank, level) in flats.iter().enumerate() {
        let mut best: Option<(u64, Set)> = None;
        for &f in level {
            let e = m.restrict(f).epsilon() as u64;
            if phi_dense(e, r - rank, eps) && best.map_or(true, |(b, _)| e > b) {
                best = Some((e, f));
            }
        }
        if let Some((_, flat)) = best {
            let matroid = if flat == m.ground() { m.clone() } else { m.restrict(flat) };
            if !matroid.is_weakly_round() {
                return Err(Error::Invariant(format!("restriction to the minimal dense flat {flat} is not weakly round")));
            }
            return Ok(RoundRestriction { flat, matroid });
        }
    }
    unreachable!("E(M) itself satisfies the density condition")
}

/// A minor N = M/C with N|X = M|X, N|Y = M|Y and Y spanning in N.
#[derive(Clone, Debug)]
pub struct CospanMinor {
    pub contracted: Set,
    pub minor: Matroid,
    /// X and Y renumbered into the ground set of `minor`.
    pub x: Set,
    pub y: Set,
}

/// Contracts, one at a time, an element outside cl(X) ∪ cl(Y) until Y spans.
/// Weak roundness guarantees such an element while Y does not span.
pub fn cospan_minor(m: &Matroid, x: Set, y: Set) -> Result<CospanMinor> {
    m.check_subset(x)?;
    m.check_subset(y)?;
    if !m.is_weakly_round() {
        return Err(Error::Precondition("the matroid is not weakly round".into()));
    }
    if m.rank(x) >= m.rank(y) {
        return Err(Error::Precondition(format!("r(X) = {} is not less than r(Y) = {}", m.rank(x), m.rank(y))));
    }
    let mut contracted = Set::EMPTY;
    loop {
        let rank_of = |s: Set| m.rank(s | contracted) - m.rank(contracted);
        let total = m.full_rank() - m.rank(contracted);
        if rank_of(y) == total {
            break;
        }
        let cx = m.closure(x | contracted);
        let cy = m.closure(y | contracted);
        let e = (m.ground() - cx - cy)
            .first()
            .ok_or_else(|| Error::Invariant("every element is spanned by X or Y".into()))?;
        contracted = contracted.with(e);
    }
    let minor = m.contract(contracted);
    let kept = (m.ground() - contracted).to_vec();
    let index = |s: Set| -> Set { s.iter().map(|e| kept.iter().position(|&k| k == e).expect("kept")).collect() };
    let (nx, ny) = (index(x), index(y));
    let ok = minor.restrict(nx).same_rank_function(&m.restrict(x))
        && minor.restrict(ny).same_rank_function(&m.restrict(y))
        && minor.is_spanning(ny);
    if !ok {
        return Err(Error::Invariant("cospanning minor fails its postconditions".into()));
    }
    Ok(CospanMinor { contracted, minor, x: nx, y: ny })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pg;

    #[test]
    fn golden_ratio_comparisons() {
        // φ ≈ 1.618: 5φ ≈ 8.09.
        assert!(golden_at_least(5, 8));
        assert!(!golden_at_least(5, 9));
        // φ² = φ + 1 ≈ 2.618; 6/φ² ≈ 2.29.
        assert!(phi_dense(3, 2, 6));
        assert!(!phi_dense(2, 2, 6));
        assert!(phi_dense(7, 0, 7));
        assert!(!phi_dense(4, 1, 7));
    }

    #[test]
    fn fano_is_its_own_restriction() {
        let fano = pg(3, 2).unwrap();
        let r = weakly_round_dense_restriction(&fano).unwrap();
        assert_eq!(r.flat, fano.ground());
    }

    #[test]
    fn sum_of_lines_gives_a_component() {
        let m = Matroid::uniform(2, 3).direct_sum(&Matroid::uniform(2, 3)).unwrap();
        let r = weakly_round_dense_restriction(&m).unwrap();
        assert_eq!(r.flat.len(), 3);
        assert_eq!(r.matroid.full_rank(), 2);
        let single = Matroid::uniform(1, 1);
        assert_eq!(weakly_round_dense_restriction(&single).unwrap().flat, single.ground());
    }

    #[test]
    fn cospanning_minor_of_the_fano_plane() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0];
        let p = (fano.ground() - line).first().unwrap();
        let c = cospan_minor(&fano, Set::single(p), line).unwrap();
        assert_eq!(c.minor.full_rank(), 2);
        assert_eq!(c.contracted.len(), 1);
        let spanning = cospan_minor(&fano, Set::single(p), fano.ground()).unwrap();
        assert!(spanning.contracted.is_empty());
        assert!(cospan_minor(&fano, line, Set::single(p)).is_err());
    }
}
