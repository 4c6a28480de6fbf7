use crate::error::{Error, Result};
use crate::kernel::{Matroid, Set, MAX_ROWS};

/// Largest domain checked subset by subset.
pub const EXHAUSTIVE_MAP_LIMIT: usize = 16;

fn check_map(phi: &[usize], m: &Matroid, n: &Matroid) -> Result<()> {
    if phi.len() != m.n() {
        return Err(Error::Precondition(format!("map has {} entries for {} elements", phi.len(), m.n())));
    }
    if let Some(&bad) = phi.iter().find(|&&x| x >= n.n()) {
        return Err(Error::OutOfRange { element: bad, size: n.n() });
    }
    Ok(())
}

/// Whether φ(cl_M(X)) ⊆ cl_N(φ(X)) for all X ⊆ E(M).
///
/// Small domains are checked subset by subset. Otherwise the equivalent
/// condition is used that the preimage of every flat of N is a flat of M.
pub fn is_projective_map(phi: &[usize], m: &Matroid, n: &Matroid) -> Result<bool> {
    check_map(phi, m, n)?;
    if m.n() <= EXHAUSTIVE_MAP_LIMIT {
        return Ok(m.ground().subsets().all(|x| {
            let image = x.map(phi);
            m.closure(x).map(phi).is_subset(n.closure(image))
        }));
    }
    if n.full_rank() > MAX_ROWS {
        return Err(Error::TooLarge { what: "projective map codomain rank", size: n.full_rank(), limit: MAX_ROWS });
    }
    Ok(n.all_flats().all(|g| m.is_flat(preimage(phi, g))))
}

fn preimage(phi: &[usize], s: Set) -> Set {
    (0..phi.len()).filter(|&e| s.contains(phi[e])).collect()
}

/// The matroid on E(G) with rank function X ↦ r_M(φ(X)).
pub fn pullback(phi: &[usize], g_size: usize, m: &Matroid) -> Result<Matroid> {
    if phi.len() != g_size || phi.iter().any(|&x| x >= m.n()) {
        return Err(Error::Precondition("map does not send the domain into the matroid".into()));
    }
    Ok(m.pullback(phi))
}

/// Whether N is a quotient (projection) of M on the same ground set:
/// cl_M(X) ⊆ cl_N(X) for all X, equivalently every flat of N is a flat of M.
pub fn is_quotient(n: &Matroid, m: &Matroid) -> Result<bool> {
    if n.n() != m.n() {
        return Err(Error::Precondition(format!("ground sets differ: {} and {} elements", n.n(), m.n())));
    }
    Ok(n.all_flats().all(|f| m.is_flat(f)))
}

/// Whether every triangle T of G has |φ(T)| = 1 or φ(T) a triangle of M.
///
/// Requires G simple with E(G) the union of at most two flats on which G is
/// a full projective geometry, φ onto E(M), and M simple.
pub fn triangle_compatible(phi: &[usize], g: &Matroid, m: &Matroid) -> Result<bool> {
    check_map(phi, g, m)?;
    if !g.is_simple() {
        return Err(Error::Precondition("G is not simple".into()));
    }
    if !m.is_simple() {
        return Err(Error::Precondition("M is not simple".into()));
    }
    if phi.iter().collect::<Set>() != m.ground() {
        return Err(Error::Precondition("the map is not onto E(M)".into()));
    }
    if !union_of_two_geometries(g) {
        return Err(Error::Precondition("E(G) is not the union of two projective flats".into()));
    }
    for &line in g.flats_of_rank(2) {
        let pts = line.to_vec();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for l in j + 1..pts.len() {
                    let image: Set = [phi[pts[i]], phi[pts[j]], phi[pts[l]]].iter().collect();
                    let ok = image.len() == 1 || (image.len() == 3 && m.rank(image) == 2);
                    if !ok {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// G|F is a projective geometry: every line has the same size q + 1 ≥ 3
/// and |F| = (q^r − 1)/(q − 1), or F has rank at most 1.
fn is_full_geometry(g: &Matroid, f: Set) -> bool {
    let r = g.rank(f);
    if r <= 1 {
        return true;
    }
    let sub = g.restrict(f);
    let lines = sub.flats_of_rank(2);
    let size = lines[0].len();
    if size < 3 || lines.iter().any(|l| l.len() != size) {
        return false;
    }
    let q = (size - 1) as u64;
    crate::geometry::pg_size(r, q as u32) == f.len() as u64
}

fn union_of_two_geometries(g: &Matroid) -> bool {
    if is_full_geometry(g, g.ground()) {
        return true;
    }
    let full: Vec<Set> = g.all_flats().filter(|&f| is_full_geometry(g, f)).collect();
    full.iter().any(|&a| full.iter().any(|&b| a | b == g.ground()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{pg, project, CutSpec};

    #[test]
    fn identity_and_collapse() {
        let fano = pg(3, 2).unwrap();
        let id: Vec<usize> = (0..7).collect();
        assert!(is_projective_map(&id, &fano, &fano).unwrap());
        assert!(triangle_compatible(&id, &fano, &fano).unwrap());
        let u33 = Matroid::uniform(3, 3);
        let tri = fano.restrict(fano.flats_of_rank(2)[0]);
        let phi3: Vec<usize> = (0..3).collect();
        assert!(!is_projective_map(&phi3, &tri, &u33).unwrap());
    }

    #[test]
    fn truncation_quotient_map() {
        let g = pg(4, 2).unwrap();
        let c = project(&g, &[CutSpec::Free], 2).unwrap();
        let id: Vec<usize> = (0..15).collect();
        assert!(triangle_compatible(&id, &g, &c.projected).unwrap());
        assert!(is_projective_map(&id, &g, &c.projected).unwrap());
        assert!(is_quotient(&c.projected, &g).unwrap());
    }

    #[test]
    fn quotients() {
        let u34 = Matroid::uniform(3, 4);
        let u24 = Matroid::uniform(2, 4);
        assert!(is_quotient(&u24, &u34).unwrap());
        assert!(!is_quotient(&u34, &u24).unwrap());
        assert!(is_quotient(&u34, &u34).unwrap());
        assert!(is_quotient(&u34, &Matroid::uniform(2, 3)).is_err());
    }

    #[test]
    fn partial_collapse_is_not_compatible() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0].to_vec();
        // Identify two points of a line, keep everything else apart.
        let mut phi: Vec<usize> = (0..7).collect();
        phi[line[1]] = line[0];
        let kept: Vec<usize> = (0..7).filter(|&e| e != line[1]).collect();
        let phi: Vec<usize> = phi.iter().map(|x| kept.iter().position(|k| k == x).unwrap()).collect();
        let m = fano.delete(Set::single(line[1]));
        assert!(!triangle_compatible(&phi, &fano, &m).unwrap());
    }
}
