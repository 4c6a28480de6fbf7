//! Modular flats and the generalized parallel connection (modular sum).

use crate::error::{Error, Result};
use crate::geometry::pg;
use crate::kernel::{embed, is_isomorphic, matroid_to_text, parse_matroid_block, Matroid, Set};

/// Whether the flat `f` forms a modular pair with every flat of `m`.
pub fn is_modular_flat(m: &Matroid, f: Set) -> Result<bool> {
    m.check_subset(f)?;
    if !m.is_flat(f) {
        return Err(Error::Precondition(format!("{f} is not a flat")));
    }
    Ok(m.all_flats().all(|g| m.is_modular_pair(f, g)))
}

/// Whether `cod` restricted to the image of `map` is `dom` under that map.
pub fn agrees_under(dom: &Matroid, cod: &Matroid, map: &[usize]) -> Result<bool> {
    if map.len() != dom.n() {
        return Err(Error::Precondition("map length differs from the ground set".into()));
    }
    if let Some(&bad) = map.iter().find(|&&e| e >= cod.n()) {
        return Err(Error::OutOfRange { element: bad, size: cod.n() });
    }
    let cands = map.iter().map(|&e| vec![e]).collect();
    Ok(embed(dom, cod, Some(cands), None)?.is_some())
}

/// Two matroids glued along `shared`: pairs (left element, right element).
#[derive(Clone, Debug)]
pub struct SumSpec {
    pub left: Matroid,
    pub right: Matroid,
    pub shared: Vec<(usize, usize)>,
}

impl SumSpec {
    pub fn new(left: Matroid, right: Matroid, shared: Vec<(usize, usize)>) -> Result<Self> {
        let spec = SumSpec { left, right, shared };
        spec.validate()?;
        Ok(spec)
    }

    pub fn shared_left(&self) -> Set {
        self.shared.iter().map(|&(l, _)| l).collect()
    }

    pub fn shared_right(&self) -> Set {
        self.shared.iter().map(|&(_, r)| r).collect()
    }

    /// Output label of each right element: shared elements take their left
    /// label, the others follow the left elements in order.
    pub fn right_map(&self) -> Vec<usize> {
        let mut next = self.left.n();
        (0..self.right.n())
            .map(|j| match self.shared.iter().find(|&&(_, r)| r == j) {
                Some(&(l, _)) => l,
                None => {
                    next += 1;
                    next - 1
                }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let (tl, tr) = (self.shared_left(), self.shared_right());
        if tl.len() != self.shared.len() || tr.len() != self.shared.len() {
            return Err(Error::Precondition("shared pairs repeat an element".into()));
        }
        self.left.check_subset(tl)?;
        self.right.check_subset(tr)?;
        if !self.left.is_flat(tl) {
            return Err(Error::Precondition(format!("shared set {tl} is not a flat of the left matroid")));
        }
        if !is_modular_flat(&self.left, tl)? {
            return Err(Error::Precondition(format!("shared set {tl} is not modular in the left matroid")));
        }
        let order: Vec<usize> = tr.to_vec();
        let left_of = |r: usize| self.shared.iter().find(|&&(_, x)| x == r).expect("shared").0;
        let left_pos = tl.to_vec();
        let map: Vec<usize> = order.iter().map(|&r| left_pos.iter().position(|&l| l == left_of(r)).unwrap()).collect();
        let rl = self.left.restrict(tl);
        let rr = self.right.restrict(tr);
        if rl.full_rank() != rr.full_rank() || !agrees_under(&rr, &rl, &map)? {
            return Err(Error::Precondition("left and right restrictions to the shared set differ".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = matroid_to_text("left", &self.left);
        out.push_str(&matroid_to_text("right", &self.right));
        let pairs: Vec<String> = self.shared.iter().map(|(l, r)| format!("{l}:{r}")).collect();
        out.push_str(&format!("shared {}\n", pairs.join(" ")).replace("shared \n", "shared\n"));
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let (_, left, i) = parse_matroid_block(&lines, 0)?;
        let (_, right, i) = parse_matroid_block(&lines, i)?;
        let i = crate::kernel::skip_blank(&lines, i);
        let line = lines.get(i).ok_or_else(|| Error::parse(i + 1, 1, "missing `shared` line"))?;
        let rest = line
            .trim()
            .strip_prefix("shared")
            .ok_or_else(|| Error::parse(i + 1, 1, "expected `shared`"))?;
        let mut shared = Vec::new();
        for tok in rest.split_whitespace() {
            let col = line.find(tok).unwrap_or(0) + 1;
            let (l, r) = tok.split_once(':').ok_or_else(|| Error::parse(i + 1, col, "expected left:right"))?;
            let l = l.parse().map_err(|_| Error::parse(i + 1, col, "bad element"))?;
            let r = r.parse().map_err(|_| Error::parse(i + 1, col, "bad element"))?;
            shared.push((l, r));
        }
        SumSpec::new(left, right, shared)
    }
}

/// The modular sum: the unique matroid on E(left) ∪ E(right) with both as
/// restrictions. The closure of X is the least superset closed in both
/// sides, and a flat F has rank r_L(F ∩ E_L) + r_R(F ∩ E_R) − r(F ∩ T).
pub fn modular_sum(spec: &SumSpec) -> Result<Matroid> {
    spec.validate()?;
    let map = spec.right_map();
    let tl = spec.shared_left();
    let m = spec.left.modular_sum_unchecked(&spec.right, map.clone(), tl)?;
    let expected = spec.left.full_rank() + spec.right.full_rank() - spec.left.rank(tl);
    if m.full_rank() != expected {
        return Err(Error::Invariant(format!("sum has rank {}, expected {expected}", m.full_rank())));
    }
    let id: Vec<usize> = (0..spec.left.n()).collect();
    if !agrees_under(&spec.left, &m, &id)? || !agrees_under(&spec.right, &m, &map)? {
        return Err(Error::Invariant("a summand is not a restriction of the sum".into()));
    }
    Ok(m)
}

/// G ⊕_m M for G ≅ PG(n − 1, q), glued along F where M|F is a spanning
/// PG(r(M) − 1, q). The elements of G come first, then those of E(M) − F.
pub fn geometry_extend(m: &Matroid, f: Set, n: usize, q: u32) -> Result<Matroid> {
    m.check_subset(f)?;
    let r = m.full_rank();
    if n < r {
        return Err(Error::Precondition(format!("dimension {n} is below the rank {r}")));
    }
    if m.rank(f) != r {
        return Err(Error::Precondition(format!("{f} does not span")));
    }
    let g = pg(n, q)?;
    let target = *g
        .flats_of_rank(r)
        .first()
        .ok_or_else(|| Error::Precondition(format!("no rank-{r} flat in PG({}, {q})", n - 1)))?;
    let phi = is_isomorphic(&m.restrict(f), &g.restrict(target))
        .ok_or_else(|| Error::Precondition(format!("the restriction to {f} is not PG({}, {q})", r - 1)))?;
    let fe = f.to_vec();
    let te = target.to_vec();
    let shared: Vec<(usize, usize)> = phi.iter().enumerate().map(|(i, &j)| (te[j], fe[i])).collect();
    modular_sum(&SumSpec::new(g, m.clone(), shared)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{project, CutSpec};

    #[test]
    fn modular_flats() {
        let fano = pg(3, 2).unwrap();
        assert!(is_modular_flat(&fano, fano.flats_of_rank(2)[0]).unwrap());
        assert!(is_modular_flat(&fano, fano.ground()).unwrap());
        let u34 = Matroid::uniform(3, 4);
        assert!(!is_modular_flat(&u34, Set(0b0011)).unwrap());
        assert!(is_modular_flat(&u34, Set(0b0111)).is_err());
    }

    #[test]
    fn parallel_connection_of_two_fanos() {
        let fano = pg(3, 2).unwrap();
        let m = modular_sum(&SumSpec::new(fano.clone(), fano.clone(), vec![(0, 0)]).unwrap()).unwrap();
        assert_eq!((m.n(), m.full_rank()), (13, 5));
    }

    #[test]
    fn two_fanos_along_a_line() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0].to_vec();
        let shared = line.iter().map(|&e| (e, e)).collect();
        let m = modular_sum(&SumSpec::new(fano.clone(), fano.clone(), shared).unwrap()).unwrap();
        assert_eq!((m.n(), m.full_rank()), (11, 4));
    }

    #[test]
    fn right_inside_left() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0];
        let right = fano.restrict(line);
        let shared = line.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let m = modular_sum(&SumSpec::new(fano.clone(), right, shared).unwrap()).unwrap();
        assert!(m.same_rank_function(&fano));
    }

    #[test]
    fn mismatched_shared_sets_are_rejected() {
        let u34 = Matroid::uniform(3, 4);
        assert!(SumSpec::new(u34.clone(), u34.clone(), vec![(0, 0), (1, 1)]).is_err());
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0].to_vec();
        let u23 = Matroid::uniform(2, 3);
        let bad = vec![(line[0], 0), (line[1], 1)];
        assert!(SumSpec::new(fano, u23, bad).is_err());
    }

    #[test]
    fn geometry_extensions() {
        let fano = pg(3, 2).unwrap();
        let m = geometry_extend(&fano, fano.ground(), 4, 2).unwrap();
        assert_eq!((m.n(), m.full_rank()), (15, 4));
        assert!(is_isomorphic(&m, &pg(4, 2).unwrap()).is_some());
        let c = project(&fano, &[CutSpec::Principal(fano.flats_of_rank(2)[0])], 2).unwrap();
        let m = geometry_extend(&c.lifted, Set::full(7), 4, 2).unwrap();
        assert_eq!((m.n(), m.full_rank()), (16, 4));
        assert!(geometry_extend(&fano, fano.ground(), 2, 2).is_err());
    }

    #[test]
    fn text_round_trip() {
        let fano = pg(3, 2).unwrap();
        let line = fano.flats_of_rank(2)[0].to_vec();
        let shared: Vec<(usize, usize)> = line.iter().map(|&e| (e, e)).collect();
        let spec = SumSpec::new(fano.clone(), fano, shared.clone()).unwrap();
        let back = SumSpec::parse(&spec.to_text()).unwrap();
        assert_eq!(back.shared, shared);
    }
}
