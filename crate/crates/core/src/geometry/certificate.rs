use super::cut::CutSpec;
use super::pg;
use crate::error::{Error, Result};
use crate::kernel::{embed, matroid_to_text, parse_matroid_block, Matroid, Set};

/// A lifted matroid M̂ together with an independent flat K such that M̂\K is
/// a projective geometry; the projection is M̂/K.
///
/// Elements of `projected` are the elements of E(M̂) − K in increasing order,
/// so they are also the points of the geometry M̂\K.
#[derive(Clone, Debug)]
pub struct ProjectionCertificate {
    pub lifted: Matroid,
    pub k_set: Set,
    pub q: u32,
    pub projected: Matroid,
    pub seed: Option<u64>,
}

impl ProjectionCertificate {
    /// Builds and validates a certificate, deriving `projected` as M̂/K.
    pub fn new(lifted: Matroid, k_set: Set, q: u32, seed: Option<u64>) -> Result<Self> {
        lifted.check_subset(k_set)?;
        let projected = lifted.contract(k_set);
        let cert = ProjectionCertificate { lifted, k_set, q, projected, seed };
        cert.validate_structure()?;
        Ok(cert)
    }

    pub fn k(&self) -> usize {
        self.k_set.len()
    }

    /// r(M̂/K).
    pub fn r(&self) -> usize {
        self.projected.full_rank()
    }

    /// E(M̂) − K in increasing order.
    pub fn geometry_elements(&self) -> Vec<usize> {
        (self.lifted.ground() - self.k_set).to_vec()
    }

    /// M̂\K with elements renumbered like `projected`.
    pub fn geometry(&self) -> Matroid {
        self.lifted.delete(self.k_set)
    }

    fn validate_structure(&self) -> Result<()> {
        let k = self.k();
        if !self.lifted.is_independent(self.k_set) {
            return Err(Error::Certificate(format!("K = {} is dependent in the lifted matroid", self.k_set)));
        }
        if !self.lifted.is_flat(self.k_set) {
            return Err(Error::Certificate(format!(
                "K = {} is not a flat of the lifted matroid (the projection has loops)",
                self.k_set
            )));
        }
        let n = self.lifted.full_rank();
        if n < k + 2 {
            return Err(Error::Certificate(format!("projected rank {} is less than 2", n - k)));
        }
        let target = pg(n, self.q)?;
        let g = self.geometry();
        if g.n() != target.n() || g.full_rank() != n {
            return Err(Error::Certificate(format!("M̂\\K is not isomorphic to PG({}, {})", n - 1, self.q)));
        }
        if !self.extends_geometry(&target) && !super::is_projective_geometry(&g, self.q) {
            return Err(Error::Certificate(format!("M̂\\K is not isomorphic to PG({}, {})", n - 1, self.q)));
        }
        Ok(())
    }

    /// True when M̂ was built by extending exactly the cached geometry, with
    /// K the appended elements.
    fn extends_geometry(&self, target: &Matroid) -> bool {
        let base_n = target.n();
        if self.k_set != Set::full(self.lifted.n()) - Set::full(base_n) {
            return false;
        }
        let mut cur = self.lifted.clone();
        while cur.n() > base_n {
            match cur.extension_base() {
                Some(b) => cur = b,
                None => return false,
            }
        }
        cur.same_instance(target)
    }

    /// Full validation, including that `projected` agrees with M̂/K.
    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        let quotient = self.lifted.contract(self.k_set);
        let ok = quotient.n() == self.projected.n()
            && quotient.full_rank() == self.projected.full_rank()
            && embed(&self.projected, &quotient, Some((0..quotient.n()).map(|e| vec![e]).collect()), None)?
                .is_some();
        if !ok {
            return Err(Error::Certificate("projected matroid differs from M̂/K".into()));
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = matroid_to_text("lifted", &self.lifted);
        out.push_str(&matroid_to_text("projected", &self.projected));
        out.push_str(&format!("q {}\n", self.q));
        let ks: Vec<String> = self.k_set.iter().map(|e| e.to_string()).collect();
        out.push_str(&format!("K {}\n", ks.join(" ")).trim_end().to_string());
        out.push('\n');
        match self.seed {
            Some(s) => out.push_str(&format!("seed {s}\n")),
            None => out.push_str("seed none\n"),
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().collect();
        let (_, lifted, i) = parse_matroid_block(&lines, 0)?;
        let (_, projected, mut i) = parse_matroid_block(&lines, i)?;
        let mut q = None;
        let mut k_set = None;
        let mut seed = None;
        while i < lines.len() {
            let line = lines[i].trim();
            i += 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "q" => q = Some(rest.parse::<u32>().map_err(|_| Error::parse(i, 3, "bad field order"))?),
                "K" => {
                    let mut k = Set::EMPTY;
                    for tok in rest.split_whitespace() {
                        let e: usize = tok.parse().map_err(|_| Error::parse(i, 3, format!("`{tok}` is not an element")))?;
                        if e >= lifted.n() {
                            return Err(Error::parse(i, 3, format!("element {e} outside the lifted matroid")));
                        }
                        k = k.with(e);
                    }
                    k_set = Some(k);
                }
                "seed" => {
                    seed = Some(if rest == "none" {
                        None
                    } else {
                        Some(rest.parse::<u64>().map_err(|_| Error::parse(i, 6, "bad seed"))?)
                    })
                }
                other => return Err(Error::parse(i, 1, format!("unexpected line `{other}`"))),
            }
        }
        let q = q.ok_or_else(|| Error::parse(lines.len(), 1, "missing `q` line"))?;
        let k_set = k_set.ok_or_else(|| Error::parse(lines.len(), 1, "missing `K` line"))?;
        let seed = seed.ok_or_else(|| Error::parse(lines.len(), 1, "missing `seed` line"))?;
        let cert = ProjectionCertificate { lifted, k_set, q, projected, seed };
        cert.validate()?;
        Ok(cert)
    }
}

/// Applies the cuts in order (each relative to the matroid built so far) and
/// certifies the result as a k-element projection of `g`.
pub fn project(g: &Matroid, cuts: &[CutSpec], q: u32) -> Result<ProjectionCertificate> {
    let mut cur = g.clone();
    for spec in cuts {
        let gens = spec.generators(&cur)?;
        cur = cur.extend_unchecked(gens)?;
    }
    let k_set = Set::full(cur.n()) - Set::full(g.n());
    ProjectionCertificate::new(cur, k_set, q, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_certificate() {
        let g = pg(4, 2).unwrap();
        let c = project(&g, &[CutSpec::Free], 2).unwrap();
        assert_eq!((c.k(), c.r(), c.projected.epsilon()), (1, 3, 15));
        assert!(c.projected.same_rank_function(&g.truncation().unwrap()));
    }

    #[test]
    fn principal_line_certificate() {
        let g = pg(3, 2).unwrap();
        let line = g.flats_of_rank(2)[0];
        let c = project(&g, &[CutSpec::Principal(line)], 2).unwrap();
        assert_eq!((c.k(), c.r(), c.projected.epsilon()), (1, 2, 5));
    }

    #[test]
    fn double_free_projection_of_a_plane_is_rejected() {
        let g = pg(3, 2).unwrap();
        let err = project(&g, &[CutSpec::Free, CutSpec::Free], 2).unwrap_err();
        assert!(err.to_string().contains("less than 2"), "{err}");
    }

    #[test]
    fn dependent_or_non_flat_k_is_rejected() {
        let g = pg(3, 2).unwrap();
        let err = project(&g, &[CutSpec::Principal(Set::single(0))], 2).unwrap_err();
        assert!(err.to_string().contains("not a flat"), "{err}");
        let line = g.flats_of_rank(2)[0];
        let err = project(&g, &[CutSpec::Principal(line), CutSpec::Principal(Set::single(7))], 2).unwrap_err();
        assert!(err.to_string().contains("dependent"), "{err}");
    }

    #[test]
    fn text_round_trip() {
        let g = pg(3, 2).unwrap();
        let line = g.flats_of_rank(2)[0];
        let mut c = project(&g, &[CutSpec::Principal(line)], 2).unwrap();
        c.seed = Some(7);
        let text = c.to_text();
        let back = ProjectionCertificate::parse(&text).unwrap();
        assert_eq!(back.k_set, c.k_set);
        assert_eq!(back.seed, Some(7));
        assert!(back.lifted.same_rank_function(&c.lifted));
        assert!(ProjectionCertificate::parse(&text.replace("K 7", "K 0")).is_err());
    }
}
