//! Minor-closed classes given by representability over a list of fields and
//! a list of excluded minors.

mod minor;
mod represent;

use std::path::Path;

pub use minor::{has_minor, has_minor_budgeted, verify_witness, MinorWitness};
pub use represent::{find_representation, is_representable, REPRESENT_LIMIT};

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, SUPPORTED_ORDERS};
use crate::geometry::{ag, pg};
use crate::kernel::{parse_matroid, Matroid, Set};

/// Ex(excluded) intersected with the GF(q)-representable matroids for each q in `fields`.
#[derive(Clone, Debug)]
pub struct ClassSpec {
    pub fields: Vec<u32>,
    pub excluded: Vec<(String, Matroid)>,
    /// Node budget per minor or representability search.
    pub budget: u64,
    /// Largest simplification handed to the representability search.
    pub represent_limit: usize,
}

impl ClassSpec {
    pub fn new(fields: Vec<u32>, excluded: Vec<(String, Matroid)>) -> Result<Self> {
        let spec = ClassSpec { fields, excluded, budget: DEFAULT_BUDGET, represent_limit: REPRESENT_LIMIT };
        spec.validate()?;
        Ok(spec)
    }

    /// GF(q)-representable matroids.
    pub fn representable(q: u32) -> Result<Self> {
        ClassSpec::new(vec![q], Vec::new())
    }

    /// Ex(N_1, ..., N_k) for builtin names.
    pub fn excluding(names: &[&str]) -> Result<Self> {
        let ex = names.iter().map(|n| Ok((n.to_string(), builtin(n)?))).collect::<Result<Vec<_>>>()?;
        ClassSpec::new(Vec::new(), ex)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.fields.is_empty() && self.excluded.is_empty() {
            return Err(Error::Precondition("a class needs at least one field or excluded minor".into()));
        }
        for &q in &self.fields {
            FieldSpec::new(q)?;
        }
        for (name, m) in &self.excluded {
            if !m.is_simple() {
                return Err(Error::Precondition(format!("excluded matroid `{name}` is not simple")));
            }
        }
        Ok(())
    }

    /// Parses `fields ...`, `excluded ...` and `budget nodes=<n>` lines.
    /// Excluded entries are builtin names or paths to matroid files,
    /// resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut fields = Vec::new();
        let mut excluded = Vec::new();
        let mut budget = DEFAULT_BUDGET;
        let mut limit = REPRESENT_LIMIT;
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (key, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
            let col = |tok: &str| line.find(tok).unwrap_or(0) + 1;
            match key {
                "fields" => {
                    for tok in rest.split_whitespace() {
                        let q: u32 = tok.parse().map_err(|_| Error::parse(i + 1, col(tok), "bad field order"))?;
                        FieldSpec::new(q).map_err(|e| Error::parse(i + 1, col(tok), e.to_string()))?;
                        fields.push(q);
                    }
                }
                "excluded" => {
                    for tok in rest.split_whitespace() {
                        let m = match builtin(tok) {
                            Ok(m) => m,
                            Err(_) => {
                                let path = base_dir.map_or_else(|| Path::new(tok).to_path_buf(), |d| d.join(tok));
                                let text = std::fs::read_to_string(&path).map_err(|e| {
                                    Error::parse(i + 1, col(tok), format!("`{tok}` is neither builtin nor readable: {e}"))
                                })?;
                                parse_matroid(&text).map(|(_, m)| m)?
                            }
                        };
                        excluded.push((tok.to_string(), m));
                    }
                }
                "budget" | "represent" => {
                    for tok in rest.split_whitespace() {
                        let (k, v) = tok
                            .split_once('=')
                            .ok_or_else(|| Error::parse(i + 1, col(tok), "expected key=value"))?;
                        let v = parse_count(v).ok_or_else(|| Error::parse(i + 1, col(tok), "bad number"))?;
                        match (key, k) {
                            ("budget", "nodes") => budget = v,
                            ("represent", "limit") => limit = v as usize,
                            _ => return Err(Error::parse(i + 1, col(tok), format!("unknown setting `{k}`"))),
                        }
                    }
                }
                other => return Err(Error::parse(i + 1, 1, format!("unknown directive `{other}`"))),
            }
        }
        let spec = ClassSpec { fields, excluded, budget, represent_limit: limit };
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.fields.is_empty() {
            let f: Vec<String> = self.fields.iter().map(|q| q.to_string()).collect();
            out.push_str(&format!("fields {}\n", f.join(" ")));
        }
        if !self.excluded.is_empty() {
            let e: Vec<&str> = self.excluded.iter().map(|(n, _)| n.as_str()).collect();
            out.push_str(&format!("excluded {}\n", e.join(" ")));
        }
        out.push_str(&format!("budget nodes={}\n", self.budget));
        out
    }
}

/// Parses integers like `1000000` or `1e6`.
pub fn parse_count(s: &str) -> Option<u64> {
    if let Ok(v) = s.parse::<u64>() {
        return Some(v);
    }
    let (m, e) = s.split_once(['e', 'E'])?;
    let m: u64 = m.parse().ok()?;
    let e: u32 = e.parse().ok()?;
    m.checked_mul(10u64.checked_pow(e)?)
}

/// Builtin matroids by name: `u<r><n>` or `u(r,n)`, `fano`/`f7`, `nonfano`/`f7-`,
/// `fano*`/`f7*`, `nonfano*`/`f7-*`, `pg(n,q)`, `ag(n,q)`, `tpg(n,q)`, `mk4`.
pub fn builtin(name: &str) -> Result<Matroid> {
    let lower = name.to_ascii_lowercase();
    let args = |s: &str, prefix: &str| -> Option<(usize, u32)> {
        let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
        let (a, b) = inner.split_once(',')?;
        Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
    };
    let unknown = || Error::Precondition(format!("unknown builtin matroid `{name}`"));
    match lower.as_str() {
        "fano" | "f7" => return pg(3, 2),
        "nonfano" | "f7-" => return Ok(non_fano()),
        "fano*" | "f7*" => return dual(&pg(3, 2)?),
        "nonfano*" | "f7-*" => return dual(&non_fano()),
        "mk4" => return Ok(m_k4()),
        _ => {}
    }
    if let Some((n, q)) = args(&lower, "pg") {
        return pg(n, q);
    }
    if let Some((n, q)) = args(&lower, "ag") {
        return ag(n, q);
    }
    if let Some((n, q)) = args(&lower, "tpg") {
        return pg(n, q)?.truncation();
    }
    if let Some((r, n)) = args(&lower, "u") {
        return uniform_checked(r, n as usize);
    }
    if let Some(d) = lower.strip_prefix('u') {
        if d.len() == 2 && d.bytes().all(|b| b.is_ascii_digit()) {
            let r = (d.as_bytes()[0] - b'0') as usize;
            let n = (d.as_bytes()[1] - b'0') as usize;
            return uniform_checked(r, n);
        }
    }
    Err(unknown())
}

fn uniform_checked(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::Precondition(format!("U_{{{r},{n}}} needs r <= n")));
    }
    Ok(Matroid::uniform(r, n))
}

/// The Fano plane with one line relaxed.
pub fn non_fano() -> Matroid {
    let fano = pg(3, 2).expect("Fano plane");
    let relaxed = fano.flats_of_rank(2)[0];
    Matroid::from_rank_fn_unchecked(7, |x| if x == relaxed { 3 } else { fano.rank(x) }).expect("seven elements")
}

/// M(K4): the Fano plane minus a point.
pub fn m_k4() -> Matroid {
    let fano = pg(3, 2).expect("Fano plane");
    fano.delete(Set::single(fano.n() - 1))
}

/// Dual of a small matroid.
pub fn dual(m: &Matroid) -> Result<Matroid> {
    let e = m.ground();
    let r = m.full_rank();
    Matroid::from_rank_fn_unchecked(m.n(), |x| x.len() + m.rank(e - x) - r)
}

/// Whether `m` lies in the class. Budget exhaustion is an error, never `false`.
pub fn class_membership(spec: &ClassSpec, m: &Matroid) -> Result<bool> {
    for &q in &spec.fields {
        let budget = Budget::new("representability search", spec.budget);
        if find_representation(m, q, spec.represent_limit, Some(&budget))?.is_none() {
            return Ok(false);
        }
    }
    for (_, n) in &spec.excluded {
        let budget = Budget::new("minor search", spec.budget);
        if has_minor_budgeted(m, n, &budget)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters of a class used by the growth-rate search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassParams {
    /// Least ℓ with U_{2,ℓ+2} outside the class.
    pub ell: usize,
    /// Largest rank of an excluded matroid (0 when none).
    pub s: usize,
    pub q: u32,
    /// t with T(PG(t, q)) outside the class.
    pub trunc_excluded: Option<usize>,
    /// Result of testing T(PG(t, q)) directly, when small enough to test.
    pub trunc_verified: Option<bool>,
}

/// Longest line tried when looking for ℓ.
pub const MAX_LINE: usize = 24;

pub fn class_params(spec: &ClassSpec) -> Result<ClassParams> {
    spec.validate()?;
    let mut ell = None;
    for j in 2..=MAX_LINE {
        if !class_membership(spec, &Matroid::uniform(2, j))? {
            ell = Some(j - 2);
            break;
        }
    }
    let ell = ell.ok_or(Error::Budget { what: "line length search", limit: MAX_LINE as u64 })?;
    let s = spec.excluded.iter().map(|(_, m)| m.full_rank()).max().unwrap_or(0);
    let mut q = None;
    for &cand in SUPPORTED_ORDERS.iter().rev() {
        if cand as usize > ell.max(1) {
            continue;
        }
        let f = FieldSpec::new(cand)?;
        let sub = spec.fields.iter().all(|&x| f.is_subfield_of(&FieldSpec::new(x).expect("validated")));
        if !sub {
            continue;
        }
        let mut excluded_ok = true;
        for (_, m) in &spec.excluded {
            if find_representation(m, cand, spec.represent_limit, None)?.is_some() {
                excluded_ok = false;
                break;
            }
        }
        if excluded_ok {
            q = Some(cand);
            break;
        }
    }
    let q = q.ok_or_else(|| {
        let f: Vec<String> = spec.fields.iter().map(|x| format!("GF({x})")).collect();
        Error::Precondition(format!("no field GF(q) is a common subfield of {} compatible with the class", f.join(", ")))
    })?;
    let t = if spec.fields.is_empty() {
        Some(s)
    } else {
        spec.fields.iter().map(|&x| x as usize).min()
    };
    let trunc_verified = match t {
        Some(t) if t >= 1 => match pg(t + 1, q).and_then(|g| g.truncation()) {
            Ok(tg) if tg.n() <= 15 => Some(!class_membership(spec, &tg)?),
            _ => None,
        },
        _ => None,
    };
    Ok(ClassParams { ell, s, q, trunc_excluded: t, trunc_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::is_isomorphic;

    #[test]
    fn builtins() {
        assert_eq!(builtin("u24").unwrap().n(), 4);
        assert_eq!(builtin("U(3,5)").unwrap().full_rank(), 3);
        assert_eq!(builtin("pg(3,3)").unwrap().n(), 13);
        assert_eq!(builtin("fano*").unwrap().full_rank(), 4);
        assert!(is_isomorphic(&builtin("nonfano").unwrap(), &builtin("fano").unwrap()).is_none());
        assert_eq!(builtin("mk4").unwrap().n(), 6);
        assert!(builtin("k5").is_err());
    }

    #[test]
    fn membership_examples() {
        let fano = pg(3, 2).unwrap();
        assert!(class_membership(&ClassSpec::representable(2).unwrap(), &fano).unwrap());
        let ex = ClassSpec::excluding(&["u24"]).unwrap();
        assert!(!class_membership(&ex, &Matroid::uniform(2, 5)).unwrap());
        let both = ClassSpec::new(vec![2], vec![("fano".into(), fano.clone())]).unwrap();
        assert!(!class_membership(&both, &fano).unwrap());
    }

    #[test]
    fn params() {
        let p = class_params(&ClassSpec::representable(2).unwrap()).unwrap();
        assert_eq!((p.q, p.ell, p.s, p.trunc_excluded), (2, 2, 0, Some(2)));
        assert_eq!(p.trunc_verified, Some(true));
        let p = class_params(&ClassSpec::representable(4).unwrap()).unwrap();
        assert_eq!((p.q, p.ell), (4, 4));
        assert!(class_params(&ClassSpec::new(vec![2, 3], vec![]).unwrap()).is_err());
        let p = class_params(&ClassSpec::excluding(&["u24"]).unwrap()).unwrap();
        assert_eq!((p.q, p.ell, p.s, p.trunc_excluded), (2, 2, 2, Some(2)));
    }

    #[test]
    fn spec_text() {
        let spec = ClassSpec::parse("fields 2 4\nexcluded u24 fano\nbudget nodes=1e5\n", None).unwrap();
        assert_eq!(spec.fields, vec![2, 4]);
        assert_eq!(spec.excluded.len(), 2);
        assert_eq!(spec.budget, 100_000);
        assert!(ClassSpec::parse("fields 6\n", None).is_err());
        assert!(ClassSpec::parse("", None).is_err());
        assert!(matches!(ClassSpec::parse("fields 2\nbogus\n", None), Err(Error::Parse { line: 2, .. })));
    }
}
