//! Growth-rate profiles, the closed-form growth-rate function and the
//! exhaustive searches that test it at small rank.

mod exhaust;
mod search;

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::projection::d_bound;

pub use exhaust::{h_exhaustive, HValue};
pub use search::{kd_search, SearchReport};

/// Limits for the exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Node budget for one search.
    pub nodes: u64,
    /// Largest k tried by [`kd_search`].
    pub k_max: usize,
    /// Witnesses kept per result.
    pub witnesses: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { nodes: crate::budget::DEFAULT_BUDGET, k_max: 1, witnesses: 4 }
    }
}

/// An exponential growth profile: h(n) = (q^{n+k} − 1)/(q − 1) − q·d.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthProfile {
    pub q: u32,
    pub k: usize,
    pub d: u64,
    /// Threshold past which the formula holds; never computed here.
    pub n0: Option<usize>,
}

impl GrowthProfile {
    pub fn new(q: u32, k: usize, d: u64) -> Result<Self> {
        check_dq(q, k, d)?;
        Ok(GrowthProfile { q, k, d, n0: None })
    }

    /// The offset q·d subtracted in the formula.
    pub fn qd(&self) -> u64 {
        self.q as u64 * self.d
    }

    pub fn formula(&self, n: usize) -> Result<i128> {
        grf_formula(self.q, self.k, self.d, n)
    }

    pub fn to_text(&self) -> String {
        let n0 = self.n0.map_or_else(|| "not computed".to_string(), |n| n.to_string());
        format!("profile q={} k={} d={} qd={} n0={}", self.q, self.k, self.d, self.qd(), n0)
    }
}

/// Whether (k, qd) ∈ D_q, i.e. 0 ≤ d ≤ (q^{2k} − 1)/(q² − 1).
pub fn in_dq(q: u32, k: usize, d: u64) -> bool {
    q >= 2 && d <= d_bound(q, k)
}

fn check_dq(q: u32, k: usize, d: u64) -> Result<()> {
    if in_dq(q, k, d) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("(k, qd) = ({k}, {}) is outside D_{q}", q as u64 * d)))
    }
}

/// (q^{n+k} − 1)/(q − 1) − q·d.
pub fn grf_formula(q: u32, k: usize, d: u64, n: usize) -> Result<i128> {
    check_dq(q, k, d)?;
    let q = q as i128;
    let e = u32::try_from(n + k).map_err(|_| Error::Precondition("exponent too large".into()))?;
    let top = q
        .checked_pow(e)
        .ok_or_else(|| Error::Precondition(format!("q^{e} overflows")))?;
    Ok((top - 1) / (q - 1) - q * d as i128)
}

/// The order ≺ on D_q: (k, d) ≺ (k', d') iff (k, −d) <_lex (k', −d').
pub fn dq_compare(a: (usize, u64), b: (usize, u64)) -> Ordering {
    a.0.cmp(&b.0).then(b.1.cmp(&a.1))
}

/// Text table of h(n) against the profile's formula, one row per n, then a
/// summary line.
pub fn growth_table(profile: Option<&GrowthProfile>, rows: &[(usize, HValue)]) -> Result<String> {
    let mut out = format!("{:>3} {:>8} {:>10} {}\n", "n", "h(n)", "formula(n)", "match");
    let mut exact = true;
    for (n, h) in rows {
        exact &= h.exact;
        let formula = profile.map(|p| p.formula(*n)).transpose()?;
        let f = formula.map_or_else(|| "-".to_string(), |v| v.to_string());
        let verdict = match formula {
            Some(v) if v == h.value as i128 => "match",
            Some(_) => "differ",
            None => "-",
        };
        let h_text = if h.exact { h.value.to_string() } else { format!(">={}", h.value) };
        out.push_str(&format!("{n:>3} {h_text:>8} {f:>10} {verdict}\n"));
    }
    match profile {
        Some(p) => out.push_str(&format!("profile q={} k={} d={} exact={exact}\n", p.q, p.k, p.d)),
        None => out.push_str(&format!("profile none exact={exact}\n")),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(grf_formula(2, 0, 0, 3).unwrap(), 7);
        assert_eq!(grf_formula(2, 1, 1, 3).unwrap(), 13);
        assert_eq!(grf_formula(3, 0, 0, 2).unwrap(), 4);
        assert!(grf_formula(2, 0, 1, 3).is_err());
        assert!(grf_formula(2, 1, 2, 3).is_err());
        assert_eq!(grf_formula(2, 2, 5, 3).unwrap(), 31 - 10);
    }

    #[test]
    fn order_examples() {
        assert_eq!(dq_compare((0, 0), (1, 5)), Ordering::Less);
        assert_eq!(dq_compare((1, 2), (1, 0)), Ordering::Less);
        assert_eq!(dq_compare((1, 1), (1, 1)), Ordering::Equal);
    }

    #[test]
    fn profile_text() {
        let p = GrowthProfile::new(2, 1, 1).unwrap();
        assert_eq!(p.to_text(), "profile q=2 k=1 d=1 qd=2 n0=not computed");
        assert!(GrowthProfile::new(3, 0, 1).is_err());
    }
}
