use std::collections::HashSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{projective_points, FieldSpec, Matrix};
use crate::kernel::{Matroid, Set, MAX_ROWS};

/// Default cap on |si(M)| for the representability search.
pub const REPRESENT_LIMIT: usize = 12;

/// Whether `m` is GF(q)-representable, with the default size limit and no budget.
pub fn is_representable(m: &Matroid, q: u32) -> Result<bool> {
    Ok(find_representation(m, q, REPRESENT_LIMIT, None)?.is_some())
}

/// A GF(q) representation of `m` (one column per element; loops are zero
/// columns and parallel elements share a column), or `None`.
///
/// Works on si(M): a basis is sent to the identity, the first other point is
/// scaled to a 0/1 vector, and the remaining points are placed one at a time
/// among the normalized vectors, checking each placement against every flat
/// of si(M) restricted to the placed prefix.
pub fn find_representation(m: &Matroid, q: u32, limit: usize, budget: Option<&Budget>) -> Result<Option<Matrix>> {
    let field = FieldSpec::new(q)?;
    let (si, map) = m.simplify();
    let r = si.full_rank();
    if r > MAX_ROWS {
        return Err(Error::TooLarge { what: "representation rank", size: r, limit: MAX_ROWS });
    }
    let assemble = |cols: &[Vec<u8>]| -> Matrix {
        let full: Vec<Vec<u8>> =
            (0..m.n()).map(|e| map.point_of(e).map_or_else(|| vec![0; r], |p| cols[p].clone())).collect();
        Matrix::from_columns(r, &full)
    };
    if let Some(cols) = known_representation(&si, &field) {
        return Ok(Some(assemble(&cols)));
    }
    let points = (q as u64).pow(r as u32).saturating_sub(1) / (q as u64 - 1);
    if si.n() as u64 > points {
        return Ok(None);
    }
    if si.n() > limit {
        return Err(Error::TooLarge { what: "representability search", size: si.n(), limit });
    }
    if r == 0 {
        return Ok(Some(assemble(&[])));
    }
    let mut order: Vec<usize> = Vec::new();
    let mut basis = Set::EMPTY;
    for e in 0..si.n() {
        if si.rank(basis.with(e)) > basis.len() {
            basis = basis.with(e);
            order.push(e);
        }
    }
    order.extend((0..si.n()).filter(|e| !basis.contains(*e)));
    let flats: Vec<Set> = si.all_flats().collect();
    let mut checks = Vec::new();
    let mut prefix = Set::EMPTY;
    for &e in &order {
        let distinct: HashSet<Set> = flats.iter().map(|&f| f & prefix).filter(|s| !s.is_empty()).collect();
        let mut list: Vec<(Set, bool)> =
            distinct.into_iter().map(|s| (s, si.rank(s.with(e)) == si.rank(s))).collect();
        list.sort();
        checks.push(list);
        prefix = prefix.with(e);
    }
    let candidates = projective_points(&field, r);
    let mut cols: Vec<Option<Vec<u8>>> = vec![None; si.n()];
    for (i, &e) in order.iter().take(r).enumerate() {
        let mut v = vec![0u8; r];
        v[i] = 1;
        cols[e] = Some(v);
    }
    let mut search = RepSearch { field: &field, r, order: &order, checks: &checks, candidates: &candidates, budget };
    if search.go(r, &mut cols)? {
        let cols: Vec<Vec<u8>> = cols.into_iter().map(|c| c.expect("assigned")).collect();
        Ok(Some(assemble(&cols)))
    } else {
        Ok(None)
    }
}

/// Columns of an existing representation of `si` when it already lives over
/// `field` or over the prime subfield of `field`.
fn known_representation(si: &Matroid, field: &FieldSpec) -> Option<Vec<Vec<u8>>> {
    let rep = si.representation()?;
    let f = rep.field();
    let fits = f == field || (f.degree() == 1 && f.characteristic() == field.characteristic());
    if !fits {
        return None;
    }
    // Row-reduce so the representation has exactly r(si) rows.
    let mut mat = rep.to_matrix();
    let pivots = mat.rref(f);
    let r = pivots.len();
    Some((0..rep.len()).map(|j| (0..r).map(|i| mat.get(i, j)).collect()).collect())
}

struct RepSearch<'a> {
    field: &'a FieldSpec,
    r: usize,
    order: &'a [usize],
    checks: &'a [Vec<(Set, bool)>],
    candidates: &'a [Vec<u8>],
    budget: Option<&'a Budget>,
}

impl RepSearch<'_> {
    fn spans(&self, cols: &[Option<Vec<u8>>], s: Set, v: &[u8]) -> bool {
        let mut vecs: Vec<Vec<u8>> = s.iter().map(|e| cols[e].clone().expect("placed")).collect();
        let before = rank_of(self.field, self.r, &vecs);
        vecs.push(v.to_vec());
        rank_of(self.field, self.r, &vecs) == before
    }

    fn go(&mut self, depth: usize, cols: &mut Vec<Option<Vec<u8>>>) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let e = self.order[depth];
        let first_free = depth == self.r;
        for cand in self.candidates {
            if first_free && cand.iter().any(|&x| x > 1) {
                continue;
            }
            if cols.iter().flatten().any(|c| c == cand) {
                continue;
            }
            if let Some(b) = self.budget {
                b.tick()?;
            }
            let ok = self.checks[depth].iter().all(|&(s, spanned)| self.spans(cols, s, cand) == spanned);
            if !ok {
                continue;
            }
            cols[e] = Some(cand.clone());
            if self.go(depth + 1, cols)? {
                return Ok(true);
            }
            cols[e] = None;
        }
        Ok(false)
    }
}

fn rank_of(field: &FieldSpec, rows: usize, vecs: &[Vec<u8>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    crate::field::mat_rank(field, &Matrix::from_columns(rows, vecs))
}
