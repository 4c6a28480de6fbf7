//! Arithmetic in GF(q) for the small prime powers used throughout the crate,
//! dense matrices over those fields, and projective point enumeration.
//!
//! Field elements are small integer indices. For a prime field the index is
//! the residue itself; for GF(p^e) the index encodes the polynomial
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` as the base-p number with digit
//! `c_j` in position `j`. Multiplication reduces modulo a fixed irreducible
//! polynomial so that representations are reproducible.

use std::fmt;

use crate::error::{Error, Result};

/// Field orders with precomputed tables.
pub const SUPPORTED_ORDERS: [u32; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

/// Low-order coefficients of the monic irreducible polynomial for each
/// extension field, constant term first.
fn reduction_poly(q: u32) -> Option<&'static [u8]> {
    match q {
        4 => Some(&[1, 1]),       // x^2 + x + 1
        8 => Some(&[1, 1, 0]),    // x^3 + x + 1
        9 => Some(&[1, 0]),       // x^2 + 1
        16 => Some(&[1, 1, 0, 0]), // x^4 + x + 1
        _ => None,
    }
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// GF(q) with full addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: u32,
    p: u32,
    e: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if !SUPPORTED_ORDERS.contains(&q) {
            return Err(Error::UnsupportedOrder(q));
        }
        let qs = q as usize;
        let digits = |mut x: usize| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        };
        let undigits = |ds: &[u32]| -> usize {
            ds.iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + d as usize)
        };

        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..qs {
            for b in 0..qs {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qs + b] = undigits(&sum) as u8;
                mul[a * qs + b] = match reduction_poly(q) {
                    None => ((a * b) % qs) as u8,
                    Some(low) => {
                        let mut prod = vec![0u32; 2 * e as usize];
                        for (i, x) in da.iter().enumerate() {
                            for (j, y) in db.iter().enumerate() {
                                prod[i + j] = (prod[i + j] + x * y) % p;
                            }
                        }
                        // x^e = -(low), applied from the top degree down.
                        for deg in (e as usize..prod.len()).rev() {
                            let c = prod[deg];
                            if c == 0 {
                                continue;
                            }
                            prod[deg] = 0;
                            for (j, &l) in low.iter().enumerate() {
                                let t = deg - e as usize + j;
                                prod[t] = (prod[t] + (p - (c * l as u32) % p) % p) % p;
                            }
                        }
                        undigits(&prod[..e as usize]) as u8
                    }
                };
            }
        }
        let neg = (0..qs)
            .map(|a| (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8)
            .collect();
        let inv = (0..qs)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap_or(0) as u8
                }
            })
            .collect::<Vec<_>>();
        if (1..qs).any(|a| inv[a] == 0) {
            // Only reachable with a reducible polynomial.
            return Err(Error::Invariant(format!("GF({q}) table has a zero divisor")));
        }
        Ok(FieldSpec { q, p, e, add, mul, neg, inv })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `inv(0)` is 0 by convention.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Scales `v` so that its first nonzero entry is 1. Returns false for the zero vector.
    pub fn normalize(&self, v: &mut [u8]) -> bool {
        let Some(lead) = v.iter().copied().find(|&x| x != 0) else {
            return false;
        };
        let s = self.inv(lead);
        for x in v.iter_mut() {
            *x = self.mul(*x, s);
        }
        true
    }

    /// True when GF(self) embeds in GF(other).
    pub fn is_subfield_of(&self, other: &FieldSpec) -> bool {
        self.p == other.p && other.e % self.e == 0
    }
}

/// Dense row-major matrix of field-element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<u8>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u8) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn check_entries(&self, field: &FieldSpec) -> Result<()> {
        match self.data.iter().position(|&x| x as u32 >= field.order()) {
            None => Ok(()),
            Some(pos) => Err(Error::Precondition(format!(
                "entry {} at ({}, {}) is not an element of GF({})",
                self.data[pos],
                pos / self.cols.max(1),
                pos % self.cols.max(1),
                field.order()
            ))),
        }
    }

    /// Reduced row echelon form over `field`; returns the pivot columns.
    pub fn rref(&mut self, field: &FieldSpec) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if p != row {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, row * self.cols + j);
                }
            }
            let s = field.inv(self.get(row, col));
            for j in 0..self.cols {
                let v = field.mul(self.get(row, j), s);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                let f = self.get(i, col);
                if i != row && f != 0 {
                    for j in 0..self.cols {
                        let v = field.sub(self.get(i, j), field.mul(f, self.get(row, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Number of distinct points among the nonzero columns (the column
    /// matroid's ε), computed without building a matroid.
    pub fn point_count(&self, field: &FieldSpec) -> usize {
        let mut seen = std::collections::HashSet::new();
        for mut c in self.columns() {
            if field.normalize(&mut c) {
                seen.insert(c);
            }
        }
        seen.len()
    }

    /// Text form: `q <order> rows <r> cols <c>` then one line per row.
    pub fn to_text(&self, field: &FieldSpec) -> String {
        let mut out = format!("q {} rows {} cols {}\n", field.order(), self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text form starting at `lines[start]`; returns the field,
    /// the matrix and the index of the first unconsumed line.
    pub fn parse_lines(lines: &[&str], start: usize) -> Result<(FieldSpec, Matrix, usize)> {
        let header = lines.get(start).ok_or_else(|| Error::parse(start + 1, 1, "missing matrix header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "q" || toks[2] != "rows" || toks[4] != "cols" {
            return Err(Error::parse(start + 1, 1, "expected `q <order> rows <r> cols <c>`"));
        }
        let num = |i: usize| -> Result<usize> {
            toks[i].parse().map_err(|_| {
                let col = header.find(toks[i]).unwrap_or(0) + 1;
                Error::parse(start + 1, col, format!("`{}` is not a number", toks[i]))
            })
        };
        let (q, rows, cols) = (num(1)? as u32, num(3)?, num(5)?);
        let field = FieldSpec::new(q)?;
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            let ln = start + 1 + i;
            let line = lines.get(ln).ok_or_else(|| Error::parse(ln + 1, 1, "missing matrix row"))?;
            let mut count = 0;
            for (j, tok) in line.split_whitespace().enumerate() {
                let col = line.find(tok).unwrap_or(0) + 1;
                let x: u32 = tok
                    .parse()
                    .map_err(|_| Error::parse(ln + 1, col, format!("`{tok}` is not a field element")))?;
                if x >= q || j >= cols {
                    return Err(Error::parse(ln + 1, col, format!("entry `{tok}` out of range")));
                }
                m.set(i, j, x as u8);
                count += 1;
            }
            if count != cols {
                return Err(Error::parse(ln + 1, 1, format!("expected {cols} entries, found {count}")));
            }
        }
        Ok((field, m, start + 1 + rows))
    }

    pub fn parse(text: &str) -> Result<(FieldSpec, Matrix)> {
        let lines: Vec<&str> = text.lines().collect();
        let (f, m, _) = Self::parse_lines(&lines, 0)?;
        Ok((f, m))
    }
}

/// Rank of `a` over `field` by row reduction.
pub fn mat_rank(field: &FieldSpec, a: &Matrix) -> usize {
    a.clone().rref(field).len()
}

/// One normalized representative (first nonzero coordinate 1) of every
/// 1-dimensional subspace of GF(q)^n. Vectors are grouped by the position of
/// the leading 1 and ordered lexicographically within a group.
pub fn projective_points(field: &FieldSpec, n: usize) -> Vec<Vec<u8>> {
    let q = field.order() as usize;
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = q.pow(tail as u32);
        for idx in 0..count {
            let mut v = vec![0u8; n];
            v[lead] = 1;
            let mut x = idx;
            for pos in (lead + 1..n).rev() {
                v[pos] = (x % q) as u8;
                x /= q;
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_characteristic() {
        let f = FieldSpec::new(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.characteristic(), 2);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = FieldSpec::new(4).unwrap();
        // x is index 2, x + 1 is index 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn gf8_and_gf16_reduction() {
        let f8 = FieldSpec::new(8).unwrap();
        // x * x^2 = x^3 = x + 1
        assert_eq!(f8.mul(2, 4), 3);
        let f16 = FieldSpec::new(16).unwrap();
        // x * x^3 = x^4 = x + 1
        assert_eq!(f16.mul(2, 8), 3);
        let f9 = FieldSpec::new(9).unwrap();
        // x * x = -1 = 2
        assert_eq!(f9.mul(3, 3), 2);
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(matches!(FieldSpec::new(6), Err(Error::NotPrimePower(6))));
        assert!(FieldSpec::new(6).unwrap_err().to_string().contains("not a prime power"));
        assert!(matches!(FieldSpec::new(25), Err(Error::UnsupportedOrder(25))));
        assert!(matches!(FieldSpec::new(1), Err(Error::NotPrimePower(1))));
    }

    #[test]
    fn axioms_hold_exhaustively() {
        for &q in &SUPPORTED_ORDERS {
            let f = FieldSpec::new(q).unwrap();
            let q = q as u8;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        let f = FieldSpec::new(2).unwrap();
        assert_eq!(mat_rank(&f, &Matrix::identity(3)), 3);
        assert_eq!(mat_rank(&f, &Matrix::zeros(3, 4)), 0);
        let pts = projective_points(&f, 3);
        assert_eq!(mat_rank(&f, &Matrix::from_columns(3, &pts)), 3);
    }

    #[test]
    fn point_counts() {
        for &q in &SUPPORTED_ORDERS {
            let f = FieldSpec::new(q).unwrap();
            for n in 1..=6usize {
                let expect = (q.pow(n as u32) as usize - 1) / (q as usize - 1);
                if expect > 200_000 {
                    continue;
                }
                let pts = projective_points(&f, n);
                assert_eq!(pts.len(), expect, "q={q} n={n}");
                for p in &pts {
                    assert_eq!(p.iter().find(|&&x| x != 0), Some(&1));
                }
            }
        }
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(projective_points(&f3, 2).len(), 4);
        assert_eq!(projective_points(&FieldSpec::new(2).unwrap(), 1), vec![vec![1]]);
    }

    #[test]
    fn matrix_text_round_trip_and_errors() {
        let f = FieldSpec::new(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 0, 2], vec![0, 1, 1]]);
        let text = m.to_text(&f);
        assert!(text.starts_with("q 3 rows 2 cols 3\n"));
        let (g, back) = Matrix::parse(&text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(back, m);

        let err = Matrix::parse("q 3 rows 1 cols 2\n1 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, col: 3, .. }), "{err:?}");
        assert!(Matrix::parse("q 6 rows 1 cols 1\n1\n").is_err());
    }
}
