//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's rank, minor or field code.

#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use matgrow::Matroid;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// A fixture as read straight from its text: a matrix or a basis list.
#[derive(Clone, Debug)]
pub enum Raw {
    Linear { q: u32, rows: Vec<Vec<u8>> },
    Bases { n: usize, bases: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub text: String,
    pub raw: Raw,
}

impl Fixture {
    pub fn n(&self) -> usize {
        match &self.raw {
            Raw::Linear { rows, .. } => rows.first().map_or(0, Vec::len),
            Raw::Bases { n, .. } => *n,
        }
    }

    pub fn matroid(&self) -> Matroid {
        matgrow::kernel::parse_matroid(&self.text).expect("fixture parses").1
    }

    /// Rank of the column set `x`, computed from the raw data.
    pub fn rank(&self, x: u64) -> usize {
        match &self.raw {
            Raw::Linear { q, rows } => {
                let cols: Vec<usize> = (0..self.n()).filter(|&c| x >> c & 1 == 1).collect();
                let m: Vec<Vec<u8>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
                gauss_rank(*q, m)
            }
            Raw::Bases { bases, .. } => bases.iter().map(|b| (b & x).count_ones() as usize).max().unwrap_or(0),
        }
    }

    pub fn rank_table(&self) -> Vec<u8> {
        (0..1u64 << self.n()).map(|x| self.rank(x) as u8).collect()
    }
}

pub fn load_fixtures() -> Vec<Fixture> {
    let mut paths: Vec<PathBuf> = fs::read_dir(fixture_dir())
        .expect("fixture dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).expect("readable fixture");
            let name = p.file_stem().expect("stem").to_string_lossy().into_owned();
            let raw = parse_raw(&text);
            Fixture { name, text, raw }
        })
        .collect()
}

fn parse_raw(text: &str) -> Raw {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let kind = lines[1].strip_prefix("type ").expect("type line");
    match kind {
        "linear" => {
            let f: Vec<&str> = lines[2].split_whitespace().collect();
            let (q, r): (u32, usize) = (f[1].parse().unwrap(), f[3].parse().unwrap());
            let rows = lines[3..3 + r]
                .iter()
                .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
                .collect();
            Raw::Linear { q, rows }
        }
        "explicit" => {
            let n: usize = lines[3].strip_prefix("elements ").unwrap().parse().unwrap();
            assert_eq!(lines[4], "bases");
            let bases = lines[5..]
                .iter()
                .take_while(|l| !l.starts_with("matroid"))
                .map(|l| l.split_whitespace().map(|v| 1u64 << v.parse::<u32>().unwrap()).sum())
                .collect();
            Raw::Bases { n, bases }
        }
        other => panic!("unexpected fixture type {other}"),
    }
}

/// GF(4) as {0, 1, x, x + 1} encoded in two bits, modulo x² + x + 1.
fn gf4_mul(a: u8, b: u8) -> u8 {
    let mut r = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 4 != 0 {
        r ^= 0b111;
    }
    r
}

fn add(q: u32, a: u8, b: u8) -> u8 {
    if q == 4 {
        a ^ b
    } else {
        ((a as u32 + b as u32) % q) as u8
    }
}

fn mul(q: u32, a: u8, b: u8) -> u8 {
    if q == 4 {
        gf4_mul(a, b)
    } else {
        ((a as u32 * b as u32) % q) as u8
    }
}

fn neg(q: u32, a: u8) -> u8 {
    if q == 4 {
        a
    } else {
        ((q - a as u32) % q) as u8
    }
}

fn inv(q: u32, a: u8) -> u8 {
    (1..q as u8).find(|&b| mul(q, a, b) == 1).expect("nonzero has an inverse")
}

/// Row-reduction rank over GF(q), q ∈ {2, 3, 4} (or any prime).
pub fn gauss_rank(q: u32, mut m: Vec<Vec<u8>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let s = inv(q, m[rank][c]);
        for v in m[rank].iter_mut() {
            *v = mul(q, *v, s);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = neg(q, m[r][c]);
                let pivot = m[rank].clone();
                for (x, &y) in m[r].iter_mut().zip(&pivot) {
                    *x = add(q, *x, mul(q, f, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank table of a minor (contract `c`, keep `keep` in increasing order),
/// taken from a host rank table.
fn minor_table(host: &[u8], c: u64, keep: &[usize]) -> Vec<u8> {
    let rc = host[c as usize];
    (0..1u64 << keep.len())
        .map(|x| {
            let mut s = c;
            for (i, &e) in keep.iter().enumerate() {
                if x >> i & 1 == 1 {
                    s |= 1 << e;
                }
            }
            host[s as usize] - rc
        })
        .collect()
}

/// Whether two rank tables on n elements agree under some permutation.
pub fn isomorphic_tables(a: &[u8], b: &[u8], n: usize) -> bool {
    if a.len() != b.len() || a[a.len() - 1] != b[b.len() - 1] {
        return false;
    }
    let mut sa: Vec<u8> = a.to_vec();
    let mut sb: Vec<u8> = b.to_vec();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        (0..1u64 << n).all(|x| {
            let mut y = 0u64;
            for (i, &pi) in p.iter().enumerate() {
                if x >> i & 1 == 1 {
                    y |= 1 << pi;
                }
            }
            a[x as usize] == b[y as usize]
        })
    })
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            p.swap(k, i);
            return true;
        }
        p.swap(k, i);
    }
    false
}

/// Minor test by trying every disjoint (contract, delete) pair.
pub fn naive_has_minor(host: &[u8], n_host: usize, pattern: &[u8], n_pat: usize) -> bool {
    if n_pat > n_host {
        return false;
    }
    // Each element is kept (0), contracted (1) or deleted (2).
    let total = 3usize.pow(n_host as u32);
    for code in 0..total {
        let (mut c, mut keep, mut rest) = (0u64, Vec::new(), code);
        for e in 0..n_host {
            match rest % 3 {
                0 => keep.push(e),
                1 => c |= 1 << e,
                _ => {}
            }
            rest /= 3;
        }
        if keep.len() != n_pat {
            continue;
        }
        let t = minor_table(host, c, &keep);
        if isomorphic_tables(&t, pattern, n_pat) {
            return true;
        }
    }
    false
}

/// Checks the rank axioms directly on a table.
pub fn table_is_matroid(t: &[u8], n: usize) -> bool {
    let full = 1u64 << n;
    for x in 0..full {
        if t[x as usize] as u32 > x.count_ones() {
            return false;
        }
        for e in 0..n {
            let y = x | 1 << e;
            if t[y as usize] < t[x as usize] || t[y as usize] > t[x as usize] + 1 {
                return false;
            }
            for f in e + 1..n {
                let (xe, xf, xef) = (x | 1 << e, x | 1 << f, x | 1 << e | 1 << f);
                if (t[xe as usize] as u32 + t[xf as usize] as u32) < (t[xef as usize] as u32 + t[x as usize] as u32) {
                    return false;
                }
            }
        }
    }
    t[0] == 0
}
