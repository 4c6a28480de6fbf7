use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU8, Ordering};
use std::sync::{Arc, OnceLock};

use super::set::Set;
use crate::error::{Error, Result};
use crate::field::{mat_rank, FieldSpec, Matrix};

/// Largest ground set any [`Matroid`] may have.
pub const MAX_GROUND: usize = 64;
/// Derived matroids at or below this size memoize their ranks in a lazily filled table.
pub const TABLE_LIMIT: usize = 20;
/// Largest ground set for an explicit (rank-table) backend.
pub const EXPLICIT_LIMIT: usize = 24;
/// Largest number of rows in a linear representation.
pub const MAX_ROWS: usize = 8;

fn memo_for(n: usize) -> Option<Box<[AtomicU8]>> {
    (n <= TABLE_LIMIT).then(|| (0..1usize << n).map(|_| AtomicU8::new(0)).collect())
}

/// Column vectors over a fixed field.
#[derive(Clone, Debug)]
pub struct LinearRep {
    field: FieldSpec,
    rows: usize,
    cols: Vec<[u8; MAX_ROWS]>,
}

impl LinearRep {
    pub fn new(field: &FieldSpec, matrix: &Matrix) -> Result<Self> {
        matrix.check_entries(field)?;
        if matrix.rows() > MAX_ROWS {
            return Err(Error::TooLarge { what: "representation rows", size: matrix.rows(), limit: MAX_ROWS });
        }
        let cols = (0..matrix.cols())
            .map(|j| {
                let mut v = [0u8; MAX_ROWS];
                for (i, x) in v.iter_mut().enumerate().take(matrix.rows()) {
                    *x = matrix.get(i, j);
                }
                v
            })
            .collect();
        Ok(LinearRep { field: field.clone(), rows: matrix.rows(), cols })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        self.cols[j][..self.rows].to_vec()
    }

    pub fn to_matrix(&self) -> Matrix {
        let cols: Vec<Vec<u8>> = (0..self.cols.len()).map(|j| self.column(j)).collect();
        Matrix::from_columns(self.rows, &cols)
    }

    /// Keeps the columns listed in `keep`, in order.
    pub fn select(&self, keep: &[usize]) -> LinearRep {
        LinearRep { field: self.field.clone(), rows: self.rows, cols: keep.iter().map(|&j| self.cols[j]).collect() }
    }

    fn echelon(&self, s: Set) -> Echelon {
        let mut ech = Echelon::default();
        for e in s {
            ech.insert(&self.field, self.rows, self.cols[e]);
        }
        ech
    }

    pub fn rank_of(&self, s: Set) -> usize {
        self.echelon(s).basis.len()
    }

    fn closure(&self, s: Set) -> Set {
        let ech = self.echelon(s);
        (0..self.cols.len())
            .filter(|&e| s.contains(e) || ech.spans(&self.field, self.rows, self.cols[e]))
            .collect()
    }
}

/// Row-echelon basis with one pivot per vector; insertion order matters for reduction.
#[derive(Default)]
pub(crate) struct Echelon {
    basis: Vec<([u8; MAX_ROWS], usize)>,
}

impl Echelon {
    fn reduce(&self, f: &FieldSpec, rows: usize, mut v: [u8; MAX_ROWS]) -> [u8; MAX_ROWS] {
        for (b, piv) in &self.basis {
            let c = v[*piv];
            if c != 0 {
                for i in 0..rows {
                    v[i] = f.sub(v[i], f.mul(c, b[i]));
                }
            }
        }
        v
    }

    pub(crate) fn insert(&mut self, f: &FieldSpec, rows: usize, v: [u8; MAX_ROWS]) -> bool {
        let mut v = self.reduce(f, rows, v);
        let Some(piv) = (0..rows).find(|&i| v[i] != 0) else {
            return false;
        };
        let s = f.inv(v[piv]);
        for x in v.iter_mut().take(rows) {
            *x = f.mul(*x, s);
        }
        self.basis.push((v, piv));
        true
    }

    pub(crate) fn spans(&self, f: &FieldSpec, rows: usize, v: [u8; MAX_ROWS]) -> bool {
        let v = self.reduce(f, rows, v);
        v[..rows].iter().all(|&x| x == 0)
    }
}

#[derive(Clone)]
pub(crate) enum Oracle {
    Table(Box<[u8]>),
    Linear(Arc<LinearRep>),
    /// Rank is the largest intersection with a member of the family.
    Bases(Vec<Set>),
    /// Single-element extension; the new element is `base.n()`. It lies in the
    /// closure of `X` iff `cl(X)` contains one of the minimal cut flats `gens`.
    Extension { base: Matroid, gens: Vec<Set> },
    /// `base / contract` restricted to `map` (new element `i` is `map[i]`).
    Minor { base: Matroid, contract: Set, map: Vec<usize>, offset: usize },
    Truncation { base: Matroid },
    /// Generalized parallel connection along a modular flat of `left`.
    /// Left elements keep their labels; right element `j` becomes `right_map[j]`.
    ModularSum { left: Matroid, right: Matroid, right_map: Vec<usize>, shared: Set },
}

struct Inner {
    n: usize,
    rank: usize,
    oracle: Oracle,
    /// Materialized ranks for derived oracles.
    table: Option<Box<[u8]>>,
    /// Lazily filled ranks, stored as r + 1 (0 means not yet computed).
    memo: Option<Box<[AtomicU8]>>,
    repr: Option<Arc<LinearRep>>,
    flats: OnceLock<Vec<Vec<Set>>>,
}

/// A finite matroid on `{0, .., n-1}` given by its rank function.
///
/// Cloning is cheap; all derived data (flats) is cached and shared.
#[derive(Clone)]
pub struct Matroid(Arc<Inner>);

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, rank={})", self.n(), self.full_rank())
    }
}

impl Matroid {
    fn build(n: usize, rank: usize, oracle: Oracle, repr: Option<Arc<LinearRep>>) -> Matroid {
        Matroid(Arc::new(Inner { n, rank, oracle, table: None, memo: None, repr, flats: OnceLock::new() }))
    }

    /// Wraps a derived oracle, materializing the rank table for small ground sets.
    pub(crate) fn derived(n: usize, oracle: Oracle, repr: Option<Arc<LinearRep>>) -> Matroid {
        let mut m = Matroid::build(n, 0, oracle, repr);
        let rank = m.oracle_rank(Set::full(n));
        let inner = Arc::get_mut(&mut m.0).expect("fresh Arc");
        inner.rank = rank;
        inner.memo = memo_for(n);
        m
    }

    pub(crate) fn table(&self) -> Option<&[u8]> {
        match &self.0.oracle {
            Oracle::Table(t) => Some(t),
            _ => self.0.table.as_deref(),
        }
    }

    /// The matroid this one extends by its last element, if built that way.
    pub fn extension_base(&self) -> Option<Matroid> {
        match &self.0.oracle {
            Oracle::Extension { base, .. } => Some(base.clone()),
            _ => None,
        }
    }

    /// Whether both handles share the same underlying instance.
    pub fn same_instance(&self, other: &Matroid) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub(crate) fn oracle(&self) -> &Oracle {
        &self.0.oracle
    }

    /// Builds a table-backed matroid from a rank function without checking the axioms.
    pub fn from_rank_fn_unchecked(n: usize, f: impl Fn(Set) -> usize) -> Result<Matroid> {
        if n > EXPLICIT_LIMIT {
            return Err(Error::TooLarge { what: "explicit matroid", size: n, limit: EXPLICIT_LIMIT });
        }
        let table: Box<[u8]> = (0..1u64 << n).map(|x| f(Set(x)) as u8).collect();
        let rank = table[(1usize << n) - 1] as usize;
        Ok(Matroid::build(n, rank, Oracle::Table(table), None))
    }

    /// Builds a matroid from a rank function and verifies the rank axioms.
    pub fn from_rank_fn(n: usize, f: impl Fn(Set) -> usize) -> Result<Matroid> {
        let m = Matroid::from_rank_fn_unchecked(n, f)?;
        if let Some(v) = super::axioms::find_violation(&m) {
            return Err(Error::NotMatroid(v.to_string()));
        }
        Ok(m)
    }

    /// Column matroid of `matrix` over `field`.
    pub fn linear(field: &FieldSpec, matrix: &Matrix) -> Result<Matroid> {
        if matrix.cols() > MAX_GROUND {
            return Err(Error::TooLarge { what: "linear matroid", size: matrix.cols(), limit: MAX_GROUND });
        }
        let rep = Arc::new(LinearRep::new(field, matrix)?);
        Ok(Matroid::from_rep(rep))
    }

    pub(crate) fn from_rep(rep: Arc<LinearRep>) -> Matroid {
        let n = rep.len();
        let rank = mat_rank(&rep.field, &rep.to_matrix());
        let mut m = Matroid::build(n, rank, Oracle::Linear(rep.clone()), Some(rep));
        Arc::get_mut(&mut m.0).expect("fresh Arc").memo = memo_for(n);
        m
    }

    /// Matroid whose bases are `bases`. The basis exchange axiom is checked
    /// when `n <= 12`.
    pub fn from_bases(n: usize, bases: &[Set]) -> Result<Matroid> {
        if bases.is_empty() {
            return Err(Error::NotMatroid("empty basis family".into()));
        }
        let r = bases[0].len();
        let ground = Set::full(n);
        if let Some(b) = bases.iter().find(|b| b.len() != r || !b.is_subset(ground)) {
            return Err(Error::NotMatroid(format!("basis {b} has the wrong size or leaves the ground set")));
        }
        if n <= 12 {
            let family: HashSet<Set> = bases.iter().copied().collect();
            for &b1 in &family {
                for &b2 in &family {
                    for x in b1 - b2 {
                        let ok = (b2 - b1).iter().any(|y| family.contains(&b1.without(x).with(y)));
                        if !ok {
                            return Err(Error::NotMatroid(format!(
                                "basis exchange fails for {b1} and {b2} at element {x}"
                            )));
                        }
                    }
                }
            }
        }
        Matroid::from_bases_unchecked(n, bases)
    }

    /// Rank `max |X ∩ B|` over the family, with no axiom check.
    pub fn from_bases_unchecked(n: usize, bases: &[Set]) -> Result<Matroid> {
        if n > MAX_GROUND {
            return Err(Error::TooLarge { what: "explicit matroid", size: n, limit: MAX_GROUND });
        }
        let r = bases.iter().map(|b| b.len()).max().unwrap_or(0);
        if n <= EXPLICIT_LIMIT {
            // Downward closure of the family gives the independent sets.
            let size = 1usize << n;
            let mut indep = vec![false; size];
            for b in bases {
                indep[b.0 as usize] = true;
            }
            for x in (0..size).rev() {
                if indep[x] {
                    let mut bits = x;
                    while bits != 0 {
                        let low = bits & bits.wrapping_neg();
                        indep[x & !low] = true;
                        bits &= bits - 1;
                    }
                }
            }
            let mut table = vec![0u8; size].into_boxed_slice();
            for x in 1..size {
                if indep[x] {
                    table[x] = x.count_ones() as u8;
                } else {
                    let mut best = 0;
                    let mut bits = x;
                    while bits != 0 {
                        let low = bits & bits.wrapping_neg();
                        best = best.max(table[x & !low]);
                        bits &= bits - 1;
                    }
                    table[x] = best;
                }
            }
            Ok(Matroid::build(n, r, Oracle::Table(table), None))
        } else {
            Ok(Matroid::build(n, r, Oracle::Bases(bases.to_vec()), None))
        }
    }

    /// U_{r,n}.
    pub fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_rank_fn_unchecked(n, |x| x.len().min(r)).expect("uniform matroid within limits")
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let (n1, n2) = (self.n(), other.n());
        let low = Set::full(n1);
        Matroid::from_rank_fn_unchecked(n1 + n2, |x| {
            self.rank(x & low) + other.rank(Set(x.0 >> n1))
        })
    }

    fn compute_table(&self) -> Box<[u8]> {
        (0..1u64 << self.n()).map(|x| self.oracle_rank(Set(x)) as u8).collect()
    }

    /// The matroid on `phi.len()` elements with rank X ↦ r(φ(X)). Elements
    /// with the same image are parallel.
    pub fn pullback(&self, phi: &[usize]) -> Matroid {
        assert!(phi.len() <= MAX_GROUND && phi.iter().all(|&e| e < self.n()), "map out of range");
        Matroid::derived(
            phi.len(),
            Oracle::Minor { base: self.clone(), contract: Set::EMPTY, map: phi.to_vec(), offset: 0 },
            None,
        )
    }

    /// Returns a table-backed copy when the ground set allows it.
    pub fn materialize(&self) -> Matroid {
        if self.table().is_some() || self.n() > EXPLICIT_LIMIT {
            return self.clone();
        }
        let table = Some(self.compute_table());
        Matroid(Arc::new(Inner {
            n: self.n(),
            rank: self.full_rank(),
            oracle: self.0.oracle.clone(),
            table,
            memo: None,
            repr: self.0.repr.clone(),
            flats: OnceLock::new(),
        }))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.0.n
    }

    #[inline]
    pub fn full_rank(&self) -> usize {
        self.0.rank
    }

    #[inline]
    pub fn ground(&self) -> Set {
        Set::full(self.n())
    }

    /// A linear representation, when the matroid was built from one.
    pub fn representation(&self) -> Option<&LinearRep> {
        self.0.repr.as_deref()
    }

    fn oracle_rank(&self, x: Set) -> usize {
        match &self.0.oracle {
            Oracle::Table(t) => t[x.0 as usize] as usize,
            Oracle::Linear(rep) => rep.rank_of(x),
            Oracle::Bases(bs) => bs.iter().map(|b| (*b & x).len()).max().unwrap_or(0),
            Oracle::Extension { base, gens } => {
                let p = base.n();
                if !x.contains(p) {
                    return base.rank(x);
                }
                let rest = x.without(p);
                let r = base.rank(rest);
                if gens.iter().any(|&g| base.rank(rest | g) == r) {
                    r
                } else {
                    r + 1
                }
            }
            Oracle::Minor { base, contract, map, offset } => base.rank(x.map(map) | *contract) - offset,
            Oracle::Truncation { base } => base.rank(x).min(base.full_rank().saturating_sub(1)),
            Oracle::ModularSum { left, right, right_map, shared } => {
                let lmask = Set::full(left.n());
                let back = |x: Set| -> Set { (0..right.n()).filter(|&j| x.contains(right_map[j])).collect() };
                let mut f = x;
                loop {
                    let next = left.closure(f & lmask) | right.closure(back(f)).map(right_map) | f;
                    if next == f {
                        break;
                    }
                    f = next;
                }
                left.rank(f & lmask) + right.rank(back(f)) - left.rank(f & *shared)
            }
        }
    }

    /// r(X).
    #[inline]
    pub fn rank(&self, x: Set) -> usize {
        match (&self.0.table, &self.0.oracle) {
            (Some(t), _) | (None, Oracle::Table(t)) => t[x.0 as usize] as usize,
            _ => match &self.0.memo {
                Some(memo) => {
                    let slot = &memo[x.0 as usize];
                    match slot.load(Ordering::Relaxed) {
                        0 => {
                            let r = self.oracle_rank(x);
                            slot.store(r as u8 + 1, Ordering::Relaxed);
                            r
                        }
                        v => v as usize - 1,
                    }
                }
                None => self.oracle_rank(x),
            },
        }
    }

    /// r(X), rejecting elements outside the ground set.
    pub fn try_rank(&self, x: Set) -> Result<usize> {
        self.check_subset(x)?;
        Ok(self.rank(x))
    }

    pub(crate) fn check_subset(&self, x: Set) -> Result<()> {
        match (x - self.ground()).first() {
            None => Ok(()),
            Some(e) => Err(Error::OutOfRange { element: e, size: self.n() }),
        }
    }

    pub fn is_independent(&self, x: Set) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_spanning(&self, x: Set) -> bool {
        self.rank(x) == self.full_rank()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(Set::single(e)) == 0
    }

    pub fn loops(&self) -> Set {
        (0..self.n()).filter(|&e| self.is_loop(e)).collect()
    }

    pub fn closure(&self, x: Set) -> Set {
        match &self.0.oracle {
            Oracle::Linear(rep) if self.0.table.is_none() => rep.closure(x),
            _ => {
                let r = self.rank(x);
                let mut c = x;
                for e in self.ground() - x {
                    if self.rank(x.with(e)) == r {
                        c = c.with(e);
                    }
                }
                c
            }
        }
    }

    pub fn is_flat(&self, x: Set) -> bool {
        self.closure(x) == x
    }

    /// All flats grouped by rank; `flats_by_rank()[i]` holds the rank-i flats, sorted.
    pub fn flats_by_rank(&self) -> &[Vec<Set>] {
        self.0.flats.get_or_init(|| {
            let r = self.full_rank();
            let mut levels: Vec<Vec<Set>> = vec![vec![self.closure(Set::EMPTY)]];
            for i in 0..r {
                let mut next: HashSet<Set> = HashSet::new();
                for &f in &levels[i] {
                    let mut rest = self.ground() - f;
                    while let Some(e) = rest.first() {
                        let g = self.closure(f.with(e));
                        rest -= g;
                        next.insert(g);
                    }
                }
                let mut next: Vec<Set> = next.into_iter().collect();
                next.sort();
                levels.push(next);
            }
            levels
        })
    }

    /// Flats of rank exactly `r`.
    pub fn flats(&self, r: usize) -> &[Vec<Set>] {
        let all = self.flats_by_rank();
        &all[r.min(all.len())..(r + 1).min(all.len())]
    }

    pub fn flats_of_rank(&self, r: usize) -> &[Set] {
        self.flats_by_rank().get(r).map_or(&[], Vec::as_slice)
    }

    pub fn all_flats(&self) -> impl Iterator<Item = Set> + '_ {
        self.flats_by_rank().iter().flatten().copied()
    }

    pub fn hyperplanes(&self) -> &[Set] {
        match self.full_rank() {
            0 => &[],
            r => self.flats_of_rank(r - 1),
        }
    }

    /// ⊓(X, Y) = r(X) + r(Y) − r(X ∪ Y).
    pub fn local_conn(&self, x: Set, y: Set) -> usize {
        self.rank(x) + self.rank(y) - self.rank(x | y)
    }

    pub fn is_skew(&self, parts: &[Set]) -> bool {
        let union = parts.iter().fold(Set::EMPTY, |a, &b| a | b);
        self.rank(union) == parts.iter().map(|&p| self.rank(p)).sum::<usize>()
    }

    pub fn is_modular_pair(&self, x: Set, y: Set) -> bool {
        self.rank(x & y) + self.rank(x | y) == self.rank(x) + self.rank(y)
    }

    /// Every cocircuit (complement of a hyperplane) has rank at least r − 1.
    /// Vacuously true in rank 0.
    pub fn is_weakly_round(&self) -> bool {
        let r = self.full_rank();
        self.hyperplanes().iter().all(|&h| self.rank(self.ground() - h) + 1 >= r)
    }

    /// Elements of `M` in order, kept when not in `c ∪ d`.
    pub fn minor(&self, contract: Set, delete: Set) -> Result<Matroid> {
        self.check_subset(contract)?;
        self.check_subset(delete)?;
        if !(contract & delete).is_empty() {
            return Err(Error::Overlap((contract & delete).to_vec()));
        }
        if contract.is_empty() && delete.is_empty() {
            return Ok(self.clone());
        }
        let keep: Vec<usize> = (self.ground() - contract - delete).to_vec();
        let repr = if contract.is_empty() { self.0.repr.as_ref().map(|r| Arc::new(r.select(&keep))) } else { None };
        let offset = self.rank(contract);
        let n = keep.len();
        let oracle = Oracle::Minor { base: self.clone(), contract, map: keep, offset };
        Ok(Matroid::derived(n, oracle, repr))
    }

    pub fn restrict(&self, x: Set) -> Matroid {
        self.minor(Set::EMPTY, self.ground() - x).expect("restriction within ground set")
    }

    pub fn delete(&self, d: Set) -> Matroid {
        self.minor(Set::EMPTY, d).expect("deletion within ground set")
    }

    pub fn contract(&self, c: Set) -> Matroid {
        self.minor(c, Set::EMPTY).expect("contraction within ground set")
    }

    /// T(M): rank min(r(X), r(M) − 1).
    pub fn truncation(&self) -> Result<Matroid> {
        if self.full_rank() == 0 {
            return Err(Error::Precondition("cannot truncate a rank-0 matroid".into()));
        }
        Ok(Matroid::derived(self.n(), Oracle::Truncation { base: self.clone() }, None))
    }

    /// Single-element extension in which the new element `n` is spanned by
    /// exactly the flats containing one of `gens`. No validation.
    /// The generalized parallel connection of `self` and `right` along
    /// `shared`, with right element `j` placed at `right_map[j]`. The caller
    /// guarantees that `shared` is a modular flat of `self` on which both
    /// matroids agree.
    pub(crate) fn modular_sum_unchecked(&self, right: &Matroid, right_map: Vec<usize>, shared: Set) -> Result<Matroid> {
        let n = right_map.iter().map(|&e| e + 1).max().unwrap_or(0).max(self.n());
        if n > MAX_GROUND {
            return Err(Error::TooLarge { what: "modular sum", size: n, limit: MAX_GROUND });
        }
        let oracle = Oracle::ModularSum { left: self.clone(), right: right.clone(), right_map, shared };
        Ok(Matroid::derived(n, oracle, None))
    }

    pub(crate) fn extend_unchecked(&self, gens: Vec<Set>) -> Result<Matroid> {
        if self.n() + 1 > MAX_GROUND {
            return Err(Error::TooLarge { what: "extension", size: self.n() + 1, limit: MAX_GROUND });
        }
        Ok(Matroid::derived(self.n() + 1, Oracle::Extension { base: self.clone(), gens }, None))
    }

    /// Relabels so that new element `i` is old element `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Matroid> {
        let mut seen = Set::EMPTY;
        for &p in perm {
            if p >= self.n() || seen.contains(p) {
                return Err(Error::Precondition("relabeling is not a permutation".into()));
            }
            seen = seen.with(p);
        }
        if perm.len() != self.n() {
            return Err(Error::Precondition("relabeling is not a permutation".into()));
        }
        let repr = self.0.repr.as_ref().map(|r| Arc::new(r.select(perm)));
        Ok(Matroid::derived(
            self.n(),
            Oracle::Minor { base: self.clone(), contract: Set::EMPTY, map: perm.to_vec(), offset: 0 },
            repr,
        ))
    }

    /// Whether both matroids have the same ground set size and rank function.
    /// Equal rank functions. Checked on r-subsets, since the bases determine
    /// the matroid.
    pub fn same_rank_function(&self, other: &Matroid) -> bool {
        if self.n() != other.n() || self.full_rank() != other.full_rank() {
            return false;
        }
        let r = self.full_rank();
        let mut same = true;
        combinations(self.ground(), r, &mut |b| {
            if same && (self.rank(b) == r) != (other.rank(b) == r) {
                same = false;
            }
        });
        same
    }

    /// Bases in increasing mask order.
    pub fn bases(&self) -> Vec<Set> {
        let r = self.full_rank();
        let mut out = Vec::new();
        combinations(self.ground(), r, &mut |b| {
            if self.rank(b) == r {
                out.push(b);
            }
        });
        out.sort();
        out
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty()
            && (0..self.n()).all(|e| (e + 1..self.n()).all(|f| self.rank(Set::single(e).with(f)) == 2))
    }

    /// Parallel classes of nonloops, each listed by increasing least element.
    pub fn parallel_classes(&self) -> Vec<Set> {
        let loops = self.loops();
        let mut left = self.ground() - loops;
        let mut classes = Vec::new();
        while let Some(e) = left.first() {
            let class: Set = left.iter().filter(|&f| f == e || self.rank(Set::single(e).with(f)) == 1).collect();
            left -= class;
            classes.push(class);
        }
        classes
    }

    /// ε(M): the number of points.
    pub fn epsilon(&self) -> usize {
        if let Oracle::Linear(rep) = &self.0.oracle {
            return rep.to_matrix().point_count(&rep.field);
        }
        self.parallel_classes().len()
    }

    /// si(M) with its element map.
    pub fn simplify(&self) -> (Matroid, SimplificationMap) {
        let classes = self.parallel_classes();
        let kept: Vec<usize> = classes.iter().map(|c| c.first().unwrap()).collect();
        let loops = self.loops();
        let si = if loops.is_empty() && classes.iter().all(|c| c.len() == 1) {
            self.clone()
        } else {
            self.restrict(kept.iter().collect())
        };
        (si, SimplificationMap { kept, loops, classes })
    }
}

/// Calls `f` on every `k`-subset of `s`.
pub fn combinations(s: Set, k: usize, f: &mut dyn FnMut(Set)) {
    fn go(elems: &[usize], k: usize, start: usize, cur: Set, f: &mut dyn FnMut(Set)) {
        if k == 0 {
            f(cur);
            return;
        }
        for i in start..elems.len() {
            if elems.len() - i < k {
                break;
            }
            go(elems, k - 1, i + 1, cur.with(elems[i]), f);
        }
    }
    let elems = s.to_vec();
    go(&elems, k, 0, Set::EMPTY, f);
}

/// How a matroid maps onto its simplification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplificationMap {
    /// Representative (least element) of each parallel class; element `i` of
    /// si(M) is `kept[i]`.
    pub kept: Vec<usize>,
    pub loops: Set,
    pub classes: Vec<Set>,
}

impl SimplificationMap {
    /// Index in si(M) of the point containing `e`, or `None` for a loop.
    pub fn point_of(&self, e: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(e))
    }
}
