//! Named invariant suites, as run by `matgrow verify`.
//!
//! Each suite returns every failed check together with a text input that
//! reproduces it. Budget exhaustion is returned as an error.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::budget::{Budget, DEFAULT_BUDGET};
use crate::class::{builtin, has_minor_budgeted, is_representable, ClassSpec};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Matrix};
use crate::geometry::{ag, pg, pg_size, project, sample_certificates, CutSpec, ProjectionCertificate};
use crate::growth::{grf_formula, h_exhaustive, kd_search, Caps};
use crate::kernel::{find_violation, is_isomorphic, matroid_to_text, Matroid, Set};
use crate::modsum::{geometry_extend, is_modular_flat, modular_sum, SumSpec};
use crate::projection::{
    density_d, density_params, flat_partition_min, is_quotient, local_rep_level, pullback, sensitive_cover,
    sensitive_elements, spanning_subprojection, triangle_compatible,
};

pub const SUITES: [&str; 10] = [
    "density-3.2",
    "generic-3.x",
    "localrep-3.x",
    "flatpartition-3.1",
    "recognise-3.x",
    "modsum",
    "sumexclude-7.x",
    "subfield-7.x",
    "growth-7.1",
    "kernel-axioms",
];

/// The (q, k) cells sampled by the certificate suites.
pub const CELLS: [(u32, usize); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Certificates per (q, k) cell.
    pub seeds: usize,
    pub base_seed: u64,
    pub budget: u64,
    /// Extra matroids checked by `kernel-axioms`.
    pub extra: Vec<Matroid>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seeds: 200, base_seed: 0, budget: DEFAULT_BUDGET, extra: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct Failure {
    pub invariant: String,
    pub detail: String,
    /// Text that reproduces the failure.
    pub input: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, invariant: &str, detail: impl FnOnce() -> String, input: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure { invariant: invariant.to_string(), detail: detail(), input: input() });
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    /// Failures ordered by the size of their reproducing input.
    pub fn smallest_failures(&self) -> Vec<&Failure> {
        let mut f: Vec<&Failure> = self.failures.iter().collect();
        f.sort_by_key(|x| x.input.len());
        f
    }

    pub fn to_text(&self) -> String {
        let verdict = if self.passed() { "pass" } else { "FAIL" };
        let mut out = format!("suite {} checks={} failures={} {verdict}\n", self.suite, self.checks, self.failures.len());
        for n in &self.notes {
            out.push_str(&format!("note {n}\n"));
        }
        for f in self.failures.iter().take(10) {
            out.push_str(&format!("failed {}: {}\n", f.invariant, f.detail));
        }
        out
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    match name {
        "density-3.2" => density_suite(opts),
        "generic-3.x" => generic_suite(opts),
        "localrep-3.x" => localrep_suite(opts),
        "flatpartition-3.1" => flat_partition_suite(),
        "recognise-3.x" => recognise_suite(opts),
        "modsum" => modsum_suite(),
        "sumexclude-7.x" => sumexclude_suite(opts),
        "subfield-7.x" => subfield_suite(),
        "growth-7.1" => growth_suite(opts),
        "kernel-axioms" => kernel_axioms_suite(opts),
        other => Err(Error::Precondition(format!("unknown suite `{other}`; known: {}", SUITES.join(", ")))),
    }
}

/// The sampled certificates of one cell, with seeds disjoint across cells.
pub fn cell_certificates(q: u32, k: usize, opts: &SuiteOptions) -> Result<Vec<ProjectionCertificate>> {
    let cell = CELLS.iter().position(|&c| c == (q, k)).unwrap_or(CELLS.len()) as u64;
    sample_certificates(q, k, opts.seeds, opts.base_seed.wrapping_add(cell << 32))
}

/// Runs `per_cert` over every sampled certificate in parallel; reports are
/// merged in sample order.
fn over_certificates(
    suite: &str,
    opts: &SuiteOptions,
    per_cert: impl Fn(&ProjectionCertificate) -> Result<SuiteReport> + Sync,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite);
    for (q, k) in CELLS {
        let certs = cell_certificates(q, k, opts)?;
        let parts: Vec<Result<SuiteReport>> = certs.par_iter().map(&per_cert).collect();
        for p in parts {
            report.absorb(p?);
        }
    }
    Ok(report)
}

fn density_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    over_certificates("density-3.2", opts, |cert| {
        let mut rep = SuiteReport::new("");
        let text = || cert.to_text();
        let (q, k, r) = (cert.q, cert.k(), cert.r());
        match density_params(cert) {
            Ok(d) => {
                let total = pg_size(r + k, q);
                rep.check(d.epsilon + q as u64 * d.d == total, "density identity", || format!("{d:?}"), text);
                rep.check(d.in_bound, "density bound", || format!("d = {} for k = {k}", d.d), text);
                let floor = (d.epsilon as u128).pow(2) >= (q as u128).pow(k as u32);
                rep.check(floor, "point floor", || format!("ε = {} below q^(k/2)", d.epsilon), text);
            }
            Err(e) => rep.check(false, "density identity", || e.to_string(), text),
        }
        for kp in 0..=k {
            let sub = spanning_subprojection(cert, kp);
            rep.check(sub.is_ok(), "spanning subprojection", || format!("k' = {kp}: {}", sub.unwrap_err()), text);
        }
        Ok(rep)
    })
}

fn generic_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    over_certificates("generic-3.x", opts, |cert| {
        let mut rep = SuiteReport::new("");
        let text = || cert.to_text();
        let s = sensitive_elements(cert)?;
        let m = &cert.projected;
        let (q, k) = (cert.q, cert.k());
        for e in m.ground() - s.set {
            let c = m.contract(Set::single(e));
            let d = density_d(q, c.full_rank(), k, c.epsilon() as u64);
            rep.check(d == Some(s.d), "generic point", || format!("contracting {e} gives d = {d:?}, not {}", s.d), text);
        }
        let cover = sensitive_cover(cert);
        rep.check(s.set.is_subset(cover), "sensitive cover", || format!("{} not inside {cover}", s.set), text);
        Ok(rep)
    })
}

fn localrep_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    over_certificates("localrep-3.x", opts, |cert| {
        let mut rep = SuiteReport::new("");
        let text = || cert.to_text();
        match local_rep_level(cert) {
            Ok(h) => {
                if h >= 2 {
                    let d = density_params(cert)?.d;
                    rep.check(d == 0, "level two forces d = 0", || format!("level {h} with d = {d}"), text);
                }
            }
            Err(e) => rep.check(false, "definitional and skewness levels agree", || e.to_string(), text),
        }
        Ok(rep)
    })
}

fn flat_partition_suite() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("flatpartition-3.1");
    for (q, n_max) in [(2u32, 4usize), (3, 3)] {
        for n in 2..=n_max {
            let g = pg(n, q)?;
            let size = flat_partition_min(&g)? as u128;
            // size > q^{n/2 − 1}  ⟺  size² > q^{n − 2}
            let ok = size * size > (q as u128).pow(n as u32 - 2);
            rep.check(ok, "flat partition size", || format!("PG({}, {q}) has a partition into {size} flats", n - 1), || {
                matroid_to_text(&format!("pg_{}_{q}", n - 1), &g)
            });
            rep.notes.push(format!("PG({}, {q}) minimum {size}", n - 1));
        }
    }
    Ok(rep)
}

/// Geometry element i goes to the parallel class of i in si(M).
pub fn fiber_map(cert: &ProjectionCertificate) -> (Matroid, Vec<usize>) {
    let (si, map) = cert.projected.simplify();
    let phi = (0..cert.projected.n())
        .map(|e| map.classes.iter().position(|c| c.contains(e)).expect("projections are loopless"))
        .collect();
    (si, phi)
}

/// Perturbed fiber maps (one element sent to a different point) that still
/// pass the triangle test.
pub fn perturbation_survivors(certs: &[ProjectionCertificate], trials: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut survivors = 0;
    let usable: Vec<&ProjectionCertificate> = certs.iter().filter(|c| fiber_map(c).0.n() >= 2).collect();
    if usable.is_empty() {
        return Err(Error::Precondition("no certificate has two points".into()));
    }
    for t in 0..trials {
        let cert = usable[t % usable.len()];
        let (si, mut phi) = fiber_map(cert);
        let a = rng.gen_range(0..phi.len());
        let image = loop {
            let p = rng.gen_range(0..si.n());
            if p != phi[a] {
                break p;
            }
        };
        phi[a] = image;
        // A map that is no longer onto fails the test's preconditions.
        if matches!(triangle_compatible(&phi, &cert.geometry(), &si), Ok(true)) {
            survivors += 1;
        }
    }
    Ok(survivors)
}

fn recognise_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rep = over_certificates("recognise-3.x", opts, |cert| {
        let mut rep = SuiteReport::new("");
        let text = || cert.to_text();
        let (si, phi) = fiber_map(cert);
        let g = cert.geometry();
        let tri = triangle_compatible(&phi, &g, &si)?;
        rep.check(tri, "fiber map is triangle compatible", || "a triangle maps badly".into(), text);
        let back = pullback(&phi, g.n(), &si)?;
        let quot = is_quotient(&back, &g)?;
        rep.check(quot, "pullback is a quotient", || "a flat of the pullback is not a flat of G".into(), text);
        Ok(rep)
    })?;
    let mut certs = Vec::new();
    for (q, k) in CELLS {
        certs.extend(cell_certificates(q, k, &SuiteOptions { seeds: 25, ..opts.clone() })?);
    }
    let survivors = perturbation_survivors(&certs, 100, opts.base_seed)?;
    rep.notes.push(format!("{survivors} of 100 perturbed maps passed the triangle test"));
    rep.check(survivors <= 5, "perturbations are rejected", || format!("{survivors} of 100 survived"), || {
        format!("perturbation seed {}\n", opts.base_seed)
    });
    Ok(rep)
}

/// Sums checked by the `modsum` suite, with the expected (size, rank) where
/// known.
pub fn modsum_corpus() -> Result<Vec<(SumSpec, Option<(usize, usize)>)>> {
    let fano = pg(3, 2)?;
    let line = fano.flats_of_rank(2)[0].to_vec();
    let along_line: Vec<(usize, usize)> = line.iter().map(|&e| (e, e)).collect();
    let nonfano = builtin("nonfano")?;
    let nf_line = nonfano.flats_of_rank(2).iter().find(|l| l.len() == 3).expect("a three-point line").to_vec();
    let pg23 = pg(3, 3)?;
    let l3 = pg23.flats_of_rank(2)[0].to_vec();
    let pg32 = pg(4, 2)?;
    let plane = pg32.flats_of_rank(3)[0].to_vec();
    Ok(vec![
        (SumSpec::new(fano.clone(), fano.clone(), vec![(0, 0)])?, Some((13, 5))),
        (SumSpec::new(fano.clone(), fano.clone(), along_line.clone())?, Some((11, 4))),
        (SumSpec::new(fano.clone(), Matroid::uniform(2, 4), vec![(0, 0)])?, Some((10, 4))),
        (SumSpec::new(Matroid::uniform(2, 3), Matroid::uniform(2, 3), vec![(0, 0)])?, Some((5, 3))),
        (SumSpec::new(fano.clone(), nonfano, line.iter().zip(&nf_line).map(|(&a, &b)| (a, b)).collect())?, Some((11, 4))),
        (SumSpec::new(pg23.clone(), pg23, l3.iter().map(|&e| (e, e)).collect())?, Some((22, 4))),
        (SumSpec::new(pg32, fano, plane.iter().enumerate().map(|(i, &e)| (e, i)).collect())?, Some((15, 4))),
    ])
}

fn modsum_suite() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("modsum");
    for (spec, expected) in modsum_corpus()? {
        let text = || spec.to_text();
        let tl = spec.shared_left();
        rep.check(is_modular_flat(&spec.left, tl)?, "shared flat is modular", || format!("{tl}"), text);
        let m = match modular_sum(&spec) {
            Ok(m) => m,
            Err(e) => {
                rep.check(false, "sum exists", || e.to_string(), text);
                continue;
            }
        };
        let rank = spec.left.full_rank() + spec.right.full_rank() - spec.left.rank(tl);
        rep.check(m.full_rank() == rank, "rank additivity", || format!("rank {} not {rank}", m.full_rank()), text);
        let left_part = m.restrict(Set::full(spec.left.n()));
        rep.check(left_part.same_rank_function(&spec.left), "left restriction", || "ranks differ".into(), text);
        let map = spec.right_map();
        let right_ok = spec.right.ground().subsets().all(|x| m.rank(x.map(&map)) == spec.right.rank(x));
        rep.check(right_ok, "right restriction", || "ranks differ".into(), text);
        if let Some((n, r)) = expected {
            rep.check((m.n(), m.full_rank()) == (n, r), "size and rank", || format!("{} elements, rank {}", m.n(), m.full_rank()), text);
        }
    }
    Ok(rep)
}

/// `pg(r, 2)`, with element 0 doubled when `parallel` is set.
fn geometry_with_parallel(r: usize, parallel: bool) -> Result<Matroid> {
    let g = pg(r, 2)?;
    if !parallel {
        return Ok(g);
    }
    let n = g.n();
    Matroid::from_rank_fn_unchecked(n + 1, |x| {
        let base = x & Set::full(n);
        g.rank(if x.contains(n) { base.with(0) } else { base })
    })
}

/// Instances (r, n, N name, doubled point) for the minor-exclusion check,
/// all with k = 0 and t = 2.
pub const SUMEXCLUDE_INSTANCES: [(usize, usize, &str, bool); 12] = [
    (2, 2, "u24", false),
    (2, 3, "u24", false),
    (2, 3, "u24", true),
    (3, 3, "u24", true),
    (3, 4, "u24", false),
    (3, 3, "nonfano", false),
    (3, 4, "nonfano", false),
    (3, 3, "u35", true),
    (3, 4, "u35", false),
    (2, 4, "u25", true),
    (3, 4, "u25", false),
    (4, 4, "nonfano*", false),
];

fn sumexclude_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("sumexclude-7.x");
    let (t, k) = (2usize, 0usize);
    let trunc = pg(t + 1, 2)?.truncation()?;
    for (r, n, name, parallel) in SUMEXCLUDE_INSTANCES {
        let m = geometry_with_parallel(r, parallel)?;
        let pattern = builtin(name)?;
        let text = || format!("{}pattern {name}\ndimension {n}\n", matroid_to_text("m", &m));
        let budget = Budget::new("minor exclusion", opts.budget);
        let pre = r >= k * (t + 1) + pattern.full_rank()
            && has_minor_budgeted(&m, &trunc, &budget)?.is_none()
            && has_minor_budgeted(&m, &pattern, &budget)?.is_none();
        rep.check(pre, "instance meets the hypotheses", || format!("r = {r}, N = {name}"), text);
        let f = Set::full(pg_size(r, 2) as usize);
        let sum = geometry_extend(&m, f, n, 2)?;
        let found = has_minor_budgeted(&sum, &pattern, &budget)?;
        rep.check(found.is_none(), "geometry extension has no N-minor", || format!("{name}-minor in the rank-{n} sum"), text);
    }
    Ok(rep)
}

fn gf4(rows: usize, cols: &[&[u8]]) -> Result<Matroid> {
    let cols: Vec<Vec<u8>> = cols.iter().map(|c| c.to_vec()).collect();
    Matroid::linear(&FieldSpec::new(4)?, &Matrix::from_columns(rows, &cols))
}

/// GF(4)-representable matroids with a binary projective flat, glued to a
/// binary projective geometry along it. GF(4) elements are 0, 1, ω = 2 and
/// ω² = 3.
pub fn subfield_corpus() -> Result<Vec<SumSpec>> {
    let fano = pg(3, 2)?;
    let line = fano.flats_of_rank(2)[0].to_vec();
    let u23 = pg(2, 2)?;
    let plane = |extra: &[&[u8]]| -> Result<Matroid> {
        let mut cols: Vec<&[u8]> = vec![&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]];
        cols.extend_from_slice(extra);
        gf4(3, &cols)
    };
    let on_line = |m: Matroid| -> Result<SumSpec> { SumSpec::new(fano.clone(), m, line.iter().enumerate().map(|(i, &e)| (e, i)).collect()) };
    Ok(vec![
        SumSpec::new(fano.clone(), gf4(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]])?, vec![(0, 0)])?,
        on_line(plane(&[&[0, 0, 1]])?)?,
        on_line(plane(&[&[0, 0, 1], &[1, 2, 1]])?)?,
        on_line(plane(&[&[0, 0, 1], &[1, 2, 1], &[2, 1, 1]])?)?,
        SumSpec::new(u23.clone(), gf4(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2], &[1, 3]])?, vec![(0, 0)])?,
        SumSpec::new(u23, gf4(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3], &[1, 3, 2]])?, vec![(0, 0)])?,
    ])
}

fn subfield_suite() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("subfield-7.x");
    for spec in subfield_corpus()? {
        let text = || spec.to_text();
        let m = modular_sum(&spec)?;
        rep.check(m.n() <= 10, "instance size", || format!("{} elements", m.n()), text);
        rep.check(is_representable(&spec.right, 4)?, "summand is GF(4)-representable", String::new, text);
        rep.check(is_representable(&m, 4)?, "sum is GF(4)-representable", || format!("{} elements", m.n()), text);
    }
    Ok(rep)
}

fn growth_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("growth-7.1");
    let caps = Caps { nodes: opts.budget, ..Caps::default() };
    let binary = ClassSpec::representable(2)?;
    for n in 1..=4 {
        let h = h_exhaustive(&binary, n, &caps)?;
        let want = (1u64 << n) - 1;
        let pgn = pg(n, 2)?;
        let witness = h.witnesses.first().is_some_and(|w| is_isomorphic(w, &pgn).is_some());
        rep.check(h.exact && h.value == want && witness, "binary h(n)", || format!("h({n}) = {} exact={}", h.value, h.exact), || binary.to_text());
    }
    let no_u24 = ClassSpec::excluding(&["u24"])?;
    for n in 1..=3 {
        let h = h_exhaustive(&no_u24, n, &caps)?;
        let want = (1u64 << n) - 1;
        rep.check(h.exact && h.value == want, "Ex(U24) h(n)", || format!("h({n}) = {} exact={}", h.value, h.exact), || no_u24.to_text());
    }
    let search = kd_search(&binary, 3, &Caps { k_max: 1, ..caps })?;
    let kd = search.profile.map(|p| (p.k, p.d));
    rep.check(kd == Some((0, 0)) && !search.truncated, "kd search", || format!("{kd:?} truncated={}", search.truncated), || binary.to_text());
    if let Some(p) = search.profile {
        let h = h_exhaustive(&binary, 3, &caps)?;
        let f = p.formula(3)?;
        rep.check(h.value as i128 >= f, "h dominates the formula", || format!("h(3) = {} < {f}", h.value), || binary.to_text());
    }
    for q in [2u32, 3, 4] {
        for k in 0..=2 {
            for d in 0..=crate::projection::d_bound(q, k) {
                for n in 1..=4 {
                    let gap = grf_formula(q, k, 0, n)? - grf_formula(q, k, d, n)?;
                    rep.check(gap == (q as u64 * d) as i128, "formula offset", || format!("q={q} k={k} d={d} n={n}"), String::new);
                }
            }
        }
    }
    Ok(rep)
}

/// Matroids on at most 12 elements built by the library's constructors.
pub fn constructed_corpus() -> Result<Vec<(String, Matroid)>> {
    let mut out: Vec<(String, Matroid)> = Vec::new();
    for n in 0..=8 {
        for r in 0..=n {
            out.push((format!("u{r}{n}"), Matroid::uniform(r, n)));
        }
    }
    for (n, q) in [(2, 2), (3, 2), (2, 3), (3, 3), (2, 4), (2, 5), (2, 7)] {
        out.push((format!("pg({n},{q})"), pg(n, q)?));
    }
    for (n, q) in [(3, 2), (4, 2), (3, 3)] {
        out.push((format!("ag({n},{q})"), ag(n, q)?));
    }
    for name in ["fano*", "nonfano", "nonfano*", "mk4", "tpg(3,2)"] {
        out.push((name.to_string(), builtin(name)?));
    }
    let fano = pg(3, 2)?;
    out.push(("fano+u24".into(), fano.direct_sum(&Matroid::uniform(2, 4))?));
    out.push(("fano/e".into(), fano.contract(Set::single(0))));
    out.push(("fano\\e".into(), fano.delete(Set::single(0))));
    let line = fano.flats_of_rank(2)[0];
    let c = project(&fano, &[CutSpec::Principal(line)], 2)?;
    out.push(("principal line extension".into(), c.lifted.clone()));
    out.push(("principal line projection".into(), c.projected.clone()));
    let free = project(&fano, &[CutSpec::Free], 2)?;
    out.push(("free extension".into(), free.lifted.clone()));
    for (i, (spec, _)) in modsum_corpus()?.into_iter().enumerate() {
        let m = modular_sum(&spec)?;
        if m.n() <= 12 {
            out.push((format!("sum {i}"), m));
        }
    }
    Ok(out)
}

fn kernel_axioms_suite(opts: &SuiteOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("kernel-axioms");
    let mut all = constructed_corpus()?;
    all.extend(opts.extra.iter().enumerate().map(|(i, m)| (format!("input {i}"), m.clone())));
    for (name, m) in &all {
        let v = find_violation(m);
        rep.check(v.is_none(), "rank axioms", || format!("{name}: {}", v.as_ref().unwrap()), || matroid_to_text(name, m));
    }
    Ok(rep)
}
