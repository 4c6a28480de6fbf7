//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Search-heavy criteria reuse the `verify` suites; the rest are checked
//! here against the oracles in `common`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{gauss_rank, isomorphic_tables, load_fixtures, naive_has_minor, table_is_matroid};
use matgrow::class::{builtin, has_minor, ClassSpec};
use matgrow::geometry::{ag_matrix, pg, pg_matrix, pg_size};
use matgrow::growth::{grf_formula, h_exhaustive, kd_search, Caps};
use matgrow::modsum::modular_sum;
use matgrow::projection::flat_partition_min;
use matgrow::verify::{constructed_corpus, modsum_corpus, run_suite, subfield_corpus, SuiteOptions, SUMEXCLUDE_INSTANCES};
use matgrow::{Matroid, Set};

type Check = Result<String, String>;

fn table(m: &Matroid) -> Vec<u8> {
    (0..1u64 << m.n()).map(|x| m.rank(Set(x)) as u8).collect()
}

fn suites(names: &[&str]) -> Check {
    let mut notes = Vec::new();
    for name in names {
        let r = run_suite(name, &SuiteOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        if !r.passed() {
            return Err(r.to_text().trim_end().replace('\n', "; "));
        }
        notes.push(format!("{name} {} checks", r.checks));
        notes.extend(r.notes.iter().cloned());
    }
    Ok(notes.join(", "))
}

/// Points of the column matroid of `a`: checks the columns are nonzero,
/// pairwise non-parallel and span, then counts them.
fn points(q: u32, a: &matgrow::field::Matrix) -> Result<u64, String> {
    let col = |j: usize| -> Vec<u8> { (0..a.rows()).map(|i| a.get(i, j)).collect() };
    let cols: Vec<Vec<u8>> = (0..a.cols()).map(col).collect();
    let pair = |x: &Vec<u8>, y: &Vec<u8>| -> Vec<Vec<u8>> { x.iter().zip(y).map(|(&u, &v)| vec![u, v]).collect() };
    for (i, x) in cols.iter().enumerate() {
        if x.iter().all(|&v| v == 0) {
            return Err(format!("column {i} is zero"));
        }
        for (j, y) in cols.iter().enumerate().skip(i + 1) {
            if gauss_rank(q, pair(x, y)) < 2 {
                return Err(format!("columns {i} and {j} are parallel"));
            }
        }
    }
    let all: Vec<Vec<u8>> = (0..a.rows()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    if gauss_rank(q, all) != a.rows() {
        return Err("columns do not span".into());
    }
    Ok(cols.len() as u64)
}

fn geometry_counts() -> Check {
    for q in [2u32, 3, 4] {
        for n in 1..=5usize {
            let q64 = q as u64;
            let want_pg = (q64.pow(n as u32) - 1) / (q64 - 1);
            let e = points(q, &pg_matrix(n, q).map_err(|e| e.to_string())?.1)?;
            if e != want_pg {
                return Err(format!("PG({}, {q}) has {e} points, not {want_pg}", n - 1));
            }
            let e = points(q, &ag_matrix(n, q).map_err(|e| e.to_string())?.1)?;
            if e != q64.pow(n as u32 - 1) {
                return Err(format!("AG({}, {q}) has {e} points", n - 1));
            }
            if pg_size(n, q) <= 64 {
                let e = pg(n, q).map_err(|e| e.to_string())?.epsilon() as u64;
                if e != want_pg {
                    return Err(format!("PG({}, {q}) matroid has {e} points", n - 1));
                }
            }
        }
    }
    Ok("q in {2,3,4}, n <= 5".into())
}

fn flat_partitions() -> Check {
    let mut sizes = Vec::new();
    for n in 2..=4usize {
        let size = flat_partition_min(&pg(n, 2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        // size > 2^{n/2 - 1}, squared to stay in integers.
        if (size * size) as u64 <= 1 << (n - 2) {
            return Err(format!("PG({}, 2): {size}", n - 1));
        }
        sizes.push(size.to_string());
    }
    Ok(format!("minimum sizes {}", sizes.join(", ")))
}

fn modular_sums() -> Check {
    let sizes: Vec<(usize, usize)> = modsum_corpus()
        .map_err(|e| e.to_string())?
        .iter()
        .map(|(s, _)| modular_sum(s).map(|m| (m.n(), m.full_rank())))
        .collect::<matgrow::Result<_>>()
        .map_err(|e| e.to_string())?;
    for want in [(13, 5), (11, 4)] {
        if !sizes.contains(&want) {
            return Err(format!("no sum with {} elements and rank {}", want.0, want.1));
        }
    }
    if SUMEXCLUDE_INSTANCES.len() < 10 {
        return Err(format!("{} exclusion instances", SUMEXCLUDE_INSTANCES.len()));
    }
    let gf4 = subfield_corpus().map_err(|e| e.to_string())?;
    if gf4.len() < 5 {
        return Err(format!("{} GF(4) instances", gf4.len()));
    }
    suites(&["modsum", "sumexclude-7.x", "subfield-7.x"])
}

fn growth_exhaustion() -> Check {
    let caps = Caps::default();
    let binary = ClassSpec::representable(2).map_err(|e| e.to_string())?;
    for n in 1..=4usize {
        let h = h_exhaustive(&binary, n, &caps).map_err(|e| e.to_string())?;
        let g = pg(n, 2).map_err(|e| e.to_string())?;
        let w = h.witnesses.first().ok_or(format!("binary h({n}): no witness"))?;
        if !h.exact || h.value != (1 << n) - 1 {
            return Err(format!("binary h({n}) = {} exact={}", h.value, h.exact));
        }
        if w.n() != g.n() || !isomorphic_tables(&table(w), &table(&g), g.n()) {
            return Err(format!("binary h({n}) witness is not PG({}, 2)", n - 1));
        }
    }
    let u24 = table(&builtin("u24").map_err(|e| e.to_string())?);
    let no_u24 = ClassSpec::excluding(&["u24"]).map_err(|e| e.to_string())?;
    for n in 1..=3usize {
        let h = h_exhaustive(&no_u24, n, &caps).map_err(|e| e.to_string())?;
        if !h.exact || h.value != (1 << n) - 1 {
            return Err(format!("Ex(U24) h({n}) = {} exact={}", h.value, h.exact));
        }
        for w in &h.witnesses {
            let t = table(w);
            if !table_is_matroid(&t, w.n()) || naive_has_minor(&t, w.n(), &u24, 4) {
                return Err(format!("Ex(U24) h({n}) witness is not in the class"));
            }
        }
    }
    Ok("binary n <= 4, Ex(U24) n <= 3".into())
}

fn kd() -> Check {
    let binary = ClassSpec::representable(2).map_err(|e| e.to_string())?;
    let caps = Caps { k_max: 1, ..Caps::default() };
    let report = kd_search(&binary, 3, &caps).map_err(|e| e.to_string())?;
    let p = report.profile.ok_or("no profile")?;
    if (p.k, p.d) != (0, 0) || report.truncated {
        return Err(format!("(k, d) = ({}, {}) truncated={}", p.k, p.d, report.truncated));
    }
    let h = h_exhaustive(&binary, 3, &caps).map_err(|e| e.to_string())?;
    let f = grf_formula(2, p.k, p.d, 3).map_err(|e| e.to_string())?;
    if (h.value as i128) < f {
        return Err(format!("h(3) = {} below {f}", h.value));
    }
    Ok(format!("(0, 0), h(3) = {} >= {f}", h.value))
}

fn kernel_oracles() -> Check {
    let fixtures: Vec<_> = load_fixtures().into_iter().filter(|f| f.n() <= 7).collect();
    let tables: Vec<Vec<u8>> = fixtures.iter().map(|f| f.rank_table()).collect();
    let mut pairs = 0;
    for (i, host) in fixtures.iter().enumerate() {
        let hm = host.matroid();
        for (j, pat) in fixtures.iter().enumerate() {
            let naive = naive_has_minor(&tables[i], host.n(), &tables[j], pat.n());
            if has_minor(&hm, &pat.matroid()).is_some() != naive {
                return Err(format!("{} in {}: naive says {naive}", pat.name, host.name));
            }
            pairs += 1;
        }
    }
    let mut small = 0;
    for (name, m) in constructed_corpus().map_err(|e| e.to_string())? {
        if m.n() <= 12 {
            if !table_is_matroid(&table(&m), m.n()) {
                return Err(format!("{name} breaks the rank axioms"));
            }
            small += 1;
        }
    }
    let suite = suites(&["kernel-axioms"])?;
    Ok(format!("{pairs} minor pairs, {small} constructed matroids, {suite}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("geometry counts", 1, geometry_counts),
        ("density decomposition", 60, || suites(&["density-3.2"])),
        ("local representability", 120, || suites(&["localrep-3.x"])),
        ("generic points", 120, || suites(&["generic-3.x"])),
        ("flat partitions", 300, flat_partitions),
        ("recognition", 120, || suites(&["recognise-3.x"])),
        ("modular sums", 600, modular_sums),
        ("growth-rate exhaustion", 1800, growth_exhaustion),
        ("kd search", 1800, kd),
        ("kernel oracle equivalence", 600, kernel_oracles),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let verdict = match (&result, slow) {
            (Ok(_), false) => "pass",
            _ => "FAIL",
        };
        let detail = match &result {
            Ok(d) if slow => format!("{d}; over the {limit} s limit"),
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!("criterion {:>2}: {verdict} {name} ({:.1} s) {detail}", i + 1, took.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
