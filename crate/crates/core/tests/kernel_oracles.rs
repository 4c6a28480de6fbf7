mod common;

use common::{gauss_rank, isomorphic_tables, load_fixtures, naive_has_minor, table_is_matroid};
use matgrow::class::{has_minor, is_representable, verify_witness};
use matgrow::geometry::{ag_matrix, pg, pg_matrix};
use matgrow::kernel::{find_violation, is_isomorphic, matroid_to_text, parse_matroid};
use matgrow::verify::constructed_corpus;
use matgrow::{Matroid, Set};

fn table(m: &Matroid) -> Vec<u8> {
    (0..1u64 << m.n()).map(|x| m.rank(Set(x)) as u8).collect()
}

#[test]
fn fixture_ranks_match_row_reduction() {
    for f in load_fixtures() {
        let m = f.matroid();
        assert_eq!(m.n(), f.n(), "{}", f.name);
        for x in 0..1u64 << f.n() {
            assert_eq!(m.rank(Set(x)), f.rank(x), "{} rank of {x:#b}", f.name);
        }
    }
}

#[test]
fn fixtures_satisfy_the_rank_axioms() {
    for f in load_fixtures() {
        assert!(table_is_matroid(&f.rank_table(), f.n()), "{}", f.name);
        assert!(find_violation(&f.matroid()).is_none(), "{}", f.name);
    }
}

#[test]
fn geometry_matrices_match_row_reduction() {
    for (n, q) in [(3, 2), (4, 2), (3, 3), (3, 4), (2, 5)] {
        let (_, a) = pg_matrix(n, q).unwrap();
        let g = pg(n, q).unwrap();
        let rows: Vec<Vec<u8>> = (0..a.rows()).map(|i| (0..a.cols()).map(|j| a.get(i, j)).collect()).collect();
        let cols = a.cols();
        for size in 1..=n.min(3) {
            let mut stack = vec![(0usize, Vec::<usize>::new())];
            while let Some((start, pick)) = stack.pop() {
                if pick.len() == size {
                    let sub: Vec<Vec<u8>> = rows.iter().map(|r| pick.iter().map(|&c| r[c]).collect()).collect();
                    let s: Set = pick.iter().copied().collect();
                    assert_eq!(g.rank(s), gauss_rank(q, sub), "PG({}, {q}) {pick:?}", n - 1);
                    continue;
                }
                for c in start..cols {
                    let mut p = pick.clone();
                    p.push(c);
                    stack.push((c + 1, p));
                }
            }
        }
    }
}

#[test]
fn geometry_point_counts() {
    for q in [2u32, 3, 4] {
        for n in 1..=5usize {
            let (_, a) = pg_matrix(n, q).unwrap();
            assert_eq!(a.cols() as u64, (q as u64).pow(n as u32).saturating_sub(1) / (q as u64 - 1));
            let (_, b) = ag_matrix(n, q).unwrap();
            assert_eq!(b.cols() as u64, (q as u64).pow(n as u32 - 1));
        }
    }
}

#[test]
fn closure_is_idempotent_and_monotone() {
    for f in load_fixtures() {
        let m = f.matroid();
        for x in 0..1u64 << m.n() {
            let c = m.closure(Set(x));
            assert!(Set(x).is_subset(c));
            assert_eq!(m.closure(c), c);
            assert_eq!(m.rank(c), m.rank(Set(x)));
        }
    }
}

#[test]
fn has_minor_agrees_with_naive_enumeration() {
    let fixtures: Vec<_> = load_fixtures().into_iter().filter(|f| f.n() <= 7).collect();
    let tables: Vec<Vec<u8>> = fixtures.iter().map(|f| f.rank_table()).collect();
    let mut disagreements = Vec::new();
    for (i, host) in fixtures.iter().enumerate() {
        let hm = host.matroid();
        for (j, pat) in fixtures.iter().enumerate() {
            let expected = naive_has_minor(&tables[i], host.n(), &tables[j], pat.n());
            let got = has_minor(&hm, &pat.matroid());
            if let Some(w) = &got {
                assert!(verify_witness(&hm, &pat.matroid(), w), "{} in {}: bad witness", pat.name, host.name);
            }
            if got.is_some() != expected {
                disagreements.push(format!("{} in {}: naive {expected}", pat.name, host.name));
            }
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:#?}");
}

#[test]
fn isomorphism_agrees_with_permutation_search() {
    let fixtures: Vec<_> = load_fixtures().into_iter().filter(|f| f.n() <= 7).collect();
    for a in &fixtures {
        for b in &fixtures {
            if a.n() != b.n() {
                continue;
            }
            let expected = isomorphic_tables(&a.rank_table(), &b.rank_table(), a.n());
            assert_eq!(is_isomorphic(&a.matroid(), &b.matroid()).is_some(), expected, "{} vs {}", a.name, b.name);
        }
    }
}

#[test]
fn representability_of_known_matroids() {
    let fx = load_fixtures();
    let get = |n: &str| fx.iter().find(|f| f.name == n).unwrap().matroid();
    // U_{2,n} is GF(q)-representable iff n <= q + 1.
    for (name, n) in [("u23", 3u32), ("u24", 4), ("u25", 5), ("u26", 6)] {
        for q in [2u32, 3, 4, 5] {
            assert_eq!(is_representable(&get(name), q).unwrap(), n <= q + 1, "{name} over GF({q})");
        }
    }
    assert!(is_representable(&get("fano"), 2).unwrap());
    assert!(!is_representable(&get("fano"), 3).unwrap());
    assert!(is_representable(&get("fano"), 4).unwrap());
    assert!(!is_representable(&get("nonfano"), 2).unwrap());
    assert!(is_representable(&get("nonfano"), 3).unwrap());
    assert!(is_representable(&get("quaternary_rank3_6"), 4).unwrap());
}

#[test]
fn constructed_corpus_satisfies_the_axioms() {
    for (name, m) in constructed_corpus().unwrap() {
        assert!(m.n() <= 12 || name.starts_with("pg") || name.starts_with("ag"), "{name}");
        if m.n() <= 12 {
            assert!(table_is_matroid(&table(&m), m.n()), "{name}");
        }
    }
}

#[test]
fn text_round_trip() {
    for f in load_fixtures() {
        let m = f.matroid();
        let back = parse_matroid(&matroid_to_text("x", &m)).unwrap().1;
        assert!(m.same_rank_function(&back), "{}", f.name);
    }
}
