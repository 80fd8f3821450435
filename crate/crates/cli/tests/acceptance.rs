//! Acceptance gate: one test per shipped claim, each printing a single
//! PASS line (visible with --nocapture) and failing loudly otherwise.
//! Every assertion is exact; the timed criteria also enforce their wall
//! clock budgets.

use std::time::{Duration, Instant};

use pcoh_core::bounds::{
    dickson, gl_generators, gt_bound, lhs_e2_bound, order_dim_bound, series_geom, series_mul,
    substitute, tower_index_bound_exp,
};
use pcoh_core::cohomology::bar::low_degree_dims;
use pcoh_core::cohomology::{
    abelian_shape_check, minres_dims, omega_extendible, param2_check, powerful_cohom,
};
use pcoh_core::corpus::{default_corpus, CorpusEntry};
use pcoh_core::tower::characteristic_tower;
use pcoh_cli::record::Options;
use pcoh_cli::verify::{report_csv, report_json, run_verify, Source, VerifyConfig};

fn corpus(p: u32) -> Vec<CorpusEntry> {
    default_corpus(p).expect("builtin corpus builds")
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for t in 0..k {
        r = r * (n - t) as u128 / (t as u128 + 1);
    }
    r as u64
}

fn announce(n: usize, label: &str, started: Instant) {
    println!("ACCEPTANCE {n:>2} {label}: PASS ({} ms)", started.elapsed().as_millis());
}

#[test]
fn criterion_01_dimension_oracles_agree_on_small_groups() {
    let t0 = Instant::now();
    for p in [2u32, 3, 5] {
        for e in corpus(p) {
            let g = &e.group;
            if g.size() > 32 {
                continue;
            }
            let bar = low_degree_dims(g).expect("bar dims within cap");
            let minres = minres_dims(g, 3);
            assert_eq!(minres.dims, bar.to_vec(), "{} oracle mismatch", g.name());
            assert!(minres.truncated_at.is_none(), "{} truncated", g.name());
        }
    }
    assert!(t0.elapsed() < Duration::from_secs(120), "criterion 1 over its time budget");
    announce(1, "dimension oracles agree in degrees <= 3", t0);
}

#[test]
fn criterion_02_known_dimension_sequences() {
    let t0 = Instant::now();
    for p in [2u32, 3, 5] {
        for e in corpus(p) {
            let g = &e.group;
            if g.size() == p as usize {
                let dims = minres_dims(g, 10);
                assert_eq!(dims.dims, vec![1; 11], "{} cyclic sequence", g.name());
            }
            if !g.is_abelian() {
                continue;
            }
            let dims = minres_dims(g, 8);
            assert!(dims.truncated_at.is_none(), "{} truncated", g.name());
            let d = dims.dims[1] as u64;
            for i in 0..=8u64 {
                assert_eq!(
                    dims.dims[i as usize] as u64,
                    binom(d + i - 1, i),
                    "{} degree {i}",
                    g.name()
                );
            }
        }
    }
    let two = corpus(2);
    let d8 = &two.iter().find(|e| e.group.name() == "D8").unwrap().group;
    let q8 = &two.iter().find(|e| e.group.name() == "Q8").unwrap().group;
    let d8_dims = minres_dims(d8, 8);
    let q8_dims = minres_dims(q8, 8);
    for i in 0..=8usize {
        assert_eq!(d8_dims.dims[i], i + 1, "D8 degree {i}");
        assert_eq!(q8_dims.dims[i], [1usize, 2, 2, 1][i % 4], "Q8 degree {i}");
    }
    assert!(t0.elapsed() < Duration::from_secs(300), "criterion 2 over its time budget");
    announce(2, "known dimension sequences through degree 8", t0);
}

#[test]
fn criterion_03_powerful_criterion_matches_definition() {
    let t0 = Instant::now();
    for p in [2u32, 3] {
        for e in corpus(p) {
            let g = &e.group;
            if g.size() > 64 {
                continue;
            }
            let rep = powerful_cohom(g).expect("degree-2 data within cap");
            assert_eq!(rep.verdict, g.is_powerful(), "{}", g.name());
        }
    }
    announce(3, "degree-2 relation criterion equals the powerful definition", t0);
}

#[test]
fn criterion_04_tower_subgroup_has_all_claimed_properties() {
    let t0 = Instant::now();
    for p in [2u32, 3, 5] {
        for e in corpus(p) {
            let g = &e.group;
            let rep = characteristic_tower(g, None).expect("tower builds");
            assert!(!rep.fallback_used, "{} unexpectedly hit the hom search cap", g.name());
            assert!(rep.n_powerful, "{} tower subgroup not powerful", g.name());
            assert!(rep.n_p_central, "{} tower subgroup not p-central", g.name());
            assert!(rep.n_omega_extendible, "{} tower subgroup fails the criterion", g.name());
            assert!(rep.n_rank_le_r, "{} tower subgroup rank {} > r {}", g.name(), rep.n_rank, rep.r);
            assert!(
                rep.index_exp <= rep.bound_exp,
                "{} index exponent {} over bound {}",
                g.name(),
                rep.index_exp,
                rep.bound_exp
            );
        }
    }
    let two = corpus(2);
    let c8 = &two.iter().find(|e| e.group.name() == "C8").unwrap().group;
    let rep = characteristic_tower(c8, None).unwrap();
    assert_eq!(rep.index_exp, 3, "C8 attains the bound");
    assert_eq!(rep.bound_exp, 3, "C8 bound value");
    announce(4, "tower subgroup satisfies every claimed conclusion", t0);
}

#[test]
fn criterion_05_dimension_bounds_hold_corpus_wide() {
    let t0 = Instant::now();
    let mut strict_rank = 0usize;
    let mut strict_order = 0usize;
    for p in [2u32, 3, 5] {
        for e in corpus(p) {
            let g = &e.group;
            let rank = g.structure_invariants().expect("invariants").rank;
            let n = {
                let mut s = g.size();
                let mut k = 0;
                while s > 1 {
                    s /= p as usize;
                    k += 1;
                }
                k
            };
            let dims = minres_dims(g, 8);
            for (i, &d) in dims.dims.iter().enumerate() {
                let rb = gt_bound(p as u8, rank, i);
                let ob = order_dim_bound(n, i);
                assert!(d as u64 <= rb, "{} degree {i}: {d} > rank bound {rb}", g.name());
                assert!(d as u64 <= ob, "{} degree {i}: {d} > order bound {ob}", g.name());
                strict_rank += usize::from((d as u64) < rb);
                strict_order += usize::from((d as u64) < ob);
            }
        }
    }
    assert!(strict_rank > 0, "rank bound never strict");
    assert!(strict_order > 0, "order bound never strict");
    announce(5, "rank and order dimension bounds hold", t0);
}

#[test]
fn criterion_06_abelian_shape_and_parametrization_characterizations() {
    let t0 = Instant::now();
    for p in [2u32, 3] {
        for e in corpus(p) {
            let g = &e.group;
            let expected = g.is_powerful() && omega_extendible(g).expect("omega data").verdict;
            assert_eq!(abelian_shape_check(g, 8), expected, "{} shape", g.name());
            if p == 3 {
                let rep = param2_check(g).expect("odd-p parametrization data");
                assert_eq!(rep.verdict, expected, "{} parametrization", g.name());
            }
        }
    }
    announce(6, "cohomology characterizations match the group predicates", t0);
}

#[test]
fn criterion_07_coclass_one_families_are_constant_and_distinct() {
    let t0 = Instant::now();
    let two = corpus(2);
    let sig = |name: &str| {
        let g = &two.iter().find(|e| e.group.name() == name).unwrap().group;
        let dims = minres_dims(g, 8).dims;
        let kdim = powerful_cohom(g).unwrap().relation_kernel_dim;
        (dims, kdim)
    };
    let families: [Vec<&str>; 3] = [
        vec!["D16", "D32", "D64"],
        vec!["SD16", "SD32", "SD64"],
        vec!["Q16", "Q32", "Q64"],
    ];
    let mut reference = Vec::new();
    for members in &families {
        let first = sig(members[0]);
        for name in &members[1..] {
            assert_eq!(sig(name), first, "{name} differs within its family");
        }
        reference.push(first);
    }
    for a in 0..3 {
        for b in a + 1..3 {
            assert_ne!(reference[a], reference[b], "families {a} and {b} coincide");
        }
    }
    announce(7, "coclass-1 families constant within and distinct between", t0);
}

#[test]
fn criterion_08_truncated_series_identities() {
    let t0 = Instant::now();
    for a in 0..=20usize {
        for b in 0..=(20 - a) {
            let lhs = series_mul(&series_geom(a, 20), &series_geom(b, 20), 20);
            assert_eq!(lhs, series_geom(a + b, 20), "a={a} b={b}");
        }
    }
    for (p, r) in [(2u8, 1usize), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 2), (5, 3)] {
        let u = series_geom(r, 8);
        let v = series_geom(tower_index_bound_exp(p, r), 8);
        let prod = lhs_e2_bound(&u, &v, 8);
        for i in 0..=8usize {
            assert_eq!(prod.coeffs[i], gt_bound(p, r, i), "p={p} r={r} degree {i}");
        }
    }
    announce(8, "geometric series product and page bound identities", t0);
}

#[test]
fn criterion_09_invariant_polynomials_fixed_by_all_generators() {
    let t0 = Instant::now();
    for p in [2u8, 3] {
        for n in 1..=3usize {
            let set = dickson(p, n).expect("invariants in range");
            for i in 0..n {
                let expected = (p as usize).pow(n as u32) - (p as usize).pow(i as u32);
                assert_eq!(set.poly_degrees[i], expected, "p={p} n={n} i={i} degree");
                let f = &set.polys[i];
                for m in f.keys() {
                    let total: usize = m.iter().map(|&e| e as usize).sum();
                    assert_eq!(total, expected, "p={p} n={n} i={i} homogeneity");
                }
                for mat in gl_generators(p, n) {
                    assert_eq!(substitute(p, n, f, &mat), *f, "p={p} n={n} i={i} invariance");
                }
            }
        }
    }
    announce(9, "invariant polynomials fixed with the right degrees", t0);
}

#[test]
fn criterion_10_reports_byte_identical_across_thread_counts() {
    let t0 = Instant::now();
    let cfg = |threads: usize| VerifyConfig {
        source: Source::Builtin(2),
        opts: Options::default(),
        threads,
    };
    let one = run_verify(&cfg(1)).expect("single-thread run");
    let eight = run_verify(&cfg(8)).expect("eight-thread run");
    assert!(!one.failed(), "single-thread verification failed");
    assert!(!eight.failed(), "eight-thread verification failed");
    assert_eq!(report_json(&one), report_json(&eight), "JSON reports differ");
    assert_eq!(report_csv(&one), report_csv(&eight), "CSV reports differ");
    assert!(t0.elapsed() < Duration::from_secs(900), "criterion 10 over its time budget");
    announce(10, "reports byte-identical for 1 and 8 threads", t0);
}
