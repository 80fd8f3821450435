//! Corpus verification: load a built-in corpus or a directory of group
//! files, analyze every group, run the corpus-level checks, and serialize
//! one report as JSON or CSV.
//!
//! Ordering contract: groups keep their corpus (or filename) order in the
//! JSON report; CSV rows are sorted by (name, check id). Worker threads
//! only change who computes a record, never its content or position, so
//! reports are byte-identical for any `--threads` value.

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use anyhow::{bail, Context};
use pcoh_core::bounds::{
    dickson, gl_generators, gt_bound, lhs_e2_bound, series_geom, series_mul, substitute,
    tower_index_bound_exp,
};
use pcoh_core::corpus::default_corpus;
use pcoh_core::pcgroup::{PcGroup, PcPresentation};
use serde_json::{json, Value};

use crate::record::{build_record, error_record, record_json, Check, GroupRecord, Options, Verdict};

/// Per-group check ids, in registry order.
pub const CHECK_IDS: [&str; 7] = [
    "LE-DIMBOUND",
    "GT-BOUND",
    "TOWER-THM4",
    "POWERFUL-EQ",
    "OMEGA-CRIT",
    "COHOMCHAR-12",
    "COHOMCHAR-3",
];

/// Corpus-level check ids, in registry order.
pub const CORPUS_CHECK_IDS: [&str; 3] = ["FAMILY-CONST", "VANDERMONDE", "DICKSON-INV"];

// === configuration ===

/// Where the groups come from.
#[derive(Clone, Debug)]
pub enum Source {
    /// The fixed corpus for one prime.
    Builtin(u32),
    /// Every `*.json` file in a directory, `manifest.json` excluded.
    Dir(PathBuf),
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub source: Source,
    pub opts: Options,
    pub threads: usize,
}

/// One verification run: per-group entries (group absent when its file
/// failed to load) plus the corpus-level check results.
pub struct VerifyReport {
    pub label: String,
    /// Prime for built-in runs, 0 for directory runs.
    pub p: u32,
    pub max_degree: usize,
    pub seed: u64,
    pub entries: Vec<(Option<PcGroup>, GroupRecord)>,
    pub corpus_checks: Vec<Check>,
}

impl VerifyReport {
    /// True when any check failed or any group errored out.
    #[must_use]
    pub fn failed(&self) -> bool {
        let rec_bad = self
            .entries
            .iter()
            .any(|(_, r)| r.error.is_some() || r.checks.iter().any(|c| c.verdict == Verdict::Fail));
        rec_bad || self.corpus_checks.iter().any(|c| c.verdict == Verdict::Fail)
    }
}

// === worker pool ===

/// Applies `f` to every item on `threads` workers; the output order always
/// matches the input order.
fn pool_map<T, R, F>(items: &[T], threads: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let threads = threads.max(1).min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<(usize, R)>();
    let fr = &f;
    let nr = &next;
    std::thread::scope(|s| {
        for _ in 0..threads {
            let tx = tx.clone();
            s.spawn(move || loop {
                let i = nr.fetch_add(1, Ordering::SeqCst);
                if i >= items.len() {
                    break;
                }
                let r = fr(&items[i]);
                if tx.send((i, r)).is_err() {
                    break;
                }
            });
        }
    });
    drop(tx);
    let mut out: Vec<Option<R>> = items.iter().map(|_| None).collect();
    for (i, r) in rx {
        out[i] = Some(r);
    }
    out.into_iter().map(|o| o.expect("worker produced every slot")).collect()
}

// === loading ===

enum Loaded {
    Group(PcGroup),
    Failed { name: String, message: String },
}

fn load_builtin(p: u32) -> anyhow::Result<Vec<Loaded>> {
    let corpus = default_corpus(p).with_context(|| format!("building the corpus for p = {p}"))?;
    Ok(corpus.into_iter().map(|e| Loaded::Group(e.group)).collect())
}

fn load_dir(dir: &PathBuf) -> anyhow::Result<Vec<Loaded>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let path = entry?.path();
        let is_json = path.extension().is_some_and(|e| e == "json");
        let is_manifest = path.file_name().is_some_and(|n| n == "manifest.json");
        if is_json && !is_manifest {
            files.push(path);
        }
    }
    if files.is_empty() {
        bail!("no group files in {}", dir.display());
    }
    files.sort();
    let mut out = Vec::new();
    for path in files {
        let stem = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        match std::fs::read_to_string(&path) {
            Err(e) => out.push(Loaded::Failed { name: stem, message: e.to_string() }),
            Ok(s) => match PcPresentation::from_json_str(&s).and_then(PcPresentation::validate) {
                Ok(g) => out.push(Loaded::Group(g)),
                Err(e) => out.push(Loaded::Failed { name: stem, message: e.to_string() }),
            },
        }
    }
    Ok(out)
}

// === corpus-level checks ===

/// Family series key: (family index, order) for names like D16, SD32, Q64.
fn family_key(name: &str) -> Option<(usize, u64)> {
    let (idx, rest) = if let Some(r) = name.strip_prefix("SD") {
        (1, r)
    } else if let Some(r) = name.strip_prefix('D') {
        (0, r)
    } else if let Some(r) = name.strip_prefix('Q') {
        (2, r)
    } else {
        return None;
    };
    let order: u64 = rest.parse().ok()?;
    ((16..=64).contains(&order) && order.is_power_of_two()).then_some((idx, order))
}

/// FAMILY-CONST: within each 2-power family series the dimension sequence
/// and the degree-2 relation kernel are constant across orders 16..64, and
/// the three families stay pairwise distinct.
fn check_family_const(records: &[GroupRecord]) -> Check {
    const ID: &str = "FAMILY-CONST";
    const FAMILY: [&str; 3] = ["D", "SD", "Q"];
    let mut sigs: [Vec<(String, Vec<usize>, usize)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for rec in records {
        let Some((idx, _)) = family_key(&rec.name) else { continue };
        let (Some(dims), Some(pow)) = (&rec.dims, &rec.powerful) else {
            return Check::inconclusive(ID, format!("{} lacks dimension or kernel data", rec.name));
        };
        sigs[idx].push((rec.name.clone(), dims.dims.clone(), pow.relation_kernel_dim));
    }
    let present: Vec<usize> = (0..3).filter(|&i| sigs[i].len() >= 2).collect();
    if present.len() < 2 {
        return Check::skipped(ID, "no family series in this corpus".to_string());
    }
    for &i in &present {
        let (first_name, dims0, k0) = &sigs[i][0];
        for (name, dims, k) in &sigs[i][1..] {
            if dims != dims0 || k != k0 {
                return Check::fail(
                    ID,
                    format!("family {}: {} and {} differ", FAMILY[i], first_name, name),
                );
            }
        }
    }
    for a in 0..present.len() {
        for b in a + 1..present.len() {
            let (i, j) = (present[a], present[b]);
            let (_, da, ka) = &sigs[i][0];
            let (_, db, kb) = &sigs[j][0];
            if da == db && ka == kb {
                return Check::fail(
                    ID,
                    format!("families {} and {} share a signature", FAMILY[i], FAMILY[j]),
                );
            }
        }
    }
    Check::pass(ID)
}

/// VANDERMONDE: truncated geometric series multiply by adding exponents,
/// and the page-bound product reproduces the rank-derived bound.
fn check_vandermonde() -> Check {
    const ID: &str = "VANDERMONDE";
    const KMAX: usize = 20;
    for a in 0..=KMAX {
        for b in 0..=(KMAX - a) {
            let lhs = series_mul(&series_geom(a, KMAX), &series_geom(b, KMAX), KMAX);
            if lhs != series_geom(a + b, KMAX) {
                return Check::fail(ID, format!("geometric product broke at a={a} b={b}"));
            }
        }
    }
    for (p, r) in [(2u8, 1usize), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2)] {
        let u = series_geom(r, 8);
        let v = series_geom(tower_index_bound_exp(p, r), 8);
        let prod = lhs_e2_bound(&u, &v, 8);
        for i in 0..=8usize {
            if prod.coeffs[i] != gt_bound(p, r, i) {
                return Check::fail(ID, format!("page bound broke at p={p} r={r} degree {i}"));
            }
        }
    }
    Check::pass(ID)
}

/// DICKSON-INV: every generator-fixed polynomial comes out homogeneous of
/// the expected degree and invariant under the full matrix group.
fn check_dickson() -> Check {
    const ID: &str = "DICKSON-INV";
    for p in [2u8, 3] {
        for n in 1..=3usize {
            let d = match dickson(p, n) {
                Ok(d) => d,
                Err(e) => {
                    return Check::fail(ID, format!("p={p} n={n}: {}", e.to_string().replace(',', ";")))
                }
            };
            for i in 0..n {
                let expected = (p as usize).pow(n as u32) - (p as usize).pow(i as u32);
                if d.poly_degrees[i] != expected {
                    return Check::fail(
                        ID,
                        format!("p={p} n={n} i={i}: degree {} not {expected}", d.poly_degrees[i]),
                    );
                }
                let f = &d.polys[i];
                let homogeneous =
                    f.keys().all(|m| m.iter().map(|&e| e as usize).sum::<usize>() == expected);
                if !homogeneous {
                    return Check::fail(ID, format!("p={p} n={n} i={i}: not homogeneous"));
                }
                for mat in gl_generators(p, n) {
                    if substitute(p, n, f, &mat) != *f {
                        return Check::fail(ID, format!("p={p} n={n} i={i}: moved by a generator"));
                    }
                }
            }
        }
    }
    Check::pass(ID)
}

// === runner ===

/// Runs one full verification pass.
pub fn run_verify(cfg: &VerifyConfig) -> anyhow::Result<VerifyReport> {
    let (label, p, loaded) = match &cfg.source {
        Source::Builtin(p) => (format!("builtin p={p}"), *p, load_builtin(*p)?),
        Source::Dir(d) => (format!("dir {}", d.display()), 0, load_dir(d)?),
    };
    let entries: Vec<(Option<PcGroup>, GroupRecord)> =
        pool_map(&loaded, cfg.threads, |item| match item {
            Loaded::Group(g) => (Some(g.clone()), build_record(g, &cfg.opts)),
            Loaded::Failed { name, message } => (None, error_record(name, message.clone())),
        });
    let records: Vec<GroupRecord> = entries.iter().map(|(_, r)| r.clone()).collect();
    let corpus_checks = vec![check_family_const(&records), check_vandermonde(), check_dickson()];
    debug_assert!(corpus_checks.iter().map(|c| c.id).eq(CORPUS_CHECK_IDS.iter().copied()));
    Ok(VerifyReport {
        label,
        p,
        max_degree: cfg.opts.max_degree,
        seed: cfg.opts.seed,
        entries,
        corpus_checks,
    })
}

// === report writers ===

fn verdict_counts(report: &VerifyReport) -> [usize; 4] {
    let mut counts = [0usize; 4];
    let all = report
        .entries
        .iter()
        .flat_map(|(_, r)| r.checks.iter())
        .chain(report.corpus_checks.iter());
    for c in all {
        let slot = match c.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
            Verdict::Skipped => 3,
        };
        counts[slot] += 1;
    }
    counts
}

/// Whole report as pretty JSON with sorted keys and a trailing newline.
#[must_use]
pub fn report_json(report: &VerifyReport) -> String {
    let groups: Vec<Value> =
        report.entries.iter().map(|(g, r)| record_json(r, g.as_ref())).collect();
    let mut checks = serde_json::Map::new();
    for c in &report.corpus_checks {
        checks.insert(
            c.id.to_string(),
            json!({ "verdict": c.verdict.as_str(), "witness": c.witness }),
        );
    }
    let [pass, fail, inconclusive, skipped] = verdict_counts(report);
    let errors = report.entries.iter().filter(|(_, r)| r.error.is_some()).count();
    let v = json!({
        "corpus": report.label,
        "max_degree": report.max_degree,
        "seed": report.seed,
        "groups": groups,
        "checks": Value::Object(checks),
        "summary": {
            "groups": report.entries.len(),
            "group_errors": errors,
            "checks_passed": pass,
            "checks_failed": fail,
            "checks_inconclusive": inconclusive,
            "checks_skipped": skipped,
        },
    });
    let mut s = serde_json::to_string_pretty(&v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Whole report as CSV, rows sorted by (name, check id).
#[must_use]
pub fn report_csv(report: &VerifyReport) -> String {
    let mut rows: Vec<[String; 6]> = Vec::new();
    for (_, rec) in &report.entries {
        for c in &rec.checks {
            rows.push([
                rec.name.clone(),
                rec.p.to_string(),
                rec.order_exp.to_string(),
                c.id.to_string(),
                c.verdict.as_str().to_string(),
                c.witness.clone(),
            ]);
        }
    }
    for c in &report.corpus_checks {
        rows.push([
            "corpus".to_string(),
            report.p.to_string(),
            "0".to_string(),
            c.id.to_string(),
            c.verdict.as_str().to_string(),
            c.witness.clone(),
        ]);
    }
    rows.sort_by(|a, b| (&a[0], &a[3]).cmp(&(&b[0], &b[3])));
    let mut out = String::from("name,p,order_exp,check,verdict,witness\n");
    for row in rows {
        let fields: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}
