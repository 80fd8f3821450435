//! `pcoh`: structure and mod-p cohomology invariants of finite p-groups.
//!
//! Exit codes: 0 all requested checks passed, 1 a check failed or a group
//! errored out, 2 bad input or usage.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use pcoh_core::bounds::{
    chern_param_bound, dickson, evens_degree_bound, gt_bound, lhs_e2_bound, order_dim_bound,
    series_geom, tower_index_bound_exp,
};
use pcoh_core::cohomology::bar::{h2_bar_basis_seeded, low_degree_dims, BASE_SEED};
use pcoh_core::cohomology::{minres_dims, powerful_cohom, BAR3_ORDER_CAP};
use pcoh_core::corpus::default_corpus;
use pcoh_core::pcgroup::{PcGroup, PcPresentation};
use pcoh_core::tower::characteristic_tower;
use pcoh_cli::record::{build_record, record_json, tower_json, Options, Verdict};
use pcoh_cli::verify::{report_csv, report_json, run_verify, Source, VerifyConfig};
use serde_json::{json, Value};

// === argument surface ===

#[derive(Parser)]
#[command(
    name = "pcoh",
    version,
    about = "Structure and mod-p cohomology invariants of finite p-groups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one group file: invariants, dimensions, verdicts, checks.
    Analyze {
        /// Group presentation file.
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Rank parameter for the tower (defaults to the computed rank).
        #[arg(long)]
        rank_override: Option<usize>,
        /// Echoed into the report; results are seed-independent.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 when any check fails.
        #[arg(long)]
        strict: bool,
        /// Attach per-group wall-clock millis (breaks byte determinism).
        #[arg(long)]
        timings: bool,
    },
    /// Compute the characteristic subgroup tower of one group file.
    Tower {
        file: PathBuf,
        #[arg(long)]
        rank_override: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cohomology dimensions and degree-2 ring data of one group file.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        /// Mixed into the internal compression seed; dimensions are
        /// certified and do not depend on it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the closed-form bounds without any group input.
    Bounds {
        #[arg(long)]
        p: u8,
        /// Rank parameter.
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Order exponent, |G| = p^n.
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Subgroup index for the polynomial-generation degree bound.
        #[arg(long, default_value_t = 1)]
        index: u64,
        /// Parameter count for the Chern-class bound.
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a whole corpus and emit one report.
    Verify {
        /// Use the built-in corpus for this prime.
        #[arg(long, conflicts_with = "dir")]
        builtin: Option<u32>,
        /// Use every *.json group file in this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        rank_override: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Attach per-group wall-clock millis (breaks byte determinism).
        #[arg(long)]
        timings: bool,
    },
    /// Corpus utilities.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Write the built-in corpus for one prime as group files plus a
    /// manifest. Rerunning into the same directory is byte-identical.
    Generate {
        #[arg(long)]
        p: u32,
        /// Target directory, created if missing.
        #[arg(long)]
        out: PathBuf,
    },
}

// === helpers ===

fn load_group(path: &PathBuf) -> anyhow::Result<PcGroup> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    PcPresentation::from_json_str(&s)
        .and_then(PcPresentation::validate)
        .with_context(|| format!("loading {}", path.display()))
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("value serializes");
    s.push('\n');
    s
}

// === subcommand bodies ===

fn cmd_analyze(
    file: &PathBuf,
    opts: &Options,
    format: Format,
    out: Option<&PathBuf>,
    strict: bool,
) -> anyhow::Result<ExitCode> {
    let g = load_group(file)?;
    let rec = build_record(&g, opts);
    let text = match format {
        Format::Json => pretty(&record_json(&rec, Some(&g))),
        Format::Csv => {
            let mut s = String::from("name,p,order_exp,check,verdict,witness\n");
            let mut checks = rec.checks.clone();
            checks.sort_by(|a, b| a.id.cmp(b.id));
            for c in &checks {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    rec.name,
                    rec.p,
                    rec.order_exp,
                    c.id,
                    c.verdict.as_str(),
                    c.witness
                ));
            }
            s
        }
    };
    emit(&text, out)?;
    let bad = rec.error.is_some() || rec.checks.iter().any(|c| c.verdict == Verdict::Fail);
    Ok(if strict && bad { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_tower(
    file: &PathBuf,
    rank_override: Option<usize>,
    out: Option<&PathBuf>,
) -> anyhow::Result<ExitCode> {
    let g = load_group(file)?;
    let rep = characteristic_tower(&g, rank_override).context("building the tower")?;
    let mut v = tower_json(&g, &rep);
    let m = v.as_object_mut().expect("tower serializes to an object");
    m.insert("name".into(), json!(g.name()));
    m.insert("p".into(), json!(g.p()));
    emit(&pretty(&v), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_cohomology(
    file: &PathBuf,
    max_degree: usize,
    seed: u64,
    out: Option<&PathBuf>,
) -> anyhow::Result<ExitCode> {
    let g = load_group(file)?;
    let dims = minres_dims(&g, max_degree);
    let pres = h2_bar_basis_seeded(&g, BASE_SEED ^ seed).ok();
    let bar_low = if g.size() <= BAR3_ORDER_CAP { low_degree_dims(&g).ok() } else { None };
    let pow = powerful_cohom(&g).ok();
    let v = json!({
        "name": g.name(),
        "p": g.p(),
        "seed": seed,
        "dims": dims.dims,
        "dims_truncated_at": dims.truncated_at,
        "h1_dim": pres.as_ref().map(|r| r.h1_dim()),
        "h2_dim": pres.as_ref().map(|r| r.h2_dim()),
        "z2_dim": pres.as_ref().map(|r| r.z2_dim),
        "b2_dim": pres.as_ref().map(|r| r.b2_dim),
        "bar_low_degrees": bar_low,
        "powerful_cohom": pow.map(|r| json!({
            "verdict": r.verdict,
            "relation_kernel_dim": r.relation_kernel_dim,
            "dying_square_dim": r.dying_square_dim,
        })),
    });
    emit(&pretty(&v), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(
    p: u8,
    r: usize,
    n: usize,
    index: u64,
    q: u64,
    kmax: usize,
    out: Option<&PathBuf>,
) -> anyhow::Result<ExitCode> {
    let order_bounds: Vec<u64> = (0..=kmax).map(|i| order_dim_bound(n, i)).collect();
    let rank_bounds: Vec<u64> = (0..=kmax).map(|i| gt_bound(p, r, i)).collect();
    let bound_exp = tower_index_bound_exp(p, r);
    let page = lhs_e2_bound(&series_geom(r, kmax), &series_geom(bound_exp, kmax), kmax);
    let chern = chern_param_bound(q);
    let dickson_degrees = dickson(p, r).ok().map(|d| {
        json!({ "poly": d.poly_degrees, "cohomology": d.cohom_degrees })
    });
    let v = json!({
        "p": p,
        "r": r,
        "n": n,
        "index": index,
        "q": q,
        "kmax": kmax,
        "order_dim_bound": order_bounds,
        "gt_bound": rank_bounds,
        "tower_index_bound_exp": bound_exp,
        "page_product": page.coeffs,
        "evens_degree_bound": evens_degree_bound(p, n, index),
        "chern": { "count": chern.count, "max_deg": chern.max_deg },
        "dickson_degrees": dickson_degrees,
    });
    emit(&pretty(&v), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(cfg: &VerifyConfig, format: Format, out: Option<&PathBuf>) -> anyhow::Result<ExitCode> {
    let report = run_verify(cfg)?;
    let text = match format {
        Format::Json => report_json(&report),
        Format::Csv => report_csv(&report),
    };
    emit(&text, out)?;
    Ok(if report.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_corpus_generate(p: u32, out: &PathBuf) -> anyhow::Result<ExitCode> {
    let corpus = default_corpus(p).with_context(|| format!("building the corpus for p = {p}"))?;
    std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let mut manifest_groups = Vec::new();
    for entry in &corpus {
        let name = entry.group.name().to_string();
        let path = out.join(format!("{name}.json"));
        std::fs::write(&path, entry.group.to_file_json())
            .with_context(|| format!("writing {}", path.display()))?;
        manifest_groups.push(json!({
            "name": name,
            "file": format!("{name}.json"),
            "family": entry.family.tag(),
            "params": entry.params,
            "order": entry.group.size(),
        }));
    }
    let manifest = json!({ "p": p, "groups": manifest_groups });
    let path = out.join("manifest.json");
    std::fs::write(&path, pretty(&manifest))
        .with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {} group files and manifest.json to {}", corpus.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

// === entry ===

fn run() -> anyhow::Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Analyze { file, max_degree, rank_override, seed, format, out, strict, timings } => {
            let opts = Options { max_degree, rank_override, seed, timings };
            cmd_analyze(&file, &opts, format, out.as_ref(), strict)
        }
        Cmd::Tower { file, rank_override, out } => cmd_tower(&file, rank_override, out.as_ref()),
        Cmd::Cohomology { file, max_degree, seed, out } => {
            cmd_cohomology(&file, max_degree, seed, out.as_ref())
        }
        Cmd::Bounds { p, r, n, index, q, kmax, out } => {
            cmd_bounds(p, r, n, index, q, kmax, out.as_ref())
        }
        Cmd::Verify {
            builtin,
            dir,
            max_degree,
            rank_override,
            threads,
            seed,
            format,
            out,
            timings,
        } => {
            let source = match (builtin, dir) {
                (Some(p), None) => Source::Builtin(p),
                (None, Some(d)) => Source::Dir(d),
                _ => anyhow::bail!("pass exactly one of --builtin <p> or --dir <path>"),
            };
            let opts = Options { max_degree, rank_override, seed, timings };
            cmd_verify(&VerifyConfig { source, opts, threads }, format, out.as_ref())
        }
        Cmd::Corpus { cmd: CorpusCmd::Generate { p, out } } => cmd_corpus_generate(p, &out),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
