//! Per-group analysis: one `GroupRecord` bundles the structure invariants,
//! cohomology dimension data, degree-2 ring verdicts, the characteristic
//! subgroup tower, and the results of every registered per-group check.
//!
//! Failure isolation: a group whose structure analysis errors out still
//! yields a record, with the error message attached and every check marked
//! skipped. Feature-level caps (degree-2 data on large orders) skip only
//! the checks that need the missing data.
//!
//! Witness strings never contain commas, so CSV rows need no quoting.

use pcoh_core::bounds::{gt_bound, order_dim_bound};
use pcoh_core::cohomology::{
    abelian_shape_of, h2_bar_basis, minres_dims, omega_from, param2_from, powerful_from,
    GradedDims, OmegaReport, Param2Report, PowerfulCohomReport,
};
use pcoh_core::pcgroup::{El, PcGroup, StructureInvariants, Subgroup};
use pcoh_core::tower::{characteristic_tower, TowerReport};
use serde_json::{json, Value};

// === options ===

/// Knobs shared by the analysis subcommands and the verify runner.
#[derive(Clone, Debug)]
pub struct Options {
    /// Highest cohomological degree computed (inclusive).
    pub max_degree: usize,
    /// Overrides the rank parameter fed to the tower construction.
    pub rank_override: Option<usize>,
    /// Echoed into reports; derived data is certified seed-independent.
    pub seed: u64,
    /// Attach wall-clock millis per group. Off by default: timing values
    /// vary run to run and would break byte-level report comparison.
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_degree: 8, rank_override: None, seed: 0, timings: false }
    }
}

// === check registry ===

/// Outcome of one registered check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The claim could not be decided with the data available (for the
    /// tower: the hom search capped out and a stand-in kernel was used).
    Inconclusive,
    /// A precondition ruled the check out for this group.
    Skipped,
}

impl Verdict {
    #[must_use]
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Skipped => "skipped",
        }
    }
}

/// One check result; `witness` is empty on a pass and explains the outcome
/// otherwise.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: &'static str,
    pub verdict: Verdict,
    pub witness: String,
}

impl Check {
    pub(crate) fn pass(id: &'static str) -> Self {
        Check { id, verdict: Verdict::Pass, witness: String::new() }
    }

    pub(crate) fn fail(id: &'static str, witness: String) -> Self {
        Check { id, verdict: Verdict::Fail, witness }
    }

    pub(crate) fn inconclusive(id: &'static str, witness: String) -> Self {
        Check { id, verdict: Verdict::Inconclusive, witness }
    }

    pub(crate) fn skipped(id: &'static str, witness: String) -> Self {
        Check { id, verdict: Verdict::Skipped, witness }
    }
}

// === record ===

/// Everything computed for one group, plus its check outcomes.
#[derive(Clone, Debug)]
pub struct GroupRecord {
    pub name: String,
    pub p: u8,
    pub order_exp: usize,
    pub structure: Option<StructureInvariants>,
    pub abelian: Option<bool>,
    pub powerful_def: Option<bool>,
    pub p_central: Option<bool>,
    pub dims: Option<GradedDims>,
    pub powerful: Option<PowerfulCohomReport>,
    pub omega: Option<OmegaReport>,
    pub param2: Option<Param2Report>,
    pub shape_abelian: Option<bool>,
    pub tower: Result<TowerReport, String>,
    pub checks: Vec<Check>,
    pub error: Option<String>,
    pub millis: Option<u128>,
}

/// log_p of the group order.
#[must_use]
pub fn group_order_exp(g: &PcGroup) -> usize {
    let mut s = g.size();
    let mut e = 0;
    while s > 1 {
        s /= g.p() as usize;
        e += 1;
    }
    e
}

/// A record whose analysis never ran: load or validation failed upstream.
#[must_use]
pub fn error_record(name: &str, message: String) -> GroupRecord {
    let checks = CHECK_IDS
        .iter()
        .map(|id| Check::skipped(id, format!("analysis aborted: {}", sanitize(&message))))
        .collect();
    GroupRecord {
        name: name.to_string(),
        p: 0,
        order_exp: 0,
        structure: None,
        abelian: None,
        powerful_def: None,
        p_central: None,
        dims: None,
        powerful: None,
        omega: None,
        param2: None,
        shape_abelian: None,
        tower: Err(message.clone()),
        checks,
        error: Some(message),
        millis: None,
    }
}

pub use crate::verify::CHECK_IDS;

/// Replaces commas so witness text stays CSV-safe.
fn sanitize(s: &str) -> String {
    s.replace(',', ";")
}

fn bools(v: &[bool]) -> String {
    let parts: Vec<&str> = v.iter().map(|&b| if b { "true" } else { "false" }).collect();
    format!("[{}]", parts.join(" "))
}

/// Full analysis pipeline for one validated group.
#[must_use]
pub fn build_record(g: &PcGroup, opts: &Options) -> GroupRecord {
    let start = std::time::Instant::now();
    let name = g.name().to_string();
    let p = g.p();
    let order_exp = group_order_exp(g);

    let structure = match g.structure_invariants() {
        Ok(s) => s,
        Err(e) => {
            let mut rec = error_record(&name, e.to_string());
            rec.p = p;
            rec.order_exp = order_exp;
            rec.millis = opts.timings.then(|| start.elapsed().as_millis());
            return rec;
        }
    };

    let abelian = g.is_abelian();
    let powerful_def = g.is_powerful();
    let p_central = g.is_p_central();
    let dims = minres_dims(g, opts.max_degree);

    // One degree-2 basis feeds all three ring verdicts.
    let basis = h2_bar_basis(g).map_err(|e| sanitize(&e.to_string()));
    let powerful = basis.as_ref().map(|b| powerful_from(g, b)).map_err(String::clone);
    let omega = basis.as_ref().map(|b| omega_from(g, b)).map_err(String::clone);
    let param2 = if p == 2 {
        Err("even prime".to_string())
    } else {
        basis.as_ref().map(|b| param2_from(g, b)).map_err(String::clone)
    };
    // Same semantics as the library-level shape check, without recomputing
    // the resolution: both projections when degree-2 data exists, the
    // dimension projection alone past the cap.
    let shape_abelian =
        abelian_shape_of(&dims) && powerful.as_ref().map_or(true, |rep| rep.verdict);
    let tower = characteristic_tower(g, opts.rank_override).map_err(|e| e.to_string());

    let mut checks = Vec::with_capacity(CHECK_IDS.len());
    checks.push(check_dim_bound(order_exp, &dims));
    checks.push(check_gt_bound(p, structure.rank, &dims));
    checks.push(check_tower(&tower));
    checks.push(check_powerful_eq(powerful_def, &powerful));
    checks.push(check_omega_crit(abelian, &omega));
    checks.push(check_char12(shape_abelian, powerful_def, &omega));
    checks.push(check_char3(p, powerful_def, &omega, &param2));
    debug_assert!(checks.iter().map(|c| c.id).eq(CHECK_IDS.iter().copied()));

    GroupRecord {
        name,
        p,
        order_exp,
        structure: Some(structure),
        abelian: Some(abelian),
        powerful_def: Some(powerful_def),
        p_central: Some(p_central),
        dims: Some(dims),
        powerful: powerful.ok(),
        omega: omega.ok(),
        param2: param2.ok(),
        shape_abelian: Some(shape_abelian),
        tower,
        checks,
        error: None,
        millis: opts.timings.then(|| start.elapsed().as_millis()),
    }
}

// === individual checks ===

/// LE-DIMBOUND: dims[i] never exceeds the order-derived binomial bound.
fn check_dim_bound(order_exp: usize, dims: &GradedDims) -> Check {
    const ID: &str = "LE-DIMBOUND";
    for (i, &d) in dims.dims.iter().enumerate() {
        let bound = order_dim_bound(order_exp, i);
        if d as u64 > bound {
            return Check::fail(ID, format!("degree {i}: dim {d} > bound {bound}"));
        }
    }
    Check::pass(ID)
}

/// GT-BOUND: dims[i] never exceeds the rank-derived binomial bound.
fn check_gt_bound(p: u8, rank: usize, dims: &GradedDims) -> Check {
    const ID: &str = "GT-BOUND";
    for (i, &d) in dims.dims.iter().enumerate() {
        let bound = gt_bound(p, rank, i);
        if d as u64 > bound {
            return Check::fail(ID, format!("degree {i}: dim {d} > bound {bound} at rank {rank}"));
        }
    }
    Check::pass(ID)
}

/// TOWER-THM4: the tower subgroup satisfies all five claimed conclusions.
/// A capped hom search means the kernel is only a stand-in, so nothing can
/// be concluded either way.
fn check_tower(tower: &Result<TowerReport, String>) -> Check {
    const ID: &str = "TOWER-THM4";
    let rep = match tower {
        Ok(rep) => rep,
        Err(e) => return Check::skipped(ID, format!("tower unavailable: {}", sanitize(e))),
    };
    if rep.fallback_used {
        return Check::inconclusive(
            ID,
            "hom search capped; conclusions checked against a stand-in kernel".to_string(),
        );
    }
    let mut bad = Vec::new();
    if !rep.n_powerful {
        bad.push("powerful");
    }
    if !rep.n_p_central {
        bad.push("p-central");
    }
    if !rep.n_omega_extendible {
        bad.push("omega-extendible");
    }
    if !rep.n_rank_le_r {
        bad.push("rank");
    }
    if rep.index_exp > rep.bound_exp {
        bad.push("index");
    }
    if bad.is_empty() {
        Check::pass(ID)
    } else {
        Check::fail(
            ID,
            format!(
                "violated: {} (index_exp {} bound_exp {})",
                bad.join(";"),
                rep.index_exp,
                rep.bound_exp
            ),
        )
    }
}

/// POWERFUL-EQ: the degree-2 relation criterion agrees with the
/// commutator-power definition of a powerful group.
fn check_powerful_eq(powerful_def: bool, rep: &Result<PowerfulCohomReport, String>) -> Check {
    const ID: &str = "POWERFUL-EQ";
    match rep {
        Err(e) => Check::skipped(ID, e.clone()),
        Ok(r) if r.verdict == powerful_def => Check::pass(ID),
        Ok(r) => Check::fail(
            ID,
            format!(
                "definition says {powerful_def}; ring data says {} (kernel {} dying squares {})",
                r.verdict, r.relation_kernel_dim, r.dying_square_dim
            ),
        ),
    }
}

/// OMEGA-CRIT: the per-subgroup restriction tests agree with each other,
/// and an abelian group always passes the criterion.
fn check_omega_crit(abelian: bool, rep: &Result<OmegaReport, String>) -> Check {
    const ID: &str = "OMEGA-CRIT";
    match rep {
        Err(e) => Check::skipped(ID, e.clone()),
        Ok(r) => {
            if !r.agree {
                Check::fail(ID, format!("restrictions disagree: {}", bools(&r.per_subgroup)))
            } else if abelian && !r.verdict {
                Check::fail(ID, "abelian group failed the restriction criterion".to_string())
            } else {
                Check::pass(ID)
            }
        }
    }
}

/// COHOMCHAR-12: the dimension sequence has abelian shape exactly when the
/// group is powerful with extendible duals.
fn check_char12(shape: bool, powerful_def: bool, omega: &Result<OmegaReport, String>) -> Check {
    const ID: &str = "COHOMCHAR-12";
    match omega {
        Err(e) => Check::skipped(ID, e.clone()),
        Ok(o) => {
            let expected = powerful_def && o.verdict;
            if shape == expected {
                Check::pass(ID)
            } else {
                Check::fail(
                    ID,
                    format!("shape {shape} vs powerful {powerful_def} and extendible {}", o.verdict),
                )
            }
        }
    }
}

/// COHOMCHAR-3: for odd p the degree-2 parametrization verdict matches
/// powerful plus extendible duals.
fn check_char3(
    p: u8,
    powerful_def: bool,
    omega: &Result<OmegaReport, String>,
    param2: &Result<Param2Report, String>,
) -> Check {
    const ID: &str = "COHOMCHAR-3";
    if p == 2 {
        return Check::skipped(ID, "even prime".to_string());
    }
    match (omega, param2) {
        (Err(e), _) => Check::skipped(ID, e.clone()),
        (_, Err(e)) => Check::skipped(ID, e.clone()),
        (Ok(o), Ok(pr)) => {
            let expected = powerful_def && o.verdict;
            if pr.verdict == expected {
                Check::pass(ID)
            } else {
                Check::fail(
                    ID,
                    format!(
                        "parametrization {} vs powerful {powerful_def} and extendible {} \
                         (relation {} restrictions {})",
                        pr.verdict,
                        o.verdict,
                        pr.relation_ok,
                        bools(&pr.per_subgroup)
                    ),
                )
            }
        }
    }
}

// === serialization ===

/// Small generating list for a subgroup, for display: greedily extends
/// until the generated subgroup closes up.
#[must_use]
pub fn small_gens(g: &PcGroup, sub: &Subgroup) -> Vec<El> {
    let mut gens = Vec::new();
    let mut have = g.trivial_subgroup();
    for &x in &sub.elems {
        if x != 0 && !have.contains(x) {
            gens.push(x);
            have = g.subgroup_generated(&gens);
            if have.order() == sub.order() {
                break;
            }
        }
    }
    gens
}

fn subgroup_json(g: &PcGroup, sub: &Subgroup) -> Value {
    let gens: Vec<String> = small_gens(g, sub).iter().map(|&x| g.format_element(x)).collect();
    json!({ "order": sub.order(), "gens": gens })
}

/// Tower report as JSON, with subgroup orders and generator lists.
#[must_use]
pub fn tower_json(g: &PcGroup, rep: &TowerReport) -> Value {
    json!({
        "r": rep.r,
        "v": subgroup_json(g, &rep.v),
        "h": subgroup_json(g, &rep.h),
        "n": subgroup_json(g, &rep.n),
        "n_powerful": rep.n_powerful,
        "n_p_central": rep.n_p_central,
        "n_omega_extendible": rep.n_omega_extendible,
        "n_rank": rep.n_rank,
        "n_rank_le_r": rep.n_rank_le_r,
        "index_exp": rep.index_exp,
        "bound_exp": rep.bound_exp,
        "fallback_used": rep.fallback_used,
    })
}

fn checks_json(checks: &[Check]) -> Value {
    let mut m = serde_json::Map::new();
    for c in checks {
        m.insert(
            c.id.to_string(),
            json!({ "verdict": c.verdict.as_str(), "witness": c.witness }),
        );
    }
    Value::Object(m)
}

/// Whole record as a JSON object with sorted keys. The tower serializes
/// with generator lists when the source group is supplied.
#[must_use]
pub fn record_json(rec: &GroupRecord, group: Option<&PcGroup>) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("name".into(), json!(rec.name));
    m.insert("p".into(), json!(rec.p));
    m.insert("order_exp".into(), json!(rec.order_exp));
    match &rec.structure {
        Some(s) => {
            m.insert("d".into(), json!(s.d));
            m.insert("rank".into(), json!(s.rank));
            m.insert("class".into(), json!(s.class));
            m.insert("coclass".into(), json!(s.coclass));
            m.insert("exponent".into(), json!(s.exponent));
        }
        None => {
            for k in ["d", "rank", "class", "coclass", "exponent"] {
                m.insert(k.into(), Value::Null);
            }
        }
    }
    m.insert("abelian".into(), json!(rec.abelian));
    m.insert("powerful".into(), json!(rec.powerful_def));
    m.insert("p_central".into(), json!(rec.p_central));
    m.insert(
        "dims".into(),
        rec.dims.as_ref().map_or(Value::Null, |d| json!(d.dims)),
    );
    m.insert(
        "dims_truncated_at".into(),
        rec.dims.as_ref().map_or(Value::Null, |d| json!(d.truncated_at)),
    );
    m.insert(
        "powerful_cohom".into(),
        rec.powerful.as_ref().map_or(Value::Null, |r| {
            json!({
                "verdict": r.verdict,
                "relation_kernel_dim": r.relation_kernel_dim,
                "dying_square_dim": r.dying_square_dim,
            })
        }),
    );
    m.insert(
        "omega".into(),
        rec.omega.as_ref().map_or(Value::Null, |r| {
            json!({ "verdict": r.verdict, "agree": r.agree, "per_subgroup": r.per_subgroup })
        }),
    );
    m.insert(
        "param2".into(),
        rec.param2.as_ref().map_or(Value::Null, |r| {
            json!({
                "verdict": r.verdict,
                "relation_ok": r.relation_ok,
                "per_subgroup": r.per_subgroup,
            })
        }),
    );
    m.insert("shape_abelian".into(), json!(rec.shape_abelian));
    m.insert(
        "tower".into(),
        match (&rec.tower, group) {
            (Ok(rep), Some(g)) => tower_json(g, rep),
            (Ok(rep), None) => json!({
                "r": rep.r,
                "index_exp": rep.index_exp,
                "bound_exp": rep.bound_exp,
                "fallback_used": rep.fallback_used,
            }),
            (Err(_), _) => Value::Null,
        },
    );
    m.insert("checks".into(), checks_json(&rec.checks));
    m.insert("error".into(), json!(rec.error));
    if let Some(ms) = rec.millis {
        m.insert("millis".into(), json!(ms));
    }
    Value::Object(m)
}
