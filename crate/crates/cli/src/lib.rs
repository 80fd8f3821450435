//! Driver library behind the `pcoh` binary: per-group analysis records,
//! the check registry, corpus verification runs, and the JSON/CSV report
//! writers.
//!
//! Everything here is deterministic: records are produced in a fixed order,
//! JSON objects serialize with sorted keys, and CSV rows are sorted by
//! (group name, check id). Reports are byte-identical across thread counts
//! unless per-group timings are explicitly requested.

pub mod record;
pub mod verify;

pub use record::{build_record, group_order_exp, Check, GroupRecord, Options, Verdict};
pub use verify::{
    report_csv, report_json, run_verify, Source, VerifyConfig, VerifyReport, CHECK_IDS,
    CORPUS_CHECK_IDS,
};
