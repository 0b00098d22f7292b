use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::{Cache, CacheEntry};
use super::commands::{compute_b0, B0Method, B0Outcome, Caps};
use super::report::{SCHEMA_VERSION, TOOL_VERSION};
use crate::catalog::{corpus, CorpusEntry};
use crate::error::{Error, Result};
use crate::rigidity::{sha_rigid_with, ShaVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

/// Outcome for one corpus group. `b0` and `outc_order` are absent when the
/// corresponding computation hit a cap.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub spec: String,
    pub order: usize,
    pub tags: Vec<String>,
    pub b0_method: Option<String>,
    pub b0: Option<Vec<u64>>,
    pub outc_order: Option<usize>,
    pub status: RowStatus,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyBundle {
    pub schema: u32,
    pub command: String,
    pub max_order: usize,
    pub rows: Vec<VerifyRow>,
    pub summary: VerifySummary,
    pub wall_time_ms: u64,
    pub tool_version: String,
}

impl VerifyBundle {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}

/// `B₀` by the strongest available method: the automatic choice, falling
/// back to cocycles on `G` itself when the Sylow reduction is inconclusive.
fn strongest_b0(entry: &CorpusEntry, caps: &Caps, notes: &mut Vec<String>) -> Result<B0Outcome> {
    let first = compute_b0(&entry.group, B0Method::Auto, caps);
    match first {
        Ok(outcome) if outcome.is_trivial().is_none() => {
            notes.push("sylow reduction inconclusive, cocycles on G".into());
            compute_b0(&entry.group, B0Method::Cocycle, caps)
        }
        other => other,
    }
}

fn verify_entry(entry: &CorpusEntry, caps: &Caps) -> VerifyRow {
    let mut notes = Vec::new();
    let b0 = strongest_b0(entry, caps, &mut notes);
    let rigid = sha_rigid_with(&entry.group, caps.rigidity);

    let mut failed = false;
    let mut complete = true;
    let (b0_method, b0) = match b0 {
        Ok(outcome) => {
            let factors = outcome.invariant_factors().map(<[u64]>::to_vec);
            if factors.as_ref().is_none_or(|f| !f.is_empty()) {
                failed = true;
                notes.push("B0 not shown trivial".into());
            }
            (Some(outcome.method().to_string()), factors)
        }
        Err(e) => {
            complete = false;
            notes.push(format!("b0: {e}"));
            (None, None)
        }
    };
    let outc_order = match rigid {
        Ok(ShaVerdict::Rigid) => Some(1),
        Ok(ShaVerdict::NonRigid { outc_order, .. }) => {
            failed = true;
            notes.push("class-preserving outer automorphism found".into());
            Some(outc_order)
        }
        Err(e) => {
            complete = false;
            notes.push(format!("rigidity: {e}"));
            None
        }
    };
    let status = if failed {
        RowStatus::Fail
    } else if complete {
        RowStatus::Pass
    } else {
        RowStatus::Skipped
    };
    VerifyRow {
        spec: entry.spec.to_string(),
        order: entry.group.order(),
        tags: entry.tags.iter().map(|t| t.label().to_string()).collect(),
        b0_method,
        b0,
        outc_order,
        status,
        notes,
    }
}

/// Checks `B₀ = 0` and Sha-rigidity for every tagged corpus group of order at
/// most `max_order`. Rows follow corpus order. Only errors are cap breaches
/// in individual rows (recorded as SKIPPED) and a corpus beyond its cap.
pub fn verify_theorem(max_order: usize, caps: &Caps, cache: Option<&Cache>) -> Result<VerifyBundle> {
    let start = std::time::Instant::now();
    let entries = corpus(max_order)?;
    let rows: Vec<VerifyRow> = entries
        .par_iter()
        .filter(|e| !e.tags.is_empty())
        .map(|e| {
            let fingerprint = e.group.fingerprint();
            let key = cache.map(|c| c.key("verify-theorem row", "strongest", &[&fingerprint]));
            if let (Some(c), Some(k)) = (cache, &key) {
                if let Some(hit) = c.get(k).and_then(|h| serde_json::from_value::<VerifyRow>(h.result).ok()) {
                    return VerifyRow {
                        spec: e.spec.to_string(),
                        ..hit
                    };
                }
            }
            let row = verify_entry(e, caps);
            if let (Some(c), Some(k), true) = (cache, key, row.status != RowStatus::Skipped) {
                match serde_json::to_value(&row) {
                    Ok(result) => c.put(&CacheEntry { key: k, method: None, result }),
                    Err(err) => log::warn!("{}", Error::from(err)),
                }
            }
            row
        })
        .collect();
    let mut summary = VerifySummary {
        total: rows.len(),
        ..Default::default()
    };
    for r in &rows {
        match r.status {
            RowStatus::Pass => summary.pass += 1,
            RowStatus::Fail => summary.fail += 1,
            RowStatus::Skipped => summary.skipped += 1,
        }
    }
    Ok(VerifyBundle {
        schema: SCHEMA_VERSION,
        command: "verify-theorem".into(),
        max_order,
        rows,
        summary,
        wall_time_ms: start.elapsed().as_millis() as u64,
        tool_version: TOOL_VERSION.into(),
    })
}
