use packcover_core::io::digest_bytes;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One solver run. `wall_time_ms` is left out of [`Report::digest`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub instance_digest: String,
    pub algorithm: String,
    pub seed: u64,
    /// Exact objective as `n` or `p/q`; absent for pure transformations.
    pub objective: Option<String>,
    pub solution: Value,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn digest(&self) -> String {
        let stable = serde_json::json!({
            "instance_digest": self.instance_digest,
            "algorithm": self.algorithm,
            "seed": self.seed,
            "objective": self.objective,
            "solution": self.solution,
        });
        digest_bytes(stable.to_string().as_bytes())
    }
}

/// What a command produced: lines for stdout, an optional document for
/// `--json`, notes for stderr and the exit code.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: Vec<String>,
    pub json: Option<Value>,
    pub notes: Vec<String>,
    pub exit: i32,
    pub digests: Vec<String>,
}

impl Outcome {
    pub fn from_reports(reports: Vec<(Report, Vec<String>)>) -> Self {
        let mut out = Outcome::default();
        let mut docs = Vec::new();
        for (r, violations) in reports {
            let v = serde_json::to_value(&r).expect("reports serialize");
            out.stdout.push(v.to_string());
            out.digests.push(r.digest());
            if !violations.is_empty() {
                out.exit = 1;
                out.notes.extend(violations.into_iter().map(|m| format!("{}: {m}", r.algorithm)));
            }
            docs.push(v);
        }
        out.json = Some(if docs.len() == 1 { docs.pop().unwrap() } else { Value::Array(docs) });
        out
    }

    pub fn document(v: Value) -> Self {
        Outcome {
            stdout: vec![v.to_string()],
            digests: vec![digest_bytes(v.to_string().as_bytes())],
            json: Some(v),
            ..Outcome::default()
        }
    }
}
