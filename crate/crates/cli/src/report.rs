use serde::Serialize;

use posetbocs::suite::{Record, Status};

/// Bumped when the JSON layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str, field: &str, seed: u64, records: Vec<Record>) -> Self {
        Report { schema: SCHEMA_VERSION, command: command.into(), field: field.into(), seed, records }
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag} {} | {} = {}", r.poset, r.name, r.computed));
            if r.status == Status::Fail {
                out.push_str(&format!(", expected {}", r.expected));
            }
            out.push_str(&format!(" [{}]\n", r.anchor));
        }
        out.push_str(&format!(
            "{} over {}, seed {}: {} checks, {} failed\n",
            self.command,
            self.field,
            self.seed,
            self.records.len(),
            self.failures()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
