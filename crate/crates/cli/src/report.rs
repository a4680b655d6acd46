//! Deterministic experiment reports: JSON (stable field and record order)
//! and a flat CSV projection. Wall-clock timing goes to stderr, never into
//! the report, so identical configs give byte-identical files.

use std::io::Write;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub value: String,
    pub passed: bool,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, value: impl Into<String>, passed: bool) -> Self {
        CheckRecord {
            id: id.into(),
            value: value.into(),
            passed,
        }
    }

    /// A record that passes exactly when the value is zero.
    pub fn zero_check(id: impl Into<String>, value: &gaudin_core::rings::Rat) -> Self {
        use gaudin_core::rings::Ring;
        CheckRecord {
            id: id.into(),
            value: value.to_string(),
            passed: value.is_zero(),
        }
    }

    pub fn boolean(id: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            id: id.into(),
            value: if ok { "ok" } else { "failed" }.into(),
            passed: ok,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub experiment: String,
    pub seed: u64,
    pub passed: bool,
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new(experiment: &str, seed: u64, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = records.iter().all(|r| r.passed);
        Report {
            experiment: experiment.into(),
            seed,
            passed,
            records,
        }
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.records.iter().filter(|r| !r.passed).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["id", "value", "passed"])?;
        for r in &self.records {
            let passed = if r.passed { "true" } else { "false" };
            w.write_record([r.id.as_str(), r.value.as_str(), passed])?;
        }
        w.flush()?;
        Ok(())
    }
}
