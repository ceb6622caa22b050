use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub tag: String,
    pub cases: usize,
    pub failures: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn new(tag: impl Into<String>) -> Self {
        AuditReport { tag: tag.into(), cases: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one case; a mismatch becomes a witness.
    pub fn check<T: PartialEq + std::fmt::Display>(&mut self, inputs: impl FnOnce() -> String, expected: T, got: T) {
        self.cases += 1;
        if expected != got {
            self.failures.push(Witness { inputs: inputs(), expected: expected.to_string(), got: got.to_string() });
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Folds another report's cases and failures into this one.
    pub fn absorb(&mut self, other: AuditReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures.into_iter().map(|mut w| {
            w.inputs = format!("[{}] {}", other.tag, w.inputs);
            w
        }));
        self.notes.extend(other.notes);
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {:<40} cases={:<6} failures={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.tag,
            self.cases,
            self.failures.len()
        )
    }
}
