use serde::{Deserialize, Serialize};

/// Outcome of one named identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Witness on failure, short confirmation on success.
    pub detail: String,
    /// Which identity or theorem the check exercises.
    pub anchor: String,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, witness: Option<String>) -> Self {
        let passed = witness.is_none();
        Check {
            name: name.into(),
            passed,
            detail: witness.unwrap_or_else(|| "holds identically".into()),
            anchor: anchor.into(),
        }
    }

    pub fn with_detail(name: impl Into<String>, anchor: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
            anchor: anchor.into(),
        }
    }
}
