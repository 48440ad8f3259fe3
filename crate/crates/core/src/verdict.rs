use std::fmt;

use serde::Serialize;

/// Outcome of one property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl Verdict {
    pub fn fail(witness: impl Into<String>) -> Self {
        Self::Fail { witness: witness.into() }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        Self::NotApplicable { reason: reason.into() }
    }

    /// `Pass` unless a witness is given.
    pub fn from_witness(witness: Option<String>) -> Self {
        witness.map_or(Self::Pass, Self::fail)
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Self::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Self::Fail { .. })
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Self::NotApplicable { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Pass => write!(f, "pass"),
            Self::Fail { witness } => write!(f, "fail ({witness})"),
            Self::NotApplicable { reason } => write!(f, "n/a ({reason})"),
        }
    }
}
