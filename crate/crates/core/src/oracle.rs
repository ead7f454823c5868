use std::fmt;

use serde::Serialize;

/// Outcome of checking a proved statement on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum TheoremStatus {
    HypothesesUnmet(String),
    Holds,
    /// The conclusion failed although the hypotheses held. Since the
    /// statements are theorems, this indicates a bug.
    Violation(String),
}

impl TheoremStatus {
    pub fn is_violation(&self) -> bool {
        matches!(self, TheoremStatus::Violation(_))
    }

    pub fn holds(&self) -> bool {
        matches!(self, TheoremStatus::Holds)
    }

    pub(crate) fn check(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            TheoremStatus::Holds
        } else {
            TheoremStatus::Violation(detail())
        }
    }

    /// Combines independent sub-claims: any violation wins, then any holds.
    pub(crate) fn merge(parts: Vec<TheoremStatus>) -> Self {
        let mut unmet = Vec::new();
        let mut held = false;
        for part in parts {
            match part {
                TheoremStatus::Violation(_) => return part,
                TheoremStatus::Holds => held = true,
                TheoremStatus::HypothesesUnmet(r) => unmet.push(r),
            }
        }
        if held {
            TheoremStatus::Holds
        } else {
            TheoremStatus::HypothesesUnmet(unmet.join("; "))
        }
    }
}

impl fmt::Display for TheoremStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoremStatus::HypothesesUnmet(r) => write!(f, "hypotheses unmet ({})", r),
            TheoremStatus::Holds => write!(f, "holds"),
            TheoremStatus::Violation(d) => write!(f, "VIOLATION: {}", d),
        }
    }
}
