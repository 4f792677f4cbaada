use std::fmt;

use crate::generator::Word;

/// Verdict of a property check.
///
/// A negative verdict always carries a counterexample word; `detail` names
/// the clause that was violated (or that held).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub holds: bool,
    pub counterexample: Option<Word>,
    pub detail: String,
}

impl PropertyReport {
    pub fn pass(detail: impl Into<String>) -> Self {
        PropertyReport {
            holds: true,
            counterexample: None,
            detail: detail.into(),
        }
    }

    pub fn fail(counterexample: Word, detail: impl Into<String>) -> Self {
        PropertyReport {
            holds: false,
            counterexample: Some(counterexample),
            detail: detail.into(),
        }
    }

    /// Combines reports: holds iff all hold; keeps the first failure.
    pub fn all(reports: impl IntoIterator<Item = PropertyReport>, detail: &str) -> Self {
        for r in reports {
            if !r.holds {
                return r;
            }
        }
        PropertyReport::pass(detail)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "holds ({})", self.detail),
            Some(w) => write!(f, "fails ({}); counterexample {}", self.detail, w),
        }
    }
}
