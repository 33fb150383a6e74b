//! Validation reports.

use std::fmt;

/// Number of violations a report keeps by default.
pub const DEFAULT_CAP: usize = 32;

/// One failed instance of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: String,
    pub location: String,
}

/// All violations found by a check. Only the first `cap` are stored; the
/// total count is always exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    name: String,
    cap: usize,
    total: usize,
    violations: Vec<Violation>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self::with_cap(name, DEFAULT_CAP)
    }

    pub fn with_cap(name: impl Into<String>, cap: usize) -> Self {
        Report {
            name: name.into(),
            cap,
            total: 0,
            violations: Vec::new(),
        }
    }

    /// Records a violation. The location is formatted only if it is stored.
    pub fn record(&mut self, rule: &str, location: impl FnOnce() -> String) {
        self.total += 1;
        if self.violations.len() < self.cap {
            self.violations.push(Violation {
                rule: rule.to_string(),
                location: location(),
            });
        }
    }

    /// Folds another report into this one, prefixing its rules with its name.
    pub fn absorb(&mut self, other: Report) {
        let prefix = other.name;
        self.total += other.total;
        for v in other.violations {
            if self.violations.len() < self.cap {
                self.violations.push(Violation {
                    rule: format!("{prefix}: {}", v.rule),
                    location: v.location,
                });
            }
        }
    }

    /// Lowers the cap, dropping stored violations beyond it.
    pub fn truncate(&mut self, cap: usize) {
        self.cap = self.cap.min(cap);
        self.violations.truncate(self.cap);
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_ok(&self) -> bool {
        self.total == 0
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "{}: ok", self.name);
        }
        write!(f, "{}: {} violation(s)", self.name, self.total)?;
        for v in &self.violations {
            write!(f, "\n  {} at {}", v.rule, v.location)?;
        }
        if self.total > self.violations.len() {
            write!(f, "\n  ... {} more", self.total - self.violations.len())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_keeps_count_exact() {
        let mut r = Report::with_cap("t", 2);
        for i in 0..5 {
            r.record("rule", || i.to_string());
        }
        assert_eq!(r.total(), 5);
        assert_eq!(r.violations().len(), 2);
        assert!(r.to_string().contains("3 more"));
    }

    #[test]
    fn absorb_prefixes() {
        let mut a = Report::new("outer");
        let mut b = Report::new("inner");
        b.record("x", || "here".into());
        a.absorb(b);
        assert_eq!(a.violations()[0].rule, "inner: x");
    }
}
