//! Pass/fail summaries produced by the verification routines.

use std::fmt;

use serde::Serialize;

/// Failures recorded per line are capped; the count is always exact.
const MAX_SAMPLES: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReportLine {
    pub label: String,
    pub checked: usize,
    pub failed: usize,
    pub samples: Vec<String>,
}

impl ReportLine {
    pub fn new(label: impl Into<String>) -> Self {
        ReportLine {
            label: label.into(),
            ..Default::default()
        }
    }

    /// Records one check; `describe` is only called on failure.
    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.samples.len() < MAX_SAMPLES {
                self.samples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub lines: Vec<ReportLine>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            lines: Vec::new(),
        }
    }

    pub fn push(&mut self, line: ReportLine) {
        self.lines.push(line);
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(ReportLine::passed)
    }

    pub fn checked(&self) -> usize {
        self.lines.iter().map(|l| l.checked).sum()
    }

    pub fn failed(&self) -> usize {
        self.lines.iter().map(|l| l.failed).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for line in &self.lines {
            let status = if line.passed() { "ok  " } else { "FAIL" };
            writeln!(
                f,
                "[{status}] {}: {} checked, {} failed",
                line.label, line.checked, line.failed
            )?;
            for s in &line.samples {
                writeln!(f, "       {s}")?;
            }
        }
        write!(
            f,
            "{}: {} checks, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checked(),
            self.failed()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_samples() {
        let mut line = ReportLine::new("x");
        for i in 0..10 {
            line.check(i % 2 == 0, || format!("odd {i}"));
        }
        assert_eq!((line.checked, line.failed), (10, 5));
        assert_eq!(line.samples.len(), MAX_SAMPLES);
        let mut r = Report::new("t");
        r.push(line);
        assert!(!r.passed());
        assert!(r.to_string().contains("[FAIL] x: 10 checked, 5 failed"));
    }
}
