use std::fmt::Write as _;
use std::io;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            cases: Vec::new(),
            summary: Summary::default(),
            wall_time_ms: 0,
        }
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.cases.push(Case {
            id: id.into(),
            status,
            detail: detail.into(),
        });
        self.tally();
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(id, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    /// Appends another report's cases with ids prefixed by its suite name.
    pub fn absorb(&mut self, other: Report) {
        for c in other.cases {
            self.cases.push(Case {
                id: format!("{}/{}", other.suite, c.id),
                ..c
            });
        }
        self.tally();
    }

    fn tally(&mut self) {
        let count = |s| self.cases.iter().filter(|c| c.status == s).count();
        self.summary = Summary {
            total: self.cases.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            inconclusive: count(Status::Inconclusive),
            skipped: count(Status::Skipped),
        };
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> io::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "id", "status", "detail"])?;
        for c in &self.cases {
            w.write_record([self.suite.as_str(), &c.id, c.status.as_str(), &c.detail])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let _ = writeln!(out, "{:<13}{}: {}", c.status.as_str(), c.id, c.detail);
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{}: {} cases, {} pass, {} fail, {} inconclusive, {} skipped in {} ms",
            self.suite, s.total, s.pass, s.fail, s.inconclusive, s.skipped, self.wall_time_ms
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo");
        r.check("a", true, "fine");
        r.push("b, \"quoted\"", Status::Inconclusive, "line\nbreak");
        r.push("c", Status::Skipped, "");
        r.wall_time_ms = 17;
        r
    }

    #[test]
    fn counts_match_cases() {
        let r = sample();
        assert_eq!(
            r.summary,
            Summary {
                total: 3,
                pass: 1,
                fail: 0,
                inconclusive: 1,
                skipped: 1
            }
        );
        assert!(!r.failed());
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let text = sample().to_json();
        let back = Report::from_json(&text).unwrap();
        assert_eq!(back, sample());
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn csv_quotes_fields() {
        let csv = sample().to_csv().unwrap();
        assert!(csv.starts_with("suite,id,status,detail\n"));
        assert!(csv.contains("\"b, \"\"quoted\"\"\""));
    }

    #[test]
    fn absorb_prefixes_ids() {
        let mut all = Report::new("all");
        all.absorb(sample());
        assert_eq!(all.cases[0].id, "demo/a");
        assert_eq!(all.summary.total, 3);
    }
}
