//! Structured run reports: one record per check, deterministic given the
//! inputs and the seed, emitted as versioned plain text.

use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Pass,
    Fail,
}

pub struct Record {
    pub name: String,
    pub status: Status,
    pub computed: String,
    pub source: String,
    pub elapsed_ms: u128,
}

impl Record {
    pub fn pass(name: &str, computed: String, source: &str, since: Instant) -> Record {
        Record {
            name: name.to_string(),
            status: Status::Pass,
            computed,
            source: source.to_string(),
            elapsed_ms: since.elapsed().as_millis(),
        }
    }

    pub fn fail(name: &str, computed: String, source: &str, since: Instant) -> Record {
        Record {
            name: name.to_string(),
            status: Status::Fail,
            computed,
            source: source.to_string(),
            elapsed_ms: since.elapsed().as_millis(),
        }
    }

    pub fn check(name: &str, ok: bool, computed: String, source: &str, since: Instant) -> Record {
        if ok {
            Record::pass(name, computed, source, since)
        } else {
            Record::fail(name, computed, source, since)
        }
    }
}

pub struct RunReport {
    pub title: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn new(title: String, seed: u64) -> RunReport {
        RunReport { title, seed, records: Vec::new() }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    /// Versioned text form: one record per line. Timings are real, so two
    /// runs are byte-identical except for the elapsed column; the
    /// `stable_text` form drops it for comparisons.
    pub fn text(&self, with_timings: bool) -> String {
        let mut out = String::new();
        out.push_str(&format!("repdim-report v1\ntitle {}\nseed {}\n", self.title, self.seed));
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "check {status} | {} | {} | source: {}",
                r.name, r.computed, r.source
            ));
            if with_timings {
                out.push_str(&format!(" | {} ms", r.elapsed_ms));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "summary {} of {} checks passed\n",
            self.records.iter().filter(|r| r.status == Status::Pass).count(),
            self.records.len()
        ));
        out
    }

    pub fn stable_text(&self) -> String {
        self.text(false)
    }
}
