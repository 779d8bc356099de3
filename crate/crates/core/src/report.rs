//! Structured run reports with exact values, as line-oriented text or JSON.

use std::fmt::{self, Write as _};
use std::time::Duration;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds only under a hypothesis the instance does not meet; the
    /// unmet hypothesis goes in [`Check::note`].
    Conditional,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Conditional => "conditional",
            Status::Skipped => "skipped",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Ordered `key = value` pairs; values are exact integers, fractions or short tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Values(pub Vec<(String, String)>);

impl Values {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.0.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl Serialize for Values {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub values: Values,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            note: None,
            values: Values::default(),
            witnesses: Vec::new(),
        }
    }

    pub fn conditional(name: impl Into<String>, hypothesis: impl Into<String>) -> Self {
        Check::new(name, Status::Conditional).with_note(hypothesis)
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check::new(name, Status::Skipped).with_note(reason)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn value(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.values.push(key, value);
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn witnesses(mut self, ws: impl IntoIterator<Item = String>) -> Self {
        self.witnesses.extend(ws);
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: Values,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", rename = "wall_time_ms")]
    pub wall_time: Option<u128>,
}

/// Keys and tokens are printed verbatim; anything with whitespace, `=` or
/// quotes is quoted with Rust string escapes.
fn token(s: &str) -> String {
    if !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || c == '=' || c == '"') {
        s.to_string()
    } else {
        format!("{s:?}")
    }
}

impl RunReport {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        RunReport {
            command: command.into(),
            seed,
            ..Default::default()
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) {
        self.input.push(key, value);
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn set_wall_time(&mut self, d: Duration) {
        self.wall_time = Some(d.as_millis());
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failed(&self) -> bool {
        self.count(Status::Fail) > 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command {}", self.command);
        let _ = write!(out, "input");
        for (k, v) in &self.input.0 {
            let _ = write!(out, " {}={}", token(k), token(v));
        }
        out.push('\n');
        let _ = writeln!(out, "seed {}", self.seed);
        for c in &self.checks {
            let _ = write!(out, "check {} {}", token(&c.name), c.status);
            if let Some(note) = &c.note {
                let _ = write!(out, " note={}", token(note));
            }
            for (k, v) in &c.values.0 {
                let _ = write!(out, " {}={}", token(k), token(v));
            }
            out.push('\n');
            for w in &c.witnesses {
                let _ = writeln!(out, "witness {} {}", token(&c.name), token(w));
            }
        }
        let _ = writeln!(
            out,
            "summary pass={} fail={} conditional={} skipped={}",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Conditional),
            self.count(Status::Skipped)
        );
        if let Some(ms) = self.wall_time {
            let _ = writeln!(out, "wall-time-ms {ms}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = RunReport::new("verify star", 7);
        r.input("g2", "toy64");
        r.input("istar", "0,1");
        r.push(
            Check::new("star", Status::Pass)
                .value("checked", 64)
                .value("matched", 64),
        );
        r.push(Check::conditional("b-partition", "stage-1 clause (d)").witness("U=0 commutes"));
        let text = r.to_text();
        assert_eq!(
            text,
            "command verify star\n\
             input g2=toy64 istar=0,1\n\
             seed 7\n\
             check star pass checked=64 matched=64\n\
             check b-partition conditional note=\"stage-1 clause (d)\"\n\
             witness b-partition \"U=0 commutes\"\n\
             summary pass=1 fail=0 conditional=1 skipped=0\n"
        );
        assert!(!r.failed());
    }

    #[test]
    fn json_keeps_value_order() {
        let mut r = RunReport::new("measure tail", 0);
        r.push(
            Check::new("tail", Status::Pass)
                .value("measure", "5/8")
                .value("bound", "3/4"),
        );
        let json = r.to_json();
        let m = json.find("\"measure\"").unwrap();
        let b = json.find("\"bound\"").unwrap();
        assert!(m < b);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["checks"][0]["status"], "pass");
        assert!(v.get("wall_time_ms").is_none());
    }
}
