use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Row {
    pub name: String,
    pub anchor: String,
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
    /// `None` for inconclusive outcomes.
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Row {
    pub fn new(name: &str, anchor: &str, inputs: Value, expected: Value, got: Value) -> Row {
        let pass = Some(expected == got);
        Row { name: name.into(), anchor: anchor.into(), inputs, expected, got, pass, runtime_ms: None }
    }

    pub fn with_pass(mut self, pass: Option<bool>) -> Row {
        self.pass = pass;
        self
    }

    pub fn error(name: &str, anchor: &str, inputs: Value, err: &str) -> Row {
        Row {
            name: name.into(),
            anchor: anchor.into(),
            inputs,
            expected: Value::Null,
            got: Value::String(err.into()),
            pass: Some(false),
            runtime_ms: None,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub tool_version: String,
    pub config: RunConfig,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, rows: Vec<Row>) -> Report {
        let mut summary = Summary::default();
        for r in &rows {
            match r.pass {
                Some(true) => summary.passed += 1,
                Some(false) => summary.failed += 1,
                None => summary.inconclusive += 1,
            }
        }
        Report { tool_version: env!("CARGO_PKG_VERSION").into(), seed: config.seed, config, rows, summary }
    }

    /// 0 when every row passes, 1 on any failure, else 2 for inconclusive rows.
    pub fn exit_code(&self) -> i32 {
        if self.summary.failed > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn text_summary(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let tag = match r.pass {
                Some(true) => "PASS",
                Some(false) => "FAIL",
                None => "INCONCLUSIVE",
            };
            out.push_str(&format!("{tag:<13}{}  [{}]\n", r.name, r.anchor));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} inconclusive\n",
            self.summary.passed, self.summary.failed, self.summary.inconclusive
        ));
        out
    }
}
