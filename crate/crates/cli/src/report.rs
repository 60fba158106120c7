use serde_json::{json, Map, Value};

/// Result of one run: a status word, the exit code it implies, summary lines
/// for the text format and result fields for the structured format.
#[derive(Debug)]
pub struct Report {
    pub status: String,
    pub exit_code: i32,
    lines: Vec<String>,
    result: Map<String, Value>,
}

#[derive(Debug, Clone)]
pub struct Stats {
    pub search_nodes: u64,
    pub budget: u64,
    pub elapsed_ms: u128,
    pub catalog_bound: usize,
    pub jobs: usize,
}

impl Report {
    pub fn new(status: &str, positive: bool) -> Self {
        Report {
            status: status.to_owned(),
            exit_code: if positive { 0 } else { 1 },
            lines: Vec::new(),
            result: Map::new(),
        }
    }

    pub fn error(status: &str, exit_code: i32, message: String) -> Self {
        let message = message.trim_end().to_owned();
        let mut r = Report::new(status, false);
        r.exit_code = exit_code;
        r.set("message", json!(message));
        r.lines.push(message);
        r
    }

    pub fn set_status(&mut self, status: &str, positive: bool) {
        self.status = status.to_owned();
        self.exit_code = if positive { 0 } else { 1 };
    }

    pub fn line(&mut self, s: String) {
        self.lines.push(s);
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.result.insert(key.to_owned(), v);
    }

    pub fn text(&self, kind: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(k) = kind {
            out.push_str(&format!("kind: {k}\n"));
        }
        out.push_str(&format!("status: {}\n", self.status));
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn structured(&self, kind: Option<&str>, echo: Option<Value>, stats: Option<&Stats>) -> String {
        let mut doc = Map::new();
        doc.insert("status".into(), json!(self.status));
        doc.insert("exit_code".into(), json!(self.exit_code));
        if let Some(k) = kind {
            doc.insert("kind".into(), json!(k));
        }
        if !self.result.is_empty() {
            doc.insert("result".into(), Value::Object(self.result.clone()));
        }
        if let Some(s) = stats {
            doc.insert(
                "statistics".into(),
                json!({
                    "search_nodes": s.search_nodes,
                    "budget": s.budget,
                    "catalog_bound": s.catalog_bound,
                    "jobs": s.jobs,
                    "elapsed_ms": s.elapsed_ms,
                }),
            );
        }
        if let Some(e) = echo {
            doc.insert("scenario".into(), e);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("json values serialize");
        s.push('\n');
        s
    }
}
