//! Reports: named checks, dimension tables and a verdict, rendered as text or JSON.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub options: Vec<String>,
    pub field: String,
    pub window: Option<String>,
    pub checks: Vec<CheckLine>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
    /// A presentation of the computed object in the input format.
    pub presentation: Option<String>,
    pub verdict: String,
}

impl Report {
    pub fn new(command: &str, inputs: &[String], field: String) -> Report {
        Report {
            command: command.into(),
            inputs: inputs.to_vec(),
            options: Vec::new(),
            field,
            window: None,
            checks: Vec::new(),
            tables: Vec::new(),
            notes: Vec::new(),
            presentation: None,
            verdict: String::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    /// `0` when every check passed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Fills in the verdict from the checks unless one was already set.
    pub fn conclude(&mut self) {
        if !self.verdict.is_empty() {
            return;
        }
        let failed = self.failures();
        self.verdict = if failed.is_empty() && self.checks.len() == 1 {
            "the check passed".to_string()
        } else if failed.is_empty() {
            format!("all {} checks passed", self.checks.len())
        } else {
            let names: Vec<&str> = failed.iter().map(|c| c.name.as_str()).collect();
            format!("{} of {} checks failed: {}", failed.len(), self.checks.len(), names.join("; "))
        };
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn human(&self) -> String {
        let mut out = format!("dgres {}", self.command);
        for i in self.inputs.iter().chain(&self.options) {
            out.push(' ');
            out.push_str(i);
        }
        out.push('\n');
        out.push_str(&format!("field: {}\n", self.field));
        if let Some(w) = &self.window {
            out.push_str(&format!("window: {w}\n"));
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&render_table(t));
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for c in &self.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                if c.detail.is_empty() {
                    out.push_str(&format!("{mark}  {}\n", c.name));
                } else {
                    out.push_str(&format!("{mark}  {}: {}\n", c.name, c.detail));
                }
            }
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(&format!("note: {n}\n"));
            }
        }
        if let Some(p) = &self.presentation {
            out.push('\n');
            out.push_str(p);
        }
        out.push_str(&format!("\nverdict: {}\n", self.verdict));
        out
    }
}

fn render_table(t: &Table) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for r in &t.rows {
        for (k, cell) in r.iter().enumerate() {
            if k < widths.len() {
                widths[k] = widths[k].max(cell.chars().count());
            }
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let w = widths.get(k).copied().unwrap_or(0);
                format!("{c}{}", " ".repeat(w.saturating_sub(c.chars().count())))
            })
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = format!("{}\n", t.title);
    out.push_str(&line(&t.columns));
    for r in &t.rows {
        out.push_str(&line(r));
    }
    out
}
