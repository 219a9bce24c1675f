//! Report records and their two renderings. Both are pure functions of the
//! record, so identical runs give identical bytes.

use dgres_core::homology::HomologyTable;
use dgres_core::report::{Check, ValidationReport};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: String,
    pub window: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.clone(),
            status: c.status.to_string(),
            window: c.window.clone(),
            counterexample: c.counterexample.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn homology(title: impl Into<String>, h: &HomologyTable) -> Self {
        let with_position = h.rows.iter().any(|r| r.position.is_some());
        let mut t = if with_position {
            Table::new(title, &["degree", "position", "cycles", "boundaries", "homology"])
        } else {
            Table::new(title, &["degree", "cycles", "boundaries", "homology"])
        };
        for r in &h.rows {
            let mut cells = vec![r.degree.to_string()];
            if with_position {
                cells.push(r.position.map_or("-".into(), |p| p.to_string()));
            }
            cells.extend([r.cycles.to_string(), r.boundaries.to_string(), r.homology.to_string()]);
            t.row(cells);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub version: String,
    pub input_sha256: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub tables: Vec<Table>,
    pub status: String,
}

impl Report {
    pub fn new(command: String, input_sha256: String, seed: u64) -> Self {
        Report {
            command,
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_sha256,
            seed,
            checks: Vec::new(),
            tables: Vec::new(),
            status: String::new(),
        }
    }

    pub fn push_check(&mut self, c: &Check) {
        self.checks.push(c.into());
    }

    pub fn extend(&mut self, r: &ValidationReport) {
        self.checks.extend(r.checks.iter().map(CheckRecord::from));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "PASS")
    }

    pub fn finish(&mut self) {
        let passed = self.checks.iter().filter(|c| c.status == "PASS").count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        self.status = format!("{verdict} ({passed}/{} checks passed)", self.checks.len());
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out += &format!("command: {}\n", self.command);
        out += &format!("version: {}\n", self.version);
        out += &format!("input-sha256: {}\n", self.input_sha256);
        out += &format!("seed: {}\n", self.seed);
        out += "\nchecks:\n";
        if self.checks.is_empty() {
            out += "  (none)\n";
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out += &format!("  {}  {:width$}  [{}]\n", c.status, c.name, c.window);
            if let Some(ce) = &c.counterexample {
                out += &format!("        counterexample: {ce}\n");
            }
        }
        for t in &self.tables {
            out += &format!("\ntable: {}\n", t.title);
            let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
            for r in &t.rows {
                for (w, cell) in widths.iter_mut().zip(r) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let last = cells.len() - 1;
                let mut s = String::from(" ");
                for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                    s.push(' ');
                    s += cell;
                    if i < last {
                        s += &" ".repeat(w - cell.chars().count() + 1);
                    }
                }
                s + "\n"
            };
            out += &line(&t.columns);
            for r in &t.rows {
                out += &line(r);
            }
        }
        out += &format!("\nstatus: {}\n", self.status);
        out
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
