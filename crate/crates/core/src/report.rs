//! Verification reports: graded dimension tables with stability flags and a verdict.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Process exit code for a single verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Pass => "✓ pass",
            Verdict::Fail => "✗ fail",
            Verdict::Inconclusive => "? inconclusive",
        }
    }
}

/// One table entry. `value` is absent when the cell could not be computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub value: Option<u64>,
    pub stable: bool,
}

impl Cell {
    pub fn stable(v: usize) -> Cell {
        Cell { value: Some(v as u64), stable: true }
    }

    pub fn unstable(v: usize) -> Cell {
        Cell { value: Some(v as u64), stable: false }
    }

    pub fn missing() -> Cell {
        Cell { value: None, stable: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<Cell>,
}

/// Rows of cells over a common column axis (internal degree or filtration level).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub name: String,
    pub axis: String,
    pub columns: Vec<i64>,
    pub rows: Vec<TableRow>,
}

impl DimTable {
    pub fn new(name: &str, axis: &str, columns: Vec<i64>) -> DimTable {
        DimTable { name: name.to_string(), axis: axis.to_string(), columns, rows: Vec::new() }
    }

    pub fn push(&mut self, label: impl Into<String>, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(TableRow { label: label.into(), cells });
    }

    pub fn row(&self, label: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    pub fn all_stable(&self) -> bool {
        self.rows.iter().all(|r| r.cells.iter().all(|c| c.stable))
    }

    /// Row values with absent cells as `None`.
    pub fn values(&self, label: &str) -> Option<Vec<Option<u64>>> {
        self.row(label).map(|r| r.cells.iter().map(|c| c.value).collect())
    }

    /// Unstable cells carry a `*`; missing cells render as `–`. Both are listed in the flag column.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "### {}\n", self.name);
        let _ = write!(out, "| {} |", self.axis);
        for c in &self.columns {
            let _ = write!(out, " {c} |");
        }
        out.push_str(" flag |\n|---|");
        for _ in &self.columns {
            out.push_str("---|");
        }
        out.push_str("---|\n");
        for r in &self.rows {
            let _ = write!(out, "| {} |", r.label);
            let mut unstable = Vec::new();
            for (c, col) in r.cells.iter().zip(&self.columns) {
                match (c.value, c.stable) {
                    (Some(v), true) => {
                        let _ = write!(out, " {v} |");
                    }
                    (Some(v), false) => {
                        let _ = write!(out, " {v}* |");
                        unstable.push(col.to_string());
                    }
                    (None, _) => {
                        out.push_str(" – |");
                        unstable.push(col.to_string());
                    }
                }
            }
            if unstable.is_empty() {
                out.push_str(" |\n");
            } else {
                let _ = writeln!(out, " unstable at {} |", unstable.join(","));
            }
        }
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub anchor: String,
    pub inputs: BTreeMap<String, String>,
    pub tables: Vec<DimTable>,
    pub flags: Vec<String>,
    pub notes: Vec<String>,
    pub seed: Option<u64>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(check: &str, anchor: &str) -> VerificationReport {
        VerificationReport {
            check: check.to_string(),
            anchor: anchor.to_string(),
            inputs: BTreeMap::new(),
            tables: Vec::new(),
            flags: Vec::new(),
            notes: Vec::new(),
            seed: None,
            verdict: Verdict::Pass,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> VerificationReport {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn flag(&mut self, f: impl Into<String>) {
        self.flags.push(f.into());
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    pub fn downgrade(&mut self, v: Verdict) {
        self.verdict = self.verdict.combine(v);
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn table(&self, name: &str) -> Option<&DimTable> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<VerificationReport> {
        serde_json::from_str(s)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## {}\n", self.check);
        let _ = writeln!(out, "_{}_\n", self.anchor);
        if !self.inputs.is_empty() {
            for (k, v) in &self.inputs {
                let _ = writeln!(out, "- `{k}` = `{v}`");
            }
            out.push('\n');
        }
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed: `{s}`\n");
        }
        for t in &self.tables {
            out.push_str(&t.to_markdown());
        }
        for f in &self.flags {
            let _ = writeln!(out, "- flag: {f}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "- note: {n}");
        }
        let _ = writeln!(out, "\n| verdict | {} |\n|---|---|", self.verdict.symbol());
        out
    }
}

/// Descriptions attached to each named check.
pub mod anchors {
    pub const HKR: &str =
        "Hochschild-Kostant-Rosenberg for power series rings: HH^i(k[[x_1..x_n]]) is the i-th exterior power of the free module of rank n";
    pub const MAIN_THEOREM: &str = "Completed Hochschild cohomology: the a-adic completion of Ext^n over A⊗A of (A, M) equals Ext^n over the completed enveloping ring of (Â, M̂)";
    pub const GM_DUALITY: &str = "Greenlees-May duality: RHom(RΓ_a M, N) ≅ RHom(M, LΛ_a N), left side through dual Koszul towers, right side through telescope stages";
    pub const COFINALITY: &str =
        "Cofinality of the ideal I = a⊗A + A⊗a: I^n is the sum of a^i⊗a^(n-i), and a^2n⊗A + A⊗a^2n ⊆ I^2n ⊆ a^n⊗A + A⊗a^n";
    pub const PADIC: &str = "p-adic integers: the completed enveloping ring collapses to Z_p, so HH^0 = Z_p and HH^n = 0 for n > 0";
    pub const WPR: &str = "Weak proregularity: the Koszul homology towers on powers of the sequence are pro-zero in positive degrees";
    pub const LOCAL_COHOMOLOGY: &str = "Local cohomology as the direct limit of Koszul cohomology over powers of the sequence";
    pub const COMPLETION_ROUTES: &str =
        "Derived completion of a finitely generated module equals Â⊗M: telescope-Hom stages against direct truncation";
}
