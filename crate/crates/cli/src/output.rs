use std::fmt::Write as _;

use nsbetti::BettiTable;
use serde::{Deserialize, Serialize};

/// Serialized form of one Betti table. Big integers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub g1: u32,
    pub g2: u32,
    pub component: String,
    pub degree: usize,
    pub euler_char: String,
    pub betti: Vec<String>,
}

impl From<&BettiTable> for TableRecord {
    fn from(t: &BettiTable) -> Self {
        TableRecord {
            g1: t.genus.g1,
            g2: t.genus.g2,
            component: t.component.as_str().to_string(),
            degree: t.degree,
            euler_char: t.euler_char.to_string(),
            betti: t.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TableRecord {
    fn column_label(&self) -> String {
        format!("{} ({},{})", self.component, self.g1, self.g2)
    }
}

/// A single table is emitted as an object, several as an array.
pub fn tables_json(tables: &[TableRecord]) -> String {
    let mut s = match tables {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    }
    .expect("table records always serialize");
    s.push('\n');
    s
}

/// `i,B_i` for one table, `component,i,B_i` for several.
pub fn tables_csv(tables: &[TableRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let multi = tables.len() > 1;
    if multi {
        w.write_record(["component", "i", "B_i"]).unwrap();
    } else {
        w.write_record(["i", "B_i"]).unwrap();
    }
    for t in tables {
        for (i, b) in t.betti.iter().enumerate() {
            let i = i.to_string();
            if multi {
                w.write_record([t.component.as_str(), &i, b]).unwrap();
            } else {
                w.write_record([i.as_str(), b]).unwrap();
            }
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

/// Rows are Betti indices, columns are tables; shorter tables leave blanks.
pub fn tables_md(tables: &[TableRecord]) -> String {
    let mut s = String::from("| i |");
    for t in tables {
        write!(s, " {} |", t.column_label()).unwrap();
    }
    s.push_str("\n|---:|");
    for _ in tables {
        s.push_str("---:|");
    }
    s.push('\n');
    let rows = tables.iter().map(|t| t.betti.len()).max().unwrap_or(0);
    for i in 0..rows {
        write!(s, "| {i} |").unwrap();
        for t in tables {
            write!(s, " {} |", t.betti.get(i).map(String::as_str).unwrap_or("")).unwrap();
        }
        s.push('\n');
    }
    s
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub g1: u32,
    pub g2: u32,
    pub name: String,
    pub status: String,
    pub witness: String,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    grid_max: u32,
    checks: usize,
    failed: usize,
    passed: bool,
    results: &'a [ReportRow],
}

pub fn report_json(grid_max: u32, rows: &[ReportRow]) -> String {
    let failed = rows.iter().filter(|r| r.status == "FAIL").count();
    let doc = ReportDoc {
        grid_max,
        checks: rows.len(),
        failed,
        passed: failed == 0,
        results: rows,
    };
    let mut s = serde_json::to_string_pretty(&doc).unwrap();
    s.push('\n');
    s
}

pub fn report_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["g1", "g2", "check", "status", "witness"])
        .unwrap();
    for r in rows {
        w.write_record([
            r.g1.to_string().as_str(),
            &r.g2.to_string(),
            &r.name,
            &r.status,
            &r.witness,
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn report_md(rows: &[ReportRow]) -> String {
    let mut s = String::from("| g1 | g2 | check | status | witness |\n|---:|---:|---|---|---|\n");
    for r in rows {
        writeln!(
            s,
            "| {} | {} | {} | {} | {} |",
            r.g1,
            r.g2,
            r.name,
            r.status,
            r.witness.replace('|', "\\|")
        )
        .unwrap();
    }
    s
}
