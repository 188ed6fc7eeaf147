//! The bundled Table 1 regression fixture and the cell-level diff against it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use nsbetti::blocks::GenusPair;
use nsbetti::moduli::poincare_m12;
use nsbetti::AlgebraError;
use num_bigint::BigInt;
use thiserror::Error;

pub const BUNDLED: &str = include_str!("../fixtures/table1.json");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read fixture {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("fixture is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("fixture column key {0:?} is not of the form \"(g1,g2)\" with g1, g2 >= 2")]
    BadKey(String),
    #[error("fixture column {column} has non-integer index {index:?}")]
    BadIndex { column: String, index: String },
    #[error("fixture is empty")]
    Empty,
}

/// Filled cells only: column -> Betti index -> value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub columns: BTreeMap<GenusPair, BTreeMap<usize, u64>>,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Self, FixtureError> {
        let raw: BTreeMap<String, BTreeMap<String, u64>> = serde_json::from_str(text)?;
        let mut columns = BTreeMap::new();
        for (key, cells) in raw {
            let gp = parse_key(&key).ok_or_else(|| FixtureError::BadKey(key.clone()))?;
            let mut parsed = BTreeMap::new();
            for (i, v) in cells {
                let idx = i.parse().map_err(|_| FixtureError::BadIndex {
                    column: key.clone(),
                    index: i.clone(),
                })?;
                parsed.insert(idx, v);
            }
            columns.insert(gp, parsed);
        }
        if columns.is_empty() {
            return Err(FixtureError::Empty);
        }
        Ok(Fixture { columns })
    }

    pub fn load(path: Option<&Path>) -> Result<Self, FixtureError> {
        match path {
            None => Self::parse(BUNDLED),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| FixtureError::Io {
                    path: p.display().to_string(),
                    source,
                })?;
                Self::parse(&text)
            }
        }
    }

    pub fn filled_cells(&self) -> usize {
        self.columns.values().map(BTreeMap::len).sum()
    }
}

fn parse_key(key: &str) -> Option<GenusPair> {
    let inner = key.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    GenusPair::new(a.trim().parse().ok()?, b.trim().parse().ok()?).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMismatch {
    pub genus: GenusPair,
    pub index: usize,
    pub expected: u64,
    pub computed: BigInt,
    /// Set when the blank cell was compared with its dual filled cell.
    pub via_duality: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSummary {
    pub genus: GenusPair,
    pub filled: usize,
    pub blanks_checked: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Table1Diff {
    pub columns: Vec<ColumnSummary>,
    pub mismatches: Vec<CellMismatch>,
}

impl Table1Diff {
    pub fn filled(&self) -> usize {
        self.columns.iter().map(|c| c.filled).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recompute every fixture column and diff it cell by cell.
///
/// Filled cells are compared directly. A blank cell `i` whose dual index
/// `d - i` is filled is compared with that value instead.
pub fn diff(fixture: &Fixture) -> Result<Table1Diff, AlgebraError> {
    let mut out = Table1Diff::default();
    for (&gp, cells) in &fixture.columns {
        let p = poincare_m12(gp)?;
        let d = gp.top_degree();
        let mut summary = ColumnSummary {
            genus: gp,
            filled: cells.len(),
            blanks_checked: 0,
            mismatches: 0,
        };
        for i in 0..=d.max(cells.keys().copied().max().unwrap_or(0)) {
            let (expected, via_duality) = match (cells.get(&i), i <= d) {
                (Some(&v), _) => (v, None),
                (None, true) => match cells.get(&(d - i)) {
                    Some(&v) => {
                        summary.blanks_checked += 1;
                        (v, Some(d - i))
                    }
                    None => continue,
                },
                (None, false) => continue,
            };
            let computed = p.coeff(i);
            if computed != BigInt::from(expected) {
                summary.mismatches += 1;
                out.mismatches.push(CellMismatch {
                    genus: gp,
                    index: i,
                    expected,
                    computed,
                    via_duality,
                });
            }
        }
        out.columns.push(summary);
    }
    Ok(out)
}

impl fmt::Display for Table1Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.columns {
            writeln!(
                f,
                "{}: {} filled cells, {} blank cells checked by duality, {} mismatches",
                c.genus, c.filled, c.blanks_checked, c.mismatches
            )?;
        }
        for m in &self.mismatches {
            match m.via_duality {
                None => writeln!(
                    f,
                    "MISMATCH {} B_{}: table {}, computed {}",
                    m.genus, m.index, m.expected, m.computed
                )?,
                Some(j) => writeln!(
                    f,
                    "MISMATCH {} B_{} (blank; dual of B_{}): table {}, computed {}",
                    m.genus, m.index, j, m.expected, m.computed
                )?,
            }
        }
        writeln!(
            f,
            "{} mismatches across all filled cells ({} cells)",
            self.mismatches.len(),
            self.filled()
        )
    }
}
