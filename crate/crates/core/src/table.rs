//! Graded Betti tables, their Macaulay2-style rendering, and shape keys.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `beta_{i,j}`: homological degree `i`, internal degree
/// `j`. Only nonzero multiplicities are stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u64), u64>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (usize, u64, u64)>>(entries: I) -> Self {
        let mut t = Self::new();
        for (i, j, m) in entries {
            t.add(i, j, m);
        }
        t
    }

    /// Adds `mult` to `beta_{i,j}`. Adding zero is a no-op.
    pub fn add(&mut self, i: usize, j: u64, mult: u64) {
        if mult > 0 {
            *self.entries.entry((i, j)).or_insert(0) += mult;
        }
    }

    pub fn get(&self, i: usize, j: u64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries `(i, j, beta_{i,j})` sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &m)| (i, j, m))
    }

    pub fn total_betti(&self, i: usize) -> u64 {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Largest homological degree with a nonzero entry.
    pub fn projective_range(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn max_shift(&self) -> Option<u64> {
        self.entries.keys().map(|k| k.1).max()
    }

    /// `(min, max)` of the row index `j - i` over all entries.
    pub fn row_range(&self) -> Option<(i64, i64)> {
        let rows = self.entries.keys().map(|&(i, j)| j as i64 - i as i64);
        let min = rows.clone().min()?;
        Some((min, rows.max()?))
    }

    /// Macaulay2-style grid: column `i`, row `j - i`, zeros as `.`.
    pub fn render_m2(&self) -> String {
        render_m2(self)
    }

    /// Parses a grid produced by [`render_m2`]. The `total:` row is checked
    /// against the column sums.
    pub fn from_m2_str(text: &str) -> Result<Self> {
        parse_m2(text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson::from(self)).expect("table serializes")
    }
}

/// JSON form `{"entries": [[i, j, mult], ...]}` sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub entries: Vec<(usize, u64, u64)>,
}

impl From<&BettiTable> for TableJson {
    fn from(t: &BettiTable) -> Self {
        Self {
            entries: t.entries().collect(),
        }
    }
}

impl From<TableJson> for BettiTable {
    fn from(j: TableJson) -> Self {
        BettiTable::from_entries(j.entries)
    }
}

pub fn render_m2(table: &BettiTable) -> String {
    let max_i = table.projective_range().unwrap_or(0);
    let (row_lo, row_hi) = table.row_range().unwrap_or((0, -1));

    let mut lines: Vec<(String, Vec<String>)> = Vec::new();
    lines.push(("-".into(), (0..=max_i).map(|i| i.to_string()).collect()));
    lines.push((
        "total:".into(),
        (0..=max_i).map(|i| table.total_betti(i).to_string()).collect(),
    ));
    for row in row_lo..=row_hi {
        let cells = (0..=max_i)
            .map(|i| {
                let j = row + i as i64;
                match u64::try_from(j).map(|j| table.get(i, j)) {
                    Ok(m) if m > 0 => m.to_string(),
                    _ => ".".to_string(),
                }
            })
            .collect();
        lines.push((format!("{row}:"), cells));
    }

    let label_width = lines.iter().map(|l| l.0.len()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..=max_i)
        .map(|c| lines.iter().map(|l| l.1[c].len()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for (label, cells) in &lines {
        write!(out, "{label:>label_width$}").unwrap();
        for (cell, w) in cells.iter().zip(&widths) {
            write!(out, " {cell:>w$}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_m2(text: &str) -> Result<BettiTable> {
    let perr = |line: usize, message: String| Error::Parse {
        position: line,
        message,
    };
    let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| perr(0, "empty table".into()))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("-") {
        return Err(perr(hline, "header must start with '-'".into()));
    }
    let columns: Vec<usize> = header_tokens
        .map(|t| t.parse().map_err(|_| perr(hline, format!("bad column index {t:?}"))))
        .collect::<Result<_>>()?;

    let (tline, totals) = lines.next().ok_or_else(|| perr(hline + 1, "missing total row".into()))?;
    let totals: Vec<u64> = totals
        .strip_prefix("total:")
        .ok_or_else(|| perr(tline, "expected 'total:' row".into()))?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(tline, format!("bad total {t:?}"))))
        .collect::<Result<_>>()?;
    if totals.len() != columns.len() {
        return Err(perr(tline, "total row width differs from header".into()));
    }

    let mut table = BettiTable::new();
    for (ln, line) in lines {
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| perr(ln, "row label must end with ':'".into()))?;
        let row: i64 = label
            .trim()
            .parse()
            .map_err(|_| perr(ln, format!("bad row label {label:?}")))?;
        let cells: Vec<&str> = rest.split_whitespace().collect();
        if cells.len() != columns.len() {
            return Err(perr(ln, "row width differs from header".into()));
        }
        for (&i, cell) in columns.iter().zip(cells) {
            if cell == "." || cell == "·" {
                continue;
            }
            let m: u64 = cell
                .parse()
                .map_err(|_| perr(ln, format!("bad entry {cell:?}")))?;
            let j = u64::try_from(row + i as i64)
                .map_err(|_| perr(ln, "negative internal degree".into()))?;
            table.add(i, j, m);
        }
    }
    for (&i, &total) in columns.iter().zip(&totals) {
        if table.total_betti(i) != total {
            return Err(perr(tline, format!("column {i} sums to {}, total row says {total}", table.total_betti(i))));
        }
    }
    Ok(table)
}

/// `0 -> F_p -> ... -> F_0 -> I -> 0` with `F_i = (+)_j R(-j)^{beta_{i,j}}`.
pub fn resolution_skeleton(table: &BettiTable) -> String {
    let mut parts = vec!["0".to_string()];
    if let Some(p) = table.projective_range() {
        for i in (0..=p).rev() {
            let terms: Vec<String> = table
                .entries()
                .filter(|e| e.0 == i)
                .map(|(_, j, m)| {
                    if m == 1 {
                        format!("R(-{j})")
                    } else {
                        format!("R^{m}(-{j})")
                    }
                })
                .collect();
            parts.push(if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" ++ ")
            });
        }
    }
    parts.push("I".into());
    parts.push("0".into());
    parts.join(" -> ")
}

/// The support of a Betti table of `I^d` as `(column, row - r*d)` pairs.
#[derive(Debug, Clone, Eq)]
pub struct ShapeKey {
    pub offsets: BTreeSet<(usize, i64)>,
    pub shift_r: u64,
    pub power_d: u32,
}

impl PartialEq for ShapeKey {
    /// Keys from different powers compare by their normalized support.
    fn eq(&self, other: &Self) -> bool {
        self.shift_r == other.shift_r && self.offsets == other.offsets
    }
}

impl std::hash::Hash for ShapeKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.offsets.hash(state);
        self.shift_r.hash(state);
    }
}

pub fn shape_key(table: &BettiTable, r: u64, d: u32) -> ShapeKey {
    assert!(r >= 1 && d >= 1, "shift and power must be positive");
    let base = (r * d as u64) as i64;
    ShapeKey {
        offsets: table
            .entries()
            .map(|(i, j, _)| (i, j as i64 - i as i64 - base))
            .collect(),
        shift_r: r,
        power_d: d,
    }
}

/// Whether the tables of `I^x` and `I^y` share a shape under shift `r`.
pub fn same_shape(bx: &BettiTable, x: u32, by: &BettiTable, y: u32, r: u64) -> bool {
    shape_key(bx, r, x) == shape_key(by, r, y)
}
