use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};

/// A cell position (column, row), both 1-based; row 1 is the bottom.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: u32,
    pub row: u32,
}

impl Cell {
    pub fn new(col: u32, row: u32) -> Self {
        assert!(col >= 1 && row >= 1, "cells are 1-based: ({col},{row})");
        Cell { col, row }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// A finite set of cells, stored as one row bitmask per column.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    cols: Vec<u64>,
}

pub const MAX_ROWS: u32 = 64;

impl Diagram {
    pub fn empty() -> Self {
        Diagram { cols: Vec::new() }
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut d = Diagram::empty();
        for c in cells {
            d.insert(c);
        }
        d
    }

    pub fn from_pairs(pairs: &[(u32, u32)]) -> Self {
        Diagram::from_cells(pairs.iter().map(|&(c, r)| Cell::new(c, r)))
    }

    /// D(α): α_r cells left-justified in row r.
    pub fn composition(alpha: &Composition) -> Self {
        let mut d = Diagram::empty();
        for (i, &p) in alpha.parts().iter().enumerate() {
            for c in 1..=p {
                d.insert(Cell::new(c, i as u32 + 1));
            }
        }
        d
    }

    fn trim(&mut self) {
        while self.cols.last() == Some(&0) {
            self.cols.pop();
        }
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.column_mask(cell.col) & (1u64 << (cell.row - 1)) != 0
    }

    /// Returns false if the cell was already present.
    pub fn insert(&mut self, cell: Cell) -> bool {
        assert!(cell.row <= MAX_ROWS, "row {} out of range", cell.row);
        let i = cell.col as usize - 1;
        if self.cols.len() <= i {
            self.cols.resize(i + 1, 0);
        }
        let bit = 1u64 << (cell.row - 1);
        let fresh = self.cols[i] & bit == 0;
        self.cols[i] |= bit;
        fresh
    }

    pub fn remove(&mut self, cell: Cell) -> bool {
        let i = cell.col as usize - 1;
        if i >= self.cols.len() {
            return false;
        }
        let bit = 1u64 << (cell.row - 1);
        let had = self.cols[i] & bit != 0;
        self.cols[i] &= !bit;
        self.trim();
        had
    }

    pub fn with(&self, cell: Cell) -> Self {
        let mut d = self.clone();
        d.insert(cell);
        d
    }

    pub fn without(&self, cell: Cell) -> Self {
        let mut d = self.clone();
        d.remove(cell);
        d
    }

    pub fn column_mask(&self, col: u32) -> u64 {
        if col == 0 {
            return 0;
        }
        self.cols.get(col as usize - 1).copied().unwrap_or(0)
    }

    /// Rows occupied in a column, bottom to top.
    pub fn column_rows(&self, col: u32) -> Vec<u32> {
        let mut m = self.column_mask(col);
        let mut out = Vec::with_capacity(m.count_ones() as usize);
        while m != 0 {
            out.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        out
    }

    pub fn column_len(&self, col: u32) -> usize {
        self.column_mask(col).count_ones() as usize
    }

    /// Index of the rightmost nonempty column (0 if empty).
    pub fn num_cols(&self) -> u32 {
        self.cols.len() as u32
    }

    pub fn max_row(&self) -> u32 {
        self.cols
            .iter()
            .map(|m| 64 - m.leading_zeros())
            .max()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.cols.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Cells sorted by (column, row).
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len());
        for c in 1..=self.num_cols() {
            for r in self.column_rows(c) {
                out.push(Cell { col: c, row: r });
            }
        }
        out
    }

    /// Columns occupied in a row, left to right.
    pub fn row_cols(&self, row: u32) -> Vec<u32> {
        let bit = 1u64 << (row - 1);
        (1..=self.num_cols())
            .filter(|&c| self.column_mask(c) & bit != 0)
            .collect()
    }

    /// wt(D) with the given number of rows.
    pub fn weight(&self, len: usize) -> Result<Composition> {
        let top = self.max_row();
        if (top as usize) > len {
            return Err(Error::WeightTooShort { len, row: top });
        }
        let mut w = vec![0u32; len];
        for m in &self.cols {
            let mut m = *m;
            while m != 0 {
                w[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        Ok(Composition::new(w))
    }

    /// Number of cells per column, leftmost first.
    pub fn column_counts(&self) -> Vec<usize> {
        self.cols.iter().map(|m| m.count_ones() as usize).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<[u32; 2]> = self.cells().iter().map(|c| [c.col, c.row]).collect();
        serde_json::json!({ "cells": cells })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            cells: Vec<[u32; 2]>,
        }
        let raw: Raw =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut d = Diagram::empty();
        for [c, r] in raw.cells {
            if c == 0 || r == 0 || r > MAX_ROWS {
                return Err(Error::Parse(format!("bad cell ({c},{r})")));
            }
            if !d.insert(Cell::new(c, r)) {
                return Err(Error::Parse(format!("duplicate cell ({c},{r})")));
            }
        }
        Ok(d)
    }

    /// ASCII picture: top row first, `*` for a cell, `.` for a vacancy,
    /// then a baseline of `-`.
    pub fn render(&self, rows: u32, cols: u32) -> String {
        self.render_marked(rows, cols, &BTreeMap::new())
    }

    /// Like [`Diagram::render`] but with per-position overrides.
    pub fn render_marked(&self, rows: u32, cols: u32, marks: &BTreeMap<Cell, char>) -> String {
        let rows = rows.max(self.max_row());
        let cols = cols.max(self.num_cols()).max(1);
        let mut s = String::new();
        for r in (1..=rows).rev() {
            for c in 1..=cols {
                let cell = Cell { col: c, row: r };
                let ch = match marks.get(&cell) {
                    Some(&m) => m,
                    None if self.contains(cell) => '*',
                    None => '.',
                };
                s.push(ch);
            }
            s.push('\n');
        }
        s.push_str(&"-".repeat(cols as usize));
        s.push('\n');
        s
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cells().cmp(&other.cells())
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cells().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_diagram() {
        let d = Diagram::composition(&Composition::from(vec![0, 2, 1]));
        assert_eq!(d, Diagram::from_pairs(&[(1, 2), (2, 2), (1, 3)]));
        assert!(Diagram::composition(&Composition::zero(3)).is_empty());
        let d = Diagram::composition(&Composition::from(vec![1, 0, 3, 1, 0, 2]));
        assert_eq!(d.len(), 7);
        let occupied: Vec<u32> = (1..=6).filter(|&r| !d.row_cols(r).is_empty()).collect();
        assert_eq!(occupied, vec![1, 3, 4, 6]);
    }

    #[test]
    fn weight_and_errors() {
        let d = Diagram::from_pairs(&[(1, 2), (2, 1), (1, 3)]);
        assert_eq!(d.weight(3).unwrap(), Composition::from(vec![1, 1, 1]));
        assert!(d.weight(2).is_err());
        assert_eq!(Diagram::empty().weight(4).unwrap(), Composition::zero(4));
    }

    #[test]
    fn render_and_json() {
        let d = Diagram::from_pairs(&[(1, 2), (2, 2), (1, 3)]);
        assert_eq!(d.render(3, 2), "*.\n**\n..\n--\n");
        let j = d.to_json();
        assert_eq!(j.to_string(), r#"{"cells":[[1,2],[1,3],[2,2]]}"#);
        assert_eq!(Diagram::from_json(&j).unwrap(), d);
    }

    #[test]
    fn remove_trims() {
        let mut d = Diagram::from_pairs(&[(1, 1), (3, 1)]);
        d.remove(Cell::new(3, 1));
        assert_eq!(d.num_cols(), 1);
        assert_eq!(d, Diagram::from_pairs(&[(1, 1)]));
    }
}
