use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::Deserialize;

use crate::composition::Composition;
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::thread::thread_decomposition;

/// A labeling of a diagram together with its shape.
///
/// Column `c` is stored as `(row, label)` pairs sorted by row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling {
    shape: Composition,
    cols: Vec<Vec<(u32, u32)>>,
}

impl Labeling {
    pub fn from_entries(shape: Composition, entries: &[(Cell, u32)]) -> Self {
        let ncols = entries.iter().map(|(c, _)| c.col).max().unwrap_or(0);
        let mut cols = vec![Vec::new(); ncols as usize];
        for &(cell, label) in entries {
            cols[cell.col as usize - 1].push((cell.row, label));
        }
        for col in &mut cols {
            col.sort_unstable();
        }
        Labeling { shape, cols }
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn num_cols(&self) -> u32 {
        self.cols.len() as u32
    }

    pub fn diagram(&self) -> Diagram {
        Diagram::from_cells(self.entries().into_iter().map(|(c, _)| c))
    }

    /// `(row, label)` pairs of a column, bottom to top.
    pub fn column(&self, col: u32) -> &[(u32, u32)] {
        if col == 0 {
            return &[];
        }
        self.cols
            .get(col as usize - 1)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    pub fn label_at(&self, cell: Cell) -> Option<u32> {
        self.column(cell.col)
            .iter()
            .find(|(r, _)| *r == cell.row)
            .map(|&(_, l)| l)
    }

    /// Row of the cell labeled `label` in column `col`.
    pub fn row_of(&self, col: u32, label: u32) -> Option<u32> {
        self.column(col)
            .iter()
            .find(|(_, l)| *l == label)
            .map(|&(r, _)| r)
    }

    pub fn entries(&self) -> Vec<(Cell, u32)> {
        let mut out = Vec::new();
        for (i, col) in self.cols.iter().enumerate() {
            for &(r, l) in col {
                out.push((Cell::new(i as u32 + 1, r), l));
            }
        }
        out
    }

    fn max_col(&self) -> u32 {
        self.num_cols().max(self.shape.max_part())
    }

    pub fn is_strict(&self) -> bool {
        (1..=self.max_col()).all(|c| {
            let mut have: Vec<u32> = self.column(c).iter().map(|&(_, l)| l).collect();
            have.sort_unstable();
            let want: Vec<u32> = (1..=self.shape.len())
                .filter(|&i| self.shape.get(i) >= c)
                .map(|i| i as u32)
                .collect();
            have == want
        })
    }

    pub fn is_flagged(&self) -> bool {
        self.entries().iter().all(|(cell, l)| *l >= cell.row)
    }

    pub fn is_descending(&self) -> bool {
        for c in 1..self.num_cols() {
            for &(row, l) in self.column(c + 1) {
                match self.row_of(c, l) {
                    Some(left) if left >= row => {}
                    _ => return false,
                }
            }
        }
        true
    }

    pub fn is_semi_proper(&self) -> bool {
        self.is_strict() && self.is_flagged() && self.is_descending()
    }

    /// Condition (iv): if r < s share a column with r above s, the r one
    /// column to the right lies strictly above that s.
    pub fn is_minimal(&self) -> bool {
        for c in 1..=self.num_cols() {
            let col = self.column(c);
            for &(rs, s) in col {
                for &(rr, r) in col {
                    if r < s && rr > rs {
                        match self.row_of(c + 1, r) {
                            Some(q) if q > rs => {}
                            _ => return false,
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_proper(&self) -> bool {
        self.is_semi_proper() && self.is_minimal()
    }

    pub fn is_pinned(&self) -> bool {
        self.column(1).iter().all(|&(r, l)| r == l)
    }

    /// Shape recomputed from the entries; `None` if some label skips a column.
    pub fn recomputed_shape(&self) -> Option<Composition> {
        let n = self.shape.len();
        let mut counts = vec![0u32; n];
        for c in 1..=self.num_cols() {
            for &(_, l) in self.column(c) {
                let i = l as usize;
                if i == 0 || i > n || counts[i - 1] != c - 1 {
                    return None;
                }
                counts[i - 1] = c;
            }
        }
        Some(Composition::new(counts))
    }

    /// s touches r at column c: the s in column c+1 is weakly below the r in column c.
    pub fn touches(&self, r: u32, s: u32, c: u32) -> bool {
        match (self.row_of(c, r), self.row_of(c + 1, s)) {
            (Some(rr), Some(sr)) => sr <= rr,
            _ => false,
        }
    }

    /// s touches r at c and an r lies above that s in column c+1.
    pub fn crosses(&self, r: u32, s: u32, c: u32) -> bool {
        if !self.touches(r, s, c) {
            return false;
        }
        let sr = self.row_of(c + 1, s).unwrap();
        matches!(self.row_of(c + 1, r), Some(q) if q > sr)
    }

    pub fn abuts(&self, r: u32, s: u32, c: u32) -> bool {
        r < s && self.touches(r, s, c) && !self.crosses(r, s, c)
    }

    /// A vacant position x in column c+1 abuts r: the r in column c is
    /// weakly above x, and r either ends at column c or sits strictly below x
    /// in column c+1.
    pub fn vacancy_abuts(&self, x: Cell, r: u32) -> bool {
        if x.col < 2 {
            return false;
        }
        let c = x.col - 1;
        match self.row_of(c, r) {
            Some(rr) if rr >= x.row => match self.row_of(c + 1, r) {
                None => true,
                Some(q) => q < x.row,
            },
            _ => false,
        }
    }

    /// L^c_{r,s}: swap r and s in columns c+1..=d.
    pub fn exchange(&self, r: u32, s: u32, c: u32) -> Result<Labeling> {
        if !self.abuts(r, s, c) {
            return Err(Error::NotAbutting { r, s, c });
        }
        let d = (c + 1..self.num_cols())
            .find(|&d| self.touches(r, s, d))
            .unwrap_or_else(|| self.shape.get(s as usize));
        let mut out = self.clone();
        for col in c + 1..=d {
            if let Some(v) = out.cols.get_mut(col as usize - 1) {
                for (_, l) in v.iter_mut() {
                    if *l == r {
                        *l = s;
                    } else if *l == s {
                        *l = r;
                    }
                }
            }
        }
        out.shape = out
            .recomputed_shape()
            .ok_or_else(|| Error::Invariant(format!("exchange L^{c}_{{{r},{s}}} broke the shape")))?;
        Ok(out)
    }

    /// All exchange labelings available from this one.
    pub fn exchanges(&self) -> Vec<Labeling> {
        let mut out = Vec::new();
        for c in 1..self.num_cols() {
            for &(_, r) in self.column(c) {
                for &(_, s) in self.column(c + 1) {
                    if self.abuts(r, s, c) {
                        if let Ok(l) = self.exchange(r, s, c) {
                            out.push(l);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<[u32; 3]> = self
            .entries()
            .iter()
            .map(|(c, l)| [c.col, c.row, *l])
            .collect();
        serde_json::json!({ "shape": self.shape, "entries": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            shape: Vec<u32>,
            entries: Vec<[u32; 3]>,
        }
        let raw: Raw =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let entries: Vec<(Cell, u32)> = raw
            .entries
            .iter()
            .map(|&[c, r, l]| {
                if c == 0 || r == 0 {
                    Err(Error::Parse(format!("bad cell ({c},{r})")))
                } else {
                    Ok((Cell::new(c, r), l))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Labeling::from_entries(Composition::new(raw.shape), &entries))
    }

    /// Grid of labels, top row first, `.` for vacancies.
    pub fn render(&self, rows: u32, cols: u32) -> String {
        self.render_marked(rows, cols, &BTreeMap::new())
    }

    pub fn render_marked(&self, rows: u32, cols: u32, marks: &BTreeMap<Cell, String>) -> String {
        let map: BTreeMap<Cell, u32> = self.entries().into_iter().collect();
        let rows = rows.max(map.keys().map(|c| c.row).max().unwrap_or(0));
        let cols = cols.max(self.num_cols()).max(1);
        let width = map
            .values()
            .map(|l| l.to_string().len())
            .chain(marks.values().map(|m| m.chars().count()))
            .max()
            .unwrap_or(1);
        let mut s = String::new();
        for r in (1..=rows).rev() {
            let mut line = Vec::new();
            for c in 1..=cols {
                let cell = Cell { col: c, row: r };
                let text = match (marks.get(&cell), map.get(&cell)) {
                    (Some(m), _) => m.clone(),
                    (None, Some(l)) => l.to_string(),
                    (None, None) => ".".to_string(),
                };
                line.push(format!("{text:>width$}"));
            }
            s.push_str(line.join(" ").trim_end());
            s.push('\n');
        }
        s.push_str(&"-".repeat(cols as usize * (width + 1) - 1));
        s.push('\n');
        s
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling{:?}{{", self.shape)?;
        for (i, (c, l)) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}:{l}")?;
        }
        write!(f, "}}")
    }
}

/// L_α(T). Fails if some column has the wrong number of cells or some cell
/// has no legal label. The result may still be unflagged.
pub fn proper_labeling(t: &Diagram, alpha: &Composition) -> Result<Labeling> {
    let n = alpha.len();
    let ncols = t.num_cols().max(alpha.max_part());
    let mut cols: Vec<Vec<(u32, u32)>> = vec![Vec::new(); ncols as usize];
    for c in (1..=ncols).rev() {
        let rows = t.column_rows(c);
        let mut avail: Vec<u32> = (1..=n)
            .filter(|&i| alpha.get(i) >= c)
            .map(|i| i as u32)
            .collect();
        if rows.len() != avail.len() {
            return Err(Error::ColumnCount {
                column: c,
                cells: rows.len(),
                labels: avail.len(),
            });
        }
        let right: Vec<(u32, u32)> = if c < ncols {
            cols[c as usize].clone()
        } else {
            Vec::new()
        };
        for row in rows {
            let pick = avail.iter().position(|&i| {
                match right.iter().find(|&&(_, l)| l == i) {
                    None => true,
                    Some(&(q, _)) => q <= row,
                }
            });
            let Some(p) = pick else {
                return Err(Error::NoLegalLabel(Cell::new(c, row)));
            };
            let label = avail.remove(p);
            cols[c as usize - 1].push((row, label));
        }
    }
    while cols.last().is_some_and(|v| v.is_empty()) {
        cols.pop();
    }
    Ok(Labeling {
        shape: alpha.clone(),
        cols,
    })
}

/// L_α(T), additionally rejecting unflagged results.
pub fn proper_labeling_checked(t: &Diagram, alpha: &Composition) -> Result<Labeling> {
    let l = proper_labeling(t, alpha)?;
    if let Some((cell, label)) = l.entries().into_iter().find(|(c, l)| *l < c.row) {
        return Err(Error::FlagViolated { cell, label });
    }
    Ok(l)
}

/// T ∈ KD(α) iff L_α(T) exists and is flagged.
pub fn kd_membership(t: &Diagram, alpha: &Composition) -> bool {
    t.max_row() as usize <= alpha.len() && proper_labeling_checked(t, alpha).is_ok()
}

/// L_θ(T): every cell of a thread carries the thread's terminal row.
pub fn atomic_labeling(t: &Diagram, len: usize) -> Result<Labeling> {
    let mut entries = Vec::new();
    let mut shape = vec![0u32; len];
    for th in thread_decomposition(t) {
        let r = th.terminal_row.ok_or(Error::NotRectified)?;
        if r as usize > len {
            return Err(Error::WeightTooShort { len, row: r });
        }
        shape[r as usize - 1] = th.len() as u32;
        for &cell in &th.cells {
            entries.push((cell, r));
        }
    }
    Ok(Labeling::from_entries(Composition::new(shape), &entries))
}

/// Closure of L_α(T) under exchange labelings, sorted.
pub fn semi_proper_closure(t: &Diagram, alpha: &Composition) -> Result<Vec<Labeling>> {
    let start = proper_labeling_checked(t, alpha).map_err(|_| Error::NotInKd(alpha.clone()))?;
    if !start.is_pinned() {
        return Err(Error::NotInPkd(alpha.clone()));
    }
    Ok(exchange_closure(start))
}

pub(crate) fn exchange_closure(start: Labeling) -> Vec<Labeling> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(l) = queue.pop_front() {
        for next in l.exchanges() {
            debug_assert!(next.is_semi_proper(), "exchange left semi-proper set: {next:?}");
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<Labeling> = seen.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    #[test]
    fn composition_diagram_gets_row_labels() {
        let a = c(&[1, 0, 3, 1, 0, 4]);
        let l = proper_labeling(&Diagram::composition(&a), &a).unwrap();
        assert!(l.entries().iter().all(|(cell, lab)| cell.row == *lab));
        assert!(l.is_proper() && l.is_pinned());
        let cl = semi_proper_closure(&Diagram::composition(&a), &a).unwrap();
        assert_eq!(cl.len(), 1);
    }

    #[test]
    fn missing_column_one_is_unlabelable() {
        let t = Diagram::from_pairs(&[(2, 1)]);
        assert!(matches!(
            proper_labeling(&t, &c(&[0, 2])),
            Err(Error::ColumnCount { .. })
        ));
        assert!(!kd_membership(&t, &c(&[0, 2])));
    }

    #[test]
    fn flag_violation_is_reported() {
        // one cell in row 2, shape puts label 1 there
        let t = Diagram::from_pairs(&[(1, 2)]);
        assert!(matches!(
            proper_labeling_checked(&t, &c(&[1, 0])),
            Err(Error::FlagViolated { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let a = c(&[0, 2, 1]);
        let l = proper_labeling(&Diagram::composition(&a), &a).unwrap();
        let j = l.to_json();
        assert_eq!(
            j.to_string(),
            r#"{"entries":[[1,2,2],[1,3,3],[2,2,2]],"shape":[0,2,1]}"#
        );
        assert_eq!(Labeling::from_json(&j).unwrap(), l);
    }
}
