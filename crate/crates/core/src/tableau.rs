use std::fmt;

use serde::Serialize;

use crate::composition::Composition;
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::labeling::kd_membership;

/// A semistandard reverse tableau. Row r (1 = bottom) is `rows[r-1]`, read
/// left to right. Rows weakly decrease, columns strictly decrease downward,
/// and the shape is a weakly increasing partition.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReverseTableau {
    rows: Vec<Vec<u32>>,
}

/// Pairs (q_i, r_i) in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoLineArray {
    pub pairs: Vec<(u32, u32)>,
}

impl TwoLineArray {
    pub fn top(&self) -> Vec<u32> {
        self.pairs.iter().map(|p| p.0).collect()
    }

    pub fn bottom(&self) -> Vec<u32> {
        self.pairs.iter().map(|p| p.1).collect()
    }
}

impl ReverseTableau {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = ReverseTableau { rows };
        if !t.is_valid() {
            return Err(Error::Invalid(format!("not a reverse tableau: {t:?}")));
        }
        Ok(t)
    }

    pub fn empty(len: usize) -> Self {
        ReverseTableau {
            rows: vec![Vec::new(); len],
        }
    }

    /// R_λ: every entry of row r equals r.
    pub fn superstandard(lambda: &Composition) -> Self {
        let rows = (1..=lambda.len())
            .map(|r| vec![r as u32; lambda.get(r) as usize])
            .collect();
        ReverseTableau { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn shape(&self) -> Composition {
        Composition::new(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r - 1]
    }

    pub fn entry(&self, cell: Cell) -> Option<u32> {
        self.rows
            .get(cell.row as usize - 1)?
            .get(cell.col as usize - 1)
            .copied()
    }

    pub fn is_valid(&self) -> bool {
        let m = self.rows.len() as u32;
        if !self.shape().is_partition() {
            return false;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.iter().any(|&e| e == 0 || e > m) || row.windows(2).any(|w| w[0] < w[1]) {
                return false;
            }
            if let Some(above) = self.rows.get(i + 1) {
                // the row above is at least as long
                if row.iter().zip(above).any(|(lo, hi)| lo >= hi) {
                    return false;
                }
            }
        }
        true
    }

    /// wt(R): entry i counts the entries equal to i.
    pub fn weight(&self) -> Composition {
        let mut w = vec![0u32; self.rows.len()];
        for row in &self.rows {
            for &e in row {
                w[e as usize - 1] += 1;
            }
        }
        Composition::new(w)
    }

    /// Row insertion from the top row down: x replaces the leftmost entry
    /// strictly smaller than x, which moves to the row below.
    pub fn rsk_insert(&self, x: u32) -> Result<(ReverseTableau, Cell)> {
        let m = self.rows.len();
        if x == 0 || x as usize > m {
            return Err(Error::Invalid(format!("entry {x} outside 1..={m}")));
        }
        let mut rows = self.rows.clone();
        let mut x = x;
        for r in (1..=m).rev() {
            let row = &mut rows[r - 1];
            match row.iter().position(|&e| e < x) {
                Some(j) => x = std::mem::replace(&mut row[j], x),
                None => {
                    row.push(x);
                    let cell = Cell::new(row.len() as u32, r as u32);
                    return Ok((ReverseTableau { rows }, cell));
                }
            }
        }
        Err(Error::Invalid(format!("insertion of {x} fell off row 1")))
    }

    /// Inverse of `rsk_insert` given the cell it created.
    pub fn rsk_reverse(&self, cell: Cell) -> Result<(ReverseTableau, u32)> {
        let (c, r) = (cell.col as usize, cell.row as usize);
        let m = self.rows.len();
        if r == 0 || r > m || self.rows[r - 1].len() != c {
            return Err(Error::Invalid(format!("{cell} is not a removable corner")));
        }
        if r < m && self.rows[r].len() < c {
            return Err(Error::Invalid(format!("{cell} is not a removable corner")));
        }
        let mut rows = self.rows.clone();
        let mut y = rows[r - 1].pop().expect("nonempty row");
        for row in rows.iter_mut().skip(r) {
            let j = row
                .iter()
                .rposition(|&e| e > y)
                .ok_or_else(|| Error::Invalid("malformed tableau".into()))?;
            y = std::mem::replace(&mut row[j], y);
        }
        Ok((ReverseTableau { rows }, y))
    }

    /// The unique two-line array with top row (m^{λ_m}, …, 1^{λ_1}) whose
    /// insertion gives (self, R_λ).
    pub fn to_biword(&self) -> Result<TwoLineArray> {
        if !self.is_valid() {
            return Err(Error::Invalid(format!("not a reverse tableau: {self:?}")));
        }
        let mut p = self.clone();
        let mut pairs = Vec::new();
        for q in 1..=self.rows.len() {
            for c in (1..=self.rows[q - 1].len()).rev() {
                let (next, y) = p.rsk_reverse(Cell::new(c as u32, q as u32))?;
                pairs.push((q as u32, y));
                p = next;
            }
        }
        pairs.reverse();
        Ok(TwoLineArray { pairs })
    }

    /// Inserts the bottom row of a biword, returning (P, Q).
    pub fn from_biword(len: usize, w: &TwoLineArray) -> Result<(ReverseTableau, ReverseTableau)> {
        let mut p = ReverseTableau::empty(len);
        let mut q = ReverseTableau::empty(len);
        for &(top, bottom) in &w.pairs {
            let (next, cell) = p.rsk_insert(bottom)?;
            p = next;
            q.rows[cell.row as usize - 1].push(top);
        }
        Ok((p, q))
    }

    /// Top row first, entries separated by spaces.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in self.rows.iter().rev() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for ReverseTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "[{}]", rows.join("/"))
    }
}

/// SSRT(λ), in lexicographic order of rows.
pub fn generate_ssrt(lambda: &Composition) -> Result<Vec<ReverseTableau>> {
    if !lambda.is_partition() {
        return Err(Error::NotPartition(lambda.clone()));
    }
    let m = lambda.len();
    let cells: Vec<Cell> = (1..=m)
        .rev()
        .flat_map(|r| (1..=lambda.get(r)).map(move |c| Cell::new(c, r as u32)))
        .collect();
    let mut rows: Vec<Vec<u32>> = (1..=m).map(|r| vec![0; lambda.get(r) as usize]).collect();
    let mut out = Vec::new();
    fill(&cells, 0, m as u32, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

fn fill(cells: &[Cell], i: usize, m: u32, rows: &mut [Vec<u32>], out: &mut Vec<ReverseTableau>) {
    let Some(&cell) = cells.get(i) else {
        out.push(ReverseTableau {
            rows: rows.to_vec(),
        });
        return;
    };
    let (c, r) = (cell.col as usize - 1, cell.row as usize - 1);
    let mut hi = m;
    if c > 0 {
        hi = hi.min(rows[r][c - 1]);
    }
    if r + 1 < rows.len() {
        hi = hi.min(rows[r + 1][c] - 1);
    }
    // room for the cells still to come below in this column
    let below = (0..r).filter(|&q| rows[q].len() > c).count() as u32;
    for e in below + 1..=hi {
        rows[r][c] = e;
        fill(cells, i + 1, m, rows, out);
    }
    rows[r][c] = 0;
}

/// Lifts cells to the top of their columns, entry = original row. The
/// result has `len` rows.
pub fn lift(d: &Diagram, len: usize) -> Result<ReverseTableau> {
    if d.max_row() as usize > len {
        return Err(Error::WeightTooShort {
            len,
            row: d.max_row(),
        });
    }
    let mut rows = vec![Vec::new(); len];
    for c in 1..=d.num_cols() {
        if c > 1 && d.column_len(c) > d.column_len(c - 1) {
            return Err(Error::Invalid(format!("column {c} is taller than column {}", c - 1)));
        }
        for (i, &e) in d.column_rows(c).iter().rev().enumerate() {
            rows[len - 1 - i].push(e);
        }
    }
    let t = ReverseTableau { rows };
    if !t.is_valid() {
        return Err(Error::Invalid(format!("lift of {d:?} is not a reverse tableau")));
    }
    Ok(t)
}

/// φ: KD(α) → SSRT(λ(α)).
pub fn phi(d: &Diagram, alpha: &Composition) -> Result<ReverseTableau> {
    if !kd_membership(d, alpha) {
        return Err(Error::NotInKd(alpha.clone()));
    }
    lift(d, alpha.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    #[test]
    fn ssrt_012() {
        let all = generate_ssrt(&c(&[0, 1, 2])).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|t| t.is_valid() && t.shape() == c(&[0, 1, 2])));
        assert_eq!(generate_ssrt(&c(&[0, 0])).unwrap(), vec![ReverseTableau::empty(2)]);
        assert_eq!(generate_ssrt(&c(&[2, 1])), Err(Error::NotPartition(c(&[2, 1]))));
    }

    #[test]
    fn appendix_biword() {
        let r = ReverseTableau::new(vec![vec![], vec![], vec![3, 1], vec![4, 3, 2]]).unwrap();
        let w = r.to_biword().unwrap();
        assert_eq!(w.top(), vec![4, 4, 4, 3, 3]);
        assert_eq!(w.bottom(), vec![3, 3, 1, 4, 2]);
        let (p, q) = ReverseTableau::from_biword(4, &w).unwrap();
        assert_eq!(p, r);
        assert_eq!(q, ReverseTableau::superstandard(&c(&[0, 0, 2, 3])));
    }

    #[test]
    fn max_entry_appends_to_top_row() {
        let r = ReverseTableau::superstandard(&c(&[0, 1, 2]));
        let (p, cell) = r.rsk_insert(3).unwrap();
        assert_eq!(cell, Cell::new(3, 3));
        assert_eq!(p.row(3), &[3, 3, 3]);
    }

    #[test]
    fn lift_of_partition_diagram_is_superstandard() {
        let l = c(&[0, 1, 2]);
        assert_eq!(
            phi(&Diagram::composition(&l), &l).unwrap(),
            ReverseTableau::superstandard(&l)
        );
    }
}
