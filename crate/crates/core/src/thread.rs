use serde::Serialize;

use crate::composition::Composition;
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};

/// A chain of cells, one per column, running right to left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Thread {
    pub cells: Vec<Cell>,
    pub terminal_row: Option<u32>,
}

impl Thread {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Greedy thread decomposition: seed at the rightmost, then lowest,
/// unthreaded cell; from column c+1 continue to the lowest unthreaded cell
/// of column c weakly above.
pub fn thread_decomposition(d: &Diagram) -> Vec<Thread> {
    let ncols = d.num_cols();
    // remaining[c] = unthreaded rows in column c+1
    let mut remaining: Vec<u64> = (1..=ncols).map(|c| d.column_mask(c)).collect();
    let mut threads = Vec::new();
    while let Some(ci) = remaining.iter().rposition(|&m| m != 0) {
        let mut col = ci as u32 + 1;
        let mut row = remaining[ci].trailing_zeros() + 1;
        remaining[ci] &= !(1u64 << (row - 1));
        let mut cells = vec![Cell::new(col, row)];
        while col > 1 {
            let above = remaining[col as usize - 2] & !((1u64 << (row - 1)) - 1);
            if above == 0 {
                break;
            }
            col -= 1;
            row = above.trailing_zeros() + 1;
            remaining[col as usize - 1] &= !(1u64 << (row - 1));
            cells.push(Cell::new(col, row));
        }
        let terminal_row = (col == 1).then_some(row);
        threads.push(Thread {
            cells,
            terminal_row,
        });
    }
    threads
}

/// Every thread ends in column 1.
pub fn is_rectified(d: &Diagram) -> bool {
    thread_decomposition(d)
        .iter()
        .all(|t| t.terminal_row.is_some())
}

/// θ(D): entry r is the size of the thread ending at (1, r).
pub fn thread_weight(d: &Diagram, len: usize) -> Result<Composition> {
    let mut w = vec![0u32; len];
    for t in thread_decomposition(d) {
        let r = t.terminal_row.ok_or(Error::NotRectified)?;
        if r as usize > len {
            return Err(Error::WeightTooShort { len, row: r });
        }
        w[r as usize - 1] = t.len() as u32;
    }
    Ok(Composition::new(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let t = thread_decomposition(&Diagram::from_pairs(&[(1, 1)]));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].terminal_row, Some(1));
        assert!(!is_rectified(&Diagram::from_pairs(&[(2, 1)])));
        assert_eq!(
            thread_weight(&Diagram::from_pairs(&[(2, 1)]), 1),
            Err(Error::NotRectified)
        );
    }

    #[test]
    fn composition_diagrams_have_their_own_weight() {
        for v in [vec![0, 1, 2], vec![3, 0, 1], vec![2, 2, 0, 1]] {
            let a = Composition::from(v);
            let d = Diagram::composition(&a);
            assert!(is_rectified(&d));
            assert_eq!(thread_weight(&d, a.len()).unwrap(), a);
        }
    }
}
