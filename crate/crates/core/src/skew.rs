use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::chain::{k_chain_covers, KChainStep};
use crate::composition::{leq, Composition};
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::insertion::IteratedInsertion;
use crate::labeling::proper_labeling;
use crate::tableau::{ReverseTableau, TwoLineArray};

const INF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SkewKind {
    Atomic,
    Key,
}

/// A filling of the skew diagram of ambient/base cut out by a ⊆_k chain.
/// Atomic tableaux live in D(α) with α ⪯ γ, key tableaux in D(γ).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SkewTableau {
    pub kind: SkewKind,
    pub k: u32,
    pub base: Composition,
    pub chain: Vec<KChainStep>,
    pub ambient: Composition,
    pub entries: BTreeMap<Cell, u32>,
}

/// γ at the end of a chain starting at β.
pub fn chain_target(beta: &Composition, chain: &[KChainStep]) -> Composition {
    chain.last().map_or_else(|| beta.clone(), |s| s.after.clone())
}

/// x_i = the cell labeled r_i in column c_i of L_γ(D(α)), in chain order.
pub fn skew_shape(alpha: &Composition, beta: &Composition, chain: &[KChainStep]) -> Result<Vec<Cell>> {
    let gamma = chain_target(beta, chain);
    if !leq(alpha, &gamma) {
        return Err(Error::NotBelow {
            lower: alpha.clone(),
            upper: gamma,
        });
    }
    let lab = proper_labeling(&Diagram::composition(alpha), &gamma)?;
    chain
        .iter()
        .map(|s| {
            lab.row_of(s.added_column, s.extended_row)
                .map(|row| Cell::new(s.added_column, row))
                .ok_or_else(|| {
                    Error::Invariant(format!(
                        "no label {} in column {} of L_{gamma:?}(D({alpha:?}))",
                        s.extended_row, s.added_column
                    ))
                })
        })
        .collect()
}

/// The added cells (c_i, r_i) of a chain, which are the skew cells of D(γ).
pub fn key_cells(chain: &[KChainStep]) -> Vec<Cell> {
    chain
        .iter()
        .map(|s| Cell::new(s.added_column, s.extended_row))
        .collect()
}

/// The top row (k^{λ_k}, …, 1^{λ_1}) of the two-line array of any R ∈ SSRT(λ).
pub fn record_word(lambda: &Composition) -> Vec<u32> {
    (1..=lambda.len())
        .rev()
        .flat_map(|q| std::iter::repeat_n(q as u32, lambda.get(q) as usize))
        .collect()
}

/// All ⊆_k chains of the given length starting at β.
pub fn k_chains(beta: &Composition, k: u32, len: usize) -> Vec<Vec<KChainStep>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend_chains(beta, k, len, &mut cur, &mut out);
    out
}

fn extend_chains(
    b: &Composition,
    k: u32,
    len: usize,
    cur: &mut Vec<KChainStep>,
    out: &mut Vec<Vec<KChainStep>>,
) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for (next, step) in k_chain_covers(b, k) {
        cur.push(step);
        extend_chains(&next, k, len, cur, out);
        cur.pop();
    }
}

impl SkewTableau {
    pub fn target(&self) -> Composition {
        chain_target(&self.base, &self.chain)
    }

    /// Skew cells in chain order.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        skew_shape(&self.ambient, &self.base, &self.chain)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// wt_i = number of skew cells with entry i, as a vector of length k.
    pub fn weight(&self) -> Composition {
        let mut w = vec![0u32; self.k as usize];
        for &e in self.entries.values() {
            if e as usize > w.len() {
                w.resize(e as usize, 0);
            }
            w[e as usize - 1] += 1;
        }
        Composition::new(w)
    }

    /// Entry of a cell of D(ambient), with the virtual conventions: ∞
    /// (`u32::MAX`) for unrecorded cells in column 1, the left neighbor's
    /// entry for other unrecorded cells, and nothing above row k.
    pub fn value_at(&self, cell: Cell) -> Option<u32> {
        self.value(&Diagram::composition(&self.ambient), cell)
    }

    fn value(&self, d: &Diagram, cell: Cell) -> Option<u32> {
        if cell.row > self.k || !d.contains(cell) {
            return None;
        }
        if let Some(&e) = self.entries.get(&cell) {
            return Some(e);
        }
        if cell.col == 1 {
            return Some(INF);
        }
        self.value(d, Cell::new(cell.col - 1, cell.row))
    }

    fn rows_decrease(&self, d: &Diagram) -> bool {
        (1..=self.k).all(|r| {
            let vals: Vec<u32> = d
                .row_cols(r)
                .into_iter()
                .filter_map(|c| self.value(d, Cell::new(c, r)))
                .collect();
            vals.windows(2).all(|w| w[0] >= w[1])
        })
    }

    fn columns_distinct(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.entries.iter().all(|(c, &e)| seen.insert((c.col, e)))
    }

    fn well_formed(&self, kind: SkewKind) -> bool {
        self.kind == kind
            && match self.cells() {
                Ok(cells) => {
                    let set: BTreeSet<Cell> = cells.into_iter().collect();
                    set.len() == self.chain.len()
                        && set.iter().eq(self.entries.keys())
                        && self.entries.values().all(|&e| e >= 1)
                }
                Err(_) => false,
            }
    }

    /// Conditions (1)–(3) of an atomic tableau.
    pub fn is_atomic(&self) -> bool {
        if !self.well_formed(SkewKind::Atomic) {
            return false;
        }
        let d = Diagram::composition(&self.ambient);
        if !self.rows_decrease(&d) || !self.columns_distinct() {
            return false;
        }
        // t > r in one column with t above r needs s > r right of t
        for (&rc, &r) in &self.entries {
            for i in rc.row + 1..=self.k {
                let tc = Cell::new(rc.col, i);
                let Some(t) = self.value(&d, tc) else { continue };
                if t > r {
                    match self.value(&d, Cell::new(rc.col + 1, i)) {
                        Some(s) if s > r => {}
                        _ => return false,
                    }
                }
            }
        }
        true
    }

    /// Conditions (1)–(3) of a key tableau.
    pub fn is_key(&self) -> bool {
        if !self.well_formed(SkewKind::Key) {
            return false;
        }
        let d = Diagram::composition(&self.ambient);
        if !self.rows_decrease(&d) || !self.columns_distinct() {
            return false;
        }
        // t ≥ r with r < ∞ strictly below and right in the next column
        // needs s > r right of t
        for c in 1..d.num_cols() {
            for j in 1..=self.k {
                let Some(r) = self.value(&d, Cell::new(c + 1, j)) else { continue };
                if r == INF {
                    continue;
                }
                for i in j + 1..=self.k {
                    let Some(t) = self.value(&d, Cell::new(c, i)) else { continue };
                    if t >= r {
                        match self.value(&d, Cell::new(c + 1, i)) {
                            Some(s) if s > r => {}
                            _ => return false,
                        }
                    }
                }
            }
        }
        true
    }

    /// Reading the skew cells by decreasing entry, left to right among equal
    /// entries, visits them in chain order. A filling satisfying this
    /// determines its chain by peeling smallest entries.
    pub fn reads_chain(&self) -> bool {
        let Ok(cells) = self.cells() else { return false };
        let mut ord: Vec<(&Cell, &u32)> = self.entries.iter().collect();
        ord.sort_by(|a, b| b.1.cmp(a.1).then(a.0.col.cmp(&b.0.col)));
        ord.len() == cells.len() && ord.iter().zip(&cells).all(|((c, _), d)| *c == d)
    }

    /// For each q ≥ 2 and column c, entries q−1 in columns ≥ c never
    /// outnumber entries q.
    pub fn is_lattice(&self) -> bool {
        let top = self.entries.values().copied().max().unwrap_or(0).max(self.k) as usize;
        let mut counts = vec![0u32; top + 1];
        let mut by_col: Vec<(&Cell, &u32)> = self.entries.iter().collect();
        by_col.sort_by_key(|(c, _)| std::cmp::Reverse(c.col));
        let mut i = 0;
        while i < by_col.len() {
            let col = by_col[i].0.col;
            while i < by_col.len() && by_col[i].0.col == col {
                counts[*by_col[i].1 as usize] += 1;
                i += 1;
            }
            if (2..=top).any(|q| counts[q - 1] > counts[q]) {
                return false;
            }
        }
        true
    }

    /// The lattice condition read as "suffix weights are partitions".
    pub fn is_lattice_partition_reading(&self) -> bool {
        let maxc = self.entries.keys().map(|c| c.col).max().unwrap_or(0);
        (1..=maxc).all(|c| {
            let sub = SkewTableau {
                entries: self
                    .entries
                    .iter()
                    .filter(|(cell, _)| cell.col >= c)
                    .map(|(a, b)| (*a, *b))
                    .collect(),
                ..self.clone()
            };
            sub.weight().is_partition()
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<[u32; 3]> = self.entries.iter().map(|(c, &e)| [c.col, c.row, e]).collect();
        let chain: Vec<[u32; 2]> = self
            .chain
            .iter()
            .map(|s| [s.added_column, s.extended_row])
            .collect();
        serde_json::json!({
            "kind": self.kind,
            "k": self.k,
            "base": self.base,
            "chain": chain,
            "ambient": self.ambient,
            "cells": cells,
        })
    }

    /// D(ambient) with skew entries shown and other cells as `o`; rows
    /// above k are drawn but never carry entries.
    pub fn render(&self, rows: u32, cols: u32) -> String {
        let d = Diagram::composition(&self.ambient);
        let mut out = String::new();
        for r in (1..=rows).rev() {
            let mut line = String::from("|");
            for c in 1..=cols {
                let cell = Cell::new(c, r);
                let s = match self.entries.get(&cell) {
                    Some(e) => e.to_string(),
                    None if d.contains(cell) => "o".to_string(),
                    None => ".".to_string(),
                };
                line.push_str(&format!("{s:>2}"));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out.push('+');
        out.push_str(&"-".repeat(2 * cols as usize));
        out.push('\n');
        out
    }
}

/// The filling of a chain's skew cells by `record_word(λ)` in chain order,
/// the only candidate whose reading recovers the chain.
pub fn canonical_filling(
    kind: SkewKind,
    ambient: &Composition,
    beta: &Composition,
    chain: &[KChainStep],
    lambda: &Composition,
) -> Result<SkewTableau> {
    let word = record_word(lambda);
    if word.len() != chain.len() {
        return Err(Error::LengthMismatch(word.len(), chain.len()));
    }
    let cells = match kind {
        SkewKind::Key => key_cells(chain),
        SkewKind::Atomic => skew_shape(ambient, beta, chain)?,
    };
    Ok(SkewTableau {
        kind,
        k: lambda.len() as u32,
        base: beta.clone(),
        chain: chain.to_vec(),
        ambient: ambient.clone(),
        entries: cells.into_iter().zip(word).collect(),
    })
}

/// LKT for one chain, with k = length(λ): lattice key tableaux of weight λ
/// on the added cells that read back to the chain. At most one exists.
pub fn enumerate_lkt(
    beta: &Composition,
    chain: &[KChainStep],
    lambda: &Composition,
) -> Result<Vec<SkewTableau>> {
    if record_word(lambda).len() != chain.len() {
        return Ok(Vec::new());
    }
    let gamma = chain_target(beta, chain);
    let t = canonical_filling(SkewKind::Key, &gamma, beta, chain, lambda)?;
    Ok(if t.reads_chain() && t.is_key() && t.is_lattice() {
        vec![t]
    } else {
        Vec::new()
    })
}

/// LAT for one chain: the atomic filling of the skew shape α/β is realized
/// by some insertion, checked by excising from D(α) back to KD(β) and
/// re-inserting. At most one exists.
pub fn enumerate_lat(
    alpha: &Composition,
    beta: &Composition,
    chain: &[KChainStep],
    lambda: &Composition,
) -> Result<Vec<SkewTableau>> {
    let word = record_word(lambda);
    if word.len() != chain.len() || !leq(alpha, &chain_target(beta, chain)) {
        return Ok(Vec::new());
    }
    let k = lambda.len() as u32;
    let t = canonical_filling(SkewKind::Atomic, alpha, beta, chain, lambda)?;
    let mut u = Diagram::composition(alpha);
    let mut rows = vec![0; chain.len()];
    for (i, step) in chain.iter().enumerate().rev() {
        match crate::insertion::excise(&u, &step.before, k) {
            Ok((prev, r)) => {
                u = prev;
                rows[i] = r;
            }
            Err(_) => return Ok(Vec::new()),
        }
    }
    let Ok(run) = crate::insertion::iterated_insert(&u, beta, k, &rows) else {
        return Ok(Vec::new());
    };
    let same_chain = run.steps.iter().zip(chain).all(|(s, c)| s.chain_step == *c);
    let biword = TwoLineArray {
        pairs: word.into_iter().zip(rows).collect(),
    };
    let (p, q) = ReverseTableau::from_biword(k as usize, &biword)
        .unwrap_or_else(|_| (ReverseTableau::empty(0), ReverseTableau::empty(0)));
    let ok = same_chain
        && run.diagram == Diagram::composition(alpha)
        && p.is_valid()
        && p.shape() == *lambda
        && q == ReverseTableau::superstandard(lambda);
    Ok(if ok { vec![t] } else { Vec::new() })
}

/// Moves entries from the cells x_i of D(α) to the added cells of D(γ).
pub fn atomic_to_key(t: &SkewTableau) -> Result<SkewTableau> {
    if t.kind != SkewKind::Atomic {
        return Err(Error::Invalid("expected an atomic tableau".into()));
    }
    let from = t.cells()?;
    let to = key_cells(&t.chain);
    relocate(t, SkewKind::Key, t.target(), &from, &to)
}

/// Moves entries from the added cells of D(γ) to the cells x_i of D(α).
pub fn key_to_atomic(u: &SkewTableau, alpha: &Composition) -> Result<SkewTableau> {
    if u.kind != SkewKind::Key {
        return Err(Error::Invalid("expected a key tableau".into()));
    }
    let from = key_cells(&u.chain);
    let to = skew_shape(alpha, &u.base, &u.chain)?;
    relocate(u, SkewKind::Atomic, alpha.clone(), &from, &to)
}

fn relocate(
    t: &SkewTableau,
    kind: SkewKind,
    ambient: Composition,
    from: &[Cell],
    to: &[Cell],
) -> Result<SkewTableau> {
    let entries = from
        .iter()
        .zip(to)
        .map(|(f, d)| {
            t.entries
                .get(f)
                .map(|&e| (*d, e))
                .ok_or_else(|| Error::Invalid(format!("no entry at skew cell {f}")))
        })
        .collect::<Result<BTreeMap<Cell, u32>>>()?;
    if entries.len() != t.entries.len() {
        return Err(Error::Invalid("skew cells do not match the entries".into()));
    }
    Ok(SkewTableau {
        kind,
        ambient,
        entries,
        ..t.clone()
    })
}

/// The atomic recording tableau of an iterated insertion: the cell added at
/// step i carries q_i, inside D(θ(U)).
pub fn record(run: &IteratedInsertion, biword: &TwoLineArray, k: u32) -> Result<SkewTableau> {
    if biword.pairs.len() != run.steps.len() {
        return Err(Error::LengthMismatch(biword.pairs.len(), run.steps.len()));
    }
    if let Some(i) = (0..run.steps.len()).find(|&i| run.steps[i].inserted_row != biword.pairs[i].1) {
        return Err(Error::Invalid(format!(
            "step {} inserted {} but the biword has {}",
            i + 1,
            run.steps[i].inserted_row,
            biword.pairs[i].1
        )));
    }
    let beta = run.betas[0].clone();
    let alpha = crate::thread::thread_weight(&run.diagram, beta.len())?;
    let chain: Vec<KChainStep> = run.steps.iter().map(|s| s.chain_step.clone()).collect();
    let cells = skew_shape(&alpha, &beta, &chain)?;
    let entries = cells.into_iter().zip(biword.top()).collect();
    Ok(SkewTableau {
        kind: SkewKind::Atomic,
        k,
        base: beta,
        chain,
        ambient: alpha,
        entries,
    })
}
