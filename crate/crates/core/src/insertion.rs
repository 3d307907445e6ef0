use std::collections::HashMap;

use serde::Serialize;

use crate::chain::{k_addable_positions, k_addition, KChainStep};
use crate::composition::{downset, leq, maximal_between, Composition};
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::kohnert::is_pinned_member;
use crate::labeling::{kd_membership, semi_proper_closure, Labeling};
use crate::thread::thread_weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Land,
    Bump,
    Pass,
}

/// One distinguished position on a bumping path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub kind: StepKind,
    pub position: Cell,
    pub bumped: Option<Cell>,
    pub label: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectificationTrace {
    pub steps: Vec<TraceStep>,
    pub landing_cell: Cell,
}

impl RectificationTrace {
    pub fn landing_column(&self) -> u32 {
        self.landing_cell.col
    }

    /// Every distinguished position, in order.
    pub fn path(&self) -> Vec<Cell> {
        self.steps.iter().map(|s| s.position).collect()
    }
}

/// What restricted rectification does at a single vacancy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decision {
    /// Case (1): x lands, taking this label.
    Land(u32),
    /// Case (2): x bumps this cell, taking this label.
    Bump(Cell, u32),
    /// Case (3): the vacancy passes to this position.
    Pass(Cell),
    /// No case applies and no vacant position lies to the left.
    Stuck,
}

/// Decides case (1), (2) or (3) for the vacancy `x` in `t`, quantifying
/// over the exchange closure of L_α(T).
pub fn rect_step(t: &Diagram, alpha: &Composition, x: Cell, k: u32) -> Result<Decision> {
    if x.col == 1 {
        return Ok(Decision::Land(x.row));
    }
    let closure = semi_proper_closure(t, alpha)?;
    Ok(decide(&closure, t, x, k))
}

pub(crate) fn decide(closure: &[Labeling], t: &Diagram, x: Cell, k: u32) -> Decision {
    let c = x.col - 1;
    let mut land: Option<u32> = None;
    let mut bump: Option<(Cell, u32)> = None;
    for l in closure {
        for &(row, r) in l.column(c) {
            if r > k || row < x.row {
                continue;
            }
            match l.row_of(c + 1, r) {
                None => land = Some(land.map_or(r, |m| m.min(r))),
                Some(q) if q < x.row => {
                    let y = Cell::new(c + 1, q);
                    bump = match bump {
                        Some((b, lb)) if (b.row, lb) <= (q, r) => Some((b, lb)),
                        _ => Some((y, r)),
                    };
                }
                Some(_) => {}
            }
        }
    }
    if let Some(r) = land {
        return Decision::Land(r);
    }
    if let Some((y, r)) = bump {
        return Decision::Bump(y, r);
    }
    match (1..x.col).rev().find(|&col| !t.contains(Cell::new(col, x.row))) {
        Some(col) => Decision::Pass(Cell::new(col, x.row)),
        // unreachable for valid labels; surfaced by the caller
        None => Decision::Stuck,
    }
}

/// Rect^(k)_α(T, x).
pub fn restricted_rectify(
    t: &Diagram,
    alpha: &Composition,
    x: Cell,
    k: u32,
) -> Result<(Diagram, RectificationTrace)> {
    if x.row > k {
        return Err(Error::RowAboveK { r: x.row, k });
    }
    if t.contains(x) {
        return Err(Error::Occupied(x));
    }
    if !is_pinned_member(t, alpha) {
        return Err(Error::NotInPkd(alpha.clone()));
    }
    let mut cur = t.clone();
    let mut x = x;
    let mut steps = Vec::new();
    loop {
        match rect_step(&cur, alpha, x, k)? {
            Decision::Land(r) => {
                steps.push(TraceStep {
                    kind: StepKind::Land,
                    position: x,
                    bumped: None,
                    label: Some(r),
                });
                cur.insert(x);
                return Ok((
                    cur,
                    RectificationTrace {
                        steps,
                        landing_cell: x,
                    },
                ));
            }
            Decision::Bump(y, r) => {
                steps.push(TraceStep {
                    kind: StepKind::Bump,
                    position: x,
                    bumped: Some(y),
                    label: Some(r),
                });
                cur.insert(x);
                cur.remove(y);
                x = y;
            }
            Decision::Stuck => {
                return Err(Error::Invariant(format!(
                    "no vacant position left of {x} in {cur:?}"
                )));
            }
            Decision::Pass(y) => {
                steps.push(TraceStep {
                    kind: StepKind::Pass,
                    position: x,
                    bumped: None,
                    label: None,
                });
                x = y;
            }
        }
    }
}

/// Result of a single restricted insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub diagram: Diagram,
    pub trace: RectificationTrace,
    /// The rectification label α, maximal with θ(T) ⪯⁰ α ⪯ β.
    pub alpha: Composition,
}

/// T ←^{β,k} r.
pub fn insert(t: &Diagram, beta: &Composition, k: u32, r: u32) -> Result<Insertion> {
    if r == 0 || r > k {
        return Err(Error::RowAboveK { r, k });
    }
    if r as usize > beta.len() {
        return Err(Error::Invalid(format!(
            "row {r} exceeds the composition length {}",
            beta.len()
        )));
    }
    if !kd_membership(t, beta) {
        return Err(Error::NotInKd(beta.clone()));
    }
    let theta = thread_weight(t, beta.len())?;
    let alpha = maximal_between(&theta, beta)?;
    let x = Cell::new(beta.max_part() + 1, r);
    let (diagram, trace) = restricted_rectify(t, &alpha, x, k)?;
    Ok(Insertion {
        diagram,
        trace,
        alpha,
    })
}

/// Recovers (T, r) from U = T ←^{β,k} r.
pub fn excise(u: &Diagram, beta: &Composition, k: u32) -> Result<(Diagram, u32)> {
    let base = Diagram::composition(beta);
    let ucounts = u.column_counts();
    let bcounts = base.column_counts();
    let ncols = ucounts.len().max(bcounts.len());
    let mut landing_col = None;
    for i in 0..ncols {
        let a = ucounts.get(i).copied().unwrap_or(0);
        let b = bcounts.get(i).copied().unwrap_or(0);
        if a == b + 1 && landing_col.is_none() {
            landing_col = Some(i as u32 + 1);
        } else if a != b {
            return Err(Error::NotInImage("column counts differ from D(β) plus one cell".into()));
        }
    }
    let col = landing_col
        .ok_or_else(|| Error::NotInImage("no column gained a cell".into()))?;
    let start_col = beta.max_part() + 1;
    let mut alphas: Vec<Composition> = downset(beta, false).iter().cloned().collect();
    alphas.sort();
    let mut cache = StepCache::default();
    for row in u.column_rows(col).into_iter().rev() {
        if row > k {
            continue;
        }
        let x = Cell::new(col, row);
        let t_n = u.without(x);
        for alpha in &alphas {
            if !is_pinned_member(&t_n, alpha) {
                continue;
            }
            if !matches!(cache.step(&t_n, alpha, x, k)?, Decision::Land(_)) {
                continue;
            }
            if let Some((t, r)) = unwind(&t_n, x, alpha, beta, k, start_col, u, &mut cache)? {
                return Ok((t, r));
            }
        }
    }
    Err(Error::NotInImage("no landing cell reverses to a valid insertion".into()))
}

#[derive(Default)]
struct StepCache {
    memo: HashMap<(Diagram, Composition, Cell), Decision>,
}

impl StepCache {
    fn step(&mut self, t: &Diagram, alpha: &Composition, x: Cell, k: u32) -> Result<Decision> {
        let key = (t.clone(), alpha.clone(), x);
        if let Some(d) = self.memo.get(&key) {
            return Ok(*d);
        }
        let d = rect_step(t, alpha, x, k)?;
        self.memo.insert(key, d);
        Ok(d)
    }
}

/// Walks the bumping path backwards from the vacancy `x` in `t`, preferring
/// the highest bumper, then a pass to the right. Backtracks if a branch does
/// not re-insert to `u`.
#[allow(clippy::too_many_arguments)]
fn unwind(
    t: &Diagram,
    x: Cell,
    alpha: &Composition,
    beta: &Composition,
    k: u32,
    start_col: u32,
    u: &Diagram,
    cache: &mut StepCache,
) -> Result<Option<(Diagram, u32)>> {
    if x.col == start_col {
        if x.row <= k && kd_membership(t, beta) {
            if let Ok(ins) = insert(t, beta, k, x.row) {
                if ins.diagram == *u && ins.alpha == *alpha {
                    return Ok(Some((t.clone(), x.row)));
                }
            }
        }
        return Ok(None);
    }
    let mut preds: Vec<(Diagram, Cell)> = Vec::new();
    for row in t.column_rows(x.col).into_iter().rev() {
        if row <= x.row {
            break;
        }
        let w = Cell::new(x.col, row);
        let prev = t.with(x).without(w);
        if is_pinned_member(&prev, alpha)
            && matches!(cache.step(&prev, alpha, w, k)?, Decision::Bump(y, _) if y == x)
        {
            preds.push((prev, w));
        }
    }
    if let Some(c) = (x.col + 1..=start_col).find(|&c| !t.contains(Cell::new(c, x.row))) {
        let w = Cell::new(c, x.row);
        if cache.step(t, alpha, w, k)? == Decision::Pass(x) {
            preds.push((t.clone(), w));
        }
    }
    for (prev, w) in preds {
        if let Some(found) = unwind(&prev, w, alpha, beta, k, start_col, u, cache)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// One step of an iterated insertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedStep {
    pub inserted_row: u32,
    pub insertion: Insertion,
    pub chain_step: KChainStep,
    /// α^(i): maximal with θ(U_i) ⪯⁰ α^(i) ⪯ β^(i).
    pub alpha_after: Composition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedInsertion {
    pub diagram: Diagram,
    pub steps: Vec<IteratedStep>,
    /// β^(0), β^(1), …
    pub betas: Vec<Composition>,
}

/// Inserts `rows` one at a time, growing the rectified label by k-additions.
pub fn iterated_insert(
    t: &Diagram,
    beta: &Composition,
    k: u32,
    rows: &[u32],
) -> Result<IteratedInsertion> {
    let mut cur = t.clone();
    let mut b = beta.clone();
    let mut betas = vec![b.clone()];
    let mut steps = Vec::new();
    for &r in rows {
        let ins = insert(&cur, &b, k, r)?;
        let c = ins.trace.landing_column();
        let theta = thread_weight(&ins.diagram, b.len())?;
        let mut cands: Vec<Cell> = k_addable_positions(&b, k)
            .into_iter()
            .filter(|p| p.col == c)
            .collect();
        cands.sort_by_key(|p| p.row);
        let mut chosen = None;
        for p in cands {
            let next = k_addition(&b, p, k)?;
            if leq(&theta, &next) {
                chosen = Some((p, next));
                break;
            }
        }
        let (p, next) = chosen.ok_or_else(|| {
            Error::Invariant(format!(
                "no {k}-addable position in column {c} of {b:?} covers θ = {theta:?}"
            ))
        })?;
        let alpha_after = maximal_between(&theta, &next)?;
        steps.push(IteratedStep {
            inserted_row: r,
            chain_step: KChainStep {
                added_column: c,
                extended_row: p.row,
                before: b.clone(),
                after: next.clone(),
            },
            insertion: ins.clone(),
            alpha_after,
        });
        cur = ins.diagram;
        b = next;
        betas.push(b.clone());
    }
    Ok(IteratedInsertion {
        diagram: cur,
        steps,
        betas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    fn fig3() -> Diagram {
        Diagram::from_pairs(&[
            (1, 6), (2, 6), (1, 5), (2, 5), (3, 4),
            (1, 3), (3, 3), (4, 3), (5, 3),
            (1, 2), (2, 2), (3, 2), (4, 2),
            (2, 1), (4, 1), (5, 1),
        ])
    }

    #[test]
    fn rest_rect_figure() {
        let (u, tr) = restricted_rectify(&fig3(), &c(&[0, 5, 2, 0, 5, 4]), Cell::new(6, 2), 4).unwrap();
        let kinds: Vec<StepKind> = tr.steps.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, vec![StepKind::Pass, StepKind::Bump, StepKind::Pass, StepKind::Land]);
        assert_eq!(tr.path(), vec![Cell::new(6, 2), Cell::new(5, 2), Cell::new(5, 1), Cell::new(3, 1)]);
        assert_eq!(tr.steps[1].bumped, Some(Cell::new(5, 1)));
        assert_eq!(tr.steps[3].label, Some(3));
        assert_eq!(u, fig3().with(Cell::new(5, 2)).without(Cell::new(5, 1)).with(Cell::new(3, 1)));
    }

    #[test]
    fn labels_matter() {
        let t = Diagram::from_pairs(&[(1, 4), (1, 3), (2, 2), (3, 2), (2, 1)]);
        let (u, _) = restricted_rectify(&t, &c(&[0, 0, 3, 2]), Cell::new(2, 3), 3).unwrap();
        assert_eq!(u, Diagram::from_pairs(&[(1, 4), (1, 3), (2, 3), (1, 2), (3, 2), (2, 1)]));
        let t = Diagram::from_pairs(&[(1, 4), (1, 3), (2, 2), (3, 2), (2, 1)]);
        let (u, _) = restricted_rectify(&t, &c(&[0, 0, 2, 3]), Cell::new(2, 3), 3).unwrap();
        assert_eq!(u, Diagram::from_pairs(&[(1, 4), (1, 3), (2, 3), (2, 2), (3, 2), (1, 1)]));
    }

    #[test]
    fn fig7_insertion_of_five() {
        let ins = insert(&fig3(), &c(&[0, 5, 2, 0, 5, 4]), 6, 5).unwrap();
        let want = Diagram::from_pairs(&[
            (1, 6), (2, 6), (1, 5), (2, 5), (3, 5), (3, 4),
            (1, 3), (2, 3), (4, 3), (5, 3),
            (1, 2), (2, 2), (3, 2), (4, 2),
            (1, 1), (4, 1), (5, 1),
        ]);
        assert_eq!(ins.diagram, want);
    }

    #[test]
    fn immediate_landing() {
        let b = c(&[0, 1, 2]);
        let ins = insert(&Diagram::composition(&b), &b, 3, 3).unwrap();
        assert_eq!(ins.trace.steps.len(), 1);
        assert_eq!(ins.trace.landing_cell, Cell::new(3, 3));
    }

    #[test]
    fn excise_inverts_fig7() {
        let b = c(&[0, 5, 2, 0, 5, 4]);
        let ins = insert(&fig3(), &b, 6, 5).unwrap();
        assert_eq!(excise(&ins.diagram, &b, 6).unwrap(), (fig3(), 5));
    }

    #[test]
    fn empty_iteration() {
        let b = c(&[1, 0, 2]);
        let run = iterated_insert(&Diagram::composition(&b), &b, 2, &[]).unwrap();
        assert!(run.steps.is_empty());
        assert_eq!(run.betas, vec![b]);
    }
}
