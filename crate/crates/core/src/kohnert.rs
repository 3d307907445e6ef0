use std::collections::{HashSet, VecDeque};

use crate::composition::Composition;
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::labeling::proper_labeling;
use crate::thread::thread_weight;

pub const DEFAULT_BUDGET: u32 = 12;

/// Cell budget for closures: `KOHNERT_BUDGET` if set, else 12.
pub fn budget() -> u32 {
    std::env::var("KOHNERT_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Moves the rightmost cell of row `r` to the highest vacancy below it.
pub fn kohnert_move(d: &Diagram, r: u32) -> Option<Diagram> {
    let c = *d.row_cols(r).last()?;
    let mask = d.column_mask(c);
    let target = (1..r).rev().find(|&q| mask & (1u64 << (q - 1)) == 0)?;
    let mut out = d.clone();
    out.remove(Cell::new(c, r));
    out.insert(Cell::new(c, target));
    Some(out)
}

/// KD(α), sorted canonically.
pub fn generate_kd(alpha: &Composition) -> Result<Vec<Diagram>> {
    generate_kd_with_budget(alpha, budget())
}

pub fn generate_kd_with_budget(alpha: &Composition, budget: u32) -> Result<Vec<Diagram>> {
    if alpha.size() > budget {
        return Err(Error::BudgetExceeded {
            size: alpha.size(),
            budget,
        });
    }
    let start = Diagram::composition(alpha);
    let rows = alpha.len() as u32;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(d) = queue.pop_front() {
        for r in 2..=rows {
            if let Some(next) = kohnert_move(&d, r) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut out: Vec<Diagram> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// AKD(α) = {T ∈ KD(α) : θ(T) = α}.
pub fn generate_akd(alpha: &Composition) -> Result<Vec<Diagram>> {
    let n = alpha.len();
    Ok(generate_kd(alpha)?
        .into_iter()
        .filter(|t| thread_weight(t, n).ok().as_ref() == Some(alpha))
        .collect())
}

/// PKD(α) = {T ∈ KD(α) : L_α(T) pinned}.
pub fn generate_pkd(alpha: &Composition) -> Result<Vec<Diagram>> {
    Ok(generate_kd(alpha)?
        .into_iter()
        .filter(|t| is_pinned_member(t, alpha))
        .collect())
}

pub fn is_pinned_member(t: &Diagram, alpha: &Composition) -> bool {
    match proper_labeling(t, alpha) {
        Ok(l) => l.is_flagged() && l.is_pinned(),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    #[test]
    fn moves() {
        let d = Diagram::composition(&c(&[0, 2, 1]));
        assert_eq!(
            kohnert_move(&d, 2),
            Some(Diagram::from_pairs(&[(1, 2), (2, 1), (1, 3)]))
        );
        assert_eq!(kohnert_move(&d, 1), None);
        let d = Diagram::from_pairs(&[(1, 3), (1, 1)]);
        assert_eq!(
            kohnert_move(&d, 3),
            Some(Diagram::from_pairs(&[(1, 2), (1, 1)]))
        );
        let d = Diagram::from_pairs(&[(1, 1), (1, 2)]);
        assert_eq!(kohnert_move(&d, 2), None);
    }

    #[test]
    fn fig1_closure() {
        let kd = generate_kd(&c(&[0, 2, 1])).unwrap();
        assert_eq!(kd.len(), 5);
        assert_eq!(generate_kd(&c(&[0, 0])).unwrap(), vec![Diagram::empty()]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = generate_kd_with_budget(&c(&[3, 3]), 5).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { size: 6, budget: 5 });
    }

    #[test]
    fn atoms_of_021() {
        assert_eq!(generate_akd(&c(&[0, 2, 1])).unwrap().len(), 2);
    }
}
