use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::composition::Composition;
use crate::diagram::Cell;
use crate::error::{Error, Result};

/// One cover β ⋖_k γ, recorded with its added column and extended row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KChainStep {
    pub added_column: u32,
    pub extended_row: u32,
    pub before: Composition,
    pub after: Composition,
}

pub fn is_k_addable(beta: &Composition, pos: Cell, k: u32) -> bool {
    let (c, r) = (pos.col, pos.row as usize);
    if pos.row > k || r > beta.len() {
        return false;
    }
    let br = beta.get(r);
    if br >= c {
        return false;
    }
    if br + 1 < c && !(k as usize + 1..=beta.len()).any(|t| beta.get(t) == c - 1) {
        return false;
    }
    (r + 1..=(k as usize).min(beta.len())).all(|s| beta.get(s) < br || beta.get(s) >= c)
}

/// All k-addable positions, sorted by (column, row).
pub fn k_addable_positions(beta: &Composition, k: u32) -> Vec<Cell> {
    let mut out = Vec::new();
    let top = beta.max_part() + 1;
    for c in 1..=top {
        for r in 1..=(k as usize).min(beta.len()) {
            let p = Cell::new(c, r as u32);
            if is_k_addable(beta, p, k) {
                out.push(p);
            }
        }
    }
    out
}

/// The row chain r = r_0 < … < r_q with β_{r_0} < … < β_{r_q} = c−1.
fn addition_chain(beta: &Composition, c: u32, r: usize) -> Option<Vec<usize>> {
    let mut chain = vec![r];
    let mut cur = r;
    while beta.get(cur) != c - 1 {
        let lo = beta.get(cur);
        let next = (cur + 1..=beta.len()).find(|&s| beta.get(s) > lo && beta.get(s) < c)?;
        chain.push(next);
        cur = next;
    }
    Some(chain)
}

/// β +^(k) (c, r).
pub fn k_addition(beta: &Composition, pos: Cell, k: u32) -> Result<Composition> {
    let not_addable = || Error::NotAddable {
        c: pos.col,
        r: pos.row,
        k,
        beta: beta.clone(),
    };
    if !is_k_addable(beta, pos, k) {
        return Err(not_addable());
    }
    let r = pos.row as usize;
    let chain = addition_chain(beta, pos.col, r).ok_or_else(not_addable)?;
    let mut out = beta.clone();
    for &s in &chain[1..] {
        out = out.swap(r, s);
    }
    Ok(out.add_unit(r))
}

/// One-step covers of β in ⊆_k, via k-addition.
pub fn k_chain_covers(beta: &Composition, k: u32) -> Vec<(Composition, KChainStep)> {
    k_addable_positions(beta, k)
        .into_iter()
        .map(|p| {
            let after = k_addition(beta, p, k).expect("addable position");
            let step = KChainStep {
                added_column: p.col,
                extended_row: p.row,
                before: beta.clone(),
                after: after.clone(),
            };
            (after, step)
        })
        .collect()
}

/// Covers read literally from the swap form t_{r,s_m}⋯t_{r,s_1}β + e_r with
/// r ≤ k < s_1 < … < s_m and β_r < β_{s_1} < … < β_{s_m}. With
/// `nonzero_base`, swaps additionally need 0 < β_r.
pub fn swap_form_covers(beta: &Composition, k: u32, nonzero_base: bool) -> BTreeSet<Composition> {
    let n = beta.len();
    let mut out = BTreeSet::new();
    for r in 1..=(k as usize).min(n) {
        out.insert(beta.add_unit(r));
        if nonzero_base && beta.get(r) == 0 {
            continue;
        }
        // extend increasing chains s_1 < s_2 < … beyond k
        let mut stack: Vec<(usize, u32, Composition)> = vec![(k as usize, beta.get(r), beta.clone())];
        while let Some((last, val, cur)) = stack.pop() {
            for s in last + 1..=n {
                if beta.get(s) > val {
                    let next = cur.swap(r, s);
                    out.insert(next.add_unit(r));
                    stack.push((s, beta.get(s), next));
                }
            }
        }
    }
    out
}

/// β ⊆_k γ, by search over k-addition covers.
pub fn k_chain_leq(beta: &Composition, gamma: &Composition, k: u32) -> bool {
    if beta.len() != gamma.len() || beta.size() > gamma.size() {
        return false;
    }
    let target = gamma.size();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([beta.clone()]);
    seen.insert(beta.clone());
    while let Some(cur) = queue.pop_front() {
        if cur == *gamma {
            return true;
        }
        if cur.size() >= target {
            continue;
        }
        for (next, _) in k_chain_covers(&cur, k) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

/// β is k-positive: whenever β_r ≤ β_t with r ≤ k < t, every r < s ≤ k has β_s ≥ β_r.
pub fn is_k_positive(beta: &Composition, k: u32) -> bool {
    let n = beta.len();
    let k = (k as usize).min(n);
    for r in 1..=k {
        let br = beta.get(r);
        if (k + 1..=n).any(|t| br <= beta.get(t)) && (r + 1..=k).any(|s| beta.get(s) < br) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    #[test]
    fn six_addable_positions() {
        let got = k_addable_positions(&c(&[0, 1, 3, 0, 1, 2]), 4);
        let want: Vec<Cell> = [(1, 4), (2, 2), (2, 4), (3, 2), (3, 4), (4, 3)]
            .iter()
            .map(|&(c, r)| Cell::new(c, r))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn additions_of_fig8() {
        let b = c(&[0, 1, 3, 0, 1, 2]);
        let add = |col, row| k_addition(&b, Cell::new(col, row), 4).unwrap();
        assert_eq!(add(1, 4), c(&[0, 1, 3, 1, 1, 2]));
        assert_eq!(add(2, 2), c(&[0, 2, 3, 0, 1, 2]));
        assert_eq!(add(2, 4), c(&[0, 1, 3, 2, 0, 2]));
        assert_eq!(add(3, 2), c(&[0, 3, 3, 0, 1, 1]));
        assert_eq!(add(3, 4), c(&[0, 1, 3, 3, 0, 1]));
        assert_eq!(add(4, 3), c(&[0, 1, 4, 0, 1, 2]));
    }

    #[test]
    fn zero_composition() {
        let z = Composition::zero(3);
        // rows below k are blocked by the equal zero parts above them
        assert_eq!(k_addable_positions(&z, 3), vec![Cell::new(1, 3)]);
        assert_eq!(k_addition(&z, Cell::new(1, 3), 3).unwrap(), c(&[0, 0, 1]));
        assert_eq!(k_addable_positions(&z, 1), vec![Cell::new(1, 1)]);
    }

    #[test]
    fn fig5_chain() {
        assert!(k_chain_leq(&c(&[1, 0, 3, 1, 0, 4]), &c(&[2, 0, 4, 5, 0, 3]), 4));
        assert!(k_chain_leq(&c(&[1, 0, 2]), &c(&[1, 0, 2]), 1));
    }

    #[test]
    fn positivity() {
        assert!(!is_k_positive(&c(&[1, 0, 3, 1, 0, 4]), 4));
        assert!(is_k_positive(&c(&[1, 0, 3, 1, 0, 4]), 6));
        assert!(is_k_positive(&c(&[2, 0, 1, 0, 0]), 3));
    }
}
