use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weak composition of fixed length. Index 1 is the bottom row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn zero(len: usize) -> Self {
        Composition(vec![0; len])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part in row `r` (1-based). Rows past the end read as zero.
    pub fn get(&self, r: usize) -> u32 {
        if r == 0 {
            return 0;
        }
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Weakly increasing; partitions are written this way here.
    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// λ(α): the weakly increasing rearrangement.
    pub fn sort_to_partition(&self) -> Composition {
        let mut v = self.0.clone();
        v.sort_unstable();
        Composition(v)
    }

    /// t_{r,s}·α, exchanging rows r and s.
    pub fn swap(&self, r: usize, s: usize) -> Composition {
        let mut v = self.0.clone();
        v.swap(r - 1, s - 1);
        Composition(v)
    }

    /// α + e_r.
    pub fn add_unit(&self, r: usize) -> Composition {
        let mut v = self.0.clone();
        v[r - 1] += 1;
        Composition(v)
    }

    pub fn set(&mut self, r: usize, value: u32) {
        self.0[r - 1] = value;
    }

    pub fn nonzero_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0)
            .map(|(i, _)| i + 1)
    }

    /// Parse "1,0,3" or "1 0 3".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<u32>, _> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>())
            .collect();
        parts
            .map(Composition)
            .map_err(|_| Error::Parse(format!("not a composition: {s:?}")))
    }

    /// All weak compositions of the given length with parts at most `max_part`.
    pub fn all_bounded(len: usize, max_part: u32) -> Vec<Composition> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * (max_part as usize + 1));
            for v in &out {
                for p in 0..=max_part {
                    let mut w: Vec<u32> = v.clone();
                    w.push(p);
                    next.push(w);
                }
            }
            out = next;
        }
        out.into_iter().map(Composition).collect()
    }

    /// All weak compositions of `n` with `len` parts.
    pub fn all_of_size(n: u32, len: usize) -> Vec<Composition> {
        fn rec(n: u32, len: usize, acc: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if len == 1 {
                acc.push(n);
                out.push(Composition(acc.clone()));
                acc.pop();
                return;
            }
            for p in 0..=n {
                acc.push(p);
                rec(n - p, len - 1, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        if len == 0 {
            if n == 0 {
                out.push(Composition(Vec::new()));
            }
            return out;
        }
        rec(n, len, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions (weakly increasing) of `n` with `len` parts.
    pub fn partitions(n: u32, len: usize) -> Vec<Composition> {
        Composition::all_of_size(n, len)
            .into_iter()
            .filter(|c| c.is_partition())
            .collect()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Composition(v)
    }
}

impl From<&[u32]> for Composition {
    fn from(v: &[u32]) -> Self {
        Composition(v.to_vec())
    }
}

type Closure = Arc<HashSet<Composition>>;

fn cache(pinned: bool) -> &'static Mutex<HashMap<Composition, Closure>> {
    static PLAIN: OnceLock<Mutex<HashMap<Composition, Closure>>> = OnceLock::new();
    static PINNED: OnceLock<Mutex<HashMap<Composition, Closure>>> = OnceLock::new();
    if pinned { &PINNED } else { &PLAIN }.get_or_init(|| Mutex::new(HashMap::new()))
}

fn swap_closure(beta: &Composition, pinned: bool, upward: bool) -> HashSet<Composition> {
    let n = beta.len();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(beta.clone());
    queue.push_back(beta.clone());
    while let Some(cur) = queue.pop_front() {
        for r in 1..=n {
            for s in r + 1..=n {
                let (a, b) = (cur.get(r), cur.get(s));
                let ok = if upward { a > b } else { a < b };
                if !ok || (pinned && (a == 0 || b == 0)) {
                    continue;
                }
                let next = cur.swap(r, s);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// {α : α ⪯ β}, or {α : α ⪯⁰ β} when `pinned`. Memoized on β.
pub fn downset(beta: &Composition, pinned: bool) -> Closure {
    if let Some(hit) = cache(pinned).lock().unwrap().get(beta) {
        return hit.clone();
    }
    let set = Arc::new(swap_closure(beta, pinned, false));
    cache(pinned)
        .lock()
        .unwrap()
        .insert(beta.clone(), set.clone());
    set
}

/// {β : α ⪯ β} (or ⪯⁰), by undoing left swaps.
pub fn upset(alpha: &Composition, pinned: bool) -> HashSet<Composition> {
    swap_closure(alpha, pinned, true)
}

fn check_len(a: &Composition, b: &Composition) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(())
}

/// α ⪯ β: α is reachable from β by left swaps.
pub fn leq_left_swap(alpha: &Composition, beta: &Composition) -> Result<bool> {
    check_len(alpha, beta)?;
    Ok(leq(alpha, beta))
}

/// α ⪯⁰ β: left swaps of nonzero parts only.
pub fn leq_pinned(alpha: &Composition, beta: &Composition) -> Result<bool> {
    check_len(alpha, beta)?;
    Ok(leq0(alpha, beta))
}

pub fn leq(alpha: &Composition, beta: &Composition) -> bool {
    alpha.len() == beta.len()
        && alpha.sort_to_partition() == beta.sort_to_partition()
        && downset(beta, false).contains(alpha)
}

pub fn leq0(alpha: &Composition, beta: &Composition) -> bool {
    alpha.len() == beta.len()
        && alpha.sort_to_partition() == beta.sort_to_partition()
        && downset(beta, true).contains(alpha)
}

/// The unique ⪯⁰-maximal α with θ ⪯⁰ α ⪯ β.
pub fn maximal_between(theta: &Composition, beta: &Composition) -> Result<Composition> {
    let cands: Vec<Composition> = upset(theta, true)
        .into_iter()
        .filter(|a| leq(a, beta))
        .collect();
    let maxima: Vec<&Composition> = cands
        .iter()
        .filter(|a| !cands.iter().any(|b| b != *a && leq0(a, b)))
        .collect();
    match maxima.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(Error::NotBelow {
            lower: theta.clone(),
            upper: beta.clone(),
        }),
        _ => Err(Error::Invariant(format!(
            "no unique maximal composition between {theta:?} and {beta:?}: {maxima:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    #[test]
    fn swaps_and_orders() {
        assert!(leq(&c(&[0, 5, 2, 0, 5, 4]), &c(&[0, 2, 5, 0, 5, 4])));
        assert!(leq0(&c(&[0, 5, 2, 0, 5, 4]), &c(&[0, 2, 5, 0, 5, 4])));
        assert!(leq(&c(&[1, 0]), &c(&[0, 1])));
        assert!(!leq0(&c(&[1, 0]), &c(&[0, 1])));
        assert!(!leq(&c(&[0, 1]), &c(&[1, 0])));
        assert!(leq_left_swap(&c(&[1]), &c(&[1, 0])).is_err());
    }

    #[test]
    fn downset_of_021() {
        let d = downset(&c(&[0, 2, 1]), false);
        let mut v: Vec<_> = d.iter().cloned().collect();
        v.sort();
        assert_eq!(
            v,
            vec![c(&[0, 2, 1]), c(&[1, 2, 0]), c(&[2, 0, 1]), c(&[2, 1, 0])]
        );
    }

    #[test]
    fn sorting() {
        assert_eq!(
            c(&[5, 2, 0, 5, 4, 0]).sort_to_partition(),
            c(&[0, 0, 2, 4, 5, 5])
        );
        assert_eq!(c(&[0, 2, 1]).sort_to_partition(), c(&[0, 1, 2]));
    }

    #[test]
    fn enumerations() {
        assert_eq!(Composition::all_bounded(3, 2).len(), 27);
        assert_eq!(Composition::all_of_size(3, 3).len(), 10);
        assert_eq!(Composition::partitions(4, 2).len(), 3);
        assert_eq!(Composition::parse("1, 0,3").unwrap(), c(&[1, 0, 3]));
    }

    #[test]
    fn maximal_between_picks_unique_top() {
        let a = maximal_between(&c(&[2, 0, 1]), &c(&[0, 1, 2])).unwrap();
        assert_eq!(a, c(&[1, 0, 2]));
    }
}
