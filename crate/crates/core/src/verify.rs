//! Exhaustive comparison of the expansions against direct multiplication.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::chain::KChainStep;
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::expansions::{
    atom_sum, gamma_ideal, is_k_positive, kd_intersection, product, record_census,
    schubert_expansion, schubert_sum, signed_key_expansion,
};
use crate::kohnert::{generate_akd, generate_kd};
use crate::skew::{chain_target, k_chains};
use crate::tableau::generate_ssrt;

/// β with parts ≤ `parts` and length 1..=`len`, λ partitions with 1..=`cells`
/// cells and length k ≤ length(β).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub parts: u32,
    pub len: usize,
    pub cells: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            parts: 2,
            len: 4,
            cells: 4,
        }
    }
}

impl FromStr for Grid {
    type Err = Error;

    /// `parts=2,len=4,cells=4`; missing keys keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut g = Grid::default();
        for kv in s.split(',').filter(|t| !t.trim().is_empty()) {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected key=value, got {kv:?}")))?;
            let n: u32 = val
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad number {val:?}")))?;
            match key.trim() {
                "parts" => g.parts = n,
                "len" => g.len = n as usize,
                "cells" => g.cells = n,
                other => return Err(Error::Invalid(format!("unknown grid key {other:?}"))),
            }
        }
        Ok(g)
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parts={},len={},cells={}", self.parts, self.len, self.cells)
    }
}

impl Grid {
    pub fn cases(&self) -> Vec<(Composition, Composition)> {
        let mut out = Vec::new();
        for n in 1..=self.len {
            for beta in Composition::all_bounded(n, self.parts) {
                for k in 1..=n {
                    for size in 1..=self.cells {
                        for lambda in Composition::partitions(size, k) {
                            out.push((beta.clone(), lambda));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub beta: Composition,
    pub lambda: Composition,
    pub k_positive: bool,
    /// Σ a^α A_α = κ_β s_λ.
    pub atom: bool,
    /// Insertion is injective on KD(β) × SSRT(λ).
    pub injective: bool,
    /// |KD(β)|·|SSRT(λ)| = Σ |AKD(α)|·|LAT(α/β,λ)|.
    pub counting: bool,
    /// Record counts with a fixed column sequence are constant over Γ_c.
    pub constant_on_ideals: bool,
    /// Σ a^Γ κ_Γ = κ_β s_λ.
    pub schubert: bool,
    /// Every column group has a single nonzero key tableau count.
    pub schubert_consistent: bool,
    /// Σ c^γ κ_γ = κ_β s_λ for the grouped signed expansion.
    pub signed: bool,
    pub signed_nonnegative: bool,
    pub cancellation_free: bool,
    /// KD(γ*) = KD(γ) ∩ KD(γ') for every pair sharing a column sequence.
    pub intersections: bool,
    pub errors: Vec<String>,
}

impl CaseReport {
    /// Positivity holds where it is claimed.
    pub fn positivity(&self) -> bool {
        !self.k_positive || self.signed_nonnegative
    }

    pub fn all_ok(&self) -> bool {
        self.atom
            && self.injective
            && self.counting
            && self.constant_on_ideals
            && self.schubert
            && self.signed
            && self.positivity()
            && self.cancellation_free
            && self.intersections
            && self.errors.is_empty()
    }
}

fn note<T>(errors: &mut Vec<String>, what: &str, r: Result<T>) -> Option<T> {
    r.map_err(|e| errors.push(format!("{what}: {e}"))).ok()
}

pub fn check_case(beta: &Composition, lambda: &Composition) -> Result<CaseReport> {
    let m = beta.len();
    let k = lambda.len() as u32;
    let target = product(beta, lambda, m)?;
    let mut errors = Vec::new();

    let census = record_census(beta, lambda)?;
    let coeffs: BTreeMap<Composition, usize> =
        census.records.iter().map(|(a, s)| (a.clone(), s.len())).collect();
    let atom = atom_sum(&coeffs, m)? == target;
    let mut rhs = 0usize;
    for (a, n) in &coeffs {
        rhs += generate_akd(a)?.len() * n;
    }
    let counting = generate_kd(beta)?.len() * generate_ssrt(lambda)?.len() == rhs;

    let mut constant_on_ideals = true;
    let column_groups: BTreeSet<Vec<u32>> = k_chains(beta, k, lambda.size() as usize)
        .iter()
        .map(|ch| ch.iter().map(|s| s.added_column).collect())
        .collect();
    for cols in &column_groups {
        let Some(ideal) = note(&mut errors, "ideal", gamma_ideal(beta, k, cols)) else {
            constant_on_ideals = false;
            continue;
        };
        let counts: BTreeSet<usize> = ideal
            .members
            .iter()
            .map(|a| {
                census.records.get(a).map_or(0, |s| {
                    s.iter()
                        .filter(|q| q.chain.iter().map(|st| st.added_column).eq(cols.iter().copied()))
                        .count()
                })
            })
            .collect();
        constant_on_ideals &= counts.len() == 1;
    }

    let (schubert, schubert_consistent) =
        match note(&mut errors, "schubert", schubert_expansion(beta, lambda)) {
            Some(terms) => (
                schubert_sum(&terms, m)? == target,
                terms.iter().all(|t| t.consistent),
            ),
            None => (false, false),
        };

    let (signed, signed_nonnegative, cancellation_free) =
        match note(&mut errors, "signed", signed_key_expansion(beta, lambda, true)) {
            Some(s) => (s.sum(m)? == target, s.is_nonnegative(), s.cancellations.is_empty()),
            None => (false, false, false),
        };

    let mut intersections = true;
    for (beta, k, pair) in pair_families(beta, k, lambda.size() as usize) {
        match check_pair(&beta, k, &pair) {
            Ok(ok) => intersections &= ok,
            Err(e) => {
                errors.push(format!("intersection: {e}"));
                intersections = false;
            }
        }
    }

    Ok(CaseReport {
        beta: beta.clone(),
        lambda: lambda.clone(),
        k_positive: is_k_positive(beta, k),
        atom,
        injective: census.collisions == 0,
        counting,
        constant_on_ideals,
        schubert,
        schubert_consistent,
        signed,
        signed_nonnegative,
        cancellation_free,
        intersections,
        errors,
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GridSummary {
    pub cases: usize,
    pub atom: usize,
    pub injective: usize,
    pub counting: usize,
    pub constant_on_ideals: usize,
    pub schubert: usize,
    pub schubert_consistent: usize,
    pub signed: usize,
    pub positivity: usize,
    pub cancellation_free: usize,
    pub intersections: usize,
    pub errors: usize,
}

impl GridSummary {
    pub fn from_reports(reports: &[CaseReport]) -> Self {
        let count = |f: &dyn Fn(&CaseReport) -> bool| reports.iter().filter(|r| f(r)).count();
        GridSummary {
            cases: reports.len(),
            atom: count(&|r| r.atom),
            injective: count(&|r| r.injective),
            counting: count(&|r| r.counting),
            constant_on_ideals: count(&|r| r.constant_on_ideals),
            schubert: count(&|r| r.schubert),
            schubert_consistent: count(&|r| r.schubert_consistent),
            signed: count(&|r| r.signed),
            positivity: count(&|r| r.positivity()),
            cancellation_free: count(&|r| r.cancellation_free),
            intersections: count(&|r| r.intersections),
            errors: count(&|r| !r.errors.is_empty()),
        }
    }

    pub fn all_ok(&self) -> bool {
        let n = self.cases;
        [
            self.atom,
            self.injective,
            self.counting,
            self.constant_on_ideals,
            self.schubert,
            self.signed,
            self.positivity,
            self.cancellation_free,
            self.intersections,
        ]
        .iter()
        .all(|&c| c == n)
            && self.errors == 0
    }
}

/// Checks every case of the grid in parallel; reports come back in grid order.
pub fn run_grid(grid: &Grid) -> Result<Vec<CaseReport>> {
    grid.cases()
        .par_iter()
        .map(|(b, l)| check_case(b, l))
        .collect()
}

type Family = (Composition, u32, [Vec<KChainStep>; 2]);

/// Pairs of length-`len` chains from β with equal column sequences and
/// distinct targets.
fn pair_families(beta: &Composition, k: u32, len: usize) -> Vec<Family> {
    let mut groups: BTreeMap<Vec<u32>, Vec<Vec<KChainStep>>> = BTreeMap::new();
    for ch in k_chains(beta, k, len) {
        groups
            .entry(ch.iter().map(|s| s.added_column).collect())
            .or_default()
            .push(ch);
    }
    let mut out = Vec::new();
    for fam in groups.values() {
        for i in 0..fam.len() {
            for j in i + 1..fam.len() {
                if chain_target(beta, &fam[i]) != chain_target(beta, &fam[j]) {
                    out.push((beta.clone(), k, [fam[i].clone(), fam[j].clone()]));
                }
            }
        }
    }
    out
}

/// generate_kd(kd_intersection(pair)) = ⋂ generate_kd(γ^(i)).
pub fn check_pair(beta: &Composition, k: u32, pair: &[Vec<KChainStep>; 2]) -> Result<bool> {
    let star: HashSet<_> = generate_kd(&kd_intersection(beta, k, pair)?)?.into_iter().collect();
    let a: HashSet<_> = generate_kd(&chain_target(beta, &pair[0]))?.into_iter().collect();
    let b: HashSet<_> = generate_kd(&chain_target(beta, &pair[1]))?.into_iter().collect();
    Ok(star == a.intersection(&b).cloned().collect())
}

/// Every two-element family from β of length ≤ `len` with at most
/// `cells` cells in each target, any k ≤ length(β).
pub fn intersection_families(len: usize, cells: u32) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=len {
        for size in 0..cells {
            for beta in Composition::all_of_size(size, n) {
                for k in 1..=n as u32 {
                    for steps in 1..=(cells - size) as usize {
                        out.extend(pair_families(&beta, k, steps));
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct IntersectionSummary {
    pub families: usize,
    pub agree: usize,
    pub failures: Vec<String>,
}

pub fn check_intersections(len: usize, cells: u32) -> IntersectionSummary {
    let fams = intersection_families(len, cells);
    let results: Vec<(String, Result<bool>)> = fams
        .par_iter()
        .map(|(b, k, pair)| {
            let label = format!(
                "β={b} k={k} γ={} γ'={}",
                chain_target(b, &pair[0]),
                chain_target(b, &pair[1])
            );
            (label, check_pair(b, *k, pair))
        })
        .collect();
    let mut s = IntersectionSummary {
        families: results.len(),
        ..Default::default()
    };
    for (label, r) in results {
        match r {
            Ok(true) => s.agree += 1,
            Ok(false) => s.failures.push(label),
            Err(e) => s.failures.push(format!("{label}: {e}")),
        }
    }
    s
}
