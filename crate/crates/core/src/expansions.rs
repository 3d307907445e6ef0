use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

pub use crate::chain::is_k_positive;
use crate::chain::{is_k_addable, k_addition, KChainStep};
use crate::composition::{downset, leq, leq0, Composition};
use crate::diagram::Cell;
use crate::error::{Error, Result};
use crate::insertion::iterated_insert;
use crate::kohnert::{generate_akd, generate_kd, generate_pkd};
use crate::poly::Polynomial;
use crate::skew::{chain_target, enumerate_lkt, k_chains, record, SkewTableau};
use crate::tableau::generate_ssrt;
use crate::thread::thread_weight;

fn pad(alpha: &Composition, m: usize) -> Result<Vec<u32>> {
    if alpha.len() > m && alpha.parts()[m..].iter().any(|&p| p > 0) {
        return Err(Error::LengthMismatch(alpha.len(), m));
    }
    let mut v: Vec<u32> = alpha.parts().iter().copied().take(m).collect();
    v.resize(m, 0);
    Ok(v)
}

fn weight_sum<I: IntoIterator<Item = Composition>>(ws: I, m: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero(m);
    for w in ws {
        p.add_term(pad(&w, m)?, BigInt::one());
    }
    Ok(p)
}

/// κ_α in x_1..x_m: the weight generating function of KD(α).
pub fn demazure_char(alpha: &Composition, m: usize) -> Result<Polynomial> {
    let n = alpha.len();
    weight_sum(
        generate_kd(alpha)?.iter().map(|d| d.weight(n).expect("rows within length")),
        m,
    )
}

type PolyCache = HashMap<(Composition, usize), Arc<Polynomial>>;

/// A_α in x_1..x_m, over AKD(α). Memoized.
pub fn atom_poly(alpha: &Composition, m: usize) -> Result<Polynomial> {
    static CACHE: OnceLock<Mutex<PolyCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (alpha.clone(), m);
    if let Some(p) = cache.lock().unwrap().get(&key) {
        return Ok((**p).clone());
    }
    let n = alpha.len();
    let p = weight_sum(
        generate_akd(alpha)?.iter().map(|d| d.weight(n).expect("rows within length")),
        m,
    )?;
    cache.lock().unwrap().insert(key, Arc::new(p.clone()));
    Ok(p)
}

/// P_α in x_1..x_m, over PKD(α).
pub fn pinned_poly(alpha: &Composition, m: usize) -> Result<Polynomial> {
    let n = alpha.len();
    weight_sum(
        generate_pkd(alpha)?.iter().map(|d| d.weight(n).expect("rows within length")),
        m,
    )
}

/// s_λ in x_1..x_m, over SSRT(λ) (entries ≤ length(λ)).
pub fn schur(lambda: &Composition, m: usize) -> Result<Polynomial> {
    weight_sum(generate_ssrt(lambda)?.iter().map(|t| t.weight()), m)
}

/// κ_Γ = Σ_{α ∈ Γ} A_α.
pub fn schubert_char<'a, I>(ideal: I, m: usize) -> Result<Polynomial>
where
    I: IntoIterator<Item = &'a Composition>,
{
    let mut p = Polynomial::zero(m);
    for a in ideal {
        p.add_scaled(&atom_poly(a, m)?, &BigInt::one());
    }
    Ok(p)
}

fn prefix_sums(e: &[u32]) -> Vec<u32> {
    e.iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Expands p in the atom basis on x_1..x_m. Every Kohnert move raises a
/// prefix sum of the weight, so the monomial with lexicographically least
/// prefix sums is the leading term x^α of some atom; peel it off and repeat.
pub fn atom_basis_solve(p: &Polynomial) -> Result<BTreeMap<Composition, BigInt>> {
    let m = p.nvars();
    let mut rest = p.clone();
    let mut out = BTreeMap::new();
    while let Some((lead, c)) = rest
        .terms()
        .min_by_key(|(e, _)| prefix_sums(e))
        .map(|(e, c)| (e.clone(), c.clone()))
    {
        let alpha = Composition::new(lead);
        let a = atom_poly(&alpha, m)?;
        if a.coeff(alpha.parts()) != BigInt::one() {
            return Err(Error::Invariant(format!("A_{alpha:?} lacks its leading term")));
        }
        rest.add_scaled(&a, &-c.clone());
        out.insert(alpha, c);
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// κ_β · s_λ in x_1..x_m by direct multiplication.
pub fn product(beta: &Composition, lambda: &Composition, m: usize) -> Result<Polynomial> {
    Ok(&demazure_char(beta, m)? * &schur(lambda, m)?)
}

fn sorted(set: impl IntoIterator<Item = Composition>) -> Vec<Composition> {
    let mut v: Vec<Composition> = set.into_iter().collect();
    v.sort();
    v
}

/// The α with κ_β = Σ A_α, i.e. all α ⪯ β.
pub fn key_to_atom(beta: &Composition) -> Vec<Composition> {
    sorted(downset(beta, false).iter().cloned())
}

/// (β's with κ_γ = Σ P_β, α's with P_γ = Σ A_α). The first list holds the
/// β ⪯ γ admitting no α ≠ β with β ⪯⁰ α ⪯ γ.
pub fn pinned_decompositions(gamma: &Composition) -> (Vec<Composition>, Vec<Composition>) {
    let below = downset(gamma, false);
    let to_pinned = below
        .iter()
        .filter(|b| !below.iter().any(|a| a != *b && leq0(b, a)))
        .cloned();
    (sorted(to_pinned), sorted(downset(gamma, true).iter().cloned()))
}

/// A lower order ideal in ⪯, stored with its maximal generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderIdeal {
    pub generators: Vec<Composition>,
    pub members: BTreeSet<Composition>,
}

impl OrderIdeal {
    pub fn generated_by<'a, I>(gens: I) -> Self
    where
        I: IntoIterator<Item = &'a Composition>,
    {
        let mut members = BTreeSet::new();
        let all: BTreeSet<Composition> = gens.into_iter().cloned().collect();
        for g in &all {
            members.extend(downset(g, false).iter().cloned());
        }
        let generators = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && leq(g, h)))
            .cloned()
            .collect();
        OrderIdeal {
            generators,
            members,
        }
    }

    pub fn contains(&self, alpha: &Composition) -> bool {
        self.members.contains(alpha)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.members
            .iter()
            .all(|a| downset(a, false).iter().all(|b| self.members.contains(b)))
    }

    /// κ_Γ in x_1..x_m.
    pub fn character(&self, m: usize) -> Result<Polynomial> {
        schubert_char(&self.members, m)
    }
}

fn columns(chain: &[KChainStep]) -> Vec<u32> {
    chain.iter().map(|s| s.added_column).collect()
}

/// Γ_c: everything below some γ reached from β by k-adding cells in the
/// given columns, in order.
pub fn gamma_ideal(beta: &Composition, k: u32, cols: &[u32]) -> Result<OrderIdeal> {
    let targets: Vec<Composition> = k_chains(beta, k, cols.len())
        .into_iter()
        .filter(|ch| columns(ch) == cols)
        .map(|ch| chain_target(beta, &ch))
        .collect();
    if targets.is_empty() {
        return Err(Error::Invalid(format!(
            "columns {cols:?} are not successively {k}-addable for {beta:?}"
        )));
    }
    Ok(OrderIdeal::generated_by(&targets))
}

/// ⋂ KD(β +_k (c, r_i)) = KD(t_{r_1,r_2} ⋯ t_{r_{m-1},r_m}(β +_k (c, r_m))).
pub fn kap_one_step(beta: &Composition, k: u32, c: u32, rows: &[u32]) -> Result<Composition> {
    let rows: Vec<u32> = rows.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let Some(&top) = rows.last() else {
        return Err(Error::Invalid("no rows given".into()));
    };
    let mut out = k_addition(beta, Cell::new(c, top), k)?;
    for w in rows.windows(2).rev() {
        if !is_k_addable(beta, Cell::new(c, w[0]), k) {
            return Err(Error::NotAddable {
                c,
                r: w[0],
                k,
                beta: beta.clone(),
            });
        }
        out = out.swap(w[0] as usize, w[1] as usize);
    }
    Ok(out)
}

fn same_columns(family: &[Vec<KChainStep>]) -> Result<Vec<u32>> {
    let Some(first) = family.first() else {
        return Err(Error::Invalid("empty family".into()));
    };
    let cols = columns(first);
    if family.iter().any(|ch| columns(ch) != cols) {
        return Err(Error::Invalid("chains add different column sequences".into()));
    }
    Ok(cols)
}

/// γ* with KD(γ*) = ⋂ KD(γ^(i)) for chains from β sharing their ordered
/// added columns. One-step families use the transposition formula; longer
/// families take the maximal common lower bound of the targets.
pub fn kd_intersection(beta: &Composition, k: u32, family: &[Vec<KChainStep>]) -> Result<Composition> {
    let cols = same_columns(family)?;
    if cols.len() == 1 {
        let rows: Vec<u32> = family.iter().map(|ch| ch[0].extended_row).collect();
        return kap_one_step(beta, k, cols[0], &rows);
    }
    let gammas: Vec<Composition> = family.iter().map(|ch| chain_target(beta, ch)).collect();
    meet(&gammas)
}

/// Applies the one-step formula column by column, at each step using the
/// rows of the family that are k-addable for the running intersection.
/// Fails when no row survives.
pub fn fold_one_steps(beta: &Composition, k: u32, family: &[Vec<KChainStep>]) -> Result<Composition> {
    let cols = same_columns(family)?;
    let mut b = beta.clone();
    for (j, &c) in cols.iter().enumerate() {
        let rows: Vec<u32> = family
            .iter()
            .map(|ch| ch[j].extended_row)
            .filter(|&r| is_k_addable(&b, Cell::new(c, r), k))
            .collect();
        if rows.is_empty() {
            return Err(Error::Invariant(format!(
                "no row of step {} is {k}-addable in column {c} for {b:?}",
                j + 1
            )));
        }
        b = kap_one_step(&b, k, c, &rows)?;
    }
    Ok(b)
}

/// The unique maximal γ with γ ⪯ γ^(i) for all i.
pub fn meet(gammas: &[Composition]) -> Result<Composition> {
    let Some(first) = gammas.first() else {
        return Err(Error::Invalid("empty family".into()));
    };
    let common: Vec<Composition> = downset(first, false)
        .iter()
        .filter(|a| gammas[1..].iter().all(|g| leq(a, g)))
        .cloned()
        .collect();
    let maxima: Vec<&Composition> = common
        .iter()
        .filter(|a| !common.iter().any(|b| b != *a && leq(a, b)))
        .collect();
    match maxima.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(Error::Invariant(format!("{gammas:?} have no common lower bound"))),
        _ => Err(Error::Invariant(format!(
            "{gammas:?} have several maximal lower bounds: {maxima:?}"
        ))),
    }
}

fn check_lengths(beta: &Composition, lambda: &Composition) -> Result<()> {
    if !lambda.is_partition() {
        return Err(Error::NotPartition(lambda.clone()));
    }
    if lambda.len() > beta.len() {
        return Err(Error::Invalid(format!(
            "λ has length {} but β only {}; pad β with zeros",
            lambda.len(),
            beta.len()
        )));
    }
    Ok(())
}

/// The image of KD(β) × SSRT(λ) under iterated insertion restricted by
/// k = length(λ), sorted by θ of the insertion diagram.
#[derive(Clone, Debug, Default)]
pub struct RecordCensus {
    /// Number of pairs (T, R) landing in AKD(α).
    pub runs: BTreeMap<Composition, usize>,
    /// Distinct recording tableaux landing in AKD(α).
    pub records: BTreeMap<Composition, BTreeSet<SkewTableau>>,
    /// Pairs whose (U, Q) repeats an earlier pair.
    pub collisions: usize,
}

impl RecordCensus {
    pub fn total_runs(&self) -> usize {
        self.runs.values().sum()
    }
}

pub fn record_census(beta: &Composition, lambda: &Composition) -> Result<RecordCensus> {
    check_lengths(beta, lambda)?;
    let k = lambda.len() as u32;
    let words: Vec<_> = generate_ssrt(lambda)?
        .iter()
        .map(|r| r.to_biword())
        .collect::<Result<_>>()?;
    let kd = generate_kd(beta)?;
    let runs: Vec<(Composition, _, SkewTableau)> = kd
        .par_iter()
        .flat_map_iter(|t| {
            words.iter().map(move |w| {
                let run = iterated_insert(t, beta, k, &w.bottom())?;
                let q = record(&run, w, k)?;
                Ok((thread_weight(&run.diagram, beta.len())?, run.diagram, q))
            })
        })
        .collect::<Result<_>>()?;
    let mut census = RecordCensus::default();
    let mut seen = BTreeSet::new();
    for (alpha, u, q) in runs {
        if !seen.insert((u, q.clone())) {
            census.collisions += 1;
        }
        *census.runs.entry(alpha.clone()).or_default() += 1;
        census.records.entry(alpha).or_default().insert(q);
    }
    Ok(census)
}

/// a^α = |LAT(α/β, λ)|, read off the recording tableaux.
pub fn atom_expansion(beta: &Composition, lambda: &Composition) -> Result<BTreeMap<Composition, usize>> {
    Ok(record_census(beta, lambda)?
        .records
        .into_iter()
        .map(|(a, s)| (a, s.len()))
        .collect())
}

/// Σ coefficient · A_α.
pub fn atom_sum(coeffs: &BTreeMap<Composition, usize>, m: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero(m);
    for (a, &c) in coeffs {
        p.add_scaled(&atom_poly(a, m)?, &BigInt::from(c));
    }
    Ok(p)
}

/// The chains of length |λ| from β with their lattice key tableaux, grouped
/// by ordered added columns and then by γ.
pub type ChainGroups = BTreeMap<Vec<u32>, BTreeMap<Composition, Vec<(Vec<KChainStep>, usize)>>>;

pub fn chain_groups(beta: &Composition, lambda: &Composition) -> Result<ChainGroups> {
    check_lengths(beta, lambda)?;
    let k = lambda.len() as u32;
    let mut groups = ChainGroups::new();
    for ch in k_chains(beta, k, lambda.size() as usize) {
        let n = enumerate_lkt(beta, &ch, lambda)?.len();
        groups
            .entry(columns(&ch))
            .or_default()
            .entry(chain_target(beta, &ch))
            .or_default()
            .push((ch, n));
    }
    Ok(groups)
}

fn lkt_count(chains: &[(Vec<KChainStep>, usize)]) -> usize {
    chains.iter().map(|(_, n)| n).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct SchubertTerm {
    pub columns: Vec<u32>,
    pub ideal: OrderIdeal,
    pub coefficient: usize,
    /// |LKT(γ/β, λ)| for every γ the columns reach.
    pub counts: BTreeMap<String, usize>,
    /// Whether the nonzero counts agree.
    pub consistent: bool,
}

/// κ_β s_λ = Σ_c a^{Γ_c} κ_{Γ_c} with a^{Γ_c} = |LKT(γ/β, λ)| for γ reached
/// by the columns c. When counts differ across γ the largest is used and
/// the term is marked inconsistent.
pub fn schubert_expansion(beta: &Composition, lambda: &Composition) -> Result<Vec<SchubertTerm>> {
    let mut out = Vec::new();
    for (cols, by_gamma) in chain_groups(beta, lambda)? {
        let counts: BTreeMap<Composition, usize> =
            by_gamma.iter().map(|(g, v)| (g.clone(), lkt_count(v))).collect();
        let nonzero: BTreeSet<usize> = counts.values().copied().filter(|&n| n > 0).collect();
        let Some(&a) = nonzero.iter().max() else { continue };
        out.push(SchubertTerm {
            ideal: OrderIdeal::generated_by(counts.keys()),
            columns: cols,
            coefficient: a,
            counts: counts.iter().map(|(g, n)| (g.to_string(), *n)).collect(),
            consistent: nonzero.len() == 1,
        });
    }
    Ok(out)
}

pub fn schubert_sum(terms: &[SchubertTerm], m: usize) -> Result<Polynomial> {
    let mut p = Polynomial::zero(m);
    for t in terms {
        p.add_scaled(&t.ideal.character(m)?, &BigInt::from(t.coefficient));
    }
    Ok(p)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SignedExpansion {
    #[serde(serialize_with = "ser_signed")]
    pub coefficients: BTreeMap<Composition, BigInt>,
    /// Targets receiving both positive and negative contributions.
    pub cancellations: Vec<Composition>,
    /// The same, counted within a single column group.
    pub within_group: Vec<Composition>,
}

fn ser_signed<S: serde::Serializer>(
    m: &BTreeMap<Composition, BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for (a, c) in m {
        seq.serialize_element(&(a, c.to_string()))?;
    }
    seq.end()
}

impl SignedExpansion {
    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.values().all(|c| !c.is_negative())
    }

    pub fn sum(&self, m: usize) -> Result<Polynomial> {
        let mut p = Polynomial::zero(m);
        for (g, c) in &self.coefficients {
            p.add_scaled(&demazure_char(g, m)?, c);
        }
        Ok(p)
    }
}

const MAX_FAMILY: usize = 16;

/// κ_β s_λ = Σ (−1)^{m−1} c^{γ^(1)} κ_γ over nonempty sets of distinct γ
/// with nonempty LKT, γ the meet of the set. With `grouped`, sets stay
/// within one ordered column group; otherwise they range over all γ.
pub fn signed_key_expansion(
    beta: &Composition,
    lambda: &Composition,
    grouped: bool,
) -> Result<SignedExpansion> {
    let k = lambda.len() as u32;
    let groups = chain_groups(beta, lambda)?;
    let mut families: Vec<Vec<(Composition, usize, Vec<KChainStep>)>> = Vec::new();
    if grouped {
        for by_gamma in groups.values() {
            families.push(
                by_gamma
                    .iter()
                    .filter_map(|(g, v)| {
                        let n = lkt_count(v);
                        let ch = v.iter().find(|(_, c)| *c > 0)?.0.clone();
                        Some((g.clone(), n, ch))
                    })
                    .collect(),
            );
        }
    } else {
        let mut all: BTreeMap<Composition, (usize, Vec<KChainStep>)> = BTreeMap::new();
        for by_gamma in groups.values() {
            for (g, v) in by_gamma {
                for (ch, n) in v {
                    if *n > 0 {
                        let e = all.entry(g.clone()).or_insert((0, ch.clone()));
                        e.0 += n;
                    }
                }
            }
        }
        families.push(all.into_iter().map(|(g, (n, ch))| (g, n, ch)).collect());
    }
    let mut pos: BTreeMap<Composition, BigInt> = BTreeMap::new();
    let mut neg: BTreeMap<Composition, BigInt> = BTreeMap::new();
    let mut out = SignedExpansion::default();
    for fam in families.iter().filter(|f| !f.is_empty()) {
        if fam.len() > MAX_FAMILY {
            return Err(Error::Invalid(format!(
                "{} distinct γ exceed the inclusion–exclusion limit of {MAX_FAMILY}",
                fam.len()
            )));
        }
        let mut local: BTreeMap<Composition, [bool; 2]> = BTreeMap::new();
        for mask in 1u32..(1 << fam.len()) {
            let members: Vec<&(Composition, usize, Vec<KChainStep>)> = (0..fam.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &fam[i])
                .collect();
            let target = if grouped {
                let chains: Vec<Vec<KChainStep>> = members.iter().map(|m| m.2.clone()).collect();
                kd_intersection(beta, k, &chains)?
            } else {
                let gammas: Vec<Composition> = members.iter().map(|m| m.0.clone()).collect();
                meet(&gammas)?
            };
            let c = BigInt::from(members[0].1);
            let odd = members.len() % 2 == 1;
            local.entry(target.clone()).or_default()[odd as usize] = true;
            let side = if odd { &mut pos } else { &mut neg };
            *side.entry(target).or_default() += c;
        }
        out.within_group
            .extend(local.into_iter().filter(|(_, s)| s[0] && s[1]).map(|(g, _)| g));
    }
    for g in pos.keys().chain(neg.keys()).collect::<BTreeSet<_>>() {
        let p = pos.get(g).cloned().unwrap_or_default();
        let n = neg.get(g).cloned().unwrap_or_default();
        if !p.is_zero() && !n.is_zero() {
            out.cancellations.push(g.clone());
        }
        let c = p - n;
        if !c.is_zero() {
            out.coefficients.insert(g.clone(), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[u32]) -> Composition {
        Composition::from(v)
    }

    #[test]
    fn fig1_character() {
        let k = demazure_char(&c(&[0, 2, 1]), 3).unwrap();
        assert_eq!(k.to_string(), "x1^2*x2 + x1^2*x3 + x1*x2^2 + x1*x2*x3 + x2^2*x3");
    }

    #[test]
    fn solve_recovers_single_atom() {
        let a = c(&[1, 0, 2]);
        let p = atom_poly(&a, 3).unwrap();
        let sol = atom_basis_solve(&p).unwrap();
        assert_eq!(sol.into_iter().collect::<Vec<_>>(), vec![(a, BigInt::one())]);
    }

    #[test]
    fn kap_single_step() {
        let b = c(&[0, 1, 3, 0, 1, 2]);
        assert_eq!(kap_one_step(&b, 4, 2, &[2, 4]).unwrap(), c(&[0, 2, 3, 1, 0, 2]));
    }

    #[test]
    fn kap_matches_meet() {
        let b = c(&[0, 1, 3, 0, 1, 2]);
        let g2 = k_addition(&b, Cell::new(2, 2), 4).unwrap();
        let g4 = k_addition(&b, Cell::new(2, 4), 4).unwrap();
        assert_eq!(meet(&[g2, g4]).unwrap(), c(&[0, 2, 3, 1, 0, 2]));
    }

    #[test]
    fn pinned_decompositions_sum() {
        let g = c(&[1, 0, 2, 1]);
        let (pinned, atoms) = pinned_decompositions(&g);
        let mut lhs = Polynomial::zero(4);
        for b in &pinned {
            lhs = &lhs + &pinned_poly(b, 4).unwrap();
        }
        assert_eq!(lhs, demazure_char(&g, 4).unwrap());
        let mut rhs = Polynomial::zero(4);
        for a in &atoms {
            rhs = &rhs + &atom_poly(a, 4).unwrap();
        }
        assert_eq!(rhs, pinned_poly(&g, 4).unwrap());
    }

    #[test]
    fn atom_expansion_small() {
        let b = c(&[0, 1, 2]);
        let l = c(&[0, 1]);
        let coeffs = atom_expansion(&b, &l).unwrap();
        let census = record_census(&b, &l).unwrap();
        assert_eq!(census.collisions, 0);
        assert_eq!(atom_sum(&coeffs, 3).unwrap(), product(&b, &l, 3).unwrap());
    }

    #[test]
    fn order_ideal_closed() {
        let ideal = OrderIdeal::generated_by(&[c(&[2, 0, 1]), c(&[0, 3, 0])]);
        assert!(ideal.is_closed());
        assert_eq!(ideal.generators.len(), 2);
        assert!(ideal.contains(&c(&[2, 1, 0])));
    }
}
