use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;

use kohnert::chain::k_addable_positions;
use kohnert::composition::downset;
use kohnert::expansions::{
    atom_poly, demazure_char, pinned_decompositions, pinned_poly,
};
use kohnert::figures::{self, appendix_start, threading_diagram, CHAIN_BASE, CHAIN_K, CHAIN_ROWS};
use kohnert::insertion::{excise, insert, iterated_insert};
use kohnert::kohnert::{generate_akd, generate_kd};
use kohnert::labeling::{proper_labeling, semi_proper_closure, Labeling};
use kohnert::poly::Polynomial;
use kohnert::skew::{atomic_to_key, record, SkewTableau};
use kohnert::tableau::{generate_ssrt, phi, TwoLineArray};
use kohnert::thread::{thread_decomposition, thread_weight};
use kohnert::verify::{check_intersections, run_grid, Grid, GridSummary};
use kohnert::{Cell, Composition, Diagram, Result};

/// Grid counts of claimed identities that do not hold, pinned so that any
/// change in either direction is noticed.
const SCHUBERT_FAILURES: usize = 10;
const SIGNED_FAILURES: usize = 11;
const CONSTANCY_FAILURES: usize = 13;

fn c(v: &[u32]) -> Composition {
    Composition::from(v)
}

struct Verdict {
    pass: bool,
    detail: String,
    /// False when the outcome differs from the recorded one.
    expected: bool,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
            expected: pass,
        }
    }
}

fn crit1() -> Result<Verdict> {
    let alpha = c(&[0, 2, 1]);
    let kd = generate_kd(&alpha)?;
    let ssrt: BTreeSet<_> = generate_ssrt(&c(&[0, 1, 2]))?.into_iter().collect();
    let images: BTreeSet<_> = kd.iter().map(|d| phi(d, &alpha)).collect::<Result<_>>()?;
    let mut want = Polynomial::zero(3);
    for e in [[2, 1, 0], [2, 0, 1], [1, 2, 0], [1, 1, 1], [0, 2, 1]] {
        want = &want + &Polynomial::monomial(e.to_vec(), BigInt::from(1));
    }
    let kappa = demazure_char(&alpha, 3)?;
    Ok(Verdict::new(
        kd.len() == 5 && images.len() == 5 && images.is_subset(&ssrt) && kappa == want,
        format!(
            "|KD| = {}, {} distinct images in SSRT(0,1,2) of size {}, kappa = {kappa}",
            kd.len(),
            images.len(),
            ssrt.len()
        ),
    ))
}

fn crit2() -> Result<Verdict> {
    let d = threading_diagram();
    let theta = thread_weight(&d, 6)?;
    let got: BTreeSet<BTreeSet<Cell>> = thread_decomposition(&d)
        .into_iter()
        .map(|t| t.cells.into_iter().collect())
        .collect();
    let colors: [&[(u32, u32)]; 4] = [
        &[(1, 2), (2, 2), (3, 2), (4, 1), (5, 1)],
        &[(1, 5), (2, 5), (3, 3), (4, 3), (5, 3)],
        &[(1, 6), (2, 6), (3, 4), (4, 2)],
        &[(1, 3), (2, 1)],
    ];
    let want: BTreeSet<BTreeSet<Cell>> = colors
        .iter()
        .map(|t| t.iter().map(|&(col, row)| Cell::new(col, row)).collect())
        .collect();
    Ok(Verdict::new(
        theta == c(&[0, 5, 2, 0, 5, 4]) && got == want,
        format!("theta = ({theta}), {} threads", got.len()),
    ))
}

fn labeling(shape: &[u32], rows: [&[(u32, u32)]; 6]) -> Labeling {
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for &(col, label) in *row {
            entries.push((Cell::new(col, 6 - i as u32), label));
        }
    }
    Labeling::from_entries(c(shape), &entries)
}

fn crit3() -> Result<Verdict> {
    let d = threading_diagram();
    let fig4 = labeling(
        &[0, 2, 5, 0, 5, 4],
        [
            &[(1, 6), (2, 6)],
            &[(1, 5), (2, 5)],
            &[(3, 6)],
            &[(1, 3), (3, 5), (4, 5), (5, 5)],
            &[(1, 2), (2, 3), (3, 3), (4, 6)],
            &[(2, 2), (4, 3), (5, 3)],
        ],
    );
    let proper = proper_labeling(&d, &c(&[0, 2, 5, 0, 5, 4]))?;
    let restrict = |l: &Labeling, from: u32| -> Vec<(Cell, u32)> {
        l.entries().into_iter().filter(|(cell, _)| cell.col >= from).collect()
    };
    let panels = (1..=5).rev().filter(|&col| restrict(&proper, col) == restrict(&fig4, col)).count();

    let fig5 = [
        labeling(
            &[0, 5, 2, 0, 5, 4],
            [
                &[(1, 6), (2, 6)],
                &[(1, 5), (2, 5)],
                &[(3, 6)],
                &[(1, 3), (3, 5), (4, 5), (5, 5)],
                &[(1, 2), (2, 2), (3, 2), (4, 6)],
                &[(2, 3), (4, 2), (5, 2)],
            ],
        ),
        fig4.clone(),
        labeling(
            &[0, 2, 5, 0, 4, 5],
            [
                &[(1, 6), (2, 6)],
                &[(1, 5), (2, 5)],
                &[(3, 6)],
                &[(1, 3), (3, 5), (4, 6), (5, 6)],
                &[(1, 2), (2, 3), (3, 3), (4, 5)],
                &[(2, 2), (4, 3), (5, 3)],
            ],
        ),
        labeling(
            &[0, 2, 4, 0, 5, 5],
            [
                &[(1, 6), (2, 6)],
                &[(1, 5), (2, 5)],
                &[(3, 6)],
                &[(1, 3), (3, 5), (4, 6), (5, 6)],
                &[(1, 2), (2, 3), (3, 3), (4, 5)],
                &[(2, 2), (4, 3), (5, 5)],
            ],
        ),
    ];
    let closure = semi_proper_closure(&d, &c(&figures::FIG5_SHAPE))?;
    let as_entries = |l: &Labeling| l.entries();
    let got: HashSet<_> = closure.iter().map(as_entries).collect();
    let found = fig5.iter().filter(|l| got.contains(&as_entries(l))).count();
    Ok(Verdict::new(
        panels == 5 && proper.entries() == fig4.entries() && found == 4,
        format!("{panels}/5 column panels and final labeling, {found}/4 labelings in a closure of {}", closure.len()),
    ))
}

fn crit4() -> Result<Verdict> {
    let got = k_addable_positions(&c(&[0, 1, 3, 0, 1, 2]), 4);
    let want: Vec<Cell> = [(1, 4), (2, 2), (2, 4), (3, 2), (3, 4), (4, 3)]
        .iter()
        .map(|&(col, row)| Cell::new(col, row))
        .collect();
    let got_set: BTreeSet<_> = got.iter().copied().collect();
    Ok(Verdict::new(
        got.len() == 6 && got_set == want.into_iter().collect(),
        format!("{} positions", got.len()),
    ))
}

fn crit5() -> Result<Verdict> {
    let mut cases = 0;
    let mut bad = 0;
    for len in 1..=4 {
        for size in 0..=5 {
            for alpha in Composition::all_of_size(size, len) {
                let k = len as u32;
                for t in generate_kd(&alpha)? {
                    let p = phi(&t, &alpha)?;
                    for r in 1..=k {
                        cases += 1;
                        let run = iterated_insert(&t, &alpha, k, &[r])?;
                        let lhs = phi(&run.diagram, &run.betas[1])?;
                        if lhs != p.rsk_insert(r)?.0 {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::new(bad == 0, format!("{cases} insertions, {bad} mismatches")))
}

fn crit6() -> Result<Verdict> {
    let mut cases = 0;
    let mut bad = 0;
    for len in 1..=4 {
        for beta in Composition::all_bounded(len, 2) {
            for t in generate_kd(&beta)? {
                for k in 1..=4u32 {
                    for r in 1..=k.min(len as u32) {
                        cases += 1;
                        let u = insert(&t, &beta, k, r)?.diagram;
                        if excise(&u, &beta, k)? != (t.clone(), r) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::new(bad == 0, format!("{cases} round trips, {bad} mismatches")))
}

type Drawn = (&'static [u32], &'static [((u32, u32), u32)]);

/// Recording tableaux as drawn after each step: (atomic, key).
const APPENDIX_TABLEAUX: [(Drawn, Drawn); 5] = [
    (
        (&[2, 0, 4, 1, 0, 3], &[((2, 1), 4)]),
        (&[1, 0, 3, 2, 0, 4], &[((2, 4), 4)]),
    ),
    (
        (&[2, 0, 4, 1, 0, 4], &[((2, 1), 4), ((4, 3), 4)]),
        (&[1, 0, 4, 2, 0, 4], &[((2, 4), 4), ((4, 3), 4)]),
    ),
    (
        (&[2, 0, 5, 1, 0, 4], &[((2, 1), 4), ((4, 3), 4), ((5, 3), 4)]),
        (&[1, 0, 5, 2, 0, 4], &[((2, 4), 4), ((4, 3), 4), ((5, 3), 4)]),
    ),
    (
        (&[2, 0, 5, 2, 0, 4], &[((2, 1), 4), ((2, 4), 3), ((4, 3), 4), ((5, 3), 4)]),
        (&[2, 0, 5, 2, 0, 4], &[((2, 1), 3), ((2, 4), 4), ((4, 3), 4), ((5, 3), 4)]),
    ),
    (
        (&[2, 0, 5, 5, 0, 2], &[((2, 1), 4), ((2, 4), 3), ((4, 3), 4), ((5, 3), 4), ((5, 4), 3)]),
        (&[2, 0, 5, 5, 0, 2], &[((2, 1), 3), ((2, 4), 4), ((4, 3), 4), ((5, 3), 4), ((5, 4), 3)]),
    ),
];

/// The atomic panels of steps 4 and 5 disagree with the threading and skew
/// diagram definitions; see the README.
const APPENDIX_ATOMIC_AGREES: [bool; 5] = [true, true, true, false, false];

fn matches(t: &SkewTableau, (shape, entries): Drawn) -> bool {
    let want: BTreeMap<Cell, u32> = entries
        .iter()
        .map(|&((col, row), v)| (Cell::new(col, row), v))
        .collect();
    t.ambient == c(shape) && t.entries == want
}

fn crit7() -> Result<Verdict> {
    let beta = c(&CHAIN_BASE);
    let start = appendix_start();
    let w = figures::chain_biword();
    let run = iterated_insert(&start, &beta, CHAIN_K, &CHAIN_ROWS)?;
    let chain: Vec<Composition> = [
        [1, 0, 3, 1, 0, 4],
        [1, 0, 3, 2, 0, 4],
        [1, 0, 4, 2, 0, 4],
        [1, 0, 5, 2, 0, 4],
        [2, 0, 5, 2, 0, 4],
        [2, 0, 5, 5, 0, 2],
    ]
    .iter()
    .map(|v| c(v))
    .collect();
    let landings: Vec<Cell> = run.steps.iter().map(|s| s.insertion.trace.landing_cell).collect();
    let want_landings: Vec<Cell> = [(2, 1), (4, 3), (5, 1), (2, 4), (5, 2)]
        .iter()
        .map(|&(col, row)| Cell::new(col, row))
        .collect();

    let mut atomic_ok = Vec::new();
    let mut key_ok = Vec::new();
    for (i, (atomic, key)) in APPENDIX_TABLEAUX.iter().enumerate() {
        let prefix = iterated_insert(&start, &beta, CHAIN_K, &CHAIN_ROWS[..=i])?;
        let wp = TwoLineArray {
            pairs: w.pairs[..=i].to_vec(),
        };
        let a = record(&prefix, &wp, CHAIN_K)?;
        atomic_ok.push(matches(&a, *atomic));
        key_ok.push(matches(&atomic_to_key(&a)?, *key));
    }

    let mut u = run.diagram.clone();
    let mut rows = Vec::new();
    for b in run.betas[..run.steps.len()].iter().rev() {
        let (t, r) = excise(&u, b, CHAIN_K)?;
        rows.push(r);
        u = t;
    }
    rows.reverse();
    let golden = figures::render("appendixA")? == include_str!("golden/appendixA.txt")
        && figures::render("appendixB")? == include_str!("golden/appendixB.txt");

    let rest = run.betas == chain && landings == want_landings && rows == CHAIN_ROWS && u == start && golden;
    let count = |v: &[bool]| v.iter().filter(|&&b| b).count();
    Ok(Verdict {
        pass: rest && atomic_ok.iter().all(|&b| b) && key_ok.iter().all(|&b| b),
        detail: format!(
            "chain and landing cells as drawn: {}, atomic panels {}/5, key panels {}/5, excised rows {rows:?}, fixtures {}",
            run.betas == chain && landings == want_landings,
            count(&atomic_ok),
            count(&key_ok),
            if golden { "identical" } else { "differ" },
        ),
        expected: rest && atomic_ok == APPENDIX_ATOMIC_AGREES && key_ok.iter().all(|&b| b),
    })
}

fn crit8() -> Result<Verdict> {
    let mut cases = 0;
    let mut bad = Vec::new();
    for len in 1..=4 {
        for beta in Composition::all_bounded(len, 3) {
            cases += 1;
            let kd: HashSet<Diagram> = generate_kd(&beta)?.into_iter().collect();
            let mut union = HashSet::new();
            let mut total = 0;
            let mut key = Polynomial::zero(len);
            for a in downset(&beta, false).iter() {
                let akd = generate_akd(a)?;
                total += akd.len();
                union.extend(akd);
                key = &key + &atom_poly(a, len)?;
            }
            let (pinned, atoms) = pinned_decompositions(&beta);
            let mut via_pinned = Polynomial::zero(len);
            for b in &pinned {
                via_pinned = &via_pinned + &pinned_poly(b, len)?;
            }
            let mut pin = Polynomial::zero(len);
            for a in &atoms {
                pin = &pin + &atom_poly(a, len)?;
            }
            let kappa = demazure_char(&beta, len)?;
            if union != kd || total != kd.len() || key != kappa || via_pinned != kappa || pin != pinned_poly(&beta, len)? {
                bad.push(beta.to_string());
            }
        }
    }
    Ok(Verdict::new(bad.is_empty(), format!("{cases} compositions, failures {bad:?}")))
}

fn crit9(s: &GridSummary) -> Verdict {
    let n = s.cases;
    let pass = s.atom == n && s.schubert == n && s.signed == n && s.positivity == n && s.errors == 0;
    let expected = s.atom == n
        && s.positivity == n
        && s.errors == 0
        && n - s.schubert == SCHUBERT_FAILURES
        && n - s.signed == SIGNED_FAILURES;
    Verdict {
        pass,
        detail: format!(
            "{n} cases: atom {}, schubert {}, signed {}, positivity {}, cancellation-free {}, errors {}",
            s.atom, s.schubert, s.signed, s.positivity, s.cancellation_free, s.errors
        ),
        expected,
    }
}

fn crit10() -> Verdict {
    let s = check_intersections(4, 8);
    for f in &s.failures {
        println!("    {f}");
    }
    Verdict::new(
        s.failures.is_empty(),
        format!("{} families, {} agree", s.families, s.agree),
    )
}

fn crit11(s: &GridSummary) -> Verdict {
    let n = s.cases;
    Verdict {
        pass: s.counting == n && s.injective == n && s.constant_on_ideals == n,
        detail: format!(
            "{n} cases: counting {}, injective {}, constant over ideals {}",
            s.counting, s.injective, s.constant_on_ideals
        ),
        expected: s.counting == n && s.injective == n && n - s.constant_on_ideals == CONSTANCY_FAILURES,
    }
}

type Check = fn() -> Result<Verdict>;

fn report(n: usize, name: &str, start: Instant, v: Result<Verdict>) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match v {
        Ok(v) => {
            let status = if v.pass { "PASS" } else { "FAIL" };
            println!("criterion {n:>2} {status} {name} [{secs:.2}s] {}", v.detail);
            v.expected
        }
        Err(e) => {
            println!("criterion {n:>2} FAIL {name} [{secs:.2}s] error: {e}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut ok = true;
    let simple: [(&str, Check); 8] = [
        ("kohnert diagrams of (0,2,1)", crit1),
        ("threading", crit2),
        ("proper and pinned labelings", crit3),
        ("4-addable positions", crit4),
        ("insertion commutes with RSK", crit5),
        ("excision inverts insertion", crit6),
        ("appendix insertion and excision", crit7),
        ("decomposition identities", crit8),
    ];
    for (i, (name, f)) in simple.iter().enumerate() {
        let t = Instant::now();
        ok &= report(i + 1, name, t, f());
    }

    let t = Instant::now();
    let grid = run_grid(&Grid::default());
    let grid_secs = t.elapsed();
    let summary = grid.as_ref().map(|r| GridSummary::from_reports(r));
    match &summary {
        Ok(s) => ok &= report(9, "expansions of kappa_beta s_lambda", t, Ok(crit9(s))),
        Err(e) => {
            println!("criterion  9 FAIL grid error: {e}");
            ok = false;
        }
    }
    let t = Instant::now();
    ok &= report(10, "intersections of Kohnert sets", t, Ok(crit10()));
    match &summary {
        Ok(s) => ok &= report(11, "bijection counts (shares the grid run)", Instant::now() - grid_secs, Ok(crit11(s))),
        Err(_) => {
            println!("criterion 11 FAIL grid error");
            ok = false;
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        println!("an outcome differs from the recorded one");
        ExitCode::FAILURE
    }
}
