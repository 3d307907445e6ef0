//! Text reproductions of the worked examples, used as golden fixtures.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::chain::k_addable_positions;
use crate::chain::k_addition;
use crate::composition::Composition;
use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::expansions::demazure_char;
use crate::insertion::{excise, insert, iterated_insert, IteratedInsertion};
use crate::kohnert::generate_kd;
use crate::labeling::{proper_labeling, semi_proper_closure};
use crate::skew::{atomic_to_key, record};
use crate::tableau::{generate_ssrt, phi, ReverseTableau, TwoLineArray};
use crate::thread::{thread_decomposition, thread_weight};

pub const NAMES: [&str; 9] = [
    "fig1", "fig3", "fig5", "fig7", "fig8", "fig9", "fig10", "appendixA", "appendixB",
];

pub fn render(name: &str) -> Result<String> {
    match name {
        "fig1" => fig1(),
        "fig3" => fig3(),
        "fig5" => fig5(),
        "fig7" => fig7(),
        "fig8" => fig8(),
        "fig9" => fig9(),
        "fig10" => fig10(),
        "appendixA" => appendix_a(),
        "appendixB" => appendix_b(),
        _ => Err(Error::Invalid(format!(
            "unknown figure {name:?}; expected one of {}",
            NAMES.join(", ")
        ))),
    }
}

fn c(v: &[u32]) -> Composition {
    Composition::from(v)
}

/// The rectified diagram of the threading and labeling figures.
pub fn threading_diagram() -> Diagram {
    Diagram::from_pairs(&[
        (1, 6), (2, 6), (1, 5), (2, 5), (3, 4),
        (1, 3), (3, 3), (4, 3), (5, 3),
        (1, 2), (2, 2), (3, 2), (4, 2),
        (2, 1), (4, 1), (5, 1),
    ])
}

/// The largest shape for which the threading diagram is pinned.
pub const FIG5_SHAPE: [u32; 6] = [0, 2, 4, 0, 5, 5];

/// The starting diagram of the iterated insertion figure.
pub fn iterated_start() -> Diagram {
    Diagram::from_pairs(&[
        (1, 6), (2, 5), (1, 4), (1, 3), (3, 3), (4, 2), (1, 1), (2, 1), (3, 1),
    ])
}

/// The starting diagram of the `appendixA` run.
pub fn appendix_start() -> Diagram {
    Diagram::from_pairs(&[
        (1, 6), (2, 5), (1, 4), (1, 3), (2, 3), (3, 2), (1, 1), (3, 1), (4, 1),
    ])
}

pub const CHAIN_BASE: [u32; 6] = [1, 0, 3, 1, 0, 4];
pub const CHAIN_ROWS: [u32; 5] = [3, 3, 1, 4, 2];
pub const CHAIN_K: u32 = 4;

/// The biword with top row (4,4,4,3,3) and bottom row `CHAIN_ROWS`.
pub fn chain_biword() -> TwoLineArray {
    TwoLineArray {
        pairs: [4, 4, 4, 3, 3].into_iter().zip(CHAIN_ROWS).collect(),
    }
}

fn labeled(d: &Diagram, alpha: &Composition, rows: u32, cols: u32, marks: &BTreeMap<Cell, String>) -> String {
    match proper_labeling(d, alpha) {
        Ok(l) => l.render_marked(rows, cols, marks),
        Err(_) => {
            let m = marks.iter().filter_map(|(c, s)| Some((*c, s.chars().next()?))).collect();
            d.render_marked(rows, cols, &m)
        }
    }
}

fn fig1() -> Result<String> {
    let alpha = c(&[0, 2, 1]);
    let mut out = String::new();
    let kd = generate_kd(&alpha)?;
    writeln!(out, "KD({alpha}): {} diagrams", kd.len()).unwrap();
    for d in &kd {
        writeln!(out, "\nwt = ({})", d.weight(3)?).unwrap();
        out.push_str(&d.render(3, 2));
        out.push_str("phi:\n");
        out.push_str(&phi(d, &alpha)?.render());
    }
    let lambda = alpha.sort_to_partition();
    writeln!(out, "\n|SSRT({lambda})| = {}", generate_ssrt(&lambda)?.len()).unwrap();
    writeln!(out, "kappa({alpha}) = {}", demazure_char(&alpha, 3)?).unwrap();
    Ok(out)
}

fn fig3() -> Result<String> {
    let d = threading_diagram();
    let threads = thread_decomposition(&d);
    let mut marks = BTreeMap::new();
    let mut out = String::new();
    for (i, t) in threads.iter().enumerate() {
        let tag = (b'a' + i as u8) as char;
        for &cell in &t.cells {
            marks.insert(cell, tag);
        }
        let cells: Vec<String> = t.cells.iter().map(|c| c.to_string()).collect();
        let end = t.terminal_row.map_or("-".to_string(), |r| r.to_string());
        writeln!(out, "{tag}: size {} ends in row {end}: {}", t.len(), cells.join(" ")).unwrap();
    }
    out.push_str(&d.render_marked(6, 5, &marks));
    writeln!(out, "theta = ({})", thread_weight(&d, 6)?).unwrap();
    Ok(out)
}

fn fig5() -> Result<String> {
    let d = threading_diagram();
    let alpha = c(&FIG5_SHAPE);
    let all = semi_proper_closure(&d, &alpha)?;
    let proper: Vec<_> = all.iter().filter(|l| l.is_proper()).collect();
    let mut out = String::new();
    writeln!(
        out,
        "pinned semi-proper labelings from L_({alpha}): {}, proper: {}",
        all.len(),
        proper.len()
    )
    .unwrap();
    for l in proper {
        let shape = l.recomputed_shape().map_or("?".to_string(), |s| s.to_string());
        writeln!(
            out,
            "\nshape ({shape}) proper={} pinned={}",
            l.is_proper(),
            l.is_pinned()
        )
        .unwrap();
        out.push_str(&l.render(6, 5));
    }
    Ok(out)
}

fn fig7() -> Result<String> {
    let t = threading_diagram();
    let beta = c(&[0, 5, 2, 0, 5, 4]);
    let ins = insert(&t, &beta, 6, 5)?;
    let mut out = String::new();
    let start = ins.trace.steps[0].position;
    let marks = BTreeMap::from([(start, "x".to_string())]);
    writeln!(out, "insert 5 restricted by 6, label ({})", ins.alpha).unwrap();
    out.push_str(&labeled(&t, &ins.alpha, 6, 6, &marks));
    out.push_str(&trace_lines(&ins.trace));
    let theta = thread_weight(&ins.diagram, 6)?;
    out.push_str(&labeled(&ins.diagram, &theta, 6, 6, &path_marks(&ins.diagram, &ins.trace)));
    let p = phi(&t, &beta)?;
    let (q, cell) = p.rsk_insert(5)?;
    writeln!(out, "\nphi(T):").unwrap();
    out.push_str(&p.render());
    writeln!(out, "phi(T) <- 5 (new cell {cell}):").unwrap();
    out.push_str(&q.render());
    let lifted = phi(&ins.diagram, &beta.add_unit(5))
        .or_else(|_| crate::tableau::lift(&ins.diagram, 6))?;
    writeln!(out, "phi(U) = phi(T) <- 5: {}", lifted == q).unwrap();
    Ok(out)
}

fn trace_lines(tr: &crate::insertion::RectificationTrace) -> String {
    let mut out = String::new();
    for s in &tr.steps {
        let kind = format!("{:?}", s.kind).to_lowercase();
        write!(out, "  {kind} at {}", s.position).unwrap();
        if let Some(b) = s.bumped {
            write!(out, " bumping {b}").unwrap();
        }
        if let Some(l) = s.label {
            write!(out, " label {l}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "  lands at {}", tr.landing_cell).unwrap();
    out
}

fn path_marks(u: &Diagram, tr: &crate::insertion::RectificationTrace) -> BTreeMap<Cell, String> {
    tr.path()
        .into_iter()
        .filter(|p| !u.contains(*p))
        .map(|p| (p, "•".to_string()))
        .collect()
}

fn fig8() -> Result<String> {
    let beta = c(&[0, 1, 3, 0, 1, 2]);
    let mut out = String::new();
    let pos = k_addable_positions(&beta, 4);
    writeln!(out, "4-addable positions of ({beta}): {}", pos.len()).unwrap();
    for p in pos {
        let marks = BTreeMap::from([(p, '+')]);
        writeln!(out, "\n{p} -> ({})", k_addition(&beta, p, 4)?).unwrap();
        out.push_str(&Diagram::composition(&beta).render_marked(6, 4, &marks));
    }
    Ok(out)
}

fn chain_run(t: &Diagram) -> Result<IteratedInsertion> {
    iterated_insert(t, &c(&CHAIN_BASE), CHAIN_K, &CHAIN_ROWS)
}

fn fig9() -> Result<String> {
    let run = chain_run(&iterated_start())?;
    let mut out = String::new();
    let mut cur = iterated_start();
    writeln!(out, "({})", run.betas[0]).unwrap();
    out.push_str(&labeled(&cur, &run.betas[0], 6, 6, &BTreeMap::new()));
    for (s, b) in run.steps.iter().zip(&run.betas[1..]) {
        let x = s.insertion.trace.steps[0].position;
        writeln!(out, "\ninsert {} at {x}, label ({})", s.inserted_row, s.insertion.alpha).unwrap();
        out.push_str(&labeled(&cur, &s.insertion.alpha, 6, 6, &BTreeMap::from([(x, "x".into())])));
        writeln!(
            out,
            "-> ({b}) via column {}, row {}",
            s.chain_step.added_column, s.chain_step.extended_row
        )
        .unwrap();
        cur = s.insertion.diagram.clone();
        out.push_str(&labeled(&cur, &s.alpha_after, 6, 6, &BTreeMap::new()));
    }
    Ok(out)
}

fn fig10() -> Result<String> {
    let t = iterated_start();
    let w = chain_biword();
    let beta = c(&CHAIN_BASE);
    let (p, q) = ReverseTableau::from_biword(CHAIN_K as usize, &w)?;
    let run = chain_run(&t)?;
    let rec = record(&run, &w, CHAIN_K)?;
    let mut out = String::new();
    writeln!(out, "R:").unwrap();
    out.push_str(&p.render());
    writeln!(out, "recording R_lambda: {}", q == ReverseTableau::superstandard(&q.shape())).unwrap();
    writeln!(out, "biword top {:?} bottom {:?}", w.top(), w.bottom()).unwrap();
    writeln!(out, "\nT in KD({beta}), theta ({})", thread_weight(&t, 6)?).unwrap();
    out.push_str(&labeled(&t, &beta, 6, 6, &BTreeMap::new()));
    let theta = thread_weight(&run.diagram, 6)?;
    writeln!(out, "\nU in KD({}), theta ({theta})", run.betas.last().expect("nonempty")).unwrap();
    out.push_str(&labeled(&run.diagram, &theta, 6, 6, &BTreeMap::new()));
    writeln!(out, "\natomic recording tableau of shape ({theta})/({beta}):").unwrap();
    out.push_str(&rec.render(6, 5));
    writeln!(
        out,
        "atomic={} lattice={} weight=({})",
        rec.is_atomic(),
        rec.is_lattice(),
        rec.weight()
    )
    .unwrap();
    Ok(out)
}

fn appendix_a() -> Result<String> {
    let t = appendix_start();
    let w = chain_biword();
    let run = chain_run(&t)?;
    let mut out = String::new();
    let (p, q) = ReverseTableau::from_biword(CHAIN_K as usize, &w)?;
    writeln!(out, "biword top {:?} bottom {:?}", w.top(), w.bottom()).unwrap();
    writeln!(out, "P:").unwrap();
    out.push_str(&p.render());
    writeln!(out, "Q:").unwrap();
    out.push_str(&q.render());
    let mut cur = t.clone();
    for (i, s) in run.steps.iter().enumerate() {
        let ins = &s.insertion;
        let x = ins.trace.steps[0].position;
        writeln!(
            out,
            "\nstep {}: insert {} restricted by {CHAIN_K}, label ({})",
            i + 1,
            s.inserted_row,
            ins.alpha
        )
        .unwrap();
        out.push_str(&labeled(&cur, &ins.alpha, 6, 6, &BTreeMap::from([(x, "x".into())])));
        out.push_str(&trace_lines(&ins.trace));
        out.push_str(&labeled(&ins.diagram, &s.alpha_after, 6, 6, &path_marks(&ins.diagram, &ins.trace)));
        writeln!(
            out,
            "chain: column {} row {} -> ({}), label ({})",
            s.chain_step.added_column, s.chain_step.extended_row, s.chain_step.after, s.alpha_after
        )
        .unwrap();
        let prefix = iterated_insert(&t, &run.betas[0], CHAIN_K, &CHAIN_ROWS[..=i])?;
        let wp = TwoLineArray {
            pairs: w.pairs[..=i].to_vec(),
        };
        let atomic = record(&prefix, &wp, CHAIN_K)?;
        writeln!(out, "atomic record, shape ({}):", atomic.ambient).unwrap();
        out.push_str(&atomic.render(6, 5));
        let key = atomic_to_key(&atomic)?;
        writeln!(out, "key record, shape ({}):", key.ambient).unwrap();
        out.push_str(&key.render(6, 5));
        cur = ins.diagram.clone();
    }
    Ok(out)
}

fn appendix_b() -> Result<String> {
    let run = chain_run(&appendix_start())?;
    let mut out = String::new();
    let mut u = run.diagram.clone();
    writeln!(out, "start in KD({})", run.betas.last().expect("nonempty")).unwrap();
    out.push_str(&u.render(6, 6));
    let mut rows = Vec::new();
    for i in (0..run.steps.len()).rev() {
        let b = &run.betas[i];
        let col = run.steps[i].chain_step.added_column;
        let (t, r) = excise(&u, b, CHAIN_K)?;
        writeln!(out, "\nexcise column {col} into KD({b}): row {r}").unwrap();
        out.push_str(&t.render(6, 6));
        rows.push(r);
        u = t;
    }
    rows.reverse();
    writeln!(out, "\nrecovered rows {rows:?}").unwrap();
    writeln!(out, "recovered start: {}", u == appendix_start()).unwrap();
    Ok(out)
}
