use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kohnert::diagram::{Cell, Diagram};
use kohnert::expansions::{
    atom_expansion, product, schubert_expansion, signed_key_expansion,
};
use kohnert::insertion::{excise, iterated_insert};
use kohnert::kohnert::{generate_akd, generate_kd, generate_pkd};
use kohnert::labeling::{proper_labeling_checked, semi_proper_closure};
use kohnert::skew::{atomic_to_key, record};
use kohnert::tableau::ReverseTableau;
use kohnert::thread::{thread_decomposition, thread_weight};
use kohnert::verify::{run_grid, Grid, GridSummary};
use kohnert::{figures, Composition, Error};

const FIXTURES: [(&str, &str); 9] = [
    ("fig1", include_str!("../tests/golden/fig1.txt")),
    ("fig3", include_str!("../tests/golden/fig3.txt")),
    ("fig5", include_str!("../tests/golden/fig5.txt")),
    ("fig7", include_str!("../tests/golden/fig7.txt")),
    ("fig8", include_str!("../tests/golden/fig8.txt")),
    ("fig9", include_str!("../tests/golden/fig9.txt")),
    ("fig10", include_str!("../tests/golden/fig10.txt")),
    ("appendixA", include_str!("../tests/golden/appendixA.txt")),
    ("appendixB", include_str!("../tests/golden/appendixB.txt")),
];

#[derive(Parser)]
#[command(name = "kohnert", version, about = "Kohnert diagrams, restricted insertion and κ_β·s_λ expansions")]
struct Cli {
    /// Emit JSON instead of ASCII.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum cells for closure computations (also KOHNERT_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kohnert diagrams KD(α).
    Kd(SetArgs),
    /// Atom diagrams AKD(α).
    Akd(SetArgs),
    /// Pinned diagrams PKD(α).
    Pkd(SetArgs),
    /// Thread decomposition and thread weight of a diagram.
    Threads {
        #[arg(long, value_parser = parse_diagram)]
        diagram: Diagram,
        /// Length of the weight (defaults to the highest row).
        #[arg(long)]
        len: Option<usize>,
    },
    /// Proper labeling of a diagram, or its exchange closure.
    Label {
        #[arg(long, value_parser = parse_diagram)]
        diagram: Diagram,
        #[arg(long, value_parser = parse_comp)]
        alpha: Composition,
        #[arg(long)]
        closure: bool,
    },
    /// Iterated insertion restricted by k into T ∈ KD(β), T = D(β) by default.
    Insert {
        #[arg(long, value_parser = parse_comp)]
        beta: Composition,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_comp)]
        rows: Composition,
        #[arg(long, value_parser = parse_diagram)]
        diagram: Option<Diagram>,
        /// Print every bumping path.
        #[arg(long)]
        trace: bool,
    },
    /// Reverses one insertion: U ∈ KD(β +_k (c, r)) back to (T, r).
    Excise {
        #[arg(long, value_parser = parse_comp)]
        beta: Composition,
        #[arg(long)]
        k: u32,
        #[arg(long, value_parser = parse_diagram)]
        diagram: Diagram,
    },
    /// κ_β·s_λ by multiplication, or T × R by insertion when --tableau is given.
    Product {
        #[arg(long, value_parser = parse_comp)]
        beta: Composition,
        #[arg(long, value_parser = parse_comp)]
        lambda: Option<Composition>,
        /// Rows of a reverse tableau bottom first, e.g. "/ /3,1/4,3,2".
        #[arg(long)]
        tableau: Option<String>,
        #[arg(long, value_parser = parse_diagram)]
        diagram: Option<Diagram>,
    },
    /// Expansion of κ_β·s_λ.
    Expand {
        #[arg(long, value_parser = parse_comp)]
        beta: Composition,
        #[arg(long, value_parser = parse_comp)]
        lambda: Composition,
        #[arg(long, value_enum, default_value_t = Basis::Atom)]
        basis: Basis,
        /// For the key basis, run inclusion–exclusion over all γ at once.
        #[arg(long)]
        ungrouped: bool,
    },
    /// Compares every expansion with direct multiplication over a grid.
    Verify {
        #[arg(long, default_value = "parts=2,len=4,cells=4")]
        grid: String,
        /// Print every failing case.
        #[arg(long)]
        failures: bool,
    },
    /// Draws D(α) or a diagram.
    Render {
        #[arg(long, value_parser = parse_comp)]
        alpha: Option<Composition>,
        #[arg(long, value_parser = parse_diagram)]
        diagram: Option<Diagram>,
    },
    /// Regenerates worked examples and diffs them against the fixtures.
    Golden {
        /// A figure name or "all".
        #[arg(default_value = "all")]
        name: String,
        /// Overwrite the fixtures in this directory instead of diffing.
        #[arg(long)]
        bless: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct SetArgs {
    #[arg(long, value_parser = parse_comp)]
    alpha: Composition,
    /// Print only the size.
    #[arg(long)]
    count: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Atom,
    Schubert,
    Key,
}

enum Outcome {
    Ok(String),
    Mismatch(String),
}

fn parse_comp(s: &str) -> Result<Composition, String> {
    Composition::parse(s).map_err(|e| e.to_string())
}

/// `{"cells": [[c, r], ...]}` or pairs "c,r" separated by spaces or `;`.
fn parse_diagram(s: &str) -> Result<Diagram, String> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: Value = serde_json::from_str(s).map_err(|e| e.to_string())?;
        return Diagram::from_json(&v).map_err(|e| e.to_string());
    }
    let mut d = Diagram::empty();
    for pair in s.split(|c: char| c == ';' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        let pair = pair.trim_matches(|c| c == '(' || c == ')');
        let (c, r) = pair.split_once(',').ok_or(format!("expected c,r, got {pair:?}"))?;
        let c: u32 = c.trim().parse().map_err(|_| format!("bad column {c:?}"))?;
        let r: u32 = r.trim().parse().map_err(|_| format!("bad row {r:?}"))?;
        if c == 0 || r == 0 || r > 64 {
            return Err(format!("cell ({c},{r}) is outside the grid"));
        }
        if !d.insert(Cell::new(c, r)) {
            return Err(format!("duplicate cell ({c},{r})"));
        }
    }
    Ok(d)
}

fn parse_tableau(s: &str) -> Result<ReverseTableau, Error> {
    let rows = s
        .split('/')
        .map(|row| {
            Composition::parse(row.trim()).map(|c| c.parts().to_vec())
        })
        .collect::<Result<Vec<_>, _>>()?;
    ReverseTableau::new(rows)
}

fn comp_json(a: &Composition) -> Value {
    json!(a.parts())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn diagram_set(diagrams: &[Diagram], args: &SetArgs, json: bool) -> String {
    let rows = args.alpha.len() as u32;
    let cols = args.alpha.max_part();
    if args.count {
        return format!("{}\n", diagrams.len());
    }
    if json {
        return pretty(&Value::Array(diagrams.iter().map(|d| d.to_json()).collect()));
    }
    let mut out = String::new();
    for (i, d) in diagrams.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&d.render(rows, cols));
    }
    out
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    let out = match cli.cmd {
        Cmd::Kd(a) => diagram_set(&generate_kd(&a.alpha)?, &a, json),
        Cmd::Akd(a) => diagram_set(&generate_akd(&a.alpha)?, &a, json),
        Cmd::Pkd(a) => diagram_set(&generate_pkd(&a.alpha)?, &a, json),
        Cmd::Threads { diagram, len } => {
            let len = len.unwrap_or(diagram.max_row() as usize);
            let threads = thread_decomposition(&diagram);
            let theta = thread_weight(&diagram, len)?;
            if json {
                pretty(&json!({ "threads": threads, "theta": comp_json(&theta) }))
            } else {
                let mut out = String::new();
                let mut marks = BTreeMap::new();
                for (i, t) in threads.iter().enumerate() {
                    let tag = char::from_digit(i as u32 % 36, 36).expect("radix 36");
                    for &c in &t.cells {
                        marks.insert(c, tag);
                    }
                    let cells: Vec<String> = t.cells.iter().map(|c| c.to_string()).collect();
                    writeln!(out, "{tag}: {}", cells.join(" ")).unwrap();
                }
                out.push_str(&diagram.render_marked(len as u32, 0, &marks));
                writeln!(out, "theta = ({theta})").unwrap();
                out
            }
        }
        Cmd::Label {
            diagram,
            alpha,
            closure,
        } => {
            let labelings = if closure {
                semi_proper_closure(&diagram, &alpha)?
            } else {
                vec![proper_labeling_checked(&diagram, &alpha)?]
            };
            if json {
                pretty(&Value::Array(labelings.iter().map(|l| l.to_json()).collect()))
            } else {
                let rows = alpha.len() as u32;
                labelings
                    .iter()
                    .map(|l| l.render(rows, alpha.max_part()))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
        Cmd::Insert {
            beta,
            k,
            rows,
            diagram,
            trace,
        } => {
            let t = diagram.unwrap_or_else(|| Diagram::composition(&beta));
            let run = iterated_insert(&t, &beta, k, rows.parts())?;
            let n = beta.len() as u32;
            let width = run.betas.iter().map(|b| b.max_part()).max().unwrap_or(0) + 1;
            if json {
                let steps: Vec<Value> = run
                    .steps
                    .iter()
                    .map(|s| {
                        json!({
                            "row": s.inserted_row,
                            "label": comp_json(&s.insertion.alpha),
                            "trace": s.insertion.trace,
                            "diagram": s.insertion.diagram.to_json(),
                            "added_column": s.chain_step.added_column,
                            "extended_row": s.chain_step.extended_row,
                            "beta": comp_json(&s.chain_step.after),
                            "label_after": comp_json(&s.alpha_after),
                        })
                    })
                    .collect();
                pretty(&json!({
                    "steps": steps,
                    "diagram": run.diagram.to_json(),
                    "theta": comp_json(&thread_weight(&run.diagram, beta.len())?),
                }))
            } else {
                let mut out = String::new();
                out.push_str(&t.render(n, width));
                for s in &run.steps {
                    let ins = &s.insertion;
                    writeln!(
                        out,
                        "\ninsert {}: lands at {} -> ({}) via column {}, row {}",
                        s.inserted_row,
                        ins.trace.landing_cell,
                        s.chain_step.after,
                        s.chain_step.added_column,
                        s.chain_step.extended_row
                    )
                    .unwrap();
                    if trace {
                        for st in &ins.trace.steps {
                            let kind = format!("{:?}", st.kind).to_lowercase();
                            write!(out, "  {kind} at {}", st.position).unwrap();
                            if let Some(b) = st.bumped {
                                write!(out, " bumping {b}").unwrap();
                            }
                            if let Some(l) = st.label {
                                write!(out, " label {l}").unwrap();
                            }
                            out.push('\n');
                        }
                        let marks: BTreeMap<Cell, char> = ins
                            .trace
                            .path()
                            .into_iter()
                            .filter(|p| !ins.diagram.contains(*p))
                            .map(|p| (p, '•'))
                            .collect();
                        out.push_str(&ins.diagram.render_marked(n, width, &marks));
                    } else {
                        out.push_str(&ins.diagram.render(n, width));
                    }
                }
                writeln!(out, "theta = ({})", thread_weight(&run.diagram, beta.len())?).unwrap();
                out
            }
        }
        Cmd::Excise { beta, k, diagram } => {
            let (t, r) = excise(&diagram, &beta, k)?;
            if json {
                pretty(&json!({ "diagram": t.to_json(), "row": r }))
            } else {
                format!("row {r}\n{}", t.render(beta.len() as u32, beta.max_part()))
            }
        }
        Cmd::Product {
            beta,
            lambda,
            tableau,
            diagram,
        } => match (tableau, lambda) {
            (Some(tab), _) => {
                let r = parse_tableau(&tab)?;
                let k = r.len() as u32;
                let w = r.to_biword()?;
                let t = diagram.unwrap_or_else(|| Diagram::composition(&beta));
                let run = iterated_insert(&t, &beta, k, &w.bottom())?;
                let atomic = record(&run, &w, k)?;
                let key = atomic_to_key(&atomic);
                if json {
                    pretty(&json!({
                        "diagram": run.diagram.to_json(),
                        "recording": atomic.to_json(),
                        "key": key.as_ref().ok().map(|t| t.to_json()),
                    }))
                } else {
                    let rows = beta.len() as u32;
                    let cols = run.betas.iter().map(|b| b.max_part()).max().unwrap_or(1);
                    let mut out = run.diagram.render(rows, cols);
                    writeln!(out, "atomic recording tableau, shape ({}):", atomic.ambient).unwrap();
                    out.push_str(&atomic.render(rows, cols));
                    match key {
                        Ok(key) => {
                            writeln!(out, "key recording tableau, shape ({}):", key.ambient).unwrap();
                            out.push_str(&key.render(rows, cols));
                        }
                        Err(e) => writeln!(out, "no key image: {e}").unwrap(),
                    }
                    out
                }
            }
            (None, Some(lambda)) => {
                let p = product(&beta, &lambda, beta.len().max(lambda.len()))?;
                if json {
                    pretty(&json!({ "polynomial": p }))
                } else {
                    format!("{p}\n")
                }
            }
            (None, None) => {
                return Err(Error::Invalid("product needs --lambda or --tableau".into()))
            }
        },
        Cmd::Expand {
            beta,
            lambda,
            basis,
            ungrouped,
        } => expand(&beta, &lambda, basis, ungrouped, json)?,
        Cmd::Verify { grid, failures } => {
            let grid: Grid = grid.parse()?;
            let reports = run_grid(&grid)?;
            let summary = GridSummary::from_reports(&reports);
            let ok = summary.all_ok();
            let out = if json {
                let bad: Vec<_> = reports.iter().filter(|r| !r.all_ok()).collect();
                pretty(&json!({ "grid": grid.to_string(), "summary": summary, "failures": bad }))
            } else {
                let mut out = format!("grid {grid}: {} cases\n", summary.cases);
                let v = serde_json::to_value(&summary).expect("serializable");
                for (key, n) in v.as_object().expect("object") {
                    if key != "cases" {
                        writeln!(out, "  {key:<20} {n}").unwrap();
                    }
                }
                if failures {
                    for r in reports.iter().filter(|r| !r.all_ok()) {
                        writeln!(out, "{}", serde_json::to_string(r).expect("serializable")).unwrap();
                    }
                }
                out
            };
            return Ok(if ok { Outcome::Ok(out) } else { Outcome::Mismatch(out) });
        }
        Cmd::Render { alpha, diagram } => {
            let (d, rows) = match (alpha, diagram) {
                (Some(a), None) => (Diagram::composition(&a), a.len() as u32),
                (None, Some(d)) => {
                    let rows = d.max_row();
                    (d, rows)
                }
                _ => return Err(Error::Invalid("give exactly one of --alpha, --diagram".into())),
            };
            if json {
                pretty(&d.to_json())
            } else {
                d.render(rows, 0)
            }
        }
        Cmd::Golden { name, bless } => return golden(&name, bless),
    };
    Ok(Outcome::Ok(out))
}

fn expand(
    beta: &Composition,
    lambda: &Composition,
    basis: Basis,
    ungrouped: bool,
    json: bool,
) -> Result<String, Error> {
    let rows: Vec<(Value, String, Value)> = match basis {
        Basis::Atom => atom_expansion(beta, lambda)?
            .into_iter()
            .map(|(a, n)| (comp_json(&a), format!("A({a})"), json!(n)))
            .collect(),
        Basis::Schubert => schubert_expansion(beta, lambda)?
            .into_iter()
            .map(|t| {
                let gens: Vec<String> = t.ideal.generators.iter().map(|g| format!("({g})")).collect();
                let mut label = format!("K[{}] columns {:?}", gens.join(" "), t.columns);
                if !t.consistent {
                    label.push_str(" (inconsistent counts)");
                }
                let index: Vec<Value> = t.ideal.generators.iter().map(comp_json).collect();
                (json!(index), label, json!(t.coefficient))
            })
            .collect(),
        Basis::Key => signed_key_expansion(beta, lambda, !ungrouped)?
            .coefficients
            .into_iter()
            .map(|(g, c)| {
                let v = c.to_string().parse::<i64>().map_or(json!(c.to_string()), |n| json!(n));
                (comp_json(&g), format!("K({g})"), v)
            })
            .collect(),
    };
    if json {
        let coefficients: Vec<Value> = rows
            .into_iter()
            .map(|(index, _, value)| json!({ "index": index, "value": value }))
            .collect();
        return Ok(pretty(&json!({ "coefficients": coefficients })));
    }
    let mut out = String::new();
    for (_, label, value) in rows {
        writeln!(out, "{value} {label}").unwrap();
    }
    Ok(out)
}

fn golden(name: &str, bless: Option<PathBuf>) -> Result<Outcome, Error> {
    let names: Vec<&str> = if name == "all" {
        figures::NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut out = String::new();
    let mut mismatch = false;
    for n in names {
        let text = figures::render(n)?;
        if let Some(dir) = &bless {
            let path = dir.join(format!("{n}.txt"));
            std::fs::write(&path, &text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {}", path.display()).unwrap();
            continue;
        }
        let want = FIXTURES
            .iter()
            .find(|(f, _)| *f == n)
            .map(|(_, t)| *t)
            .ok_or_else(|| Error::Invalid(format!("no fixture for {n}")))?;
        if text == want {
            writeln!(out, "{n}: ok").unwrap();
        } else {
            mismatch = true;
            writeln!(out, "{n}: MISMATCH").unwrap();
            for (i, (a, b)) in want.lines().zip(text.lines()).enumerate() {
                if a != b {
                    writeln!(out, "  line {}: expected {a:?}, got {b:?}", i + 1).unwrap();
                    break;
                }
            }
            if want.lines().count() != text.lines().count() {
                writeln!(
                    out,
                    "  expected {} lines, got {}",
                    want.lines().count(),
                    text.lines().count()
                )
                .unwrap();
            }
        }
    }
    Ok(if mismatch { Outcome::Mismatch(out) } else { Outcome::Ok(out) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(b) = cli.budget {
        std::env::set_var("KOHNERT_BUDGET", b.to_string());
    }
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(Outcome::Ok(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Mismatch(s)) => {
            print!("{s}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
