use kohnert::verify::{check_intersections, run_grid, Grid, GridSummary};

fn main() -> kohnert::Result<()> {
    let grid: Grid = std::env::args().nth(1).unwrap_or("parts=2,len=3,cells=3".into()).parse()?;
    let reports = run_grid(&grid)?;
    let summary = GridSummary::from_reports(&reports);
    println!("{grid}: {summary:?}");
    for r in reports.iter().filter(|r| !r.all_ok()) {
        println!("  beta ({}) lambda ({})", r.beta, r.lambda);
    }
    let s = check_intersections(3, 6);
    println!("intersections: {}/{} families agree", s.agree, s.families);
    Ok(())
}
