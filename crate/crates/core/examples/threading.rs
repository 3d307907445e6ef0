use kohnert::figures::threading_diagram;
use kohnert::thread::{thread_decomposition, thread_weight};

fn main() -> kohnert::Result<()> {
    let d = threading_diagram();
    print!("{}", d.render(6, 5));
    for t in thread_decomposition(&d) {
        let cells: Vec<String> = t.cells.iter().map(|c| c.to_string()).collect();
        println!("{:?}: {}", t.terminal_row, cells.join(" "));
    }
    println!("theta = ({})", thread_weight(&d, 6)?);
    Ok(())
}
