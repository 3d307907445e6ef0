use kohnert::figures::threading_diagram;
use kohnert::insertion::{excise, insert};
use kohnert::tableau::phi;
use kohnert::thread::thread_weight;
use kohnert::Composition;

fn main() -> kohnert::Result<()> {
    let t = threading_diagram();
    let beta = Composition::parse("0,5,2,0,5,4")?;
    let ins = insert(&t, &beta, 6, 5)?;
    println!("insert 5 restricted by 6 with label ({})", ins.alpha);
    for s in &ins.trace.steps {
        println!("  {:?} at {}", s.kind, s.position);
    }
    print!("{}", ins.diagram.render(6, 6));
    println!("theta = ({})", thread_weight(&ins.diagram, 6)?);

    let (rsk, cell) = phi(&t, &beta)?.rsk_insert(5)?;
    println!("RSK adds {cell}:");
    print!("{}", rsk.render());

    let (back, r) = excise(&ins.diagram, &beta, 6)?;
    println!("excision recovers row {r}: {}", back == t);
    Ok(())
}
