use kohnert::figures::{threading_diagram, FIG5_SHAPE};
use kohnert::labeling::{proper_labeling, semi_proper_closure};
use kohnert::Composition;

fn main() -> kohnert::Result<()> {
    let d = threading_diagram();
    let alpha = Composition::parse("0,2,5,0,5,4")?;
    let l = proper_labeling(&d, &alpha)?;
    println!("proper labeling for ({alpha}), flagged: {}", l.is_flagged());
    print!("{}", l.render(6, 5));

    let top = Composition::from(&FIG5_SHAPE[..]);
    let closure = semi_proper_closure(&d, &top)?;
    let proper: Vec<_> = closure.iter().filter(|l| l.is_proper()).collect();
    println!("\n{} pinned semi-proper labelings from ({top}), {} proper", closure.len(), proper.len());
    for l in proper {
        if let Some(shape) = l.recomputed_shape() {
            println!("({shape})");
        }
    }
    Ok(())
}
