use kohnert::expansions::demazure_char;
use kohnert::kohnert::{generate_akd, generate_kd, generate_pkd};
use kohnert::tableau::phi;
use kohnert::Composition;

fn main() -> kohnert::Result<()> {
    let alpha = Composition::parse("0,2,1")?;
    let kd = generate_kd(&alpha)?;
    println!("KD({alpha}) has {} diagrams", kd.len());
    for d in &kd {
        println!("weight ({})", d.weight(alpha.len())?);
        print!("{}", d.render(3, 2));
        print!("{}", phi(d, &alpha)?.render());
    }
    println!("kappa = {}", demazure_char(&alpha, 3)?);
    println!("|AKD| = {}, |PKD| = {}", generate_akd(&alpha)?.len(), generate_pkd(&alpha)?.len());
    Ok(())
}
