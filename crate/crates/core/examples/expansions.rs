use kohnert::expansions::{
    atom_expansion, atom_sum, product, schubert_expansion, schubert_sum, signed_key_expansion,
};
use kohnert::Composition;

fn main() -> kohnert::Result<()> {
    let beta = Composition::parse("1,0,2")?;
    let lambda = Composition::parse("1,1")?;
    let m = beta.len();
    let target = product(&beta, &lambda, m)?;
    println!("kappa({beta}) s({lambda}) = {target}");

    let atoms = atom_expansion(&beta, &lambda)?;
    for (a, n) in &atoms {
        println!("  {n} A({a})");
    }
    println!("atoms agree: {}", atom_sum(&atoms, m)? == target);

    let terms = schubert_expansion(&beta, &lambda)?;
    println!("{} Schubert characters, agree: {}", terms.len(), schubert_sum(&terms, m)? == target);

    let signed = signed_key_expansion(&beta, &lambda, true)?;
    for (g, n) in &signed.coefficients {
        println!("  {n} K({g})");
    }
    println!(
        "keys agree: {}, nonnegative: {}, cancellations: {}",
        signed.sum(m)? == target,
        signed.is_nonnegative(),
        signed.cancellations.len()
    );
    Ok(())
}
