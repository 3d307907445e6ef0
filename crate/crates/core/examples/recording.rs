use kohnert::figures::{chain_biword, iterated_start, CHAIN_BASE, CHAIN_K};
use kohnert::insertion::iterated_insert;
use kohnert::skew::{atomic_to_key, record};
use kohnert::Composition;

fn main() -> kohnert::Result<()> {
    let beta = Composition::from(&CHAIN_BASE[..]);
    let w = chain_biword();
    let run = iterated_insert(&iterated_start(), &beta, CHAIN_K, &w.bottom())?;
    for s in &run.steps {
        println!(
            "insert {}: column {}, row {} -> ({})",
            s.inserted_row, s.chain_step.added_column, s.chain_step.extended_row, s.chain_step.after
        );
    }
    let atomic = record(&run, &w, CHAIN_K)?;
    println!("atomic recording tableau in D({}):", atomic.ambient);
    print!("{}", atomic.render(6, 5));
    println!("atomic {} lattice {}", atomic.is_atomic(), atomic.is_lattice());
    let key = atomic_to_key(&atomic)?;
    println!("key recording tableau in D({}):", key.ambient);
    print!("{}", key.render(6, 5));
    Ok(())
}
