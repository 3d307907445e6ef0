use kohnert::chain::KChainStep;
use kohnert::expansions::{atom_expansion, record_census};
use kohnert::figures::{chain_biword, iterated_start, CHAIN_BASE, CHAIN_K, CHAIN_ROWS};
use kohnert::insertion::iterated_insert;
use kohnert::skew::{atomic_to_key, key_cells, record, skew_shape};
use kohnert::thread::thread_weight;
use kohnert::{Cell, Composition};

fn c(v: &[u32]) -> Composition {
    Composition::from(v)
}

fn cells(v: &[(u32, u32)]) -> Vec<Cell> {
    v.iter().map(|&(col, row)| Cell::new(col, row)).collect()
}

fn chain() -> Vec<KChainStep> {
    let run = iterated_insert(&iterated_start(), &c(&CHAIN_BASE), CHAIN_K, &CHAIN_ROWS).unwrap();
    run.steps.into_iter().map(|s| s.chain_step).collect()
}

#[test]
fn chain_columns_and_rows() {
    let ch = chain();
    let cols: Vec<u32> = ch.iter().map(|s| s.added_column).collect();
    let rows: Vec<u32> = ch.iter().map(|s| s.extended_row).collect();
    assert_eq!(cols, [2, 3, 5, 2, 4]);
    assert_eq!(rows, [4, 4, 4, 1, 3]);
    assert_eq!(ch.last().unwrap().after, c(&[2, 0, 4, 5, 0, 3]));
}

#[test]
fn skew_cells_of_the_chain() {
    let ch = chain();
    let beta = c(&CHAIN_BASE);
    assert_eq!(
        skew_shape(&c(&[4, 0, 5, 3, 0, 2]), &beta, &ch).unwrap(),
        cells(&[(2, 4), (3, 3), (5, 3), (2, 1), (4, 1)])
    );
    assert_eq!(key_cells(&ch), cells(&[(2, 4), (3, 4), (5, 4), (2, 1), (4, 3)]));
}

#[test]
fn recording_tableau_is_lattice_atomic() {
    let run = iterated_insert(&iterated_start(), &c(&CHAIN_BASE), CHAIN_K, &CHAIN_ROWS).unwrap();
    assert_eq!(thread_weight(&run.diagram, 6).unwrap(), c(&[4, 0, 5, 3, 0, 2]));
    let rec = record(&run, &chain_biword(), CHAIN_K).unwrap();
    assert!(rec.is_atomic() && rec.is_lattice());
    assert_eq!(rec.weight(), c(&[0, 0, 2, 3]));
    let key = atomic_to_key(&rec).unwrap();
    assert!(key.is_key() && key.is_lattice());
}

#[test]
fn literal_atomic_conditions_miss_a_coefficient() {
    let (beta, lambda) = (c(&[0, 1]), c(&[1, 1]));
    assert_eq!(atom_expansion(&beta, &lambda).unwrap().get(&c(&[2, 1])), Some(&1));
    let census = record_census(&beta, &lambda).unwrap();
    let recorded = &census.records[&c(&[2, 1])];
    assert_eq!(recorded.len(), 1);
    let t = recorded.iter().next().unwrap();
    assert!(!(t.is_atomic() && t.is_lattice()));
}
