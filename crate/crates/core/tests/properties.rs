use proptest::prelude::*;
use proptest::sample::Index;

use kohnert::composition::leq;
use kohnert::insertion::{excise, insert, iterated_insert};
use kohnert::kohnert::generate_kd;
use kohnert::labeling::kd_membership;
use kohnert::tableau::phi;
use kohnert::thread::thread_weight;
use kohnert::Composition;

fn composition(max_len: usize, max_part: u32) -> impl Strategy<Value = Composition> {
    prop::collection::vec(0..=max_part, 1..=max_len)
        .prop_filter("at most 7 cells", |v| v.iter().sum::<u32>() <= 7)
        .prop_map(Composition::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_round_trip(a in composition(6, 9)) {
        prop_assert_eq!(Composition::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn kohnert_diagrams_are_members(a in composition(5, 3), i in any::<Index>()) {
        let kd = generate_kd(&a).unwrap();
        let t = i.get(&kd);
        prop_assert!(kd_membership(t, &a));
        prop_assert!(leq(&thread_weight(t, a.len()).unwrap(), &a));
    }

    #[test]
    fn excise_inverts_insert(a in composition(5, 3), i in any::<Index>(), k in 1u32..=5, r in 1u32..=5) {
        let r = r.min(k).min(a.len() as u32);
        let t = i.get(&generate_kd(&a).unwrap()).clone();
        let u = insert(&t, &a, k, r).unwrap().diagram;
        prop_assert_eq!(excise(&u, &a, k).unwrap(), (t, r));
    }

    #[test]
    fn insertion_lifts_to_rsk(a in composition(5, 3), i in any::<Index>(), r in 1u32..=5) {
        let k = a.len() as u32;
        let r = r.min(k);
        let t = i.get(&generate_kd(&a).unwrap()).clone();
        let run = iterated_insert(&t, &a, k, &[r]).unwrap();
        let (want, _) = phi(&t, &a).unwrap().rsk_insert(r).unwrap();
        prop_assert_eq!(phi(&run.diagram, &run.betas[1]).unwrap(), want);
    }

    #[test]
    fn insertion_adds_one_cell(a in composition(5, 3), i in any::<Index>(), rows in prop::collection::vec(1u32..=5, 0..4)) {
        let k = a.len() as u32;
        let rows: Vec<u32> = rows.into_iter().map(|r| r.min(k)).collect();
        let t = i.get(&generate_kd(&a).unwrap()).clone();
        let run = iterated_insert(&t, &a, k, &rows).unwrap();
        prop_assert_eq!(run.diagram.len(), t.len() + rows.len());
        let last = run.betas.last().unwrap();
        prop_assert!(kd_membership(&run.diagram, last));
    }
}
