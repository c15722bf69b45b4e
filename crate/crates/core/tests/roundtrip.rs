mod common;

use proptest::prelude::*;
use spatial_quandle::diagram::{parse_diagram, Diagram};
use spatial_quandle::fixtures;

fn reparse(d: &Diagram) -> Diagram {
    parse_diagram(&d.to_text()).unwrap().diagram
}

#[test]
fn fixtures_round_trip() {
    for (name, d) in fixtures::all() {
        let e = reparse(&d);
        assert!(d.is_isomorphic(&e), "{name}");
        assert_eq!(d.canonical_code(), e.canonical_code(), "{name}");
        // serialization is a fixed point after one pass
        assert_eq!(e.to_text(), reparse(&e).to_text(), "{name}");
    }
}

#[test]
fn mirror_is_an_involution() {
    for (name, d) in fixtures::all() {
        assert!(d.mirror().mirror().is_isomorphic(&d), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn moved_diagrams_round_trip(fixture in 0usize..7, seed in any::<u64>()) {
        let (name, d) = fixtures::all().swap_remove(fixture);
        let (e, log) = common::random_sequence(&d, seed, 4);
        prop_assert!(e.is_isomorphic(&reparse(&e)), "{}: {:?}", name, log);
    }
}
