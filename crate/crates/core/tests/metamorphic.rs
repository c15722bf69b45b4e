//! Invariants are unchanged by single applications of every move kind.
//! The seeded random sequences run in the acceptance target.

mod common;

use std::collections::BTreeSet;

use common::{random_sequence, single_moves, Context};
use spatial_quandle::diagram::MoveKind;
use spatial_quandle::fixtures;

#[test]
fn every_move_kind_preserves_invariants() {
    let ctx = Context::new();
    let mut seen = BTreeSet::new();
    let mut failures = Vec::new();
    for (name, d) in fixtures::all() {
        let mut sources = vec![d.clone()];
        sources.extend((0..4).map(|s| random_sequence(&d, 77 + s, 3).0));
        for src in &sources {
            let (f, kinds) = single_moves(&ctx, name, src, 6);
            failures.extend(f);
            seen.extend(kinds.into_iter().map(MoveKind::name));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
    let all: BTreeSet<_> = MoveKind::ALL.iter().map(|k| k.name()).collect();
    assert_eq!(seen, all, "some move kinds were never exercised");
}

#[test]
fn sequences_are_reproducible() {
    let d = fixtures::theta_trefoil();
    let (a, la) = random_sequence(&d, 9, 8);
    let (b, lb) = random_sequence(&d, 9, 8);
    assert_eq!(la, lb);
    assert_eq!(a.to_text(), b.to_text());
}
