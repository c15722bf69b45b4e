//! Small diagrams bundled with the library, used by tests and the CLI.

use crate::algebra::{FiniteGroup, FiniteQuandle};
use crate::cohomology::{parse_cocycle, TwoCocycle};
use crate::diagram::{parse_diagram, Diagram};

pub const TREFOIL: &str = include_str!("../fixtures/trefoil.sgd");
pub const THETA: &str = include_str!("../fixtures/theta.sgd");
pub const UNKNOT2: &str = include_str!("../fixtures/unknot2.sgd");
pub const BOUQUET2: &str = include_str!("../fixtures/bouquet2.sgd");
pub const THETA_TREFOIL: &str = include_str!("../fixtures/theta_trefoil.sgd");
pub const TRIPOD: &str = include_str!("../fixtures/tripod.sgd");
pub const T9: &str = include_str!("../fixtures/t9.sgd");
/// The S3-valued cocycle on `paper5` in cocycle file format.
pub const PAPER5_S3: &str = include_str!("../fixtures/paper5_s3.phi");

fn load(text: &str) -> Diagram {
    parse_diagram(text).expect("bundled fixture parses").diagram
}

pub fn trefoil() -> Diagram {
    load(TREFOIL)
}

pub fn theta() -> Diagram {
    load(THETA)
}

pub fn unknot2() -> Diagram {
    load(UNKNOT2)
}

pub fn bouquet2() -> Diagram {
    load(BOUQUET2)
}

pub fn theta_trefoil() -> Diagram {
    load(THETA_TREFOIL)
}

pub fn tripod() -> Diagram {
    load(TRIPOD)
}

/// One-vertex tangle whose walk invariant separates it from its mirror.
pub fn t9() -> Diagram {
    load(T9)
}

/// The shipped cocycle with its quandle and group.
pub fn paper5_s3() -> (FiniteQuandle, FiniteGroup, TwoCocycle) {
    let q = FiniteQuandle::paper5();
    let h = FiniteGroup::symmetric(3).expect("S3");
    let phi = parse_cocycle(&q, &h, PAPER5_S3).expect("bundled cocycle parses");
    (q, h, phi)
}

/// Bundled fixture text by name.
pub fn by_name(name: &str) -> Option<&'static str> {
    NAMED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub const NAMED: &[(&str, &str)] = &[
    ("trefoil", TREFOIL),
    ("theta", THETA),
    ("unknot2", UNKNOT2),
    ("bouquet2", BOUQUET2),
    ("theta-trefoil", THETA_TREFOIL),
    ("tripod", TRIPOD),
    ("t9", T9),
];

pub fn all() -> Vec<(&'static str, Diagram)> {
    NAMED.iter().map(|(n, t)| (*n, load(t))).collect()
}
