//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spatial_quandle::algebra::{FiniteGroup, FiniteQuandle};
use spatial_quandle::cohomology::TwoCocycle;
use spatial_quandle::coloring::{enumerate_colorings, enumerate_special_colorings, DEFAULT_BUDGET};
use spatial_quandle::diagram::{Diagram, MoveKind, PortRef, StrandEnd};
use spatial_quandle::fixtures;
use spatial_quandle::presentation::fundamental_quandle_presentation;
use spatial_quandle::walks::{GateMode, PsiSetup, WalkFilters};

pub fn r3() -> FiniteQuandle {
    FiniteQuandle::dihedral(3).unwrap()
}

pub fn s4() -> FiniteQuandle {
    FiniteQuandle::alexander(2, &[1, 1, 1]).unwrap()
}

/// Arcs recomputed from raw ports: strands joined through over-passes.
/// Returns (arc of each strand, arc count including free loops).
pub fn naive_arcs(d: &Diagram) -> (Vec<usize>, usize) {
    let n = d.strands().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for c in d.crossings() {
        let oi = d.over_in(c);
        let (a, _) = d.at(PortRef::new(c, oi));
        let (b, _) = d.at(PortRef::new(c, 4 - oi));
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut ids = BTreeMap::new();
    let arc: Vec<usize> = (0..n)
        .map(|s| {
            let r = find(&mut parent, s);
            let next = ids.len();
            *ids.entry(r).or_insert(next)
        })
        .collect();
    let count = ids.len() + d.free_loops().len();
    (arc, count)
}

fn op(q: &FiniteQuandle, a: usize, b: usize, sign: i8) -> usize {
    if sign > 0 {
        q.op(a, b)
    } else {
        (0..q.size()).find(|&x| q.op(x, b) == a).unwrap()
    }
}

/// Exhaustive enumeration of all color assignments; `None` when too large.
/// Returns (colorings, special colorings).
pub fn naive_counts(d: &Diagram, q: &FiniteQuandle, limit: u64) -> Option<(u64, u64)> {
    let (arc, arcs) = naive_arcs(d);
    let n = q.size() as u64;
    let total = n.checked_pow(arcs as u32)?;
    if total > limit {
        return None;
    }
    let arc_at = |p: PortRef| arc[d.at(p).0];
    let crossings: Vec<(usize, usize, usize, i8)> = d
        .crossings()
        .map(|c| {
            let sign = if d.over_in(c) == 3 { 1 } else { -1 };
            (arc_at(PortRef::new(c, 0)), arc_at(PortRef::new(c, d.over_in(c))), arc_at(PortRef::new(c, 2)), sign)
        })
        .collect();
    let words: Vec<Vec<(usize, i8)>> = d
        .vertices()
        .map(|v| {
            let k = d.node(v).degree();
            (0..k)
                .map(|i| {
                    let p = PortRef::new(v, (k - i) % k);
                    let (s, end) = d.at(p);
                    (arc[s], if end == StrandEnd::Head { 1 } else { -1 })
                })
                .collect()
        })
        .collect();
    let (mut all, mut special) = (0, 0);
    let mut c = vec![0usize; arcs];
    for code in 0..total {
        let mut x = code;
        for slot in c.iter_mut() {
            *slot = (x % n) as usize;
            x /= n;
        }
        if crossings.iter().any(|&(i, o, out, s)| op(q, c[i], c[o], s) != c[out]) {
            continue;
        }
        let fixes = words.iter().all(|w| c.iter().all(|&a| w.iter().fold(a, |acc, &(b, s)| op(q, acc, c[b], s)) == a));
        if !fixes {
            continue;
        }
        all += 1;
        if words.iter().all(|w| w.iter().all(|&(b, _)| c[b] == c[w[0].0])) {
            special += 1;
        }
    }
    Some((all, special))
}

/// Ψ multisets keyed by boundary pair, then by boundary color.
pub type PsiTable = BTreeMap<(String, String), BTreeMap<String, Vec<String>>>;

/// Everything the metamorphic suite compares, as one comparable value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub counts: Vec<(usize, usize)>,
    pub psi: Option<PsiTable>,
}

pub struct Context {
    pub quandles: Vec<FiniteQuandle>,
    pub cocycle: (FiniteQuandle, FiniteGroup, TwoCocycle),
}

impl Context {
    pub fn new() -> Self {
        Context { quandles: vec![r3(), s4(), FiniteQuandle::paper5()], cocycle: fixtures::paper5_s3() }
    }

    pub fn fingerprint(&self, d: &Diagram) -> Fingerprint {
        let p = fundamental_quandle_presentation(d);
        let counts = self
            .quandles
            .iter()
            .map(|q| {
                (
                    enumerate_colorings(&p, q, DEFAULT_BUDGET).unwrap().len(),
                    enumerate_special_colorings(&p, q, DEFAULT_BUDGET).unwrap().len(),
                )
            })
            .collect();
        let (q, h, phi) = &self.cocycle;
        let psi = if d.is_tangle() {
            PsiSetup::new(d, q, h, phi, GateMode::Strict, DEFAULT_BUDGET).ok().map(|s| {
                s.psi_all_pairs(1, WalkFilters::default())
                    .unwrap()
                    .into_iter()
                    .map(|(k, m)| (k, m.into_iter().map(|(q, v)| (q, v.0)).collect()))
                    .collect()
            })
        } else {
            None
        };
        Fingerprint { counts, psi }
    }
}

/// One seeded sequence of at most `max_steps` random moves; returns the moves applied.
pub fn random_sequence(d: &Diagram, seed: u64, max_steps: usize) -> (Diagram, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = rng.gen_range(1..=max_steps);
    let mut d = d.clone();
    let mut log = Vec::new();
    for _ in 0..steps {
        // a random kind among those with sites, probing kinds in shuffled order
        let mut kinds = MoveKind::ALL.to_vec();
        kinds.shuffle(&mut rng);
        let Some(sites) = kinds.iter().map(|&k| d.find_move_sites(k)).find(|s| !s.is_empty()) else {
            break;
        };
        let site = &sites[rng.gen_range(0..sites.len())];
        log.push(site.describe(&d));
        d = d.apply_move(site).unwrap();
    }
    (d, log)
}

pub const SEQUENCES: u64 = 50;
pub const MAX_STEPS: usize = 8;

/// Runs the seeded sequences for one fixture; seeds are `1000 * index + i`. Returns failures.
pub fn metamorphic_fixture(ctx: &Context, index: u64, name: &str, d: &Diagram) -> Vec<String> {
    let base = ctx.fingerprint(d);
    let mut failures = Vec::new();
    for i in 0..SEQUENCES {
        let (e, log) = random_sequence(d, 1000 * index + i, MAX_STEPS);
        if ctx.fingerprint(&e) != base {
            failures.push(format!("{name} seed {i}: {}", log.join("; ")));
        }
    }
    failures
}

/// Every site of every kind applied once to the fixture; returns failures and kinds exercised.
pub fn single_moves(ctx: &Context, name: &str, d: &Diagram, per_kind: usize) -> (Vec<String>, Vec<MoveKind>) {
    let base = ctx.fingerprint(d);
    let mut failures = Vec::new();
    let mut kinds = Vec::new();
    for k in MoveKind::ALL {
        let sites = d.find_move_sites(k);
        if !sites.is_empty() {
            kinds.push(k);
        }
        for s in sites.iter().take(per_kind) {
            let e = d.apply_move(s).unwrap();
            if ctx.fingerprint(&e) != base {
                failures.push(format!("{name}: {}", s.describe(d)));
            }
        }
    }
    (failures, kinds)
}
