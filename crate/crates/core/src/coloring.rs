//! Quandle colorings of diagrams and vertex-uniform special colorings.
//!
//! Enumeration is a backtracking search over arcs. Crossing relations
//! propagate in both directions along the under-strand as soon as the over
//! color and one side are known; a vertex word is checked against every
//! colored arc once all its letters are colored.

use std::fmt;

use thiserror::Error;

use crate::algebra::FiniteQuandle;
use crate::presentation::QuandlePresentation;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {got} colors for {expected} arcs")]
    MissingArc { expected: usize, got: usize },
    #[error("color {0} is not an element of the quandle")]
    BadColor(usize),
    #[error("search exceeded the budget of {0} branch nodes")]
    BudgetExceeded(u64),
}

/// Element index per arc, in generator order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring(pub Vec<usize>);

impl Coloring {
    pub fn render(&self, p: &QuandlePresentation, q: &FiniteQuandle) -> String {
        p.generators.iter().zip(&self.0).map(|(g, &c)| format!("{g}={}", q.label(c))).collect::<Vec<_>>().join(" ")
    }
}

fn check_shape(p: &QuandlePresentation, q: &FiniteQuandle, c: &Coloring) -> Result<(), ColoringError> {
    if c.0.len() != p.generators.len() {
        return Err(ColoringError::MissingArc { expected: p.generators.len(), got: c.0.len() });
    }
    match c.0.iter().find(|&&x| x >= q.size()) {
        Some(&x) => Err(ColoringError::BadColor(x)),
        None => Ok(()),
    }
}

/// Crossing rule at every crossing, and every vertex word fixes every arc color.
pub fn is_coloring(p: &QuandlePresentation, q: &FiniteQuandle, c: &Coloring) -> Result<bool, ColoringError> {
    check_shape(p, q, c)?;
    let crossings_ok = p.crossings.iter().all(|r| q.op_signed(c.0[r.input], c.0[r.operator], r.sign) == c.0[r.output]);
    let vertices_ok = p.vertices.iter().all(|v| {
        c.0.iter().all(|&x| v.word.0.iter().fold(x, |acc, l| q.op_signed(acc, c.0[l.generator], l.sign)) == x)
    });
    Ok(crossings_ok && vertices_ok)
}

/// All arcs meeting a common vertex share one color.
pub fn is_special(p: &QuandlePresentation, c: &Coloring) -> bool {
    p.vertices.iter().all(|v| {
        let mut colors = v.word.0.iter().map(|l| c.0[l.generator]);
        match colors.next() {
            Some(first) => colors.all(|x| x == first),
            None => true,
        }
    })
}

/// Backtracking state. Variables are classes of arcs forced to share a color
/// (singletons for ordinary colorings).
struct Search<'a> {
    p: &'a QuandlePresentation,
    q: &'a FiniteQuandle,
    class_of: Vec<usize>,
    classes: usize,
    budget: u64,
    nodes: u64,
}

impl Search<'_> {
    fn color(&self, assign: &[Option<usize>], arc: usize) -> Option<usize> {
        assign[self.class_of[arc]]
    }

    /// Fills in everything the crossing relations force; false on conflict.
    fn propagate(&self, assign: &mut [Option<usize>], trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for r in &self.p.crossings {
                let (i, k, o) =
                    (self.color(assign, r.input), self.color(assign, r.operator), self.color(assign, r.output));
                let Some(k) = k else { continue };
                match (i, o) {
                    (Some(i), Some(o)) => {
                        if self.q.op_signed(i, k, r.sign) != o {
                            return false;
                        }
                    }
                    (Some(i), None) => {
                        let cl = self.class_of[r.output];
                        assign[cl] = Some(self.q.op_signed(i, k, r.sign));
                        trail.push(cl);
                        changed = true;
                    }
                    (None, Some(o)) => {
                        let cl = self.class_of[r.input];
                        assign[cl] = Some(self.q.op_signed(o, k, -r.sign));
                        trail.push(cl);
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Vertex words with all letters colored must fix every colored arc.
    fn vertices_ok(&self, assign: &[Option<usize>]) -> bool {
        let n = self.q.size();
        for v in &self.p.vertices {
            let letters: Option<Vec<(usize, i8)>> =
                v.word.0.iter().map(|l| self.color(assign, l.generator).map(|c| (c, l.sign))).collect();
            let Some(letters) = letters else { continue };
            let mut fixed = vec![true; n];
            for (x, slot) in fixed.iter_mut().enumerate() {
                *slot = letters.iter().fold(x, |acc, &(b, s)| self.q.op_signed(acc, b, s)) == x;
            }
            if (0..self.p.generators.len()).any(|a| self.color(assign, a).is_some_and(|c| !fixed[c])) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, out: &mut Vec<Coloring>) -> Result<(), ColoringError> {
        let mut assign = vec![None; self.classes];
        let mut trail = Vec::new();
        if !self.propagate(&mut assign, &mut trail) {
            return Ok(());
        }
        self.dfs(&mut assign, out)
    }

    fn dfs(&mut self, assign: &mut Vec<Option<usize>>, out: &mut Vec<Coloring>) -> Result<(), ColoringError> {
        // prefer over-arcs: assigning them unlocks propagation
        let next = self
            .p
            .crossings
            .iter()
            .map(|r| self.class_of[r.operator])
            .find(|&c| assign[c].is_none())
            .or_else(|| assign.iter().position(Option::is_none));
        let Some(var) = next else {
            if self.vertices_ok(assign) {
                out.push(Coloring((0..self.p.generators.len()).map(|a| self.color(assign, a).unwrap()).collect()));
            }
            return Ok(());
        };
        for value in 0..self.q.size() {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ColoringError::BudgetExceeded(self.budget));
            }
            let mut trail = vec![var];
            assign[var] = Some(value);
            if self.propagate(assign, &mut trail) && self.vertices_ok(assign) {
                self.dfs(assign, out)?;
            }
            for cl in trail {
                assign[cl] = None;
            }
        }
        Ok(())
    }
}

fn search(
    p: &QuandlePresentation,
    q: &FiniteQuandle,
    class_of: Vec<usize>,
    budget: u64,
) -> Result<Vec<Coloring>, ColoringError> {
    let classes = class_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut s = Search { p, q, class_of, classes, budget, nodes: 0 };
    let mut out = Vec::new();
    s.run(&mut out)?;
    out.sort();
    Ok(out)
}

pub fn enumerate_colorings(
    p: &QuandlePresentation,
    q: &FiniteQuandle,
    budget: u64,
) -> Result<Vec<Coloring>, ColoringError> {
    search(p, q, (0..p.generators.len()).collect(), budget)
}

/// Arc classes that a special coloring must color uniformly.
pub fn vertex_classes(p: &QuandlePresentation) -> Vec<usize> {
    let n = p.generators.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for v in &p.vertices {
        for w in v.word.0.windows(2) {
            let (a, b) = (find(&mut parent, w[0].generator), find(&mut parent, w[1].generator));
            parent[a] = b;
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|a| {
            let r = find(&mut parent, a);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect()
}

/// Colorings in which all arcs at a vertex share one color. At a vertex of
/// color `a` and balance `m` the word acts as `(*a)^m`, so the vertex check
/// becomes the exact fixing condition.
pub fn enumerate_special_colorings(
    p: &QuandlePresentation,
    q: &FiniteQuandle,
    budget: u64,
) -> Result<Vec<Coloring>, ColoringError> {
    search(p, q, vertex_classes(p), budget)
}

/// The sufficient condition under which special colorings are invariant:
/// the quandle is a k-quandle with k dividing every vertex balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpecialReport {
    pub k_order: usize,
    pub balance_gcd: u64,
    pub k_divides_balances: bool,
}

pub fn special_report(q: &FiniteQuandle, balance_gcd: u64) -> SpecialReport {
    let k = q.k_order();
    SpecialReport { k_order: k, balance_gcd, k_divides_balances: balance_gcd.is_multiple_of(k as u64) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringCounts {
    pub total: usize,
    pub trivial: usize,
    pub nontrivial: usize,
    pub special: usize,
}

impl fmt::Display for ColoringCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "total={} trivial={} nontrivial={} special={}",
            self.total, self.trivial, self.nontrivial, self.special
        )
    }
}

pub fn coloring_counts(
    p: &QuandlePresentation,
    q: &FiniteQuandle,
    budget: u64,
) -> Result<ColoringCounts, ColoringError> {
    let total = enumerate_colorings(p, q, budget)?.len();
    let special = enumerate_special_colorings(p, q, budget)?.len();
    let trivial = q.size();
    Ok(ColoringCounts { total, trivial, nontrivial: total - trivial, special })
}
