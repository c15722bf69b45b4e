//! Extended walks on graph tangles and the nonabelian cocycle invariant Ψ.
//!
//! A walk runs in the abstract graph (vertices, endpoints, edges; crossings
//! are transparent). It leaves `b_i` along the edge at that endpoint, crosses
//! whole edges between vertices, and arrives at `b_j` along the edge there.
//! Only whole vertex-to-vertex edges count toward the length.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{FiniteGroup, FiniteQuandle};
use crate::cohomology::{is_cocycle, satisfies_stability, CohomologyError, TwoCocycle};
use crate::coloring::{enumerate_special_colorings, is_special, Coloring, ColoringError};
use crate::diagram::{Diagram, EdgeEnd, PortRef, PortRole, Structure};
use crate::presentation::{fundamental_quandle_presentation_with, QuandlePresentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("diagram is not a tangle")]
    NotATangle,
    #[error("unknown boundary point `{0}`")]
    UnknownEndpoint(String),
    #[error("walk must join two different boundary points")]
    SameEndpoint,
    #[error("coloring is not special: arcs at some vertex differ")]
    NotSpecialColoring,
    #[error("cocycle not admissible: {0}")]
    IncompatibleCocycle(String),
    #[error("relaxed mode requires every vertex to be balanced")]
    RelaxedNeedsBalanced,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// One edge traversal; `forward` when the walk follows the edge's orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

/// The first and last steps are the partial edges at the two boundary points;
/// when both points lie on one edge the walk is that single step.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedWalk {
    pub from: usize,
    pub to: usize,
    pub steps: Vec<Step>,
    /// Graph vertices passed, in order.
    pub vertices: Vec<usize>,
}

impl ExtendedWalk {
    /// Number of whole edges.
    pub fn length(&self) -> usize {
        self.steps.len().saturating_sub(2)
    }

    pub fn whole_edges(&self) -> &[Step] {
        if self.steps.len() <= 2 {
            &[]
        } else {
            &self.steps[1..self.steps.len() - 1]
        }
    }

    pub fn positive_edges(&self) -> usize {
        self.whole_edges().iter().filter(|s| s.forward).count()
    }

    pub fn render(&self, d: &Diagram, s: &Structure) -> String {
        let mut out = d.endpoint_label(self.from).unwrap_or("?").to_string();
        for (i, st) in self.steps.iter().enumerate() {
            let arrow = if st.forward { "->" } else { "<-" };
            out.push_str(&format!(" {arrow}{}", s.edges[st.edge].id));
            if let Some(&v) = self.vertices.get(i) {
                out.push_str(&format!(" {}", d.node(v).id));
            }
        }
        out.push_str(&format!(" {}", d.endpoint_label(self.to).unwrap_or("?")));
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct WalkFilters {
    /// No vertex repeated.
    pub paths: bool,
    /// No edge repeated.
    pub trails: bool,
    pub exact_length: Option<usize>,
    pub positive_edges: Option<usize>,
}

impl WalkFilters {
    fn accepts(&self, w: &ExtendedWalk) -> bool {
        self.exact_length.is_none_or(|l| w.length() == l) && self.positive_edges.is_none_or(|p| w.positive_edges() == p)
    }
}

fn endpoint_index(d: &Diagram, label: &str) -> Result<usize, WalkError> {
    d.endpoint_by_label(label).ok_or_else(|| WalkError::UnknownEndpoint(label.to_string()))
}

fn end_node(e: EdgeEnd) -> Option<usize> {
    match e {
        EdgeEnd::Vertex(p) => Some(p.node),
        EdgeEnd::Endpoint { node } => Some(node),
        EdgeEnd::Closed => None,
    }
}

/// All extended walks from `from` to `to` with at most `max_len` whole edges.
pub fn enumerate_extended_walks(
    d: &Diagram,
    s: &Structure,
    from: &str,
    to: &str,
    max_len: usize,
    filters: WalkFilters,
) -> Result<Vec<ExtendedWalk>, WalkError> {
    if !d.is_tangle() {
        return Err(WalkError::NotATangle);
    }
    let (bi, bj) = (endpoint_index(d, from)?, endpoint_index(d, to)?);
    if bi == bj {
        return Err(WalkError::SameEndpoint);
    }
    // incidence: for each node, (edge, forward, other end)
    let mut inc: Vec<Vec<(usize, bool, usize)>> = vec![Vec::new(); d.nodes().len()];
    for (ei, e) in s.edges.iter().enumerate() {
        let (Some(a), Some(b)) = (end_node(e.start), end_node(e.end)) else { continue };
        inc[a].push((ei, true, b));
        inc[b].push((ei, false, a));
    }
    let mut out = Vec::new();
    for &(edge, forward, first) in &inc[bi] {
        let step = Step { edge, forward };
        if first == bj {
            out.push(ExtendedWalk { from: bi, to: bj, steps: vec![step], vertices: vec![] });
            continue;
        }
        if !d.node(first).is_vertex() {
            continue;
        }
        let mut walk = ExtendedWalk { from: bi, to: bj, steps: vec![step], vertices: vec![first] };
        extend(d, &inc, bj, max_len, &filters, &mut walk, &mut out);
    }
    out.retain(|w| filters.accepts(w));
    out.sort();
    Ok(out)
}

fn extend(
    d: &Diagram,
    inc: &[Vec<(usize, bool, usize)>],
    bj: usize,
    max_len: usize,
    filters: &WalkFilters,
    walk: &mut ExtendedWalk,
    out: &mut Vec<ExtendedWalk>,
) {
    let at = *walk.vertices.last().unwrap();
    let used = |walk: &ExtendedWalk, e: usize| walk.steps.iter().any(|s| s.edge == e);
    for &(edge, forward, next) in &inc[at] {
        if filters.trails && used(walk, edge) {
            continue;
        }
        let step = Step { edge, forward };
        if next == bj {
            let mut done = walk.clone();
            done.steps.push(step);
            out.push(done);
        } else if d.node(next).is_vertex() && walk.steps.len() <= max_len {
            // steps so far: the opening partial edge plus whole edges
            if filters.paths && walk.vertices.contains(&next) {
                continue;
            }
            walk.steps.push(step);
            walk.vertices.push(next);
            extend(d, inc, bj, max_len, filters, walk, out);
            walk.steps.pop();
            walk.vertices.pop();
        }
    }
}

/// `φ(x_κ, y_κ)^{ε(κ)}` with `y_κ` the over color and `x_κ` the under color
/// on the incoming side for a positive crossing, outgoing side for a negative one.
pub fn boltzmann_weight(
    d: &Diagram,
    s: &Structure,
    h: &FiniteGroup,
    phi: &TwoCocycle,
    coloring: &Coloring,
    crossing: usize,
) -> usize {
    let (over, under_in, under_out) = s.crossing_arcs(d, crossing);
    let sign = d.crossing_sign(crossing).expect("crossing");
    let x = if sign > 0 { coloring.0[under_in] } else { coloring.0[under_out] };
    let w = phi.get(x, coloring.0[over]);
    if sign > 0 {
        w
    } else {
        h.inv(w)
    }
}

/// Crossings the walk passes under, in walk order.
pub fn under_crossings(d: &Diagram, s: &Structure, walk: &ExtendedWalk) -> Vec<usize> {
    let mut out = Vec::new();
    for st in &walk.steps {
        let strands = &s.edges[st.edge].strands;
        let mut visit = |p: PortRef| {
            if matches!(d.port_role(p), Some(PortRole::UnderIn)) {
                out.push(p.node);
            }
        };
        if st.forward {
            for &x in strands {
                visit(d.strands()[x].to);
            }
        } else {
            for &x in strands.iter().rev() {
                let tail = d.strands()[x].from;
                if matches!(d.port_role(tail), Some(PortRole::UnderOut)) {
                    out.push(tail.node);
                }
            }
        }
    }
    out
}

/// Product of Boltzmann weights along the walk, left to right.
pub fn psi_walk(
    d: &Diagram,
    s: &Structure,
    p: &QuandlePresentation,
    h: &FiniteGroup,
    phi: &TwoCocycle,
    coloring: &Coloring,
    walk: &ExtendedWalk,
) -> Result<usize, WalkError> {
    if !is_special(p, coloring) {
        return Err(WalkError::NotSpecialColoring);
    }
    Ok(h.product(under_crossings(d, s, walk).into_iter().map(|c| boltzmann_weight(d, s, h, phi, coloring, c))))
}

/// How the cocycle conditions are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GateMode {
    /// Stability, and `h^s = 1` for `s` dividing every vertex balance.
    #[default]
    Strict,
    /// No extra conditions; only for tangles whose vertices are all balanced.
    Relaxed,
}

pub fn check_gate(
    d: &Diagram,
    q: &FiniteQuandle,
    h: &FiniteGroup,
    phi: &TwoCocycle,
    mode: GateMode,
) -> Result<(), WalkError> {
    if !is_cocycle(q, h, phi)? {
        return Err(WalkError::IncompatibleCocycle("not a 2-cocycle".into()));
    }
    match mode {
        GateMode::Strict => {
            if !satisfies_stability(q, phi) {
                return Err(WalkError::IncompatibleCocycle("stability condition fails".into()));
            }
            let (e, g) = (h.exponent() as u64, d.balance_gcd());
            if g % e != 0 {
                return Err(WalkError::IncompatibleCocycle(format!(
                    "group exponent {e} does not divide the vertex balance gcd {g}"
                )));
            }
            Ok(())
        }
        GateMode::Relaxed => {
            if d.balance_gcd() != 0 {
                return Err(WalkError::RelaxedNeedsBalanced);
            }
            Ok(())
        }
    }
}

/// Sorted group element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiMultiset(pub Vec<String>);

impl PsiMultiset {
    fn from_elements(h: &FiniteGroup, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<String> = elems.into_iter().map(|g| h.label(g).to_string()).collect();
        v.sort();
        PsiMultiset(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PsiMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

/// Everything Ψ needs, derived once per diagram.
#[derive(Debug, Clone)]
pub struct PsiSetup<'a> {
    pub diagram: &'a Diagram,
    pub structure: Structure,
    pub presentation: QuandlePresentation,
    pub quandle: &'a FiniteQuandle,
    pub group: &'a FiniteGroup,
    pub cocycle: &'a TwoCocycle,
    pub special: Vec<Coloring>,
}

impl<'a> PsiSetup<'a> {
    pub fn new(
        d: &'a Diagram,
        q: &'a FiniteQuandle,
        h: &'a FiniteGroup,
        phi: &'a TwoCocycle,
        mode: GateMode,
        budget: u64,
    ) -> Result<Self, WalkError> {
        if !d.is_tangle() {
            return Err(WalkError::NotATangle);
        }
        check_gate(d, q, h, phi, mode)?;
        let structure = d.structure();
        let presentation = fundamental_quandle_presentation_with(d, &structure);
        let special = enumerate_special_colorings(&presentation, q, budget)?;
        Ok(PsiSetup { diagram: d, structure, presentation, quandle: q, group: h, cocycle: phi, special })
    }

    /// Arc attached to a boundary point.
    pub fn boundary_arc(&self, label: &str) -> Result<usize, WalkError> {
        let e = endpoint_index(self.diagram, label)?;
        Ok(self.structure.arc_at(self.diagram, PortRef::new(e, 0)))
    }

    /// Special colorings whose arc at `from` has color `q`.
    pub fn colorings_at(&self, from: &str, q: usize) -> Result<Vec<&Coloring>, WalkError> {
        let arc = self.boundary_arc(from)?;
        Ok(self.special.iter().filter(|c| c.0[arc] == q).collect())
    }

    pub fn walks(
        &self,
        from: &str,
        to: &str,
        max_len: usize,
        filters: WalkFilters,
    ) -> Result<Vec<ExtendedWalk>, WalkError> {
        enumerate_extended_walks(self.diagram, &self.structure, from, to, max_len, filters)
    }

    pub fn psi_walk(&self, coloring: &Coloring, walk: &ExtendedWalk) -> Result<usize, WalkError> {
        psi_walk(self.diagram, &self.structure, &self.presentation, self.group, self.cocycle, coloring, walk)
    }

    /// `Ψ_q`: one value per (walk, coloring in `C_q`) pair.
    pub fn psi_q(
        &self,
        q: usize,
        from: &str,
        to: &str,
        max_len: usize,
        filters: WalkFilters,
    ) -> Result<PsiMultiset, WalkError> {
        let walks = self.walks(from, to, max_len, filters)?;
        let colorings = self.colorings_at(from, q)?;
        let mut vals = Vec::with_capacity(walks.len() * colorings.len());
        for w in &walks {
            for c in &colorings {
                vals.push(self.psi_walk(c, w)?);
            }
        }
        Ok(PsiMultiset::from_elements(self.group, vals))
    }

    /// `Ψ`: the family `Ψ_q` indexed by quandle element label.
    pub fn psi_full(
        &self,
        from: &str,
        to: &str,
        max_len: usize,
        filters: WalkFilters,
    ) -> Result<BTreeMap<String, PsiMultiset>, WalkError> {
        (0..self.quandle.size())
            .map(|q| Ok((self.quandle.label(q).to_string(), self.psi_q(q, from, to, max_len, filters)?)))
            .collect()
    }

    /// `Ψ` for every ordered pair of distinct boundary points.
    #[allow(clippy::type_complexity)]
    pub fn psi_all_pairs(
        &self,
        max_len: usize,
        filters: WalkFilters,
    ) -> Result<BTreeMap<(String, String), BTreeMap<String, PsiMultiset>>, WalkError> {
        let labels: Vec<String> =
            self.diagram.endpoints().filter_map(|e| self.diagram.endpoint_label(e).map(str::to_string)).collect();
        let mut out = BTreeMap::new();
        for a in &labels {
            for b in &labels {
                if a != b {
                    out.insert((a.clone(), b.clone()), self.psi_full(a, b, max_len, filters)?);
                }
            }
        }
        Ok(out)
    }
}
