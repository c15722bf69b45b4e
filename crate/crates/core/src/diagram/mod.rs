//! Spatial graph and graph tangle diagrams as oriented combinatorial maps.
//!
//! Every node lists its ports counterclockwise. A crossing has four ports:
//! the under-strand enters at port 0 and leaves at port 2, the over-strand
//! enters at `over_in` (1 or 3) and leaves at the opposite port. With the
//! under-strand pointing "up" from port 0 to port 2, `over_in = 3` means the
//! over-strand runs left to right, which is a positive crossing.

mod canon;
mod draft;
mod moves;
mod parse;
mod structure;

use std::collections::HashSet;

use num_integer::Integer;
use thiserror::Error;

pub use moves::{MoveKind, MoveSite};
pub use parse::{parse_diagram, ParseOutput};
pub use structure::{Arc, Attachment, Edge, EdgeEnd, Face, Structure};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("port {port} out of range for node `{node}`")]
    PortOutOfRange { node: String, port: usize },
    #[error("port {node}.{port} used by more than one strand end")]
    PortReuse { node: String, port: usize },
    #[error("port {node}.{port} is not attached to any strand")]
    DanglingPort { node: String, port: usize },
    #[error("crossing `{0}` has strands pointing the wrong way")]
    BadCrossingOrientation(String),
    #[error("endpoint `{0}` in a diagram not declared as a tangle")]
    EndpointInClosedDiagram(String),
    #[error("node `{0}` is not a vertex")]
    NotAVertex(String),
    #[error("node `{0}` is not a crossing")]
    NotACrossing(String),
    #[error("move site does not belong to this diagram")]
    InvalidSite,
    #[error("move is not applicable at this site")]
    NotApplicable,
}

/// Non-fatal findings from validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramWarning {
    /// Euler characteristic differs from `2 * components`.
    NonPlanarMap { euler: i64, components: usize },
    /// The tangle's endpoints do not all lie on one face.
    ScatteredEndpoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Crossing { over_in: u8 },
    Vertex { ports: usize },
    Endpoint { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
}

impl Node {
    pub fn degree(&self) -> usize {
        match self.kind {
            NodeKind::Crossing { .. } => 4,
            NodeKind::Vertex { ports } => ports,
            NodeKind::Endpoint { .. } => 1,
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self.kind, NodeKind::Crossing { .. })
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self.kind, NodeKind::Vertex { .. })
    }

    pub fn is_endpoint(&self) -> bool {
        matches!(self.kind, NodeKind::Endpoint { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PortRef {
    pub node: usize,
    pub port: usize,
}

impl PortRef {
    pub fn new(node: usize, port: usize) -> Self {
        PortRef { node, port }
    }
}

/// A directed connection between two ports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Strand {
    pub id: String,
    pub from: PortRef,
    pub to: PortRef,
}

/// Which end of a strand sits at a port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrandEnd {
    Tail,
    Head,
}

/// Under/over role of a crossing port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortRole {
    UnderIn,
    UnderOut,
    OverIn,
    OverOut,
}

/// A validated diagram.
#[derive(Debug, Clone)]
pub struct Diagram {
    nodes: Vec<Node>,
    strands: Vec<Strand>,
    /// Unknotted closed components carrying no nodes.
    free_loops: Vec<String>,
    is_tangle: bool,
    /// `attached[node][port] = (strand, end)`
    attached: Vec<Vec<(usize, StrandEnd)>>,
}

impl Diagram {
    /// Validates the raw parts; planarity problems are returned as warnings.
    pub fn new(
        nodes: Vec<Node>,
        strands: Vec<Strand>,
        free_loops: Vec<String>,
        is_tangle: bool,
    ) -> Result<(Diagram, Vec<DiagramWarning>), DiagramError> {
        let mut ids = HashSet::new();
        for id in nodes.iter().map(|n| &n.id).chain(strands.iter().map(|s| &s.id)).chain(free_loops.iter()) {
            if !ids.insert(id.as_str()) {
                return Err(DiagramError::DuplicateId(id.clone()));
            }
        }
        let mut attached: Vec<Vec<Option<(usize, StrandEnd)>>> = nodes.iter().map(|n| vec![None; n.degree()]).collect();
        for (si, s) in strands.iter().enumerate() {
            for (p, end) in [(s.from, StrandEnd::Tail), (s.to, StrandEnd::Head)] {
                let node = nodes.get(p.node).ok_or_else(|| DiagramError::UnknownNode(p.node.to_string()))?;
                let slot = attached[p.node]
                    .get_mut(p.port)
                    .ok_or_else(|| DiagramError::PortOutOfRange { node: node.id.clone(), port: p.port })?;
                if slot.is_some() {
                    return Err(DiagramError::PortReuse { node: node.id.clone(), port: p.port });
                }
                *slot = Some((si, end));
            }
        }
        let mut full = Vec::with_capacity(nodes.len());
        for (ni, ports) in attached.into_iter().enumerate() {
            let mut row = Vec::with_capacity(ports.len());
            for (p, a) in ports.into_iter().enumerate() {
                row.push(a.ok_or_else(|| DiagramError::DanglingPort { node: nodes[ni].id.clone(), port: p })?);
            }
            full.push(row);
        }
        for (ni, node) in nodes.iter().enumerate() {
            match &node.kind {
                NodeKind::Crossing { over_in } => {
                    if *over_in != 1 && *over_in != 3 {
                        return Err(DiagramError::BadCrossingOrientation(node.id.clone()));
                    }
                    let over_out = 4 - *over_in as usize;
                    let expect = [
                        (0, StrandEnd::Head),
                        (2, StrandEnd::Tail),
                        (*over_in as usize, StrandEnd::Head),
                        (over_out, StrandEnd::Tail),
                    ];
                    if expect.iter().any(|&(p, e)| full[ni][p].1 != e) {
                        return Err(DiagramError::BadCrossingOrientation(node.id.clone()));
                    }
                }
                NodeKind::Endpoint { .. } if !is_tangle => {
                    return Err(DiagramError::EndpointInClosedDiagram(node.id.clone()));
                }
                NodeKind::Vertex { ports } if *ports == 0 => {
                    return Err(DiagramError::PortOutOfRange { node: node.id.clone(), port: 0 });
                }
                _ => {}
            }
        }
        let d = Diagram { nodes, strands, free_loops, is_tangle, attached: full };
        let mut warnings = Vec::new();
        let (euler, components) = (d.euler_characteristic(), d.map_components());
        if euler != 2 * components as i64 {
            warnings.push(DiagramWarning::NonPlanarMap { euler, components });
        }
        if d.is_tangle && d.boundary_order().is_none() {
            warnings.push(DiagramWarning::ScatteredEndpoints);
        }
        Ok((d, warnings))
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn free_loops(&self) -> &[String] {
        &self.free_loops
    }

    pub fn is_tangle(&self) -> bool {
        self.is_tangle
    }

    pub fn node(&self, i: usize) -> &Node {
        &self.nodes[i]
    }

    pub fn node_index(&self, id: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n.id == id)
    }

    pub fn strand_index(&self, id: &str) -> Option<usize> {
        self.strands.iter().position(|s| s.id == id)
    }

    /// The strand at a port and which of its ends sits there.
    pub fn at(&self, p: PortRef) -> (usize, StrandEnd) {
        self.attached[p.node][p.port]
    }

    /// The port at the other end of the strand leaving through `p`.
    pub fn twin(&self, p: PortRef) -> PortRef {
        let (s, end) = self.at(p);
        match end {
            StrandEnd::Tail => self.strands[s].to,
            StrandEnd::Head => self.strands[s].from,
        }
    }

    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_crossing())
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_vertex())
    }

    pub fn endpoints(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_endpoint())
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings().count()
    }

    pub fn endpoint_by_label(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| match &n.kind {
            NodeKind::Endpoint { label: l } => l == label,
            _ => false,
        })
    }

    pub fn endpoint_label(&self, node: usize) -> Option<&str> {
        match &self.nodes[node].kind {
            NodeKind::Endpoint { label } => Some(label),
            _ => None,
        }
    }

    /// Role of a crossing port; `None` for non-crossings.
    pub fn port_role(&self, p: PortRef) -> Option<PortRole> {
        match self.nodes[p.node].kind {
            NodeKind::Crossing { over_in } => Some(match p.port {
                0 => PortRole::UnderIn,
                2 => PortRole::UnderOut,
                x if x == over_in as usize => PortRole::OverIn,
                _ => PortRole::OverOut,
            }),
            _ => None,
        }
    }

    /// `+1` iff `over_in = 3`.
    pub fn crossing_sign(&self, c: usize) -> Result<i8, DiagramError> {
        match self.nodes[c].kind {
            NodeKind::Crossing { over_in } => Ok(if over_in == 3 { 1 } else { -1 }),
            _ => Err(DiagramError::NotACrossing(self.nodes[c].id.clone())),
        }
    }

    pub fn over_in(&self, c: usize) -> usize {
        match self.nodes[c].kind {
            NodeKind::Crossing { over_in } => over_in as usize,
            _ => panic!("node {} is not a crossing", self.nodes[c].id),
        }
    }

    /// Incoming minus outgoing strand ends at a vertex.
    pub fn vertex_balance(&self, v: usize) -> Result<i64, DiagramError> {
        if !self.nodes[v].is_vertex() {
            return Err(DiagramError::NotAVertex(self.nodes[v].id.clone()));
        }
        Ok(self.attached[v].iter().map(|&(_, e)| if e == StrandEnd::Head { 1 } else { -1 }).sum())
    }

    /// gcd of `|balance|` over all vertices (0 when all are balanced).
    pub fn balance_gcd(&self) -> u64 {
        self.vertices().map(|v| self.vertex_balance(v).unwrap().unsigned_abs()).fold(0u64, |acc, b| acc.gcd(&b))
    }

    /// Every crossing switched; crossing ports are rotated so the former
    /// over-strand becomes the under-strand.
    pub fn mirror(&self) -> Diagram {
        let mut nodes = self.nodes.clone();
        // shift[node] = r such that new port j is old port (j + r) mod 4
        let mut shift = vec![0usize; nodes.len()];
        for (i, n) in nodes.iter_mut().enumerate() {
            if let NodeKind::Crossing { over_in } = &mut n.kind {
                shift[i] = *over_in as usize;
                *over_in = 4 - *over_in;
            }
        }
        let remap = |p: PortRef| -> PortRef {
            if shift[p.node] == 0 {
                p
            } else {
                PortRef::new(p.node, (p.port + 4 - shift[p.node]) % 4)
            }
        };
        let strands =
            self.strands.iter().map(|s| Strand { id: s.id.clone(), from: remap(s.from), to: remap(s.to) }).collect();
        Diagram::new(nodes, strands, self.free_loops.clone(), self.is_tangle).expect("mirror preserves validity").0
    }

    pub fn structure(&self) -> Structure {
        Structure::derive(self)
    }

    /// `nodes - strands + faces`, where each free loop counts as one node,
    /// one strand and two faces.
    pub fn euler_characteristic(&self) -> i64 {
        let faces = structure::trace_faces(self).len();
        self.nodes.len() as i64 - self.strands.len() as i64 + faces as i64 + 2 * self.free_loops.len() as i64
    }

    /// Connected components of the map, free loops included.
    pub fn map_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for s in &self.strands {
            let (a, b) = (find(&mut parent, s.from.node), find(&mut parent, s.to.node));
            parent[a] = b;
        }
        let roots: HashSet<usize> = (0..self.nodes.len()).map(|i| find(&mut parent, i)).collect();
        roots.len() + self.free_loops.len()
    }

    pub fn is_planar(&self) -> bool {
        self.euler_characteristic() == 2 * self.map_components() as i64
    }

    /// Endpoint labels in the cyclic order they appear on their common face,
    /// rotated to start at the least label; `None` if they are not on one face.
    pub fn boundary_order(&self) -> Option<Vec<String>> {
        let total = self.endpoints().count();
        if total == 0 {
            return Some(Vec::new());
        }
        for face in structure::trace_faces(self) {
            let labels: Vec<String> =
                face.iter().filter_map(|p| self.endpoint_label(p.node).map(str::to_string)).collect();
            if labels.is_empty() {
                continue;
            }
            if labels.len() != total {
                return None;
            }
            let start = (0..labels.len()).min_by_key(|&i| &labels[i]).unwrap();
            let mut rotated = labels;
            rotated.rotate_left(start);
            return Some(rotated);
        }
        None
    }

    /// Canonical text; equal for isomorphic diagrams.
    pub fn canonical_code(&self) -> String {
        canon::canonical_code(self)
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.canonical_code() == other.canonical_code()
    }

    pub fn to_text(&self) -> String {
        parse::serialize(self)
    }

    /// Hash of the exact serialized form, used to detect stale move sites.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.to_text().hash(&mut h);
        h.finish()
    }

    pub fn find_move_sites(&self, kind: MoveKind) -> Vec<MoveSite> {
        moves::find_sites(self, kind)
    }

    pub fn apply_move(&self, site: &MoveSite) -> Result<Diagram, DiagramError> {
        moves::apply(self, site)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn signs_follow_over_in() {
        let d = fixtures::trefoil();
        for c in d.crossings() {
            assert_eq!(d.crossing_sign(c).unwrap(), 1);
        }
        let m = d.mirror();
        for c in m.crossings() {
            assert_eq!(m.crossing_sign(c).unwrap(), -1);
        }
    }

    #[test]
    fn mirror_is_an_involution() {
        for (name, d) in fixtures::all() {
            let mm = d.mirror().mirror();
            assert_eq!(mm.to_text(), d.to_text(), "{name}");
            assert!(d.mirror().is_planar(), "{name}");
        }
    }

    #[test]
    fn balances() {
        let d = fixtures::unknot2();
        let v1 = d.node_index("v1").unwrap();
        assert_eq!(d.vertex_balance(v1).unwrap(), -2);
        assert_eq!(d.balance_gcd(), 2);
        let t = fixtures::trefoil();
        assert_eq!(t.balance_gcd(), 0);
    }

    #[test]
    fn degree_three_vertex_balance() {
        let text = "version: 1\ntangle: true\nvertex v ports=3\nendpoint e1 label=b1\nendpoint e2 label=b2\nendpoint e3 label=b3\n\
                    strand s1 from=e1.0 to=v.0\nstrand s2 from=e2.0 to=v.1\nstrand s3 from=v.2 to=e3.0\n";
        let d = parse_diagram(text).unwrap().diagram;
        assert_eq!(d.vertex_balance(d.node_index("v").unwrap()).unwrap(), 1);
    }

    #[test]
    fn all_fixtures_planar() {
        for (name, d) in fixtures::all() {
            assert!(d.is_planar(), "{name}");
            assert_eq!(d.map_components(), 1, "{name}");
        }
    }
}
