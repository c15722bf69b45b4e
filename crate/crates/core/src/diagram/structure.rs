use super::{Diagram, PortRef, PortRole, StrandEnd};

/// Where an arc begins or ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attachment {
    /// Broken at a crossing where the arc is the under-strand.
    Under {
        crossing: usize,
    },
    Vertex(PortRef),
    Endpoint {
        node: usize,
    },
    /// The arc is a closed curve.
    Closed,
}

/// Maximal run of strands glued through crossings along the over-strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    pub id: String,
    pub strands: Vec<usize>,
    pub start: Attachment,
    pub end: Attachment,
}

/// Where an edge begins or ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEnd {
    Vertex(PortRef),
    Endpoint { node: usize },
    Closed,
}

/// Maximal run of strands glued through crossings on both strands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub strands: Vec<usize>,
    pub start: EdgeEnd,
    pub end: EdgeEnd,
}

impl Edge {
    pub fn is_closed(&self) -> bool {
        self.start == EdgeEnd::Closed
    }
}

/// A face as the cyclic list of ports through which its boundary leaves each node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<PortRef>,
}

#[derive(Debug, Clone)]
pub struct Structure {
    pub arcs: Vec<Arc>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    /// Faces contributed by free loops (two each), not listed in `faces`.
    pub loop_faces: usize,
    pub arc_of_strand: Vec<usize>,
    pub edge_of_strand: Vec<usize>,
    /// Arc index of each free loop.
    pub loop_arcs: Vec<usize>,
    pub loop_edges: Vec<usize>,
}

impl Structure {
    pub fn derive(d: &Diagram) -> Structure {
        let (arcs, arc_of_strand, loop_arcs) = derive_arcs(d);
        let (edges, edge_of_strand, loop_edges) = derive_edges(d);
        let faces = trace_faces(d).into_iter().map(|darts| Face { darts }).collect();
        Structure {
            arcs,
            edges,
            faces,
            loop_faces: 2 * d.free_loops().len(),
            arc_of_strand,
            edge_of_strand,
            loop_arcs,
            loop_edges,
        }
    }

    pub fn face_count(&self) -> usize {
        self.faces.len() + self.loop_faces
    }

    /// Arc of the strand attached at a port.
    pub fn arc_at(&self, d: &Diagram, p: PortRef) -> usize {
        self.arc_of_strand[d.at(p).0]
    }

    /// Over-arc, incoming under-arc and outgoing under-arc of a crossing.
    pub fn crossing_arcs(&self, d: &Diagram, c: usize) -> (usize, usize, usize) {
        let over = self.arc_at(d, PortRef::new(c, d.over_in(c)));
        (over, self.arc_at(d, PortRef::new(c, 0)), self.arc_at(d, PortRef::new(c, 2)))
    }

    /// `(arc, +1 if oriented toward v else -1)` for each port of a vertex,
    /// in counterclockwise port order.
    pub fn vertex_arcs(&self, d: &Diagram, v: usize) -> Vec<(usize, i8)> {
        (0..d.node(v).degree())
            .map(|port| {
                let p = PortRef::new(v, port);
                let (s, end) = d.at(p);
                (self.arc_of_strand[s], if end == StrandEnd::Head { 1 } else { -1 })
            })
            .collect()
    }
}

/// Faces by the rule: leave through a port, arrive at the twin port, continue
/// clockwise (previous port in counterclockwise order).
pub(crate) fn trace_faces(d: &Diagram) -> Vec<Vec<PortRef>> {
    let mut seen: Vec<Vec<bool>> = d.nodes().iter().map(|n| vec![false; n.degree()]).collect();
    let mut faces = Vec::new();
    for node in 0..d.nodes().len() {
        for port in 0..d.node(node).degree() {
            if seen[node][port] {
                continue;
            }
            let mut face = Vec::new();
            let mut h = PortRef::new(node, port);
            while !seen[h.node][h.port] {
                seen[h.node][h.port] = true;
                face.push(h);
                let t = d.twin(h);
                let deg = d.node(t.node).degree();
                h = PortRef::new(t.node, (t.port + deg - 1) % deg);
            }
            faces.push(face);
        }
    }
    faces
}

/// The port through which a strand passing in at `p` leaves, when `p` is a crossing port.
pub(crate) fn pass_through(d: &Diagram, p: PortRef) -> Option<PortRef> {
    d.port_role(p).map(|_| PortRef::new(p.node, (p.port + 2) % 4))
}

fn derive_arcs(d: &Diagram) -> (Vec<Arc>, Vec<usize>, Vec<usize>) {
    let n = d.strands().len();
    let mut arc_of = vec![usize::MAX; n];
    let mut arcs = Vec::new();
    // an arc continues through a crossing only when arriving at the over-in port
    let continues = |head: PortRef| d.port_role(head) == Some(PortRole::OverIn);
    let starts = |s: usize| {
        let tail = d.strands()[s].from;
        d.port_role(tail) != Some(PortRole::OverOut)
    };
    let attach = |p: PortRef| -> Attachment {
        let node = d.node(p.node);
        if node.is_crossing() {
            Attachment::Under { crossing: p.node }
        } else if node.is_vertex() {
            Attachment::Vertex(p)
        } else {
            Attachment::Endpoint { node: p.node }
        }
    };
    for s0 in 0..n {
        if !starts(s0) {
            continue;
        }
        let mut chain = vec![s0];
        let mut s = s0;
        while continues(d.strands()[s].to) {
            let out = pass_through(d, d.strands()[s].to).unwrap();
            s = d.at(out).0;
            chain.push(s);
        }
        let idx = arcs.len();
        for &x in &chain {
            arc_of[x] = idx;
        }
        arcs.push(Arc {
            id: d.strands()[s0].id.clone(),
            start: attach(d.strands()[s0].from),
            end: attach(d.strands()[s].to),
            strands: chain,
        });
    }
    for s0 in 0..n {
        if arc_of[s0] != usize::MAX {
            continue;
        }
        let idx = arcs.len();
        let mut chain = Vec::new();
        let mut s = s0;
        while arc_of[s] == usize::MAX {
            arc_of[s] = idx;
            chain.push(s);
            s = d.at(pass_through(d, d.strands()[s].to).unwrap()).0;
        }
        arcs.push(Arc {
            id: d.strands()[s0].id.clone(),
            strands: chain,
            start: Attachment::Closed,
            end: Attachment::Closed,
        });
    }
    let mut loop_arcs = Vec::new();
    for l in d.free_loops() {
        loop_arcs.push(arcs.len());
        arcs.push(Arc { id: l.clone(), strands: Vec::new(), start: Attachment::Closed, end: Attachment::Closed });
    }
    (arcs, arc_of, loop_arcs)
}

fn derive_edges(d: &Diagram) -> (Vec<Edge>, Vec<usize>, Vec<usize>) {
    let n = d.strands().len();
    let mut edge_of = vec![usize::MAX; n];
    let mut edges = Vec::new();
    let end_of = |p: PortRef| -> EdgeEnd {
        if d.node(p.node).is_vertex() {
            EdgeEnd::Vertex(p)
        } else {
            EdgeEnd::Endpoint { node: p.node }
        }
    };
    for s0 in 0..n {
        if d.node(d.strands()[s0].from.node).is_crossing() {
            continue;
        }
        let idx = edges.len();
        let mut chain = vec![s0];
        let mut s = s0;
        edge_of[s] = idx;
        while let Some(out) = pass_through(d, d.strands()[s].to) {
            s = d.at(out).0;
            edge_of[s] = idx;
            chain.push(s);
        }
        edges.push(Edge {
            id: d.strands()[s0].id.clone(),
            start: end_of(d.strands()[s0].from),
            end: end_of(d.strands()[s].to),
            strands: chain,
        });
    }
    for s0 in 0..n {
        if edge_of[s0] != usize::MAX {
            continue;
        }
        let idx = edges.len();
        let mut chain = Vec::new();
        let mut s = s0;
        while edge_of[s] == usize::MAX {
            edge_of[s] = idx;
            chain.push(s);
            s = d.at(pass_through(d, d.strands()[s].to).unwrap()).0;
        }
        edges.push(Edge {
            id: d.strands()[s0].id.clone(),
            strands: chain,
            start: EdgeEnd::Closed,
            end: EdgeEnd::Closed,
        });
    }
    let mut loop_edges = Vec::new();
    for l in d.free_loops() {
        loop_edges.push(edges.len());
        edges.push(Edge { id: l.clone(), strands: Vec::new(), start: EdgeEnd::Closed, end: EdgeEnd::Closed });
    }
    (edges, edge_of, loop_edges)
}
