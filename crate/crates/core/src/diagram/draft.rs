//! Mutable working copy used by the move engine.

use std::collections::HashSet;

use super::{Diagram, Node, NodeKind, PortRef, Strand, StrandEnd};

#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub nodes: Vec<Option<Node>>,
    pub strands: Vec<Option<Strand>>,
    pub loops: Vec<String>,
    pub is_tangle: bool,
    used: HashSet<String>,
    counter: usize,
}

impl Draft {
    pub fn from_diagram(d: &Diagram) -> Self {
        let used = d
            .nodes()
            .iter()
            .map(|n| n.id.clone())
            .chain(d.strands().iter().map(|s| s.id.clone()))
            .chain(d.free_loops().iter().cloned())
            .collect();
        Draft {
            nodes: d.nodes().iter().cloned().map(Some).collect(),
            strands: d.strands().iter().cloned().map(Some).collect(),
            loops: d.free_loops().to_vec(),
            is_tangle: d.is_tangle(),
            used,
            counter: 0,
        }
    }

    pub fn fresh_id(&mut self, prefix: &str) -> String {
        loop {
            self.counter += 1;
            let id = format!("{prefix}{}", self.counter);
            if self.used.insert(id.clone()) {
                return id;
            }
        }
    }

    pub fn add_crossing(&mut self, over_in: u8) -> usize {
        let id = self.fresh_id("k");
        self.nodes.push(Some(Node { id, kind: NodeKind::Crossing { over_in } }));
        self.nodes.len() - 1
    }

    pub fn add_strand(&mut self, from: PortRef, to: PortRef) -> usize {
        let id = self.fresh_id("s");
        self.add_strand_named(id, from, to)
    }

    pub fn add_strand_named(&mut self, id: String, from: PortRef, to: PortRef) -> usize {
        self.used.insert(id.clone());
        self.strands.push(Some(Strand { id, from, to }));
        self.strands.len() - 1
    }

    pub fn strand(&self, s: usize) -> &Strand {
        self.strands[s].as_ref().expect("live strand")
    }

    pub fn strand_mut(&mut self, s: usize) -> &mut Strand {
        self.strands[s].as_mut().expect("live strand")
    }

    pub fn remove_strand(&mut self, s: usize) -> Strand {
        self.strands[s].take().expect("live strand")
    }

    pub fn strand_at(&self, p: PortRef) -> (usize, StrandEnd) {
        for (i, s) in self.strands.iter().enumerate() {
            if let Some(s) = s {
                if s.from == p {
                    return (i, StrandEnd::Tail);
                }
                if s.to == p {
                    return (i, StrandEnd::Head);
                }
            }
        }
        panic!("port {p:?} not attached");
    }

    /// Replaces strand `s` (A -> B) by A -> (c, in_port) and (c, out_port) -> B.
    /// Returns the index of the second piece.
    pub fn split(&mut self, s: usize, c: usize, in_port: usize, out_port: usize) -> usize {
        let to = self.strand(s).to;
        self.strand_mut(s).to = PortRef::new(c, in_port);
        self.add_strand(PortRef::new(c, out_port), to)
    }

    /// Removes the given crossings, joining the strands through each of them.
    /// Closed curves left without nodes become free loops.
    pub fn dissolve(&mut self, crossings: &[usize]) {
        let gone: HashSet<usize> = crossings.iter().copied().collect();
        let mut consumed = vec![false; self.strands.len()];
        let mut rebuilt = Vec::new();
        for s0 in 0..self.strands.len() {
            let Some(first) = &self.strands[s0] else { continue };
            if gone.contains(&first.from.node) {
                continue;
            }
            let mut s = s0;
            consumed[s] = true;
            while gone.contains(&self.strand(s).to.node) {
                let head = self.strand(s).to;
                let out = PortRef::new(head.node, (head.port + 2) % 4);
                s = self.strand_at(out).0;
                consumed[s] = true;
            }
            rebuilt.push((s0, self.strand(s).to));
        }
        let mut new_loops = Vec::new();
        for s0 in 0..self.strands.len() {
            if self.strands[s0].is_none() || consumed[s0] {
                continue;
            }
            let mut s = s0;
            while !consumed[s] {
                consumed[s] = true;
                let head = self.strand(s).to;
                s = self.strand_at(PortRef::new(head.node, (head.port + 2) % 4)).0;
            }
            new_loops.push(self.strand(s0).id.clone());
        }
        let keep: HashSet<usize> = rebuilt.iter().map(|&(s, _)| s).collect();
        for (s, to) in rebuilt {
            self.strand_mut(s).to = to;
        }
        for (s, slot) in self.strands.iter_mut().enumerate() {
            if slot.is_some() && consumed[s] && !keep.contains(&s) {
                *slot = None;
            }
        }
        for c in crossings {
            self.nodes[*c] = None;
        }
        self.loops.extend(new_loops);
    }

    /// Compacts indices and validates.
    pub fn finish(self) -> Option<Diagram> {
        let mut remap = vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (i, n) in self.nodes.into_iter().enumerate() {
            if let Some(n) = n {
                remap[i] = nodes.len();
                nodes.push(n);
            }
        }
        let strands = self
            .strands
            .into_iter()
            .flatten()
            .map(|s| Strand {
                id: s.id,
                from: PortRef::new(remap[s.from.node], s.from.port),
                to: PortRef::new(remap[s.to.node], s.to.port),
            })
            .collect();
        Diagram::new(nodes, strands, self.loops, self.is_tangle).ok().map(|(d, _)| d)
    }
}
