//! Canonical codes for isomorphism testing of diagrams.
//!
//! Each connected component is encoded by a breadth-first walk from every
//! admissible starting port; the least encoding wins. Crossing ports carry
//! meaning so crossings are entered in their own frame; vertex ports are only
//! cyclically ordered so vertices are read relative to the discovering port.

use std::collections::VecDeque;

use super::{Diagram, NodeKind, PortRef, StrandEnd};

pub(crate) fn canonical_code(d: &Diagram) -> String {
    let mut comp = vec![usize::MAX; d.nodes().len()];
    let mut n_comp = 0;
    for start in 0..d.nodes().len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = n_comp;
        while let Some(n) = stack.pop() {
            for port in 0..d.node(n).degree() {
                let t = d.twin(PortRef::new(n, port));
                if comp[t.node] == usize::MAX {
                    comp[t.node] = n_comp;
                    stack.push(t.node);
                }
            }
        }
        n_comp += 1;
    }
    let mut codes: Vec<String> = (0..n_comp)
        .map(|c| {
            (0..d.nodes().len())
                .filter(|&n| comp[n] == c)
                .flat_map(|n| {
                    let starts: Vec<usize> = match d.node(n).kind {
                        NodeKind::Vertex { ports } => (0..ports).collect(),
                        _ => vec![0],
                    };
                    starts.into_iter().map(move |p| encode_from(d, n, p))
                })
                .min()
                .unwrap()
        })
        .collect();
    codes.extend(d.free_loops().iter().map(|_| "L".to_string()));
    codes.sort();
    format!("tangle={};{}", d.is_tangle(), codes.join("|"))
}

fn encode_from(d: &Diagram, start: usize, base_port: usize) -> String {
    let n = d.nodes().len();
    let mut number = vec![usize::MAX; n];
    let mut base = vec![0usize; n];
    let mut queue = VecDeque::new();
    number[start] = 0;
    base[start] = base_port;
    queue.push_back(start);
    let mut next = 1;
    let mut out = String::new();
    let rel = |node: usize, port: usize, base: &[usize]| -> usize {
        match d.node(node).kind {
            NodeKind::Vertex { ports } => (port + ports - base[node]) % ports,
            _ => port,
        }
    };
    while let Some(node) = queue.pop_front() {
        match &d.node(node).kind {
            NodeKind::Crossing { over_in } => out.push_str(&format!("C{over_in}[")),
            NodeKind::Vertex { ports } => out.push_str(&format!("V{ports}[")),
            NodeKind::Endpoint { label } => out.push_str(&format!("E{label}[")),
        }
        let deg = d.node(node).degree();
        for r in 0..deg {
            let port = match d.node(node).kind {
                NodeKind::Vertex { .. } => (r + base[node]) % deg,
                _ => r,
            };
            let p = PortRef::new(node, port);
            let t = d.twin(p);
            if number[t.node] == usize::MAX {
                number[t.node] = next;
                next += 1;
                base[t.node] = t.port;
                queue.push_back(t.node);
            }
            let dir = if d.at(p).1 == StrandEnd::Tail { '>' } else { '<' };
            out.push_str(&format!("{dir}{}.{},", number[t.node], rel(t.node, t.port, &base)));
        }
        out.push(']');
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse_diagram;

    #[test]
    fn relabeling_and_rotation_do_not_matter() {
        let a = parse_diagram(
            "version: 1\ntangle: false\nvertex v1 ports=3\nvertex v2 ports=3\n\
             strand a from=v1.0 to=v2.0\nstrand b from=v2.1 to=v1.2\nstrand c from=v1.1 to=v2.2\n",
        )
        .unwrap()
        .diagram;
        // same theta, vertices listed in the other order, v1's ports rotated by one
        let b = parse_diagram(
            "version: 1\ntangle: false\nvertex w2 ports=3\nvertex w1 ports=3\n\
             strand z from=w1.0 to=w2.2\nstrand x from=w1.2 to=w2.0\nstrand y from=w2.1 to=w1.1\n",
        )
        .unwrap()
        .diagram;
        assert_eq!(a.canonical_code(), b.canonical_code());
        // reversing one edge changes the oriented diagram
        let c = parse_diagram(
            "version: 1\ntangle: false\nvertex v1 ports=3\nvertex v2 ports=3\n\
             strand a from=v1.0 to=v2.0\nstrand b from=v1.2 to=v2.1\nstrand c from=v1.1 to=v2.2\n",
        )
        .unwrap()
        .diagram;
        assert_ne!(a.canonical_code(), c.canonical_code());
    }
}
