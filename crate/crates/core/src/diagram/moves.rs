//! Graphical Reidemeister moves as rewrites of the combinatorial map.
//!
//! Every candidate rewrite is built locally and then checked: the result must
//! be a sphere map (Euler characteristic `2` per component), the face the
//! move creates must be present, and for tangles the endpoints must stay on
//! one face in the same cyclic order. Each accepted rewrite is undone by the
//! inverse move at the face it created, which is what makes it a legal move.
//!
//! Move families:
//! - `R1+`/`R1-`: add or remove a kink (monogon face).
//! - `R2+`/`R2-`: poke one strand over another or remove such a bigon.
//! - `R3`: slide a strand across the crossing opposite it in a triangle face.
//! - `R4`: twist two neighbouring edges at a vertex (adds a crossing between
//!   them next to the vertex), or undo such a twist.
//! - `R5`: move a strand from one side of a vertex to the other, passing over
//!   or under all edges at the vertex.

use std::collections::HashSet;
use std::fmt;

use super::draft::Draft;
use super::structure::trace_faces;
use super::{Diagram, DiagramError, PortRef, PortRole, StrandEnd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
    R4,
    R5,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::R1Plus,
        MoveKind::R1Minus,
        MoveKind::R2Plus,
        MoveKind::R2Minus,
        MoveKind::R3,
        MoveKind::R4,
        MoveKind::R5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Plus => "R1+",
            MoveKind::R1Minus => "R1-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R3 => "R3",
            MoveKind::R4 => "R4",
            MoveKind::R5 => "R5",
        }
    }

    pub fn parse(s: &str) -> Option<MoveKind> {
        MoveKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s.trim()))
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Detail {
    Kink { strand: usize, variant: u8 },
    Unkink { crossing: usize },
    Poke { over: usize, under: usize, variant: u8 },
    Unpoke { c1: usize, c2: usize, dart: PortRef },
    Triangle { sides: [usize; 3] },
    Twist { vertex: usize, port: usize, variant: u8 },
    Untwist { vertex: usize, crossing: usize, dart: PortRef },
    Slide { vertex: usize, strand: usize, t_over: bool, variant: u32 },
    Unslide { vertex: usize, crossings: Vec<usize> },
}

/// A place where a move applies, tied to the diagram it was found in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MoveSite {
    pub kind: MoveKind,
    detail: Detail,
    fingerprint: u64,
}

impl MoveSite {
    /// Human-readable description using node and strand ids of `d`.
    pub fn describe(&self, d: &Diagram) -> String {
        let n = |i: usize| d.node(i).id.as_str();
        let s = |i: usize| d.strands()[i].id.as_str();
        match &self.detail {
            Detail::Kink { strand, variant } => format!("R1+ strand={} variant={variant}", s(*strand)),
            Detail::Unkink { crossing } => format!("R1- crossing={}", n(*crossing)),
            Detail::Poke { over, under, variant } => {
                format!("R2+ over={} under={} variant={variant}", s(*over), s(*under))
            }
            Detail::Unpoke { c1, c2, .. } => format!("R2- crossings={},{}", n(*c1), n(*c2)),
            Detail::Triangle { sides } => {
                format!("R3 sides={},{},{}", s(sides[0]), s(sides[1]), s(sides[2]))
            }
            Detail::Twist { vertex, port, variant } => {
                format!(
                    "R4 twist vertex={} ports={},{} variant={variant}",
                    n(*vertex),
                    port,
                    (port + 1) % d.node(*vertex).degree()
                )
            }
            Detail::Untwist { vertex, crossing, .. } => {
                format!("R4 untwist vertex={} crossing={}", n(*vertex), n(*crossing))
            }
            Detail::Slide { vertex, strand, t_over, variant } => format!(
                "R5 slide strand={} {} vertex={} variant={variant}",
                s(*strand),
                if *t_over { "over" } else { "under" },
                n(*vertex)
            ),
            Detail::Unslide { vertex, crossings } => format!(
                "R5 unslide vertex={} crossings={}",
                n(*vertex),
                crossings.iter().map(|&c| n(c)).collect::<Vec<_>>().join(",")
            ),
        }
    }
}

pub(crate) fn find_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    let fingerprint = d.fingerprint();
    candidates(d, kind)
        .into_iter()
        .filter(|detail| build(d, detail).is_some())
        .map(|detail| MoveSite { kind, detail, fingerprint })
        .collect()
}

pub(crate) fn apply(d: &Diagram, site: &MoveSite) -> Result<Diagram, DiagramError> {
    if site.fingerprint != d.fingerprint() {
        return Err(DiagramError::InvalidSite);
    }
    build(d, &site.detail).ok_or(DiagramError::NotApplicable)
}

fn candidates(d: &Diagram, kind: MoveKind) -> Vec<Detail> {
    let faces = trace_faces(d);
    match kind {
        MoveKind::R1Plus => (0..d.strands().len())
            .flat_map(|strand| (0..4).map(move |variant| Detail::Kink { strand, variant }))
            .collect(),
        MoveKind::R1Minus => d.crossings().map(|crossing| Detail::Unkink { crossing }).collect(),
        MoveKind::R2Plus => {
            let mut pairs = HashSet::new();
            for f in &faces {
                let strands: Vec<usize> = f.iter().map(|&p| d.at(p).0).collect();
                for &a in &strands {
                    for &b in &strands {
                        if a != b {
                            pairs.insert((a, b));
                        }
                    }
                }
            }
            let mut pairs: Vec<_> = pairs.into_iter().collect();
            pairs.sort();
            pairs
                .into_iter()
                .flat_map(|(over, under)| (0..8).map(move |variant| Detail::Poke { over, under, variant }))
                .collect()
        }
        MoveKind::R2Minus => faces
            .iter()
            .filter(|f| f.len() == 2 && f[0].node != f[1].node)
            .filter(|f| d.node(f[0].node).is_crossing() && d.node(f[1].node).is_crossing())
            .map(|f| Detail::Unpoke {
                c1: f[0].node.min(f[1].node),
                c2: f[0].node.max(f[1].node),
                dart: f[0].min(f[1]),
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect::<Vec<_>>()
            .into_sorted(),
        MoveKind::R3 => faces
            .iter()
            .filter(|f| f.len() == 3)
            .filter_map(|f| {
                let nodes: HashSet<usize> = f.iter().map(|p| p.node).collect();
                if nodes.len() != 3 || !f.iter().all(|p| d.node(p.node).is_crossing()) {
                    return None;
                }
                let mut sides = [d.at(f[0]).0, d.at(f[1]).0, d.at(f[2]).0];
                sides.sort();
                Some(Detail::Triangle { sides })
            })
            .collect::<HashSet<_>>()
            .into_iter()
            .collect::<Vec<_>>()
            .into_sorted(),
        MoveKind::R4 => {
            let mut out = Vec::new();
            for vertex in d.vertices() {
                if d.node(vertex).degree() >= 2 {
                    for port in 0..d.node(vertex).degree() {
                        for variant in 0..4 {
                            out.push(Detail::Twist { vertex, port, variant });
                        }
                    }
                }
            }
            let mut untwists = HashSet::new();
            for f in faces.iter().filter(|f| f.len() == 2) {
                let (a, b) = (f[0].node, f[1].node);
                for (v, c) in [(a, b), (b, a)] {
                    if d.node(v).is_vertex() && d.node(c).is_crossing() {
                        untwists.insert(Detail::Untwist { vertex: v, crossing: c, dart: f[0].min(f[1]) });
                    }
                }
            }
            out.extend(untwists.into_iter().collect::<Vec<_>>().into_sorted());
            out
        }
        MoveKind::R5 => {
            let mut out = Vec::new();
            for vertex in d.vertices() {
                let k = d.node(vertex).degree();
                if k < 2 {
                    continue;
                }
                let mut ts = HashSet::new();
                for f in faces.iter().filter(|f| f.iter().any(|p| p.node == vertex)) {
                    for &p in f {
                        let s = d.at(p).0;
                        let st = &d.strands()[s];
                        if st.from.node != vertex && st.to.node != vertex {
                            ts.insert(s);
                        }
                    }
                }
                let mut ts: Vec<_> = ts.into_iter().collect();
                ts.sort();
                for strand in ts {
                    for t_over in [true, false] {
                        for variant in 0..(2 * k as u32) << k {
                            out.push(Detail::Slide { vertex, strand, t_over, variant });
                        }
                    }
                }
                if let Some(crossings) = fan_around(d, vertex) {
                    out.push(Detail::Unslide { vertex, crossings });
                }
            }
            out
        }
    }
}

trait IntoSorted {
    fn into_sorted(self) -> Self;
}

impl IntoSorted for Vec<Detail> {
    fn into_sorted(mut self) -> Self {
        self.sort_by_key(|d| format!("{d:?}"));
        self
    }
}

fn build(d: &Diagram, detail: &Detail) -> Option<Diagram> {
    let out = match detail {
        Detail::Kink { strand, variant } => kink(d, *strand, *variant),
        Detail::Unkink { crossing } => unkink(d, *crossing),
        Detail::Poke { over, under, variant } => poke(d, *over, *under, *variant),
        Detail::Unpoke { c1, c2, dart } => unpoke(d, *c1, *c2, *dart),
        Detail::Triangle { sides } => triangle(d, *sides),
        Detail::Twist { vertex, port, variant } => twist(d, *vertex, *port, *variant),
        Detail::Untwist { vertex, crossing, dart } => untwist(d, *vertex, *crossing, *dart),
        Detail::Slide { vertex, strand, t_over, variant } => slide(d, *vertex, *strand, *t_over, *variant),
        Detail::Unslide { vertex, crossings } => unslide(d, *vertex, crossings),
    }?;
    (out.is_planar() && (!d.is_tangle() || out.boundary_order() == d.boundary_order())).then_some(out)
}

/// Ports `(in, out)` a strand uses at a crossing: under `(0, 2)`, over `(over_in, 4 - over_in)`.
fn pass_ports(over: bool, over_in: u8) -> (usize, usize) {
    let over_in = over_in as usize;
    if over {
        (over_in, 4 - over_in)
    } else {
        (0, 2)
    }
}

fn has_face(d: &Diagram, nodes: &[usize]) -> bool {
    let want: Vec<usize> = {
        let mut v = nodes.to_vec();
        v.sort();
        v
    };
    trace_faces(d).iter().any(|f| {
        let mut got: Vec<usize> = f.iter().map(|p| p.node).collect();
        got.sort();
        got == want
    })
}

// ---- R1 ----

fn kink(d: &Diagram, strand: usize, variant: u8) -> Option<Diagram> {
    // (over_in, entry port, loop from, loop to, exit port)
    let (over_in, entry, lf, lt, exit) = match variant {
        0 => (3, 0, 2, 3, 1),
        1 => (1, 0, 2, 1, 3),
        2 => (3, 3, 1, 0, 2),
        3 => (1, 1, 3, 0, 2),
        _ => return None,
    };
    let mut dr = Draft::from_diagram(d);
    let c = dr.add_crossing(over_in);
    let to = dr.strand(strand).to;
    dr.strand_mut(strand).to = PortRef::new(c, entry);
    dr.add_strand(PortRef::new(c, lf), PortRef::new(c, lt));
    dr.add_strand(PortRef::new(c, exit), to);
    dr.finish()
}

fn unkink(d: &Diagram, c: usize) -> Option<Diagram> {
    let monogon = (0..4).any(|p| {
        let (s, end) = d.at(PortRef::new(c, p));
        let st = &d.strands()[s];
        end == StrandEnd::Tail && st.to.node == c && (st.to.port + 4 - p) % 2 == 1
    });
    if !monogon {
        return None;
    }
    let mut dr = Draft::from_diagram(d);
    dr.dissolve(&[c]);
    dr.finish()
}

// ---- R2 ----

fn poke(d: &Diagram, over: usize, under: usize, variant: u8) -> Option<Diagram> {
    if over == under {
        return None;
    }
    let oi1 = if variant & 1 == 0 { 3 } else { 1 };
    let oi2 = if variant & 2 == 0 { 3 } else { 1 };
    let under_reversed = variant & 4 != 0;
    let mut dr = Draft::from_diagram(d);
    let c1 = dr.add_crossing(oi1);
    let c2 = dr.add_crossing(oi2);
    let mid_a = dr.split(over, c1, oi1 as usize, 4 - oi1 as usize);
    dr.split(mid_a, c2, oi2 as usize, 4 - oi2 as usize);
    let (first, second) = if under_reversed { (c2, c1) } else { (c1, c2) };
    let mid_b = dr.split(under, first, 0, 2);
    dr.split(mid_b, second, 0, 2);
    let (c1_id, c2_id) = (dr.nodes[c1].as_ref()?.id.clone(), dr.nodes[c2].as_ref()?.id.clone());
    let out = dr.finish()?;
    let (n1, n2) = (out.node_index(&c1_id)?, out.node_index(&c2_id)?);
    has_face(&out, &[n1, n2]).then_some(out)
}

/// The bigon face containing `dart`, if its corners are the two given nodes.
fn bigon(d: &Diagram, dart: PortRef, a: usize, b: usize) -> Option<Vec<PortRef>> {
    let face = trace_faces(d).into_iter().find(|f| f.contains(&dart))?;
    let mut n = [face.first()?.node, face.get(1)?.node];
    n.sort();
    (face.len() == 2 && n == [a.min(b), a.max(b)]).then_some(face)
}

fn unpoke(d: &Diagram, c1: usize, c2: usize, dart: PortRef) -> Option<Diagram> {
    let face = bigon(d, dart, c1, c2)?;
    let (s, t) = (d.at(face[0]).0, d.at(face[1]).0);
    if s == t {
        return None;
    }
    let over_at_both = |x: usize| {
        let st = &d.strands()[x];
        [st.from, st.to].iter().all(|&p| matches!(d.port_role(p), Some(PortRole::OverIn | PortRole::OverOut)))
    };
    let under_at_both = |x: usize| {
        let st = &d.strands()[x];
        [st.from, st.to].iter().all(|&p| matches!(d.port_role(p), Some(PortRole::UnderIn | PortRole::UnderOut)))
    };
    if !((over_at_both(s) && under_at_both(t)) || (over_at_both(t) && under_at_both(s))) {
        return None;
    }
    let mut dr = Draft::from_diagram(d);
    dr.dissolve(&[c1, c2]);
    dr.finish()
}

// ---- R3 ----

fn triangle(d: &Diagram, sides: [usize; 3]) -> Option<Diagram> {
    let crossings: HashSet<usize> =
        sides.iter().flat_map(|&s| [d.strands()[s].from.node, d.strands()[s].to.node]).collect();
    if crossings.len() != 3 || sides.iter().any(|&s| d.strands()[s].from.node == d.strands()[s].to.node) {
        return None;
    }
    let is_over = |p: PortRef| matches!(d.port_role(p), Some(PortRole::OverIn | PortRole::OverOut));
    // some line must be over at both of its triangle crossings
    let top = sides.iter().any(|&s| is_over(d.strands()[s].from) && is_over(d.strands()[s].to));
    let bottom = sides.iter().any(|&s| !is_over(d.strands()[s].from) && !is_over(d.strands()[s].to));
    if !top || !bottom {
        return None;
    }
    let mut remap: Vec<(PortRef, PortRef)> = Vec::new();
    let mut new_sides = Vec::new();
    for &s in &sides {
        let st = &d.strands()[s];
        let (first, out_f) = (st.from.node, st.from.port);
        let (second, in_s) = (st.to.node, st.to.port);
        let in_f = (out_f + 2) % 4;
        let out_s = (in_s + 2) % 4;
        remap.push((PortRef::new(first, in_f), PortRef::new(second, in_s)));
        remap.push((PortRef::new(second, out_s), PortRef::new(first, out_f)));
        new_sides.push((s, PortRef::new(second, out_s), PortRef::new(first, in_f)));
    }
    let mut dr = Draft::from_diagram(d);
    for i in 0..dr.strands.len() {
        if sides.contains(&i) {
            continue;
        }
        let st = dr.strand_mut(i);
        for (old, new) in &remap {
            if st.from == *old {
                st.from = *new;
            } else if st.to == *old {
                st.to = *new;
            }
        }
    }
    for (s, from, to) in new_sides {
        let st = dr.strand_mut(s);
        st.from = from;
        st.to = to;
    }
    let out = dr.finish()?;
    let mut cs: Vec<usize> = crossings.into_iter().collect();
    cs.sort();
    has_face(&out, &cs).then_some(out)
}

// ---- R4 ----

/// One edge end at a vertex being rerouted through a new crossing.
struct Line {
    strand: usize,
    /// true when the strand leaves the vertex
    outward: bool,
    far: PortRef,
}

fn line_at(d: &Diagram, p: PortRef) -> Line {
    let (strand, end) = d.at(p);
    let st = &d.strands()[strand];
    match end {
        StrandEnd::Tail => Line { strand, outward: true, far: st.to },
        StrandEnd::Head => Line { strand, outward: false, far: st.from },
    }
}

/// Connects vertex port `vp` to `far` through crossing ports `(cin, cout)`,
/// reusing strand `reuse` for the vertex-side piece.
#[allow(clippy::too_many_arguments)]
fn route(dr: &mut Draft, reuse: usize, outward: bool, vp: PortRef, far: PortRef, c: usize, cin: usize, cout: usize) {
    let id = dr.remove_strand(reuse).id;
    if outward {
        dr.add_strand_named(id, vp, PortRef::new(c, cin));
        dr.add_strand(PortRef::new(c, cout), far);
    } else {
        dr.add_strand_named(id, PortRef::new(c, cout), vp);
        dr.add_strand(far, PortRef::new(c, cin));
    }
}

fn twist(d: &Diagram, v: usize, port: usize, variant: u8) -> Option<Diagram> {
    let k = d.node(v).degree();
    let (p, q) = (port, (port + 1) % k);
    let l1 = line_at(d, PortRef::new(v, p));
    let l2 = line_at(d, PortRef::new(v, q));
    if l1.strand == l2.strand {
        return None;
    }
    let first_over = variant & 1 == 0;
    let over_in = if variant & 2 == 0 { 3 } else { 1 };
    let mut dr = Draft::from_diagram(d);
    let c = dr.add_crossing(over_in);
    let (i1, o1) = pass_ports(first_over, over_in);
    let (i2, o2) = pass_ports(!first_over, over_in);
    // the two edges swap ports at the vertex
    route(&mut dr, l1.strand, l1.outward, PortRef::new(v, q), l1.far, c, i1, o1);
    route(&mut dr, l2.strand, l2.outward, PortRef::new(v, p), l2.far, c, i2, o2);
    let c_id = dr.nodes[c].as_ref()?.id.clone();
    let out = dr.finish()?;
    let (nv, nc) = (out.node_index(&d.node(v).id)?, out.node_index(&c_id)?);
    has_face(&out, &[nv, nc]).then_some(out)
}

fn untwist(d: &Diagram, v: usize, c: usize, dart: PortRef) -> Option<Diagram> {
    let face = bigon(d, dart, v, c)?;
    let (x, y) = (d.at(face[0]).0, d.at(face[1]).0);
    if x == y {
        return None;
    }
    let vport = |s: usize| -> Option<PortRef> {
        let st = &d.strands()[s];
        if st.from.node == v && st.to.node == c {
            Some(st.from)
        } else if st.to.node == v && st.from.node == c {
            Some(st.to)
        } else {
            None
        }
    };
    let (px, py) = (vport(x)?, vport(y)?);
    // the far continuation of each line beyond the crossing
    let beyond = |s: usize| -> (usize, bool, PortRef) {
        let st = &d.strands()[s];
        let cport = if st.from.node == c { st.from } else { st.to };
        let other = PortRef::new(c, (cport.port + 2) % 4);
        let (fs, end) = d.at(other);
        let fst = &d.strands()[fs];
        match end {
            StrandEnd::Tail => (fs, true, fst.to),
            StrandEnd::Head => (fs, false, fst.from),
        }
    };
    let (fx, x_out, far_x) = beyond(x);
    let (fy, y_out, far_y) = beyond(y);
    if far_x.node == c || far_y.node == c {
        return None;
    }
    let mut dr = Draft::from_diagram(d);
    for s in [x, y, fx, fy] {
        dr.remove_strand(s);
    }
    dr.nodes[c] = None;
    let (idx, idy) = (d.strands()[x].id.clone(), d.strands()[y].id.clone());
    if x_out {
        dr.add_strand_named(idx, py, far_x);
    } else {
        dr.add_strand_named(idx, far_x, py);
    }
    if y_out {
        dr.add_strand_named(idy, px, far_y);
    } else {
        dr.add_strand_named(idy, far_y, px);
    }
    dr.finish()
}

// ---- R5 ----

fn slide(d: &Diagram, v: usize, t: usize, t_over: bool, variant: u32) -> Option<Diagram> {
    let k = d.node(v).degree();
    let bits = variant & ((1 << k) - 1);
    let rest = variant >> k;
    let (start, reverse) = ((rest / 2) as usize, rest % 2 == 1);
    if start >= k {
        return None;
    }
    let order: Vec<usize> = (0..k).map(|i| if reverse { (start + k - i) % k } else { (start + i) % k }).collect();
    let mut dr = Draft::from_diagram(d);
    let mut ids = Vec::new();
    let mut t_piece = t;
    for (i, &port) in order.iter().enumerate() {
        let over_in = if bits >> i & 1 == 0 { 3 } else { 1 };
        let c = dr.add_crossing(over_in);
        ids.push(dr.nodes[c].as_ref()?.id.clone());
        let (ti, to) = pass_ports(t_over, over_in);
        t_piece = dr.split(t_piece, c, ti, to);
        let (ei, eo) = pass_ports(!t_over, over_in);
        let (es, end) = dr.strand_at(PortRef::new(v, port));
        match end {
            StrandEnd::Tail => {
                dr.split(es, c, ei, eo);
            }
            StrandEnd::Head => {
                // the vertex-side piece must be the one ending at the vertex
                let from = dr.strand(es).from;
                dr.strand_mut(es).from = PortRef::new(c, eo);
                dr.add_strand(from, PortRef::new(c, ei));
            }
        }
    }
    let out = dr.finish()?;
    let nv = out.node_index(&d.node(v).id)?;
    let cs: Vec<usize> = ids.iter().map(|id| out.node_index(id)).collect::<Option<_>>()?;
    cs.windows(2).all(|w| has_face(&out, &[nv, w[0], w[1]])).then_some(out)
}

/// Crossings of a strand passing over (or under) every edge at `v` right next
/// to it, in port order, if such a fan exists.
fn fan_around(d: &Diagram, v: usize) -> Option<Vec<usize>> {
    let k = d.node(v).degree();
    let mut cross = Vec::with_capacity(k);
    let mut edge_over = None;
    for port in 0..k {
        let line = line_at(d, PortRef::new(v, port));
        let c = line.far.node;
        if !d.node(c).is_crossing() || c == v {
            return None;
        }
        let over = matches!(d.port_role(line.far), Some(PortRole::OverIn | PortRole::OverOut));
        if *edge_over.get_or_insert(over) != over {
            return None;
        }
        cross.push(c);
    }
    let distinct: HashSet<usize> = cross.iter().copied().collect();
    if distinct.len() != k {
        return None;
    }
    // the other strand through cross[i] must lead straight to cross[i +- 1]
    let next_on_t = |c: usize| -> Option<usize> {
        let edge_port = (0..4).find(|&p| {
            let (s, _) = d.at(PortRef::new(c, p));
            let st = &d.strands()[s];
            st.from.node == v || st.to.node == v
        })?;
        let t_out =
            (0..4).filter(|&p| p % 2 != edge_port % 2).find(|&p| d.at(PortRef::new(c, p)).1 == StrandEnd::Tail)?;
        Some(d.twin(PortRef::new(c, t_out)).node)
    };
    for start in 0..k {
        for reverse in [false, true] {
            let order: Vec<usize> =
                (0..k).map(|i| if reverse { (start + k - i) % k } else { (start + i) % k }).collect();
            if order.windows(2).all(|w| next_on_t(cross[w[0]]) == Some(cross[w[1]])) {
                return Some(order.iter().map(|&p| cross[p]).collect());
            }
        }
    }
    None
}

fn unslide(d: &Diagram, v: usize, crossings: &[usize]) -> Option<Diagram> {
    if fan_around(d, v).as_deref() != Some(crossings) {
        return None;
    }
    if !crossings.windows(2).all(|w| has_face(d, &[v, w[0], w[1]])) {
        return None;
    }
    let mut dr = Draft::from_diagram(d);
    dr.dissolve(crossings);
    dr.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;
    use crate::fixtures;

    fn counts(d: &Diagram) -> (usize, usize, usize, usize) {
        let s = d.structure();
        (d.crossing_count(), d.strands().len(), s.face_count(), s.edges.len())
    }

    #[test]
    fn kink_then_unkink_restores() {
        for (name, d) in fixtures::all() {
            for site in d.find_move_sites(MoveKind::R1Plus) {
                let k = d.apply_move(&site).unwrap();
                let (c0, s0, f0, e0) = counts(&d);
                assert_eq!(counts(&k), (c0 + 1, s0 + 2, f0 + 1, e0), "{name}");
                let back: Vec<Diagram> =
                    k.find_move_sites(MoveKind::R1Minus).iter().map(|s| k.apply_move(s).unwrap()).collect();
                assert!(back.iter().any(|b| b.is_isomorphic(&d)), "{name}: {}", site.describe(&d));
            }
        }
    }

    #[test]
    fn every_strand_gets_four_kinks() {
        let d = fixtures::trefoil();
        assert_eq!(d.find_move_sites(MoveKind::R1Plus).len(), 4 * d.strands().len());
    }

    #[test]
    fn trefoil_has_no_r2_minus_or_r3() {
        let d = fixtures::trefoil();
        assert!(d.find_move_sites(MoveKind::R2Minus).is_empty());
        assert!(d.find_move_sites(MoveKind::R3).is_empty());
        assert!(d.find_move_sites(MoveKind::R1Minus).is_empty());
    }

    #[test]
    fn poke_counts_and_inverse() {
        for (name, d) in fixtures::all() {
            let sites = d.find_move_sites(MoveKind::R2Plus);
            assert!(!sites.is_empty(), "{name}");
            for site in sites.iter().take(12) {
                let p = d.apply_move(site).unwrap();
                let (c0, s0, f0, e0) = counts(&d);
                assert_eq!(counts(&p), (c0 + 2, s0 + 4, f0 + 2, e0), "{name}");
                let back = p.find_move_sites(MoveKind::R2Minus);
                assert!(
                    back.iter().any(|s| p.apply_move(s).unwrap().is_isomorphic(&d)),
                    "{name}: {}",
                    site.describe(&d)
                );
            }
        }
    }

    #[test]
    fn twist_counts_and_inverse() {
        for (name, d) in fixtures::all() {
            for site in d.find_move_sites(MoveKind::R4) {
                let p = d.apply_move(&site).unwrap();
                let (c0, s0, f0, e0) = counts(&d);
                if p.crossing_count() > c0 {
                    assert_eq!(counts(&p), (c0 + 1, s0 + 2, f0 + 1, e0), "{name}");
                    let back = p.find_move_sites(MoveKind::R4);
                    assert!(
                        back.iter().any(|s| p.apply_move(s).unwrap().is_isomorphic(&d)),
                        "{name}: {}",
                        site.describe(&d)
                    );
                }
            }
        }
    }

    #[test]
    fn slide_counts_and_inverse() {
        let mut seen = 0;
        for (name, d) in fixtures::all() {
            for site in d.find_move_sites(MoveKind::R5).iter().take(16) {
                let p = d.apply_move(site).unwrap();
                let (c0, s0, f0, e0) = counts(&d);
                if p.crossing_count() > c0 {
                    seen += 1;
                    let k = p.crossing_count() - c0;
                    assert_eq!(counts(&p), (c0 + k, s0 + 2 * k, f0 + k, e0), "{name}");
                    let back = p.find_move_sites(MoveKind::R5);
                    assert!(
                        back.iter().any(|s| p.apply_move(s).unwrap().is_isomorphic(&d)),
                        "{name}: {}",
                        site.describe(&d)
                    );
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn triangle_move_is_an_involution() {
        // build an R3 site by poking a strand across a crossing of the trefoil
        let d = fixtures::trefoil();
        let mut found = false;
        for site in d.find_move_sites(MoveKind::R2Plus) {
            let p = d.apply_move(&site).unwrap();
            for r3 in p.find_move_sites(MoveKind::R3) {
                let q = p.apply_move(&r3).unwrap();
                assert_eq!(counts(&q), counts(&p));
                assert!(!q.is_isomorphic(&p) || q.to_text() != p.to_text());
                let back = q.find_move_sites(MoveKind::R3);
                assert!(back.iter().any(|s| q.apply_move(s).unwrap().is_isomorphic(&p)));
                found = true;
            }
            if found {
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn stale_site_is_rejected() {
        let d = fixtures::trefoil();
        let site = d.find_move_sites(MoveKind::R1Plus).remove(0);
        let other = d.apply_move(&site).unwrap();
        assert_eq!(other.apply_move(&site).unwrap_err(), DiagramError::InvalidSite);
    }

    #[test]
    fn kink_on_unknot_leaves_free_loop_when_undone() {
        let d =
            parse_diagram("version: 1\ntangle: false\nvertex v ports=2\nstrand a from=v.0 to=v.1\n").unwrap().diagram;
        let site = d.find_move_sites(MoveKind::R1Plus).remove(0);
        let k = d.apply_move(&site).unwrap();
        assert_eq!(k.crossing_count(), 1);
        let back = k.apply_move(&k.find_move_sites(MoveKind::R1Minus)[0]).unwrap();
        assert!(back.is_isomorphic(&d));
    }

    #[test]
    fn mirror_moves_are_valid_too() {
        let d = fixtures::theta_trefoil().mirror();
        for kind in MoveKind::ALL {
            for site in d.find_move_sites(kind).iter().take(4) {
                assert!(d.apply_move(site).unwrap().is_planar());
            }
        }
    }
}
