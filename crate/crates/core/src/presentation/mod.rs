//! Presentations read off a diagram: the fundamental quandle, its associated
//! group, the Wirtinger group, and abelianizations of group presentations.

mod group;
mod smith;

use std::fmt;

use thiserror::Error;

use crate::algebra::{Letter, OperatorWord};
use crate::diagram::{Diagram, Structure};

pub use group::{
    associated_group_presentation, cyclically_equal, cyclically_reduce, free_reduce, wirtinger_presentation,
    GroupPresentation, Relator,
};
pub use smith::{abelianization, smith_normal_form, Abelianization};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("the Wirtinger presentation is only defined for closed diagrams")]
    TangleNotSupported,
}

/// `input * operator = output` for `sign = 1`, `input *̄ operator = output` for `sign = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrossingRelation {
    /// Node index of the crossing in the source diagram.
    pub crossing: usize,
    pub input: usize,
    pub operator: usize,
    pub sign: i8,
    pub output: usize,
}

/// `x^w = x` for every generator `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexRelation {
    /// Node index of the vertex in the source diagram.
    pub vertex: usize,
    pub word: OperatorWord,
}

impl VertexRelation {
    /// One relation `g^u = g` per position of the word: rotate the position
    /// to the front and absorb the leading operator, since `g^{g w} = g^{ḡ w} = g^w`.
    pub fn normalized(&self) -> Vec<(usize, OperatorWord)> {
        (0..self.word.len())
            .map(|i| {
                let rot = self.word.rotated(i);
                let g = rot.0[0].generator;
                (g, OperatorWord(rot.0[1..].to_vec()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandlePresentation {
    /// One generator per arc, named by arc id.
    pub generators: Vec<String>,
    pub crossings: Vec<CrossingRelation>,
    pub vertices: Vec<VertexRelation>,
}

impl QuandlePresentation {
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// The same presentation with one vertex word rotated cyclically.
    pub fn with_rotated_word(&self, vertex_relation: usize, by: usize) -> QuandlePresentation {
        let mut out = self.clone();
        let w = &mut out.vertices[vertex_relation].word;
        *w = w.rotated(by);
        out
    }

    /// A word in the exponent notation, `a b̄ c`.
    pub fn render_word(&self, w: &OperatorWord) -> String {
        w.0.iter().map(|l| bar(&self.generators[l.generator], l.sign)).collect::<Vec<_>>().join(" ")
    }
}

fn bar(name: &str, sign: i8) -> String {
    if sign > 0 {
        name.to_string()
    } else {
        format!("{name}\u{0304}")
    }
}

impl fmt::Display for QuandlePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        for r in &self.crossings {
            let op = if r.sign > 0 { "*" } else { "*\u{0304}" };
            writeln!(
                f,
                "{} {op} {} = {}",
                self.generators[r.input], self.generators[r.operator], self.generators[r.output]
            )?;
        }
        for v in &self.vertices {
            writeln!(f, "x^{{{}}} = x", self.render_word(&v.word))?;
            for (g, u) in v.normalized() {
                let name = &self.generators[g];
                writeln!(f, "  {name}^{{{}}} = {name}", self.render_word(&u))?;
            }
        }
        Ok(())
    }
}

/// Generators are the arcs; crossings and vertices contribute relations,
/// tangle endpoints contribute none.
pub fn fundamental_quandle_presentation(d: &Diagram) -> QuandlePresentation {
    fundamental_quandle_presentation_with(d, &d.structure())
}

pub fn fundamental_quandle_presentation_with(d: &Diagram, s: &Structure) -> QuandlePresentation {
    let generators = s.arcs.iter().map(|a| a.id.clone()).collect();
    let crossings = d
        .crossings()
        .map(|c| {
            let (over, under_in, under_out) = s.crossing_arcs(d, c);
            CrossingRelation {
                crossing: c,
                input: under_in,
                operator: over,
                sign: d.crossing_sign(c).expect("crossing"),
                output: under_out,
            }
        })
        .collect();
    let vertices = d
        .vertices()
        .map(|v| {
            let ccw = s.vertex_arcs(d, v);
            let k = ccw.len();
            // clockwise from port 0: 0, k-1, ..., 1
            let word = (0..k)
                .map(|i| {
                    let (arc, sign) = ccw[(k - i) % k];
                    Letter::new(arc, sign)
                })
                .collect();
            VertexRelation { vertex: v, word: OperatorWord(word) }
        })
        .collect();
    QuandlePresentation { generators, crossings, vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn word(p: &QuandlePresentation, spec: &str) -> OperatorWord {
        OperatorWord(
            spec.split_whitespace()
                .map(|t| match t.strip_suffix('~') {
                    Some(n) => Letter::new(p.generator_index(n).unwrap(), -1),
                    None => Letter::new(p.generator_index(t).unwrap(), 1),
                })
                .collect(),
        )
    }

    fn has_normalized(p: &QuandlePresentation, g: &str, u: &str) -> bool {
        let g = p.generator_index(g).unwrap();
        let u = word(p, u);
        p.vertices.iter().any(|v| v.normalized().contains(&(g, u.clone())))
    }

    #[test]
    fn theta_vertex_relations() {
        let p = fundamental_quandle_presentation(&fixtures::theta());
        assert_eq!(p.generators, ["a", "b", "c"]);
        assert!(p.crossings.is_empty());
        assert_eq!(p.vertices.len(), 2);
        assert!(has_normalized(&p, "a", "b c~"));
        assert!(has_normalized(&p, "b", "a c"));
        assert!(has_normalized(&p, "c", "b~ a"));
    }

    #[test]
    fn unknot2_vertex_relations() {
        let p = fundamental_quandle_presentation(&fixtures::unknot2());
        assert!(has_normalized(&p, "a", "b"));
        assert!(has_normalized(&p, "b", "a"));
    }

    #[test]
    fn trefoil_has_only_crossing_relations() {
        let p = fundamental_quandle_presentation(&fixtures::trefoil());
        assert_eq!((p.generators.len(), p.crossings.len(), p.vertices.len()), (3, 3, 0));
        assert!(p.crossings.iter().all(|r| r.sign == 1));
    }

    #[test]
    fn every_generator_is_declared() {
        for (name, d) in fixtures::all() {
            let p = fundamental_quandle_presentation(&d);
            let n = p.generators.len();
            for v in &p.vertices {
                assert_eq!(v.word.len(), d.node(v.vertex).degree(), "{name}");
                assert!(v.word.0.iter().all(|l| l.generator < n), "{name}");
            }
            assert_eq!(p.crossings.len(), d.crossing_count(), "{name}");
        }
    }

    #[test]
    fn display_uses_exponent_notation() {
        let p = fundamental_quandle_presentation(&fixtures::theta());
        let text = p.to_string();
        assert!(text.contains("a^{b c\u{0304}} = a"), "{text}");
    }
}
