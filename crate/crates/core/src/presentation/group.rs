use std::fmt;

use super::{PresentationError, QuandlePresentation};
use crate::algebra::Letter;
use crate::diagram::Diagram;

/// A group word; `sign` is the exponent of each letter.
pub type Relator = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    /// Freely reduced; a relator that reduces to the empty word is kept so
    /// the count still reflects the source relations.
    pub relators: Vec<Relator>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Relator>) -> Self {
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        GroupPresentation { generators, relators }
    }

    pub fn render_relator(&self, r: &[Letter]) -> String {
        if r.is_empty() {
            return "1".into();
        }
        r.iter()
            .map(|l| {
                let g = &self.generators[l.generator];
                if l.sign > 0 {
                    g.clone()
                } else {
                    format!("{g}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Whether some relator equals `r` up to free and cyclic reduction,
    /// rotation and inversion.
    pub fn contains_relator(&self, r: &[Letter]) -> bool {
        self.relators.iter().any(|x| cyclically_equal(x, r))
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        for r in &self.relators {
            writeln!(f, "{} = 1", self.render_relator(r))?;
        }
        Ok(())
    }
}

pub fn free_reduce(w: &[Letter]) -> Relator {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Free reduction followed by cancelling inverse letters across the ends.
pub fn cyclically_reduce(w: &[Letter]) -> Relator {
    let mut r = free_reduce(w);
    while r.len() >= 2 && r[0] == r[r.len() - 1].inverse() {
        r.pop();
        r.remove(0);
    }
    r
}

fn inverse(w: &[Letter]) -> Relator {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Equality of the normal closures' generating words up to cyclic reduction,
/// rotation and inversion.
pub fn cyclically_equal(a: &[Letter], b: &[Letter]) -> bool {
    let a = cyclically_reduce(a);
    let b = cyclically_reduce(b);
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let bi = inverse(&b);
    (0..a.len()).any(|k| {
        let mut rot = a.clone();
        rot.rotate_left(k);
        rot == b || rot == bi
    })
}

fn crossing_relator(input: usize, operator: usize, sign: i8, output: usize) -> Relator {
    let k = Letter::new(operator, 1);
    let (pre, post) = if sign > 0 { (k.inverse(), k) } else { (k, k.inverse()) };
    vec![pre, Letter::new(input, 1), post, Letter::new(output, -1)]
}

/// Quandle operation read as conjugation; each vertex word `w` gives the
/// commutator `x⁻¹ŵ⁻¹xŵ` for every generator `x`.
pub fn associated_group_presentation(p: &QuandlePresentation) -> GroupPresentation {
    let mut relators: Vec<Relator> =
        p.crossings.iter().map(|r| crossing_relator(r.input, r.operator, r.sign, r.output)).collect();
    for v in &p.vertices {
        let w: Relator = v.word.0.clone();
        let wi = inverse(&w);
        for x in 0..p.generators.len() {
            let x = Letter::new(x, 1);
            let mut r = vec![x.inverse()];
            r.extend(&wi);
            r.push(x);
            r.extend(&w);
            relators.push(r);
        }
    }
    GroupPresentation::new(p.generators.clone(), relators)
}

/// Meridian generators per arc, the crossing relators, and one relator `ŵ`
/// per vertex.
pub fn wirtinger_presentation(d: &Diagram) -> Result<GroupPresentation, PresentationError> {
    if d.is_tangle() {
        return Err(PresentationError::TangleNotSupported);
    }
    let p = super::fundamental_quandle_presentation(d);
    let mut relators: Vec<Relator> =
        p.crossings.iter().map(|r| crossing_relator(r.input, r.operator, r.sign, r.output)).collect();
    relators.extend(p.vertices.iter().map(|v| v.word.0.clone()));
    Ok(GroupPresentation::new(p.generators, relators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::presentation::fundamental_quandle_presentation;

    fn parse(g: &GroupPresentation, text: &str) -> Relator {
        text.split_whitespace()
            .map(|t| match t.strip_suffix("^-1") {
                Some(n) => Letter::new(g.generators.iter().position(|x| x == n).unwrap(), -1),
                None => Letter::new(g.generators.iter().position(|x| x == t).unwrap(), 1),
            })
            .collect()
    }

    #[test]
    fn reductions() {
        let a = Letter::new(0, 1);
        let b = Letter::new(1, 1);
        assert_eq!(free_reduce(&[a, b, b.inverse(), a.inverse()]), vec![]);
        assert_eq!(cyclically_reduce(&[a, b, a.inverse()]), vec![b]);
        assert!(cyclically_equal(&[a, b, b], &[b, a, b]));
        assert!(cyclically_equal(&[a, b], &[b.inverse(), a.inverse()]));
        assert!(!cyclically_equal(&[a, b], &[a, b.inverse()]));
    }

    #[test]
    fn theta_associated_group() {
        let g = associated_group_presentation(&fundamental_quandle_presentation(&fixtures::theta()));
        for r in ["c b^-1 a b c^-1 a^-1", "c^-1 a^-1 b a c b^-1", "a^-1 b c b^-1 a c^-1"] {
            assert!(g.contains_relator(&parse(&g, r)), "{r}");
        }
    }

    #[test]
    fn unknot2_associated_group() {
        let g = associated_group_presentation(&fundamental_quandle_presentation(&fixtures::unknot2()));
        for r in ["b^-1 a b a^-1", "a^-1 b a b^-1"] {
            assert!(g.contains_relator(&parse(&g, r)), "{r}");
        }
    }

    #[test]
    fn theta_wirtinger() {
        let g = wirtinger_presentation(&fixtures::theta()).unwrap();
        assert_eq!(g.relators.len(), 2);
        assert!(g.contains_relator(&parse(&g, "a^-1 b c^-1")));
        assert!(g.contains_relator(&parse(&g, "a c b^-1")));
    }

    #[test]
    fn unknot2_wirtinger() {
        let g = wirtinger_presentation(&fixtures::unknot2()).unwrap();
        assert!(g.contains_relator(&parse(&g, "a b")));
        assert!(g.contains_relator(&parse(&g, "a^-1 b^-1")));
    }

    #[test]
    fn bouquet_wirtinger_shape() {
        let g = wirtinger_presentation(&fixtures::bouquet2()).unwrap();
        assert_eq!((g.generators.len(), g.relators.len()), (2, 1));
        // the two loops sit at adjacent ports, so the word cancels freely
        assert!(g.relators[0].is_empty());
    }

    #[test]
    fn tangles_have_no_wirtinger_group() {
        assert_eq!(wirtinger_presentation(&fixtures::tripod()), Err(PresentationError::TangleNotSupported));
    }

    #[test]
    fn single_arc_unknot() {
        let d = crate::diagram::parse_diagram("version: 1\ntangle: false\nloop u\n").unwrap().diagram;
        let g = associated_group_presentation(&fundamental_quandle_presentation(&d));
        assert_eq!(g.generators.len(), 1);
        assert!(g.relators.is_empty());
    }
}
