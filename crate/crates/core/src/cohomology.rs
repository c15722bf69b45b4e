//! Nonabelian quandle 2-cocycles with values in a finite group.
//!
//! Group products are left to right, matching [`FiniteGroup::mul`].

use std::collections::BTreeMap;
use std::fmt::Write;

use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteGroup, FiniteQuandle};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cocycle table has {got} entries, expected {expected}")]
    IncompleteTable { expected: usize, got: usize },
    #[error("group element index {0} out of range")]
    BadValue(usize),
    #[error("search exceeded the budget of {0}")]
    BudgetExceeded(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `φ: Q × Q → H` as a row-major table of group element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoCocycle {
    n: usize,
    values: Vec<usize>,
}

impl TwoCocycle {
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self, CohomologyError> {
        if values.len() != n * n {
            return Err(CohomologyError::IncompleteTable { expected: n * n, got: values.len() });
        }
        Ok(TwoCocycle { n, values })
    }

    pub fn constant(q: &FiniteQuandle, h: &FiniteGroup) -> Self {
        let n = q.size();
        TwoCocycle { n, values: vec![h.identity(); n * n] }
    }

    /// `φ(x₁,x₂) = β(x₁)⁻¹ β(x₁∗x₂)`.
    pub fn coboundary(q: &FiniteQuandle, h: &FiniteGroup, beta: &[usize]) -> Self {
        let n = q.size();
        let values = (0..n * n).map(|i| h.mul(h.inv(beta[i / n]), beta[q.op(i / n, i % n)])).collect();
        TwoCocycle { n, values }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.values[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, g: usize) {
        self.values[x * self.n + y] = g;
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    fn check(&self, q: &FiniteQuandle, h: &FiniteGroup) -> Result<(), CohomologyError> {
        if self.n != q.size() {
            return Err(CohomologyError::IncompleteTable { expected: q.size() * q.size(), got: self.values.len() });
        }
        match self.values.iter().find(|&&g| g >= h.size()) {
            Some(&g) => Err(CohomologyError::BadValue(g)),
            None => Ok(()),
        }
    }

    /// `β(x₁)⁻¹ φ(x₁,x₂) β(x₁∗x₂)`.
    pub fn transformed(&self, q: &FiniteQuandle, h: &FiniteGroup, beta: &[usize]) -> TwoCocycle {
        let n = self.n;
        let values = (0..n * n)
            .map(|i| {
                let (x, y) = (i / n, i % n);
                h.product([h.inv(beta[x]), self.values[i], beta[q.op(x, y)]])
            })
            .collect();
        TwoCocycle { n, values }
    }
}

/// Where a table fails to be a cocycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Diagonal(usize),
    Triple(usize, usize, usize),
}

/// First failure of `φ(x,x) = 1` or of the cocycle identity
/// `φ(x₁,x₂)φ(x₁∗x₂,x₃) = φ(x₁,x₃)φ(x₁∗x₃,x₂∗x₃)`.
pub fn cocycle_violation(
    q: &FiniteQuandle,
    h: &FiniteGroup,
    phi: &TwoCocycle,
) -> Result<Option<Violation>, CohomologyError> {
    phi.check(q, h)?;
    let n = q.size();
    if let Some(x) = (0..n).find(|&x| phi.get(x, x) != h.identity()) {
        return Ok(Some(Violation::Diagonal(x)));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !triple_holds(q, h, phi, a, b, c) {
                    return Ok(Some(Violation::Triple(a, b, c)));
                }
            }
        }
    }
    Ok(None)
}

fn triple_holds(q: &FiniteQuandle, h: &FiniteGroup, phi: &TwoCocycle, a: usize, b: usize, c: usize) -> bool {
    let lhs = h.mul(phi.get(a, b), phi.get(q.op(a, b), c));
    let rhs = h.mul(phi.get(a, c), phi.get(q.op(a, c), q.op(b, c)));
    lhs == rhs
}

pub fn is_cocycle(q: &FiniteQuandle, h: &FiniteGroup, phi: &TwoCocycle) -> Result<bool, CohomologyError> {
    Ok(cocycle_violation(q, h, phi)?.is_none())
}

/// `φ(y∗z, z) = φ(y, z)` and `φ(y∗̄z, z) = φ(y, z)` for all `y, z`.
pub fn satisfies_stability(q: &FiniteQuandle, phi: &TwoCocycle) -> bool {
    let n = q.size();
    (0..n)
        .all(|y| (0..n).all(|z| phi.get(q.op(y, z), z) == phi.get(y, z) && phi.get(q.inv_op(y, z), z) == phi.get(y, z)))
}

fn check_beta_space(q: &FiniteQuandle, h: &FiniteGroup, budget: u64) -> Result<(), CohomologyError> {
    let space = (h.size() as f64).powi(q.size() as i32);
    if space > budget as f64 {
        return Err(CohomologyError::BudgetExceeded(budget));
    }
    Ok(())
}

/// A `β` with `φ₂(x₁,x₂) = β(x₁)⁻¹ φ₁(x₁,x₂) β(x₁∗x₂)`, if one exists.
pub fn are_cohomologous(
    q: &FiniteQuandle,
    h: &FiniteGroup,
    phi1: &TwoCocycle,
    phi2: &TwoCocycle,
) -> Result<Option<Vec<usize>>, CohomologyError> {
    phi1.check(q, h)?;
    phi2.check(q, h)?;
    check_beta_space(q, h, DEFAULT_BUDGET)?;
    let n = q.size();
    let mut beta = vec![usize::MAX; n];
    fn go(
        q: &FiniteQuandle,
        h: &FiniteGroup,
        p1: &TwoCocycle,
        p2: &TwoCocycle,
        beta: &mut Vec<usize>,
        x: usize,
    ) -> bool {
        let n = q.size();
        if x == n {
            return true;
        }
        for g in 0..h.size() {
            beta[x] = g;
            // check every pair whose β values are now all known
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    let c = q.op(a, b);
                    if a > x || c > x || (a != x && c != x) {
                        return true;
                    }
                    h.product([h.inv(beta[a]), p1.get(a, b), beta[c]]) == p2.get(a, b)
                })
            });
            if ok && go(q, h, p1, p2, beta, x + 1) {
                return true;
            }
        }
        beta[x] = usize::MAX;
        false
    }
    Ok(go(q, h, phi1, phi2, &mut beta, 0).then_some(beta))
}

/// All cocycles, optionally restricted to those satisfying stability.
///
/// Cells are grouped into variables: the diagonal is fixed to the identity and,
/// under stability, `(y, z)` and `(y∗z, z)` share a variable. A cocycle
/// identity is checked as soon as its last cell is assigned.
pub fn search_cocycles(
    q: &FiniteQuandle,
    h: &FiniteGroup,
    require_stability: bool,
    budget: u64,
) -> Result<Vec<TwoCocycle>, CohomologyError> {
    let n = q.size();
    // var_of[cell], usize::MAX for the diagonal
    let mut var_of = vec![usize::MAX; n * n];
    let mut vars = 0;
    for z in 0..n {
        for y in 0..n {
            if y == z || var_of[y * n + z] != usize::MAX {
                continue;
            }
            let mut cur = y;
            loop {
                var_of[cur * n + z] = vars;
                if !require_stability {
                    break;
                }
                cur = q.op(cur, z);
                if cur == y {
                    break;
                }
            }
            vars += 1;
        }
    }
    // triples grouped by the largest variable they mention
    let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vars];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let cells = [a * n + b, q.op(a, b) * n + c, a * n + c, q.op(a, c) * n + q.op(b, c)];
                let last = cells.iter().map(|&i| var_of[i]).filter(|&v| v != usize::MAX).max();
                if let Some(v) = last {
                    checks[v].push((a, b, c));
                }
            }
        }
    }
    let mut phi = TwoCocycle::constant(q, h);
    let cells_of: Vec<Vec<usize>> = (0..vars).map(|v| (0..n * n).filter(|&i| var_of[i] == v).collect()).collect();
    let mut out = Vec::new();
    let mut nodes = 0u64;
    #[allow(clippy::too_many_arguments)]
    fn go(
        q: &FiniteQuandle,
        h: &FiniteGroup,
        v: usize,
        cells_of: &[Vec<usize>],
        checks: &[Vec<(usize, usize, usize)>],
        phi: &mut TwoCocycle,
        out: &mut Vec<TwoCocycle>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<(), CohomologyError> {
        if v == cells_of.len() {
            out.push(phi.clone());
            return Ok(());
        }
        for g in 0..h.size() {
            *nodes += 1;
            if *nodes > budget {
                return Err(CohomologyError::BudgetExceeded(budget));
            }
            for &i in &cells_of[v] {
                phi.values[i] = g;
            }
            if checks[v].iter().all(|&(a, b, c)| triple_holds(q, h, phi, a, b, c)) {
                go(q, h, v + 1, cells_of, checks, phi, out, nodes, budget)?;
            }
        }
        for &i in &cells_of[v] {
            phi.values[i] = h.identity();
        }
        Ok(())
    }
    go(q, h, 0, &cells_of, &checks, &mut phi, &mut out, &mut nodes, budget)?;
    out.sort();
    Ok(out)
}

/// Cohomology classes of a set of cocycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Each class as indices into the input, in input order.
    pub classes: Vec<Vec<usize>>,
    /// Index into `classes` of the class of the constant-identity cocycle,
    /// if it occurs in the input.
    pub trivial: Option<usize>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn nontrivial_count(&self) -> usize {
        self.classes.len() - usize::from(self.trivial.is_some())
    }
}

/// Least table over all `β`-transforms; equal exactly for cohomologous cocycles.
pub fn class_key(q: &FiniteQuandle, h: &FiniteGroup, phi: &TwoCocycle) -> Result<TwoCocycle, CohomologyError> {
    phi.check(q, h)?;
    check_beta_space(q, h, DEFAULT_BUDGET)?;
    let n = q.size();
    let m = h.size();
    let mut beta = vec![0usize; n];
    let mut best = phi.clone();
    loop {
        let t = phi.transformed(q, h, &beta);
        if t < best {
            best = t;
        }
        let mut i = 0;
        while i < n {
            beta[i] += 1;
            if beta[i] < m {
                break;
            }
            beta[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(best);
        }
    }
}

/// Partition by cohomology class; the trivial class is the one of the
/// constant-identity cocycle. A class the constant cocycle belongs to counts
/// as trivial even when the constant cocycle itself is not in the input.
pub fn classify(
    q: &FiniteQuandle,
    h: &FiniteGroup,
    cocycles: &[TwoCocycle],
) -> Result<Classification, CohomologyError> {
    let trivial_key = class_key(q, h, &TwoCocycle::constant(q, h))?;
    let mut by_key: BTreeMap<TwoCocycle, usize> = BTreeMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut trivial = None;
    for (i, phi) in cocycles.iter().enumerate() {
        let key = class_key(q, h, phi)?;
        let is_trivial = key == trivial_key;
        let c = *by_key.entry(key).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        if is_trivial {
            trivial = Some(c);
        }
    }
    Ok(Classification { classes, trivial })
}

/// One `phi(x,y) = g` line per non-identity value.
pub fn format_cocycle(q: &FiniteQuandle, h: &FiniteGroup, phi: &TwoCocycle) -> String {
    let mut out = String::new();
    for x in 0..phi.n {
        for y in 0..phi.n {
            let g = phi.get(x, y);
            if g != h.identity() {
                writeln!(out, "phi({},{}) = {}", q.label(x), q.label(y), h.label(g)).unwrap();
            }
        }
    }
    out
}

/// Parses `phi(<x>,<y>) = <element>` lines; omitted pairs are the identity.
pub fn parse_cocycle(q: &FiniteQuandle, h: &FiniteGroup, text: &str) -> Result<TwoCocycle, CohomologyError> {
    let mut phi = TwoCocycle::constant(q, h);
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| CohomologyError::Parse { line: i + 1, message };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("expected `phi(x,y) = g`".into()))?;
        let args = lhs
            .trim()
            .strip_prefix("phi(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| err(format!("expected phi(x,y), got `{}`", lhs.trim())))?;
        let (x, y) = args.split_once(',').ok_or_else(|| err("expected two arguments".into()))?;
        let elem = |s: &str| {
            q.element_by_label(s.trim()).ok_or_else(|| err(format!("unknown quandle element `{}`", s.trim())))
        };
        let (x, y) = (elem(x)?, elem(y)?);
        let g = h.parse_element(rhs.trim()).map_err(|e| err(e.to_string()))?;
        phi.set(x, y, g);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "\
phi(2,1) = (1,2,3)
phi(1,2) = (1,3,2)
phi(1,3) = (2,3)
phi(2,3) = (2,3)
phi(1,4) = (1,2)
phi(2,4) = (1,2)
phi(1,5) = (1,3)
phi(2,5) = (1,3)
";

    fn setup() -> (FiniteQuandle, FiniteGroup) {
        (FiniteQuandle::paper5(), FiniteGroup::symmetric(3).unwrap())
    }

    #[test]
    fn example_is_a_stable_cocycle() {
        let (q, h) = setup();
        let phi = parse_cocycle(&q, &h, EXAMPLE).unwrap();
        assert_eq!(cocycle_violation(&q, &h, &phi).unwrap(), None);
        assert!(satisfies_stability(&q, &phi));
        assert_eq!(parse_cocycle(&q, &h, &format_cocycle(&q, &h, &phi)).unwrap(), phi);
    }

    #[test]
    fn edited_example_fails_at_a_triple() {
        let (q, h) = setup();
        let mut phi = parse_cocycle(&q, &h, EXAMPLE).unwrap();
        phi.set(0, 1, h.identity());
        assert!(matches!(cocycle_violation(&q, &h, &phi).unwrap(), Some(Violation::Triple(..))));
    }

    #[test]
    fn diagonal_must_be_identity() {
        let (q, h) = setup();
        let mut phi = TwoCocycle::constant(&q, &h);
        phi.set(2, 2, 1);
        assert_eq!(cocycle_violation(&q, &h, &phi).unwrap(), Some(Violation::Diagonal(2)));
    }

    #[test]
    fn stability_failure() {
        let (q, h) = setup();
        let mut phi = TwoCocycle::constant(&q, &h);
        phi.set(0, 2, h.parse_element("(2,3)").unwrap());
        assert!(!satisfies_stability(&q, &phi));
        assert!(satisfies_stability(&q, &TwoCocycle::constant(&q, &h)));
    }

    #[test]
    fn cohomologous_to_coboundaries() {
        let (q, h) = setup();
        let one = TwoCocycle::constant(&q, &h);
        assert_eq!(are_cohomologous(&q, &h, &one, &one).unwrap(), Some(vec![0; 5]));
        let beta = [1, 3, 0, 5, 2];
        let cob = TwoCocycle::coboundary(&q, &h, &beta);
        assert!(is_cocycle(&q, &h, &cob).unwrap());
        assert!(are_cohomologous(&q, &h, &one, &cob).unwrap().is_some());
        let phi = parse_cocycle(&q, &h, EXAMPLE).unwrap();
        assert_eq!(are_cohomologous(&q, &h, &one, &phi).unwrap(), None);
    }

    #[test]
    fn trivial_quandle_search() {
        let q = FiniteQuandle::trivial(1).unwrap();
        let h = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(search_cocycles(&q, &h, false, DEFAULT_BUDGET).unwrap(), vec![TwoCocycle::constant(&q, &h)]);
    }

    #[test]
    fn dihedral_search_is_self_consistent() {
        let q = FiniteQuandle::dihedral(3).unwrap();
        let h = FiniteGroup::cyclic(2).unwrap();
        let found = search_cocycles(&q, &h, true, DEFAULT_BUDGET).unwrap();
        assert!(!found.is_empty());
        for phi in &found {
            assert!(is_cocycle(&q, &h, phi).unwrap());
            assert!(satisfies_stability(&q, phi));
        }
    }

    #[test]
    fn classify_constant() {
        let (q, h) = setup();
        let one = TwoCocycle::constant(&q, &h);
        let c = classify(&q, &h, std::slice::from_ref(&one)).unwrap();
        assert_eq!((c.class_count(), c.nontrivial_count()), (1, 0));
        let cob = TwoCocycle::coboundary(&q, &h, &[2, 2, 4, 1, 0]);
        assert_eq!(classify(&q, &h, &[one, cob]).unwrap().class_count(), 1);
    }
}
