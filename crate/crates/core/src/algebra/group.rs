use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;

use super::AlgebraError;

/// A permutation of `0..degree`, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    /// Left-to-right product: `self` acts first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x] = i;
        }
        Perm(r)
    }

    /// Parses cycle notation with 1-based points, e.g. `(1,2,3)(4,5)` or `()`.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, AlgebraError> {
        let bad = || AlgebraError::BadPermutation(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || !compact.starts_with('(') || !compact.ends_with(')') {
            return Err(bad());
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for chunk in compact[1..compact.len() - 1].split(")(") {
            if chunk.is_empty() {
                continue;
            }
            let points =
                chunk.split(',').map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
            for &p in &points {
                if p == 0 || p > degree || std::mem::replace(&mut used[p - 1], true) {
                    return Err(bad());
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p - 1] = points[(i + 1) % points.len()] - 1;
            }
        }
        Ok(Perm(images))
    }
}

impl fmt::Display for Perm {
    /// Disjoint cycles, 1-based, each starting at its least point; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            any = true;
            let mut x = start;
            let mut pts = Vec::new();
            while !seen[x] {
                seen[x] = true;
                pts.push((x + 1).to_string());
                x = self.0[x];
            }
            write!(f, "({})", pts.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite group given by its multiplication table.
///
/// Products are evaluated left to right: `mul(g, h)` is "`g` first, then `h`",
/// which for permutation groups is `x -> h(g(x))`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    identity: usize,
    perms: Option<Vec<Perm>>,
    lookup: HashMap<String, usize>,
}

impl FiniteGroup {
    /// The symmetric group on `n` points, elements in lexicographic order of
    /// their image vectors (identity first).
    pub fn symmetric(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 || n > 7 {
            return Err(AlgebraError::InvalidModulus(n as u64));
        }
        let mut perms = Vec::new();
        permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        Ok(Self::from_perms(perms))
    }

    /// `Z_n` with residues `0..n` as labels.
    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidModulus(0));
        }
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_table(mul, labels)
    }

    /// A permutation group closed under products; the caller supplies all elements.
    pub fn from_perms(perms: Vec<Perm>) -> Self {
        let index: HashMap<Perm, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mul = perms.iter().map(|a| perms.iter().map(|b| index[&a.then(b)]).collect()).collect();
        let inv = perms.iter().map(|p| index[&p.inverse()]).collect();
        let degree = perms[0].degree();
        let identity = index[&Perm::identity(degree)];
        let labels: Vec<String> = perms.iter().map(|p| p.to_string()).collect();
        let lookup = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        FiniteGroup { labels, mul, inv, identity, perms: Some(perms), lookup }
    }

    /// Validates an explicit (0-based) multiplication table.
    pub fn from_table(mul: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = mul.len();
        let invalid = |why: &str| AlgebraError::InvalidGroupTable(why.to_string());
        if n == 0 || labels.len() != n || mul.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(invalid("table must be square with entries in range"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| invalid("no identity element"))?;
        let mut inv = vec![0; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| invalid("element without inverse"))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(invalid("not associative"));
                    }
                }
            }
        }
        let lookup = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Ok(FiniteGroup { labels, mul, inv, identity, perms: None, lookup })
    }

    pub fn size(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g^k`, `k` possibly negative.
    pub fn power(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, factors: I) -> usize {
        factors.into_iter().fold(self.identity, |acc, g| self.mul(acc, g))
    }

    pub fn order_of(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// lcm of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.size()).fold(1, |acc, g| acc.lcm(&self.order_of(g)))
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn perm(&self, g: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[g])
    }

    /// Parses an element: cycle notation for permutation groups, else a label.
    pub fn parse_element(&self, text: &str) -> Result<usize, AlgebraError> {
        let text = text.trim();
        if let Some(perms) = &self.perms {
            let p = Perm::parse_cycles(text, perms[0].degree())?;
            return self
                .lookup
                .get(&p.to_string())
                .copied()
                .ok_or_else(|| AlgebraError::UnknownElement(text.to_string()));
        }
        self.lookup.get(text).copied().ok_or_else(|| AlgebraError::UnknownElement(text.to_string()))
    }
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
    if k == items.len() {
        out.push(Perm(items.clone()));
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}
