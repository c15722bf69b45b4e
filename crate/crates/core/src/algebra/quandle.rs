use std::fmt;

use num_integer::Integer;

use super::group::FiniteGroup;
use super::poly::AlexanderRing;
use super::AlgebraError;

/// Which quandle axiom a table failed, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    Idempotence { a: usize },
    Bijectivity { column: usize, repeated: usize },
    Distributivity { a: usize, b: usize, c: usize },
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // witnesses are rendered 1-based, like the tables in files
        match self {
            Axiom::Idempotence { a } => write!(f, "idempotence fails at a={}", a + 1),
            Axiom::Bijectivity { column, repeated } => {
                write!(f, "column {} is not a bijection (value {} repeated)", column + 1, repeated + 1)
            }
            Axiom::Distributivity { a, b, c } => {
                write!(f, "right distributivity fails at (a,b,c)=({},{},{})", a + 1, b + 1, c + 1)
            }
        }
    }
}

/// A finite quandle given by its operation table.
///
/// Elements are `0..size`; `table[a][b] = a * b`. The inverse operation
/// `a *̄ b` is read from the inverse of column `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    table: Vec<Vec<usize>>,
    inverse: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl FiniteQuandle {
    /// Validates a 0-based table and labels elements `1..=n`.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let labels = (1..=table.len()).map(|i| i.to_string()).collect();
        Self::with_labels(table, labels)
    }

    /// Validates a 1-based table, the way tables are written in files.
    pub fn from_one_based(rows: &[Vec<usize>]) -> Result<Self, AlgebraError> {
        let mut table = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for &x in row {
                if x == 0 || x > rows.len() {
                    return Err(AlgebraError::EntryOutOfRange { entry: x, size: rows.len() });
                }
                r.push(x - 1);
            }
            table.push(r);
        }
        Self::from_table(table)
    }

    pub fn with_labels(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::EmptyTable);
        }
        for row in &table {
            if row.len() != n {
                return Err(AlgebraError::NotSquare { rows: n, width: row.len() });
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(AlgebraError::EntryOutOfRange { entry: x, size: n });
            }
        }
        if labels.len() != n {
            return Err(AlgebraError::LabelCount { expected: n, got: labels.len() });
        }
        let inverse = validate(&table).map_err(AlgebraError::AxiomViolation)?;
        Ok(FiniteQuandle { table, inverse, labels })
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// `a * b`
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// `a *̄ b`, the unique `c` with `c * b = a`.
    #[inline]
    pub fn inv_op(&self, a: usize, b: usize) -> usize {
        self.inverse[a][b]
    }

    /// `a *^sign b`: `*` for `+1`, `*̄` for `-1`.
    #[inline]
    pub fn op_signed(&self, a: usize, b: usize, sign: i8) -> usize {
        if sign > 0 {
            self.op(a, b)
        } else {
            self.inv_op(a, b)
        }
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        let label = label.trim();
        self.labels.iter().position(|l| l == label)
    }

    /// The least `k >= 1` such that `(*b)^k` is the identity for every `b`.
    pub fn k_order(&self) -> usize {
        let n = self.size();
        (0..n).fold(1usize, |acc, b| {
            let mut seen = vec![false; n];
            let mut order = 1usize;
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                let mut len = 0;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.op(x, b);
                    len += 1;
                }
                order = order.lcm(&len);
            }
            acc.lcm(&order)
        })
    }

    pub fn is_k_quandle(&self, m: usize) -> bool {
        m > 0 && m.is_multiple_of(self.k_order())
    }

    /// `a` acted on `times` times by `*b` (negative: by `*̄b`).
    pub fn power(&self, a: usize, b: usize, times: i64) -> usize {
        let k = self.k_order() as i64;
        let reps = times.rem_euclid(k);
        (0..reps).fold(a, |x, _| self.op(x, b))
    }

    // ---- standard families ----

    /// `R_n`: `i * j = 2j - i (mod n)`.
    pub fn dihedral(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidModulus(0));
        }
        let table = (0..n).map(|i| (0..n).map(|j| (2 * j + n - i) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(table, labels)
    }

    /// Trivial quandle: `a * b = a`.
    pub fn trivial(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidModulus(0));
        }
        let table = (0..n).map(|i| vec![i; n]).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::with_labels(table, labels)
    }

    /// Alexander quandle on `Z_n[t, t^-1]/(h)`: `a * b = t a + (1 - t) b`.
    ///
    /// `coefficients[i]` is the coefficient of `t^i` in `h`.
    pub fn alexander(n: u64, coefficients: &[i64]) -> Result<Self, AlgebraError> {
        let ring = AlexanderRing::new(n, coefficients)?;
        let size = ring.size();
        let t = ring.t();
        let one_minus_t = ring.sub(&ring.one(), &t);
        let elems: Vec<_> = (0..size).map(|i| ring.element(i)).collect();
        let table = elems
            .iter()
            .map(|a| {
                let ta = ring.mul(&t, a);
                elems.iter().map(|b| ring.index(&ring.add(&ta, &ring.mul(&one_minus_t, b)))).collect()
            })
            .collect();
        let labels = elems.iter().map(|e| ring.render(e)).collect();
        Self::with_labels(table, labels)
    }

    /// `Conj(H)`: `a * b = b^-1 a b`.
    pub fn conjugation(group: &FiniteGroup) -> Result<Self, AlgebraError> {
        let n = group.size();
        let table = (0..n).map(|a| (0..n).map(|b| group.mul(group.mul(group.inv(b), a), b)).collect()).collect();
        Self::with_labels(table, group.labels().to_vec())
    }

    /// Core quandle: `a * b = b a^-1 b`.
    pub fn core(group: &FiniteGroup) -> Result<Self, AlgebraError> {
        let n = group.size();
        let table = (0..n).map(|a| (0..n).map(|b| group.mul(group.mul(b, group.inv(a)), b)).collect()).collect();
        Self::with_labels(table, group.labels().to_vec())
    }

    /// The five-element quandle with rich cohomology over `S_3`.
    pub fn paper5() -> Self {
        Self::from_one_based(&PAPER5_ROWS.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .expect("shipped table is a quandle")
    }
}

/// The five-element table, 1-based, rows `a`, columns `b`, entry `a * b`.
pub const PAPER5_ROWS: [[usize; 5]; 5] =
    [[1, 1, 2, 2, 2], [2, 2, 1, 1, 1], [4, 5, 3, 5, 4], [5, 3, 5, 4, 3], [3, 4, 4, 3, 5]];

/// Checks the three axioms and returns the inverse table on success.
#[allow(clippy::needless_range_loop)]
fn validate(table: &[Vec<usize>]) -> Result<Vec<Vec<usize>>, Axiom> {
    let n = table.len();
    for (a, row) in table.iter().enumerate() {
        if row[a] != a {
            return Err(Axiom::Idempotence { a });
        }
    }
    let mut inverse = vec![vec![0; n]; n];
    for b in 0..n {
        let mut hit = vec![false; n];
        for a in 0..n {
            let c = table[a][b];
            if hit[c] {
                return Err(Axiom::Bijectivity { column: b, repeated: c });
            }
            hit[c] = true;
            inverse[c][b] = a;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[table[a][c]][table[b][c]] {
                    return Err(Axiom::Distributivity { a, b, c });
                }
            }
        }
    }
    Ok(inverse)
}
