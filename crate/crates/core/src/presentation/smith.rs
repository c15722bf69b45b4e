use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GroupPresentation;

/// Nonzero invariant factors `d1 | d2 | ...` of an integer matrix, all positive.
#[allow(clippy::needless_range_loop)]
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pivot: smallest nonzero magnitude in the remaining block
        let pivot = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()));
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for j in t..ncols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                if !m[i][t].is_zero() {
                    m.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..nrows)
                .flat_map(|i| (t + 1..ncols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..ncols {
                        let v = m[i][j].clone();
                        m[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/torsion_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abelianization {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Exponent-sum matrix of the relators, reduced to Smith normal form.
pub fn abelianization(g: &GroupPresentation) -> Abelianization {
    let n = g.generators.len();
    let rows: Vec<Vec<i64>> = g
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for l in r {
                row[l.generator] += l.sign as i64;
            }
            row
        })
        .collect();
    let factors = smith_normal_form(&rows);
    Abelianization { free_rank: n - factors.len(), torsion: factors.into_iter().filter(|d| !d.is_one()).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::presentation::{
        associated_group_presentation, fundamental_quandle_presentation, wirtinger_presentation,
    };
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(smith_normal_form(&[vec![2, 0], vec![0, 3]]), ints(&[1, 6]));
        assert_eq!(smith_normal_form(&[vec![0, 0, 0], vec![0, 0, 0]]), ints(&[]));
        assert_eq!(smith_normal_form(&[vec![1, 0], vec![0, 1]]), ints(&[1, 1]));
        assert_eq!(smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), ints(&[2, 6, 12]));
    }

    #[test]
    fn fixture_abelianizations() {
        let asq = |d: &crate::diagram::Diagram| {
            abelianization(&associated_group_presentation(&fundamental_quandle_presentation(d)))
        };
        let pi = |d: &crate::diagram::Diagram| abelianization(&wirtinger_presentation(d).unwrap());
        let free = |r| Abelianization { free_rank: r, torsion: vec![] };
        assert_eq!(asq(&fixtures::theta()), free(3));
        assert_eq!(pi(&fixtures::theta()), free(2));
        assert_eq!(asq(&fixtures::unknot2()), free(2));
        assert_eq!(pi(&fixtures::unknot2()), free(1));
        assert_eq!(asq(&fixtures::bouquet2()), free(2));
        assert_eq!(pi(&fixtures::bouquet2()), free(2));
        assert_eq!(pi(&fixtures::trefoil()), free(1));
    }

    #[test]
    fn display() {
        let a = Abelianization { free_rank: 2, torsion: ints(&[3]) };
        assert_eq!(a.to_string(), "Z^2 + Z/3");
    }

    /// Brute-force oracle: the product of the invariant factors equals the gcd
    /// of the maximal minors, computed by cofactor expansion.
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn factors_divide_and_match_determinant(v in proptest::collection::vec(-6i64..7, 9)) {
            let m: Vec<Vec<i64>> = v.chunks(3).map(|c| c.to_vec()).collect();
            let f = smith_normal_form(&m);
            for w in f.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            let d = det(&m).abs();
            if d == 0 {
                prop_assert!(f.len() < 3);
            } else {
                prop_assert_eq!(f.iter().product::<BigInt>(), BigInt::from(d));
            }
            prop_assert_eq!(f.first().cloned().unwrap_or_default(), {
                let g = v.iter().fold(0i64, |a, &b| a.gcd(&b));
                BigInt::from(g)
            });
        }
    }
}
