//! Arithmetic in `Z_n[t]/(h)` for Alexander quandles.

use num_integer::Integer;

use super::AlgebraError;

/// Largest ring we are willing to tabulate.
const MAX_SIZE: u64 = 4096;

/// `Z_n[t]/(h)` with `h` made monic. Requires the constant term of `h` to be a
/// unit so that `t` is invertible and the quotient equals `Z_n[t, t^-1]/(h)`.
#[derive(Debug, Clone)]
pub struct AlexanderRing {
    n: u64,
    /// monic modulus, lowest degree first
    modulus: Vec<u64>,
}

pub type Residue = Vec<u64>;

impl AlexanderRing {
    pub fn new(n: u64, coefficients: &[i64]) -> Result<Self, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::InvalidModulus(n));
        }
        let mut h: Vec<u64> = coefficients.iter().map(|&c| c.rem_euclid(n as i64) as u64).collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        if h.len() < 2 {
            return Err(AlgebraError::ConstantModulus);
        }
        let lead = *h.last().unwrap();
        let lead_inv = inverse_mod(lead, n).ok_or(AlgebraError::NonUnitLeadingTerm(lead))?;
        if inverse_mod(h[0], n).is_none() {
            return Err(AlgebraError::NonUnitConstantTerm(h[0]));
        }
        for c in h.iter_mut() {
            *c = *c * lead_inv % n;
        }
        let degree = (h.len() - 1) as u32;
        match n.checked_pow(degree) {
            Some(s) if s <= MAX_SIZE => {}
            _ => return Err(AlgebraError::TooLarge),
        }
        Ok(AlexanderRing { n, modulus: h })
    }

    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn size(&self) -> usize {
        self.n.pow(self.degree() as u32) as usize
    }

    /// The residue with base-`n` digits of `index` as coefficients.
    pub fn element(&self, mut index: usize) -> Residue {
        let mut r = vec![0; self.degree()];
        for c in r.iter_mut() {
            *c = (index as u64) % self.n;
            index /= self.n as usize;
        }
        r
    }

    pub fn index(&self, r: &Residue) -> usize {
        r.iter().rev().fold(0u64, |acc, &c| acc * self.n + c) as usize
    }

    pub fn one(&self) -> Residue {
        let mut r = vec![0; self.degree()];
        r[0] = 1 % self.n;
        r
    }

    pub fn t(&self) -> Residue {
        self.reduce(vec![0, 1])
    }

    pub fn add(&self, a: &Residue, b: &Residue) -> Residue {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.n).collect()
    }

    pub fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        a.iter().zip(b).map(|(x, y)| (x + self.n - y) % self.n).collect()
    }

    pub fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        let mut prod = vec![0u64; a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.n;
            }
        }
        self.reduce(prod)
    }

    fn reduce(&self, mut p: Vec<u64>) -> Residue {
        let d = self.degree();
        for top in (d..p.len()).rev() {
            let c = p[top];
            if c == 0 {
                continue;
            }
            for (i, m) in self.modulus.iter().enumerate() {
                let k = top - d + i;
                p[k] = (p[k] + self.n - c * m % self.n) % self.n;
            }
        }
        p.resize(d, 0);
        p
    }

    /// Renders like `t^2+2t+1`; zero is `0`.
    pub fn render(&self, r: &Residue) -> String {
        let mut terms = Vec::new();
        for (i, &c) in r.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coef,
                1 => format!("{coef}t"),
                _ => format!("{coef}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let e = (a as i64).extended_gcd(&(n as i64));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i64) as u64)
}

/// Parses `t2+t+1`, `t^2+t+1`, `2t+3`, `t-1` into coefficients, lowest degree first.
pub fn parse_poly(text: &str) -> Result<Vec<i64>, AlgebraError> {
    let bad = || AlgebraError::BadPolynomial(text.to_string());
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut coeffs: Vec<i64> = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body[1.min(body.len())..].find(['+', '-']).map_or(body.len(), |i| i + 1);
        let term = &body[..end];
        rest = &body[end..];
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, exp) = match term.find('t') {
            None => (term.parse::<i64>().map_err(|_| bad())?, 0usize),
            Some(pos) => {
                let c = if pos == 0 { 1 } else { term[..pos].parse::<i64>().map_err(|_| bad())? };
                let e = term[pos + 1..].trim_start_matches('^');
                let e = if e.is_empty() { 1 } else { e.parse::<usize>().map_err(|_| bad())? };
                (c, e)
            }
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        coeffs[exp] += sign * coef;
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_shorthand() {
        assert_eq!(parse_poly("t2+t+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_poly("t^2 + t + 1").unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_poly("2t-3").unwrap(), vec![-3, 2]);
        assert!(parse_poly("x+1").is_err());
    }

    #[test]
    fn t_is_a_unit_in_f4() {
        let r = AlexanderRing::new(2, &[1, 1, 1]).unwrap();
        let t = r.t();
        let t3 = r.mul(&t, &r.mul(&t, &t));
        assert_eq!(t3, r.one());
    }

    #[test]
    fn rejects_non_unit_constant() {
        assert!(matches!(AlexanderRing::new(4, &[2, 1]), Err(AlgebraError::NonUnitConstantTerm(2))));
        assert!(matches!(AlexanderRing::new(1, &[1, 1]), Err(AlgebraError::InvalidModulus(1))));
    }
}
