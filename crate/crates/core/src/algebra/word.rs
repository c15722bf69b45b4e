use std::collections::HashMap;
use std::fmt;

use super::quandle::FiniteQuandle;
use super::AlgebraError;

/// One operator letter: a generator index acting by `*` (`sign = 1`) or `*̄` (`sign = -1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: usize, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: -self.sign }
    }
}

/// A word in the exponent line, acting left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorWord(pub Vec<Letter>);

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        OperatorWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated(&self, by: usize) -> OperatorWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = by % v.len();
            v.rotate_left(k);
        }
        OperatorWord(v)
    }

    /// Renders with the given generator names, barred letters as `name~`.
    pub fn render(&self, names: &[String]) -> String {
        self.0
            .iter()
            .map(|l| if l.sign > 0 { names[l.generator].clone() } else { format!("{}~", names[l.generator]) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}{}", l.generator, if l.sign > 0 { "" } else { "~" })?;
        }
        Ok(())
    }
}

/// Something that maps generators to quandle elements.
pub trait Assignment {
    fn element_of(&self, generator: usize) -> Option<usize>;
}

impl Assignment for [usize] {
    fn element_of(&self, generator: usize) -> Option<usize> {
        self.get(generator).copied()
    }
}

impl Assignment for Vec<usize> {
    fn element_of(&self, generator: usize) -> Option<usize> {
        self.get(generator).copied()
    }
}

impl Assignment for [Option<usize>] {
    fn element_of(&self, generator: usize) -> Option<usize> {
        self.get(generator).copied().flatten()
    }
}

impl Assignment for HashMap<usize, usize> {
    fn element_of(&self, generator: usize) -> Option<usize> {
        self.get(&generator).copied()
    }
}

/// `x^w`: `x` acted on left to right by each letter of `w`.
pub fn apply_operator_word<A: Assignment + ?Sized>(
    quandle: &FiniteQuandle,
    x: usize,
    word: &OperatorWord,
    assignment: &A,
) -> Result<usize, AlgebraError> {
    word.0.iter().try_fold(x, |acc, l| {
        let b = assignment.element_of(l.generator).ok_or(AlgebraError::UnassignedGenerator(l.generator))?;
        Ok(quandle.op_signed(acc, b, l.sign))
    })
}
