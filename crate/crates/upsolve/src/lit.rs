//! Boolean variables and literals shared by the encoder, the translator and
//! the solvers.
//!
//! Variables are dense indices starting at 0 internally; every textual
//! interface (OPB, DIMACS, WCNF) uses the conventional 1-based numbering.

use std::fmt;

/// A Boolean variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn from_index(index: usize) -> Var {
        Var(index as u32)
    }

    /// 0-based dense index.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// 1-based number used by OPB/DIMACS/WCNF text.
    #[inline]
    pub fn number(self) -> u32 {
        self.0 + 1
    }

    /// Positive literal on this variable.
    #[inline]
    pub fn positive(self) -> Lit {
        Lit(self.0 << 1)
    }

    /// Negative literal on this variable.
    #[inline]
    pub fn negative(self) -> Lit {
        Lit(self.0 << 1 | 1)
    }

    #[inline]
    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.positive()
        } else {
            self.negative()
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.number())
    }
}

/// A literal: a variable together with a polarity.
///
/// Encoded as `var << 1 | sign` so that a literal and its negation are
/// adjacent, which keeps watch lists indexable by literal code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    /// Dense code usable as a watch-list index.
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// Signed DIMACS representation: `+n` for positive, `-n` for negative.
    #[inline]
    pub fn to_dimacs(self) -> i64 {
        let n = i64::from(self.var().number());
        if self.is_positive() {
            n
        } else {
            -n
        }
    }

    /// Parse a non-zero signed DIMACS literal.
    pub fn from_dimacs(n: i64) -> Option<Lit> {
        if n == 0 || n.unsigned_abs() > u64::from(u32::MAX) {
            return None;
        }
        let var = Var(n.unsigned_abs() as u32 - 1);
        Some(var.lit(n > 0))
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_negative() {
            write!(f, "~")?;
        }
        write!(f, "{}", self.var())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_flips_polarity_only() {
        let v = Var::from_index(4);
        assert_eq!(!v.positive(), v.negative());
        assert_eq!(!v.negative(), v.positive());
        assert_eq!((!v.positive()).var(), v);
    }

    #[test]
    fn dimacs_round_trip() {
        for n in [1i64, -1, 7, -42] {
            assert_eq!(Lit::from_dimacs(n).unwrap().to_dimacs(), n);
        }
        assert_eq!(Lit::from_dimacs(0), None);
    }
}
