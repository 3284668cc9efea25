//! The lexicographically ordered groups ℤʳ_lex.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of ℤʳ with the lexicographic order.
///
/// The derived `Ord` compares coordinates from the first one on, which is
/// exactly the lex order; addition is componentwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LexValue(pub Vec<i64>);

impl LexValue {
    pub fn zero(rank: usize) -> Self {
        LexValue(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Strictly positive in the lex order.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
    }
}

impl Add for &LexValue {
    type Output = LexValue;
    fn add(self, rhs: &LexValue) -> LexValue {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in lex addition");
        LexValue(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LexValue {
    type Output = LexValue;
    fn sub(self, rhs: &LexValue) -> LexValue {
        assert_eq!(self.rank(), rhs.rank(), "rank mismatch in lex subtraction");
        LexValue(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LexValue {
    type Output = LexValue;
    fn neg(self) -> LexValue {
        LexValue(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lex_order_examples() {
        assert!(LexValue(vec![0, 5]) < LexValue(vec![1, -10]));
        assert!(LexValue(vec![2, 1]) < LexValue(vec![2, 3]));
        assert!(LexValue(vec![0, 1]).is_positive());
        assert!(!LexValue(vec![0, 0]).is_positive());
        assert!(!LexValue(vec![-1, 9]).is_nonnegative());
    }

    proptest! {
        #[test]
        fn order_compatible_with_addition(
            a in proptest::collection::vec(-50i64..50, 3),
            b in proptest::collection::vec(-50i64..50, 3),
            c in proptest::collection::vec(-50i64..50, 3),
        ) {
            let (a, b, c) = (LexValue(a), LexValue(b), LexValue(c));
            if a < b {
                prop_assert!(&a + &c < &b + &c);
            }
            // totality
            prop_assert!(a < b || a == b || a > b);
        }
    }
}
