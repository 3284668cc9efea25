//! Laurent polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::exact::rational::{fmt_rational, Rational};

/// A Laurent polynomial in `n` variables; the support is kept sorted and
/// coefficients are never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> LaurentPoly {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> LaurentPoly {
        LaurentPoly::from_terms(n, [(vec![0; n], c)])
    }

    pub fn monomial(exponent: Vec<i64>) -> LaurentPoly {
        let n = exponent.len();
        LaurentPoly::from_terms(n, [(exponent, Rational::one())])
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(
        n: usize,
        terms: impl IntoIterator<Item = (Vec<i64>, Rational)>,
    ) -> LaurentPoly {
        let mut p = LaurentPoly::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &[i64]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// The single exponent of a monomial (coefficient ignored).
    pub fn as_monomial(&self) -> Option<&Vec<i64>> {
        (self.terms.len() == 1).then(|| self.terms.keys().next().expect("one term"))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    /// Multiplication by the monomial `x^e`.
    pub fn shift(&self, e: &[i64]) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.iter().zip(e).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        }
    }

    /// Keeps the terms whose `var`-exponent equals `k` and drops that variable.
    pub fn restrict(&self, var: usize, k: i64) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] == k)
            .map(|(e, c)| {
                let mut e = e.clone();
                e.remove(var);
                (e, c.clone())
            });
        LaurentPoly {
            n: self.n - 1,
            terms: terms.collect(),
        }
    }

    /// Lowest exponent of `var` in the support.
    pub fn order_in(&self, var: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[var]).min()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", fmt_rational(c))?;
            for (j, a) in e.iter().enumerate() {
                if *a != 0 {
                    write!(f, "*x{}^{}", j + 1, a)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn arithmetic() {
        let x = LaurentPoly::monomial(vec![1, 0]);
        let y = LaurentPoly::monomial(vec![0, 1]);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coefficient(&[1, 1]), int(2));
        assert_eq!(sq.len(), 3);
        assert!(s.sub(&s).is_zero());
        let inv = LaurentPoly::monomial(vec![-1, 0]);
        assert_eq!(inv.mul(&x), LaurentPoly::constant(2, int(1)));
        assert_eq!(sq.restrict(0, 0), LaurentPoly::monomial(vec![2]));
        assert_eq!(sq.order_in(1), Some(0));
    }
}
