//! Valuations of maximal rational rank on Laurent polynomial fields:
//! weighted-lex monomial valuations, flag valuations in a coordinate chart and
//! composite valuations, together with value semigroups of graded series.

mod laurent;
mod values;

pub use laurent::LaurentPoly;
pub use values::{
    center_avoided, raw_section_value, section_value, triangularize, value_semigroup, values_at,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::lex::LexValue;
use crate::exact::linalg::rank;
use crate::exact::rational::{int, QVec, Rational};

/// `v(Σ a_α x^α) = lexmin { Σ α_i γ_i : a_α ≠ 0 }` with `γ_i ∈ ℤʳ_lex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialValuation {
    /// Row `i` is the weight `γ_i` of the variable `x_i`.
    weights: Vec<Vec<i64>>,
}

impl MonomialValuation {
    pub fn new(weights: Vec<Vec<i64>>) -> Result<MonomialValuation> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::InvalidValuation("no variables".into()));
        }
        let r = weights[0].len();
        if weights.iter().any(|w| w.len() != r) {
            return Err(Error::InvalidValuation(
                "weights of different lengths".into(),
            ));
        }
        if let Some(i) = weights
            .iter()
            .position(|w| !LexValue(w.clone()).is_positive())
        {
            return Err(Error::InvalidValuation(format!(
                "weight of x{} is not lex-positive",
                i + 1
            )));
        }
        let rows: Vec<QVec> = weights
            .iter()
            .map(|w| w.iter().map(|&x| int(x)).collect())
            .collect();
        if rank(&rows) != n {
            return Err(Error::InvalidValuation(format!(
                "weights have rational rank {} < {n}",
                rank(&rows)
            )));
        }
        Ok(MonomialValuation { weights })
    }

    /// Rational weights; each value coordinate is rescaled by a positive
    /// integer so the weights become integral, which preserves the order.
    pub fn from_rational(weights: &[QVec]) -> Result<MonomialValuation> {
        let r = weights.first().map_or(0, Vec::len);
        let mut scale = vec![BigInt::one(); r];
        for w in weights {
            for (s, x) in scale.iter_mut().zip(w) {
                *s = s.lcm(x.denom());
            }
        }
        let ints = weights
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&scale)
                    .map(|(x, s)| {
                        (x * Rational::from_integer(s.clone()))
                            .to_integer()
                            .to_i64()
                            .ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ints)
    }

    /// Unit weights: the lex order on exponents.
    pub fn lex(n: usize) -> MonomialValuation {
        MonomialValuation {
            weights: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn value_rank(&self) -> usize {
        self.weights[0].len()
    }

    pub fn monomial_value(&self, e: &[i64]) -> Result<LexValue> {
        let mut v = vec![0i64; self.value_rank()];
        for (a, w) in e.iter().zip(&self.weights) {
            for (vj, wj) in v.iter_mut().zip(w) {
                *vj = a
                    .checked_mul(*wj)
                    .and_then(|p| vj.checked_add(p))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(LexValue(v))
    }

    pub fn evaluate(&self, f: &LaurentPoly) -> Result<LexValue> {
        check_vars(f, self.nvars())?;
        let mut best: Option<LexValue> = None;
        for e in f.support() {
            let v = self.monomial_value(e)?;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        best.ok_or(Error::ZeroPolynomial)
    }
}

fn check_vars(f: &LaurentPoly, n: usize) -> Result<()> {
    if f.nvars() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.nvars(),
        });
    }
    Ok(())
}

/// A full flag of coordinate subvarieties `Y_i = {x_{o_1} = … = x_{o_i} = 0}`
/// in one chart, given by the order `o` in which coordinates are cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagSpec {
    order: Vec<usize>,
}

impl FlagSpec {
    pub fn new(order: Vec<usize>) -> Result<FlagSpec> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (0..order.len()).collect::<Vec<_>>() {
            return Err(Error::InvalidValuation(format!(
                "flag order {order:?} is not a permutation"
            )));
        }
        Ok(FlagSpec { order })
    }

    pub fn standard(n: usize) -> FlagSpec {
        FlagSpec {
            order: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Divide-and-restrict: `v_i = ord_{Y_i}(f_{i-1})`, then
    /// `f_i = (f_{i-1} / g_i^{v_i})|_{Y_i}`.
    pub fn evaluate(&self, f: &LaurentPoly) -> Result<LexValue> {
        check_vars(f, self.order.len())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (values, _) = divide_and_restrict(f, &self.order);
        Ok(LexValue(values))
    }

    /// The same valuation as a monomial valuation with unit weights.
    pub fn to_monomial(&self) -> MonomialValuation {
        let n = self.order.len();
        let mut weights = vec![vec![0i64; n]; n];
        for (k, &var) in self.order.iter().enumerate() {
            weights[var][k] = 1;
        }
        MonomialValuation { weights }
    }
}

/// Runs divide-and-restrict along `vars` (original indices); returns the
/// orders and the residual polynomial in the remaining variables, which keep
/// their relative order.
fn divide_and_restrict(f: &LaurentPoly, vars: &[usize]) -> (Vec<i64>, LaurentPoly) {
    let mut g = f.clone();
    let mut alive: Vec<usize> = (0..f.nvars()).collect();
    let mut values = Vec::with_capacity(vars.len());
    for &var in vars {
        let pos = alive.iter().position(|&a| a == var).expect("flag variable");
        let k = g.order_in(pos).expect("nonzero polynomial");
        values.push(k);
        g = g.restrict(pos, k);
        alive.remove(pos);
    }
    (values, g)
}

/// A partial flag of length `r` followed by a monomial valuation on the
/// residual coordinates, valued in `ℤʳ × Γ̄` with the block-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeValuation {
    flag: Vec<usize>,
    residual: MonomialValuation,
}

impl CompositeValuation {
    pub fn new(
        n: usize,
        flag: Vec<usize>,
        residual: MonomialValuation,
    ) -> Result<CompositeValuation> {
        let mut sorted = flag.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != flag.len() || sorted.iter().any(|&v| v >= n) {
            return Err(Error::InvalidValuation(format!(
                "partial flag {flag:?} is not a set of distinct coordinates"
            )));
        }
        if residual.nvars() != n - flag.len() {
            return Err(Error::InvalidValuation(format!(
                "residual valuation has {} variables, expected {}",
                residual.nvars(),
                n - flag.len()
            )));
        }
        Ok(CompositeValuation { flag, residual })
    }

    pub fn nvars(&self) -> usize {
        self.flag.len() + self.residual.nvars()
    }

    pub fn evaluate(&self, f: &LaurentPoly) -> Result<LexValue> {
        check_vars(f, self.nvars())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut values, rest) = divide_and_restrict(f, &self.flag);
        values.extend(self.residual.evaluate(&rest)?.0);
        Ok(LexValue(values))
    }

    /// The block weight matrix realizing the same valuation.
    pub fn to_monomial(&self) -> MonomialValuation {
        let (n, r, rr) = (self.nvars(), self.flag.len(), self.residual.value_rank());
        let mut weights = vec![vec![0i64; r + rr]; n];
        for (k, &var) in self.flag.iter().enumerate() {
            weights[var][k] = 1;
        }
        let rest: Vec<usize> = (0..n).filter(|v| !self.flag.contains(v)).collect();
        for (j, &var) in rest.iter().enumerate() {
            weights[var][r..].clone_from_slice(&self.residual.weights[j]);
        }
        MonomialValuation { weights }
    }
}

/// Any of the supported valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Valuation {
    Monomial(MonomialValuation),
    Flag(FlagSpec),
    Composite(CompositeValuation),
}

impl Valuation {
    pub fn evaluate(&self, f: &LaurentPoly) -> Result<LexValue> {
        match self {
            Valuation::Monomial(v) => v.evaluate(f),
            Valuation::Flag(v) => v.evaluate(f),
            Valuation::Composite(v) => v.evaluate(f),
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            Valuation::Monomial(v) => v.nvars(),
            Valuation::Flag(v) => v.order.len(),
            Valuation::Composite(v) => v.nvars(),
        }
    }

    pub fn as_monomial(&self) -> MonomialValuation {
        match self {
            Valuation::Monomial(v) => v.clone(),
            Valuation::Flag(v) => v.to_monomial(),
            Valuation::Composite(v) => v.to_monomial(),
        }
    }

    pub fn value_rank(&self) -> usize {
        self.as_monomial().value_rank()
    }

    pub fn lex(n: usize) -> Valuation {
        Valuation::Flag(FlagSpec::standard(n))
    }
}

/// JSON form of a valuation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ValuationSpec {
    Monomial {
        weights: Vec<Vec<i64>>,
    },
    Flag {
        chart: Vec<usize>,
    },
    Composite {
        flag: Vec<usize>,
        residual: Vec<Vec<i64>>,
    },
}

impl ValuationSpec {
    pub fn build(&self, n: usize) -> Result<Valuation> {
        let v = match self {
            ValuationSpec::Monomial { weights } => {
                Valuation::Monomial(MonomialValuation::new(weights.clone())?)
            }
            ValuationSpec::Flag { chart } => Valuation::Flag(FlagSpec::new(chart.clone())?),
            ValuationSpec::Composite { flag, residual } => {
                Valuation::Composite(CompositeValuation::new(
                    n,
                    flag.clone(),
                    MonomialValuation::new(residual.clone())?,
                )?)
            }
        };
        if v.nvars() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.nvars(),
            });
        }
        Ok(v)
    }
}

/// Value coordinates as rationals.
pub fn lex_to_qvec(v: &LexValue) -> QVec {
    v.0.iter().map(|&x| int(x)).collect()
}
