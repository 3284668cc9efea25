//! Values of sections and value semigroups of graded series.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{lex_to_qvec, LaurentPoly, Valuation};
use crate::error::{Error, Result};
use crate::exact::lex::LexValue;
use crate::exact::rational::QVec;
use crate::geometry::Polytope;
use crate::semigroup::GradedSemigroup;
use crate::series::GradedSeries;

/// Whether the divisor with polytope `p` avoids the chart origin: every
/// coordinate attains the minimum 0 on `p`, so no torus-invariant divisor
/// through the origin appears in the representative.
pub fn center_avoided(p: &Polytope) -> bool {
    !p.is_empty()
        && (0..p.ambient_dim()).all(|i| p.coordinate_range(i).is_some_and(|(lo, _)| lo.is_zero()))
}

/// `v(s)` for a section of the divisor with polytope `divisor`; the
/// representative must avoid the center of `v` (the chart origin).
pub fn section_value(v: &Valuation, s: &LaurentPoly, divisor: &Polytope) -> Result<LexValue> {
    if !center_avoided(divisor) {
        return Err(Error::CenterInSupport);
    }
    let value = v.evaluate(s)?;
    debug_assert!(value.is_nonnegative());
    Ok(value)
}

/// `v(f)` of the rational function itself, with no normalization.
pub fn raw_section_value(v: &Valuation, s: &LaurentPoly) -> Result<LexValue> {
    v.evaluate(s)
}

/// Gaussian elimination in the value order: returns a basis of the same span
/// whose elements have pairwise distinct values, sorted by value.
pub fn triangularize(v: &Valuation, basis: &[LaurentPoly]) -> Result<Vec<(LexValue, LaurentPoly)>> {
    let mono = v.as_monomial();
    // distinct exponents have distinct values (the weights have full rank),
    // so the value is attained at a unique leading exponent
    let lead = |f: &LaurentPoly| -> Result<(LexValue, Vec<i64>)> {
        let mut best: Option<(LexValue, Vec<i64>)> = None;
        for e in f.support() {
            let val = mono.monomial_value(e)?;
            if best.as_ref().is_none_or(|b| val < b.0) {
                best = Some((val, e.clone()));
            }
        }
        best.ok_or(Error::ValueCollision)
    };
    let mut reduced: HashMap<Vec<i64>, (LexValue, LaurentPoly)> = HashMap::new();
    for f in basis {
        let mut g = f.clone();
        loop {
            if g.is_zero() {
                return Err(Error::ValueCollision);
            }
            let (val, e) = lead(&g)?;
            match reduced.get(&e) {
                Some((_, h)) => {
                    let c = g.coefficient(&e) / h.coefficient(&e);
                    g = g.sub(&h.scale(&c));
                }
                None => {
                    reduced.insert(e, (val, g));
                    break;
                }
            }
        }
    }
    let mut out: Vec<(LexValue, LaurentPoly)> = reduced.into_values().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Sorted distinct values `v(R_d)`, one per dimension of `R_d`.
pub fn values_at(series: &dyn GradedSeries, v: &Valuation, d: u64) -> Result<Vec<QVec>> {
    let sections = series.sections(d)?;
    let mono = v.as_monomial();
    let mut vals: Vec<QVec> = if sections.iter().all(|s| s.as_monomial().is_some()) {
        let mut exps: Vec<&Vec<i64>> = sections
            .iter()
            .map(|s| s.as_monomial().expect("monomial"))
            .collect();
        exps.sort();
        if exps.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ValueCollision);
        }
        exps.iter()
            .map(|e| mono.monomial_value(e).map(|x| lex_to_qvec(&x)))
            .collect::<Result<_>>()?
    } else {
        triangularize(v, &sections)?
            .iter()
            .map(|(x, _)| lex_to_qvec(x))
            .collect()
    };
    vals.sort();
    Ok(vals)
}

/// `Σ_v(R) = {(d, v(s)) : 0 ≠ s ∈ R_d}`, presented degree by degree.
pub fn value_semigroup(series: Arc<dyn GradedSeries>, v: &Valuation) -> Result<GradedSemigroup> {
    if v.nvars() != series.nvars() {
        return Err(Error::DimensionMismatch {
            expected: series.nvars(),
            got: v.nvars(),
        });
    }
    let v = v.clone();
    let rank = v.value_rank();
    Ok(GradedSemigroup::from_enumerator(
        rank,
        Arc::new(move |d| values_at(series.as_ref(), &v, d)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, qvec};
    use crate::series::{ExplicitSeries, LatticeSeries};

    fn poly(n: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn p1_section_values() {
        let v = Valuation::lex(1);
        let seg = Polytope::hull(1, &[qvec(&[0]), qvec(&[1])]);
        let vals: Vec<LexValue> = [0, 1]
            .iter()
            .map(|&k| section_value(&v, &LaurentPoly::monomial(vec![k]), &seg).unwrap())
            .collect();
        assert_eq!(vals, vec![LexValue(vec![0]), LexValue(vec![1])]);
        let neg = Polytope::hull(1, &[qvec(&[-2]), qvec(&[-1])]);
        assert_eq!(
            section_value(&v, &LaurentPoly::monomial(vec![-2]), &neg).unwrap_err(),
            Error::CenterInSupport
        );
        assert_eq!(
            raw_section_value(&v, &LaurentPoly::monomial(vec![-2])).unwrap(),
            LexValue(vec![-2])
        );
        let point = Polytope::hull(1, &[qvec(&[0])]);
        assert_eq!(
            section_value(&v, &LaurentPoly::constant(1, int(3)), &point).unwrap(),
            LexValue(vec![0])
        );
    }

    #[test]
    fn unit_factor_does_not_change_values() {
        let v = Valuation::lex(2);
        let unit = poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        for s in [
            poly(2, &[(&[1, 0], 1)]),
            poly(2, &[(&[0, 1], 2), (&[1, 1], 1)]),
        ] {
            assert_eq!(v.evaluate(&s.mul(&unit)).unwrap(), v.evaluate(&s).unwrap());
        }
    }

    #[test]
    fn triangularization() {
        let v = Valuation::lex(2);
        let basis = vec![
            poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]),
            poly(2, &[(&[0, 0], 1), (&[0, 1], 1)]),
        ];
        let t = triangularize(&v, &basis).unwrap();
        let vals: Vec<LexValue> = t.iter().map(|x| x.0.clone()).collect();
        assert_eq!(vals, vec![LexValue(vec![0, 0]), LexValue(vec![0, 1])]);
        let dependent = vec![basis[0].clone(), basis[0].scale(&int(2))];
        assert_eq!(
            triangularize(&v, &dependent).unwrap_err(),
            Error::ValueCollision
        );
    }

    #[test]
    fn value_semigroups() {
        let p2 = Arc::new(LatticeSeries::new(Polytope::simplex(2, &int(1))));
        let s = value_semigroup(p2, &Valuation::lex(2)).unwrap();
        let want: Vec<QVec> = (0..=2)
            .flat_map(|a| (0..=2 - a).map(move |b| qvec(&[a, b])))
            .collect();
        let mut want = want;
        want.sort();
        assert_eq!(s.level(2).unwrap(), want);
        let p1 = Arc::new(LatticeSeries::new(Polytope::hull(
            1,
            &[qvec(&[0]), qvec(&[1])],
        )));
        let t = value_semigroup(p1, &Valuation::lex(1)).unwrap();
        let g = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 1]]).unwrap();
        for d in 0..6 {
            assert_eq!(t.level(d).unwrap(), g.level(d).unwrap());
        }
        let zero = Arc::new(ExplicitSeries::zero(2));
        let z = value_semigroup(zero, &Valuation::lex(2)).unwrap();
        assert_eq!(z.hilbert_function(3).unwrap(), vec![1, 0, 0, 0]);
    }
}
