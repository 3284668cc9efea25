//! Homogeneous multiplicative filtrations on toric section rings: jumping
//! numbers, the series `V_t`, Rees semigroups, filtered bodies and concave
//! transforms.
//!
//! Filtrations are monomial: each degree-`d` piece has the monomial basis of
//! its series and every basis element carries a rational level, so `F_t(d)`
//! is spanned by the monomials of level `≥ t`.

mod transform;

pub use transform::{
    bc_volume_check, concave_transform_i, concave_transform_ii, filtered_body, homogeneity_check,
    rees_algebra_check, rees_volume_slice_check, transforms_agree_check, uniform_grid, BcReport,
    FilteredBody, HomogeneityReport, ReesAlgebraReport, SliceCheck, TransformI, TransformII,
    TransformsReport,
};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::rational::{ceil_int, dot, floor_int, int, QVec, Rational};
use crate::geometry::{Halfspace, Polytope};
use crate::semigroup::GradedSemigroup;
use crate::series::{GradedSeries, LatticeSeries};
use crate::valuation::{lex_to_qvec, LaurentPoly, Valuation};

/// How levels are assigned to the monomials of each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiltrationKind {
    /// `level(x^α, d) = ℓ·α + d·c`: order of vanishing along a toric divisor.
    OrdDivisor { functional: QVec, offset: Rational },
    /// Levels listed per degree and exponent, up to a maximal degree.
    Explicit {
        levels: BTreeMap<u64, BTreeMap<Vec<i64>, Rational>>,
    },
    /// `level_a = a·level`.
    Rescale {
        base: Box<FiltrationKind>,
        a: Rational,
    },
}

impl FiltrationKind {
    fn level(&self, d: u64, e: &[i64]) -> Option<Rational> {
        match self {
            FiltrationKind::OrdDivisor { functional, offset } => {
                let a: QVec = e.iter().map(|&x| int(x)).collect();
                Some(dot(functional, &a) + offset * int(d as i64))
            }
            FiltrationKind::Explicit { levels } => levels.get(&d).and_then(|m| m.get(e)).cloned(),
            FiltrationKind::Rescale { base, a } => base.level(d, e).map(|l| l * a),
        }
    }

    fn max_degree(&self) -> Option<u64> {
        match self {
            FiltrationKind::OrdDivisor { .. } => None,
            FiltrationKind::Explicit { levels } => Some(levels.keys().copied().max().unwrap_or(0)),
            FiltrationKind::Rescale { base, .. } => base.max_degree(),
        }
    }

    /// `(ℓ, c)` when the levels are `ℓ·α + d·c`.
    fn as_linear(&self) -> Option<(QVec, Rational)> {
        match self {
            FiltrationKind::OrdDivisor { functional, offset } => {
                Some((functional.clone(), offset.clone()))
            }
            FiltrationKind::Explicit { .. } => None,
            FiltrationKind::Rescale { base, a } => base
                .as_linear()
                .map(|(l, c)| (l.iter().map(|x| x * a).collect(), c * a)),
        }
    }
}

/// A monomial filtration on the section ring of a toric series.
#[derive(Clone, Debug)]
pub struct HomogeneousFiltration {
    series: LatticeSeries,
    kind: FiltrationKind,
}

/// Sorted levels of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JumpingProfile {
    pub degree: u64,
    /// `e_1 ≥ e_2 ≥ … ≥ e_N`, `N = dim R_d`.
    pub levels: Vec<Rational>,
    pub mass: Rational,
    pub mass_plus: Rational,
}

impl JumpingProfile {
    /// `e_j = sup{t : dim F_t(d) ≥ j}`, 1-based.
    pub fn jumping_number(&self, j: usize) -> Option<&Rational> {
        self.levels.get(j.checked_sub(1)?)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "levels": self.levels.to_json(),
            "mass": self.mass.to_json(),
            "mass_plus": self.mass_plus.to_json(),
        })
    }
}

/// Floor `B` of a Rees semigroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Floor {
    Zero,
    EMin,
}

impl HomogeneousFiltration {
    pub fn new(series: LatticeSeries, kind: FiltrationKind) -> Result<HomogeneousFiltration> {
        if let Some((l, _)) = kind.as_linear() {
            if l.len() != series.dim() {
                return Err(Error::DimensionMismatch {
                    expected: series.dim(),
                    got: l.len(),
                });
            }
        }
        if let FiltrationKind::Rescale { a, .. } = &kind {
            if !a.is_positive() {
                return Err(Error::InvalidFiltration(
                    "rescaling factor must be positive".into(),
                ));
            }
        }
        let f = HomogeneousFiltration { series, kind };
        if let Some(m) = f.kind.max_degree() {
            // completeness: every basis element has a level
            for d in 1..=m {
                for e in f.series.exponents(d)? {
                    if f.kind.level(d, &e).is_none() {
                        return Err(Error::InvalidFiltration(format!(
                            "no level for x^{e:?} in degree {d}"
                        )));
                    }
                }
            }
        }
        Ok(f)
    }

    /// `ord_Z` for the toric divisor with functional `ℓ` and offset `c`.
    pub fn ord_divisor(
        series: LatticeSeries,
        functional: QVec,
        offset: Rational,
    ) -> Result<HomogeneousFiltration> {
        Self::new(series, FiltrationKind::OrdDivisor { functional, offset })
    }

    pub fn trivial(series: LatticeSeries) -> HomogeneousFiltration {
        let n = series.dim();
        HomogeneousFiltration {
            series,
            kind: FiltrationKind::OrdDivisor {
                functional: vec![Rational::zero(); n],
                offset: Rational::zero(),
            },
        }
    }

    pub fn rescale(&self, a: Rational) -> Result<HomogeneousFiltration> {
        Self::new(
            self.series.clone(),
            FiltrationKind::Rescale {
                base: Box::new(self.kind.clone()),
                a,
            },
        )
    }

    pub fn series(&self) -> &LatticeSeries {
        &self.series
    }

    pub fn kind(&self) -> &FiltrationKind {
        &self.kind
    }

    /// Degrees for which levels are known.
    pub fn max_degree(&self) -> Option<u64> {
        self.kind.max_degree()
    }

    fn check_degree(&self, d: u64) -> Result<()> {
        match self.max_degree() {
            Some(m) if d > m => Err(Error::InvalidFiltration(format!(
                "levels of degree {d} were not supplied"
            ))),
            _ => Ok(()),
        }
    }

    /// Largest `t` with `x^e ∈ F_t(d)`.
    pub fn level(&self, d: u64, e: &[i64]) -> Result<Rational> {
        if d == 0 {
            return Ok(Rational::zero());
        }
        self.check_degree(d)?;
        self.kind
            .level(d, e)
            .ok_or_else(|| Error::InvalidFiltration(format!("no level for x^{e:?} in degree {d}")))
    }

    /// `(exponent, level)` over the monomial basis of `R_d`.
    pub fn levels(&self, d: u64) -> Result<Vec<(Vec<i64>, Rational)>> {
        self.series
            .exponents(d)?
            .into_iter()
            .map(|e| self.level(d, &e).map(|l| (e, l)))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        match self.kind.as_linear() {
            Some((l, c)) => l.iter().all(Zero::is_zero) && c.is_zero(),
            None => false,
        }
    }

    /// Denominator `q` of the index group `(1/q)ℤ` containing all levels.
    pub fn index_denominator(&self) -> Result<BigInt> {
        let mut q = BigInt::one();
        match self.kind.as_linear() {
            Some((l, c)) => {
                for x in l.iter().chain(std::iter::once(&c)) {
                    q = q.lcm(x.denom());
                }
            }
            None => {
                let m = self.max_degree().unwrap_or(0);
                for d in 1..=m {
                    for (_, lv) in self.levels(d)? {
                        q = q.lcm(lv.denom());
                    }
                }
            }
        }
        Ok(q)
    }

    /// `(e_min, e_max)`: exact for linear levels, the extremes of `e_j(d)/d`
    /// over the supplied degrees otherwise.
    pub fn level_bounds(&self) -> Result<(Rational, Rational)> {
        match self.kind.as_linear() {
            Some((l, c)) => {
                let p = self.series.polytope();
                let lo = p
                    .min_of(&l)
                    .ok_or_else(|| Error::InvalidFiltration("empty series".into()))?;
                let hi = p.max_of(&l).expect("nonempty");
                Ok((lo + &c, hi + c))
            }
            None => {
                let m = self.max_degree().unwrap_or(0);
                let mut bounds: Option<(Rational, Rational)> = None;
                for d in 1..=m {
                    let dd = int(d as i64);
                    for (_, lv) in self.levels(d)? {
                        let x = lv / &dd;
                        bounds = Some(match bounds {
                            None => (x.clone(), x),
                            Some((lo, hi)) => (lo.min(x.clone()), hi.max(x)),
                        });
                    }
                }
                bounds.ok_or_else(|| Error::InvalidFiltration("no levels supplied".into()))
            }
        }
    }

    pub fn e_min(&self) -> Result<Rational> {
        Ok(self.level_bounds()?.0)
    }

    pub fn e_max(&self) -> Result<Rational> {
        Ok(self.level_bounds()?.1)
    }

    pub fn jumping_profile(&self, d: u64) -> Result<JumpingProfile> {
        let mut levels: Vec<Rational> = self.levels(d)?.into_iter().map(|(_, l)| l).collect();
        levels.sort_by(|a, b| b.cmp(a));
        let mass: Rational = levels.iter().sum();
        let mass_plus: Rational = levels.iter().filter(|l| l.is_positive()).sum();
        Ok(JumpingProfile {
            degree: d,
            levels,
            mass,
            mass_plus,
        })
    }

    /// `dim F_t(d)` by direct counting.
    pub fn dim_at(&self, d: u64, t: &Rational) -> Result<usize> {
        Ok(self.levels(d)?.iter().filter(|(_, l)| l >= t).count())
    }

    /// Checks `level(x^{α+β}) ≥ level(x^α) + level(x^β)` on all pairs of
    /// degrees `d₁, d₂` with `d₁ + d₂ ≤ max_degree`; returns the number of
    /// products tested.
    pub fn check_multiplicative(&self, max_degree: u64) -> Result<usize> {
        let mut tested = 0;
        for d1 in 1..max_degree {
            for d2 in d1..=max_degree - d1 {
                let (l1, l2) = (self.levels(d1)?, self.levels(d2)?);
                for (a, la) in &l1 {
                    for (b, lb) in &l2 {
                        let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        if self.level(d1 + d2, &ab)? < la + lb {
                            return Err(Error::InvalidFiltration(format!(
                                "level of x^{ab:?} below the sum of the levels of its factors"
                            )));
                        }
                        tested += 1;
                    }
                }
            }
        }
        Ok(tested)
    }

    /// `V_t(•)` with `V_t(d) = F_{td}(d)`.
    pub fn vt_series(&self, t: &Rational) -> VtSeries {
        VtSeries {
            filtration: self.clone(),
            t: t.clone(),
        }
    }

    /// For linear levels, `V_t` is the series of `P ∩ {ℓ·α + c ≥ t}`.
    pub fn vt_polytope(&self, t: &Rational) -> Option<Polytope> {
        let (l, c) = self.kind.as_linear()?;
        let neg: QVec = l.iter().map(|x| -x).collect();
        Some(
            self.series
                .polytope()
                .intersect(&[Halfspace::new(neg, c - t)], &[]),
        )
    }

    fn floor_value(&self, floor: Floor) -> Result<Rational> {
        match floor {
            Floor::Zero => Ok(Rational::zero()),
            Floor::EMin => self.e_min(),
        }
    }

    /// `Σ_{v,F,B} = {(m, x, t) : t ≥ Bm, x ∈ v(F_t(m))}` with `t` in the
    /// index group; payload `(x, t)`.
    pub fn rees_semigroup(&self, v: &Valuation, floor: Floor) -> Result<GradedSemigroup> {
        let b = self.floor_value(floor)?;
        let q = Rational::from_integer(self.index_denominator()?);
        let mono = v.as_monomial();
        let me = self.clone();
        let rank = mono.value_rank();
        Ok(GradedSemigroup::from_enumerator(
            rank + 1,
            Arc::new(move |m| {
                let lo = &b * int(m as i64);
                let mut out = Vec::new();
                for (e, level) in me.levels(m)? {
                    let x = lex_to_qvec(&mono.monomial_value(&e)?);
                    let (k0, k1) = (ceil_int(&(&lo * &q)), floor_int(&(&level * &q)));
                    let mut k = k0;
                    while k <= k1 {
                        let mut p = x.clone();
                        p.push(Rational::from_integer(k.clone()) / &q);
                        out.push(p);
                        k += 1;
                    }
                }
                out.sort();
                Ok(out)
            }),
        ))
    }

    pub fn to_json(&self) -> Value {
        match self.kind.as_linear() {
            Some((l, c)) => {
                json!({"type": "linear", "functional": l.to_json(), "offset_per_degree": c.to_json()})
            }
            None => json!({"type": "explicit_levels", "max_degree": self.max_degree()}),
        }
    }
}

/// The graded series `V_t(•)` of a filtration.
#[derive(Clone, Debug)]
pub struct VtSeries {
    filtration: HomogeneousFiltration,
    t: Rational,
}

impl VtSeries {
    /// Least common denominator of the vertices of `V_t`'s polytope, when
    /// the levels are linear: the degree by which every vertex is reached.
    pub fn vertex_denominator(&self) -> u64 {
        self.filtration
            .vt_polytope(&self.t)
            .map(|p| {
                p.vertices()
                    .iter()
                    .flatten()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
                    .to_u64()
                    .unwrap_or(u64::MAX)
            })
            .unwrap_or(1)
    }
}

impl GradedSeries for VtSeries {
    fn nvars(&self) -> usize {
        self.filtration.series.dim()
    }

    fn sections(&self, d: u64) -> Result<Vec<LaurentPoly>> {
        if d == 0 {
            return self.filtration.series.sections(0);
        }
        let td = &self.t * int(d as i64);
        Ok(self
            .filtration
            .levels(d)?
            .into_iter()
            .filter(|(_, l)| *l >= td)
            .map(|(e, _)| LaurentPoly::monomial(e))
            .collect())
    }

    fn known_up_to(&self) -> Option<u64> {
        self.filtration.max_degree()
    }
}

/// JSON form of a filtration.
#[derive(Clone, Debug, serde::Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FiltrationSpec {
    OrdDivisor {
        #[serde(deserialize_with = "crate::exact::json::de")]
        functional: QVec,
        #[serde(deserialize_with = "crate::exact::json::de", default = "zero_rational")]
        offset_per_degree: Rational,
    },
    ExplicitLevels {
        levels: BTreeMap<String, Vec<ExplicitLevel>>,
    },
    Rescale {
        base: Box<FiltrationSpec>,
        #[serde(deserialize_with = "crate::exact::json::de")]
        a: Rational,
    },
}

#[derive(Clone, Debug, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitLevel {
    pub exponent: Vec<i64>,
    #[serde(deserialize_with = "crate::exact::json::de")]
    pub level: Rational,
}

fn zero_rational() -> Rational {
    Rational::zero()
}

impl FiltrationSpec {
    fn kind(&self) -> Result<FiltrationKind> {
        Ok(match self {
            FiltrationSpec::OrdDivisor {
                functional,
                offset_per_degree,
            } => FiltrationKind::OrdDivisor {
                functional: functional.clone(),
                offset: offset_per_degree.clone(),
            },
            FiltrationSpec::ExplicitLevels { levels } => {
                let mut out = BTreeMap::new();
                for (d, entries) in levels {
                    let d: u64 = d.parse().map_err(|_| {
                        Error::InvalidInput(format!("degree key {d:?} is not an integer"))
                    })?;
                    out.insert(
                        d,
                        entries
                            .iter()
                            .map(|x| (x.exponent.clone(), x.level.clone()))
                            .collect(),
                    );
                }
                FiltrationKind::Explicit { levels: out }
            }
            FiltrationSpec::Rescale { base, a } => FiltrationKind::Rescale {
                base: Box::new(base.kind()?),
                a: a.clone(),
            },
        })
    }

    pub fn build(&self, series: LatticeSeries) -> Result<HomogeneousFiltration> {
        HomogeneousFiltration::new(series, self.kind()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{qvec, rat};
    use crate::series::examples::{p1xp1, projective_space};

    fn p1_ord0() -> HomogeneousFiltration {
        HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(0)).unwrap()
    }

    fn p2_line() -> HomogeneousFiltration {
        HomogeneousFiltration::ord_divisor(projective_space(2, 1), qvec(&[1, 0]), int(0)).unwrap()
    }

    #[test]
    fn ord_divisor_bounds() {
        let f = p2_line();
        assert_eq!(f.level_bounds().unwrap(), (int(0), int(1)));
        let inf =
            HomogeneousFiltration::ord_divisor(projective_space(2, 1), qvec(&[-1, -1]), int(1))
                .unwrap();
        assert_eq!(inf.level(3, &[1, 1]).unwrap(), int(1));
        assert_eq!(inf.level_bounds().unwrap(), (int(0), int(1)));
        let t = HomogeneousFiltration::trivial(projective_space(2, 1));
        assert!(t.is_trivial());
        assert_eq!(t.level_bounds().unwrap(), (int(0), int(0)));
    }

    #[test]
    fn jumping_profiles() {
        let f = p1_ord0();
        let j1 = f.jumping_profile(1).unwrap();
        assert_eq!(
            (j1.levels.clone(), j1.mass.clone(), j1.mass_plus.clone()),
            (vec![int(1), int(0)], int(1), int(1))
        );
        let j2 = f.jumping_profile(2).unwrap();
        assert_eq!(
            (j2.levels.clone(), j2.mass.clone()),
            (vec![int(2), int(1), int(0)], int(3))
        );
        // e_j by dimension counting
        for j in 1..=3 {
            let e = j2.jumping_number(j).unwrap();
            assert!(f.dim_at(2, e).unwrap() >= j);
            assert!(f.dim_at(2, &(e + rat(1, 2))).unwrap() < j);
        }
        let t = HomogeneousFiltration::trivial(projective_space(1, 1));
        assert_eq!(t.jumping_profile(3).unwrap().mass, int(0));
    }

    #[test]
    fn vt_series_dimensions() {
        let f = p2_line();
        assert_eq!(f.vt_series(&rat(1, 2)).sections(2).unwrap().len(), 3);
        assert_eq!(f.vt_series(&int(0)).sections(2).unwrap().len(), 6);
        assert_eq!(f.vt_series(&rat(3, 2)).sections(2).unwrap().len(), 0);
    }

    #[test]
    fn rees_semigroup_levels() {
        let f = p1_ord0();
        let s = f.rees_semigroup(&Valuation::lex(1), Floor::Zero).unwrap();
        assert_eq!(
            s.level(1).unwrap(),
            vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1])]
        );
        let t = HomogeneousFiltration::trivial(projective_space(1, 1))
            .rees_semigroup(&Valuation::lex(1), Floor::Zero)
            .unwrap();
        assert_eq!(
            t.level(2).unwrap(),
            vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[2, 0])]
        );
        // shifted: level α - d, e_min = -1
        let g = HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(-1))
            .unwrap();
        let r = g.rees_semigroup(&Valuation::lex(1), Floor::EMin).unwrap();
        assert_eq!(
            r.level(1).unwrap(),
            vec![qvec(&[0, -1]), qvec(&[1, -1]), qvec(&[1, 0])]
        );
    }

    #[test]
    fn multiplicativity_and_bounds() {
        let f =
            HomogeneousFiltration::ord_divisor(p1xp1(1, 2), vec![int(1), rat(1, 2)], rat(-1, 3))
                .unwrap();
        assert!(f.check_multiplicative(4).unwrap() > 0);
        let (lo, hi) = f.level_bounds().unwrap();
        for d in 1..=4 {
            let j = f.jumping_profile(d).unwrap();
            let dd = int(d as i64);
            assert!(j.levels.windows(2).all(|w| w[0] >= w[1]));
            assert!(j.levels.iter().all(|e| lo <= e / &dd && e / &dd <= hi));
        }
        assert_eq!(f.index_denominator().unwrap(), BigInt::from(6));
    }

    #[test]
    fn explicit_levels() {
        let mut levels = BTreeMap::new();
        levels.insert(
            1,
            [(vec![0], int(0)), (vec![1], int(1))].into_iter().collect(),
        );
        levels.insert(
            2,
            [(vec![0], int(0)), (vec![1], int(1)), (vec![2], int(2))]
                .into_iter()
                .collect(),
        );
        let f = HomogeneousFiltration::new(
            projective_space(1, 1),
            FiltrationKind::Explicit {
                levels: levels.clone(),
            },
        )
        .unwrap();
        assert_eq!(f.jumping_profile(2).unwrap().mass, int(3));
        assert!(f.jumping_profile(3).is_err());
        levels.get_mut(&2).unwrap().remove(&vec![1]);
        let bad =
            HomogeneousFiltration::new(projective_space(1, 1), FiltrationKind::Explicit { levels });
        assert!(matches!(bad, Err(Error::InvalidFiltration(_))));
        let spec: FiltrationSpec = serde_json::from_str(
            r#"{"type":"rescale","a":[2,1],"base":{"type":"ord_divisor","functional":[1]}}"#,
        )
        .unwrap();
        let r = spec.build(projective_space(1, 1)).unwrap();
        assert_eq!(r.level(1, &[1]).unwrap(), int(2));
    }
}
