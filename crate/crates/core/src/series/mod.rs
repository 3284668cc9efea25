//! Graded linear series: the toric test-bed (sections are the lattice points
//! of the multiples of a polytope), explicit per-degree bases, their
//! Newton–Okounkov bodies, the volume identity and the multigraded body.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::lattice::Lattice;
use crate::exact::rational::{int, QVec, Rational};
use crate::geometry::Polytope;
use crate::semigroup::{
    slice_theorem_check, Body, Certification, GradedPoint, GradedSemigroup, SliceReport,
};
use crate::valuation::{center_avoided, lex_to_qvec, value_semigroup, LaurentPoly, Valuation};

/// A graded family of finite-dimensional spaces of Laurent polynomials.
pub trait GradedSeries: Send + Sync + fmt::Debug {
    fn nvars(&self) -> usize;

    /// A basis of the degree-`d` piece.
    fn sections(&self, d: u64) -> Result<Vec<LaurentPoly>>;

    /// Largest degree with known sections; `None` when every degree is known.
    fn known_up_to(&self) -> Option<u64> {
        None
    }
}

/// Sections of `dD` are the monomials `x^α`, `α ∈ dP ∩ ℤⁿ`.
#[derive(Clone, Debug)]
pub struct LatticeSeries {
    polytope: Polytope,
    multigrading: Vec<Polytope>,
}

impl LatticeSeries {
    pub fn new(polytope: Polytope) -> LatticeSeries {
        LatticeSeries {
            polytope,
            multigrading: Vec::new(),
        }
    }

    /// A multigraded series; the total series is the one of `P₁ + … + P_r`.
    pub fn multigraded(parts: Vec<Polytope>) -> Result<LatticeSeries> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("no polytopes in the multigrading".into()))?;
        let n = first.ambient_dim();
        if let Some(p) = parts.iter().find(|p| p.ambient_dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.ambient_dim(),
            });
        }
        let total = parts[1..]
            .iter()
            .fold(first.clone(), |acc, p| acc.minkowski_sum(p));
        Ok(LatticeSeries {
            polytope: total,
            multigrading: parts,
        })
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn multigrading(&self) -> &[Polytope] {
        &self.multigrading
    }

    pub fn dim(&self) -> usize {
        self.polytope.ambient_dim()
    }

    /// Exponents of the degree-`d` sections, sorted.
    pub fn exponents(&self, d: u64) -> Result<Vec<Vec<i64>>> {
        if d == 0 {
            return Ok(vec![vec![0; self.dim()]]);
        }
        self.polytope.scale(&int(d as i64)).lattice_points()
    }

    /// Exponents of the sections of multidegree `(d₁, …, d_r)`.
    pub fn multi_exponents(&self, degrees: &[u64]) -> Result<Vec<Vec<i64>>> {
        if degrees.len() != self.multigrading.len() {
            return Err(Error::DimensionMismatch {
                expected: self.multigrading.len(),
                got: degrees.len(),
            });
        }
        let n = self.dim();
        let sum = self
            .multigrading
            .iter()
            .zip(degrees)
            .filter(|(_, &d)| d > 0)
            .map(|(p, &d)| p.scale(&int(d as i64)))
            .fold(Polytope::hull(n, &[vec![Rational::zero(); n]]), |acc, p| {
                acc.minkowski_sum(&p)
            });
        sum.lattice_points()
    }

    /// `vol_X(L) = n!·vol(P)`.
    pub fn ambient_volume(&self) -> Rational {
        let fact: BigInt = (1..=self.dim()).map(BigInt::from).product();
        self.polytope.volume() * Rational::from_integer(fact)
    }

    /// The series of `D + div(x^u)`: its sections are `s / x^u`.
    pub fn twist(&self, u: &[i64]) -> LatticeSeries {
        let shift: QVec = u.iter().map(|&x| int(-x)).collect();
        LatticeSeries::new(self.polytope.translate(&shift))
    }

    /// Whether this representative avoids the origin of the chart.
    pub fn is_normalized(&self) -> bool {
        center_avoided(&self.polytope)
    }
}

impl GradedSeries for LatticeSeries {
    fn nvars(&self) -> usize {
        self.dim()
    }

    fn sections(&self, d: u64) -> Result<Vec<LaurentPoly>> {
        Ok(self
            .exponents(d)?
            .into_iter()
            .map(LaurentPoly::monomial)
            .collect())
    }
}

/// Bases supplied degree by degree up to a maximal degree.
#[derive(Clone, Debug)]
pub struct ExplicitSeries {
    n: usize,
    by_degree: BTreeMap<u64, Vec<LaurentPoly>>,
    max_degree: Option<u64>,
}

impl ExplicitSeries {
    pub fn new(
        n: usize,
        by_degree: BTreeMap<u64, Vec<LaurentPoly>>,
        max_degree: u64,
    ) -> Result<ExplicitSeries> {
        if let Some(p) = by_degree.values().flatten().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.nvars(),
            });
        }
        Ok(ExplicitSeries {
            n,
            by_degree,
            max_degree: Some(max_degree),
        })
    }

    /// The series with `R_0 = k` and `R_d = 0` for `d > 0`.
    pub fn zero(n: usize) -> ExplicitSeries {
        ExplicitSeries {
            n,
            by_degree: BTreeMap::new(),
            max_degree: None,
        }
    }
}

impl GradedSeries for ExplicitSeries {
    fn nvars(&self) -> usize {
        self.n
    }

    fn sections(&self, d: u64) -> Result<Vec<LaurentPoly>> {
        if d == 0 {
            return Ok(vec![LaurentPoly::constant(self.n, Rational::one())]);
        }
        if self.max_degree.is_some_and(|m| d > m) {
            return Err(Error::InvalidInput(format!(
                "sections of degree {d} were not supplied"
            )));
        }
        Ok(self.by_degree.get(&d).cloned().unwrap_or_default())
    }

    fn known_up_to(&self) -> Option<u64> {
        self.max_degree
    }
}

/// A Newton–Okounkov body of a graded series.
#[derive(Clone, Debug)]
pub struct SeriesBody {
    pub body: Body,
    /// Whether the representative avoids the center of the valuation.
    pub normalized: Option<bool>,
}

impl SeriesBody {
    pub fn polytope(&self) -> &Polytope {
        &self.body.polytope
    }

    pub fn to_json(&self) -> Value {
        let cert = match &self.body.certification {
            Certification::Exact => json!({"kind": "exact"}),
            Certification::Inner {
                degree,
                stable_since,
            } => {
                json!({"kind": "stabilized", "verified_to_degree": degree, "stable_since": stable_since})
            }
        };
        json!({"body": self.body.polytope.to_json(), "certification": cert, "normalized": self.normalized})
    }
}

/// `Δ_v` of a series from its value semigroup, over a verification window of
/// degrees `1..=window`.
pub fn series_body(
    series: Arc<dyn GradedSeries>,
    v: &Valuation,
    window: u64,
) -> Result<SeriesBody> {
    let window = series
        .known_up_to()
        .map_or(window, |m| m.min(window))
        .max(1);
    let s = value_semigroup(series, v)?;
    Ok(SeriesBody {
        body: s.truncated_body(window)?,
        normalized: None,
    })
}

/// `Δ_v(L)` for a toric series; exactness is certified when the chain has
/// stabilized and agrees with the image of `P` under the value map.
pub fn toric_body(series: &LatticeSeries, v: &Valuation, window: u64) -> Result<SeriesBody> {
    let mut out = series_body(Arc::new(series.clone()), v, window)?;
    let image = value_image(series.polytope(), v);
    if out.body.polytope == image {
        out.body.certification = Certification::Exact;
    }
    out.normalized = Some(series.is_normalized());
    Ok(out)
}

/// Image of a polytope of exponents under the linear value map of `v`.
pub fn value_image(p: &Polytope, v: &Valuation) -> Polytope {
    let mono = v.as_monomial();
    let r = mono.value_rank();
    let rows: Vec<QVec> = (0..r)
        .map(|j| mono.weights().iter().map(|w| int(w[j])).collect())
        .collect();
    p.map_affine(&rows, &vec![Rational::zero(); r])
}

/// Index of the value group `Γᵀℤⁿ` in `ℤʳ` (when `r = n`).
pub fn value_group_index(v: &Valuation) -> Result<Rational> {
    let mono = v.as_monomial();
    let rows: Vec<QVec> = mono
        .weights()
        .iter()
        .map(|w| w.iter().map(|&x| int(x)).collect())
        .collect();
    Lattice::generated_by(&rows, mono.value_rank()).covolume()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeCheck {
    /// `vol_X(L) = n!·vol(P)`.
    pub vol_x: Rational,
    /// `n!·vol(Δ_v(L))`, divided by the index of the value group.
    pub n_fact_vol: Rational,
    pub equal: bool,
}

pub fn volume_theorem_check(
    series: &LatticeSeries,
    v: &Valuation,
    window: u64,
) -> Result<VolumeCheck> {
    let body = toric_body(series, v, window)?;
    let fact: BigInt = (1..=series.dim()).map(BigInt::from).product();
    let n_fact_vol =
        body.polytope().volume() * Rational::from_integer(fact) / value_group_index(v)?;
    let vol_x = series.ambient_volume();
    let equal = vol_x == n_fact_vol;
    Ok(VolumeCheck {
        vol_x,
        n_fact_vol,
        equal,
    })
}

#[derive(Clone, Debug)]
pub struct TranslationCheck {
    pub body: Polytope,
    pub twisted_body: Polytope,
    /// `v(x^u)`.
    pub shift: QVec,
    /// `Δ_v(D + div x^u) = Δ_v(D) - v(x^u)`.
    pub holds: bool,
}

pub fn translation_law_check(
    series: &LatticeSeries,
    v: &Valuation,
    u: &[i64],
    window: u64,
) -> Result<TranslationCheck> {
    let body = toric_body(series, v, window)?.body.polytope;
    let twisted_body = toric_body(&series.twist(u), v, window)?.body.polytope;
    let shift = lex_to_qvec(&v.evaluate(&LaurentPoly::monomial(u.to_vec()))?);
    let neg: QVec = shift.iter().map(|x| -x).collect();
    let holds = body.translate(&neg) == twisted_body;
    Ok(TranslationCheck {
        body,
        twisted_body,
        shift,
        holds,
    })
}

/// Value semigroup of a multigraded toric series, graded by total degree with
/// payload `(d₁, …, d_r, v)`: generated by the degree-one values of each part.
pub fn global_semigroup(series: &LatticeSeries, v: &Valuation) -> Result<GradedSemigroup> {
    let parts = series.multigrading();
    if parts.is_empty() {
        return Err(Error::InvalidInput("series has no multigrading".into()));
    }
    let r = parts.len();
    let mono = v.as_monomial();
    let mut gens = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if p.vertices().iter().flatten().any(|x| !x.is_integer()) {
            return Err(Error::InvalidInput(format!(
                "part {i} of the multigrading is not a lattice polytope"
            )));
        }
        for e in p.lattice_points()? {
            let mut payload: QVec = (0..r).map(|j| int(i64::from(i == j))).collect();
            payload.extend(lex_to_qvec(&mono.monomial_value(&e)?));
            gens.push(GradedPoint::new(1, payload));
        }
    }
    GradedSemigroup::from_generators(gens)
}

#[derive(Clone, Debug)]
pub struct GlobalBody {
    /// The body in `ℝ^{r+n}`, coordinates `(class, value)`.
    pub body: Polytope,
    pub classes: usize,
}

pub fn global_body(series: &LatticeSeries, v: &Valuation) -> Result<GlobalBody> {
    let s = global_semigroup(series, v)?;
    Ok(GlobalBody {
        body: s.okounkov_body()?.polytope,
        classes: series.multigrading().len(),
    })
}

#[derive(Clone, Debug)]
pub struct GlobalSliceCheck {
    pub class: Vec<u64>,
    pub slice_report: SliceReport,
    /// The slice at `class/|class|`, in value coordinates, scaled by `|class|`.
    pub scaled_slice: Polytope,
    /// `Δ_v` of the series of `Σ d_i P_i`.
    pub class_body: Polytope,
    pub equal: bool,
}

/// Compares the slice of the global body over a class with the body of that class.
pub fn global_slice_check(
    series: &LatticeSeries,
    v: &Valuation,
    class: &[u64],
    window: u64,
) -> Result<GlobalSliceCheck> {
    let s = global_semigroup(series, v)?;
    let r = series.multigrading().len();
    if class.len() != r {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: class.len(),
        });
    }
    let total: u64 = class.iter().sum();
    if total == 0 {
        return Err(Error::InvalidInput("class of total degree 0".into()));
    }
    let rank = v.value_rank();
    let w: Vec<QVec> = (0..rank)
        .map(|j| (0..r + rank).map(|k| int(i64::from(k == r + j))).collect())
        .collect();
    let point: QVec = class
        .iter()
        .map(|&d| Rational::new(BigInt::from(d), BigInt::from(total)))
        .collect();
    let slice_report = slice_theorem_check(&s, &w, &point, window)?;
    let coords: Vec<usize> = (r..r + rank).collect();
    let scaled_slice = slice_report
        .slice
        .project(&coords)
        .scale(&int(total as i64));
    let parts: Vec<Polytope> = series
        .multigrading()
        .iter()
        .zip(class)
        .map(|(p, &d)| p.scale(&int(d as i64)))
        .collect();
    let class_series = LatticeSeries::multigraded(parts)?;
    let class_body = toric_body(
        &LatticeSeries::new(class_series.polytope().clone()),
        v,
        window,
    )?
    .body
    .polytope;
    let equal = slice_report.equal && scaled_slice == class_body;
    Ok(GlobalSliceCheck {
        class: class.to_vec(),
        slice_report,
        scaled_slice,
        class_body,
        equal,
    })
}

impl ToJson for VolumeCheck {
    fn to_json(&self) -> Value {
        json!({"vol_x": self.vol_x.to_json(), "n_fact_vol": self.n_fact_vol.to_json(), "equal": self.equal})
    }
}

/// Standard toric polytopes.
pub mod examples {
    use super::*;
    use crate::exact::rational::qvec;

    /// `O(d)` on `ℙⁿ`: `d` times the standard simplex.
    pub fn projective_space(n: usize, d: i64) -> LatticeSeries {
        LatticeSeries::new(Polytope::simplex(n, &int(d)))
    }

    /// `O(a, b)` on `ℙ¹×ℙ¹`.
    pub fn p1xp1(a: i64, b: i64) -> LatticeSeries {
        LatticeSeries::new(Polytope::cuboid(&[(int(0), int(a)), (int(0), int(b))]))
    }

    /// The trapezoid of the Hirzebruch surface `F₁`.
    pub fn hirzebruch_f1() -> LatticeSeries {
        LatticeSeries::new(Polytope::hull(
            2,
            &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[2, 1])],
        ))
    }

    /// `O(mP - (m-1)Q)` on `ℙ¹` in the chart centred at `P`: sections `x^k`, `-m ≤ k ≤ -(m-1)`.
    pub fn p1_negative(m: i64) -> LatticeSeries {
        LatticeSeries::new(Polytope::hull(1, &[qvec(&[-m]), qvec(&[-(m - 1)])]))
    }

    /// `ℙ¹×ℙ¹` with the two rulings as the multigrading.
    pub fn p1xp1_rulings() -> LatticeSeries {
        LatticeSeries::multigraded(vec![
            Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[1, 0])]),
            Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[0, 1])]),
        ])
        .expect("two parts")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::exact::rational::{qvec, rat};
    use crate::valuation::MonomialValuation;

    #[test]
    fn sections_counts() {
        let p2 = projective_space(2, 1);
        assert_eq!(p2.sections(2).unwrap().len(), 6);
        assert_eq!(
            p2.sections(0).unwrap(),
            vec![LaurentPoly::constant(2, int(1))]
        );
        assert_eq!(hirzebruch_f1().sections(1).unwrap().len(), 5);
    }

    #[test]
    fn p1_bodies() {
        let v = Valuation::lex(1);
        let b = toric_body(&projective_space(1, 1), &v, 3).unwrap();
        assert_eq!(*b.polytope(), Polytope::hull(1, &[qvec(&[0]), qvec(&[1])]));
        assert_eq!(b.body.certification, Certification::Exact);
        assert_eq!(b.normalized, Some(true));
        for m in 1..=5 {
            let b = toric_body(&p1_negative(m), &v, 3).unwrap();
            assert_eq!(
                *b.polytope(),
                Polytope::hull(1, &[qvec(&[-m]), qvec(&[-(m - 1)])])
            );
            assert_eq!(b.normalized, Some(false));
        }
    }

    #[test]
    fn simplex_body_and_stabilization() {
        let b = toric_body(&projective_space(2, 1), &Valuation::lex(2), 4).unwrap();
        assert_eq!(b.polytope().volume(), rat(1, 2));
        assert_eq!(b.body.certification, Certification::Exact);
        let s = value_semigroup(Arc::new(projective_space(2, 1)), &Valuation::lex(2)).unwrap();
        let chain = s.truncated_chain(4).unwrap();
        assert!(chain.iter().all(|p| *p == chain[0]), "stable from degree 1");
    }

    #[test]
    fn volume_theorem_instances() {
        let v = Valuation::lex(2);
        for d in 1..=3 {
            let c = volume_theorem_check(&projective_space(2, d), &v, 2).unwrap();
            assert!(c.equal);
            assert_eq!(c.vol_x, int(d * d));
        }
        for a in 1..=3 {
            for b in 1..=3 {
                let c = volume_theorem_check(&p1xp1(a, b), &v, 2).unwrap();
                assert!(c.equal && c.vol_x == int(2 * a * b));
            }
        }
        let f1 = volume_theorem_check(&hirzebruch_f1(), &v, 2).unwrap();
        assert_eq!((f1.vol_x.clone(), f1.equal), (int(3), true));
        let w = Valuation::Monomial(MonomialValuation::new(vec![vec![1, 0], vec![1, 3]]).unwrap());
        let c = volume_theorem_check(&projective_space(2, 2), &w, 2).unwrap();
        assert!(c.equal);
    }

    #[test]
    fn translation_law() {
        let v = Valuation::lex(2);
        let c = translation_law_check(&projective_space(2, 1), &v, &[1, -2], 2).unwrap();
        assert!(c.holds);
        assert_eq!(c.shift, qvec(&[1, -2]));
    }

    #[test]
    fn superadditive_values() {
        let s = value_semigroup(Arc::new(hirzebruch_f1()), &Valuation::lex(2)).unwrap();
        let (a, b, ab) = (
            s.level(1).unwrap(),
            s.level(2).unwrap(),
            s.level(3).unwrap(),
        );
        for x in &a {
            for y in &b {
                let z: QVec = x.iter().zip(y).map(|(p, q)| p + q).collect();
                assert!(ab.binary_search(&z).is_ok());
            }
        }
    }

    #[test]
    fn global_body_slices() {
        let series = p1xp1_rulings();
        let v = Valuation::lex(2);
        let square = global_slice_check(&series, &v, &[1, 1], 3).unwrap();
        assert!(square.equal);
        assert_eq!(
            square.class_body,
            Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))])
        );
        let seg = global_slice_check(&series, &v, &[1, 0], 3).unwrap();
        assert!(seg.equal);
        assert_eq!(
            seg.class_body,
            Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[1, 0])])
        );
        let single = LatticeSeries::multigraded(vec![Polytope::simplex(2, &int(1))]).unwrap();
        let g = global_slice_check(&single, &v, &[2], 3).unwrap();
        assert!(g.equal);
        assert_eq!(
            g.class_body,
            toric_body(&projective_space(2, 2), &v, 2)
                .unwrap()
                .body
                .polytope
        );
    }
}
