//! Filtered bodies, the two concave transforms and the volume identities
//! relating them to jumping numbers.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::{Floor, HomogeneousFiltration};
use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::lattice::Lattice;
use crate::exact::rational::{ceil_int, floor_int, int, to_f64, QVec, Rational};
use crate::geometry::integrate::open_newton_cotes;
use crate::geometry::{upper_concave_envelope, Halfspace, PLFunction, Polytope};
use crate::semigroup::{volume_slice_integral_from_body, Body, Certification, VolumeSliceReport};
use crate::series::{series_body, value_group_index, value_image, ExplicitSeries, LatticeSeries};
use crate::valuation::{lex_to_qvec, LaurentPoly, MonomialValuation, Valuation};

/// Value-map rows `Γᵀ`: row `j` lists the `j`-th value coordinate of each variable.
fn value_rows(mono: &MonomialValuation) -> Vec<QVec> {
    (0..mono.value_rank())
        .map(|j| mono.weights().iter().map(|w| int(w[j])).collect())
        .collect()
}

/// `Δ_v(V_t(•))`, with the window raised to reach every vertex when the
/// levels are linear.
fn vt_body(
    f: &HomogeneousFiltration,
    v: &Valuation,
    t: &Rational,
    window: u64,
) -> Result<Polytope> {
    let vt = f.vt_series(t);
    let w = window.max(vt.vertex_denominator());
    if f.vt_polytope(t).is_some_and(|p| p.is_empty()) {
        return Ok(Polytope::empty(v.value_rank()));
    }
    Ok(series_body(Arc::new(vt), v, w)?.body.polytope)
}

/// A horizontal slice of a filtered body against the body of `V_t(•)`.
#[derive(Clone, Debug)]
pub struct SliceCheck {
    pub t: Rational,
    pub body_slice: Polytope,
    pub vt_body: Polytope,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct FilteredBody {
    pub floor: Rational,
    /// `Δ(Σ_{v,F,B})` truncated at the window, in coordinates `(x, t)`.
    pub truncated: Body,
    /// `{(Γᵀα, t) : α ∈ P, B ≤ t ≤ ℓ·α + c}` for linear levels.
    pub exact: Option<Polytope>,
    pub slices: Vec<SliceCheck>,
}

impl FilteredBody {
    /// The exact body when known, the truncated one otherwise.
    pub fn polytope(&self) -> &Polytope {
        self.exact.as_ref().unwrap_or(&self.truncated.polytope)
    }

    pub fn slices_agree(&self) -> bool {
        self.slices.iter().all(|s| s.equal)
    }

    pub fn to_json(&self) -> Value {
        let cert = match &self.truncated.certification {
            Certification::Exact => json!({"kind": "exact"}),
            Certification::Inner {
                degree,
                stable_since,
            } => {
                json!({"kind": "stabilized", "verified_to_degree": degree, "stable_since": stable_since})
            }
        };
        json!({
            "floor": self.floor.to_json(),
            "body": self.polytope().to_json(),
            "certification": cert,
            "slices": self.slices.iter().map(|s| json!({
                "t": s.t.to_json(),
                "slice": s.body_slice.to_json(),
                "vt_body": s.vt_body.to_json(),
                "equal": s.equal,
            })).collect::<Vec<_>>(),
        })
    }
}

fn exact_filtered_body(
    f: &HomogeneousFiltration,
    v: &Valuation,
    floor: &Rational,
) -> Result<Option<Polytope>> {
    let Some((l, c)) = f.kind().as_linear() else {
        return Ok(None);
    };
    let p = f.series().polytope();
    let n = p.ambient_dim();
    let lift = |a: &QVec| {
        let mut a = a.clone();
        a.push(Rational::zero());
        a
    };
    let mut ineqs: Vec<Halfspace> = p
        .inequalities()
        .iter()
        .map(|h| Halfspace::new(lift(&h.normal), h.offset.clone()))
        .collect();
    let eqs: Vec<(QVec, Rational)> = p
        .equations()
        .iter()
        .map(|(a, b)| (lift(a), b.clone()))
        .collect();
    // t ≥ B and t - ℓ·α ≤ c
    let mut down = vec![Rational::zero(); n];
    down.push(-Rational::one());
    ineqs.push(Halfspace::new(down, -floor.clone()));
    let mut up: QVec = l.iter().map(|x| -x).collect();
    up.push(Rational::one());
    ineqs.push(Halfspace::new(up, c));
    let lifted = Polytope::from_halfspaces(n + 1, &ineqs, &eqs)?;
    if lifted.is_empty() {
        return Err(Error::EmptyBody);
    }
    let mono = v.as_monomial();
    let mut rows: Vec<QVec> = value_rows(&mono).into_iter().map(|r| lift(&r)).collect();
    let mut last = vec![Rational::zero(); n];
    last.push(Rational::one());
    rows.push(last);
    let shift = vec![Rational::zero(); rows.len()];
    Ok(Some(lifted.map_affine(&rows, &shift)))
}

/// `Δ(Σ_{v,F,B})` with horizontal slices at `ts` compared against
/// `Δ_v(V_t(•))`.
pub fn filtered_body(
    f: &HomogeneousFiltration,
    v: &Valuation,
    floor: Floor,
    window: u64,
    ts: &[Rational],
) -> Result<FilteredBody> {
    if v.nvars() != f.series().dim() {
        return Err(Error::DimensionMismatch {
            expected: f.series().dim(),
            got: v.nvars(),
        });
    }
    let b = f.floor_value(floor)?;
    let window = f.max_degree().map_or(window, |m| m.min(window)).max(1);
    let mut truncated = f.rees_semigroup(v, floor)?.truncated_body(window)?;
    if truncated.polytope.is_empty() {
        return Err(Error::EmptyBody);
    }
    let exact = exact_filtered_body(f, v, &b)?;
    if exact.as_ref() == Some(&truncated.polytope) {
        truncated.certification = Certification::Exact;
    }
    let mut out = FilteredBody {
        floor: b,
        truncated,
        exact,
        slices: Vec::new(),
    };
    let r = v.value_rank();
    for t in ts {
        let body_slice = out.polytope().slice(&[(r, t.clone())]);
        let vt = vt_body(f, v, t, window)?;
        let equal = body_slice == vt;
        out.slices.push(SliceCheck {
            t: t.clone(),
            body_slice,
            vt_body: vt,
            equal,
        });
    }
    Ok(out)
}

/// Transform I: `sup{t/d : x^α ∈ F_t(d), v(x^α) = dβ}` over `d ≤ D`, maximized
/// along multiples and closed up by the concave envelope. A lower bound for
/// the concave transform, exact where the degree-`d` values have stabilized.
#[derive(Clone, Debug)]
pub struct TransformI {
    pub phi: PLFunction,
    /// Valuative points `v(s)/d` with the best normalized level seen.
    pub samples: Vec<(QVec, Rational)>,
    pub max_degree: u64,
}

pub fn concave_transform_i(
    f: &HomogeneousFiltration,
    v: &Valuation,
    max_degree: u64,
) -> Result<TransformI> {
    let max_degree = f.max_degree().map_or(max_degree, |m| m.min(max_degree));
    let mono = v.as_monomial();
    let mut best: BTreeMap<QVec, Rational> = BTreeMap::new();
    for d in 1..=max_degree {
        let dd = int(d as i64);
        for (e, level) in f.levels(d)? {
            let x: QVec = lex_to_qvec(&mono.monomial_value(&e)?)
                .into_iter()
                .map(|c| c / &dd)
                .collect();
            let val = level / &dd;
            best.entry(x)
                .and_modify(|b| *b = b.clone().max(val.clone()))
                .or_insert(val);
        }
    }
    let samples: Vec<(QVec, Rational)> = best.into_iter().collect();
    let domain = value_image(f.series().polytope(), v);
    let phi = upper_concave_envelope(&samples, &domain)?;
    Ok(TransformI {
        phi,
        samples,
        max_degree,
    })
}

/// Transform II: the stack of bodies `Δ_v(V_t(•))` over a grid of `t`, with
/// the envelope of the values `t` on their vertices.
#[derive(Clone, Debug)]
pub struct TransformII {
    pub phi: PLFunction,
    pub bodies: Vec<(Rational, Polytope)>,
}

pub fn concave_transform_ii(
    f: &HomogeneousFiltration,
    v: &Valuation,
    grid: &[Rational],
    window: u64,
) -> Result<TransformII> {
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    let first = grid.first().ok_or(Error::NoSamples)?.clone();
    let mut bodies = Vec::new();
    let mut samples = Vec::new();
    for t in &grid {
        let body = vt_body(f, v, t, window)?;
        samples.extend(body.vertices().iter().map(|x| (x.clone(), t.clone())));
        bodies.push((t.clone(), body));
    }
    let domain = bodies
        .iter()
        .find(|(t, _)| *t == first)
        .map(|(_, b)| b.clone())
        .expect("grid nonempty");
    let phi = upper_concave_envelope(&samples, &domain)?;
    Ok(TransformII { phi, bodies })
}

/// Uniform grid `lo, lo + (hi-lo)/steps, …, hi`.
pub fn uniform_grid(lo: &Rational, hi: &Rational, steps: u64) -> Vec<Rational> {
    let steps = steps.max(1);
    let h = (hi - lo) / int(steps as i64);
    (0..=steps).map(|k| lo + &h * int(k as i64)).collect()
}

#[derive(Clone, Debug)]
pub struct TransformsReport {
    /// `max |φ_I − φ_II|` over common valuative points.
    pub gap: Rational,
    pub points: usize,
}

impl TransformsReport {
    pub fn to_json(&self) -> Value {
        json!({"gap": self.gap.to_json(), "gap_f64": to_f64(&self.gap), "points": self.points})
    }
}

pub fn transforms_agree_check(
    f: &HomogeneousFiltration,
    v: &Valuation,
    max_degree: u64,
    grid: &[Rational],
) -> Result<TransformsReport> {
    let one = concave_transform_i(f, v, max_degree)?;
    let two = concave_transform_ii(f, v, grid, max_degree)?;
    let mut gap = Rational::zero();
    let mut points = 0;
    for (x, _) in &one.samples {
        if let (Some(a), Some(b)) = (one.phi.eval(x), two.phi.eval(x)) {
            gap = gap.max((a - b).abs());
            points += 1;
        }
    }
    Ok(TransformsReport { gap, points })
}

/// The three sides of the volume identity for the positive part of a filtration.
#[derive(Clone, Debug)]
pub struct BcReport {
    /// `vol(Δ̂₀) / [ℤʳ : Γᵀℤⁿ]`.
    pub body_volume: Rational,
    /// `∫_0^∞ vol(Δ_v(V_t(•))) dt`, same normalization.
    pub slice_integral: Rational,
    /// `(d, mass_+(F(d)) / d^{n+1})`.
    pub mass_sequence: Vec<(u64, Rational)>,
    pub equal: bool,
}

impl BcReport {
    /// `|mass_+(F(D))/D^{n+1} − vol|` at the last degree.
    pub fn mass_gap(&self) -> f64 {
        self.mass_sequence
            .last()
            .map_or(0.0, |(_, m)| to_f64(&(m - &self.body_volume).abs()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "body_volume": self.body_volume.to_json(),
            "slice_integral": self.slice_integral.to_json(),
            "mass_sequence": self.mass_sequence.iter().map(|(d, m)| json!({"d": d, "value": m.to_json(), "value_f64": to_f64(m)})).collect::<Vec<_>>(),
            "mass_gap": self.mass_gap(),
            "equal": self.equal,
        })
    }
}

pub fn bc_volume_check(
    f: &HomogeneousFiltration,
    v: &Valuation,
    max_degree: u64,
) -> Result<BcReport> {
    let n = f.series().dim();
    let index = value_group_index(v)?;
    let mut mass_sequence = Vec::new();
    let top = f.max_degree().map_or(max_degree, |m| m.min(max_degree));
    for d in 1..=top {
        let m = f.jumping_profile(d)?.mass_plus;
        let dn = Rational::from_integer(BigInt::from(d).pow(n as u32 + 1));
        mass_sequence.push((d, m / dn));
    }
    let body = match filtered_body(f, v, Floor::Zero, max_degree, &[]) {
        Ok(b) => Some(b),
        Err(Error::EmptyBody) => None,
        Err(e) => return Err(e),
    };
    let (body_volume, slice_integral) = match &body {
        None => (Rational::zero(), Rational::zero()),
        Some(b) => {
            let p = b.polytope();
            let r = v.value_rank();
            let mut ts: Vec<Rational> = p.vertices().iter().map(|x| x[r].clone()).collect();
            ts.sort();
            ts.dedup();
            let (nodes, weights) = open_newton_cotes(n + 1);
            let mut integral = Rational::zero();
            for w in ts.windows(2) {
                let len = &w[1] - &w[0];
                for (x, wt) in nodes.iter().zip(&weights) {
                    let t = &w[0] + &len * x;
                    integral += wt * &len * vt_body(f, v, &t, max_degree)?.volume();
                }
            }
            (p.volume() / &index, integral / &index)
        }
    };
    let equal = body_volume == slice_integral;
    Ok(BcReport {
        body_volume,
        slice_integral,
        mass_sequence,
        equal,
    })
}

/// The Rees algebra as a series in `(u, x)` against the swapped filtered body.
#[derive(Clone, Debug)]
pub struct ReesAlgebraReport {
    /// `χ(Δ̂_B)` with `t` rescaled by the index denominator `q`.
    pub swapped_body: Polytope,
    /// `Δ_v̂` of `⊕_m ⊕_{t ≥ Bm} F_t(m) u^{qt}`.
    pub rees_body: Polytope,
    pub equal: bool,
}

pub fn rees_algebra_check(
    f: &HomogeneousFiltration,
    v: &Valuation,
    floor: Floor,
    window: u64,
) -> Result<ReesAlgebraReport> {
    let n = f.series().dim();
    let b = f.floor_value(floor)?;
    let q = Rational::from_integer(f.index_denominator()?);
    let window = f.max_degree().map_or(window, |m| m.min(window)).max(1);
    let mut by_degree = BTreeMap::new();
    for m in 1..=window {
        let lo = ceil_int(&(&b * int(m as i64) * &q));
        let mut sections = Vec::new();
        for (e, level) in f.levels(m)? {
            let hi = floor_int(&(level * &q));
            let mut k = lo.clone();
            while k <= hi {
                let mut exp = vec![k.to_i64().ok_or(Error::Overflow)?];
                exp.extend_from_slice(&e);
                sections.push(LaurentPoly::monomial(exp));
                k += 1;
            }
        }
        by_degree.insert(m, sections);
    }
    let rees = ExplicitSeries::new(n + 1, by_degree, window)?;
    let mono = v.as_monomial();
    let r = mono.value_rank();
    let mut weights = vec![(0..=r).map(|j| i64::from(j == 0)).collect::<Vec<i64>>()];
    for w in mono.weights() {
        let mut row = vec![0];
        row.extend_from_slice(w);
        weights.push(row);
    }
    let vhat = Valuation::Monomial(MonomialValuation::new(weights)?);
    let rees_body = series_body(Arc::new(rees), &vhat, window)?.body.polytope;
    let fb = filtered_body(f, v, floor, window, &[])?;
    // (x, t) ↦ (q t, x)
    let mut rows: Vec<QVec> = Vec::with_capacity(r + 1);
    rows.push(
        (0..=r)
            .map(|j| if j == r { q.clone() } else { Rational::zero() })
            .collect(),
    );
    for i in 0..r {
        rows.push((0..=r).map(|j| int(i64::from(i == j))).collect());
    }
    let swapped_body = fb
        .truncated
        .polytope
        .map_affine(&rows, &vec![Rational::zero(); r + 1]);
    let equal = swapped_body == rees_body;
    Ok(ReesAlgebraReport {
        swapped_body,
        rees_body,
        equal,
    })
}

/// Homogeneity of the concave transform: on the Veronese series `aP` with
/// the induced levels, `φ_{F_a}(aα) = a·φ_F(α)`; rescaling the index by `a`
/// gives `a·φ_F(α)`.
#[derive(Clone, Debug)]
pub struct HomogeneityReport {
    pub a: i64,
    pub points: usize,
    pub veronese_holds: bool,
    pub rescale_holds: bool,
}

impl HomogeneityReport {
    pub fn holds(&self) -> bool {
        self.veronese_holds && self.rescale_holds
    }
}

pub fn homogeneity_check(
    f: &HomogeneousFiltration,
    v: &Valuation,
    a: i64,
    max_degree: u64,
) -> Result<HomogeneityReport> {
    if a < 1 {
        return Err(Error::InvalidInput(
            "homogeneity factor must be a positive integer".into(),
        ));
    }
    let (l, c) = f
        .kind()
        .as_linear()
        .ok_or_else(|| Error::InvalidFiltration("homogeneity check needs linear levels".into()))?;
    let aa = int(a);
    let veronese = HomogeneousFiltration::ord_divisor(
        LatticeSeries::new(f.series().polytope().scale(&aa)),
        l,
        c * &aa,
    )?;
    let rescaled = f.rescale(aa.clone())?;
    let base = concave_transform_i(f, v, max_degree)?;
    let phi_a = concave_transform_i(&veronese, v, max_degree)?;
    let phi_r = concave_transform_i(&rescaled, v, max_degree)?;
    let (mut veronese_holds, mut rescale_holds, mut points) = (true, true, 0);
    for (x, _) in &base.samples {
        let Some(y) = base.phi.eval(x) else { continue };
        let ax: QVec = x.iter().map(|c| c * &aa).collect();
        veronese_holds &= phi_a.phi.eval(&ax) == Some(&y * &aa);
        rescale_holds &= phi_r.phi.eval(x) == Some(&y * &aa);
        points += 1;
    }
    Ok(HomogeneityReport {
        a,
        points,
        veronese_holds,
        rescale_holds,
    })
}

impl ToJson for HomogeneityReport {
    fn to_json(&self) -> Value {
        json!({"a": self.a, "points": self.points, "veronese_holds": self.veronese_holds, "rescale_holds": self.rescale_holds})
    }
}

/// The volume–slice identity on the exact filtered body, with the degree-0
/// lattice `Γᵀℤⁿ × (1/q)ℤ` of the Rees semigroup.
pub fn rees_volume_slice_check(
    f: &HomogeneousFiltration,
    v: &Valuation,
    floor: Floor,
    w: &[QVec],
) -> Result<VolumeSliceReport> {
    let fb = filtered_body(f, v, floor, 1, &[])?;
    let body = fb
        .exact
        .ok_or_else(|| Error::InvalidInput("the exact filtered body needs linear levels".into()))?;
    let q = Rational::from_integer(f.index_denominator()?);
    let mono = v.as_monomial();
    let r = mono.value_rank();
    let mut gens: Vec<QVec> = mono
        .weights()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| int(*x))
                .chain(std::iter::once(Rational::zero()))
                .collect()
        })
        .collect();
    gens.push(
        (0..=r)
            .map(|j| {
                if j == r {
                    Rational::one() / &q
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    );
    volume_slice_integral_from_body(&body, &Lattice::generated_by(&gens, r + 1), w)
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
    fn p1_filtered_triangle() {
        let f = p1_ord0();
        let ts = uniform_grid(&int(0), &int(1), 4);
        let b = filtered_body(&f, &Valuation::lex(1), Floor::Zero, 6, &ts).unwrap();
        let tri = Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1])]);
        assert_eq!(b.polytope(), &tri);
        assert_eq!(b.truncated.certification, Certification::Exact);
        assert!(b.slices_agree());
        let half = b.slices.iter().find(|s| s.t == rat(1, 2)).unwrap();
        assert_eq!(
            half.body_slice,
            Polytope::hull(1, &[qvec(&[1]), vec![rat(1, 2)]])
        );
    }

    #[test]
    fn trivial_filtered_body() {
        let f = HomogeneousFiltration::trivial(projective_space(2, 1));
        let b = filtered_body(&f, &Valuation::lex(2), Floor::Zero, 3, &[int(0)]).unwrap();
        let base = Polytope::simplex(2, &int(1)).product(&Polytope::hull(1, &[qvec(&[0])]));
        assert_eq!(b.polytope(), &base);
        assert!(b.slices_agree());
    }

    #[test]
    fn p2_filtered_slices() {
        let f = p2_line();
        let ts = uniform_grid(&int(0), &int(1), 3);
        let b = filtered_body(&f, &Valuation::lex(2), Floor::Zero, 4, &ts).unwrap();
        assert!(b.slices_agree());
        assert_eq!(b.polytope().volume(), rat(1, 6));
        let s = &b.slices[1].body_slice;
        assert_eq!(
            s,
            &Polytope::hull(
                2,
                &[
                    vec![rat(1, 3), int(0)],
                    qvec(&[1, 0]),
                    vec![rat(1, 3), rat(2, 3)]
                ]
            )
        );
    }

    #[test]
    fn transform_i_values() {
        let t = concave_transform_i(&p1_ord0(), &Valuation::lex(1), 10).unwrap();
        for k in 0..=10 {
            let x = vec![rat(k, 10)];
            assert_eq!(t.phi.eval(&x), Some(rat(k, 10)));
        }
        let z = concave_transform_i(
            &HomogeneousFiltration::trivial(projective_space(2, 1)),
            &Valuation::lex(2),
            3,
        )
        .unwrap();
        assert_eq!(z.phi.max_value(), Some(int(0)));
        let p2 = concave_transform_i(&p2_line(), &Valuation::lex(2), 4).unwrap();
        for (x, _) in &p2.samples {
            assert_eq!(p2.phi.eval(x), Some(x[0].clone()));
        }
    }

    #[test]
    fn transform_ii_values() {
        let f = p1_ord0();
        let v = Valuation::lex(1);
        let one_point = concave_transform_ii(&f, &v, &[int(0)], 4).unwrap();
        assert_eq!(one_point.phi.eval(&[rat(1, 3)]), Some(int(0)));
        let coarse = concave_transform_ii(&f, &v, &[int(0), rat(1, 2), int(1)], 4).unwrap();
        for k in 0..=4 {
            let x = rat(k, 4);
            assert!(coarse.phi.eval(&[x.clone()]).unwrap() <= x);
        }
        assert_eq!(coarse.phi.eval(&[rat(1, 2)]), Some(rat(1, 2)));
    }

    #[test]
    fn transforms_agree() {
        let v1 = Valuation::lex(1);
        let r = transforms_agree_check(&p1_ord0(), &v1, 20, &uniform_grid(&int(0), &int(1), 20))
            .unwrap();
        assert_eq!(r.gap, int(0));
        assert!(r.points > 20);
        let t = HomogeneousFiltration::trivial(projective_space(1, 1));
        assert_eq!(
            transforms_agree_check(&t, &v1, 5, &[int(0)]).unwrap().gap,
            int(0)
        );
        let r2 = transforms_agree_check(
            &p2_line(),
            &Valuation::lex(2),
            15,
            &uniform_grid(&int(0), &int(1), 15),
        )
        .unwrap();
        assert!(r2.gap <= rat(1, 15));
    }

    #[test]
    fn bc_volumes() {
        let r = bc_volume_check(&p1_ord0(), &Valuation::lex(1), 8).unwrap();
        assert_eq!(
            (r.body_volume.clone(), r.slice_integral.clone()),
            (rat(1, 2), rat(1, 2))
        );
        for (d, m) in &r.mass_sequence {
            let d = *d as i64;
            assert_eq!(m, &rat(d * (d + 1) / 2, d * d));
        }
        let p2 = bc_volume_check(&p2_line(), &Valuation::lex(2), 6).unwrap();
        assert!(p2.equal);
        assert_eq!(p2.body_volume, rat(1, 6));
        assert!(p2.mass_gap() < 0.2);
        let t = bc_volume_check(
            &HomogeneousFiltration::trivial(projective_space(2, 1)),
            &Valuation::lex(2),
            4,
        )
        .unwrap();
        assert_eq!(t.body_volume, int(0));
        assert_eq!(t.slice_integral, int(0));
        assert!(t.mass_sequence.iter().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn rees_identification() {
        let r = rees_algebra_check(&p1_ord0(), &Valuation::lex(1), Floor::Zero, 4).unwrap();
        assert!(r.equal);
        let f =
            HomogeneousFiltration::ord_divisor(p1xp1(1, 2), vec![int(1), rat(1, 2)], rat(-1, 2))
                .unwrap();
        let r = rees_algebra_check(&f, &Valuation::lex(2), Floor::EMin, 3).unwrap();
        assert!(r.equal);
    }

    #[test]
    fn rees_volume_slices() {
        let t_axis = [qvec(&[0, 1])];
        let r =
            rees_volume_slice_check(&p1_ord0(), &Valuation::lex(1), Floor::Zero, &t_axis).unwrap();
        assert_eq!(
            (r.lhs.clone(), r.rhs.clone(), r.det_w.clone()),
            (rat(1, 2), rat(1, 2), int(1))
        );
        // levels in ½ℤ halve the covolume along t
        let f =
            HomogeneousFiltration::ord_divisor(p1xp1(1, 2), vec![int(1), rat(1, 2)], rat(-1, 2))
                .unwrap();
        let r = rees_volume_slice_check(&f, &Valuation::lex(2), Floor::EMin, &[qvec(&[0, 0, 1])])
            .unwrap();
        assert_eq!((r.lhs.clone(), r.det_w.clone()), (int(4), rat(1, 2)));
        assert!(r.equal);
    }

    #[test]
    fn homogeneity() {
        let f = HomogeneousFiltration::ord_divisor(p1xp1(1, 1), qvec(&[1, 1]), int(-1)).unwrap();
        let h = homogeneity_check(&f, &Valuation::lex(2), 3, 3).unwrap();
        assert!(h.holds());
        assert!(h.points > 0);
    }
}
