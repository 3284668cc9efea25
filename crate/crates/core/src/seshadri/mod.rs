//! Seshadri-type invariants at torus-fixed points of smooth toric surfaces:
//! blow-ups, the nef and effective thresholds `ε` and `μ`, restricted-volume
//! profiles, the normalized integral `ι`, the `ℙ¹`-bundle model and the
//! rationality verdict.

mod bundle;

pub use bundle::{
    bundle_model, subgraph_equals_body_check, trivial_bundle_check, BundleModel, CountRow,
    SubgraphReport,
};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::rational::{ceil_int, floor_int, int, QVec, Rational};
use crate::geometry::{Halfspace, PLFunction, Polytope};
use crate::series::{toric_body, LatticeSeries};
use crate::valuation::Valuation;

pub type Ray = [i64; 2];

fn det2(a: Ray, b: Ray) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn half(v: Ray) -> u8 {
    u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)))
}

fn angle_cmp(a: Ray, b: Ray) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&det2(a, b)))
}

fn ray_q(v: Ray) -> QVec {
    vec![int(v[0]), int(v[1])]
}

/// A complete smooth toric surface, given by its rays in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricSurface {
    rays: Vec<Ray>,
}

impl ToricSurface {
    /// Checks primitivity, counterclockwise order, completeness and smoothness.
    pub fn new(rays: Vec<Ray>) -> Result<ToricSurface> {
        let n = rays.len();
        if n < 3 {
            return Err(Error::InvalidFan(
                "a complete surface fan needs at least three rays".into(),
            ));
        }
        for v in &rays {
            if v[0].gcd(&v[1]) != 1 {
                return Err(Error::InvalidFan(format!("ray {v:?} is not primitive")));
            }
        }
        // starting from the ray of least angle the list must be sorted
        let start = (0..n)
            .min_by(|&i, &j| angle_cmp(rays[i], rays[j]))
            .expect("nonempty");
        let rotated: Vec<Ray> = (0..n).map(|k| rays[(start + k) % n]).collect();
        if rotated
            .windows(2)
            .any(|w| angle_cmp(w[0], w[1]) != Ordering::Less)
        {
            return Err(Error::InvalidFan(
                "rays are not in counterclockwise order".into(),
            ));
        }
        for i in 0..n {
            let d = det2(rays[i], rays[(i + 1) % n]);
            if d <= 0 {
                return Err(Error::InvalidFan(format!(
                    "cone {i} is not strictly convex"
                )));
            }
            if d != 1 {
                return Err(Error::InvalidFan(format!(
                    "cone {i} is not smooth (determinant {d})"
                )));
            }
        }
        Ok(ToricSurface { rays })
    }

    pub fn p2() -> ToricSurface {
        ToricSurface {
            rays: vec![[1, 0], [0, 1], [-1, -1]],
        }
    }

    pub fn p1xp1() -> ToricSurface {
        ToricSurface {
            rays: vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
        }
    }

    /// The Hirzebruch surface `F₁`, the blow-up of `ℙ²` at a fixed point.
    pub fn f1() -> ToricSurface {
        ToricSurface {
            rays: vec![[1, 0], [1, 1], [0, 1], [-1, -1]],
        }
    }

    pub fn by_name(name: &str) -> Result<ToricSurface> {
        match name {
            "P2" => Ok(Self::p2()),
            "P1xP1" => Ok(Self::p1xp1()),
            "F1" => Ok(Self::f1()),
            other => Err(Error::InvalidInput(format!(
                "unknown surface {other:?}; expected P2, P1xP1, F1 or a fan"
            ))),
        }
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    /// The rays of the `i`-th maximal cone `(v_i, v_{i+1})`.
    pub fn cone(&self, i: usize) -> Result<(Ray, Ray)> {
        if i >= self.len() {
            return Err(Error::NotFixedPoint);
        }
        Ok((self.rays[i], self.rays[(i + 1) % self.len()]))
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    /// `b_ρ` with `v_{ρ-1} + v_{ρ+1} = b_ρ v_ρ`, so `D_ρ² = -b_ρ`.
    pub fn wall_coefficient(&self, rho: usize) -> i64 {
        let (p, v, q) = (
            self.rays[self.prev(rho)],
            self.rays[rho],
            self.rays[self.next(rho)],
        );
        let s = [p[0] + q[0], p[1] + q[1]];
        if v[0] != 0 {
            s[0] / v[0]
        } else {
            s[1] / v[1]
        }
    }

    fn check_class(&self, d: &[Rational]) -> Result<()> {
        if d.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `D·D_ρ` for `D = Σ a_ρ D_ρ`.
    pub fn intersections(&self, d: &[Rational]) -> Result<Vec<Rational>> {
        self.check_class(d)?;
        Ok((0..self.len())
            .map(|r| &d[self.prev(r)] + &d[self.next(r)] - &d[r] * int(self.wall_coefficient(r)))
            .collect())
    }

    /// `D·D'`.
    pub fn intersection(&self, d: &[Rational], e: &[Rational]) -> Result<Rational> {
        self.check_class(e)?;
        Ok(self
            .intersections(d)?
            .iter()
            .zip(e)
            .map(|(x, y)| x * y)
            .sum())
    }

    pub fn is_nef(&self, d: &[Rational]) -> Result<bool> {
        Ok(self.intersections(d)?.iter().all(|x| !x.is_negative()))
    }

    pub fn is_ample(&self, d: &[Rational]) -> Result<bool> {
        Ok(self.intersections(d)?.iter().all(Signed::is_positive))
    }

    /// `P_D = {u : ⟨u, v_ρ⟩ ≥ -a_ρ}`.
    pub fn polytope(&self, d: &[Rational]) -> Result<Polytope> {
        self.check_class(d)?;
        let hs: Vec<Halfspace> = self
            .rays
            .iter()
            .zip(d)
            .map(|(v, a)| Halfspace::new(vec![int(-v[0]), int(-v[1])], a.clone()))
            .collect();
        Polytope::from_halfspaces(2, &hs, &[])
    }

    /// `-K_X = Σ D_ρ`.
    pub fn anticanonical(&self) -> Vec<Rational> {
        vec![Rational::one(); self.len()]
    }

    /// Star subdivision of the cone spanned by two adjacent rays.
    pub fn blowup(&self, cone: (Ray, Ray)) -> Result<Blowup> {
        let i =
            (0..self.len()).find(|&i| self.rays[i] == cone.0 && self.rays[self.next(i)] == cone.1);
        let i = i.ok_or(Error::NotFixedPoint)?;
        if det2(cone.0, cone.1) != 1 {
            return Err(Error::NotFixedPoint);
        }
        let e = [cone.0[0] + cone.1[0], cone.0[1] + cone.1[1]];
        let mut rays = self.rays.clone();
        rays.insert(i + 1, e);
        Ok(Blowup {
            surface: ToricSurface { rays },
            exceptional: i + 1,
        })
    }
}

/// `η: X̃ → X` with the exceptional ray at index `exceptional` of `X̃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    pub surface: ToricSurface,
    pub exceptional: usize,
}

impl Blowup {
    /// `η*D`: the exceptional coefficient is the sum of its neighbours'.
    pub fn pullback(&self, d: &[Rational]) -> Vec<Rational> {
        let k = self.exceptional;
        let mut out = d.to_vec();
        let a_e = &d[k - 1] + &d[k % d.len()];
        out.insert(k, a_e);
        out
    }

    pub fn exceptional_class(&self) -> Vec<Rational> {
        (0..self.surface.len())
            .map(|i| int(i64::from(i == self.exceptional)))
            .collect()
    }

    /// `η*D - tE`.
    pub fn twisted(&self, d: &[Rational], t: &Rational) -> Vec<Rational> {
        let mut out = self.pullback(d);
        out[self.exceptional] -= t;
        out
    }
}

/// Largest `t ≥ 0` with `base - t·dir` nef, `None` if `base` itself is not nef.
pub fn nef_threshold(
    surface: &ToricSurface,
    base: &[Rational],
    dir: &[Rational],
) -> Result<Option<Rational>> {
    let c = surface.intersections(base)?;
    let k = surface.intersections(dir)?;
    if c.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    c.iter()
        .zip(&k)
        .filter(|(_, k)| k.is_positive())
        .map(|(c, k)| c / k)
        .min()
        .map(Some)
        .ok_or(Error::Unbounded)
}

/// Seshadri data at a torus-fixed point of a smooth toric surface.
#[derive(Clone, Debug)]
pub struct SeshadriProblem {
    pub surface: ToricSurface,
    /// `L = Σ a_ρ D_ρ`.
    pub l: Vec<Rational>,
    /// Index of the maximal cone of the point.
    pub point: usize,
    pub blowup: Blowup,
}

impl SeshadriProblem {
    pub fn new(surface: ToricSurface, l: Vec<Rational>, point: usize) -> Result<SeshadriProblem> {
        if !surface.is_ample(&l)? {
            return Err(Error::NotAmple);
        }
        let blowup = surface.blowup(surface.cone(point)?)?;
        Ok(SeshadriProblem {
            surface,
            l,
            point,
            blowup,
        })
    }

    pub fn from_ints(surface: ToricSurface, l: &[i64], point: usize) -> Result<SeshadriProblem> {
        Self::new(surface, l.iter().map(|&x| int(x)).collect(), point)
    }

    /// `(L²)`.
    pub fn l_squared(&self) -> Rational {
        self.surface
            .intersection(&self.l, &self.l)
            .expect("class checked")
    }

    /// The same point with `L` replaced by `L'`.
    pub fn with_class(&self, l: Vec<Rational>) -> Result<SeshadriProblem> {
        Self::new(self.surface.clone(), l, self.point)
    }

    /// `η*L` on the blow-up.
    pub fn pullback(&self) -> Vec<Rational> {
        self.blowup.pullback(&self.l)
    }

    /// Affine chart map of the maximal cone `(v_a, v_b)` of `X̃`:
    /// `u ↦ (⟨u, v_a⟩ + a_a, ⟨u, v_b⟩ + a_b)` for `η*L = Σ a_ρ D_ρ`, the
    /// orders of vanishing of `x^u` along the two divisors.
    pub(crate) fn chart(&self, a: usize, b: usize) -> (Vec<QVec>, QVec) {
        let rays = self.blowup.surface.rays();
        let coeffs = self.pullback();
        (
            vec![ray_q(rays[a]), ray_q(rays[b])],
            vec![coeffs[a].clone(), coeffs[b].clone()],
        )
    }

    /// `Δ_{Y•}(η*L)` for the flag `E ⊃ E ∩ D_b` in the chart of the cone
    /// `(E, b)`, as the body of the corresponding lattice series.
    pub fn body_in_chart(&self, other: usize) -> Result<Polytope> {
        let (m, t) = self.chart(self.blowup.exceptional, other);
        let q = self.surface.polytope(&self.l)?.map_affine(&m, &t);
        Ok(toric_body(&LatticeSeries::new(q), &Valuation::lex(2), 2)?
            .body
            .polytope)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thresholds {
    /// Nef threshold of `η*L - tE`.
    pub epsilon: Rational,
    /// Effective threshold of `η*L - tE`.
    pub mu: Rational,
}

pub fn thresholds(p: &SeshadriProblem) -> Result<Thresholds> {
    let bl = &p.blowup;
    let epsilon = nef_threshold(&bl.surface, &p.pullback(), &bl.exceptional_class())?
        .ok_or(Error::NotAmple)?;
    // μ = max over P_L of the order of vanishing along E
    let (m, t) = p.chart(bl.exceptional, bl.exceptional);
    let mu = p
        .surface
        .polytope(&p.l)?
        .max_of(&m[0])
        .ok_or(Error::NotAmple)?
        + &t[0];
    Ok(Thresholds { epsilon, mu })
}

/// `t ↦ vol_{X̃|E}(η*L - tE)`, the slice lengths of the body for a flag
/// starting with `E`.
#[derive(Clone, Debug)]
pub struct Profile {
    pub body: Polytope,
    /// On `[0, μ]`; zero beyond.
    pub function: PLFunction,
}

impl Profile {
    pub fn eval(&self, t: &Rational) -> Rational {
        self.function
            .eval(std::slice::from_ref(t))
            .unwrap_or_else(Rational::zero)
    }

    /// `∫ t·profile(t) dt`.
    pub fn first_moment(&self) -> Rational {
        self.function.first_moment(0)
    }

    pub fn breakpoints(&self) -> Vec<Rational> {
        self.function.breakpoints_1d()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "body": self.body.to_json(),
            "breakpoints": self.breakpoints().iter().map(|t| json!([t.to_json(), self.eval(t).to_json()])).collect::<Vec<_>>(),
        })
    }
}

fn profile_from_body(body: Polytope) -> Result<Profile> {
    let mut ts: Vec<Rational> = body.vertices().iter().map(|v| v[0].clone()).collect();
    ts.sort();
    ts.dedup();
    let points: Vec<(Rational, Rational)> = ts
        .iter()
        .map(|t| {
            let s = body.slice(&[(0, t.clone())]);
            let len = s
                .coordinate_range(0)
                .map_or_else(Rational::zero, |(lo, hi)| hi - lo);
            (t.clone(), len)
        })
        .collect();
    Ok(Profile {
        body,
        function: PLFunction::interpolate_1d(&points)?,
    })
}

/// Profile in the chart of the cone `(E, v_{i+1})`.
pub fn restricted_volume_profile(p: &SeshadriProblem) -> Result<Profile> {
    let k = p.blowup.exceptional;
    profile_from_body(p.body_in_chart((k + 1) % p.blowup.surface.len())?)
}

/// Profile in the chart of the other cone `(v_i, E)` at `E`.
pub fn restricted_volume_profile_second_chart(p: &SeshadriProblem) -> Result<Profile> {
    profile_from_body(p.body_in_chart(p.blowup.exceptional - 1)?)
}

#[derive(Clone, Debug)]
pub struct IotaReport {
    /// `ι = ∫ t·vol_{X̃|E}(η*L - tE) dt / (L²)`.
    pub iota: Rational,
    pub integral: Rational,
    pub integral_second_chart: Rational,
    pub birational_invariance: bool,
    /// `profile(t) = t` on `[0, ε]`.
    pub ample_range_law: bool,
    pub l_squared: Rational,
    /// `ε³ / (3 (L²))`.
    pub lower_bound: Rational,
    pub lower_bound_holds: bool,
    pub equality: bool,
    /// `ε³ / (3! (L²))`.
    pub factorial_constant: Rational,
}

pub fn iota(p: &SeshadriProblem) -> Result<IotaReport> {
    let th = thresholds(p)?;
    let prof = restricted_volume_profile(p)?;
    let second = restricted_volume_profile_second_chart(p)?;
    let integral = prof.first_moment();
    let integral_second_chart = second.first_moment();
    let l_squared = p.l_squared();
    let iota = &integral / &l_squared;
    let mut checks: Vec<Rational> = prof
        .breakpoints()
        .into_iter()
        .filter(|t| *t <= th.epsilon)
        .collect();
    checks.push(th.epsilon.clone());
    let ample_range_law = checks.iter().all(|t| prof.eval(t) == *t);
    let eps3 = num_traits::pow(th.epsilon.clone(), 3);
    let lower_bound = &eps3 / (int(3) * &l_squared);
    let factorial_constant = &eps3 / (int(6) * &l_squared);
    Ok(IotaReport {
        lower_bound_holds: iota >= lower_bound,
        equality: iota == lower_bound,
        birational_invariance: integral == integral_second_chart,
        iota,
        integral,
        integral_second_chart,
        ample_range_law,
        l_squared,
        lower_bound,
        factorial_constant,
    })
}

/// An open interval `(lower, upper)` and the integers strictly inside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lower: Rational,
    pub upper: Rational,
    pub integers: Vec<i64>,
}

impl Window {
    pub fn new(lower: Rational, upper: Rational) -> Window {
        let lo: BigInt = floor_int(&lower) + 1;
        let hi = ceil_int(&upper) - 1;
        let mut integers = Vec::new();
        let mut k = lo;
        while k <= hi && integers.len() < 64 {
            integers.push(k.to_i64().unwrap_or(i64::MAX));
            k += 1;
        }
        Window {
            lower,
            upper,
            integers,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.integers.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({"lower": self.lower.to_json(), "upper": self.upper.to_json(), "integers": self.integers})
    }
}

pub const REASON_MU_EXCEEDS_EPSILON: &str = "rational via mu > epsilon";
pub const REASON_WINDOW: &str = "rational via integer b in the bundle window with rational iota";
pub const REASON_INCONCLUSIVE: &str = "criteria inconclusive; epsilon is exact on toric input";
pub const SCOPE_NOTE: &str = "only torus-fixed points of smooth toric surfaces are supported";

#[derive(Clone, Debug)]
pub struct Verdict {
    pub thresholds: Thresholds,
    pub iota: IotaReport,
    pub epsilon_rational: bool,
    pub mu_exceeds_epsilon: bool,
    /// `ε(L - K_X; x)`, `None` if `L - K_X` is not nef.
    pub epsilon_l_minus_k: Option<Rational>,
    /// `(ε, ε(L - K_X) - 2)`.
    pub window_epsilon: Option<Window>,
    /// `(μ, ε(L - K_X) - 2)`.
    pub window_mu: Option<Window>,
    pub iota_rational: bool,
    /// Whether `ε = μ` forces `ι` to equal the factorial constant and it does not.
    pub factorial_constant_inconsistent: bool,
    pub reason: &'static str,
    pub scope: &'static str,
}

pub fn rationality_verdict(p: &SeshadriProblem) -> Result<Verdict> {
    let th = thresholds(p)?;
    let io = iota(p)?;
    let lk: Vec<Rational> =
        p.l.iter()
            .zip(p.surface.anticanonical())
            .map(|(a, k)| a + k)
            .collect();
    let bl = &p.blowup;
    let epsilon_l_minus_k = nef_threshold(&bl.surface, &bl.pullback(&lk), &bl.exceptional_class())?;
    let upper = epsilon_l_minus_k.as_ref().map(|e| e - int(2));
    let window_epsilon = upper.clone().map(|u| Window::new(th.epsilon.clone(), u));
    let window_mu = upper.map(|u| Window::new(th.mu.clone(), u));
    let mu_exceeds_epsilon = th.mu > th.epsilon;
    let equal_thresholds = th.mu == th.epsilon;
    let reason = if mu_exceeds_epsilon {
        REASON_MU_EXCEEDS_EPSILON
    } else if window_epsilon.as_ref().is_some_and(|w| !w.is_empty()) {
        REASON_WINDOW
    } else {
        REASON_INCONCLUSIVE
    };
    Ok(Verdict {
        epsilon_rational: true,
        mu_exceeds_epsilon,
        factorial_constant_inconsistent: equal_thresholds && io.iota != io.factorial_constant,
        iota_rational: true,
        thresholds: th,
        iota: io,
        epsilon_l_minus_k,
        window_epsilon,
        window_mu,
        reason,
        scope: SCOPE_NOTE,
    })
}

impl ToJson for Thresholds {
    fn to_json(&self) -> Value {
        json!({"epsilon": self.epsilon.to_json(), "mu": self.mu.to_json()})
    }
}

impl ToJson for IotaReport {
    fn to_json(&self) -> Value {
        json!({
            "iota": self.iota.to_json(),
            "integral": self.integral.to_json(),
            "integral_second_chart": self.integral_second_chart.to_json(),
            "birational_invariance": self.birational_invariance,
            "ample_range_law": self.ample_range_law,
            "l_squared": self.l_squared.to_json(),
            "lower_bound": self.lower_bound.to_json(),
            "lower_bound_holds": self.lower_bound_holds,
            "equality": self.equality,
            "factorial_constant": self.factorial_constant.to_json(),
        })
    }
}

impl ToJson for Verdict {
    fn to_json(&self) -> Value {
        json!({
            "epsilon": self.thresholds.epsilon.to_json(),
            "mu": self.thresholds.mu.to_json(),
            "iota": self.iota.to_json(),
            "epsilon_rational": self.epsilon_rational,
            "mu_exceeds_epsilon": self.mu_exceeds_epsilon,
            "epsilon_l_minus_k": self.epsilon_l_minus_k.as_ref().map(|e| e.to_json()),
            "window_epsilon": self.window_epsilon.as_ref().map(Window::to_json),
            "window_mu": self.window_mu.as_ref().map(Window::to_json),
            "iota_rational": self.iota_rational,
            "factorial_constant_inconsistent": self.factorial_constant_inconsistent,
            "reason": self.reason,
            "scope": self.scope,
        })
    }
}

/// JSON form of a problem.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeshadriSpec {
    pub surface: SurfaceSpec,
    #[serde(rename = "L")]
    pub l: Vec<i64>,
    pub point: PointSpec,
    #[serde(default, deserialize_with = "crate::exact::json::de")]
    pub b: Option<Rational>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SurfaceSpec {
    Named(String),
    Fan { fan: Vec<Ray> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Index(usize),
    Name(String),
}

impl SeshadriSpec {
    pub fn build(&self) -> Result<SeshadriProblem> {
        let surface = match &self.surface {
            SurfaceSpec::Named(n) => ToricSurface::by_name(n)?,
            SurfaceSpec::Fan { fan } => ToricSurface::new(fan.clone())?,
        };
        let point = match &self.point {
            PointSpec::Index(i) => *i,
            PointSpec::Name(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("point {s:?} is not a cone index")))?,
        };
        SeshadriProblem::from_ints(surface, &self.l, point)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn p2(d: i64) -> SeshadriProblem {
        SeshadriProblem::from_ints(ToricSurface::p2(), &[0, 0, d], 0).unwrap()
    }

    fn p1p1(a: i64, b: i64) -> SeshadriProblem {
        SeshadriProblem::from_ints(ToricSurface::p1xp1(), &[0, 0, a, b], 0).unwrap()
    }

    #[test]
    fn fans() {
        assert!(ToricSurface::new(vec![[1, 0], [0, 1], [-1, -1]]).is_ok());
        assert!(matches!(
            ToricSurface::new(vec![[1, 0], [-1, -1], [0, 1]]),
            Err(Error::InvalidFan(_))
        ));
        assert!(matches!(
            ToricSurface::new(vec![[1, 0], [1, 2], [-1, -1]]),
            Err(Error::InvalidFan(_))
        ));
        assert!(matches!(
            ToricSurface::new(vec![[2, 0], [0, 1], [-1, -1]]),
            Err(Error::InvalidFan(_))
        ));
        let s = ToricSurface::p2();
        let d = vec![int(0), int(0), int(1)];
        assert_eq!(s.intersections(&d).unwrap(), vec![int(1), int(1), int(1)]);
        assert_eq!(s.intersection(&d, &d).unwrap(), int(1));
        assert_eq!(
            ToricSurface::p1xp1()
                .intersection(
                    &[int(0), int(0), int(1), int(2)],
                    &[int(0), int(0), int(1), int(2)]
                )
                .unwrap(),
            int(4)
        );
    }

    #[test]
    fn blowups() {
        let s = ToricSurface::p2();
        let bl = s.blowup(s.cone(0).unwrap()).unwrap();
        assert_eq!(bl.surface, ToricSurface::f1());
        assert_eq!(bl.exceptional, 1);
        let e = bl.exceptional_class();
        assert_eq!(bl.surface.intersection(&e, &e).unwrap(), int(-1));
        let l = vec![int(0), int(0), int(1)];
        let pl = bl.pullback(&l);
        assert_eq!(bl.surface.intersection(&pl, &e).unwrap(), int(0));
        assert_eq!(bl.surface.intersection(&pl, &pl).unwrap(), int(1));
        assert_eq!(
            bl.surface.blowup(s.cone(0).unwrap()).unwrap_err(),
            Error::NotFixedPoint
        );
        let q = ToricSurface::p1xp1();
        assert_eq!(q.blowup(q.cone(2).unwrap()).unwrap().surface.len(), 5);
        assert_eq!(s.cone(3).unwrap_err(), Error::NotFixedPoint);
    }

    #[test]
    fn threshold_values() {
        assert_eq!(
            thresholds(&p2(1)).unwrap(),
            Thresholds {
                epsilon: int(1),
                mu: int(1)
            }
        );
        for d in 1..5 {
            assert_eq!(
                thresholds(&p2(d)).unwrap(),
                Thresholds {
                    epsilon: int(d),
                    mu: int(d)
                }
            );
        }
        assert_eq!(
            thresholds(&p1p1(1, 2)).unwrap(),
            Thresholds {
                epsilon: int(1),
                mu: int(3)
            }
        );
        assert_eq!(
            thresholds(&p1p1(1, 1)).unwrap(),
            Thresholds {
                epsilon: int(1),
                mu: int(2)
            }
        );
        assert_eq!(
            SeshadriProblem::from_ints(ToricSurface::p2(), &[0, 0, 0], 0).unwrap_err(),
            Error::NotAmple
        );
    }

    #[test]
    fn profiles() {
        let p = restricted_volume_profile(&p2(1)).unwrap();
        for k in 0..=4 {
            assert_eq!(p.eval(&rat(k, 4)), rat(k, 4));
        }
        assert_eq!(p.eval(&rat(3, 2)), int(0));
        let q = restricted_volume_profile(&p1p1(1, 2)).unwrap();
        let expect = |t: Rational| {
            if t <= int(1) {
                t
            } else if t <= int(2) {
                int(1)
            } else {
                int(3) - t
            }
        };
        for k in 0..=12 {
            let t = rat(k, 4);
            assert_eq!(q.eval(&t), expect(t.clone()), "t = {t}");
        }
    }

    #[test]
    fn iota_values() {
        let r = iota(&p2(1)).unwrap();
        assert_eq!(r.iota, rat(1, 3));
        assert!(r.equality && r.lower_bound_holds && r.birational_invariance && r.ample_range_law);
        assert_eq!(r.factorial_constant, rat(1, 6));
        for d in 2..4 {
            assert_eq!(iota(&p2(d)).unwrap().iota, rat(d, 3));
        }
        let s = iota(&p1p1(1, 2)).unwrap();
        assert!(s.lower_bound_holds && !s.equality && s.birational_invariance && s.ample_range_law);
        // ∫ t·profile = 1/3 + 3/2 + 7/6 over [0,1], [1,2], [2,3]; L² = 4
        assert_eq!(s.integral, int(3));
        assert_eq!(s.iota, rat(3, 4));
    }

    #[test]
    fn verdicts() {
        let v = rationality_verdict(&p2(1)).unwrap();
        assert_eq!(v.epsilon_l_minus_k, Some(int(4)));
        let w = v.window_epsilon.clone().unwrap();
        assert_eq!((w.lower.clone(), w.upper.clone()), (int(1), int(2)));
        assert!(w.is_empty());
        assert!(v.factorial_constant_inconsistent);
        assert_eq!(v.reason, REASON_INCONCLUSIVE);
        let u = rationality_verdict(&p1p1(1, 2)).unwrap();
        assert!(u.mu_exceeds_epsilon);
        assert_eq!(u.reason, REASON_MU_EXCEEDS_EPSILON);
        assert!(!u.factorial_constant_inconsistent);
        let big = rationality_verdict(&p2(5)).unwrap().window_epsilon.unwrap();
        assert_eq!(
            (big.lower, big.upper, big.integers.len()),
            (int(5), int(6), 0)
        );
        assert_eq!(Window::new(int(1), rat(7, 2)).integers, vec![2, 3]);
        assert_eq!(Window::new(rat(-1, 2), int(1)).integers, vec![0]);
    }

    #[test]
    fn spec_parsing() {
        let s: SeshadriSpec =
            serde_json::from_str(r#"{"surface":"P2","L":[0,0,1],"point":"0"}"#).unwrap();
        assert_eq!(thresholds(&s.build().unwrap()).unwrap().epsilon, int(1));
        let f: SeshadriSpec = serde_json::from_str(
            r#"{"surface":{"fan":[[1,0],[0,1],[-1,0],[0,-1]]},"L":[0,0,1,2],"point":1,"b":[4,1]}"#,
        )
        .unwrap();
        assert_eq!(f.b, Some(int(4)));
        assert_eq!(thresholds(&f.build().unwrap()).unwrap().mu, int(3));
    }
}
