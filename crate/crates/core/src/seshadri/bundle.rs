//! The `ℙ¹`-bundle `X̂ = ℙ(O ⊕ O(E))` over the blow-up as a toric 3-fold, and
//! the identification of the subgraph of `φ_{ord_E}` with `Δ_v̂(L̂)`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::{thresholds, SeshadriProblem, ToricSurface};
use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::linalg::solve;
use crate::exact::rational::{floor_int, fmt_rational, int, QVec, Rational};
use crate::filtration::{filtered_body, uniform_grid, Floor, HomogeneousFiltration};
use crate::geometry::{Affine, Halfspace, PLFunction, Polytope};
use crate::semigroup::Certification;
use crate::series::{toric_body, LatticeSeries};
use crate::valuation::{values_at, Valuation};

pub type Ray3 = [i64; 3];

fn ray3_q(r: &Ray3) -> QVec {
    r.iter().map(|&x| int(x)).collect()
}

/// Toric fan of `ℙ(O ⊕ O(Σ h_ρ D_ρ))` over a surface, with classes as
/// ray-coefficient vectors.
#[derive(Clone, Debug)]
pub struct BundleModel {
    pub b: Rational,
    /// Lifted base rays `(v_ρ, h_ρ)` in base order, then `X₁ = (0,0,1)` and `X₂ = (0,0,-1)`.
    pub rays: Vec<Ray3>,
    pub cones: Vec<[usize; 3]>,
    pub x1: usize,
    pub x2: usize,
    /// Index of `π*E` among the rays, when there is a blow-up.
    pub exceptional: Option<usize>,
    /// `π*(η*L)`.
    pub base_class: Vec<Rational>,
    /// `L̂ = π*(η*L) + b X₁`.
    pub l_hat: Vec<Rational>,
    /// `ξ = X₂`.
    pub xi: Vec<Rational>,
    pub pi_e: Vec<Rational>,
    /// `X₂ - X₁ - π*E` is principal.
    pub relation_principal: bool,
    /// `L̂ - (bξ + π*(η*L - bE))` is ℚ-principal.
    pub l_hat_relation: bool,
    pub smooth: bool,
}

impl BundleModel {
    fn build(
        base: &ToricSurface,
        heights: &[i64],
        base_class: &[Rational],
        b: Rational,
        exceptional: Option<usize>,
    ) -> Result<BundleModel> {
        let n = base.len();
        let mut rays: Vec<Ray3> = base
            .rays()
            .iter()
            .zip(heights)
            .map(|(v, &h)| [v[0], v[1], h])
            .collect();
        rays.push([0, 0, 1]);
        rays.push([0, 0, -1]);
        let (x1, x2) = (n, n + 1);
        let cones: Vec<[usize; 3]> = (0..n)
            .flat_map(|i| [[i, (i + 1) % n, x1], [i, (i + 1) % n, x2]])
            .collect();
        let unit =
            |k: usize| -> Vec<Rational> { (0..n + 2).map(|i| int(i64::from(i == k))).collect() };
        let mut lifted = base_class.to_vec();
        lifted.extend([Rational::zero(), Rational::zero()]);
        let mut l_hat = lifted.clone();
        l_hat[x1] = b.clone();
        let xi = unit(x2);
        let pi_e = exceptional.map_or_else(|| vec![Rational::zero(); n + 2], unit);
        let mut model = BundleModel {
            b,
            rays,
            cones,
            x1,
            x2,
            exceptional,
            base_class: lifted,
            l_hat,
            xi,
            pi_e,
            relation_principal: false,
            l_hat_relation: false,
            smooth: false,
        };
        model.smooth = model.cones.iter().all(|c| {
            let m: Vec<QVec> = c.iter().map(|&k| ray3_q(&model.rays[k])).collect();
            let d = crate::exact::linalg::determinant(&m);
            d == Rational::one() || d == -Rational::one()
        });
        let relation: Vec<Rational> = (0..n + 2)
            .map(|k| &model.xi[k] - &unit(x1)[k] - &model.pi_e[k])
            .collect();
        model.relation_principal = model
            .character_of(&relation)
            .is_some_and(|m| m.iter().all(|x| x.is_integer()));
        let rhs: Vec<Rational> = (0..n + 2)
            .map(|k| &model.b * &model.xi[k] + &model.base_class[k] - &model.b * &model.pi_e[k])
            .collect();
        let diff: Vec<Rational> = (0..n + 2).map(|k| &model.l_hat[k] - &rhs[k]).collect();
        model.l_hat_relation = model.character_of(&diff).is_some();
        Ok(model)
    }

    /// `m` with `div(χ^m) = Σ ⟨m, r_k⟩ D_k` equal to `d`, if any.
    pub fn character_of(&self, d: &[Rational]) -> Option<QVec> {
        let c = self.cones[0];
        let m_rows: Vec<QVec> = c.iter().map(|&k| ray3_q(&self.rays[k])).collect();
        let rhs: Vec<Rational> = c.iter().map(|&k| d[k].clone()).collect();
        let m = solve(&m_rows, &rhs)?;
        self.rays
            .iter()
            .zip(d)
            .all(|(r, x)| {
                ray3_q(r)
                    .iter()
                    .zip(&m)
                    .map(|(a, b)| a * b)
                    .sum::<Rational>()
                    == *x
            })
            .then_some(m)
    }

    /// `{w ∈ ℝ³ : ⟨w, r_k⟩ ≥ -d_k}`.
    pub fn polytope(&self, d: &[Rational]) -> Result<Polytope> {
        if d.len() != self.rays.len() {
            return Err(Error::DimensionMismatch {
                expected: self.rays.len(),
                got: d.len(),
            });
        }
        let hs: Vec<Halfspace> = self
            .rays
            .iter()
            .zip(d)
            .map(|(r, a)| Halfspace::new(r.iter().map(|&x| int(-x)).collect(), a.clone()))
            .collect();
        Polytope::from_halfspaces(3, &hs, &[])
    }

    pub fn l_hat_polytope(&self) -> Result<Polytope> {
        self.polytope(&self.l_hat)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "b": self.b.to_json(),
            "rays": self.rays,
            "cones": self.cones,
            "x1": self.x1,
            "x2": self.x2,
            "exceptional": self.exceptional,
            "l_hat": self.l_hat.to_json(),
            "xi": self.xi.to_json(),
            "pi_e": self.pi_e.to_json(),
            "relation_principal": self.relation_principal,
            "l_hat_relation": self.l_hat_relation,
            "smooth": self.smooth,
        })
    }
}

/// The bundle over the blow-up with `b` defaulting to the least integer above `μ`.
pub fn bundle_model(p: &SeshadriProblem, b: Option<Rational>) -> Result<BundleModel> {
    let mu = thresholds(p)?.mu;
    let b = b.unwrap_or_else(|| Rational::from_integer(floor_int(&mu) + 1));
    if b <= mu {
        return Err(Error::BTooSmall {
            b: fmt_rational(&b),
            mu: fmt_rational(&mu),
        });
    }
    let bl = &p.blowup;
    let heights: Vec<i64> = (0..bl.surface.len())
        .map(|i| i64::from(i == bl.exceptional))
        .collect();
    BundleModel::build(
        &bl.surface,
        &heights,
        &p.pullback(),
        b,
        Some(bl.exceptional),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub degree: u64,
    /// `|{(t, v(s)) : s ∈ F_t(d)}|` on the base.
    pub s1: usize,
    /// `|v̂(H⁰(dL̂))|` on the bundle.
    pub s2: usize,
    pub equal: bool,
}

#[derive(Clone, Debug)]
pub struct SubgraphReport {
    pub b: Rational,
    /// Base cone `(a, b)` of the chart of `v`.
    pub chart: (usize, usize),
    /// `Δ_v(η*L)` in chart coordinates.
    pub delta: Polytope,
    /// `φ_{ord_E}` on `delta`.
    pub phi: PLFunction,
    /// Subgraph of `φ_{ord_E}` over `Δ_v(η*L)`, swapped to `(t, y)`.
    pub subgraph_body: Polytope,
    /// `Δ_v̂(L̂)` in coordinates `(ord_{X₂}, y)`.
    pub bundle_body: Polytope,
    pub bundle_certified: bool,
    pub bodies_equal: bool,
    pub slices_agree: bool,
    pub subgraph_volume: Rational,
    pub bundle_volume: Rational,
    /// `∫_Δ φ_{ord_E}`.
    pub integral_phi: Rational,
    pub volumes_equal: bool,
    /// `vol_X̂(L̂) = 3!·vol(Δ_v̂(L̂))`.
    pub vol_hat: Rational,
    /// `∫_Δ φ / (L²)`.
    pub iota_from_volume: Rational,
    pub counts: Vec<CountRow>,
    pub first_mismatch: Option<String>,
}

impl SubgraphReport {
    pub fn holds(&self) -> bool {
        self.bodies_equal
            && self.volumes_equal
            && self.slices_agree
            && self.first_mismatch.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "b": self.b.to_json(),
            "chart": [self.chart.0, self.chart.1],
            "delta": self.delta.to_json(),
            "phi": self.phi.to_json(),
            "subgraph_body": self.subgraph_body.to_json(),
            "bundle_body": self.bundle_body.to_json(),
            "bundle_certified": self.bundle_certified,
            "bodies_equal": self.bodies_equal,
            "slices_agree": self.slices_agree,
            "subgraph_volume": self.subgraph_volume.to_json(),
            "bundle_volume": self.bundle_volume.to_json(),
            "integral_phi": self.integral_phi.to_json(),
            "volumes_equal": self.volumes_equal,
            "vol_hat": self.vol_hat.to_json(),
            "iota_from_volume": self.iota_from_volume.to_json(),
            "counts": self.counts.iter().map(|c| json!({"d": c.degree, "s1": c.s1, "s2": c.s2, "equal": c.equal})).collect::<Vec<_>>(),
            "first_mismatch": self.first_mismatch,
            "holds": self.holds(),
        })
    }
}

/// First maximal cone of the base avoiding `avoid`.
fn chart_cone(base: &ToricSurface, avoid: Option<usize>) -> (usize, usize) {
    let n = base.len();
    (0..n)
        .map(|i| (i, (i + 1) % n))
        .find(|&(a, b)| Some(a) != avoid && Some(b) != avoid)
        .expect("a complete fan has a cone avoiding any ray")
}

fn compare(
    model: &BundleModel,
    base: &ToricSurface,
    base_polytope: &Polytope,
    l_squared: Rational,
    verify_degree: u64,
) -> Result<SubgraphReport> {
    let (a, b) = chart_cone(base, model.exceptional);
    let (va, vb) = (base.rays()[a], base.rays()[b]);
    let c = vec![model.base_class[a].clone(), model.base_class[b].clone()];
    let q = base_polytope.map_affine(
        &[vec![int(va[0]), int(va[1])], vec![int(vb[0]), int(vb[1])]],
        &c,
    );
    // ⟨u, e⟩ + a_E in chart coordinates: ℓ = M^{-T} e, det M = 1
    let (functional, offset) = match model.exceptional {
        Some(k) => {
            let e = model.rays[k];
            let minv = [[vb[1], -va[1]], [-vb[0], va[0]]];
            let l: QVec = (0..2)
                .map(|j| int(minv[0][j] * e[0] + minv[1][j] * e[1]))
                .collect();
            let shift = &l[0] * &c[0] + &l[1] * &c[1];
            (l, &model.base_class[k] - shift)
        }
        None => (vec![Rational::zero(); 2], Rational::zero()),
    };
    let f = HomogeneousFiltration::ord_divisor(
        LatticeSeries::new(q.clone()),
        functional.clone(),
        offset.clone(),
    )?;
    let v2 = Valuation::lex(2);
    let body_window = verify_degree.clamp(1, 3);
    let top = f.e_max()?;
    let ts = if top > Rational::zero() {
        uniform_grid(&Rational::zero(), &top, 4)
    } else {
        vec![Rational::zero()]
    };
    let fb = filtered_body(&f, &v2, Floor::Zero, body_window, &ts)?;
    let swap = vec![
        vec![Rational::zero(), Rational::zero(), Rational::one()],
        vec![Rational::one(), Rational::zero(), Rational::zero()],
        vec![Rational::zero(), Rational::one(), Rational::zero()],
    ];
    let zero3 = vec![Rational::zero(); 3];
    let subgraph_body = fb.polytope().map_affine(&swap, &zero3);

    // v̂ = (ord_{X₂}, orders along the lifted chart divisors)
    let rows: Vec<QVec> = [model.x2, a, b]
        .iter()
        .map(|&k| ray3_q(&model.rays[k]))
        .collect();
    let shift: QVec = [model.x2, a, b]
        .iter()
        .map(|&k| model.l_hat[k].clone())
        .collect();
    let p_hat = model.l_hat_polytope()?.map_affine(&rows, &shift);
    let series3 = LatticeSeries::new(p_hat);
    let v3 = Valuation::lex(3);
    let body3 = toric_body(&series3, &v3, body_window)?;
    let bundle_certified = body3.body.certification == Certification::Exact;
    let bundle_body = body3.body.polytope;

    let phi = PLFunction::affine(&q, Affine::new(functional, offset))?;
    let integral_phi = phi.integral();
    let subgraph_volume = subgraph_body.volume();
    let bundle_volume = bundle_body.volume();
    let volumes_equal = subgraph_volume == bundle_volume && bundle_volume == integral_phi;

    let rees = f.rees_semigroup(&v2, Floor::Zero)?;
    let mut counts = Vec::new();
    let mut first_mismatch = None;
    for d in 1..=verify_degree {
        let mut s1: Vec<QVec> = rees
            .level(d)?
            .into_iter()
            .map(|p| vec![p[2].clone(), p[0].clone(), p[1].clone()])
            .collect();
        s1.sort();
        let s2 = values_at(&series3, &v3, d)?;
        let equal = s1 == s2;
        if !equal && first_mismatch.is_none() {
            let diff = s1
                .iter()
                .find(|x| !s2.contains(x))
                .or_else(|| s2.iter().find(|x| !s1.contains(x)));
            let shown = diff.map(|x| x.iter().map(fmt_rational).collect::<Vec<_>>().join(","));
            first_mismatch = Some(format!(
                "degree {d}: first differing point ({})",
                shown.unwrap_or_default()
            ));
        }
        counts.push(CountRow {
            degree: d,
            s1: s1.len(),
            s2: s2.len(),
            equal,
        });
    }
    let bodies_equal = subgraph_body == bundle_body;
    if !bodies_equal && first_mismatch.is_none() {
        let v = subgraph_body
            .vertices()
            .iter()
            .find(|x| !bundle_body.vertices().contains(x));
        let v = v.or_else(|| {
            bundle_body
                .vertices()
                .iter()
                .find(|x| !subgraph_body.vertices().contains(x))
        });
        first_mismatch = v.map(|x| {
            format!(
                "vertex ({})",
                x.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
            )
        });
    }
    Ok(SubgraphReport {
        b: model.b.clone(),
        chart: (a, b),
        delta: q,
        phi,
        bundle_certified,
        bodies_equal,
        slices_agree: fb.slices_agree(),
        vol_hat: &bundle_volume * int(6),
        iota_from_volume: &integral_phi / l_squared,
        subgraph_body,
        bundle_body,
        subgraph_volume,
        bundle_volume,
        integral_phi,
        volumes_equal,
        counts,
        first_mismatch,
    })
}

/// Compares the swapped subgraph of `φ_{ord_E}` with `Δ_v̂(L̂)` and the
/// per-degree value sets for `d ≤ verify_degree`.
pub fn subgraph_equals_body_check(
    p: &SeshadriProblem,
    b: Option<Rational>,
    verify_degree: u64,
) -> Result<SubgraphReport> {
    let model = bundle_model(p, b)?;
    let base = p.surface.polytope(&p.l)?;
    compare(
        &model,
        &p.blowup.surface,
        &base,
        p.l_squared(),
        verify_degree,
    )
}

/// The product `X × ℙ¹` with `L̂ = π*L` against the trivial filtration.
pub fn trivial_bundle_check(p: &SeshadriProblem, verify_degree: u64) -> Result<SubgraphReport> {
    let heights = vec![0; p.surface.len()];
    let model = BundleModel::build(&p.surface, &heights, &p.l, Rational::zero(), None)?;
    let base = p.surface.polytope(&p.l)?;
    compare(&model, &p.surface, &base, p.l_squared(), verify_degree)
}
