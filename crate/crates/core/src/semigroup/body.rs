//! Newton–Okounkov bodies of graded semigroups and growth diagnostics.

use num_traits::Zero;

use super::{GradedPoint, GradedSemigroup};
use crate::error::{Error, Result};
use crate::exact::matrix::IntegerMatrix;
use crate::exact::rational::{int, to_f64, QVec, Rational};
use crate::geometry::{ConvexCone, Polytope};

/// How a body was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification {
    /// The cone over the generators, cut at degree 1.
    Exact,
    /// `Δ_D = conv{σ/deg σ : 1 ≤ deg σ ≤ D}`, an inner approximation.
    /// `stable_since` is the least degree from which `Δ_d` no longer grew.
    Inner { degree: u64, stable_since: u64 },
}

#[derive(Clone, Debug)]
pub struct Body {
    /// The body in payload coordinates.
    pub polytope: Polytope,
    pub certification: Certification,
}

impl GradedSemigroup {
    /// `cone(generators) ∩ {deg = 1}`, projected to payload coordinates.
    pub fn okounkov_body(&self) -> Result<Body> {
        let gens = self.generators_required()?;
        let n = self.payload_dim;
        for g in gens {
            if g.degree <= 0 && !g.is_zero() {
                return Err(Error::NotLinearlyBounded(format!(
                    "generator {g} has degree ≤ 0"
                )));
            }
        }
        let rows: Vec<QVec> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(GradedPoint::to_vec)
            .collect();
        let cone = ConvexCone::generated_by(n + 1, &rows)?;
        let coords: Vec<usize> = (1..=n).collect();
        Ok(Body {
            polytope: cone.degree_one_section().project(&coords),
            certification: Certification::Exact,
        })
    }

    /// The increasing chain `Δ_1 ⊆ … ⊆ Δ_D`.
    pub fn truncated_chain(&self, max_degree: u64) -> Result<Vec<Polytope>> {
        Ok(chain_from_levels(
            self.payload_dim,
            self.enumerate(max_degree)?.levels(),
        ))
    }

    /// `Δ_D`, flagged as an inner approximation of `Δ(Σ)`.
    pub fn truncated_body(&self, max_degree: u64) -> Result<Body> {
        Ok(body_from_chain(
            self.payload_dim,
            &self.truncated_chain(max_degree)?,
        ))
    }
}

/// `Δ_d = conv{x/d' : x ∈ Σ_{d'}, 1 ≤ d' ≤ d}` for each `d ≥ 1` given the levels `Σ_0, Σ_1, …`.
pub(crate) fn chain_from_levels(n: usize, levels: &[Vec<QVec>]) -> Vec<Polytope> {
    let mut chain = Vec::with_capacity(levels.len());
    let mut current = Polytope::empty(n);
    for (d, level) in levels.iter().enumerate().skip(1) {
        let dd = int(d as i64);
        let fresh: Vec<QVec> = level
            .iter()
            .map(|p| p.iter().map(|x| x / &dd).collect::<QVec>())
            .filter(|p| !current.contains(p))
            .collect();
        if !fresh.is_empty() {
            let mut pts: Vec<QVec> = current.vertices().to_vec();
            pts.extend(fresh);
            current = Polytope::hull(n, &pts);
        }
        chain.push(current.clone());
    }
    chain
}

pub(crate) fn body_from_chain(n: usize, chain: &[Polytope]) -> Body {
    let degree = chain.len() as u64;
    let last = chain.last().cloned().unwrap_or_else(|| Polytope::empty(n));
    let stable_since = chain
        .iter()
        .position(|p| *p == last)
        .map_or(degree, |i| i as u64 + 1);
    Body {
        polytope: last,
        certification: Certification::Inner {
            degree,
            stable_since,
        },
    }
}

#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub degree: u64,
    pub hilbert: u64,
    /// `H(d) / d^{r-1}`.
    pub normalized: f64,
    /// `H(d)·det¹ / (vol·d^{r-1})`.
    pub ratio: f64,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub rank: usize,
    pub det1: Rational,
    pub volume: Rational,
    /// `vol(Δ)/det¹`, the predicted leading coefficient.
    pub leading_coefficient: Rational,
    pub rows: Vec<GrowthRow>,
}

impl GrowthReport {
    pub fn last(&self) -> &GrowthRow {
        self.rows.last().expect("at least one row")
    }
}

/// Hilbert function against the `vol(Δ)/det¹ · d^{r-1}` law, for a
/// generator-presented semigroup of full rank.
pub fn growth_report(s: &GradedSemigroup, max_degree: u64, sample: &[u64]) -> Result<GrowthReport> {
    let rank = s.rank(0)?;
    let det1 = s.det1(0)?;
    let volume = s.okounkov_body()?.polytope.volume();
    let h = s.hilbert_function(max_degree)?;
    let lead = &volume / &det1;
    let lead_f = to_f64(&lead);
    let mut degrees: Vec<u64> = sample
        .iter()
        .copied()
        .filter(|&d| d >= 1 && d <= max_degree)
        .collect();
    if degrees.is_empty() || *degrees.last().unwrap() != max_degree {
        degrees.push(max_degree);
    }
    let rows = degrees
        .into_iter()
        .map(|d| {
            let scale = (d as f64).powi(rank as i32 - 1);
            let normalized = h[d as usize] as f64 / scale;
            GrowthRow {
                degree: d,
                hilbert: h[d as usize],
                normalized,
                ratio: normalized / lead_f,
            }
        })
        .collect();
    Ok(GrowthReport {
        rank,
        det1,
        volume,
        leading_coefficient: lead,
        rows,
    })
}

#[derive(Clone, Debug)]
pub struct KhovanskiiReport {
    /// Least `N` such that every tested group point of degree in `[N, D]`
    /// lies in Σ; `None` if points of degree `D` are still missing.
    pub gap_degree: Option<u64>,
    pub checked_points: usize,
    /// Tested group points not in Σ, by degree.
    pub missing: Vec<GradedPoint>,
    /// For `γ`: whether it is in `⟨Σ⟩_ℤ`, and the least `k` with `kγ ∈ Σ`.
    pub gamma_in_group: Option<bool>,
    pub multiple: Option<u64>,
    pub verified_to_degree: u64,
}

/// Tests asymptotic convexity on the group points of a cone `C` (given by
/// degree-first rays inside the interior of `cone(Σ)`) up to degree `D`, and
/// finds the least multiple of `γ` lying in Σ.
pub fn khovanskii_gap(
    s: &GradedSemigroup,
    cone_rays: &[QVec],
    gamma: Option<&GradedPoint>,
    max_degree: u64,
) -> Result<KhovanskiiReport> {
    let n = s.payload_dim;
    let lattice = s.group_lattice(max_degree)?;
    if lattice.rank() != n + 1 {
        return Err(Error::NotFullRank {
            rank: lattice.rank(),
            expected: n + 1,
        });
    }
    let body = s.okounkov_body()?.polytope;
    let mut section_pts = Vec::new();
    for r in cone_rays {
        if !r[0].is_integer() || r[0] <= Rational::zero() {
            return Err(Error::InvalidInput("cone rays need positive degree".into()));
        }
        let y: QVec = r[1..].iter().map(|x| x / &r[0]).collect();
        let interior = body.contains(&y)
            && body
                .halfspaces()
                .iter()
                .all(|h| h.slack(&y) > Rational::zero());
        if !interior {
            return Err(Error::BoundaryCone);
        }
        section_pts.push(y);
    }
    let e = s.enumerate(max_degree)?;
    let mut missing = Vec::new();
    let mut checked = 0;
    let mut last_bad: Option<u64> = None;
    if !section_pts.is_empty() {
        let section = Polytope::hull(n, &section_pts);
        let den = crate::exact::rational::common_denominator(lattice.basis().iter().flatten());
        let den_q = Rational::from_integer(den.clone());
        for d in 1..=max_degree {
            let scaled = section.scale(&(int(d as i64) * &den_q));
            for p in scaled.lattice_points()? {
                let payload: QVec = p.iter().map(|&x| int(x) / &den_q).collect();
                let mut full = vec![int(d as i64)];
                full.extend(payload.iter().cloned());
                if !lattice.contains(&full) {
                    continue;
                }
                checked += 1;
                let pt = GradedPoint::new(d as i64, payload);
                if !e.contains(&pt) {
                    last_bad = Some(d);
                    missing.push(pt);
                }
            }
        }
    }
    let gap_degree = match last_bad {
        None => Some(1),
        Some(d) if d < max_degree => Some(d + 1),
        Some(_) => None,
    };
    let (gamma_in_group, multiple) = match gamma {
        None => (None, None),
        Some(g) => {
            let in_group = lattice.contains(&g.to_vec());
            let k = if in_group && g.degree > 0 {
                (1..=max_degree / g.degree as u64).find(|&k| e.contains(&g.scale(k as i64)))
            } else {
                None
            };
            (Some(in_group), k)
        }
    };
    Ok(KhovanskiiReport {
        gap_degree,
        checked_points: checked,
        missing,
        gamma_in_group,
        multiple,
        verified_to_degree: max_degree,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularReport {
    pub unimodular: bool,
    pub maps_vertices: bool,
    pub equivalent: bool,
    /// Lower-triangular with unit diagonal (an ordered-group automorphism).
    pub lower_unipotent: bool,
}

/// Whether `φ` is unimodular and maps the vertex set of `Δ₁` onto that of `Δ₂`.
pub fn unimodular_equivalence_check(
    d1: &Polytope,
    d2: &Polytope,
    phi: &IntegerMatrix,
) -> Result<UnimodularReport> {
    let n = d1.ambient_dim();
    if d2.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d2.ambient_dim(),
        });
    }
    if phi.nrows() != n || phi.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if phi.nrows() != n {
                phi.nrows()
            } else {
                phi.ncols()
            },
        });
    }
    let rows: Vec<QVec> = phi
        .row_vecs()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut image: Vec<QVec> = d1
        .vertices()
        .iter()
        .map(|v| {
            rows.iter()
                .map(|r| crate::exact::rational::dot(r, v))
                .collect()
        })
        .collect();
    image.sort();
    image.dedup();
    let maps_vertices = image == d2.vertices();
    let unimodular = phi.is_unimodular();
    Ok(UnimodularReport {
        unimodular,
        maps_vertices,
        equivalent: unimodular && maps_vertices,
        lower_unipotent: phi.is_lower_unipotent(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qvec;

    #[test]
    fn exact_bodies() {
        let s = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(
            s.okounkov_body().unwrap().polytope,
            Polytope::hull(1, &[qvec(&[0]), qvec(&[1])])
        );
        let p = GradedSemigroup::from_int_generators(&[&[1, 0]]).unwrap();
        assert_eq!(
            p.okounkov_body().unwrap().polytope,
            Polytope::hull(1, &[qvec(&[0])])
        );
        let t =
            GradedSemigroup::from_int_generators(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]).unwrap();
        assert_eq!(
            t.okounkov_body().unwrap().polytope,
            Polytope::simplex(2, &int(1))
        );
        let bad = GradedSemigroup::from_int_generators(&[&[1, 0], &[-1, 1]]).unwrap();
        assert!(matches!(
            bad.okounkov_body(),
            Err(Error::NotLinearlyBounded(_))
        ));
    }

    #[test]
    fn truncated_bodies_increase_and_stabilize() {
        let s = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 3], &[2, 1]]).unwrap();
        let chain = s.truncated_chain(6).unwrap();
        for w in chain.windows(2) {
            assert!(w[1].contains_polytope(&w[0]));
        }
        let exact = s.okounkov_body().unwrap().polytope;
        assert_eq!(chain[1], exact);
        let b = s.truncated_body(6).unwrap();
        assert_eq!(
            b.certification,
            Certification::Inner {
                degree: 6,
                stable_since: 1
            }
        );
    }

    #[test]
    fn growth_examples() {
        let s = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 1]]).unwrap();
        let r = growth_report(&s, 200, &[]).unwrap();
        assert!((r.last().ratio - 1.0).abs() < 0.01);
        let u = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 3]]).unwrap();
        let r = growth_report(&u, 200, &[10]).unwrap();
        assert_eq!(r.volume, int(3));
        assert_eq!(r.det1, int(3));
        assert_eq!(r.rows[0].hilbert, 11);
    }

    #[test]
    fn khovanskii_examples() {
        let even = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 2]]).unwrap();
        let r = khovanskii_gap(&even, &[], Some(&GradedPoint::from_ints(&[1, 1])), 10).unwrap();
        assert_eq!(r.gamma_in_group, Some(false));
        let r = khovanskii_gap(&even, &[], Some(&GradedPoint::from_ints(&[2, 2])), 10).unwrap();
        assert_eq!(r.multiple, Some(1));

        let s = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 3], &[2, 1]]).unwrap();
        let r = khovanskii_gap(&s, &[], Some(&GradedPoint::from_ints(&[1, 1])), 30).unwrap();
        // brute force: least k with (k, k) a sum a(1,0)+b(1,3)+c(2,1)
        let brute = (1..=30i64)
            .find(|&k| (0..=k).any(|b| (0..=k / 2).any(|c| 3 * b + c == k && b + 2 * c <= k)))
            .unwrap();
        assert_eq!(r.multiple, Some(brute as u64));
        assert_eq!(brute, 3);

        let full = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 1]]).unwrap();
        let r = khovanskii_gap(
            &full,
            &[vec![int(4), int(1)], vec![int(4), int(3)]],
            None,
            12,
        )
        .unwrap();
        assert_eq!(r.gap_degree, Some(1));
        assert!(r.checked_points > 0);
        let edge = khovanskii_gap(&full, &[qvec(&[1, 0])], None, 5);
        assert_eq!(edge.unwrap_err(), Error::BoundaryCone);
    }

    #[test]
    fn unimodular_checks() {
        let sq = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]);
        let id = IntegerMatrix::identity(2);
        assert!(
            unimodular_equivalence_check(&sq, &sq, &id)
                .unwrap()
                .equivalent
        );
        let t1 = Polytope::simplex(2, &int(1));
        let t2 = Polytope::hull(2, &[qvec(&[0, 0]), qvec(&[1, 1]), qvec(&[0, 1])]);
        let shear = IntegerMatrix::from_i64_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        let r = unimodular_equivalence_check(&t1, &t2, &shear).unwrap();
        assert!(r.equivalent && r.lower_unipotent);
        let dbl = IntegerMatrix::from_i64_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(
            !unimodular_equivalence_check(&t1, &t2, &dbl)
                .unwrap()
                .equivalent
        );
        let bad = IntegerMatrix::identity(3);
        assert!(matches!(
            unimodular_equivalence_check(&t1, &t2, &bad),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
