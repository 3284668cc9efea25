//! Exact rational polytopes with paired V- and H-representations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::dd::{extreme_rays, integer_rows};
use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::lattice::saturated_basis;
use crate::exact::linalg::{determinant, rank, rref, solve_affine, AffineHull};
use crate::exact::rational::{add, dot, scale, sub, QVec, Rational};

/// The halfspace `normal·x ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: QVec,
    pub offset: Rational,
}

impl Halfspace {
    pub fn new(normal: QVec, offset: Rational) -> Halfspace {
        Halfspace { normal, offset }
    }

    /// `offset - normal·x`, nonnegative exactly on the halfspace.
    pub fn slack(&self, x: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, x)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        !self.slack(x).is_negative()
    }
}

/// A bounded convex polytope in ℚⁿ, possibly empty or lower-dimensional.
///
/// Vertices are kept sorted lexicographically. Facet inequalities are
/// expressed in the chart coordinates of the affine hull (their normals are
/// supported on the chart columns), so together with [`Polytope::equations`]
/// they cut out the polytope exactly.
#[derive(Clone, Debug)]
pub struct Polytope {
    ambient: usize,
    vertices: Vec<QVec>,
    hull: Option<AffineHull>,
    facets: Vec<Halfspace>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vertices == other.vertices
    }
}

impl Eq for Polytope {}

/// Facets of the hull of full-dimensional points `ys` in ℚᵏ, as (α, β, tight)
/// with `α·y ≤ β` and `tight` the indices of points on the facet.
fn chart_facets(ys: &[QVec], k: usize) -> Vec<(QVec, Rational, Vec<usize>)> {
    let rows: Vec<QVec> = ys
        .iter()
        .map(|y| {
            let mut r: QVec = y.iter().map(|c| -c).collect();
            r.push(Rational::one());
            r
        })
        .collect();
    let rays = extreme_rays(&rows, k + 1).expect("points span their chart");
    let mut out: Vec<(QVec, Rational, Vec<usize>)> = rays
        .into_iter()
        .filter(|r| r.coords[..k].iter().any(|c| !c.is_zero()))
        .map(|r| {
            let alpha = r.coords[..k]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect();
            (alpha, Rational::from_integer(r.coords[k].clone()), r.zeros)
        })
        .collect();
    out.sort();
    out
}

/// Indices of points in `ys` that are vertices, given the facet incidences.
fn vertex_indices(
    n_points: usize,
    facets: &[(QVec, Rational, Vec<usize>)],
    k: usize,
) -> Vec<usize> {
    if k == 0 {
        return vec![0];
    }
    let mut on: Vec<Vec<usize>> = vec![Vec::new(); n_points];
    for (f, (_, _, tight)) in facets.iter().enumerate() {
        for &p in tight {
            on[p].push(f);
        }
    }
    (0..n_points)
        .filter(|&p| {
            if on[p].len() < k {
                return false;
            }
            // p is a vertex iff no other point lies on every facet through p
            let mut common: Vec<bool> = vec![true; n_points];
            for &f in &on[p] {
                let mut mark = vec![false; n_points];
                for &q in &facets[f].2 {
                    mark[q] = true;
                }
                for q in 0..n_points {
                    common[q] &= mark[q];
                }
            }
            (0..n_points).all(|q| q == p || !common[q])
        })
        .collect()
}

fn affinely_independent_subset(ys: &[QVec], k: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut diffs: Vec<QVec> = Vec::new();
    for (i, y) in ys.iter().enumerate().skip(1) {
        if chosen.len() == k + 1 {
            break;
        }
        diffs.push(sub(y, &ys[0]));
        if rank(&diffs) == diffs.len() {
            chosen.push(i);
        } else {
            diffs.pop();
        }
    }
    chosen
}

impl Polytope {
    pub fn empty(ambient: usize) -> Polytope {
        Polytope {
            ambient,
            vertices: Vec::new(),
            hull: None,
            facets: Vec::new(),
            incidence: Vec::new(),
        }
    }

    /// Convex hull of finitely many points of ℚⁿ.
    pub fn hull(ambient: usize, points: &[QVec]) -> Polytope {
        let mut pts: Vec<QVec> = points.to_vec();
        pts.sort();
        pts.dedup();
        let Some(aff) = AffineHull::of(&pts) else {
            return Polytope::empty(ambient);
        };
        assert!(
            pts.iter().all(|p| p.len() == ambient),
            "point dimension differs from ambient"
        );
        let k = aff.dim();
        if k == 0 {
            return Polytope {
                ambient,
                vertices: pts,
                hull: Some(aff),
                facets: Vec::new(),
                incidence: vec![],
            };
        }
        let chart = |p: &QVec| -> QVec { aff.chart.iter().map(|&c| p[c].clone()).collect() };
        let ys: Vec<QVec> = pts.iter().map(chart).collect();

        // Incremental: start from a simplex, then add only points outside the current hull.
        let mut current: Vec<usize> = affinely_independent_subset(&ys, k);
        let mut facets = chart_facets(
            &current.iter().map(|&i| ys[i].clone()).collect::<Vec<_>>(),
            k,
        );
        let in_current: BTreeSet<usize> = current.iter().copied().collect();
        let rest: Vec<usize> = (0..ys.len()).filter(|i| !in_current.contains(i)).collect();
        for chunk in rest.chunks(256) {
            let outside: Vec<usize> = chunk
                .iter()
                .copied()
                .filter(|&i| facets.iter().any(|(a, b, _)| &dot(a, &ys[i]) > b))
                .collect();
            if outside.is_empty() {
                continue;
            }
            current.extend(outside);
            let sub_ys: Vec<QVec> = current.iter().map(|&i| ys[i].clone()).collect();
            facets = chart_facets(&sub_ys, k);
            let keep = vertex_indices(sub_ys.len(), &facets, k);
            current = keep.iter().map(|&j| current[j]).collect();
            let sub_ys: Vec<QVec> = current.iter().map(|&i| ys[i].clone()).collect();
            facets = chart_facets(&sub_ys, k);
        }
        let sub_ys: Vec<QVec> = current.iter().map(|&i| ys[i].clone()).collect();
        let keep = vertex_indices(sub_ys.len(), &facets, k);
        let mut vertices: Vec<QVec> = keep.iter().map(|&j| pts[current[j]].clone()).collect();
        vertices.sort();
        Polytope::from_parts(ambient, vertices, aff, &facets)
    }

    fn from_parts(
        ambient: usize,
        vertices: Vec<QVec>,
        aff: AffineHull,
        facets: &[(QVec, Rational, Vec<usize>)],
    ) -> Polytope {
        let halfspaces: Vec<Halfspace> = facets
            .iter()
            .map(|(alpha, beta, _)| {
                let mut normal = vec![Rational::zero(); ambient];
                for (a, &c) in alpha.iter().zip(&aff.chart) {
                    normal[c] = a.clone();
                }
                Halfspace::new(normal, beta.clone())
            })
            .collect();
        let incidence = halfspaces
            .iter()
            .map(|h| {
                (0..vertices.len())
                    .filter(|&v| h.slack(&vertices[v]).is_zero())
                    .collect()
            })
            .collect();
        Polytope {
            ambient,
            vertices,
            hull: Some(aff),
            facets: halfspaces,
            incidence,
        }
    }

    /// The polytope `{x : a·x ≤ b for all inequalities, c·x = d for all equations}`.
    pub fn from_halfspaces(
        ambient: usize,
        inequalities: &[Halfspace],
        equations: &[(QVec, Rational)],
    ) -> Result<Polytope> {
        let eq_rows: Vec<QVec> = equations.iter().map(|(a, _)| a.clone()).collect();
        let eq_rhs: Vec<Rational> = equations.iter().map(|(_, b)| b.clone()).collect();
        let Some((x0, dirs)) = solve_affine(&eq_rows, &eq_rhs, ambient) else {
            return Ok(Polytope::empty(ambient));
        };
        Self::from_parametrized(ambient, inequalities, x0, dirs)
    }

    /// Polytope inside the affine space `x0 + span(dirs)`.
    fn from_parametrized(
        ambient: usize,
        inequalities: &[Halfspace],
        x0: QVec,
        dirs: Vec<QVec>,
    ) -> Result<Polytope> {
        let k = dirs.len();
        // a·(x0 + Σ z_j d_j) ≤ b  ⇔  Σ z_j (a·d_j) ≤ b - a·x0
        let reduced: Vec<(QVec, Rational)> = inequalities
            .iter()
            .map(|h| {
                (
                    dirs.iter().map(|d| dot(&h.normal, d)).collect(),
                    h.slack(&x0),
                )
            })
            .collect();
        if k == 0 {
            let feasible = reduced.iter().all(|(_, b)| !b.is_negative());
            return Ok(if feasible {
                Polytope::hull(ambient, &[x0])
            } else {
                Polytope::empty(ambient)
            });
        }
        let normals: Vec<QVec> = reduced.iter().map(|(a, _)| a.clone()).collect();
        let (row_basis, _) = rref(&normals);
        if row_basis.len() < k {
            // A lineality space: restrict to the row space, then the set is empty or unbounded.
            let sub_dirs: Vec<QVec> = row_basis
                .iter()
                .map(|r| {
                    let mut v = vec![Rational::zero(); ambient];
                    for (c, d) in r.iter().zip(&dirs) {
                        v = add(&v, &scale(d, c));
                    }
                    v
                })
                .collect();
            let p = Self::from_parametrized(ambient, inequalities, x0, sub_dirs)?;
            return if p.is_empty() {
                Ok(p)
            } else {
                Err(Error::Unbounded)
            };
        }
        let mut rows: Vec<QVec> = reduced
            .iter()
            .map(|(a, b)| {
                let mut r: QVec = a.iter().map(|c| -c).collect();
                r.push(b.clone());
                r
            })
            .collect();
        let mut lambda = vec![Rational::zero(); k + 1];
        lambda[k] = Rational::one();
        rows.push(lambda);
        let rays = extreme_rays(&rows, k + 1).expect("full row rank");
        let mut points = Vec::new();
        let mut recession = false;
        for r in rays {
            if r.coords[k].is_zero() {
                recession = true;
                continue;
            }
            let lam = Rational::from_integer(r.coords[k].clone());
            let mut x = x0.clone();
            for (c, d) in r.coords[..k].iter().zip(&dirs) {
                x = add(&x, &scale(d, &(Rational::from_integer(c.clone()) / &lam)));
            }
            points.push(x);
        }
        if points.is_empty() {
            return Ok(Polytope::empty(ambient));
        }
        if recession {
            return Err(Error::Unbounded);
        }
        Ok(Polytope::hull(ambient, &points))
    }

    /// Axis-aligned box `∏ [lo_i, hi_i]`.
    pub fn cuboid(bounds: &[(Rational, Rational)]) -> Polytope {
        let n = bounds.len();
        let mut pts = vec![Vec::new()];
        for (lo, hi) in bounds {
            let mut next = Vec::new();
            for p in &pts {
                for v in [lo, hi] {
                    let mut q: QVec = p.clone();
                    q.push(v.clone());
                    next.push(q);
                }
            }
            pts = next;
        }
        Polytope::hull(n, &pts)
    }

    /// The standard simplex `conv{0, e_1, …, e_n}` scaled by `c`.
    pub fn simplex(n: usize, c: &Rational) -> Polytope {
        let mut pts = vec![vec![Rational::zero(); n]];
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = c.clone();
            pts.push(e);
        }
        Polytope::hull(n, &pts)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Dimension of the affine hull, `None` for the empty polytope.
    pub fn dim(&self) -> Option<usize> {
        self.hull.as_ref().map(AffineHull::dim)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == Some(self.ambient)
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    /// Facet inequalities (relative to the affine hull).
    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.facets
    }

    /// Vertex indices on each facet.
    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    /// Equations of the affine hull.
    pub fn equations(&self) -> Vec<(QVec, Rational)> {
        self.hull
            .as_ref()
            .map_or_else(Vec::new, AffineHull::equations)
    }

    pub fn affine_hull(&self) -> Option<&AffineHull> {
        self.hull.as_ref()
    }

    /// All constraints, with equations written as pairs of inequalities.
    pub fn inequalities(&self) -> Vec<Halfspace> {
        let mut out = self.facets.clone();
        for (a, b) in self.equations() {
            out.push(Halfspace::new(a.iter().map(|x| -x).collect(), -b.clone()));
            out.push(Halfspace::new(a, b));
        }
        out
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        match &self.hull {
            None => false,
            Some(h) => h.contains(x) && self.facets.iter().all(|f| f.contains(x)),
        }
    }

    /// Whether every vertex of `other` lies in `self`.
    pub fn contains_polytope(&self, other: &Polytope) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// Maximum of a linear functional, `None` when empty.
    pub fn max_of(&self, c: &[Rational]) -> Option<Rational> {
        self.vertices.iter().map(|v| dot(c, v)).max()
    }

    pub fn min_of(&self, c: &[Rational]) -> Option<Rational> {
        self.vertices.iter().map(|v| dot(c, v)).min()
    }

    /// Range of coordinate `i`.
    pub fn coordinate_range(&self, i: usize) -> Option<(Rational, Rational)> {
        let lo = self.vertices.iter().map(|v| v[i].clone()).min()?;
        let hi = self.vertices.iter().map(|v| v[i].clone()).max()?;
        Some((lo, hi))
    }

    /// Intersection with extra constraints, in the same ambient space.
    pub fn intersect(
        &self,
        inequalities: &[Halfspace],
        equations: &[(QVec, Rational)],
    ) -> Polytope {
        if self.is_empty() {
            return self.clone();
        }
        let mut ineqs = self.facets.clone();
        ineqs.extend_from_slice(inequalities);
        let mut eqs = self.equations();
        eqs.extend_from_slice(equations);
        Polytope::from_halfspaces(self.ambient, &ineqs, &eqs).expect("subset of a bounded set")
    }

    pub fn intersection(&self, other: &Polytope) -> Polytope {
        if other.is_empty() {
            return other.clone();
        }
        self.intersect(&other.facets, &other.equations())
    }

    /// `P ∩ {x_i = c_i}`, expressed in the remaining coordinates (in order).
    pub fn slice(&self, fixed: &[(usize, Rational)]) -> Polytope {
        let fixed_idx: Vec<usize> = fixed.iter().map(|(i, _)| *i).collect();
        let free: Vec<usize> = (0..self.ambient)
            .filter(|i| !fixed_idx.contains(i))
            .collect();
        let m = free.len();
        if self.is_empty() {
            return Polytope::empty(m);
        }
        let restrict = |a: &QVec, b: &Rational| -> (QVec, Rational) {
            let mut rhs = b.clone();
            for (i, c) in fixed {
                rhs -= &a[*i] * c;
            }
            (free.iter().map(|&j| a[j].clone()).collect(), rhs)
        };
        let ineqs: Vec<Halfspace> = self
            .facets
            .iter()
            .map(|h| {
                let (a, b) = restrict(&h.normal, &h.offset);
                Halfspace::new(a, b)
            })
            .collect();
        let eqs: Vec<(QVec, Rational)> = self
            .equations()
            .iter()
            .map(|(a, b)| restrict(a, b))
            .collect();
        Polytope::from_halfspaces(m, &ineqs, &eqs).expect("slice of a bounded set")
    }

    /// Image of the coordinate projection onto `coords` (in the given order).
    pub fn project(&self, coords: &[usize]) -> Polytope {
        let pts: Vec<QVec> = self
            .vertices
            .iter()
            .map(|v| coords.iter().map(|&i| v[i].clone()).collect())
            .collect();
        Polytope::hull(coords.len(), &pts)
    }

    /// Image under `x ↦ M x + t`, with `M` given by rows.
    pub fn map_affine(&self, m: &[QVec], t: &[Rational]) -> Polytope {
        let pts: Vec<QVec> = self
            .vertices
            .iter()
            .map(|v| m.iter().zip(t).map(|(row, ti)| dot(row, v) + ti).collect())
            .collect();
        Polytope::hull(m.len(), &pts)
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        let pts: Vec<QVec> = self.vertices.iter().map(|v| add(v, t)).collect();
        Polytope::hull(self.ambient, &pts)
    }

    pub fn scale(&self, c: &Rational) -> Polytope {
        let pts: Vec<QVec> = self.vertices.iter().map(|v| scale(v, c)).collect();
        Polytope::hull(self.ambient, &pts)
    }

    pub fn minkowski_sum(&self, other: &Polytope) -> Polytope {
        let mut pts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(add(a, b));
            }
        }
        Polytope::hull(self.ambient, &pts)
    }

    /// Cartesian product `P × Q`.
    pub fn product(&self, other: &Polytope) -> Polytope {
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                let mut p = a.clone();
                p.extend(b.iter().cloned());
                pts.push(p);
            }
        }
        Polytope::hull(self.ambient + other.ambient, &pts)
    }

    fn chart_coords(&self) -> Vec<QVec> {
        let h = self.hull.as_ref().expect("nonempty");
        self.vertices
            .iter()
            .map(|v| h.chart.iter().map(|&c| v[c].clone()).collect())
            .collect()
    }

    /// Pulling triangulation from lexicographically smallest vertices.
    /// Each simplex is a list of `dim + 1` vertex indices.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let Some(k) = self.dim() else {
            return Vec::new();
        };
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut out = Vec::new();
        self.pull(&all, k, &mut Vec::new(), &mut out);
        out
    }

    fn pull(&self, face: &[usize], dim: usize, apex: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if dim == 0 {
            let mut s = apex.clone();
            s.push(face[0]);
            out.push(s);
            return;
        }
        if face.len() == dim + 1 {
            let mut s = apex.clone();
            s.extend_from_slice(face);
            out.push(s);
            return;
        }
        let v0 = face[0];
        for sub in self.subfacets(face) {
            if sub.contains(&v0) {
                continue;
            }
            apex.push(v0);
            self.pull(&sub, dim - 1, apex, out);
            apex.pop();
        }
    }

    /// Facets of a face given by its (sorted) vertex set.
    fn subfacets(&self, face: &[usize]) -> Vec<Vec<usize>> {
        let mut cands: Vec<Vec<usize>> = Vec::new();
        if face.len() == 2 {
            return vec![vec![face[0]], vec![face[1]]];
        }
        for inc in &self.incidence {
            let s: Vec<usize> = face
                .iter()
                .copied()
                .filter(|v| inc.binary_search(v).is_ok())
                .collect();
            if !s.is_empty() && s.len() < face.len() {
                cands.push(s);
            }
        }
        cands.sort();
        cands.dedup();
        let maximal: Vec<Vec<usize>> = cands
            .iter()
            .filter(|s| {
                !cands
                    .iter()
                    .any(|t| t.len() > s.len() && s.iter().all(|v| t.binary_search(v).is_ok()))
            })
            .cloned()
            .collect();
        maximal
    }

    fn chart_volume(&self) -> Rational {
        let Some(k) = self.dim() else {
            return Rational::zero();
        };
        if k == 0 {
            return Rational::one();
        }
        let ys = self.chart_coords();
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        let total: Rational = self
            .triangulation()
            .iter()
            .map(|s| {
                let m: Vec<QVec> = s[1..].iter().map(|&i| sub(&ys[i], &ys[s[0]])).collect();
                determinant(&m).abs()
            })
            .sum();
        total / Rational::from_integer(fact)
    }

    /// Euclidean volume in ℚⁿ; zero unless full-dimensional.
    pub fn volume(&self) -> Rational {
        if !self.is_full_dimensional() {
            return Rational::zero();
        }
        self.chart_volume()
    }

    /// Volume inside the affine hull, normalized so that a fundamental domain
    /// of the lattice `span ∩ ℤⁿ` of the hull's direction space has volume 1.
    /// A point has relative volume 1; the empty polytope 0.
    pub fn relative_volume(&self) -> Rational {
        let Some(h) = &self.hull else {
            return Rational::zero();
        };
        let k = h.dim();
        if k == 0 {
            return Rational::one();
        }
        let basis = saturated_basis(&h.directions, self.ambient);
        // Chart projection of the lattice basis; its determinant rescales chart volume.
        let m: Vec<QVec> = basis
            .iter()
            .map(|b| {
                h.chart
                    .iter()
                    .map(|&c| Rational::from_integer(b[c].clone()))
                    .collect()
            })
            .collect();
        self.chart_volume() / determinant(&m).abs()
    }

    /// All integer points, sorted lexicographically.
    pub fn lattice_points(&self) -> Result<Vec<Vec<i64>>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.ambient;
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let (lo, hi) = self.coordinate_range(i).expect("nonempty");
            let lo = lo.ceil().to_integer().to_i64().ok_or(Error::Overflow)?;
            let hi = hi.floor().to_integer().to_i64().ok_or(Error::Overflow)?;
            if lo > hi {
                return Ok(Vec::new());
            }
            bounds.push((lo, hi));
        }
        let rows: Vec<QVec> = self
            .inequalities()
            .iter()
            .map(|h| {
                let mut r = h.normal.clone();
                r.push(h.offset.clone());
                r
            })
            .collect();
        let ints: Vec<Vec<i128>> = integer_rows(&rows)
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i128().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
        'outer: loop {
            let ok = ints.iter().all(|r| {
                let lhs: i128 = r[..n].iter().zip(&x).map(|(a, &xi)| a * xi as i128).sum();
                lhs <= r[n]
            });
            if ok {
                out.push(x.clone());
            }
            for i in (0..n).rev() {
                if x[i] < bounds[i].1 {
                    x[i] += 1;
                    continue 'outer;
                }
                x[i] = bounds[i].0;
            }
            break;
        }
        Ok(out)
    }

    /// Number of integer points.
    pub fn count_lattice_points(&self) -> Result<usize> {
        Ok(self.lattice_points()?.len())
    }

    /// JSON object `{ambient_dim, dim, vertices, halfspaces, equations}` with
    /// rationals as `[num, den]`.
    pub fn to_json(&self) -> Value {
        json!({
            "ambient_dim": self.ambient,
            "dim": self.dim(),
            "vertices": self.vertices.to_json(),
            "halfspaces": self.facets.iter().map(|h| json!({
                "normal": h.normal.to_json(),
                "offset": h.offset.to_json(),
            })).collect::<Vec<_>>(),
            "equations": self.equations().iter().map(|(a, b)| json!({
                "normal": a.to_json(),
                "offset": b.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for Polytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (j, x) in v.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", crate::exact::rational::fmt_rational(x))?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}
