//! Piecewise-linear functions on polytopes: concave envelopes, exact
//! integration, and subgraph bodies.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::polytope::{Halfspace, Polytope};
use crate::error::{Error, Result};
use crate::exact::json::ToJson;
use crate::exact::linalg::determinant;
use crate::exact::rational::{dot, sub, QVec, Rational};

/// `x ↦ gradient·x + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Affine {
    pub gradient: QVec,
    pub constant: Rational,
}

impl Affine {
    pub fn new(gradient: QVec, constant: Rational) -> Affine {
        Affine { gradient, constant }
    }

    pub fn constant(n: usize, c: Rational) -> Affine {
        Affine {
            gradient: vec![Rational::zero(); n],
            constant: c,
        }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.gradient, x) + &self.constant
    }
}

/// One simplex of the domain together with the affine function on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub simplex: Vec<QVec>,
    pub affine: Affine,
}

impl Cell {
    pub fn volume(&self) -> Rational {
        let k = self.simplex.len() - 1;
        let m: Vec<QVec> = self.simplex[1..]
            .iter()
            .map(|v| sub(v, &self.simplex[0]))
            .collect();
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        determinant(&m).abs() / Rational::from_integer(fact)
    }
}

/// A continuous piecewise-linear function on a full-dimensional polytope.
#[derive(Clone, Debug)]
pub struct PLFunction {
    domain: Polytope,
    cells: Vec<Cell>,
    concave: bool,
}

fn triangulate_affine(region: &Polytope, f: &Affine) -> Vec<Cell> {
    region
        .triangulation()
        .into_iter()
        .map(|s| Cell {
            simplex: s.iter().map(|&i| region.vertices()[i].clone()).collect(),
            affine: f.clone(),
        })
        .collect()
}

impl PLFunction {
    /// A single affine function on `domain`.
    pub fn affine(domain: &Polytope, f: Affine) -> Result<PLFunction> {
        Self::min_of_affine(domain, vec![f])
    }

    /// The concave function `x ↦ min_i f_i(x)` on `domain`.
    pub fn min_of_affine(domain: &Polytope, pieces: Vec<Affine>) -> Result<PLFunction> {
        let n = domain.ambient_dim();
        if !domain.is_full_dimensional() {
            return Err(Error::NotFullRank {
                rank: domain.dim().unwrap_or(0),
                expected: n,
            });
        }
        if pieces.is_empty() {
            return Err(Error::NoSamples);
        }
        let mut cells = Vec::new();
        let mut seen: Vec<&Affine> = Vec::new();
        for (i, f) in pieces.iter().enumerate() {
            if seen.contains(&f) {
                continue;
            }
            seen.push(f);
            // f_i ≤ f_j  ⇔  (g_i - g_j)·x ≤ c_j - c_i
            let cuts: Vec<Halfspace> = pieces
                .iter()
                .enumerate()
                .filter(|&(j, g)| j != i && g != f)
                .map(|(_, g)| {
                    Halfspace::new(sub(&f.gradient, &g.gradient), &g.constant - &f.constant)
                })
                .collect();
            let region = domain.intersect(&cuts, &[]);
            if region.is_full_dimensional() {
                cells.extend(triangulate_affine(&region, f));
            }
        }
        Ok(PLFunction {
            domain: domain.clone(),
            cells,
            concave: true,
        })
    }

    /// Linear interpolation of `(x, value)` pairs on the line; the domain is
    /// `[min x, max x]`.
    pub fn interpolate_1d(points: &[(Rational, Rational)]) -> Result<PLFunction> {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup_by(|a, b| a.0 == b.0);
        if pts.len() < 2 {
            return Err(Error::NoSamples);
        }
        let domain = Polytope::hull(
            1,
            &[vec![pts[0].0.clone()], vec![pts[pts.len() - 1].0.clone()]],
        );
        let mut cells = Vec::new();
        for w in pts.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            let slope = (y1 - y0) / (x1 - x0);
            let c = y0 - &slope * x0;
            cells.push(Cell {
                simplex: vec![vec![x0.clone()], vec![x1.clone()]],
                affine: Affine::new(vec![slope], c),
            });
        }
        let concave = cells
            .windows(2)
            .all(|w| w[1].affine.gradient[0] <= w[0].affine.gradient[0]);
        Ok(PLFunction {
            domain,
            cells,
            concave,
        })
    }

    pub fn domain(&self) -> &Polytope {
        &self.domain
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn is_concave(&self) -> bool {
        self.concave
    }

    /// Distinct affine pieces, sorted.
    pub fn pieces(&self) -> Vec<Affine> {
        let mut v: Vec<Affine> = self.cells.iter().map(|c| c.affine.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Value at `x`; `None` outside the domain.
    pub fn eval(&self, x: &[Rational]) -> Option<Rational> {
        if !self.domain.contains(x) {
            return None;
        }
        if self.concave {
            return self.cells.iter().map(|c| c.affine.eval(x)).min();
        }
        let cell = self
            .cells
            .iter()
            .find(|c| Polytope::hull(self.domain.ambient_dim(), &c.simplex).contains(x))?;
        Some(cell.affine.eval(x))
    }

    /// Values at the domain vertices and all cell vertices.
    pub fn max_value(&self) -> Option<Rational> {
        self.cells
            .iter()
            .flat_map(|c| c.simplex.iter().map(|v| c.affine.eval(v)))
            .max()
    }

    pub fn min_value(&self) -> Option<Rational> {
        self.cells
            .iter()
            .flat_map(|c| c.simplex.iter().map(|v| c.affine.eval(v)))
            .min()
    }

    /// Exact integral over the domain.
    pub fn integral(&self) -> Rational {
        self.cells
            .iter()
            .map(|c| {
                let k = c.simplex.len();
                let sum: Rational = c.simplex.iter().map(|v| c.affine.eval(v)).sum();
                c.volume() * sum / Rational::from_integer(BigInt::from(k))
            })
            .sum()
    }

    /// `∫ x_axis · f(x) dx` over the domain.
    pub fn first_moment(&self, axis: usize) -> Rational {
        // For affine g, h on a k-simplex: ∫ g h = vol (Σ g_i h_i + Σ g_i Σ h_j) / ((k+1)(k+2)).
        self.cells
            .iter()
            .map(|c| {
                let k1 = c.simplex.len();
                let g: Vec<Rational> = c.simplex.iter().map(|v| v[axis].clone()).collect();
                let h: Vec<Rational> = c.simplex.iter().map(|v| c.affine.eval(v)).collect();
                let gh: Rational = g.iter().zip(&h).map(|(a, b)| a * b).sum();
                let sg: Rational = g.iter().sum();
                let sh: Rational = h.iter().sum();
                c.volume() * (gh + sg * sh) / Rational::from_integer(BigInt::from(k1 * (k1 + 1)))
            })
            .sum()
    }

    /// Breakpoints (cell vertex coordinates) of a function on the line.
    pub fn breakpoints_1d(&self) -> Vec<Rational> {
        let mut xs: Vec<Rational> = self
            .cells
            .iter()
            .flat_map(|c| c.simplex.iter().map(|v| v[0].clone()))
            .collect();
        xs.sort();
        xs.dedup();
        xs
    }

    /// Whether the interior-facet supporting-hyperplane test holds: on every
    /// cell, every affine piece of the function dominates the cell's piece.
    pub fn check_concavity(&self) -> bool {
        let pieces = self.pieces();
        self.cells.iter().all(|c| {
            c.simplex
                .iter()
                .all(|v| pieces.iter().all(|p| p.eval(v) >= c.affine.eval(v)))
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "domain": self.domain.to_json(),
            "concave": self.concave,
            "cells": self.cells.iter().map(|c| c.simplex.to_json()).collect::<Vec<_>>(),
            "affine_coeffs": self.cells.iter().map(|c| json!({
                "gradient": c.affine.gradient.to_json(),
                "constant": c.affine.constant.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Least concave function dominating the samples, on the hull of the sample
/// points (it is `-∞` elsewhere).
pub fn upper_concave_envelope(
    samples: &[(QVec, Rational)],
    domain: &Polytope,
) -> Result<PLFunction> {
    let n = domain.ambient_dim();
    if samples.is_empty() {
        return Err(Error::NoSamples);
    }
    if let Some((p, _)) = samples.iter().find(|(p, _)| !domain.contains(p)) {
        return Err(Error::InvalidInput(format!(
            "sample point {p:?} outside the domain"
        )));
    }
    let support = Polytope::hull(
        n,
        &samples.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
    );
    if !support.is_full_dimensional() {
        return Err(Error::NotFullRank {
            rank: support.dim().unwrap_or(0),
            expected: n,
        });
    }
    let lifted: Vec<QVec> = samples
        .iter()
        .map(|(p, v)| {
            let mut q = p.clone();
            q.push(v.clone());
            q
        })
        .collect();
    let body = Polytope::hull(n + 1, &lifted);
    let mut pieces = Vec::new();
    if body.is_full_dimensional() {
        for h in body.halfspaces() {
            let at = &h.normal[n];
            if at.is_positive() {
                // a·x + a_t t ≤ b  ⇒  t ≤ (b - a·x)/a_t
                let gradient = h.normal[..n].iter().map(|a| -a / at).collect();
                pieces.push(Affine::new(gradient, &h.offset / at));
            }
        }
    } else {
        // all lifted points on one non-vertical hyperplane
        let (a, b) = body
            .equations()
            .into_iter()
            .next()
            .expect("codimension one");
        let at = a[n].clone();
        let gradient = a[..n].iter().map(|x| -x / &at).collect();
        pieces.push(Affine::new(gradient, b / at));
    }
    PLFunction::min_of_affine(&support, pieces)
}

/// `{(x, t) : x ∈ Δ ∩ dom φ, floor ≤ t ≤ φ(x)}` for concave φ.
pub fn subgraph_body(delta: &Polytope, phi: &PLFunction, floor: &Rational) -> Result<Polytope> {
    if !phi.is_concave() {
        return Err(Error::InvalidInput(
            "subgraph body needs a concave function".into(),
        ));
    }
    let n = delta.ambient_dim();
    let lift = |h: &Halfspace| {
        let mut a = h.normal.clone();
        a.push(Rational::zero());
        Halfspace::new(a, h.offset.clone())
    };
    let mut ineqs: Vec<Halfspace> = delta.inequalities().iter().map(lift).collect();
    ineqs.extend(phi.domain().inequalities().iter().map(lift));
    let mut down = vec![Rational::zero(); n];
    down.push(-Rational::one());
    ineqs.push(Halfspace::new(down, -floor.clone()));
    for p in phi.pieces() {
        // t - g·x ≤ c
        let mut a: QVec = p.gradient.iter().map(|g| -g).collect();
        a.push(Rational::one());
        ineqs.push(Halfspace::new(a, p.constant.clone()));
    }
    let body = Polytope::from_halfspaces(n + 1, &ineqs, &[])?;
    if body.is_empty() {
        return Err(Error::EmptyBody);
    }
    Ok(body)
}
