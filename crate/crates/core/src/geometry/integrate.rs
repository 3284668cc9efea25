//! Exact iterated integration over polytopes.
//!
//! Between consecutive vertex coordinates the volume of a hyperplane slice of
//! an `m`-dimensional polytope is a polynomial of degree at most `m - 1`, so
//! an open Newton–Cotes rule with `m` nodes integrates each piece exactly.

use num_traits::{One, Zero};

use super::polytope::Polytope;
use crate::exact::linalg::solve;
use crate::exact::rational::{QVec, Rational};

/// Nodes `(i+1)/(m+1)` and exact weights of the open Newton–Cotes rule on `[0, 1]`.
pub fn open_newton_cotes(m: usize) -> (Vec<Rational>, Vec<Rational>) {
    let denom = Rational::from_integer((m as i64 + 1).into());
    let nodes: Vec<Rational> = (0..m)
        .map(|i| Rational::from_integer((i as i64 + 1).into()) / &denom)
        .collect();
    // Σ w_i x_i^j = 1/(j+1), j < m
    let rows: Vec<QVec> = (0..m)
        .map(|j| {
            nodes
                .iter()
                .map(|x| num_traits::pow(x.clone(), j))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = (0..m)
        .map(|j| Rational::one() / Rational::from_integer((j as i64 + 1).into()))
        .collect();
    let weights = solve(&rows, &rhs).expect("Vandermonde on distinct nodes");
    (nodes, weights)
}

/// `∫ leaf(P ∩ {x_0 = c_0, …, x_{outer-1} = c_{outer-1}}) dc` over the first
/// `outer` coordinates, where `leaf` receives the slice in the remaining
/// coordinates and returns a polynomial-in-the-slice-position quantity of
/// total degree below `P`'s ambient dimension (such as its volume).
pub fn iterated_integral(
    p: &Polytope,
    outer: usize,
    leaf: &dyn Fn(&Polytope) -> Rational,
) -> Rational {
    if outer == 0 {
        return leaf(p);
    }
    if p.is_empty() {
        return Rational::zero();
    }
    let m = p.ambient_dim();
    let mut xs: Vec<Rational> = p.vertices().iter().map(|v| v[0].clone()).collect();
    xs.sort();
    xs.dedup();
    let (nodes, weights) = open_newton_cotes(m);
    let mut total = Rational::zero();
    for w in xs.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let len = b - a;
        let mut piece = Rational::zero();
        for (x, wt) in nodes.iter().zip(&weights) {
            let c = a + &len * x;
            let s = p.slice(&[(0, c)]);
            piece += wt * iterated_integral(&s, outer - 1, leaf);
        }
        total += piece * len;
    }
    total
}

/// `∫ vol_s(P ∩ {first n-s coordinates fixed})` over the first `n - s`
/// coordinates, with the Euclidean volume in the last `s` coordinates.
pub fn fubini_volume(p: &Polytope, s: usize) -> Rational {
    let outer = p.ambient_dim() - s;
    iterated_integral(p, outer, &|q: &Polytope| {
        if s == 0 {
            if q.is_empty() {
                Rational::zero()
            } else {
                Rational::one()
            }
        } else {
            q.volume()
        }
    })
}
