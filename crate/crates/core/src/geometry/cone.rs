//! Cones generated by finitely many vectors of positive degree.

use num_traits::{Signed, Zero};

use super::polytope::Polytope;
use crate::error::{Error, Result};
use crate::exact::rational::{scale, QVec, Rational};

/// `cone(X) = {Σ a_i x_i : a_i ≥ 0}` for vectors whose first coordinate
/// (the degree) is positive; such cones are pointed and determined by their
/// degree-1 section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexCone {
    ambient: usize,
    /// Irredundant rays, normalized to degree 1.
    rays: Vec<QVec>,
    section: Polytope,
}

impl ConvexCone {
    pub fn generated_by(ambient: usize, gens: &[QVec]) -> Result<ConvexCone> {
        let mut normalized = Vec::new();
        for g in gens {
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            if !g[0].is_positive() {
                return Err(Error::NotLinearlyBounded(format!(
                    "generator {g:?} has nonpositive degree"
                )));
            }
            normalized.push(scale(g, &(Rational::from_integer(1.into()) / &g[0])));
        }
        let section = Polytope::hull(ambient, &normalized);
        Ok(ConvexCone {
            ambient,
            rays: section.vertices().to_vec(),
            section,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rays(&self) -> &[QVec] {
        &self.rays
    }

    /// The section at degree 1, as a polytope in the full coordinates.
    pub fn degree_one_section(&self) -> &Polytope {
        &self.section
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        x[0].is_positive()
            && self
                .section
                .contains(&scale(x, &(Rational::from_integer(1.into()) / &x[0])))
    }

    /// Whether `x` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, x: &[Rational]) -> bool {
        if !x[0].is_positive() {
            return false;
        }
        let y = scale(x, &(Rational::from_integer(1.into()) / &x[0]));
        self.section.contains(&y)
            && self
                .section
                .halfspaces()
                .iter()
                .all(|h| h.slack(&y).is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qvec;

    #[test]
    fn redundant_generators_dropped() {
        let c =
            ConvexCone::generated_by(2, &[qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[2, 1])]).unwrap();
        assert_eq!(c.rays().len(), 2);
        assert!(c.contains(&qvec(&[3, 2])));
        assert!(!c.contains(&qvec(&[1, 2])));
        assert!(c.contains_in_relative_interior(&qvec(&[2, 1])));
        assert!(!c.contains_in_relative_interior(&qvec(&[2, 0])));
        assert!(ConvexCone::generated_by(2, &[qvec(&[0, 1])]).is_err());
    }
}
