//! Graded subsemigroups of ℤ×ℚⁿ (degree first), their Hilbert functions and
//! Newton–Okounkov bodies.

mod body;
mod enumerate;
mod restricted;

pub use body::{
    growth_report, khovanskii_gap, unimodular_equivalence_check, Body, Certification, GrowthReport,
    GrowthRow, KhovanskiiReport, UnimodularReport,
};
pub use enumerate::Enumeration;
pub use restricted::{
    quotient_map, slice_theorem_check, volume_slice_integral_check,
    volume_slice_integral_from_body, RestrictedSemigroup, SliceReport, VolumeSliceReport,
};

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::lattice::Lattice;
use crate::exact::rational::{add, int, QVec, Rational};

/// An element `(degree, payload)` of ℤ×ℚⁿ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedPoint {
    pub degree: i64,
    pub payload: QVec,
}

impl GradedPoint {
    pub fn new(degree: i64, payload: QVec) -> GradedPoint {
        GradedPoint { degree, payload }
    }

    pub fn from_ints(coords: &[i64]) -> GradedPoint {
        GradedPoint {
            degree: coords[0],
            payload: coords[1..].iter().map(|&x| int(x)).collect(),
        }
    }

    /// `(degree, payload…)` as one rational vector.
    pub fn to_vec(&self) -> QVec {
        let mut v = vec![int(self.degree)];
        v.extend(self.payload.iter().cloned());
        v
    }

    pub fn add(&self, other: &GradedPoint) -> GradedPoint {
        GradedPoint {
            degree: self.degree + other.degree,
            payload: add(&self.payload, &other.payload),
        }
    }

    pub fn scale(&self, k: i64) -> GradedPoint {
        GradedPoint {
            degree: self.degree * k,
            payload: self.payload.iter().map(|x| x * int(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree == 0 && self.payload.iter().all(Zero::is_zero)
    }

    /// `payload / degree`, the point of the degree-1 section.
    pub fn normalized(&self) -> QVec {
        let d = int(self.degree);
        self.payload.iter().map(|x| x / &d).collect()
    }
}

impl fmt::Display for GradedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.degree)?;
        for x in &self.payload {
            write!(f, ",{}", crate::exact::rational::fmt_rational(x))?;
        }
        write!(f, ")")
    }
}

/// Payloads of the degree-`d` part, sorted lexicographically without repeats.
pub type LevelFn = dyn Fn(u64) -> Result<Vec<QVec>> + Send + Sync;

#[derive(Clone)]
enum Presentation {
    Generators(Vec<GradedPoint>),
    Enumerator(Arc<LevelFn>),
}

/// A graded semigroup given by generators or by a per-degree enumerator.
#[derive(Clone)]
pub struct GradedSemigroup {
    payload_dim: usize,
    presentation: Presentation,
    pub claimed_rank: Option<usize>,
    pub claimed_linearly_bounded: bool,
}

impl fmt::Debug for GradedSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.presentation {
            Presentation::Generators(g) => f
                .debug_struct("GradedSemigroup")
                .field("generators", g)
                .finish(),
            Presentation::Enumerator(_) => f
                .debug_struct("GradedSemigroup")
                .field("payload_dim", &self.payload_dim)
                .finish_non_exhaustive(),
        }
    }
}

impl GradedSemigroup {
    pub fn from_generators(gens: Vec<GradedPoint>) -> Result<GradedSemigroup> {
        let n = gens
            .first()
            .map(|g| g.payload.len())
            .ok_or_else(|| Error::InvalidInput("no generators".into()))?;
        if let Some(g) = gens.iter().find(|g| g.payload.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: g.payload.len(),
            });
        }
        Ok(GradedSemigroup {
            payload_dim: n,
            presentation: Presentation::Generators(gens),
            claimed_rank: None,
            claimed_linearly_bounded: true,
        })
    }

    /// Shorthand for integer generators written as `[degree, payload…]`.
    pub fn from_int_generators(gens: &[&[i64]]) -> Result<GradedSemigroup> {
        Self::from_generators(gens.iter().map(|g| GradedPoint::from_ints(g)).collect())
    }

    pub fn from_enumerator(payload_dim: usize, level: Arc<LevelFn>) -> GradedSemigroup {
        GradedSemigroup {
            payload_dim,
            presentation: Presentation::Enumerator(level),
            claimed_rank: None,
            claimed_linearly_bounded: true,
        }
    }

    /// `⟨(1,0), (1, 2^{-k}) : 0 ≤ k ≤ K⟩`, whose degree-1 lattice covolume is `2^{-K}`.
    pub fn nested_family(k_max: u32) -> GradedSemigroup {
        let mut gens = vec![GradedPoint::from_ints(&[1, 0])];
        for k in 0..=k_max {
            gens.push(GradedPoint::new(
                1,
                vec![Rational::new(
                    1.into(),
                    num_traits::pow(num_bigint::BigInt::from(2), k as usize),
                )],
            ));
        }
        Self::from_generators(gens).expect("nonempty")
    }

    /// `Σ ⊕ Σ'` graded by total degree; the degree of the first summand is
    /// recorded as an extra payload coordinate so the sum stays injective.
    pub fn direct_sum(&self, other: &GradedSemigroup) -> Result<GradedSemigroup> {
        let (a, b) = (self.generators_required()?, other.generators_required()?);
        let (n, m) = (self.payload_dim, other.payload_dim);
        let mut gens = Vec::new();
        for g in a {
            let mut p = vec![int(g.degree)];
            p.extend(g.payload.iter().cloned());
            p.extend(std::iter::repeat_n(Rational::zero(), m));
            gens.push(GradedPoint::new(g.degree, p));
        }
        for g in b {
            let mut p = vec![Rational::zero(); n + 1];
            p.extend(g.payload.iter().cloned());
            gens.push(GradedPoint::new(g.degree, p));
        }
        Self::from_generators(gens)
    }

    pub fn payload_dim(&self) -> usize {
        self.payload_dim
    }

    pub fn generators(&self) -> Option<&[GradedPoint]> {
        match &self.presentation {
            Presentation::Generators(g) => Some(g),
            Presentation::Enumerator(_) => None,
        }
    }

    fn generators_required(&self) -> Result<&[GradedPoint]> {
        self.generators()
            .ok_or_else(|| Error::InvalidInput("operation needs a generator presentation".into()))
    }

    /// Checks the linear-boundedness conditions on generators.
    pub fn validate(&self) -> Result<()> {
        if let Some(gens) = self.generators() {
            for g in gens {
                if g.degree < 0 {
                    return Err(Error::NotLinearlyBounded(format!(
                        "generator {g} has negative degree"
                    )));
                }
                if g.degree == 0 && !g.is_zero() && self.claimed_linearly_bounded {
                    return Err(Error::DegreeZeroNontrivial);
                }
            }
        }
        Ok(())
    }

    /// Lattice generated by the semigroup in ℤ×ℚⁿ. Enumerator-presented
    /// semigroups use all elements of degree ≤ `window`.
    pub fn group_lattice(&self, window: u64) -> Result<Lattice> {
        let rows: Vec<QVec> = match &self.presentation {
            Presentation::Generators(g) => g.iter().map(GradedPoint::to_vec).collect(),
            Presentation::Enumerator(_) => {
                let e = self.enumerate(window)?;
                e.elements()
                    .iter()
                    .filter(|p| p.degree > 0)
                    .map(GradedPoint::to_vec)
                    .collect()
            }
        };
        Ok(Lattice::generated_by(&rows, self.payload_dim + 1))
    }

    /// Rank of `⟨Σ⟩_ℤ`.
    pub fn rank(&self, window: u64) -> Result<usize> {
        Ok(self.group_lattice(window)?.rank())
    }

    /// Covolume of `⟨Σ⟩_ℤ ∩ L₁` in the degree-1 hyperplane.
    pub fn det1(&self, window: u64) -> Result<Rational> {
        self.group_lattice(window)?.tail_sublattice(1).covolume()
    }

    pub fn contains(&self, p: &GradedPoint) -> Result<bool> {
        if p.degree < 0 {
            return Ok(false);
        }
        let level = self.level(p.degree as u64)?;
        Ok(level.binary_search(&p.payload).is_ok())
    }

    /// Payloads of `Σ_d`.
    pub fn level(&self, d: u64) -> Result<Vec<QVec>> {
        match &self.presentation {
            Presentation::Enumerator(f) => f(d),
            Presentation::Generators(_) => Ok(self.enumerate(d)?.level(d)),
        }
    }
}
