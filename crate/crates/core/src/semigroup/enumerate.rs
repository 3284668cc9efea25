//! Degree-by-degree enumeration of graded semigroups.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{GradedPoint, GradedSemigroup, Presentation};
use crate::error::{Error, Result};
use crate::exact::rational::{common_denominator, QVec, Rational};

/// The parts `Σ_0, …, Σ_D` of a semigroup.
#[derive(Clone, Debug)]
pub struct Enumeration {
    levels: Vec<Vec<QVec>>,
}

impl Enumeration {
    pub fn max_degree(&self) -> u64 {
        self.levels.len() as u64 - 1
    }

    /// Payloads of `Σ_d`, sorted.
    pub fn level(&self, d: u64) -> Vec<QVec> {
        self.levels.get(d as usize).cloned().unwrap_or_default()
    }

    pub fn levels(&self) -> &[Vec<QVec>] {
        &self.levels
    }

    /// `H(d) = |Σ_d|` for `d = 0..=D`.
    pub fn hilbert(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }

    /// All elements ordered by (degree, payload).
    pub fn elements(&self) -> Vec<GradedPoint> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.iter().map(move |p| GradedPoint::new(d as i64, p.clone())))
            .collect()
    }

    pub fn contains(&self, p: &GradedPoint) -> bool {
        p.degree >= 0
            && self
                .levels
                .get(p.degree as usize)
                .is_some_and(|l| l.binary_search(&p.payload).is_ok())
    }
}

/// Generators with payloads scaled to integers by a common denominator.
struct IntGenerators {
    n: usize,
    den: BigInt,
    gens: Vec<(usize, Vec<i64>)>,
}

impl IntGenerators {
    fn new(gens: &[GradedPoint], n: usize) -> Result<IntGenerators> {
        let den = common_denominator(gens.iter().flat_map(|g| g.payload.iter()));
        let scale = Rational::from_integer(den.clone());
        let mut out = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let p: Vec<i64> = g
                .payload
                .iter()
                .map(|x| (x * &scale).to_integer().to_i64().ok_or(Error::Overflow))
                .collect::<Result<_>>()?;
            out.push((g.degree as usize, p));
        }
        out.sort();
        out.dedup();
        Ok(IntGenerators { n, den, gens: out })
    }

    fn to_payload(&self, p: &[i64]) -> QVec {
        p.iter()
            .map(|&x| Rational::new(BigInt::from(x), self.den.clone()))
            .collect()
    }

    /// Runs the dynamic program `Σ_d = ⋃_g (Σ_{d - deg g} + g)`, handing each
    /// level (flat, stride `n`, sorted, deduplicated) to `visit`.
    fn run(&self, max_degree: u64, mut visit: impl FnMut(u64, &[i64])) -> Result<()> {
        let n = self.n;
        let window = self.gens.iter().map(|g| g.0).max().unwrap_or(0);
        // ring buffer of the last `window` levels
        let mut ring: Vec<Vec<i64>> = vec![Vec::new(); window + 1];
        ring[0] = vec![0; n];
        visit(0, &ring[0]);
        for d in 1..=max_degree as usize {
            let mut acc: Vec<i64> = Vec::new();
            for (deg, g) in &self.gens {
                if *deg > d {
                    continue;
                }
                let prev = &ring[(d - deg) % (window + 1)];
                if prev.is_empty() {
                    continue;
                }
                let mut shifted = Vec::with_capacity(prev.len());
                for chunk in prev.chunks_exact(n) {
                    for (x, y) in chunk.iter().zip(g) {
                        shifted.push(x.checked_add(*y).ok_or(Error::Overflow)?);
                    }
                }
                acc = if acc.is_empty() {
                    shifted
                } else {
                    merge_dedup(&acc, &shifted, n)
                };
            }
            ring[d % (window + 1)] = acc;
            let lvl = &ring[d % (window + 1)];
            visit(d as u64, lvl);
        }
        Ok(())
    }
}

fn cmp_slices(a: &[i64], b: &[i64]) -> Ordering {
    a.cmp(b)
}

/// Merges two sorted, deduplicated stride-`n` lists.
fn merge_dedup(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match cmp_slices(&a[i..i + n], &b[j..j + n]) {
            Ordering::Less => {
                out.extend_from_slice(&a[i..i + n]);
                i += n;
            }
            Ordering::Greater => {
                out.extend_from_slice(&b[j..j + n]);
                j += n;
            }
            Ordering::Equal => {
                out.extend_from_slice(&a[i..i + n]);
                i += n;
                j += n;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl GradedSemigroup {
    /// `Σ_d` for `d ≤ max_degree`.
    pub fn enumerate(&self, max_degree: u64) -> Result<Enumeration> {
        self.validate()?;
        match &self.presentation {
            Presentation::Enumerator(f) => {
                let levels = (0..=max_degree).map(|d| f(d)).collect::<Result<_>>()?;
                Ok(Enumeration { levels })
            }
            Presentation::Generators(gens) => {
                let n = self.payload_dim;
                if n == 0 {
                    return Ok(Enumeration {
                        levels: self.payload_free_levels(gens, max_degree),
                    });
                }
                let ig = IntGenerators::new(gens, n)?;
                let mut levels = Vec::new();
                ig.run(max_degree, |_, flat| {
                    levels.push(flat.chunks_exact(n).map(|c| ig.to_payload(c)).collect());
                })?;
                Ok(Enumeration { levels })
            }
        }
    }

    /// Payload-free semigroups: `Σ_d` is `{()}` exactly when `d` is reachable.
    fn payload_free_levels(&self, gens: &[GradedPoint], max_degree: u64) -> Vec<Vec<QVec>> {
        let mut reach = vec![false; max_degree as usize + 1];
        reach[0] = true;
        for d in 1..=max_degree as usize {
            reach[d] = gens
                .iter()
                .any(|g| g.degree > 0 && g.degree as usize <= d && reach[d - g.degree as usize]);
        }
        reach
            .iter()
            .map(|&r| if r { vec![Vec::new()] } else { Vec::new() })
            .collect()
    }

    /// `H(d)` for `d ≤ max_degree` without storing the levels.
    pub fn hilbert_function(&self, max_degree: u64) -> Result<Vec<u64>> {
        self.validate()?;
        match &self.presentation {
            Presentation::Generators(gens) if self.payload_dim > 0 => {
                let ig = IntGenerators::new(gens, self.payload_dim)?;
                let mut h = Vec::with_capacity(max_degree as usize + 1);
                ig.run(max_degree, |_, flat| {
                    h.push((flat.len() / self.payload_dim) as u64)
                })?;
                Ok(h)
            }
            _ => Ok(self.enumerate(max_degree)?.hilbert()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qvec;

    #[test]
    fn hilbert_examples() {
        let s = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(s.hilbert_function(5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let t = GradedSemigroup::from_int_generators(&[&[1, 0]]).unwrap();
        assert_eq!(t.hilbert_function(3).unwrap(), vec![1, 1, 1, 1]);
        let u = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 3]]).unwrap();
        assert_eq!(u.hilbert_function(4).unwrap(), vec![1, 2, 3, 4, 5]);
        assert_eq!(
            u.enumerate(2).unwrap().level(2),
            vec![qvec(&[0]), qvec(&[3]), qvec(&[6])]
        );
    }

    #[test]
    fn brute_force_oracle() {
        // all sums of at most D generators, filtered by degree
        let gens: [&[i64]; 3] = [&[1, 0], &[1, 3], &[2, 1]];
        let s = GradedSemigroup::from_int_generators(&gens).unwrap();
        let e = s.enumerate(8).unwrap();
        let mut all = std::collections::BTreeSet::new();
        for a in 0..=8i64 {
            for b in 0..=8 - a {
                for c in 0..=(8 - a - b) / 2 {
                    all.insert((a + b + 2 * c, 3 * b + c));
                }
            }
        }
        for d in 0..=8 {
            let want: Vec<QVec> = all
                .iter()
                .filter(|p| p.0 == d)
                .map(|p| qvec(&[p.1]))
                .collect();
            assert_eq!(e.level(d as u64), want, "degree {d}");
        }
    }

    #[test]
    fn rational_payloads() {
        let s = GradedSemigroup::nested_family(2);
        // degree 1 payloads: 0, 1, 1/2, 1/4
        assert_eq!(s.hilbert_function(1).unwrap(), vec![1, 4]);
        assert!(s
            .contains(&GradedPoint::new(
                2,
                vec![Rational::new(3.into(), 4.into())]
            ))
            .unwrap());
    }
}
