//! Lattice computations built on the Hermite normal form: generated
//! lattices, saturations, kernels, and covolumes in the degree-1 hyperplane.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::linalg::nullspace;
use super::matrix::{hnf, IntegerMatrix};
use super::rational::{common_denominator, QVec, Rational};
use crate::error::{Error, Result};

/// Clears one common denominator from a list of rational rows.
pub fn clear_denominators(rows: &[QVec]) -> (Vec<Vec<BigInt>>, BigInt) {
    let den = common_denominator(rows.iter().flatten());
    let ints = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    (ints, den)
}

fn to_matrix(rows: &[Vec<BigInt>], ncols: usize) -> IntegerMatrix {
    if rows.is_empty() {
        return IntegerMatrix::zeros(0, ncols);
    }
    IntegerMatrix::from_rows(rows).expect("rows of equal length")
}

/// A ℤ-basis of `{x ∈ ℤⁿ : A x = 0}`.
pub fn integer_kernel(a: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return IntegerMatrix::identity(n).row_vecs();
    }
    let r = hnf(&a.transpose());
    (r.rank()..n).map(|i| r.u.row(i).to_vec()).collect()
}

/// A ℤ-basis of `span_ℚ(dirs) ∩ ℤⁿ`.
pub fn saturated_basis(dirs: &[QVec], n: usize) -> Vec<Vec<BigInt>> {
    let complement = nullspace(dirs, n);
    let (ints, _) = clear_denominators(&complement);
    integer_kernel(&to_matrix(&ints, n))
}

/// The subgroup of ℚⁿ generated by finitely many rational vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    /// Echelon ℤ-basis, scaled by `1/denominator`.
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    denominator: BigInt,
    ambient: usize,
}

impl Lattice {
    pub fn generated_by(gens: &[QVec], ambient: usize) -> Lattice {
        let (ints, den) = clear_denominators(gens);
        let r = hnf(&to_matrix(&ints, ambient));
        let basis = r.h.nonzero_rows();
        Lattice {
            basis,
            pivots: r.pivots,
            denominator: den,
            ambient,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> Vec<QVec> {
        let d = Rational::from_integer(self.denominator.clone());
        self.basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| Rational::from_integer(x.clone()) / &d)
                    .collect()
            })
            .collect()
    }

    /// Sublattice of vectors whose first `k` coordinates vanish, with those
    /// coordinates dropped. Relies on the echelon shape of the basis.
    pub fn tail_sublattice(&self, k: usize) -> Lattice {
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| self.pivots[i] >= k).collect();
        Lattice {
            basis: keep.iter().map(|&i| self.basis[i][k..].to_vec()).collect(),
            pivots: keep.iter().map(|&i| self.pivots[i] - k).collect(),
            denominator: self.denominator.clone(),
            ambient: self.ambient - k,
        }
    }

    /// Covolume of a full-rank lattice (`|det|` of a basis).
    pub fn covolume(&self) -> Result<Rational> {
        if self.rank() != self.ambient {
            return Err(Error::NotFullRank {
                rank: self.rank(),
                expected: self.ambient,
            });
        }
        // Echelon and full rank: triangular, determinant is the pivot product.
        let prod: BigInt = (0..self.rank())
            .map(|i| self.basis[i][self.pivots[i]].clone())
            .product();
        let den = num_traits::pow(self.denominator.clone(), self.ambient);
        Ok(Rational::new(prod.abs(), den))
    }

    /// Membership test for a rational vector.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let d = Rational::from_integer(self.denominator.clone());
        let scaled: Vec<Rational> = v.iter().map(|x| x * &d).collect();
        if scaled.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let mut rest: Vec<BigInt> = scaled.iter().map(|x| x.to_integer()).collect();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if rest[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = num_integer::Integer::div_rem(&rest[p], &row[p]);
            if !r.is_zero() {
                return false;
            }
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= &q * b;
            }
        }
        rest.iter().all(Zero::is_zero)
    }

    /// Whether the ℚ-span of `dirs` is spanned by lattice vectors, i.e. lies
    /// in the ℚ-span of the lattice.
    pub fn spans_rationally(&self, dirs: &[QVec]) -> bool {
        let mut rows = self.basis();
        let r0 = super::linalg::rank(&rows);
        rows.extend(dirs.iter().cloned());
        super::linalg::rank(&rows) == r0
    }
}

/// Covolume of `⟨rows⟩_ℤ ∩ L₁` inside the degree-1 hyperplane, where the
/// first coordinate of each row is its degree and the remaining coordinates
/// carry the induced Euclidean volume form.
///
/// The affine lattice `⟨rows⟩_ℤ ∩ L₁` is a translate of `⟨rows⟩_ℤ ∩ L₀`, so
/// this is the covolume of the degree-0 part.
pub fn degree_one_covolume(rows: &[QVec]) -> Result<Rational> {
    let ambient = rows.first().map_or(0, Vec::len);
    if ambient == 0 {
        return Err(Error::InvalidInput("no generators".into()));
    }
    let lat = Lattice::generated_by(rows, ambient);
    let degree_zero = lat.tail_sublattice(1);
    degree_zero.covolume()
}

/// An integer unimodular matrix `M` whose first `n - s` rows vanish on the
/// rational subspace spanned by `dirs` (of dimension `s`). Its last `s` rows
/// restricted to that subspace identify `span(dirs) ∩ ℤⁿ` with `ℤˢ`.
pub fn adapted_unimodular(dirs: &[QVec], n: usize) -> IntegerMatrix {
    let w = saturated_basis(dirs, n);
    let s = w.len();
    if s == 0 {
        return IntegerMatrix::identity(n);
    }
    // Coordinate subspaces get a permutation matrix so quotient coordinates stay readable.
    let unit_axis = |r: &Vec<BigInt>| {
        r.iter().filter(|x| !x.is_zero()).count() == 1
            && r.iter().all(|x| x.is_zero() || x.abs().is_one())
    };
    if w.iter().all(unit_axis) {
        let axes: Vec<usize> = w
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        let mut order: Vec<usize> = (0..n).filter(|i| !axes.contains(i)).collect();
        let mut sorted_axes = axes.clone();
        sorted_axes.sort_unstable();
        order.extend(sorted_axes);
        let mut m = IntegerMatrix::zeros(n, n);
        for (row, &col) in order.iter().enumerate() {
            m[(row, col)] = BigInt::one();
        }
        return m;
    }
    let wt = to_matrix(&w, n).transpose();
    let r = hnf(&wt);
    let mut rows: Vec<Vec<BigInt>> = (s..n).map(|i| r.u.row(i).to_vec()).collect();
    rows.extend((0..s).map(|i| r.u.row(i).to_vec()));
    IntegerMatrix::from_rows(&rows).expect("square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, qvec, rat};

    #[test]
    fn degree_one_covolume_examples() {
        assert_eq!(
            degree_one_covolume(&[qvec(&[1, 0]), qvec(&[1, 1])]).unwrap(),
            int(1)
        );
        assert_eq!(
            degree_one_covolume(&[qvec(&[1, 0]), qvec(&[1, 3])]).unwrap(),
            int(3)
        );
        assert_eq!(
            degree_one_covolume(&[qvec(&[1, 0, 0]), qvec(&[1, 1, 0]), qvec(&[1, 0, 1])]).unwrap(),
            int(1)
        );
        // rational payloads: ⟨(1,0),(1,1/4)⟩ has covolume 1/4
        assert_eq!(
            degree_one_covolume(&[qvec(&[1, 0]), vec![int(1), rat(1, 4)]]).unwrap(),
            rat(1, 4)
        );
    }

    #[test]
    fn covolume_requires_full_rank() {
        let err = degree_one_covolume(&[qvec(&[1, 0, 0]), qvec(&[1, 1, 0])]).unwrap_err();
        assert_eq!(
            err,
            Error::NotFullRank {
                rank: 1,
                expected: 2
            }
        );
    }

    #[test]
    fn kernel_and_saturation() {
        let a = IntegerMatrix::from_i64_rows(&[vec![2, 4, 6]]).unwrap();
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        // span{(2,4)} ∩ ℤ² = ℤ·(1,2)
        let s = saturated_basis(&[qvec(&[2, 4])], 2);
        assert_eq!(s.len(), 1);
        let v: Vec<i64> = s[0].iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert!(v == vec![1, 2] || v == vec![-1, -2]);
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::generated_by(&[qvec(&[2, 0]), qvec(&[0, 2]), qvec(&[1, 1])], 2);
        assert!(l.contains(&qvec(&[3, 1])));
        assert!(!l.contains(&qvec(&[1, 0])));
        assert!(!l.contains(&[rat(1, 2), int(0)]));
        assert_eq!(l.covolume().unwrap(), int(2));
    }

    #[test]
    fn adapted_matrix_kills_subspace() {
        let dirs = vec![qvec(&[1, 1, 0])];
        let m = adapted_unimodular(&dirs, 3);
        assert!(m.is_unimodular());
        let img = m.mul_vec(&[BigInt::from(1), BigInt::from(1), BigInt::from(0)]);
        assert!(img[..2].iter().all(Zero::is_zero));
        assert!(img[2].abs().is_one());
        // coordinate subspace: permutation putting the axis last
        let p = adapted_unimodular(&[qvec(&[0, 1, 0])], 3);
        assert_eq!(
            p.row(2),
            &[BigInt::from(0), BigInt::from(1), BigInt::from(0)]
        );
    }
}
