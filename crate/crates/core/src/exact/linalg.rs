//! Rational linear algebra on small dense matrices.

use num_traits::{One, Zero};

use super::rational::{sub, QVec, Rational};

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[QVec]) -> (Vec<QVec>, Vec<usize>) {
    let mut a: Vec<QVec> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[QVec]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(rows: &[QVec], ncols: usize) -> Vec<QVec> {
    let (r, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for square nonsingular `A`; `None` when singular.
pub fn solve(a: &[QVec], b: &[Rational]) -> Option<QVec> {
    let n = a.len();
    let aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

/// General solution of `A x = b`: a particular solution and a nullspace basis.
/// `None` when the system is inconsistent.
pub fn solve_affine(a: &[QVec], b: &[Rational], ncols: usize) -> Option<(QVec, Vec<QVec>)> {
    let aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some((x, nullspace(a, ncols)))
}

/// Determinant by Gaussian elimination.
pub fn determinant(a: &[QVec]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &f * &m[c][j];
                m[i][j] -= v;
            }
        }
    }
    det
}

/// The affine hull of a finite point set.
#[derive(Clone, Debug)]
pub struct AffineHull {
    pub base: QVec,
    /// RREF basis of the direction space.
    pub directions: Vec<QVec>,
    /// Pivot columns of `directions`; projecting onto them is injective on the hull.
    pub chart: Vec<usize>,
}

impl AffineHull {
    pub fn of(points: &[QVec]) -> Option<AffineHull> {
        let base = points.first()?.clone();
        let diffs: Vec<QVec> = points[1..].iter().map(|p| sub(p, &base)).collect();
        let (directions, chart) = rref(&diffs);
        Some(AffineHull {
            base,
            directions,
            chart,
        })
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Equations `a·x = b` cutting out the hull.
    pub fn equations(&self) -> Vec<(QVec, Rational)> {
        let n = self.base.len();
        nullspace(&self.directions, n)
            .into_iter()
            .map(|a| {
                let b = super::rational::dot(&a, &self.base);
                (a, b)
            })
            .collect()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.equations()
            .iter()
            .all(|(a, b)| &super::rational::dot(a, p) == b)
    }

    /// Recovers the ambient point from its chart coordinates.
    pub fn lift(&self, y: &[Rational]) -> QVec {
        // x = base + Σ (y_i - base[chart_i]) * dir_i, since dir_i has 1 at chart_i and 0 at other pivots.
        let mut x = self.base.clone();
        for (i, d) in self.directions.iter().enumerate() {
            let c = &y[i] - &self.base[self.chart[i]];
            for (xj, dj) in x.iter_mut().zip(d) {
                *xj += &c * dj;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, qvec, rat};

    #[test]
    fn rref_and_rank() {
        let rows = vec![qvec(&[1, 2, 3]), qvec(&[2, 4, 6]), qvec(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(crate::exact::rational::dot(r, &ns[0]).is_zero());
        }
    }

    #[test]
    fn solve_and_det() {
        let a = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        let x = solve(&a, &qvec(&[3, 5])).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert_eq!(determinant(&a), int(5));
        assert!(solve(&[qvec(&[1, 1]), qvec(&[2, 2])], &qvec(&[1, 2])).is_none());
    }

    #[test]
    fn affine_hull_of_segment_in_plane() {
        let h = AffineHull::of(&[qvec(&[0, 1]), qvec(&[2, 3]), qvec(&[1, 2])]).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.contains(&qvec(&[5, 6])));
        assert!(!h.contains(&qvec(&[5, 5])));
        assert_eq!(h.lift(&[int(4)]), qvec(&[4, 5]));
    }
}
