//! Double description method for pointed polyhedral cones `{y : A y ≥ 0}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::linalg::{rank, solve};
use crate::exact::rational::{QVec, Rational};

/// Extreme ray together with the indices of constraint rows vanishing on it.
#[derive(Clone, Debug)]
pub struct Ray {
    pub coords: Vec<BigInt>,
    pub zeros: Vec<usize>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Bits {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.0.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let b = x.trailing_zeros() as usize;
                out.push(w * 64 + b);
                x &= x - 1;
            }
        }
        out
    }
}

pub fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales each rational row to a primitive integer row with the same sign pattern.
pub fn integer_rows(rows: &[QVec]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let den = crate::exact::rational::common_denominator(r.iter());
            let mut v: Vec<BigInt> = r
                .iter()
                .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
                .collect();
            primitive(&mut v);
            v
        })
        .collect()
}

/// Extreme rays of `{y ∈ ℚᵏ : a·y ≥ 0 for every row a}`.
///
/// Returns `None` when the cone is not pointed (the rows do not span ℚᵏ).
/// The zero cone yields an empty ray list.
pub fn extreme_rays(rows: &[QVec], k: usize) -> Option<Vec<Ray>> {
    let a = integer_rows(rows);
    let m = a.len();
    if k == 0 {
        return Some(Vec::new());
    }
    // Greedy choice of k independent rows.
    let mut basis: Vec<usize> = Vec::new();
    let mut chosen: Vec<QVec> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if basis.len() == k {
            break;
        }
        chosen.push(r.clone());
        if rank(&chosen) == chosen.len() {
            basis.push(i);
        } else {
            chosen.pop();
        }
    }
    if basis.len() < k {
        return None;
    }

    let mut rays: Vec<(Vec<BigInt>, Bits)> = Vec::with_capacity(k);
    for j in 0..k {
        let e: QVec = (0..k)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let sol = solve(&chosen, &e).expect("independent rows");
        let mut v = integer_rows(&[sol]).pop().unwrap();
        primitive(&mut v);
        let mut z = Bits::new(m);
        for (jj, &i) in basis.iter().enumerate() {
            if jj != j {
                z.set(i);
            }
        }
        rays.push((v, z));
    }

    for i in (0..m).filter(|i| !basis.contains(i)) {
        let vals: Vec<BigInt> = rays.iter().map(|(r, _)| dot(&a[i], r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&j| vals[j].is_negative()).collect();
        if neg.is_empty() {
            for (j, (_, z)) in rays.iter_mut().enumerate() {
                if vals[j].is_zero() {
                    z.set(i);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let z = rays[p].1.and(&rays[n].1);
                if z.count() + 2 < k {
                    continue;
                }
                let adjacent =
                    (0..rays.len()).all(|r| r == p || r == n || !z.subset_of(&rays[r].1));
                if !adjacent {
                    continue;
                }
                let sp = &vals[p];
                let sn = -&vals[n];
                let mut v: Vec<BigInt> = rays[n]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(x, y)| sp * x + &sn * y)
                    .collect();
                primitive(&mut v);
                let mut z = z;
                z.set(i);
                fresh.push((v, z));
            }
        }
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::with_capacity(rays.len() + fresh.len());
        for (j, (r, z)) in rays.into_iter().enumerate() {
            if vals[j].is_negative() {
                continue;
            }
            let mut z = z;
            if vals[j].is_zero() {
                z.set(i);
            }
            next.push((r, z));
        }
        next.extend(fresh);
        rays = next;
    }
    Some(
        rays.into_iter()
            .map(|(coords, z)| Ray {
                coords,
                zeros: z.indices(),
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::qvec;

    fn sorted(mut rays: Vec<Ray>) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = rays
            .drain(..)
            .map(|r| r.coords.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let rays = extreme_rays(&[qvec(&[1, 0]), qvec(&[0, 1])], 2).unwrap();
        assert_eq!(sorted(rays), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn square_pyramid_cone() {
        // cone over the square [-1,1]^2 at height 1
        let rows = vec![
            qvec(&[1, 0, 1]),
            qvec(&[-1, 0, 1]),
            qvec(&[0, 1, 1]),
            qvec(&[0, -1, 1]),
        ];
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(
            sorted(rays),
            vec![
                vec![-1, -1, 1],
                vec![-1, 1, 1],
                vec![1, -1, 1],
                vec![1, 1, 1]
            ]
        );
    }

    #[test]
    fn zero_cone_and_non_pointed() {
        let rays = extreme_rays(&[qvec(&[1]), qvec(&[-1])], 1).unwrap();
        assert!(rays.is_empty());
        assert!(extreme_rays(&[qvec(&[1, 0])], 2).is_none());
    }
}
