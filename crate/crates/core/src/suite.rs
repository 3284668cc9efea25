//! Seeded randomized property suites with independent brute-force oracles.
//!
//! Every suite is deterministic given its seed and reports the number of
//! trials and failures rather than panicking, so callers can print verdicts.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exact::linalg::{rank, solve_affine};
use crate::exact::rational::{int, rat, sub, QVec, Rational};
use crate::geometry::{upper_concave_envelope, Polytope};
use crate::valuation::{LaurentPoly, MonomialValuation, Valuation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    /// Description of the first failing trial.
    pub first_failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &'static str, seed: u64) -> SuiteReport {
        SuiteReport {
            name,
            seed,
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "seed": self.seed,
            "trials": self.trials,
            "failures": self.failures,
            "first_failure": self.first_failure,
        })
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_poly(r: &mut ChaCha8Rng, n: usize) -> LaurentPoly {
    let terms = r.gen_range(1..=4);
    let mut p = LaurentPoly::zero(n);
    while p.is_zero() {
        p = LaurentPoly::from_terms(
            n,
            (0..terms).map(|_| {
                let e: Vec<i64> = (0..n).map(|_| r.gen_range(-3..=3)).collect();
                let c = r.gen_range(-4i64..=4);
                (e, int(if c == 0 { 1 } else { c }))
            }),
        );
    }
    p
}

/// Full-rank weights whose rows are lex-positive.
fn random_valuation(r: &mut ChaCha8Rng, n: usize) -> Valuation {
    if r.gen_bool(0.5) {
        return Valuation::lex(n);
    }
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                let mut w: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=3)).collect();
                if let Some(first) = w.iter_mut().find(|x| **x != 0) {
                    *first = first.abs();
                } else {
                    w[0] = 1;
                }
                w
            })
            .collect();
        if let Ok(v) = MonomialValuation::new(rows) {
            return Valuation::Monomial(v);
        }
    }
}

/// `v(fg) = v(f) + v(g)`, `v(f + g) ≥ min(v(f), v(g))`, `v(cf) = v(f)` on
/// random Laurent polynomial pairs.
pub fn valuation_axioms(seed: u64, trials: usize) -> SuiteReport {
    let mut r = rng(seed);
    let mut rep = SuiteReport::new("valuation_axioms", seed);
    for _ in 0..trials {
        let n = r.gen_range(1..=3);
        let v = random_valuation(&mut r, n);
        let (f, g) = (random_poly(&mut r, n), random_poly(&mut r, n));
        let (vf, vg) = (
            v.evaluate(&f).expect("nonzero"),
            v.evaluate(&g).expect("nonzero"),
        );
        let mut ok = v.evaluate(&f.mul(&g)).ok() == Some(&vf + &vg);
        let s = f.add(&g);
        if !s.is_zero() {
            ok &= v.evaluate(&s).expect("nonzero") >= vf.clone().min(vg.clone());
        }
        ok &= v.evaluate(&f.scale(&rat(-7, 3))).ok() == Some(vf);
        rep.record(ok, || format!("f = {f}, g = {g}, v = {v:?}"));
    }
    rep
}

/// Whether `p` is a convex combination of `pts`, by Carathéodory: some
/// affinely independent subset contains it.
fn in_hull_brute(pts: &[QVec], p: &[Rational]) -> bool {
    let n = p.len();
    let m = pts.len();
    for mask in 1u32..(1 << m) {
        let sub_pts: Vec<&QVec> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &pts[i])
            .collect();
        if sub_pts.len() > n + 1 {
            continue;
        }
        // Σ λ_i q_i = p, Σ λ_i = 1
        let k = sub_pts.len();
        let mut rows: Vec<QVec> = (0..n)
            .map(|j| sub_pts.iter().map(|q| q[j].clone()).collect())
            .collect();
        rows.push(vec![Rational::one(); k]);
        let mut rhs: QVec = p.to_vec();
        rhs.push(Rational::one());
        if let Some((x, kernel)) = solve_affine(&rows, &rhs, k) {
            if kernel.is_empty() && x.iter().all(|l| !l.is_negative()) {
                return true;
            }
        }
    }
    false
}

fn cross(a: &[Rational], b: &[Rational]) -> QVec {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dotq(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Sorts coplanar points counterclockwise around their centroid, seen from
/// `normal` (any nonzero normal of their plane; in 2D pass `None`).
fn sort_around(pts: &mut [QVec], normal: Option<&QVec>) {
    let k = int(pts.len() as i64);
    let dim = pts[0].len();
    let c: QVec = (0..dim)
        .map(|j| pts.iter().map(|p| p[j].clone()).sum::<Rational>() / &k)
        .collect();
    let lift = |v: QVec| {
        if dim == 2 {
            vec![v[0].clone(), v[1].clone(), Rational::zero()]
        } else {
            v
        }
    };
    let up = normal
        .cloned()
        .unwrap_or_else(|| vec![Rational::zero(), Rational::zero(), Rational::one()]);
    let reference = lift(sub(&pts[0], &c));
    let side = |v: &QVec| -> (u8, QVec) {
        let s = dotq(&cross(&reference, v), &up);
        let h = if s.is_positive() || (s.is_zero() && dotq(&reference, v).is_positive()) {
            0
        } else {
            1
        };
        (h, v.clone())
    };
    pts.sort_by(|a, b| {
        let (va, vb) = (lift(sub(a, &c)), lift(sub(b, &c)));
        let ((ha, _), (hb, _)) = (side(&va), side(&vb));
        ha.cmp(&hb)
            .then_with(|| Rational::zero().cmp(&dotq(&cross(&va, &vb), &up)))
    });
}

/// Volume of the hull of a full-dimensional point set in dimension ≤ 3,
/// from brute-force vertices and supporting planes.
fn volume_brute(vertices: &[QVec], dim: usize) -> Rational {
    match dim {
        1 => {
            let xs: Vec<&Rational> = vertices.iter().map(|v| &v[0]).collect();
            xs.iter().copied().max().cloned().unwrap_or_default()
                - xs.iter().copied().min().cloned().unwrap_or_default()
        }
        2 => {
            let mut v = vertices.to_vec();
            sort_around(&mut v, None);
            let twice: Rational = (0..v.len())
                .map(|i| {
                    let (a, b) = (&v[i], &v[(i + 1) % v.len()]);
                    &a[0] * &b[1] - &a[1] * &b[0]
                })
                .sum();
            twice.abs() / int(2)
        }
        _ => {
            // cone from one vertex over every facet polygon
            let o = &vertices[0];
            let mut seen: Vec<Vec<usize>> = Vec::new();
            let mut total = Rational::zero();
            let m = vertices.len();
            for i in 0..m {
                for j in i + 1..m {
                    for k in j + 1..m {
                        let nrm = cross(
                            &sub(&vertices[j], &vertices[i]),
                            &sub(&vertices[k], &vertices[i]),
                        );
                        if nrm.iter().all(Zero::is_zero) {
                            continue;
                        }
                        let s: Vec<Rational> = vertices
                            .iter()
                            .map(|p| dotq(&nrm, &sub(p, &vertices[i])))
                            .collect();
                        if s.iter().any(Signed::is_positive) && s.iter().any(Signed::is_negative) {
                            continue;
                        }
                        let on: Vec<usize> = (0..m).filter(|&t| s[t].is_zero()).collect();
                        if seen.contains(&on) {
                            continue;
                        }
                        seen.push(on.clone());
                        let mut face: Vec<QVec> = on.iter().map(|&t| vertices[t].clone()).collect();
                        sort_around(&mut face, Some(&nrm));
                        for w in 1..face.len() - 1 {
                            let det = dotq(
                                &sub(&face[0], o),
                                &cross(&sub(&face[w], o), &sub(&face[w + 1], o)),
                            );
                            total += det.abs();
                        }
                    }
                }
            }
            total / int(6)
        }
    }
}

/// Hull vertices, membership and volume against brute-force oracles on
/// random integer point sets of dimension ≤ 3 with at most 8 points.
pub fn hull_oracle(seed: u64, trials: usize) -> SuiteReport {
    let mut r = rng(seed);
    let mut rep = SuiteReport::new("hull_oracle", seed);
    for _ in 0..trials {
        let dim = r.gen_range(1..=3);
        let count = r.gen_range(1..=8);
        let pts: Vec<QVec> = (0..count)
            .map(|_| (0..dim).map(|_| int(r.gen_range(-3..=3))).collect())
            .collect();
        let hull = Polytope::hull(dim, &pts);
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        let mut oracle_vertices: Vec<QVec> = distinct
            .iter()
            .filter(|p| {
                let others: Vec<QVec> = distinct.iter().filter(|q| q != p).cloned().collect();
                !in_hull_brute(&others, p)
            })
            .cloned()
            .collect();
        oracle_vertices.sort();
        let mut got = hull.vertices().to_vec();
        got.sort();
        let mut ok = got == oracle_vertices;
        // membership on the half-integer grid of the box
        for _ in 0..12 {
            let probe: QVec = (0..dim).map(|_| rat(r.gen_range(-7..=7), 2)).collect();
            ok &= hull.contains(&probe) == in_hull_brute(&oracle_vertices, &probe);
        }
        let diffs: Vec<QVec> = oracle_vertices
            .iter()
            .map(|v| sub(v, &oracle_vertices[0]))
            .collect();
        let full = rank(&diffs) == dim;
        let expected = if full {
            volume_brute(&oracle_vertices, dim)
        } else {
            Rational::zero()
        };
        ok &= hull.volume() == expected;
        rep.record(ok, || format!("points {pts:?}"));
    }
    rep
}

fn random_full_polytope(r: &mut ChaCha8Rng, dim: usize) -> Polytope {
    loop {
        let count = r.gen_range(dim + 1..=dim + 5);
        let pts: Vec<QVec> = (0..count)
            .map(|_| (0..dim).map(|_| int(r.gen_range(-4..=4))).collect())
            .collect();
        let p = Polytope::hull(dim, &pts);
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// `t ↦ vol(P ∩ {x₀ = t})^{1/(r-1)}` is concave on random polytopes in
/// `ℝʳ`, `r ∈ {2, 3}`; the square root for `r = 3` is compared exactly.
pub fn brunn_minkowski(seed: u64, polytopes: usize) -> SuiteReport {
    let mut r = rng(seed);
    let mut rep = SuiteReport::new("brunn_minkowski", seed);
    for _ in 0..polytopes {
        let dim = r.gen_range(2..=3);
        let p = random_full_polytope(&mut r, dim);
        let (lo, hi) = p.coordinate_range(0).expect("nonempty");
        let slice_vol = |t: &Rational| p.slice(&[(0, t.clone())]).volume();
        let mut ok = true;
        for _ in 0..6 {
            let a = &lo + (&hi - &lo) * rat(r.gen_range(0..=16), 16);
            let b = &lo + (&hi - &lo) * rat(r.gen_range(0..=16), 16);
            let lam = rat(r.gen_range(0..=8), 8);
            let mu = Rational::one() - &lam;
            let m = &lam * &a + &mu * &b;
            let (va, vb, vm) = (slice_vol(&a), slice_vol(&b), slice_vol(&m));
            ok &= if dim == 2 {
                vm >= &lam * va + &mu * vb
            } else {
                // √vm ≥ λ√va + μ√vb
                let x = &vm - &lam * &lam * &va - &mu * &mu * &vb;
                !x.is_negative() && &x * &x >= int(4) * &lam * &lam * &mu * &mu * va * vb
            };
        }
        rep.record(ok, || format!("polytope with vertices {:?}", p.vertices()));
    }
    rep
}

/// The envelope dominates its samples and resampling it at its own cell
/// vertices reproduces it.
pub fn envelope_idempotence(seed: u64, trials: usize) -> SuiteReport {
    let mut r = rng(seed);
    let mut rep = SuiteReport::new("envelope_idempotence", seed);
    let domain = Polytope::cuboid(&[(int(-4), int(4)), (int(-4), int(4))]);
    for _ in 0..trials {
        let mut corners: Vec<QVec> = vec![
            vec![int(-4), int(-4)],
            vec![int(4), int(-4)],
            vec![int(-4), int(4)],
            vec![int(4), int(4)],
        ];
        corners.shuffle(&mut r);
        let extra = r.gen_range(0..6);
        let mut samples: Vec<(QVec, Rational)> = corners
            .into_iter()
            .map(|p| (p, int(r.gen_range(-5..=5))))
            .collect();
        for _ in 0..extra {
            samples.push((
                vec![int(r.gen_range(-4..=4)), int(r.gen_range(-4..=4))],
                int(r.gen_range(-5..=5)),
            ));
        }
        let Ok(env) = upper_concave_envelope(&samples, &domain) else {
            rep.record(false, || format!("envelope failed on {samples:?}"));
            continue;
        };
        let mut ok = env.is_concave() && env.check_concavity();
        ok &= samples
            .iter()
            .all(|(x, v)| env.eval(x).is_some_and(|e| e >= *v));
        let resampled: Vec<(QVec, Rational)> = env
            .cells()
            .iter()
            .flat_map(|c| {
                c.simplex
                    .iter()
                    .map(|x| (x.clone(), env.eval(x).expect("in domain")))
            })
            .collect();
        match upper_concave_envelope(&resampled, &domain) {
            Ok(again) => {
                let probes: Vec<&QVec> = resampled
                    .iter()
                    .map(|(x, _)| x)
                    .chain(samples.iter().map(|(x, _)| x))
                    .collect();
                ok &= probes.iter().all(|x| again.eval(x) == env.eval(x));
                ok &= again.integral() == env.integral();
            }
            Err(_) => ok = false,
        }
        rep.record(ok, || format!("samples {samples:?}"));
    }
    rep
}

/// All four suites with the trial counts used by the acceptance criteria.
pub fn property_suites(seed: u64) -> Vec<SuiteReport> {
    vec![
        valuation_axioms(seed, 200),
        hull_oracle(seed, 100),
        brunn_minkowski(seed, 20),
        envelope_idempotence(seed, 20),
    ]
}
