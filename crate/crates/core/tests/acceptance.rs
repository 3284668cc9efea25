//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use okounkov_core::exact::rational::{int, qvec, rat};
use okounkov_core::filtration::{
    bc_volume_check, rees_volume_slice_check, transforms_agree_check, uniform_grid, Floor,
    HomogeneousFiltration,
};
use okounkov_core::geometry::Polytope;
use okounkov_core::semigroup::{
    growth_report, slice_theorem_check, volume_slice_integral_check, GradedPoint, GradedSemigroup,
};
use okounkov_core::series::examples::{hirzebruch_f1, p1_negative, p1xp1, projective_space};
use okounkov_core::series::{toric_body, volume_theorem_check, LatticeSeries};
use okounkov_core::seshadri::{
    iota, rationality_verdict, subgraph_equals_body_check, thresholds, SeshadriProblem,
    ToricSurface, REASON_MU_EXCEEDS_EPSILON,
};
use okounkov_core::suite::property_suites;
use okounkov_core::valuation::{values_at, MonomialValuation, Valuation};

type Outcome = Result<(bool, String), String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn segment(a: i64, b: i64) -> Polytope {
    Polytope::hull(1, &[qvec(&[a]), qvec(&[b])])
}

fn c1_p1_bodies() -> Outcome {
    let v = Valuation::lex(1);
    let mut ok = toric_body(&projective_space(1, 1), &v, 4)
        .map_err(err)?
        .body
        .polytope
        == segment(0, 1);
    for m in 1..=5 {
        ok &= toric_body(&p1_negative(m), &v, 4)
            .map_err(err)?
            .body
            .polytope
            == segment(-m, -(m - 1));
    }
    Ok((ok, "O(1) -> [0,1]; m=1..5 -> [-m,-(m-1)]".into()))
}

fn c2_volume_theorem() -> Outcome {
    let v = Valuation::lex(2);
    let cases: [(&str, LatticeSeries, i64); 6] = [
        ("P2 O(1)", projective_space(2, 1), 1),
        ("P2 O(2)", projective_space(2, 2), 4),
        ("P2 O(3)", projective_space(2, 3), 9),
        ("P1xP1 O(1,1)", p1xp1(1, 1), 2),
        ("P1xP1 O(2,3)", p1xp1(2, 3), 12),
        ("F1", hirzebruch_f1(), 3),
    ];
    let mut ok = true;
    let mut shown = Vec::new();
    for (name, s, vol_x) in cases {
        let c = volume_theorem_check(&s, &v, 4).map_err(err)?;
        ok &= c.equal && c.vol_x == int(vol_x) && c.n_fact_vol == int(vol_x);
        shown.push(format!("{name}={}", c.n_fact_vol));
    }
    Ok((ok, shown.join(" ")))
}

fn c3_hilbert_growth() -> Outcome {
    let d = 500;
    let semigroups: [(&str, &[&[i64]]); 4] = [
        ("<(1,0),(1,1)>", &[&[1, 0], &[1, 1]]),
        ("<(1,0),(1,3)>", &[&[1, 0], &[1, 3]]),
        ("<(1,0),(1,2),(2,1)>", &[&[1, 0], &[1, 2], &[2, 1]]),
        ("P2 simplex", &[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]),
    ];
    let mut ok = true;
    let mut shown = Vec::new();
    for (name, gens) in semigroups {
        let s = GradedSemigroup::from_int_generators(gens).map_err(err)?;
        let g = growth_report(&s, d, &[d]).map_err(err)?;
        let dev = (g.last().ratio - 1.0).abs();
        ok &= dev <= 0.02;
        shown.push(format!("{name}: |ratio-1|={dev:.5}"));
    }
    Ok((ok, format!("d={d}, tol 0.02; {}", shown.join("; "))))
}

fn c4_nested_family() -> Outcome {
    let d = 200;
    let per_d: Vec<f64> = (1..=5)
        .map(|k| {
            let h = GradedSemigroup::nested_family(k)
                .hilbert_function(d)
                .map_err(err)?;
            Ok(h[d as usize] as f64 / d as f64)
        })
        .collect::<Result<_, String>>()?;
    let ratios: Vec<String> = per_d
        .windows(2)
        .map(|w| format!("{:.4}", w[1] / w[0]))
        .collect();
    let ok = per_d.windows(2).all(|w| w[1] >= 2.0 * w[0]);
    let shown: Vec<String> = per_d
        .iter()
        .enumerate()
        .map(|(i, x)| format!("K={}: {x:.3}", i + 1))
        .collect();
    Ok((
        ok,
        format!(
            "H(200)/200 {}; successive ratios {} (need >= 2)",
            shown.join(", "),
            ratios.join(", ")
        ),
    ))
}

fn c5_slicing() -> Outcome {
    let simplex =
        GradedSemigroup::from_int_generators(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]).map_err(err)?;
    let a = slice_theorem_check(&simplex, &[qvec(&[0, 1])], &[rat(1, 3)], 8).map_err(err)?;
    let square = GradedSemigroup::from_int_generators(&[
        &[1, 0, 0],
        &[1, 1, 0],
        &[1, 0, 2],
        &[1, 1, 2],
        &[1, 0, 1],
        &[1, 1, 1],
    ])
    .map_err(err)?;
    let b = slice_theorem_check(&square, &[qvec(&[1, 0])], &[int(1)], 8).map_err(err)?;
    // value semigroup of P² O(2) under a weight valuation, from its degree-1 values
    let w = MonomialValuation::new(vec![vec![1, 0], vec![1, 1]]).map_err(err)?;
    let vals = values_at(&projective_space(2, 2), &Valuation::Monomial(w), 1).map_err(err)?;
    let gens: Vec<GradedPoint> = vals.into_iter().map(|x| GradedPoint::new(1, x)).collect();
    let p2 = GradedSemigroup::from_generators(gens).map_err(err)?;
    let c = slice_theorem_check(&p2, &[qvec(&[0, 1])], &[int(1)], 8).map_err(err)?;
    let ok = a.equal && b.equal && c.equal && !c.slice.is_empty();
    Ok((
        ok,
        format!(
            "simplex {}, P1xP1 {}, P2 values {}",
            a.equal, b.equal, c.equal
        ),
    ))
}

fn c6_volume_slice() -> Outcome {
    let simplex =
        GradedSemigroup::from_int_generators(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]]).map_err(err)?;
    let a = volume_slice_integral_check(&simplex, &[qvec(&[0, 1])]).map_err(err)?;
    let f = HomogeneousFiltration::ord_divisor(p1xp1(1, 2), vec![int(1), rat(1, 2)], rat(-1, 2))
        .map_err(err)?;
    let b = rees_volume_slice_check(&f, &Valuation::lex(2), Floor::EMin, &[qvec(&[0, 0, 1])])
        .map_err(err)?;
    let ok = a.equal && b.equal && a.lhs == rat(1, 2) && b.lhs == int(4);
    Ok((
        ok,
        format!("simplex {} = {}; Rees {} = {}", a.lhs, a.rhs, b.lhs, b.rhs),
    ))
}

fn c7_transforms() -> Outcome {
    let p1 = HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(0))
        .map_err(err)?;
    let a = transforms_agree_check(
        &p1,
        &Valuation::lex(1),
        20,
        &uniform_grid(&int(0), &int(1), 20),
    )
    .map_err(err)?;
    let p2 = HomogeneousFiltration::ord_divisor(projective_space(2, 1), qvec(&[1, 0]), int(0))
        .map_err(err)?;
    let b = transforms_agree_check(
        &p2,
        &Valuation::lex(2),
        15,
        &uniform_grid(&int(0), &int(1), 15),
    )
    .map_err(err)?;
    let ok = a.gap.is_zero() && a.points > 0 && b.gap <= rat(1, 15) && b.points > 0;
    Ok((
        ok,
        format!(
            "P1 gap {} (exact 0); P2 gap {} <= 1/15 at D=15",
            a.gap, b.gap
        ),
    ))
}

fn c8_volume_formula() -> Outcome {
    let p1 = HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(0))
        .map_err(err)?;
    let a = bc_volume_check(&p1, &Valuation::lex(1), 100).map_err(err)?;
    let p2 = HomogeneousFiltration::ord_divisor(projective_space(2, 1), qvec(&[1, 0]), int(0))
        .map_err(err)?;
    let b = bc_volume_check(&p2, &Valuation::lex(2), 60).map_err(err)?;
    let ok = a.body_volume == rat(1, 2)
        && a.slice_integral == rat(1, 2)
        && a.mass_gap() <= 0.01
        && b.body_volume == rat(1, 6)
        && b.slice_integral == rat(1, 6)
        && b.mass_gap() <= 0.02;
    Ok((
        ok,
        format!(
            "P1 vol {} int {} mass gap {:.4} (tol 0.01, d=100); P2 vol {} int {} mass gap {:.4} (tol 0.02, d=60)",
            a.body_volume,
            a.slice_integral,
            a.mass_gap(),
            b.body_volume,
            b.slice_integral,
            b.mass_gap()
        ),
    ))
}

fn c9_integrals_are_volumes() -> Outcome {
    let p2 = SeshadriProblem::from_ints(ToricSurface::p2(), &[0, 0, 1], 0).map_err(err)?;
    let a = subgraph_equals_body_check(&p2, Some(int(2)), 12).map_err(err)?;
    // μ = 2 for O(1,1), so the least admissible integer is b = 3
    let q = SeshadriProblem::from_ints(ToricSurface::p1xp1(), &[0, 0, 1, 1], 0).map_err(err)?;
    let b = subgraph_equals_body_check(&q, Some(int(3)), 12).map_err(err)?;
    let counts_ok = |r: &okounkov_core::seshadri::SubgraphReport| {
        r.counts.len() == 12 && r.counts.iter().all(|c| c.equal)
    };
    let ok = a.holds()
        && b.holds()
        && a.bundle_volume == rat(1, 3)
        && a.subgraph_volume == rat(1, 3)
        && counts_ok(&a)
        && counts_ok(&b)
        && b.bundle_volume == b.integral_phi;
    Ok((
        ok,
        format!(
            "P2 b=2: bodies equal {}, volume {}; P1xP1 O(1,1) b=3: bodies equal {}, volume {}; counts d<=12",
            a.bodies_equal, a.bundle_volume, b.bodies_equal, b.bundle_volume
        ),
    ))
}

fn c10_seshadri() -> Outcome {
    let p2 = SeshadriProblem::from_ints(ToricSurface::p2(), &[0, 0, 1], 0).map_err(err)?;
    let th = thresholds(&p2).map_err(err)?;
    let io = iota(&p2).map_err(err)?;
    let v = rationality_verdict(&p2).map_err(err)?;
    let window = v.window_epsilon.clone().ok_or("no window")?;
    let lower = io.lower_bound.clone();
    let engineered =
        SeshadriProblem::from_ints(ToricSurface::p1xp1(), &[0, 0, 1, 2], 0).map_err(err)?;
    let w = rationality_verdict(&engineered).map_err(err)?;
    let ok = th.epsilon == int(1)
        && th.mu == int(1)
        && io.iota == rat(1, 3)
        && io.equality
        && lower == rat(1, 3)
        && v.factorial_constant_inconsistent
        && window.lower == int(1)
        && window.upper == int(2)
        && window.is_empty()
        && w.thresholds.epsilon < w.thresholds.mu
        && w.reason == REASON_MU_EXCEEDS_EPSILON;
    Ok((
        ok,
        format!(
            "P2: eps {} mu {} iota {} = eps^3/(3L^2) {}; factorial constant {} flagged; window ({}, {}) empty; O(1,2) on P1xP1: eps {} < mu {} -> {:?}",
            th.epsilon, th.mu, io.iota, lower, io.factorial_constant, window.lower, window.upper, w.thresholds.epsilon, w.thresholds.mu, w.reason
        ),
    ))
}

fn c11_property_suites() -> Outcome {
    let seed = 20_240_917;
    let a = property_suites(seed);
    let b = property_suites(seed);
    let ok = a.iter().all(|r| r.passed()) && a == b;
    let shown: Vec<String> = a
        .iter()
        .map(|r| format!("{} {}/{} ok", r.name, r.trials - r.failures, r.trials))
        .collect();
    Ok((
        ok,
        format!(
            "seed {seed}: {}; rerun identical {}",
            shown.join(", "),
            a == b
        ),
    ))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "P1 bodies",
            limit: Duration::from_secs(1),
            run: c1_p1_bodies,
        },
        Criterion {
            id: 2,
            name: "volume theorem",
            limit: Duration::from_secs(5),
            run: c2_volume_theorem,
        },
        Criterion {
            id: 3,
            name: "Hilbert-function law",
            limit: Duration::from_secs(30),
            run: c3_hilbert_growth,
        },
        Criterion {
            id: 4,
            name: "index mechanism",
            limit: Duration::from_secs(30),
            run: c4_nested_family,
        },
        Criterion {
            id: 5,
            name: "slicing",
            limit: Duration::MAX,
            run: c5_slicing,
        },
        Criterion {
            id: 6,
            name: "volume-slice integral",
            limit: Duration::MAX,
            run: c6_volume_slice,
        },
        Criterion {
            id: 7,
            name: "concave transforms agree",
            limit: Duration::from_secs(60),
            run: c7_transforms,
        },
        Criterion {
            id: 8,
            name: "jumping-number volume formula",
            limit: Duration::MAX,
            run: c8_volume_formula,
        },
        Criterion {
            id: 9,
            name: "integrals are volumes",
            limit: Duration::from_secs(180),
            run: c9_integrals_are_volumes,
        },
        Criterion {
            id: 10,
            name: "Seshadri pipeline",
            limit: Duration::MAX,
            run: c10_seshadri,
        },
        Criterion {
            id: 11,
            name: "property suites",
            limit: Duration::MAX,
            run: c11_property_suites,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = if c.limit == Duration::MAX {
            String::new()
        } else {
            format!(" (limit {}s)", c.limit.as_secs())
        };
        println!(
            "{} criterion {:>2} {}: {} [{:.2}s{}]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            limit
        );
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
