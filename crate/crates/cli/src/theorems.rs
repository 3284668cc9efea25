//! The built-in theorem suite on standard instances, each reduced to a
//! pass/fail line with its exact data.

use serde_json::{json, Value};

use okounkov_core::exact::json::ToJson;
use okounkov_core::exact::rational::{int, qvec, rat, Rational};
use okounkov_core::filtration::{
    bc_volume_check, rees_volume_slice_check, transforms_agree_check, uniform_grid, Floor,
    HomogeneousFiltration,
};
use okounkov_core::geometry::Polytope;
use okounkov_core::semigroup::{
    growth_report, slice_theorem_check, volume_slice_integral_check, GradedSemigroup,
};
use okounkov_core::series::examples::{hirzebruch_f1, p1_negative, p1xp1, projective_space};
use okounkov_core::series::{toric_body, volume_theorem_check};
use okounkov_core::seshadri::{
    iota, rationality_verdict, subgraph_equals_body_check, thresholds, SeshadriProblem,
    ToricSurface,
};
use okounkov_core::valuation::Valuation;

type Row = (String, bool, Value);

fn row(name: &str, f: impl FnOnce() -> okounkov_core::error::Result<(bool, Value)>) -> Row {
    match f() {
        Ok((ok, detail)) => (name.to_string(), ok, detail),
        Err(e) => (name.to_string(), false, json!({"error": e.to_string()})),
    }
}

fn segment(a: i64, b: i64) -> Polytope {
    Polytope::hull(1, &[qvec(&[a]), qvec(&[b])])
}

pub fn theorem_checks() -> Vec<Row> {
    let lex1 = Valuation::lex(1);
    let lex2 = Valuation::lex(2);
    vec![
        row("p1_bodies", || {
            let mut ok =
                toric_body(&projective_space(1, 1), &lex1, 4)?.body.polytope == segment(0, 1);
            for m in 1..=5 {
                ok &= toric_body(&p1_negative(m), &lex1, 4)?.body.polytope == segment(-m, -(m - 1));
            }
            Ok((ok, json!({"instances": 6})))
        }),
        row("volume_theorem", || {
            let series = [
                projective_space(2, 1),
                projective_space(2, 3),
                p1xp1(1, 1),
                p1xp1(2, 3),
                hirzebruch_f1(),
            ];
            let mut vols = Vec::new();
            let mut ok = true;
            for s in &series {
                let c = volume_theorem_check(s, &lex2, 4)?;
                ok &= c.equal;
                vols.push(c.vol_x.to_json());
            }
            Ok((ok, json!({"vol_x": vols})))
        }),
        row("hilbert_growth", || {
            let s = GradedSemigroup::from_int_generators(&[&[1, 0], &[1, 3]])?;
            let g = growth_report(&s, 200, &[200])?;
            let r = g.last().ratio;
            Ok(((r - 1.0).abs() <= 0.02, json!({"d": 200, "ratio": r})))
        }),
        row("slice_theorem", || {
            let s = GradedSemigroup::from_int_generators(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]])?;
            let r = slice_theorem_check(&s, &[qvec(&[0, 1])], &[rat(1, 3)], 6)?;
            Ok((r.equal, json!({"slice": r.slice.to_json()})))
        }),
        row("volume_slice_integral", || {
            let s = GradedSemigroup::from_int_generators(&[&[1, 0, 0], &[1, 1, 0], &[1, 0, 1]])?;
            let a = volume_slice_integral_check(&s, &[qvec(&[0, 1])])?;
            let f = HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(0))?;
            let b = rees_volume_slice_check(&f, &lex1, Floor::Zero, &[qvec(&[0, 1])])?;
            Ok((
                a.equal && b.equal,
                json!({"simplex": a.lhs.to_json(), "rees": b.lhs.to_json()}),
            ))
        }),
        row("concave_transforms", || {
            let f = HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(0))?;
            let r = transforms_agree_check(&f, &lex1, 20, &uniform_grid(&int(0), &int(1), 20))?;
            Ok((r.gap == Rational::from_integer(0.into()), r.to_json()))
        }),
        row("volume_formula", || {
            let f = HomogeneousFiltration::ord_divisor(projective_space(1, 1), qvec(&[1]), int(0))?;
            let r = bc_volume_check(&f, &lex1, 40)?;
            Ok((
                r.equal && r.body_volume == rat(1, 2),
                json!({"body_volume": r.body_volume.to_json()}),
            ))
        }),
        row("integrals_are_volumes", || {
            let p = SeshadriProblem::from_ints(ToricSurface::p2(), &[0, 0, 1], 0)?;
            let r = subgraph_equals_body_check(&p, Some(int(2)), 4)?;
            Ok((
                r.holds() && r.bundle_volume == rat(1, 3),
                json!({"volume": r.bundle_volume.to_json()}),
            ))
        }),
        row("seshadri_p2", || {
            let p = SeshadriProblem::from_ints(ToricSurface::p2(), &[0, 0, 1], 0)?;
            let th = thresholds(&p)?;
            let io = iota(&p)?;
            let v = rationality_verdict(&p)?;
            let ok = th.epsilon == int(1)
                && th.mu == int(1)
                && io.iota == rat(1, 3)
                && io.equality
                && v.factorial_constant_inconsistent;
            Ok((ok, v.to_json()))
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_holds() {
        for (name, ok, detail) in theorem_checks() {
            assert!(ok, "{name}: {detail}");
        }
    }
}
