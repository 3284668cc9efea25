//! Dispatch of a parsed spec to the library.

use serde_json::{json, Value};

use okounkov_core::exact::json::ToJson;
use okounkov_core::exact::rational::Rational;
use okounkov_core::filtration::{
    bc_volume_check, concave_transform_i, filtered_body, rees_algebra_check,
    transforms_agree_check, uniform_grid, Floor,
};
use okounkov_core::geometry::{PLFunction, Polytope};
use okounkov_core::semigroup::{
    growth_report, slice_theorem_check, volume_slice_integral_check, Certification, GradedPoint,
    GradedSemigroup,
};
use okounkov_core::series::{toric_body, translation_law_check, volume_theorem_check};
use okounkov_core::seshadri::{
    iota, rationality_verdict, restricted_volume_profile, subgraph_equals_body_check, thresholds,
};
use okounkov_core::suite::property_suites;
use okounkov_core::valuation::{Valuation, ValuationSpec};

use crate::error::CliError;
use crate::spec::{integer_degree, FloorSpec, Payload, ProblemSpec, SemigroupSpec};
use crate::theorems::theorem_checks;

pub const DEFAULT_MAX_DEGREE: u64 = 8;
pub const DEFAULT_GRID: u64 = 10;
pub const DEFAULT_SEED: u64 = 0;

/// Command-line overrides of the spec options.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub max_degree: Option<u64>,
    pub grid: Option<u64>,
    pub seed: Option<u64>,
}

pub enum OwnedFigure {
    Body(Polytope),
    Function(PLFunction),
}

/// Results of one run: exact data, named pass/fail checks and figures.
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<(String, bool)>,
    pub figures: Vec<(String, OwnedFigure)>,
}

struct Settings {
    max_degree: u64,
    grid: u64,
    seed: u64,
}

fn certification_json(c: &Certification) -> Value {
    match c {
        Certification::Exact => json!({"kind": "exact"}),
        Certification::Inner {
            degree,
            stable_since,
        } => json!({"kind": "inner", "degree": degree, "stable_since": stable_since}),
    }
}

fn valuation(spec: &Option<ValuationSpec>, n: usize) -> Result<Valuation, CliError> {
    Ok(match spec {
        Some(s) => s.build(n)?,
        None => Valuation::lex(n),
    })
}

fn semigroup(spec: &SemigroupSpec, s: &Settings) -> Result<Outcome, CliError> {
    let sg = match (&spec.generators, spec.nested_family) {
        (Some(gens), None) => {
            let pts = gens
                .iter()
                .map(|g| Ok(GradedPoint::new(integer_degree(g)?, g[1..].to_vec())))
                .collect::<Result<Vec<_>, CliError>>()?;
            GradedSemigroup::from_generators(pts)?
        }
        (None, Some(k)) => GradedSemigroup::nested_family(k),
        _ => {
            return Err(CliError::Input(
                "give exactly one of `generators` and `nested_family`".into(),
            ))
        }
    };
    let body = sg.okounkov_body()?;
    let mut results = json!({
        "rank": sg.rank(0)?,
        "det1": sg.det1(0)?.to_json(),
        "body": body.polytope.to_json(),
        "certification": certification_json(&body.certification),
        "volume": body.polytope.volume().to_json(),
    });
    let mut checks = Vec::new();
    let degrees = spec.growth_degrees.clone().unwrap_or_default();
    if !degrees.is_empty() || spec.nested_family.is_some() {
        let top = degrees.iter().copied().max().unwrap_or(s.max_degree);
        let g = growth_report(&sg, top, &degrees)?;
        results["growth"] = json!({
            "leading_coefficient": g.leading_coefficient.to_json(),
            "rows": g.rows.iter().map(|r| json!({"d": r.degree, "hilbert": r.hilbert, "normalized": r.normalized, "ratio": r.ratio})).collect::<Vec<_>>(),
        });
    }
    if let Some(sl) = &spec.slice {
        let r = slice_theorem_check(&sg, &sl.w, &sl.v, s.max_degree)?;
        results["slice"] = json!({
            "slice": r.slice.to_json(),
            "restricted_body": r.restricted_body.to_json(),
            "projection_equal": r.projection_equal,
            "equal": r.equal,
            "verified_to_degree": r.verified_to_degree,
        });
        checks.push(("slice_equals_restricted_body".into(), r.equal));
    }
    if let Some(vs) = &spec.volume_slice {
        let r = volume_slice_integral_check(&sg, &vs.w)?;
        results["volume_slice"] = json!({"lhs": r.lhs.to_json(), "rhs": r.rhs.to_json(), "det_w": r.det_w.to_json(), "equal": r.equal});
        checks.push(("volume_equals_slice_integral".into(), r.equal));
    }
    let figures = if body.polytope.ambient_dim() <= 3 {
        vec![("body".into(), OwnedFigure::Body(body.polytope))]
    } else {
        vec![]
    };
    Ok(Outcome {
        results,
        checks,
        figures,
    })
}

fn series(spec: &crate::spec::SeriesSpec, s: &Settings) -> Result<Outcome, CliError> {
    let ls = spec.series.build()?;
    let v = valuation(&spec.valuation, ls.dim())?;
    let body = toric_body(&ls, &v, s.max_degree)?;
    let vol = volume_theorem_check(&ls, &v, s.max_degree)?;
    let mut results = json!({"body": body.to_json(), "volume_theorem": vol.to_json()});
    let mut checks = vec![("volume_theorem".to_string(), vol.equal)];
    if let Some(u) = &spec.twist {
        let t = translation_law_check(&ls, &v, u, s.max_degree)?;
        results["translation"] = json!({"twisted_body": t.twisted_body.to_json(), "shift": t.shift.to_json(), "holds": t.holds});
        checks.push(("translation_law".into(), t.holds));
    }
    let p = body.body.polytope;
    let figures = if p.ambient_dim() <= 3 {
        vec![("body".into(), OwnedFigure::Body(p))]
    } else {
        vec![]
    };
    Ok(Outcome {
        results,
        checks,
        figures,
    })
}

fn filtration(spec: &crate::spec::FiltrationProblem, s: &Settings) -> Result<Outcome, CliError> {
    let ls = spec.series.build()?;
    let v = valuation(&spec.valuation, ls.dim())?;
    let f = spec.filtration.build(ls)?;
    let floor = match spec.floor {
        FloorSpec::Zero => Floor::Zero,
        FloorSpec::EMin => Floor::EMin,
    };
    let (lo, hi) = (f.e_min()?, f.e_max()?);
    let window = s.max_degree.min(4);
    let ts = uniform_grid(&lo.clone().max(Rational::from_integer(0.into())), &hi, 4);
    let body = filtered_body(&f, &v, floor, window, &ts)?;
    let grid = uniform_grid(&lo, &hi, s.grid);
    let t1 = concave_transform_i(&f, &v, s.max_degree)?;
    let gap = transforms_agree_check(&f, &v, s.max_degree, &grid)?;
    let bc = bc_volume_check(&f, &v, s.max_degree)?;
    let rees = rees_algebra_check(&f, &v, floor, window)?;
    let results = json!({
        "filtration": f.to_json(),
        "e_min": lo.to_json(),
        "e_max": hi.to_json(),
        "jumping_profile": f.jumping_profile(s.max_degree)?.to_json(),
        "filtered_body": body.to_json(),
        "transform_i": t1.phi.to_json(),
        "transforms": gap.to_json(),
        "volume_formula": bc.to_json(),
        "rees_identification": {"equal": rees.equal},
    });
    let checks = vec![
        ("filtered_body_slices".to_string(), body.slices_agree()),
        ("volume_formula".to_string(), bc.equal),
        ("rees_identification".to_string(), rees.equal),
    ];
    let mut figures = vec![];
    if body.polytope().ambient_dim() <= 3 {
        figures.push((
            "filtered_body".into(),
            OwnedFigure::Body(body.polytope().clone()),
        ));
    }
    if t1.phi.domain().ambient_dim() <= 2 {
        figures.push(("transform".into(), OwnedFigure::Function(t1.phi)));
    }
    Ok(Outcome {
        results,
        checks,
        figures,
    })
}

fn seshadri(
    spec: &okounkov_core::seshadri::SeshadriSpec,
    s: &Settings,
) -> Result<Outcome, CliError> {
    let p = spec.build()?;
    let th = thresholds(&p)?;
    let io = iota(&p)?;
    let verdict = rationality_verdict(&p)?;
    let profile = restricted_volume_profile(&p)?;
    let sub = subgraph_equals_body_check(&p, spec.b.clone(), s.max_degree)?;
    let results = json!({
        "L_squared": p.l_squared().to_json(),
        "thresholds": th.to_json(),
        "iota": io.to_json(),
        "verdict": verdict.to_json(),
        "profile": profile.to_json(),
        "bundle": sub.to_json(),
    });
    let checks = vec![
        ("iota_lower_bound".to_string(), io.lower_bound_holds),
        (
            "iota_birational_invariance".to_string(),
            io.birational_invariance,
        ),
        ("profile_ample_range".to_string(), io.ample_range_law),
        ("subgraph_equals_bundle_body".to_string(), sub.holds()),
    ];
    let figures = vec![
        ("delta_phi".into(), OwnedFigure::Function(sub.phi)),
        ("profile".into(), OwnedFigure::Function(profile.function)),
    ];
    Ok(Outcome {
        results,
        checks,
        figures,
    })
}

/// The built-in suites: seeded property suites and, optionally, the
/// theorem checks on the standard instances.
pub fn check_suite(theorems: bool, properties: bool, seed: u64) -> Outcome {
    let mut results = json!({"seed": seed});
    let mut checks = Vec::new();
    if properties {
        let reports = property_suites(seed);
        for r in &reports {
            checks.push((format!("property/{}", r.name), r.passed()));
        }
        results["properties"] = Value::Array(reports.iter().map(|r| r.to_json()).collect());
    }
    if theorems {
        let rows = theorem_checks();
        for (name, ok, _) in &rows {
            checks.push((format!("theorem/{name}"), *ok));
        }
        results["theorems"] = Value::Array(
            rows.into_iter()
                .map(|(name, ok, detail)| json!({"name": name, "holds": ok, "detail": detail}))
                .collect(),
        );
    }
    Outcome {
        results,
        checks,
        figures: vec![],
    }
}

pub fn run(spec: &ProblemSpec, flags: &Flags) -> Result<Outcome, CliError> {
    let s = Settings {
        max_degree: flags
            .max_degree
            .or(spec.options.max_degree)
            .unwrap_or(DEFAULT_MAX_DEGREE)
            .max(1),
        grid: flags
            .grid
            .or(spec.options.grid)
            .unwrap_or(DEFAULT_GRID)
            .max(1),
        seed: flags.seed.or(spec.options.seed).unwrap_or(DEFAULT_SEED),
    };
    let mut outcome = match &spec.payload {
        Payload::Semigroup(p) => semigroup(p, &s)?,
        Payload::Series(p) => series(p, &s)?,
        Payload::Filtration(p) => filtration(p, &s)?,
        Payload::Seshadri(p) => seshadri(p, &s)?,
        Payload::CheckSuite(p) => check_suite(p.theorems, p.properties, s.seed),
    };
    for (pointer, want) in &spec.expect {
        let holds = outcome.results.pointer(pointer) == Some(want);
        outcome.checks.push((format!("expect:{pointer}"), holds));
    }
    Ok(outcome)
}
