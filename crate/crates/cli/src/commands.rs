use buildtrop::building::{alpha, norms_equal, normalize_projective, permutation_matrix, pi, BuildingError};
use buildtrop::cartan::{cartan_decompose, theorem_d_check, trop_spherical, verify_form, CartanError};
use buildtrop::chains::{realize, trop_family, ChainError, Realization};
use buildtrop::io::{
    from_str, BuildingPointJson, ChainInput, ChainJson, FanJson, IoError, MatrixJson, RootDatumJson, TripleJson,
};
use buildtrop::matrix::Matrix;
use buildtrop::polyhedra::{Budget, Cone};
use buildtrop::rootdata::{dominant_representative, weyl_fan, GroupKind, RootDatum};
use buildtrop::scalar::fmt_rational;
use buildtrop::stacky::{stabilizer_group, validate_stacky_fan, weyl_equivariance_check, BuildingFanViolation};
use buildtrop::{RatMatrix, Rational, ValuedMatrix, ValuedScalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::report::{Check, Failure, Outcome};

/// Settings shared by every subcommand.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: Option<u64>,
    pub budget: Budget,
    pub stacky: bool,
    pub smooth: bool,
    pub weyl: bool,
    pub root_datum: Option<String>,
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn entries<T: ToString>(m: &Matrix<T>) -> Vec<Vec<String>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| m[(r, c)].to_string()).collect())
        .collect()
}

fn show(v: &[String]) -> String {
    format!("({})", v.join(", "))
}

fn cone_json(c: &Cone) -> Value {
    json!({ "rays": c.rays(), "dimension": c.dimension() })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, Failure> {
    from_str(text).map_err(Failure::input)
}

fn io_failure(e: IoError) -> Failure {
    match e {
        IoError::Stacky(_) | IoError::Poly(_) => Failure::validation(e, None),
        _ => Failure::input(e),
    }
}

fn cartan_failure(e: CartanError) -> Failure {
    match e {
        CartanError::Building(BuildingError::NotIntegral { .. } | BuildingError::NotUnit { .. }) => {
            Failure::precondition(format!("h is not in GL_n(O): {e}"))
        }
        _ => Failure::input(e),
    }
}

fn chain_failure(e: ChainError) -> Failure {
    match e {
        ChainError::NegativeLength(_) | ChainError::NegativeValuation(_) | ChainError::LengthMismatch { .. } => {
            Failure::input(e)
        }
        _ => Failure::validation(e, None),
    }
}

fn one() -> ValuedScalar {
    ValuedScalar::from_const(Rational::from_integer(1.into()))
}

fn small_rat(r: &mut ChaCha8Rng) -> Rational {
    Rational::new(r.gen_range(-3..=3).into(), r.gen_range(1..=2).into())
}

fn integral_poly(r: &mut ChaCha8Rng) -> ValuedScalar {
    ValuedScalar::from_terms(1, (0..3).map(|k| (k, small_rat(r))).collect::<Vec<_>>())
}

/// Upper unipotent · permutation · lower unipotent · constant diagonal, all
/// with entries in `Q[t]`.
fn random_integral_unit(r: &mut ChaCha8Rng, n: usize) -> ValuedMatrix {
    let zero = || ValuedScalar::zero_in(1);
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => integral_poly(r),
        std::cmp::Ordering::Equal => one(),
        std::cmp::Ordering::Greater => zero(),
    });
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => integral_poly(r),
        std::cmp::Ordering::Equal => one(),
        std::cmp::Ordering::Less => zero(),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let units: Vec<ValuedScalar> = (0..n)
        .map(|_| {
            let c = Rational::from_integer(r.gen_range(1..=4).into());
            ValuedScalar::from_const(if r.gen() { -c } else { c })
        })
        .collect();
    upper
        .mul(&permutation_matrix(&perm))
        .mul(&lower)
        .mul(&Matrix::diagonal(&units))
}

pub fn trop(text: &str, opts: &Options) -> Result<Outcome, Failure> {
    let x = parse::<MatrixJson>(text)?.matrix().map_err(io_failure)?;
    let minors = trop_spherical(&x).map_err(cartan_failure)?;
    let form = cartan_decompose(&x).map_err(cartan_failure)?;
    let lambda = rats(&form.lambda);
    let by_minors = rats(&minors);
    let mut checks = vec![Check::new("elimination = minors", &lambda, &by_minors)];
    let mut lines = vec![
        format!("lambda = {}", show(&lambda)),
        format!("elimination {} | minors {}", show(&lambda), show(&by_minors)),
    ];
    if let Some(seed) = opts.seed {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = x.nrows();
        let moved = random_integral_unit(&mut r, n).mul(&x).mul(&random_integral_unit(&mut r, n));
        let again = rats(&trop_spherical(&moved).map_err(cartan_failure)?);
        lines.push(format!("after random GL_n(O) factors: {}", show(&again)));
        checks.push(Check::new("bi-invariance", &lambda, again));
    }
    let agree = checks[0].holds;
    Ok(Outcome {
        result: json!({
            "lambda": lambda,
            "elimination": lambda,
            "minors": by_minors,
            "agree": agree,
        }),
        checks,
        lines,
    })
}

pub fn cartan(text: &str, _opts: &Options) -> Result<Outcome, Failure> {
    let x = parse::<MatrixJson>(text)?.matrix().map_err(io_failure)?;
    let form = cartan_decompose(&x).map_err(cartan_failure)?;
    let verdict = match verify_form(&x, &form) {
        Ok(()) => "ok".to_string(),
        Err(e) => e,
    };
    let lambda = rats(&form.lambda);
    let g = entries(&form.g);
    let h = entries(&form.h);
    let lines = vec![
        format!("g = {:?}", g),
        format!("lambda = {}", show(&lambda)),
        format!("h = {:?}", h),
    ];
    Ok(Outcome {
        result: json!({ "g": g, "lambda": lambda, "h": h }),
        checks: vec![Check::new("g t^lambda h = x, g and h in GL_n(O)", verdict, "ok")],
        lines,
    })
}

pub fn pi_cmd(text: &str, _opts: &Options) -> Result<Outcome, Failure> {
    let p = parse::<BuildingPointJson>(text)?.point().map_err(io_failure)?;
    let n = p.dim();
    let dominant = rats(&pi(&p));
    let normalized = normalize_projective(&p);
    let r = RootDatum::builtin(GroupKind::Gl(n));
    let positive = r.positive_roots().expect("builtin data carry a positive system");
    let (weyl, _) = dominant_representative(&p.lambda, &r, positive);
    let weyl = rats(&weyl);
    let lines = vec![
        format!("pi = {}", show(&dominant)),
        format!("normalized lambda = {}", show(&rats(&normalized.lambda))),
    ];
    Ok(Outcome {
        result: json!({
            "pi": dominant,
            "normalized": { "g": entries(&normalized.g), "lambda": rats(&normalized.lambda) },
        }),
        checks: vec![Check::new("sort = Weyl dominant representative", &dominant, weyl)],
        lines,
    })
}

pub fn diagram(text: &str, _opts: &Options) -> Result<Outcome, Failure> {
    let (g, lambda, h) = parse::<TripleJson>(text)?.parts().map_err(io_failure)?;
    let report = theorem_d_check(&g, &lambda, &h).map_err(cartan_failure)?;
    let lhs = rats(&report.lhs);
    let rhs = rats(&report.rhs);
    let lines = vec![format!("pi(trop_build) = {} | trop_spherical = {}", show(&lhs), show(&rhs))];
    Ok(Outcome {
        result: json!({ "pi_of_building_point": lhs, "spherical": rhs }),
        checks: vec![Check::new("pi . trop_build = trop_spherical", lhs, rhs)],
        lines,
    })
}

fn load_root_datum(opts: &Options, group: Option<&RootDatum>) -> Result<RootDatum, Failure> {
    if let Some(path) = &opts.root_datum {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?;
        return parse::<RootDatumJson>(&text)?.root_datum().map_err(io_failure);
    }
    group
        .cloned()
        .ok_or_else(|| Failure::input("--weyl needs --root-datum FILE or --group NAME"))
}

/// The Weyl fan of a builtin group, as fan JSON.
pub fn group_fan(name: &str, budget: Budget) -> Result<(FanJson, RootDatum), Failure> {
    let kind = GroupKind::parse(name).ok_or_else(|| Failure::input(format!("unknown group {name:?}")))?;
    let r = RootDatum::builtin(kind);
    let positive = r.positive_roots().expect("builtin data carry a positive system");
    let fan = weyl_fan(&r, positive, budget.max_rank).map_err(Failure::input)?;
    Ok((FanJson::from_fan(&fan), r))
}

pub fn fan(text: &str, opts: &Options, group: Option<&RootDatum>) -> Result<Outcome, Failure> {
    let spec = parse::<FanJson>(text)?;
    let fan = spec.fan().map_err(io_failure)?;
    if let Err(v) = fan.validate() {
        let detail = json!({
            "first": v.first.rays(),
            "second": v.second.rays(),
            "intersection": v.intersection.rays(),
        });
        return Err(Failure::validation(
            format!("invalid fan: {:?} and {:?} meet in a non-face", v.first.rays(), v.second.rays()),
            Some(detail),
        ));
    }
    let mut lines = vec![format!(
        "valid fan: {} cones, counts by dimension {:?}",
        fan.len(),
        fan.counts_by_dimension()
    )];
    let mut result = json!({
        "valid": true,
        "lattice_rank": fan.rank(),
        "cones": fan.len(),
        "counts_by_dimension": fan.counts_by_dimension(),
    });
    if spec.apartment.is_some() {
        let bf = spec.building_fan().map_err(io_failure)?;
        if let Err(v) = bf.validate() {
            let (msg, detail) = match v {
                BuildingFanViolation::SingularApartment(i) => (format!("apartment of cone {i} is singular"), json!({ "cone": i })),
                BuildingFanViolation::NotAFan(i, j) => (
                    format!("cones {i} and {j} share an apartment and meet in a non-face"),
                    json!({ "first": i, "second": j }),
                ),
                BuildingFanViolation::MissingWitness(i, j) => (
                    format!("no witness for cones {i} and {j} in different apartments"),
                    json!({ "first": i, "second": j }),
                ),
                BuildingFanViolation::BadWitness { witness, cone } => (
                    format!("witness {witness} does not give a face of cone {cone}"),
                    json!({ "witness": witness, "cone": cone }),
                ),
            };
            return Err(Failure::validation(msg, Some(detail)));
        }
        lines.push(format!("building fan: {} cones in apartments, valid", bf.cones.len()));
        result["building_fan_valid"] = json!(true);
    }
    let needs_stacky = opts.stacky || opts.smooth || opts.weyl;
    let stacky = if needs_stacky {
        Some(spec.stacky_fan().map_err(io_failure)?)
    } else {
        None
    };
    if let (true, Some(s)) = (opts.smooth, &stacky) {
        let verdicts = s.smoothness();
        let all = verdicts.iter().all(|(_, b)| *b);
        let per_cone: Vec<Value> = verdicts
            .iter()
            .map(|(c, b)| {
                let mut v = cone_json(c);
                v["smooth"] = json!(b);
                v
            })
            .collect();
        for (c, b) in &verdicts {
            if !c.is_zero() {
                lines.push(format!("cone {:?}: {}", c.rays(), if *b { "smooth" } else { "not smooth" }));
            }
        }
        lines.push(format!("all cones smooth: {all}"));
        result["smoothness"] = json!(per_cone);
        result["all_smooth"] = json!(all);
    }
    if let (true, Some(s)) = (opts.stacky, &stacky) {
        let cert = validate_stacky_fan(s).map_err(|v| {
            Failure::validation(
                format!(
                    "cones {:?} and {:?} induce different lattices on the face {:?}",
                    v.first.rays(),
                    v.second.rays(),
                    v.face.rays()
                ),
                Some(json!({ "first": v.first.rays(), "second": v.second.rays(), "face": v.face.rays() })),
            )
        })?;
        let mut per_cone = Vec::new();
        for k in s.maximal_data() {
            let group = stabilizer_group(k).to_string();
            let monoid = k.monoid(opts.budget).map_err(|e| Failure::input(format!("monoid: {e}")))?;
            lines.push(format!(
                "maximal cone {:?}: index {}, stabilizer {group}, {} monoid generators",
                k.cone().rays(),
                k.index(),
                monoid.len()
            ));
            let mut v = cone_json(k.cone());
            v["index"] = json!(k.index());
            v["stabilizer"] = json!(group);
            v["monoid_generators"] = json!(monoid.iter().map(|g| rats(g)).collect::<Vec<_>>());
            per_cone.push(v);
        }
        lines.push(format!("stacky data compatible ({} incidences checked)", cert.incidences_checked));
        result["stacky"] = json!({ "compatible": true, "maximal_cones": per_cone });
    }
    if let (true, Some(s)) = (opts.weyl, &stacky) {
        let r = load_root_datum(opts, group)?;
        let eq = weyl_equivariance_check(s, &r).map_err(Failure::input)?;
        lines.push(format!("Weyl-equivariant: {eq}"));
        result["weyl_equivariant"] = json!(eq);
    }
    Ok(Outcome {
        result,
        checks: Vec::new(),
        lines,
    })
}

fn realization_json(p: &Realization) -> Value {
    match p {
        Realization::Finite { cone, point } => json!({
            "kind": "finite",
            "cone": cone.rays(),
            "point": rats(point),
        }),
        Realization::Extended(e) => json!({
            "kind": "extended",
            "cone": e.host.rays(),
            "face": e.face.rays(),
            "point": rats(&e.finite),
        }),
    }
}

pub fn chain(text: &str, _opts: &Options) -> Result<Outcome, Failure> {
    let spec = parse::<ChainJson>(text)?;
    let marked = spec.fan.marked_fan().map_err(io_failure)?;
    let dec = spec.decoration();
    let (chain, point) = match spec.input().map_err(io_failure)? {
        ChainInput::Lengths(c) => {
            let p = realize(&c, &dec, &marked).map_err(chain_failure)?;
            (c, p)
        }
        ChainInput::Params(params) => trop_family(&params, &dec, &marked).map_err(chain_failure)?,
    };
    let lengths: Vec<String> = chain.lengths().iter().map(ToString::to_string).collect();
    let host = match &point {
        Realization::Finite { cone, .. } => cone,
        Realization::Extended(e) => &e.host,
    };
    let mut checks = Vec::new();
    if let Realization::Finite { cone, point } = &point {
        checks.push(Check::new("point lies in the matched cone", cone.contains(point), true));
    }
    let lines = vec![
        format!("lengths = {}", show(&lengths)),
        format!("cone {:?}", host.rays()),
        format!("point {point}"),
    ];
    Ok(Outcome {
        result: json!({ "lengths": lengths, "realization": realization_json(&point) }),
        checks,
        lines,
    })
}

#[derive(Deserialize)]
struct NormPair {
    first: BuildingPointJson,
    second: BuildingPointJson,
}

fn cross(norm: &buildtrop::building::GINorm, frame: &RatMatrix) -> Vec<String> {
    (0..frame.ncols())
        .map(|j| norm.evaluate(&frame.col(j)).map_or_else(|| "inf".to_string(), |v| fmt_rational(&v)))
        .collect()
}

pub fn norm_eq(text: &str, opts: &Options) -> Result<Outcome, Failure> {
    let pair = parse::<NormPair>(text)?;
    let a = pair.first.point().map_err(io_failure)?;
    let b = pair.second.point().map_err(io_failure)?;
    if a.dim() != b.dim() {
        return Err(Failure::input(format!("dimension mismatch: {} and {}", a.dim(), b.dim())));
    }
    let na = alpha(&a).map_err(Failure::input)?;
    let nb = alpha(&b).map_err(Failure::input)?;
    let equal = norms_equal(&na, &nb);
    let a_on_b = cross(&na, nb.frame());
    let b_on_b = rats(nb.weights());
    let b_on_a = cross(&nb, na.frame());
    let a_on_a = rats(na.weights());
    let pa = rats(&pi(&a));
    let pb = rats(&pi(&b));
    let mut lines = vec![
        format!("equal: {equal}"),
        format!("first on second frame {} vs {}", show(&a_on_b), show(&b_on_b)),
        format!("second on first frame {} vs {}", show(&b_on_a), show(&a_on_a)),
        format!("pi: {} and {}", show(&pa), show(&pb)),
    ];
    let mut checks = Vec::new();
    if equal {
        checks.push(Check::new("equal norms have equal pi", &pa, &pb));
    }
    let mut result = json!({
        "equal": equal,
        "first_on_second_frame": a_on_b,
        "second_weights": b_on_b,
        "second_on_first_frame": b_on_a,
        "first_weights": a_on_a,
        "pi": [pa, pb],
    });
    if let Some(seed) = opts.seed {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = a.dim();
        let mut separating = 0u32;
        for _ in 0..1000 {
            let u: Vec<Rational> = (0..n).map(|_| Rational::from_integer(r.gen_range(-9..=9).into())).collect();
            if u.iter().all(|x| *x == Rational::from_integer(0.into())) {
                continue;
            }
            if na.evaluate(&u) != nb.evaluate(&u) {
                separating += 1;
            }
        }
        lines.push(format!("sampled vectors separating the norms: {separating}"));
        result["separating_samples"] = json!(separating);
        if equal {
            checks.push(Check::new("no sampled vector separates equal norms", separating, 0));
        }
    }
    Ok(Outcome { result, checks, lines })
}
