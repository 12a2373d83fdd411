//! Subcommand implementations: map ingestion and the report pipelines.

use crate::ser::{divisor_json, opt_divisor_json, stability_json, JsonField};
use num_traits::{One, Zero};
use p1dyn_core::critical::critical_conductor;
use p1dyn_core::dynsys::{Model, Presentation};
use p1dyn_core::field::{Field, Rat};
use p1dyn_core::intfactor::is_prime;
use p1dyn_core::lattes::{lattes_model, EllipticCurve};
use p1dyn_core::minimality::{
    minimal_resultant, wclass_divisor, Certificate, MinimalityStatus,
};
use p1dyn_core::parse::parse_ratfunc;
use p1dyn_core::places::{divisor_degree, divisor_lognorm, FunField, QField};
use p1dyn_core::ratfunc::RatFunc;
use p1dyn_core::stability::is_semistable_presentation;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Mapped to exit codes: Usage → 2, Degenerate → 3.
pub enum Failure {
    Usage(String),
    Degenerate(String),
}

pub type CmdResult = Result<Value, Failure>;

#[derive(Serialize, Deserialize)]
pub struct MapDescription {
    pub field: String,
    pub degree: usize,
    pub a: Vec<String>,
    pub b: Vec<String>,
}

fn parse_elem(s: &str) -> Result<RatFunc, Failure> {
    parse_ratfunc(s, "t").map_err(|e| Failure::Usage(format!("coefficient '{s}': {e}")))
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    let f = parse_elem(s)?;
    if !f.is_constant() {
        return Err(Failure::Usage(format!("'{s}' is not a rational constant")));
    }
    Ok(f.eval(&Rat::zero()).unwrap())
}

pub enum AnyModel {
    Rational(Model<Rat>),
    RatFunc(Model<RatFunc>),
}

pub fn load_map(path: &std::path::Path) -> Result<AnyModel, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let desc: MapDescription = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if desc.degree < 1 {
        return Err(Failure::Usage("degree must be at least 1".into()));
    }
    if desc.a.len() != desc.degree + 1 || desc.b.len() != desc.degree + 1 {
        return Err(Failure::Usage(format!(
            "expected {} coefficients per form for degree {}",
            desc.degree + 1,
            desc.degree
        )));
    }
    let a: Vec<RatFunc> = desc.a.iter().map(|s| parse_elem(s)).collect::<Result<_, _>>()?;
    let b: Vec<RatFunc> = desc.b.iter().map(|s| parse_elem(s)).collect::<Result<_, _>>()?;
    if a.iter().chain(b.iter()).all(|c| c.is_zero()) {
        return Err(Failure::Degenerate("all coefficients are zero".into()));
    }
    match desc.field.as_str() {
        "ratfunc" => Ok(AnyModel::RatFunc(Model::new(a, b))),
        "rational" => {
            let to_rat = |v: &[RatFunc]| -> Result<Vec<Rat>, Failure> {
                v.iter()
                    .map(|f| {
                        if f.is_constant() {
                            Ok(f.eval(&Rat::zero()).unwrap())
                        } else {
                            Err(Failure::Usage(
                                "field is \"rational\" but a coefficient involves t".into(),
                            ))
                        }
                    })
                    .collect()
            };
            Ok(AnyModel::Rational(Model::new(to_rat(&a)?, to_rat(&b)?)))
        }
        other => Err(Failure::Usage(format!(
            "unknown field '{other}' (expected \"rational\" or \"ratfunc\")"
        ))),
    }
}

fn status_json(s: &MinimalityStatus) -> Value {
    match s {
        MinimalityStatus::CertifiedMinimal { value, certificate } => {
            let cert = match certificate {
                Certificate::ResultantBound => "resultant-bound".to_string(),
                Certificate::MultiplierNumerator { index } => {
                    format!("multiplier-numerator-{index}")
                }
                Certificate::SemistableReduction => "semistable-reduction".to_string(),
            };
            json!({"status": "certified-minimal", "value": value, "certificate": cert})
        }
        MinimalityStatus::BestFound { value, budget } => {
            json!({"status": "best-found", "value": value, "budget": budget})
        }
    }
}

fn minimal_json<F: JsonField>(phi: &Presentation<F>, budget: u32) -> Value {
    let mr = minimal_resultant(phi, budget);
    let reports: Vec<Value> = mr
        .reports
        .iter()
        .map(|(p, s)| json!({"place": F::place_json(p), "report": status_json(s)}))
        .collect();
    json!({
        "divisor": divisor_json::<F>(&mr.divisor),
        "conductor": divisor_json::<F>(&mr.conductor),
        "all_certified": mr.all_certified,
        "reports": reports,
        "wclass": opt_divisor_json::<F>(&wclass_divisor(phi, &mr.divisor)),
        "degrees": {
            "minimal": divisor_degree::<F>(&mr.divisor),
            "minimal_lognorm": divisor_lognorm::<F>(&mr.divisor),
            "conductor": divisor_degree::<F>(&mr.conductor),
        },
    })
}

fn critical_json<F: JsonField>(phi: &Presentation<F>) -> Value {
    let rep = critical_conductor(phi);
    let attribution: Vec<Value> = rep
        .attribution
        .iter()
        .map(|(p, c1, c2)| {
            json!({
                "place": F::place_json(p),
                "points_collide": c1,
                "values_collide": c2,
            })
        })
        .collect();
    json!({
        "conductor": divisor_json::<F>(&rep.conductor),
        "degree": divisor_degree::<F>(&rep.conductor),
        "attribution": attribution,
        "wronskian_disc": opt_divisor_json::<F>(&rep.wronskian_disc),
        "pushforward_disc": opt_divisor_json::<F>(&rep.pushforward_disc),
    })
}

fn presentation_json<F: JsonField>(phi: &Presentation<F>) -> Value {
    let m = phi.model();
    json!({
        "a": m.a.iter().map(F::elem_json).collect::<Vec<_>>(),
        "b": m.b.iter().map(F::elem_json).collect::<Vec<_>>(),
    })
}

fn check_nondegenerate<E: Field>(m: &Model<E>) -> Result<(), Failure> {
    if m.resultant().is_zero() {
        Err(Failure::Degenerate("the resultant vanishes".into()))
    } else {
        Ok(())
    }
}

fn analyze_field<F: JsonField>(
    m: Model<F::Elem>,
    budget: u32,
    seed: u64,
    skip_critical: bool,
) -> CmdResult {
    check_nondegenerate(&m)?;
    let phi: Presentation<F> = Presentation::new(m);
    let (semistable, classes) = is_semistable_presentation(&phi);
    let stability: Vec<Value> = classes
        .iter()
        .map(|(p, c)| json!({"place": F::place_json(p), "stability": stability_json(c)}))
        .collect();
    let rdiv = p1dyn_core::dynsys::resultant_divisor(&phi);
    Ok(json!({
        "schema": "p1dyn/analysis/1",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "budget": budget,
        "field": F::NAME,
        "degree": phi.degree(),
        "presentation": presentation_json(&phi),
        "resultant": F::elem_json(&phi.resultant()),
        "resultant_divisor": divisor_json::<F>(&rdiv),
        "resultant_degree": divisor_degree::<F>(&rdiv),
        "semistable": semistable,
        "stability": stability,
        "minimal_resultant": minimal_json(&phi, budget),
        "critical": if skip_critical { Value::Null } else { critical_json(&phi) },
    }))
}

pub fn cmd_analyze(
    path: &std::path::Path,
    budget: u32,
    seed: u64,
    skip_critical: bool,
) -> CmdResult {
    match load_map(path)? {
        AnyModel::Rational(m) => analyze_field::<QField>(m, budget, seed, skip_critical),
        AnyModel::RatFunc(m) => analyze_field::<FunField>(m, budget, seed, skip_critical),
    }
}

pub fn cmd_minimal(path: &std::path::Path, budget: u32, seed: u64) -> CmdResult {
    let header = |field: &str, body: Value| {
        json!({
            "schema": "p1dyn/minimal/1",
            "version": env!("CARGO_PKG_VERSION"),
            "seed": seed,
            "budget": budget,
            "field": field,
            "minimal_resultant": body,
        })
    };
    match load_map(path)? {
        AnyModel::Rational(m) => {
            check_nondegenerate(&m)?;
            let phi: Presentation<QField> = Presentation::new(m);
            Ok(header(QField::NAME, minimal_json(&phi, budget)))
        }
        AnyModel::RatFunc(m) => {
            check_nondegenerate(&m)?;
            let phi: Presentation<FunField> = Presentation::new(m);
            Ok(header(FunField::NAME, minimal_json(&phi, budget)))
        }
    }
}

pub fn cmd_critical(path: &std::path::Path) -> CmdResult {
    let header = |field: &str, body: Value| {
        json!({
            "schema": "p1dyn/critical/1",
            "version": env!("CARGO_PKG_VERSION"),
            "field": field,
            "critical": body,
        })
    };
    match load_map(path)? {
        AnyModel::Rational(m) => {
            check_nondegenerate(&m)?;
            let phi: Presentation<QField> = Presentation::new(m);
            Ok(header(QField::NAME, critical_json(&phi)))
        }
        AnyModel::RatFunc(m) => {
            check_nondegenerate(&m)?;
            let phi: Presentation<FunField> = Presentation::new(m);
            Ok(header(FunField::NAME, critical_json(&phi)))
        }
    }
}

fn require_not_01(name: &str, x: &Rat) -> Result<(), Failure> {
    if x.is_zero() || x.is_one() {
        Err(Failure::Usage(format!(
            "constraint violated: {name} must differ from 0 and 1 (got {x})"
        )))
    } else {
        Ok(())
    }
}

fn rat_poly_string(coeffs: &[(Rat, usize)]) -> String {
    // Σ c·t^k rendered through the polynomial printer for re-parseability
    let deg = coeffs.iter().map(|(_, k)| *k).max().unwrap_or(0);
    let mut v = vec![Rat::zero(); deg + 1];
    for (c, k) in coeffs {
        v[*k] = v[*k].clone() + c.clone();
    }
    p1dyn_core::poly::Poly::new(v).to_string_var("t")
}

/// ex1 --N k: the twisted squaring family (tᴺX² + Y²)/(tᴺY²).
fn family_ex1(n: i64) -> Result<MapDescription, Failure> {
    if n < 1 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    let tn = format!("t^{n}");
    Ok(MapDescription {
        field: "ratfunc".into(),
        degree: 2,
        a: vec![tn.clone(), "0".into(), "1".into()],
        b: vec!["0".into(), "0".into(), tn],
    })
}

/// ex2 --N k --a --b: λ₁ = a + btᴺ, λ₂ = a⁻¹ + b′tᴺ with b′ forced by
/// ab′ + b/a = 0.
fn family_ex2(n: i64, a: &Rat, b: &Rat) -> Result<(MapDescription, Rat), Failure> {
    if n < 1 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    require_not_01("a", a)?;
    require_not_01("b", b)?;
    let bprime = -(b.clone() / (a.clone() * a.clone()));
    require_not_01("b'", &bprime)?;
    let l1 = rat_poly_string(&[(a.clone(), 0), (b.clone(), n as usize)]);
    let l2 = rat_poly_string(&[(a.inv(), 0), (bprime.clone(), n as usize)]);
    Ok((
        MapDescription {
            field: "ratfunc".into(),
            degree: 2,
            a: vec!["1".into(), l1, "0".into()],
            b: vec!["0".into(), l2, "1".into()],
        },
        bprime,
    ))
}

/// nf --p --N --a --b: the same normal form over ℚ with tᴺ replaced by pᴺ.
fn family_nf(p: u64, n: i64, a: &Rat, b: &Rat) -> Result<(MapDescription, Rat), Failure> {
    if n < 1 {
        return Err(Failure::Usage("N must be at least 1".into()));
    }
    if !is_prime(&num_bigint::BigUint::from(p)) {
        return Err(Failure::Usage(format!("{p} is not prime")));
    }
    require_not_01("a", a)?;
    require_not_01("b", b)?;
    let bprime = -(b.clone() / (a.clone() * a.clone()));
    require_not_01("b'", &bprime)?;
    let mut pn = Rat::one();
    for _ in 0..n {
        pn = pn * Rat::from_int(p as i64);
    }
    let l1 = a.clone() + b.clone() * pn.clone();
    let l2 = a.inv() + bprime.clone() * pn;
    Ok((
        MapDescription {
            field: "rational".into(),
            degree: 2,
            a: vec!["1".into(), l1.to_string(), "0".into()],
            b: vec!["0".into(), l2.to_string(), "1".into()],
        },
        bprime,
    ))
}

pub enum FamilyKind {
    Ex1,
    Ex2,
    Nf,
}

pub fn cmd_family(
    kind: &FamilyKind,
    n: i64,
    a: Option<&str>,
    b: Option<&str>,
    p: Option<u64>,
) -> CmdResult {
    let need = |o: Option<&str>, name: &str| -> Result<Rat, Failure> {
        match o {
            Some(s) => parse_rat(s),
            None => Err(Failure::Usage(format!("--{name} is required"))),
        }
    };
    let (desc, family) = match kind {
        FamilyKind::Ex1 => (family_ex1(n)?, json!({"kind": "ex1", "N": n})),
        FamilyKind::Ex2 => {
            let a = need(a, "a")?;
            let b = need(b, "b")?;
            let (desc, bprime) = family_ex2(n, &a, &b)?;
            (
                desc,
                json!({
                    "kind": "ex2", "N": n,
                    "a": a.to_string(), "b": b.to_string(), "bprime": bprime.to_string(),
                }),
            )
        }
        FamilyKind::Nf => {
            let a = need(a, "a")?;
            let b = need(b, "b")?;
            let p = p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
            let (desc, bprime) = family_nf(p, n, &a, &b)?;
            (
                desc,
                json!({
                    "kind": "nf", "N": n, "p": p,
                    "a": a.to_string(), "b": b.to_string(), "bprime": bprime.to_string(),
                }),
            )
        }
    };
    let mut out = serde_json::to_value(&desc).unwrap();
    out["family"] = family;
    Ok(out)
}

pub fn cmd_lattes(a: &str, b: &str, n: usize) -> CmdResult {
    let a = parse_rat(a)?;
    let b = parse_rat(b)?;
    let e = EllipticCurve::new(a.clone(), b.clone());
    let disc = e.discriminant();
    if e.is_singular() {
        return Err(Failure::Degenerate(
            "singular curve: 4A^3 + 27B^2 = 0".into(),
        ));
    }
    if n < 2 {
        return Err(Failure::Usage("n must be at least 2".into()));
    }
    let m = lattes_model(&e, n);
    let rho = m.resultant();
    let desc = MapDescription {
        field: "rational".into(),
        degree: n * n,
        a: m.a.iter().map(|c| c.to_string()).collect(),
        b: m.b.iter().map(|c| c.to_string()).collect(),
    };
    let doubling = if n == 2 {
        let expected = Rat::from_int(256) * disc.clone() * disc.clone();
        json!({
            "computed": rho.to_string(),
            "expected": expected.to_string(),
            "pass": rho == expected,
        })
    } else {
        Value::Null
    };
    let mut out = serde_json::to_value(&desc).unwrap();
    out["curve"] = json!({
        "A": a.to_string(),
        "B": b.to_string(),
        "discriminant": disc.to_string(),
    });
    out["n"] = json!(n);
    out["resultant"] = json!(rho.to_string());
    out["doubling_check"] = doubling;
    Ok(out)
}
