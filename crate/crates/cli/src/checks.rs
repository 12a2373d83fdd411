//! The paper-check suite: recomputes each documented claim and reports
//! computed vs expected. Discrepancies that are understood and recorded in
//! the report itself carry the status "discrepancy-documented" rather than
//! "fail".

use num_bigint::BigInt;
use num_traits::{One, Zero};
use p1dyn_core::critical::{critical_conductor, reduce_point, BinaryForm};
use p1dyn_core::dynsys::{n_value, Model, Presentation};
use p1dyn_core::field::{rat, rat_int, Rat};
use p1dyn_core::kappa::KappaElem;
use p1dyn_core::lattes::{
    division_polynomials, lattes_model, nodal_analysis, nodal_curve, nodal_psi_orders,
    EllipticCurve,
};
use p1dyn_core::minimality::{descend, minimal_resultant, sigma1_numerator};
use p1dyn_core::parse::parse_ratfunc;
use p1dyn_core::places::{divisor_degree, FunField, FunPlace, GlobalField, Prime, QField};
use p1dyn_core::poly::Poly;
use p1dyn_core::ratfunc::{QPoly, RatFunc};
use p1dyn_core::stability::{is_semistable_presentation, StabilityClass};
use serde_json::{json, Value};

pub struct Row {
    pub id: &'static str,
    pub location: String,
    pub computed: String,
    pub expected: String,
    pub status: &'static str,
}

fn row(id: &'static str, location: &str, computed: String, expected: String, ok: bool) -> Row {
    Row {
        id,
        location: location.to_string(),
        computed,
        expected,
        status: if ok { "pass" } else { "fail" },
    }
}

fn documented(id: &'static str, location: &str, computed: String, expected: String) -> Row {
    Row {
        id,
        location: location.to_string(),
        computed,
        expected,
        status: "discrepancy-documented",
    }
}

fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s, "t").unwrap()
}

fn place_t() -> FunPlace {
    FunPlace::Finite(QPoly::from_ints(&[0, 1]))
}

fn example1(n: i64) -> Presentation<FunField> {
    let tn = rf(&format!("t^{n}"));
    Presentation::new(Model::new(
        vec![tn.clone(), RatFunc::zero(), RatFunc::one()],
        vec![RatFunc::zero(), RatFunc::zero(), tn],
    ))
}

fn example2_model(n: i64) -> Model<RatFunc> {
    let l1 = rf(&format!("2 + 3*t^{n}"));
    let l2 = rf(&format!("1/2 - 3/4*t^{n}"));
    Model::new(
        vec![RatFunc::one(), l1, RatFunc::zero()],
        vec![RatFunc::zero(), l2, RatFunc::one()],
    )
}

fn examples_rows(budget: u32) -> Vec<Row> {
    let mut rows = Vec::new();
    let t = place_t();

    // twisted squaring: presentation N-value 4N descends to N
    let phi = example1(6);
    let start = n_value(&phi, &t);
    rows.push(row(
        "ex1-presentation-nvalue",
        "Example 1 (N=6)",
        start.to_string(),
        "24".into(),
        start == 24,
    ));
    let (_, status) = descend(&phi, &t, budget);
    rows.push(row(
        "ex1-minimal-nvalue",
        "Example 1 (N=6)",
        status.value().to_string(),
        "6".into(),
        status.value() == 6,
    ));

    // the function-field family at N = 3
    let n = 3i64;
    let m = example2_model(n);
    let rho = m.resultant();
    let expected = rf("9/4*t^6");
    rows.push(row(
        "ex2-resultant",
        "family with ab'+b/a=0 (N=3)",
        rho.to_string(),
        expected.to_string(),
        rho == expected,
    ));
    let phi: Presentation<FunField> = Presentation::new(m.clone());
    let (semistable, _) = is_semistable_presentation(&phi);
    rows.push(row(
        "ex2-semistable",
        "family with ab'+b/a=0 (N=3)",
        semistable.to_string(),
        "true".into(),
        semistable,
    ));
    let p1 = sigma1_numerator(&m);
    let c0 = p1.eval(&Rat::zero());
    rows.push(row(
        "ex2-sigma1-constant-term",
        "family with ab'+b/a=0",
        c0.as_ref().map_or("pole".into(), |v| v.to_string()),
        "-1/2".into(),
        c0 == Some(rat(-1, 2)),
    ));
    let mr = minimal_resultant(&phi, budget);
    rows.push(row(
        "ex2-minimal-at-t",
        "family with ab'+b/a=0 (N=3)",
        mr.divisor.coeff(&t).to_string(),
        "6".into(),
        mr.divisor.coeff(&t) == 2 * n && mr.all_certified,
    ));
    let cdeg = divisor_degree::<FunField>(&mr.conductor);
    rows.push(row(
        "ex2-conductor-degree",
        "family with ab'+b/a=0 (N=3)",
        cdeg.to_string(),
        "<= 2".into(),
        cdeg <= 2,
    ));

    // the same family over ℚ at p = 5, N = 2
    let p5 = Prime(BigInt::from(5));
    let five2 = rat_int(25);
    let l1 = rat_int(2) + rat_int(3) * five2.clone();
    let l2 = rat(1, 2) - rat(3, 4) * five2;
    let mq = Model::new(
        vec![Rat::one(), l1, Rat::zero()],
        vec![Rat::zero(), l2, Rat::one()],
    );
    let v5 = QField::valuation(&mq.resultant(), &p5).unwrap();
    rows.push(row(
        "nf-resultant-v5",
        "number-field family (p=5, N=2)",
        v5.to_string(),
        "4".into(),
        v5 == 4,
    ));
    let phiq: Presentation<QField> = Presentation::new(mq);
    let mrq = minimal_resultant(&phiq, budget);
    let support: Vec<String> = mrq.divisor.support().map(|p| p.0.to_string()).collect();
    rows.push(documented(
        "nf-conductor-support",
        "number-field family (p=5, N=2)",
        format!("{{{}}}", support.join(",")),
        "{5}".into(),
        // a, b, b' are not units here, so 2 and 3 also carry bad reduction
    ));
    rows.push(row(
        "nf-minimal-at-5",
        "number-field family (p=5, N=2)",
        mrq.divisor.coeff(&p5).to_string(),
        "4".into(),
        mrq.divisor.coeff(&p5) == 4 && mrq.all_certified,
    ));
    rows
}

fn lattes_rows() -> Vec<Row> {
    let mut rows = Vec::new();

    let e = EllipticCurve::new(rat_int(0), rat_int(1));
    let rho = lattes_model(&e, 2).resultant();
    rows.push(row(
        "lattes-doubling-resultant",
        "doubling map, (A,B)=(0,1)",
        rho.to_string(),
        "186624".into(),
        rho == rat_int(186624),
    ));
    let disc = e.discriminant();
    rows.push(row(
        "lattes-256-disc-squared",
        "doubling map, (A,B)=(0,1)",
        rho.to_string(),
        (rat_int(256) * disc.clone() * disc).to_string(),
        rho == rat_int(256) * e.discriminant() * e.discriminant(),
    ));

    // division-polynomial base cases at (A,B) = (2,3)
    let e = EllipticCurve::new(rat_int(2), rat_int(3));
    let psi = division_polynomials(&e, 4);
    let want3 = Poly::from_ints(&[-4, 36, 12, 0, 3]);
    let want4 = Poly::from_ints(&[-320, -96, -80, 240, 40, 0, 4]);
    let ok = psi[3].ev == want3 && psi[3].od.is_zero() && psi[4].od == want4 && psi[4].ev.is_zero();
    rows.push(row(
        "psi-base-cases",
        "division polynomials Ψ₃, Ψ₄",
        if ok { "match" } else { "mismatch" }.into(),
        "match".into(),
        ok,
    ));

    // nodal factorization and the order table
    let psi_nodal = division_polynomials(&nodal_curve(&rat_int(1)), 3);
    let want = (QPoly::from_ints(&[-1, 1]).pow(3) * QPoly::from_ints(&[3, 1])).scale(&rat_int(3));
    rows.push(row(
        "psi3-nodal-factorization",
        "nodal specialization, λ₂=1",
        psi_nodal[3].ev.to_string_var("x"),
        want.to_string_var("x"),
        psi_nodal[3].ev == want,
    ));
    let orders = nodal_psi_orders(&rat_int(1), 9);
    let bounds = [2i64, 6, 12, 18, 26, 36, 48, 60];
    let meets = (2usize..=9).zip(bounds).all(|(n, lb)| orders[n - 1] >= lb);
    let order_list = orders[1..]
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    rows.push(row(
        "psi-table-bounds",
        "table of 2v(ψₙ), n=2..9",
        order_list.clone(),
        "each ≥ (2,6,12,18,26,36,48,60)".into(),
        meets,
    ));
    // the tabulated column is a lower bound; the exact orders are n² − n
    // and exceed it from n = 5 on
    rows.push(documented(
        "psi-orders-exact",
        "table of 2v(ψₙ), n=2..9",
        order_list,
        "2,6,12,18,26,36,48,60".into(),
    ));

    let mut unstable = 0;
    for lam in [1i64, 2, -1] {
        for n in 2usize..=4 {
            if matches!(
                nodal_analysis(&rat_int(lam), n).class,
                StabilityClass::Unstable(_)
            ) {
                unstable += 1;
            }
        }
    }
    rows.push(row(
        "nodal-unstable",
        "nodal Lattès reductions, λ₂∈{1,2,−1}, n∈{2,3,4}",
        format!("{unstable}/9 unstable"),
        "9/9 unstable".into(),
        unstable == 9,
    ));
    rows
}

fn same_point(p: &(KappaElem, KappaElem), q: &(KappaElem, KappaElem)) -> bool {
    p.0.clone() * q.1.clone() == q.0.clone() * p.1.clone()
}

fn critical_rows() -> Vec<Row> {
    let mut rows = Vec::new();
    let n = 3i64;
    let phi: Presentation<FunField> = Presentation::new(example2_model(n));
    let rep = critical_conductor(&phi);

    // the two K-rational critical points and their images
    let l2 = rf(&format!("1/2 - 3/4*t^{n}"));
    let tn = rf(&format!("t^{n}"));
    let half = RatFunc::constant(rat(3, 2));
    let pts = [
        (-RatFunc::one() + half.clone() * tn.clone(), l2.clone()),
        (-RatFunc::one() - half * tn, l2),
    ];
    let m = phi.model();
    let fa = BinaryForm::new(m.a.clone());
    let fb = BinaryForm::new(m.b.clone());
    let images: Vec<(RatFunc, RatFunc)> = pts
        .iter()
        .map(|(x, y)| (fa.eval(x, y), fb.eval(x, y)))
        .collect();

    let mut support: Vec<FunPlace> = Vec::new();
    for d in [&rep.wronskian_disc, &rep.pushforward_disc].into_iter().flatten() {
        for p in d.support() {
            if !support.contains(p) {
                support.push(p.clone());
            }
        }
    }
    let mut agree = 0;
    for p in &support {
        let c1 = rep.wronskian_disc.as_ref().map_or(false, |d| d.coeff(p) > 0);
        let c2 = rep
            .pushforward_disc
            .as_ref()
            .map_or(false, |d| d.coeff(p) > 0);
        let r: Vec<_> = pts
            .iter()
            .map(|(x, y)| reduce_point::<FunField>(x, y, p))
            .collect();
        let rv: Vec<_> = images
            .iter()
            .map(|(x, y)| reduce_point::<FunField>(x, y, p))
            .collect();
        if c1 == same_point(&r[0], &r[1]) && c2 == same_point(&rv[0], &rv[1]) {
            agree += 1;
        }
    }
    rows.push(row(
        "critical-oracle-agreement",
        "critical bad reduction of the family (N=3)",
        format!("{agree}/{} places agree", support.len()),
        format!("{}/{} places agree", support.len(), support.len()),
        agree == support.len(),
    ));

    // claimed lower bound of N + 1 places of critical bad reduction:
    // at the roots of λ₂ the numerator of one critical point also
    // vanishes, so the reductions are distinct there
    let count = rep.conductor.len() as i64;
    rows.push(documented(
        "critlarge-count",
        "critical bad reduction of the family (N=3)",
        count.to_string(),
        format!(">= {}", n + 1),
    ));
    rows
}

pub fn paper_check_rows(section: &str, budget: u32) -> Vec<Row> {
    let mut rows = Vec::new();
    if section == "all" || section == "examples" {
        rows.extend(examples_rows(budget));
    }
    if section == "all" || section == "lattes" {
        rows.extend(lattes_rows());
    }
    if section == "all" || section == "critical" {
        rows.extend(critical_rows());
    }
    rows
}

pub fn rows_json(rows: &[Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "location": r.location,
                    "computed": r.computed,
                    "expected": r.expected,
                    "status": r.status,
                })
            })
            .collect(),
    )
}

pub fn rows_tsv(rows: &[Row]) -> String {
    let mut out = String::from("id\tlocation\tcomputed\texpected\tstatus\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            r.id, r.location, r.computed, r.expected, r.status
        ));
    }
    out
}
