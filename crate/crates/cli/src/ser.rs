//! Lossless JSON forms of field elements, places and divisors. Rationals
//! serialize as canonical strings ("3/4"), rational functions as
//! {"num", "den"} pairs of polynomial strings.

use p1dyn_core::field::Rat;
use p1dyn_core::places::{Divisor, FunField, FunPlace, GlobalField, Prime, QField};
use p1dyn_core::ratfunc::RatFunc;
use p1dyn_core::stability::{FactorSite, StabilityClass, Witness};
use serde_json::{json, Value};

pub trait JsonField: GlobalField {
    const NAME: &'static str;
    fn place_json(p: &Self::Place) -> Value;
    fn elem_json(x: &Self::Elem) -> Value;
}

impl JsonField for QField {
    const NAME: &'static str = "rational";

    fn place_json(p: &Prime) -> Value {
        json!({"kind": "prime", "data": p.0.to_string()})
    }

    fn elem_json(x: &Rat) -> Value {
        Value::String(x.to_string())
    }
}

impl JsonField for FunField {
    const NAME: &'static str = "ratfunc";

    fn place_json(p: &FunPlace) -> Value {
        match p {
            FunPlace::Finite(q) => json!({"kind": "finite", "data": q.to_string_var("t")}),
            FunPlace::Infinity => json!({"kind": "infinity", "data": ""}),
        }
    }

    fn elem_json(x: &RatFunc) -> Value {
        json!({
            "num": x.num().to_string_var("t"),
            "den": x.den().to_string_var("t"),
        })
    }
}

pub fn divisor_json<F: JsonField>(d: &Divisor<F::Place>) -> Value {
    Value::Array(
        d.iter()
            .map(|(p, c)| json!({"place": F::place_json(p), "coeff": c}))
            .collect(),
    )
}

pub fn opt_divisor_json<F: JsonField>(d: &Option<Divisor<F::Place>>) -> Value {
    match d {
        Some(d) => divisor_json::<F>(d),
        None => Value::Null,
    }
}

fn witness_json(w: &Witness) -> Value {
    let factor = match &w.factor {
        FactorSite::Finite(p) => p.to_string_var("x"),
        FactorSite::AtInfinity => "infinity".to_string(),
    };
    json!({"factor": factor, "order": w.order, "fixed": w.fixed})
}

pub fn stability_json(c: &StabilityClass) -> Value {
    match c {
        StabilityClass::NonDegenerate => json!({"class": "nondegenerate"}),
        StabilityClass::Stable => json!({"class": "stable"}),
        StabilityClass::SemiStableNotStable(w) => {
            json!({"class": "semistable-not-stable", "witness": witness_json(w)})
        }
        StabilityClass::Unstable(w) => {
            json!({"class": "unstable", "witness": witness_json(w)})
        }
    }
}
