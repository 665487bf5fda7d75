//! JSON and text renderings of solve outcomes, invariants and fuzz runs.
//! Everything here is a pure function of its inputs; no timings.

use std::fmt::Write;

use serde_json::{json, Value};

use crate::ode::{
    j_invariants, l_profile, singularity_profile, to_normal_form, Ode3, PointKind,
    SingularityProfile,
};
use crate::solver::SolveOutcome;
use crate::trace::Trace;

pub const SCHEMA_VERSION: u32 = 1;

fn ode_json(ode: &Ode3) -> Value {
    json!({ "c2": ode.c2.to_string(), "c1": ode.c1.to_string(), "c0": ode.c0.to_string() })
}

fn profile_json(p: &SingularityProfile) -> Value {
    Value::Array(
        p.points
            .iter()
            .map(|s| {
                json!({
                    "location": s.location.to_string(),
                    "kind": match s.kind { PointKind::Regular => "regular", PointKind::Irregular => "irregular" },
                    "pole_orders": [s.pole_orders.0, s.pole_orders.1],
                })
            })
            .collect(),
    )
}

pub fn solve_json(input: &Ode3, outcome: &SolveOutcome, trace: Option<&Trace>) -> Value {
    let mut v = json!({ "schema": SCHEMA_VERSION, "input": ode_json(input) });
    let obj = v.as_object_mut().unwrap();
    match outcome {
        SolveOutcome::Solved(s) => {
            obj.insert("outcome".into(), json!("solved"));
            obj.insert("family".into(), json!(s.family));
            obj.insert("route".into(), json!(s.route));
            obj.insert("power".into(), json!(s.power));
            obj.insert(
                "rational".into(),
                json!(s.rational.as_ref().map(|f| f.to_string())),
            );
            obj.insert("chain".into(), json!(s.chain));
            let basis: Vec<Value> = s
                .basis
                .elements
                .iter()
                .map(|e| {
                    json!({
                        "slot": e.slot,
                        "status": e.status,
                        "meijerg_replacement": e.meijerg_replacement,
                        "text": e.expr.to_string(),
                        "tree": e.expr,
                    })
                })
                .collect();
            obj.insert("basis".into(), Value::Array(basis));
            obj.insert("verification".into(), json!(s.report));
        }
        SolveOutcome::NotEquivalent { stage, reason } => {
            obj.insert("outcome".into(), json!("not_equivalent"));
            obj.insert("stage".into(), json!(stage));
            obj.insert("reason".into(), json!(reason));
        }
        SolveOutcome::Unsupported { reason } => {
            obj.insert("outcome".into(), json!("unsupported"));
            obj.insert("reason".into(), json!(reason));
        }
    }
    if let Some(t) = trace {
        obj.insert("trace".into(), json!(t.events));
    }
    v
}

pub fn solve_text(input: &Ode3, outcome: &SolveOutcome, trace: Option<&Trace>) -> String {
    let mut out = String::new();
    writeln!(out, "input: {input}").unwrap();
    match outcome {
        SolveOutcome::Solved(s) => {
            writeln!(out, "solved: {} ({:?} route)", s.family, s.route).unwrap();
            writeln!(out, "chain: {}", s.chain).unwrap();
            writeln!(out, "argument: {}", s.chain.composed()).unwrap();
            if !s.chain.gauge_witness.is_zero() {
                writeln!(out, "gauge: exp(int({}))", s.chain.gauge_witness).unwrap();
            }
            writeln!(out, "basis:").unwrap();
            for (i, e) in s.basis.elements.iter().enumerate() {
                writeln!(out, "  y{} = {}", i + 1, e.expr).unwrap();
            }
            writeln!(out, "exact certificate: {}", s.report.exact_ok).unwrap();
            if let Some(ok) = s.report.numeric_ok {
                writeln!(
                    out,
                    "numeric residuals within {:e}: {ok}",
                    s.report.tolerance
                )
                .unwrap();
            }
            for n in &s.report.numeric {
                match (&n.max_relative_residual, &n.skipped) {
                    (Some(r), _) => writeln!(out, "  y{} residual {r:.3e}", n.element).unwrap(),
                    (None, Some(why)) => {
                        writeln!(out, "  y{} not checked: {why}", n.element).unwrap()
                    }
                    _ => {}
                }
            }
        }
        SolveOutcome::NotEquivalent { stage, reason } => {
            writeln!(out, "not equivalent ({stage}): {reason}").unwrap();
        }
        SolveOutcome::Unsupported { reason } => {
            writeln!(out, "unsupported: {reason}").unwrap();
        }
    }
    if let Some(t) = trace {
        writeln!(out, "trace:").unwrap();
        for e in &t.events {
            writeln!(out, "  [{}] {}", e.stage, e.detail).unwrap();
        }
    }
    out
}

pub fn invariants_json(ode: &Ode3) -> Value {
    let (inv, _) = to_normal_form(ode);
    let j = j_invariants(&inv);
    let l = match l_profile(&inv) {
        Ok(p) => json!({
            "r": p.r.to_string(),
            "l1": p.l1.to_string(),
            "l2": p.l2.to_string(),
            "degenerate": p.degenerate.map(|e| e.to_string()),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    json!({
        "schema": SCHEMA_VERSION,
        "input": ode_json(ode),
        "i1": inv.i1.to_string(),
        "i0": inv.i0.to_string(),
        "j1": j.j1.to_string(),
        "j2": j.j2.to_string(),
        "l": l,
        "profile": profile_json(&singularity_profile(&inv)),
    })
}

pub fn invariants_text(ode: &Ode3) -> String {
    let v = invariants_json(ode);
    let s = |k: &str| v[k].as_str().unwrap_or_default().to_string();
    let mut out = String::new();
    writeln!(out, "I1 = {}", s("i1")).unwrap();
    writeln!(out, "I0 = {}", s("i0")).unwrap();
    writeln!(out, "J1 = {}", s("j1")).unwrap();
    writeln!(out, "J2 = {}", s("j2")).unwrap();
    match v["l"].get("error") {
        Some(e) => writeln!(out, "L: {}", e.as_str().unwrap_or_default()).unwrap(),
        None => {
            for (label, k) in [("r", "r"), ("L1", "l1"), ("L2", "l2")] {
                writeln!(out, "{label} = {}", v["l"][k].as_str().unwrap_or_default()).unwrap();
            }
        }
    }
    writeln!(out, "singular points:").unwrap();
    for p in v["profile"].as_array().unwrap() {
        writeln!(
            out,
            "  {} {} {}",
            p["location"].as_str().unwrap(),
            p["kind"].as_str().unwrap(),
            p["pole_orders"]
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatFn;
    use crate::solver::{solve, SolveOptions};

    #[test]
    fn unsupported_shape() {
        let ode = Ode3::new(RatFn::zero(), RatFn::zero(), RatFn::from_int(-1));
        let out = solve(&ode, &SolveOptions::default(), &mut Trace::new());
        let v = solve_json(&ode, &out, None);
        assert_eq!(v["schema"], 1);
        assert_eq!(v["outcome"], "unsupported");
        assert!(v.get("trace").is_none());
        assert!(solve_text(&ode, &out, None).contains("unsupported"));
    }

    #[test]
    fn invariants_of_airy_like() {
        let ode = Ode3::new(RatFn::zero(), RatFn::zero(), RatFn::x());
        let v = invariants_json(&ode);
        assert_eq!(v["i1"], "0");
        assert_eq!(v["i0"], "-x");
        assert!(invariants_text(&ode).starts_with("I1 = 0\nI0 = -x\n"));
    }
}
