//! End-to-end decision procedure: normal form, power+Moebius equivalence,
//! rational minimization with re-entry, basis construction, verification.

use serde::Serialize;

use crate::algebra::RatFn;
use crate::equiv::{equiv_power_moebius, EquivError, EquivPM};
use crate::ode::{invert_l, l_profile, seed, to_normal_form, Invariants, Ode3, SeedFamily};
use crate::ratmin::{minimize_invariants, RatminError};
use crate::solutions::{apply_chain, seed_basis, Basis, ChainStep, TransformChain};
use crate::trace::Trace;
use crate::verify::{exact_equivalence_check, numeric_entry, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exact,
    Numeric,
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub verify: VerifyMode,
    pub series_order: usize,
    pub tolerance: f64,
    pub sample_points: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            verify: VerifyMode::Both,
            series_order: 25,
            tolerance: 1e-8,
            sample_points: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    PowerMoebius,
    Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solved {
    pub family: SeedFamily,
    pub route: Route,
    pub power: u32,
    pub rational: Option<RatFn>,
    pub chain: TransformChain,
    pub basis: Basis,
    pub report: VerificationReport,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolveOutcome {
    Solved(Box<Solved>),
    NotEquivalent { stage: String, reason: String },
    Unsupported { reason: String },
}

impl SolveOutcome {
    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }

    pub fn solved(&self) -> Option<&Solved> {
        match self {
            SolveOutcome::Solved(s) => Some(s),
            _ => None,
        }
    }
}

/// Cost of a chain's gauge factor: no gauge beats any gauge, then lower
/// rational degree, then shorter printed form.
fn gauge_cost(chain: &TransformChain) -> (bool, u32, usize) {
    let w = &chain.gauge_witness;
    (!w.is_zero(), w.rational_degree(), w.to_string().len())
}

/// Among the verified identifications, the chain with the simplest gauge;
/// candidate order breaks ties.
fn best_chain(
    input: &Ode3,
    found: &[EquivPM],
    prefix: &[ChainStep],
    trace: &mut Trace,
) -> Option<(EquivPM, TransformChain)> {
    let mut best: Option<(EquivPM, TransformChain)> = None;
    for e in found {
        let mut steps = prefix.to_vec();
        if e.power > 1 {
            steps.push(ChainStep::Power(e.power));
        }
        if !e.moebius.is_identity() {
            steps.push(ChainStep::Moebius(e.moebius.clone()));
        }
        let seed_ode = seed(&e.family).ok()?;
        let Some(chain) = TransformChain::build(&seed_ode, input, steps) else {
            continue;
        };
        trace.push("chain", format!("{}: {chain}", e.family));
        let better = match &best {
            None => true,
            Some((_, b)) => gauge_cost(&chain) < gauge_cost(b),
        };
        if better {
            best = Some((e.clone(), chain));
        }
    }
    best
}

fn finish(
    input: &Ode3,
    inv: &Invariants,
    e: EquivPM,
    chain: TransformChain,
    route: Route,
    rational: Option<RatFn>,
    opts: &SolveOptions,
    trace: &mut Trace,
) -> SolveOutcome {
    let exact_ok = exact_equivalence_check(inv, &e.family, &chain);
    trace.push("verify", format!("exact certificate {exact_ok}"));
    if !exact_ok {
        return SolveOutcome::NotEquivalent {
            stage: "verify".into(),
            reason: "exact certificate failed".into(),
        };
    }
    let seed_b = seed_basis(&e.family);
    for el in &seed_b.elements {
        trace.push(
            "basis",
            format!("slot {} {:?}: {}", el.slot, el.status, el.expr),
        );
    }
    let basis = apply_chain(&seed_b, &chain);
    let numeric = match opts.verify {
        VerifyMode::Exact => Vec::new(),
        VerifyMode::Numeric | VerifyMode::Both => basis
            .elements
            .iter()
            .enumerate()
            .map(|(i, el)| {
                numeric_entry(
                    input,
                    i + 1,
                    &el.expr,
                    opts.series_order,
                    opts.sample_points,
                )
            })
            .collect(),
    };
    let report = VerificationReport::new(exact_ok, numeric, opts.series_order, opts.tolerance);
    SolveOutcome::Solved(Box::new(Solved {
        family: basis.family.clone(),
        route,
        power: e.power,
        rational,
        chain,
        basis,
        report,
    }))
}

pub fn solve(input: &Ode3, opts: &SolveOptions, trace: &mut Trace) -> SolveOutcome {
    let (inv, w) = to_normal_form(input);
    trace.push(
        "normal_form",
        format!("I1 = {}, I0 = {}, gauge witness {w}", inv.i1, inv.i0),
    );
    let first_err = match equiv_power_moebius(&inv, trace) {
        Ok(found) => {
            return match best_chain(input, &found, &[], trace) {
                Some((e, chain)) => finish(
                    input,
                    &inv,
                    e,
                    chain,
                    Route::PowerMoebius,
                    None,
                    opts,
                    trace,
                ),
                None => SolveOutcome::NotEquivalent {
                    stage: "chain".into(),
                    reason: "no chain reproduces the input".into(),
                },
            };
        }
        Err(e @ (EquivError::ConstantInvariants | EquivError::BothConstant)) => {
            return SolveOutcome::Unsupported {
                reason: e.to_string(),
            };
        }
        Err(e) => e,
    };
    trace.push(
        "equiv_power_moebius",
        format!("failed at {}: {first_err}", first_err.stage()),
    );
    let prof = match l_profile(&inv) {
        Ok(p) => p,
        Err(e) => {
            return SolveOutcome::NotEquivalent {
                stage: first_err.stage().into(),
                reason: format!("{first_err}; rational branch unavailable: {e}"),
            }
        }
    };
    let min = match minimize_invariants(&prof.l1, &prof.l2, trace) {
        Ok(m) => m,
        Err(RatminError::AlreadyMinimal) => {
            return SolveOutcome::NotEquivalent {
                stage: first_err.stage().into(),
                reason: format!("{first_err}; invariants already of minimal degree"),
            }
        }
        Err(e) => {
            return SolveOutcome::NotEquivalent {
                stage: "ratmin".into(),
                reason: e.to_string(),
            }
        }
    };
    trace.push("ratmin", format!("F = {}", min.f));
    let canon = match invert_l(&min.lmin.0, &min.lmin.1) {
        Ok(c) => c,
        Err(e) => {
            return SolveOutcome::NotEquivalent {
                stage: "ratmin".into(),
                reason: e.to_string(),
            }
        }
    };
    trace.push(
        "ratmin",
        format!("canonical I1 = {}, I0 = {}", canon.i1, canon.i0),
    );
    match equiv_power_moebius(&canon, trace) {
        Ok(found) => {
            let prefix = [ChainStep::Rational(min.f.clone())];
            match best_chain(input, &found, &prefix, trace) {
                Some((e, chain)) => finish(
                    input,
                    &inv,
                    e,
                    chain,
                    Route::Rational,
                    Some(min.f),
                    opts,
                    trace,
                ),
                None => SolveOutcome::NotEquivalent {
                    stage: "chain".into(),
                    reason: "no chain reproduces the input".into(),
                },
            }
        }
        Err(EquivError::ConstantInvariants | EquivError::BothConstant) => {
            SolveOutcome::Unsupported {
                reason: "canonical equation has constant invariants".into(),
            }
        }
        Err(e) => SolveOutcome::NotEquivalent {
            stage: e.stage().into(),
            reason: format!("after rational minimization: {e}"),
        },
    }
}
