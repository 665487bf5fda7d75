use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{integrate_rational, RatFn};
use crate::equiv::Moebius;
use crate::ode::{gauge_between, Ode3};

use super::basis::{Basis, BasisElement};
use super::expr::Expr;

/// One change of the independent variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainStep {
    Rational(RatFn),
    Power(u32),
    Moebius(Moebius),
}

impl ChainStep {
    pub fn map(&self) -> RatFn {
        match self {
            ChainStep::Rational(f) => f.clone(),
            ChainStep::Power(k) => RatFn::x().pow(*k as i32),
            ChainStep::Moebius(m) => m.to_ratfn(),
        }
    }
}

impl fmt::Display for ChainStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainStep::Rational(r) => write!(f, "x -> {r}"),
            ChainStep::Power(k) => write!(f, "x -> x^{k}"),
            ChainStep::Moebius(m) => write!(f, "{m}"),
        }
    }
}

/// Steps in the order they act on the input variable, so the seed variable
/// is `steps[n-1](...steps[0](x))`; `y_input = exp(∫gauge_witness) * y_seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformChain {
    pub steps: Vec<ChainStep>,
    pub gauge_witness: RatFn,
}

impl TransformChain {
    pub fn identity() -> TransformChain {
        TransformChain {
            steps: Vec::new(),
            gauge_witness: RatFn::zero(),
        }
    }

    /// Chain from `seed` to `input` through `steps`, or `None` when the
    /// transported invariants differ from the input's.
    pub fn build(seed: &Ode3, input: &Ode3, steps: Vec<ChainStep>) -> Option<TransformChain> {
        let mut chain = TransformChain {
            steps,
            gauge_witness: RatFn::zero(),
        };
        let g = chain.composed();
        if g.is_constant() {
            return None;
        }
        let u = seed.substitute(&g);
        if u.invariants() != input.invariants() {
            return None;
        }
        chain.gauge_witness = gauge_between(&u.c2, &input.c2);
        Some(chain)
    }

    pub fn composed(&self) -> RatFn {
        self.steps
            .iter()
            .fold(RatFn::x(), |acc, s| s.map().compose(&acc))
    }
}

impl fmt::Display for TransformChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(
            f,
            "[{}], gauge witness {}",
            steps.join(", "),
            self.gauge_witness
        )
    }
}

impl Serialize for TransformChain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "snake_case")]
        enum Step {
            Rational { map: String },
            Power { k: u32 },
            Moebius { map: String },
        }
        let steps: Vec<Step> = self
            .steps
            .iter()
            .map(|st| match st {
                ChainStep::Rational(r) => Step::Rational { map: r.to_string() },
                ChainStep::Power(k) => Step::Power { k: *k },
                ChainStep::Moebius(m) => Step::Moebius {
                    map: m.to_ratfn().to_string(),
                },
            })
            .collect();
        let mut st = s.serialize_struct("TransformChain", 3)?;
        st.serialize_field("steps", &steps)?;
        st.serialize_field("composed", &self.composed())?;
        st.serialize_field("gauge_witness", &self.gauge_witness)?;
        st.end()
    }
}

/// `exp(∫w)` as a product: integer log residues folded into one rational
/// factor, other rational residues as powers, the rest as an exponential.
pub fn gauge_factor(w: &RatFn) -> Vec<Expr> {
    if w.is_zero() {
        return Vec::new();
    }
    let mut form = integrate_rational(w);
    let mut rational = RatFn::one();
    let mut powers = Vec::new();
    form.log_terms.retain(|t| match t.residue.as_rational() {
        Some(r) if r.is_integer() => {
            let e = r.to_integer().try_into().expect("residue fits i32");
            rational = &rational * &RatFn::from_poly(t.argument.clone()).pow(e);
            false
        }
        Some(_) => {
            powers.push(Expr::power(
                Expr::Rational(RatFn::from_poly(t.argument.clone())),
                t.residue.clone(),
            ));
            false
        }
        None => true,
    });
    let mut out = Vec::new();
    if !rational.is_one() {
        out.push(Expr::Rational(rational));
    }
    out.extend(powers);
    if !form.is_zero() {
        out.push(Expr::ExpIntegral(form));
    }
    out
}

fn is_variable_power(e: &Expr) -> bool {
    match e {
        Expr::Variable => true,
        Expr::Power(b, _) => matches!(**b, Expr::Variable),
        _ => false,
    }
}

/// `e(x) -> exp(∫w) * e(G(x))` for every element.
pub fn apply_chain(basis: &Basis, chain: &TransformChain) -> Basis {
    let g = chain.composed();
    let gauge = gauge_factor(&chain.gauge_witness);
    let elements = basis
        .elements
        .iter()
        .map(|el| {
            let moved = el.expr.substitute(&g);
            // pure-power prefactors of G stay as powers of a rational base
            debug_assert!(match &el.expr {
                Expr::Product(v) => v
                    .iter()
                    .all(|f| is_variable_power(f) || f.special_node().is_some()),
                _ => true,
            });
            let mut factors = gauge.clone();
            factors.push(moved);
            BasisElement {
                expr: Expr::product(factors),
                ..el.clone()
            }
        })
        .collect();
    Basis {
        family: basis.family.clone(),
        elements,
    }
}
