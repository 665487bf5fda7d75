use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::{integrate_rational, AlgNum, IntegralForm, RatFn};

/// `G^{m,n}_{p,q}(arg | a; b)`, `p = a.len()`, `q = b.len()`. The first `n`
/// entries of `a` and the first `m` of `b` form the "upper" groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeijerG {
    pub m: usize,
    pub n: usize,
    pub a: Vec<AlgNum>,
    pub b: Vec<AlgNum>,
    pub arg: RatFn,
}

impl MeijerG {
    pub fn new(m: usize, n: usize, a: Vec<AlgNum>, b: Vec<AlgNum>, arg: RatFn) -> MeijerG {
        assert!(n <= a.len() && m <= b.len());
        let mut g = MeijerG { m, n, a, b, arg };
        g.sort_groups();
        g
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.b.len()
    }

    fn sort_groups(&mut self) {
        let cmp = |x: &AlgNum, y: &AlgNum| x.canonical_cmp(y);
        self.a[..self.n].sort_by(cmp);
        self.a[self.n..].sort_by(cmp);
        self.b[..self.m].sort_by(cmp);
        self.b[self.m..].sort_by(cmp);
    }

    /// Removes coinciding parameter pairs: `a_j (j <= n) = b_k (k > m)` and
    /// `a_j (j > n) = b_k (k <= m)`.
    pub fn reduced(&self) -> MeijerG {
        let mut g = self.clone();
        loop {
            let mut hit = None;
            'outer: for i in 0..g.n {
                for k in g.m..g.q() {
                    if g.a[i] == g.b[k] {
                        hit = Some((i, k, true));
                        break 'outer;
                    }
                }
            }
            if hit.is_none() {
                'outer2: for i in g.n..g.p() {
                    for k in 0..g.m {
                        if g.a[i] == g.b[k] {
                            hit = Some((i, k, false));
                            break 'outer2;
                        }
                    }
                }
            }
            let Some((i, k, first)) = hit else { return g };
            g.a.remove(i);
            g.b.remove(k);
            if first {
                g.n -= 1;
            } else {
                g.m -= 1;
            }
        }
    }
}

/// Solution expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Constant(AlgNum),
    Variable,
    Rational(RatFn),
    Power(Box<Expr>, AlgNum),
    Product(Vec<Expr>),
    Sum(Vec<Expr>),
    /// `exp(form)`; the form is an antiderivative.
    ExpIntegral(IntegralForm),
    Pfq {
        upper: Vec<AlgNum>,
        lower: Vec<AlgNum>,
        arg: RatFn,
    },
    MeijerG(MeijerG),
}

fn sorted(mut v: Vec<AlgNum>) -> Vec<AlgNum> {
    v.sort_by(|x, y| x.canonical_cmp(y));
    v
}

/// Cancels parameters common to both lists, one for one.
pub fn cancel_params(upper: &[AlgNum], lower: &[AlgNum]) -> (Vec<AlgNum>, Vec<AlgNum>) {
    let mut up = upper.to_vec();
    let mut lo = Vec::with_capacity(lower.len());
    for b in lower {
        if let Some(i) = up.iter().position(|a| a == b) {
            up.remove(i);
        } else {
            lo.push(b.clone());
        }
    }
    (sorted(up), sorted(lo))
}

impl Expr {
    /// `pFq(upper; lower; arg)`, refused when a lower parameter is a
    /// non-positive integer.
    pub fn pfq(upper: Vec<AlgNum>, lower: Vec<AlgNum>, arg: RatFn) -> Option<Expr> {
        if lower.iter().any(AlgNum::is_nonpositive_integer) {
            return None;
        }
        Some(Expr::Pfq {
            upper: sorted(upper),
            lower: sorted(lower),
            arg,
        })
    }

    pub fn power(base: Expr, e: AlgNum) -> Expr {
        if e.is_zero() {
            return Expr::Constant(AlgNum::one());
        }
        if e == AlgNum::one() {
            return base;
        }
        Expr::Power(Box::new(base), e)
    }

    /// Flattens nested products and drops unit factors.
    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut out = Vec::new();
        for f in factors {
            match f {
                Expr::Product(inner) => out.extend(inner),
                Expr::Constant(c) if c == AlgNum::one() => {}
                Expr::Rational(r) if r.is_one() => {}
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Expr::Constant(AlgNum::one()),
            1 => out.pop().unwrap(),
            _ => Expr::Product(out),
        }
    }

    pub fn is_pfq(&self) -> bool {
        matches!(self, Expr::Pfq { .. })
    }

    pub fn contains_meijerg(&self) -> bool {
        match self {
            Expr::MeijerG(_) => true,
            Expr::Power(b, _) => b.contains_meijerg(),
            Expr::Product(v) | Expr::Sum(v) => v.iter().any(Expr::contains_meijerg),
            _ => false,
        }
    }

    /// The special-function node of a basis element, if any.
    pub fn special_node(&self) -> Option<&Expr> {
        match self {
            Expr::Pfq { .. } | Expr::MeijerG(_) => Some(self),
            Expr::Product(v) | Expr::Sum(v) => v.iter().find_map(Expr::special_node),
            Expr::Power(b, _) => b.special_node(),
            _ => None,
        }
    }

    /// Order reduction: equal parameters in both lists of a pFq cancel, as do
    /// the coinciding pairs of a Meijer G. Idempotent.
    pub fn reduce_order(&self) -> Expr {
        match self {
            Expr::Pfq { upper, lower, arg } => {
                let (up, lo) = cancel_params(upper, lower);
                Expr::Pfq {
                    upper: up,
                    lower: lo,
                    arg: arg.clone(),
                }
            }
            Expr::MeijerG(g) => Expr::MeijerG(g.reduced()),
            Expr::Power(b, e) => Expr::Power(Box::new(b.reduce_order()), e.clone()),
            Expr::Product(v) => Expr::Product(v.iter().map(Expr::reduce_order).collect()),
            Expr::Sum(v) => Expr::Sum(v.iter().map(Expr::reduce_order).collect()),
            other => other.clone(),
        }
    }

    /// `e(g(x))`. Exponential-integral factors are re-integrated, so the
    /// result agrees up to a constant factor.
    pub fn substitute(&self, g: &RatFn) -> Expr {
        match self {
            Expr::Constant(_) => self.clone(),
            Expr::Variable => Expr::Rational(g.clone()),
            Expr::Rational(f) => Expr::Rational(f.compose(g)),
            Expr::Power(b, e) => Expr::Power(Box::new(b.substitute(g)), e.clone()),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.substitute(g)).collect()),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.substitute(g)).collect()),
            Expr::ExpIntegral(form) => {
                let w = &form.derivative().compose(g) * &g.derivative();
                Expr::ExpIntegral(integrate_rational(&w))
            }
            Expr::Pfq { upper, lower, arg } => Expr::Pfq {
                upper: upper.clone(),
                lower: lower.clone(),
                arg: arg.compose(g),
            },
            Expr::MeijerG(m) => Expr::MeijerG(MeijerG {
                arg: m.arg.compose(g),
                ..m.clone()
            }),
        }
    }
}

fn param_list(v: &[AlgNum]) -> String {
    v.iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn needs_parens(s: &str) -> bool {
    s.contains(' ') || s.contains('/') || s.starts_with('-')
}

fn wrap(s: String) -> String {
    if needs_parens(&s) && !(s.starts_with('(') && s.ends_with(')') && balanced_inner(&s)) {
        format!("({s})")
    } else {
        s
    }
}

/// Whether the outer parentheses of `s` enclose everything.
fn balanced_inner(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 < s.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

pub fn render_integral(form: &IntegralForm) -> String {
    let mut parts = Vec::new();
    if !form.rational_part.is_zero() {
        parts.push(form.rational_part.to_string());
    }
    for t in &form.log_terms {
        let arg = t.argument.to_string();
        if t.residue.is_rational() {
            parts.push(format!("{}*log({arg})", wrap(t.residue.to_string())));
        } else {
            // conjugate pair over the quadratic argument
            let root = t.paired_root().expect("quadratic residue");
            parts.push(format!(
                "{}*log(x - {}) + {}*log(x - {})",
                wrap(t.residue.to_string()),
                wrap(root.to_string()),
                wrap(t.residue.conj().to_string()),
                wrap(root.conj().to_string())
            ));
        }
    }
    if let Some(r) = &form.unevaluated_remainder {
        parts.push(format!("int({r}, x)"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(c) => write!(f, "{}", wrap(c.to_string())),
            Expr::Variable => write!(f, "x"),
            Expr::Rational(r) => write!(f, "{}", wrap(r.to_string())),
            Expr::Power(b, e) => write!(f, "{}^({e})", wrap(b.to_string())),
            Expr::Product(v) => {
                let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "{}", s.join("*"))
            }
            Expr::Sum(v) => {
                let s: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", s.join(" + "))
            }
            Expr::ExpIntegral(form) => write!(f, "exp({})", render_integral(form)),
            Expr::Pfq { upper, lower, arg } => {
                write!(
                    f,
                    "hypergeom([{}], [{}], {arg})",
                    param_list(upper),
                    param_list(lower)
                )
            }
            Expr::MeijerG(g) => write!(
                f,
                "meijerg([[{}], [{}]], [[{}], [{}]], {})",
                param_list(&g.a[..g.n]),
                param_list(&g.a[g.n..]),
                param_list(&g.b[..g.m]),
                param_list(&g.b[g.m..]),
                g.arg
            ),
        }
    }
}

impl Serialize for MeijerG {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MeijerG", 5)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("a", &[&self.a[..self.n], &self.a[self.n..]])?;
        st.serialize_field("b", &[&self.b[..self.m], &self.b[self.m..]])?;
        st.serialize_field("argument", &self.arg)?;
        st.end()
    }
}

impl Serialize for Expr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(tag = "kind", rename_all = "snake_case")]
        enum Tree<'a> {
            Constant {
                value: &'a AlgNum,
            },
            Variable,
            Rational {
                value: &'a RatFn,
            },
            Power {
                base: &'a Expr,
                exponent: &'a AlgNum,
            },
            Product {
                factors: &'a [Expr],
            },
            Sum {
                terms: &'a [Expr],
            },
            ExpIntegral {
                integral: String,
            },
            Pfq {
                upper: &'a [AlgNum],
                lower: &'a [AlgNum],
                argument: &'a RatFn,
            },
            Meijerg {
                m: usize,
                n: usize,
                a: [&'a [AlgNum]; 2],
                b: [&'a [AlgNum]; 2],
                argument: &'a RatFn,
            },
        }
        let t = match self {
            Expr::Constant(c) => Tree::Constant { value: c },
            Expr::Variable => Tree::Variable,
            Expr::Rational(r) => Tree::Rational { value: r },
            Expr::Power(b, e) => Tree::Power {
                base: b,
                exponent: e,
            },
            Expr::Product(v) => Tree::Product { factors: v },
            Expr::Sum(v) => Tree::Sum { terms: v },
            Expr::ExpIntegral(form) => Tree::ExpIntegral {
                integral: render_integral(form),
            },
            Expr::Pfq { upper, lower, arg } => Tree::Pfq {
                upper,
                lower,
                argument: arg,
            },
            Expr::MeijerG(g) => Tree::Meijerg {
                m: g.m,
                n: g.n,
                a: [&g.a[..g.n], &g.a[g.n..]],
                b: [&g.b[..g.m], &g.b[g.m..]],
                argument: &g.arg,
            },
        };
        t.serialize(s)
    }
}
