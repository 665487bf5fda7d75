//! Round-trip case generator: a seed equation pushed forward through a
//! random substitution and gauge, to be solved back.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::rat::{rat, rint};
use crate::algebra::{poly_gcd, AlgNum, Poly, Rat, RatFn};
use crate::equiv::Moebius;
use crate::ode::{seed, Family, Ode3, SeedFamily};
use crate::solutions::{detect_special, ChainStep, SlotStatus, TransformChain};
use crate::solver::{solve, SolveOptions, SolveOutcome};
use crate::trace::Trace;
use crate::verify::VerificationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzOptions {
    pub family: Option<Family>,
    pub include_degenerate: bool,
    pub max_power: u32,
    pub max_rational_degree: u32,
    /// Probability (percent) of planting a rational step.
    pub rational_percent: u32,
}

impl Default for FuzzOptions {
    fn default() -> Self {
        FuzzOptions {
            family: None,
            include_degenerate: false,
            max_power: 4,
            max_rational_degree: 4,
            rational_percent: 30,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzCase {
    pub rng_seed: u64,
    pub family: SeedFamily,
    pub power: u32,
    pub moebius: Moebius,
    pub rational: Option<RatFn>,
    pub gauge: RatFn,
    pub ode: Ode3,
}

impl FuzzCase {
    /// Steps in input-variable order, as in [`TransformChain`].
    pub fn steps(&self) -> Vec<ChainStep> {
        let mut steps = Vec::new();
        if let Some(f) = &self.rational {
            steps.push(ChainStep::Rational(f.clone()));
        }
        if self.power > 1 {
            steps.push(ChainStep::Power(self.power));
        }
        if !self.moebius.is_identity() {
            steps.push(ChainStep::Moebius(self.moebius.clone()));
        }
        steps
    }

    pub fn chain(&self) -> TransformChain {
        TransformChain {
            steps: self.steps(),
            gauge_witness: self.gauge.clone(),
        }
    }
}

impl Serialize for FuzzCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FuzzCase", 5)?;
        st.serialize_field("rng_seed", &self.rng_seed)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("chain", &self.chain())?;
        st.serialize_field("ode", &self.ode.to_string())?;
        st.end()
    }
}

fn small_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-12..=12), rng.gen_range(2..=5))
}

fn non_integer(r: &Rat) -> bool {
    !r.is_integer()
}

/// Parameters with no integer relations among local exponents.
fn generic_params(rng: &mut ChaCha8Rng, family: Family) -> SeedFamily {
    let (p, _) = family.pq();
    loop {
        let up: Vec<Rat> = (0..p).map(|_| small_rat(rng)).collect();
        let lo: Vec<Rat> = (0..2).map(|_| small_rat(rng)).collect();
        let mut diffs = vec![lo[0].clone(), lo[1].clone(), &lo[0] - &lo[1]];
        for a in &up {
            diffs.push(a.clone());
            for b in &lo {
                diffs.push(a - b);
            }
        }
        for i in 0..p {
            for j in i + 1..p {
                diffs.push(&up[i] - &up[j]);
            }
        }
        if family == Family::F32 {
            diffs.push(lo.iter().sum::<Rat>() - up.iter().sum::<Rat>());
        }
        if diffs.iter().all(non_integer) {
            return SeedFamily::new(
                family,
                up.into_iter().map(AlgNum::from).collect(),
                lo.into_iter().map(AlgNum::from).collect(),
            )
            .expect("arity");
        }
    }
}

/// Lower parameters with a non-positive integer or an integer coincidence.
fn degenerate_params(rng: &mut ChaCha8Rng, family: Family) -> SeedFamily {
    loop {
        let generic = generic_params(rng, family);
        let mut lo = generic.lower.clone();
        match rng.gen_range(0..4) {
            0 => lo[0] = AlgNum::int(rng.gen_range(-3..=0)),
            1 => lo = vec![AlgNum::one(), AlgNum::one()],
            2 => lo[1] = lo[0].clone(),
            _ => lo[0] = AlgNum::one(),
        }
        let up = generic.upper.clone();
        let Ok(f) = SeedFamily::new(family, up, lo) else {
            continue;
        };
        if detect_special(&f).iter().any(|s| *s != SlotStatus::Native) {
            return f;
        }
    }
}

fn random_moebius(rng: &mut ChaCha8Rng) -> Moebius {
    loop {
        let v: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        if v[0] * v[3] - v[1] * v[2] != 0 {
            return Moebius::new(rint(v[0]), rint(v[1]), rint(v[2]), rint(v[3]));
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32) -> Poly {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
    if c[deg as usize] == 0 {
        c[deg as usize] = 1;
    }
    Poly::from_i64(&c)
}

fn random_rational(rng: &mut ChaCha8Rng, deg: u32) -> RatFn {
    loop {
        let p = random_poly(rng, deg);
        let dq = rng.gen_range(0..=deg);
        let q = random_poly(rng, dq);
        if poly_gcd(&p, &q).is_one() {
            let f = RatFn::new(p, q);
            if f.rational_degree() == deg {
                return f;
            }
        }
    }
}

fn random_gauge(rng: &mut ChaCha8Rng) -> RatFn {
    let mut w = RatFn::zero();
    for _ in 0..rng.gen_range(0..=2) {
        let a = small_rat(rng);
        let r = rint(rng.gen_range(-4..=4));
        w = &w + &RatFn::new(Poly::constant(a), Poly::linear_root(&r));
    }
    if rng.gen_bool(0.3) {
        w = &w + &RatFn::constant(rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
    }
    w
}

/// Deterministic for a given seed.
pub fn fuzz_generate(rng_seed: u64, opts: &FuzzOptions) -> FuzzCase {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let family = opts
        .family
        .unwrap_or_else(|| *Family::ALL.choose(&mut rng).unwrap());
    let params = if opts.include_degenerate {
        degenerate_params(&mut rng, family)
    } else {
        generic_params(&mut rng, family)
    };
    let rational = if opts.max_rational_degree >= 2 && rng.gen_range(0..100) < opts.rational_percent
    {
        let deg = rng.gen_range(2..=opts.max_rational_degree);
        Some(random_rational(&mut rng, deg))
    } else {
        None
    };
    // the rational branch re-enters with a Moebius-only equivalence
    let power = if rational.is_some() {
        1
    } else {
        rng.gen_range(1..=opts.max_power.max(1))
    };
    let moebius = random_moebius(&mut rng);
    let gauge = random_gauge(&mut rng);
    let mut case = FuzzCase {
        rng_seed,
        family: params,
        power,
        moebius,
        rational,
        gauge,
        ode: Ode3::new(RatFn::zero(), RatFn::zero(), RatFn::zero()),
    };
    let g = case.chain().composed();
    let u = seed(&case.family)
        .expect("rational parameters")
        .substitute(&g);
    // y = exp(∫w) u
    case.ode = u.gauge(&-&case.gauge);
    case
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzResult {
    pub index: u64,
    pub case: FuzzCase,
    pub outcome: &'static str,
    /// Found family equals the planted one up to parameter symmetry.
    pub family_recovered: bool,
    pub exact_ok: bool,
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

pub fn run_case(index: u64, case: FuzzCase, solve_opts: &SolveOptions) -> FuzzResult {
    let out = solve(&case.ode, solve_opts, &mut Trace::new());
    let (outcome, family_recovered, exact_ok, detail, report) = match out {
        SolveOutcome::Solved(s) => (
            "solved",
            s.family.canonical() == case.family.canonical(),
            s.report.exact_ok,
            None,
            Some(s.report),
        ),
        SolveOutcome::NotEquivalent { stage, reason } => (
            "not_equivalent",
            false,
            false,
            Some(format!("{stage}: {reason}")),
            None,
        ),
        SolveOutcome::Unsupported { reason } => ("unsupported", false, false, Some(reason), None),
    };
    FuzzResult {
        index,
        case,
        outcome,
        family_recovered,
        exact_ok,
        detail,
        report,
    }
}

/// Case `i` uses rng seed `seed + i`. Results come back in index order
/// whatever the thread count.
pub fn run_fuzz(
    cases: u64,
    seed: u64,
    opts: &FuzzOptions,
    solve_opts: &SolveOptions,
    threads: usize,
) -> Vec<FuzzResult> {
    let threads = threads.clamp(1, cases.max(1) as usize);
    let mut results: Vec<FuzzResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                scope.spawn(move || {
                    (t as u64..cases)
                        .step_by(threads)
                        .map(|i| run_case(i, fuzz_generate(seed.wrapping_add(i), opts), solve_opts))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fuzz worker panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.index);
    results
}
