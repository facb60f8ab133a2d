//! Named batches of checks and the run report the CLI and the C interface emit.

use std::time::Instant;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::{filtered_dimension, graded_dimension, EngineConfig, IdealSpec};
use crate::poisson::{
    invariant_part, reps_coefficient, verify_bracket_consistency, verify_poisson_table, ClassicalTensors,
};
use crate::presentations::{
    classical_orbit_dims, classical_presentation, frt_presentation, orbit_dims_through, re_presentation,
    trp_ordinary_trace_control, two_param_presentation, verify_bruteforce_classification, verify_character,
    verify_fiber_map, verify_gl2_example, verify_lemma_alg, verify_lemma_trp, verify_orbit_character,
    verify_substitution, OrbitKind, OrbitQuotientSpec, MAX_N,
};
use crate::qtensor::{build_r, build_s, build_solution, canonical_sweep, check_braid, check_hecke, check_numerical_re, check_yang_baxter, re_defect, FamilyParams, Mat};
use crate::report::{CheckRecord, Verdict};
use crate::scalars::{Scalar, A, B, T};

/// Largest degree bound accepted without `force`.
pub const MAX_DEGREE: usize = 12;
/// Largest matrix size for ideal computations accepted without `force`.
pub const MAX_IDEAL_N: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    Tensor,
    Flatness,
    Orbits,
    Fiber,
    ClassicalLimit,
    Poisson,
    Gl2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyTarget {
    Hecke,
    YangBaxter,
    ReSolutions,
    Trp,
    AlgLemma,
    Fiber,
    Substitution,
    Gl2,
}

/// Algebras whose dimensions `dims` compares with a commutative or classical count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DimsAlgebra {
    Re,
    Frt,
    TwoParam,
    Classical,
    Symmetric,
    Nilpotent,
    Bisymmetric,
    TwoParameterOrbit,
    Kks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Suite(Suite),
    Verify(VerifyTarget),
    Dims(DimsAlgebra),
    Poisson,
    /// Recorded in reports of [`check_matrix`]; names the matrix file.
    CheckMatrix(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub task: Task,
    /// Matrix sizes; each task has its own default.
    #[serde(default)]
    pub n: Option<Vec<usize>>,
    #[serde(default)]
    pub max_degree: Option<usize>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub force: bool,
    #[serde(default)]
    pub timings: bool,
}

fn default_seed() -> u64 {
    1
}

impl RunConfig {
    pub fn new(task: Task) -> Self {
        RunConfig { task, n: None, max_degree: None, seed: default_seed(), exact: false, force: false, timings: false }
    }

    fn engine(&self) -> EngineConfig {
        let mut cfg = if self.exact { EngineConfig::exact() } else { EngineConfig::default() };
        cfg.seed = self.seed;
        if self.force {
            cfg.word_cap = u128::MAX;
        }
        cfg
    }

    fn sizes(&self, default: &[usize]) -> Vec<usize> {
        self.n.clone().unwrap_or_else(|| default.to_vec())
    }

    fn degree(&self, default: usize) -> usize {
        self.max_degree.unwrap_or(default)
    }

    /// Rejects sizes and bounds outside the caps.
    pub fn validate(&self) -> Result<()> {
        if let Some(ns) = &self.n {
            if ns.is_empty() {
                return Err(Error::InvalidParameters("--n selects no sizes".into()));
            }
            if let Some(&bad) = ns.iter().find(|&&n| n == 0 || n > MAX_N) {
                return Err(Error::InvalidParameters(format!("n = {bad} is outside 1..={MAX_N}")));
            }
            let ideal_task = !matches!(
                &self.task,
                Task::Verify(VerifyTarget::Hecke | VerifyTarget::YangBaxter | VerifyTarget::ReSolutions) | Task::Poisson
            );
            if ideal_task && !self.force && ns.iter().any(|&n| n > MAX_IDEAL_N) {
                return Err(Error::InvalidParameters(format!("ideal computations above n = {MAX_IDEAL_N} need --force")));
            }
        }
        if let Some(d) = self.max_degree {
            if d > MAX_DEGREE && !self.force {
                return Err(Error::InvalidParameters(format!("--max-degree above {MAX_DEGREE} needs --force")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub version: String,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(config: RunConfig, checks: Vec<CheckRecord>) -> Self {
        let count = |v: Verdict| checks.iter().filter(|c| c.result == v).count();
        let summary = Summary { passed: count(Verdict::Pass), failed: count(Verdict::Fail), skipped: count(Verdict::Skipped) };
        RunReport { version: env!("CARGO_PKG_VERSION").into(), config, checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects records, turning verifier errors other than cap violations into failed records.
struct Runner<'a> {
    config: &'a RunConfig,
    records: Vec<CheckRecord>,
}

impl Runner<'_> {
    fn run(&mut self, name: &str, params: Value, f: impl FnOnce() -> Result<CheckRecord>) -> Result<()> {
        let start = Instant::now();
        let mut rec = match f() {
            Ok(r) => r,
            Err(e @ Error::TooLarge { .. }) => return Err(e),
            Err(e) => CheckRecord::from_bool(name, params, None, false, vec![format!("error: {e}")]),
        };
        if self.config.timings {
            rec.wall_ms = Some(start.elapsed().as_millis() as u64);
        }
        self.records.push(rec);
        Ok(())
    }
}

fn lambda() -> Scalar {
    Scalar::sym(A) * Scalar::sym(A)
}

fn mu() -> Scalar {
    Scalar::sym(B) * Scalar::sym(B)
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `x² - (λ+μ)x` with `λ = a²`, `μ = b²`.
fn fiber_poly() -> Vec<Scalar> {
    vec![Scalar::zero(), -(lambda() + mu()), Scalar::one()]
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    let mut r = Runner { config, records: Vec::new() };
    match &config.task {
        &Task::Suite(s) => run_suite_into(s, &mut r)?,
        &Task::Verify(t) => run_verify(t, &mut r)?,
        &Task::Dims(a) => {
            let d = config.max_degree;
            for n in config.sizes(&default_dims_sizes(a)) {
                run_dims(a, n, d.unwrap_or_else(|| default_dims_degree(a, n)), &mut r)?;
            }
        }
        Task::Poisson => run_poisson(&mut r)?,
        Task::CheckMatrix(_) => {
            return Err(Error::InvalidParameters("matrix checks run through check_matrix".into()));
        }
    }
    Ok(RunReport::new(config.clone(), r.records))
}

fn run_suite_into(s: Suite, r: &mut Runner) -> Result<()> {
    use VerifyTarget as V;
    match s {
        Suite::All => {
            for s in [Suite::Tensor, Suite::Flatness, Suite::Orbits, Suite::Fiber, Suite::ClassicalLimit, Suite::Poisson, Suite::Gl2] {
                run_suite_into(s, r)?;
            }
        }
        Suite::Tensor => {
            for t in [V::Hecke, V::YangBaxter, V::ReSolutions] {
                run_verify(t, r)?;
            }
            let seed = r.config.seed;
            r.run("bruteforce-classification", json!({"n": 2}), || verify_bruteforce_classification(3, seed))?;
        }
        Suite::Flatness => {
            for (n, d) in [(2, 4), (3, 3)] {
                run_dims(DimsAlgebra::Re, n, d, r)?;
                run_dims(DimsAlgebra::Frt, n, d, r)?;
            }
            run_dims(DimsAlgebra::TwoParam, 2, 4, r)?;
            run_dims(DimsAlgebra::Classical, 2, 4, r)?;
            let cfg = r.config.engine();
            r.run("two-param-t0-dims", json!({"n": 2}), || two_param_t0_dims(2, 4, &cfg))?;
        }
        Suite::Orbits => {
            run_orbit_characters(r)?;
            run_dims(DimsAlgebra::Symmetric, 2, 4, r)?;
            run_dims(DimsAlgebra::Nilpotent, 2, 4, r)?;
            run_dims(DimsAlgebra::Bisymmetric, 3, 3, r)?;
            run_dims(DimsAlgebra::TwoParameterOrbit, 2, 4, r)?;
            run_dims(DimsAlgebra::Kks, 2, 4, r)?;
            run_verify(V::Trp, r)?;
        }
        Suite::Fiber => {
            run_verify(V::AlgLemma, r)?;
            run_verify(V::Fiber, r)?;
        }
        Suite::ClassicalLimit => run_verify(V::Substitution, r)?,
        Suite::Poisson => run_poisson(r)?,
        Suite::Gl2 => run_verify(V::Gl2, r)?,
    }
    Ok(())
}

fn run_verify(t: VerifyTarget, r: &mut Runner) -> Result<()> {
    let cfg = r.config.engine();
    match t {
        VerifyTarget::Hecke => {
            for n in r.config.sizes(&[2, 3, 4]) {
                r.run("hecke", json!({"n": n}), || {
                    let ok = check_hecke(&build_s(n));
                    Ok(CheckRecord::from_bool("hecke", json!({"n": n}), None, ok, vec![]))
                })?;
            }
        }
        VerifyTarget::YangBaxter => {
            for n in r.config.sizes(&[2, 3]) {
                r.run("yang-baxter", json!({"n": n}), || {
                    let mut w = Vec::new();
                    if !check_yang_baxter(&build_r(n)) {
                        w.push("R12 R13 R23 differs from R23 R13 R12".into());
                    }
                    if !check_braid(&build_s(n)) {
                        w.push("S1 S2 S1 differs from S2 S1 S2".into());
                    }
                    Ok(CheckRecord::new("yang-baxter", json!({"n": n}), None, w))
                })?;
            }
        }
        VerifyTarget::ReSolutions => {
            let top = r.config.sizes(&[4]).into_iter().max().unwrap_or(4);
            for n in 1..=top {
                for params in canonical_sweep(n) {
                    let p = family_json(n, &params);
                    r.run("re-solution", p.clone(), || match build_solution(params, n) {
                        Ok(_) => Ok(CheckRecord::new("re-solution", p.clone(), None, vec![])),
                        Err(e) => Ok(CheckRecord::new("re-solution", p.clone(), None, vec![e.to_string()])),
                    })?;
                }
            }
        }
        VerifyTarget::Trp => {
            let d = r.config.degree(5);
            for n in r.config.sizes(&[2]) {
                let polys = [
                    vec![Scalar::zero(), Scalar::one()],
                    vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
                    fiber_poly(),
                ];
                for p in polys {
                    r.run("lemma-trp", json!({"n": n}), || verify_lemma_trp(n, &p, d, &cfg))?;
                }
                r.run("lemma-trp-control", json!({"n": n}), || trp_ordinary_trace_control(n, d, &cfg))?;
            }
        }
        VerifyTarget::AlgLemma => {
            let d = r.config.degree(12);
            let beta = Scalar::q() - Scalar::q_pow(-1);
            let identity = vec![Scalar::zero(), Scalar::one()];
            let cube = vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()];
            let lm = lambda() * mu();
            r.run("lemma-alg", json!({}), || verify_lemma_alg(&fiber_poly(), &-lm, &beta, 4, d, &cfg))?;
            r.run("lemma-alg", json!({}), || verify_lemma_alg(&identity, &Scalar::sym(T), &beta, 4, d, &cfg))?;
            r.run("lemma-alg", json!({}), || verify_lemma_alg(&cube, &Scalar::sym(T), &Scalar::zero(), 3, d, &cfg))?;
        }
        VerifyTarget::Fiber => {
            let d = r.config.degree(5);
            r.run("fiber-map", json!({"l": 1, "m": 1, "k": 1}), || verify_fiber_map(1, 1, 1, d, &cfg))?;
        }
        VerifyTarget::Substitution => {
            for n in r.config.sizes(&[2, 3]) {
                r.run("substitution", json!({"n": n}), || verify_substitution(n))?;
            }
        }
        VerifyTarget::Gl2 => {
            let d = r.config.degree(4);
            r.run("gl2-example", json!({}), || verify_gl2_example(d, &cfg))?;
        }
    }
    Ok(())
}

fn family_json(n: usize, p: &FamilyParams) -> Value {
    match p {
        FamilyParams::A { l, m, sqrt_lambda, sqrt_mu } => {
            json!({"n": n, "family": "A", "l": l, "m": m, "sqrt_lambda": sqrt_lambda.to_string(), "sqrt_mu": sqrt_mu.to_string()})
        }
        FamilyParams::B { pair, l, lambda } => {
            json!({"n": n, "family": "B", "y": pair.y, "sigma": pair.sigma, "l": l, "lambda": lambda.to_string()})
        }
    }
}

fn default_dims_sizes(a: DimsAlgebra) -> Vec<usize> {
    match a {
        DimsAlgebra::Bisymmetric => vec![3],
        _ => vec![2],
    }
}

fn default_dims_degree(a: DimsAlgebra, n: usize) -> usize {
    match (a, n) {
        (DimsAlgebra::Bisymmetric, _) | (_, 3) => 3,
        _ => 4,
    }
}

/// The symmetric-type orbit quotient for `n`, its classical counterpart and the orbit matrix.
fn orbit_setup(a: DimsAlgebra, n: usize) -> Result<(OrbitQuotientSpec, Vec<Vec<BigRational>>)> {
    let (big, small) = (n - n / 2, n / 2);
    let diag = |vals: Vec<BigRational>| -> Vec<Vec<BigRational>> {
        let k = vals.len();
        (0..k).map(|i| (0..k).map(|j| if i == j { vals[i].clone() } else { int(0) }).collect()).collect()
    };
    let rep = |l: usize, m: usize| -> Vec<BigRational> {
        std::iter::repeat_n(int(4), l).chain(std::iter::repeat_n(int(1), m)).chain(std::iter::repeat_n(int(0), n - l - m)).collect()
    };
    Ok(match a {
        DimsAlgebra::Symmetric => {
            if small == 0 {
                return Err(Error::InvalidParameters("the symmetric orbit needs n ≥ 2".into()));
            }
            (OrbitQuotientSpec::new(OrbitKind::Symmetric { l: big, m: small, lambda: lambda(), mu: mu() })?, diag(rep(big, small)))
        }
        DimsAlgebra::TwoParameterOrbit | DimsAlgebra::Kks => {
            if small == 0 {
                return Err(Error::InvalidParameters("the two-eigenvalue orbit needs n ≥ 2".into()));
            }
            let kind = if a == DimsAlgebra::Kks {
                OrbitKind::Kks { n1: big, n2: small, mu1: lambda(), mu2: mu() }
            } else {
                OrbitKind::TwoParameter { n1: big, n2: small, mu1: lambda(), mu2: mu() }
            };
            (OrbitQuotientSpec::new(kind)?, diag(rep(big, small)))
        }
        DimsAlgebra::Bisymmetric => {
            if n < 3 {
                return Err(Error::InvalidParameters("the bisymmetric orbit needs n ≥ 3".into()));
            }
            let spec = OrbitQuotientSpec::new(OrbitKind::Bisymmetric { l: 1, m: 1, k: n - 2, lambda: lambda(), mu: mu() })?;
            (spec, diag(rep(1, 1)))
        }
        DimsAlgebra::Nilpotent => {
            let spec = OrbitQuotientSpec::new(OrbitKind::Nilpotent { n })?;
            let ch = spec.designated_character().ok_or_else(|| Error::InvalidParameters("no nilpotent character".into()))?;
            let m = ch
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|x| x.as_rational().expect("integer character")).collect())
                .collect();
            (spec, m)
        }
        _ => unreachable!("not an orbit algebra"),
    })
}

fn dims_records(algebra: DimsAlgebra, n: usize, graded: bool, got: &[u64], target: &[u64]) -> Vec<CheckRecord> {
    got.iter()
        .zip(target)
        .enumerate()
        .map(|(k, (g, t))| {
            let p = json!({"algebra": algebra, "n": n, "degree": k, "graded": graded, "dim": g, "classical": t, "match": g == t});
            let w = if g == t { vec![] } else { vec![format!("degree {k}: {g} against {t}")] };
            CheckRecord::new("dims", p, Some(k), w)
        })
        .collect()
}

fn run_dims(a: DimsAlgebra, n: usize, d: usize, r: &mut Runner) -> Result<()> {
    let cfg = r.config.engine();
    let seed = r.config.seed;
    let start = Instant::now();
    let commutative: Vec<u64> = (0..=d as u64).map(|k| binom((n * n) as u64 + k - 1, k)).collect();
    let cumulative: Vec<u64> = commutative.iter().scan(0, |s, x| { *s += x; Some(*s) }).collect();
    let result: Result<Vec<CheckRecord>> = (|| match a {
        DimsAlgebra::Re | DimsAlgebra::Frt => {
            let p = if a == DimsAlgebra::Re { re_presentation(n)? } else { frt_presentation(n)? };
            Ok(dims_records(a, n, true, &graded_dimension(&p.ideal()?, d, &cfg)?, &commutative))
        }
        DimsAlgebra::TwoParam | DimsAlgebra::Classical => {
            let p = if a == DimsAlgebra::TwoParam { two_param_presentation(n)? } else { classical_presentation(n)? };
            Ok(dims_records(a, n, false, &filtered_dimension(&p.ideal()?, d, &cfg)?, &cumulative))
        }
        _ => {
            let (spec, point) = orbit_setup(a, n)?;
            let got = filtered_dimension(&spec.ideal()?, d, &cfg)?;
            let target: Vec<u64> = orbit_dims_through(&point, d, seed)?.into_iter().map(|x| x as u64).collect();
            Ok(dims_records(a, n, false, &got, &target))
        }
    })();
    match result {
        Ok(mut recs) => {
            if r.config.timings {
                let ms = start.elapsed().as_millis() as u64;
                recs.iter_mut().for_each(|x| x.wall_ms = Some(ms));
            }
            r.records.extend(recs);
            Ok(())
        }
        Err(e @ Error::TooLarge { .. }) => Err(e),
        Err(e) => {
            r.records.push(CheckRecord::from_bool("dims", json!({"algebra": a, "n": n}), Some(d), false, vec![format!("error: {e}")]));
            Ok(())
        }
    }
}

/// The two-parameter algebra at `t = 0` has the dimensions of the RE algebra.
fn two_param_t0_dims(n: usize, d: usize, cfg: &EngineConfig) -> Result<CheckRecord> {
    let tp = two_param_presentation(n)?;
    let zero = Scalar::zero();
    let rels = tp
        .relations()
        .iter()
        .map(|x| x.map_coeffs(|c| c.substitute(T, &zero)))
        .collect::<Result<Vec<_>>>()?;
    let at_zero = IdealSpec::new(tp.alphabet(), rels)?;
    let left = graded_dimension(&at_zero, d, cfg)?;
    let right = graded_dimension(&re_presentation(n)?.ideal()?, d, cfg)?;
    let w = if left == right { vec![] } else { vec![format!("{left:?} against {right:?}")] };
    Ok(CheckRecord::new("two-param-t0-dims", json!({"n": n, "two_param": left, "re": right}), Some(d), w))
}

fn run_orbit_characters(r: &mut Runner) -> Result<()> {
    let specs = [
        OrbitKind::Symmetric { l: 1, m: 1, lambda: lambda(), mu: mu() },
        OrbitKind::Symmetric { l: 2, m: 1, lambda: lambda(), mu: mu() },
        OrbitKind::Nilpotent { n: 2 },
        OrbitKind::Nilpotent { n: 3 },
        OrbitKind::Bisymmetric { l: 1, m: 1, k: 1, lambda: lambda(), mu: mu() },
    ];
    for kind in specs {
        let spec = OrbitQuotientSpec::new(kind)?;
        let p = spec.params_json();
        r.run("orbit-character", p.clone(), || {
            let a = spec.designated_character().ok_or_else(|| Error::InvalidParameters("no designated character".into()))?;
            let ok = verify_character(spec.base(), &a)? && verify_orbit_character(&spec, &a)?;
            Ok(CheckRecord::from_bool("orbit-character", p.clone(), None, ok, vec![]))
        })?;
    }
    // a perturbed trace value must be rejected
    let spec = OrbitQuotientSpec::new(OrbitKind::Symmetric { l: 1, m: 1, lambda: lambda(), mu: &mu() + &Scalar::one() })?;
    let a = crate::qtensor::family_a_matrix(2, 1, 1, &Scalar::sym(A), &Scalar::sym(B))?;
    r.run("orbit-character-control", json!({"kind": "symmetric", "perturbed": "mu + 1"}), || {
        let rejected = !verify_orbit_character(&spec, &a)?;
        Ok(CheckRecord::from_bool("orbit-character-control", json!({"kind": "symmetric", "perturbed": "mu + 1"}), None, rejected, vec![]))
    })
}

fn run_poisson(r: &mut Runner) -> Result<()> {
    let seed = r.config.seed;
    for n in r.config.sizes(&[2, 3]) {
        r.run("poisson-table", json!({"n": n}), || verify_poisson_table(n))?;
        r.run("bracket-consistency", json!({"n": n}), || verify_bracket_consistency(n, 10, seed))?;
        r.run("classical-tensors", json!({"n": n}), || {
            let t = ClassicalTensors::new(n);
            let mut w = Vec::new();
            if !t.r_is_antisymmetric() {
                w.push("r is not antisymmetric".into());
            }
            if !t.omega_is_symmetric() || !t.omega_is_flip() {
                w.push("omega is not the flip".into());
            }
            if ClassicalTensors::first_order_of_s(n)? != t.r.add(&t.omega)? {
                w.push("the first-order term of S is not r + omega".into());
            }
            Ok(CheckRecord::new("classical-tensors", json!({"n": n}), None, w))
        })?;
    }
    r.run("reps-coefficient", json!({}), || {
        let mut w = Vec::new();
        let rat = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        if reps_coefficient(&int(2), &int(1))? != int(3) {
            w.push("c(2,1) is not 3".into());
        }
        if reps_coefficient(&int(5), &int(-5))? != int(0) || reps_coefficient(&int(7), &int(0))? != int(1) {
            w.push("c(l,-l) or c(l,0) is off".into());
        }
        for (li, lj) in [(int(2), int(1)), (int(5), rat(-1, 3)), (rat(7, 2), int(4))] {
            let base = reps_coefficient(&li, &lj)?;
            if base != (&li + &lj) / (&li - &lj) {
                w.push(format!("c({li},{lj}) differs from (li+lj)/(li-lj)"));
            }
            for nu in [int(2), int(-3), rat(1, 5)] {
                if reps_coefficient(&(&nu * &li), &(&nu * &lj))? != base {
                    w.push(format!("c is not dilation invariant at ({li},{lj}), nu = {nu}"));
                }
            }
        }
        Ok(CheckRecord::new("reps-coefficient", json!({}), None, w))
    })?;
    r.run("invariant-part", json!({}), || {
        let a = Mat::diagonal(&[Scalar::from_int(2), Scalar::one()]);
        let v = invariant_part(&a, &Mat::unit(2, 2, 1), &Mat::unit(2, 1, 2))?;
        let w = if v == int(-3) { vec![] } else { vec![format!("Tr(A^2[e21,e12]) = {v}, expected -3")] };
        Ok(CheckRecord::new("invariant-part", json!({"a": "diag(2,1)"}), None, w))
    })
}

/// Which relations a matrix is checked against by [`check_matrix`].
#[derive(Clone, Debug)]
pub enum MatrixTarget {
    Re,
    Orbit(OrbitQuotientSpec),
}

/// Checks a scalar matrix against the RE or an orbit quotient; failures list the RE defect
/// components or the violated relations.
pub fn check_matrix(a: &Mat, target: &MatrixTarget) -> Result<CheckRecord> {
    let n = a.dim();
    match target {
        MatrixTarget::Re => {
            if n == 0 || n > MAX_N {
                return Err(Error::InvalidParameters(format!("matrix size {n} is outside 1..={MAX_N}")));
            }
            let s = build_s(n);
            let ok = check_numerical_re(a, &s);
            let defect = re_defect(a, &s);
            let w: Vec<String> = if ok {
                vec![]
            } else {
                defect
                    .entries()
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| format!("component ({}, {}): {x}", i / (n * n), i % (n * n)))
                    .collect()
            };
            Ok(CheckRecord::new("check-matrix", json!({"against": "re", "n": n}), None, w))
        }
        MatrixTarget::Orbit(spec) => {
            if spec.n() != n {
                return Err(Error::ShapeMismatch(format!("matrix is {n}x{n} but the orbit has size {}", spec.n())));
            }
            let mut w = crate::presentations::character_failures(spec.base(), spec.base().relations(), a)?;
            w.extend(crate::presentations::character_failures(spec.base(), spec.orbit_relations(), a)?);
            Ok(CheckRecord::new("check-matrix", json!({"against": spec.params_json()}), None, w))
        }
    }
}

/// Classical orbit dimensions as a record, for callers that want the oracle alone.
pub fn classical_dims_record(multiplicities: &[usize], eigenvalues: &[BigRational], d: usize, seed: u64) -> Result<CheckRecord> {
    let dims = classical_orbit_dims(multiplicities, eigenvalues, d, seed)?;
    let ev: Vec<String> = eigenvalues.iter().map(|x| x.to_string()).collect();
    Ok(CheckRecord::new("classical-orbit-dims", json!({"multiplicities": multiplicities, "eigenvalues": ev, "dims": dims}), Some(d), vec![]))
}
