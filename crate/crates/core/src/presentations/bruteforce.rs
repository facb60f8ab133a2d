//! Exhaustive solution of the 2×2 numerical reflection equation at rational values of `q`.
//!
//! The sixteen components of `S A₂ S A₂ - A₂ S A₂ S` are quadrics in the four entries of `A`.
//! The solution variety is split along the coordinate hyperplanes and the diagonal `x11 = x22`
//! by saturation, redundant pieces are dropped, and each remaining piece is matched against
//! diagonal-gauge transforms of canonical solutions.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::cpoly::{groebner, in_radical, is_unit_ideal, reduce, saturate, CPoly, MonomialOrder};
use crate::error::Result;
use crate::qtensor::{build_s, enumerate_admissible_pairs, family_a_matrix, family_b_matrix, Mat};
use crate::report::CheckRecord;
use crate::scalars::{Scalar, Specialization, Q};

const N: usize = 2;
const VARS: usize = N * N;

fn var_names() -> Vec<String> {
    (1..=N).flat_map(|r| (1..=N).map(move |c| format!("x{r}{c}"))).collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The components of the numerical RE as polynomials in the entries of `A`, row-major.
pub fn re_system(q: &BigRational) -> Result<Vec<CPoly>> {
    let sp = Specialization::new().with(Q, q.clone())?;
    let s = build_s(N);
    let nn = N * N;
    let sm: Vec<Vec<CPoly>> = (0..nn)
        .map(|r| (0..nn).map(|c| s.mat().get(r, c).specialize(&sp).map(|v| CPoly::constant(VARS, v))).collect())
        .collect::<Result<_>>()?;
    let a2: Vec<Vec<CPoly>> = (0..nn)
        .map(|r| {
            (0..nn)
                .map(|c| if r / N == c / N { CPoly::var(VARS, (r % N) * N + c % N) } else { CPoly::zero(VARS) })
                .collect()
        })
        .collect();
    let mul = |x: &[Vec<CPoly>], y: &[Vec<CPoly>]| -> Vec<Vec<CPoly>> {
        (0..nn)
            .map(|i| (0..nn).map(|j| (0..nn).fold(CPoly::zero(VARS), |acc, k| acc.add(&x[i][k].mul(&y[k][j])))).collect())
            .collect()
    };
    let lhs = mul(&mul(&mul(&sm, &a2), &sm), &a2);
    let rhs = mul(&mul(&mul(&a2, &sm), &a2), &sm);
    Ok(lhs.iter().flatten().zip(rhs.iter().flatten()).map(|(l, r)| l.sub(r)).filter(|p| !p.is_zero()).collect())
}

fn same_ideal(a: &[CPoly], b: &[CPoly]) -> bool {
    let o = MonomialOrder::Grevlex;
    a.iter().all(|f| reduce(f, b, o).is_zero()) && b.iter().all(|f| reduce(f, a, o).is_zero())
}

fn splitters() -> Vec<CPoly> {
    let mut out: Vec<CPoly> = (0..VARS).map(|i| CPoly::var(VARS, i)).collect();
    out.push(CPoly::var(VARS, 0).sub(&CPoly::var(VARS, VARS - 1)));
    out
}

fn split(gens: &[CPoly], out: &mut Vec<Vec<CPoly>>) {
    let o = MonomialOrder::Grevlex;
    let gb = groebner(gens, o);
    if is_unit_ideal(&gb) {
        return;
    }
    for v in splitters() {
        if reduce(&v, &gb, o).is_zero() {
            continue;
        }
        let sat = saturate(&gb, &v);
        if !same_ideal(&sat, &gb) {
            let mut with_v = gb.clone();
            with_v.push(v);
            split(&with_v, out);
            split(&sat, out);
            return;
        }
    }
    out.push(gb);
}

/// Whether the zero set of `a` lies inside that of `b`.
fn variety_within(a: &[CPoly], b: &[CPoly]) -> bool {
    b.iter().all(|f| in_radical(f, a))
}

/// Gröbner bases of the irredundant pieces of the solution variety.
pub fn solution_components(q: &BigRational) -> Result<Vec<Vec<CPoly>>> {
    let mut pieces = Vec::new();
    split(&re_system(q)?, &mut pieces);
    let mut keep = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let redundant = pieces.iter().enumerate().any(|(j, other)| {
            j != i && variety_within(p, other) && (!variety_within(other, p) || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    Ok(keep)
}

/// A canonical solution with rational parameters, conjugated by `diag(1, g)`.
#[derive(Clone, Debug, Serialize)]
pub struct GaugedMember {
    pub family: String,
    pub gauge: String,
    pub matrix: Vec<Vec<String>>,
}

fn canonical_members() -> Result<Vec<(String, Mat)>> {
    let grid = [rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2), rat(-1, 1)];
    let mut out = Vec::new();
    for l in 0..=N {
        for m in 0..=l.min(N - l) {
            for a in &grid {
                for b in &grid {
                    let mat = family_a_matrix(N, l, m, &Scalar::from_rational(a.clone()), &Scalar::from_rational(b.clone()))?;
                    out.push((format!("A(l={l}, m={m}; a={a}, b={b})"), mat));
                }
            }
        }
    }
    for pair in enumerate_admissible_pairs(N).into_iter().filter(|p| p.is_type_b()) {
        for l in pair.l_range() {
            for lambda in grid.iter().chain([&BigRational::zero()]) {
                let mat = family_b_matrix(&pair, l, &Scalar::from_rational(lambda.clone()))?;
                out.push((format!("B(Y={:?}, sigma={:?}, l={l}; lambda={lambda})", pair.y, pair.sigma), mat));
            }
        }
    }
    Ok(out)
}

fn as_point(m: &Mat) -> Vec<BigRational> {
    m.entries().iter().map(|x| x.as_rational().expect("rational entries")).collect()
}

fn vanishes(ideal: &[CPoly], p: &[BigRational]) -> bool {
    ideal.iter().all(|f| f.eval(p).is_zero())
}

/// A nonzero gauge transform of a canonical solution lying in `components[target]` and in no
/// other piece, so that it certifies that piece rather than an intersection.
fn find_member(components: &[Vec<CPoly>], target: usize, members: &[(String, Mat)]) -> Option<GaugedMember> {
    let gauges = [rat(1, 1), rat(2, 1), rat(3, 1), rat(-1, 1), rat(1, 2), rat(1, 3), rat(-2, 1)];
    for (name, m) in members {
        let a = as_point(m);
        if a.iter().all(|x| x.is_zero()) {
            continue;
        }
        for g in &gauges {
            // diag(1,g)·A·diag(1,g)⁻¹ scales x12 by 1/g and x21 by g
            let p = vec![a[0].clone(), &a[1] / g, &a[2] * g, a[3].clone()];
            let inside = vanishes(&components[target], &p);
            let elsewhere = components.iter().enumerate().any(|(j, c)| j != target && vanishes(c, &p));
            if inside && !elsewhere {
                return Some(GaugedMember {
                    family: name.clone(),
                    gauge: format!("diag(1, {g})"),
                    matrix: vec![vec![p[0].to_string(), p[1].to_string()], vec![p[2].to_string(), p[3].to_string()]],
                });
            }
        }
    }
    None
}

/// Seeded random rational values of `q` away from `0, ±1`.
pub fn sample_q_values(count: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<BigRational> = Vec::new();
    while out.len() < count {
        let q = rat(rng.gen_range(2..=40), rng.gen_range(1..=9));
        if q.is_one() || out.contains(&q) {
            continue;
        }
        out.push(q);
    }
    out
}

/// Runs the classification at `count` seeded values of `q`.
pub fn verify_bruteforce_classification(count: usize, seed: u64) -> Result<CheckRecord> {
    let names = var_names();
    let members = canonical_members()?;
    let mut witnesses = Vec::new();
    let mut per_q = Vec::new();
    let mut shapes: Vec<usize> = Vec::new();
    for q in sample_q_values(count, seed) {
        let comps = solution_components(&q)?;
        shapes.push(comps.len());
        let mut rendered = Vec::new();
        for (i, c) in comps.iter().enumerate() {
            let basis: Vec<String> = c.iter().map(|f| f.render(&names)).collect();
            let hit = find_member(&comps, i, &members);
            if hit.is_none() {
                witnesses.push(format!("q={q}: component {{{}}} contains no gauged canonical solution", basis.join(", ")));
            }
            rendered.push(json!({"basis": basis, "member": hit}));
        }
        per_q.push(json!({"q": q.to_string(), "components": rendered}));
    }
    if shapes.windows(2).any(|w| w[0] != w[1]) {
        witnesses.push(format!("the number of components depends on q: {shapes:?}"));
    }
    Ok(CheckRecord::new("bruteforce-classification", json!({"n": N, "seed": seed, "samples": per_q}), None, witnesses))
}
