//! Verifiers for the identities of the orbit constructions, each returning a [`CheckRecord`].

use std::sync::Arc;

use serde_json::json;

use super::builders::{
    classical_presentation, classical_relation, est_presentation, mixed_tl_presentation, re_matrix,
    re_presentation, two_param_presentation, Presentation,
};
use super::orbits::{OrbitKind, OrbitQuotientSpec};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Engine, EngineConfig, FMat, FreeElement, IdealSpec};
use crate::qtensor::{build_d, build_s, check_numerical_re, family_a_matrix, quantum_trace, Mat};
use crate::report::CheckRecord;
use crate::scalars::{param, quantum_integer, Scalar, Specialization, A, B, Q, T};

/// `Σ c_k M^k` with `coeffs[k] = c_k`.
pub fn poly_of_matrix(coeffs: &[Scalar], m: &FMat) -> FMat {
    let mut acc = FMat::zero(m.alphabet(), m.dim());
    let mut power = FMat::identity(m.alphabet(), m.dim());
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = power.mul(m).expect("square");
        }
        if !c.is_zero() {
            acc = acc.add(&power.scale(c)).expect("same shape");
        }
    }
    acc
}

/// `Σ c_k x^k` for a free-algebra element `x`.
pub fn poly_of_element(coeffs: &[Scalar], x: &FreeElement) -> FreeElement {
    let mut acc = FreeElement::zero(x.alphabet());
    let mut power = FreeElement::one(x.alphabet());
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = &power * x;
        }
        acc = &acc + &power.scale(c);
    }
    acc
}

fn poly_of_const_matrix(coeffs: &[Scalar], m: &Mat) -> Mat {
    let mut acc = Mat::zero(m.dim());
    let mut power = Mat::identity(m.dim());
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = power.mul(m).expect("square");
        }
        acc = acc.add(&power.scale(c)).expect("same shape");
    }
    acc
}

fn degree_of(coeffs: &[Scalar]) -> usize {
    coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn render_poly(coeffs: &[Scalar]) -> String {
    let al = Alphabet::new(["x"]).expect("valid name");
    poly_of_element(coeffs, &FreeElement::generator(&al, 0)).to_string()
}

fn q_weights(n: usize) -> Vec<Scalar> {
    let d = build_d(n);
    (0..n).map(|i| d.get(i, i).clone()).collect()
}

/// Runs a batch of membership queries and names the ones that fail.
fn failing(engine: &Engine, labelled: &[(String, FreeElement)], d: usize) -> Result<Vec<String>> {
    let targets: Vec<FreeElement> = labelled.iter().map(|(_, x)| x.clone()).collect();
    let res = engine.contains_all(&targets, d)?;
    Ok(labelled
        .iter()
        .zip(res)
        .filter(|(_, ok)| !ok)
        .map(|((name, x), _)| format!("{name}: {x} is not in the ideal"))
        .collect())
}

fn entries_labelled(prefix: &str, m: &FMat) -> Vec<(String, FreeElement)> {
    m.nonzero_entries()
        .into_iter()
        .map(|(r, c, x)| (format!("{prefix}[{},{}]", r + 1, c + 1), x.clone()))
        .collect()
}

/// Quantum-trace invariance and polynomial covariance under conjugation by `T` with inverse `Tb`
/// in the mixed algebra. Cancelling `Tb` against `T` passes through words two letters longer than
/// the trace differences, so those are checked at `max(d, deg + 2)`; the polynomial identity is
/// checked at `max(d, 3·deg P)`, the degree of `P(Tb·L·T)`.
pub fn verify_lemma_trp(n: usize, poly: &[Scalar], d: usize, cfg: &EngineConfig) -> Result<CheckRecord> {
    if d < 4 {
        return Err(Error::BoundTooSmall { needed: 4, bound: d });
    }
    let p = mixed_tl_presentation(n)?;
    let ideal = p.ideal()?;
    let engine = Engine::new(&ideal, cfg);
    let (t, tb, l) = (p.matrix("T")?, p.matrix("Tb")?, p.matrix("L")?);
    let w = q_weights(n);
    let conj = tb.mul(&l)?.mul(&t)?;
    let deg = degree_of(poly);
    let mut witnesses = Vec::new();
    let tr = &conj.weighted_trace(&w) - &l.weighted_trace(&w);
    let tr_bound = d.max(tr.degree() + 2);
    witnesses.extend(failing(&engine, &[("Tr_q(Tb L T) - Tr_q(L)".into(), tr)], tr_bound)?);
    let pl = poly_of_matrix(poly, &l);
    let tr_p = &tb.mul(&pl)?.mul(&t)?.weighted_trace(&w) - &pl.weighted_trace(&w);
    witnesses.extend(failing(&engine, &[("Tr_q(Tb P(L) T) - Tr_q(P(L))".into(), tr_p.clone())], d.max(tr_p.degree() + 2))?);
    let cov = poly_of_matrix(poly, &conj).sub(&tb.mul(&pl)?.mul(&t)?)?;
    let p_bound = d.max(3 * deg);
    witnesses.extend(failing(&engine, &entries_labelled("P(Tb L T) - Tb P(L) T", &cov), p_bound)?);
    Ok(CheckRecord::new(
        "lemma-trp",
        json!({"n": n, "poly": render_poly(poly), "trace_bound": tr_bound, "polynomial_bound": p_bound}),
        Some(d),
        witnesses,
    ))
}

/// Control for the trace lemma: with the ordinary trace the invariance must fail, so the record
/// passes exactly when the difference is not in the ideal.
pub fn trp_ordinary_trace_control(n: usize, d: usize, cfg: &EngineConfig) -> Result<CheckRecord> {
    let p = mixed_tl_presentation(n)?;
    let ideal = p.ideal()?;
    let (t, tb, l) = (p.matrix("T")?, p.matrix("Tb")?, p.matrix("L")?);
    let diff = &tb.mul(&l)?.mul(&t)?.trace() - &l.trace();
    let member = Engine::new(&ideal, cfg).contains(&diff, d.max(diff.degree() + 2))?;
    let witnesses = if member { vec![format!("Tr(Tb L T) - Tr(L) unexpectedly lies in the ideal: {diff}")] } else { vec![] };
    Ok(CheckRecord::new("lemma-trp-control", json!({"n": n, "trace": "ordinary"}), Some(d), witnesses))
}

/// The substitution `e -> P(e)` on the algebra with `eses = sese`, `s² - βs = 1`, modulo
/// `e·P(e) - αe`: the stronger identities for `m ≤ m_max`, the weaker identity and the
/// factorization through `e² - αe`.
pub fn verify_lemma_alg(
    poly: &[Scalar],
    alpha: &Scalar,
    beta: &Scalar,
    m_max: usize,
    d: usize,
    cfg: &EngineConfig,
) -> Result<CheckRecord> {
    if poly.first().is_some_and(|c| !c.is_zero()) {
        return Err(Error::InvalidPolynomial("the polynomial must vanish at 0".into()));
    }
    let deg = degree_of(poly);
    let p = est_presentation(beta)?;
    let al = p.alphabet().clone();
    let e = FreeElement::generator(&al, 0);
    let s = FreeElement::generator(&al, 1);
    let pe = poly_of_element(poly, &e);
    let extra = &(&e * &pe) - &e.scale(alpha);
    let ideal = p.ideal()?.extended([extra])?;
    let mut targets = Vec::new();
    for m in 1..=m_max {
        let sems = &(&s * &e.pow(m)) * &s;
        targets.push((format!("stronger m={m}"), &(&pe * &sems) - &(&sems * &pe)));
    }
    let psps = &(&pe * &s) * &(&pe * &s);
    let spsp = &(&s * &pe) * &(&s * &pe);
    targets.push(("weaker".into(), &psps - &spsp));
    targets.push(("factorization".into(), &(&pe * &pe) - &pe.scale(alpha)));
    let needed = targets.iter().map(|(_, x)| x.degree()).max().unwrap_or(0);
    if needed > d {
        return Err(Error::BoundTooSmall { needed, bound: d });
    }
    let witnesses = failing(&Engine::new(&ideal, cfg), &targets, d)?;
    Ok(CheckRecord::new(
        "lemma-alg",
        json!({"poly": render_poly(poly), "alpha": alpha.to_string(), "beta": beta.to_string(), "m_max": m_max, "degree": deg}),
        Some(d),
        witnesses,
    ))
}

/// The projection `π(E) = E² - (λ+μ)E` from the bisymmetric quotient: RE for `π`,
/// `π(π+λμ) = 0` and `Tr_q π = -λμ (l+m)^`, by ideal membership and at the canonical character.
pub fn verify_fiber_map(l: usize, m: usize, k: usize, d: usize, cfg: &EngineConfig) -> Result<CheckRecord> {
    if d < 5 {
        return Err(Error::BoundTooSmall { needed: 5, bound: d });
    }
    let (a, b) = (Scalar::sym(A), Scalar::sym(B));
    let (lambda, mu) = (&a * &a, &b * &b);
    let spec = OrbitQuotientSpec::new(OrbitKind::Bisymmetric { l, m, k, lambda: lambda.clone(), mu: mu.clone() })?;
    let n = spec.n();
    let ideal = spec.ideal()?;
    let e = spec.generator_matrix();
    let sum = &lambda + &mu;
    let prod = &lambda * &mu;
    let pi_coeffs = [Scalar::zero(), -sum, Scalar::one()];
    let pi = poly_of_matrix(&pi_coeffs, &e);
    let s = build_s(n);
    let w = q_weights(n);
    let al = e.alphabet().clone();
    let target_trace = -&(&prod * &quantum_integer(l + m));
    let mut targets = entries_labelled("RE(pi)", &re_matrix(&pi, s.mat()));
    targets.extend(entries_labelled("pi(pi+lambda mu)", &pi.mul(&pi.add_scalar(&prod))?));
    targets.push((
        "Tr_q(pi) + lambda mu (l+m)^".into(),
        &pi.weighted_trace(&w) - &FreeElement::constant(&al, target_trace.clone()),
    ));
    let mut witnesses = failing(&Engine::new(&ideal, cfg), &targets, d)?;

    let ch = family_a_matrix(n, l, m, &a, &b)?;
    let pi_ch = poly_of_const_matrix(&pi_coeffs, &ch);
    if quantum_trace(&pi_ch) != target_trace {
        witnesses.push(format!("character: Tr_q(pi(A)) = {} differs from {target_trace}", quantum_trace(&pi_ch)));
    }
    if !pi_ch.mul(&pi_ch.add(&Mat::identity(n).scale(&prod))?)?.is_zero() {
        witnesses.push("character: pi(A)(pi(A)+lambda mu) is nonzero".into());
    }
    if !check_numerical_re(&pi_ch, &s) {
        witnesses.push("character: pi(A) fails the numerical RE".into());
    }
    Ok(CheckRecord::new(
        "fiber-map",
        json!({"l": l, "m": m, "k": k, "n": n, "clauses": ["re", "quadratic", "trace", "character"]}),
        Some(d),
        witnesses,
    ))
}

/// `t / (1 - q⁻²)`.
pub fn shift_constant() -> Scalar {
    Scalar::sym(T).checked_div(&(Scalar::one() - Scalar::q_pow(-2))).expect("nonzero denominator")
}

fn classical_limit(x: &FreeElement) -> Result<FreeElement> {
    let sp = Specialization::classical().with(Q, num_rational::BigRational::from_integer(1.into()))?;
    x.map_coeffs(|c| c.partial_specialize(&sp))
}

fn substitute_coeffs(x: &FreeElement, subs: &[(usize, Scalar)]) -> Result<FreeElement> {
    x.map_coeffs(|c| {
        let mut out = c.clone();
        for (s, v) in subs {
            out = out.substitute(*s, v)?;
        }
        Ok(out)
    })
}

/// `L -> E + c·1` on a single-family presentation, landing in `target`.
fn shift_generators(p: &Presentation, target: &Arc<Alphabet>, c: &Scalar) -> Result<Vec<FreeElement>> {
    let fam = &p.families()[0];
    let images: Vec<FreeElement> = (0..p.alphabet().len())
        .map(|letter| {
            let g = FreeElement::generator(target, letter as u8);
            let (r, col) = fam.position(letter as u8).expect("single family");
            if r == col {
                &g + &FreeElement::constant(target, c.clone())
            } else {
                g
            }
        })
        .collect();
    p.relations().iter().map(|r| r.substitute(target, &images)).collect()
}

fn compare(label: &str, got: &[FreeElement], want: &[FreeElement], out: &mut Vec<String>) {
    if got.len() != want.len() {
        out.push(format!("{label}: {} relations against {}", got.len(), want.len()));
        return;
    }
    for (i, (g, w)) in got.iter().zip(want).enumerate() {
        if g != w {
            out.push(format!("{label}, component {i}: {g} differs from {w}"));
        }
    }
}

/// The shift `L = E + t/(1-q⁻²)` takes the RE relations to the two-parameter relations; `q -> 1`
/// takes those to the classical relations; `t = 0` gives back the RE relations; and the symmetric
/// orbit relations go over to the two-parameter and then to the KKS orbit relations.
pub fn verify_substitution(n: usize) -> Result<CheckRecord> {
    let mut witnesses = Vec::new();
    let c = shift_constant();
    let re = re_presentation(n)?;
    let tp = two_param_presentation(n)?;
    let al = tp.alphabet().clone();
    compare("re -> two-param", &shift_generators(&re, &al, &c)?, tp.relations(), &mut witnesses);

    let limit: Vec<FreeElement> = tp.relations().iter().map(classical_limit).collect::<Result<_>>()?;
    let cl = classical_presentation(n)?;
    let fam = &cl.families()[0];
    let mut raw = Vec::with_capacity(n.pow(4));
    for a in 1..=n {
        for b in 1..=n {
            for cc in 1..=n {
                for dd in 1..=n {
                    raw.push(classical_relation(cl.alphabet(), fam, cc, a, dd, b));
                }
            }
        }
    }
    compare("two-param at q=1 -> classical", &limit, &raw, &mut witnesses);

    let at_t0: Vec<FreeElement> = tp
        .relations()
        .iter()
        .map(|r| substitute_coeffs(r, &[(T, Scalar::zero())]).map(|x| x.relabel(re.alphabet(), |l| l)))
        .collect::<Result<_>>()?;
    compare("two-param at t=0 -> re", &at_t0, re.relations(), &mut witnesses);

    // symmetric -> two-parameter -> KKS, with eigenvalues in the symbols l1, l2
    if n >= 2 {
        let (n1, n2) = (n - n / 2, n / 2);
        let (m1, m2) = (Scalar::sym(param(1)), Scalar::sym(param(2)));
        let sym = OrbitQuotientSpec::new(OrbitKind::Symmetric { l: n1, m: n2, lambda: m1.clone(), mu: m2.clone() })?;
        let two = OrbitQuotientSpec::new(OrbitKind::TwoParameter { n1, n2, mu1: m1.clone(), mu2: m2.clone() })?;
        let kks = OrbitQuotientSpec::new(OrbitKind::Kks { n1, n2, mu1: m1.clone(), mu2: m2.clone() })?;
        let shifted_orbit = Presentation::new("sym-orbit", re.alphabet().clone(), re.families().to_vec(), sym.orbit_relations().to_vec());
        let moved: Vec<FreeElement> = shift_generators(&shifted_orbit, &al, &c)?
            .iter()
            .map(|r| substitute_coeffs(r, &[(param(1), &m1 + &c), (param(2), &m2 + &c)]))
            .collect::<Result<_>>()?;
        compare("symmetric -> two-parameter orbit", &moved, two.orbit_relations(), &mut witnesses);
        let lim: Vec<FreeElement> = two.orbit_relations().iter().map(classical_limit).collect::<Result<_>>()?;
        let kks_rel: Vec<FreeElement> = kks.orbit_relations().iter().map(|r| r.relabel(&al, |l| l)).collect();
        compare("two-parameter orbit at q=1 -> kks", &lim, &kks_rel, &mut witnesses);
    }
    Ok(CheckRecord::new("substitution", json!({"n": n, "components": n.pow(4)}), None, witnesses))
}

/// Named elements of the rank-two classical example, with `σ₁ = l1`, `σ₂ = l2`.
pub struct Gl2Example {
    pub presentation: Presentation,
    pub system: Vec<FreeElement>,
    pub reduced: Vec<FreeElement>,
    pub trace_condition: FreeElement,
    pub casimir_target: FreeElement,
}

impl Gl2Example {
    pub fn new() -> Result<Self> {
        let p = classical_presentation(2)?;
        let al = p.alphabet().clone();
        let x = |text: &str| FreeElement::parse(text, &al);
        let system = vec![
            x("E1_1*E1_1 + E2_1*E1_2 - l1*E1_1 + l2")?,
            x("E2_2*E2_2 + E1_2*E2_1 - l1*E2_2 + l2")?,
            x("E1_2*E1_1 + E2_2*E1_2 - l1*E1_2")?,
            x("E1_1*E2_1 + E2_1*E2_2 - l1*E2_1")?,
        ];
        let reduced = vec![
            x("E1_1*E1_1 + E2_2*E2_2 + E1_2*E2_1 + E2_1*E1_2 - l1*(E1_1 + E2_2) + 2*l2")?,
            x("E1_1*E1_1 - E2_2*E2_2 - t*(E1_1 - E2_2) - l1*(E1_1 - E2_2)")?,
            x("E1_1*E1_2 + E2_2*E1_2 - (l1 + t)*E1_2")?,
            x("E1_1*E2_1 + E2_2*E2_1 - (l1 + t)*E2_1")?,
        ];
        let trace_condition = x("E1_1 + E2_2 - (l1 + t)")?;
        let e = p.matrix("E")?;
        let casimir_target = &e.pow(2).trace() - &x("l1*(l1 + t) - 2*l2")?;
        Ok(Gl2Example { presentation: p, system, reduced, trace_condition, casimir_target })
    }
}

/// The rank-two example: equivalence of the two systems, reduction by the trace condition,
/// the value of `Tr(E²)`, the perturbed control and centrality of the Casimirs.
pub fn verify_gl2_example(d: usize, cfg: &EngineConfig) -> Result<CheckRecord> {
    if d < 4 {
        return Err(Error::BoundTooSmall { needed: 4, bound: d });
    }
    let ex = Gl2Example::new()?;
    let p = &ex.presentation;
    let al = p.alphabet().clone();
    let base = p.ideal()?;
    let mut witnesses = Vec::new();

    // the first system is the entrywise expansion of (E - μ₁)(E - μ₂) with σ₁ = μ₁ + μ₂, σ₂ = μ₁μ₂
    let e = p.matrix("E")?;
    let quad = e.pow(2).sub(&e.scale(&Scalar::sym(param(1))))?.add_scalar(&Scalar::sym(param(2)));
    let expected = [quad.get(0, 0), quad.get(1, 1), quad.get(1, 0), quad.get(0, 1)];
    for (i, (got, want)) in ex.system.iter().zip(expected).enumerate() {
        if got != want {
            witnesses.push(format!("equation {} is not the matrix expansion: {got} vs {want}", i + 1));
        }
    }

    let with = |extra: &[FreeElement]| -> Result<IdealSpec> { base.extended(extra.iter().cloned()) };
    let label = |prefix: &str, xs: &[FreeElement]| -> Vec<(String, FreeElement)> {
        xs.iter().enumerate().map(|(i, x)| (format!("{prefix}{}", i + 1), x.clone())).collect()
    };
    let sys = with(&ex.system)?;
    witnesses.extend(failing(&Engine::new(&sys, cfg), &label("primed e", &ex.reduced), d)?);
    let red = with(&ex.reduced)?;
    witnesses.extend(failing(&Engine::new(&red, cfg), &label("e", &ex.system), d)?);

    let by_trace = with(std::slice::from_ref(&ex.trace_condition))?;
    let reducible: Vec<(String, FreeElement)> =
        (1..4).map(|i| (format!("primed e{} mod e5'", i + 1), ex.reduced[i].clone())).collect();
    witnesses.extend(failing(&Engine::new(&by_trace, cfg), &reducible, d)?);

    let perturbed = &ex.trace_condition + &FreeElement::one(&al);
    let control = with(&[perturbed])?;
    let hits = Engine::new(&control, cfg).contains_all(&reducible.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>(), d)?;
    if hits.iter().all(|&h| h) {
        witnesses.push("control: perturbed trace condition still reduces every equation".into());
    }

    let casimir = with(&[ex.reduced[0].clone(), ex.trace_condition.clone()])?;
    witnesses.extend(failing(&Engine::new(&casimir, cfg), &[("Tr(E^2) value".into(), ex.casimir_target.clone())], d)?);

    let (c1, c2) = (e.trace(), e.pow(2).trace());
    let mut comms = Vec::new();
    for g in 0..al.len() {
        let x = FreeElement::generator(&al, g as u8);
        comms.push((format!("[Tr(E), {}]", al.name(g as u8)), c1.commutator(&x)?));
        comms.push((format!("[Tr(E^2), {}]", al.name(g as u8)), c2.commutator(&x)?));
    }
    witnesses.extend(failing(&Engine::new(&base, cfg), &comms, d)?);

    Ok(CheckRecord::new(
        "gl2-example",
        json!({"sigma1": "l1", "sigma2": "l2", "clauses": ["expansion", "equivalence", "reduction", "control", "trace-square", "casimirs"]}),
        Some(d),
        witnesses,
    ))
}
