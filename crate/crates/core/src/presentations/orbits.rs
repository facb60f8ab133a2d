use serde_json::json;

use super::builders::{classical_presentation, re_presentation, two_param_presentation, Presentation};
use crate::error::{Error, Result};
use crate::freealg::{FMat, FreeElement, IdealSpec};
use crate::qtensor::{build_d, build_s, check_numerical_re, Mat};
use crate::scalars::{quantum_integer, Scalar, T};

/// Which orbit-quotient relations to add to the base algebra.
#[derive(Clone, Debug, PartialEq)]
pub enum OrbitKind {
    /// `(L-λ)(L-μ) = 0`, `Tr_q L = λ l̂ + μ m̂`, `l + m = n`.
    Symmetric { l: usize, m: usize, lambda: Scalar, mu: Scalar },
    /// `L(L-λ)(L-μ) = 0`, `Tr_q L = λ l̂ + μ m̂`, `Tr_q L² = (λ+μ)(λ l̂ + μ m̂) - λμ (l+m)^`.
    Bisymmetric { l: usize, m: usize, k: usize, lambda: Scalar, mu: Scalar },
    /// `L² = 0`, `Tr_q L = 0`.
    Nilpotent { n: usize },
    /// Two-parameter algebra with `(E-μ₁)(E-μ₂) = 0`, `Tr_q E = n̂₁μ₁ + n̂₂μ₂ + t n̂₁n̂₂`.
    TwoParameter { n1: usize, n2: usize, mu1: Scalar, mu2: Scalar },
    /// `U(gl(n))[t]` with `(E-μ₁)(E-μ₂) = 0`, `Tr E = n₁μ₁ + n₂μ₂ + t n₁n₂`.
    Kks { n1: usize, n2: usize, mu1: Scalar, mu2: Scalar },
}

/// Base presentation plus the orbit relations of one [`OrbitKind`].
#[derive(Clone, Debug)]
pub struct OrbitQuotientSpec {
    kind: OrbitKind,
    n: usize,
    base: Presentation,
    prefix: &'static str,
    extra: Vec<FreeElement>,
}

fn quadratic(x: &FMat, r1: &Scalar, r2: &Scalar) -> FMat {
    x.add_scalar(&-r1).mul(&x.add_scalar(&-r2)).expect("same shape")
}

fn qint(k: usize) -> Scalar {
    quantum_integer(k)
}

fn int(k: usize) -> Scalar {
    Scalar::from_int(k as i64)
}

impl OrbitQuotientSpec {
    pub fn new(kind: OrbitKind) -> Result<Self> {
        let (n, base, prefix) = match &kind {
            OrbitKind::Symmetric { l, m, .. } => {
                if l < m || *l == 0 {
                    return Err(Error::InvalidParameters("symmetric orbit needs l ≥ m and l ≥ 1".into()));
                }
                (l + m, re_presentation(l + m)?, "L")
            }
            OrbitKind::Bisymmetric { l, m, k, .. } => {
                if l < m || *k == 0 || *m == 0 {
                    return Err(Error::InvalidParameters("bisymmetric orbit needs l ≥ m ≥ 1 and k ≥ 1".into()));
                }
                (l + m + k, re_presentation(l + m + k)?, "L")
            }
            OrbitKind::Nilpotent { n } => (*n, re_presentation(*n)?, "L"),
            OrbitKind::TwoParameter { n1, n2, .. } => {
                if *n1 == 0 || *n2 == 0 {
                    return Err(Error::InvalidParameters("multiplicities must be positive".into()));
                }
                (n1 + n2, two_param_presentation(n1 + n2)?, "E")
            }
            OrbitKind::Kks { n1, n2, .. } => {
                if *n1 == 0 || *n2 == 0 {
                    return Err(Error::InvalidParameters("multiplicities must be positive".into()));
                }
                (n1 + n2, classical_presentation(n1 + n2)?, "E")
            }
        };
        let al = base.alphabet().clone();
        let x = base.matrix(prefix)?;
        let weights: Vec<Scalar> = (0..n).map(|i| build_d(n).get(i, i).clone()).collect();
        let c = |s: Scalar| FreeElement::constant(&al, s);
        let t = Scalar::sym(T);
        let extra: Vec<FreeElement> = match &kind {
            OrbitKind::Symmetric { l, m, lambda, mu } => {
                let mut v = quadratic(&x, lambda, mu).entries().to_vec();
                v.push(&x.weighted_trace(&weights) - &c(lambda * &qint(*l) + mu * &qint(*m)));
                v
            }
            OrbitKind::Bisymmetric { l, m, lambda, mu, .. } => {
                let mut v = x.mul(&quadratic(&x, lambda, mu))?.entries().to_vec();
                let tr1 = lambda * &qint(*l) + mu * &qint(*m);
                let tr2 = &(lambda + mu) * &tr1 - &(lambda * mu) * &qint(l + m);
                v.push(&x.weighted_trace(&weights) - &c(tr1));
                v.push(&x.pow(2).weighted_trace(&weights) - &c(tr2));
                v
            }
            OrbitKind::Nilpotent { .. } => {
                let mut v = x.pow(2).entries().to_vec();
                v.push(x.weighted_trace(&weights));
                v
            }
            OrbitKind::TwoParameter { n1, n2, mu1, mu2 } => {
                let mut v = quadratic(&x, mu1, mu2).entries().to_vec();
                let rhs = &(&qint(*n1) * mu1 + &qint(*n2) * mu2) + &(&t * &qint(*n1)) * &qint(*n2);
                v.push(&x.weighted_trace(&weights) - &c(rhs));
                v
            }
            OrbitKind::Kks { n1, n2, mu1, mu2 } => {
                let mut v = quadratic(&x, mu1, mu2).entries().to_vec();
                let rhs = &(&int(*n1) * mu1 + &int(*n2) * mu2) + &(&t * &int(*n1)) * &int(*n2);
                v.push(&x.trace() - &c(rhs));
                v
            }
        };
        Ok(OrbitQuotientSpec { kind, n, base, prefix, extra })
    }

    pub fn kind(&self) -> &OrbitKind {
        &self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The matrix of generators the orbit relations are written in.
    pub fn generator_matrix(&self) -> FMat {
        self.base.matrix(self.prefix).expect("family exists")
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    /// The orbit relations added to the base algebra.
    pub fn orbit_relations(&self) -> &[FreeElement] {
        &self.extra
    }

    pub fn presentation(&self) -> Presentation {
        self.base.with_relations(format!("{}+{}", self.base.name(), self.name()), self.extra.iter().cloned())
    }

    pub fn ideal(&self) -> Result<IdealSpec> {
        self.base.ideal()?.extended(self.extra.iter().cloned())
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrbitKind::Symmetric { .. } => "symmetric",
            OrbitKind::Bisymmetric { .. } => "bisymmetric",
            OrbitKind::Nilpotent { .. } => "nilpotent",
            OrbitKind::TwoParameter { .. } => "two-parameter",
            OrbitKind::Kks { .. } => "kks",
        }
    }

    pub fn params_json(&self) -> serde_json::Value {
        match &self.kind {
            OrbitKind::Symmetric { l, m, lambda, mu } => {
                json!({"kind": self.name(), "l": l, "m": m, "lambda": lambda.to_string(), "mu": mu.to_string()})
            }
            OrbitKind::Bisymmetric { l, m, k, lambda, mu } => {
                json!({"kind": self.name(), "l": l, "m": m, "k": k, "lambda": lambda.to_string(), "mu": mu.to_string()})
            }
            OrbitKind::Nilpotent { n } => json!({"kind": self.name(), "n": n}),
            OrbitKind::TwoParameter { n1, n2, mu1, mu2 } | OrbitKind::Kks { n1, n2, mu1, mu2 } => {
                json!({"kind": self.name(), "n1": n1, "n2": n2, "mu1": mu1.to_string(), "mu2": mu2.to_string()})
            }
        }
    }

    /// The designated character matrix of the orbit, when the kind has one.
    pub fn designated_character(&self) -> Option<Mat> {
        use crate::qtensor::{family_a_matrix, family_b_matrix, AdmissiblePair};
        match &self.kind {
            OrbitKind::Symmetric { l, m, lambda, mu } | OrbitKind::Bisymmetric { l, m, lambda, mu, .. } => {
                // λ = a², μ = b² in the canonical family
                let (a, b) = (sqrt_symbol(lambda)?, sqrt_symbol(mu)?);
                family_a_matrix(self.n, *l, *m, &a, &b).ok()
            }
            OrbitKind::Nilpotent { n } => {
                let y: Vec<usize> = ((n - n / 2 + 1)..=*n).collect();
                let sigma: Vec<usize> = (1..=n / 2).rev().collect();
                let pair = AdmissiblePair::new(*n, y, sigma).ok()?;
                let l = pair.l_range().start;
                family_b_matrix(&pair, l, &Scalar::zero()).ok()
            }
            _ => None,
        }
    }
}

/// `s` when `x = s²` for a monomial `s` with coefficient 1 (e.g. `a` for `a^2`).
fn sqrt_symbol(x: &Scalar) -> Option<Scalar> {
    if !x.is_polynomial() || !x.numer().is_monomial() {
        return None;
    }
    let (m, c) = x.numer().leading()?;
    if !num_traits::One::is_one(c) || m.0.iter().any(|e| e % 2 == 1) {
        return None;
    }
    let mut half = *m;
    for e in half.0.iter_mut() {
        *e /= 2;
    }
    Some(Scalar::from_poly(crate::scalars::Poly::monomial(half, c.clone())))
}

/// Generator values of the character given by `a` on a single-family presentation.
pub fn character_values(p: &Presentation, a: &Mat) -> Result<Vec<Scalar>> {
    let [fam] = p.families() else {
        return Err(Error::ShapeMismatch("character needs a single generator family".into()));
    };
    if fam.n != a.dim() {
        return Err(Error::ShapeMismatch(format!("matrix is {0}x{0}, generators form {1}x{1}", a.dim(), fam.n)));
    }
    Ok((0..p.alphabet().len())
        .map(|l| {
            let (r, c) = fam.position(l as u8).expect("single family covers the alphabet");
            a.get(r, c).clone()
        })
        .collect())
}

/// Relations that do not vanish at the character given by `a`.
pub fn character_failures(p: &Presentation, rels: &[FreeElement], a: &Mat) -> Result<Vec<String>> {
    let vals = character_values(p, a)?;
    Ok(rels
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let v = r.evaluate(&vals);
            (!v.is_zero()).then(|| format!("relation {i}: {r} evaluates to {v}"))
        })
        .collect())
}

/// Whether `a` defines a character; for the RE algebra the answer is cross-checked against the
/// numerical reflection equation.
pub fn verify_character(p: &Presentation, a: &Mat) -> Result<bool> {
    let ok = character_failures(p, p.relations(), a)?.is_empty();
    if p.name().starts_with("re(") && ok != check_numerical_re(a, &build_s(a.dim())) {
        return Err(Error::InternalInconsistency("relation substitution disagrees with the numerical RE".into()));
    }
    Ok(ok)
}

pub fn verify_orbit_character(spec: &OrbitQuotientSpec, a: &Mat) -> Result<bool> {
    if !verify_character(spec.base(), a)? {
        return Ok(false);
    }
    Ok(character_failures(spec.base(), spec.orbit_relations(), a)?.is_empty())
}
