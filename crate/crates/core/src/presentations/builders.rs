use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, FMat, FreeElement, IdealSpec, Letter};
use crate::qtensor::{build_s, Mat};
use crate::scalars::{Scalar, T};

/// Largest matrix size accepted by the builders.
pub const MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PresentationKind {
    /// Quantum matrix bialgebra `S T₁T₂ = T₁T₂ S`.
    Frt,
    /// Reflection equation algebra `S L₂ S L₂ = L₂ S L₂ S`.
    Re,
    /// Two-parameter algebra `S E₂ S E₂ - E₂ S E₂ S = q t [E₂, S]`.
    TwoParam,
    /// `U(gl(n))[t]`.
    Classical,
    /// The algebra on `e, s` with `eses = sese`, `s² - βs = 1`, at `β = q - q⁻¹`.
    Est,
    /// `T`, its inverse `Tb` and a commuting RE matrix `L`.
    MixedTl,
}

/// A matrix of generators `P{i}_{j}` (upper index `i`, lower index `j`) inside an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub prefix: String,
    pub n: usize,
    pub offset: usize,
}

impl Family {
    /// Generator names in alphabet order: lexicographic on (upper, lower).
    pub fn names(prefix: &str, n: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                out.push(format!("{prefix}{i}_{j}"));
            }
        }
        out
    }

    /// Letter of the generator with the given 1-based upper and lower index.
    pub fn letter(&self, upper: usize, lower: usize) -> Letter {
        (self.offset + (upper - 1) * self.n + (lower - 1)) as Letter
    }

    /// The generator matrix: row `j`, column `i` holds the generator with upper index `i` and
    /// lower index `j`, so that products read `(XY)^i_j = Σ_k X^k_j Y^i_k`.
    pub fn matrix(&self, alphabet: &Arc<Alphabet>) -> FMat {
        FMat::from_fn(alphabet, self.n, |r, c| FreeElement::generator(alphabet, self.letter(c + 1, r + 1)))
    }

    /// `(row, column)` of a letter of this family in [`Family::matrix`].
    pub fn position(&self, l: Letter) -> Option<(usize, usize)> {
        let k = (l as usize).checked_sub(self.offset)?;
        (k < self.n * self.n).then(|| (k % self.n, k / self.n))
    }
}

/// Generators, relations and the generator families they are organized in.
#[derive(Clone, Debug)]
pub struct Presentation {
    name: String,
    alphabet: Arc<Alphabet>,
    families: Vec<Family>,
    relations: Vec<FreeElement>,
}

#[derive(Serialize)]
struct PresentationJson<'a> {
    name: &'a str,
    generators: &'a [String],
    relations: Vec<String>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, alphabet: Arc<Alphabet>, families: Vec<Family>, relations: Vec<FreeElement>) -> Self {
        Presentation { name: name.into(), alphabet, families, relations }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family(&self, prefix: &str) -> Result<&Family> {
        self.families
            .iter()
            .find(|f| f.prefix == prefix)
            .ok_or_else(|| Error::InvalidParameters(format!("no generator family `{prefix}`")))
    }

    pub fn matrix(&self, prefix: &str) -> Result<FMat> {
        Ok(self.family(prefix)?.matrix(&self.alphabet))
    }

    /// Raw relations, including components that vanish identically.
    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn ideal(&self) -> Result<IdealSpec> {
        IdealSpec::new(&self.alphabet, self.relations.iter().cloned())
    }

    pub fn with_relations(&self, name: impl Into<String>, extra: impl IntoIterator<Item = FreeElement>) -> Self {
        let mut p = self.clone();
        p.name = name.into();
        p.relations.extend(extra);
        p
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson {
            name: &self.name,
            generators: self.alphabet.names(),
            relations: self.relations.iter().map(|r| r.to_string()).collect(),
        })
        .expect("strings serialize")
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameters("matrix size must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::TooLarge { words: (n as u128).pow(4), cap: (MAX_N as u128).pow(4) });
    }
    Ok(())
}

/// Entries of an `n²×n²` matrix, row-major.
pub fn components(m: &FMat) -> Vec<FreeElement> {
    m.entries().to_vec()
}

fn constant(alphabet: &Arc<Alphabet>, m: &Mat) -> FMat {
    FMat::from_mat(alphabet, m)
}

/// `S X₂ S X₂ - X₂ S X₂ S`.
pub fn re_matrix(x: &FMat, s: &Mat) -> FMat {
    let al = x.alphabet();
    let s = constant(al, s);
    let x2 = x.in_second_factor();
    let sx2 = s.mul(&x2).expect("shapes");
    let x2s = x2.mul(&s).expect("shapes");
    sx2.mul(&sx2).expect("shapes").sub(&x2s.mul(&x2s).expect("shapes")).expect("shapes")
}

/// `S T₁ T₂ - T₁ T₂ S`.
pub fn frt_matrix(t: &FMat, s: &Mat) -> FMat {
    let al = t.alphabet();
    let s = constant(al, s);
    let t12 = t.in_first_factor().mul(&t.in_second_factor()).expect("shapes");
    s.mul(&t12).expect("shapes").sub(&t12.mul(&s).expect("shapes")).expect("shapes")
}

/// `S E₂ S E₂ - E₂ S E₂ S - q t (E₂ S - S E₂)`.
pub fn two_param_matrix(e: &FMat, s: &Mat) -> FMat {
    let al = e.alphabet();
    let sc = constant(al, s);
    let e2 = e.in_second_factor();
    let comm = e2.mul(&sc).expect("shapes").sub(&sc.mul(&e2).expect("shapes")).expect("shapes");
    let qt = Scalar::q() * Scalar::sym(T);
    re_matrix(e, s).sub(&comm.scale(&qt)).expect("shapes")
}

/// `E^i_j E^m_k - E^m_k E^i_j - t(δ^m_j E^i_k - δ^i_k E^m_j)`, indices 1-based.
pub fn classical_relation(alphabet: &Arc<Alphabet>, fam: &Family, i: usize, j: usize, m: usize, k: usize) -> FreeElement {
    let g = |u, l| FreeElement::generator(alphabet, fam.letter(u, l));
    let comm = &(&g(i, j) * &g(m, k)) - &(&g(m, k) * &g(i, j));
    let mut rhs = FreeElement::zero(alphabet);
    if m == j {
        rhs = &rhs + &g(i, k);
    }
    if i == k {
        rhs = &rhs - &g(m, j);
    }
    &comm - &rhs.scale(&Scalar::sym(T))
}

fn single_family(prefix: &str, n: usize) -> Result<(Arc<Alphabet>, Family)> {
    let alphabet = Alphabet::new(Family::names(prefix, n))?;
    Ok((alphabet, Family { prefix: prefix.into(), n, offset: 0 }))
}

pub fn re_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let (al, fam) = single_family("L", n)?;
    let rels = components(&re_matrix(&fam.matrix(&al), build_s(n).mat()));
    Ok(Presentation::new(format!("re(n={n})"), al, vec![fam], rels))
}

pub fn frt_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let (al, fam) = single_family("T", n)?;
    let rels = components(&frt_matrix(&fam.matrix(&al), build_s(n).mat()));
    Ok(Presentation::new(format!("frt(n={n})"), al, vec![fam], rels))
}

pub fn two_param_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let (al, fam) = single_family("E", n)?;
    let rels = components(&two_param_matrix(&fam.matrix(&al), build_s(n).mat()));
    Ok(Presentation::new(format!("two-param(n={n})"), al, vec![fam], rels))
}

/// One relation per unordered pair of distinct generators.
pub fn classical_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let (al, fam) = single_family("E", n)?;
    let idx: Vec<(usize, usize)> = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
    let mut rels = Vec::new();
    for (a, &(i, j)) in idx.iter().enumerate() {
        for &(m, k) in &idx[a + 1..] {
            rels.push(classical_relation(&al, &fam, i, j, m, k));
        }
    }
    Ok(Presentation::new(format!("classical(n={n})"), al, vec![fam], rels))
}

pub fn est_presentation(beta: &Scalar) -> Result<Presentation> {
    let al = Alphabet::new(["e", "s"])?;
    let e = FreeElement::generator(&al, 0);
    let s = FreeElement::generator(&al, 1);
    let one = FreeElement::one(&al);
    let eses = &(&e * &s) * &(&e * &s);
    let sese = &(&s * &e) * &(&s * &e);
    let hecke = &(&(&s * &s) - &s.scale(beta)) - &one;
    Ok(Presentation::new(format!("est(beta={beta})"), al, vec![], vec![&eses - &sese, hecke]))
}

/// FRT on `T`, `T·Tb = Tb·T = 1`, RE on `L`, and `T`, `Tb` commuting with `L`.
pub fn mixed_tl_presentation(n: usize) -> Result<Presentation> {
    check_n(n)?;
    let names: Vec<String> = ["T", "Tb", "L"].iter().flat_map(|p| Family::names(p, n)).collect();
    let al = Alphabet::new(names)?;
    let fam = |prefix: &str, k: usize| Family { prefix: prefix.into(), n, offset: k * n * n };
    let (ft, ftb, fl) = (fam("T", 0), fam("Tb", 1), fam("L", 2));
    let s = build_s(n);
    let (t, tb, l) = (ft.matrix(&al), ftb.matrix(&al), fl.matrix(&al));
    let id = FMat::identity(&al, n);
    let mut rels = components(&frt_matrix(&t, s.mat()));
    rels.extend(t.mul(&tb)?.sub(&id)?.entries().iter().cloned());
    rels.extend(tb.mul(&t)?.sub(&id)?.entries().iter().cloned());
    rels.extend(components(&re_matrix(&l, s.mat())));
    for x in t.entries().iter().chain(tb.entries()) {
        for y in l.entries() {
            rels.push(x.commutator(y)?);
        }
    }
    Ok(Presentation::new(format!("mixed-tl(n={n})"), al, vec![ft, ftb, fl], rels))
}

pub fn build_presentation(kind: PresentationKind, n: usize) -> Result<Presentation> {
    match kind {
        PresentationKind::Frt => frt_presentation(n),
        PresentationKind::Re => re_presentation(n),
        PresentationKind::TwoParam => two_param_presentation(n),
        PresentationKind::Classical => classical_presentation(n),
        PresentationKind::Est => est_presentation(&(Scalar::q() - Scalar::q_pow(-1))),
        PresentationKind::MixedTl => mixed_tl_presentation(n),
    }
}
