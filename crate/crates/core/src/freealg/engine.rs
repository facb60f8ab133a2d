//! Degree-bounded two-sided ideal calculus by sparse linear algebra on word-indexed vectors.
//!
//! The span of all `w1·g·w2` of total length at most `d` is split into blocks by the maximal
//! letter-count grading of the relations, and each block is put in echelon form with pivots on
//! the deglex-largest word. Ranks are computed at random specializations of the parameter
//! symbols (three agreeing repetitions by default) with an exact fallback over [`Scalar`].

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::element::FreeElement;
use super::grading::{add_into, sub, Grade, Grading};
use super::ideal::IdealSpec;
use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::field::{Field, FieldPoint, Fp};
use crate::linalg::{Echelon, SparseRow};
use crate::scalars::{Scalar, NSYM, Q};

pub const DEFAULT_WORD_CAP: u128 = 1 << 22;

/// Coefficient field used for rank computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Random rational points reduced modulo the prime 2^61 - 1.
    Modular,
    /// Random rational points in exact rational arithmetic.
    Rational,
    /// The rational-function field itself.
    Exact,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub backend: Backend,
    pub seed: u64,
    pub repetitions: usize,
    /// Upper bound on the number of words the engine may enumerate.
    pub word_cap: u128,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { backend: Backend::Modular, seed: 1, repetitions: 3, word_cap: DEFAULT_WORD_CAP }
    }
}

impl EngineConfig {
    pub fn exact() -> Self {
        EngineConfig { backend: Backend::Exact, ..Self::default() }
    }

    pub fn with_seed(seed: u64) -> Self {
        EngineConfig { seed, ..Self::default() }
    }
}

/// Number of words of length at most `d` over `g` letters, saturating.
pub fn words_up_to(g: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut p: u128 = 1;
    for _ in 0..=d {
        total = total.saturating_add(p);
        p = p.saturating_mul(g as u128);
    }
    total
}

fn check_cap(g: usize, d: usize, cap: u128) -> Result<()> {
    let w = words_up_to(g, d);
    if w > cap {
        Err(Error::TooLarge { words: w, cap })
    } else {
        Ok(())
    }
}

/// All words of each length up to a bound, bucketed by grade.
struct WordTable {
    by_len: Vec<HashMap<Grade, Vec<Word>>>,
}

impl WordTable {
    fn new(letters: usize, max_len: usize, grading: &Grading) -> Self {
        let mut by_len = Vec::with_capacity(max_len + 1);
        let mut layer: Vec<(Word, Grade)> = vec![(Word::empty(), grading.zero())];
        for k in 0..=max_len {
            let mut m: HashMap<Grade, Vec<Word>> = HashMap::new();
            for (w, g) in &layer {
                m.entry(g.clone()).or_default().push(w.clone());
            }
            by_len.push(m);
            if k < max_len {
                let mut next = Vec::with_capacity(layer.len() * letters);
                for (w, g) in &layer {
                    for l in 0..letters as Letter {
                        let mut nw = w.clone();
                        nw.0.push(l);
                        let mut ng = g.clone();
                        add_into(&mut ng, grading.of_letter(l));
                        next.push((nw, ng));
                    }
                }
                layer = next;
            }
        }
        WordTable { by_len }
    }
}

struct Rel<F> {
    terms: Vec<(Word, F)>,
    grade: Grade,
    degree: usize,
}

struct RowSpec {
    rel: u32,
    left: Word,
    right: Word,
}

fn specialize<F: Field>(
    e: &FreeElement,
    spec: &(dyn Fn(&Scalar) -> Result<F> + Sync),
) -> Result<Vec<(Word, F)>> {
    let mut out = Vec::with_capacity(e.num_terms());
    for (w, c) in e.terms() {
        let v = spec(c)?;
        if !v.is_zero() {
            out.push((w.clone(), v));
        }
    }
    Ok(out)
}

fn relations<F: Field>(
    ideal: &IdealSpec,
    grading: &Grading,
    d: usize,
    spec: &(dyn Fn(&Scalar) -> Result<F> + Sync),
) -> Result<Vec<Rel<F>>> {
    let mut out = Vec::new();
    for g in ideal.generators() {
        let terms = specialize(g, spec)?;
        let Some((w, _)) = terms.first() else { continue };
        let grade = grading.of_word(w);
        let degree = terms.iter().map(|(w, _)| w.len()).max().unwrap_or(0);
        if degree <= d {
            out.push(Rel { terms, grade, degree });
        }
    }
    Ok(out)
}

/// Row generators grouped by grade; with `targets`, only blocks of those grades are produced.
fn generate_rows<F: Field>(
    rels: &[Rel<F>],
    table: &WordTable,
    d: usize,
    targets: Option<&HashSet<Grade>>,
) -> HashMap<Grade, Vec<RowSpec>> {
    let per_rel: Vec<Vec<(Grade, RowSpec)>> = rels
        .par_iter()
        .enumerate()
        .map(|(ri, rel)| {
            let mut out = Vec::new();
            let rem = d - rel.degree;
            for len1 in 0..=rem {
                for (g1, ws1) in &table.by_len[len1] {
                    let mut partial = rel.grade.clone();
                    add_into(&mut partial, g1);
                    for len2 in 0..=rem - len1 {
                        let layer = &table.by_len[len2];
                        let mut emit = |total: Grade, ws2: &Vec<Word>| {
                            for w1 in ws1 {
                                for w2 in ws2 {
                                    out.push((
                                        total.clone(),
                                        RowSpec { rel: ri as u32, left: w1.clone(), right: w2.clone() },
                                    ));
                                }
                            }
                        };
                        match targets {
                            Some(ts) => {
                                for t in ts {
                                    if let Some(ws2) = layer.get(&sub(t, &partial)) {
                                        emit(t.clone(), ws2);
                                    }
                                }
                            }
                            None => {
                                for (g2, ws2) in layer {
                                    let mut total = partial.clone();
                                    add_into(&mut total, g2);
                                    emit(total, ws2);
                                }
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    let mut blocks: HashMap<Grade, Vec<RowSpec>> = HashMap::new();
    for v in per_rel {
        for (g, r) in v {
            blocks.entry(g).or_default().push(r);
        }
    }
    blocks
}

/// One graded block in echelon form.
struct Block<F: Field> {
    words: Vec<Word>,
    index: HashMap<Word, u32>,
    ech: Echelon<F>,
}

impl<F: Field> Block<F> {
    fn build<'a>(rels: &[Rel<F>], rows: &[RowSpec], extra: impl Iterator<Item = &'a Word>) -> Self {
        let mut set: HashSet<Word> = HashSet::new();
        for r in rows {
            for (w, _) in &rels[r.rel as usize].terms {
                set.insert(Word::concat3(&r.left, w, &r.right));
            }
        }
        set.extend(extra.cloned());
        let mut words: Vec<Word> = set.into_iter().collect();
        words.sort_unstable();
        let index: HashMap<Word, u32> = words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let mut sparse: Vec<SparseRow<F>> = rows
            .iter()
            .map(|r| {
                let mut row: SparseRow<F> = rels[r.rel as usize]
                    .terms
                    .iter()
                    .map(|(w, c)| (index[&Word::concat3(&r.left, w, &r.right)], c.clone()))
                    .collect();
                row.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                row
            })
            .collect();
        sparse.sort_by_key(|r| (r[0].0, r.len()));
        let mut ech = Echelon::new(words.len());
        for row in sparse {
            ech.insert(row);
        }
        Block { words, index, ech }
    }

    fn to_row(&self, terms: &[(Word, F)]) -> SparseRow<F> {
        let mut row: SparseRow<F> = terms.iter().map(|(w, c)| (self.index[w], c.clone())).collect();
        row.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        row
    }

    fn pivot_words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.ech.pivot_columns().map(|c| &self.words[c as usize])
    }
}

/// A computation that can run over any coefficient field.
trait Task: Sync {
    type Out: PartialEq + Send;
    fn run<F: Field>(&self, spec: &(dyn Fn(&Scalar) -> Result<F> + Sync)) -> Result<Self::Out>;
}

fn random_point(rng: &mut ChaCha8Rng, bound: i64) -> [Option<BigRational>; NSYM] {
    std::array::from_fn(|i| loop {
        let n: i64 = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let d: i64 = rng.gen_range(1..=bound);
        if i == Q && (n == d || n == -d) {
            continue;
        }
        break Some(BigRational::new(BigInt::from(n), BigInt::from(d)));
    })
}

fn at_points<F: Field, T: Task>(task: &T, cfg: &EngineConfig, bound: i64) -> Result<Option<T::Out>> {
    let mut first: Option<T::Out> = None;
    for rep in 0..cfg.repetitions.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(rep as u64));
        let mut attempt = 0;
        let out = loop {
            let point = FieldPoint::<F>::from_rationals(&random_point(&mut rng, bound));
            let res = point.and_then(|p| task.run(&|s: &Scalar| p.eval(s)));
            match res {
                Err(Error::BadSpecialization(_)) if attempt < 16 => attempt += 1,
                other => break other?,
            }
        };
        match &first {
            None => first = Some(out),
            Some(f) if *f != out => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(first)
}

fn execute<T: Task>(task: &T, cfg: &EngineConfig) -> Result<T::Out> {
    let sampled = match cfg.backend {
        Backend::Exact => None,
        Backend::Modular => at_points::<Fp, T>(task, cfg, 1_000_000)?,
        Backend::Rational => at_points::<BigRational, T>(task, cfg, 64)?,
    };
    match sampled {
        Some(out) => Ok(out),
        None => task.run::<Scalar>(&|s: &Scalar| Ok(s.clone())),
    }
}

struct Membership<'a> {
    ideal: &'a IdealSpec,
    grading: &'a Grading,
    table: &'a WordTable,
    targets: &'a [FreeElement],
    d: usize,
}

impl Task for Membership<'_> {
    type Out = Vec<bool>;

    fn run<F: Field>(&self, spec: &(dyn Fn(&Scalar) -> Result<F> + Sync)) -> Result<Vec<bool>> {
        let rels = relations(self.ideal, self.grading, self.d, spec)?;
        // component of each target in each grade
        let mut comps: HashMap<Grade, Vec<(usize, Vec<(Word, F)>)>> = HashMap::new();
        for (i, t) in self.targets.iter().enumerate() {
            let mut by_grade: HashMap<Grade, Vec<(Word, F)>> = HashMap::new();
            for (w, c) in specialize(t, spec)? {
                by_grade.entry(self.grading.of_word(&w)).or_default().push((w, c));
            }
            for (g, terms) in by_grade {
                comps.entry(g).or_default().push((i, terms));
            }
        }
        let grades: HashSet<Grade> = comps.keys().cloned().collect();
        let mut blocks = generate_rows(&rels, self.table, self.d, Some(&grades));
        let jobs: Vec<(Grade, Vec<RowSpec>, Vec<(usize, Vec<(Word, F)>)>)> = comps
            .into_iter()
            .map(|(g, c)| {
                let rows = blocks.remove(&g).unwrap_or_default();
                (g, rows, c)
            })
            .collect();
        let failures: Vec<usize> = jobs
            .par_iter()
            .flat_map_iter(|(_, rows, comps)| {
                let block = Block::build(&rels, rows, comps.iter().flat_map(|(_, t)| t.iter().map(|(w, _)| w)));
                comps
                    .iter()
                    .filter(|(_, t)| !block.ech.reduce(&block.to_row(t)).is_empty())
                    .map(|(i, _)| *i)
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut out = vec![true; self.targets.len()];
        for i in failures {
            out[i] = false;
        }
        Ok(out)
    }
}

struct PivotCounts<'a> {
    ideal: &'a IdealSpec,
    grading: &'a Grading,
    table: &'a WordTable,
    d: usize,
}

impl Task for PivotCounts<'_> {
    type Out = Vec<u64>;

    fn run<F: Field>(&self, spec: &(dyn Fn(&Scalar) -> Result<F> + Sync)) -> Result<Vec<u64>> {
        let rels = relations(self.ideal, self.grading, self.d, spec)?;
        let blocks: Vec<Vec<RowSpec>> = generate_rows(&rels, self.table, self.d, None).into_values().collect();
        let d = self.d;
        Ok(blocks
            .par_iter()
            .map(|rows| {
                let block = Block::build(&rels, rows, std::iter::empty());
                let mut counts = vec![0u64; d + 1];
                for w in block.pivot_words() {
                    counts[w.len()] += 1;
                }
                counts
            })
            .reduce(|| vec![0u64; d + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect()))
    }
}

struct PivotWords<'a> {
    ideal: &'a IdealSpec,
    grading: &'a Grading,
    table: &'a WordTable,
    d: usize,
}

impl Task for PivotWords<'_> {
    type Out = BTreeSet<Word>;

    fn run<F: Field>(&self, spec: &(dyn Fn(&Scalar) -> Result<F> + Sync)) -> Result<BTreeSet<Word>> {
        let rels = relations(self.ideal, self.grading, self.d, spec)?;
        let blocks: Vec<Vec<RowSpec>> = generate_rows(&rels, self.table, self.d, None).into_values().collect();
        Ok(blocks
            .par_iter()
            .flat_map_iter(|rows| {
                let block = Block::build(&rels, rows, std::iter::empty());
                block.pivot_words().cloned().collect::<Vec<_>>()
            })
            .collect())
    }
}

/// Prepared ideal: grading and word tables shared by every query at one bound.
pub struct Engine<'a> {
    ideal: &'a IdealSpec,
    cfg: EngineConfig,
    grading: Grading,
}

impl<'a> Engine<'a> {
    pub fn new(ideal: &'a IdealSpec, cfg: &EngineConfig) -> Self {
        let grading = Grading::detect(ideal.alphabet().len(), ideal.generators());
        Engine { ideal, cfg: cfg.clone(), grading }
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    fn letters(&self) -> usize {
        self.ideal.alphabet().len()
    }

    fn table(&self, d: usize) -> Result<WordTable> {
        let min = self.ideal.min_degree().min(d);
        let max_len = if self.ideal.is_empty() { 0 } else { d - min };
        check_cap(self.letters(), max_len, self.cfg.word_cap)?;
        Ok(WordTable::new(self.letters(), max_len, &self.grading))
    }

    /// Membership of each target in the span of `w1·g·w2` of length at most `d`.
    pub fn contains_all(&self, targets: &[FreeElement], d: usize) -> Result<Vec<bool>> {
        for t in targets {
            if **t.alphabet() != **self.ideal.alphabet() {
                return Err(Error::AlphabetMismatch);
            }
            if t.degree() > d {
                return Err(Error::BoundTooSmall { needed: t.degree(), bound: d });
            }
        }
        if targets.is_empty() {
            return Ok(Vec::new());
        }
        let table = self.table(d)?;
        let task = Membership { ideal: self.ideal, grading: &self.grading, table: &table, targets, d };
        execute(&task, &self.cfg)
    }

    pub fn contains(&self, x: &FreeElement, d: usize) -> Result<bool> {
        Ok(self.contains_all(std::slice::from_ref(x), d)?[0])
    }

    /// Dimensions of the filtration levels `0..=d` of the quotient truncated at `d`.
    pub fn filtered_dimension(&self, d: usize) -> Result<Vec<u64>> {
        check_cap(self.letters(), d, self.cfg.word_cap)?;
        let table = self.table(d)?;
        let pivots = if self.ideal.is_empty() {
            vec![0; d + 1]
        } else {
            execute(&PivotCounts { ideal: self.ideal, grading: &self.grading, table: &table, d }, &self.cfg)?
        };
        let g = self.letters() as u64;
        let mut out = Vec::with_capacity(d + 1);
        let (mut words, mut piv, mut p) = (0u64, 0u64, 1u64);
        for k in 0..=d {
            words += p;
            piv += pivots[k];
            out.push(words - piv);
            p = p.saturating_mul(g);
        }
        Ok(out)
    }

    /// Dimensions of the graded pieces `0..=d` (successive differences of the filtered ones).
    pub fn graded_dimension(&self, d: usize) -> Result<Vec<u64>> {
        let f = self.filtered_dimension(d)?;
        Ok((0..=d).map(|k| if k == 0 { f[0] } else { f[k] - f[k - 1] }).collect())
    }

    pub(super) fn pivot_words(&self, d: usize) -> Result<BTreeSet<Word>> {
        check_cap(self.letters(), d, self.cfg.word_cap)?;
        if self.ideal.is_empty() {
            return Ok(BTreeSet::new());
        }
        let table = self.table(d)?;
        execute(&PivotWords { ideal: self.ideal, grading: &self.grading, table: &table, d }, &self.cfg)
    }

    /// Exact reduction of `x` against the block(s) of its grade(s), over the rational-function field.
    pub(super) fn exact_remainder(&self, x: &FreeElement, d: usize) -> Result<FreeElement> {
        let table = self.table(d)?;
        let spec = |s: &Scalar| Ok(s.clone());
        let rels = relations(self.ideal, &self.grading, d, &spec)?;
        let mut by_grade: HashMap<Grade, Vec<(Word, Scalar)>> = HashMap::new();
        for (w, c) in x.terms() {
            by_grade.entry(self.grading.of_word(w)).or_default().push((w.clone(), c.clone()));
        }
        let grades: HashSet<Grade> = by_grade.keys().cloned().collect();
        let mut blocks = generate_rows(&rels, &table, d, Some(&grades));
        let mut out = FreeElement::zero(self.ideal.alphabet());
        for (g, terms) in by_grade {
            let rows = blocks.remove(&g).unwrap_or_default();
            let block = Block::build(&rels, &rows, terms.iter().map(|(w, _)| w));
            for (c, v) in block.ech.reduce(&block.to_row(&terms)) {
                out.add_term(block.words[c as usize].clone(), &v);
            }
        }
        Ok(out)
    }
}

pub fn ideal_membership(x: &FreeElement, ideal: &IdealSpec, d: usize, cfg: &EngineConfig) -> Result<bool> {
    Engine::new(ideal, cfg).contains(x, d)
}

pub fn filtered_dimension(ideal: &IdealSpec, d: usize, cfg: &EngineConfig) -> Result<Vec<u64>> {
    Engine::new(ideal, cfg).filtered_dimension(d)
}

pub fn graded_dimension(ideal: &IdealSpec, d: usize, cfg: &EngineConfig) -> Result<Vec<u64>> {
    Engine::new(ideal, cfg).graded_dimension(d)
}
