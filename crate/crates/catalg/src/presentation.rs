//! Quiver presentations: generator labels for the three skeletal families,
//! their relation families, free-category paths, congruence closure by
//! union-find over one-step rewrites, and the verification that the
//! congruence classes biject with the hom-sets.

use crate::category::{CategoryKind, FiniteCategory};
use crate::invariants::irreducible_morphisms;
use crate::maps::{Morphism, SubsetOfN};
use crate::{compose, Error, Result};
use std::collections::HashMap;
use std::fmt;

pub use crate::delta::{delta_iso, FunctorPair, StrictMap};

/// `i <|_A j`: i < j and every x with i < x <= j lies in A. This is the
/// admissibility condition for the order-decreasing generators.
pub fn lt_adjacent(a: &SubsetOfN, i: usize, j: usize) -> bool {
    i >= 1 && i < j && (i + 1..=j).all(|x| a.contains(x))
}

/// Which presented category a quiver belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresentationFamily {
    Seo,
    Ec,
    Ef,
}

impl PresentationFamily {
    pub fn category_kind(self) -> CategoryKind {
        match self {
            PresentationFamily::Seo => CategoryKind::Seo,
            PresentationFamily::Ec => CategoryKind::Ec,
            PresentationFamily::Ef => CategoryKind::Ef,
        }
    }

    pub fn name(self) -> &'static str {
        self.category_kind().name()
    }
}

/// One arrow of a presentation quiver.
///
/// Each label is a named irreducible morphism: the simplicial `d_i^k`
/// collapsing i and i+1 in the chain `[k+1]`, the Catalan `d_j^A` sending j
/// to j-1, and the order-decreasing `d_{i,j}^A` sending j to `i <|_A j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorLabel {
    Simplicial { dom: SubsetOfN, i: usize },
    Catalan { dom: SubsetOfN, j: usize },
    Decreasing { dom: SubsetOfN, i: usize, j: usize },
}

impl GeneratorLabel {
    pub fn source(&self) -> &SubsetOfN {
        match self {
            GeneratorLabel::Simplicial { dom, .. }
            | GeneratorLabel::Catalan { dom, .. }
            | GeneratorLabel::Decreasing { dom, .. } => dom,
        }
    }

    pub fn is_valid(&self) -> bool {
        match self {
            GeneratorLabel::Simplicial { dom, i } => {
                let m = dom.len();
                m >= 2 && dom.elements().iter().copied().eq(1..=m) && *i >= 1 && *i < m
            }
            GeneratorLabel::Catalan { dom, j } => *j >= 2 && dom.contains(*j),
            GeneratorLabel::Decreasing { dom, i, j } => {
                dom.contains(*j) && lt_adjacent(dom, *i, *j)
            }
        }
    }

    pub fn target(&self) -> SubsetOfN {
        debug_assert!(self.is_valid(), "target of invalid label {self}");
        match self {
            GeneratorLabel::Simplicial { dom, .. } => SubsetOfN::initial(dom.n(), dom.len() - 1),
            GeneratorLabel::Catalan { dom, j } => dom.without(*j).with(*j - 1),
            GeneratorLabel::Decreasing { dom, i, j } => dom.without(*j).with(*i),
        }
    }

    pub fn morphism(&self) -> Morphism {
        debug_assert!(self.is_valid(), "morphism of invalid label {self}");
        let (dom, values): (&SubsetOfN, Vec<usize>) = match self {
            GeneratorLabel::Simplicial { dom, i } => (
                dom,
                dom.elements()
                    .iter()
                    .map(|&x| if x <= *i { x } else { x - 1 })
                    .collect(),
            ),
            GeneratorLabel::Catalan { dom, j } => (
                dom,
                dom.elements()
                    .iter()
                    .map(|&x| if x == *j { *j - 1 } else { x })
                    .collect(),
            ),
            GeneratorLabel::Decreasing { dom, i, j } => (
                dom,
                dom.elements()
                    .iter()
                    .map(|&x| if x == *j { *i } else { x })
                    .collect(),
            ),
        };
        Morphism::new(dom.clone(), self.target(), values).expect("valid label evaluates")
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::Simplicial { dom, i } => write!(f, "d_{}^{}", i, dom.len() - 1),
            GeneratorLabel::Catalan { dom, j } => write!(f, "d_{j}^{dom}"),
            GeneratorLabel::Decreasing { dom, i, j } => write!(f, "d_{{{i},{j}}}^{dom}"),
        }
    }
}

/// The quiver arrows of the family at size n, as labels; one per
/// irreducible morphism.
pub fn generators(family: PresentationFamily, n: usize) -> Vec<GeneratorLabel> {
    let mut out = Vec::new();
    match family {
        PresentationFamily::Seo => {
            for k in 1..n {
                for i in 1..=k {
                    out.push(GeneratorLabel::Simplicial {
                        dom: SubsetOfN::initial(n, k + 1),
                        i,
                    });
                }
            }
        }
        PresentationFamily::Ec => {
            for a in SubsetOfN::all_subsets(n) {
                for &j in a.elements() {
                    if j >= 2 {
                        out.push(GeneratorLabel::Catalan { dom: a.clone(), j });
                    }
                }
            }
        }
        PresentationFamily::Ef => {
            for a in SubsetOfN::all_subsets(n) {
                for &j in a.elements() {
                    for i in 1..j {
                        if lt_adjacent(&a, i, j) {
                            out.push(GeneratorLabel::Decreasing {
                                dom: a.clone(),
                                i,
                                j,
                            });
                        }
                    }
                }
            }
        }
    }
    debug_assert!(out.iter().all(GeneratorLabel::is_valid));
    out
}

/// A composable word in the free category over a quiver. Labels are stored
/// in application order (index 0 acts first); the empty word is the identity
/// path at its object.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    source: SubsetOfN,
    target: SubsetOfN,
    labels: Vec<GeneratorLabel>,
}

impl Path {
    pub fn identity(object: &SubsetOfN) -> Self {
        Path {
            source: object.clone(),
            target: object.clone(),
            labels: Vec::new(),
        }
    }

    /// Builds a path from labels in application order, checking that each
    /// label is valid and consecutive endpoints match.
    pub fn from_applied(source: SubsetOfN, labels: Vec<GeneratorLabel>) -> Result<Self> {
        let mut current = source.clone();
        for label in &labels {
            if !label.is_valid() {
                return Err(Error::Invalid(format!("label {label} is malformed")));
            }
            if label.source() != &current {
                return Err(Error::Invalid(format!(
                    "label {label} expects source {}, path is at {current}",
                    label.source()
                )));
            }
            current = label.target();
        }
        Ok(Path {
            source,
            target: current,
            labels,
        })
    }

    pub fn source(&self) -> &SubsetOfN {
        &self.source
    }

    pub fn target(&self) -> &SubsetOfN {
        &self.target
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The morphism the path represents.
    pub fn evaluate(&self) -> Morphism {
        let mut acc = Morphism::identity(&self.source);
        for label in &self.labels {
            acc = compose(&label.morphism(), &acc).expect("path is composable");
        }
        acc
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.labels.is_empty() {
            return write!(f, "id_{}", self.source);
        }
        // Conventional right-to-left composition order.
        for (k, label) in self.labels.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{label}")?;
        }
        Ok(())
    }
}

/// Which relation family an instance was generated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationTag {
    Simplicial,
    Pc1,
    Pc2,
    Pf1,
    Pf2,
    Pf3,
    Pf4,
    Pf5,
    Pf6,
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RelationTag::Simplicial => "simplicial",
            RelationTag::Pc1 => "PC1",
            RelationTag::Pc2 => "PC2",
            RelationTag::Pf1 => "PF1",
            RelationTag::Pf2 => "PF2",
            RelationTag::Pf3 => "PF3",
            RelationTag::Pf4 => "PF4",
            RelationTag::Pf5 => "PF5",
            RelationTag::Pf6 => "PF6",
        };
        f.write_str(name)
    }
}

/// An equation between two parallel paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub tag: RelationTag,
    pub left: Path,
    pub right: Path,
}

impl Relation {
    pub fn new(tag: RelationTag, left: Path, right: Path) -> Result<Self> {
        if left.source() != right.source() || left.target() != right.target() {
            return Err(Error::Invalid(format!(
                "{tag}: sides {left} and {right} do not share endpoints"
            )));
        }
        Ok(Relation { tag, left, right })
    }

    /// Both sides evaluate to the same morphism.
    pub fn is_sound(&self) -> bool {
        self.left.evaluate() == self.right.evaluate()
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} = {}", self.tag, self.left, self.right)
    }
}

fn catalan_word(start: &SubsetOfN, indices: &[usize]) -> Option<Path> {
    let mut labels = Vec::with_capacity(indices.len());
    let mut current = start.clone();
    for &j in indices {
        let label = GeneratorLabel::Catalan { dom: current, j };
        if !label.is_valid() {
            return None;
        }
        current = label.target();
        labels.push(label);
    }
    Some(Path::from_applied(start.clone(), labels).expect("validated step by step"))
}

fn decreasing_word(start: &SubsetOfN, pairs: &[(usize, usize)]) -> Option<Path> {
    let mut labels = Vec::with_capacity(pairs.len());
    let mut current = start.clone();
    for &(i, j) in pairs {
        let label = GeneratorLabel::Decreasing { dom: current, i, j };
        if !label.is_valid() {
            return None;
        }
        current = label.target();
        labels.push(label);
    }
    Some(Path::from_applied(start.clone(), labels).expect("validated step by step"))
}

fn simplicial_word(n: usize, start_size: usize, indices: &[usize]) -> Option<Path> {
    if start_size > n {
        return None;
    }
    let start = SubsetOfN::initial(n, start_size);
    let mut labels = Vec::with_capacity(indices.len());
    let mut size = start_size;
    for &i in indices {
        if size < 2 {
            return None;
        }
        let label = GeneratorLabel::Simplicial {
            dom: SubsetOfN::initial(n, size),
            i,
        };
        if !label.is_valid() {
            return None;
        }
        size -= 1;
        labels.push(label);
    }
    Some(Path::from_applied(start, labels).expect("validated step by step"))
}

/// All instances of the family's defining relations at size n, plus
/// diagnostics for any instantiation whose stated side conditions produced
/// a malformed word (none are expected; the check guards the generation).
pub fn relations_with_diagnostics(
    family: PresentationFamily,
    n: usize,
) -> (Vec<Relation>, Vec<String>) {
    let mut out = Vec::new();
    let mut diagnostics = Vec::new();
    let mut emit =
        |tag: RelationTag, left: Option<Path>, right: Option<Path>, what: &str| match (left, right)
        {
            (Some(left), Some(right)) => match Relation::new(tag, left, right) {
                Ok(relation) => out.push(relation),
                Err(e) => diagnostics.push(format!("{tag} {what}: {e}")),
            },
            _ => diagnostics.push(format!("{tag} {what}: malformed side")),
        };
    match family {
        PresentationFamily::Seo => {
            // d_i^{k-1} d_j^k = d_{j-1}^{k-1} d_i^k for 2 <= k <= n-1, i < j <= k.
            for k in 2..n {
                for j in 2..=k {
                    for i in 1..j {
                        emit(
                            RelationTag::Simplicial,
                            simplicial_word(n, k + 1, &[j, i]),
                            simplicial_word(n, k + 1, &[i, j - 1]),
                            &format!("k={k} i={i} j={j}"),
                        );
                    }
                }
            }
        }
        PresentationFamily::Ec => {
            for a in SubsetOfN::all_subsets(n) {
                for &i in a.elements() {
                    if i < 2 {
                        continue;
                    }
                    for &j in a.elements() {
                        if j > i + 1 {
                            // PC1: d_i d_j = d_j d_i.
                            emit(
                                RelationTag::Pc1,
                                catalan_word(&a, &[j, i]),
                                catalan_word(&a, &[i, j]),
                                &format!("A={a} i={i} j={j}"),
                            );
                        } else if j == i + 1 {
                            // PC2: d_i d_{i+1} = d_i d_{i+1} d_i.
                            emit(
                                RelationTag::Pc2,
                                catalan_word(&a, &[i + 1, i]),
                                catalan_word(&a, &[i, i + 1, i]),
                                &format!("A={a} i={i}"),
                            );
                        }
                    }
                }
            }
        }
        PresentationFamily::Ef => {
            let subsets = SubsetOfN::all_subsets(n);
            // PF1-PF5 rewrite a term d_{i,j} d_{s,t} with j < t; the case
            // depends on where s sits relative to i and j and on whether s
            // lies in A.
            for a in &subsets {
                for &t in a.elements() {
                    for s in 1..t {
                        if !lt_adjacent(a, s, t) {
                            continue;
                        }
                        let a_st = a.without(t).with(s);
                        for &j in a.elements() {
                            if j >= t {
                                continue;
                            }
                            for i in 1..j {
                                if !lt_adjacent(&a_st, i, j) {
                                    continue;
                                }
                                let lhs = decreasing_word(a, &[(s, t), (i, j)]);
                                let what = format!("A={a} i={i} j={j} s={s} t={t}");
                                if s > j {
                                    emit(
                                        RelationTag::Pf1,
                                        lhs,
                                        decreasing_word(a, &[(i, j), (s, t)]),
                                        &what,
                                    );
                                } else if s == j {
                                    emit(
                                        RelationTag::Pf2,
                                        lhs,
                                        decreasing_word(a, &[(i, j), (j, t), (i, j)]),
                                        &what,
                                    );
                                } else if s <= i {
                                    emit(
                                        RelationTag::Pf4,
                                        lhs,
                                        decreasing_word(a, &[(i, j), (j, t), (s, j)]),
                                        &what,
                                    );
                                } else if a.contains(s) {
                                    emit(
                                        RelationTag::Pf3,
                                        lhs,
                                        decreasing_word(a, &[(i, j), (j, t), (s, j)]),
                                        &what,
                                    );
                                } else {
                                    emit(
                                        RelationTag::Pf5,
                                        lhs,
                                        decreasing_word(a, &[(s, j), (i, s), (j, t), (s, j)]),
                                        &what,
                                    );
                                }
                            }
                        }
                    }
                }
            }
            // PF6: d_{i,j} d_{s,i} d_{i,t} = d_{s,j} d_{j,t} d_{i,j} for
            // s < i < j < t with t, j in A and i not in A.
            for a in &subsets {
                for &t in a.elements() {
                    for i in 1..t {
                        if a.contains(i) || !lt_adjacent(a, i, t) {
                            continue;
                        }
                        for &j in a.elements() {
                            if j <= i || j >= t {
                                continue;
                            }
                            for s in 1..i {
                                if !lt_adjacent(&a.without(t).with(i), s, i) {
                                    continue;
                                }
                                emit(
                                    RelationTag::Pf6,
                                    decreasing_word(a, &[(i, t), (s, i), (i, j)]),
                                    decreasing_word(a, &[(i, j), (j, t), (s, j)]),
                                    &format!("A={a} i={i} j={j} s={s} t={t}"),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    (out, diagnostics)
}

pub fn relations(family: PresentationFamily, n: usize) -> Vec<Relation> {
    relations_with_diagnostics(family, n).0
}

/// A presentation quiver: the generating labels of a family at size n,
/// together with the object list of its category.
#[derive(Debug, Clone)]
pub struct PresentationQuiver {
    family: PresentationFamily,
    n: usize,
    generators: Vec<GeneratorLabel>,
}

impl PresentationQuiver {
    pub fn new(family: PresentationFamily, n: usize) -> Self {
        PresentationQuiver {
            family,
            n,
            generators: generators(family, n),
        }
    }

    pub fn family(&self) -> PresentationFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[GeneratorLabel] {
        &self.generators
    }

    pub fn objects(&self) -> Vec<SubsetOfN> {
        match self.family {
            PresentationFamily::Seo => (0..=self.n)
                .map(|k| SubsetOfN::initial(self.n, k))
                .collect(),
            PresentationFamily::Ec | PresentationFamily::Ef => SubsetOfN::all_subsets(self.n),
        }
    }

    /// Every generator strictly drops this grading, which bounds path
    /// lengths and prunes the search.
    fn grade(&self, object: &SubsetOfN) -> usize {
        match self.family {
            PresentationFamily::Seo => object.len(),
            PresentationFamily::Ec | PresentationFamily::Ef => object.element_sum(),
        }
    }

    fn arrows_by_source(&self) -> HashMap<SubsetOfN, Vec<u32>> {
        let mut map: HashMap<SubsetOfN, Vec<u32>> = HashMap::new();
        for (idx, label) in self.generators.iter().enumerate() {
            map.entry(label.source().clone())
                .or_default()
                .push(idx as u32);
        }
        map
    }
}

type Word = Vec<u32>;

fn enumerate_words(
    quiver: &PresentationQuiver,
    arrows_by_source: &HashMap<SubsetOfN, Vec<u32>>,
    source: &SubsetOfN,
    target: &SubsetOfN,
    max_paths: usize,
) -> Result<Vec<Word>> {
    let mut out: Vec<Word> = Vec::new();
    let mut word: Word = Vec::new();
    dfs(
        quiver,
        arrows_by_source,
        source,
        target,
        max_paths,
        &mut word,
        &mut out,
    )?;
    return Ok(out);

    fn dfs(
        quiver: &PresentationQuiver,
        arrows_by_source: &HashMap<SubsetOfN, Vec<u32>>,
        at: &SubsetOfN,
        target: &SubsetOfN,
        max_paths: usize,
        word: &mut Word,
        out: &mut Vec<Word>,
    ) -> Result<()> {
        if at == target {
            if out.len() >= max_paths {
                return Err(Error::ResourceLimit {
                    what: "paths in one hom-pair",
                    requested: max_paths + 1,
                    limit: max_paths,
                });
            }
            // The grading is strict, so no extension returns to the target.
            out.push(word.clone());
            return Ok(());
        }
        if quiver.grade(at) <= quiver.grade(target) {
            return Ok(());
        }
        if let Some(arrows) = arrows_by_source.get(at) {
            for &idx in arrows {
                let label = &quiver.generators()[idx as usize];
                word.push(idx);
                let next = label.target();
                dfs(
                    quiver,
                    arrows_by_source,
                    &next,
                    target,
                    max_paths,
                    word,
                    out,
                )?;
                word.pop();
            }
        }
        Ok(())
    }
}

fn word_to_path(quiver: &PresentationQuiver, source: &SubsetOfN, word: &Word) -> Path {
    let labels = word
        .iter()
        .map(|&idx| quiver.generators()[idx as usize].clone())
        .collect();
    Path::from_applied(source.clone(), labels).expect("enumerated words are composable")
}

/// All paths from `source` to `target` in the free category over the
/// quiver, in depth-first generation order; the identity path is included
/// when the endpoints coincide.
pub fn enumerate_paths(
    quiver: &PresentationQuiver,
    source: &SubsetOfN,
    target: &SubsetOfN,
    max_paths: usize,
) -> Result<Vec<Path>> {
    let arrows = quiver.arrows_by_source();
    let words = enumerate_words(quiver, &arrows, source, target, max_paths)?;
    Ok(words
        .iter()
        .map(|w| word_to_path(quiver, source, w))
        .collect())
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(count: usize) -> Self {
        UnionFind {
            parent: (0..count).collect(),
            size: vec![1; count],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// One congruence class of parallel paths.
#[derive(Debug, Clone)]
pub struct PathClass {
    pub members: Vec<Path>,
    pub evaluation: Morphism,
    /// Every member evaluates to `evaluation`; guaranteed when the relation
    /// set is sound.
    pub consistent: bool,
}

#[derive(Debug, Clone)]
pub struct HomPairClasses {
    pub source: SubsetOfN,
    pub target: SubsetOfN,
    pub path_count: usize,
    pub classes: Vec<PathClass>,
}

/// The congruence generated by a relation set, materialized per hom-pair.
#[derive(Debug, Clone)]
pub struct CongruenceResult {
    pub sound: bool,
    pub unsound: Vec<Relation>,
    pub pairs: Vec<HomPairClasses>,
}

struct CompiledRelations {
    // (pattern, replacement) pairs indexed by first symbol, both directions.
    by_first: HashMap<u32, Vec<(Word, Word)>>,
}

fn compile_relations(
    quiver: &PresentationQuiver,
    relations: &[Relation],
) -> Result<CompiledRelations> {
    let index: HashMap<&GeneratorLabel, u32> = quiver
        .generators()
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    let word_of = |path: &Path| -> Result<Word> {
        path.labels()
            .iter()
            .map(|label| {
                index.get(label).copied().ok_or_else(|| {
                    Error::Invalid(format!("relation uses {label}, not a quiver generator"))
                })
            })
            .collect()
    };
    let mut by_first: HashMap<u32, Vec<(Word, Word)>> = HashMap::new();
    for relation in relations {
        let left = word_of(&relation.left)?;
        let right = word_of(&relation.right)?;
        // Relation sides are nonempty words, so indexing by the first
        // applied symbol is total.
        by_first
            .entry(left[0])
            .or_default()
            .push((left.clone(), right.clone()));
        by_first.entry(right[0]).or_default().push((right, left));
    }
    Ok(CompiledRelations { by_first })
}

fn close_hom_pair(
    quiver: &PresentationQuiver,
    compiled: &CompiledRelations,
    source: &SubsetOfN,
    target: &SubsetOfN,
    words: Vec<Word>,
) -> HomPairClasses {
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut uf = UnionFind::new(words.len());
    let mut rewritten: Word = Vec::new();
    for (wi, w) in words.iter().enumerate() {
        for pos in 0..w.len() {
            let Some(candidates) = compiled.by_first.get(&w[pos]) else {
                continue;
            };
            for (pattern, replacement) in candidates {
                if pos + pattern.len() > w.len() || w[pos..pos + pattern.len()] != pattern[..] {
                    continue;
                }
                rewritten.clear();
                rewritten.extend_from_slice(&w[..pos]);
                rewritten.extend_from_slice(replacement);
                rewritten.extend_from_slice(&w[pos + pattern.len()..]);
                let other = *index
                    .get(&rewritten)
                    .expect("rewriting preserves endpoints, so the result was enumerated");
                uf.union(wi, other);
            }
        }
    }
    let mut grouped: HashMap<usize, Vec<usize>> = HashMap::new();
    for wi in 0..words.len() {
        grouped.entry(uf.find(wi)).or_default().push(wi);
    }
    let mut ordered: Vec<Vec<usize>> = grouped.into_values().collect();
    ordered.sort_by_key(|members| members[0]);
    let classes = ordered
        .into_iter()
        .map(|members| {
            let paths: Vec<Path> = members
                .iter()
                .map(|&wi| word_to_path(quiver, source, &words[wi]))
                .collect();
            let evaluation = paths[0].evaluate();
            let consistent = paths.iter().all(|p| p.evaluate() == evaluation);
            PathClass {
                members: paths,
                evaluation,
                consistent,
            }
        })
        .collect();
    HomPairClasses {
        source: source.clone(),
        target: target.clone(),
        path_count: words.len(),
        classes,
    }
}

/// Partitions every hom-pair's path set into classes of the least
/// congruence containing the relations: union-find over all one-step
/// subword rewrites, in both directions.
pub fn congruence_closure(
    quiver: &PresentationQuiver,
    relations: &[Relation],
    max_paths: usize,
) -> Result<CongruenceResult> {
    let unsound: Vec<Relation> = relations
        .iter()
        .filter(|r| !r.is_sound())
        .cloned()
        .collect();
    let compiled = compile_relations(quiver, relations)?;
    let arrows = quiver.arrows_by_source();
    let objects = quiver.objects();
    let mut pairs = Vec::new();
    for source in &objects {
        for target in &objects {
            let words = enumerate_words(quiver, &arrows, source, target, max_paths)?;
            if words.is_empty() {
                continue;
            }
            pairs.push(close_hom_pair(quiver, &compiled, source, target, words));
        }
    }
    Ok(CongruenceResult {
        sound: unsound.is_empty(),
        unsound,
        pairs,
    })
}

/// Per hom-pair verdict of the presentation check.
#[derive(Debug, Clone)]
pub struct HomPairVerdict {
    pub source: SubsetOfN,
    pub target: SubsetOfN,
    pub path_count: usize,
    pub class_count: usize,
    pub hom_size: usize,
    pub evaluation_injective: bool,
}

impl HomPairVerdict {
    pub fn passed(&self) -> bool {
        self.class_count == self.hom_size && self.evaluation_injective
    }
}

/// Concrete evidence attached to a failed verification.
#[derive(Debug, Clone)]
pub enum FailureWitness {
    /// A relation whose two sides evaluate differently.
    UnsoundRelation { relation: Relation },
    /// Two inequivalent paths representing the same morphism.
    InequivalentPaths {
        source: SubsetOfN,
        target: SubsetOfN,
        left: Path,
        right: Path,
        evaluation: Morphism,
    },
    /// A morphism not represented by any path class.
    MissingMorphism { morphism: Morphism },
    /// The quiver labels do not match the irreducible morphisms.
    GeneratorMismatch { detail: String },
}

impl fmt::Display for FailureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureWitness::UnsoundRelation { relation } => {
                write!(f, "unsound relation {relation}")
            }
            FailureWitness::InequivalentPaths {
                source,
                target,
                left,
                right,
                evaluation,
            } => write!(
                f,
                "hom-pair ({source}, {target}): inequivalent paths {left} and {right} \
                 both evaluate to {evaluation}"
            ),
            FailureWitness::MissingMorphism { morphism } => {
                write!(f, "no path class evaluates to {morphism}")
            }
            FailureWitness::GeneratorMismatch { detail } => {
                write!(f, "generator mismatch: {detail}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub passed: bool,
    pub generator_count: usize,
    pub relation_count: usize,
    pub pairs: Vec<HomPairVerdict>,
    pub failures: Vec<FailureWitness>,
}

/// Checks that (Q, R) presents the category: the relations are sound, the
/// quiver is exactly the irreducibles, and on every hom-pair the congruence
/// classes biject with the hom-set under evaluation.
pub fn verify_presentation(
    cat: &FiniteCategory,
    quiver: &PresentationQuiver,
    relations: &[Relation],
    max_paths: usize,
) -> Result<VerificationReport> {
    assert_eq!(
        cat.kind(),
        quiver.family().category_kind(),
        "category and quiver families differ"
    );
    assert_eq!(cat.n(), quiver.n(), "category and quiver sizes differ");
    let mut failures = Vec::new();

    let mut label_morphisms: Vec<Morphism> = quiver
        .generators()
        .iter()
        .map(GeneratorLabel::morphism)
        .collect();
    label_morphisms.sort_by_key(|m| m.to_string());
    let mut irreducibles: Vec<Morphism> = irreducible_morphisms(cat)
        .arrows
        .into_iter()
        .map(|a| a.morphism)
        .collect();
    irreducibles.sort_by_key(|m| m.to_string());
    if label_morphisms != irreducibles {
        failures.push(FailureWitness::GeneratorMismatch {
            detail: format!(
                "{} labels vs {} irreducible morphisms",
                label_morphisms.len(),
                irreducibles.len()
            ),
        });
    }

    let closure = congruence_closure(quiver, relations, max_paths)?;
    for relation in &closure.unsound {
        failures.push(FailureWitness::UnsoundRelation {
            relation: relation.clone(),
        });
    }

    let by_endpoints: HashMap<(&SubsetOfN, &SubsetOfN), &HomPairClasses> = closure
        .pairs
        .iter()
        .map(|pair| ((&pair.source, &pair.target), pair))
        .collect();
    let objects = quiver.objects();
    let mut pairs = Vec::new();
    for source in &objects {
        for target in &objects {
            let hom = cat.hom_between(source, target);
            let pair = by_endpoints.get(&(source, target)).copied();
            let (path_count, class_count) = pair
                .map(|p| (p.path_count, p.classes.len()))
                .unwrap_or((0, 0));
            if hom.is_empty() && path_count == 0 {
                continue;
            }
            let mut evaluation_injective = true;
            match pair {
                Some(pair) => {
                    let mut by_eval: HashMap<&Morphism, usize> = HashMap::new();
                    for (ci, class) in pair.classes.iter().enumerate() {
                        if let Some(&other) = by_eval.get(&class.evaluation) {
                            evaluation_injective = false;
                            failures.push(FailureWitness::InequivalentPaths {
                                source: source.clone(),
                                target: target.clone(),
                                left: pair.classes[other].members[0].clone(),
                                right: class.members[0].clone(),
                                evaluation: class.evaluation.clone(),
                            });
                        } else {
                            by_eval.insert(&class.evaluation, ci);
                        }
                    }
                    for morphism in hom {
                        if !by_eval.contains_key(morphism) {
                            failures.push(FailureWitness::MissingMorphism {
                                morphism: morphism.clone(),
                            });
                        }
                    }
                }
                None => {
                    for morphism in hom {
                        failures.push(FailureWitness::MissingMorphism {
                            morphism: morphism.clone(),
                        });
                    }
                }
            }
            pairs.push(HomPairVerdict {
                source: source.clone(),
                target: target.clone(),
                path_count,
                class_count,
                hom_size: hom.len(),
                evaluation_injective,
            });
        }
    }

    let passed = failures.is_empty() && pairs.iter().all(HomPairVerdict::passed);
    Ok(VerificationReport {
        passed,
        generator_count: quiver.generators().len(),
        relation_count: relations.len(),
        pairs,
        failures,
    })
}

/// Writes a morphism of the category as a path of irreducibles: repeatedly
/// split off the rightmost generator at the minimal moved element (the
/// minimal collapsed pair for the skeleton). Identities give the empty path.
pub fn factorize(cat: &FiniteCategory, f: &Morphism) -> Path {
    let mut labels = Vec::new();
    let mut current = f.clone();
    while !current.is_identity() {
        let label = match cat.kind() {
            CategoryKind::Seo => {
                let dom = current.dom().clone();
                let i = (1..dom.len())
                    .find(|&x| current.apply(x) == current.apply(x + 1))
                    .expect("a non-identity onto map between chains collapses some pair");
                GeneratorLabel::Simplicial { dom, i }
            }
            CategoryKind::Ec => {
                let j = minimal_moved(&current);
                GeneratorLabel::Catalan {
                    dom: current.dom().clone(),
                    j,
                }
            }
            CategoryKind::Ef => {
                let dom = current.dom().clone();
                let j = minimal_moved(&current);
                let image = current.apply(j);
                // The landing spot must be adjacent below j inside A, at
                // least f(j), and may only be a member of A when it equals
                // f(j); the least such i always exists.
                let mut run_bottom = j - 1;
                while run_bottom > 1 && dom.contains(run_bottom) {
                    run_bottom -= 1;
                }
                let i = image.max(run_bottom);
                GeneratorLabel::Decreasing { dom, i, j }
            }
            CategoryKind::Eo => panic!("factorize expects SEO, EC or EF"),
        };
        debug_assert!(label.is_valid(), "split produced invalid {label}");
        current = split_off(&current, &label);
        labels.push(label);
    }
    Path::from_applied(f.dom().clone(), labels).expect("splits compose back to f")
}

fn minimal_moved(f: &Morphism) -> usize {
    f.dom()
        .elements()
        .iter()
        .copied()
        .find(|&x| f.apply(x) < x)
        .expect("non-identity order-decreasing map moves some element down")
}

/// The residual g with f = g . d for the chosen rightmost generator d.
fn split_off(f: &Morphism, label: &GeneratorLabel) -> Morphism {
    let mid = label.target();
    let values: Vec<usize> = match label {
        GeneratorLabel::Simplicial { i, .. } => mid
            .elements()
            .iter()
            .map(|&z| if z <= *i { f.apply(z) } else { f.apply(z + 1) })
            .collect(),
        GeneratorLabel::Catalan { j, .. } => mid
            .elements()
            .iter()
            .map(|&z| if z == *j - 1 { f.apply(*j) } else { f.apply(z) })
            .collect(),
        GeneratorLabel::Decreasing { i, j, .. } => mid
            .elements()
            .iter()
            .map(|&z| if z == *i { f.apply(*j) } else { f.apply(z) })
            .collect(),
    };
    Morphism::new(mid, f.cod().clone(), values).expect("residual is a morphism")
}
