//! Algebra invariants of a locally trivial category: radical filtration by
//! composition depth, quiver of irreducibles, Cartan matrix, blocks.

use crate::category::FiniteCategory;
use crate::compose;
use crate::maps::Morphism;
use crate::matrix::ExactMatrix;
use num_bigint::BigInt;
use std::collections::HashMap;

/// For every morphism, the maximum number of non-isomorphisms it factors
/// through; isomorphisms have depth 0. The k-th radical power is spanned by
/// the morphisms of depth at least k.
#[derive(Debug, Clone)]
pub struct DepthTable {
    depths: HashMap<Morphism, usize>,
    max_depth: usize,
}

impl DepthTable {
    pub fn depth(&self, f: &Morphism) -> usize {
        *self
            .depths
            .get(f)
            .unwrap_or_else(|| panic!("morphism {f} is not in the category"))
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Morphism, usize)> {
        self.depths.iter().map(|(m, &d)| (m, d))
    }
}

/// Longest-factorization DP.
///
/// Objects come sorted so that every non-isomorphism strictly descends the
/// order (cardinality drops, or stays equal with a lexicographically smaller
/// target), so processing source objects in ascending index order sees the
/// depth of every tail factor before it is needed.
pub fn composition_depth(cat: &FiniteCategory) -> DepthTable {
    let count = cat.object_count();
    let mut depths: HashMap<Morphism, usize> = HashMap::new();
    let mut max_depth = 0;
    for a in 0..count {
        let mut pending: HashMap<Morphism, usize> = HashMap::new();
        for x in 0..count {
            for u in cat.hom(a, x) {
                if cat.is_iso(u) {
                    continue;
                }
                for b in 0..count {
                    for h in cat.hom(x, b) {
                        let m = compose(h, u).expect("endpoints match by construction");
                        let candidate = 1 + depths
                            .get(h)
                            .copied()
                            .unwrap_or_else(|| panic!("tail factor {h} not yet processed"));
                        let entry = pending.entry(m).or_insert(0);
                        if candidate > *entry {
                            *entry = candidate;
                        }
                    }
                }
            }
        }
        for b in 0..count {
            for m in cat.hom(a, b) {
                let depth = if cat.is_iso(m) {
                    0
                } else {
                    // Factoring as identity . m gives at least 1.
                    pending.get(m).copied().unwrap_or(1).max(1)
                };
                max_depth = max_depth.max(depth);
                depths.insert(m.clone(), depth);
            }
        }
    }
    DepthTable { depths, max_depth }
}

/// Dimension of the k-th radical power: the number of morphisms of depth at
/// least k. `k = 0` gives the dimension of the whole algebra.
pub fn radical_dimension(cat: &FiniteCategory, k: usize) -> BigInt {
    let table = composition_depth(cat);
    radical_dimension_from(&table, k)
}

pub fn radical_dimension_from(table: &DepthTable, k: usize) -> BigInt {
    let count = table.iter().filter(|&(_, d)| d >= k).count();
    BigInt::from(count)
}

/// Minimal k with vanishing k-th radical power: one more than the maximal
/// composition depth.
pub fn loewy_length(cat: &FiniteCategory) -> usize {
    composition_depth(cat).max_depth() + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    pub morphism: Morphism,
}

/// The quiver of the category algebra: one vertex per object, one arrow per
/// irreducible morphism.
#[derive(Debug, Clone)]
pub struct Quiver {
    pub object_count: usize,
    pub arrows: Vec<QuiverArrow>,
}

impl Quiver {
    pub fn arrows_between(&self, source: usize, target: usize) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == source && a.target == target)
            .count()
    }
}

/// Irreducible morphisms are exactly those of composition depth 1: inside
/// the radical but not its square.
pub fn irreducible_morphisms(cat: &FiniteCategory) -> Quiver {
    let table = composition_depth(cat);
    quiver_from_depths(cat, &table)
}

pub fn quiver_from_depths(cat: &FiniteCategory, table: &DepthTable) -> Quiver {
    let mut arrows = Vec::new();
    for a in 0..cat.object_count() {
        for b in 0..cat.object_count() {
            for m in cat.hom(a, b) {
                if table.depth(m) == 1 {
                    arrows.push(QuiverArrow {
                        source: a,
                        target: b,
                        morphism: m.clone(),
                    });
                }
            }
        }
    }
    Quiver {
        object_count: cat.object_count(),
        arrows,
    }
}

/// Cartan matrix: entry (i, j) counts the morphisms from object j to object
/// i. Row is the target, column the source; with the canonical object order
/// the result is upper unitriangular for the skeletal families.
pub fn cartan_matrix(cat: &FiniteCategory) -> ExactMatrix {
    let count = cat.object_count();
    ExactMatrix::from_fn(count, count, |i, j| BigInt::from(cat.hom(j, i).len()))
}

/// Connected components of the underlying undirected graph, as a partition
/// of object indices; each block sorted, blocks ordered by smallest member.
pub fn blocks(cat: &FiniteCategory) -> Vec<Vec<usize>> {
    let count = cat.object_count();
    let mut component = vec![usize::MAX; count];
    let mut result: Vec<Vec<usize>> = Vec::new();
    for start in 0..count {
        if component[start] != usize::MAX {
            continue;
        }
        let id = result.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component[start] = id;
        while let Some(a) = stack.pop() {
            members.push(a);
            for b in 0..count {
                if component[b] == usize::MAX
                    && (!cat.hom(a, b).is_empty() || !cat.hom(b, a).is_empty())
                {
                    component[b] = id;
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        result.push(members);
    }
    result
}

/// Defect of an onto map: domain size minus codomain size. Additive under
/// composition, and equal to the composition depth in the order-preserving
/// family.
pub fn defect(f: &Morphism) -> usize {
    f.dom().len() - f.cod().len()
}
