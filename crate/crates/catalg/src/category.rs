//! Fully materialized finite categories for the three families, plus the
//! skeleton of the order-preserving one, with structural sanity checks.

use crate::maps::{enumerate_hom, enumerate_onto, Family, Morphism, SubsetOfN};
use crate::{compose, Error, Result};
use std::collections::HashMap;

/// Which category is materialized: the three family categories on all
/// subsets of `[n]`, or the skeleton of `EO_n` on the chains `[0]..[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CategoryKind {
    Eo,
    Ef,
    Ec,
    Seo,
}

impl CategoryKind {
    pub fn name(self) -> &'static str {
        match self {
            CategoryKind::Eo => "EO",
            CategoryKind::Ef => "EF",
            CategoryKind::Ec => "EC",
            CategoryKind::Seo => "SEO",
        }
    }
}

impl std::fmt::Display for CategoryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A finite category with every hom-set materialized.
///
/// Objects are sorted by cardinality then lexicographically, which is also
/// the column order that makes the Cartan matrices upper unitriangular.
#[derive(Debug, Clone)]
pub struct FiniteCategory {
    kind: CategoryKind,
    n: usize,
    objects: Vec<SubsetOfN>,
    index: HashMap<SubsetOfN, usize>,
    homs: Vec<Vec<Vec<Morphism>>>,
}

impl FiniteCategory {
    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn objects(&self) -> &[SubsetOfN] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, object: &SubsetOfN) -> Option<usize> {
        self.index.get(object).copied()
    }

    /// Hom-set by object indices (source, target).
    pub fn hom(&self, source: usize, target: usize) -> &[Morphism] {
        &self.homs[source][target]
    }

    pub fn hom_between(&self, a: &SubsetOfN, b: &SubsetOfN) -> &[Morphism] {
        static EMPTY: Vec<Morphism> = Vec::new();
        match (self.object_index(a), self.object_index(b)) {
            (Some(i), Some(j)) => self.hom(i, j),
            _ => &EMPTY,
        }
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &Morphism> {
        self.homs.iter().flatten().flatten()
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    /// A morphism is invertible iff some morphism the other way composes to
    /// the identities on both sides.
    pub fn is_iso(&self, f: &Morphism) -> bool {
        if f.is_identity() {
            return true;
        }
        self.hom_between(f.cod(), f.dom()).iter().any(|g| {
            compose(g, f).map(|h| h.is_identity()).unwrap_or(false)
                && compose(f, g).map(|h| h.is_identity()).unwrap_or(false)
        })
    }

    fn build(kind: CategoryKind, n: usize, objects: Vec<SubsetOfN>) -> Result<Self> {
        let index: HashMap<SubsetOfN, usize> = objects
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, o)| (o, i))
            .collect();
        let homs: Vec<Vec<Vec<Morphism>>> = objects
            .iter()
            .map(|a| {
                objects
                    .iter()
                    .map(|b| match kind {
                        CategoryKind::Eo => enumerate_hom(Family::Po, a, b),
                        CategoryKind::Ef => enumerate_hom(Family::Pf, a, b),
                        CategoryKind::Ec => enumerate_hom(Family::Pc, a, b),
                        CategoryKind::Seo => enumerate_onto(a, b, true, false),
                    })
                    .collect()
            })
            .collect();
        let cat = FiniteCategory {
            kind,
            n,
            objects,
            index,
            homs,
        };
        if !cat.composition_closed() {
            return Err(Error::Invalid(format!(
                "{kind}_{n} is not closed under composition"
            )));
        }
        Ok(cat)
    }

    fn composition_closed(&self) -> bool {
        let count = self.object_count();
        for a in 0..count {
            for x in 0..count {
                if self.homs[a][x].is_empty() {
                    continue;
                }
                for b in 0..count {
                    if self.homs[x][b].is_empty() {
                        continue;
                    }
                    let target: std::collections::HashSet<&Morphism> =
                        self.homs[a][b].iter().collect();
                    for f in &self.homs[a][x] {
                        for g in &self.homs[x][b] {
                            let gf = match compose(g, f) {
                                Ok(gf) => gf,
                                Err(_) => return false,
                            };
                            if !target.contains(&gf) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

/// Builds `EO_n`, `EF_n` or `EC_n` on all `2^n` subsets.
pub fn build_category(kind: CategoryKind, n: usize, max_n: usize) -> Result<FiniteCategory> {
    assert!(
        kind != CategoryKind::Seo,
        "use build_skeleton_seo for the skeleton"
    );
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "category ambient size n",
            requested: n,
            limit: max_n,
        });
    }
    FiniteCategory::build(kind, n, SubsetOfN::all_subsets(n))
}

/// Builds the skeleton `SEO_n`: objects are the chains `[0]..[n]`, morphisms
/// all total onto order-preserving maps between them.
pub fn build_skeleton_seo(n: usize) -> FiniteCategory {
    let objects = (0..=n).map(|k| SubsetOfN::initial(n, k)).collect();
    FiniteCategory::build(CategoryKind::Seo, n, objects)
        .expect("skeleton is closed under composition")
}

/// The relation `a <= b iff Hom(a, b) is nonempty`, with the partial-order
/// axioms evaluated on it. On a skeletal locally trivial category all three
/// hold; on a non-skeletal one antisymmetry fails.
#[derive(Debug, Clone)]
pub struct ObjectOrder {
    pub le: Vec<Vec<bool>>,
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
}

impl ObjectOrder {
    pub fn is_partial_order(&self) -> bool {
        self.reflexive && self.antisymmetric && self.transitive
    }
}

/// Outcome of the structural checks; failures are entries, not errors.
#[derive(Debug, Clone)]
pub struct StructureReport {
    pub locally_trivial: bool,
    pub skeletal: bool,
    pub composition_closed: bool,
    pub identities_present: bool,
    pub object_order: ObjectOrder,
}

pub fn check_structure(cat: &FiniteCategory) -> StructureReport {
    let count = cat.object_count();
    let identities_present = (0..count).all(|a| cat.hom(a, a).iter().any(|f| f.is_identity()));
    let locally_trivial = (0..count).all(|a| {
        let endos = cat.hom(a, a);
        endos.len() == 1 && endos[0].is_identity()
    });
    let mut skeletal = true;
    'outer: for a in 0..count {
        for b in 0..count {
            if a == b {
                continue;
            }
            if cat.hom(a, b).iter().any(|f| cat.is_iso(f)) {
                skeletal = false;
                break 'outer;
            }
        }
    }
    let le: Vec<Vec<bool>> = (0..count)
        .map(|a| (0..count).map(|b| !cat.hom(a, b).is_empty()).collect())
        .collect();
    let reflexive = (0..count).all(|a| le[a][a]);
    let antisymmetric = (0..count).all(|a| (0..count).all(|b| a == b || !(le[a][b] && le[b][a])));
    let transitive = (0..count)
        .all(|a| (0..count).all(|b| (0..count).all(|c| !(le[a][b] && le[b][c]) || le[a][c])));
    StructureReport {
        locally_trivial,
        skeletal,
        composition_closed: cat.composition_closed(),
        identities_present,
        object_order: ObjectOrder {
            le,
            reflexive,
            antisymmetric,
            transitive,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(n: usize, elements: &[usize]) -> SubsetOfN {
        SubsetOfN::new(n, elements.to_vec()).unwrap()
    }

    #[test]
    fn build_small_categories() {
        let ec2 = build_category(CategoryKind::Ec, 2, 5).unwrap();
        assert_eq!(ec2.object_count(), 4);
        assert_eq!(ec2.morphism_count(), 6);

        let eo2 = build_category(CategoryKind::Eo, 2, 6).unwrap();
        assert_eq!(eo2.object_count(), 4);
        assert_eq!(eo2.morphism_count(), 8);

        let ef0 = build_category(CategoryKind::Ef, 0, 5).unwrap();
        assert_eq!(ef0.object_count(), 1);
        assert_eq!(ef0.morphism_count(), 1);

        assert!(matches!(
            build_category(CategoryKind::Ec, 6, 5),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn skeleton_hom_sizes_are_binomials() {
        use crate::matrix::binomial;
        for n in 0..=4 {
            let seo = build_skeleton_seo(n);
            assert_eq!(seo.object_count(), n + 1);
            for m in 0..=n {
                for l in 0..=n {
                    let count = seo.hom(m, l).len();
                    let expect: usize = if l == 0 {
                        usize::from(m == 0)
                    } else {
                        binomial(m as i64 - 1, l as i64 - 1).try_into().unwrap()
                    };
                    assert_eq!(count, expect, "SEO_{n}([{m}],[{l}])");
                }
            }
        }
        let seo2 = build_skeleton_seo(2);
        assert_eq!(seo2.hom(2, 1).len(), 1);
        let seo3 = build_skeleton_seo(3);
        assert_eq!(seo3.hom(3, 2).len(), 2);
    }

    #[test]
    fn structure_reports() {
        let ec3 = build_category(CategoryKind::Ec, 3, 5).unwrap();
        let report = check_structure(&ec3);
        assert!(report.locally_trivial);
        assert!(report.skeletal);
        assert!(report.composition_closed);
        assert!(report.identities_present);
        assert!(report.object_order.is_partial_order());

        let eo2 = build_category(CategoryKind::Eo, 2, 6).unwrap();
        let report = check_structure(&eo2);
        assert!(report.locally_trivial);
        assert!(!report.skeletal, "{{1}} and {{2}} are isomorphic in EO_2");
        assert!(!report.object_order.antisymmetric);

        for n in 0..=6 {
            let seo = build_skeleton_seo(n);
            let report = check_structure(&seo);
            assert!(report.locally_trivial && report.skeletal);
            assert!(report.object_order.is_partial_order());
        }
    }

    #[test]
    fn eo_isomorphism_classes_are_cardinalities() {
        for n in 0..=5 {
            let eo = build_category(CategoryKind::Eo, n, 6).unwrap();
            for (a, obj_a) in eo.objects().iter().enumerate() {
                for (b, obj_b) in eo.objects().iter().enumerate() {
                    let isos: Vec<&Morphism> =
                        eo.hom(a, b).iter().filter(|f| eo.is_iso(f)).collect();
                    if obj_a.len() == obj_b.len() {
                        assert_eq!(isos.len(), 1, "unique iso {obj_a} -> {obj_b}");
                    } else {
                        assert!(isos.is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn skeletal_families_have_one_sided_homs() {
        for kind in [CategoryKind::Ec, CategoryKind::Ef] {
            for n in 0..=5 {
                let cat = build_category(kind, n, 5).unwrap();
                for a in 0..cat.object_count() {
                    for b in 0..a {
                        assert!(
                            cat.hom(a, b).is_empty() || cat.hom(b, a).is_empty(),
                            "{kind}_{n}: two-sided homs between distinct objects"
                        );
                    }
                }
                let report = check_structure(&cat);
                assert!(report.object_order.is_partial_order(), "{kind}_{n}");
            }
        }
    }

    #[test]
    fn total_morphisms_match_monoid_sizes() {
        use crate::maps::enumerate_monoid;
        for n in 0..=4 {
            for (kind, family) in [
                (CategoryKind::Eo, Family::Po),
                (CategoryKind::Ef, Family::Pf),
                (CategoryKind::Ec, Family::Pc),
            ] {
                let cat = build_category(kind, n, 5).unwrap();
                let monoid = enumerate_monoid(family, n, 5).unwrap();
                assert_eq!(cat.morphism_count(), monoid.len());
            }
        }
    }

    #[test]
    fn hom_lookup_by_object() {
        let ec2 = build_category(CategoryKind::Ec, 2, 5).unwrap();
        let hom = ec2.hom_between(&subset(2, &[1, 2]), &subset(2, &[1]));
        assert_eq!(hom.len(), 1);
        assert!(ec2
            .hom_between(&subset(2, &[1]), &subset(2, &[1, 2]))
            .is_empty());
    }
}
