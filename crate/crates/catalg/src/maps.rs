//! Subsets of `{1..n}` and onto partial maps between them.
//!
//! A `Morphism` here is always a *total onto* map between two subsets; a
//! partial function on `[n]` corresponds to the onto corestriction to its
//! image, which is how the three monoids of partial maps turn into unions of
//! hom-sets.

use crate::{Error, Result};
use std::fmt;

/// A subset of `{1..n}`, carrying its ambient size.
///
/// Elements are stored strictly increasing. Two subsets are equal only if
/// their ambient sizes agree; the ordering used everywhere downstream is
/// cardinality first, then lexicographic on the element lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsetOfN {
    n: usize,
    elements: Vec<usize>,
}

impl SubsetOfN {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self> {
        for (k, &e) in elements.iter().enumerate() {
            if e < 1 || e > n {
                return Err(Error::Invalid(format!("element {e} outside [1, {n}]")));
            }
            if k > 0 && elements[k - 1] >= e {
                return Err(Error::Invalid(format!(
                    "elements not strictly increasing at position {k}"
                )));
            }
        }
        Ok(SubsetOfN { n, elements })
    }

    pub fn empty(n: usize) -> Self {
        SubsetOfN {
            n,
            elements: Vec::new(),
        }
    }

    /// The initial segment `{1..k}` inside ambient `n`; `k = 0` is the empty set.
    pub fn initial(n: usize, k: usize) -> Self {
        assert!(k <= n, "initial segment [{k}] does not fit in [{n}]");
        SubsetOfN {
            n,
            elements: (1..=k).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self::initial(n, n)
    }

    pub fn from_mask(n: usize, mask: u64) -> Self {
        let elements = (1..=n).filter(|e| mask >> (e - 1) & 1 == 1).collect();
        SubsetOfN { n, elements }
    }

    /// All subsets of `[n]`, sorted by cardinality then lexicographically.
    pub fn all_subsets(n: usize) -> Vec<SubsetOfN> {
        assert!(n < 64);
        let mut subsets: Vec<SubsetOfN> = (0..1u64 << n).map(|m| Self::from_mask(n, m)).collect();
        subsets.sort();
        subsets
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Position of `x` in the increasing element list.
    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn element_sum(&self) -> usize {
        self.elements.iter().sum()
    }

    pub fn with(&self, x: usize) -> Self {
        assert!(x >= 1 && x <= self.n);
        if self.contains(x) {
            return self.clone();
        }
        let mut elements = self.elements.clone();
        let pos = elements.partition_point(|&e| e < x);
        elements.insert(pos, x);
        SubsetOfN {
            n: self.n,
            elements,
        }
    }

    pub fn without(&self, x: usize) -> Self {
        let elements = self.elements.iter().copied().filter(|&e| e != x).collect();
        SubsetOfN {
            n: self.n,
            elements,
        }
    }

    pub fn is_subset_of(&self, other: &SubsetOfN) -> bool {
        self.elements.iter().all(|&e| other.contains(e))
    }
}

impl Ord for SubsetOfN {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.elements.len(), &self.elements, self.n).cmp(&(
            other.elements.len(),
            &other.elements,
            other.n,
        ))
    }
}

impl PartialOrd for SubsetOfN {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SubsetOfN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn subset_to_string(s: &SubsetOfN) -> String {
    s.to_string()
}

/// A total onto map between two subsets of the same `[n]`.
///
/// `values[k]` is the image of the k-th smallest domain element. The
/// constructor enforces totality and that the image is exactly the codomain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    dom: SubsetOfN,
    cod: SubsetOfN,
    values: Vec<usize>,
}

impl Morphism {
    pub fn new(dom: SubsetOfN, cod: SubsetOfN, values: Vec<usize>) -> Result<Self> {
        if dom.n() != cod.n() {
            return Err(Error::Invalid(format!(
                "ambient sizes differ: {} vs {}",
                dom.n(),
                cod.n()
            )));
        }
        if values.len() != dom.len() {
            return Err(Error::Invalid(format!(
                "value table has {} entries for a domain of size {}",
                values.len(),
                dom.len()
            )));
        }
        let mut hit = vec![false; cod.len()];
        for &v in &values {
            match cod.index_of(v) {
                Some(k) => hit[k] = true,
                None => {
                    return Err(Error::Invalid(format!(
                        "value {v} lies outside the codomain {cod}"
                    )))
                }
            }
        }
        if hit.iter().any(|h| !h) {
            return Err(Error::Invalid(format!(
                "map is not onto {cod}: some codomain element is never hit"
            )));
        }
        Ok(Morphism { dom, cod, values })
    }

    pub fn identity(object: &SubsetOfN) -> Self {
        Morphism {
            dom: object.clone(),
            cod: object.clone(),
            values: object.elements().to_vec(),
        }
    }

    pub fn n(&self) -> usize {
        self.dom.n()
    }

    pub fn dom(&self) -> &SubsetOfN {
        &self.dom
    }

    pub fn cod(&self) -> &SubsetOfN {
        &self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Image of a domain element. Panics when `x` is not in the domain.
    pub fn apply(&self, x: usize) -> usize {
        let k = self
            .dom
            .index_of(x)
            .unwrap_or_else(|| panic!("{x} is not in the domain {}", self.dom));
        self.values[k]
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values == self.dom.elements()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:(", self.dom, self.cod)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// True iff `x <= y` implies `f(x) <= f(y)` on the domain.
pub fn is_order_preserving(f: &Morphism) -> bool {
    f.values().windows(2).all(|w| w[0] <= w[1])
}

/// True iff `f(x) <= x` for every domain element.
pub fn is_order_decreasing(f: &Morphism) -> bool {
    f.dom()
        .elements()
        .iter()
        .zip(f.values())
        .all(|(&x, &v)| v <= x)
}

/// Composite `g . f` (apply `f` first). Fails unless `cod(f) = dom(g)`.
pub fn compose(g: &Morphism, f: &Morphism) -> Result<Morphism> {
    if f.cod() != g.dom() {
        return Err(Error::EndpointMismatch {
            inner_cod: f.cod().clone(),
            outer_dom: g.dom().clone(),
        });
    }
    let values = f.values().iter().map(|&v| g.apply(v)).collect();
    Ok(Morphism {
        dom: f.dom().clone(),
        cod: g.cod().clone(),
        values,
    })
}

/// The three monoids of partial maps on `[n]`: order-preserving (`po`),
/// order-decreasing (`pf`), and their intersection (`pc`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Po,
    Pf,
    Pc,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Po, Family::Pf, Family::Pc];

    pub fn requires_preserving(self) -> bool {
        matches!(self, Family::Po | Family::Pc)
    }

    pub fn requires_decreasing(self) -> bool {
        matches!(self, Family::Pf | Family::Pc)
    }

    pub fn admits(self, f: &Morphism) -> bool {
        (!self.requires_preserving() || is_order_preserving(f))
            && (!self.requires_decreasing() || is_order_decreasing(f))
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Po => "po",
            Family::Pf => "pf",
            Family::Pc => "pc",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "po" => Some(Family::Po),
            "pf" => Some(Family::Pf),
            "pc" => Some(Family::Pc),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All onto maps `dom -> cod` with the requested predicates, in lexicographic
/// order of their value tables.
///
/// Backtracking with two prunes: not enough positions left to cover the
/// unused codomain elements, and (when order-preserving) a candidate value
/// that jumps over a still-unused smaller one can never become onto.
pub(crate) fn enumerate_onto(
    dom: &SubsetOfN,
    cod: &SubsetOfN,
    preserving: bool,
    decreasing: bool,
) -> Vec<Morphism> {
    assert_eq!(dom.n(), cod.n(), "mismatched ambient sizes");
    let m = dom.len();
    let l = cod.len();
    if l > m {
        return Vec::new();
    }
    if l == 0 {
        return if m == 0 {
            vec![Morphism::identity(cod)]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(m);
    let mut used = vec![false; l];
    rec(
        dom,
        cod,
        preserving,
        decreasing,
        &mut values,
        &mut used,
        0,
        &mut out,
    );
    return out;

    #[allow(clippy::too_many_arguments)]
    fn rec(
        dom: &SubsetOfN,
        cod: &SubsetOfN,
        preserving: bool,
        decreasing: bool,
        values: &mut Vec<usize>,
        used: &mut Vec<bool>,
        used_count: usize,
        out: &mut Vec<Morphism>,
    ) {
        let m = dom.len();
        let k = values.len();
        if k == m {
            if used_count == cod.len() {
                out.push(Morphism {
                    dom: dom.clone(),
                    cod: cod.clone(),
                    values: values.clone(),
                });
            }
            return;
        }
        if m - k < cod.len() - used_count {
            return;
        }
        let x = dom.elements()[k];
        let last = if preserving && k > 0 {
            values[k - 1]
        } else {
            0
        };
        for (bi, &b) in cod.elements().iter().enumerate() {
            if b < last {
                continue;
            }
            if decreasing && b > x {
                break;
            }
            if preserving && used[..bi].iter().any(|u| !u) {
                // A smaller codomain value is still unused and unreachable.
                break;
            }
            let fresh = !used[bi];
            used[bi] = true;
            values.push(b);
            rec(
                dom,
                cod,
                preserving,
                decreasing,
                values,
                used,
                used_count + usize::from(fresh),
                out,
            );
            values.pop();
            if fresh {
                used[bi] = false;
            }
        }
    }
}

/// The hom-set of the family's category: onto maps `a -> b` satisfying the
/// family predicates, deterministically ordered.
pub fn enumerate_hom(family: Family, a: &SubsetOfN, b: &SubsetOfN) -> Vec<Morphism> {
    enumerate_onto(
        a,
        b,
        family.requires_preserving(),
        family.requires_decreasing(),
    )
}

/// Every element of the monoid, as an onto corestriction: the union of
/// `enumerate_hom` over all ordered pairs of subsets, in canonical object
/// order.
pub fn enumerate_monoid(family: Family, n: usize, max_n: usize) -> Result<Vec<Morphism>> {
    if n > max_n {
        return Err(Error::ResourceLimit {
            what: "monoid ambient size n",
            requested: n,
            limit: max_n,
        });
    }
    let subsets = SubsetOfN::all_subsets(n);
    let mut out = Vec::new();
    for a in &subsets {
        for b in &subsets {
            out.extend(enumerate_hom(family, a, b));
        }
    }
    Ok(out)
}
