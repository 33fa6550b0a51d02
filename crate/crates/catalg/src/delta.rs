//! The isomorphism between the punctured skeleton at size n+1 and the
//! category of basepoint-fixing strictly increasing maps, materialized as
//! lookup tables in both directions.
//!
//! An onto order-preserving f: [r] -> [k] goes to the strictly increasing
//! g: [k] -> [r] with g(i) = min of the preimage of i; the inverse sends g
//! back to f(j) = max i with g(i) <= j. Dropping the fixed basepoint turns
//! these maps into the face maps of simplices up to dimension n.

use crate::category::build_skeleton_seo;
use crate::maps::{Morphism, SubsetOfN};
use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// A strictly increasing map between the chains `[dom_size]` and
/// `[cod_size]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrictMap {
    dom_size: usize,
    cod_size: usize,
    values: Vec<usize>,
}

impl StrictMap {
    pub fn new(dom_size: usize, cod_size: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom_size {
            return Err(Error::Invalid(format!(
                "{} values for a domain of size {dom_size}",
                values.len()
            )));
        }
        for (k, &v) in values.iter().enumerate() {
            if v < 1 || v > cod_size {
                return Err(Error::Invalid(format!("value {v} outside [1, {cod_size}]")));
            }
            if k > 0 && values[k - 1] >= v {
                return Err(Error::Invalid("values are not strictly increasing".into()));
            }
        }
        Ok(StrictMap {
            dom_size,
            cod_size,
            values,
        })
    }

    pub fn identity(size: usize) -> Self {
        StrictMap {
            dom_size: size,
            cod_size: size,
            values: (1..=size).collect(),
        }
    }

    pub fn dom_size(&self) -> usize {
        self.dom_size
    }

    pub fn cod_size(&self) -> usize {
        self.cod_size
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x - 1]
    }

    /// Fixes the basepoint: g(1) = 1. The basepoint-fixing maps form the
    /// target category of the skeleton isomorphism.
    pub fn is_based(&self) -> bool {
        self.values.first() == Some(&1)
    }

    pub fn is_identity(&self) -> bool {
        self.dom_size == self.cod_size && self.values.iter().copied().eq(1..=self.dom_size)
    }

    /// Composite `self . inner` (apply `inner` first).
    pub fn compose(&self, inner: &StrictMap) -> Result<StrictMap> {
        if inner.cod_size != self.dom_size {
            return Err(Error::Invalid(format!(
                "strict maps not composable: [{}] vs [{}]",
                inner.cod_size, self.dom_size
            )));
        }
        let values = inner.values.iter().map(|&v| self.apply(v)).collect();
        StrictMap::new(inner.dom_size, self.cod_size, values)
    }
}

impl fmt::Display for StrictMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}]:(", self.dom_size, self.cod_size)?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Both directions of the isomorphism, as lookup tables over every morphism
/// of the punctured skeleton at size n+1 and every basepoint-fixing strict
/// map between chains of sizes 1..=n+1.
#[derive(Debug, Clone)]
pub struct FunctorPair {
    n: usize,
    forward: HashMap<Morphism, StrictMap>,
    backward: HashMap<StrictMap, Morphism>,
}

impl FunctorPair {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn forward(&self, f: &Morphism) -> Option<&StrictMap> {
        self.forward.get(f)
    }

    pub fn backward(&self, g: &StrictMap) -> Option<&Morphism> {
        self.backward.get(g)
    }

    pub fn forward_iter(&self) -> impl Iterator<Item = (&Morphism, &StrictMap)> {
        self.forward.iter()
    }

    pub fn backward_iter(&self) -> impl Iterator<Item = (&StrictMap, &Morphism)> {
        self.backward.iter()
    }
}

/// Min of the preimage, pointwise.
fn min_preimage(f: &Morphism) -> StrictMap {
    let values: Vec<usize> = f
        .cod()
        .elements()
        .iter()
        .map(|&i| {
            f.dom()
                .elements()
                .iter()
                .copied()
                .find(|&x| f.apply(x) == i)
                .expect("onto map has a preimage")
        })
        .collect();
    StrictMap::new(f.cod().len(), f.dom().len(), values).expect("min-preimages increase strictly")
}

/// Largest domain element whose image under g stays at or below each j.
fn max_below(g: &StrictMap, n: usize) -> Morphism {
    let r = g.cod_size;
    let k = g.dom_size;
    let values: Vec<usize> = (1..=r)
        .map(|j| {
            (1..=k)
                .rev()
                .find(|&i| g.apply(i) <= j)
                .expect("based maps reach every level from below")
        })
        .collect();
    Morphism::new(SubsetOfN::initial(n, r), SubsetOfN::initial(n, k), values)
        .expect("a total onto order-preserving map")
}

fn based_strict_maps(dom_size: usize, cod_size: usize) -> Vec<StrictMap> {
    // Choose the dom_size - 1 non-basepoint values out of 2..=cod_size.
    fn rec(
        cod_size: usize,
        remaining: usize,
        from: usize,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        for v in from..=cod_size {
            acc.push(v);
            rec(cod_size, remaining - 1, v + 1, acc, out);
            acc.pop();
        }
    }
    if dom_size == 0 || dom_size > cod_size {
        return Vec::new();
    }
    let mut chosen = Vec::new();
    let mut acc = vec![1];
    rec(cod_size, dom_size - 1, 2, &mut acc, &mut chosen);
    chosen
        .into_iter()
        .map(|values| StrictMap::new(dom_size, cod_size, values).expect("strictly increasing"))
        .collect()
}

/// Builds the two functors between the punctured skeleton at size n+1 and
/// the basepoint-fixing strict maps. The directions are computed by their
/// own formulas, so the round-trip tests are a genuine cross-check.
pub fn delta_iso(n: usize) -> FunctorPair {
    let seo = build_skeleton_seo(n + 1);
    let mut forward = HashMap::new();
    for f in seo.morphisms() {
        if f.dom().is_empty() {
            continue;
        }
        forward.insert(f.clone(), min_preimage(f));
    }
    let mut backward = HashMap::new();
    for r in 1..=n + 1 {
        for k in 1..=r {
            for g in based_strict_maps(k, r) {
                backward.insert(g.clone(), max_below(&g, n + 1));
            }
        }
    }
    FunctorPair {
        n,
        forward,
        backward,
    }
}

/// Strips the fixed basepoint: a based map [k] -> [r] becomes the simplex
/// face map datum [k-1] -> [r-1].
pub fn based_to_face(g: &StrictMap) -> StrictMap {
    assert!(g.is_based(), "based_to_face expects g(1) = 1");
    let values = g.values[1..].iter().map(|&v| v - 1).collect();
    StrictMap::new(g.dom_size - 1, g.cod_size - 1, values).expect("still strictly increasing")
}

/// Re-attaches the basepoint, inverse to `based_to_face`.
pub fn face_to_based(g: &StrictMap) -> StrictMap {
    let mut values = vec![1];
    values.extend(g.values.iter().map(|&v| v + 1));
    StrictMap::new(g.dom_size + 1, g.cod_size + 1, values).expect("still strictly increasing")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose;

    #[test]
    fn forward_example() {
        let f = Morphism::new(
            SubsetOfN::initial(3, 3),
            SubsetOfN::initial(3, 2),
            vec![1, 1, 2],
        )
        .unwrap();
        let g = min_preimage(&f);
        assert_eq!(g.values(), &[1, 3]);
    }

    #[test]
    fn tables_cover_both_categories() {
        let pair = delta_iso(3);
        // Punctured skeleton morphism count: sum over 1 <= k <= r <= 4 of
        // C(r-1, k-1) equals 1 + 2 + 4 + 8.
        assert_eq!(pair.forward.len(), 15);
        assert_eq!(pair.backward.len(), 15);
    }

    #[test]
    fn round_trips_are_identities() {
        let pair = delta_iso(3);
        for (f, g) in pair.forward_iter() {
            assert_eq!(pair.backward(g), Some(f));
        }
        for (g, f) in pair.backward_iter() {
            assert_eq!(pair.forward(f), Some(g));
        }
    }

    #[test]
    fn identities_map_to_identities() {
        let pair = delta_iso(3);
        for (f, g) in pair.forward_iter() {
            assert_eq!(f.is_identity(), g.is_identity());
        }
    }

    #[test]
    fn both_directions_preserve_composition() {
        let n = 3;
        let pair = delta_iso(n);
        let seo = build_skeleton_seo(n + 1);
        for f1 in seo.morphisms().filter(|f| !f.dom().is_empty()) {
            for f2 in seo.morphisms().filter(|f| f.dom() == f1.cod()) {
                let composite = compose(f2, f1).unwrap();
                let lhs = pair.forward(&composite).unwrap();
                let rhs = pair
                    .forward(f1)
                    .unwrap()
                    .compose(pair.forward(f2).unwrap())
                    .unwrap();
                assert_eq!(lhs, &rhs, "image of {f2} . {f1}");
            }
        }
        for (g1, f1) in pair.backward_iter() {
            for (g2, f2) in pair.backward_iter() {
                if g2.cod_size() != g1.dom_size() {
                    continue;
                }
                let composite = g1.compose(g2).unwrap();
                let lhs = pair.backward(&composite).unwrap();
                let rhs = compose(f2, f1).unwrap();
                assert_eq!(lhs, &rhs, "preimage of {g1} . {g2}");
            }
        }
    }

    #[test]
    fn basepoint_shift_round_trips() {
        let pair = delta_iso(2);
        for (g, _) in pair.backward_iter() {
            let face = based_to_face(g);
            assert_eq!(&face_to_based(&face), g);
        }
    }

    #[test]
    fn basepoint_shift_preserves_composition() {
        let pair = delta_iso(3);
        for (g1, _) in pair.backward_iter() {
            for (g2, _) in pair.backward_iter() {
                if g2.cod_size() != g1.dom_size() {
                    continue;
                }
                let shifted = based_to_face(&g1.compose(g2).unwrap());
                let composed = based_to_face(g1).compose(&based_to_face(g2)).unwrap();
                assert_eq!(shifted, composed);
            }
        }
    }
}
