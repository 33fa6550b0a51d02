//! Closed-form counts for the three families: binomial hom sizes, the Pascal
//! Cartan matrix, radical dimensions, lattice-path boundaries with their
//! determinant path counts, inclusion-exclusion, and the domain-reduction
//! pipeline for Catalan Cartan entries.

use crate::maps::SubsetOfN;
use crate::matrix::{binomial, ExactMatrix};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Number of onto order-preserving maps from an m-set to an l-set:
/// `C(m-1, l-1)`, with `C(-1,-1) = 1` covering the empty-to-empty case.
pub fn count_onto_op(m: usize, l: usize) -> BigInt {
    binomial(m as i64 - 1, l as i64 - 1)
}

/// The Cartan matrix of the order-preserving family in closed form: the
/// extended upper-triangular Pascal matrix with entry `C(j-2, i-2)` at
/// (i, j), 1-based, over the objects `[0]..[n]`.
pub fn cartan_po_closed(n: usize) -> ExactMatrix {
    ExactMatrix::from_fn(n + 1, n + 1, |i, j| {
        if j >= i {
            binomial(j as i64 - 1, i as i64 - 1)
        } else {
            BigInt::zero()
        }
    })
}

/// Dimension of the k-th radical power of the order-preserving monoid
/// algebra: onto order-preserving maps between subsets of `[n]` whose
/// domain exceeds the image by at least k.
pub fn dim_rad_po(n: usize, k: usize) -> BigInt {
    assert!(k >= 1, "radical powers are indexed from 1 here");
    let mut total = BigInt::zero();
    for m in k + 1..=n {
        for l in 1..=m - k {
            total += binomial(n as i64, m as i64)
                * binomial(n as i64, l as i64)
                * binomial(m as i64 - 1, l as i64 - 1);
        }
    }
    total
}

/// A north-east lattice path from (1,1) to (n+1,n+1), recorded as the
/// non-decreasing tuple of y-coordinates of its horizontal steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    steps: Vec<usize>,
}

impl LatticePath {
    pub fn new(steps: Vec<usize>) -> Result<Self> {
        let n = steps.len();
        for (k, &p) in steps.iter().enumerate() {
            if p < 1 || p > n + 1 {
                return Err(Error::Invalid(format!("step {p} outside [1, {}]", n + 1)));
            }
            if k > 0 && steps[k - 1] > p {
                return Err(Error::Invalid(format!("steps decrease at position {k}")));
            }
        }
        Ok(LatticePath { steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    /// The staircase boundary (1, 2, ..., n), i.e. the line y = x.
    pub fn staircase(n: usize) -> Self {
        LatticePath {
            steps: (1..=n).collect(),
        }
    }
}

/// A subset together with its boundary path: the path starts at height 1
/// and ascends exactly at the positions lying in the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryData {
    pub base: SubsetOfN,
    pub bar: LatticePath,
}

pub fn bar_path(n: usize, b: &SubsetOfN) -> BoundaryData {
    assert_eq!(b.n(), n);
    let mut steps = Vec::with_capacity(n);
    let mut height = 1usize;
    for i in 1..=n {
        if i > 1 && b.contains(i) {
            height += 1;
        }
        steps.push(height);
    }
    BoundaryData {
        base: b.clone(),
        bar: LatticePath { steps },
    }
}

/// The binomial matrix whose determinant counts the paths below a boundary:
/// entry (i, j) is `C(x_i, j - i + 1)`, 1-based.
pub fn path_matrix(x: &LatticePath) -> ExactMatrix {
    let n = x.len();
    ExactMatrix::from_fn(n, n, |i, j| {
        binomial(x.steps[i] as i64, j as i64 - i as i64 + 1)
    })
}

/// Number of lattice paths weakly below `x`, by exact determinant.
pub fn paths_below_det(x: &LatticePath) -> BigInt {
    path_matrix(x).determinant()
}

/// Independent count of the same paths: cumulative-sum dynamic programming
/// over non-decreasing tuples `p` with `1 <= p_i <= x_i`.
pub fn paths_below_dp(x: &LatticePath) -> BigInt {
    let n = x.len();
    if n == 0 {
        return BigInt::one();
    }
    let top = x.steps[n - 1];
    // ways[v-1] = number of admissible prefixes ending at height v.
    let mut ways = vec![BigInt::zero(); top];
    for v in 1..=x.steps[0].min(top) {
        ways[v - 1] = BigInt::one();
    }
    for i in 1..n {
        let mut running = BigInt::zero();
        let bound = x.steps[i];
        for v in 1..=top {
            running += std::mem::take(&mut ways[v - 1]);
            if v <= bound {
                ways[v - 1] = running.clone();
            }
        }
    }
    ways.into_iter().sum()
}

/// Number of total order-preserving and order-decreasing maps `[n] -> B`.
///
/// Such a map sends 1 to 1, so the count is zero unless `1 ∈ B` (or n = 0);
/// with 1 present it is the determinant count below the boundary of `B`.
pub fn count_c(n: usize, b: &SubsetOfN) -> BigInt {
    assert_eq!(b.n(), n);
    if n >= 1 && !b.contains(1) {
        return BigInt::zero();
    }
    paths_below_det(&bar_path(n, b).bar)
}

fn subsets_of(b: &SubsetOfN) -> impl Iterator<Item = SubsetOfN> + '_ {
    let k = b.len();
    (0..1u64 << k).map(move |mask| {
        let elements = b
            .elements()
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        SubsetOfN::new(b.n(), elements).expect("subset of a valid subset")
    })
}

fn signed_sum_over_subsets(b: &SubsetOfN, mut term: impl FnMut(&SubsetOfN) -> BigInt) -> BigInt {
    let mut total = BigInt::zero();
    for x in subsets_of(b) {
        let term = term(&x);
        if (b.len() - x.len()).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Number of *onto* order-preserving and order-decreasing maps `[n] -> B`,
/// by inclusion-exclusion over the subsets of `B`.
pub fn count_ec_full(n: usize, b: &SubsetOfN) -> BigInt {
    signed_sum_over_subsets(b, |x| count_c(n, x))
}

fn reduce_domain_steps(a: &SubsetOfN, b: &SubsetOfN) -> Result<Vec<SubsetOfN>> {
    assert_eq!(a.n(), b.n());
    let mut steps = vec![a.clone()];
    let mut current = a.clone();
    for &target in b.elements() {
        let replaced = current
            .elements()
            .iter()
            .copied()
            .find(|&x| x >= target)
            .ok_or(Error::Infeasible {
                current: current.clone(),
                element: target,
            })?;
        current = current.without(replaced).with(target);
        steps.push(current.clone());
    }
    Ok(steps)
}

/// Replaces, one target element at a time, the minimal current-domain
/// element above it, producing a domain `A'` with `B ⊆ A'`, the same size,
/// and the same number of onto order-preserving order-decreasing maps onto
/// `B`. Fails with `Infeasible` when some element of `B` dominates the whole
/// current domain, in which case the hom-set is empty.
pub fn reduce_domain(a: &SubsetOfN, b: &SubsetOfN) -> Result<SubsetOfN> {
    Ok(reduce_domain_steps(a, b)?
        .pop()
        .expect("at least the start"))
}

/// Renames `A' = {a_1 < ... < a_m}` to `[m]` by position; `B ⊆ A'` goes to
/// its position set. Hom-set sizes onto `B` are unchanged by the renaming.
pub fn rename_to_initial(a_prime: &SubsetOfN, b: &SubsetOfN) -> (usize, SubsetOfN) {
    assert!(b.is_subset_of(a_prime), "rename_to_initial requires B ⊆ A'");
    let m = a_prime.len();
    let renamed = b
        .elements()
        .iter()
        .map(|&e| a_prime.index_of(e).expect("checked subset") + 1)
        .collect();
    (
        m,
        SubsetOfN::new(m, renamed).expect("positions are increasing"),
    )
}

/// Cartan entry of the Catalan family at (target B, source A): the number
/// of onto order-preserving order-decreasing maps `A -> B`, computed by the
/// reduction -> renaming -> inclusion-exclusion-determinant pipeline.
pub fn cartan_entry_ec(a: &SubsetOfN, b: &SubsetOfN) -> BigInt {
    match reduce_domain(a, b) {
        Ok(a_prime) => {
            let (m, renamed) = rename_to_initial(&a_prime, b);
            count_ec_full(m, &renamed)
        }
        Err(Error::Infeasible { .. }) => BigInt::zero(),
        Err(e) => unreachable!("reduce_domain only fails as Infeasible: {e}"),
    }
}

/// Number of total (not necessarily onto) order-decreasing maps `A -> B`:
/// the product over `i ∈ A` of `|{b ∈ B : b <= i}|`.
pub fn count_decreasing(a: &SubsetOfN, b: &SubsetOfN) -> BigInt {
    let mut product = BigInt::one();
    for &i in a.elements() {
        let options = b.elements().iter().filter(|&&x| x <= i).count();
        if options == 0 {
            return BigInt::zero();
        }
        product *= BigInt::from(options);
    }
    product
}

/// Cartan entry of the order-decreasing family at (target B, source A), by
/// inclusion-exclusion over subsets of `B` on the product count.
pub fn cartan_entry_ef(a: &SubsetOfN, b: &SubsetOfN) -> BigInt {
    signed_sum_over_subsets(b, |x| count_decreasing(a, x))
}
