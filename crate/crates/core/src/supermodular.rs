//! Standardized supermodular set functions, their extreme rays, core
//! polytopes, and the duality with matroid rank functions.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ground::{all_subsets, Char, IndexFamily, SetFunction, Subset};
use crate::linalg;
use crate::rational::Rational;

/// `Δm(a,b|Z) = m(abZ) + m(Z) − m(aZ) − m(bZ)`.
pub fn delta(m: &SetFunction, a: usize, b: usize, z: Subset) -> Result<Rational> {
    if a == b || z.contains(a) || z.contains(b) {
        return Err(Error::InvalidArgument("a, b and Z must be pairwise disjoint".into()));
    }
    Ok(m.get(z.with(a).with(b)) + m.get(z) - m.get(z.with(a)) - m.get(z.with(b)))
}

/// `Δm(A,B|Z) = m(A∪B∪Z) + m(Z) − m(A∪Z) − m(B∪Z)` for disjoint `A`, `B`, `Z`.
pub fn delta_sets(m: &SetFunction, a: Subset, b: Subset, z: Subset) -> Result<Rational> {
    if !a.intersection(b).is_empty() || !a.intersection(z).is_empty() || !b.intersection(z).is_empty() {
        return Err(Error::InvalidArgument("A, B and Z must be pairwise disjoint".into()));
    }
    Ok(m.get(a.union(b).union(z)) + m.get(z) - m.get(a.union(z)) - m.get(b.union(z)))
}

/// Every elementary triplet `(a, b, Z)` with `a < b`.
pub fn elementary_triplets(n: usize) -> Vec<(usize, usize, Subset)> {
    let full = Subset::full(n);
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for z in full.without(a).without(b).subsets() {
                out.push((a, b, z));
            }
        }
    }
    out
}

pub fn is_supermodular(m: &SetFunction) -> bool {
    elementary_triplets(m.n())
        .into_iter()
        .all(|(a, b, z)| !delta(m, a, b, z).expect("disjoint triplet").is_negative())
}

/// `m(C∪D) + m(C∩D) ≥ m(C) + m(D)` over all pairs of subsets.
pub fn is_supermodular_pairwise(m: &SetFunction) -> bool {
    let n = m.n();
    all_subsets(n).all(|c| all_subsets(n).all(|d| m.get(c.union(d)) + m.get(c.intersection(d)) >= m.get(c) + m.get(d)))
}

fn require_standardized_supermodular(m: &SetFunction) -> Result<()> {
    if !m.is_standardized() {
        return Err(Error::NotStandardized);
    }
    if !is_supermodular(m) {
        return Err(Error::NotSupermodular);
    }
    Ok(())
}

/// Dimension of the space of standardized `m'` with `Δm'(a,b|Z) = 0` on
/// every triplet where `Δm` vanishes.
pub fn tight_space_dimension(m: &SetFunction) -> usize {
    let n = m.n();
    let dim = Char::dimension(n);
    let rows: Vec<Vec<Rational>> = elementary_triplets(n)
        .into_iter()
        .filter(|&(a, b, z)| delta(m, a, b, z).expect("disjoint triplet").is_zero())
        .map(|(a, b, z)| {
            let mut row = vec![Rational::zero(); dim];
            for (s, sign) in [(z.with(a).with(b), 1), (z, 1), (z.with(a), -1), (z.with(b), -1)] {
                if let Some(j) = Char::position(n, s) {
                    row[j] += Rational::from_integer(sign.into());
                }
            }
            row
        })
        .collect();
    dim - linalg::rank(&rows, dim)
}

/// Generates an extreme ray of the standardized supermodular cone.
pub fn is_extreme(m: &SetFunction) -> Result<bool> {
    require_standardized_supermodular(m)?;
    if m.is_zero() {
        return Err(Error::InvalidArgument("the zero function spans no ray".into()));
    }
    Ok(tight_space_dimension(m) == 1)
}

/// Marginal vector of `m` along the order `perm`.
pub fn marginal_vector(m: &SetFunction, perm: &[usize]) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m.n()];
    let mut pred = Subset::EMPTY;
    for &a in perm {
        v[a] = m.get(pred.with(a)) - m.get(pred);
        pred = pred.with(a);
    }
    v
}

/// Distinct marginal vectors over all orders, sorted.
pub fn core_vertices(m: &SetFunction) -> Result<Vec<Vec<Rational>>> {
    require_standardized_supermodular(m)?;
    let set: BTreeSet<Vec<Rational>> =
        crate::dags::permutations(m.n()).iter().map(|p| marginal_vector(m, p)).collect();
    Ok(set.into_iter().collect())
}

/// `Σv = m(N)` and `Σ_{a∈S} v_a ≥ m(S)` for all `S`.
pub fn in_core(m: &SetFunction, v: &[Rational]) -> bool {
    let n = m.n();
    let sum = |s: Subset| -> Rational { s.elements().map(|a| v[a].clone()).sum() };
    sum(Subset::full(n)) == m.get(Subset::full(n)) && all_subsets(n).all(|s| sum(s) >= m.get(s))
}

/// `r(T) = m(N) − m(N\T)`.
pub fn duality_transform(m: &SetFunction) -> SetFunction {
    let full = Subset::full(m.n());
    SetFunction::from_fn(m.n(), |t| m.get(full) - m.get(full.difference(t)))
}

/// Rank axioms on `P(ground)`: `r(∅) = 0`, unit increase, submodularity.
pub fn is_matroid_rank(r: &SetFunction, ground: Subset) -> Result<bool> {
    for s in ground.subsets() {
        if !r.get(s).is_integer() {
            return Err(Error::InvalidArgument(format!("non-integer rank at {s:?}")));
        }
    }
    if !r.get(Subset::EMPTY).is_zero() {
        return Ok(false);
    }
    for s in ground.subsets() {
        for x in ground.difference(s).elements() {
            let inc = r.get(s.with(x)) - r.get(s);
            if inc.is_negative() || inc > Rational::one() {
                return Ok(false);
            }
            for y in ground.difference(s).elements().filter(|&y| y > x) {
                if r.get(s.with(x)) + r.get(s.with(y)) < r.get(s.with(x).with(y)) + r.get(s) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// No proper non-empty separator `S` with `r(ground) = r(S) + r(ground\S)`.
pub fn is_connected_matroid(r: &SetFunction, ground: Subset) -> bool {
    let total = r.get(ground);
    ground
        .subsets()
        .filter(|s| !s.is_empty() && *s != ground)
        .all(|s| r.get(s) + r.get(ground.difference(s)) != total)
}

/// `m_{C,k}(S) = max(0, |S∩C| − k)`.
pub fn cluster_supermodular(n: usize, c: Subset, k: usize) -> Result<SetFunction> {
    if !c.is_subset_of(Subset::full(n)) || c.len() < 2 || k < 1 || k >= c.len() {
        return Err(Error::InvalidArgument(format!("cluster needs |C| >= 2 and 1 <= k <= |C|-1, got k={k}")));
    }
    Ok(SetFunction::from_fn(n, |s| {
        let v = s.intersection(c).len() as i64 - k as i64;
        Rational::from_integer(v.max(0).into())
    }))
}

/// Every admissible `(C, k)` in order of `C` (cardinality, then mask), then `k`.
pub fn cluster_parameters(n: usize) -> Vec<(Subset, usize)> {
    Char::indices(n).into_iter().flat_map(|c| (1..c.len()).map(move |k| (c, k))).collect()
}
