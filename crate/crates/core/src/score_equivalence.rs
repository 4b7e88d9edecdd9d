//! Score equivalent objectives: the linear conditions characterizing them,
//! their set-function parametrization, translation to characteristic-imset
//! objectives, and the SE-face test.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::dags::{all_dags, Dag, MAX_ENUMERATED_NODES};
use crate::encodings::char_imset;
use crate::error::{Error, Result};
use crate::ground::{Char, CharVector, Fam, FamVector, FamilyIndex, IndexFamily, Subset};
use crate::linalg;
use crate::polyhedra::simplex;
use crate::rational::Rational;

/// First `(a, b, Z)` at which `φ(b|aZ) + φ(a|Z) = φ(a|bZ) + φ(b|Z)` fails.
pub fn se_violation(obj: &FamVector) -> Option<(usize, usize, Subset)> {
    let n = obj.n();
    let full = Subset::full(n);
    for a in 0..n {
        for b in a + 1..n {
            for z in full.without(a).without(b).subsets() {
                let lhs = obj.family(b, z.with(a)) + obj.family(a, z);
                let rhs = obj.family(a, z.with(b)) + obj.family(b, z);
                if lhs != rhs {
                    return Some((a, b, z));
                }
            }
        }
    }
    None
}

pub fn is_se_objective(obj: &FamVector) -> bool {
    se_violation(obj).is_none()
}

fn require_se(obj: &FamVector) -> Result<()> {
    match se_violation(obj) {
        None => Ok(()),
        Some((a, b, z)) => Err(Error::NotScoreEquivalent(format!(
            "condition fails at a={a}, b={b}, Z={z:?}"
        ))),
    }
}

/// `φ(a|B) = m({a}∪B) − m(B)`.
pub fn objective_from_setfn(m: &CharVector) -> FamVector {
    FamVector::from_fn(m.n(), |idx: FamilyIndex| m.get(idx.parents.with(idx.node)) - m.get(idx.parents))
}

/// The unique `m` with `objective_from_setfn(m) = obj`.
pub fn setfn_from_objective(obj: &FamVector) -> Result<CharVector> {
    require_se(obj)?;
    let n = obj.n();
    let mut m = CharVector::zero(n);
    for d in Char::indices(n) {
        let b = d.elements().last().expect("|D| >= 2");
        let rest = d.without(b);
        let value = obj.family(b, rest) + m.get(rest);
        m.set(d, value)?;
    }
    if objective_from_setfn(&m) != *obj {
        return Err(Error::Inconsistent("set-function reconstruction does not reproduce the objective".into()));
    }
    Ok(m)
}

fn parity_sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `z` with `⟨obj, fam⟩ = ⟨z, char_from_fam(fam)⟩`; every choice of `b ∈ T`
/// is evaluated and must agree.
pub fn char_objective(obj: &FamVector) -> Result<CharVector> {
    require_se(obj)?;
    let n = obj.n();
    let mut z = CharVector::zero(n);
    for t in Char::indices(n) {
        let mut value: Option<Rational> = None;
        for b in t.elements() {
            let rest = t.without(b);
            let mut acc = Rational::zero();
            for k in rest.subsets().skip(1) {
                acc += parity_sign(rest.len() - k.len()) * obj.family(b, k);
            }
            match &value {
                None => value = Some(acc),
                Some(v) if *v != acc => {
                    return Err(Error::Inconsistent(format!("value at {t:?} depends on the chosen element")))
                }
                _ => {}
            }
        }
        z.set(t, value.expect("|T| >= 2"))?;
    }
    Ok(z)
}

/// Family-variable objective `φ(a|B) = Σ_{∅≠T⊆B} z({a}∪T)` of a
/// characteristic-imset objective.
pub fn fam_objective_from_char(z: &CharVector) -> FamVector {
    FamVector::from_fn(z.n(), |idx: FamilyIndex| {
        let mut acc = Rational::zero();
        for (s, v) in z.iter() {
            if s.contains(idx.node) && s.without(idx.node).is_subset_of(idx.parents) {
                acc += v;
            }
        }
        acc
    })
}

/// `z(T) = Σ_{L⊆T, |L|≥2} (−1)^{|T\L|} m(L)`.
pub fn moebius_down(m: &CharVector) -> CharVector {
    CharVector::from_fn(m.n(), |t| {
        let mut acc = Rational::zero();
        for (l, v) in m.iter() {
            if l.is_subset_of(t) {
                acc += parity_sign(t.len() - l.len()) * v;
            }
        }
        acc
    })
}

/// `m(S) = Σ_{T⊆S, |T|≥2} z(T)`.
pub fn moebius_up(z: &CharVector) -> CharVector {
    CharVector::from_fn(z.n(), |s| {
        let mut acc = Rational::zero();
        for (t, v) in z.iter() {
            if t.is_subset_of(s) {
                acc += v;
            }
        }
        acc
    })
}

/// Dimension of the solution space of the SE conditions, by rank.
pub fn se_subspace_dimension(n: usize) -> usize {
    let dim = Fam::dimension(n);
    let full = Subset::full(n);
    let col = |node: usize, parents: Subset| Fam::position(n, FamilyIndex { node, parents });
    let mut rows = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for z in full.without(a).without(b).subsets() {
                let mut row = vec![Rational::zero(); dim];
                for (node, parents, sign) in [(b, z.with(a), 1), (a, z, 1), (a, z.with(b), -1), (b, z, -1)] {
                    if let Some(j) = col(node, parents) {
                        row[j] += Rational::from_integer(sign.into());
                    }
                }
                rows.push(row);
            }
        }
    }
    dim - linalg::rank(&rows, dim)
}

pub fn is_closed_under_equivalence(graphs: &[Dag]) -> bool {
    let Some(first) = graphs.first() else { return true };
    let n = first.n();
    let chars: BTreeSet<CharVector> = graphs.iter().map(char_imset).collect();
    let members: BTreeSet<&Dag> = graphs.iter().collect();
    all_dags(n).iter().all(|h| !chars.contains(&char_imset(h)) || members.contains(h))
}

/// Outcome of the SE-face test.
#[derive(Clone, Debug, PartialEq)]
pub struct SeFace {
    pub is_se_face: bool,
    /// Optimal separation margin under the box normalization.
    pub margin: Rational,
    pub witness: Option<FamVector>,
    pub bound: Option<Rational>,
}

/// Decides whether some SE objective is maximized over the DAG-codes
/// exactly at `graphs`.
///
/// Maximizes a margin `t` subject to `⟨φ, fam_G⟩ = u` on the set,
/// `⟨φ, fam_H⟩ ≤ u − t` off the set, `|m(S)| ≤ 1` and `t ≤ 1`.
pub fn is_se_face(graphs: &[Dag]) -> Result<SeFace> {
    let first = graphs.first().ok_or_else(|| Error::InvalidArgument("empty graph set".into()))?;
    let n = first.n();
    if graphs.iter().any(|g| g.n() != n) {
        return Err(Error::InvalidArgument("graphs over different ground sets".into()));
    }
    if n > MAX_ENUMERATED_NODES {
        return Err(Error::InvalidArgument(format!("SE-face test is limited to {MAX_ENUMERATED_NODES} nodes")));
    }
    let members: BTreeSet<&Dag> = graphs.iter().collect();
    let cai = Char::indices(n);
    let d = cai.len();
    // variables: m(S) for S in Cai, then u, then t
    let nvar = d + 2;
    let row_of = |g: &Dag| -> Vec<Rational> {
        let mut row = vec![Rational::zero(); nvar];
        for a in 0..n {
            let pa = g.parents(a);
            if pa.is_empty() {
                continue;
            }
            if let Some(j) = Char::position(n, pa.with(a)) {
                row[j] += Rational::one();
            }
            if let Some(j) = Char::position(n, pa) {
                row[j] -= Rational::one();
            }
        }
        row
    };
    let mut eq_rows: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut ub_rows: BTreeSet<Vec<Rational>> = BTreeSet::new();
    for g in all_dags(n) {
        let mut row = row_of(g);
        row[d] = -Rational::one();
        if members.contains(g) {
            eq_rows.insert(row);
        } else {
            row[d + 1] = Rational::one();
            ub_rows.insert(row);
        }
    }
    let mut a_ub: Vec<Vec<Rational>> = ub_rows.into_iter().collect();
    let mut b_ub = vec![Rational::zero(); a_ub.len()];
    for j in 0..d {
        for sign in [1i64, -1] {
            let mut row = vec![Rational::zero(); nvar];
            row[j] = Rational::from_integer(sign.into());
            a_ub.push(row);
            b_ub.push(Rational::one());
        }
    }
    let mut cap = vec![Rational::zero(); nvar];
    cap[d + 1] = Rational::one();
    a_ub.push(cap.clone());
    b_ub.push(Rational::one());
    let a_eq: Vec<Vec<Rational>> = eq_rows.into_iter().collect();
    let b_eq = vec![Rational::zero(); a_eq.len()];
    let sol = simplex::maximize(&cap, &a_ub, &b_ub, &a_eq, &b_eq)?;
    let margin = sol.value.clone();
    if !margin.is_positive() {
        return Ok(SeFace { is_se_face: false, margin, witness: None, bound: None });
    }
    let m = CharVector::from_pairs(n, cai.iter().enumerate().map(|(j, s)| (*s, sol.point[j].clone())))?;
    Ok(SeFace {
        is_se_face: true,
        margin,
        witness: Some(objective_from_setfn(&m)),
        bound: Some(sol.point[d].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dags::permutations;
    use crate::encodings::{char_from_fam, fam_vector};
    use crate::ground::GroundSet;
    use crate::rational::{frac, int};
    use rand::{Rng, SeedableRng};

    fn set(text: &str, n: usize) -> Subset {
        GroundSet::letters(n).unwrap().parse_subset(text).unwrap()
    }

    fn fam(n: usize, pairs: &[(&str, i64)]) -> FamVector {
        let gs = GroundSet::letters(n).unwrap();
        FamVector::from_pairs(n, pairs.iter().map(|(k, v)| (gs.parse_family(k).unwrap(), int(*v)))).unwrap()
    }

    fn chars(n: usize, pairs: &[(&str, i64)]) -> CharVector {
        CharVector::from_pairs(n, pairs.iter().map(|(k, v)| (set(k, n), int(*v)))).unwrap()
    }

    fn random_m(rng: &mut impl Rng, n: usize) -> CharVector {
        CharVector::from_fn(n, |_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
    }

    #[test]
    fn se_examples() {
        assert!(is_se_objective(&FamVector::zero(3)));
        let cluster_ab = fam(3, &[("a|b", 1), ("a|bc", 1), ("b|a", 1), ("b|ac", 1)]);
        assert!(is_se_objective(&cluster_ab));
        assert!(!is_se_objective(&fam(3, &[("a|b", -1)])));
    }

    #[test]
    fn parametrization_examples() {
        assert!(objective_from_setfn(&CharVector::zero(3)).is_zero());
        assert_eq!(
            objective_from_setfn(&chars(3, &[("abc", 1)])),
            fam(3, &[("a|bc", 1), ("b|ac", 1), ("c|ab", 1)])
        );
        let cluster_ab = fam(3, &[("a|b", 1), ("a|bc", 1), ("b|a", 1), ("b|ac", 1)]);
        assert_eq!(objective_from_setfn(&chars(3, &[("ab", 1), ("abc", 1)])), cluster_ab);
        assert_eq!(setfn_from_objective(&cluster_ab).unwrap(), chars(3, &[("ab", 1), ("abc", 1)]));
        assert!(setfn_from_objective(&FamVector::zero(4)).unwrap().is_zero());
        assert!(matches!(setfn_from_objective(&fam(3, &[("a|b", -1)])), Err(Error::NotScoreEquivalent(_))));
    }

    #[test]
    fn char_objective_examples() {
        let all = objective_from_setfn(&chars(3, &[("ab", 1), ("ac", 1), ("bc", 1), ("abc", 2)]));
        assert_eq!(char_objective(&all).unwrap(), chars(3, &[("ab", 1), ("ac", 1), ("bc", 1), ("abc", -1)]));
        let ab = objective_from_setfn(&chars(3, &[("ab", 1), ("abc", 1)]));
        assert_eq!(char_objective(&ab).unwrap(), chars(3, &[("ab", 1)]));
        assert!(char_objective(&FamVector::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius_down(&chars(3, &[("ab", 1)])), chars(3, &[("ab", 1), ("abc", -1)]));
        assert!(moebius_down(&CharVector::zero(4)).is_zero());
    }

    #[test]
    fn subspace_dimension() {
        for n in 2..=4 {
            assert_eq!(se_subspace_dimension(n), Char::dimension(n));
        }
    }

    #[test]
    fn round_trips_and_transform_identity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(2..=5);
            let m = random_m(&mut rng, n);
            let obj = objective_from_setfn(&m);
            assert!(is_se_objective(&obj));
            assert_eq!(setfn_from_objective(&obj).unwrap(), m);
            assert_eq!(moebius_up(&moebius_down(&m)), m);
            assert_eq!(moebius_down(&moebius_up(&m)), m);
            let z = char_objective(&obj).unwrap();
            assert_eq!(z, moebius_down(&m));
            assert_eq!(fam_objective_from_char(&z), obj);
            let x = FamVector::from_fn(n, |_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
            assert_eq!(obj.dot(&x).unwrap(), z.dot(&char_from_fam(&x)).unwrap());
        }
    }

    #[test]
    fn se_face_examples() {
        let fulls: Vec<Dag> = permutations(3).iter().map(|p| Dag::full_from_order(p)).collect();
        let r = is_se_face(&fulls).unwrap();
        assert!(r.is_se_face);
        let w = r.witness.unwrap();
        let u = r.bound.unwrap();
        for g in all_dags(3) {
            let v = w.dot(&fam_vector(g)).unwrap();
            if fulls.contains(g) {
                assert_eq!(v, u);
            } else {
                assert!(v < u);
            }
        }
        assert!(is_se_face(&[Dag::empty(3)]).unwrap().is_se_face);
        assert!(!is_se_face(&fulls[..1]).unwrap().is_se_face);
        assert!(is_se_face(&[]).is_err());
        assert!(is_closed_under_equivalence(&fulls));
        assert!(!is_closed_under_equivalence(&fulls[..1]));
    }
}
