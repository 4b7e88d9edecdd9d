//! Family-variable vectors, characteristic imsets and standard imsets of
//! DAGs, and the maps between them.

use num_traits::One;

use crate::dags::Dag;
use crate::ground::{CharVector, FamVector, FamilyIndex, SetFunction, Subset};
use crate::rational::Rational;

pub type StandardImset = SetFunction;

/// 0/1 vector with a one at `(a|pa(a))` for each node with parents.
pub fn fam_vector(g: &Dag) -> FamVector {
    let n = g.n();
    FamVector::from_pairs(
        n,
        (0..n)
            .filter(|&a| !g.parents(a).is_empty())
            .map(|a| (FamilyIndex { node: a, parents: g.parents(a) }, Rational::one())),
    )
    .expect("parent sets are valid family indices")
}

/// `c(S) = Σ_{a∈S} Σ_{S\{a} ⊆ B ⊆ N\{a}} fam(a|B)`, linear in `fam`.
pub fn char_from_fam(fam: &FamVector) -> CharVector {
    let mut c = CharVector::zero(fam.n());
    for (idx, value) in fam.iter() {
        // every S = {a} ∪ T with ∅ ≠ T ⊆ B receives fam(a|B)
        for t in idx.parents.subsets().skip(1) {
            c.add_to(t.with(idx.node), value).expect("|S| >= 2");
        }
    }
    c
}

pub fn char_imset(g: &Dag) -> CharVector {
    char_from_fam(&fam_vector(g))
}

/// `u_G = δ_N − δ_∅ + Σ_a (δ_{pa(a)} − δ_{{a}∪pa(a)})`.
pub fn standard_imset(g: &Dag) -> StandardImset {
    let n = g.n();
    let one = Rational::one();
    let minus = -Rational::one();
    let mut u = SetFunction::zero(n);
    u.add_to(Subset::full(n), &one).expect("subset of N");
    u.add_to(Subset::EMPTY, &minus).expect("subset of N");
    for a in 0..n {
        let pa = g.parents(a);
        u.add_to(pa, &one).expect("subset of N");
        u.add_to(pa.with(a), &minus).expect("subset of N");
    }
    u
}

/// `c(T) = 1 − Σ_{S ⊇ T} u(S)` for `|T| ≥ 2`.
pub fn char_from_standard(u: &StandardImset) -> CharVector {
    let n = u.n();
    CharVector::from_fn(n, |t| {
        let mut acc = Rational::one();
        for (s, value) in u.iter() {
            if t.is_subset_of(s) {
                acc -= value;
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dags::{all_dags, markov_equivalent, Dag};
    use crate::ground::{Char, Fam, GroundSet, IndexFamily};
    use crate::rational::int;
    use num_traits::Zero;

    fn dag(spec: &[&str]) -> Dag {
        let gs = GroundSet::letters(spec.len()).unwrap();
        Dag::new(spec.iter().map(|p| gs.parse_subset(p).unwrap()).collect()).unwrap()
    }

    fn set(n: usize, text: &str) -> Subset {
        GroundSet::letters(n).unwrap().parse_subset(text).unwrap()
    }

    /// Literal evaluation of the defining double sum over all (a, B).
    fn char_oracle(fam: &FamVector) -> CharVector {
        let n = fam.n();
        let full = Subset::full(n);
        CharVector::from_fn(n, |s| {
            let mut acc = Rational::zero();
            for a in s.elements() {
                for b in full.without(a).subsets() {
                    if s.without(a).is_subset_of(b) {
                        acc += fam.family(a, b);
                    }
                }
            }
            acc
        })
    }

    #[test]
    fn fam_vector_examples() {
        assert!(fam_vector(&Dag::empty(3)).is_zero());
        assert_eq!(fam_vector(&dag(&["", "", "ab"])), FamVector::identifier(3, 2, set(3, "ab")));
        let full = fam_vector(&Dag::full_from_order(&[0, 1, 2]));
        let expected = FamVector::identifier(3, 1, set(3, "a")).plus(&FamVector::identifier(3, 2, set(3, "ab"))).unwrap();
        assert_eq!(full, expected);
    }

    #[test]
    fn char_examples() {
        let c = char_imset(&dag(&["", "", "ab"]));
        assert_eq!(c.get(set(3, "ab")), int(0));
        assert_eq!(c.get(set(3, "ac")), int(1));
        assert_eq!(c.get(set(3, "bc")), int(1));
        assert_eq!(c.get(set(3, "abc")), int(1));
        assert!(char_from_fam(&FamVector::zero(3)).is_zero());
        for order in crate::dags::permutations(3) {
            assert_eq!(char_imset(&Dag::full_from_order(&order)), CharVector::ones(3));
        }
    }

    #[test]
    fn standard_imset_examples() {
        assert!(standard_imset(&Dag::full_from_order(&[2, 0, 1])).is_zero());
        assert!(standard_imset(&dag(&["", "a"])).is_zero());
        let u = standard_imset(&Dag::empty(3));
        let mut expected = SetFunction::delta(3, Subset::full(3));
        expected.set(Subset::EMPTY, int(2)).unwrap();
        for a in 0..3 {
            expected.set(Subset::singleton(a), int(-1)).unwrap();
        }
        assert_eq!(u, expected);
    }

    #[test]
    fn char_from_standard_examples() {
        assert_eq!(char_from_standard(&SetFunction::zero(3)), CharVector::ones(3));
        assert!(char_from_standard(&standard_imset(&Dag::empty(3))).is_zero());
        let g = dag(&["", "", "ab"]);
        assert_eq!(char_from_standard(&standard_imset(&g)), char_imset(&g));
    }

    #[test]
    fn encodings_agree_exhaustively() {
        for n in 2..=4 {
            for g in all_dags(n) {
                let fam = fam_vector(g);
                let c = char_from_fam(&fam);
                assert_eq!(c, char_oracle(&fam));
                assert_eq!(c, char_from_standard(&standard_imset(g)));
                let u = standard_imset(g);
                let total: Rational = u.iter().map(|(_, v)| v.clone()).sum();
                assert!(total.is_zero());
                for a in 0..n {
                    let s: Rational = u.iter().filter(|(s, _)| s.contains(a)).map(|(_, v)| v.clone()).sum();
                    assert!(s.is_zero());
                }
                for (s, v) in c.iter() {
                    assert_eq!(*v, int(1));
                    if s.len() == 2 {
                        let e: Vec<usize> = s.elements().collect();
                        assert!(g.adjacent(e[0], e[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn char_imsets_identify_classes() {
        let dags = all_dags(4);
        let chars: Vec<CharVector> = dags.iter().map(char_imset).collect();
        let fams: Vec<FamVector> = dags.iter().map(fam_vector).collect();
        for i in 0..dags.len() {
            for j in 0..dags.len() {
                assert_eq!(markov_equivalent(&dags[i], &dags[j]).unwrap(), chars[i] == chars[j]);
                assert_eq!(i == j, fams[i] == fams[j]);
            }
        }
    }

    #[test]
    fn char_from_fam_is_linear() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let n = rng.gen_range(2..=4);
            let mut random = || {
                FamVector::from_fn(n, |_| crate::rational::frac(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            };
            let (x, y) = (random(), random());
            let (alpha, beta) = (crate::rational::frac(3, 7), int(-2));
            let lhs = char_from_fam(&x.scaled(&alpha).plus(&y.scaled(&beta)).unwrap());
            let rhs = char_from_fam(&x).scaled(&alpha).plus(&char_from_fam(&y).scaled(&beta)).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(Fam::dimension(n), x.to_dense().len());
            assert_eq!(Char::dimension(n), lhs.to_dense().len());
        }
    }
}
