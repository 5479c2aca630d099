mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use perverse::allowability::{check_cleaving_identity, Fullness};
use perverse::chain::{homology_all, HomologyGroup, IntegerChainComplex};
use perverse::ext::{ExtendedInt, Finite, NegInf, PosInf};
use perverse::group::{find_homomorphisms, FiniteGroupTarget, GroupPresentation};
use perverse::intersection::intersection_homology_all;
use perverse::io::{complex_from_json, complex_to_json};
use perverse::linalg::dense::DenseMatrix;
use perverse::linalg::smith::smith_normal_form;
use perverse::pi::{perverse_pi1_subdivided, Pi1Options};
use perverse::{construct, fixtures, Perversity};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ext() -> impl Strategy<Value = ExtendedInt> {
    prop_oneof![Just(NegInf), Just(PosInf), (-3i64..5).prop_map(Finite)]
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn hom_count(g: &GroupPresentation, t: &FiniteGroupTarget) -> usize {
    find_homomorphisms(g, t, false, 10_000_000).count
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn intersection_homology_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_complex(&mut rng, 7, 3);
        let strata = common::oracle_strata(&rc.depth);
        let (p, values) = common::random_perversity(&mut rng, &rc, &strata);
        let all: Vec<Vec<usize>> = rc.depth.keys().cloned().collect();
        let allow = |s: &[usize]| common::oracle_allowable(s, &rc, &strata, &values);
        let ih = intersection_homology_all(&rc.complex, &p).unwrap();
        for j in 0..=rc.complex.dim().unwrap() {
            let ora = common::oracle_ih(&all, &allow, j, &[2, 3, 5]);
            let lib = ih.get(j).cloned().unwrap_or_else(HomologyGroup::zero);
            prop_assert!(common::matches(&ora, &lib), "IH_{} = {} vs oracle rank {}", j, lib, ora.rank);
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng, 8, 3).complex;
        let s = complex_to_json(&k);
        let back = complex_from_json(&s).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(complex_to_json(&back), s);
    }

    #[test]
    fn full_simplices_form_a_subcomplex(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_complex(&mut rng, 8, 3);
        let strata = common::oracle_strata(&rc.depth);
        let (p, _) = common::random_perversity(&mut rng, &rc, &strata);
        let f = Fullness::new(&rc.complex, &p).unwrap();
        let k = &rc.complex;
        for (i, s) in k.simplices().iter().enumerate() {
            if f.is_full_at(i) {
                for face in s.boundary_faces() {
                    prop_assert!(f.is_full_at(k.index_of(&face).unwrap()));
                }
            }
        }
    }

    #[test]
    fn smith_postconditions(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 1..6), 1..6)) {
        let c = rows.iter().map(Vec::len).min().unwrap();
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..c].to_vec()).collect();
        let a = DenseMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert!(s.u.mul(&a).mul(&s.v) == s.d);
        let big = |m: &DenseMatrix| -> Vec<Vec<BigInt>> { (0..m.rows()).map(|i| m.row(i).to_vec()).collect() };
        prop_assert!(common::det(&big(&s.u)).abs().is_one());
        prop_assert!(common::det(&big(&s.v)).abs().is_one());
        prop_assert!(s.diagonal.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert_eq!(s.rank(), common::rank_q(&big(&a)));
    }

    #[test]
    fn complement_is_an_involution(values in prop::collection::vec(-2i64..4, 1..5), k in ext()) {
        for p in [Perversity::gm(values.clone()), Perversity::constant(k), Perversity::top_offset(k)] {
            prop_assert_eq!(p.complement().complement(), p);
        }
    }

    #[test]
    fn simplification_preserves_quotients(
        gens in 1usize..4,
        words in prop::collection::vec(prop::collection::vec(prop_oneof![1i64..4, -3i64..0], 1..7), 0..4),
        budget in 10usize..1000,
    ) {
        let relators: Vec<Vec<i64>> = words
            .into_iter()
            .map(|w| w.into_iter().filter(|x| x.unsigned_abs() as usize <= gens).collect::<Vec<_>>())
            .filter(|w| !w.is_empty())
            .collect();
        let g = GroupPresentation::new(gens, relators).unwrap();
        let s = g.simplify(budget);
        prop_assert!(g.abelianization().isomorphic(&s.abelianization()));
        for t in [FiniteGroupTarget::symmetric3(), FiniteGroupTarget::cyclic(2), FiniteGroupTarget::cyclic(3)] {
            // homomorphism counts are |Hom(G, T)|, invariant under Tietze moves
            prop_assert_eq!(hom_count(&g, &t), hom_count(&s, &t));
        }
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn pi1_independent_of_spanning_tree(seed in 1u64..u64::MAX, budget in 50usize..5000) {
        let a5 = FiniteGroupTarget::alternating5();
        let s3 = FiniteGroupTarget::symmetric3();
        for (k, p) in [
            (fixtures::pinched_torus(), Perversity::gm(vec![-1])),
            (fixtures::torus7(), Perversity::zero()),
            (fixtures::rp2_6(), Perversity::zero()),
            (construct::cone(&fixtures::pinched_torus()), Perversity::gm(vec![-1, 0])),
        ] {
            let base = perverse_pi1_subdivided(&k, &p, None, 1, Pi1Options::default()).unwrap();
            let other = perverse_pi1_subdivided(&k, &p, None, 1, Pi1Options { tietze_budget: budget, seed }).unwrap();
            prop_assert!(base.abelianization.isomorphic(&other.abelianization));
            prop_assert_eq!(hom_count(&base.simplified, &s3), hom_count(&other.simplified, &s3));
            prop_assert_eq!(hom_count(&base.simplified, &a5), hom_count(&other.simplified, &a5));
        }
    }

    #[test]
    fn cleaving_identity_on_random_filtrations(seed in any::<u64>(), steps in prop::collection::vec(any::<bool>(), 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rc = common::random_complex(&mut rng, 8, 3);
        prop_assume!(rc.complex.singular_strata().all(|s| s.codim >= 2));
        // a random GM perversity on codimensions 2..=5
        let mut values = vec![0i64];
        for up in steps {
            values.push(values.last().unwrap() + i64::from(up));
        }
        let p = Perversity::gm(values);
        let r = check_cleaving_identity(&rc.complex, &p).unwrap();
        prop_assert!(r.holds, "{:?}", r);
    }
}

#[test]
fn subdivision_preserves_ordinary_homology() {
    for name in ["torus7", "rp2_6", "pinched_torus", "cone(torus7)", "wedge_s2_s2"] {
        let k = fixtures::parse(name).unwrap();
        let sd = construct::barycentric_subdivide(&k);
        let h = homology_all(&IntegerChainComplex::from_simplices(k.simplices()));
        let hs = homology_all(&IntegerChainComplex::from_simplices(sd.simplices()));
        assert_eq!(h.len(), hs.len());
        for (a, b) in h.iter().zip(&hs) {
            assert!(a.isomorphic(b), "{name}: {a} vs {b}");
        }
    }
}

#[test]
fn oracle_sees_torsion() {
    // the projective plane has H_1 = Z/2; the oracle must report it
    let k = fixtures::rp2_6();
    let all: Vec<Vec<usize>> = k.simplices().iter().map(|s| s.vertices().to_vec()).collect();
    let g = common::oracle_ih(&all, &|_| true, 1, &[2, 3]);
    assert_eq!((g.rank, g.p_torsion.clone()), (0, vec![(2, 1), (3, 0)]));
    let lib = intersection_homology_all(&k, &Perversity::zero()).unwrap();
    assert!(common::matches(&g, &lib[1]));
    assert!(lib[1].torsion.iter().all(|t| t.is_positive() && *t == BigInt::from(2)));
}

#[test]
fn augmented_invariants_agree_between_sd1_and_sd2() {
    for name in ["sphere(2)", "torus7", "rp2_6", "pinched_torus", "pinched_torus_restated", "wedge_s2_s2", "two_pinched_tori", "cone(torus7)"] {
        let k = fixtures::parse(name).unwrap();
        let c = k.formal_dim().max(2);
        for p in [Perversity::zero(), Perversity::lower_middle(c), Perversity::upper_middle(c), Perversity::top()] {
            let r = perverse::pi::subdivision_stability(&k, &p, 2, Pi1Options::default(), 1_000_000).unwrap();
            assert!(r.stable, "{name}: {:?}", r.disagreements);
        }
    }
}
