use hkr::cech::atiyah::two_chart_example;
use hkr::cech::cochain::add;
use hkr::cech::delta::{delta_matrix, TwistSpec};
use hkr::cech::divisor::{class_coordinates, divisor_class};
use hkr::cech::input::{random_hom_cocycle, random_wedge_twists};
use hkr::cech::nerve::{class_basis, coboundary, Cochain, LocalSystem, Nerve};
use hkr::cech::twist::{compose, is_identity_class, same_matrix_class};
use hkr::exterior::{koszul_dual_check, subsets, Ext};
use hkr::rational::{q, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn nerve(k: u8) -> Nerve {
    if k == 0 {
        Nerve::circle()
    } else {
        Nerve::torus()
    }
}

fn ext(rank: usize, deg: usize, coeffs: &[i64]) -> Ext<Q> {
    let mut x = Ext::zero(rank, deg);
    for (idx, c) in subsets(rank, deg).into_iter().zip(coeffs) {
        x.add_term(idx, q(*c));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wedge_is_associative_and_graded_commutative(
        (a, b, c) in (0usize..=2, 0usize..=2, 0usize..=1),
        ca in prop::collection::vec(-3i64..=3, 10),
        cb in prop::collection::vec(-3i64..=3, 10),
        cc in prop::collection::vec(-3i64..=3, 10),
    ) {
        let r = 5;
        let (x, y, z) = (ext(r, a, &ca), ext(r, b, &cb), ext(r, c, &cc));
        let left = x.wedge(&y).unwrap().wedge(&z).unwrap();
        let right = x.wedge(&y.wedge(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let sign = if (a * b) % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(x.wedge(&y).unwrap(), y.wedge(&x).unwrap().scale(&sign));
    }

    #[test]
    fn koszul_duality_holds_for_any_form(phi in prop::collection::vec(-7i64..=7, 1..=3)) {
        let phi: Vec<Q> = phi.into_iter().map(q).collect();
        prop_assert!(koszul_dual_check(&phi).ok);
    }

    #[test]
    fn t_is_a_chain_map_for_random_twists(seed in any::<u64>(), r in 2usize..=3, which in 0u8..=1) {
        let n = nerve(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_wedge_twists(&n, r, &mut rng);
        let d = random_wedge_twists(&n, r, &mut rng);
        let res = delta_matrix(&n, r, &TwistSpec::Wedge(c), &TwistSpec::Wedge(d)).unwrap();
        prop_assert!(res.verified(), "{:?}", res.chain_defect);

        let mu: Vec<_> = (0..r).map(|p| random_hom_cocycle(&n, r, p, &mut rng)).collect();
        let mut lam = mu.clone();
        lam[r - 1] = random_hom_cocycle(&n, r, r - 1, &mut rng);
        let res = delta_matrix(&n, r, &TwistSpec::Hom(lam), &TwistSpec::Hom(mu)).unwrap();
        prop_assert!(res.verified(), "{:?}", res.chain_defect);
    }

    #[test]
    fn delta_of_equal_twists_is_the_identity(seed in any::<u64>(), r in 2usize..=3, which in 0u8..=1) {
        let n = nerve(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lam = TwistSpec::Wedge(random_wedge_twists(&n, r, &mut rng));
        let res = delta_matrix(&n, r, &lam, &lam).unwrap();
        prop_assert!(is_identity_class(&n, &res.src, &res.matrix));
    }

    #[test]
    fn deltas_compose(seed in any::<u64>(), r in 2usize..=3, which in 0u8..=1) {
        let n = nerve(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = TwistSpec::Wedge(random_wedge_twists(&n, r, &mut rng));
        let b = TwistSpec::Wedge(random_wedge_twists(&n, r, &mut rng));
        let c = TwistSpec::Wedge(random_wedge_twists(&n, r, &mut rng));
        let ab = delta_matrix(&n, r, &a, &b).unwrap();
        let bc = delta_matrix(&n, r, &b, &c).unwrap();
        let ac = delta_matrix(&n, r, &a, &c).unwrap();
        prop_assert!(same_matrix_class(&n, &ab.src, &compose(&n, &bc.matrix, &ab.matrix), &ac.matrix));
    }

    #[test]
    fn divisor_class_depends_only_on_the_extension_class(
        which in 0u8..=1,
        k in prop::collection::vec(-3i64..=3, 2),
        f in prop::collection::vec(-4i64..=4, 16),
    ) {
        let n = nerve(which);
        let one = LocalSystem::constant(&n, 1);
        let gens = class_basis(&n, &one, 1);
        let delta = gens.iter().zip(&k).fold(vec![vec![q(0)]; n.count(1)], |acc, (g, &c)| {
            add(&acc, &g.iter().map(|v| vec![&v[0] * q(c)]).collect())
        });
        let f: Cochain = (0..n.count(0)).map(|i| vec![q(f[i % f.len()])]).collect();
        let moved = add(&delta, &coboundary(&n, &one, 0, &f));
        let (a, b) = (divisor_class(&n, &delta).unwrap(), divisor_class(&n, &moved).unwrap());
        prop_assert!(a.is_one_plus_delta && b.is_one_plus_delta);
        prop_assert_eq!(class_coordinates(&n, &a.q1), class_coordinates(&n, &b.q1));
        prop_assert_eq!(a.is_one, k.iter().take(gens.len()).all(|&c| c == 0));
    }

    #[test]
    fn connection_differences_form_a_cocycle_that_conjugates_the_gluing(scale in -3i64..=3, flat in any::<bool>()) {
        let (n, a) = two_chart_example(scale, flat);
        prop_assert!((0..a.r).all(|p| a.m_is_cocycle(&n, p)));
        prop_assert!(a.conjugation_holds(&n));
        prop_assert!(a.local_automorphisms_hold().unwrap());
    }
}
