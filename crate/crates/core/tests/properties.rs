use arglue_core::abutment::{abutments, tilting_modules, Fracturing, Side};
use arglue_core::algebra::{kupisch_of, nakayama, starlike, ArmDir, KupischShape};
use arglue_core::ar::{ar_quiver, ar_quiver_closure, nakayama_uniserials, DEFAULT_CAP};
use arglue_core::corpus::{self, random_acyclic_kupisch, random_decoration, random_starlike, random_tree_system, TreeShape};
use arglue_core::decompose::{decompose, is_isomorphic};
use arglue_core::glue::{equal_up_to_renaming, glue, glue_system_both_orders, structurally_equal};
use arglue_core::homology::{tau_n, tau_n_inv};
use arglue_core::orbit::{orbit_indecomposables, self_glue_witness, tilde};
use arglue_core::rep::hom_dim;
use arglue_core::verify::{check_nct, nct_candidate, Subcategory};
use arglue_core::{Algebra, Matrix, Rep, Q};
use proptest::prelude::*;
use rand::Rng;
use std::sync::Arc;

fn small_algebra(seed: u64) -> Arc<Algebra> {
    let mut r = corpus::rng(seed);
    Arc::new(match r.gen_range(0..3) {
        0 => {
            let len = r.gen_range(1..=6);
            nakayama(&random_acyclic_kupisch(&mut r, len)).unwrap()
        }
        1 => random_starlike(&mut r, 1, 5),
        _ => random_starlike(&mut r, 3, 3),
    })
}

fn twist(m: &Rep, entries: &[i64]) -> Rep {
    let alg = m.algebra().clone();
    let mut e = entries.iter().cycle();
    let g: Vec<Matrix> = m
        .dims()
        .iter()
        .map(|&d| {
            let mut x = Matrix::identity(d);
            for i in 0..d {
                for j in i + 1..d {
                    x[(i, j)] = Q::int(*e.next().unwrap());
                }
            }
            x
        })
        .collect();
    let ginv: Vec<Matrix> = g.iter().map(|x| x.inverse().unwrap()).collect();
    let maps = alg.arrows().iter().enumerate().map(|(i, a)| g[a.target].mul(m.map(i)).mul(&ginv[a.source])).collect();
    Rep::new(alg, m.dims().to_vec(), maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn yoneda_dimensions(seed in any::<u64>()) {
        let alg = small_algebra(seed);
        for m in ar_quiver(&alg).unwrap().reps() {
            for v in 0..alg.num_vertices() {
                prop_assert_eq!(hom_dim(&Rep::projective(&alg, v), &m), m.dim_at(v));
                prop_assert_eq!(hom_dim(&m, &Rep::injective(&alg, v)), m.dim_at(v));
            }
        }
    }

    #[test]
    fn decomposition_survives_base_change(seed in any::<u64>(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..4), entries in prop::collection::vec(-3i64..=3, 1..8)) {
        let alg = small_algebra(seed);
        let indecs = ar_quiver(&alg).unwrap().reps();
        let chosen: Vec<&Rep> = picks.iter().map(|i| &indecs[i.index(indecs.len())]).collect();
        let m = twist(&Rep::direct_sum(&alg, &chosen), &entries);
        let d = decompose(&m).unwrap();
        prop_assert!(d.certificate_holds(&m));
        prop_assert_eq!(d.count(), chosen.len());
        let mut left: Vec<&Rep> = chosen.clone();
        for p in &d.parts {
            let at = left.iter().position(|x| is_isomorphic(x, p));
            prop_assert!(at.is_some());
            left.remove(at.unwrap());
        }
    }

    #[test]
    fn mesh_identity_and_closure(seed in any::<u64>()) {
        let alg = small_algebra(seed);
        let ar = ar_quiver(&alg).unwrap();
        prop_assert!(ar.mesh_identity_holds());
        let cl = ar_quiver_closure(&alg, DEFAULT_CAP).unwrap();
        prop_assert_eq!(cl.len(), ar.len());
        prop_assert_eq!(&cl.arrows.values().sum::<usize>(), &ar.arrows.values().sum::<usize>());
        prop_assert!(ar.reps().iter().all(|m| cl.find(m).is_some()));
    }

    #[test]
    fn nakayama_uniserials_are_everything(seed in any::<u64>(), len in 1usize..=9) {
        let k = random_acyclic_kupisch(&mut corpus::rng(seed), len);
        let alg = Arc::new(nakayama(&k).unwrap());
        let ar = ar_quiver(&alg).unwrap();
        let ser = nakayama_uniserials(&alg);
        prop_assert_eq!(ar.len(), k.sum());
        prop_assert_eq!(ser.len(), k.sum());
        prop_assert!(ser.iter().all(|m| ar.find(m).is_some()));
    }

    #[test]
    fn whole_category_for_n_one(seed in any::<u64>()) {
        let alg = small_algebra(seed);
        let indecs = ar_quiver(&alg).unwrap().reps();
        prop_assert!(check_nct(&indecs, &indecs, 1).unwrap().pass);
    }

    #[test]
    fn tau_n_is_a_bijection_on_members(seed in any::<u64>(), n in 2usize..=4) {
        let alg = small_algebra(seed);
        let m = nct_candidate(&alg, n, DEFAULT_CAP).unwrap();
        let indecs = ar_quiver(&alg).unwrap().reps();
        prop_assume!(check_nct(&indecs, &m, n).unwrap().pass);
        let sub = Subcategory::new(&alg, m.iter().cloned());
        for x in &m {
            let up = tau_n_inv(x, n);
            if up.is_zero() {
                continue;
            }
            prop_assert!(sub.contains(&up));
            prop_assert!(is_isomorphic(&tau_n(&up, n), x));
        }
    }

    #[test]
    fn trivial_gluing_changes_nothing(seed in any::<u64>()) {
        let b = random_decoration(&mut corpus::rng(seed));
        for i in abutments(&b, Side::Right) {
            let h = arglue_core::abutment::linear_a(i.height());
            let g = glue(&b, i.anchor, &h, 0).unwrap();
            prop_assert!(g.trivial);
            prop_assert!(equal_up_to_renaming(&g.identified.algebra, &b));
        }
    }

    #[test]
    fn reflection_of_tilting(h in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let ts = tilting_modules(h);
        let t = &ts[pick.index(ts.len())];
        let r = t.reflect();
        prop_assert!(r.is_tilting());
        prop_assert_eq!(&r.reflect(), t);
        prop_assert_eq!(t.is_mirrored(), &r == t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn covering_matches_cyclic_nakayama(seed in any::<u64>(), len in 3usize..=8) {
        let k = random_acyclic_kupisch(&mut corpus::rng(seed), len);
        let alg = nakayama(&k).unwrap();
        let Ok(wit) = self_glue_witness(&alg, &Fracturing::trivial(&alg)) else { return Ok(()) };
        let til = tilde(&alg, &wit).unwrap();
        let series = kupisch_of(&til.algebra).unwrap();
        prop_assert_eq!(series.shape(), KupischShape::Cyclic);
        let orb = orbit_indecomposables(&alg, &wit, 2, 6).unwrap();
        let wider = orbit_indecomposables(&alg, &wit, 3, 7).unwrap();
        prop_assert_eq!(orb.modules.len(), series.sum());
        prop_assert_eq!(wider.modules.len(), orb.modules.len());
        prop_assert_eq!(nakayama_uniserials(&til.algebra).len(), series.sum());
        let cl = ar_quiver_closure(&til.algebra, DEFAULT_CAP).unwrap();
        prop_assert_eq!(cl.len(), series.sum());
        prop_assert!(orb.modules.iter().all(|m| cl.find(m).is_some()));
    }

    #[test]
    fn tree_gluing_is_order_independent(seed in any::<u64>(), shape in prop_oneof![Just(TreeShape::C1), Just(TreeShape::C2), Just(TreeShape::C3)]) {
        let sys = random_tree_system(&mut corpus::rng(seed), shape).unwrap();
        let (x, y) = glue_system_both_orders(&sys).unwrap();
        prop_assert!(structurally_equal(&x, &y));
    }

    #[test]
    fn cluster_tilting_is_unique(seed in any::<u64>(), n in 2usize..=3) {
        let alg = small_algebra(seed);
        let indecs = ar_quiver(&alg).unwrap().reps();
        let pi = Subcategory::new(
            &alg,
            (0..alg.num_vertices()).flat_map(|v| [Rep::projective(&alg, v), Rep::injective(&alg, v)]),
        );
        let free: Vec<&Rep> = indecs.iter().filter(|x| !pi.contains(x)).collect();
        prop_assume!(free.len() <= 10);
        let mut passing = Vec::new();
        for mask in 0u32..(1 << free.len()) {
            let mut m = pi.members.clone();
            m.extend((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i].clone()));
            if check_nct(&indecs, &m, n).unwrap().pass {
                passing.push(m);
            }
        }
        prop_assert!(passing.len() <= 1);
        let cand = nct_candidate(&alg, n, DEFAULT_CAP).unwrap();
        let cand_pass = check_nct(&indecs, &cand, n).unwrap().pass;
        prop_assert_eq!(cand_pass, passing.len() == 1);
    }
}

#[test]
fn starlike_arms_in_both_directions_are_finite() {
    let alg = Arc::new(starlike(&[(3, ArmDir::In), (3, ArmDir::In), (3, ArmDir::Out), (3, ArmDir::Out)]).unwrap());
    assert!(ar_quiver(&alg).unwrap().mesh_identity_holds());
}
