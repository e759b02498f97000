use std::collections::BTreeSet;

use grady_core::abelian::{universal_group_formula, universal_group_m};
use grady_core::classify::{class_invariant, enumerate_fine, ClassInvariant, Family, InvolutionKind};
use grady_core::gdivalg::GDAlgebra;
use grady_core::gradedmat::{build, is_fine, AlgParams};
use grady_core::selftest;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn params_and_invariants_round_trip_through_json(f in family(), seed in any::<u64>()) {
        let p = selftest::random_params(&mut selftest::rng(seed), f, 6);
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(&serde_json::from_str::<AlgParams>(&text).unwrap(), &p);
        let inv = class_invariant(&p).unwrap();
        let text = serde_json::to_string(&inv).unwrap();
        prop_assert_eq!(serde_json::from_str::<ClassInvariant>(&text).unwrap(), inv);
    }

    #[test]
    fn permuting_diagonal_keeps_class(f in family(), seed in any::<u64>()) {
        let mut rng = selftest::rng(seed);
        let p = selftest::random_params(&mut rng, f, 6);
        let AlgParams::M(mut g) = p.clone() else { return Ok(()); };
        g.d.shuffle(&mut rng);
        prop_assert_eq!(class_invariant(&p).unwrap(), class_invariant(&AlgParams::M(g)).unwrap());
    }

    #[test]
    fn universal_formula_matches_presentation(seed in any::<u64>()) {
        let mut rng = selftest::rng(seed);
        let t = selftest::random_group(&mut rng, 64);
        let q = rng.gen_range(0..=6);
        let s = if q == 0 { 1 } else { rng.gen_range(0..=2) };
        let degs: Vec<_> = (0..q).map(|_| t.element(rng.gen_range(0..t.order() as usize))).collect();
        prop_assert_eq!(
            universal_group_m(&t, q, s, &degs).unwrap().iso_type(),
            universal_group_formula(&t, q, s, &degs).unwrap()
        );
    }

    #[test]
    fn lie_census_sums_to_skew_dimension(f in family(), seed in any::<u64>()) {
        let p = selftest::random_params(&mut selftest::rng(seed), f, 6);
        let alg = build(&p).unwrap();
        let total: usize = alg.lie_census().values().sum();
        prop_assert_eq!(total, alg.lie_dim());
    }

    #[test]
    fn fine_m8_params_hit_exactly_one_listed_class(seed in any::<u64>()) {
        let mut rng = selftest::rng(seed);
        let f = *[Family::RealMatrix, Family::QuaternionMatrix].choose(&mut rng).unwrap();
        let p = loop {
            let p = selftest::random_params(&mut rng, f, 8);
            let AlgParams::M(g) = &p else { unreachable!() };
            let gda = GDAlgebra::from_label(&g.gda).unwrap();
            // orthogonal: delta = +1 on real D, delta = -1 on quaternion D
            let delta = if f == Family::RealMatrix { 1 } else { -1 };
            if (g.k() << gda.label.m()) == 8 && g.delta == delta && is_fine(&p).unwrap().fine {
                break p;
            }
        };
        let inv = class_invariant(&p).unwrap();
        let hits = enumerate_fine(None, 8, InvolutionKind::Orthogonal, None)
            .unwrap()
            .into_iter()
            .filter(|e| e.invariant == inv)
            .count();
        prop_assert_eq!(hits, 1, "{:?}", p);
    }
}

/// Orbits of `d -> c d phi_0(c)` on homogeneous elements of degree `t` of the
/// real central algebras: two at `e`, one elsewhere.
#[test]
fn sign_orbits_by_brute_force() {
    for label in ["D(0;+1)", "D(2;+1)", "D(4;+1)"] {
        let gda = GDAlgebra::from_label(label).unwrap();
        let half = gda.m / 2;
        for t in (0..gda.order()).filter(|&t| gda.eta(t) == 0) {
            let phases: BTreeSet<u32> = (0..gda.order())
                .map(|s| {
                    let cd = gda.mul_mono((s, 0), (t, 0));
                    let (deg, ph) = gda.mul_mono(cd, gda.phi0_mono((s, 0)));
                    assert_eq!(deg, t);
                    ph
                })
                .collect();
            let expected: BTreeSet<u32> = if t == 0 { [0].into() } else { [0, half].into() };
            assert_eq!(phases, expected, "{label}, t = {}", gda.format_elem(t));
        }
    }
}

#[test]
fn tables_are_deterministic() {
    use grady_core::lietransfer::{table_d4, table_m8};
    assert_eq!(table_m8().unwrap().to_text(), table_m8().unwrap().to_text());
    assert_eq!(table_d4().unwrap().to_text(), table_d4().unwrap().to_text());
}

#[test]
fn d4_columns_follow_the_transfer_rules() {
    use grady_core::lietransfer::{table_d4, table_m8, Shade};
    let (m8, d4) = (table_m8().unwrap(), table_d4().unwrap());
    let col = |t: &grady_core::lietransfer::Table, c: usize, skip_dark: bool| -> u32 {
        t.rows.iter().filter(|r| !(skip_dark && r.shade == Shade::Dark)).map(|r| r.counts[c]).sum()
    };
    // so(5,3), so(7,1): one to one with M5+3(R), M7+1(R)
    assert_eq!(col(&d4, 1, true), col(&m8, 1, false));
    assert_eq!(col(&d4, 3, true), col(&m8, 3, false));
    // so(6,2): M6+2(R) plus the outer M4(H) classes
    let outer_h: u32 = m8.rows.iter().filter(|r| r.shade == Shade::None).map(|r| r.counts[5]).sum();
    assert_eq!(col(&d4, 2, true), col(&m8, 2, false) + outer_h);
    // so(4,4): two pairs of classes identified
    assert_eq!(col(&d4, 0, true) + 2, col(&m8, 0, false));
}
