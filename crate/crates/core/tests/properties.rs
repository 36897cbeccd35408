//! Property tests over seeded random decorations on the fixture fans.

mod common;

use proptest::prelude::*;

use toric_acyclic::cohomology::{
    cech_cohomology, graded_cohomology, line_bundle_cohomology_support, line_bundle_graded, line_bundle_totals, Engine,
};
use toric_acyclic::decoration::{from_line_bundle_sum, twist};
use toric_acyclic::fixtures;
use toric_acyclic::mori::{extremal_rays, primitive_collections, reference_ample};
use toric_acyclic::polytope::is_nef;
use toric_acyclic::resolution::{build_resolution, verify_exactness};
use toric_acyclic::vanishing::{
    check_extremal, check_perlman_smith, geometric_report, is_acyclicly_decorated, is_nefly_decorated, vanishing_bound,
    Bounds,
};
use toric_acyclic::{Fan, TDivisor, ToricSheaf, WeilDecoration};

fn pick_fan(i: usize) -> (&'static str, Fan) {
    let mut all = fixtures::all_fans();
    all.swap_remove(i % all.len())
}

fn pick_surface(i: usize) -> (&'static str, Fan) {
    let mut all = common::surfaces();
    all.swap_remove(i % all.len())
}

/// Twists by multiples of the reference ample divisor until every stratum is nef.
fn make_nefly(fan: &Fan, dec: &WeilDecoration) -> WeilDecoration {
    let ample = reference_ample(fan).unwrap();
    (0..).map(|k| twist(dec, &ample.scale(k)).unwrap()).find(|d| is_nefly_decorated(fan, d).unwrap().holds).unwrap()
}

#[test]
fn f2_blowup_has_a_non_extremal_collection_with_a_focus() {
    let fan = fixtures::f2_blowup();
    let cs = primitive_collections(&fan).unwrap();
    assert!(cs.iter().any(|c| !c.extremal && !c.focus_cone.rays().is_empty()));
}

#[test]
fn converses_fail_on_fixtures() {
    // nefly but the full inequality fails
    let f1 = fixtures::f1();
    let dec = fixtures::f1_rank2();
    assert!(is_nefly_decorated(&f1, &dec).unwrap().holds);
    assert!(!check_perlman_smith(&f1, &Bounds::of_decoration(&dec), &TDivisor::zero(4)).unwrap().satisfied);
    // acyclicly but not nefly
    let p1 = fixtures::p1();
    let dec = fixtures::p1_split();
    assert!(is_acyclicly_decorated(&p1, &dec).unwrap().holds);
    assert!(!is_nefly_decorated(&p1, &dec).unwrap().holds);
    // acyclic but not acyclicly
    let p2 = fixtures::p2();
    let dec = twist(&fixtures::p2_tangent(), &TDivisor::new(vec![-4, 0, 0])).unwrap();
    assert!(!is_acyclicly_decorated(&p2, &dec).unwrap().holds);
    assert!(graded_cohomology(&p2, &ToricSheaf::from_decoration(&dec)).unwrap().is_acyclic());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extremal_and_full_verdicts_agree(seed in any::<u64>(), which in 0usize..2) {
        let fan = if which == 0 { fixtures::dp7() } else { fixtures::f2_blowup() };
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let d = common::divisor(&mut rng, fan.num_rays(), -3, 3);
        let b = Bounds::of_decoration(&dec);
        prop_assert_eq!(
            check_extremal(&fan, &b, &d).unwrap().satisfied,
            check_perlman_smith(&fan, &b, &d).unwrap().satisfied
        );
    }

    #[test]
    fn extremal_pass_makes_every_divisor_nef(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let report = check_extremal(&fan, &Bounds::of_decoration(&dec), &TDivisor::zero(fan.num_rays())).unwrap();
        if report.satisfied {
            let cone = extremal_rays(&fan).unwrap();
            let d_hat = dec.summary().d_hat;
            for r in cone.generators() {
                prop_assert!(d_hat.pair(r).unwrap() >= 0);
                for s in dec.strata() {
                    prop_assert!(s.divisor.pair(r).unwrap() >= 0);
                }
            }
            prop_assert!(is_nef(&fan, &d_hat).unwrap());
        }
    }

    #[test]
    fn geometric_form_matches_the_inequality(seed in any::<u64>(), i in 0usize..5) {
        let (_, fan) = pick_surface(i);
        let mut rng = common::rng(seed);
        let dec = make_nefly(&fan, &common::decoration(&mut rng, &fan));
        let b = Bounds::of_decoration(&dec);
        let ps = check_extremal(&fan, &b, &TDivisor::zero(fan.num_rays())).unwrap();
        let geo = geometric_report(&fan, &dec).unwrap();
        prop_assert_eq!(ps.collections.len(), geo.entries.len());
        for (c, g) in ps.collections.iter().zip(&geo.entries) {
            prop_assert_eq!(&c.rays, &g.rays);
            prop_assert_eq!(c.satisfied, g.satisfied);
            let mu_f: i64 = c.focus.iter().map(|&(r, f)| f * b.mu[r]).sum();
            let spread: i64 = c.focus.iter().map(|&(r, f)| f * (b.lambda[r] - b.mu[r])).sum();
            prop_assert_eq!(g.lhs_pairing, c.rays.iter().map(|&r| b.mu[r]).sum::<i64>() - mu_f);
            prop_assert_eq!(g.rhs, spread);
            prop_assert_eq!(g.rhs_from_polytopes.unwrap_or(g.rhs), g.rhs);
        }
    }

    #[test]
    fn nef_tests_agree(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let d = common::divisor(&mut rng, fan.num_rays(), -4, 4);
        let cone = extremal_rays(&fan).unwrap();
        let by_relations = cone.collections.iter().all(|c| d.pair(&c.relation).unwrap() >= 0);
        let by_extremal = cone.generators().all(|r| d.pair(r).unwrap() >= 0);
        let local = is_nef(&fan, &d).unwrap();
        prop_assert_eq!(local, by_relations);
        prop_assert_eq!(local, by_extremal);
    }

    #[test]
    fn twisting_commutes_with_the_sheaf(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let d = common::divisor(&mut rng, fan.num_rays(), -3, 3);
        let sheaf = ToricSheaf::from_decoration(&dec);
        prop_assert_eq!(ToricSheaf::from_decoration(&twist(&dec, &d).unwrap()), sheaf.twist(&d).unwrap());
        prop_assert_eq!(Bounds::of_sheaf(&sheaf), Bounds::of_decoration(&dec));
    }

    #[test]
    fn twist_shifts_inequality_sides(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let d = common::divisor(&mut rng, fan.num_rays(), -3, 3);
        let before = check_perlman_smith(&fan, &Bounds::of_decoration(&dec), &d).unwrap();
        let tw = twist(&dec, &d).unwrap();
        let after = check_perlman_smith(&fan, &Bounds::of_decoration(&tw), &TDivisor::zero(fan.num_rays())).unwrap();
        for (x, y) in before.collections.iter().zip(&after.collections) {
            prop_assert_eq!((x.lhs, x.rhs, x.satisfied), (y.lhs, y.rhs, y.satisfied));
        }
    }

    #[test]
    fn direct_sums_add(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let n = fan.num_rays();
        let a = common::divisor(&mut rng, n, -3, 3);
        let b = common::divisor(&mut rng, n, -3, 3);
        let dec = from_line_bundle_sum(&fan, &[a.clone(), b.clone()]).unwrap();
        let h = graded_cohomology(&fan, &ToricSheaf::from_decoration(&dec)).unwrap();
        let ta = line_bundle_totals(&fan, &a).unwrap();
        let tb = line_bundle_totals(&fan, &b).unwrap();
        let sum: Vec<usize> = ta.iter().zip(&tb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(&h.totals, &sum);
        for m in &h.region {
            let ha = line_bundle_cohomology_support(&fan, &a, m).unwrap();
            let hb = line_bundle_cohomology_support(&fan, &b, m).unwrap();
            let expected: Vec<usize> = ha.iter().zip(&hb).map(|(x, y)| x + y).collect();
            prop_assert_eq!(h.at(m), expected);
        }
    }

    #[test]
    fn bound_is_sound(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let k0 = vanishing_bound(&fan, &dec).unwrap().k0;
        let h = graded_cohomology(&fan, &ToricSheaf::from_decoration(&dec)).unwrap();
        prop_assert!(h.totals.iter().skip(k0).all(|&x| x == 0), "k0 = {} totals {:?}", k0, h.totals);
    }

    #[test]
    fn resolution_is_exact(seed in any::<u64>(), i in 0usize..5) {
        let (_, fan) = pick_surface(i);
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let cx = build_resolution(&fan, &dec).unwrap();
        prop_assert_eq!(cx.euler_characteristic(), dec.ambient_dim() as i64);
        prop_assert!(verify_exactness(&fan, &dec, &ToricSheaf::from_decoration(&dec)).unwrap().exact);
    }

    #[test]
    fn decoration_json_round_trip(seed in any::<u64>(), i in 0usize..8) {
        let (_, fan) = pick_fan(i);
        let mut rng = common::rng(seed);
        let dec = common::decoration(&mut rng, &fan);
        let json = serde_json::to_string(&dec.to_spec()).unwrap();
        let back = WeilDecoration::from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
        prop_assert_eq!(&back, &dec);
        let sheaf = ToricSheaf::from_decoration(&dec);
        let json = serde_json::to_string(&sheaf.to_spec()).unwrap();
        prop_assert_eq!(ToricSheaf::from_spec(&serde_json::from_str(&json).unwrap()).unwrap(), sheaf);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn threefold_engines_agree(seed in any::<u64>(), which in 0usize..2) {
        let fan = if which == 0 { fixtures::p3() } else { fixtures::p2xp1() };
        let mut rng = common::rng(seed);
        let d = common::divisor(&mut rng, fan.num_rays(), -3, 3);
        let cech = line_bundle_graded(&fan, &d, Engine::Cech).unwrap();
        let support = line_bundle_graded(&fan, &d, Engine::Support).unwrap();
        prop_assert_eq!(&cech, &support);
        if let Some(m) = cech.region.first() {
            prop_assert_eq!(cech_cohomology(&fan, &ToricSheaf::line_bundle(&d), m).unwrap(), cech.at(m));
        }
    }
}

#[test]
fn fan_json_round_trip() {
    for (name, fan) in fixtures::all_fans() {
        let json = serde_json::to_string(&fan.to_spec()).unwrap();
        let back = Fan::from_spec(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_spec(), fan.to_spec(), "{name}");
    }
}
