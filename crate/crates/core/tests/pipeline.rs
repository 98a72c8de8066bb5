use argact_core::models::{enumerate_cpmm, enumerate_cpmqm, verify_correspondence};
use argact_core::{
    ground, resolve_times, Assumption, DomainBuilder, DomainDescription, Formula, Framework, GroundDomain, Literal,
};
use proptest::prelude::*;

fn yale(qualified: bool, alive: bool, loaded: Option<bool>) -> DomainDescription {
    let mut b = DomainBuilder::new("yale", 3)
        .fluents(&["alive", "loaded"])
        .actions(&["load", "wait", "shoot"])
        .effect("load", vec![], Literal::pos("loaded"), qualified)
        .effect("shoot", vec![Formula::Fluent("loaded".into())], Literal::neg("alive"), qualified)
        .fact_literal(0, Literal::new("alive", alive))
        .occurs(0, 1, "load")
        .occurs(1, 2, "wait")
        .occurs(2, 3, "shoot");
    if let Some(l) = loaded {
        b = b.fact_literal(0, Literal::new("loaded", l));
    }
    b.build().unwrap()
}

fn grounded(d: &DomainDescription) -> GroundDomain {
    ground(&resolve_times(d).unwrap()).unwrap()
}

#[test]
fn yale_has_one_plausible_set_and_two_canonical_models() {
    let g = grounded(&yale(false, true, None));
    let fw = Framework::new(&g);
    let sets = fw.plausible_sets().unwrap();
    assert_eq!(sets.len(), 1);
    let omitted: Vec<&Assumption> = g.universe.iter().filter(|a| !sets[0].contains(a)).collect();
    assert_eq!(omitted, [&Assumption::fa(0, Literal::neg("loaded")), &Assumption::fa(2, Literal::pos("alive"))]);
    assert_eq!(enumerate_cpmm(&g).unwrap().len(), 2);
    for k in 1..=3 {
        assert!(verify_correspondence(&fw, k).unwrap().holds, "theorem {k}");
    }
}

#[test]
fn qualified_yale_keeps_both_effects() {
    let g = grounded(&yale(true, true, None));
    let fw = Framework::new(&g);
    let sets = fw.q_plausible_sets().unwrap();
    assert_eq!(sets.len(), 1);
    assert_eq!(sets[0].aq().len(), 2);
    assert!(!enumerate_cpmqm(&g).unwrap().is_empty());
    for k in 4..=6 {
        assert!(verify_correspondence(&fw, k).unwrap().holds, "theorem {k}");
    }
}

#[test]
fn unknown_theorem_is_a_precondition_error() {
    let g = grounded(&yale(false, true, None));
    assert!(verify_correspondence(&Framework::new(&g), 8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn plausible_sets_are_conflict_free_and_match_models(
        qualified in any::<bool>(),
        alive in any::<bool>(),
        loaded in proptest::option::of(any::<bool>()),
    ) {
        let g = grounded(&yale(qualified, alive, loaded));
        let fw = Framework::new(&g);
        let sets = if qualified { fw.q_plausible_sets() } else { fw.plausible_sets() }.unwrap();
        prop_assert!(!sets.is_empty());
        for v in &sets {
            prop_assert!(fw.is_conflict_free(&v.assumptions).unwrap());
        }
        let k = if qualified { 6 } else { 3 };
        prop_assert!(verify_correspondence(&fw, k).unwrap().holds);
    }
}
