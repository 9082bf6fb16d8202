use legr::dsl::{parse, serialize};
use legr::front::{
    apply_rewrite, concatenate, move_sites, split_basepoint, FrontDiagram, FrontError, SliceEvent,
};
use legr::fuzz::{random_diagram, rng, sample_diagrams, FuzzConfig};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), &FuzzConfig::default()).with_name("fz");
        prop_assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), &FuzzConfig::default());
        let text = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<FrontDiagram>(&text).unwrap(), d);
    }

    #[test]
    fn rewrites_invert(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), &FuzzConfig::default());
        for rw in move_sites(&d) {
            let (moved, inverse) = apply_rewrite(&d, &rw).unwrap();
            let (back, _) = apply_rewrite(&moved, &inverse).unwrap();
            prop_assert_eq!(back, d.clone());
        }
    }

    #[test]
    fn trivial_tangle_is_a_unit(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), &FuzzConfig::default());
        let right = d.validate().unwrap().right_potentials().to_vec();
        let t_left = FrontDiagram::trivial(d.left_potentials.clone());
        let t_right = FrontDiagram::trivial(right);
        prop_assert_eq!(concatenate(&t_left, &d).unwrap().events, d.events.clone());
        prop_assert_eq!(concatenate(&d, &t_right).unwrap().events, d.events.clone());
    }
}

#[test]
fn samples_round_trip() {
    for d in sample_diagrams() {
        assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }
}

#[test]
fn splitting_a_base_point_raises_b_hat() {
    let d = legr::six_valent();
    let split = split_basepoint(&d, legr::front::Site::BasePoint(4)).unwrap();
    assert_eq!(split.b_hat(), d.b_hat() + 1);
    let split = split_basepoint(&d, legr::front::Site::VertexHalfEdge { event: 3, half_edge: 4 }).unwrap();
    assert_eq!(split.b_hat(), d.b_hat() + 1);
    assert!(matches!(split_basepoint(&d, legr::front::Site::BasePoint(0)), Err(FrontError::InvalidSite(_))));
}

#[test]
fn six_valent_shape() {
    let d = legr::six_valent();
    assert_eq!(d.name.as_deref(), Some("six_valent"));
    assert_eq!(d.valence_sum(), 6);
    assert_eq!(d.basepoint_count(), 3);
    assert!(!d.is_normal_form());
    assert!(matches!(d.events[3], SliceEvent::Vertex { pos: 3, left: 3, right: 3, .. }));
    assert_eq!(d.validate().unwrap().strand_counts(), vec![0, 2, 4, 6, 6, 4, 2, 0]);
}
